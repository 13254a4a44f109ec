use forge::cone::{build_rational_cone, cone_member, decompose, eigen_split, gordan_generators, ConeOptions, Membership};
use forge::config::Config;
use forge::folds::{fold_decompose, is_homotopy_equivalence, shuffled_verdicts, FoldKind};
use forge::graphmap::{
    check_uniform_expansion, is_ergodic, is_mixing, var_growth, Graph, GraphMap, MapDocument, SymbolicMetric,
    TransitionMatrix, DEFAULT_PATH_CAP,
};
use forge::interval::Interval;
use forge::splitting::{split_graph, split_map};
use forge::synth::{construct, synth_star_map, star_axioms};
use forge::traintrack::{induced_split_structure, prototype_graph, verify_traintrack, Turn, PROTOTYPE_LETTERS};
use forge::{make_context, Coords, IntPolynomial, LatticeElement, Matrix, NumberFieldContext};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POLYS: &[&[i64]] = &[&[-3, 1], &[-2, -3, 1], &[-1, -1, 1], &[-2, 0, 1], &[-1, -1, 0, 1], &[-2, -2, 0, 1]];

fn ctx(i: usize, bits: u64) -> NumberFieldContext {
    make_context(&IntPolynomial::from_i64s(POLYS[i]).unwrap(), bits).unwrap()
}

fn rose(n: usize) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    Graph::with_vertex_count(1, labels.iter().map(|l| (0, 0, l.as_str())).collect()).unwrap()
}

/// Maps of the three-petal rose with image words of length 1 to 4.
fn rose_map() -> impl Strategy<Value = GraphMap> {
    let letter = prop::sample::select(vec!['a', 'A', 'b', 'B', 'c', 'C']);
    prop::collection::vec(prop::collection::vec(letter, 1..=4), 3).prop_map(|words| {
        let ws: Vec<String> = words.into_iter().map(|w| w.into_iter().collect()).collect();
        let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
        GraphMap::from_words(rose(3), &refs).unwrap()
    })
}

fn star_graph(n: usize) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Graph::with_vertex_count(n + 1, labels.iter().enumerate().map(|(i, l)| (0, i + 1, l.as_str())).collect())
        .unwrap()
}

fn star_words(perm: &[usize], tails: &[Vec<usize>]) -> Vec<String> {
    perm.iter()
        .zip(tails)
        .map(|(&first, tail)| {
            let mut w = Vec::new();
            let mut cur = first;
            for &next in tail {
                w.push(format!("x{} X{}", cur + 1, cur + 1));
                cur = next;
            }
            w.push(format!("x{}", cur + 1));
            w.join(" ")
        })
        .collect()
}

/// Valid star maps with `n <= 6` tips and odd image lengths at most 9.
/// With `uniform`, every image has the same length.
fn star_map(uniform: bool) -> impl Strategy<Value = GraphMap> {
    (1usize..=6, 0usize..=4)
        .prop_flat_map(move |(n, pairs)| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            let tail = |k: std::ops::RangeInclusive<usize>| prop::collection::vec(0..n, k);
            let tails = if uniform {
                prop::collection::vec(tail(pairs..=pairs), n).boxed()
            } else {
                prop::collection::vec(tail(0..=4), n).boxed()
            };
            (Just(n), perm, tails)
        })
        .prop_map(|(n, perm, tails)| {
            let ws = star_words(&perm, &tails);
            let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
            GraphMap::from_words(star_graph(n), &refs).unwrap()
        })
}

fn eval_interval(p: &IntPolynomial, x: &Interval) -> Interval {
    p.coeffs()
        .iter()
        .rev()
        .fold(Interval::from_int(&BigInt::from(0)), |acc, c| acc.mul(x).add(&Interval::from_int(c)))
}

fn overlaps(a: &Interval, b: &Interval) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn power_lambda_is_repeated_multiplication(i in 0..POLYS.len(), n in 0u64..=12) {
        let c = ctx(i, 128);
        let e1: LatticeElement = Coords::unit(c.degree(), 0);
        let by_steps = (0..n).fold(e1, |v, _| c.mul_lambda(&v).unwrap());
        prop_assert_eq!(c.power_lambda(n), by_steps);
    }

    #[test]
    fn embedding_respects_ring_operations(
        i in 0..POLYS.len(),
        u in prop::collection::vec(-20i64..=20, 3),
        v in prop::collection::vec(-20i64..=20, 3),
    ) {
        let c = ctx(i, 128);
        let d = c.degree();
        let (u, v): (LatticeElement, LatticeElement) = (Coords::from_i64s(&u[..d]), Coords::from_i64s(&v[..d]));
        let (eu, ev) = (c.real_embed(&u, 128).unwrap(), c.real_embed(&v, 128).unwrap());
        let sum = c.real_embed(&(&u + &v), 128).unwrap();
        let prod = c.real_embed(&c.mul(&u, &v).unwrap(), 128).unwrap();
        prop_assert!(overlaps(&eu.add(&ev), &sum));
        prop_assert!(overlaps(&eu.mul(&ev), &prod));
    }

    #[test]
    fn mixing_implies_ergodic(rows in prop::collection::vec(prop::collection::vec(0u8..=2, 5), 5)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let t = TransitionMatrix(m);
        prop_assert!(!is_mixing(&t) || is_ergodic(&t));
    }

    #[test]
    fn tighten_is_idempotent_and_shortens(f in rose_map()) {
        let t = f.tighten();
        prop_assert_eq!(t.tighten(), t.clone());
        prop_assert!(t.word_lengths().iter().zip(f.word_lengths()).all(|(a, b)| *a <= b));
        prop_assert!(t.is_taut());
    }

    #[test]
    fn transition_matrix_of_iterate_is_power(f in rose_map(), n in 1u32..=4) {
        let it = f.iterate(n, DEFAULT_PATH_CAP).unwrap();
        prop_assert_eq!(it.transition_matrix(), f.transition_matrix().pow(u64::from(n)));
    }

    #[test]
    fn map_documents_round_trip(f in rose_map()) {
        let doc = MapDocument::from_map(&f, None, None);
        let back = MapDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_map().unwrap().0, f);
    }

    #[test]
    fn folding_is_deterministic_and_sound(f in rose_map(), seed in any::<u64>()) {
        let (v, sub, d) = is_homotopy_equivalence(&f).unwrap();
        prop_assert_eq!(fold_decompose(&sub.morphism), d.clone());
        prop_assert!(d.replay(&sub.morphism).is_ok());
        for r in &d.folds {
            let drop = r.betti_before - r.betti_after;
            prop_assert_eq!(drop, if r.kind == FoldKind::TypeII { 1 } else { 0 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in shuffled_verdicts(&sub.morphism, 5, &mut rng) {
            prop_assert_eq!(
                (s.homotopy_equivalence, s.type_two, s.folds),
                (v.homotopy_equivalence, v.type_two, v.folds)
            );
        }
    }

    #[test]
    fn turns_ignore_word_direction(x in 0usize..7, y in 0usize..7, upper in any::<bool>()) {
        let g = prototype_graph();
        let (a, b) = (PROTOTYPE_LETTERS[x], PROTOTYPE_LETTERS[y]);
        let (a, b) = if upper { (a.to_ascii_uppercase(), b) } else { (a, b.to_ascii_uppercase()) };
        let word: String = [a, b].iter().collect();
        let swapped: String = [b, a].iter().map(|c| if c.is_ascii_uppercase() { c.to_ascii_lowercase() } else { c.to_ascii_uppercase() }).collect();
        match (Turn::parse(&g, &word), Turn::parse(&g, &swapped)) {
            (Ok(t), Ok(u)) => prop_assert_eq!(t, u),
            (Err(_), Err(_)) => {}
            (l, r) => prop_assert!(false, "{:?} vs {:?}", l, r),
        }
    }

    #[test]
    fn split_star_maps_are_traintrack(f in star_map(false)) {
        let s = split_graph(f.graph(), None).unwrap();
        let sf = split_map(&s, &f).unwrap();
        prop_assert!(verify_traintrack(&sf, &induced_split_structure(&s)).passed());
        let lens = f.word_lengths();
        let sg = sf.graph();
        for (k, p) in s.provenance().iter().enumerate() {
            prop_assert_eq!(sf.word_lengths()[k], lens[p.original.0]);
            if p.letter < 3 {
                let orig = f.image_of(forge::graphmap::SignedEdge { edge: p.original, reversed: p.flipped });
                let last = *sf.edge_images()[k].steps().last().unwrap();
                let want = s.copy(p.letter, orig.last().unwrap().edge);
                prop_assert_eq!((last.edge, last.reversed), (want, false), "edge {}", sg.label(forge::graphmap::EdgeId(k)));
            }
        }
    }

    #[test]
    fn splitting_preserves_uniform_expansion(f in star_map(true)) {
        let l = f.word_lengths()[0] as i64;
        let c = make_context(&IntPolynomial::from_i64s(&[-l, 1]).unwrap(), 64).unwrap();
        let unit = SymbolicMetric::unit(f.graph().edge_count(), 1);
        prop_assert!(check_uniform_expansion(&f, &unit, &c).is_ok());
        let s = split_graph(f.graph(), None).unwrap();
        let sf = split_map(&s, &f).unwrap();
        prop_assert!(check_uniform_expansion(&sf, &s.inherited_metric(&unit), &c).is_ok());
        if l > 1 && is_ergodic(&f.transition_matrix()) {
            let t = f.transition_matrix();
            let vg = var_growth(&t, &vec![1.0; t.size()], 40);
            prop_assert!((vg.last().unwrap().corrected - (l as f64).ln()).abs() < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn semigroup_sums_decompose(i in 0..3usize, picks in prop::collection::vec((0usize..64, 0usize..64), 100)) {
        let c = ctx(i, 256);
        let split = eigen_split(&c).unwrap();
        let cone = build_rational_cone(&c, &split, &ConeOptions::default()).unwrap();
        let gens = gordan_generators(&cone, 1_000_000).unwrap();
        let m = gens.len();
        for (a, b) in picks {
            let t = &gens.elements[a % m] + &gens.elements[b % m];
            prop_assert!(matches!(cone_member(&cone, &t), Membership::Member(_)));
            let coeffs = decompose(&gens, &cone, &t).unwrap();
            prop_assert_eq!(forge::cone::recompose(&gens, &coeffs), t);
        }
    }
}

#[test]
fn classification_is_stable_under_precision() {
    for (i, p) in POLYS.iter().enumerate() {
        let lo = ctx(i, 64).classify().unwrap();
        let hi = ctx(i, 512).classify().unwrap();
        assert_eq!(lo, hi, "{p:?}");
    }
}

#[test]
fn power_minpoly_vanishes_at_power() {
    for (i, p) in POLYS.iter().enumerate() {
        let c = ctx(i, 256);
        for n in 1..=4u32 {
            let lam = c.lambda_interval();
            let pow = (1..n).fold(lam.clone(), |acc, _| acc.mul(lam));
            assert!(eval_interval(&c.minpoly_power(n), &pow).contains_zero(), "{p:?} n={n}");
        }
    }
}

#[test]
fn synthesized_maps_satisfy_star_axioms() {
    for i in [0usize, 1, 2] {
        let c = ctx(i, 256);
        let star = synth_star_map(&c, &Config::default()).unwrap();
        assert!(star_axioms(&star.map).hold());
        assert!(is_mixing(&star.map.transition_matrix()));
        let k = construct(&c, &Config::default()).unwrap();
        assert!(k.recipe_identity && k.cone_invariant && k.slim_cone_witness);
    }
}

#[test]
fn config_round_trips() {
    let c = Config { p_cap: 77, ..Config::default() };
    let back: Config = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}
