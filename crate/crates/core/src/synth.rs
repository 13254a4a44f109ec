//! Star-map synthesis for Perron and weak Perron numbers, splitting, and
//! assembly of the certificate bundle.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{
    build_rational_cone, eigen_split, find_recipe, gordan_generators, slim_cone_witness, verify_invariance,
    verify_recipe, ConeError, RationalCone, SemigroupGenerators, StarRecipe,
};
use crate::config::Config;
use crate::folds::{is_homotopy_equivalence, FoldDecomposition, FoldError, HeVerdict};
use crate::graphmap::{
    check_uniform_expansion, is_ergodic, is_mixing, left_eigen_identity, period, pf_eigenvalue, var_growth, Edge,
    EdgeId, EdgeLength, EdgePath, ExpansionCertificate, Graph, GraphError, GraphMap, MapDocument, SignedEdge,
    SymbolicMetric, VertexId,
};
use crate::interval::Interval;
use crate::linalg::Coords;
use crate::numberfield::{ClassKind, Classification, FieldError, NumberFieldContext};
use crate::poly::IntPolynomial;
use crate::splitting::{split_graph, split_map, SplitError, SplitGraph};
use crate::traintrack::{induced_split_structure, verify_traintrack, StructureDocument, TraintrackCertificate};
use crate::LatticeElement;

pub const BUNDLE_SCHEMA_VERSION: u32 = 1;

/// Intra-group order and signs of the long edge image.
pub const TRAVERSAL_ORDER: &str = "(s_k,1) then (s_j,1) for j != k ascending, each as forward-backward pairs; \
     then one forward-backward pair over (s_k,2); then (s_k,n0+1) once forward";

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("{0} is neither Perron nor weak Perron")]
    NotWeakPerron(String),
    #[error("star-map axiom violated: {0}")]
    StarAxiom(String),
    #[error("certificate checks failed: {}", failures.join("; "))]
    VerificationFailed {
        failures: Vec<String>,
        bundle: Box<CertificateBundle>,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// Position of an edge of a (possibly glued) star: generator `k`, tip `i`
/// within the fan, and copy index. `k` and `i` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tip {
    pub copy: u32,
    pub k: usize,
    pub i: u64,
}

/// Everything derived from the field before the map is written down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub even_lemma: (u64, u64),
    pub cone: RationalCone,
    pub cone_invariant: bool,
    pub semigroup: SemigroupGenerators,
    pub recipe: StarRecipe,
    pub recipe_identity: bool,
    pub slim_cone_witness: bool,
}

#[derive(Clone, Debug)]
pub struct StarMap {
    pub map: GraphMap,
    pub metric: SymbolicMetric,
    pub tips: Vec<Tip>,
    /// Number of glued copies; 1 for Perron inputs.
    pub copies: u32,
    pub construction: Construction,
}

impl StarMap {
    pub fn edge_count(&self) -> usize {
        self.map.graph().edge_count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarAxioms {
    pub center_fixed: bool,
    pub first_edge_permutation: bool,
    pub odd_lengths: bool,
}

impl StarAxioms {
    pub fn hold(&self) -> bool {
        self.center_fixed && self.first_edge_permutation && self.odd_lengths
    }
}

/// Star-map axioms for a map of a star whose centre is vertex 0.
pub fn star_axioms(f: &GraphMap) -> StarAxioms {
    let n = f.graph().edge_count();
    let mut firsts: Vec<usize> = f
        .edge_images()
        .iter()
        .filter_map(|p| p.steps().first().map(|s| s.edge.0))
        .collect();
    firsts.sort_unstable();
    firsts.dedup();
    StarAxioms {
        center_fixed: f.vertex_image(VertexId(0)) == VertexId(0),
        first_edge_permutation: firsts.len() == n
            && f.edge_images()
                .iter()
                .all(|p| p.steps().first().is_some_and(|s| !s.reversed)),
        odd_lengths: f.word_lengths().iter().all(|l| l % 2 == 1),
    }
}

fn star_graph(tips: &[Tip], glued: bool) -> Result<Graph, GraphError> {
    let mut names = vec!["o".to_string()];
    let mut edges = Vec::with_capacity(tips.len());
    for (j, t) in tips.iter().enumerate() {
        let label = if glued {
            format!("c{}.s{}.{}", t.copy, t.k, t.i)
        } else {
            format!("s{}.{}", t.k, t.i)
        };
        names.push(format!("t{}", j + 1));
        edges.push(Edge {
            from: VertexId(0),
            to: VertexId(j + 1),
            label,
        });
    }
    Graph::new(names, edges)
}

/// The star map's edge images as signed edges of a single copy: index of
/// `(s_k, i)` is `(k-1)M + (i-1)`.
fn base_images(recipe: &StarRecipe, m: usize) -> Vec<Vec<SignedEdge>> {
    let big_m = recipe.m as usize;
    let idx = |k: usize, i: usize| (k - 1) * big_m + (i - 1);
    let mut out = Vec::with_capacity(m * big_m);
    for k in 1..=m {
        for i in 1..=big_m {
            if i < big_m {
                out.push(vec![SignedEdge::fwd(idx(k, i + 1))]);
                continue;
            }
            let mut steps = Vec::new();
            let pairs = |steps: &mut Vec<SignedEdge>, e: usize, count: &BigInt| {
                let halves: u64 = (count / 2u32).try_into().expect("traversal count fits in memory");
                for _ in 0..halves {
                    steps.push(SignedEdge::fwd(e));
                    steps.push(SignedEdge::rev(e));
                }
            };
            let two = BigInt::from(2);
            let ek = &recipe.e[k - 1];
            pairs(&mut steps, idx(k, 1), &(&ek[k - 1] * &two + &two));
            for j in (1..=m).filter(|&j| j != k) {
                pairs(&mut steps, idx(j, 1), &(&ek[j - 1] * &two + &two));
            }
            pairs(&mut steps, idx(k, 2), &two);
            steps.push(SignedEdge::fwd(idx(k, recipe.n0 as usize + 1)));
            out.push(steps);
        }
    }
    out
}

fn image_size(recipe: &StarRecipe) -> BigInt {
    recipe
        .e
        .iter()
        .map(|row| row.iter().map(|x| x * 2 + 2).sum::<BigInt>() + 3)
        .sum()
}

fn assemble(
    graph: Graph,
    images: Vec<Vec<SignedEdge>>,
    path_cap: u64,
) -> Result<GraphMap, GraphError> {
    let mut paths = Vec::with_capacity(images.len());
    let mut vimg = vec![VertexId(0); graph.vertex_count()];
    for (j, steps) in images.into_iter().enumerate() {
        if steps.len() as u64 > path_cap {
            return Err(GraphError::PathCapExceeded { cap: path_cap });
        }
        let p = EdgePath::new(&graph, VertexId(0), steps)?;
        vimg[j + 1] = p.end(&graph);
        paths.push(p);
    }
    GraphMap::new(graph, vimg, paths)
}

/// Cone, semigroup, parity pair and recipe for a Perron context.
pub fn construct(ctx: &NumberFieldContext, cfg: &Config) -> Result<Construction, SynthError> {
    let split = eigen_split(ctx)?;
    let cone = build_rational_cone(ctx, &split, &cfg.cone_options())?;
    let semigroup = gordan_generators(&cone, cfg.enumeration_cap)?;
    let (n0, n) = ctx.even_lemma();
    let recipe = find_recipe(ctx, &semigroup, &cone, n0, n, cfg.p_cap)?;
    Ok(Construction {
        even_lemma: (n0, n),
        cone_invariant: verify_invariance(ctx, &cone),
        recipe_identity: verify_recipe(ctx, &semigroup, &recipe),
        slim_cone_witness: slim_cone_witness(ctx, &semigroup, &cone, &recipe),
        cone,
        semigroup,
        recipe,
    })
}

/// The uniformly `λ`-expanding star map on `∗_{mM}` for a Perron `λ`.
pub fn synth_star_map(ctx: &NumberFieldContext, cfg: &Config) -> Result<StarMap, SynthError> {
    let construction = construct(ctx, cfg)?;
    let recipe = &construction.recipe;
    if image_size(recipe) > BigInt::from(cfg.path_cap) {
        return Err(GraphError::PathCapExceeded { cap: cfg.path_cap }.into());
    }
    let m = construction.semigroup.len();
    let tips: Vec<Tip> = (1..=m)
        .flat_map(|k| (1..=recipe.m).map(move |i| Tip { copy: 0, k, i }))
        .collect();
    let graph = star_graph(&tips, false)?;
    let map = assemble(graph, base_images(recipe, m), cfg.path_cap)?;
    let metric = SymbolicMetric::new(
        tips.iter()
            .map(|t| ctx.mul_lambda_pow(&construction.semigroup.elements[t.k - 1], t.i - 1))
            .collect(),
    );
    let star = StarMap {
        map,
        metric,
        tips,
        copies: 1,
        construction,
    };
    check_star(&star, ctx)?;
    Ok(star)
}

fn check_star(star: &StarMap, ctx: &NumberFieldContext) -> Result<ExpansionCertificate, SynthError> {
    let ax = star_axioms(&star.map);
    if !ax.hold() {
        return Err(SynthError::StarAxiom(format!("{ax:?}")));
    }
    Ok(check_uniform_expansion(&star.map, &star.metric, ctx)?)
}

/// Rewrites an element of `Z[μ]`, `μ = λ^N`, in the basis of `Z[λ]`.
pub fn lift_power_coords(ctx: &NumberFieldContext, x: &LatticeElement, n: u32) -> LatticeElement {
    x.iter().enumerate().fold(Coords::zero(ctx.degree()), |acc, (j, c)| {
        &acc + &ctx.power_lambda(u64::from(n) * j as u64).scale(c)
    })
}

/// `N` glued copies of the `λ^N`-star; copy `c` carries lengths `λ^c`
/// times the base lengths, shifts into copy `c + 1`, and the last copy
/// wraps into copy 0 following the `λ^N` recipe.
pub fn synth_weak(
    ctx: &NumberFieldContext,
    n: u32,
    cfg: &Config,
) -> Result<(StarMap, NumberFieldContext), SynthError> {
    let mu_poly = ctx.minpoly_power(n);
    let mu_ctx = NumberFieldContext::new(&mu_poly, &cfg.field_options())?;
    let base = synth_star_map(&mu_ctx, cfg)?;
    if n == 1 {
        return Ok((base, mu_ctx));
    }
    let per = base.edge_count();
    let copies = n as usize;
    if (per * copies) as u64 > cfg.path_cap {
        return Err(GraphError::PathCapExceeded { cap: cfg.path_cap }.into());
    }
    let mut tips = Vec::with_capacity(per * copies);
    let mut lengths = Vec::with_capacity(per * copies);
    let mut images = Vec::with_capacity(per * copies);
    for c in 0..copies {
        for (j, t) in base.tips.iter().enumerate() {
            tips.push(Tip { copy: c as u32, ..*t });
            let lifted = lift_power_coords(ctx, base.metric.coords(j), n);
            lengths.push(EdgeLength {
                coords: ctx.mul_lambda_pow(&lifted, c as u64),
                fan_exponent: Some(c as u32),
            });
            if c + 1 < copies {
                images.push(vec![SignedEdge::fwd((c + 1) * per + j)]);
            } else {
                images.push(base.map.image_of(SignedEdge::fwd(j)));
            }
        }
    }
    let graph = star_graph(&tips, true)?;
    let map = assemble(graph, images, cfg.path_cap)?;
    let star = StarMap {
        map,
        metric: SymbolicMetric { lengths },
        tips,
        copies: n,
        construction: base.construction,
    };
    check_star(&star, ctx)?;
    if !fan_structure_holds(&star, &base.metric, &mu_ctx, ctx) {
        return Err(SynthError::StarAxiom("fan exponents do not match the gluing".into()));
    }
    Ok((star, mu_ctx))
}

/// Structural check of a glued map: shift edges raise the fan exponent by
/// one over the same base length, and each wrap edge's image, read in the
/// base star, has length `μ` times the base length of the edge.
pub fn fan_structure_holds(
    star: &StarMap,
    base_metric: &SymbolicMetric,
    mu_ctx: &NumberFieldContext,
    ctx: &NumberFieldContext,
) -> bool {
    let per = base_metric.len();
    let n = star.copies;
    let f = &star.map;
    (0..f.graph().edge_count()).all(|e| {
        let (c, j) = ((e / per) as u32, e % per);
        let len = &star.metric.lengths[e];
        let base = lift_power_coords(ctx, base_metric.coords(j), n);
        if len.fan_exponent != Some(c) || len.coords != ctx.mul_lambda_pow(&base, u64::from(c)) {
            return false;
        }
        let steps = f.edge_image(EdgeId(e)).steps();
        if c + 1 < n {
            return steps.len() == 1 && steps[0].edge.0 == e + per;
        }
        if steps.iter().any(|s| s.edge.0 >= per) {
            return false;
        }
        let image_base = steps
            .iter()
            .fold(Coords::zero(mu_ctx.degree()), |acc, s| &acc + base_metric.coords(s.edge.0));
        mu_ctx.mul_lambda(base_metric.coords(j)).is_ok_and(|x| x == image_base)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaInfo {
    pub interval: Interval,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerronPower {
    pub n: u32,
    pub minpoly: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dynamics {
    pub ergodic: bool,
    pub mixing: bool,
    pub period: Option<u64>,
}

impl Dynamics {
    fn of(f: &GraphMap) -> Self {
        let t = f.transition_matrix();
        Dynamics {
            ergodic: is_ergodic(&t),
            mixing: is_mixing(&t),
            period: period(&t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarSection {
    pub copies: u32,
    pub tips: Vec<Tip>,
    pub map: MapDocument,
    pub axioms: StarAxioms,
    pub expansion: ExpansionCertificate,
    pub fan_structure: Option<bool>,
    pub dynamics: Dynamics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSection {
    pub map: MapDocument,
    /// `(split edge, letter, original edge, flipped)`.
    pub provenance: Vec<(String, char, String, bool)>,
    pub expansion_edges: usize,
    pub expansion_holds: bool,
    pub structure: StructureDocument,
    pub traintrack: TraintrackCertificate,
    pub homotopy_equivalence: HeVerdict,
    pub folds: FoldDecomposition,
    pub dynamics: Dynamics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropySection {
    /// `ℓᵀ T = λ ℓᵀ` for the split map, exactly.
    pub left_eigenvector_identity: bool,
    pub log_lambda: f64,
    /// Floating-point PF eigenvalue with its Collatz–Wielandt bracket.
    pub pf_value: f64,
    pub pf_lower: f64,
    pub pf_upper: f64,
    /// Corrected growth rate of total length at `k = 40`.
    pub var_growth_k40: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub schema_version: u32,
    pub lattice: String,
    pub polynomial: IntPolynomial,
    pub lambda: LambdaInfo,
    pub classification: Classification,
    pub perron_power: Option<PerronPower>,
    pub construction: Construction,
    pub traversal_order: String,
    pub star: StarSection,
    pub split: SplitSection,
    pub entropy: EntropySection,
}

impl CertificateBundle {
    /// Descriptions of every failed check; empty for a verified bundle.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut need = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        let c = &self.construction;
        need(c.cone_invariant, "cone invariance");
        need(c.recipe_identity, "recipe identity");
        need(self.star.axioms.hold(), "star-map axioms");
        need(self.star.fan_structure != Some(false), "fan structure");
        need(self.split.expansion_holds, "split expansion");
        need(self.split.traintrack.passed(), "traintrack axioms");
        need(self.split.homotopy_equivalence.homotopy_equivalence, "homotopy equivalence");
        need(self.split.dynamics.ergodic, "ergodicity");
        if self.star.copies == 1 {
            need(self.star.dynamics.mixing, "star mixing");
            need(self.split.dynamics.mixing, "split mixing");
        }
        need(self.entropy.left_eigenvector_identity, "left eigenvector identity");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }
}

/// In-memory results of a pipeline run.
pub struct Pipeline {
    pub ctx: NumberFieldContext,
    /// Context of `λ^N` for weak Perron inputs.
    pub power_ctx: Option<NumberFieldContext>,
    pub star: StarMap,
    pub split: SplitGraph,
    pub split_map: GraphMap,
    pub split_metric: SymbolicMetric,
    pub bundle: CertificateBundle,
}

/// Classifies, synthesizes, splits and verifies.
pub fn synthesize(poly: &IntPolynomial, cfg: &Config) -> Result<Pipeline, SynthError> {
    let ctx = NumberFieldContext::new(poly, &cfg.field_options())?;
    let classification = ctx.classify()?;
    let (star, power_ctx) = match classification.kind {
        ClassKind::Perron => (synth_star_map(&ctx, cfg)?, None),
        ClassKind::WeakPerron => {
            let n = classification.witness.expect("weak Perron classification has a witness");
            let (s, mu) = synth_weak(&ctx, n, cfg)?;
            (s, Some(mu))
        }
        ClassKind::Neither => return Err(SynthError::NotWeakPerron(poly.to_string())),
    };
    let star_expansion = check_star(&star, &ctx)?;
    let split = split_graph(star.map.graph(), None)?;
    let sf = split_map(&split, &star.map)?;
    let split_metric = split.inherited_metric(&star.metric);
    let structure = induced_split_structure(&split);
    let ((split_expansion, traintrack), he) = rayon::join(
        || {
            rayon::join(
                || check_uniform_expansion(&sf, &split_metric, &ctx),
                || verify_traintrack(&sf, &structure),
            )
        },
        || is_homotopy_equivalence(&sf),
    );
    let (he, _, folds) = he?;
    let t = sf.transition_matrix();
    let pf = pf_eigenvalue::<f64>(&t, 1e-12, 100_000);
    let (pf_value, pf_lower, pf_upper) = match &pf {
        Ok(e) => (e.value, e.lower, e.upper),
        Err(GraphError::NonConvergence { estimate }) => (*estimate, f64::NAN, f64::NAN),
        Err(_) => (f64::NAN, f64::NAN, f64::NAN),
    };
    let lengths = split_metric.to_f64(&ctx);
    let vg = var_growth(&t, &lengths, 40);
    let fan_structure = power_ctx.as_ref().map(|mu| {
        let per = star.edge_count() / star.copies as usize;
        let base = SymbolicMetric {
            lengths: (0..per)
                .map(|j| EdgeLength::plain(base_length(mu, &star, j)))
                .collect(),
        };
        star.copies == 1 || fan_structure_holds(&star, &base, mu, &ctx)
    });
    let bundle = CertificateBundle {
        schema_version: BUNDLE_SCHEMA_VERSION,
        lattice: "Z[lambda]".into(),
        polynomial: poly.clone(),
        lambda: LambdaInfo {
            interval: ctx.lambda_interval().clone(),
            approx: ctx.lambda_f64(),
        },
        classification,
        perron_power: power_ctx.as_ref().map(|mu| PerronPower {
            n: star.copies,
            minpoly: mu.minpoly().clone(),
        }),
        construction: star.construction.clone(),
        traversal_order: TRAVERSAL_ORDER.into(),
        star: StarSection {
            copies: star.copies,
            tips: star.tips.clone(),
            map: MapDocument::from_map(&star.map, Some(&star.metric), Some(poly)),
            axioms: star_axioms(&star.map),
            expansion: star_expansion,
            fan_structure,
            dynamics: Dynamics::of(&star.map),
        },
        split: SplitSection {
            map: MapDocument::from_map(&sf, Some(&split_metric), Some(poly)),
            provenance: split.provenance_table(),
            expansion_edges: sf.graph().edge_count(),
            expansion_holds: split_expansion.is_ok(),
            structure: structure.to_document(sf.graph()),
            traintrack,
            homotopy_equivalence: he,
            folds,
            dynamics: Dynamics::of(&sf),
        },
        entropy: EntropySection {
            left_eigenvector_identity: left_eigen_identity(&t, &split_metric, &ctx),
            log_lambda: ctx.lambda_f64().ln(),
            pf_value,
            pf_lower,
            pf_upper,
            var_growth_k40: vg.last().map_or(f64::NAN, |v| v.corrected),
        },
    };
    let failures = bundle.failures();
    if !failures.is_empty() {
        return Err(SynthError::VerificationFailed {
            failures,
            bundle: Box::new(bundle),
        });
    }
    Ok(Pipeline {
        ctx,
        power_ctx,
        star,
        split,
        split_map: sf,
        split_metric,
        bundle,
    })
}

/// Base length in `Z[μ]` of edge `j` of copy 0: `λ^{i-1} s_k` read in the
/// power field.
fn base_length(mu: &NumberFieldContext, star: &StarMap, j: usize) -> LatticeElement {
    let t = star.tips[j];
    mu.mul_lambda_pow(&star.construction.semigroup.elements[t.k - 1], t.i - 1)
}

/// Runs the whole pipeline and returns the verified bundle.
pub fn run_pipeline(poly: &IntPolynomial, cfg: &Config) -> Result<CertificateBundle, SynthError> {
    synthesize(poly, cfg).map(|p| p.bundle)
}
