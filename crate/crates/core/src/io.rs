//! Serde helpers: exact numbers are written as decimal strings.

/// `BigInt` as a decimal string.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("bad integer {raw:?}")))
    }
}

/// `BigRational` as `"p/q"` or `"p"`.
pub mod rational_str {
    use num_rational::BigRational;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        raw.trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("bad rational {raw:?}")))
    }
}

/// `Vec<BigInt>` as a list of decimal strings.
pub mod bigint_vec {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|r| {
                r.trim()
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad integer {r:?}")))
            })
            .collect()
    }
}

/// Nested `Vec<Vec<BigInt>>` as string lists.
pub mod bigint_rows {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = x
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| {
                        r.trim()
                            .parse()
                            .map_err(|_| D::Error::custom(format!("bad integer {r:?}")))
                    })
                    .collect()
            })
            .collect()
    }
}
