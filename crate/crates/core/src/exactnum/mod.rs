//! Exact numbers: rationals, quadratic surds and rational enclosures.

mod enclosure;
pub mod rational;
mod surd;

pub use enclosure::Enclosure;
pub use rational::{int, rat, Rational};
pub use surd::{squarefree_split, SurdExpr, MAX_RADICAND};

/// Serde adapters writing rationals as `"n/d"` decimal-digit strings.
pub mod serde_rational {
    use super::rational::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn to_text(r: &Rational) -> String {
        r.to_string()
    }

    pub fn from_text(s: &str) -> Result<Rational, String> {
        parse_rational(s).map_err(|e| e.to_string())
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        from_text(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&to_text(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| from_text(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(r) => s.serialize_some(&to_text(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| from_text(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}

mod surd_serde {
    use super::{serde_rational, SurdExpr};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Term {
        radicand: u64,
        coef: String,
    }

    impl Serialize for SurdExpr {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let terms: Vec<Term> = self
                .terms()
                .map(|(d, c)| Term {
                    radicand: d,
                    coef: serde_rational::to_text(c),
                })
                .collect();
            terms.serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for SurdExpr {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let terms = Vec::<Term>::deserialize(d)?;
            let mut out = Vec::with_capacity(terms.len());
            for t in terms {
                if t.radicand == 0 || t.radicand > super::MAX_RADICAND {
                    return Err(D::Error::custom("radicand out of range"));
                }
                out.push((t.radicand, serde_rational::from_text(&t.coef).map_err(D::Error::custom)?));
            }
            Ok(SurdExpr::from_terms(out))
        }
    }
}
