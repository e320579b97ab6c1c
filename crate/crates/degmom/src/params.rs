//! Parsing helpers shared by the CLI and experiment configs.

use std::collections::BTreeMap;
use std::fmt;

use degmom_core::generators::Family;
use degmom_core::Fraction;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("`{0}` is not a fraction (use a/b or a decimal such as 0.25)")]
    Fraction(String),
    #[error("`{0}` is not a key=value pair")]
    Pair(String),
    #[error("family `{family}` needs parameter `{key}`")]
    Missing { family: String, key: &'static str },
    #[error("bad value `{value}` for `{key}`")]
    Value { key: String, value: String },
    #[error("unknown parameter `{key}` for family `{family}`")]
    Unknown { family: String, key: String },
    #[error("unknown family `{0}`")]
    Family(String),
    #[error("alpha must be `auto`, `none` or a positive integer, got `{0}`")]
    Alpha(String),
}

/// Reads `a/b`, an integer, or a finite decimal, exactly.
pub fn parse_fraction(text: &str) -> Result<Fraction, ParamError> {
    let bad = || ParamError::Fraction(text.to_owned());
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Fraction::new(a, b));
    }
    let (whole, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.len() > 18 || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    if !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: u64 = digits.parse().map_err(|_| bad())?;
    let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    Ok(Fraction::new(num, den))
}

/// A [`Fraction`] that serializes as `"a/b"` and deserializes from a string or
/// a JSON number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac(pub Fraction);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Frac;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a fraction such as \"1/4\" or 0.25")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Frac, E> {
                parse_fraction(v).map(Frac).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Frac, E> {
                // Shortest round-trip formatting recovers the literal as written.
                self.visit_str(&format!("{v}"))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Frac, E> {
                Ok(Frac(Fraction::from_integer(v)))
            }
        }
        d.deserialize_any(V)
    }
}

/// How the degeneracy bound handed to the estimator is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaPolicy {
    /// Use the core number of the input graph.
    Auto,
    Given(u64),
    #[default]
    None,
}

impl AlphaPolicy {
    pub fn parse(text: &str) -> Result<Self, ParamError> {
        match text.trim() {
            "auto" => Ok(AlphaPolicy::Auto),
            "none" => Ok(AlphaPolicy::None),
            t => match t.parse::<u64>() {
                Ok(k) if k >= 1 => Ok(AlphaPolicy::Given(k)),
                _ => Err(ParamError::Alpha(text.to_owned())),
            },
        }
    }

    pub fn resolve(self, g: &degmom_core::Graph) -> Option<u64> {
        match self {
            AlphaPolicy::Auto => Some(degmom_core::core_number(g).max(1) as u64),
            AlphaPolicy::Given(k) => Some(k),
            AlphaPolicy::None => None,
        }
    }
}

impl fmt::Display for AlphaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaPolicy::Auto => f.write_str("auto"),
            AlphaPolicy::Given(k) => write!(f, "{k}"),
            AlphaPolicy::None => f.write_str("none"),
        }
    }
}

impl Serialize for AlphaPolicy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlphaPolicy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = AlphaPolicy;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"auto\", \"none\" or a positive integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<AlphaPolicy, E> {
                AlphaPolicy::parse(v).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<AlphaPolicy, E> {
                AlphaPolicy::parse(&v.to_string()).map_err(E::custom)
            }
            fn visit_unit<E: de::Error>(self) -> Result<AlphaPolicy, E> {
                Ok(AlphaPolicy::None)
            }
        }
        d.deserialize_any(V)
    }
}

/// Splits `k=v,k=v` into a map.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ParamError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| ParamError::Pair(part.to_owned()))?;
        out.insert(k.trim().to_owned(), v.trim().to_owned());
    }
    Ok(out)
}

struct Params<'a> {
    family: &'a str,
    map: BTreeMap<String, String>,
}

impl Params<'_> {
    fn get<T: std::str::FromStr>(&mut self, key: &'static str) -> Result<T, ParamError> {
        let v = self.map.remove(key).ok_or_else(|| ParamError::Missing {
            family: self.family.to_owned(),
            key,
        })?;
        v.parse().map_err(|_| ParamError::Value {
            key: key.to_owned(),
            value: v,
        })
    }

    fn opt<T: std::str::FromStr>(&mut self, key: &'static str) -> Result<Option<T>, ParamError> {
        if self.map.contains_key(key) {
            self.get(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn finish(self) -> Result<(), ParamError> {
        match self.map.into_keys().next() {
            Some(key) => Err(ParamError::Unknown {
                family: self.family.to_owned(),
                key,
            }),
            None => Ok(()),
        }
    }
}

/// Builds a [`Family`] from its snake_case name and `k=v,...` parameters.
pub fn family_from_params(name: &str, params: &str) -> Result<Family, ParamError> {
    let mut p = Params {
        family: name,
        map: parse_pairs(params)?,
    };
    let fam = match name {
        "path" => Family::Path { n: p.get("n")? },
        "cycle" => Family::Cycle { n: p.get("n")? },
        "star" => Family::Star {
            leaves: p.get("leaves")?,
        },
        "clique" => Family::Clique { k: p.get("k")? },
        "complete_bipartite" => Family::CompleteBipartite {
            a: p.get("a")?,
            b: p.get("b")?,
        },
        "erdos_renyi" => Family::ErdosRenyi {
            n: p.get("n")?,
            p: p.get("p")?,
        },
        "preferential_attachment" => Family::PreferentialAttachment {
            n: p.get("n")?,
            m0: p.get("m0")?,
        },
        "star_plus_path" => Family::StarPlusPath {
            leaves: p.get("leaves")?,
            path: p.get("path")?,
        },
        "clique_plus_independent" => Family::CliquePlusIndependent {
            n: p.get("n")?,
            k: p.get("k")?,
        },
        "clique_bipartite_tail" => Family::CliqueBipartiteTail {
            n: p.get("n")?,
            k: p.get("k")?,
            tail: p.get("tail")?,
        },
        "cycle_plus_cycle" => Family::CyclePlusCycle {
            a: p.get("a")?,
            b: p.get("b")?,
        },
        "cycle_plus_clique" => Family::CyclePlusClique {
            a: p.get("a")?,
            k: p.get("k")?,
        },
        "lb_first_term" => Family::LbFirstTerm {
            n: p.get("n")?,
            alpha_t: p.get("alpha_t")?,
            m_t: p.get("m_t")?,
            s: p.get("s")?,
            which: p.get("which")?,
        },
        "s_set_family" => Family::SSetFamily {
            n: p.get("n")?,
            b: p.get("b")?,
            d: p.get("d")?,
            d_prime: p.get("d_prime")?,
            planted_clique: p.opt("planted_clique")?,
            which: p.get("which")?,
        },
        "valid_lb" => Family::ValidLb {
            n: p.get("n")?,
            c: p.get("c")?,
            which: p.get("which")?,
        },
        other => return Err(ParamError::Family(other.to_owned())),
    };
    p.finish()?;
    Ok(fam)
}
