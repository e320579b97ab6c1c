//! Deterministic synthetic graphs: basic families, composites used as hard
//! cases, and the planted-set pairs behind the query lower bounds.

mod basic;
mod lower_bounds;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::oracle::derive_rng;

pub use basic::{
    clique, clique_bipartite_tail, clique_plus_independent, complete_bipartite, cycle,
    cycle_plus_clique, cycle_plus_cycle, erdos_renyi, path, preferential_attachment, star,
    star_plus_path,
};
pub use lower_bounds::{
    first_term_c2, gen_lb_first_term, gen_s_set_family, gen_valid_lb, PlantedGraph, SSetParams,
    Which,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    Invalid(&'static str),
    #[error("infeasible construction: {reason}")]
    Infeasible { reason: &'static str },
}

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum Family {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    Clique {
        k: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    PreferentialAttachment {
        n: usize,
        m0: usize,
    },
    StarPlusPath {
        leaves: usize,
        path: usize,
    },
    CliquePlusIndependent {
        n: usize,
        k: usize,
    },
    CliqueBipartiteTail {
        n: usize,
        k: usize,
        tail: usize,
    },
    CyclePlusCycle {
        a: usize,
        b: usize,
    },
    CyclePlusClique {
        a: usize,
        k: usize,
    },
    LbFirstTerm {
        n: usize,
        alpha_t: usize,
        m_t: f64,
        s: u32,
        which: u8,
    },
    SSetFamily {
        n: usize,
        b: usize,
        d: usize,
        d_prime: usize,
        #[cfg_attr(feature = "serde", serde(default))]
        planted_clique: Option<usize>,
        which: u8,
    },
    ValidLb {
        n: usize,
        c: f64,
        which: u8,
    },
}

/// A family plus the seed that fixes every random choice.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneratorSpec {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub family: Family,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
    /// Apply a uniformly random relabeling afterwards. The planted-set
    /// families are always relabeled.
    #[cfg_attr(feature = "serde", serde(default))]
    pub relabel: bool,
}

/// A generated graph with the planted set, when the family has one.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub special: Option<Vec<Vertex>>,
    pub degree_deficit: usize,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Star { .. } => "star",
            Family::Clique { .. } => "clique",
            Family::CompleteBipartite { .. } => "complete_bipartite",
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::PreferentialAttachment { .. } => "preferential_attachment",
            Family::StarPlusPath { .. } => "star_plus_path",
            Family::CliquePlusIndependent { .. } => "clique_plus_independent",
            Family::CliqueBipartiteTail { .. } => "clique_bipartite_tail",
            Family::CyclePlusCycle { .. } => "cycle_plus_cycle",
            Family::CyclePlusClique { .. } => "cycle_plus_clique",
            Family::LbFirstTerm { .. } => "lb_first_term",
            Family::SSetFamily { .. } => "s_set_family",
            Family::ValidLb { .. } => "valid_lb",
        }
    }

    /// Short human-readable label, e.g. `erdos_renyi(n=100,p=0.05)`.
    pub fn label(&self) -> String {
        let params = match self {
            Family::Path { n } | Family::Cycle { n } => format!("n={n}"),
            Family::Star { leaves } => format!("leaves={leaves}"),
            Family::Clique { k } => format!("k={k}"),
            Family::CompleteBipartite { a, b } | Family::CyclePlusCycle { a, b } => {
                format!("a={a},b={b}")
            }
            Family::ErdosRenyi { n, p } => format!("n={n},p={p}"),
            Family::PreferentialAttachment { n, m0 } => format!("n={n},m0={m0}"),
            Family::StarPlusPath { leaves, path } => format!("leaves={leaves},path={path}"),
            Family::CliquePlusIndependent { n, k } => format!("n={n},k={k}"),
            Family::CliqueBipartiteTail { n, k, tail } => format!("n={n},k={k},tail={tail}"),
            Family::CyclePlusClique { a, k } => format!("a={a},k={k}"),
            Family::LbFirstTerm {
                n,
                alpha_t,
                m_t,
                s,
                which,
            } => format!("n={n},alpha_t={alpha_t},m_t={m_t},s={s},which={which}"),
            Family::SSetFamily {
                n,
                b,
                d,
                d_prime,
                planted_clique,
                which,
            } => {
                let clique = planted_clique.map_or(String::new(), |k| format!(",clique={k}"));
                format!("n={n},b={b},d={d},d_prime={d_prime}{clique},which={which}")
            }
            Family::ValidLb { n, c, which } => format!("n={n},c={c},which={which}"),
        };
        format!("{}({})", self.name(), params)
    }
}

fn which(i: u8) -> Result<Which, GeneratorError> {
    Which::from_index(i).ok_or(GeneratorError::Invalid("which must be 1 or 2"))
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec {
            family,
            seed,
            relabel: false,
        }
    }

    pub fn relabeled(mut self) -> Self {
        self.relabel = true;
        self
    }

    pub fn label(&self) -> String {
        format!("{}#{}", self.family.label(), self.seed)
    }

    pub fn generate(&self) -> Result<Generated, GeneratorError> {
        let mut rng = derive_rng(self.seed, 0);
        let plain = |graph: Graph| Generated {
            graph,
            special: None,
            degree_deficit: 0,
        };
        let planted = |p: PlantedGraph| Generated {
            graph: p.graph,
            special: Some(p.special),
            degree_deficit: p.degree_deficit,
        };
        let out = match self.family {
            Family::Path { n } => plain(path(n)?),
            Family::Cycle { n } => plain(cycle(n)?),
            Family::Star { leaves } => plain(star(leaves)?),
            Family::Clique { k } => plain(clique(k)?),
            Family::CompleteBipartite { a, b } => plain(complete_bipartite(a, b)?),
            Family::ErdosRenyi { n, p } => plain(erdos_renyi(n, p, &mut rng)?),
            Family::PreferentialAttachment { n, m0 } => {
                plain(preferential_attachment(n, m0, &mut rng)?)
            }
            Family::StarPlusPath { leaves, path } => plain(star_plus_path(leaves, path)?),
            Family::CliquePlusIndependent { n, k } => plain(clique_plus_independent(n, k)?),
            Family::CliqueBipartiteTail { n, k, tail } => plain(clique_bipartite_tail(n, k, tail)?),
            Family::CyclePlusCycle { a, b } => plain(cycle_plus_cycle(a, b)?),
            Family::CyclePlusClique { a, k } => plain(cycle_plus_clique(a, k)?),
            Family::LbFirstTerm {
                n,
                alpha_t,
                m_t,
                s,
                which: w,
            } => planted(gen_lb_first_term(n, alpha_t, m_t, s, which(w)?, &mut rng)?),
            Family::SSetFamily {
                n,
                b,
                d,
                d_prime,
                planted_clique,
                which: w,
            } => {
                let p = SSetParams {
                    n,
                    b,
                    d,
                    d_prime,
                    planted_clique,
                };
                planted(gen_s_set_family(p, which(w)?, &mut rng)?)
            }
            Family::ValidLb { n, c, which: w } => planted(gen_valid_lb(n, c, which(w)?, &mut rng)?),
        };
        if self.relabel && out.special.is_none() {
            let mut relabel_rng = derive_rng(self.seed, 1);
            return Ok(plain(random_relabel(&out.graph, &mut relabel_rng)));
        }
        Ok(out)
    }
}

/// Applies a uniformly random permutation to the vertex ids.
pub fn random_relabel<R: rand::Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<Vertex> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm).expect("a shuffle is a permutation")
}

/// The 200-graph test corpus: every family at several sizes up to `10^4`
/// vertices, with fixed seeds.
pub fn corpus() -> Vec<GeneratorSpec> {
    let mut out = Vec::with_capacity(200);
    let mut push = |family: Family, seed: u64, relabel: bool| {
        out.push(GeneratorSpec {
            family,
            seed,
            relabel,
        })
    };
    for (i, n) in [2usize, 3, 5, 17, 100, 1000, 10_000]
        .into_iter()
        .enumerate()
    {
        push(Family::Path { n }, i as u64, false);
    }
    for (i, n) in [3usize, 4, 7, 64, 999, 10_000].into_iter().enumerate() {
        push(Family::Cycle { n }, i as u64, i % 2 == 1);
    }
    for (i, leaves) in [1usize, 2, 4, 31, 500, 9_999].into_iter().enumerate() {
        push(Family::Star { leaves }, i as u64, i % 2 == 0);
    }
    for (i, k) in [1usize, 2, 3, 5, 10, 40, 120].into_iter().enumerate() {
        push(Family::Clique { k }, i as u64, false);
    }
    for (i, (a, b)) in [(1, 1), (2, 3), (5, 5), (3, 200), (30, 300), (100, 9_900)]
        .into_iter()
        .enumerate()
    {
        push(Family::CompleteBipartite { a, b }, i as u64, i % 2 == 1);
    }
    for seed in 0..8u64 {
        for (n, p) in [
            (10usize, 0.3),
            (50, 0.1),
            (100, 0.05),
            (1000, 0.01),
            (3000, 0.002),
        ] {
            push(Family::ErdosRenyi { n, p }, seed, false);
        }
    }
    push(Family::ErdosRenyi { n: 10_000, p: 1e-3 }, 100, false);
    push(Family::ErdosRenyi { n: 10_000, p: 1e-3 }, 101, false);
    for seed in 0..6u64 {
        for (n, m0) in [(20usize, 1), (200, 2), (1000, 3), (3000, 5)] {
            push(Family::PreferentialAttachment { n, m0 }, seed, false);
        }
    }
    for seed in 0..4u64 {
        push(
            Family::PreferentialAttachment { n: 500, m0: 8 },
            seed,
            seed % 2 == 1,
        );
    }
    push(
        Family::PreferentialAttachment { n: 10_000, m0: 3 },
        100,
        false,
    );
    push(
        Family::PreferentialAttachment { n: 10_000, m0: 1 },
        101,
        false,
    );
    for (i, (leaves, path)) in [(1, 1), (3, 4), (20, 20), (200, 800), (5000, 5000)]
        .into_iter()
        .enumerate()
    {
        push(Family::StarPlusPath { leaves, path }, i as u64, i % 2 == 0);
    }
    for (i, (n, k)) in [(5, 2), (50, 10), (1000, 10), (1000, 40), (10_000, 100)]
        .into_iter()
        .enumerate()
    {
        push(Family::CliquePlusIndependent { n, k }, i as u64, true);
    }
    for (i, (n, k, tail)) in [(10, 2, 3), (100, 5, 50), (1000, 10, 80), (10_000, 20, 500)]
        .into_iter()
        .enumerate()
    {
        push(Family::CliqueBipartiteTail { n, k, tail }, i as u64, true);
    }
    for (i, (a, b)) in [(3, 3), (10, 5), (500, 60), (9_600, 400)]
        .into_iter()
        .enumerate()
    {
        push(Family::CyclePlusCycle { a, b }, i as u64, false);
    }
    for (i, (a, k)) in [(3, 1), (10, 4), (500, 30), (9_600, 400)]
        .into_iter()
        .enumerate()
    {
        push(Family::CyclePlusClique { a, k }, i as u64, false);
    }
    for seed in 0..4u64 {
        for (n, alpha_t, m_t, s) in [
            (1000usize, 10usize, 81_000.0, 2u32),
            (200, 4, 4.0 * 30.0, 1),
            (5000, 6, 6.0 * 125_000.0, 3),
        ] {
            for which in [1u8, 2] {
                push(
                    Family::LbFirstTerm {
                        n,
                        alpha_t,
                        m_t,
                        s,
                        which,
                    },
                    seed,
                    false,
                );
            }
        }
    }
    for seed in 0..4u64 {
        for (n, b, d, d_prime, planted_clique) in [
            (2000usize, 4usize, 4usize, 200usize, None),
            (500, 2, 3, 50, Some(6)),
            (104, 4, 6, 100, None),
            (1002, 2, 10, 1000, Some(12)),
        ] {
            for which in [1u8, 2] {
                push(
                    Family::SSetFamily {
                        n,
                        b,
                        d,
                        d_prime,
                        planted_clique,
                        which,
                    },
                    seed,
                    false,
                );
            }
        }
    }
    for seed in 0..3u64 {
        for (n, c) in [(400usize, 1.0), (10_000, 1.0), (2500, 0.5)] {
            for which in [1u8, 2] {
                push(Family::ValidLb { n, c, which }, seed, false);
            }
        }
    }
    out
}
