use alloc::vec::Vec;

use crate::graph::Vertex;
use crate::oracle::Oracle;

/// The multiset `R` of uniformly sampled vertices with their degrees.
///
/// Degree-proportional draws pick a uniform position in `0..d_R` and binary
/// search the running degree sums, so a member of degree 0 is never drawn and
/// repeated members are drawn in proportion to their multiplicity.
#[derive(Debug, Clone, Default)]
pub struct RSample {
    members: Vec<Vertex>,
    degrees: Vec<u64>,
    cumulative: Vec<u64>,
}

impl RSample {
    pub fn with_capacity(r: usize) -> Self {
        RSample {
            members: Vec::with_capacity(r),
            degrees: Vec::with_capacity(r),
            cumulative: Vec::with_capacity(r),
        }
    }

    pub fn push(&mut self, v: Vertex, degree: u64) {
        let total = self.d_r() + degree;
        self.members.push(v);
        self.degrees.push(degree);
        self.cumulative.push(total);
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `d_R`, the sum of member degrees.
    pub fn d_r(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// Member index owning position `t` in `0..d_R`.
    pub fn locate(&self, t: u64) -> usize {
        debug_assert!(t < self.d_r());
        self.cumulative.partition_point(|&c| c <= t)
    }

    /// Draws a member index with probability `degree / d_R`, using the
    /// oracle's private coin. Requires `d_R > 0`.
    pub fn draw<O: Oracle + ?Sized>(&self, oracle: &mut O) -> usize {
        self.locate(oracle.coin(self.d_r()))
    }
}
