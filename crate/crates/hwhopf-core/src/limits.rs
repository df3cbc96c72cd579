//! Size guards for operations with exponential blow-up.
//!
//! Products, decompositions and antipodes all enumerate combinatorial spaces
//! that grow exponentially in the number of lines. The guards here make the
//! library fail loudly instead of hanging when an input is out of desk scale.

use core::fmt;

/// Configurable size bounds. The defaults are sized for interactive use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count allowed in any produced diagram term.
    pub max_vertices: usize,
    /// Largest line count allowed in any produced diagram term.
    pub max_edges: usize,
    /// Largest line count for which a diagram may be decomposed
    /// (the number of splittings is `2^lines`).
    pub decomposition_edge_limit: usize,
    /// Largest line count for which the antipode may be evaluated
    /// (the number of ordered partitions grows like the ordered Bell numbers).
    pub antipode_edge_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 10,
            max_edges: 12,
            decomposition_edge_limit: 16,
            antipode_edge_limit: 8,
        }
    }
}

impl Limits {
    /// Limits wide enough to hold every term of a computation whose inputs
    /// have at most `edges` lines in total. Composition never increases the
    /// total line count and a diagram never has more than two vertices per
    /// line, so products of restrictions of such inputs always fit.
    pub fn for_total_edges(edges: usize) -> Self {
        Limits {
            max_vertices: 2 * edges,
            max_edges: edges,
            decomposition_edge_limit: edges,
            antipode_edge_limit: edges,
        }
    }
}

/// Which configured bound an operation ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeGuardKind {
    Vertices,
    Edges,
    Decomposition,
    Antipode,
}

/// Error raised when an operation would exceed a configured bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeGuardExceeded {
    pub kind: SizeGuardKind,
    pub value: usize,
    pub limit: usize,
}

impl fmt::Display for SizeGuardExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            SizeGuardKind::Vertices => "vertex count",
            SizeGuardKind::Edges => "line count",
            SizeGuardKind::Decomposition => "line count for decomposition",
            SizeGuardKind::Antipode => "line count for antipode",
        };
        write!(
            f,
            "size guard exceeded: {} {} is over the configured limit {}",
            what, self.value, self.limit
        )
    }
}

impl core::error::Error for SizeGuardExceeded {}

pub(crate) fn guard(
    kind: SizeGuardKind,
    value: usize,
    limit: usize,
) -> Result<(), SizeGuardExceeded> {
    if value > limit {
        Err(SizeGuardExceeded { kind, value, limit })
    } else {
        Ok(())
    }
}
