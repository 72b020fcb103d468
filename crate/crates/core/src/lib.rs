//! Exact tools for polyhedral subdivisions of point configurations: regular
//! subdivisions from lifting weights, envelopes and tight spans, split
//! decompositions of weight functions, k-split detection, secondary polytopes
//! with their split outer approximations, Gale duality constructions, and
//! hypersimplex splits with matroid certificates.
//!
//! All arithmetic is exact over the rationals.  Outputs are deterministic:
//! cells, faces, normals and bases are produced in canonical orders so repeated
//! runs agree byte for byte.

pub mod error;
pub mod kernel;
pub mod polyhedron;
pub mod config;
pub mod splits;
pub mod ksplit;
pub mod secondary;
pub mod gale;
pub mod hypersimplex;
pub mod io;

pub use error::SplitSpanError;
pub use kernel::{Int, Rat};

/// Resource guards for the enumeration-heavy entry points.  Callers hit a
/// `GuardRefusal` instead of an unbounded computation.
#[derive(Clone, Debug)]
pub struct Guards {
    pub max_points: usize,
    pub max_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_points: 10, max_dim: 4 }
    }
}

impl Guards {
    pub fn check(&self, n_points: usize, dim: usize, what: &str) -> Result<(), SplitSpanError> {
        if n_points > self.max_points {
            return Err(SplitSpanError::GuardRefusal(format!(
                "max_points: {what} needs {n_points} points, limit is {}",
                self.max_points
            )));
        }
        if dim > self.max_dim {
            return Err(SplitSpanError::GuardRefusal(format!(
                "max_dim: {what} needs dimension {dim}, limit is {}",
                self.max_dim
            )));
        }
        Ok(())
    }
}
