//! Isomorphism-free generation of connected graphs and theorem sweeps
//! over them.
//!
//! Level `n` is built from level `n - 1` by attaching one new vertex to
//! every nonempty subset of the old vertices and keeping one canonical
//! representative per class. Every connected graph has a non-cut vertex,
//! so each class on `n` vertices arises from some connected graph on
//! `n - 1` vertices.

pub mod canon;
pub mod sweep;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use canon::{canonical_form, CanonicalForm};

/// Largest `n` enumerated without opting in.
pub const DEFAULT_ENUM_MAX: usize = 8;
/// Largest `n` enumerated with [`EnumerateOptions::allow_extended`].
pub const EXTENDED_ENUM_MAX: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration needs n >= 1")]
    ZeroVertices,
    #[error("enumeration is limited to n <= {limit} (got {n}){hint}")]
    SizeLimit { n: usize, limit: usize, hint: &'static str },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Permit `n = 9`.
    pub allow_extended: bool,
}

impl EnumerateOptions {
    pub fn limit(self) -> usize {
        if self.allow_extended {
            EXTENDED_ENUM_MAX
        } else {
            DEFAULT_ENUM_MAX
        }
    }

    fn check(self, n: usize) -> Result<(), EnumerateError> {
        if n == 0 {
            return Err(EnumerateError::ZeroVertices);
        }
        if n > self.limit() {
            let hint = if self.allow_extended { "" } else { "; n = 9 needs the extended flag" };
            return Err(EnumerateError::SizeLimit { n, limit: self.limit(), hint });
        }
        Ok(())
    }
}

/// Canonical forms of connected graphs, one sorted list per `n` in `1..=n_max`.
pub fn connected_levels(n_max: usize, opts: EnumerateOptions) -> Result<Vec<Vec<CanonicalForm>>, EnumerateError> {
    opts.check(n_max)?;
    let mut levels = vec![vec![CanonicalForm { n: 1, code: 0 }]];
    for _ in 2..=n_max {
        let next = augment(levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok(levels)
}

fn augment(parents: &[CanonicalForm]) -> Vec<CanonicalForm> {
    let found: BTreeSet<CanonicalForm> = parents
        .par_iter()
        .map(|form| {
            let base = form.to_graph();
            let m = base.n();
            let mut out = BTreeSet::new();
            for subset in 1u64..1 << m {
                let mut g = Graph::empty(m + 1).expect("n within limit");
                for e in base.edges() {
                    g.add_edge(e.u, e.v).expect("fresh graph");
                }
                for v in 0..m {
                    if subset >> v & 1 == 1 {
                        g.add_edge(v, m).expect("fresh vertex");
                    }
                }
                out.insert(canonical_form(&g).expect("n within limit"));
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    found.into_iter().collect()
}

/// Canonical forms of the connected graphs on exactly `n` vertices.
pub fn connected_forms(n: usize, opts: EnumerateOptions) -> Result<Vec<CanonicalForm>, EnumerateError> {
    Ok(connected_levels(n, opts)?.pop().expect("n >= 1"))
}

/// One canonically labeled representative per isomorphism class of
/// connected graphs on `n` vertices, in canonical-form order.
pub fn enumerate_connected(n: usize, opts: EnumerateOptions) -> Result<impl Iterator<Item = Graph>, EnumerateError> {
    Ok(connected_forms(n, opts)?.into_iter().map(CanonicalForm::to_graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> =
            connected_levels(7, EnumerateOptions::default()).unwrap().iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn level_three_is_path_and_triangle() {
        let gs: Vec<Graph> = enumerate_connected(3, EnumerateOptions::default()).unwrap().collect();
        assert_eq!(gs.iter().map(Graph::edge_count).collect::<Vec<_>>(), [2, 3]);
        assert!(gs.iter().all(Graph::is_connected));
    }

    #[test]
    fn limits() {
        let opts = EnumerateOptions::default();
        assert_eq!(connected_forms(0, opts), Err(EnumerateError::ZeroVertices));
        assert!(matches!(connected_forms(9, opts), Err(EnumerateError::SizeLimit { n: 9, limit: 8, .. })));
        let ext = EnumerateOptions { allow_extended: true };
        assert!(matches!(connected_forms(10, ext), Err(EnumerateError::SizeLimit { n: 10, limit: 9, .. })));
    }

    #[test]
    fn forms_are_sorted_and_distinct() {
        let forms = connected_forms(6, EnumerateOptions::default()).unwrap();
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
    }
}
