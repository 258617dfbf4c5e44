//! Dense fuzzy graph storage.
//!
//! A fuzzy graph on `n` labeled vertices carries a vertex membership
//! `nu(v)` in `[0, 1]` and a symmetric edge membership `mu(u, v)` bounded by
//! `min(nu(u), nu(v))`. Instances are small, so memberships live in a dense
//! row-major `n * n` matrix that is mirrored on construction.

use crate::error::GraphError;

/// Compensated (Neumaier) summation.
///
/// Degree sums mix magnitudes such as `0.2 + 0.4 + 0.4`; plain accumulation
/// drifts by an ulp or two depending on order, which shows up in the
/// zero-variance checks.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    carry: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.sum + self.carry
    }
}

pub(crate) fn accurate_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Accumulator::default();
    for x in values {
        acc.add(x);
    }
    acc.total()
}

/// An immutable, validated fuzzy graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyGraph {
    nu: Vec<f64>,
    mu: Vec<f64>,
}

impl FuzzyGraph {
    /// Builds a graph from vertex memberships and an edge list.
    ///
    /// Each undirected edge may be listed once in either orientation. Zero
    /// weights are accepted and leave the pair unconnected.
    pub fn from_edges(nu: Vec<f64>, edges: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        let n = nu.len();
        validate_vertices(&nu)?;
        let mut mu = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for &(a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop {
                    vertex: a,
                    value: w,
                });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if seen[u * n + v] {
                return Err(GraphError::invalid(
                    "edges",
                    format!("edge ({u}, {v}) listed more than once"),
                ));
            }
            seen[u * n + v] = true;
            check_edge(&nu, u, v, w)?;
            mu[u * n + v] = w;
            mu[v * n + u] = w;
        }
        Ok(FuzzyGraph { nu, mu })
    }

    /// Builds a graph from a full row-major membership matrix, checking
    /// symmetry, the zero diagonal and the membership bound.
    pub fn from_matrix(nu: Vec<f64>, mu: Vec<f64>) -> Result<Self, GraphError> {
        let n = nu.len();
        validate_vertices(&nu)?;
        if mu.len() != n * n {
            return Err(GraphError::invalid(
                "mu",
                format!("expected {} entries, got {}", n * n, mu.len()),
            ));
        }
        for v in 0..n {
            let d = mu[v * n + v];
            if d != 0.0 {
                return Err(GraphError::SelfLoop {
                    vertex: v,
                    value: d,
                });
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                let forward = mu[u * n + v];
                let backward = mu[v * n + u];
                if forward != backward {
                    return Err(GraphError::Asymmetric {
                        u,
                        v,
                        forward,
                        backward,
                    });
                }
                check_edge(&nu, u, v, forward)?;
            }
        }
        Ok(FuzzyGraph { nu, mu })
    }

    /// Graph with the given vertex memberships and no edges.
    pub fn edgeless(nu: Vec<f64>) -> Result<Self, GraphError> {
        Self::from_edges(nu, &[])
    }

    /// Edgeless graph on `n` vertices with full vertex membership.
    pub fn empty_crisp(n: usize) -> Self {
        FuzzyGraph {
            nu: vec![1.0; n],
            mu: vec![0.0; n * n],
        }
    }

    /// Builds a graph by evaluating `weight(u, v)` for every pair `u < v`.
    pub(crate) fn from_fn<F>(nu: Vec<f64>, mut weight: F) -> Result<Self, GraphError>
    where
        F: FnMut(usize, usize) -> f64,
    {
        let n = nu.len();
        validate_vertices(&nu)?;
        let mut mu = vec![0.0; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                let w = weight(u, v);
                check_edge(&nu, u, v, w)?;
                mu[u * n + v] = w;
                mu[v * n + u] = w;
            }
        }
        Ok(FuzzyGraph { nu, mu })
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self, v: usize) -> f64 {
        self.nu[v]
    }

    pub fn memberships(&self) -> &[f64] {
        &self.nu
    }

    /// Edge membership `mu(u, v)`; zero on the diagonal.
    pub fn mu(&self, u: usize, v: usize) -> f64 {
        self.mu[u * self.n() + v]
    }

    /// Row `v` of the membership matrix.
    pub fn row(&self, v: usize) -> &[f64] {
        let n = self.n();
        &self.mu[v * n..(v + 1) * n]
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Pairs `u < v` with positive membership, in `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            ((u + 1)..n).filter_map(move |v| {
                let w = self.mu(u, v);
                (w > 0.0).then_some((u, v, w))
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// True when every vertex has membership exactly one.
    pub fn has_unit_memberships(&self) -> bool {
        self.nu.iter().all(|&x| x == 1.0)
    }
}

fn validate_vertices(nu: &[f64]) -> Result<(), GraphError> {
    for (v, &x) in nu.iter().enumerate() {
        if !(0.0..=1.0).contains(&x) {
            return Err(GraphError::VertexMembership {
                vertex: v,
                value: x,
            });
        }
    }
    Ok(())
}

fn check_edge(nu: &[f64], u: usize, v: usize, w: f64) -> Result<(), GraphError> {
    let bound = nu[u].min(nu[v]);
    if !(0.0..=bound).contains(&w) {
        return Err(GraphError::EdgeMembership {
            u,
            v,
            value: w,
            bound,
        });
    }
    Ok(())
}
