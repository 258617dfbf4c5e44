//! Binary graph constructions and the fuzzy complement.
//!
//! Vertex indexing is fixed: in `union` and `join` the second operand's
//! vertex `i` becomes `n1 + i`; product constructions number the pair
//! `(u, v)` as `u * n2 + v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::FuzzyGraph;

/// How product constructions combine two memberships.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[default]
    Minimum,
    Product,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Minimum => a.min(b),
            TNorm::Product => a * b,
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TNorm::Minimum => "min",
            TNorm::Product => "product",
        })
    }
}

impl FromStr for TNorm {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "product" | "prod" => Ok(TNorm::Product),
            other => Err(GraphError::invalid(
                "tnorm",
                format!("unknown t-norm `{other}` (expected min or product)"),
            )),
        }
    }
}

/// The operations exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Union,
    Join,
    Cartesian,
    Tensor,
    Composition,
    Complement,
}

impl OpKind {
    pub fn arity(self) -> usize {
        match self {
            OpKind::Complement => 1,
            _ => 2,
        }
    }
}

impl FromStr for OpKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "union" => OpKind::Union,
            "join" => OpKind::Join,
            "cartesian" => OpKind::Cartesian,
            "tensor" => OpKind::Tensor,
            "composition" => OpKind::Composition,
            "complement" => OpKind::Complement,
            other => {
                return Err(GraphError::invalid(
                    "kind",
                    format!("unknown operation `{other}`"),
                ))
            }
        })
    }
}

fn concat_nu(g1: &FuzzyGraph, g2: &FuzzyGraph) -> Vec<f64> {
    g1.memberships()
        .iter()
        .chain(g2.memberships())
        .copied()
        .collect()
}

fn pair_nu(g1: &FuzzyGraph, g2: &FuzzyGraph) -> Vec<f64> {
    let mut nu = Vec::with_capacity(g1.n() * g2.n());
    for u in 0..g1.n() {
        for v in 0..g2.n() {
            nu.push(g1.nu(u).min(g2.nu(v)));
        }
    }
    nu
}

/// Disjoint union; no edges between the two blocks.
pub fn union(g1: &FuzzyGraph, g2: &FuzzyGraph) -> FuzzyGraph {
    let n1 = g1.n();
    FuzzyGraph::from_fn(concat_nu(g1, g2), |u, v| match (u < n1, v < n1) {
        (true, true) => g1.mu(u, v),
        (false, false) => g2.mu(u - n1, v - n1),
        _ => 0.0,
    })
    .expect("blockwise copy preserves membership bounds")
}

/// Union plus every cross pair with membership `min(nu1(u), nu2(v))`.
pub fn join(g1: &FuzzyGraph, g2: &FuzzyGraph) -> FuzzyGraph {
    let n1 = g1.n();
    FuzzyGraph::from_fn(concat_nu(g1, g2), |u, v| match (u < n1, v < n1) {
        (true, true) => g1.mu(u, v),
        (false, false) => g2.mu(u - n1, v - n1),
        // u < v, so u is in the first block here
        _ => g1.nu(u).min(g2.nu(v - n1)),
    })
    .expect("cross memberships equal the endpoint bound")
}

/// Min-based Cartesian product.
pub fn cartesian(g1: &FuzzyGraph, g2: &FuzzyGraph) -> FuzzyGraph {
    let n2 = g2.n();
    FuzzyGraph::from_fn(pair_nu(g1, g2), |a, b| {
        let (u1, v1) = (a / n2, a % n2);
        let (u2, v2) = (b / n2, b % n2);
        if u1 == u2 {
            let w = g2.mu(v1, v2);
            if w > 0.0 {
                return g1.nu(u1).min(w);
            }
        } else if v1 == v2 {
            let w = g1.mu(u1, u2);
            if w > 0.0 {
                return w.min(g2.nu(v1));
            }
        }
        0.0
    })
    .expect("min with an operand edge stays under the pair bound")
}

/// Tensor (categorical) product with a chosen t-norm.
pub fn tensor(g1: &FuzzyGraph, g2: &FuzzyGraph, t: TNorm) -> FuzzyGraph {
    let n2 = g2.n();
    FuzzyGraph::from_fn(pair_nu(g1, g2), |a, b| {
        let (u1, v1) = (a / n2, a % n2);
        let (u2, v2) = (b / n2, b % n2);
        if u1 != u2 && v1 != v2 {
            t.apply(g1.mu(u1, u2), g2.mu(v1, v2))
        } else {
            0.0
        }
    })
    .expect("both t-norms are bounded by the minimum")
}

/// Lexicographic composition `g1[g2]`.
///
/// Pairs in the same layer copy `g2`'s edge; pairs in different layers copy
/// `g1`'s edge regardless of the second coordinate. Fails when a copied
/// membership exceeds the truncated vertex memberships of its endpoints.
pub fn composition(g1: &FuzzyGraph, g2: &FuzzyGraph) -> Result<FuzzyGraph, GraphError> {
    let n2 = g2.n();
    FuzzyGraph::from_fn(pair_nu(g1, g2), |a, b| {
        let (u1, v1) = (a / n2, a % n2);
        let (u2, v2) = (b / n2, b % n2);
        if u1 == u2 {
            g2.mu(v1, v2)
        } else {
            g1.mu(u1, u2)
        }
    })
}

/// Fuzzy complement: `min(nu(u), nu(v)) - mu(u, v)` on every pair.
pub fn complement(g: &FuzzyGraph) -> FuzzyGraph {
    FuzzyGraph::from_fn(g.memberships().to_vec(), |u, v| {
        g.nu(u).min(g.nu(v)) - g.mu(u, v)
    })
    .expect("complement stays in [0, min(nu, nu)]")
}

/// Applies `kind` to one or two operands.
pub fn apply(kind: OpKind, operands: &[FuzzyGraph], t: TNorm) -> Result<FuzzyGraph, GraphError> {
    if operands.len() != kind.arity() {
        return Err(GraphError::invalid(
            "operands",
            format!(
                "{kind:?} takes {} graph(s), got {}",
                kind.arity(),
                operands.len()
            ),
        ));
    }
    Ok(match kind {
        OpKind::Union => union(&operands[0], &operands[1]),
        OpKind::Join => join(&operands[0], &operands[1]),
        OpKind::Cartesian => cartesian(&operands[0], &operands[1]),
        OpKind::Tensor => tensor(&operands[0], &operands[1], t),
        OpKind::Composition => composition(&operands[0], &operands[1])?,
        OpKind::Complement => complement(&operands[0]),
    })
}
