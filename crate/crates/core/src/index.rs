//! Degree-based scalar indices of a fuzzy graph.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{accurate_sum, FuzzyGraph};

/// Fuzzy degree `d(v) = sum over u != v of mu(v, u)`.
pub fn degree(g: &FuzzyGraph, v: usize) -> Result<f64, GraphError> {
    g.check_vertex(v)?;
    Ok(accurate_sum(g.row(v).iter().copied()))
}

/// All fuzzy degrees in vertex order.
pub fn degrees(g: &FuzzyGraph) -> Vec<f64> {
    (0..g.n())
        .map(|v| accurate_sum(g.row(v).iter().copied()))
        .collect()
}

/// Fuzzy size: total membership over unordered pairs.
pub fn fuzzy_size(g: &FuzzyGraph) -> f64 {
    accurate_sum(g.edges().map(|(_, _, w)| w))
}

/// Average fuzzy degree `2 ew / n`. Zero for the empty graph.
pub fn average_degree(g: &FuzzyGraph) -> f64 {
    if g.n() == 0 {
        return 0.0;
    }
    2.0 * fuzzy_size(g) / g.n() as f64
}

/// Largest degree `v` could carry given the vertex memberships alone.
pub fn d_max_vertex(g: &FuzzyGraph, v: usize) -> Result<f64, GraphError> {
    g.check_vertex(v)?;
    let nv = g.nu(v);
    Ok(accurate_sum(
        (0..g.n()).filter(|&u| u != v).map(|u| nv.min(g.nu(u))),
    ))
}

/// Population variance of the degree sequence, centred at `2 ew / n`.
pub fn sigma_star(g: &FuzzyGraph) -> f64 {
    let d = degrees(g);
    centred_variance(&d, average_degree(g))
}

pub(crate) fn centred_variance(d: &[f64], center: f64) -> f64 {
    if d.is_empty() {
        return 0.0;
    }
    accurate_sum(d.iter().map(|&x| (x - center) * (x - center))) / d.len() as f64
}

/// Edge-sum form: `sum over edges of mu(uv) (d(u) - d(v))^2`.
pub fn sigma_edge_sum(g: &FuzzyGraph) -> f64 {
    let d = degrees(g);
    accurate_sum(g.edges().map(|(u, v, w)| {
        let diff = d[u] - d[v];
        w * diff * diff
    }))
}

/// Vertex-membership weighted form.
///
/// The squared deviations are centred at the *unweighted* average degree
/// `2 ew / n`, the same centre as [`sigma_star`], and then averaged with
/// weights `nu(v)`. With all memberships equal to one this is exactly
/// [`sigma_star`]; otherwise the centre is not the weighted mean.
pub fn sigma_weighted(g: &FuzzyGraph) -> Result<f64, GraphError> {
    let total = accurate_sum(g.memberships().iter().copied());
    if total <= 0.0 {
        return Err(GraphError::Degenerate(
            "all vertex memberships are zero".into(),
        ));
    }
    let lambda = average_degree(g);
    let d = degrees(g);
    let num = accurate_sum(
        d.iter()
            .zip(g.memberships())
            .map(|(&x, &w)| w * (x - lambda) * (x - lambda)),
    );
    Ok(num / total)
}

/// Every scalar summary of one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub n: usize,
    pub degrees: Vec<f64>,
    pub ew: f64,
    pub lambda: f64,
    pub delta_max: f64,
    pub delta_min: f64,
    pub sigma_star: f64,
    pub sigma_edge_sum: f64,
    /// `None` when every vertex membership is zero.
    pub sigma_weighted: Option<f64>,
}

pub fn summarize(g: &FuzzyGraph) -> SigmaReport {
    let degrees = degrees(g);
    let ew = fuzzy_size(g);
    let lambda = average_degree(g);
    let (delta_min, delta_max) = extremes(&degrees);
    SigmaReport {
        n: g.n(),
        ew,
        lambda,
        delta_max,
        delta_min,
        sigma_star: centred_variance(&degrees, lambda),
        sigma_edge_sum: sigma_edge_sum(g),
        sigma_weighted: sigma_weighted(g).ok(),
        degrees,
    }
}

/// `(min, max)` of a sequence, `(0, 0)` when empty.
pub(crate) fn extremes(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// True when every degree lies within `tol` of the average degree.
pub fn is_fuzzy_regular(g: &FuzzyGraph, tol: f64) -> bool {
    let lambda = average_degree(g);
    degrees(g).iter().all(|d| (d - lambda).abs() <= tol)
}

/// Classical sigma index of a crisp graph, variance form, using integer
/// degrees: `(1/n) sum (d_i - 2m/n)^2`.
pub fn crisp_sigma_variance(n: usize, edges: &[(usize, usize)]) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut deg = vec![0u64; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let sum: u64 = deg.iter().sum();
    let sum_sq: u64 = deg.iter().map(|d| d * d).sum();
    // n * sum d^2 - (sum d)^2 is exact in integers.
    let num = n as u128 * sum_sq as u128 - (sum as u128) * (sum as u128);
    num as f64 / (n as f64 * n as f64)
}

/// Classical edge-sum sigma index `sum over edges (d(u) - d(v))^2`.
pub fn crisp_sigma_edge_sum(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut deg = vec![0i64; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    edges
        .iter()
        .map(|&(u, v)| (deg[u] - deg[v]).pow(2) as u64)
        .sum()
}
