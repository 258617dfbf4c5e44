//! Named graph families, their closed-form sigma values, and seeded random
//! instance streams.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::FuzzyGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Star,
    Path,
    Cycle,
    Complete,
    SingleEdge,
    RegularUnion,
    RandomUniform,
    TwoValuedAdversarial,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::Star,
        FamilyKind::Path,
        FamilyKind::Cycle,
        FamilyKind::Complete,
        FamilyKind::SingleEdge,
        FamilyKind::RegularUnion,
        FamilyKind::RandomUniform,
        FamilyKind::TwoValuedAdversarial,
    ];

    pub fn is_random(self) -> bool {
        matches!(self, FamilyKind::RandomUniform)
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Star => "star",
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::SingleEdge => "single_edge",
            FamilyKind::RegularUnion => "regular_union",
            FamilyKind::RandomUniform => "random_uniform",
            FamilyKind::TwoValuedAdversarial => "two_valued_adversarial",
        }
    }

    fn min_vertices(self) -> usize {
        match self {
            FamilyKind::Cycle => 3,
            FamilyKind::RegularUnion => REGULAR_UNION_N,
            FamilyKind::RandomUniform => 1,
            _ => 2,
        }
    }

    /// Default uniform edge membership for the kind.
    pub fn default_alpha(self) -> f64 {
        match self {
            FamilyKind::RegularUnion => 0.4,
            _ => 1.0,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| {
                let known: Vec<_> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
                GraphError::invalid(
                    "kind",
                    format!("unknown family `{s}` (known: {})", known.join(", ")),
                )
            })
    }
}

const REGULAR_UNION_N: usize = 6;

/// Parameters for one named family or random stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    /// Uniform edge membership; the total weight for `single_edge`.
    pub alpha: f64,
    /// Small weight used by `two_valued_adversarial`.
    pub epsilon: f64,
    pub seed: u64,
    pub edge_probability: f64,
    /// Draw vertex memberships uniformly from `[0.5, 1]` and cap edges by
    /// them, instead of using full membership.
    pub random_memberships: bool,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        FamilySpec {
            kind,
            n,
            alpha: kind.default_alpha(),
            epsilon: 0.01,
            seed: 0,
            edge_probability: 0.5,
            random_memberships: false,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_edge_probability(mut self, p: f64) -> Self {
        self.edge_probability = p;
        self
    }

    pub fn with_random_memberships(mut self, on: bool) -> Self {
        self.random_memberships = on;
        self
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let min = self.kind.min_vertices();
        if self.kind == FamilyKind::RegularUnion && self.n != REGULAR_UNION_N {
            return Err(GraphError::invalid(
                "n",
                format!("regular_union is only defined for n = {REGULAR_UNION_N}"),
            ));
        }
        if self.n < min {
            return Err(GraphError::invalid(
                "n",
                format!(
                    "{} needs at least {min} vertices, got {}",
                    self.kind, self.n
                ),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(GraphError::invalid(
                "alpha",
                format!("{} not in (0, 1]", self.alpha),
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(GraphError::invalid(
                "epsilon",
                format!("{} not in (0, 1)", self.epsilon),
            ));
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(GraphError::invalid(
                "edge_probability",
                format!("{} not in [0, 1]", self.edge_probability),
            ));
        }
        Ok(())
    }
}

/// Builds the graph described by `spec`. Random kinds yield instance 0 of
/// their stream.
pub fn make_family(spec: &FamilySpec) -> Result<FuzzyGraph, GraphError> {
    spec.validate()?;
    let n = spec.n;
    let a = spec.alpha;
    let unit = vec![1.0; n];
    match spec.kind {
        FamilyKind::Star => {
            let edges: Vec<_> = (1..n).map(|v| (0, v, a)).collect();
            FuzzyGraph::from_edges(unit, &edges)
        }
        FamilyKind::Path => FuzzyGraph::from_edges(unit, &path_edges(n, a)),
        FamilyKind::Cycle => {
            let mut edges = path_edges(n, a);
            edges.push((0, n - 1, a));
            FuzzyGraph::from_edges(unit, &edges)
        }
        FamilyKind::Complete => FuzzyGraph::from_fn(unit, |_, _| a),
        FamilyKind::SingleEdge => FuzzyGraph::from_edges(unit, &[(0, 1, a)]),
        FamilyKind::RegularUnion => {
            // Two alpha-triangles joined by a perfect matching of weight alpha/2.
            let h = a / 2.0;
            let edges = [
                (0, 1, a),
                (1, 2, a),
                (0, 2, a),
                (3, 4, a),
                (4, 5, a),
                (3, 5, a),
                (0, 3, h),
                (1, 4, h),
                (2, 5, h),
            ];
            FuzzyGraph::from_edges(unit, &edges)
        }
        FamilyKind::TwoValuedAdversarial => {
            let last = n - 1;
            let eps = spec.epsilon;
            FuzzyGraph::from_fn(unit, |_, v| if v == last { eps } else { 1.0 })
        }
        FamilyKind::RandomUniform => Ok(random_instance(spec, 0)),
    }
}

fn path_edges(n: usize, a: f64) -> Vec<(usize, usize, f64)> {
    (0..n - 1).map(|v| (v, v + 1, a)).collect()
}

/// Star closed form with center degree `(n-1) alpha`.
pub fn star_sigma_closed_form(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let lambda = 2.0 * (nf - 1.0) * alpha / nf;
    let center = (nf - 1.0) * alpha - lambda;
    let leaf = alpha - lambda;
    (center * center + (nf - 1.0) * leaf * leaf) / nf
}

/// The star expression evaluated with a center degree of `2 (n-1) alpha`.
///
/// This does not describe any simple star: the degrees it assumes sum to
/// `3 (n-1) alpha` rather than `2 ew = 2 (n-1) alpha`. Kept so the checker
/// can report how far it sits from the constructed graph.
pub fn star_sigma_doubled_center(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let lambda = 2.0 * (nf - 1.0) * alpha / nf;
    let center = 2.0 * (nf - 1.0) * alpha - lambda;
    let leaf = alpha - lambda;
    (center * center + (nf - 1.0) * leaf * leaf) / nf
}

/// Path closed form: two end vertices of degree `alpha`, the rest `2 alpha`.
pub fn path_sigma_closed_form(n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let lambda = 2.0 * (nf - 1.0) * alpha / nf;
    let end = alpha - lambda;
    let inner = 2.0 * alpha - lambda;
    (2.0 * end * end + (nf - 2.0) * inner * inner) / nf
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `index` in a stream rooted at `seed`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Rounds to nine fractional digits.
pub fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

fn unit_interval_weight<R: Rng>(rng: &mut R) -> f64 {
    // 1 - [0, 1) is (0, 1]; rounding may hit zero, which would drop the edge
    round9(1.0 - rng.gen::<f64>()).max(1e-9)
}

fn random_instance(spec: &FamilySpec, index: u64) -> FuzzyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(child_seed(spec.seed, index));
    let n = spec.n;
    let nu: Vec<f64> = if spec.random_memberships {
        (0..n).map(|_| round9(rng.gen_range(0.5..=1.0))).collect()
    } else {
        vec![1.0; n]
    };
    let p = spec.edge_probability;
    let bounds = nu.clone();
    FuzzyGraph::from_fn(nu, |u, v| {
        if rng.gen_bool(p) {
            unit_interval_weight(&mut rng).min(bounds[u]).min(bounds[v])
        } else {
            0.0
        }
    })
    .expect("weights are capped by endpoint memberships")
}

/// Instance `index` of the stream described by `spec`.
///
/// Deterministic kinds return the same graph for every index.
pub fn instance(spec: &FamilySpec, index: u64) -> Result<FuzzyGraph, GraphError> {
    spec.validate()?;
    if spec.kind.is_random() {
        Ok(random_instance(spec, index))
    } else {
        make_family(spec)
    }
}

/// The first `count` instances of a random stream.
pub fn random_stream(spec: &FamilySpec, count: usize) -> Result<Vec<FuzzyGraph>, GraphError> {
    if !spec.kind.is_random() {
        return Err(GraphError::invalid(
            "kind",
            format!("{} is not a random family", spec.kind),
        ));
    }
    spec.validate()?;
    Ok((0..count as u64)
        .map(|i| random_instance(spec, i))
        .collect())
}
