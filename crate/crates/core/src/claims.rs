//! Catalog of sigma-index bounds and identities, and their evaluation on
//! concrete graphs.
//!
//! Every entry compares a left-hand side computed from the graph (usually
//! `sigma_star`) with a right-hand side built from other invariants. The
//! catalog records a stance for each entry: some are algebraic identities
//! that must never fail, some are bounds expected to hold, one is a known
//! false bound with a ready-made counterexample family, and a few carry no
//! prior and are only measured.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::families::FamilyKind;
use crate::graph::{accurate_sum, FuzzyGraph};
use crate::index::{
    average_degree, centred_variance, d_max_vertex, degrees, extremes, fuzzy_size, sigma_star,
};
use crate::ops::{cartesian, complement, composition, union};

/// Absolute slack below which a negative margin is treated as float noise.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;
/// A sigma value at or below this counts as zero.
pub const ZERO_SIGMA_TOLERANCE: f64 = 1e-12;
/// Maximum deviation from the mean degree still counted as regular.
pub const REGULARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ClaimId(pub u8);

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl FromStr for ClaimId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || {
            let known: Vec<_> = registry().iter().map(|c| c.id.to_string()).collect();
            GraphError::invalid(
                "claims",
                format!("unknown claim `{s}` (known: {})", known.join(",")),
            )
        };
        let digits = s.trim().strip_prefix(['C', 'c']).ok_or_else(unknown)?;
        let id = digits.parse::<u8>().map(ClaimId).map_err(|_| unknown())?;
        if registry().iter().any(|c| c.id == id) {
            Ok(id)
        } else {
            Err(unknown())
        }
    }
}

impl From<ClaimId> for String {
    fn from(id: ClaimId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for ClaimId {
    type Error = GraphError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// The documented stance on a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedStatus {
    /// Follows algebraically; any violation inside the proved regime is a bug.
    ProvedHold,
    ExpectedHold,
    ExpectedViolation,
    /// No prior; results are reported as measured.
    Measured,
}

impl fmt::Display for ExpectedStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpectedStatus::ProvedHold => "proved_hold",
            ExpectedStatus::ExpectedHold => "expected_hold",
            ExpectedStatus::ExpectedViolation => "expected_violation",
            ExpectedStatus::Measured => "measured",
        })
    }
}

/// How the two sides are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs <= rhs`
    AtMost,
    /// `lhs >= rhs`
    AtLeast,
    /// `|lhs - rhs| <= tol`
    Equal,
    /// `lower <= lhs <= rhs`
    Between,
    /// `lhs` (sigma) is zero exactly when `rhs` (largest deviation from the
    /// mean degree) is zero.
    ZeroIffRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arity {
    Single,
    Pair,
}

impl Arity {
    pub fn operands(self) -> usize {
        match self {
            Arity::Single => 1,
            Arity::Pair => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: ClaimId,
    pub description: &'static str,
    /// Short name of the statement or the inequality it rests on.
    pub basis: &'static str,
    pub applicability: &'static str,
    pub expected_status: ExpectedStatus,
    pub relation: Relation,
    pub arity: Arity,
    /// Family known to break the claim, if any.
    pub witness_family: Option<FamilyKind>,
}

macro_rules! claim {
    ($id:expr, $rel:ident, $arity:ident, $status:ident, $desc:expr, $basis:expr, $app:expr) => {
        claim!($id, $rel, $arity, $status, $desc, $basis, $app, None)
    };
    ($id:expr, $rel:ident, $arity:ident, $status:ident, $desc:expr, $basis:expr, $app:expr, $wit:expr) => {
        Claim {
            id: ClaimId($id),
            description: $desc,
            basis: $basis,
            applicability: $app,
            expected_status: ExpectedStatus::$status,
            relation: Relation::$rel,
            arity: Arity::$arity,
            witness_family: $wit,
        }
    };
}

/// The fixed catalog, in id order.
pub fn registry() -> Vec<Claim> {
    vec![
        claim!(
            1,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* <= 2n + (D - d)^2 / 4",
            "max/min degree bound",
            "any graph"
        ),
        claim!(
            2,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* <= (D - d)^2 / 4",
            "Popoviciu inequality",
            "any graph"
        ),
        claim!(
            3,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* <= (n - 1)^2 (2 ew)^2 / n^3",
            "fuzzy size bound (star extremal)",
            "any graph"
        ),
        claim!(
            4,
            AtMost,
            Single,
            ExpectedViolation,
            "sigma* <= (n - 1)(d1 - lambda) / n",
            "largest-degree bound",
            "any graph",
            Some(FamilyKind::TwoValuedAdversarial)
        ),
        claim!(
            5,
            AtMost,
            Single,
            Measured,
            "sigma* <= lambda^2 (1 - 1/n)",
            "intermediate average-degree bound",
            "any graph"
        ),
        claim!(
            6,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* <= lambda (d1 - lambda)",
            "Bhatia-Davis inequality with minimum 0",
            "any graph"
        ),
        claim!(
            7,
            AtLeast,
            Single,
            ProvedHold,
            "sigma* >= (D - d)^2 / n^2",
            "pairwise-difference form of the variance",
            "non-regular graphs"
        ),
        claim!(
            8,
            Equal,
            Single,
            ProvedHold,
            "sigma*(complement) == sigma*",
            "complement reflects degrees about n - 1",
            "all vertex memberships equal 1"
        ),
        claim!(
            9,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* + sigma*(complement) <= 8 ew^2 (n - 1) / n^2",
            "complement sum bound",
            "any graph"
        ),
        claim!(
            10,
            ZeroIffRegular,
            Single,
            ProvedHold,
            "sigma* == 0 iff fuzzy-regular",
            "variance vanishes exactly on constant sequences",
            "any graph"
        ),
        claim!(
            11,
            AtMost,
            Single,
            ExpectedHold,
            "sigma* <= (2 ew^2 / n)(1 - 2/n), tight iff one positive edge",
            "single-edge extremal bound",
            "n >= 2"
        ),
        claim!(
            12,
            Equal,
            Pair,
            ProvedHold,
            "sigma*(G1 [] G2) == sigma*(G1) + sigma*(G2)",
            "Cartesian additivity",
            "any pair; guaranteed when all memberships equal 1"
        ),
        claim!(
            13,
            Equal,
            Pair,
            ProvedHold,
            "sigma*(G1 u G2) == pooled variance of the parts",
            "pooled variance of a disjoint union",
            "any pair"
        ),
        claim!(
            14,
            Between,
            Single,
            Measured,
            "2s + E - 2 sqrt(sE) <= sigma* + sigma*(complement) <= 2s + E + 2 sqrt(sE)",
            "complement bounds via e(v) = d_max(v) - lambda_max",
            "any graph"
        ),
        claim!(
            15,
            Equal,
            Pair,
            ProvedHold,
            "sigma*(G1[G2]) == n2^2 sigma*(G1) + sigma*(G2)",
            "composition degree decomposition",
            "pairs whose composition is a valid graph"
        ),
    ]
}

pub fn claim(id: ClaimId) -> Option<Claim> {
    registry().into_iter().find(|c| c.id == id)
}

/// Parses `all` or a comma-separated id list.
pub fn parse_claim_set(s: &str) -> Result<Vec<ClaimId>, GraphError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(registry().iter().map(|c| c.id).collect());
    }
    let mut ids = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<ClaimId>, _>>()?;
    if ids.is_empty() {
        return Err(GraphError::invalid("claims", "empty claim set"));
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

/// Outcome of one claim on one operand tuple, before it is tied to an
/// instance id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub lhs: f64,
    pub rhs: f64,
    /// Lower bound for two-sided claims.
    pub lower: Option<f64>,
    /// Positive when the claim holds with room to spare.
    pub margin: f64,
    pub verdict: Verdict,
    /// The operands fall in the regime where a `proved_hold` claim cannot
    /// fail.
    pub in_proved_regime: bool,
    /// Applicable inequality met with equality (|margin| <= tolerance).
    pub tight: bool,
}

struct Sides {
    lhs: f64,
    rhs: f64,
    lower: Option<f64>,
    applicable: bool,
    proved_regime: bool,
}

impl Sides {
    fn new(lhs: f64, rhs: f64) -> Self {
        Sides {
            lhs,
            rhs,
            lower: None,
            applicable: true,
            proved_regime: true,
        }
    }

    fn applicable(mut self, yes: bool) -> Self {
        self.applicable = yes;
        self
    }

    fn proved_when(mut self, yes: bool) -> Self {
        self.proved_regime = yes;
        self
    }
}

/// Degree-derived quantities shared by the single-graph claims.
struct Stats {
    n: f64,
    ew: f64,
    lambda: f64,
    max: f64,
    min: f64,
    sigma: f64,
    spread: f64,
}

impl Stats {
    fn of(g: &FuzzyGraph) -> Self {
        let d = degrees(g);
        let lambda = average_degree(g);
        let (min, max) = extremes(&d);
        let spread = d.iter().fold(0.0_f64, |m, x| m.max((x - lambda).abs()));
        Stats {
            n: g.n() as f64,
            ew: fuzzy_size(g),
            lambda,
            max,
            min,
            sigma: centred_variance(&d, lambda),
            spread,
        }
    }

    fn regular(&self) -> bool {
        self.spread <= REGULARITY_TOLERANCE
    }
}

/// Evaluates `claim` on one graph or a pair, per the claim's arity.
pub fn evaluate(claim: &Claim, operands: &[FuzzyGraph]) -> Result<Evaluation, GraphError> {
    let want = claim.arity.operands();
    if operands.len() != want {
        return Err(GraphError::invalid(
            "operands",
            format!("{} takes {want} graph(s), got {}", claim.id, operands.len()),
        ));
    }
    if operands.iter().any(|g| g.n() == 0) {
        return Err(GraphError::invalid(
            "operands",
            "claims need at least one vertex",
        ));
    }
    let sides = match claim.arity {
        Arity::Single => single_sides(claim.id, &operands[0]),
        Arity::Pair => pair_sides(claim.id, &operands[0], &operands[1]),
    };
    Ok(judge(claim, sides))
}

fn single_sides(id: ClaimId, g: &FuzzyGraph) -> Sides {
    let s = Stats::of(g);
    let n = s.n;
    let range = s.max - s.min;
    match id.0 {
        1 => Sides::new(s.sigma, 2.0 * n + range * range / 4.0),
        2 => Sides::new(s.sigma, range * range / 4.0),
        3 => {
            let two_ew = 2.0 * s.ew;
            Sides::new(s.sigma, (n - 1.0).powi(2) * two_ew * two_ew / n.powi(3))
        }
        4 => Sides::new(s.sigma, (n - 1.0) * (s.max - s.lambda) / n),
        5 => Sides::new(s.sigma, s.lambda * s.lambda * (1.0 - 1.0 / n)),
        6 => Sides::new(s.sigma, s.lambda * (s.max - s.lambda)),
        7 => Sides::new(s.sigma, range * range / (n * n)).applicable(!s.regular()),
        8 => {
            let unit = g.has_unit_memberships();
            Sides::new(sigma_star(&complement(g)), s.sigma)
                .applicable(unit)
                .proved_when(unit)
        }
        9 => {
            let total = s.sigma + sigma_star(&complement(g));
            Sides::new(total, 8.0 * s.ew * s.ew * (n - 1.0) / (n * n))
        }
        10 => Sides::new(s.sigma, s.spread),
        11 => Sides::new(s.sigma, 2.0 * s.ew * s.ew / n * (1.0 - 2.0 / n)).applicable(g.n() >= 2),
        14 => {
            let dmax: Vec<f64> = (0..g.n())
                .map(|v| d_max_vertex(g, v).expect("vertex in range"))
                .collect();
            let lambda_max = accurate_sum(dmax.iter().copied()) / n;
            let e_sq = centred_variance(&dmax, lambda_max);
            let total = s.sigma + sigma_star(&complement(g));
            let cross = 2.0 * (s.sigma * e_sq).sqrt();
            let base = 2.0 * s.sigma + e_sq;
            Sides {
                lower: Some(base - cross),
                ..Sides::new(total, base + cross)
            }
        }
        _ => unreachable!("{id} is not a single-graph claim"),
    }
}

fn pair_sides(id: ClaimId, g1: &FuzzyGraph, g2: &FuzzyGraph) -> Sides {
    let (n1, n2) = (g1.n() as f64, g2.n() as f64);
    let s1 = sigma_star(g1);
    let s2 = sigma_star(g2);
    match id.0 {
        12 => {
            let unit = g1.has_unit_memberships() && g2.has_unit_memberships();
            Sides::new(sigma_star(&cartesian(g1, g2)), s1 + s2).proved_when(unit)
        }
        13 => {
            let n = n1 + n2;
            let gap = average_degree(g1) - average_degree(g2);
            let pooled = (n1 * s1 + n2 * s2) / n + n1 * n2 / (n * n) * gap * gap;
            Sides::new(sigma_star(&union(g1, g2)), pooled)
        }
        15 => {
            let rhs = n2 * n2 * s1 + s2;
            match composition(g1, g2) {
                Ok(g) => Sides::new(sigma_star(&g), rhs),
                Err(_) => Sides::new(f64::NAN, rhs).applicable(false),
            }
        }
        _ => unreachable!("{id} is not a pair claim"),
    }
}

fn judge(claim: &Claim, s: Sides) -> Evaluation {
    let (margin, ok) = match claim.relation {
        Relation::AtMost => {
            let m = s.rhs - s.lhs;
            (m, m >= -VIOLATION_TOLERANCE)
        }
        Relation::AtLeast => {
            let m = s.lhs - s.rhs;
            (m, m >= -VIOLATION_TOLERANCE)
        }
        Relation::Equal => {
            let m = -(s.lhs - s.rhs).abs();
            (m, m >= -VIOLATION_TOLERANCE)
        }
        Relation::Between => {
            let lower = s.lower.expect("two-sided claim carries a lower bound");
            let m = (s.rhs - s.lhs).min(s.lhs - lower);
            (m, m >= -VIOLATION_TOLERANCE)
        }
        Relation::ZeroIffRegular => {
            let zero = s.lhs <= ZERO_SIGMA_TOLERANCE;
            let regular = s.rhs <= REGULARITY_TOLERANCE;
            let m = if regular {
                ZERO_SIGMA_TOLERANCE - s.lhs
            } else {
                s.lhs - ZERO_SIGMA_TOLERANCE
            };
            (m, zero == regular)
        }
    };
    let verdict = match (s.applicable, ok) {
        (false, _) => Verdict::Inapplicable,
        (true, true) => Verdict::Holds,
        (true, false) => Verdict::Violated,
    };
    let inequality = matches!(claim.relation, Relation::AtMost | Relation::AtLeast);
    Evaluation {
        lhs: s.lhs,
        rhs: s.rhs,
        lower: s.lower,
        margin,
        verdict,
        in_proved_regime: s.applicable && s.proved_regime,
        tight: s.applicable && inequality && margin.abs() <= VIOLATION_TOLERANCE,
    }
}
