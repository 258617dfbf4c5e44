//! Claim campaigns over seeded instance streams, and report emission.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::claims::{evaluate, registry, Arity, Claim, ClaimId, ExpectedStatus, Verdict};
use crate::error::GraphError;
use crate::families::{child_seed, instance, FamilyKind, FamilySpec};
use crate::graph::FuzzyGraph;
use crate::io::{format_decimal, serialize_graph};

/// Largest vertex count used by the built-in stream presets.
pub const PRESET_MAX_N: usize = 16;
/// Smallest vertex count used by the built-in stream presets.
pub const PRESET_MIN_N: usize = 3;
pub const PRESET_EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.7, 1.0];

pub const ASSUMPTIONS: [&str; 4] = [
    "lambda_max = (1/n) * sum_v d_max(v), d_max(v) = sum_{u != v} min(nu(v), nu(u))",
    "violation when margin < -1e-9; identities compare |lhs - rhs| <= 1e-9",
    "pair claims use consecutive instances (2i, 2i+1) of the same stream",
    "deterministic families contribute one instance per stream",
];

/// Position of an instance (or consecutive pair) within a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceId {
    pub stream: usize,
    pub index: usize,
    pub pair: bool,
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pair {
            write!(f, "s{}/{}+{}", self.stream, self.index, self.index + 1)
        } else {
            write!(f, "s{}/{}", self.stream, self.index)
        }
    }
}

impl Serialize for InstanceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim_id: ClaimId,
    pub instance_id: InstanceId,
    pub lhs: f64,
    pub rhs: f64,
    pub lower: Option<f64>,
    pub margin: f64,
    pub verdict: Verdict,
    pub in_proved_regime: bool,
    pub tight: bool,
    /// Serialized operand graphs; present iff the claim was violated.
    pub witness: Option<Vec<String>>,
}

impl ClaimResult {
    /// A violation of a `proved_hold` claim inside its proved regime.
    pub fn breaks_proof(&self, claim: &Claim) -> bool {
        claim.expected_status == ExpectedStatus::ProvedHold
            && self.in_proved_regime
            && self.verdict == Verdict::Violated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimSummary {
    pub claim_id: ClaimId,
    pub expected_status: ExpectedStatus,
    pub holds: usize,
    pub violated: usize,
    pub inapplicable: usize,
    pub tight: usize,
    /// Violations inside the proved regime of a `proved_hold` claim.
    pub proof_breaks: usize,
    /// Smallest margin over applicable results.
    pub min_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub claims: Vec<ClaimId>,
    pub streams: Vec<FamilySpec>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Campaign {
    pub version: &'static str,
    pub config: CampaignConfig,
    pub assumptions: Vec<&'static str>,
    pub results: Vec<ClaimResult>,
    pub summary: Vec<ClaimSummary>,
}

impl Campaign {
    pub fn proof_breaks(&self) -> usize {
        self.summary.iter().map(|s| s.proof_breaks).sum()
    }

    pub fn summary_for(&self, id: ClaimId) -> Option<&ClaimSummary> {
        self.summary.iter().find(|s| s.claim_id == id)
    }
}

/// Random streams over `n` in `PRESET_MIN_N..=nmax`, three edge
/// probabilities, and both membership regimes, followed by one batch of
/// two-valued adversarial graphs.
pub fn preset_streams(nmax: usize) -> Result<Vec<FamilySpec>, GraphError> {
    if !(PRESET_MIN_N..=PRESET_MAX_N).contains(&nmax) {
        return Err(GraphError::invalid(
            "nmax",
            format!("{nmax} not in {PRESET_MIN_N}..={PRESET_MAX_N}"),
        ));
    }
    let mut streams = Vec::new();
    for n in PRESET_MIN_N..=nmax {
        for p in PRESET_EDGE_PROBABILITIES {
            for random_memberships in [false, true] {
                streams.push(
                    FamilySpec::new(FamilyKind::RandomUniform, n)
                        .with_edge_probability(p)
                        .with_random_memberships(random_memberships),
                );
            }
        }
    }
    for n in PRESET_MIN_N..=nmax {
        streams.push(FamilySpec::new(FamilyKind::TwoValuedAdversarial, n).with_epsilon(0.01));
    }
    Ok(streams)
}

/// Seed actually used for stream `index`.
pub fn stream_seed(campaign_seed: u64, spec: &FamilySpec, index: usize) -> u64 {
    child_seed(campaign_seed ^ spec.seed, index as u64)
}

/// Every instance a campaign evaluates, grouped by stream.
pub fn campaign_instances(
    streams: &[FamilySpec],
    trials: usize,
    seed: u64,
) -> Result<Vec<Vec<FuzzyGraph>>, GraphError> {
    streams
        .iter()
        .enumerate()
        .map(|(s, spec)| {
            let spec = spec.clone().with_seed(stream_seed(seed, spec, s));
            let count = if spec.kind.is_random() { trials } else { 1 };
            (0..count as u64).map(|i| instance(&spec, i)).collect()
        })
        .collect()
}

struct Job<'a> {
    claim: &'a Claim,
    id: InstanceId,
    operands: &'a [FuzzyGraph],
}

pub fn run_campaign(config: CampaignConfig) -> Result<Campaign, GraphError> {
    if config.trials == 0 {
        return Err(GraphError::invalid("trials", "must be at least 1"));
    }
    let catalog = registry();
    let claims: Vec<&Claim> = config
        .claims
        .iter()
        .map(|id| {
            catalog.iter().find(|c| c.id == *id).ok_or_else(|| {
                let known: Vec<_> = catalog.iter().map(|c| c.id.to_string()).collect();
                GraphError::invalid(
                    "claims",
                    format!("unknown claim {id} (known: {})", known.join(",")),
                )
            })
        })
        .collect::<Result<_, _>>()?;

    let instances = campaign_instances(&config.streams, config.trials, config.seed)?;

    let mut jobs = Vec::new();
    for claim in &claims {
        for (stream, graphs) in instances.iter().enumerate() {
            match claim.arity {
                Arity::Single => {
                    for (index, g) in graphs.iter().enumerate() {
                        jobs.push(Job {
                            claim,
                            id: InstanceId {
                                stream,
                                index,
                                pair: false,
                            },
                            operands: std::slice::from_ref(g),
                        });
                    }
                }
                Arity::Pair => {
                    for (k, pair) in graphs.chunks_exact(2).enumerate() {
                        jobs.push(Job {
                            claim,
                            id: InstanceId {
                                stream,
                                index: 2 * k,
                                pair: true,
                            },
                            operands: pair,
                        });
                    }
                }
            }
        }
    }

    let mut results = jobs
        .par_iter()
        .map(|job| {
            let e = evaluate(job.claim, job.operands)?;
            let witness = (e.verdict == Verdict::Violated)
                .then(|| job.operands.iter().map(serialize_graph).collect());
            Ok(ClaimResult {
                claim_id: job.claim.id,
                instance_id: job.id,
                lhs: e.lhs,
                rhs: e.rhs,
                lower: e.lower,
                margin: e.margin,
                verdict: e.verdict,
                in_proved_regime: e.in_proved_regime,
                tight: e.tight,
                witness,
            })
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    results.sort_by_key(|r| (r.claim_id, r.instance_id));

    let summary = summarize_results(&claims, &results);
    Ok(Campaign {
        version: env!("CARGO_PKG_VERSION"),
        config,
        assumptions: ASSUMPTIONS.to_vec(),
        results,
        summary,
    })
}

fn summarize_results(claims: &[&Claim], results: &[ClaimResult]) -> Vec<ClaimSummary> {
    let mut by_id: BTreeMap<ClaimId, ClaimSummary> = claims
        .iter()
        .map(|c| {
            (
                c.id,
                ClaimSummary {
                    claim_id: c.id,
                    expected_status: c.expected_status,
                    holds: 0,
                    violated: 0,
                    inapplicable: 0,
                    tight: 0,
                    proof_breaks: 0,
                    min_margin: None,
                },
            )
        })
        .collect();
    for r in results {
        let claim = claims
            .iter()
            .find(|c| c.id == r.claim_id)
            .expect("selected");
        let s = by_id.get_mut(&r.claim_id).expect("selected");
        match r.verdict {
            Verdict::Holds => s.holds += 1,
            Verdict::Violated => s.violated += 1,
            Verdict::Inapplicable => s.inapplicable += 1,
        }
        if r.tight {
            s.tight += 1;
        }
        if r.breaks_proof(claim) {
            s.proof_breaks += 1;
        }
        if r.verdict != Verdict::Inapplicable {
            s.min_margin = Some(s.min_margin.map_or(r.margin, |m: f64| m.min(r.margin)));
        }
    }
    by_id.into_values().collect()
}

fn render_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:e}")
    }
}

/// File names for a result's witness graphs, relative to the witness
/// directory.
pub fn witness_file_names(r: &ClaimResult) -> Vec<String> {
    let stem = format!(
        "{}_s{}_{}",
        r.claim_id, r.instance_id.stream, r.instance_id.index
    );
    match &r.witness {
        None => Vec::new(),
        Some(graphs) if graphs.len() == 1 => vec![format!("{stem}.fg")],
        Some(graphs) => (0..graphs.len())
            .map(|i| format!("{stem}_{}.fg", (b'a' + i as u8) as char))
            .collect(),
    }
}

/// Tab-separated report: a `#` header block, a `#` column line, one row per
/// result, then `#` summary lines. Witness columns name files inside
/// `witness_dir`.
pub fn render_report(c: &Campaign, witness_dir: &str) -> String {
    let mut out = String::new();
    let claims: Vec<String> = c.config.claims.iter().map(ToString::to_string).collect();
    writeln!(out, "# fuzzysigma claim report").unwrap();
    writeln!(out, "# version\t{}", c.version).unwrap();
    writeln!(out, "# seed\t{}", c.config.seed).unwrap();
    writeln!(out, "# trials\t{}", c.config.trials).unwrap();
    writeln!(out, "# claims\t{}", claims.join(",")).unwrap();
    writeln!(out, "# streams\t{}", c.config.streams.len()).unwrap();
    for (i, s) in c.config.streams.iter().enumerate() {
        writeln!(
            out,
            "# stream\ts{i}\t{}\tn={}\talpha={}\tepsilon={}\tp={}\trandom_nu={}",
            s.kind,
            s.n,
            format_decimal(s.alpha),
            format_decimal(s.epsilon),
            format_decimal(s.edge_probability),
            s.random_memberships
        )
        .unwrap();
    }
    for a in &c.assumptions {
        writeln!(out, "# assumption\t{a}").unwrap();
    }
    writeln!(
        out,
        "#claim_id\tinstance_id\tlhs\trhs\tmargin\tverdict\twitness"
    )
    .unwrap();
    for r in &c.results {
        let files = witness_file_names(r);
        let witness = if files.is_empty() {
            "-".to_string()
        } else {
            files
                .iter()
                .map(|f| format!("{witness_dir}/{f}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.claim_id,
            r.instance_id,
            render_float(r.lhs),
            render_float(r.rhs),
            render_float(r.margin),
            r.verdict,
            witness
        )
        .unwrap();
    }
    for s in &c.summary {
        writeln!(
            out,
            "# summary\t{}\t{}\tholds={}\tviolated={}\tinapplicable={}\ttight={}\tproof_breaks={}\tmin_margin={}",
            s.claim_id,
            s.expected_status,
            s.holds,
            s.violated,
            s.inapplicable,
            s.tight,
            s.proof_breaks,
            s.min_margin.map_or_else(|| "-".to_string(), render_float)
        )
        .unwrap();
    }
    out
}

/// The same campaign as a JSON document.
pub fn render_json(c: &Campaign) -> String {
    serde_json::to_string_pretty(c).expect("campaign serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::parse_claim_set;

    fn small(claims: &str, streams: Vec<FamilySpec>, trials: usize) -> Campaign {
        run_campaign(CampaignConfig {
            claims: parse_claim_set(claims).unwrap(),
            streams,
            trials,
            seed: 7,
        })
        .unwrap()
    }

    #[test]
    fn union_identity_never_fails() {
        let c = small("C13", preset_streams(8).unwrap(), 6);
        let s = c.summary_for(ClaimId(13)).unwrap();
        assert_eq!(s.violated, 0);
        assert!(s.holds > 0);
    }

    #[test]
    fn edgeless_streams_make_lower_bound_inapplicable() {
        let spec = FamilySpec::new(FamilyKind::RandomUniform, 6).with_edge_probability(0.0);
        let c = small("C7", vec![spec], 20);
        let s = c.summary_for(ClaimId(7)).unwrap();
        assert_eq!(s.inapplicable, 20);
    }

    #[test]
    fn adversarial_batch_breaks_c4_with_witness() {
        let spec = FamilySpec::new(FamilyKind::TwoValuedAdversarial, 5);
        let c = small("C4", vec![spec], 3);
        assert_eq!(c.results.len(), 1);
        let r = &c.results[0];
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.witness.as_ref().map(Vec::len), Some(1));
        assert_eq!(witness_file_names(r), vec!["C4_s0_0.fg".to_string()]);
    }

    #[test]
    fn pairs_are_consecutive() {
        let spec = FamilySpec::new(FamilyKind::RandomUniform, 4).with_edge_probability(0.5);
        let c = small("C13", vec![spec], 5);
        let ids: Vec<String> = c
            .results
            .iter()
            .map(|r| r.instance_id.to_string())
            .collect();
        assert_eq!(ids, vec!["s0/0+1", "s0/2+3"]);
    }

    #[test]
    fn reports_are_reproducible() {
        let streams = preset_streams(6).unwrap();
        let a = small("all", streams.clone(), 4);
        let b = small("all", streams, 4);
        assert_eq!(render_report(&a, "w"), render_report(&b, "w"));
        assert_eq!(render_json(&a), render_json(&b));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = CampaignConfig {
            claims: vec![ClaimId(1)],
            streams: vec![],
            trials: 0,
            seed: 0,
        };
        assert!(run_campaign(cfg).is_err());
        let cfg = CampaignConfig {
            claims: vec![ClaimId(42)],
            streams: vec![],
            trials: 1,
            seed: 0,
        };
        assert!(run_campaign(cfg).unwrap_err().to_string().contains("C42"));
        assert!(preset_streams(2).is_err());
        assert!(preset_streams(17).is_err());
    }
}
