//! Built-in reproduction checks run by `fuzzysigma selftest`.

use crate::campaign::{preset_streams, run_campaign, CampaignConfig};
use crate::claims::{claim, evaluate, registry, ClaimId, ExpectedStatus, Verdict};
use crate::families::{
    make_family, path_sigma_closed_form, star_sigma_closed_form, FamilyKind, FamilySpec,
};
use crate::graph::FuzzyGraph;
use crate::index::{sigma_star, summarize};

/// Three-vertex triangle with memberships 0.8, 0.3 and 0.6.
pub fn weighted_triangle() -> FuzzyGraph {
    FuzzyGraph::from_edges(vec![1.0; 3], &[(0, 1, 0.8), (0, 2, 0.3), (1, 2, 0.6)])
        .expect("valid triangle")
}

/// Two 0.4-triangles joined by a 0.2 perfect matching; every degree is 1.
pub fn regular_six() -> FuzzyGraph {
    make_family(&FamilySpec::new(FamilyKind::RegularUnion, 6)).expect("valid family")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> SelfCheck {
    SelfCheck {
        name,
        passed,
        detail,
    }
}

/// Instances per preset stream in the identity sweep; with `nmax = 10`
/// this evaluates 48 * 4 = 192 random graphs.
const SWEEP_TRIALS: usize = 4;
const SWEEP_NMAX: usize = 10;

pub fn run() -> Vec<SelfCheck> {
    let mut out = Vec::new();

    let r = summarize(&weighted_triangle());
    out.push(check(
        "triangle example",
        (r.ew - 1.7).abs() <= 1e-12
            && (r.lambda - 17.0 / 15.0).abs() <= 1e-12
            && (r.sigma_star - 19.0 / 450.0).abs() <= 1e-12,
        format!("ew={} lambda={} sigma*={}", r.ew, r.lambda, r.sigma_star),
    ));

    let r = summarize(&regular_six());
    out.push(check(
        "regular six-vertex example",
        r.degrees.iter().all(|d| (d - 1.0).abs() <= 1e-15)
            && (r.ew - 3.0).abs() <= 1e-15
            && r.sigma_star.abs() <= 1e-15,
        format!("ew={} sigma*={}", r.ew, r.sigma_star),
    ));

    let g = make_family(&FamilySpec::new(FamilyKind::SingleEdge, 4).with_alpha(0.9))
        .expect("valid family");
    let s = sigma_star(&g);
    out.push(check(
        "single edge variance",
        (s - 0.2025).abs() <= 1e-12,
        format!("sigma*={s}"),
    ));

    let mut worst: f64 = 0.0;
    for n in 2..=64 {
        for k in 1..=10 {
            let alpha = k as f64 / 10.0;
            let star = make_family(&FamilySpec::new(FamilyKind::Star, n).with_alpha(alpha))
                .expect("valid star");
            let path = make_family(&FamilySpec::new(FamilyKind::Path, n).with_alpha(alpha))
                .expect("valid path");
            worst = worst
                .max((sigma_star(&star) - star_sigma_closed_form(n, alpha)).abs())
                .max((sigma_star(&path) - path_sigma_closed_form(n, alpha)).abs());
        }
    }
    out.push(check(
        "star and path closed forms",
        worst <= 1e-12,
        format!("max deviation {worst:e}"),
    ));

    let adversarial =
        make_family(&FamilySpec::new(FamilyKind::TwoValuedAdversarial, 5)).expect("valid family");
    let c4 = claim(ClaimId(4)).expect("registered");
    let e = evaluate(&c4, &[adversarial]).expect("arity matches");
    out.push(check(
        "largest-degree bound counterexample",
        e.verdict == Verdict::Violated && e.margin <= -0.5,
        format!("lhs={} rhs={} margin={}", e.lhs, e.rhs, e.margin),
    ));

    let proved: Vec<ClaimId> = registry()
        .into_iter()
        .filter(|c| c.expected_status == ExpectedStatus::ProvedHold)
        .map(|c| c.id)
        .collect();
    let campaign = run_campaign(CampaignConfig {
        claims: proved,
        streams: preset_streams(SWEEP_NMAX).expect("valid nmax"),
        trials: SWEEP_TRIALS,
        seed: 0x5eed,
    });
    match campaign {
        Ok(c) => {
            let evaluated: usize = c.summary.iter().map(|s| s.holds + s.violated).sum();
            out.push(check(
                "proved identities on random instances",
                c.proof_breaks() == 0,
                format!("{evaluated} evaluations, {} proof breaks", c.proof_breaks()),
            ));
        }
        Err(e) => out.push(check(
            "proved identities on random instances",
            false,
            e.to_string(),
        )),
    }

    out
}
