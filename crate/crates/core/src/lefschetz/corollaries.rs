use super::{idp_gate, Status, VerificationReport, Witness};
use crate::ehrhart::{boundary_hstar, eisenbud_harris_check, hstar, is_unimodal, macaulay_check};
use crate::lattice::LatticePolytope;

fn decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn increasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Numeric consequences of the Lefschetz theorems on h*, each gated on its
/// hypothesis. Sub-checks outside their hypothesis are still evaluated and
/// reported with `applies = false`.
pub fn corollary_suite(p: &LatticePolytope) -> VerificationReport {
    let mut report = VerificationReport::new("corollaries", p.name(), "integer");
    let d = p.dim();
    let mut h = hstar(p).h_star;
    h.resize(d + 2, 0);
    let idp = idp_gate(p);
    let is_idp = idp.is_none();
    let reflexive = p.is_reflexive();
    let j = p.interior_generation_height() as i64;
    let a_poly = boundary_hstar(p).h_star;
    report.push_vector("h_star", h[..=d].to_vec());
    report.push_vector("a_polynomial", a_poly.clone());
    report.push_vector("interior_generation_height", vec![j]);

    // ·ℓ: A^{d-k} → A^{d+1-k} is onto for k ≤ ⌊d/2⌋, so the decrease starts at ⌈d/2⌉
    let from = d.div_ceil(2);
    report.push_check(
        "second-half-decreasing",
        is_idp,
        decreasing(&h[from..=d]),
        format!("h*_{from} >= ... >= h*_{d}"),
    );
    if from != d / 2 && !decreasing(&h[d / 2..=d]) {
        report.notes.push(format!(
            "h*_{} >= ... >= h*_{d} fails; for odd d the surjections only reach down to h*_{from}",
            d / 2
        ));
    }
    let upper = d.div_ceil(2);
    let opposite = (0..=upper).all(|k| h[k] >= h[d + 1 - k]);
    report.push_check(
        "h-k-at-least-h-d+1-k",
        is_idp,
        opposite,
        format!("h*_k >= h*_(d+1-k) for k <= {upper}"),
    );

    // ⌈(d-j)/2⌉
    let reach = (d as i64 - j + 1).div_euclid(2);
    let initial = if reach >= 0 {
        increasing(&h[..=reach as usize])
    } else {
        true
    };
    report.push_check(
        "initial-increasing",
        is_idp,
        initial,
        format!("h*_0 <= ... <= h*_{reach} with j = {j}"),
    );
    let bounded = (0..=reach.max(-1)).all(|k| {
        let other = d as i64 + 1 - j - k;
        other < 0 || h[k as usize] <= h[other as usize]
    });
    report.push_check(
        "h-k-at-most-h-d+1-j-k",
        is_idp,
        bounded,
        format!("h*_k <= h*_(d+1-j-k) for k <= {reach}"),
    );

    let core = &h[..=d];
    report.push_check("unimodal", is_idp && reflexive, is_unimodal(core), "h* unimodal");
    report.push_check(
        "symmetric",
        is_idp && reflexive,
        core.iter().eq(core.iter().rev()),
        "h*_k = h*_(d-k)",
    );
    let differences: Vec<i64> = (0..=d / 2)
        .map(|i| h[i] - if i == 0 { 0 } else { h[i - 1] })
        .collect();
    report.push_vector("differences", differences.clone());
    report.push_check(
        "differences-m-vector",
        is_idp && reflexive,
        macaulay_check(&differences),
        "(h*_0, h*_1 - h*_0, ...) up to d/2 is an O-sequence",
    );
    report.push_check(
        "a-polynomial-unimodal",
        is_idp,
        is_unimodal(&a_poly),
        "boundary h* unimodal",
    );
    report.push_check(
        "eisenbud-harris",
        true,
        eisenbud_harris_check(core),
        "h*_0 + ... + h*_k <= h*_s + ... + h*_(s-k)",
    );

    for c in report.checks.iter().filter(|c| !c.applies && !c.holds) {
        report.notes.push(format!("{} fails outside its hypothesis, as expected", c.name));
    }
    let failure = report.checks.iter().find(|c| c.applies && !c.holds).cloned();
    report.status = match (failure, &idp) {
        (Some(c), _) => Status::Refuted {
            witness: Witness {
                seed: None,
                detail: format!("{} fails: {}", c.name, c.detail),
                vector: h.iter().map(|x| x.to_string()).collect(),
            },
        },
        (None, Some(reason)) => Status::Skipped {
            reason: format!("{reason}; hypothesis-free checks pass"),
        },
        (None, None) => Status::VerifiedExact,
    };
    report
}
