use super::{
    anisotropy_direct, anisotropy_via_duality, boundary_lefschetz_report, corollary_suite,
    local_hstar_report, probabilistic, reflexive_lefschetz_report, relative_lefschetz_report,
    render_vector, with_field, FieldChoice, RunPlan, Status, VerificationReport, Witness,
};
use crate::algebra::{ArtinianReduction, ParameterMatrix, EXACT_VARIABLE_CAP};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, RationalField2, RationalFn2, Specialization};
use crate::integration::{
    balancing_identity_check, degree_functional, differential_identity_check,
    exact_degree_functional, flag_independence_check, linear_identity_check, parseval_check,
    parseval_revealed_check, point_sum, DegreeBackend, DegreeFunctional, FaceFlag, IdentityOutcome,
};
use crate::lattice::{LatticePoint, LatticePolytope};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Lefschetz,
    RelativeLefschetz,
    BoundaryLefschetz,
    Anisotropy,
    Parseval,
    ParsevalRevealed,
    Balancing,
    Linear,
    Differential,
    FlagIndependence,
    Corollaries,
    LocalHstar,
}

impl Claim {
    pub const ALL: [Claim; 12] = [
        Claim::Lefschetz,
        Claim::RelativeLefschetz,
        Claim::BoundaryLefschetz,
        Claim::Anisotropy,
        Claim::Parseval,
        Claim::ParsevalRevealed,
        Claim::Balancing,
        Claim::Linear,
        Claim::Differential,
        Claim::FlagIndependence,
        Claim::Corollaries,
        Claim::LocalHstar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Lefschetz => "lefschetz",
            Claim::RelativeLefschetz => "relative-lefschetz",
            Claim::BoundaryLefschetz => "boundary-lefschetz",
            Claim::Anisotropy => "anisotropy",
            Claim::Parseval => "parseval",
            Claim::ParsevalRevealed => "parseval-revealed",
            Claim::Balancing => "balancing",
            Claim::Linear => "linear",
            Claim::Differential => "differential",
            Claim::FlagIndependence => "flag-independence",
            Claim::Corollaries => "corollaries",
            Claim::LocalHstar => "local-hstar",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown claim {s:?}")))
    }
}

/// Runs one claim on one polytope.
pub fn verify_claim(p: &LatticePolytope, claim: Claim, plan: &RunPlan) -> Result<VerificationReport> {
    let mut report = match claim {
        Claim::Lefschetz => reflexive_lefschetz_report(p, plan)?,
        Claim::RelativeLefschetz => relative_lefschetz_report(p, plan)?,
        Claim::BoundaryLefschetz => boundary_lefschetz_report(p, plan)?,
        Claim::Corollaries => corollary_suite(p),
        Claim::LocalHstar => local_hstar_report(p, plan)?,
        Claim::Anisotropy => anisotropy(p, plan)?,
        Claim::Differential => differential(p)?,
        Claim::FlagIndependence => flag_independence(p, plan)?,
        Claim::Parseval | Claim::ParsevalRevealed | Claim::Balancing | Claim::Linear => identity(p, claim, plan)?,
    };
    let rank_claim = matches!(
        claim,
        Claim::Lefschetz | Claim::RelativeLefschetz | Claim::BoundaryLefschetz
    );
    if plan.exact && rank_claim && !report.status.is_skipped() {
        report
            .notes
            .push("exact mode covers anisotropy and the integration identities; ranks ran at specializations".into());
    }
    Ok(report)
}

fn under_cap(p: &LatticePolytope) -> bool {
    (p.dim() + 1) * p.num_lattice_points() <= EXACT_VARIABLE_CAP
}

fn cap_note(p: &LatticePolytope) -> String {
    format!(
        "{} symbolic variables exceed the exact cap of {EXACT_VARIABLE_CAP}; specialized instead",
        (p.dim() + 1) * p.num_lattice_points()
    )
}

fn anisotropy(p: &LatticePolytope, plan: &RunPlan) -> Result<VerificationReport> {
    let duality = |plan: &RunPlan| -> Result<VerificationReport> {
        match plan.field {
            FieldChoice::Gf2k(bits) => anisotropy_via_duality(p, &crate::field::Gf2k::new(bits)?, &plan.seeds),
            FieldChoice::Prime(_) => Ok(VerificationReport::new("anisotropy", p.name(), "none")
                .skipped("the pairing argument is made in characteristic 2")),
        }
    };
    if !plan.exact {
        return duality(plan);
    }
    if !under_cap(p) {
        let mut r = duality(plan)?;
        r.notes.push(cap_note(p));
        return Ok(r);
    }
    let mut direct = anisotropy_direct(p)?;
    if direct.status.is_skipped() || plan.seeds.is_empty() {
        return Ok(direct);
    }
    let dual = duality(plan)?;
    if dual.status.is_skipped() {
        return Ok(direct);
    }
    let agree = direct.status.is_verified() == dual.status.is_verified();
    direct.seeds = dual.seeds.clone();
    direct.trials = dual.trials;
    direct.ranks.extend(dual.ranks);
    direct.checks.extend(dual.checks);
    direct.push_check("methods-agree", true, agree, "direct and duality verdicts coincide");
    if !agree {
        direct.status = Status::Refuted {
            witness: Witness {
                seed: None,
                detail: format!(
                    "direct says {}, duality says {}",
                    direct.status.label(),
                    dual.status.label()
                ),
                vector: Vec::new(),
            },
        };
    }
    Ok(direct)
}

/// Nondecreasing index tuples of length r over 0..n.
fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, r, i, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    multisets(n, r)
        .into_iter()
        .filter(|c| c.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// Evenly spaced indices into 0..total, all of them when total ≤ cap.
fn stride(total: usize, cap: usize) -> Vec<usize> {
    if total <= cap {
        (0..total).collect()
    } else {
        (0..cap).map(|i| i * total / cap).collect()
    }
}

const INSTANCE_CAP: usize = 512;
/// Budget of tuple visits per seed for the Parseval sums.
const TUPLE_BUDGET: usize = 4_000_000;

fn identity_degree_bound(p: &LatticePolytope, top: usize) -> u64 {
    let d = p.dim() as u64;
    let m = top.max(1) as u64;
    (4 * (d + 1) * (d + 1)).max(2 * (m - 1) + 2 * (d + 1))
}

struct Tally {
    checked: usize,
    available: usize,
    failure: Option<(String, Vec<String>)>,
}

impl Tally {
    fn new(available: usize) -> Self {
        Self {
            checked: 0,
            available,
            failure: None,
        }
    }

    fn record<F: Field>(&mut self, field: &F, what: impl FnOnce() -> String, o: IdentityOutcome<F::Elem>) {
        self.checked += 1;
        if !o.holds && self.failure.is_none() {
            self.failure = Some((what(), render_vector(field, &[o.lhs, o.rhs])));
        }
    }
}

/// Runs the instances of one identity claim against one Θ.
fn identity_instances<F: DegreeBackend>(
    p: &LatticePolytope,
    claim: Claim,
    theta: &ParameterMatrix<F>,
    deg: &DegreeFunctional<F::Elem>,
    weights: &[F::Elem],
) -> Result<Tally> {
    let field = theta.field();
    let d = p.dim();
    let n = p.num_lattice_points();
    let pts = p.lattice_points();
    let tally = match claim {
        Claim::Linear => {
            let sets: Vec<Vec<usize>> = multisets(n, d)
                .into_iter()
                .filter(|i| p.is_interior(point_sum(p, i).coords(), d as u32))
                .collect();
            let total = sets.len() * (d + 1);
            let mut t = Tally::new(total);
            for idx in stride(total, INSTANCE_CAP) {
                let (i, s) = (&sets[idx / (d + 1)], idx % (d + 1));
                let o = linear_identity_check(p, theta, deg, s, i)?;
                t.record(field, || format!("linear s = {s}, I = {i:?}"), o);
            }
            t
        }
        Claim::Balancing => {
            let is: Vec<Vec<usize>> = multisets(n, d)
                .into_iter()
                .filter(|i| i.iter().any(|&x| pts[x].interior))
                .collect();
            let js = combinations(n, d);
            let total = is.len() * js.len();
            let mut t = Tally::new(total);
            for idx in stride(total, INSTANCE_CAP) {
                let (i, j) = (&is[idx / js.len()], &js[idx % js.len()]);
                let o = balancing_identity_check(p, theta, deg, i, j)?;
                t.record(field, || format!("balancing I = {i:?}, J = {j:?}"), o);
            }
            t
        }
        Claim::Parseval => {
            let alphas: Vec<Vec<usize>> = multisets(n, d + 1)
                .into_iter()
                .filter(|a| p.is_interior(point_sum(p, a).coords(), d as u32 + 1))
                .collect();
            let per = n.pow(d as u32 + 1).max(1);
            let cap = (TUPLE_BUDGET / per).clamp(4, 256);
            let mut t = Tally::new(alphas.len());
            for idx in stride(alphas.len(), cap) {
                let a = &alphas[idx];
                let o = parseval_check(p, theta, deg, a)?;
                t.record(field, || format!("parseval alpha = {a:?}"), o);
            }
            t
        }
        Claim::ParsevalRevealed => {
            let k = (d as u32).div_ceil(2);
            let interior: Vec<LatticePoint> = p
                .enumerate_dilate_points(k)
                .into_iter()
                .filter(|m| m.interior)
                .map(|m| m.point)
                .collect();
            let mut us: Vec<Vec<(LatticePoint, F::Elem)>> = interior
                .iter()
                .take(16)
                .map(|a| vec![(a.clone(), field.one())])
                .collect();
            if interior.len() > 1 {
                us.push(interior.iter().cloned().zip(weights.iter().cloned()).collect());
            }
            let mut t = Tally::new(us.len());
            for u in &us {
                let o = parseval_revealed_check(p, theta, deg, u)?;
                t.record(
                    field,
                    || format!("parseval-revealed u on {:?}", u.iter().map(|(a, _)| a.coords().to_vec()).collect::<Vec<_>>()),
                    o,
                );
            }
            t
        }
        _ => unreachable!("not an identity claim"),
    };
    Ok(tally)
}

fn needs_char2(claim: Claim) -> bool {
    matches!(claim, Claim::Parseval | Claim::ParsevalRevealed)
}

fn identity_gate(p: &LatticePolytope, claim: Claim) -> Option<String> {
    (claim == Claim::ParsevalRevealed && !(p.dim() + 1).is_multiple_of(2))
        .then(|| format!("d+1 = {} is odd, there is no middle degree", p.dim() + 1))
}

fn finish_tally(report: &mut VerificationReport, tally: &Tally, seed: Option<u64>) -> Option<Witness> {
    report.notes.push(match seed {
        Some(s) => format!("seed {s}: checked {} of {} instances", tally.checked, tally.available),
        None => format!("checked {} of {} instances", tally.checked, tally.available),
    });
    tally.failure.as_ref().map(|(detail, vector)| Witness {
        seed,
        detail: detail.clone(),
        vector: vector.clone(),
    })
}

fn identity(p: &LatticePolytope, claim: Claim, plan: &RunPlan) -> Result<VerificationReport> {
    if let Some(reason) = identity_gate(p, claim) {
        return Ok(VerificationReport::new(claim.name(), p.name(), "none").skipped(reason));
    }
    let flags = plan.flags.select(p);
    let flag = flags.first().ok_or_else(|| Error::Internal("no complete flag".into()))?;
    if plan.exact && under_cap(p) {
        let theta = ParameterMatrix::symbolic(p);
        let red = ArtinianReduction::new(p, theta.clone())?;
        let deg = exact_degree_functional(&red, flag)?;
        let mut report = VerificationReport::new(claim.name(), p.name(), RationalField2.describe());
        report.degrees = vec![p.dim() as u32 + 1];
        let weights = vec![RationalFn2::one(); p.enumerate_dilate_points((p.dim() as u32).div_ceil(2)).len()];
        let tally = identity_instances(p, claim, &theta, &deg, &weights)?;
        report.status = match finish_tally(&mut report, &tally, None) {
            Some(w) => Status::Refuted { witness: w },
            None => Status::VerifiedExact,
        };
        return Ok(report);
    }
    let mut report = with_field!(plan.field, |field| {
        if needs_char2(claim) && field.characteristic() != 2 {
            return Ok(VerificationReport::new(claim.name(), p.name(), field.describe())
                .skipped("identity holds in characteristic 2"));
        }
        specialized_identity(p, claim, &field, &plan.seeds, flag)?
    });
    if plan.exact {
        report.notes.push(cap_note(p));
    }
    Ok(report)
}

fn specialized_identity<F: FiniteField + DegreeBackend>(
    p: &LatticePolytope,
    claim: Claim,
    field: &F,
    seeds: &[u64],
    flag: &FaceFlag,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim.name(), p.name(), field.describe());
    report.degrees = vec![p.dim() as u32 + 1];
    report.seeds = seeds.to_vec();
    let mut conclusive = 0;
    let mut witness = None;
    let mut top = 1;
    for &seed in seeds {
        let spec = Specialization::new(field.clone(), seed);
        let theta = ParameterMatrix::specialized(&spec, p);
        let red = ArtinianReduction::new(p, theta.clone())?;
        let deg = match degree_functional(&red, flag) {
            Ok(deg) => deg,
            Err(e @ (Error::TopPieceNotOneDimensional(_) | Error::NormalizationDegenerate)) => {
                report.notes.push(format!("seed {seed}: inconclusive, {e}"));
                witness.get_or_insert(Witness {
                    seed: Some(seed),
                    detail: e.to_string(),
                    vector: Vec::new(),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        top = deg.ambient.len();
        let weights = spec.auxiliary(0, p.enumerate_dilate_points((p.dim() as u32).div_ceil(2)).len());
        let tally = identity_instances(p, claim, &theta, &deg, &weights)?;
        conclusive += 1;
        if let Some(w) = finish_tally(&mut report, &tally, Some(seed)) {
            report.trials = conclusive;
            report.status = Status::Refuted { witness: w };
            return Ok(report);
        }
    }
    report.trials = conclusive;
    report.status = match witness {
        Some(w) if conclusive == 0 => Status::Refuted { witness: w },
        _ => probabilistic(field, identity_degree_bound(p, top), conclusive),
    };
    Ok(report)
}

/// ∂_F deg(u²) = deg(u·x_F)² over all ordered F of distinct points, for u
/// each interior monomial of the middle degree and their sum. Symbolic only.
fn differential(p: &LatticePolytope) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("differential", p.name(), RationalField2.describe());
    if let Some(reason) = identity_gate(p, Claim::ParsevalRevealed) {
        return Ok(report.skipped(reason));
    }
    if !under_cap(p) {
        return Ok(report.skipped(format!(
            "{} symbolic variables exceed the exact cap of {EXACT_VARIABLE_CAP}; the identity needs derivatives",
            (p.dim() + 1) * p.num_lattice_points()
        )));
    }
    let k = p.dim().div_ceil(2);
    report.degrees = vec![k as u32];
    let red = ArtinianReduction::new(p, ParameterMatrix::symbolic(p))?;
    let flag = enumerate_first_flag(p)?;
    let deg = exact_degree_functional(&red, &flag)?;
    let interior: Vec<LatticePoint> = p
        .enumerate_dilate_points(k as u32)
        .into_iter()
        .filter(|m| m.interior)
        .map(|m| m.point)
        .collect();
    let mut us: Vec<Vec<LatticePoint>> = interior.iter().map(|a| vec![a.clone()]).collect();
    if interior.len() > 1 {
        us.push(interior.clone());
    }
    let n = p.num_lattice_points();
    let fs: Vec<Vec<usize>> = ordered_distinct(n, k);
    let mut tally = Tally::new(us.len() * fs.len());
    for u in &us {
        for f in &fs {
            let o = differential_identity_check(p, &deg, u, f)?;
            tally.record(&RationalField2, || format!("differential u = {u:?}, F = {f:?}"), o);
        }
    }
    report.status = match finish_tally(&mut report, &tally, None) {
        Some(w) => Status::Refuted { witness: w },
        None => Status::VerifiedExact,
    };
    Ok(report)
}

fn enumerate_first_flag(p: &LatticePolytope) -> Result<FaceFlag> {
    crate::integration::enumerate_flags(p)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no complete flag".into()))
}

/// Ordered r-tuples of distinct indices below n.
fn ordered_distinct(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &out {
            for i in (0..n).filter(|i| !t.contains(i)) {
                let mut s: Vec<usize> = t.clone();
                s.push(i);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn flag_independence(p: &LatticePolytope, plan: &RunPlan) -> Result<VerificationReport> {
    let flags = plan.flags.select_for_comparison(p);
    if flags.len() < 2 {
        return Ok(VerificationReport::new("flag-independence", p.name(), "none")
            .skipped("fewer than two complete flags"));
    }
    if plan.exact && under_cap(p) {
        let red = ArtinianReduction::new(p, ParameterMatrix::symbolic(p))?;
        let out = flag_independence_check(&red, &flags)?;
        let mut report = VerificationReport::new("flag-independence", p.name(), RationalField2.describe());
        report.push_check(
            "functionals-identical",
            true,
            out.agree,
            format!("{} flags, {} mismatching entries", flags.len(), out.mismatches),
        );
        report.status = if out.agree {
            Status::VerifiedExact
        } else {
            Status::Refuted {
                witness: Witness {
                    seed: None,
                    detail: format!("{} entries differ between flags", out.mismatches),
                    vector: Vec::new(),
                },
            }
        };
        return Ok(report);
    }
    let mut report = with_field!(plan.field, |field| {
        let mut report = VerificationReport::new("flag-independence", p.name(), field.describe());
        if field.characteristic() != 2 {
            return Ok(report.skipped("the normalization depends on orientation in odd characteristic"));
        }
        report.seeds = plan.seeds.clone();
        report.trials = plan.seeds.len();
        let mut failure = None;
        let mut mismatches = 0;
        for &seed in &plan.seeds {
            let spec = Specialization::new(field.clone(), seed);
            let red = ArtinianReduction::new(p, ParameterMatrix::specialized(&spec, p))?;
            let out = flag_independence_check(&red, &flags)?;
            mismatches += out.mismatches;
            if !out.agree && failure.is_none() {
                failure = Some(Witness {
                    seed: Some(seed),
                    detail: format!("{} entries differ between flags", out.mismatches),
                    vector: Vec::new(),
                });
            }
        }
        report.push_check(
            "functionals-identical",
            true,
            failure.is_none(),
            format!("{} flags, {mismatches} mismatching entries over all seeds", flags.len()),
        );
        let top = p.enumerate_dilate_points(p.dim() as u32 + 1).iter().filter(|m| m.interior).count();
        report.status = match failure {
            Some(w) => Status::Refuted { witness: w },
            None => probabilistic(&field, identity_degree_bound(p, top), plan.seeds.len()),
        };
        report
    });
    if plan.exact {
        report.notes.push(cap_note(p));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumerations() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(ordered_distinct(4, 2).len(), 12);
        assert_eq!(stride(10, 4), vec![0, 2, 5, 7]);
        assert_eq!(stride(3, 4), vec![0, 1, 2]);
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.name().parse::<Claim>().unwrap(), c);
        }
        assert!("nonsense".parse::<Claim>().is_err());
    }
}
