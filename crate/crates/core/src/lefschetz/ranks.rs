use super::{
    idp_gate, nominal_degree_bound, probabilistic, render_vector, specialize, with_field,
    RankRecord, Status, VerificationReport, Witness,
};
use crate::algebra::{AlgebraKind, ArtinianReduction, Element};
use crate::ehrhart::{boundary_g_star, boundary_hstar, ell_equals_h_minus_g_check, hstar, is_unimodal};
use crate::error::{Error, Result};
use crate::field::{left_kernel_vector, mat_mul, nullspace, rank, Field, FiniteField, Matrix};
use crate::lattice::LatticePolytope;

/// A rank record together with a kernel vector when the rank falls short.
#[derive(Clone, Debug)]
pub struct MapCheck<E> {
    pub record: RankRecord,
    pub kernel: Option<Vec<E>>,
}

impl<E> MapCheck<E> {
    pub fn passed(&self) -> bool {
        self.record.passed()
    }
}

fn map_check<F: Field>(field: &F, label: String, degree: u32, m: &Matrix<F::Elem>, expected: usize) -> MapCheck<F::Elem> {
    let r = rank(field, m);
    let kernel = (r < expected).then(|| {
        nullspace(field, m)
            .into_iter()
            .next()
            .or_else(|| left_kernel_vector(field, m))
            .unwrap_or_default()
    });
    MapCheck {
        record: RankRecord {
            seed: None,
            label,
            degree,
            rows: m.rows(),
            cols: m.cols(),
            rank: r,
            expected,
        },
        kernel,
    }
}

/// ·ℓ^{d+1-2k}: A^k(P,∂P) → A^{d+1-k}(P) must be bijective.
pub fn relative_lefschetz_check<F: Field>(
    red: &ArtinianReduction<'_, F>,
    ell: &Element<F::Elem>,
    k: u32,
) -> Result<MapCheck<F::Elem>> {
    let d = red.polytope().dim() as u32;
    if k == 0 || 2 * k > d + 1 {
        return Err(Error::Precondition(format!("need 1 ≤ k ≤ (d+1)/2, got k = {k}")));
    }
    let target = d + 1 - k;
    let src = red.dim(AlgebraKind::Relative, k);
    let tgt = red.dim(AlgebraKind::Ring, target);
    if src != tgt {
        return Err(Error::Internal(format!(
            "dim A^{k}(P,∂P) = {src} but dim A^{target}(P) = {tgt}"
        )));
    }
    let m = red.multiplication_map(AlgebraKind::Relative, AlgebraKind::Ring, k, ell, d + 1 - 2 * k)?;
    Ok(map_check(red.field(), format!("l^{}: A^{k}(P,dP) -> A^{target}(P)", d + 1 - 2 * k), k, &m, src))
}

/// For reflexive P with interior point p: ·x_p: A^k(P) → A^{k+1}(P,∂P), its
/// composition with ·ℓ^{d-2k-1} into A^{d-k}(P), and the direct ·ℓ^{d-2k}.
/// Every map must have rank h*_k.
pub fn reflexive_lefschetz_check<F: Field>(
    red: &ArtinianReduction<'_, F>,
    ell: &Element<F::Elem>,
    k: u32,
) -> Result<Vec<MapCheck<F::Elem>>> {
    let p = red.polytope();
    let field = red.field();
    let d = p.dim() as u32;
    if 2 * k > d {
        return Err(Error::Precondition(format!("need k ≤ d/2, got k = {k}")));
    }
    let center = p
        .reflexive_center()
        .ok_or_else(|| Error::Precondition(format!("{} is not reflexive", p.name())))?;
    let centre_monomial = p
        .monomial(center, 1)
        .ok_or_else(|| Error::Internal("interior point left the polytope".into()))?;
    let xp = Element::monomial(centre_monomial, AlgebraKind::Relative, field.one());
    let h = red.dim(AlgebraKind::Ring, k);
    let mut out = Vec::new();

    let shift = red.multiplication_map(AlgebraKind::Ring, AlgebraKind::Relative, k, &xp, 1)?;
    out.push(map_check(field, format!("x_p: A^{k}(P) -> A^{}(P,dP)", k + 1), k, &shift, h));
    if 2 * k < d {
        let power = d - 2 * k - 1;
        let tail = red.multiplication_map(AlgebraKind::Relative, AlgebraKind::Ring, k + 1, ell, power)?;
        let composite = mat_mul(field, &tail, &shift)?;
        out.push(map_check(
            field,
            format!("l^{power} x_p: A^{k}(P) -> A^{}(P)", d - k),
            k,
            &composite,
            h,
        ));
    }
    let direct = red.multiplication_map(AlgebraKind::Ring, AlgebraKind::Ring, k, ell, d - 2 * k)?;
    out.push(map_check(
        field,
        format!("l^{}: A^{k}(P) -> A^{}(P)", d - 2 * k, d - k),
        k,
        &direct,
        h,
    ));
    Ok(out)
}

/// ·ℓ^{d-2k}: A^k(∂P) → A^{d-k}(∂P) must be bijective. `ell` is restricted
/// to the boundary complex.
pub fn boundary_sphere_lefschetz_check<F: Field>(
    red: &ArtinianReduction<'_, F>,
    ell: &Element<F::Elem>,
    k: u32,
) -> Result<MapCheck<F::Elem>> {
    let d = red.polytope().dim() as u32;
    if 2 * k > d {
        return Err(Error::Precondition(format!("need k ≤ d/2, got k = {k}")));
    }
    let ell = ell.to_boundary();
    let src = red.dim(AlgebraKind::Boundary, k);
    let m = red.multiplication_map(AlgebraKind::Boundary, AlgebraKind::Boundary, k, &ell, d - 2 * k)?;
    Ok(map_check(
        red.field(),
        format!("l^{}: A^{k}(dP) -> A^{}(dP)", d - 2 * k, d - k),
        k,
        &m,
        src,
    ))
}

/// dim A^k / ℓA^{k-1} for k = 0..=top.
pub fn quotient_hilbert<F: Field>(
    red: &ArtinianReduction<'_, F>,
    kind: AlgebraKind,
    ell: &Element<F::Elem>,
    top: u32,
) -> Result<Vec<i64>> {
    let ell = if kind == AlgebraKind::Boundary { ell.to_boundary() } else { ell.clone() };
    let mut out = vec![red.dim(kind, 0) as i64];
    for k in 1..=top {
        let m = red.multiplication_map(kind, kind, k - 1, &ell, 1)?;
        out.push((red.dim(kind, k) - rank(red.field(), &m)) as i64);
    }
    Ok(out)
}

/// Ranks of A^k(P,∂P) → A^k(P) for k = 0..=d+1.
pub fn relative_image_dims<F: Field>(red: &ArtinianReduction<'_, F>, ell: &Element<F::Elem>) -> Result<Vec<i64>> {
    let d = red.polytope().dim() as u32;
    (0..=d + 1)
        .map(|k| {
            let m = red.multiplication_map(AlgebraKind::Relative, AlgebraKind::Ring, k, ell, 0)?;
            Ok(rank(red.field(), &m) as i64)
        })
        .collect()
}

/// Compares piece dimensions with the expected vector; `None` when equal.
fn dims_mismatch<F: Field>(red: &ArtinianReduction<'_, F>, kind: AlgebraKind, expected: &[i64]) -> Option<String> {
    let got: Vec<i64> = (0..expected.len() as u32).map(|k| red.dim(kind, k) as i64).collect();
    (got != expected).then(|| format!("{kind:?} piece dimensions {got:?}, expected {expected:?}"))
}

fn padded(mut v: Vec<i64>, len: usize) -> Vec<i64> {
    v.resize(len, 0);
    v
}

/// Per-seed result of a rank claim.
enum SeedOutcome {
    Pass,
    Deficient(Witness),
    Inconclusive(String),
}

/// Records the checks of one seed and classifies it.
fn absorb<F: Field>(report: &mut VerificationReport, field: &F, seed: u64, checks: Vec<MapCheck<F::Elem>>) -> SeedOutcome {
    let mut witness = None;
    for mut c in checks {
        c.record.seed = Some(seed);
        if witness.is_none() {
            if let Some(k) = &c.kernel {
                witness = Some(Witness {
                    seed: Some(seed),
                    detail: format!("{} has rank {} < {}", c.record.label, c.record.rank, c.record.expected),
                    vector: render_vector(field, k),
                });
            }
        }
        report.ranks.push(c.record);
    }
    match witness {
        Some(w) => SeedOutcome::Deficient(w),
        None => SeedOutcome::Pass,
    }
}

/// Verified if some seed passed, refuted if none did.
fn conclude<F: Field>(report: &mut VerificationReport, field: &F, outcomes: Vec<(u64, SeedOutcome)>, degree_bound: u64) {
    let trials = outcomes.len();
    let passes = outcomes.iter().filter(|(_, o)| matches!(o, SeedOutcome::Pass)).count();
    let mut first_failure = None;
    for (seed, o) in outcomes {
        match o {
            SeedOutcome::Pass => {}
            SeedOutcome::Deficient(w) => {
                report.notes.push(format!("seed {seed}: {}", w.detail));
                first_failure.get_or_insert(w);
            }
            SeedOutcome::Inconclusive(why) => {
                report.notes.push(format!("seed {seed}: inconclusive, {why}"));
                first_failure.get_or_insert(Witness {
                    seed: Some(seed),
                    detail: why,
                    vector: Vec::new(),
                });
            }
        }
    }
    report.trials = trials;
    report.status = if passes > 0 {
        if field.characteristic() != 2 {
            report.notes.push("odd characteristic run: corroboration of the characteristic 0 statement".into());
        }
        probabilistic(field, degree_bound, passes)
    } else {
        Status::Refuted {
            witness: first_failure.unwrap_or(Witness {
                seed: None,
                detail: "no seeds".into(),
                vector: Vec::new(),
            }),
        }
    };
    report.notes.push(format!(
        "{passes} of {trials} seeds full rank; full rank at a specialization with generic piece dimensions certifies the generic map, the bound limits spurious deficiencies"
    ));
}

fn rank_report<F: FiniteField>(
    p: &LatticePolytope,
    claim: &str,
    field: &F,
    seeds: &[u64],
    degrees: Vec<u32>,
    mut per_seed: impl FnMut(&ArtinianReduction<'_, F>, &Element<F::Elem>) -> Result<std::result::Result<Vec<MapCheck<F::Elem>>, String>>,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim, p.name(), field.describe());
    report.seeds = seeds.to_vec();
    report.degrees = degrees;
    let mut outcomes = Vec::new();
    for &seed in seeds {
        let (red, ell) = specialize(p, field, seed)?;
        let outcome = match per_seed(&red, &ell)? {
            Ok(checks) => absorb(&mut report, field, seed, checks),
            Err(why) => SeedOutcome::Inconclusive(why),
        };
        outcomes.push((seed, outcome));
    }
    conclude(&mut report, field, outcomes, nominal_degree_bound(p));
    Ok(report)
}

/// Relative Lefschetz for k = 1..=⌊(d+1)/2⌋, gated on IDP.
pub fn relative_lefschetz_report(p: &LatticePolytope, plan: &super::RunPlan) -> Result<VerificationReport> {
    let d = p.dim() as u32;
    let degrees: Vec<u32> = (1..=d.div_ceil(2)).collect();
    if let Some(reason) = idp_gate(p) {
        return Ok(VerificationReport::new("relative-lefschetz", p.name(), "none").skipped(reason));
    }
    let h = padded(hstar(p).h_star, d as usize + 2);
    let relative: Vec<i64> = (0..=d as usize + 1).map(|k| h[d as usize + 1 - k]).collect();
    with_field!(plan.field, |field| rank_report(p, "relative-lefschetz", &field, &plan.seeds, degrees.clone(), |red, ell| {
        if let Some(m) = dims_mismatch(red, AlgebraKind::Ring, &h).or_else(|| dims_mismatch(red, AlgebraKind::Relative, &relative)) {
            return Ok(Err(m));
        }
        degrees.iter().map(|&k| relative_lefschetz_check(red, ell, k)).collect::<Result<Vec<_>>>().map(Ok)
    }))
}

/// Lefschetz for reflexive IDP polytopes through x_p, for k = 0..=⌊d/2⌋.
/// Also compares dim A/ℓA with the differences of h*.
pub fn reflexive_lefschetz_report(p: &LatticePolytope, plan: &super::RunPlan) -> Result<VerificationReport> {
    let d = p.dim() as u32;
    let degrees: Vec<u32> = (0..=d / 2).collect();
    if !p.is_reflexive() {
        return Ok(VerificationReport::new("lefschetz", p.name(), "none").skipped("not reflexive"));
    }
    if let Some(reason) = idp_gate(p) {
        return Ok(VerificationReport::new("lefschetz", p.name(), "none").skipped(reason));
    }
    let h = padded(hstar(p).h_star, d as usize + 2);
    let differences: Vec<i64> = (0..=d as usize / 2)
        .map(|i| h[i] - if i == 0 { 0 } else { h[i - 1] })
        .collect();
    let mut quotients: Vec<Vec<i64>> = Vec::new();
    let mut report = with_field!(plan.field, |field| rank_report(p, "lefschetz", &field, &plan.seeds, degrees.clone(), |red, ell| {
        if let Some(m) = dims_mismatch(red, AlgebraKind::Ring, &h) {
            return Ok(Err(m));
        }
        let mut checks = Vec::new();
        for &k in &degrees {
            checks.extend(reflexive_lefschetz_check(red, ell, k)?);
        }
        quotients.push(quotient_hilbert(red, AlgebraKind::Ring, ell, d / 2)?);
        Ok(Ok(checks))
    }))?;
    report.push_vector("h_star", h);
    report.push_vector("h_star_differences", differences.clone());
    let agree = quotients.iter().all(|q| *q == differences);
    if let Some(q) = quotients.first() {
        report.push_vector("quotient_hilbert", q.clone());
    }
    report.push_check(
        "quotient-equals-differences",
        true,
        agree,
        "dim A^k/lA^(k-1) equals h*_k - h*_(k-1) at every seed",
    );
    if !agree && report.status.is_verified() {
        report.status = Status::Refuted {
            witness: Witness {
                seed: None,
                detail: "Hilbert function of A/lA differs from the h* differences".into(),
                vector: quotients.iter().flatten().map(|x| x.to_string()).collect(),
            },
        };
    }
    Ok(report)
}

/// Lefschetz on the boundary sphere for k = 0..=⌊d/2⌋, gated on every facet
/// being IDP. Records g* both as differences of piece dimensions and as the
/// Hilbert function of A(∂P)/ℓA(∂P).
pub fn boundary_lefschetz_report(p: &LatticePolytope, plan: &super::RunPlan) -> Result<VerificationReport> {
    let d = p.dim() as u32;
    let degrees: Vec<u32> = (0..=d / 2).collect();
    let lattice = p.face_lattice();
    for f in lattice.of_dim(d as i32 - 1) {
        let facet = p.face_polytope(f)?;
        if let Some(reason) = idp_gate(&facet) {
            return Ok(VerificationReport::new("boundary-lefschetz", p.name(), "none")
                .skipped(format!("facet {:?}: {reason}", lattice.face(f).vertices)));
        }
    }
    let b = boundary_hstar(p).h_star;
    let g_star = boundary_g_star(p);
    let mut quotients: Vec<Vec<i64>> = Vec::new();
    let mut differences: Vec<Vec<i64>> = Vec::new();
    let mut report = with_field!(plan.field, |field| rank_report(p, "boundary-lefschetz", &field, &plan.seeds, degrees.clone(), |red, ell| {
        if let Some(m) = dims_mismatch(red, AlgebraKind::Boundary, &b) {
            return Ok(Err(m));
        }
        let deficient = red.facet_rank_deficiencies();
        if !deficient.is_empty() {
            return Ok(Err(format!("Θ restricted to facets {deficient:?} is rank deficient")));
        }
        let checks = degrees
            .iter()
            .map(|&k| boundary_sphere_lefschetz_check(red, ell, k))
            .collect::<Result<Vec<_>>>()?;
        let dims: Vec<i64> = (0..=d / 2).map(|k| red.dim(AlgebraKind::Boundary, k) as i64).collect();
        differences.push((0..dims.len()).map(|k| dims[k] - if k == 0 { 0 } else { dims[k - 1] }).collect());
        quotients.push(quotient_hilbert(red, AlgebraKind::Boundary, ell, d / 2)?);
        Ok(Ok(checks))
    }))?;
    report.push_vector("boundary_h_star", b);
    report.push_vector("g_star", g_star.clone());
    if let Some(q) = quotients.first() {
        report.push_vector("g_star_quotient", q.clone());
    }
    let agree = quotients.iter().chain(&differences).all(|q| *q == g_star);
    report.push_check(
        "g-star-agreement",
        true,
        agree,
        "dim differences, dim A/lA and the boundary Ehrhart g* coincide",
    );
    if !agree && report.status.is_verified() {
        report.status = Status::Refuted {
            witness: Witness {
                seed: None,
                detail: "algebraic g* differs from the boundary Ehrhart g*".into(),
                vector: quotients.iter().flatten().map(|x| x.to_string()).collect(),
            },
        };
    }
    Ok(report)
}

/// ℓ* three ways: face-lattice recursion, h* - g*, and (for IDP inputs)
/// image dimensions of A(P,∂P) → A(P) at every seed. Also checks
/// unimodality and symmetry of ℓ*.
pub fn local_hstar_report(p: &LatticePolytope, plan: &super::RunPlan) -> Result<VerificationReport> {
    let combinatorial = ell_equals_h_minus_g_check(p, None)?;
    let idp = idp_gate(p);
    let mut report = VerificationReport::new("local-hstar", p.name(), "integer");
    report.push_vector("recursion", combinatorial.recursion.clone());
    report.push_vector("h_minus_g", combinatorial.h_minus_g.clone());
    report.push_check(
        "recursion-equals-h-minus-g",
        true,
        combinatorial.agree,
        "face-lattice inversion against h* - g*(dP)",
    );
    let ell = combinatorial.recursion.clone();
    let mid = (ell.len() - 1).div_ceil(2);
    let rising = (1..mid).all(|i| ell[i] <= ell[i + 1]);
    report.push_check(
        "unimodal",
        idp.is_none(),
        rising && is_unimodal(&ell),
        format!("l*_1 <= ... <= l*_{mid}, then decreasing"),
    );
    report.push_check(
        "symmetric",
        true,
        ell.iter().eq(ell.iter().rev()),
        "l*_k = l*_(d+1-k); a violation is a warning only",
    );
    if !ell.iter().eq(ell.iter().rev()) {
        report.notes.push("warning: l* is not palindromic".into());
    }

    let mut algebraic: Vec<Vec<i64>> = Vec::new();
    if let Some(reason) = &idp {
        report.notes.push(format!("algebraic side skipped: {reason}"));
    } else {
        report.seeds = plan.seeds.clone();
        with_field!(plan.field, |field| {
            report.backend = field.describe();
            for &seed in &plan.seeds {
                let (red, l) = specialize(p, &field, seed)?;
                algebraic.push(relative_image_dims(&red, &l)?);
            }
        });
        report.trials = plan.seeds.len();
        let agree = algebraic.iter().all(|a| *a == ell);
        if let Some(a) = algebraic.first() {
            report.push_vector("algebraic", a.clone());
        }
        report.push_check(
            "algebraic-image-dims",
            true,
            agree,
            "rank of A^k(P,dP) -> A^k(P) equals l*_k at every seed",
        );
    }

    if combinatorial.recursion != combinatorial.h_minus_g {
        report.notes.push(format!(
            "recursion gives {:?}, h* - g*(dP) gives {:?}",
            combinatorial.recursion, combinatorial.h_minus_g
        ));
    }
    let failed = report.checks.iter().find(|c| c.applies && !c.holds && c.name != "symmetric");
    report.status = match failed {
        Some(c) => Status::Refuted {
            witness: Witness {
                seed: None,
                detail: format!("{} fails", c.name),
                vector: report
                    .vectors
                    .iter()
                    .map(|v| format!("{} = {:?}", v.name, v.values))
                    .collect(),
            },
        },
        None if algebraic.is_empty() => Status::VerifiedExact,
        None => with_field!(plan.field, |field| probabilistic(&field, nominal_degree_bound(p), plan.seeds.len())),
    };
    Ok(report)
}
