use super::{point_sum, DegreeFunctional};
use crate::algebra::ParameterMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, RationalField2, RationalFn2, Var};
use crate::lattice::{LatticePoint, LatticePolytope};

/// Both sides of an identity as computed, and whether they agree.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityOutcome<E> {
    pub lhs: E,
    pub rhs: E,
    pub holds: bool,
}

impl<E> IdentityOutcome<E> {
    fn new<F: Field<Elem = E>>(field: &F, lhs: E, rhs: E) -> Self {
        let holds = field.eq(&lhs, &rhs);
        Self { lhs, rhs, holds }
    }
}

fn require_char2<F: Field>(field: &F) -> Result<()> {
    if field.characteristic() != 2 {
        return Err(Error::Precondition(format!(
            "identity holds in characteristic 2, backend is {}",
            field.describe()
        )));
    }
    Ok(())
}

fn scaled(p: &LatticePoint, by: i64) -> LatticePoint {
    LatticePoint(p.0.iter().map(|x| x * by).collect())
}

fn halve(p: &LatticePoint) -> Option<LatticePoint> {
    p.0.iter()
        .all(|x| x % 2 == 0)
        .then(|| LatticePoint(p.0.iter().map(|x| x / 2).collect()))
}

/// Calls `visit(β, Π θ_{i,β_i}, Σβ)` for every ordered β ∈ (P∩Λ)^{d+1}.
fn for_each_tuple<F: Field>(
    p: &LatticePolytope,
    theta: &ParameterMatrix<F>,
    mut visit: impl FnMut(&LatticePoint, &F::Elem),
) {
    let field = theta.field();
    let n = p.num_lattice_points();
    let rows = p.dim() + 1;
    let pts = p.lattice_points();
    // prefix products and sums per position, updated like an odometer
    let mut idx = vec![0usize; rows];
    let mut prod: Vec<F::Elem> = Vec::with_capacity(rows + 1);
    let mut sum: Vec<LatticePoint> = Vec::with_capacity(rows + 1);
    prod.push(field.one());
    sum.push(LatticePoint(vec![0; p.dim()]));
    for i in 0..rows {
        prod.push(field.mul(&prod[i], theta.get(i, 0)));
        sum.push(sum[i].add(&pts[0].point));
    }
    loop {
        visit(&sum[rows], &prod[rows]);
        let mut i = rows;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 < n {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
        }
        for j in i..rows {
            prod[j + 1] = field.mul(&prod[j], theta.get(j, idx[j]));
            sum[j + 1] = sum[j].add(&pts[idx[j]].point);
        }
    }
}

/// Σ_p θ_{s,p} deg(x_I x_p) = 0 for x_I an interior monomial of degree d.
pub fn linear_identity_check<F: Field>(
    p: &LatticePolytope,
    theta: &ParameterMatrix<F>,
    deg: &DegreeFunctional<F::Elem>,
    s: usize,
    i_points: &[usize],
) -> Result<IdentityOutcome<F::Elem>> {
    let field = theta.field();
    let d = p.dim();
    if s > d || i_points.len() != d {
        return Err(Error::Precondition(format!("need 0 ≤ s ≤ {d} and |I| = {d}")));
    }
    let base = point_sum(p, i_points);
    if !p.is_interior(base.coords(), d as u32) {
        return Err(Error::Precondition("x_I is not in the canonical module".into()));
    }
    let mut lhs = field.zero();
    for (j, m) in p.lattice_points().iter().enumerate() {
        let c = theta.get(s, j);
        if field.is_zero(c) {
            continue;
        }
        let v = deg.of_point(field, &base.add(&m.point));
        lhs = field.add(&lhs, &field.mul(c, &v));
    }
    Ok(IdentityOutcome::new(field, lhs, field.zero()))
}

/// R_{I,J} = Σ_p det(Θ|J,p) deg(x_I x_p) = 0 when some point of I is
/// interior to P.
pub fn balancing_identity_check<F: Field>(
    p: &LatticePolytope,
    theta: &ParameterMatrix<F>,
    deg: &DegreeFunctional<F::Elem>,
    i_points: &[usize],
    j_points: &[usize],
) -> Result<IdentityOutcome<F::Elem>> {
    let field = theta.field();
    let d = p.dim();
    if i_points.len() != d || j_points.len() != d {
        return Err(Error::Precondition(format!("need |I| = |J| = {d}")));
    }
    let pts = p.lattice_points();
    if !i_points.iter().any(|&i| pts[i].interior) {
        return Err(Error::Precondition("no point of I is interior to P".into()));
    }
    let base = point_sum(p, i_points);
    let mut cols = j_points.to_vec();
    cols.push(0);
    let mut lhs = field.zero();
    for (j, m) in pts.iter().enumerate() {
        let v = deg.of_point(field, &base.add(&m.point));
        if field.is_zero(&v) {
            continue;
        }
        cols[d] = j;
        lhs = field.add(&lhs, &field.mul(&theta.minor(&cols), &v));
    }
    Ok(IdentityOutcome::new(field, lhs, field.zero()))
}

/// deg(x_α) = Σ_β deg(x_{(α+β)/2})² Π θ_{i,β_i} over ordered β.
pub fn parseval_check<F: Field>(
    p: &LatticePolytope,
    theta: &ParameterMatrix<F>,
    deg: &DegreeFunctional<F::Elem>,
    alpha: &[usize],
) -> Result<IdentityOutcome<F::Elem>> {
    let field = theta.field();
    require_char2(field)?;
    let d = p.dim();
    if alpha.len() != d + 1 {
        return Err(Error::Precondition(format!("need |α| = {}", d + 1)));
    }
    let a = point_sum(p, alpha);
    if !p.is_interior(a.coords(), d as u32 + 1) {
        return Err(Error::Precondition("x_α is not in the canonical module".into()));
    }
    let lhs = deg.of_point(field, &a);
    let mut rhs = field.zero();
    for_each_tuple(p, theta, |beta_sum, weight| {
        if let Some(gamma) = halve(&a.add(beta_sum)) {
            let v = deg.of_point(field, &gamma);
            if !field.is_zero(&v) {
                rhs = field.add(&rhs, &field.mul(&field.mul(&v, &v), weight));
            }
        }
    });
    Ok(IdentityOutcome::new(field, lhs, rhs))
}

/// deg(u²) = Σ_β deg(u·x_{β/2})² Π θ_{i,β_i} for u = Σ c_a x_a a combination
/// of interior monomials at height (d+1)/2.
pub fn parseval_revealed_check<F: Field>(
    p: &LatticePolytope,
    theta: &ParameterMatrix<F>,
    deg: &DegreeFunctional<F::Elem>,
    u: &[(LatticePoint, F::Elem)],
) -> Result<IdentityOutcome<F::Elem>> {
    let field = theta.field();
    require_char2(field)?;
    let k = half_height(p)?;
    check_interior_terms(p, u.iter().map(|(a, _)| a), k)?;
    let mut lhs = field.zero();
    for (a, c) in u {
        let v = deg.of_point(field, &scaled(a, 2));
        lhs = field.add(&lhs, &field.mul(&field.mul(c, c), &v));
    }
    let mut rhs = field.zero();
    for_each_tuple(p, theta, |beta_sum, weight| {
        if let Some(h) = halve(beta_sum) {
            let mut w = field.zero();
            for (a, c) in u {
                w = field.add(&w, &field.mul(c, &deg.of_point(field, &a.add(&h))));
            }
            if !field.is_zero(&w) {
                rhs = field.add(&rhs, &field.mul(&field.mul(&w, &w), weight));
            }
        }
    });
    Ok(IdentityOutcome::new(field, lhs, rhs))
}

fn half_height(p: &LatticePolytope) -> Result<u32> {
    let d = p.dim();
    if !(d + 1).is_multiple_of(2) {
        return Err(Error::Precondition(format!("d+1 = {} is odd", d + 1)));
    }
    Ok(d.div_ceil(2) as u32)
}

fn check_interior_terms<'a>(
    p: &LatticePolytope,
    points: impl Iterator<Item = &'a LatticePoint>,
    k: u32,
) -> Result<()> {
    for a in points {
        if !p.is_interior(a.coords(), k) {
            return Err(Error::Precondition(format!(
                "{a:?} is not an interior monomial at height {k}"
            )));
        }
    }
    Ok(())
}

/// ∂_F deg(u²) = deg(u·x_F)² with ∂_F = ∂θ_{0,f_1} ∂θ_{1,f_1} ∂θ_{2,f_2} ∂θ_{3,f_2} ⋯,
/// for u a sum of interior monomials at height k and d = 2k-1.
pub fn differential_identity_check(
    p: &LatticePolytope,
    deg: &DegreeFunctional<RationalFn2>,
    u: &[LatticePoint],
    f_points: &[usize],
) -> Result<IdentityOutcome<RationalFn2>> {
    let field = RationalField2;
    let k = half_height(p)?;
    check_interior_terms(p, u.iter(), k)?;
    let mut distinct = f_points.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if f_points.len() != k as usize || distinct.len() != f_points.len() {
        return Err(Error::Precondition(format!("F must be {k} distinct points")));
    }
    let mut lhs = RationalFn2::zero();
    for a in u {
        lhs = lhs.add(&deg.of_point(&field, &scaled(a, 2)));
    }
    for (j, &f) in f_points.iter().enumerate() {
        lhs = lhs.derivative(Var::new(2 * j, f));
        lhs = lhs.derivative(Var::new(2 * j + 1, f));
    }
    let xf = point_sum(p, f_points);
    let mut w = RationalFn2::zero();
    for a in u {
        w = w.add(&deg.of_point(&field, &a.add(&xf)));
    }
    let rhs = w.square();
    Ok(IdentityOutcome::new(&field, lhs, rhs))
}
