//! Ehrhart counts, h* and boundary h*, toric g of face intervals and the
//! local h* recursion.

mod macaulay;

pub use macaulay::{
    degree_of, eisenbud_harris_check, eisenbud_harris_violation, is_unimodal, macaulay_bound,
    macaulay_check, macaulay_representation,
};

use crate::error::Result;
use crate::lattice::{FaceLattice, LatticePolytope};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStarData {
    /// Coefficients h*_0..h*_d.
    pub h_star: Vec<i64>,
    /// Largest index with a nonzero coefficient.
    pub degree: usize,
    /// The counts the transform was applied to.
    pub counts: Vec<i64>,
}

impl HStarData {
    fn from_counts(counts: Vec<i64>, exponent: usize, len: usize) -> Self {
        let h_star = transform(&counts, exponent, len);
        Self {
            degree: degree_of(&h_star),
            h_star,
            counts,
        }
    }

    pub fn normalized_volume(&self) -> i64 {
        self.h_star.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.h_star.iter().eq(self.h_star.iter().rev())
    }

    /// Value at integer `x` of the polynomial of degree < counts.len()
    /// interpolating the counts at 0, 1, 2, …
    pub fn ehrhart_value(&self, x: i64) -> i64 {
        let mut diffs = self.counts.clone();
        let mut value = 0i128;
        let mut choose = 1i128;
        for k in 0..diffs.len() {
            value += diffs[0] as i128 * choose;
            choose = choose * (x as i128 - k as i128) / (k as i128 + 1);
            for i in 0..diffs.len() - 1 - k {
                diffs[i] = diffs[i + 1] - diffs[i];
            }
        }
        value as i64
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// h_j = Σ_{i≤j} (-1)^{j-i} C(e, j-i) c_i for j < len: the numerator of
/// Σ c_i t^i over (1-t)^e.
fn transform(counts: &[i64], e: usize, len: usize) -> Vec<i64> {
    (0..len)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(e as i64, (j - i) as i64) * counts[i]
                })
                .sum()
        })
        .collect()
}

/// h*(P) from the counts L_P(0..=d+1).
pub fn hstar(p: &LatticePolytope) -> HStarData {
    let d = p.dim();
    let (all, _) = p.dilate_counts(d as u32 + 1);
    HStarData::from_counts(all.into_iter().map(|c| c as i64).collect(), d + 1, d + 1)
}

/// h* of the boundary complex: counts #(∂(iP) ∩ Λ) with denominator (1-t)^d.
pub fn boundary_hstar(p: &LatticePolytope) -> HStarData {
    let d = p.dim();
    let (all, interior) = p.dilate_counts(d as u32);
    let counts = all.iter().zip(&interior).map(|(a, i)| (a - i) as i64).collect();
    HStarData::from_counts(counts, d, d + 1)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_assign(acc: &mut Vec<i64>, b: &[i64]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x += y;
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// g([bottom, x]) for every face x ≥ bottom (None elsewhere).
pub fn toric_g_table(lattice: &FaceLattice, bottom: usize) -> Vec<Option<Vec<i64>>> {
    let n = lattice.len();
    let mut g: Vec<Option<Vec<i64>>> = vec![None; n];
    let base = lattice.face(bottom).dim;
    // faces are sorted by dimension, so every proper lower face comes first
    for x in 0..n {
        if !lattice.leq(bottom, x) {
            continue;
        }
        let r = (lattice.face(x).dim - base) as usize;
        if r == 0 {
            g[x] = Some(vec![1]);
            continue;
        }
        let mut f = Vec::new();
        for y in 0..x {
            if let Some(gy) = &g[y] {
                if y != x && lattice.leq(y, x) {
                    let ry = (lattice.face(y).dim - base) as usize;
                    let mut term = gy.clone();
                    for _ in 0..(r - 1 - ry) {
                        term = poly_mul(&term, &[-1, 1]);
                    }
                    poly_add_assign(&mut f, &term);
                }
            }
        }
        let cut = (r - 1) / 2;
        let gx = (0..=cut)
            .map(|i| f.get(i).copied().unwrap_or(0) - if i == 0 { 0 } else { f.get(i - 1).copied().unwrap_or(0) })
            .collect();
        g[x] = Some(trim(gx));
    }
    g
}

/// Toric g-polynomial of the interval [a, b] of the face lattice.
pub fn toric_g(lattice: &FaceLattice, a: usize, b: usize) -> Result<Vec<i64>> {
    lattice.check_eulerian(a, b)?;
    Ok(toric_g_table(lattice, a)[b].clone().expect("interval checked above"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalHStarData {
    /// ℓ*_0..ℓ*_{d+1}.
    pub ell_star: Vec<i64>,
    /// ℓ*_F for every face, indexed like the face lattice.
    pub per_face: Vec<Vec<i64>>,
}

impl LocalHStarData {
    pub fn is_palindromic(&self) -> bool {
        self.ell_star.iter().eq(self.ell_star.iter().rev())
    }

    /// ℓ*_1 ≤ … ≤ ℓ*_{⌈(d+1)/2⌉}.
    pub fn is_unimodal_first_half(&self) -> bool {
        let top = self.ell_star.len() - 1;
        let mid = top.div_ceil(2);
        (1..mid).all(|i| self.ell_star[i] <= self.ell_star[i + 1])
    }
}

/// ℓ*_F = h*_F - Σ_{G<F} ℓ*_G · g([G,F]) with ℓ*_∅ = 1, every face taken in
/// its own lattice.
pub fn local_hstar(p: &LatticePolytope) -> Result<LocalHStarData> {
    let lattice = p.face_lattice();
    let n = lattice.len();
    let tables: Vec<Vec<Option<Vec<i64>>>> = (0..n).map(|a| toric_g_table(lattice, a)).collect();
    let mut per_face: Vec<Vec<i64>> = vec![Vec::new(); n];
    per_face[lattice.bottom()] = vec![1];
    for f in 1..n {
        let face = lattice.face(f);
        let len = face.dim as usize + 2;
        let h = if f == lattice.top() {
            hstar(p).h_star
        } else {
            hstar(&p.face_polytope(f)?).h_star
        };
        let mut ell = h;
        ell.resize(len, 0);
        for g in 0..f {
            if let Some(gpoly) = &tables[g][f] {
                let term = poly_mul(&per_face[g], gpoly);
                for (i, c) in term.into_iter().enumerate() {
                    if i < len {
                        ell[i] -= c;
                    } else {
                        debug_assert_eq!(c, 0);
                    }
                }
            }
        }
        per_face[f] = ell;
    }
    Ok(LocalHStarData {
        ell_star: per_face[lattice.top()].clone(),
        per_face,
    })
}

/// g*_k = h*_k(∂P) - h*_{k-1}(∂P) for k ≤ ⌊d/2⌋, zero beyond.
pub fn boundary_g_star(p: &LatticePolytope) -> Vec<i64> {
    let b = boundary_hstar(p).h_star;
    (0..=p.dim() / 2)
        .map(|k| b.get(k).copied().unwrap_or(0) - if k == 0 { 0 } else { b[k - 1] })
        .collect()
}

/// h*_P - g*_{∂P}, padded to length d+2.
pub fn h_minus_g(p: &LatticePolytope) -> Vec<i64> {
    let mut v = hstar(p).h_star;
    v.resize(p.dim() + 2, 0);
    for (k, g) in boundary_g_star(p).into_iter().enumerate() {
        v[k] -= g;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalHStarAgreement {
    pub recursion: Vec<i64>,
    pub h_minus_g: Vec<i64>,
    pub algebraic: Option<Vec<i64>>,
    pub agree: bool,
}

/// Compares the recursion with h* - g*_{∂P} and, when given, with the
/// dimensions of the image of A*(P,∂P) → A*(P).
pub fn ell_equals_h_minus_g_check(
    p: &LatticePolytope,
    algebraic: Option<&[i64]>,
) -> Result<LocalHStarAgreement> {
    let recursion = local_hstar(p)?.ell_star;
    let hg = h_minus_g(p);
    let agree = recursion == hg && algebraic.is_none_or(|a| a == recursion.as_slice());
    Ok(LocalHStarAgreement {
        recursion,
        h_minus_g: hg,
        algebraic: algebraic.map(<[i64]>::to_vec),
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(name: &str, v: Vec<Vec<i64>>) -> LatticePolytope {
        LatticePolytope::new(name, v).unwrap()
    }

    fn cube_pm1(d: usize) -> LatticePolytope {
        poly(
            "pm",
            (0..1u32 << d)
                .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect())
                .collect(),
        )
    }

    #[test]
    fn hstar_small_cases() {
        let sq = poly("sq", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(hstar(&sq).h_star, vec![1, 1, 0]);
        assert_eq!(hstar(&cube_pm1(2)).h_star, vec![1, 6, 1]);
        let tri = poly("t", vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(hstar(&tri).h_star, vec![1, 0, 0]);
        assert_eq!(hstar(&tri).degree, 0);
    }

    #[test]
    fn boundary_hstar_small_cases() {
        assert_eq!(boundary_hstar(&cube_pm1(2)).h_star, vec![1, 6, 1]);
        let sq = poly("sq", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(boundary_hstar(&sq).h_star, vec![1, 2, 1]);
        let seg = poly("s", vec![vec![0], vec![1]]);
        assert_eq!(boundary_hstar(&seg).h_star, vec![1, 1]);
    }

    #[test]
    fn reciprocity() {
        let p = cube_pm1(2);
        let h = hstar(&p);
        let (_, interior) = p.dilate_counts(3);
        for t in 1..=3i64 {
            assert_eq!(h.ehrhart_value(-t), interior[t as usize] as i64);
        }
        assert_eq!(h.ehrhart_value(5), 121);
    }

    #[test]
    fn toric_g_examples() {
        let sq = poly("sq", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let l = sq.face_lattice();
        assert_eq!(toric_g(l, l.bottom(), l.top()).unwrap(), vec![1, 1]);
        let tri = poly("t", vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let l = tri.face_lattice();
        assert_eq!(toric_g(l, l.bottom(), l.top()).unwrap(), vec![1]);
    }

    #[test]
    fn local_hstar_examples() {
        assert_eq!(local_hstar(&cube_pm1(2)).unwrap().ell_star, vec![0, 1, 1, 0]);
        let tri = poly("t", vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(local_hstar(&tri).unwrap().ell_star, vec![0, 0, 0, 0]);
        let seg2 = poly("s", vec![vec![0], vec![2]]);
        assert_eq!(local_hstar(&seg2).unwrap().ell_star, vec![0, 1, 0]);
        let pt = poly("pt", vec![vec![3, 4]]);
        assert_eq!(local_hstar(&pt).unwrap().ell_star, vec![0, 0]);
    }

    #[test]
    fn h_minus_g_agrees() {
        let sq = poly("sq", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let check = ell_equals_h_minus_g_check(&sq, None).unwrap();
        assert!(check.agree, "{check:?}");
        assert_eq!(check.recursion, vec![0, 0, 0, 0]);
        let check = ell_equals_h_minus_g_check(&cube_pm1(2), Some(&[0, 1, 1, 0])).unwrap();
        assert!(check.agree);
        let check = ell_equals_h_minus_g_check(&cube_pm1(2), Some(&[0, 1, 0, 0])).unwrap();
        assert!(!check.agree);
    }
}
