use super::{enumerate_coherent_sets, point_sum, DegreeFunctional, FaceFlag};
use crate::algebra::{AlgebraKind, ArtinianReduction};
use crate::error::{Error, Result};
use crate::field::{rank, Gf2k, Matrix, RationalField2, RationalFn2, SparsePoly2, Specialization};

/// Seed of the GF(2^32) point used to pick independent relation columns.
const PROBE_SEED: u64 = 0x5_eed0_fc01;

/// Division-free determinant (characteristic 2, so a permanent) by dynamic
/// programming over column subsets.
pub fn poly_det(m: &[Vec<SparsePoly2>]) -> SparsePoly2 {
    let k = m.len();
    assert!(k <= 20, "determinant too large for subset expansion");
    let mut dp: Vec<SparsePoly2> = vec![SparsePoly2::zero(); 1 << k];
    dp[0] = SparsePoly2::one();
    for mask in 0usize..(1 << k) {
        if dp[mask].is_zero() {
            continue;
        }
        let r = mask.count_ones() as usize;
        if r == k {
            continue;
        }
        let cur = std::mem::take(&mut dp[mask]);
        for c in 0..k {
            if mask >> c & 1 == 1 || m[r][c].is_zero() {
                continue;
            }
            let term = cur.mul(&m[r][c]);
            dp[mask | 1 << c].add_assign(&term);
        }
        dp[mask] = cur;
    }
    dp[(1 << k) - 1].clone()
}

fn as_poly(x: &RationalFn2) -> SparsePoly2 {
    assert!(x.denominator().is_one(), "relation entries are polynomials");
    x.numerator().clone()
}

/// Exact integration map over GF(2)(θ).
///
/// λ_j is the maximal minor of the relation matrix (on m-1 columns that are
/// independent at a probe point) with row j deleted. λᵀR = 0 is then
/// checked exactly, so the top piece is certified one-dimensional and every
/// value shares the polynomial denominator c.
pub fn exact_degree_functional(
    red: &ArtinianReduction<'_, RationalField2>,
    flag: &FaceFlag,
) -> Result<DegreeFunctional<RationalFn2>> {
    let p = red.polytope();
    let d = p.dim();
    let (ambient, relations) = red.relations(AlgebraKind::Relative, d as u32 + 1);
    let m = ambient.len();
    if m == 0 {
        return Err(Error::TopPieceNotOneDimensional(0));
    }
    let polys: Vec<Vec<SparsePoly2>> = (0..m)
        .map(|r| relations.row(r).iter().map(as_poly).collect())
        .collect();

    let gf = Gf2k::new(32)?;
    let probe = Specialization::new(gf.clone(), PROBE_SEED);
    let value = |v: crate::field::Var| probe.theta(v.row as usize, v.point as usize);
    let evaluated: Vec<Vec<u64>> = (0..m)
        .map(|r| polys[r].iter().map(|x| x.eval(&gf, &value)).collect())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..relations.cols() {
        if chosen.len() + 1 == m {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c);
        let rows: Vec<Vec<u64>> = evaluated
            .iter()
            .map(|row| trial.iter().map(|&j| row[j]).collect())
            .collect();
        if rank(&gf, &Matrix::from_rows(rows)?) == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() + 1 != m {
        return Err(Error::TopPieceNotOneDimensional(m - chosen.len()));
    }
    let lambda: Vec<SparsePoly2> = (0..m)
        .map(|skip| {
            let minor: Vec<Vec<SparsePoly2>> = (0..m)
                .filter(|&r| r != skip)
                .map(|r| chosen.iter().map(|&c| polys[r][c].clone()).collect())
                .collect();
            poly_det(&minor)
        })
        .collect();
    for c in 0..relations.cols() {
        let mut acc = SparsePoly2::zero();
        for r in 0..m {
            if !polys[r][c].is_zero() {
                acc.add_assign(&lambda[r].mul(&polys[r][c]));
            }
        }
        if !acc.is_zero() {
            return Err(Error::TopPieceNotOneDimensional(0));
        }
    }

    let theta: Vec<Vec<SparsePoly2>> = (0..=d)
        .map(|i| (0..p.num_lattice_points()).map(|j| as_poly(red.theta().get(i, j))).collect())
        .collect();
    let mut scalar = SparsePoly2::zero();
    let mut non_interior = 0;
    for sigma in enumerate_coherent_sets(p, flag)? {
        let Some(j) = ambient.index_of(&point_sum(p, &sigma.points)) else {
            non_interior += 1;
            continue;
        };
        if lambda[j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SparsePoly2>> = theta
            .iter()
            .map(|row| sigma.points.iter().map(|&c| row[c].clone()).collect())
            .collect();
        scalar.add_assign(&lambda[j].mul(&poly_det(&minor)));
    }
    if scalar.is_zero() {
        return Err(Error::NormalizationDegenerate);
    }
    let values = lambda
        .iter()
        .map(|l| RationalFn2::new(l.clone(), scalar.clone()))
        .collect();
    Ok(DegreeFunctional {
        flag: flag.clone(),
        ambient,
        lambda: lambda.into_iter().map(RationalFn2::from_poly).collect(),
        scalar: RationalFn2::from_poly(scalar),
        values,
        non_interior_coherent: non_interior,
        backend: red.theta().backend().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Var;

    #[test]
    fn poly_det_matches_cofactor_expansion() {
        let t = |i: usize, j: usize| SparsePoly2::var(Var::new(i, j));
        let m: Vec<Vec<SparsePoly2>> = (0..3).map(|i| (0..3).map(|j| t(i, j)).collect()).collect();
        let det = poly_det(&m);
        assert_eq!(det.len(), 6);
        let cof = |a: usize, b: usize| m[1][a].mul(&m[2][b]).add(&m[1][b].mul(&m[2][a]));
        let expected = m[0][0]
            .mul(&cof(1, 2))
            .add(&m[0][1].mul(&cof(0, 2)))
            .add(&m[0][2].mul(&cof(0, 1)));
        assert_eq!(det, expected);
        assert!(poly_det(&[]).is_one());
    }
}
