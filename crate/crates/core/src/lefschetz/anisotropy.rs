use super::{
    nominal_degree_bound, probabilistic, render_monomial, render_vector, specialize, RankRecord,
    Status, VerificationReport, Witness,
};
use crate::algebra::{AlgebraKind, ArtinianReduction, ParameterMatrix};
use crate::error::{Error, Result};
use crate::field::{
    nullspace, rank, Field, FiniteField, Gf2k, Matrix, Monomial2, RationalField2, RationalFn2,
    SparsePoly2, Specialization, Var,
};
use crate::integration::{degree_functional, enumerate_flags, exact_degree_functional, DegreeBackend};
use crate::lattice::{LatticePoint, LatticePolytope};
use std::collections::BTreeSet;

/// Probe used to certify full rank of the square-free coordinate matrix.
const PROBE_SEED: u64 = 0xa115_07e5;

fn middle_degree(p: &LatticePolytope) -> Option<u32> {
    let d = p.dim() as u32;
    (d + 1).is_multiple_of(2).then_some(d.div_ceil(2))
}

fn doubled(p: &LatticePoint) -> LatticePoint {
    LatticePoint(p.coords().iter().map(|x| 2 * x).collect())
}

/// Exact anisotropy of A^k(P,∂P) for 2k = d+1 over GF(2)(θ).
///
/// For u = Σ λ_a x_a over the coset monomials, u² = Σ λ_a² x_{2a}, and
/// deg(u²) = Σ λ_a² n_a / c with n_a the numerator of deg(x_{2a}). Writing
/// n_a = Σ_e θ^e S_{a,e}² with e square-free, deg(u²) = 0 exactly when
/// Σ_a λ_a S_{a,e} = 0 for every e. Anisotropy is therefore full column
/// rank of the matrix (S_{a,e}).
pub fn anisotropy_direct(p: &LatticePolytope) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("anisotropy", p.name(), RationalField2.describe());
    let Some(k) = middle_degree(p) else {
        return Ok(report.skipped(format!("d+1 = {} is odd, there is no middle degree", p.dim() + 1)));
    };
    report.degrees = vec![k];
    let theta = ParameterMatrix::symbolic_capped(p, false)?;
    let red = ArtinianReduction::new(p, theta)?;
    let flag = enumerate_flags(p)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no complete flag".into()))?;
    let deg = exact_degree_functional(&red, &flag)?;
    let piece = red.piece(AlgebraKind::Relative, k);
    let reps: Vec<LatticePoint> = piece.coset_monomials().iter().map(|m| m.point.clone()).collect();
    report.push_check("method-direct", true, true, "square-free splitting over GF(2)(theta^2)");
    if reps.is_empty() {
        report.notes.push(format!("A^{k}(P,dP) = 0, anisotropy holds vacuously"));
        report.status = Status::VerifiedExact;
        return Ok(report);
    }

    let splits: Vec<_> = reps
        .iter()
        .map(|a| {
            let j = deg.ambient.index_of(&doubled(a)).expect("2a is interior at height d+1");
            deg.lambda[j].numerator().square_free_split()
        })
        .collect();
    let keys: Vec<Monomial2> = splits
        .iter()
        .flat_map(|s| s.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let coords: Vec<Vec<SparsePoly2>> = keys
        .iter()
        .map(|e| splits.iter().map(|s| s.get(e).cloned().unwrap_or_default()).collect())
        .collect();

    let gf = Gf2k::new(32)?;
    let probe = Specialization::new(gf.clone(), PROBE_SEED);
    let value = |v: Var| probe.theta(v.row as usize, v.point as usize);
    let evaluated = Matrix::from_columns(
        keys.len(),
        &(0..reps.len())
            .map(|a| coords.iter().map(|row| row[a].eval(&gf, &value)).collect())
            .collect::<Vec<Vec<u64>>>(),
        0,
    );
    let mut r = if keys.is_empty() { 0 } else { rank(&gf, &evaluated) };
    let mut method = "full rank at a GF(2^32) point";
    let symbolic = || {
        let rows: Vec<Vec<RationalFn2>> = coords
            .iter()
            .map(|row| row.iter().cloned().map(RationalFn2::from_poly).collect())
            .collect();
        Matrix::from_rows(rows)
    };
    if r < reps.len() && !keys.is_empty() {
        r = rank(&RationalField2, &symbolic()?);
        method = "exact elimination over GF(2)(theta)";
    }
    report.ranks.push(RankRecord {
        seed: None,
        label: format!("square-free coordinates of deg(x_2a), a in A^{k}(P,dP)"),
        degree: k,
        rows: keys.len(),
        cols: reps.len(),
        rank: r,
        expected: reps.len(),
    });
    report.notes.push(format!("rank certified by {method}"));
    report.status = if r == reps.len() {
        Status::VerifiedExact
    } else {
        let kernel = if keys.is_empty() {
            vec![RationalFn2::one(); reps.len()]
        } else {
            nullspace(&RationalField2, &symbolic()?).into_iter().next().unwrap_or_default()
        };
        Status::Refuted {
            witness: Witness {
                seed: None,
                detail: format!(
                    "u = sum lambda_a x_a over {:?} has u^2 = 0",
                    piece.coset_monomials().iter().map(|m| render_monomial(m)).collect::<Vec<_>>()
                ),
                vector: render_vector(&RationalField2, &kernel),
            },
        }
    };
    Ok(report)
}

/// M[a, F] = deg(x_a x_F) with a over the coset monomials of A^k(P,∂P) and
/// F over those of A^k(P), 2k = d+1.
pub fn pairing_matrix<F: DegreeBackend>(red: &ArtinianReduction<'_, F>) -> Result<Matrix<F::Elem>> {
    let p = red.polytope();
    let field = red.field();
    let k = middle_degree(p).ok_or_else(|| Error::Precondition("d+1 is odd".into()))?;
    let flag = enumerate_flags(p)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no complete flag".into()))?;
    let deg = degree_functional(red, &flag)?;
    let rel = red.piece(AlgebraKind::Relative, k);
    let ring = red.piece(AlgebraKind::Ring, k);
    let rows: Vec<Vec<F::Elem>> = rel
        .coset_monomials()
        .iter()
        .map(|a| {
            ring.coset_monomials()
                .iter()
                .map(|f| deg.of_point(field, &a.point.add(&f.point)))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Ok(Matrix::filled(0, ring.dim(), field.zero()));
    }
    Matrix::from_rows(rows)
}

/// Nondegeneracy of the middle pairing at each seed. Full row rank at one
/// seed certifies the generic pairing; anisotropy follows through the
/// differential identity.
pub fn anisotropy_via_duality<F: FiniteField + DegreeBackend>(
    p: &LatticePolytope,
    field: &F,
    seeds: &[u64],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("anisotropy", p.name(), field.describe());
    let Some(k) = middle_degree(p) else {
        return Ok(report.skipped(format!("d+1 = {} is odd, there is no middle degree", p.dim() + 1)));
    };
    if field.characteristic() != 2 {
        return Ok(report.skipped("the pairing argument is made in characteristic 2"));
    }
    report.degrees = vec![k];
    report.seeds = seeds.to_vec();
    report.trials = seeds.len();
    report.push_check("method-duality", true, true, "pairing A^k(P,dP) x A^k(P) -> k");
    report.notes.push(
        "inference: full row rank of the pairing at a specialization gives a nondegenerate generic pairing; \
         every nonzero u then pairs with some x_F, and the differential identity d_F deg(u^2) = deg(u x_F)^2 makes u^2 nonzero"
            .into(),
    );
    let mut passes = 0;
    let mut witness = None;
    for &seed in seeds {
        let (red, _) = specialize(p, field, seed)?;
        let m = match pairing_matrix(&red) {
            Ok(m) => m,
            Err(e) => {
                report.notes.push(format!("seed {seed}: inconclusive, {e}"));
                witness.get_or_insert(Witness {
                    seed: Some(seed),
                    detail: e.to_string(),
                    vector: Vec::new(),
                });
                continue;
            }
        };
        let r = if m.rows() == 0 { 0 } else { rank(field, &m) };
        report.ranks.push(RankRecord {
            seed: Some(seed),
            label: format!("pairing A^{k}(P,dP) x A^{k}(P)"),
            degree: k,
            rows: m.rows(),
            cols: m.cols(),
            rank: r,
            expected: m.rows(),
        });
        if r == m.rows() {
            passes += 1;
        } else {
            let left = crate::field::left_kernel_vector(field, &m).unwrap_or_default();
            report.notes.push(format!("seed {seed}: pairing rank {r} < {}", m.rows()));
            witness.get_or_insert(Witness {
                seed: Some(seed),
                detail: format!("pairing has rank {r} < {}", m.rows()),
                vector: render_vector(field, &left),
            });
        }
    }
    report.status = if passes > 0 {
        probabilistic(field, nominal_degree_bound(p), passes)
    } else {
        Status::Refuted {
            witness: witness.unwrap_or(Witness {
                seed: None,
                detail: "no seeds".into(),
                vector: Vec::new(),
            }),
        }
    };
    Ok(report)
}
