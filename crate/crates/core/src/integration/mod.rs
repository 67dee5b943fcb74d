//! The normalized integration map deg: A^{d+1}(P,∂P) → k and the identities
//! it satisfies.

mod exact;
mod flags;
mod identities;

pub use exact::{exact_degree_functional, poly_det};

pub use flags::{enumerate_coherent_sets, enumerate_flags, CoherentSet, FaceFlag};
pub use identities::{
    balancing_identity_check, differential_identity_check, linear_identity_check, parseval_check,
    parseval_revealed_check, IdentityOutcome,
};

use crate::algebra::{AlgebraKind, ArtinianReduction, GradedBasis};
use crate::error::{Error, Result};
use crate::field::{Field, Gf2k, PrimeField, RationalField2, RationalFn2};
use crate::lattice::{LatticePoint, LatticePolytope};
use serde::Serialize;

/// The integration map normalized along one flag.
#[derive(Clone, Debug)]
pub struct DegreeFunctional<E> {
    pub flag: FaceFlag,
    /// Interior monomials at height d+1, the domain of `values`.
    pub ambient: GradedBasis,
    /// Unnormalized functional on `ambient`, vanishing on the θ-relations.
    pub lambda: Vec<E>,
    /// Σ_σ λ(x_σ) det(Θ|σ) over coherent σ.
    pub scalar: E,
    /// deg = λ / scalar on `ambient`.
    pub values: Vec<E>,
    /// Coherent sets whose point sum is not interior (they contribute 0).
    pub non_interior_coherent: usize,
    pub backend: String,
}

impl<E: Clone> DegreeFunctional<E> {
    /// deg of the monomial with the given point at height d+1; zero off the
    /// canonical module.
    pub fn of_point<F: Field<Elem = E>>(&self, field: &F, point: &LatticePoint) -> E {
        match self.ambient.index_of(point) {
            Some(j) => self.values[j].clone(),
            None => field.zero(),
        }
    }

    /// deg of a product of degree-one monomials given by lattice point index.
    pub fn of_product<F: Field<Elem = E>>(&self, field: &F, p: &LatticePolytope, factors: &[usize]) -> E {
        self.of_point(field, &point_sum(p, factors))
    }
}

/// Sum of lattice points of P given by index.
pub fn point_sum(p: &LatticePolytope, factors: &[usize]) -> LatticePoint {
    let pts = p.lattice_points();
    factors
        .iter()
        .fold(LatticePoint(vec![0; p.dim()]), |acc, &i| acc.add(&pts[i].point))
}

/// Backends with a construction of the integration map.
pub trait DegreeBackend: Field + Sized {
    fn degree_functional(
        red: &ArtinianReduction<'_, Self>,
        flag: &FaceFlag,
    ) -> Result<DegreeFunctional<Self::Elem>>;
}

impl DegreeBackend for Gf2k {
    fn degree_functional(red: &ArtinianReduction<'_, Self>, flag: &FaceFlag) -> Result<DegreeFunctional<u64>> {
        eliminated_degree_functional(red, flag)
    }
}

impl DegreeBackend for PrimeField {
    fn degree_functional(red: &ArtinianReduction<'_, Self>, flag: &FaceFlag) -> Result<DegreeFunctional<u64>> {
        eliminated_degree_functional(red, flag)
    }
}

impl DegreeBackend for RationalField2 {
    fn degree_functional(
        red: &ArtinianReduction<'_, Self>,
        flag: &FaceFlag,
    ) -> Result<DegreeFunctional<RationalFn2>> {
        exact_degree_functional(red, flag)
    }
}

/// deg along `flag`, by the construction suited to the backend.
pub fn degree_functional<F: DegreeBackend>(
    red: &ArtinianReduction<'_, F>,
    flag: &FaceFlag,
) -> Result<DegreeFunctional<F::Elem>> {
    F::degree_functional(red, flag)
}

/// deg along `flag` from the cokernel projection of the top module piece,
/// which must be one-dimensional at this Θ.
pub fn eliminated_degree_functional<F: Field>(
    red: &ArtinianReduction<'_, F>,
    flag: &FaceFlag,
) -> Result<DegreeFunctional<F::Elem>> {
    let p = red.polytope();
    let field = red.field();
    let d = p.dim() as u32;
    let top = red.piece(AlgebraKind::Relative, d + 1);
    if top.dim() != 1 {
        return Err(Error::TopPieceNotOneDimensional(top.dim()));
    }
    let lambda = top.projection.row(0).to_vec();
    let mut scalar = field.zero();
    let mut non_interior = 0;
    for sigma in enumerate_coherent_sets(p, flag)? {
        let j = match top.ambient.index_of(&point_sum(p, &sigma.points)) {
            Some(j) => j,
            None => {
                non_interior += 1;
                continue;
            }
        };
        if field.is_zero(&lambda[j]) {
            continue;
        }
        let det = red.theta().minor(&sigma.points);
        scalar = field.add(&scalar, &field.mul(&lambda[j], &det));
    }
    let inv = field.inv(&scalar).ok_or(Error::NormalizationDegenerate)?;
    let values = lambda.iter().map(|x| field.mul(x, &inv)).collect();
    Ok(DegreeFunctional {
        flag: flag.clone(),
        ambient: top.ambient.clone(),
        lambda,
        scalar,
        values,
        non_interior_coherent: non_interior,
        backend: red.theta().backend().to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagIndependenceReport {
    pub flags: Vec<FaceFlag>,
    /// Entries (over all flags after the first) differing from the first flag.
    pub mismatches: usize,
    pub agree: bool,
}

/// Normalizes along every given flag and compares the results entrywise.
pub fn flag_independence_check<F: DegreeBackend>(
    red: &ArtinianReduction<'_, F>,
    flags: &[FaceFlag],
) -> Result<FlagIndependenceReport> {
    if flags.len() < 2 {
        return Err(Error::Precondition("flag independence needs at least two flags".into()));
    }
    let field = red.field();
    let reference = degree_functional(red, &flags[0])?;
    let mut mismatches = 0;
    for flag in &flags[1..] {
        let other = degree_functional(red, flag)?;
        mismatches += reference
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| !field.eq(a, b))
            .count();
    }
    Ok(FlagIndependenceReport {
        flags: flags.to_vec(),
        mismatches,
        agree: mismatches == 0,
    })
}

#[cfg(test)]
mod tests;
