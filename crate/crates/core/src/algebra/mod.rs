//! Graded pieces of the semigroup ring k[P], the canonical module
//! k[P,∂P] and the boundary algebra k[∂P], and their generic Artinian
//! reductions as explicit cokernels.

mod element;
mod parameters;

pub use element::{linear_element, Element};
pub use parameters::{determinant, ParameterMatrix, EXACT_VARIABLE_CAP};

use crate::error::{Error, Result};
use crate::field::{cokernel_basis, rank, Field, Matrix};
use crate::lattice::{ConeMonomial, LatticePoint, LatticePolytope};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    /// k[P]: every cone point.
    Ring,
    /// k[P,∂P]: interior cone points.
    Relative,
    /// k[∂P]: boundary cone points, products across facets vanish.
    Boundary,
}

impl AlgebraKind {
    fn admits(self, m: &ConeMonomial) -> bool {
        match self {
            AlgebraKind::Ring => true,
            AlgebraKind::Relative => m.interior,
            AlgebraKind::Boundary => !m.interior,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBasis {
    pub kind: AlgebraKind,
    pub height: u32,
    pub monomials: Vec<ConeMonomial>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.monomials.binary_search_by(|m| m.point.cmp(p)).ok()
    }
}

pub fn graded_basis(p: &LatticePolytope, kind: AlgebraKind, k: u32) -> GradedBasis {
    let monomials = p
        .enumerate_dilate_points(k)
        .into_iter()
        .filter(|m| kind.admits(m))
        .collect();
    GradedBasis {
        kind,
        height: k,
        monomials,
    }
}

fn share_facet(p: &LatticePolytope, a: &ConeMonomial, b: &ConeMonomial) -> bool {
    if a.height == 0 || b.height == 0 {
        return true;
    }
    let fa = p.facets_containing(a);
    p.facets_containing(b).iter().any(|f| fa.contains(f))
}

/// Product of two cone monomials in the algebra of the given kind.
///
/// `Relative` multiplies a ring monomial into the module, so at least one
/// factor must be interior. `Boundary` products vanish unless both factors
/// lie in a common facet cone. `None` is the zero element.
pub fn multiply(
    p: &LatticePolytope,
    a: &ConeMonomial,
    b: &ConeMonomial,
    kind: AlgebraKind,
) -> Result<Option<ConeMonomial>> {
    match kind {
        AlgebraKind::Relative if !a.interior && !b.interior => {
            return Err(Error::IncompatibleKinds(
                "a module product needs an interior factor".into(),
            ))
        }
        AlgebraKind::Boundary if a.interior || b.interior => {
            return Err(Error::IncompatibleKinds(
                "interior monomials are not elements of the boundary algebra".into(),
            ))
        }
        AlgebraKind::Boundary if !share_facet(p, a, b) => return Ok(None),
        _ => {}
    }
    let point = a.point.add(&b.point);
    let height = a.height + b.height;
    let product = p
        .monomial(point, height)
        .ok_or_else(|| Error::Internal("product left the cone".into()))?;
    Ok(Some(product))
}

/// A graded piece A^k = (piece of degree k) / Σ θ_i · (piece of degree k-1).
#[derive(Clone, Debug)]
pub struct QuotientPresentation<E> {
    pub ambient: GradedBasis,
    /// Columns span the θ-relations inside the ambient piece.
    pub relation_image: Matrix<E>,
    pub relation_rank: usize,
    /// Ambient indices whose monomials form a basis of the quotient.
    pub coset_basis: Vec<usize>,
    /// `dim × ambient` matrix expressing each ambient monomial in the coset basis.
    pub projection: Matrix<E>,
}

impl<E: Clone> QuotientPresentation<E> {
    pub fn dim(&self) -> usize {
        self.coset_basis.len()
    }

    pub fn coset_monomials(&self) -> Vec<&ConeMonomial> {
        self.coset_basis.iter().map(|&i| &self.ambient.monomials[i]).collect()
    }

    /// Class of a monomial given by its lattice point.
    pub fn class_of(&self, point: &LatticePoint) -> Option<Vec<E>> {
        let j = self.ambient.index_of(point)?;
        Some(self.projection.column(j))
    }

    /// Class of a sparse combination of ambient monomials.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, terms: &[(LatticePoint, E)]) -> Result<Vec<E>> {
        let mut out = vec![field.zero(); self.dim()];
        for (pt, c) in terms {
            if field.is_zero(c) {
                continue;
            }
            let j = self.ambient.index_of(pt).ok_or_else(|| {
                Error::IncompatibleKinds(format!(
                    "{pt:?} is not a {:?} monomial at height {}",
                    self.ambient.kind, self.ambient.height
                ))
            })?;
            for (r, o) in out.iter_mut().enumerate() {
                let x = self.projection.get(r, j);
                if !field.is_zero(x) {
                    *o = field.add(o, &field.mul(c, x));
                }
            }
        }
        Ok(out)
    }
}

/// Builds and caches the graded pieces A^k(kind) for one polytope and one Θ.
pub struct ArtinianReduction<'a, F: Field> {
    polytope: &'a LatticePolytope,
    theta: ParameterMatrix<F>,
    cache: Mutex<HashMap<(AlgebraKind, u32), Arc<QuotientPresentation<F::Elem>>>>,
}

impl<'a, F: Field> ArtinianReduction<'a, F> {
    pub fn new(polytope: &'a LatticePolytope, theta: ParameterMatrix<F>) -> Result<Self> {
        theta.check_shape(polytope)?;
        Ok(Self {
            polytope,
            theta,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn polytope(&self) -> &'a LatticePolytope {
        self.polytope
    }

    pub fn field(&self) -> &F {
        self.theta.field()
    }

    pub fn theta(&self) -> &ParameterMatrix<F> {
        &self.theta
    }

    /// Rows of Θ used for the given kind: all d+1, or the first d for ∂P.
    pub fn rows_for(&self, kind: AlgebraKind) -> usize {
        let d = self.polytope.dim();
        match kind {
            AlgebraKind::Boundary => d,
            _ => d + 1,
        }
    }

    pub fn piece(&self, kind: AlgebraKind, k: u32) -> Arc<QuotientPresentation<F::Elem>> {
        if let Some(q) = self.cache.lock().expect("cache lock").get(&(kind, k)) {
            return Arc::clone(q);
        }
        let q = Arc::new(self.build(kind, k));
        self.cache
            .lock()
            .expect("cache lock")
            .entry((kind, k))
            .or_insert(q)
            .clone()
    }

    pub fn dim(&self, kind: AlgebraKind, k: u32) -> usize {
        self.piece(kind, k).dim()
    }

    /// The ambient basis of degree k and the matrix whose columns are the
    /// θ_i-multiples of the degree k-1 basis.
    pub fn relations(&self, kind: AlgebraKind, k: u32) -> (GradedBasis, Matrix<F::Elem>) {
        let field = self.field();
        let p = self.polytope;
        let ambient = graded_basis(p, kind, k);
        let mut columns: Vec<Vec<F::Elem>> = Vec::new();
        if k > 0 {
            let lower = graded_basis(p, kind, k - 1);
            let degree_one: Vec<(usize, &ConeMonomial)> = p
                .lattice_points()
                .iter()
                .enumerate()
                .filter(|(_, m)| kind != AlgebraKind::Boundary || !m.interior)
                .collect();
            for i in 0..self.rows_for(kind) {
                for m in &lower.monomials {
                    let mut col = vec![field.zero(); ambient.len()];
                    let mut nonzero = false;
                    for &(j, x) in &degree_one {
                        let coef = self.theta.get(i, j);
                        if field.is_zero(coef) {
                            continue;
                        }
                        if let Some(prod) = multiply(p, x, m, kind).expect("kinds match") {
                            let r = ambient.index_of(&prod.point).expect("product in ambient");
                            col[r] = field.add(&col[r], coef);
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        columns.push(col);
                    }
                }
            }
        }
        let matrix = Matrix::from_columns(ambient.len(), &columns, field.zero());
        (ambient, matrix)
    }

    fn build(&self, kind: AlgebraKind, k: u32) -> QuotientPresentation<F::Elem> {
        let field = self.field();
        let (ambient, relation_image) = self.relations(kind, k);
        let cok = cokernel_basis(field, &relation_image);
        QuotientPresentation {
            ambient,
            relation_image,
            relation_rank: cok.rank,
            coset_basis: cok.complement,
            projection: cok.projection,
        }
    }

    /// Matrix of multiplication by `element^power` from A^{k}(from) to
    /// A^{k + power·deg}(to), in coset bases. A product landing in the
    /// module may be read in the ring through the inclusion.
    pub fn multiplication_map(
        &self,
        from: AlgebraKind,
        to: AlgebraKind,
        k: u32,
        element: &Element<F::Elem>,
        power: u32,
    ) -> Result<Matrix<F::Elem>> {
        let field = self.field();
        let product_kind = product_kind(from, element.kind, power)?;
        let inclusion_ok = product_kind == to || (product_kind == AlgebraKind::Relative && to == AlgebraKind::Ring);
        if !inclusion_ok {
            return Err(Error::IncompatibleKinds(format!(
                "{from:?} times {:?} lands in {product_kind:?}, not {to:?}",
                element.kind
            )));
        }
        let source = self.piece(from, k);
        let target_height = k + power * element.height;
        let target = self.piece(to, target_height);
        let mut columns = Vec::with_capacity(source.dim());
        for m in source.coset_monomials() {
            let mut terms: HashMap<LatticePoint, F::Elem> = HashMap::new();
            terms.insert(m.point.clone(), field.one());
            let mut height = k;
            for _ in 0..power {
                terms = element.act(self.polytope, field, &terms, height);
                height += element.height;
            }
            let mut sorted: Vec<(LatticePoint, F::Elem)> = terms.into_iter().collect();
            sorted.sort_by(|a, b| a.0.cmp(&b.0));
            columns.push(target.reduce(field, &sorted)?);
        }
        Ok(Matrix::from_columns(target.dim(), &columns, field.zero()))
    }

    /// Facets on whose lattice points Θ has rank below d (the restriction
    /// then fails to be a system of parameters for the facet).
    pub fn facet_rank_deficiencies(&self) -> Vec<usize> {
        let p = self.polytope;
        let d = p.dim();
        let lattice = p.face_lattice();
        let facet_faces = lattice.of_dim(d as i32 - 1);
        facet_faces
            .into_iter()
            .filter(|&f| {
                let cols = p.points_on_face(f);
                rank(self.field(), &self.theta.matrix().select_columns(&cols)) < d
            })
            .collect()
    }
}

fn product_kind_once(from: AlgebraKind, by: AlgebraKind) -> Result<AlgebraKind> {
    use AlgebraKind::*;
    match (from, by) {
        (Ring, Ring) => Ok(Ring),
        (Ring, Relative) | (Relative, Ring) => Ok(Relative),
        (Boundary, Boundary) => Ok(Boundary),
        _ => Err(Error::IncompatibleKinds(format!("no product {from:?} x {by:?}"))),
    }
}

fn product_kind(from: AlgebraKind, by: AlgebraKind, power: u32) -> Result<AlgebraKind> {
    let mut kind = from;
    for _ in 0..power {
        kind = product_kind_once(kind, by)?;
    }
    Ok(kind)
}

#[cfg(test)]
mod tests;
