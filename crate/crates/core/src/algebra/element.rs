use super::{share_facet, AlgebraKind};
use crate::field::Field;
use crate::lattice::{ConeMonomial, LatticePoint, LatticePolytope};
use std::collections::HashMap;

/// A homogeneous element: a combination of monomials of one height,
/// viewed in the algebra of the given kind.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<E> {
    pub kind: AlgebraKind,
    pub height: u32,
    pub terms: Vec<(ConeMonomial, E)>,
}

impl<E: Clone> Element<E> {
    pub fn monomial(m: ConeMonomial, kind: AlgebraKind, one: E) -> Self {
        Self {
            kind,
            height: m.height,
            terms: vec![(m, one)],
        }
    }

    /// Multiplies a sparse element of the given height by `self`. Products
    /// in the boundary algebra that leave every facet cone are dropped.
    pub(crate) fn act<F: Field<Elem = E>>(
        &self,
        p: &LatticePolytope,
        field: &F,
        terms: &HashMap<LatticePoint, E>,
        height: u32,
    ) -> HashMap<LatticePoint, E> {
        let mut out: HashMap<LatticePoint, E> = HashMap::new();
        for (pt, c) in terms {
            let base = (self.kind == AlgebraKind::Boundary).then(|| {
                p.monomial(pt.clone(), height).expect("term lies in the cone")
            });
            for (q, e) in &self.terms {
                if let Some(b) = &base {
                    if !share_facet(p, b, q) {
                        continue;
                    }
                }
                let v = field.mul(c, e);
                if field.is_zero(&v) {
                    continue;
                }
                let key = pt.add(&q.point);
                match out.get_mut(&key) {
                    Some(acc) => *acc = field.add(acc, &v),
                    None => {
                        out.insert(key, v);
                    }
                }
            }
        }
        out.retain(|_, v| !field.is_zero(v));
        out
    }
}

/// The degree-one element Σ_p c_p x_p of k[P]; `coefficients` is indexed by
/// the lattice points of P in canonical order.
pub fn linear_element<F: Field>(
    p: &LatticePolytope,
    field: &F,
    coefficients: &[F::Elem],
) -> Element<F::Elem> {
    let terms = p
        .lattice_points()
        .iter()
        .zip(coefficients)
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Element {
        kind: AlgebraKind::Ring,
        height: 1,
        terms,
    }
}

impl<E: Clone> Element<E> {
    /// Same element restricted to boundary monomials, viewed in k[∂P].
    pub fn to_boundary(&self) -> Self {
        Self {
            kind: AlgebraKind::Boundary,
            height: self.height,
            terms: self.terms.iter().filter(|(m, _)| !m.interior).cloned().collect(),
        }
    }
}
