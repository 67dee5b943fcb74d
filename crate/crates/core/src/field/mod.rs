//! Exact arithmetic backends and the dense linear algebra run on top of them.
//!
//! A backend is a small immutable value implementing [`Field`]; elements are
//! plain data and every operation goes through the backend, so the same
//! elimination code serves GF(2^k), Z/p and GF(2)(θ) alike.

mod gf2k;
mod matrix;
mod poly2;
mod prime;
mod specialize;

pub use gf2k::Gf2k;
pub use matrix::{
    cokernel_basis, left_kernel_vector, mat_mul, nullspace, rank, solve, Cokernel, Matrix,
};
pub use poly2::{Monomial2, RationalField2, RationalFn2, SparsePoly2, Var};
pub use prime::PrimeField;
pub use specialize::{Specialization, SpecializationDomain};

use std::fmt::Debug;

/// A field backend.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// log2 of the field size, `None` for infinite fields.
    fn order_log2(&self) -> Option<f64>;
    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// Image of an integer under the canonical ring map Z -> field.
    fn from_i64(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = if n < 0 { self.neg(&self.one()) } else { self.one() };
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            m >>= 1;
        }
        acc
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Cost used to prefer cheap pivots during elimination. Finite fields
    /// treat every nonzero element alike.
    fn pivot_weight(&self, _a: &Self::Elem) -> usize {
        0
    }

    /// Stable textual rendering for reports.
    fn render(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// Finite backends that can turn raw random bits into elements.
pub trait FiniteField: Field {
    fn from_bits(&self, bits: u64) -> Self::Elem;
}
