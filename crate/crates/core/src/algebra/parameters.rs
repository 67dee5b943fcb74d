use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Matrix, RationalField2, RationalFn2, Specialization, Var};
use crate::lattice::LatticePolytope;

/// The coefficients θ_{i,p}: d+1 rows, one column per lattice point of P.
#[derive(Clone, Debug)]
pub struct ParameterMatrix<F: Field> {
    field: F,
    matrix: Matrix<F::Elem>,
    backend: String,
}

impl<F: Field> ParameterMatrix<F> {
    pub fn new(field: F, matrix: Matrix<F::Elem>, backend: impl Into<String>) -> Self {
        Self {
            field,
            matrix,
            backend: backend.into(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn backend(&self) -> &str {
        &self.backend
    }

    pub fn get(&self, i: usize, p: usize) -> &F::Elem {
        self.matrix.get(i, p)
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub(crate) fn check_shape(&self, p: &LatticePolytope) -> Result<()> {
        if self.rows() != p.dim() + 1 || self.cols() != p.num_lattice_points() {
            return Err(Error::Shape(format!(
                "Θ is {}×{}, expected {}×{}",
                self.rows(),
                self.cols(),
                p.dim() + 1,
                p.num_lattice_points()
            )));
        }
        Ok(())
    }

    /// Copy with row `s` replaced by zeros.
    pub fn with_row_zeroed(&self, s: usize) -> Self {
        let mut m = self.matrix.clone();
        for c in 0..m.cols() {
            m.set(s, c, self.field.zero());
        }
        Self::new(self.field.clone(), m, format!("{} (row {s} zeroed)", self.backend))
    }

    /// det of the square submatrix on `cols`, taken in the given order.
    pub fn minor(&self, cols: &[usize]) -> F::Elem {
        determinant(&self.field, &self.matrix.select_columns(cols))
    }
}

impl<F: FiniteField> ParameterMatrix<F> {
    pub fn specialized(spec: &Specialization<F>, p: &LatticePolytope) -> Self {
        let m = spec.theta_matrix(p.dim() + 1, p.num_lattice_points());
        Self::new(
            spec.field().clone(),
            m,
            format!("{} seed {}", spec.field().describe(), spec.seed()),
        )
    }
}

/// Largest number of indeterminates (d+1)·|P∩Λ| accepted in exact mode
/// without an explicit override.
pub const EXACT_VARIABLE_CAP: usize = 12;

impl ParameterMatrix<RationalField2> {
    /// [`Self::symbolic`] guarded by [`EXACT_VARIABLE_CAP`].
    pub fn symbolic_capped(p: &LatticePolytope, allow_over_cap: bool) -> Result<Self> {
        let needed = (p.dim() + 1) * p.num_lattice_points();
        if needed > EXACT_VARIABLE_CAP && !allow_over_cap {
            return Err(Error::VariableCap {
                needed,
                cap: EXACT_VARIABLE_CAP,
            });
        }
        Ok(Self::symbolic(p))
    }

    /// Θ with independent indeterminates θ_{i,p}.
    pub fn symbolic(p: &LatticePolytope) -> Self {
        let rows = (0..=p.dim())
            .map(|i| {
                (0..p.num_lattice_points())
                    .map(|j| RationalFn2::var(Var::new(i, j)))
                    .collect()
            })
            .collect();
        Self::new(
            RationalField2,
            Matrix::from_rows(rows).expect("rectangular"),
            "GF(2)(theta) exact",
        )
    }
}

/// Determinant by Gaussian elimination with sign tracking.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let pivot = (c..n)
            .filter(|&r| !field.is_zero(a.get(r, c)))
            .min_by_key(|&r| field.pivot_weight(a.get(r, c)));
        let Some(r) = pivot else {
            return field.zero();
        };
        if r != c {
            a.swap_rows(r, c);
            det = field.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = field.mul(&det, &piv);
        let inv = field.inv(&piv).expect("nonzero pivot");
        for r in c + 1..n {
            if field.is_zero(a.get(r, c)) {
                continue;
            }
            let f = field.mul(a.get(r, c), &inv);
            for j in c..n {
                let v = field.sub(a.get(r, j), &field.mul(&f, a.get(c, j)));
                a.set(r, j, v);
            }
        }
    }
    det
}
