use super::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a backend's element type.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, fill: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>], fill: E) -> Self {
        let mut m = Self::filled(rows, columns.len(), fill);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Self {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if field.is_zero(y) {
                    continue;
                }
                let cur = out.get(i, j);
                let next = field.add(cur, &field.mul(x, y));
                out.set(i, j, next);
            }
        }
    }
    Ok(out)
}

/// `row[target] -= factor * row[source]` over columns `from..`.
fn axpy_rows<F: Field>(field: &F, m: &mut Matrix<F::Elem>, target: usize, source: usize, factor: &F::Elem, from: usize) {
    for c in from..m.cols {
        let s = m.get(source, c);
        if field.is_zero(s) {
            continue;
        }
        let t = field.sub(m.get(target, c), &field.mul(factor, s));
        m.set(target, c, t);
    }
}

/// Rank by full-pivoting Gaussian elimination. Pivots of least
/// [`Field::pivot_weight`] are preferred, which keeps rational-function
/// entries small.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let mut col_order: Vec<usize> = (0..a.cols).collect();
    let mut r = 0;
    while r < a.rows && r < a.cols {
        let mut best: Option<(usize, usize, usize)> = None;
        'search: for i in r..a.rows {
            for (jj, &j) in col_order.iter().enumerate().skip(r) {
                let x = a.get(i, j);
                if field.is_zero(x) {
                    continue;
                }
                let w = field.pivot_weight(x);
                if best.is_none_or(|(_, _, bw)| w < bw) {
                    best = Some((i, jj, w));
                    if w == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pjj, _)) = best else { break };
        a.swap_rows(r, pi);
        col_order.swap(r, pjj);
        let pc = col_order[r];
        let inv = field.inv(a.get(r, pc)).expect("pivot is nonzero");
        for i in (r + 1)..a.rows {
            let x = a.get(i, pc);
            if field.is_zero(x) {
                continue;
            }
            let factor = field.mul(x, &inv);
            // columns already eliminated are zero in row r except at pivots
            // of earlier steps; sweep the whole row to stay simple.
            axpy_rows(field, &mut a, i, r, &factor, 0);
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<F: Field>(field: &F, a: &mut Matrix<F::Elem>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.rows {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for i in r..a.rows {
            let x = a.get(i, c);
            if field.is_zero(x) {
                continue;
            }
            let w = field.pivot_weight(x);
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((i, w));
                if w == 0 {
                    break;
                }
            }
        }
        let Some((pi, _)) = best else { continue };
        a.swap_rows(r, pi);
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for cc in c..a.cols {
            let v = field.mul(a.get(r, cc), &inv);
            a.set(r, cc, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let x = a.get(i, c).clone();
            if field.is_zero(&x) {
                continue;
            }
            axpy_rows(field, a, i, r, &x, c);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(field, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, b[i].clone());
    }
    let pivots = rref(field, &mut aug, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a, m.cols);
    let mut is_pivot = vec![None; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(a.get(r, free));
        }
        out.push(v);
    }
    out
}

/// Some nonzero `y` with `yᵀ m = 0`, if one exists.
pub fn left_kernel_vector<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Vec<F::Elem>> {
    nullspace(field, &m.transpose()).into_iter().next()
}

/// Complement of a column space, chosen greedily in coordinate order, with
/// the projection onto it.
#[derive(Clone, Debug, PartialEq)]
pub struct Cokernel<E> {
    /// Ambient coordinates whose unit vectors form a basis of the quotient.
    pub complement: Vec<usize>,
    /// `complement.len() × ambient` matrix sending each ambient unit vector
    /// to its class in the complement basis.
    pub projection: Matrix<E>,
    pub rank: usize,
}

/// Quotient of `F^{rows}` by the span of the columns of `m`.
///
/// Coordinate j joins the complement iff e_j is independent of the columns
/// together with e_0, …, e_{j-1}. Equivalently, the pivots are the possible
/// last nonzero positions of vectors in the column span, which is what the
/// elimination below tracks.
pub fn cokernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Cokernel<F::Elem> {
    let n = m.rows;
    let mut basis: Vec<Option<Vec<F::Elem>>> = vec![None; n];
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == n {
            break;
        }
        let mut v = m.column(c);
        let mut h = n;
        while h > 0 {
            h -= 1;
            if field.is_zero(&v[h]) {
                continue;
            }
            match &basis[h] {
                Some(b) => {
                    let coef = v[h].clone();
                    for i in 0..=h {
                        if !field.is_zero(&b[i]) {
                            v[i] = field.sub(&v[i], &field.mul(&coef, &b[i]));
                        }
                    }
                }
                None => {
                    let inv = field.inv(&v[h]).expect("nonzero");
                    for x in v.iter_mut().take(h + 1) {
                        if !field.is_zero(x) {
                            *x = field.mul(x, &inv);
                        }
                    }
                    basis[h] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    // back-substitute so each pivot vector vanishes at the other pivots
    for h in 0..n {
        let Some(mut b) = basis[h].take() else { continue };
        for j in (0..h).rev() {
            if field.is_zero(&b[j]) {
                continue;
            }
            if let Some(bj) = &basis[j] {
                let coef = b[j].clone();
                for i in 0..=j {
                    if !field.is_zero(&bj[i]) {
                        b[i] = field.sub(&b[i], &field.mul(&coef, &bj[i]));
                    }
                }
            }
        }
        basis[h] = Some(b);
    }
    let complement: Vec<usize> = (0..n).filter(|&j| basis[j].is_none()).collect();
    let mut slot = vec![usize::MAX; n];
    for (k, &j) in complement.iter().enumerate() {
        slot[j] = k;
    }
    let mut projection = Matrix::zeros(field, complement.len(), n);
    for j in 0..n {
        match &basis[j] {
            None => projection.set(slot[j], j, field.one()),
            Some(b) => {
                for i in 0..j {
                    if !field.is_zero(&b[i]) {
                        projection.set(slot[i], j, field.neg(&b[i]));
                    }
                }
            }
        }
    }
    Cokernel {
        complement,
        projection,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Gf2k, PrimeField, RationalField2, RationalFn2, Var};
    use proptest::prelude::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix<F: FiniteField>(f: &F, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
        let data: Vec<Vec<F::Elem>> = (0..rows)
            .map(|_| (0..cols).map(|_| f.from_bits(rng.gen())).collect())
            .collect();
        Matrix::from_rows(data).unwrap()
    }

    /// Product of a random r×k and k×c matrix has rank <= k.
    fn low_rank<F: FiniteField>(f: &F, rows: usize, cols: usize, k: usize, rng: &mut ChaCha8Rng) -> Matrix<F::Elem> {
        let a = random_matrix(f, rows, k, rng);
        let b = random_matrix(f, k, cols, rng);
        mat_mul(f, &a, &b).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let f = Gf2k::new(8).unwrap();
        assert_eq!(rank(&f, &Matrix::identity(&f, 3)), 3);
        let z = Matrix::zeros(&f, 4, 3);
        assert_eq!(rank(&f, &z), 0);
        let ck = cokernel_basis(&f, &z);
        assert_eq!(ck.complement, vec![0, 1, 2, 3]);
        assert_eq!(ck.projection, Matrix::identity(&f, 4));
    }

    #[test]
    fn rank_is_invariant_under_row_shuffle() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        for k in 0..=4 {
            let m = low_rank(&f, 6, 4, k, &mut rng);
            let mut order: Vec<usize> = (0..6).collect();
            order.shuffle(&mut rng);
            let shuffled = m.select_rows(&order);
            assert_eq!(rank(&f, &m), k);
            assert_eq!(rank(&f, &shuffled), k);
        }
    }

    #[test]
    fn mersenne_solve_residual_vanishes() {
        let f = PrimeField::new((1 << 31) - 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let m = random_matrix(&f, 7, 7, &mut rng);
        let b: Vec<u64> = (0..7).map(|_| f.from_bits(rng.gen())).collect();
        let x = solve(&f, &m, &b).unwrap().expect("random square system is solvable");
        let xm = Matrix::from_columns(7, &[x], 0);
        let mx = mat_mul(&f, &m, &xm).unwrap();
        assert_eq!(mx.column(0), b);
    }

    #[test]
    fn inconsistent_system() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(solve(&f, &m, &[1, 3]).unwrap(), None);
        assert!(solve(&f, &m, &[1]).is_err());
    }

    #[test]
    fn cokernel_prefers_early_coordinates() {
        let f = PrimeField::new(101).unwrap();
        // column span = <e0 + e2, e1 + e2>: e0 is free, e1 is free mod e0? no:
        // e1 ≡ -e2 ≡ e0, so only e0 survives.
        let m = Matrix::from_rows(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let ck = cokernel_basis(&f, &m);
        assert_eq!(ck.complement, vec![0]);
        assert_eq!(ck.rank, 2);
        // e1 = (e1 + e2) - (e0 + e2) + e0  =>  e1 ≡ e0; e2 ≡ -e0
        assert_eq!(ck.projection.row(0), &[1, 1, 100]);
    }

    #[test]
    fn rational_function_rank() {
        let f = RationalField2;
        let x = RationalFn2::var(Var::new(0, 0));
        let y = RationalFn2::var(Var::new(0, 1));
        let m = Matrix::from_rows(vec![
            vec![x.clone(), y.clone()],
            vec![x.mul(&x), x.mul(&y)],
        ])
        .unwrap();
        assert_eq!(rank(&f, &m), 1);
        let m2 = Matrix::from_rows(vec![vec![x.clone(), y.clone()], vec![y, x]]).unwrap();
        assert_eq!(rank(&f, &m2), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rank_equals_transpose_rank(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7, k in 0usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Gf2k::new(32).unwrap();
            let m = low_rank(&g, rows, cols, k, &mut rng);
            prop_assert_eq!(rank(&g, &m), rank(&g, &m.transpose()));
            let p = PrimeField::new(65_537).unwrap();
            let m = low_rank(&p, rows, cols, k, &mut rng);
            prop_assert_eq!(rank(&p, &m), rank(&p, &m.transpose()));
        }

        #[test]
        fn cokernel_projection_kills_columns(seed in any::<u64>(), rows in 1usize..8, cols in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Gf2k::new(16).unwrap();
            let m = low_rank(&f, rows, cols.max(1), cols.min(3), &mut rng);
            let ck = cokernel_basis(&f, &m);
            prop_assert_eq!(ck.rank, rank(&f, &m));
            prop_assert_eq!(ck.complement.len(), rows - ck.rank);
            let pm = mat_mul(&f, &ck.projection, &m).unwrap();
            for i in 0..pm.rows() {
                for j in 0..pm.cols() {
                    prop_assert_eq!(*pm.get(i, j), 0);
                }
            }
            // projection restricted to the complement is the identity
            let pc = ck.projection.select_columns(&ck.complement);
            prop_assert_eq!(pc, Matrix::identity(&f, ck.complement.len()));
        }

        #[test]
        fn nullspace_vectors_are_annihilated(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = PrimeField::new(10_007).unwrap();
            let m = low_rank(&f, rows, cols, 2, &mut rng);
            let ns = nullspace(&f, &m);
            prop_assert_eq!(ns.len() + rank(&f, &m), cols);
            for v in ns {
                let col = Matrix::from_columns(cols, &[v], 0);
                let prod = mat_mul(&f, &m, &col).unwrap();
                prop_assert!(prod.column(0).iter().all(|&x| x == 0));
            }
        }
    }
}
