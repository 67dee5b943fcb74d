//! Lattice-preserving coordinates on the affine span of a point set.

/// Affine isomorphism between `Z^n ∩ aff(points)` and `Z^d`.
///
/// Built from a unimodular row reduction `U · M = [H; 0]` of the difference
/// matrix `M`; the first `d` rows of `U` give coordinates and the first `d`
/// columns of `U⁻¹` lift them back. Full-dimensional inputs keep their own
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFrame {
    origin: Vec<i64>,
    /// d × n
    coords: Vec<Vec<i64>>,
    /// n × d
    basis: Vec<Vec<i64>>,
    identity: bool,
}

impl AffineFrame {
    pub fn new(points: &[Vec<i64>]) -> Self {
        let n = points.first().map_or(0, Vec::len);
        let origin = points.first().cloned().unwrap_or_default();
        let m = points.len().saturating_sub(1);
        // n × m difference matrix
        let mut a: Vec<Vec<i64>> = (0..n)
            .map(|r| (1..points.len()).map(|j| points[j][r] - origin[r]).collect())
            .collect();
        let mut u = identity(n);
        let mut u_inv = identity(n);
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            loop {
                // smallest nonzero |entry| at or below `row`
                let pick = (row..n)
                    .filter(|&r| a[r][col] != 0)
                    .min_by_key(|&r| a[r][col].abs());
                let Some(p) = pick else { break };
                swap_rows(&mut a, &mut u, &mut u_inv, row, p);
                let mut done = true;
                for r in (row + 1)..n {
                    if a[r][col] != 0 {
                        let q = a[r][col].div_euclid(a[row][col]);
                        add_row(&mut a, &mut u, &mut u_inv, r, row, -q);
                        if a[r][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if a[row][col] != 0 {
                row += 1;
            }
        }
        let d = row;
        if d == n {
            return Self {
                origin: vec![0; n],
                coords: identity(n),
                basis: identity(n),
                identity: true,
            };
        }
        Self {
            origin,
            coords: u[..d].to_vec(),
            basis: (0..n).map(|r| u_inv[r][..d].to_vec()).collect(),
            identity: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        if self.identity {
            return x.to_vec();
        }
        self.coords
            .iter()
            .map(|row| row.iter().zip(x.iter().zip(&self.origin)).map(|(u, (a, o))| u * (a - o)).sum())
            .collect()
    }

    /// Lifts a point of the `height`-th dilate back to ambient coordinates.
    pub fn lift(&self, y: &[i64], height: i64) -> Vec<i64> {
        if self.identity {
            return y.to_vec();
        }
        (0..self.basis.len())
            .map(|r| height * self.origin[r] + self.basis[r].iter().zip(y).map(|(b, c)| b * c).sum::<i64>())
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn swap_rows(a: &mut [Vec<i64>], u: &mut [Vec<i64>], u_inv: &mut [Vec<i64>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    u.swap(i, j);
    for row in u_inv.iter_mut() {
        row.swap(i, j);
    }
}

/// row_t += q · row_s, keeping `u_inv` the inverse of `u`.
fn add_row(a: &mut [Vec<i64>], u: &mut [Vec<i64>], u_inv: &mut [Vec<i64>], t: usize, s: usize, q: i64) {
    for c in 0..a[t].len() {
        a[t][c] += q * a[s][c];
    }
    for c in 0..u[t].len() {
        u[t][c] += q * u[s][c];
    }
    for row in u_inv.iter_mut() {
        row[s] -= q * row[t];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_dimensional_is_identity() {
        let f = AffineFrame::new(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert!(f.is_identity());
        assert_eq!(f.project(&[3, 4]), vec![3, 4]);
    }

    #[test]
    fn diagonal_segment_projects_to_primitive_steps() {
        // segment from (1,1,1) to (3,5,7): lattice length 2
        let f = AffineFrame::new(&[vec![1, 1, 1], vec![3, 5, 7]]);
        assert_eq!(f.dim(), 1);
        let a = f.project(&[1, 1, 1]);
        let b = f.project(&[3, 5, 7]);
        assert_eq!((b[0] - a[0]).abs(), 2);
        let mid = f.project(&[2, 3, 4]);
        assert_eq!((mid[0] - a[0]).abs(), 1);
        assert_eq!(f.lift(&mid, 1), vec![2, 3, 4]);
    }

    #[test]
    fn tilted_triangle_round_trips() {
        let pts = vec![vec![0, 0, 0], vec![1, 0, 1], vec![0, 1, 1]];
        let f = AffineFrame::new(&pts);
        assert_eq!(f.dim(), 2);
        for p in &pts {
            assert_eq!(f.lift(&f.project(p), 1), *p);
        }
        // dilate: height-2 point (1,1,2) = (1,0,1) + (0,1,1)
        let y = f.project(&[1, 1, 2]);
        assert_eq!(f.lift(&y, 1), vec![1, 1, 2]);
    }
}
