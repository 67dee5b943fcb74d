//! Facet inequalities by exhaustive hyperplane candidates.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

/// `⟨normal, x⟩ ≤ offset`, with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FacetInequality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl FacetInequality {
    pub fn value(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Slack of the point `x` of the `height`-th dilate.
    pub fn slack(&self, x: &[i64], height: i64) -> i64 {
        height * self.offset - self.value(x)
    }
}

/// Determinant of a square integer matrix (Bareiss).
pub(crate) fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = ((k + 1)..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank of an integer matrix.
pub(crate) fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..a.len() {
            if a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in c..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 {
                    for v in a[i].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Affine dimension of a point set (-1 for the empty set).
pub(crate) fn affine_dim(points: &[&[i64]]) -> i32 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    int_rank(&diffs) as i32
}

/// Normal to the hyperplane through `base` spanned by the given d-1
/// directions in Z^d: the vector of signed maximal minors.
fn normal_of(dirs: &[Vec<i64>], d: usize) -> Vec<i64> {
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> = dirs
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let det = int_det(&minor);
            let det = i64::try_from(det).expect("minor overflow");
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Irredundant facet inequalities of a full-dimensional point set in Z^d.
pub fn facets_of(points: &[Vec<i64>]) -> Result<Vec<FacetInequality>> {
    let d = points.first().map_or(0, Vec::len);
    if points.is_empty() {
        return Err(Error::Degenerate("empty point set".into()));
    }
    let refs: Vec<&[i64]> = points.iter().map(Vec::as_slice).collect();
    if affine_dim(&refs) != d as i32 {
        return Err(Error::Degenerate(format!(
            "points span an affine space of dimension {} < {d}",
            affine_dim(&refs)
        )));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut out = BTreeSet::new();
    subsets(points.len(), d, &mut |idx| {
        let base = &points[idx[0]];
        let dirs: Vec<Vec<i64>> = idx[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = normal_of(&dirs, d);
        let g = normal.iter().fold(0i128, |g, &v| gcd(g, v as i128)) as i64;
        if g == 0 {
            return;
        }
        for v in normal.iter_mut() {
            *v /= g;
        }
        let ineq = FacetInequality {
            offset: normal.iter().zip(base).map(|(a, b)| a * b).sum(),
            normal,
        };
        let (mut below, mut above) = (false, false);
        for p in points {
            match ineq.value(p).cmp(&ineq.offset) {
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        match (below, above) {
            (true, false) => {
                out.insert(ineq);
            }
            (false, true) => {
                out.insert(FacetInequality {
                    normal: ineq.normal.iter().map(|v| -v).collect(),
                    offset: -ineq.offset,
                });
            }
            _ => {}
        }
    });
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment() {
        let f = facets_of(&[vec![0], vec![2]]).unwrap();
        assert_eq!(
            f,
            vec![
                FacetInequality { normal: vec![-1], offset: 0 },
                FacetInequality { normal: vec![1], offset: 2 },
            ]
        );
    }

    #[test]
    fn unit_square_offsets() {
        let f = facets_of(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let mut offsets: Vec<i64> = f.iter().map(|i| i.offset).collect();
        offsets.sort();
        assert_eq!(offsets, vec![0, 0, 1, 1]);
    }

    #[test]
    fn degenerate_input() {
        assert!(matches!(
            facets_of(&[vec![0, 0], vec![1, 1], vec![2, 2]]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(int_det(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(int_det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(int_rank(&[vec![1, 2], vec![2, 4]]), 1);
    }
}
