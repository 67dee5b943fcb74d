use super::hull::{affine_dim, FacetInequality};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

/// A face, given by the indices of the polytope vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Face {
    pub dim: i32,
    pub vertices: Vec<usize>,
}

impl Face {
    /// Rank in the face lattice: the empty face has rank 0.
    pub fn rank(&self) -> usize {
        (self.dim + 1) as usize
    }

    pub fn contains(&self, other: &Face) -> bool {
        other.vertices.iter().all(|v| self.vertices.binary_search(v).is_ok())
    }
}

/// All faces including the empty face and the polytope, sorted by
/// (dimension, vertex list). Index 0 is the empty face, the last index is
/// the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    faces: Vec<Face>,
    /// For each face, the facets (by index into the facet list) containing it.
    facets_containing: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub(crate) fn build(vertices: &[Vec<i64>], facets: &[FacetInequality]) -> Self {
        let n = vertices.len();
        let facet_sets: Vec<BTreeSet<usize>> = facets
            .iter()
            .map(|f| (0..n).filter(|&i| f.value(&vertices[i]) == f.offset).collect())
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<usize> = (0..n).collect();
        seen.insert(all.clone());
        seen.insert(Vec::new());
        let mut stack = vec![all];
        while let Some(set) = stack.pop() {
            for fs in &facet_sets {
                let next: Vec<usize> = set.iter().copied().filter(|i| fs.contains(i)).collect();
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vs| {
                let pts: Vec<&[i64]> = vs.iter().map(|&i| vertices[i].as_slice()).collect();
                Face {
                    dim: affine_dim(&pts),
                    vertices: vs,
                }
            })
            .collect();
        faces.sort();
        let facets_containing = faces
            .iter()
            .map(|f| {
                (0..facets.len())
                    .filter(|&k| f.vertices.iter().all(|v| facet_sets[k].contains(v)))
                    .collect()
            })
            .collect();
        Self {
            faces,
            facets_containing,
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn facets_containing(&self, i: usize) -> &[usize] {
        &self.facets_containing[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[b].contains(&self.faces[a])
    }

    /// Faces of the given dimension.
    pub fn of_dim(&self, dim: i32) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == dim).collect()
    }

    /// Elements of the closed interval `[a, b]`, in lattice order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&x| self.leq(a, x) && self.leq(x, b))
            .collect()
    }

    /// Faces covering `a` (one dimension up).
    pub fn covers(&self, a: usize) -> Vec<usize> {
        let d = self.faces[a].dim + 1;
        (0..self.faces.len())
            .filter(|&x| self.faces[x].dim == d && self.leq(a, x))
            .collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let top = self.faces.last().map_or(-1, |f| f.dim);
        (-1..=top)
            .map(|d| self.faces.iter().filter(|f| f.dim == d).count())
            .collect()
    }

    /// Checks Σ_{x ∈ [a,b]} (-1)^{rank x} = 0 when a < b.
    pub fn check_eulerian(&self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Ok(());
        }
        if !self.leq(a, b) {
            return Err(Error::NotEulerian(format!("face {a} is not below face {b}")));
        }
        let s: i64 = self
            .interval(a, b)
            .into_iter()
            .map(|x| if self.faces[x].rank().is_multiple_of(2) { 1 } else { -1 })
            .sum();
        if s != 0 {
            return Err(Error::NotEulerian(format!(
                "alternating sum over [{a}, {b}] is {s}"
            )));
        }
        Ok(())
    }
}
