//! Exact integer geometry of lattice polytopes.
//!
//! Every polytope is stored in lattice coordinates on its own affine span
//! (see [`AffineFrame`]), so `dim` always equals the coordinate length used
//! by dilates, facets and cone monomials.

mod faces;
mod frame;
mod hull;

pub use faces::{Face, FaceLattice};
pub use frame::AffineFrame;
pub use hull::{facets_of, FacetInequality};

use crate::error::{Error, Result};
use hull::int_rank;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// A lattice point of cone(P) at the given height, i.e. a point of the
/// `height`-th dilate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConeMonomial {
    pub point: LatticePoint,
    pub height: u32,
    pub interior: bool,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    name: String,
    vertices: Vec<Vec<i64>>,
    ambient_dim: usize,
    frame: AffineFrame,
    local_vertices: Vec<Vec<i64>>,
    facets: Vec<FacetInequality>,
    faces: FaceLattice,
    points: Vec<ConeMonomial>,
}

impl LatticePolytope {
    /// Validates the vertex list: nonempty, rectangular, pairwise distinct,
    /// and every point a vertex of the hull.
    pub fn new(name: impl Into<String>, vertices: Vec<Vec<i64>>) -> Result<Self> {
        let name = name.into();
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput(format!("{name}: no vertices")));
        };
        let ambient_dim = first.len();
        if vertices.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::InvalidInput(format!(
                "{name}: vertex rows have different lengths"
            )));
        }
        let distinct: HashSet<&Vec<i64>> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidInput(format!("{name}: repeated vertex")));
        }
        if vertices.iter().flatten().any(|c| c.abs() > 1 << 20) {
            return Err(Error::InvalidInput(format!("{name}: coordinates too large")));
        }
        let frame = AffineFrame::new(&vertices);
        let local_vertices: Vec<Vec<i64>> = vertices.iter().map(|v| frame.project(v)).collect();
        let facets = facets_of(&local_vertices)?;
        let d = frame.dim();
        for (v, local) in vertices.iter().zip(&local_vertices) {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.value(local) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            if int_rank(&tight) != d {
                return Err(Error::RedundantVertex(v.clone()));
            }
        }
        let faces = FaceLattice::build(&local_vertices, &facets);
        let mut polytope = Self {
            name,
            vertices,
            ambient_dim,
            frame,
            local_vertices,
            facets,
            faces,
            points: Vec::new(),
        };
        polytope.points = polytope.enumerate_dilate_points(1);
        Ok(polytope)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Vertices in lattice coordinates of the affine span.
    pub fn local_vertices(&self) -> &[Vec<i64>] {
        &self.local_vertices
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    pub fn facet_description(&self) -> &[FacetInequality] {
        &self.facets
    }

    pub fn face_lattice(&self) -> &FaceLattice {
        &self.faces
    }

    /// P ∩ Λ in lexicographic order; the column order of every Θ.
    pub fn lattice_points(&self) -> &[ConeMonomial] {
        &self.points
    }

    pub fn num_lattice_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_index(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search_by(|m| m.point.cmp(p)).ok()
    }

    /// Ambient coordinates of a cone monomial.
    pub fn lift(&self, m: &ConeMonomial) -> Vec<i64> {
        self.frame.lift(m.point.coords(), m.height as i64)
    }

    pub fn contains(&self, point: &[i64], height: u32) -> bool {
        if height == 0 {
            return point.iter().all(|&c| c == 0);
        }
        self.facets.iter().all(|f| f.slack(point, height as i64) >= 0)
    }

    pub fn is_interior(&self, point: &[i64], height: u32) -> bool {
        height > 0 && self.facets.iter().all(|f| f.slack(point, height as i64) > 0)
    }

    pub fn monomial(&self, point: LatticePoint, height: u32) -> Option<ConeMonomial> {
        if !self.contains(point.coords(), height) {
            return None;
        }
        let interior = self.is_interior(point.coords(), height);
        Some(ConeMonomial {
            point,
            height,
            interior,
        })
    }

    /// Facets (indices) whose cone contains the monomial.
    pub fn facets_containing(&self, m: &ConeMonomial) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&k| self.facets[k].slack(m.point.coords(), m.height as i64) == 0)
            .collect()
    }

    /// Lattice points of the `h`-th dilate in lexicographic order.
    pub fn enumerate_dilate_points(&self, h: u32) -> Vec<ConeMonomial> {
        let d = self.dim();
        if h == 0 {
            return vec![ConeMonomial {
                point: LatticePoint(vec![0; d]),
                height: 0,
                interior: false,
            }];
        }
        let hi = h as i64;
        let lo: Vec<i64> = (0..d)
            .map(|c| self.local_vertices.iter().map(|v| v[c]).min().unwrap() * hi)
            .collect();
        let up: Vec<i64> = (0..d)
            .map(|c| self.local_vertices.iter().map(|v| v[c]).max().unwrap() * hi)
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur, h) {
                out.push(ConeMonomial {
                    interior: self.is_interior(&cur, h),
                    point: LatticePoint(cur.clone()),
                    height: h,
                });
            }
            // odometer, last coordinate fastest => lexicographic order
            let mut c = d;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if cur[c] < up[c] {
                    cur[c] += 1;
                    cur[(c + 1)..d].copy_from_slice(&lo[(c + 1)..d]);
                    break;
                }
            }
        }
    }

    /// Lattice points of P lying on the given face.
    pub fn points_on_face(&self, face: usize) -> Vec<usize> {
        let facets = self.faces.facets_containing(face);
        if self.faces.face(face).vertices.is_empty() {
            return Vec::new();
        }
        (0..self.points.len())
            .filter(|&i| {
                facets
                    .iter()
                    .all(|&k| self.facets[k].slack(self.points[i].point.coords(), 1) == 0)
            })
            .collect()
    }

    /// The face as a lattice polytope in its own lattice.
    pub fn face_polytope(&self, face: usize) -> Result<LatticePolytope> {
        let f = self.faces.face(face);
        if f.vertices.is_empty() {
            return Err(Error::Precondition("the empty face is not a polytope".into()));
        }
        let verts = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        LatticePolytope::new(format!("{}[face {face}]", self.name), verts)
    }

    /// Integer decomposition property, checked at heights 2..=max(2, d-1).
    /// On failure returns a cone monomial that is not (height-1 point) +
    /// (cone point one level down).
    pub fn is_idp(&self) -> (bool, Option<ConeMonomial>) {
        let d = self.dim() as u32;
        for h in 2..=d.saturating_sub(1).max(2) {
            for m in self.enumerate_dilate_points(h) {
                let decomposes = self.points.iter().any(|p| {
                    let rest = m.point.sub(&p.point);
                    self.contains(rest.coords(), h - 1)
                });
                if !decomposes {
                    return (false, Some(m));
                }
            }
        }
        (true, None)
    }

    /// The unique interior lattice point, if P is reflexive.
    pub fn reflexive_center(&self) -> Option<LatticePoint> {
        let interior: Vec<&ConeMonomial> = self.points.iter().filter(|m| m.interior).collect();
        let [center] = interior.as_slice() else {
            return None;
        };
        let p = center.point.coords();
        self.facets
            .iter()
            .all(|f| f.offset - f.value(p) == 1)
            .then(|| center.point.clone())
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive_center().is_some()
    }

    /// Largest height of a minimal generator of the interior of cone(P),
    /// searched over heights 1..=d+1.
    pub fn interior_generation_height(&self) -> u32 {
        let d = self.dim() as u32;
        let mut lower: Vec<ConeMonomial> = Vec::new();
        let mut j = 0;
        for h in 1..=d + 1 {
            let interior: Vec<ConeMonomial> = self
                .enumerate_dilate_points(h)
                .into_iter()
                .filter(|m| m.interior)
                .collect();
            for m in &interior {
                let generated = lower.iter().any(|q| {
                    let rest = m.point.sub(&q.point);
                    self.contains(rest.coords(), h - q.height)
                });
                if !generated {
                    j = h;
                }
            }
            lower.extend(interior);
        }
        j
    }

    /// Counts #(hP ∩ Λ) and #(int(hP) ∩ Λ) for h = 0..=max_h.
    pub fn dilate_counts(&self, max_h: u32) -> (Vec<u64>, Vec<u64>) {
        let mut all = Vec::new();
        let mut interior = Vec::new();
        for h in 0..=max_h {
            let pts = self.enumerate_dilate_points(h);
            all.push(pts.len() as u64);
            interior.push(pts.iter().filter(|m| m.interior).count() as u64);
        }
        (all, interior)
    }
}
