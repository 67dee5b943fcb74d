use crate::error::{Error, Result};
use crate::lattice::LatticePolytope;
use serde::Serialize;

/// A chain τ_0 ⊂ τ_1 ⊂ … ⊂ τ_d = P with dim τ_i = i, given by face indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceFlag {
    pub faces: Vec<usize>,
}

impl FaceFlag {
    pub fn validate(&self, p: &LatticePolytope) -> Result<()> {
        let lattice = p.face_lattice();
        let d = p.dim();
        if self.faces.len() != d + 1 || self.faces[d] != lattice.top() {
            return Err(Error::InvalidInput(format!("flag {:?} does not end at P", self.faces)));
        }
        for (i, &f) in self.faces.iter().enumerate() {
            if lattice.face(f).dim != i as i32 {
                return Err(Error::InvalidInput(format!("flag face {f} has the wrong dimension")));
            }
            if i > 0 && !lattice.leq(self.faces[i - 1], f) {
                return Err(Error::InvalidInput(format!("flag {:?} is not a chain", self.faces)));
            }
        }
        Ok(())
    }
}

/// All complete flags, in lexicographic order of face indices.
pub fn enumerate_flags(p: &LatticePolytope) -> Vec<FaceFlag> {
    let lattice = p.face_lattice();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = lattice.of_dim(0).into_iter().rev().map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        if last == lattice.top() {
            out.push(FaceFlag { faces: chain });
            continue;
        }
        for next in lattice.covers(last).into_iter().rev() {
            let mut c = chain.clone();
            c.push(next);
            stack.push(c);
        }
    }
    out
}

/// d+1 lattice point indices, one from each stratum τ_i ∖ τ_{i-1}, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoherentSet {
    pub points: Vec<usize>,
}

pub fn enumerate_coherent_sets(p: &LatticePolytope, flag: &FaceFlag) -> Result<Vec<CoherentSet>> {
    flag.validate(p)?;
    let mut strata: Vec<Vec<usize>> = Vec::new();
    let mut previous: Vec<usize> = Vec::new();
    for &f in &flag.faces {
        let pts = p.points_on_face(f);
        let stratum: Vec<usize> = pts.iter().copied().filter(|x| !previous.contains(x)).collect();
        if stratum.is_empty() {
            return Err(Error::Internal(format!("empty stratum at face {f}")));
        }
        strata.push(stratum);
        previous = pts;
    }
    let mut sets = vec![Vec::new()];
    for stratum in &strata {
        sets = sets
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                stratum.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    Ok(sets
        .into_iter()
        .map(|mut points| {
            points.sort_unstable();
            CoherentSet { points }
        })
        .collect())
}
