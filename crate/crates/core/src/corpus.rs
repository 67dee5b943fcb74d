//! Built-in polytopes available by name.

use crate::error::Result;
use crate::lattice::LatticePolytope;

pub const BUILTIN_NAMES: [&str; 18] = [
    "simplex1",
    "simplex2",
    "simplex3",
    "square01",
    "cube01",
    "segment_pm1",
    "square_pm1",
    "cube3pm1",
    "cross2",
    "cross3",
    "reflexive_triangle",
    "reflexive_simplex3",
    "reeve2",
    "reeve3",
    "reeve4",
    "segment01",
    "segment02",
    "segment03",
];

fn unit_simplex(d: usize) -> Vec<Vec<i64>> {
    let mut v = vec![vec![0; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        v.push(e);
    }
    v
}

fn cube(d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..1u32 << d)
        .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { hi } else { lo }).collect())
        .collect()
}

fn cross(d: usize) -> Vec<Vec<i64>> {
    let mut v = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut e = vec![0; d];
            e[i] = s;
            v.push(e);
        }
    }
    v
}

fn reeve(q: i64) -> Vec<Vec<i64>> {
    vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, q]]
}

/// Vertex list of a built-in polytope.
pub fn builtin_vertices(name: &str) -> Option<Vec<Vec<i64>>> {
    let v = match name {
        "simplex1" => unit_simplex(1),
        "simplex2" => unit_simplex(2),
        "simplex3" => unit_simplex(3),
        "square01" => cube(2, 0, 1),
        "cube01" => cube(3, 0, 1),
        "segment_pm1" => cube(1, -1, 1),
        "square_pm1" => cube(2, -1, 1),
        "cube3pm1" => cube(3, -1, 1),
        "cross2" => cross(2),
        "cross3" => cross(3),
        "reflexive_triangle" => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        "reflexive_simplex3" => vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
        "reeve2" => reeve(2),
        "reeve3" => reeve(3),
        "reeve4" => reeve(4),
        "segment01" => vec![vec![0], vec![1]],
        "segment02" => vec![vec![0], vec![2]],
        "segment03" => vec![vec![0], vec![3]],
        _ => return None,
    };
    Some(v)
}

pub fn builtin(name: &str) -> Option<Result<LatticePolytope>> {
    builtin_vertices(name).map(|v| LatticePolytope::new(name, v))
}

/// Every built-in, in [`BUILTIN_NAMES`] order.
pub fn all_builtins() -> Vec<LatticePolytope> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("listed").expect("valid built-in"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_is_valid_and_full_dimensional() {
        for p in all_builtins() {
            assert_eq!(p.dim(), p.ambient_dim(), "{}", p.name());
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn reeve_has_no_extra_points() {
        for q in ["reeve2", "reeve3", "reeve4"] {
            assert_eq!(builtin(q).unwrap().unwrap().num_lattice_points(), 4);
        }
    }
}
