use super::*;
use crate::algebra::ParameterMatrix;
use crate::field::{Gf2k, RationalField2, RationalFn2, SparsePoly2, Specialization, Var};

fn poly(v: Vec<Vec<i64>>) -> LatticePolytope {
    LatticePolytope::new("t", v).unwrap()
}

fn segment(n: i64) -> LatticePolytope {
    poly(vec![vec![0], vec![n]])
}

fn square_pm1() -> LatticePolytope {
    poly(vec![vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]])
}

fn triangle() -> LatticePolytope {
    poly(vec![vec![0, 0], vec![1, 0], vec![0, 1]])
}

fn specialized(p: &LatticePolytope, seed: u64) -> ArtinianReduction<'_, Gf2k> {
    let spec = Specialization::new(Gf2k::new(32).unwrap(), seed);
    ArtinianReduction::new(p, ParameterMatrix::specialized(&spec, p)).unwrap()
}

fn exact(p: &LatticePolytope) -> ArtinianReduction<'_, RationalField2> {
    ArtinianReduction::new(p, ParameterMatrix::symbolic(p)).unwrap()
}

#[test]
fn flag_counts() {
    assert_eq!(enumerate_flags(&triangle()).len(), 6);
    assert_eq!(enumerate_flags(&square_pm1()).len(), 8);
    assert_eq!(enumerate_flags(&segment(2)).len(), 2);
    let cube = poly((0..8u32).map(|m| (0..3).map(|i| (m >> i & 1) as i64).collect()).collect());
    let flags = enumerate_flags(&cube);
    assert_eq!(flags.len(), 48);
    for f in &flags {
        f.validate(&cube).unwrap();
    }
    assert!(FaceFlag { faces: vec![0] }.validate(&cube).is_err());
}

#[test]
fn coherent_set_counts() {
    let tri = triangle();
    let sets = enumerate_coherent_sets(&tri, &enumerate_flags(&tri)[0]).unwrap();
    assert_eq!(sets, vec![CoherentSet { points: vec![0, 1, 2] }]);
    let sq = square_pm1();
    assert_eq!(enumerate_coherent_sets(&sq, &enumerate_flags(&sq)[0]).unwrap().len(), 12);
    let seg = segment(2);
    assert_eq!(enumerate_coherent_sets(&seg, &enumerate_flags(&seg)[0]).unwrap().len(), 2);
}

#[test]
fn simplex_degree_is_inverse_determinant() {
    for p in [triangle(), segment(1)] {
        let red = specialized(&p, 4);
        let field = red.field().clone();
        let all: Vec<usize> = (0..p.num_lattice_points()).collect();
        let det = red.theta().minor(&all);
        for flag in enumerate_flags(&p) {
            let deg = degree_functional(&red, &flag).unwrap();
            assert_eq!(deg.of_product(&field, &p, &all), field.inv(&det).unwrap());
        }
    }
}

#[test]
fn segment02_exact_values_match_cross_product_oracle() {
    let p = segment(2);
    let red = exact(&p);
    let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
    // relations a0 x1 + a1 x2 + a2 x3 = b0 x1 + b1 x2 + b2 x3 = 0 on heights-2
    // interior points 1, 2, 3; deg ∝ (a1b2+a2b1, a0b2+a2b0, a0b1+a1b0).
    let t = |i: usize, j: usize| SparsePoly2::var(Var::new(i, j));
    let minor = |x: usize, y: usize| t(0, x).mul(&t(1, y)).add(&t(0, y).mul(&t(1, x)));
    let v = [minor(1, 2), minor(0, 2), minor(0, 1)];
    let norm = v[0].mul(&v[2]).add(&v[1].square());
    for (j, vj) in v.iter().enumerate() {
        let expected = RationalFn2::new(vj.clone(), norm.clone());
        assert_eq!(deg.values[j], expected, "deg(x_{})", j + 1);
    }
    let report = flag_independence_check(&red, &enumerate_flags(&p)).unwrap();
    assert!(report.agree);
}

#[test]
fn degree_vanishes_on_relations() {
    let p = square_pm1();
    let red = specialized(&p, 2);
    let field = red.field().clone();
    let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
    let top = red.piece(AlgebraKind::Relative, 3);
    for c in 0..top.relation_image.cols() {
        let col = top.relation_image.column(c);
        let s = col
            .iter()
            .zip(&deg.values)
            .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)));
        assert!(field.is_zero(&s));
    }
}

#[test]
fn flag_independence_square_pm1() {
    let p = square_pm1();
    for seed in [1, 2] {
        let red = specialized(&p, seed);
        let report = flag_independence_check(&red, &enumerate_flags(&p)).unwrap();
        assert!(report.agree, "seed {seed}: {report:?}");
        assert_eq!(report.flags.len(), 8);
    }
    let red = specialized(&p, 1);
    assert!(flag_independence_check(&red, &enumerate_flags(&p)[..1]).is_err());
}

#[test]
fn top_piece_must_be_one_dimensional() {
    // a square with a deliberately singular Θ: all columns equal
    let p = square_pm1();
    let field = Gf2k::new(8).unwrap();
    let m = crate::field::Matrix::filled(3, 9, field.one());
    let red = ArtinianReduction::new(&p, ParameterMatrix::new(field, m, "constant")).unwrap();
    assert!(matches!(
        degree_functional(&red, &enumerate_flags(&p)[0]),
        Err(Error::TopPieceNotOneDimensional(_))
    ));
}

#[test]
fn linear_and_balancing_identities() {
    let p = square_pm1();
    let red = specialized(&p, 6);
    let theta = red.theta().clone();
    let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
    let origin = p.point_index(&LatticePoint(vec![0, 0])).unwrap();
    for s in 0..=2 {
        for q in 0..9 {
            assert!(linear_identity_check(&p, &theta, &deg, s, &[origin, q]).unwrap().holds);
        }
        let zeroed = theta.with_row_zeroed(s);
        let out = linear_identity_check(&p, &zeroed, &deg, s, &[origin, 0]).unwrap();
        assert!(out.holds && red.field().is_zero(&out.lhs));
    }
    assert!(linear_identity_check(&p, &theta, &deg, 0, &[0, 1]).is_err());
    for j in [[0, 1], [2, 7], [4, 4]] {
        for q in 0..9 {
            assert!(balancing_identity_check(&p, &theta, &deg, &[origin, q], &j).unwrap().holds);
        }
    }
    assert!(balancing_identity_check(&p, &theta, &deg, &[0, 1], &[0, 1]).is_err());
}

#[test]
fn segment_identities_exact() {
    for n in 1..=3 {
        let p = segment(n);
        let red = exact(&p);
        let theta = red.theta().clone();
        let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
        let np = p.num_lattice_points();
        for a in 0..np {
            for b in a..np {
                let interior = p.is_interior(point_sum(&p, &[a, b]).coords(), 2);
                let out = parseval_check(&p, &theta, &deg, &[a, b]);
                assert_eq!(out.is_ok(), interior);
                if let Ok(out) = out {
                    assert!(out.holds, "segment {n}, alpha ({a},{b})");
                }
            }
        }
        for u in p.lattice_points().iter().filter(|m| m.interior) {
            let out = parseval_revealed_check(&p, &theta, &deg, &[(u.point.clone(), RationalFn2::one())]).unwrap();
            assert!(out.holds);
            for f in 0..np {
                let out = differential_identity_check(&p, &deg, std::slice::from_ref(&u.point), &[f]).unwrap();
                assert!(out.holds, "segment {n}, u {:?}, f {f}", u.point);
            }
        }
    }
}

#[test]
fn zero_element_identities() {
    let p = segment(2);
    let red = exact(&p);
    let theta = red.theta().clone();
    let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
    let out = parseval_revealed_check(&p, &theta, &deg, &[]).unwrap();
    assert!(out.holds && out.lhs.is_zero());
    let out = differential_identity_check(&p, &deg, &[], &[1]).unwrap();
    assert!(out.holds && out.rhs.is_zero());
}

#[test]
fn parseval_square_pm1_specialized() {
    let p = square_pm1();
    let red = specialized(&p, 10);
    let theta = red.theta().clone();
    let deg = degree_functional(&red, &enumerate_flags(&p)[0]).unwrap();
    let origin = p.point_index(&LatticePoint(vec![0, 0])).unwrap();
    for alpha in [[origin, origin, origin], [0, origin, 8], [1, 3, 5]] {
        let out = parseval_check(&p, &theta, &deg, &alpha).unwrap();
        assert!(out.holds, "{alpha:?}");
    }
}
