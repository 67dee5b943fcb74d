use super::*;
use crate::ehrhart::{boundary_hstar, hstar};
use crate::field::{mat_mul, FiniteField, Gf2k, PrimeField, RationalField2, Specialization};

fn poly(v: Vec<Vec<i64>>) -> LatticePolytope {
    LatticePolytope::new("t", v).unwrap()
}

fn square_pm1() -> LatticePolytope {
    poly(vec![vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1]])
}

fn square01() -> LatticePolytope {
    poly(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
}

fn reduction<F: FiniteField>(p: &LatticePolytope, field: F, seed: u64) -> ArtinianReduction<'_, F> {
    let spec = Specialization::new(field, seed);
    ArtinianReduction::new(p, ParameterMatrix::specialized(&spec, p)).unwrap()
}

fn dims<F: Field>(r: &ArtinianReduction<'_, F>, kind: AlgebraKind, ks: std::ops::RangeInclusive<u32>) -> Vec<usize> {
    ks.map(|k| r.dim(kind, k)).collect()
}

#[test]
fn graded_bases() {
    let p = square_pm1();
    assert_eq!(graded_basis(&p, AlgebraKind::Ring, 1).len(), 9);
    let rel = graded_basis(&p, AlgebraKind::Relative, 1);
    assert_eq!(rel.len(), 1);
    assert_eq!(rel.monomials[0].point, LatticePoint(vec![0, 0]));
    assert_eq!(graded_basis(&p, AlgebraKind::Boundary, 1).len(), 8);
    assert!(graded_basis(&square01(), AlgebraKind::Relative, 1).is_empty());
}

#[test]
fn monomial_products() {
    let p = square_pm1();
    let m = |x: i64, y: i64, h: u32| p.monomial(LatticePoint(vec![x, y]), h).unwrap();
    let prod = multiply(&p, &m(1, 0, 1), &m(0, 1, 1), AlgebraKind::Ring).unwrap().unwrap();
    assert_eq!((prod.point.0.clone(), prod.height), (vec![1, 1], 2));
    assert_eq!(multiply(&p, &m(1, 0, 1), &m(-1, 0, 1), AlgebraKind::Boundary).unwrap(), None);
    assert!(multiply(&p, &m(1, 0, 1), &m(1, 1, 1), AlgebraKind::Boundary).unwrap().is_some());
    let prod = multiply(&p, &m(0, 0, 1), &m(1, 1, 1), AlgebraKind::Relative).unwrap().unwrap();
    assert_eq!(prod.point, LatticePoint(vec![1, 1]));
    assert!(prod.interior);
    assert!(multiply(&p, &m(1, 0, 1), &m(1, 1, 1), AlgebraKind::Relative).is_err());
}

#[test]
fn hilbert_functions_square_pm1() {
    let p = square_pm1();
    let r = reduction(&p, Gf2k::new(32).unwrap(), 3);
    assert_eq!(dims(&r, AlgebraKind::Ring, 0..=3), vec![1, 6, 1, 0]);
    assert_eq!(dims(&r, AlgebraKind::Relative, 0..=3), vec![0, 1, 6, 1]);
    assert_eq!(dims(&r, AlgebraKind::Boundary, 0..=3), vec![1, 6, 1, 0]);
    assert!(r.facet_rank_deficiencies().is_empty());
}

#[test]
fn hilbert_functions_match_hstar() {
    let cases = vec![
        square01(),
        poly(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]),
        poly(vec![vec![1, 0], vec![0, 1], vec![-1, -1]]),
        poly(vec![vec![0], vec![3]]),
    ];
    for p in &cases {
        let h = hstar(p).h_star;
        let d = p.dim() as u32;
        let r = reduction(p, PrimeField::mersenne61(), 11);
        for k in 0..=d + 1 {
            let hk = h.get(k as usize).copied().unwrap_or(0) as usize;
            assert_eq!(r.dim(AlgebraKind::Ring, k), hk);
        }
        for k in 1..=d + 1 {
            assert_eq!(r.dim(AlgebraKind::Relative, k), h[(d + 1 - k) as usize] as usize);
        }
        let b = boundary_hstar(p).h_star;
        for k in 0..=d {
            assert_eq!(r.dim(AlgebraKind::Boundary, k), b[k as usize] as usize);
        }
    }
}

#[test]
fn projection_is_identity_on_coset_basis() {
    let p = square_pm1();
    let r = reduction(&p, Gf2k::new(16).unwrap(), 5);
    let f = r.field().clone();
    let q = r.piece(AlgebraKind::Ring, 1);
    for (slot, &j) in q.coset_basis.iter().enumerate() {
        let col = q.projection.column(j);
        for (i, x) in col.iter().enumerate() {
            assert_eq!(*x, if i == slot { f.one() } else { f.zero() });
        }
    }
    let killed = mat_mul(&f, &q.projection, &q.relation_image).unwrap();
    for i in 0..killed.rows() {
        assert!(killed.row(i).iter().all(|x| f.is_zero(x)));
    }
}

#[test]
fn multiplication_maps() {
    let p = square_pm1();
    let field = Gf2k::new(32).unwrap();
    let spec = Specialization::new(field.clone(), 9);
    let r = ArtinianReduction::new(&p, ParameterMatrix::specialized(&spec, &p)).unwrap();
    let ell = linear_element(&p, &field, &spec.lefschetz(p.num_lattice_points()));

    let id = r.multiplication_map(AlgebraKind::Ring, AlgebraKind::Ring, 1, &ell, 0).unwrap();
    assert_eq!(id, Matrix::identity(&field, 6));

    let m = r.multiplication_map(AlgebraKind::Relative, AlgebraKind::Ring, 1, &ell, 1).unwrap();
    assert_eq!((m.rows(), m.cols()), (1, 1));
    assert_eq!(rank(&field, &m), 1);

    // x_p then ℓ equals ℓ then x_p
    let center = p.monomial(LatticePoint(vec![0, 0]), 1).unwrap();
    let xp_mod = Element::monomial(center.clone(), AlgebraKind::Relative, field.one());
    let xp_ring = Element::monomial(center, AlgebraKind::Ring, field.one());
    let a = r.multiplication_map(AlgebraKind::Ring, AlgebraKind::Relative, 0, &xp_mod, 1).unwrap();
    let b = r.multiplication_map(AlgebraKind::Relative, AlgebraKind::Ring, 1, &ell, 1).unwrap();
    let c = r.multiplication_map(AlgebraKind::Ring, AlgebraKind::Ring, 0, &ell, 1).unwrap();
    let e = r.multiplication_map(AlgebraKind::Ring, AlgebraKind::Ring, 1, &xp_ring, 1).unwrap();
    assert_eq!(mat_mul(&field, &b, &a).unwrap(), mat_mul(&field, &e, &c).unwrap());

    assert!(r
        .multiplication_map(AlgebraKind::Boundary, AlgebraKind::Ring, 0, &ell, 1)
        .is_err());
    assert!(r
        .multiplication_map(AlgebraKind::Ring, AlgebraKind::Relative, 0, &ell, 1)
        .is_err());
}

#[test]
fn reflexive_cone_shift_is_bijective() {
    let p = square_pm1();
    let field = Gf2k::new(32).unwrap();
    let r = reduction(&p, field.clone(), 1);
    let center = p.monomial(LatticePoint(vec![0, 0]), 1).unwrap();
    let xp = Element::monomial(center, AlgebraKind::Relative, field.one());
    for k in 0..=2 {
        let m = r.multiplication_map(AlgebraKind::Ring, AlgebraKind::Relative, k, &xp, 1).unwrap();
        assert_eq!(m.rows(), m.cols());
        assert_eq!(rank(&field, &m), m.rows());
    }
}

#[test]
fn symbolic_reduction_of_a_segment() {
    let p = poly(vec![vec![0], vec![2]]);
    let r = ArtinianReduction::new(&p, ParameterMatrix::symbolic(&p)).unwrap();
    assert_eq!(dims(&r, AlgebraKind::Ring, 0..=2), vec![1, 1, 0]);
    assert_eq!(dims(&r, AlgebraKind::Relative, 1..=2), vec![1, 1]);
    assert_eq!(r.field(), &RationalField2);
}

#[test]
fn shape_is_checked() {
    let p = square01();
    let spec = Specialization::new(Gf2k::new(8).unwrap(), 1);
    let wrong = ParameterMatrix::new(spec.field().clone(), spec.theta_matrix(2, 4), "x");
    assert!(matches!(ArtinianReduction::new(&p, wrong), Err(Error::Shape(_))));
}
