use hstar_core::algebra::{AlgebraKind, ArtinianReduction, ParameterMatrix};
use hstar_core::corpus::all_builtins;
use hstar_core::ehrhart::hstar;
use hstar_core::field::{Gf2k, PrimeField, Specialization};
use hstar_core::lattice::LatticePolytope;
use proptest::prelude::*;

fn dims_match<F: hstar_core::field::FiniteField>(p: &LatticePolytope, field: F, seed: u64) {
    let d = p.dim();
    let mut h = hstar(p).h_star;
    h.resize(d + 2, 0);
    let spec = Specialization::new(field, seed);
    let red = ArtinianReduction::new(p, ParameterMatrix::specialized(&spec, p)).unwrap();
    for k in 0..=d + 1 {
        assert_eq!(red.dim(AlgebraKind::Ring, k as u32) as i64, h[k], "{} ring {k}", p.name());
        assert_eq!(red.dim(AlgebraKind::Relative, k as u32) as i64, h[d + 1 - k], "{} relative {k}", p.name());
    }
}

#[test]
fn corpus_dims_equal_h_star() {
    let gf = Gf2k::new(32).unwrap();
    for p in all_builtins() {
        for seed in 1..=3 {
            dims_match(&p, gf.clone(), seed);
        }
    }
}

#[test]
fn corpus_dims_in_odd_characteristic() {
    for p in all_builtins().into_iter().filter(|p| p.dim() <= 2) {
        dims_match(&p, PrimeField::mersenne61(), 11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_simplex_dims(
        v in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3),
        seed in 0u64..1000,
    ) {
        let p = LatticePolytope::new("t", v);
        prop_assume!(p.as_ref().is_ok_and(|p| p.dim() == 2));
        dims_match(&p.unwrap(), Gf2k::new(32).unwrap(), seed);
    }
}
