use hstar_core::field::{Field, FiniteField, Gf2k, PrimeField};
use proptest::prelude::*;

/// Shift-and-add multiplication modulo the field polynomial.
fn slow_mul(a: u64, b: u64, k: u32, modulus: u128) -> u64 {
    let mut acc: u128 = 0;
    let mut a = a as u128;
    for i in 0..k {
        if b >> i & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= modulus;
        }
    }
    acc as u64
}

#[test]
fn aes_modulus() {
    assert_eq!(Gf2k::new(8).unwrap().modulus(), 0x11b);
    assert!(Gf2k::new(0).is_err() && Gf2k::new(65).is_err());
}

#[test]
fn gf256_inverse_table() {
    let f = Gf2k::new(8).unwrap();
    for a in 1..256u64 {
        let inv = f.inv(&a).unwrap();
        assert_eq!(slow_mul(a, inv, 8, 0x11b), 1);
    }
    assert_eq!(f.inv(&0), None);
}

proptest! {
    #[test]
    fn gf2k_matches_shift_and_add(k in prop::sample::select(vec![8u32, 13, 32, 61, 64]), a: u64, b: u64) {
        let f = Gf2k::new(k).unwrap();
        let (a, b) = (f.from_bits(a), f.from_bits(b));
        prop_assert_eq!(f.mul(&a, &b), slow_mul(a, b, k, f.modulus()));
        prop_assert_eq!(f.add(&a, &b), a ^ b);
    }

    #[test]
    fn gf2k_frobenius_and_inverse(a: u64) {
        let f = Gf2k::new(32).unwrap();
        let a = f.from_bits(a);
        prop_assert_eq!(f.pow(&a, 1 << 32), a);
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn prime_field_matches_u128(a: u64, b: u64, c: u64) {
        let f = PrimeField::mersenne61();
        let p = f.modulus();
        let (a, b, c) = (f.from_bits(a), f.from_bits(b), f.from_bits(c));
        prop_assert!(a < p && b < p);
        prop_assert_eq!(f.mul(&a, &b), ((a as u128 * b as u128) % p as u128) as u64);
        prop_assert_eq!(f.add(&a, &b), ((a as u128 + b as u128) % p as u128) as u64);
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if a != 0 {
            prop_assert_eq!(f.pow(&a, p - 1), 1);
        }
    }

    #[test]
    fn small_prime_fields(p in prop::sample::select(vec![2u64, 3, 5, 7, 65537]), n in -1000i64..1000) {
        let f = PrimeField::new(p).unwrap();
        prop_assert_eq!(f.from_i64(n), n.rem_euclid(p as i64) as u64);
    }
}
