use super::{Field, FiniteField};
use crate::error::{Error, Result};

/// Z/p for a prime p < 2^61.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 61 {
            return Err(Error::UnsupportedField(format!("Z/{p}: modulus must be below 2^61")));
        }
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("Z/{p}: modulus is not prime")));
        }
        Ok(Self { p })
    }

    /// The Mersenne prime 2^61 - 1.
    pub fn mersenne61() -> Self {
        Self { p: (1 << 61) - 1 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(powmod(*a, self.p - 2, self.p))
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order_log2(&self) -> Option<f64> {
        Some((self.p as f64).log2())
    }
    fn describe(&self) -> String {
        format!("Z/{}", self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn eq(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl FiniteField for PrimeField {
    fn from_bits(&self, bits: u64) -> u64 {
        bits % self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2k;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_composites_and_large() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(561).is_err());
        assert!(PrimeField::new((1 << 61) + 1).is_err());
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn small_primes_match_trial_division() {
        for n in 0..2000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
    }

    #[test]
    fn p2_matches_gf2() {
        let p = PrimeField::new(2).unwrap();
        let g = Gf2k::new(1).unwrap();
        for a in 0..2u64 {
            for b in 0..2u64 {
                assert_eq!(p.add(&a, &b), g.add(&a, &b));
                assert_eq!(p.mul(&a, &b), g.mul(&a, &b));
                assert_eq!(p.neg(&a), g.neg(&a));
            }
            assert_eq!(p.inv(&a), g.inv(&a));
        }
    }

    #[test]
    fn fermat_little_theorem_p101() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let x = rng.gen_range(1..101);
            assert_eq!(f.pow(&x, 100), 1);
        }
    }
}
