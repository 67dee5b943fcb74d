use super::{Field, FiniteField};
use crate::error::{Error, Result};

/// GF(2^k) for 1 <= k <= 64, elements stored as bit vectors in a `u64`.
///
/// The modulus is the smallest irreducible polynomial of degree k when
/// polynomials are read as binary integers (k = 8 gives the AES polynomial
/// x^8 + x^4 + x^3 + x + 1). It is found by an irreducibility search at
/// construction, so the choice is fixed and reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2k {
    degree: u32,
    /// Full modulus including the x^k term.
    modulus: u128,
    /// Modulus with the leading term removed.
    tail: u64,
    mask: u64,
    hw_clmul: bool,
}

impl Gf2k {
    pub fn new(degree: u32) -> Result<Self> {
        if !(1..=64).contains(&degree) {
            return Err(Error::UnsupportedField(format!(
                "GF(2^{degree}): degree must lie in 1..=64"
            )));
        }
        let modulus = smallest_irreducible(degree);
        let tail = (modulus ^ (1u128 << degree)) as u64;
        let mask = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
        Ok(Self {
            degree,
            modulus,
            tail,
            mask,
            hw_clmul: hw_clmul_available(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The modulus as a binary integer with bit k set.
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    #[inline]
    fn clmul(&self, a: u64, b: u64) -> u128 {
        #[cfg(target_arch = "x86_64")]
        {
            if self.hw_clmul {
                // SAFETY: guarded by the runtime feature check in `hw_clmul_available`.
                return unsafe { clmul_hw(a, b) };
            }
        }
        clmul_sw(a, b)
    }

    #[inline]
    fn reduce(&self, mut x: u128) -> u64 {
        let k = self.degree;
        while x >> k != 0 {
            let hi = (x >> k) as u64;
            let lo = x & (self.mask as u128);
            x = lo ^ self.clmul(hi, self.tail);
        }
        x as u64
    }
}

impl Field for Gf2k {
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
        a ^ b
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        *a
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        self.reduce(self.clmul(*a, *b))
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(2^k - 2)
        let e = if self.degree == 64 {
            u64::MAX - 1
        } else {
            (1u64 << self.degree) - 2
        };
        Some(self.pow(a, e))
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn order_log2(&self) -> Option<f64> {
        Some(self.degree as f64)
    }
    fn describe(&self) -> String {
        format!("GF(2^{})", self.degree)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n & 1) as u64
    }
    fn eq(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn render(&self, a: &u64) -> String {
        format!("{a:#x}")
    }
}

impl FiniteField for Gf2k {
    fn from_bits(&self, bits: u64) -> u64 {
        bits & self.mask
    }
}

fn hw_clmul_available() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::arch::is_x86_feature_detected!("pclmulqdq")
            && std::arch::is_x86_feature_detected!("sse2")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(va, vb, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    ((hi as u128) << 64) | lo as u128
}

/// Carry-less 64x64 -> 128 multiply, four bits of `b` at a time.
pub(crate) fn clmul_sw(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    for j in 1..16usize {
        table[j] = if j & 1 == 1 {
            table[j - 1] ^ a
        } else {
            table[j >> 1] << 1
        };
    }
    let mut acc = 0u128;
    for shift in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * shift)) & 0xf) as usize];
    }
    acc
}

fn poly_degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u128, m: u128) -> u128 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn poly_mulmod(a: u128, b: u128, m: u128) -> u128 {
    // a, b have degree < 64 here, so the product fits.
    poly_mod(clmul_sw(a as u64, b as u64), m)
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// x^(2^j) mod m.
fn frobenius_power(j: u32, m: u128) -> u128 {
    let mut x = poly_mod(2, m);
    for _ in 0..j {
        x = poly_mulmod(x, x, m);
    }
    x
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test.
pub(crate) fn is_irreducible(m: u128) -> bool {
    let k = poly_degree(m);
    if k < 1 {
        return false;
    }
    let k = k as u32;
    if frobenius_power(k, m) != poly_mod(2, m) {
        return false;
    }
    prime_divisors(k).into_iter().all(|q| {
        let h = frobenius_power(k / q, m) ^ poly_mod(2, m);
        poly_gcd(m, h) == 1
    })
}

fn smallest_irreducible(k: u32) -> u128 {
    let lead = 1u128 << k;
    // constant term must be 1 for k > 1; x itself is the answer for k = 1
    if k == 1 {
        return 0b10;
    }
    let mut tail = 1u128;
    loop {
        let cand = lead | tail;
        if is_irreducible(cand) {
            return cand;
        }
        tail += 2;
    }
}
