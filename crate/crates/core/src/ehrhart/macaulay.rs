//! Macaulay's O-sequence criterion and the Eisenbud–Harris inequality.

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// The i-th Macaulay representation a = C(a_i, i) + C(a_{i-1}, i-1) + …
/// as the list of pairs (a_j, j), with a_i > a_{i-1} > … ≥ j ≥ 1.
pub fn macaulay_representation(mut a: u64, i: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut j = i;
    while a > 0 && j > 0 {
        let mut n = j;
        while binom(n + 1, j) <= a {
            n += 1;
        }
        a -= binom(n, j);
        out.push((n, j));
        j -= 1;
    }
    out
}

/// a^{<i>}: the largest possible value in degree i+1 after a in degree i.
pub fn macaulay_bound(a: u64, i: u64) -> u64 {
    macaulay_representation(a, i)
        .into_iter()
        .map(|(n, j)| binom(n + 1, j + 1))
        .fold(0u64, u64::saturating_add)
}

/// True iff `v` is an O-sequence (M-vector): v_0 = 1 and
/// v_{i+1} ≤ v_i^{<i>} for i ≥ 1. The zero vector counts as valid.
pub fn macaulay_check(v: &[i64]) -> bool {
    if v.iter().any(|&x| x < 0) {
        return false;
    }
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if v[0] != 1 {
        return false;
    }
    (1..v.len().saturating_sub(1)).all(|i| v[i + 1] as u64 <= macaulay_bound(v[i] as u64, i as u64))
}

/// Index of the last nonzero entry.
pub fn degree_of(h: &[i64]) -> usize {
    h.iter().rposition(|&x| x != 0).unwrap_or(0)
}

/// h_0 + … + h_k ≤ h_s + … + h_{s-k} for all k ≤ s, s the degree of h.
/// Returns the first failing k.
pub fn eisenbud_harris_violation(h: &[i64]) -> Option<usize> {
    let s = degree_of(h);
    let mut low = 0;
    let mut high = 0;
    for k in 0..=s {
        low += h[k];
        high += h[s - k];
        if low > high {
            return Some(k);
        }
    }
    None
}

pub fn eisenbud_harris_check(h: &[i64]) -> bool {
    eisenbud_harris_violation(h).is_none()
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal(v: &[i64]) -> bool {
    let mut i = 1;
    while i < v.len() && v[i] >= v[i - 1] {
        i += 1;
    }
    while i < v.len() && v[i] <= v[i - 1] {
        i += 1;
    }
    i >= v.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    
    fn monomials(n: usize, deg: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return if deg == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for e in (0..=deg).rev() {
            for mut rest in monomials(n - 1, deg - e) {
                rest.insert(0, e);
                out.push(rest);
            }
        }
        out
    }

    /// Max over all sets S of `a` degree-i monomials in `n` variables of the
    /// number of degree-(i+1) monomials whose degree-i divisors all lie in S.
    fn max_next_degree(n: usize, i: usize, a: usize) -> usize {
        let low = monomials(n, i);
        let high = monomials(n, i + 1);
        let divisor_masks: Vec<u32> = high
            .iter()
            .map(|m| {
                let mut mask = 0u32;
                for x in 0..n {
                    if m[x] > 0 {
                        let mut q = m.clone();
                        q[x] -= 1;
                        mask |= 1 << low.iter().position(|l| *l == q).unwrap();
                    }
                }
                mask
            })
            .collect();
        (0u32..1 << low.len())
            .filter(|s| s.count_ones() as usize == a)
            .map(|s| divisor_masks.iter().filter(|&&m| m & s == m).count())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn representation_examples() {
        // 5 = C(4,2) - 1 = C(3,2) + C(2,1)
        assert_eq!(macaulay_representation(5, 2), vec![(3, 2), (2, 1)]);
        assert_eq!(macaulay_bound(2, 1), 3);
        assert_eq!(macaulay_bound(5, 1), 15);
        assert_eq!(macaulay_bound(0, 3), 0);
    }

    #[test]
    fn bound_matches_lex_shadow() {
        for n in 1..=4usize {
            for i in 1..=3usize {
                let total = binom((n + i - 1) as u64, i as u64) as usize;
                if total > 16 {
                    continue;
                }
                for a in 0..=total {
                    assert_eq!(
                        macaulay_bound(a as u64, i as u64) as usize,
                        max_next_degree(n, i, a),
                        "n={n} i={i} a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn o_sequences() {
        assert!(macaulay_check(&[1, 5, 4]));
        assert!(!macaulay_check(&[1, 2, 5]));
        assert!(macaulay_check(&[1, 0, 0]));
        assert!(!macaulay_check(&[1, 0, 1]));
        assert!(!macaulay_check(&[2, 1]));
        assert!(macaulay_check(&[1, 3, 6, 10]));
        assert!(!macaulay_check(&[1, 3, 6, 11]));
    }

    #[test]
    fn eisenbud_harris_examples() {
        assert!(eisenbud_harris_check(&[1, 6, 1]));
        assert!(eisenbud_harris_check(&[1, 0, 3, 0]));
        assert!(eisenbud_harris_check(&[1, 0, 0]));
        assert_eq!(eisenbud_harris_violation(&[1, 3, 1, 1]), Some(1));
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 23, 23, 1]));
        assert!(!is_unimodal(&[1, 0, 3, 0]));
        assert!(is_unimodal(&[]));
        assert!(is_unimodal(&[1, 4, 1, 0]));
    }
}
