//! Small-integer prime arithmetic.

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `n = p^k` for some `k ≥ 0`.
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest divisor of `n` whose prime factors satisfy `keep`.
pub fn part(n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(p, _)| keep(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(168), vec![(2, 3), (3, 1), (7, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert!(is_prime(97) && !is_prime(1) && !is_prime(91));
        assert!(is_power_of(1, 3) && is_power_of(27, 3) && !is_power_of(12, 2));
        assert_eq!(part(168, |p| p == 2 || p == 3), 24);
    }
}
