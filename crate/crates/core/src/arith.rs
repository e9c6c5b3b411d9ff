//! Small integer arithmetic over group orders.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Ascending list of primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    prime_factors(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// Largest divisor of `n` whose prime divisors all lie in `pi`.
pub fn pi_part(n: u64, pi: &[u64]) -> u64 {
    pi.iter().map(|&p| p_part(n, p)).product()
}

/// True when every prime divisor of `n` lies in `pi`.
pub fn is_pi_number(n: u64, pi: &[u64]) -> bool {
    pi_part(n, pi) == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_divisors(12), vec![2, 3]);
    }

    #[test]
    fn parts() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 5), 1);
        assert_eq!(pi_part(60, &[2, 5]), 20);
        assert!(is_pi_number(12, &[2, 3]));
        assert!(!is_pi_number(12, &[2]));
    }
}
