//! Naming small finite groups given by a multiplication function.

/// Invariant factors `d1 | d2 | ...` of an abelian group of the given order,
/// or `None` if the group is not abelian. Element 0 must be the identity.
pub fn abelian_invariants(order: usize, mul: impl Fn(usize, usize) -> usize) -> Option<Vec<u64>> {
    for a in 0..order {
        for b in 0..a {
            if mul(a, b) != mul(b, a) {
                return None;
            }
        }
    }
    let power = |x: usize, k: u64| (0..k).fold(0usize, |acc, _| mul(acc, x));
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in primes_dividing(order as u64) {
        // |A[p^k]| = p^(sum_i min(k, e_i))
        let mut exps: Vec<u32> = Vec::new();
        let mut prev_log = 0u32;
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = (0..order).filter(|&x| power(x, pk) == 0).count() as u64;
            let log = ilog(count, p);
            let at_least_k = log - prev_log;
            if at_least_k == 0 {
                break;
            }
            // factors with exponent >= k
            while (exps.len() as u32) < at_least_k {
                exps.push(0);
            }
            for e in exps.iter_mut().take(at_least_k as usize) {
                *e = k;
            }
            prev_log = log;
            k += 1;
        }
        exps.sort_unstable();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for (p, exps) in &per_prime {
        let offset = width - exps.len();
        for (i, &e) in exps.iter().enumerate() {
            factors[offset + i] *= p.pow(e);
        }
    }
    Some(factors)
}

/// Short description: `1`, `Z/4`, `Z/2 x Z/2`, or `nonabelian of order 6`.
pub fn describe(order: usize, mul: impl Fn(usize, usize) -> usize) -> String {
    match abelian_invariants(order, mul) {
        Some(f) if f.is_empty() => "1".to_string(),
        Some(f) => f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x "),
        None => format!("nonabelian of order {order}"),
    }
}

pub fn describe_factors(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".to_string()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_products_of_cyclic_groups() {
        // Z/2 x Z/6 as pairs (a, b) encoded a*6 + b
        let mul = |x: usize, y: usize| ((x / 6 + y / 6) % 2) * 6 + (x % 6 + y % 6) % 6;
        assert_eq!(abelian_invariants(12, mul), Some(vec![2, 6]));
        let z4 = |x: usize, y: usize| (x + y) % 4;
        assert_eq!(describe(4, z4), "Z/4");
        assert_eq!(describe(1, |_, _| 0), "1");
        assert_eq!(describe(4, |x, y| x ^ y), "Z/2 x Z/2");
    }

    #[test]
    fn nonabelian_is_reported() {
        let s3 = crate::GroupTable::symmetric3();
        assert_eq!(describe(6, |a, b| s3.mul(a as u16, b as u16) as usize), "nonabelian of order 6");
    }
}
