//! Prime enumeration for the divisor experiments.

/// Primes `< bound`, sieve of Eratosthenes.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Odd primes `3 <= p < bound`.
pub fn odd_primes_below(bound: u64) -> Vec<u64> {
    primes_below(bound).into_iter().filter(|&p| p != 2).collect()
}

/// The first `count` odd primes `3, 5, 7, ...`. The sieve bound is doubled
/// until enough primes are found.
pub fn first_odd_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let mut bound = 64u64.max(count as u64 * 16);
    loop {
        let ps = odd_primes_below(bound);
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        bound *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieve() {
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(odd_primes_below(12), vec![3, 5, 7, 11]);
        assert!(primes_below(2).is_empty());
    }

    #[test]
    fn first_primes() {
        assert_eq!(first_odd_primes(5), vec![3, 5, 7, 11, 13]);
        let ps = first_odd_primes(1200);
        assert_eq!(ps.len(), 1200);
        // the 1201st prime overall is 9739
        assert_eq!(*ps.last().unwrap(), 9739);
        assert!(ps.iter().all(|&p| crate::arith::is_prime(p)));
    }
}
