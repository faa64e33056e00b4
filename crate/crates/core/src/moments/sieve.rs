//! Sieves for primes, smallest prime factors and squarefree integers.

/// Primes `p <= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `lo..=hi`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

/// `spf[n]` is the smallest prime factor of `n` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// `squarefree[n]` for `0 <= n <= limit`, from a smallest-prime-factor table.
pub fn squarefree_flags(spf: &[u32]) -> Vec<bool> {
    let mut out = vec![false; spf.len()];
    if out.len() > 1 {
        out[1] = true;
    }
    for n in 2..spf.len() {
        let p = spf[n] as usize;
        let m = n / p;
        out[n] = out[m] && (m % p != 0);
    }
    out
}
