//! Reference computations shared by the test targets.

/// Smallest prime factor of every `m ≤ n`.
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

fn distinct_primes(mut m: usize, spf: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    while m > 1 {
        let p = spf[m] as usize;
        out.push(p);
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    out
}

/// Whether `n = c · m` with `c` square-free and `m` divisible by at most
/// two primes, by walking the square-free divisors `c` of `n`.
pub fn has_factorization(n: usize, spf: &[u32]) -> bool {
    let primes = distinct_primes(n, spf);
    (0u32..1 << primes.len()).any(|mask| {
        let c: usize = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p).product();
        distinct_primes(n / c, spf).len() <= 2
    })
}

