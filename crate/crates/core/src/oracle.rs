//! Brute-force combinatorial oracles for the classical (λ = 0) numbers.
//!
//! Nothing here touches the series engine: set partitions are enumerated as
//! restricted growth strings, and signed Stirling numbers of the first kind
//! come from multiplying out x(x-1)...(x-n+1) with machine integers.

/// Largest n the oracles accept.
pub const ORACLE_MAX_N: usize = 12;

/// `counts[k]` = number of partitions of an n-set into exactly k blocks.
pub fn partition_counts(n: usize) -> Vec<u64> {
    assert!(n <= ORACLE_MAX_N, "partition oracle limited to n <= {ORACLE_MAX_N}");
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts[0] = 1;
        return counts;
    }
    // rgs[i] = block of element i; rgs[0] = 0 and rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        counts[maxes[n - 1] + 1] += 1;
        // advance to the next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return counts;
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..n {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Number of partitions of an n-set into exactly k nonempty blocks.
pub fn partition_oracle(n: usize, k: usize) -> u64 {
    partition_counts(n).get(k).copied().unwrap_or(0)
}

/// The Bell number B_n, by enumerating every set partition of an n-set.
pub fn bell_number_classical(n: usize) -> u64 {
    partition_counts(n).iter().sum()
}

/// Coefficients of x(x-1)...(x-n+1), ascending in x.
pub fn falling_product_coeffs(n: usize) -> Vec<i64> {
    assert!(n <= ORACLE_MAX_N, "cycle oracle limited to n <= {ORACLE_MAX_N}");
    let mut p = vec![1i64];
    for j in 0..n as i64 {
        // multiply by (x - j)
        let mut next = vec![0i64; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= j * c;
        }
        p = next;
    }
    p
}

/// Signed Stirling number of the first kind: coefficient of x^k in (x)_n.
pub fn signed_cycle_oracle(n: usize, k: usize) -> i64 {
    falling_product_coeffs(n).get(k).copied().unwrap_or(0)
}
