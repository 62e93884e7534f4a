use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of ways to write `total` as an ordered sum of `parts` positive
/// integers: `C(total − 1, parts − 1)`, with one empty composition of 0.
pub fn compositions(total: usize, parts: usize) -> BigUint {
    match (total, parts) {
        (0, 0) => BigUint::one(),
        (0, _) | (_, 0) => BigUint::zero(),
        _ => binomial(total - 1, parts - 1),
    }
}
