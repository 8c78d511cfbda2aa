/// Distance chromatic number of the path on `n` vertices: `min(n, gamma + 1)`.
pub fn chi_gamma_path(n: usize, gamma: usize) -> usize {
    n.min(gamma + 1)
}

/// Distance chromatic number of the cycle on `n >= 3` vertices.
///
/// When `gamma + 1` divides `n` the answer is `gamma + 1`. Otherwise it is
/// the least `i + 1` with `i >= gamma + 1` and `n mod i <= n / i`.
///
/// The comparison is done as `n % i <= n / i` in integer arithmetic. Since
/// `n % i` is an integer, `n % i <= n/i` over the rationals holds exactly
/// when it holds against the floor `n / i`: an integer is at most a real `x`
/// iff it is at most `floor(x)`.
///
/// For `n <= gamma + 1` the cycle's power is complete and `n` is returned
/// directly; for `n <= gamma` no `i >= gamma + 1` would qualify. Otherwise
/// `i = n - 1` always qualifies (remainder 1, quotient 1), which bounds the
/// search.
pub fn chi_gamma_cycle(n: usize, gamma: usize) -> usize {
    assert!(n >= 3, "cycles need at least three vertices");
    assert!(gamma >= 1, "gamma must be positive");
    if n <= gamma + 1 {
        return n;
    }
    if n % (gamma + 1) == 0 {
        return gamma + 1;
    }
    (gamma + 1..n)
        .find(|&i| n % i <= n / i)
        .map(|i| i + 1)
        .expect("i = n - 1 satisfies the condition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_values() {
        assert_eq!(chi_gamma_path(10, 2), 3);
        assert_eq!(chi_gamma_path(2, 5), 2);
        assert_eq!(chi_gamma_path(7, 6), 7);
    }

    #[test]
    fn cycle_values() {
        assert_eq!(chi_gamma_cycle(9, 2), 3);
        assert_eq!(chi_gamma_cycle(7, 2), 4);
        assert_eq!(chi_gamma_cycle(5, 2), 5);
        assert_eq!(chi_gamma_cycle(4, 5), 4);
        assert_eq!(chi_gamma_cycle(14, 5), 7);
    }
}
