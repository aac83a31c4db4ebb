//! Fibonacci numbers indexed with `f(0) = f(1) = 1`.

/// `f(n)`, or `None` once it no longer fits in a `u128`.
pub fn fib(n: usize) -> Option<u128> {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 0..n {
        let next = a.checked_add(b)?;
        a = b;
        b = next;
    }
    Some(a)
}

/// Smallest `n` with `f(n) == m`.
pub fn fib_index(m: u128) -> Option<usize> {
    let (mut a, mut b, mut n) = (1u128, 1u128, 0);
    while a < m {
        let next = a.checked_add(b)?;
        a = b;
        b = next;
        n += 1;
    }
    (a == m).then_some(n)
}

/// Smallest `n` with `f(n) > m`.
pub fn first_index_above(m: u128) -> usize {
    let (mut a, mut b, mut n) = (1u128, 1u128, 0);
    while a <= m {
        let next = a.saturating_add(b);
        a = b;
        b = next;
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_starts_with_two_ones() {
        let first: Vec<u128> = (0..8).map(|n| fib(n).unwrap()).collect();
        assert_eq!(first, [1, 1, 2, 3, 5, 8, 13, 21]);
        assert_eq!(fib(31), Some(2_178_309));
        assert!(fib(185).is_none());
    }

    #[test]
    fn index_lookup() {
        assert_eq!(fib_index(1), Some(0));
        assert_eq!(fib_index(2), Some(2));
        assert_eq!(fib_index(13), Some(6));
        assert_eq!(fib_index(21), Some(7));
        assert_eq!(fib_index(4), None);
        assert_eq!(fib_index(0), None);
        assert_eq!(first_index_above(0), 0);
        assert_eq!(first_index_above(1), 2);
        assert_eq!(first_index_above(8), 6);
        assert_eq!(first_index_above(12), 6);
    }
}
