use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::composition::Modulus;
use crate::error::{Error, Result};

/// Fibonacci numbers with `f(1) = f(2) = 1` (`f(0) = 0`).
pub fn fibonacci(k: u64) -> BigUint {
    linear2(k, 1u32, 1u32)
}

/// Pell numbers `P(1) = 1, P(2) = 2, P(k) = 2P(k-1) + P(k-2)` (`P(0) = 0`).
pub fn pell(k: u64) -> BigUint {
    linear2(k, 2u32, 1u32)
}

/// `x_0 = 0, x_1 = 1, x_k = a x_{k-1} + b x_{k-2}`.
fn linear2(k: u64, a: u32, b: u32) -> BigUint {
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &cur * a + &prev * b;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Closed-form `pc(n, m)` for `m ∈ {1, 2, 3, 4, ∞}`.
pub fn pc_closed(n: u64, m: Modulus) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    let half = n / 2;
    let two = BigUint::from(2u32);
    match m.get() {
        None => Ok(BigUint::one() << half),
        Some(1) => Ok(BigUint::one() << (n - 1)),
        Some(_) if n == 1 => Ok(BigUint::one()),
        Some(2) => Ok(two * BigUint::from(3u32).pow((half - 1) as u32)),
        Some(3) => Ok(two * fibonacci(n - 1)),
        Some(4) => Ok(two * pell(half)),
        Some(_) => Err(Error::UnsupportedClosedForm(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn sequences() {
        assert_eq!(fibonacci(7), BigUint::from(13u32));
        assert_eq!(fibonacci(1), BigUint::one());
        assert_eq!(fibonacci(2), BigUint::one());
        assert_eq!(pell(1), BigUint::one());
        assert_eq!(pell(2), BigUint::from(2u32));
        assert_eq!(pell(3), BigUint::from(5u32));
    }

    #[test]
    fn closed_examples() {
        assert_eq!(pc_closed(7, m(2)).unwrap(), BigUint::from(18u32));
        assert_eq!(pc_closed(6, m(3)).unwrap(), BigUint::from(10u32));
        assert_eq!(pc_closed(8, m(4)).unwrap(), BigUint::from(24u32));
        assert_eq!(pc_closed(1, m(3)).unwrap(), BigUint::one());
        assert_eq!(pc_closed(9, Modulus::Infinity).unwrap(), BigUint::from(16u32));
        assert_eq!(pc_closed(5, m(1)).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn unsupported() {
        assert_eq!(pc_closed(5, m(5)), Err(Error::UnsupportedClosedForm(m(5))));
        assert!(pc_closed(0, m(2)).is_err());
    }

    #[test]
    fn pell_matches_sqrt2_formula() {
        // ((1+√2)^k - (1-√2)^k)/√2 = 2 P(k); compare in floating point for small k.
        let s = 2f64.sqrt();
        for k in 1..=20u64 {
            let exact: f64 = (2u32 * pell(k)).to_string().parse().unwrap();
            let approx = ((1.0 + s).powi(k as i32) - (1.0 - s).powi(k as i32)) / s;
            assert!((exact - approx).abs() / exact < 1e-12, "k={k}");
        }
    }
}
