//! Short constructors and sampling helpers for exact rational scalars.

use num::bigint::BigInt;
use num::BigRational;
use rand::Rng;

/// Exact rational scalar used everywhere in the crate.
pub type Q = BigRational;

/// `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics when `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Small random rational with numerator in `-7..=7` and denominator in `1..=7`.
///
/// Random evaluation points are kept this small so that degree-four
/// polynomial identities stay well inside fast big-integer ranges.
pub fn sample_small<R: Rng + ?Sized>(rng: &mut R) -> Q {
    q(rng.random_range(-7..=7), rng.random_range(1..=7))
}

/// Like [`sample_small`] but never zero.
pub fn sample_small_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Q {
    loop {
        let v = sample_small(rng);
        if !num::Zero::is_zero(&v) {
            return v;
        }
    }
}

/// Exact integer power with negative exponents allowed.
pub fn qpow(base: &Q, exp: i64) -> Q {
    use num::One;
    if exp >= 0 {
        num::pow::pow(base.clone(), exp as usize)
    } else {
        Q::one() / num::pow::pow(base.clone(), (-exp) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use rand::SeedableRng;

    #[test]
    fn small_samples_stay_in_range() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let v = sample_small(&mut rng);
            assert!(v.numer().magnitude() <= &7u32.into());
            assert!(v.denom().magnitude() <= &7u32.into());
            assert!(!sample_small_nonzero(&mut rng).is_zero());
        }
    }

    #[test]
    fn negative_powers_invert() {
        let x = q(3, 4);
        assert_eq!(qpow(&x, -2) * qpow(&x, 2), qi(1));
        assert_eq!(qpow(&x, 0), qi(1));
    }
}
