//! Unbiased draws on top of a raw [`RngCore`] stream.

use rand_core::RngCore;

/// Uniform integer in `0..bound` by widening multiply with rejection.
///
/// The law is exactly uniform for every `bound`; no modulo reduction.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "uniform_below: empty range");
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let m = u128::from(rng.next_u64()) * u128::from(bound);
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}

pub fn uniform_index<R: RngCore + ?Sized>(rng: &mut R, len: usize) -> usize {
    uniform_below(rng, len as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn stays_in_range() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for bound in [1u64, 2, 3, 7, 1000, u64::MAX] {
            for _ in 0..200 {
                assert!(uniform_below(&mut rng, bound) < bound);
            }
        }
    }

    #[test]
    fn bound_one_is_zero() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        assert_eq!(uniform_below(&mut rng, 1), 0);
    }

    #[test]
    fn frequencies_roughly_uniform() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let mut counts = [0u32; 6];
        let draws = 60_000;
        for _ in 0..draws {
            counts[uniform_index(&mut rng, 6)] += 1;
        }
        // 4 sigma of Binomial(60000, 1/6) is about 365.
        for c in counts {
            assert!((i64::from(c) - 10_000).abs() < 365, "{counts:?}");
        }
    }
}
