//! Fixed-size chunks over a rayon pool, reduced in chunk order. Chunk
//! boundaries never depend on the thread count, so floating-point sums come
//! out the same on every machine.

use std::ops::Range;

use hypercolor_core::oracle::{enumerate_proper_range, state_count, EnumerationResult};
use hypercolor_core::Hypergraph;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::{rng, Result};

pub const CHUNK: u64 = 4096;

/// Splits `0..total` into `chunk`-sized ranges and maps each, keeping order.
pub fn map_chunks<T, F>(total: u64, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, Range<u64>) -> T + Sync,
{
    let chunk = chunk.max(1);
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|i| f(i, i * chunk..((i + 1) * chunk).min(total)))
        .collect()
}

/// Runs `work` once per replica with that replica's own stream and folds
/// the results of each chunk into a fresh accumulator. The per-chunk
/// accumulators are then merged left to right.
pub fn replicate<A, I, W, M>(replicas: u64, seed: u64, init: I, work: W, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    W: Fn(&mut A, u64, &mut ChaCha20Rng) -> Result<()> + Sync,
    M: Fn(&mut A, A),
{
    let parts = map_chunks(replicas, CHUNK, |_, range| -> Result<A> {
        let mut acc = init();
        for r in range {
            let mut rng = rng::stream(seed, r);
            work(&mut acc, r, &mut rng)?;
        }
        Ok(acc)
    });
    let mut total = init();
    for part in parts {
        merge(&mut total, part?);
    }
    Ok(total)
}

/// Same set as `enumerate_proper`, scanned in parallel code ranges.
pub fn enumerate_proper(h: &Hypergraph, q: usize, budget: u64) -> Result<EnumerationResult> {
    // the sequential call validates q and the budget without scanning
    let space = state_count(h.n(), q);
    if q == 0 || space > u128::from(budget) {
        return Ok(hypercolor_core::oracle::enumerate_proper(h, q, budget)?);
    }
    let parts = map_chunks(space as u64, 1 << 16, |_, range| enumerate_proper_range(h, q, range));
    Ok(EnumerationResult { n: h.n(), q, proper: parts.concat(), good: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypercolor_core::oracle::DEFAULT_BUDGET;
    use rand_chacha::rand_core::RngCore;

    #[test]
    fn chunks_cover_in_order() {
        let ranges = map_chunks(10, 4, |i, r| (i, r));
        assert_eq!(ranges, vec![(0, 0..4), (1, 4..8), (2, 8..10)]);
        assert!(map_chunks(0, 4, |_, r| r).is_empty());
    }

    #[test]
    fn replicate_is_order_independent() {
        let run = || {
            replicate(
                10_000,
                3,
                Vec::new,
                |acc: &mut Vec<u64>, r, rng| {
                    acc.push(r ^ rng.next_u64());
                    Ok(())
                },
                |a, b| a.extend(b),
            )
            .unwrap()
        };
        let a = run();
        assert_eq!(a.len(), 10_000);
        assert_eq!(a, run());
    }

    #[test]
    fn parallel_enumeration_matches() {
        let h = Hypergraph::new(7, 3, vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]).unwrap();
        let seq = hypercolor_core::oracle::enumerate_proper(&h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(enumerate_proper(&h, 3, DEFAULT_BUDGET).unwrap(), seq);
    }
}
