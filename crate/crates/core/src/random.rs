//! Seeded random instances with small integer weights.

use rand::Rng;

use crate::scalar::from_count;
use crate::Instance;

/// Default upper bound on the integer weights drawn per good.
pub const DEFAULT_WEIGHT_BOUND: u32 = 20;

/// Draws each weight uniformly from `0..=bound`, redraws all-zero rows, and
/// normalizes every row to sum to 1.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, bound: u32) -> Instance {
    assert!(bound > 0, "weight bound must be positive");
    let rows = (0..n)
        .map(|_| loop {
            let row: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=bound) as usize).collect();
            if row.iter().any(|&w| w > 0) {
                break row.into_iter().map(from_count).collect();
            }
        })
        .collect();
    Instance::normalize(rows).expect("rows are nonnegative with positive sums")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_instance() {
        let a = random_instance(&mut ChaCha8Rng::seed_from_u64(3), 3, 4, 20);
        let b = random_instance(&mut ChaCha8Rng::seed_from_u64(3), 3, 4, 20);
        assert_eq!(a, b);
        assert_eq!((a.agents(), a.goods()), (3, 4));
    }

    #[test]
    fn single_good_rows_are_never_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let i = random_instance(&mut rng, 2, 1, 1);
            assert!(i.rows().iter().all(|row| row[0] == num_traits::One::one()));
        }
    }
}
