use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A random map `f: V -> Z_p`, extended additively to vertex sets.
///
/// Values are drawn uniformly from `[0, p)` with ChaCha8 seeded by `seed`,
/// so a fingerprint is fully reproducible from `(n, seed)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    p: u64,
    values: Vec<u64>,
    seed: u64,
}

impl Fingerprint {
    pub fn sample(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..n).map(|_| rng.gen_range(0..MERSENNE_61)).collect();
        Fingerprint {
            p: MERSENNE_61,
            values,
            seed,
        }
    }

    /// Explicit values; every value must already be reduced mod `p`.
    pub fn from_values(p: u64, values: Vec<u64>) -> Self {
        assert!((2..=MERSENNE_61).contains(&p), "modulus must fit the 61-bit kernel");
        assert!(values.iter().all(|&v| v < p), "fingerprint value not reduced");
        Fingerprint { p, values, seed: 0 }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, x: usize) -> u64 {
        self.values[x]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `f(S)` for the set `S`.
    pub fn of_set(&self, set: impl IntoIterator<Item = usize>) -> u64 {
        set.into_iter().fold(0, |acc, x| self.add(acc, self.values[x]))
    }

    /// `f(V)`.
    pub fn total(&self) -> u64 {
        self.of_set(0..self.values.len())
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let a = Fingerprint::sample(100, 9);
        let b = Fingerprint::sample(100, 9);
        assert_eq!(a, b);
        assert!(a.values().iter().all(|&v| v < MERSENNE_61));
        assert_ne!(a, Fingerprint::sample(100, 10));
    }

    #[test]
    fn modular_arithmetic() {
        let f = Fingerprint::from_values(7, vec![6, 5, 3]);
        assert_eq!(f.total(), (6 + 5 + 3) % 7);
        assert_eq!(f.sub(1, 6), 2);
        assert_eq!(f.of_set([]), 0);
    }
}
