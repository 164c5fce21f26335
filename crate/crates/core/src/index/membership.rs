use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EMPTY: usize = usize::MAX;

/// Static open-addressing hash set over element ids.
///
/// The table has a power-of-two capacity at least twice the key count and
/// uses linear probing with a multiply-shift hash whose odd multiplier is
/// drawn from the build seed, so lookups take expected O(1) slot inspections.
#[derive(Debug, Clone)]
pub struct StaticHashSet {
    slots: Vec<usize>,
    multiplier: u64,
    shift: u32,
    len: usize,
}

impl StaticHashSet {
    pub fn build(keys: &[usize], seed: u64) -> Self {
        let capacity = (2 * keys.len()).next_power_of_two().max(2);
        let bits = capacity.trailing_zeros();
        let multiplier = ChaCha8Rng::seed_from_u64(seed).random::<u64>() | 1;
        let mut set = Self {
            slots: vec![EMPTY; capacity],
            multiplier,
            shift: u64::BITS - bits,
            len: 0,
        };
        for &k in keys {
            set.insert(k);
        }
        set
    }

    #[inline]
    fn home(&self, key: usize) -> usize {
        ((key as u64).wrapping_mul(self.multiplier) >> self.shift) as usize
    }

    fn insert(&mut self, key: usize) {
        debug_assert_ne!(key, EMPTY);
        let mask = self.slots.len() - 1;
        let mut slot = self.home(key);
        loop {
            match self.slots[slot] {
                EMPTY => {
                    self.slots[slot] = key;
                    self.len += 1;
                    return;
                }
                k if k == key => return,
                _ => slot = (slot + 1) & mask,
            }
        }
    }

    #[inline]
    pub fn contains(&self, key: usize) -> bool {
        let mask = self.slots.len() - 1;
        let mut slot = self.home(key);
        loop {
            match self.slots[slot] {
                EMPTY => return false,
                k if k == key => return true,
                _ => slot = (slot + 1) & mask,
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
