/// Square bit matrix kept symmetric by construction: `set(a, b)` writes both
/// `(a, b)` and `(b, a)`. Rows are packed into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBitMatrix {
    dim: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl SymmetricBitMatrix {
    pub fn new(dim: usize) -> Self {
        let words_per_row = dim.div_ceil(u64::BITS as usize);
        Self {
            dim,
            words_per_row,
            words: vec![0; dim * words_per_row],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Logical size in bits, `dim²`.
    pub fn num_bits(&self) -> usize {
        self.dim * self.dim
    }

    #[inline]
    fn location(&self, row: usize, col: usize) -> (usize, u64) {
        assert!(row < self.dim && col < self.dim, "({row}, {col}) outside {0}x{0}", self.dim);
        let word = row * self.words_per_row + col / u64::BITS as usize;
        (word, 1u64 << (col % u64::BITS as usize))
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        let (w, mask) = self.location(row, col);
        self.words[w] & mask != 0
    }

    pub fn set(&mut self, a: usize, b: usize) {
        let (w, mask) = self.location(a, b);
        self.words[w] |= mask;
        let (w, mask) = self.location(b, a);
        self.words[w] |= mask;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|a| (a..self.dim).all(|b| self.get(a, b) == self.get(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_writes_both_halves() {
        let mut m = SymmetricBitMatrix::new(70);
        m.set(3, 65);
        assert!(m.get(3, 65) && m.get(65, 3));
        assert!(!m.get(3, 64));
        m.set(69, 69);
        assert!(m.get(69, 69));
        assert!(m.is_symmetric());
        assert_eq!(m.num_bits(), 4900);
    }

    #[test]
    fn empty_matrix() {
        let m = SymmetricBitMatrix::new(0);
        assert_eq!(m.num_bits(), 0);
        assert!(m.is_symmetric());
    }

    #[test]
    #[should_panic]
    fn out_of_range_panics() {
        SymmetricBitMatrix::new(2).get(2, 0);
    }
}
