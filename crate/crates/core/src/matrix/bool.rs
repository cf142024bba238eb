use std::fmt;

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Iterator over the set bit positions of a packed word slice, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + bit)
    }
}

/// Set bit positions of `words`, ascending.
pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones {
        words,
        index: 0,
        current: words.first().copied().unwrap_or(0),
    }
}

#[inline]
pub fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / WORD] >> (i % WORD) & 1 == 1
}

#[inline]
pub fn set_bit(words: &mut [u64], i: usize) {
    words[i / WORD] |= 1 << (i % WORD);
}

#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Dense 0/1 matrix, row-major, one bit per entry.
///
/// Rows are padded to whole words; padding bits are always zero so that
/// popcounts and equality can work on raw words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BoolMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            m.fill_row(r);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. All rows must share a length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_fn(rows.len(), cols, |i, j| {
            let row = rows[i].as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            row[j] != 0
        })
    }

    /// Assembles a matrix from packed row words (`rows * stride` words).
    pub(crate) fn from_words(rows: usize, cols: usize, words: Vec<u64>) -> Self {
        let stride = words_for(cols);
        assert_eq!(words.len(), rows * stride);
        let m = BoolMatrix {
            rows,
            cols,
            stride,
            words,
        };
        debug_assert!(m.padding_is_clear());
        m
    }

    fn padding_is_clear(&self) -> bool {
        let mask = self.tail_mask();
        self.stride == 0 || (0..self.rows).all(|i| self.row(i)[self.stride - 1] & !mask == 0)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        test_bit(self.row(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "({i}, {j}) outside {}x{}",
            self.rows,
            self.cols
        );
        let w = &mut self.words[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn rows_mut(&mut self) -> std::slice::ChunksMut<'_, u64> {
        // stride 0 (no columns) would make chunks_mut panic
        self.words.chunks_mut(self.stride.max(1))
    }

    pub fn row_ones(&self, i: usize) -> Ones<'_> {
        ones(self.row(i))
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn tail_mask(&self) -> u64 {
        match self.cols % WORD {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    fn fill_row(&mut self, i: usize) {
        let mask = self.tail_mask();
        let stride = self.stride;
        let row = self.row_mut(i);
        row.fill(u64::MAX);
        if stride > 0 {
            row[stride - 1] &= mask;
        }
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Entrywise negation; padding stays zero.
    pub fn complement(&self) -> BoolMatrix {
        let mut c = self.clone();
        let mask = self.tail_mask();
        let stride = self.stride;
        for row in c.rows_mut() {
            for w in row.iter_mut() {
                *w = !*w;
            }
            if stride > 0 {
                row[stride - 1] &= mask;
            }
        }
        c
    }

    pub fn and(&self, other: &BoolMatrix) -> BoolMatrix {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BoolMatrix) -> BoolMatrix {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &BoolMatrix) -> BoolMatrix {
        self.zip_words(other, |a, b| a ^ b)
    }

    fn zip_words(&self, other: &BoolMatrix, f: impl Fn(u64, u64) -> u64) -> BoolMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        BoolMatrix {
            rows: self.rows,
            cols: self.cols,
            stride: self.stride,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `out[i][j] = self[row_of[i]][col_of[j]]`.
    pub fn permuted(&self, row_of: &[usize], col_of: &[usize]) -> BoolMatrix {
        BoolMatrix::from_fn(row_of.len(), col_of.len(), |i, j| self.get(row_of[i], col_of[j]))
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> BoolMatrix {
        assert!(start <= end && end <= self.cols);
        let mut out = BoolMatrix::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                if j >= end {
                    break;
                }
                if j >= start {
                    out.set(i, j - start, true);
                }
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> BoolMatrix {
        assert!(start <= end && end <= self.rows);
        BoolMatrix {
            rows: end - start,
            cols: self.cols,
            stride: self.stride,
            words: self.words[start * self.stride..end * self.stride].to_vec(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
