//! Compact bit-level adjacency storage used by the exact solvers.

/// A rectangular bit matrix (rows x cols), row-major, 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if value {
            *w |= 1u64 << (c % 64);
        } else {
            *w &= !(1u64 << (c % 64));
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row(r))
    }

    pub fn row_count(&self, r: usize) -> usize {
        count_ones(self.row(r))
    }
}

/// Set membership helpers for plain `&[u64]` word slices.
#[inline]
pub fn word_get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub fn word_set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub fn word_clear(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1u64 << (i % 64));
}

#[inline]
pub fn count_ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// `out = a & b`, returning the popcount of the result.
#[inline]
pub fn and_into(a: &[u64], b: &[u64], out: &mut [u64]) -> usize {
    let mut n = 0;
    for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
        n += o.count_ones() as usize;
    }
    n
}

pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// All-ones set of `n` bits in `n.div_ceil(64)` words.
pub fn full_set(n: usize) -> Vec<u64> {
    let mut v = vec![!0u64; n.div_ceil(64)];
    if n % 64 != 0 {
        if let Some(last) = v.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    if n == 0 {
        v.clear();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut m = BitMatrix::new(3, 130);
        m.set(1, 0, true);
        m.set(1, 129, true);
        assert!(m.get(1, 0) && m.get(1, 129) && !m.get(1, 64));
        assert_eq!(m.row_count(1), 2);
        assert_eq!(m.row_ones(1).collect::<Vec<_>>(), vec![0, 129]);
    }

    #[test]
    fn full_set_counts() {
        assert_eq!(count_ones(&full_set(0)), 0);
        assert_eq!(count_ones(&full_set(64)), 64);
        assert_eq!(count_ones(&full_set(65)), 65);
        assert_eq!(iter_ones(&full_set(3)).collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
