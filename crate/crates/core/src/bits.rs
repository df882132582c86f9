//! Fixed-length dense bitset used for membership windows.
//!
//! Bit `i` of a window stands for the integer `offset + i`, where the offset
//! lives with the owner. Padding bits past `len` are always zero so that
//! derived equality is set equality.

const WORD: usize = u64::BITS as usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub(crate) fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    /// Sets every bit in `[from, len)`.
    pub(crate) fn fill_from(&mut self, from: usize) {
        let first_full = from.div_ceil(WORD);
        for i in from..self.len.min(first_full * WORD) {
            self.set(i);
        }
        for w in first_full..self.words.len() {
            self.words[w] = u64::MAX;
        }
        self.mask_tail();
    }

    /// `self |= other << shift`, where a negative shift moves bits toward
    /// index zero. Bits landing outside `[0, len)` are dropped.
    pub(crate) fn or_shifted(&mut self, other: &Bits, shift: i64) {
        if other.len == 0 {
            return;
        }
        if shift >= 0 {
            let shift = shift as usize;
            if shift >= self.len {
                return;
            }
            let (ws, bs) = (shift / WORD, shift % WORD);
            for (j, &w) in other.words.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let lo = j + ws;
                if lo >= self.words.len() {
                    break;
                }
                self.words[lo] |= w << bs;
                if bs != 0 && lo + 1 < self.words.len() {
                    self.words[lo + 1] |= w >> (WORD - bs);
                }
            }
        } else {
            let shift = shift.unsigned_abs() as usize;
            if shift >= other.len {
                return;
            }
            let (ws, bs) = (shift / WORD, shift % WORD);
            for i in 0..self.words.len() {
                let j = i + ws;
                if j >= other.words.len() {
                    break;
                }
                let mut w = other.words[j] >> bs;
                if bs != 0 && j + 1 < other.words.len() {
                    w |= other.words[j + 1] << (WORD - bs);
                }
                self.words[i] |= w;
            }
        }
        self.mask_tail();
    }

    pub(crate) fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub(crate) fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + t)
            })
        })
    }

    /// Copy of bits `[from, to)` as a new window of length `to - from`.
    pub(crate) fn slice(&self, from: usize, to: usize) -> Bits {
        debug_assert!(from <= to && to <= self.len);
        let mut out = Bits::new(to - from);
        out.or_shifted(self, -(from as i64));
        out
    }

    /// Complement within `[0, len)`.
    pub(crate) fn complement(&self) -> Bits {
        let mut out = Bits {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.mask_tail();
        out
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}
