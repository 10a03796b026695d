//! Packed single-variable polynomials over F2: bit `i` is the coefficient
//! of the degree-`i` monomial. Multiplication is carryless shift-xor.

/// Invariant: no trailing zero words, so equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub(crate) struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zero() -> Self {
        Self::default()
    }

    #[cfg(test)]
    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    #[cfg(test)]
    pub fn from_bit(i: u32) -> Self {
        let mut row = Self::zero();
        row.toggle(i);
        row
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, i: u32) -> bool {
        self.words
            .get((i / 64) as usize)
            .is_some_and(|&w| w >> (i % 64) & 1 == 1)
    }

    pub fn toggle(&mut self, i: u32) {
        let w = (i / 64) as usize;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1u64 << (i % 64);
        self.trim();
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.trim();
    }

    /// `self ^= other << shift`.
    fn xor_shifted(&mut self, other: &BitRow, shift: u32) {
        if other.is_zero() {
            return;
        }
        let word_shift = (shift / 64) as usize;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + usize::from(bit_shift > 0);
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (j, &w) in other.words.iter().enumerate() {
            self.words[j + word_shift] ^= w << bit_shift;
            if bit_shift > 0 {
                self.words[j + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
        self.trim();
    }

    /// Accumulate the carryless product `a * b`, dropping bits above `max_bit`.
    pub fn acc_mul(&mut self, a: &BitRow, b: &BitRow, max_bit: u32) {
        for i in a.iter_bits() {
            if i > max_bit {
                break;
            }
            self.xor_shifted(b, i);
        }
        self.truncate_above(max_bit);
    }

    /// Clear every bit strictly above `max_bit`.
    pub fn truncate_above(&mut self, max_bit: u32) {
        let last_word = (max_bit / 64) as usize;
        if self.words.len() > last_word + 1 {
            self.words.truncate(last_word + 1);
        }
        if let Some(w) = self.words.get_mut(last_word) {
            let keep = max_bit % 64;
            if keep < 63 {
                *w &= (1u64 << (keep + 1)) - 1;
            }
        }
        self.trim();
    }

    pub fn max_bit(&self) -> Option<u32> {
        let last = self.words.last()?;
        Some((self.words.len() as u32 - 1) * 64 + (63 - last.leading_zeros()))
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &word)| {
            std::iter::successors((word != 0).then_some(word), |&w| {
                let rest = w & (w - 1);
                (rest != 0).then_some(rest)
            })
            .map(move |w| j as u32 * 64 + w.trailing_zeros())
        })
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl std::fmt::Debug for BitRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.iter_bits()).finish()
    }
}
