//! Bit-packed kernels for series over GF(2).
//!
//! Coefficients arrive as `u64` residues in `{0, 1}` and are packed 64 to a
//! word. Multiplication is carryless: each set bit of the sparser operand
//! XORs a shifted copy of the other operand into the accumulator, so a dense
//! product of length `n` costs about `n^2 / 64` word operations.

/// Packed bit vector of `len` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitPoly {
    words: Vec<u64>,
    len: usize,
}

impl BitPoly {
    pub(crate) fn from_residues(v: &[u64], len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, &c) in v[..len].iter().enumerate() {
            if c & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        BitPoly { words, len }
    }

    pub(crate) fn to_residues(&self) -> Vec<u64> {
        (0..self.len).map(|i| (self.words[i / 64] >> (i % 64)) & 1).collect()
    }

    fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn set_bits(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// `self ^= other * q^shift`, truncated to `self.len`.
    fn xor_shifted(&mut self, other: &BitPoly, shift: usize) {
        if shift >= self.len {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let n = self.words.len();
        for w in ws..n {
            let src = w - ws;
            let mut v = other.words.get(src).copied().unwrap_or(0) << bs;
            if bs > 0 && src > 0 {
                v |= other.words.get(src - 1).copied().unwrap_or(0) >> (64 - bs);
            }
            self.words[w] ^= v;
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub(crate) fn mul_truncated(&self, other: &BitPoly, len: usize) -> BitPoly {
        let (sparse, dense) = if self.count_ones() <= other.count_ones() { (self, other) } else { (other, self) };
        let mut acc = BitPoly { words: vec![0; len.div_ceil(64)], len };
        for i in sparse.set_bits() {
            if i >= len {
                break;
            }
            acc.xor_shifted(dense, i);
        }
        acc
    }
}

pub(crate) fn mul_truncated(x: &[u64], y: &[u64], len: usize) -> Vec<u64> {
    let a = BitPoly::from_residues(x, len);
    let b = BitPoly::from_residues(y, len);
    a.mul_truncated(&b, len).to_residues()
}

/// `x / y` over GF(2); `y[0]` must be 1.
pub(crate) fn div_truncated(x: &[u64], y: &[u64], len: usize) -> Vec<u64> {
    let tail: Vec<usize> = (1..len).filter(|&i| y[i] & 1 == 1).collect();
    let mut out = vec![0u8; len];
    for n in 0..len {
        let mut bit = (x[n] & 1) as u8;
        for &i in tail.iter().take_while(|&&i| i <= n) {
            bit ^= out[n - i];
        }
        out[n] = bit;
    }
    out.into_iter().map(u64::from).collect()
}
