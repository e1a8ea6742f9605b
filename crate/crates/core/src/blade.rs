use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A canonical basis monomial `e_A`, stored as a bit mask over generator
/// indices (bit `a - 1` for generator `e_a`). The empty mask is the
/// identity `e`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(u16);

impl Blade {
    pub const IDENTITY: Blade = Blade(0);

    pub const fn from_mask(mask: u16) -> Self {
        Blade(mask)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    /// The generator `e_a` for a 1-based index `a`.
    pub fn generator(a: usize) -> Result<Self> {
        if a == 0 || a > 16 {
            return Err(Error::IndexOutOfRange { index: a, n: 16 });
        }
        Ok(Blade(1 << (a - 1)))
    }

    /// Builds `e_{a₁…a_k}` from strictly ascending 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u16;
        let mut last = 0;
        for &a in indices {
            if a <= last {
                return Err(Error::Precondition(alloc::format!(
                    "blade indices must be strictly ascending, got {indices:?}"
                )));
            }
            mask |= Blade::generator(a)?.0;
            last = a;
        }
        Ok(Blade(mask))
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_even(self) -> bool {
        self.0.count_ones() % 2 == 0
    }

    pub const fn contains(self, a: usize) -> bool {
        a >= 1 && a <= 16 && self.0 & (1 << (a - 1)) != 0
    }

    /// Generator indices in ascending order (1-based).
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=16).filter(move |&a| mask & (1 << (a - 1)) != 0)
    }

    pub fn index_vec(self) -> Vec<usize> {
        self.indices().collect()
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        let idx = self.index_vec();
        if idx.iter().any(|&a| a > 9) {
            write!(f, "{idx:?}")
        } else {
            idx.iter().try_for_each(|a| write!(f, "{a}"))
        }
    }
}

/// Parity of the number of transpositions needed to merge the ascending
/// index lists of `a` and `b` into one ascending list.
pub(crate) fn reorder_is_odd(a: u16, b: u16) -> bool {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    swaps % 2 == 1
}

/// Squares of the generators, packed as three disjoint masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metric {
    pos: u16,
    neg: u16,
    null: u16,
}

impl Metric {
    pub(crate) fn new(pos: u16, neg: u16, null: u16) -> Self {
        Metric { pos, neg, null }
    }

    pub fn positive(&self) -> u16 {
        self.pos
    }

    pub fn negative(&self) -> u16 {
        self.neg
    }

    pub fn null(&self) -> u16 {
        self.null
    }

    /// `e_A · e_B = ±e_{A△B}`, or `None` when a repeated degenerate index
    /// annihilates the product. The flag is `true` for a minus sign.
    #[inline]
    pub fn product(&self, a: Blade, b: Blade) -> Option<(bool, Blade)> {
        let common = a.0 & b.0;
        if common & self.null != 0 {
            return None;
        }
        let negative = reorder_is_odd(a.0, b.0) ^ ((common & self.neg).count_ones() % 2 == 1);
        Some((negative, Blade(a.0 ^ b.0)))
    }
}
