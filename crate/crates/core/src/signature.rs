use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::blade::{Blade, Metric};
use crate::{Error, Result};

/// Scalar field of an algebra instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Exact rationals; `η` has `p` entries `+1`, `q` entries `-1`, `r` zeros.
    Real,
    /// Gaussian rationals; `η` has `p + q` entries `+1` and `r` zeros.
    Complex,
}

/// The triple `(p, q, r)` of an algebra `G(p,q,r)` together with its field.
///
/// Generators are numbered `1..=n`; the first `p` square to `+1`, the next
/// `q` to `-1` (to `+1` in complex mode) and the last `r` to `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    p: u8,
    q: u8,
    r: u8,
    field: Field,
}

impl Signature {
    /// Largest supported `n`; the left-regular matrix is `2ⁿ × 2ⁿ`.
    pub const MAX_DIM: usize = 12;

    pub fn new(p: usize, q: usize, r: usize) -> Result<Self> {
        Self::with_field(p, q, r, Field::Real)
    }

    pub fn complex(p: usize, q: usize, r: usize) -> Result<Self> {
        Self::with_field(p, q, r, Field::Complex)
    }

    pub fn with_field(p: usize, q: usize, r: usize, field: Field) -> Result<Self> {
        let n = p + q + r;
        if n == 0 {
            return Err(Error::InvalidSignature(format!(
                "({p},{q},{r}) has dimension 0; need n >= 1"
            )));
        }
        if n > Self::MAX_DIM {
            return Err(Error::InvalidSignature(format!(
                "({p},{q},{r}) has dimension {n}; at most {} is supported",
                Self::MAX_DIM
            )));
        }
        Ok(Signature {
            p: p as u8,
            q: q as u8,
            r: r as u8,
            field,
        })
    }

    pub fn p(&self) -> usize {
        self.p as usize
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn n(&self) -> usize {
        self.p() + self.q() + self.r()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_complex(&self) -> bool {
        self.field == Field::Complex
    }

    /// The same `(p, q, r)` over another field.
    pub fn over(self, field: Field) -> Self {
        Signature { field, ..self }
    }

    /// Diagonal metric entry `η(a)` for the 1-based generator index `a`.
    pub fn eta(&self, a: usize) -> Result<i8> {
        let n = self.n();
        if a == 0 || a > n {
            return Err(Error::IndexOutOfRange { index: a, n });
        }
        Ok(if a <= self.p() {
            1
        } else if a <= self.p() + self.q() {
            match self.field {
                Field::Real => -1,
                Field::Complex => 1,
            }
        } else {
            0
        })
    }

    pub fn metric(&self) -> Metric {
        let low = |k: usize| -> u16 { ((1u32 << k) - 1) as u16 };
        let pq = self.p() + self.q();
        let (pos, neg) = match self.field {
            Field::Real => (low(self.p()), low(pq) & !low(self.p())),
            Field::Complex => (low(pq), 0),
        };
        Metric::new(pos, neg, low(self.n()) & !low(pq))
    }

    /// Number of basis blades, `2ⁿ`.
    pub fn blade_count(&self) -> usize {
        1 << self.n()
    }

    /// All basis blades in ascending mask order.
    pub fn blades(&self) -> impl Iterator<Item = Blade> + Clone {
        (0..self.blade_count() as u32).map(|m| Blade::from_mask(m as u16))
    }

    /// Mask of the degenerate generators `p+q+1..=n`.
    pub fn null_mask(&self) -> u16 {
        self.metric().null()
    }

    /// The pseudoscalar blade `e_{1…n}`.
    pub fn pseudoscalar(&self) -> Blade {
        Blade::from_mask(((1u32 << self.n()) - 1) as u16)
    }

    pub fn contains_blade(&self, b: Blade) -> bool {
        (b.mask() as u32) >> self.n() == 0
    }

    /// Every real signature with `1 <= n <= max_n`, ordered by `n`, then
    /// `p`, then `q`.
    pub fn all_up_to(max_n: usize) -> Vec<Signature> {
        (1..=max_n.min(Self::MAX_DIM))
            .flat_map(Self::all_with_dim)
            .collect()
    }

    pub fn all_with_dim(n: usize) -> Vec<Signature> {
        let mut out = Vec::new();
        for p in 0..=n {
            for q in 0..=n - p {
                if let Ok(sig) = Signature::new(p, q, n - p - q) {
                    out.push(sig);
                }
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Real => write!(f, "G({},{},{})", self.p, self.q, self.r),
            Field::Complex => write!(f, "G_C({},{},{})", self.p, self.q, self.r),
        }
    }
}

/// Parses `p,q,r` (real field).
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidSignature(format!("expected p,q,r but got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut vals = [0usize; 3];
        for (v, part) in vals.iter_mut().zip(&parts) {
            *v = part.parse().map_err(|_| bad())?;
        }
        Signature::new(vals[0], vals[1], vals[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_follows_sign_blocks() {
        let sig = Signature::new(1, 2, 1).unwrap();
        let etas: Vec<i8> = (1..=4).map(|a| sig.eta(a).unwrap()).collect();
        assert_eq!(etas, [1, -1, -1, 0]);
        let c = Signature::complex(1, 2, 1).unwrap();
        let etas: Vec<i8> = (1..=4).map(|a| c.eta(a).unwrap()).collect();
        assert_eq!(etas, [1, 1, 1, 0]);
        assert!(sig.eta(0).is_err());
        assert!(sig.eta(5).is_err());
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert!(Signature::new(0, 0, 0).is_err());
        assert!(Signature::new(6, 6, 1).is_err());
        assert!(Signature::new(4, 4, 4).is_ok());
    }

    #[test]
    fn signature_counts() {
        // (n+1)(n+2)/2 compositions per n.
        assert_eq!(Signature::all_up_to(4).len(), 34);
        assert_eq!(Signature::all_up_to(6).len(), 83);
    }

    #[test]
    fn parses_triples() {
        let sig: Signature = "0, 0,3".parse().unwrap();
        assert_eq!((sig.p(), sig.q(), sig.r()), (0, 0, 3));
        assert!("1,2".parse::<Signature>().is_err());
        assert!("a,b,c".parse::<Signature>().is_err());
    }
}
