use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::{Blade, Error, Result, Scalar, Signature};

/// A sparse element of `G(p,q,r)`: a map from basis blades to nonzero
/// exact coefficients.
///
/// The term map never stores zeros, so structural equality is algebraic
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Multivector::scalar(sig, Scalar::one())
    }

    pub fn scalar(sig: Signature, s: Scalar) -> Self {
        Multivector::zero(sig).with_term(Blade::IDENTITY, s)
    }

    /// The basis blade `b` with coefficient 1.
    pub fn blade(sig: Signature, b: Blade) -> Result<Self> {
        Multivector::from_terms(sig, [(b, Scalar::one())])
    }

    /// The generator `e_a` (1-based).
    pub fn generator(sig: Signature, a: usize) -> Result<Self> {
        if a == 0 || a > sig.n() {
            return Err(Error::IndexOutOfRange { index: a, n: sig.n() });
        }
        Multivector::blade(sig, Blade::generator(a)?)
    }

    /// The pseudoscalar `e_{1…n}`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Multivector::zero(sig).with_term(sig.pseudoscalar(), Scalar::one())
    }

    /// Sums the given terms, checking that every blade lies in the algebra
    /// and that real-mode coefficients are real.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, Scalar)>) -> Result<Self> {
        let mut out = Multivector::zero(sig);
        for (b, s) in terms {
            if !sig.contains_blade(b) {
                let index = b.indices().last().unwrap_or(0);
                return Err(Error::IndexOutOfRange { index, n: sig.n() });
            }
            if !sig.is_complex() && !s.is_real() {
                return Err(Error::Precondition(format!(
                    "complex coefficient {s} in real algebra {sig}"
                )));
            }
            out.add_term(b, &s);
        }
        Ok(out)
    }

    fn with_term(mut self, b: Blade, s: Scalar) -> Self {
        self.add_term(b, &s);
        self
    }

    fn add_term(&mut self, b: Blade, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(c) => {
                *c += s;
                if c.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, s.clone());
            }
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Nonzero terms in ascending blade-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> + '_ {
        self.terms.iter().map(|(b, s)| (*b, s))
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, b: Blade) -> Scalar {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `⟨u⟩₀` as a scalar.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(Blade::IDENTITY)
    }

    fn check_same(&self, other: &Multivector) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::mismatch(self.sig, other.sig));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, s) in &other.terms {
            out.add_term(*b, s);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, s) in &other.terms {
            out.add_term(*b, &-s);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Multivector {
        if s.is_zero() {
            return Multivector::zero(self.sig);
        }
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect(),
        }
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let metric = self.sig.metric();
        // Dense accumulator indexed by mask; cheap for the n this crate targets.
        let mut acc: Vec<Option<Scalar>> = vec![None; self.sig.blade_count()];
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let Some((neg, c)) = metric.product(*a, *b) else {
                    continue;
                };
                let v = x * y;
                let slot = &mut acc[c.mask() as usize];
                match slot {
                    Some(s) if neg => *s -= &v,
                    Some(s) => *s += &v,
                    None => *slot = Some(if neg { -v } else { v }),
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(m, s)| s.filter(|s| !s.is_zero()).map(|s| (Blade::from_mask(m as u16), s)))
            .collect();
        Ok(Multivector { sig: self.sig, terms })
    }

    /// `[u, v] = uv − vu`.
    pub fn commutator(&self, other: &Multivector) -> Result<Multivector> {
        self.geometric_product(other)?
            .try_sub(&other.geometric_product(self)?)
    }

    /// `û`: each grade-`k` term scaled by `(−1)ᵏ`.
    pub fn grade_involution(&self) -> Multivector {
        self.map_terms(|b, s| if b.is_even() { s.clone() } else { -s })
    }

    fn map_terms(&self, f: impl Fn(Blade, &Scalar) -> Scalar) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self.terms.iter().map(|(b, s)| (*b, f(*b, s))).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(Blade) -> bool) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, s)| (*b, s.clone()))
                .collect(),
        }
    }

    /// `⟨u⟩ₖ`.
    pub fn grade_project(&self, k: usize) -> Result<Multivector> {
        if k > self.sig.n() {
            return Err(Error::GradeOutOfRange { grade: k, n: self.sig.n() });
        }
        Ok(self.filter(|b| b.grade() == k))
    }

    pub fn even_part(&self) -> Multivector {
        self.filter(Blade::is_even)
    }

    pub fn odd_part(&self) -> Multivector {
        self.filter(|b| !b.is_even())
    }

    /// `(u⁽⁰⁾, u⁽¹⁾)`; zero splits as `(0, 0)`.
    pub fn parity_split(&self) -> (Multivector, Multivector) {
        (self.even_part(), self.odd_part())
    }

    /// `Some(0)` for even, `Some(1)` for odd, `None` when mixed. Zero counts as
    /// even.
    pub fn parity(&self) -> Option<u8> {
        let mut blades = self.terms.keys();
        let Some(first) = blades.next() else {
            return Some(0);
        };
        let p = (!first.is_even()) as u8;
        blades
            .all(|b| b.is_even() == (p == 0))
            .then_some(p)
    }

    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        self.sig.blades().map(|b| self.coeff(b)).collect()
    }

    pub fn from_coefficients(sig: Signature, coeffs: &[Scalar]) -> Result<Multivector> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                sig.blade_count(),
                coeffs.len()
            )));
        }
        Multivector::from_terms(sig, sig.blades().zip(coeffs.iter().cloned()))
    }

    /// Matrix of `x ↦ u·x` in the blade basis ordered by mask; column `j` is
    /// `u · blade(j)`.
    pub fn left_regular_matrix(&self) -> Matrix {
        let dim = self.sig.blade_count();
        let metric = self.sig.metric();
        let mut m = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let bj = Blade::from_mask(j as u16);
            for (a, s) in &self.terms {
                if let Some((neg, c)) = metric.product(*a, bj) {
                    m.set(c.mask() as usize, j, if neg { -s } else { s.clone() });
                }
            }
        }
        m
    }

    /// True when `u ∈ G⁰ ⊕ rad`, i.e. every non-scalar term touches a
    /// degenerate generator.
    pub fn is_scalar_plus_radical(&self) -> bool {
        let null = self.sig.null_mask();
        self.terms
            .keys()
            .all(|b| b.mask() == 0 || b.mask() & null != 0)
    }

    /// The two-sided inverse, or `None` if `u` is not invertible.
    ///
    /// Elements of `G⁰ ⊕ rad` are inverted by the terminating series
    /// `α⁻¹ Σ (−W)ᵏ` for `u = α(e + W)`; everything else goes through
    /// [`Multivector::inverse_by_solve`].
    pub fn inverse(&self) -> Option<Multivector> {
        if self.is_scalar_plus_radical() {
            return self.inverse_radical_series();
        }
        self.inverse_by_solve()
    }

    fn inverse_radical_series(&self) -> Option<Multivector> {
        let alpha_inv = self.scalar_part().recip()?;
        let w = self.scale(&alpha_inv).try_sub(&Multivector::one(self.sig)).ok()?;
        let neg_w = -&w;
        let mut term = Multivector::one(self.sig);
        let mut sum = Multivector::one(self.sig);
        // W is nilpotent with W^{r+1} = 0.
        for _ in 0..=self.sig.r() {
            term = term.geometric_product(&neg_w).ok()?;
            if term.is_zero() {
                break;
            }
            sum = sum.try_add(&term).ok()?;
        }
        Some(sum.scale(&alpha_inv))
    }

    /// Inverse from the exact solve `L(u) x = e`.
    ///
    /// In a finite-dimensional algebra a right inverse is two-sided.
    pub fn inverse_by_solve(&self) -> Option<Multivector> {
        if self.is_zero() {
            return None;
        }
        let mut rhs = vec![Scalar::zero(); self.sig.blade_count()];
        rhs[0] = Scalar::one();
        let x = self.left_regular_matrix().solve(&rhs)?;
        Multivector::from_coefficients(self.sig, &x).ok()
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn pow(&self, k: u32) -> Multivector {
        let mut out = Multivector::one(self.sig);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }
}

/// Operator forms panic on signature mismatch; the `try_*` and
/// [`Multivector::geometric_product`] methods report it instead.
impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("signature mismatch")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("signature mismatch")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("signature mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_terms(|_, s| -s)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print(self))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn mv(s: &str, sig: Signature) -> Multivector {
        parse(s, sig).unwrap()
    }

    #[test]
    fn generator_products() {
        let g = Signature::new(0, 0, 2).unwrap();
        let e1 = Multivector::generator(g, 1).unwrap();
        let e2 = Multivector::generator(g, 2).unwrap();
        assert!((&e1 * &e1).is_zero());
        assert_eq!(&e2 * &e1, mv("-e12", g));
        let g3 = Signature::new(0, 0, 3).unwrap();
        assert_eq!(&mv("e + e1", g3) * &mv("e - e1", g3), Multivector::one(g3));
    }

    #[test]
    fn involution_and_projection() {
        let g = Signature::new(2, 0, 0).unwrap();
        assert_eq!(mv("e1", g).grade_involution(), mv("-e1", g));
        assert_eq!(mv("e12", g).grade_involution(), mv("e12", g));
        assert_eq!(mv("2 + 3*e1", g).grade_project(0).unwrap(), mv("2", g));
        assert!(mv("e12", g).grade_project(1).unwrap().is_zero());
        assert!(mv("e12", g).grade_project(3).is_err());
        let (ev, od) = mv("e + e1", g).parity_split();
        assert_eq!((ev, od), (mv("e", g), mv("e1", g)));
    }

    #[test]
    fn left_regular_of_degenerate_generator() {
        let g = Signature::new(0, 0, 1).unwrap();
        let m = mv("e1", g).left_regular_matrix();
        assert_eq!(m, Matrix::from_ints(&[&[0, 0], &[1, 0]]).unwrap());
    }

    #[test]
    fn inverses() {
        let g3 = Signature::new(0, 0, 3).unwrap();
        assert_eq!(mv("e + e1", g3).inverse().unwrap(), mv("e - e1", g3));
        let g1 = Signature::new(0, 0, 1).unwrap();
        assert!(mv("e1", g1).inverse().is_none());
        let g2 = Signature::new(0, 0, 2).unwrap();
        assert_eq!(
            mv("2*e + 3*e12", g2).inverse().unwrap(),
            mv("1/2*e - 3/4*e12", g2)
        );
        let g = Signature::new(1, 1, 1).unwrap();
        let u = mv("1 + 2*e1 - e23 + 3*e123", g);
        let v = u.inverse().unwrap();
        assert_eq!(&u * &v, Multivector::one(g));
        assert_eq!(&v * &u, Multivector::one(g));
    }

    #[test]
    fn commutators() {
        let g = Signature::new(2, 0, 0).unwrap();
        assert!(mv("e1", g).commutator(&mv("e1", g)).unwrap().is_zero());
        assert_eq!(mv("e1", g).commutator(&mv("e2", g)).unwrap(), mv("2*e12", g));
        let other = Signature::new(1, 1, 0).unwrap();
        assert!(mv("e1", g).commutator(&mv("e1", other)).is_err());
    }

    #[test]
    fn rejects_out_of_range_blades() {
        let g = Signature::new(1, 0, 0).unwrap();
        assert!(Multivector::blade(g, Blade::from_mask(0b10)).is_err());
        assert!(Multivector::generator(g, 2).is_err());
    }
}
