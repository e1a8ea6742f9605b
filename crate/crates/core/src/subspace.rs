//! Blade-spanned subspaces of `G(p,q,r)` and commutant computations.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::{Blade, Error, Multivector, Result, Signature};

/// The named subspaces. Every one of them is spanned by basis blades, so a
/// kind is just a predicate on blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubspaceKind {
    /// `Gᵏ`.
    Grade(usize),
    /// `G⁽ᵏ⁾`, `k ∈ {0, 1}`.
    Parity(u8),
    /// The Grassmann subalgebra `Λ_r` on the degenerate generators.
    Lambda,
    LambdaEven,
    LambdaOdd,
    /// The Jacobson radical: blades containing a degenerate generator.
    Rad,
    RadEven,
    RadOdd,
    /// `Z = Λ⁽⁰⁾ ⊕ Gⁿ` for odd `n`, `Λ⁽⁰⁾` for even `n`.
    Center,
    /// `S = G⁰ ⊕ Gⁿ` for odd `n`, `G⁰` for even `n`.
    S,
    /// `G⁰ ⊕ Gⁿ`.
    Grade0n,
    /// `G⁰ ⊕ rad`.
    G0plusRad,
    /// `G⁰ ⊕ rad G⁽⁰⁾`.
    G0plusRadEven,
    /// `G⁰ ⊕ Gⁿ ⊕ rad G⁽⁰⁾`.
    G0nPlusRadEven,
    /// `Λ ⊕ Gⁿ`.
    LambdaPlusGn,
    /// `Λ⁽⁰⁾ ⊕ Gⁿ`.
    LambdaEvenPlusGn,
    Full,
}

impl SubspaceKind {
    pub fn name(&self) -> alloc::string::String {
        match self {
            SubspaceKind::Grade(k) => format!("Grade({k})"),
            SubspaceKind::Parity(k) => format!("Parity({k})"),
            other => format!("{other:?}"),
        }
    }
}

/// A [`SubspaceKind`] bound to a signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceSpec {
    sig: Signature,
    kind: SubspaceKind,
}

impl SubspaceSpec {
    pub fn new(sig: Signature, kind: SubspaceKind) -> Result<Self> {
        match kind {
            SubspaceKind::Grade(k) if k > sig.n() => {
                return Err(Error::GradeOutOfRange { grade: k, n: sig.n() })
            }
            SubspaceKind::Parity(k) if k > 1 => {
                return Err(Error::Precondition(format!("parity must be 0 or 1, got {k}")))
            }
            _ => {}
        }
        Ok(SubspaceSpec { sig, kind })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn contains_blade(&self, b: Blade) -> bool {
        if !self.sig.contains_blade(b) {
            return false;
        }
        let m = b.mask();
        let null = self.sig.null_mask();
        let top = self.sig.pseudoscalar().mask();
        let n_odd = self.sig.n() % 2 == 1;
        let lambda = m & !null == 0;
        let rad = m & null != 0;
        let even = b.is_even();
        match self.kind {
            SubspaceKind::Grade(k) => b.grade() == k,
            SubspaceKind::Parity(k) => b.grade() % 2 == k as usize,
            SubspaceKind::Lambda => lambda,
            SubspaceKind::LambdaEven => lambda && even,
            SubspaceKind::LambdaOdd => lambda && !even,
            SubspaceKind::Rad => rad,
            SubspaceKind::RadEven => rad && even,
            SubspaceKind::RadOdd => rad && !even,
            SubspaceKind::Center => (lambda && even) || (n_odd && m == top),
            SubspaceKind::S => m == 0 || (n_odd && m == top),
            SubspaceKind::Grade0n => m == 0 || m == top,
            SubspaceKind::G0plusRad => m == 0 || rad,
            SubspaceKind::G0plusRadEven => m == 0 || (rad && even),
            SubspaceKind::G0nPlusRadEven => m == 0 || m == top || (rad && even),
            SubspaceKind::LambdaPlusGn => lambda || m == top,
            SubspaceKind::LambdaEvenPlusGn => (lambda && even) || m == top,
            SubspaceKind::Full => true,
        }
    }

    /// True iff every term blade of `u` satisfies the predicate.
    pub fn contains(&self, u: &Multivector) -> Result<bool> {
        if u.signature() != self.sig {
            return Err(Error::mismatch(self.sig, u.signature()));
        }
        Ok(u.blades().all(|b| self.contains_blade(b)))
    }

    /// Membership in the subspace together with invertibility, the exact
    /// meaning of a superscript `×`.
    pub fn contains_unit(&self, u: &Multivector) -> Result<bool> {
        Ok(self.contains(u)? && u.is_invertible())
    }

    /// Basis blades in ascending mask order.
    pub fn basis(&self) -> Vec<Blade> {
        self.sig.blades().filter(|b| self.contains_blade(*b)).collect()
    }

    pub fn dim(&self) -> usize {
        self.sig.blades().filter(|b| self.contains_blade(*b)).count()
    }

    /// Same blade basis, possibly under different names.
    pub fn same_span(&self, other: &SubspaceSpec) -> bool {
        self.sig == other.sig && self.sig.blades().all(|b| self.contains_blade(b) == other.contains_blade(b))
    }

    /// The simplest kind with the same span, used so that formula results
    /// read naturally in non-degenerate signatures (for example `Λ⁽⁰⁾₀ = G⁰`).
    pub fn canonical(&self) -> SubspaceSpec {
        const PREFERRED: [SubspaceKind; 12] = [
            SubspaceKind::Grade(0),
            SubspaceKind::Grade0n,
            SubspaceKind::S,
            SubspaceKind::Lambda,
            SubspaceKind::LambdaEven,
            SubspaceKind::LambdaPlusGn,
            SubspaceKind::LambdaEvenPlusGn,
            SubspaceKind::Center,
            SubspaceKind::G0plusRad,
            SubspaceKind::G0plusRadEven,
            SubspaceKind::G0nPlusRadEven,
            SubspaceKind::Full,
        ];
        PREFERRED
            .iter()
            .map(|&kind| SubspaceSpec { sig: self.sig, kind })
            .find(|s| s.same_span(self))
            .unwrap_or(*self)
    }
}

impl fmt::Display for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {}", self.kind.name(), self.sig)
    }
}

/// Which commutation relation a centralizer imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `X V = V X`.
    Plain,
    /// `X̂ V = V X`.
    Twisted,
}

/// The two adjoint actions of the unit group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `ad_T(U) = T U T⁻¹`.
    Ad,
    /// `ǎd_T(U) = T̂ U T⁻¹`.
    TwistedAd,
}

/// Computes `{X : X·V = V·X}` (or `X̂·V = V·X`) over the blade basis of
/// `generating` as an exact nullspace of the stacked `2ⁿ`-column system.
///
/// Only `Grade(1)` and `Parity(0)` are accepted as generating sets. The
/// result is a blade basis; a nullspace vector that is not a single blade
/// is reported as an error.
pub fn centralizer(constraint: Constraint, generating: &SubspaceSpec) -> Result<Vec<Blade>> {
    match generating.kind() {
        SubspaceKind::Grade(1) | SubspaceKind::Parity(0) => {}
        other => {
            return Err(Error::Unsupported(format!(
                "centralizer of {} (only Grade(1) and Parity(0))",
                other.name()
            )))
        }
    }
    let sig = generating.signature();
    let dim = sig.blade_count();
    let gens = generating.basis();
    let mut system = Matrix::zeros(dim * gens.len(), dim);
    for (k, v) in gens.iter().enumerate() {
        let vm = Multivector::blade(sig, *v)?;
        for j in 0..dim {
            let x = Multivector::blade(sig, Blade::from_mask(j as u16))?;
            let left = match constraint {
                Constraint::Plain => x.clone(),
                Constraint::Twisted => x.grade_involution(),
            };
            let image = (&left * &vm).try_sub(&(&vm * &x))?;
            for (b, s) in image.terms() {
                system.set(k * dim + b.mask() as usize, j, s.clone());
            }
        }
    }
    let mut out = Vec::new();
    for v in system.nullspace() {
        let support: Vec<usize> = (0..dim).filter(|&i| !v[i].is_zero()).collect();
        if support.len() != 1 || !v[support[0]].is_one() {
            return Err(Error::Precondition(format!(
                "commutant of {generating} is not blade-spanned"
            )));
        }
        out.push(Blade::from_mask(support[0] as u16));
    }
    out.sort();
    Ok(out)
}

/// The closed-form answer for [`centralizer`].
pub fn centralizer_formula(constraint: Constraint, generating: &SubspaceSpec) -> Result<SubspaceSpec> {
    let sig = generating.signature();
    let n_odd = sig.n() % 2 == 1;
    let kind = match (constraint, generating.kind()) {
        (Constraint::Plain, SubspaceKind::Grade(1)) => SubspaceKind::Center,
        (Constraint::Twisted, SubspaceKind::Grade(1)) => SubspaceKind::Lambda,
        (Constraint::Plain, SubspaceKind::Parity(0)) => SubspaceKind::LambdaPlusGn,
        (Constraint::Twisted, SubspaceKind::Parity(0)) if n_odd => SubspaceKind::LambdaEven,
        (Constraint::Twisted, SubspaceKind::Parity(0)) => SubspaceKind::LambdaEvenPlusGn,
        (_, other) => {
            return Err(Error::Unsupported(format!(
                "centralizer of {} (only Grade(1) and Parity(0))",
                other.name()
            )))
        }
    };
    SubspaceSpec::new(sig, kind)
}

/// The subspace whose units form the kernel of the representation:
/// `ker ad = (Λ⁽⁰⁾ ⊕ Gⁿ)×` for odd `n`, `Λ⁽⁰⁾×` for even `n`, and
/// `ker ǎd = Λ⁽⁰⁾×`.
pub fn kernel_spec(rep: Representation, sig: Signature) -> SubspaceSpec {
    let kind = match rep {
        Representation::Ad if sig.n() % 2 == 1 => SubspaceKind::LambdaEvenPlusGn,
        _ => SubspaceKind::LambdaEven,
    };
    SubspaceSpec { sig, kind }.canonical()
}

/// Checks `x̂ (U₁⋯U_m) = (U₁⋯U_m) x` for each sampled product of an odd
/// number of pure-parity factors, each of which satisfies `x̂ U = U x`.
pub fn odd_product_property_check(x: &Multivector, samples: &[Vec<Multivector>]) -> Result<bool> {
    let sig = x.signature();
    if !SubspaceSpec::new(sig, SubspaceKind::Lambda)?.contains(x)? {
        return Err(Error::Precondition(format!("{x} is not in the Grassmann subalgebra")));
    }
    let xh = x.grade_involution();
    let mut all = true;
    for factors in samples {
        if factors.len() % 2 == 0 {
            return Err(Error::Precondition(format!(
                "product of {} factors; need an odd count",
                factors.len()
            )));
        }
        let mut prod = Multivector::one(sig);
        for u in factors {
            if u.parity().is_none() {
                return Err(Error::Precondition(format!("factor {u} has mixed parity")));
            }
            if xh.geometric_product(u)? != u.geometric_product(x)? {
                return Err(Error::Precondition(format!("factor {u} violates x̂U = Ux")));
            }
            prod = prod.geometric_product(u)?;
        }
        all &= xh.geometric_product(&prod)? == prod.geometric_product(x)?;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn spec(p: usize, q: usize, r: usize, kind: SubspaceKind) -> SubspaceSpec {
        SubspaceSpec::new(Signature::new(p, q, r).unwrap(), kind).unwrap()
    }

    fn names(blades: &[Blade]) -> Vec<alloc::string::String> {
        blades.iter().map(|b| format!("{b:?}")).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(names(&spec(0, 0, 3, SubspaceKind::Parity(0)).basis()), ["e", "e12", "e13", "e23"]);
        assert_eq!(names(&spec(1, 1, 1, SubspaceKind::Lambda).basis()), ["e", "e3"]);
        assert_eq!(
            names(&spec(0, 0, 3, SubspaceKind::Center).basis()),
            ["e", "e12", "e13", "e23", "e123"]
        );
    }

    #[test]
    fn membership_examples() {
        let g = Signature::new(0, 0, 2).unwrap();
        let z = SubspaceSpec::new(g, SubspaceKind::Center).unwrap();
        assert!(z.contains(&parse("e12", g).unwrap()).unwrap());
        let g = Signature::new(1, 0, 1).unwrap();
        let rad = SubspaceSpec::new(g, SubspaceKind::Rad).unwrap();
        assert!(!rad.contains(&parse("e1", g).unwrap()).unwrap());
        let lam = SubspaceSpec::new(g, SubspaceKind::Lambda).unwrap();
        assert!(lam.contains(&parse("e2", g).unwrap()).unwrap());
        let other = Signature::new(2, 0, 0).unwrap();
        assert!(lam.contains(&parse("e2", other).unwrap()).is_err());
    }

    #[test]
    fn kernel_formulas_canonicalize() {
        let g = Signature::new(0, 0, 3).unwrap();
        assert_eq!(kernel_spec(Representation::Ad, g).kind(), SubspaceKind::LambdaEvenPlusGn);
        let g = Signature::new(2, 1, 0).unwrap();
        assert_eq!(kernel_spec(Representation::TwistedAd, g).kind(), SubspaceKind::Grade(0));
        let g = Signature::new(1, 1, 0).unwrap();
        assert_eq!(kernel_spec(Representation::Ad, g).kind(), SubspaceKind::Grade(0));
    }

    #[test]
    fn centralizer_examples() {
        let g = Signature::new(1, 0, 2).unwrap();
        let even = SubspaceSpec::new(g, SubspaceKind::Parity(0)).unwrap();
        let got = centralizer(Constraint::Plain, &even).unwrap();
        assert_eq!(got, SubspaceSpec::new(g, SubspaceKind::LambdaPlusGn).unwrap().basis());
        let g = Signature::new(0, 0, 2).unwrap();
        let even = SubspaceSpec::new(g, SubspaceKind::Parity(0)).unwrap();
        let got = centralizer(Constraint::Twisted, &even).unwrap();
        assert_eq!(got, SubspaceSpec::new(g, SubspaceKind::LambdaEvenPlusGn).unwrap().basis());
        let g = Signature::new(1, 1, 1).unwrap();
        let vectors = SubspaceSpec::new(g, SubspaceKind::Grade(1)).unwrap();
        let got = centralizer(Constraint::Twisted, &vectors).unwrap();
        assert_eq!(got, SubspaceSpec::new(g, SubspaceKind::Lambda).unwrap().basis());
        let bad = SubspaceSpec::new(g, SubspaceKind::Grade(2)).unwrap();
        assert!(centralizer(Constraint::Plain, &bad).is_err());
    }

    #[test]
    fn odd_products() {
        let g = Signature::new(0, 0, 3).unwrap();
        let x = parse("e3", g).unwrap();
        let e1 = parse("e1", g).unwrap();
        let e2 = parse("e2", g).unwrap();
        assert!(odd_product_property_check(&x, &[alloc::vec![e1.clone()]]).unwrap());
        assert!(odd_product_property_check(&x, &[alloc::vec![e1.clone(), e2.clone(), e1.clone()]]).unwrap());
        assert!(odd_product_property_check(&x, &[alloc::vec![e1.clone(), e2]]).is_err());
        let g = Signature::new(1, 0, 1).unwrap();
        assert!(odd_product_property_check(&parse("e1", g).unwrap(), &[]).is_err());
    }
}
