//! Lie algebras of the P-family groups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::group::GroupId;
use crate::sample::{self, SampleConfig};
use crate::{Blade, Error, Multivector, Result, Scalar, Signature, SubspaceSpec};

/// A blade-spanned Lie algebra attached to a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    pub group: GroupId,
    pub sig: Signature,
    pub basis: Vec<Blade>,
}

impl LieAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_blade(&self, b: Blade) -> bool {
        self.basis.binary_search(&b).is_ok()
    }

    pub fn contains(&self, u: &Multivector) -> bool {
        u.signature() == self.sig && u.blades().all(|b| self.contains_blade(b))
    }
}

/// Blade predicate for each algebra:
///
/// | group | algebra |
/// |---|---|
/// | `P±` | `G⁽⁰⁾` |
/// | `P±Λ` | `G⁽⁰⁾ ⊕ Λ⁽¹⁾` |
/// | `P±rad` | `G⁽⁰⁾ ⊕ rad G⁽¹⁾` |
/// | `P` | `G⁽⁰⁾ ⊕ Gⁿ` (odd `n`), `G⁽⁰⁾` (even `n`) |
/// | `PΛ` | `G⁽⁰⁾ ⊕ Λ⁽¹⁾ ⊕ Gⁿ` (odd `n ≠ r`), `G⁽⁰⁾ ⊕ Λ⁽¹⁾` otherwise |
///
/// [`GroupId::FullUnits`] gets the whole algebra. Other ids are rejected;
/// resolve them with [`resolve_gamma`] first.
pub fn lie_algebra_of(group: GroupId, sig: Signature) -> Result<LieAlgebraSpec> {
    let n = sig.n();
    let null = sig.null_mask();
    let top = sig.pseudoscalar().mask();
    let n_odd = n % 2 == 1;
    let keep = |b: Blade| -> bool {
        let even = b.is_even();
        let lambda_odd = !even && b.mask() & !null == 0;
        let rad_odd = !even && b.mask() & null != 0;
        let is_top = b.mask() == top;
        match group {
            GroupId::Ppm => even,
            GroupId::PpmLambda => even || lambda_odd,
            GroupId::PpmRad => even || rad_odd,
            GroupId::P => even || (n_odd && is_top),
            GroupId::PLambda => even || lambda_odd || (n_odd && n != sig.r() && is_top),
            _ => true,
        }
    };
    if !group.is_p_family() && group != GroupId::FullUnits {
        return Err(Error::Unsupported(format!(
            "{group} has no direct Lie algebra; resolve it to a P-family group first"
        )));
    }
    Ok(LieAlgebraSpec {
        group,
        sig,
        basis: sig.blades().filter(|b| keep(*b)).collect(),
    })
}

/// The group a preservation group is identified with, whose algebra it
/// shares.
pub fn resolve_gamma(group: GroupId, sig: Signature) -> GroupId {
    group.identification(sig)
}

/// Closed-form dimensions, independent of [`lie_algebra_of`].
pub fn formula_dimension(group: GroupId, sig: Signature) -> Option<usize> {
    let (n, r, pq) = (sig.n(), sig.r(), sig.p() + sig.q());
    let half = 1usize << (n - 1);
    let lambda_odd = if r >= 1 { 1usize << (r - 1) } else { 0 };
    let odd = n % 2 == 1;
    Some(match group {
        GroupId::Ppm => half,
        GroupId::PpmLambda => half + lambda_odd,
        GroupId::PpmRad if pq >= 1 => (1 << n) - (1 << (pq - 1)),
        GroupId::PpmRad => 1 << n,
        GroupId::P => half + odd as usize,
        GroupId::PLambda if odd && n != r && r >= 1 => half + lambda_odd + 1,
        GroupId::PLambda if odd && r == 0 => half + 1,
        GroupId::PLambda if !odd && r == 0 => half,
        GroupId::PLambda => half + lambda_odd,
        GroupId::FullUnits => 1 << n,
        _ => return None,
    })
}

/// The first pair of basis blades whose commutator leaves the algebra.
pub fn closure_violation(alg: &LieAlgebraSpec) -> Option<(Blade, Blade, Multivector)> {
    let sig = alg.sig;
    let metric = sig.metric();
    for (i, &a) in alg.basis.iter().enumerate() {
        for &b in &alg.basis[i + 1..] {
            // Blades either commute or anticommute, so [a, b] is 0 or 2ab.
            let Some((neg_ab, c)) = metric.product(a, b) else {
                continue;
            };
            let (neg_ba, _) = metric.product(b, a).expect("same support");
            if neg_ab == neg_ba || alg.contains_blade(c) {
                continue;
            }
            let sa = Multivector::blade(sig, a).ok()?;
            let sb = Multivector::blade(sig, b).ok()?;
            return Some((a, b, sa.commutator(&sb).ok()?));
        }
    }
    None
}

/// Exhaustive check that `[b, b']` stays in the span for every basis pair,
/// computed with full multivector commutators.
pub fn check_commutator_closure(alg: &LieAlgebraSpec) -> bool {
    let blades: Vec<Multivector> = alg
        .basis
        .iter()
        .map(|b| Multivector::blade(alg.sig, *b).expect("basis blade"))
        .collect();
    for (i, a) in blades.iter().enumerate() {
        for b in &blades[i + 1..] {
            let c = a.commutator(b).expect("same signature");
            if !alg.contains(&c) {
                return false;
            }
        }
    }
    true
}

/// `exp(x)` as an exact finite series, or `None` if `x` is not nilpotent.
pub fn exp_nilpotent(x: &Multivector) -> Option<Multivector> {
    let sig = x.signature();
    let mut term = Multivector::one(sig);
    let mut sum = Multivector::one(sig);
    for k in 1..=sig.blade_count() as i64 + 1 {
        term = (&term * x).scale(&Scalar::from_ratio(1, k));
        if term.is_zero() {
            return Some(sum);
        }
        sum = &sum + &term;
    }
    None
}

/// `a + εb` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub a: Multivector,
    pub b: Multivector,
}

impl Dual {
    pub fn new(a: Multivector, b: Multivector) -> Self {
        Dual { a, b }
    }

    pub fn mul(&self, other: &Dual) -> Dual {
        Dual {
            a: &self.a * &other.a,
            b: &(&self.a * &other.b) + &(&self.b * &other.a),
        }
    }

    pub fn grade_involution(&self) -> Dual {
        Dual {
            a: self.a.grade_involution(),
            b: self.b.grade_involution(),
        }
    }

    /// `(a + εb)⁻¹ = a⁻¹ − ε a⁻¹ b a⁻¹`.
    pub fn inverse(&self) -> Option<Dual> {
        let ai = self.a.inverse()?;
        let b = -&(&(&ai * &self.b) * &ai);
        Some(Dual { a: ai, b })
    }
}

/// A dense floating-point multivector, used only for the numeric tangency
/// stage.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseF64 {
    sig: Signature,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl DenseF64 {
    pub fn from_exact(u: &Multivector) -> Self {
        let sig = u.signature();
        let mut out = DenseF64::zero(sig);
        for (b, s) in u.terms() {
            let (re, im) = s.to_f64_pair();
            out.re[b.mask() as usize] = re;
            out.im[b.mask() as usize] = im;
        }
        out
    }

    pub fn zero(sig: Signature) -> Self {
        DenseF64 {
            sig,
            re: vec![0.0; sig.blade_count()],
            im: vec![0.0; sig.blade_count()],
        }
    }

    pub fn one(sig: Signature) -> Self {
        let mut out = DenseF64::zero(sig);
        out.re[0] = 1.0;
        out
    }

    pub fn coeff(&self, b: Blade) -> (f64, f64) {
        (self.re[b.mask() as usize], self.im[b.mask() as usize])
    }

    pub fn max_abs(&self) -> f64 {
        self.re.iter().chain(&self.im).fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        DenseF64 {
            sig: self.sig,
            re: self.re.iter().map(|v| v * s).collect(),
            im: self.im.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &DenseF64) -> Self {
        DenseF64 {
            sig: self.sig,
            re: self.re.iter().zip(&other.re).map(|(a, b)| a + b).collect(),
            im: self.im.iter().zip(&other.im).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &DenseF64) -> Self {
        let metric = self.sig.metric();
        let mut out = DenseF64::zero(self.sig);
        for i in 0..self.re.len() {
            let (ar, ai) = (self.re[i], self.im[i]);
            if ar == 0.0 && ai == 0.0 {
                continue;
            }
            for j in 0..other.re.len() {
                let (br, bi) = (other.re[j], other.im[j]);
                if br == 0.0 && bi == 0.0 {
                    continue;
                }
                let Some((neg, c)) = metric.product(Blade::from_mask(i as u16), Blade::from_mask(j as u16)) else {
                    continue;
                };
                let sign = if neg { -1.0 } else { 1.0 };
                let k = c.mask() as usize;
                out.re[k] += sign * (ar * br - ai * bi);
                out.im[k] += sign * (ar * bi + ai * br);
            }
        }
        out
    }

    pub fn grade_involution(&self) -> Self {
        let mut out = self.clone();
        for i in 0..out.re.len() {
            if !Blade::from_mask(i as u16).is_even() {
                out.re[i] = -out.re[i];
                out.im[i] = -out.im[i];
            }
        }
        out
    }

    /// `exp` by scaling and squaring: a 30-term series on `x / 2ᵏ` with `k`
    /// the smallest value making the largest coefficient below `1/2`.
    pub fn exp(&self) -> Self {
        let mut k = 0u32;
        let mut factor = 1.0;
        let m = self.max_abs();
        while m * factor >= 0.5 && k < 64 {
            k += 1;
            factor *= 0.5;
        }
        let y = self.scale(factor);
        let mut term = DenseF64::one(self.sig);
        let mut sum = DenseF64::one(self.sig);
        for j in 1..=30 {
            term = term.mul(&y).scale(1.0 / f64::from(j));
            sum = sum.add(&term);
        }
        for _ in 0..k {
            sum = sum.mul(&sum);
        }
        sum
    }
}

/// Outcome of [`check_tangency`].
#[derive(Clone, Debug, PartialEq)]
pub struct TangencyReport {
    pub checked: usize,
    /// Sampled `X` whose first-order witness left the target.
    pub exact_failures: Vec<Multivector>,
    /// Sampled `X` whose numeric witness had a residual above tolerance.
    pub numeric_failures: Vec<Multivector>,
    pub max_residual: f64,
}

impl TangencyReport {
    pub fn passed(&self) -> bool {
        self.exact_failures.is_empty() && self.numeric_failures.is_empty()
    }
}

/// Largest coefficient of `w` outside `target`.
fn residual(w: &DenseF64, target: &SubspaceSpec) -> f64 {
    target
        .signature()
        .blades()
        .filter(|b| !target.contains_blade(*b))
        .map(|b| {
            let (re, im) = w.coeff(b);
            re.abs().max(im.abs())
        })
        .fold(0.0, f64::max)
}

/// Samples `X` from the algebra and checks that it is tangent to the group:
///
/// * exactly, `ĥ((e+εX)⁻¹)(e+εX)` is in the group's target modulo `ε²`;
/// * numerically, `ĥ(exp(X)⁻¹) exp(X)` is in the target up to `tolerance`.
///
/// For the numeric stage `X` is divided by `1 + ‖X‖₁` so that the
/// exponential stays of moderate size and rounding stays near machine
/// precision.
pub fn check_tangency<R: Rng + ?Sized>(
    alg: &LieAlgebraSpec,
    rng: &mut R,
    samples: usize,
    tolerance: f64,
    cfg: SampleConfig,
) -> Result<TangencyReport> {
    if !(tolerance > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tolerance}")));
    }
    let sig = alg.sig;
    let target = match alg.group {
        GroupId::FullUnits => SubspaceSpec::new(sig, crate::SubspaceKind::Full)?,
        g => g.target(sig).ok_or_else(|| Error::Unsupported(format!("{g} has no target")))?,
    };
    let mut report = TangencyReport {
        checked: 0,
        exact_failures: Vec::new(),
        numeric_failures: Vec::new(),
        max_residual: 0.0,
    };
    for _ in 0..samples {
        let x = sample::random_with(sig, rng, cfg.coeff_bound, |b| alg.contains_blade(b));
        report.checked += 1;

        let t = Dual::new(Multivector::one(sig), x.clone());
        let w = t.inverse().expect("e + εX is a unit").grade_involution().mul(&t);
        if !(target.contains(&w.a)? && target.contains(&w.b)?) {
            report.exact_failures.push(x.clone());
        }

        let l1: f64 = x.terms().map(|(_, s)| {
            let (re, im) = s.to_f64_pair();
            re.abs() + im.abs()
        }).sum();
        let xf = DenseF64::from_exact(&x).scale(1.0 / (1.0 + l1));
        let g = xf.exp();
        let ginv_hat = xf.scale(-1.0).grade_involution().exp();
        let res = residual(&ginv_hat.mul(&g), &target);
        if !(res < tolerance) {
            report.numeric_failures.push(x);
        }
        report.max_residual = report.max_residual.max(res);
    }
    Ok(report)
}

/// Exact tangency for one element: the dual-number witness of `e + εX`.
pub fn first_order_witness(x: &Multivector) -> Dual {
    let t = Dual::new(Multivector::one(x.signature()), x.clone());
    t.inverse().expect("e + εX is a unit").grade_involution().mul(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{group, parse};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sig(p: usize, q: usize, r: usize) -> Signature {
        Signature::new(p, q, r).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(lie_algebra_of(GroupId::Ppm, sig(0, 0, 3)).unwrap().dim(), 4);
        assert_eq!(lie_algebra_of(GroupId::PpmRad, sig(1, 0, 1)).unwrap().dim(), 3);
        assert_eq!(lie_algebra_of(GroupId::PLambda, sig(1, 0, 2)).unwrap().dim(), 7);
        assert_eq!(formula_dimension(GroupId::PLambda, sig(1, 0, 2)), Some(7));
        assert!(lie_algebra_of(GroupId::Gamma0, sig(1, 0, 0)).is_err());
        let resolved = resolve_gamma(GroupId::GammaCheck0n, sig(1, 0, 2));
        assert_eq!(resolved, GroupId::P);
    }

    #[test]
    fn closure_examples() {
        for g in GroupId::P_FAMILY {
            let alg = lie_algebra_of(g, sig(1, 0, 2)).unwrap();
            assert!(check_commutator_closure(&alg));
            assert_eq!(closure_violation(&alg), None);
        }
        // The odd generators alone do not close.
        let bogus = LieAlgebraSpec {
            group: GroupId::Ppm,
            sig: sig(2, 0, 0),
            basis: vec![Blade::from_mask(1), Blade::from_mask(2)],
        };
        assert!(!check_commutator_closure(&bogus));
        assert!(closure_violation(&bogus).is_some());
    }

    #[test]
    fn nilpotent_exponentials() {
        let g = sig(0, 0, 3);
        let x = parse("e3", g).unwrap();
        let t = exp_nilpotent(&x).unwrap();
        assert_eq!(t, parse("e + e3", g).unwrap());
        assert!(group::member(GroupId::PpmLambda, &t).member);
        let t = exp_nilpotent(&parse("e123", g).unwrap()).unwrap();
        assert_eq!(t, parse("e + e123", g).unwrap());
        assert!(group::member(GroupId::P, &t).member);
        assert_eq!(exp_nilpotent(&parse("e1", sig(1, 0, 0)).unwrap()), None);
    }

    #[test]
    fn numeric_exp_of_rotation_generator() {
        let g = sig(2, 0, 0);
        let x = DenseF64::from_exact(&parse("e12", g).unwrap()).scale(0.75);
        let r = x.exp();
        // e12² = −1, so exp(θ e12) = cos θ + sin θ e12.
        assert!((r.coeff(Blade::IDENTITY).0 - 0.75f64.cos()).abs() < 1e-12);
        assert!((r.coeff(Blade::from_mask(3)).0 - 0.75f64.sin()).abs() < 1e-12);
        assert!(r.coeff(Blade::from_mask(1)).0 == 0.0);
    }

    #[test]
    fn tangency_passes_for_each_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in [sig(0, 0, 3), sig(1, 0, 2), sig(1, 1, 0)] {
            for g in GroupId::P_FAMILY {
                let alg = lie_algebra_of(g, s).unwrap();
                let rep = check_tangency(&alg, &mut rng, 10, 1e-9, SampleConfig::default()).unwrap();
                assert!(rep.passed(), "{g} on {s}: {rep:?}");
            }
        }
        let alg = lie_algebra_of(GroupId::Ppm, sig(1, 0, 0)).unwrap();
        assert!(check_tangency(&alg, &mut rng, 1, 0.0, SampleConfig::default()).is_err());
    }

    #[test]
    fn tangency_detects_wrong_algebra() {
        // Odd vectors are not tangent to P± in G(1,1,0).
        let s = sig(1, 1, 0);
        let alg = LieAlgebraSpec {
            group: GroupId::Ppm,
            sig: s,
            basis: s.blades().collect(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rep = check_tangency(&alg, &mut rng, 10, 1e-9, SampleConfig::default()).unwrap();
        assert!(!rep.passed());
    }
}
