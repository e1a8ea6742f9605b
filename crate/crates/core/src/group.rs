//! Membership in the groups `P±`, `P`, `P±Λ`, `PΛ`, `P±rad` and in the
//! subspace-preserving groups `Γ`, `Γ̌`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::sample::{self, SampleConfig};
use crate::subspace::{Representation, SubspaceKind, SubspaceSpec};
use crate::{Blade, Error, Multivector, Result, Signature};

/// A group of units of `G(p,q,r)`. The signature comes from the element
/// being tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    /// `P± = G⁽⁰⁾× ∪ G⁽¹⁾×`.
    Ppm,
    /// `P = P± Z×`.
    P,
    /// `P±Λ = P± Λ×`.
    PpmLambda,
    /// `PΛ = P Λ×`.
    PLambda,
    /// `P±rad = P± (G⁰ ⊕ rad)×`.
    PpmRad,
    /// `Γ⁽ᵏ⁾`: units with `T G⁽ᵏ⁾ T⁻¹ ⊆ G⁽ᵏ⁾`.
    GammaParity(u8),
    /// `Γ̌⁽ᵏ⁾`: units with `T̂ G⁽ᵏ⁾ T⁻¹ ⊆ G⁽ᵏ⁾`.
    GammaCheckParity(u8),
    Gamma0,
    GammaN,
    Gamma0n,
    GammaCheck0,
    GammaCheckN,
    GammaCheck0n,
    /// All of `G×`.
    FullUnits,
}

impl GroupId {
    pub const P_FAMILY: [GroupId; 5] = [
        GroupId::Ppm,
        GroupId::P,
        GroupId::PpmLambda,
        GroupId::PLambda,
        GroupId::PpmRad,
    ];

    pub const GAMMA_FAMILY: [GroupId; 10] = [
        GroupId::GammaParity(0),
        GroupId::GammaParity(1),
        GroupId::GammaCheckParity(0),
        GroupId::GammaCheckParity(1),
        GroupId::Gamma0,
        GroupId::GammaN,
        GroupId::Gamma0n,
        GroupId::GammaCheck0,
        GroupId::GammaCheckN,
        GroupId::GammaCheck0n,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GroupId::Ppm => "P_pm",
            GroupId::P => "P",
            GroupId::PpmLambda => "P_pm_Lambda",
            GroupId::PLambda => "P_Lambda",
            GroupId::PpmRad => "P_pm_rad",
            GroupId::GammaParity(0) => "Gamma_even",
            GroupId::GammaParity(_) => "Gamma_odd",
            GroupId::GammaCheckParity(0) => "Gamma_check_even",
            GroupId::GammaCheckParity(_) => "Gamma_check_odd",
            GroupId::Gamma0 => "Gamma_0",
            GroupId::GammaN => "Gamma_n",
            GroupId::Gamma0n => "Gamma_0n",
            GroupId::GammaCheck0 => "Gamma_check_0",
            GroupId::GammaCheckN => "Gamma_check_n",
            GroupId::GammaCheck0n => "Gamma_check_0n",
            GroupId::FullUnits => "units",
        }
    }

    pub fn is_p_family(&self) -> bool {
        GroupId::P_FAMILY.contains(self)
    }

    pub fn is_gamma_family(&self) -> bool {
        GroupId::GAMMA_FAMILY.contains(self)
    }

    /// Parses a group name, additionally mapping `Gamma_k`/`Gamma_check_k`
    /// with `k = n` to the top-grade groups of `sig`.
    pub fn parse_in(name: &str, sig: Signature) -> Result<GroupId> {
        let numeric = name
            .strip_prefix("Gamma_check_")
            .map(|k| (true, k))
            .or_else(|| name.strip_prefix("Gamma_").map(|k| (false, k)));
        if let Some((check, k)) = numeric {
            if let Ok(k) = k.parse::<usize>() {
                if k == sig.n() && k != 0 {
                    return Ok(if check { GroupId::GammaCheckN } else { GroupId::GammaN });
                }
            }
        }
        name.parse()
    }

    /// For `Γ`-type groups, the representation and the preserved subspace.
    pub fn preservation(&self, sig: Signature) -> Option<(Representation, SubspaceSpec)> {
        use Representation::{Ad, TwistedAd};
        let (rep, kind) = match *self {
            GroupId::GammaParity(k) => (Ad, SubspaceKind::Parity(k)),
            GroupId::GammaCheckParity(k) => (TwistedAd, SubspaceKind::Parity(k)),
            GroupId::Gamma0 => (Ad, SubspaceKind::Grade(0)),
            GroupId::GammaN => (Ad, SubspaceKind::Grade(sig.n())),
            GroupId::Gamma0n => (Ad, SubspaceKind::Grade0n),
            GroupId::GammaCheck0 => (TwistedAd, SubspaceKind::Grade(0)),
            GroupId::GammaCheckN => (TwistedAd, SubspaceKind::Grade(sig.n())),
            GroupId::GammaCheck0n => (TwistedAd, SubspaceKind::Grade0n),
            _ => return None,
        };
        Some((rep, SubspaceSpec::new(sig, kind).ok()?))
    }

    /// The membership target of a P-family group: `T` is a member iff
    /// `ĥ(T⁻¹)·T` lies in this subspace. (That element is always invertible,
    /// with inverse `T⁻¹·T̂`.)
    pub fn target(&self, sig: Signature) -> Option<SubspaceSpec> {
        let kind = match self {
            GroupId::Ppm => SubspaceKind::Grade(0),
            GroupId::P => SubspaceKind::S,
            GroupId::PpmLambda => SubspaceKind::Lambda,
            GroupId::PLambda => SubspaceKind::LambdaPlusGn,
            GroupId::PpmRad => SubspaceKind::G0plusRad,
            _ => return None,
        };
        SubspaceSpec::new(sig, kind).ok()
    }

    /// The smallest known target; equal canonical targets mean equal groups.
    pub fn canonical_target(&self, sig: Signature) -> Option<SubspaceSpec> {
        let even = sig.n() % 2 == 0;
        let spec = match self {
            GroupId::PLambda if even => SubspaceSpec::new(sig, SubspaceKind::Lambda).ok()?,
            other => other.target(sig)?,
        };
        Some(spec.canonical())
    }

    /// Every equivalent target from the characterization theorems,
    /// including the parity-split forms. Any of them decides membership.
    pub fn alternative_targets(&self, sig: Signature) -> Vec<SubspaceSpec> {
        use SubspaceKind::*;
        let odd = sig.n() % 2 == 1;
        let kinds: Vec<SubspaceKind> = match self {
            GroupId::Ppm => vec![
                Grade(0),
                LambdaEven,
                G0plusRadEven,
                if odd { G0plusRadEven } else { G0nPlusRadEven },
            ],
            GroupId::P => vec![
                S,
                if odd { LambdaEvenPlusGn } else { LambdaEven },
                G0nPlusRadEven,
                if odd { G0nPlusRadEven } else { G0plusRadEven },
            ],
            GroupId::PpmLambda => vec![Lambda, if odd { Lambda } else { LambdaPlusGn }],
            GroupId::PLambda => vec![LambdaPlusGn, if odd { LambdaPlusGn } else { Lambda }],
            GroupId::PpmRad => vec![G0plusRad],
            _ => vec![],
        };
        kinds
            .into_iter()
            .filter_map(|k| SubspaceSpec::new(sig, k).ok())
            .collect()
    }

    /// The group this one equals by the parity, grade-0/n and grade-0n
    /// theorems: a P-family id or [`GroupId::FullUnits`]. P-family ids map
    /// to themselves.
    pub fn identification(&self, sig: Signature) -> GroupId {
        let odd = sig.n() % 2 == 1;
        match *self {
            GroupId::GammaParity(1) => GroupId::P,
            GroupId::GammaParity(_) => GroupId::PLambda,
            GroupId::GammaCheckParity(0) => GroupId::Ppm,
            GroupId::GammaCheckParity(_) => GroupId::PpmLambda,
            GroupId::Gamma0 => GroupId::FullUnits,
            GroupId::GammaN | GroupId::Gamma0n if odd => GroupId::FullUnits,
            GroupId::GammaN | GroupId::Gamma0n => GroupId::PpmRad,
            GroupId::GammaCheck0 => GroupId::Ppm,
            GroupId::GammaCheckN if odd => GroupId::PpmRad,
            GroupId::GammaCheckN => GroupId::FullUnits,
            GroupId::GammaCheck0n => GroupId::P,
            other => other,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = GroupId::P_FAMILY
            .iter()
            .chain(GroupId::GAMMA_FAMILY.iter())
            .chain(core::iter::once(&GroupId::FullUnits));
        if let Some(g) = all.clone().find(|g| g.name() == s) {
            return Ok(*g);
        }
        let single_grade = s
            .strip_prefix("Gamma_check_")
            .or_else(|| s.strip_prefix("Gamma_"))
            .is_some_and(|k| k.parse::<usize>().is_ok_and(|k| k >= 1));
        if single_grade {
            return Err(Error::Unsupported(format!(
                "{s}: single-grade preservation groups for 1 <= k <= n-1 are not supported \
                 (use Gamma_n / Gamma_check_n for the top grade, or the `counterexample` command)"
            )));
        }
        let names: Vec<&str> = all.map(|g| g.name()).collect();
        Err(Error::Precondition(format!(
            "unknown group {s:?}; expected one of {}",
            names.join(", ")
        )))
    }
}

/// A unit with its inverse and grade involute cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    t: Multivector,
    inv: Multivector,
    hat: Multivector,
}

impl Unit {
    pub fn new(t: Multivector) -> Option<Unit> {
        let inv = t.inverse()?;
        let hat = t.grade_involution();
        Some(Unit { t, inv, hat })
    }

    pub fn element(&self) -> &Multivector {
        &self.t
    }

    pub fn inverse(&self) -> &Multivector {
        &self.inv
    }

    pub fn conjugate(&self, rep: Representation, u: &Multivector) -> Result<Multivector> {
        let left = match rep {
            Representation::Ad => &self.t,
            Representation::TwistedAd => &self.hat,
        };
        left.geometric_product(u)?.geometric_product(&self.inv)
    }

    /// `ĥ(T⁻¹)·T`.
    pub fn twisted_quotient(&self) -> Multivector {
        &self.inv.grade_involution() * &self.t
    }

    /// The first basis blade of `spec` (ascending mask order) that the
    /// representation moves out of `spec`, with its image.
    pub fn first_violation(&self, rep: Representation, spec: &SubspaceSpec) -> Result<Option<(Blade, Multivector)>> {
        let sig = self.t.signature();
        for b in spec.basis() {
            let image = self.conjugate(rep, &Multivector::blade(sig, b)?)?;
            if !spec.contains(&image)? {
                return Ok(Some((b, image)));
            }
        }
        Ok(None)
    }
}

/// `T U T⁻¹` or `T̂ U T⁻¹`.
pub fn adjoint_conjugate(rep: Representation, t: &Multivector, u: &Multivector) -> Result<Multivector> {
    if t.signature() != u.signature() {
        return Err(Error::SignatureMismatch {
            left: t.signature(),
            right: u.signature(),
        });
    }
    Unit::new(t.clone()).ok_or(Error::NotInvertible)?.conjugate(rep, u)
}

/// Evidence attached to a membership decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The computed `ĥ(T⁻¹)·T`.
    Twisted(Multivector),
    /// A basis blade of the preserved subspace and its image.
    Conjugation { blade: Blade, image: Multivector },
    NotInvertible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub group: GroupId,
    pub element: Multivector,
    pub member: bool,
    /// Always present for P-family queries and for non-members; `None` for
    /// a `Γ` member or a unit queried against [`GroupId::FullUnits`].
    pub witness: Option<Witness>,
}

/// Decides membership of `t` in any group. Non-invertible input is a
/// non-member with [`Witness::NotInvertible`].
pub fn member(group: GroupId, t: &Multivector) -> MembershipReport {
    match Unit::new(t.clone()) {
        Some(u) => member_unit(group, &u),
        None => MembershipReport {
            group,
            element: t.clone(),
            member: false,
            witness: Some(Witness::NotInvertible),
        },
    }
}

/// [`member`] for an already-inverted element.
pub fn member_unit(group: GroupId, unit: &Unit) -> MembershipReport {
    let sig = unit.element().signature();
    let (member, witness) = if let Some(target) = group.target(sig) {
        let w = unit.twisted_quotient();
        (target.contains(&w).expect("same signature"), Some(Witness::Twisted(w)))
    } else if let Some((rep, spec)) = group.preservation(sig) {
        match unit.first_violation(rep, &spec).expect("same signature") {
            None => (true, None),
            Some((blade, image)) => (false, Some(Witness::Conjugation { blade, image })),
        }
    } else {
        (true, None)
    };
    MembershipReport {
        group,
        element: unit.element().clone(),
        member,
        witness,
    }
}

/// Membership by an explicit target instead of the group's default one.
pub fn member_by_target(unit: &Unit, target: &SubspaceSpec) -> Result<bool> {
    target.contains(&unit.twisted_quotient())
}

pub fn p_family_member(group: GroupId, t: &Multivector) -> Result<MembershipReport> {
    if !group.is_p_family() {
        return Err(Error::Unsupported(format!("{group} is not a P-family group")));
    }
    Ok(member(group, t))
}

pub fn gamma_member(group: GroupId, t: &Multivector) -> Result<MembershipReport> {
    if !group.is_gamma_family() {
        return Err(Error::Unsupported(format!("{group} is not a preservation group")));
    }
    Ok(member(group, t))
}

/// Does `T Gᵏ T⁻¹ ⊆ Gᵏ` (or the twisted version) hold? Returns the first
/// violating blade and its image, if any.
pub fn grade_violation(rep: Representation, unit: &Unit, k: usize) -> Result<Option<(Blade, Multivector)>> {
    let spec = SubspaceSpec::new(unit.element().signature(), SubspaceKind::Grade(k))?;
    unit.first_violation(rep, &spec)
}

/// One single-grade preservation fact for `T = e + e1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeFact {
    pub rep: Representation,
    pub grade: usize,
    pub expected: bool,
    pub preserved: bool,
    pub witness: Option<(Blade, Multivector)>,
}

impl GradeFact {
    pub fn label(&self) -> String {
        let name = match self.rep {
            Representation::Ad => "Gamma",
            Representation::TwistedAd => "Gamma_check",
        };
        let rel = if self.preserved { "in" } else { "not in" };
        format!("T {rel} {name}^{}", self.grade)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub element: Multivector,
    pub facts: Vec<GradeFact>,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        self.facts.iter().all(|f| f.expected == f.preserved)
    }
}

/// For `T = e + e1` checks `T ∉ Γ¹`, `T ∈ Γ²`, `T ∈ Γ̌¹`, `T ∉ Γ̌²`, which
/// separates `Γ¹` from `Γ²` and `Γ̌¹` from `Γ̌²` in `G(0,0,3)`.
pub fn counterexample_check(sig: Signature) -> Result<CounterexampleReport> {
    if sig.n() < 2 {
        return Err(Error::Precondition(format!("{sig} has no grade 2")));
    }
    let t = &Multivector::one(sig) + &Multivector::generator(sig, 1)?;
    let unit = Unit::new(t.clone()).ok_or(Error::NotInvertible)?;
    let cases = [
        (Representation::Ad, 1, false),
        (Representation::Ad, 2, true),
        (Representation::TwistedAd, 1, true),
        (Representation::TwistedAd, 2, false),
    ];
    let mut facts = Vec::new();
    for (rep, grade, expected) in cases {
        let witness = grade_violation(rep, &unit, grade)?;
        facts.push(GradeFact {
            rep,
            grade,
            expected,
            preserved: witness.is_none(),
            witness,
        });
    }
    Ok(CounterexampleReport { element: t, facts })
}

/// A random element of `P±`. Odd units only exist when some generator is
/// non-degenerate, so the odd branch is drawn only then.
fn sample_ppm<R: Rng + ?Sized>(sig: Signature, rng: &mut R, cfg: SampleConfig) -> Result<Multivector> {
    let parity = if sig.p() + sig.q() > 0 && rng.gen_bool(0.5) { 1 } else { 0 };
    sample::random_unit(&SubspaceSpec::new(sig, SubspaceKind::Parity(parity))?, rng, cfg)
}

fn sample_in<R: Rng + ?Sized>(
    sig: Signature,
    kind: SubspaceKind,
    rng: &mut R,
    cfg: SampleConfig,
) -> Result<Multivector> {
    sample::random_unit(&SubspaceSpec::new(sig, kind)?, rng, cfg)
}

pub fn has_sampler(group: GroupId) -> bool {
    group.is_p_family() || group == GroupId::FullUnits
}

/// A random member built from the factorized definition of the group.
pub fn sample_group_element<R: Rng + ?Sized>(
    group: GroupId,
    sig: Signature,
    rng: &mut R,
    cfg: SampleConfig,
) -> Result<Multivector> {
    let factors: Vec<Multivector> = match group {
        GroupId::Ppm => vec![sample_ppm(sig, rng, cfg)?],
        GroupId::P => vec![sample_ppm(sig, rng, cfg)?, sample_in(sig, SubspaceKind::Center, rng, cfg)?],
        GroupId::PpmLambda => vec![sample_ppm(sig, rng, cfg)?, sample_in(sig, SubspaceKind::Lambda, rng, cfg)?],
        GroupId::PLambda => vec![
            sample_ppm(sig, rng, cfg)?,
            sample_in(sig, SubspaceKind::Center, rng, cfg)?,
            sample_in(sig, SubspaceKind::Lambda, rng, cfg)?,
        ],
        GroupId::PpmRad => vec![sample_ppm(sig, rng, cfg)?, sample_in(sig, SubspaceKind::G0plusRad, rng, cfg)?],
        GroupId::FullUnits => vec![sample::random_full_unit(sig, rng, cfg)?],
        other => {
            return Err(Error::Unsupported(format!(
                "no factorized sampler for {other}; sample the group it is identified with"
            )))
        }
    };
    Ok(factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| &acc * f))
}

/// Where a checked element came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleSource {
    RandomUnit,
    Sampled(GroupId),
}

impl fmt::Display for SampleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleSource::RandomUnit => f.write_str("random unit"),
            SampleSource::Sampled(g) => write!(f, "sampled from {g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub source: SampleSource,
    pub element: Multivector,
    pub lhs: bool,
    pub rhs: bool,
}

/// Outcome of comparing two groups on sampled elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: GroupId,
    pub rhs: GroupId,
    pub sig: Signature,
    pub checked: usize,
    /// Checked elements that were members of both sides.
    pub common_members: usize,
    pub discrepancy_count: usize,
    /// The first few discrepancies.
    pub discrepancies: Vec<Discrepancy>,
}

impl IdentityReport {
    pub const KEPT: usize = 8;

    pub fn passed(&self) -> bool {
        self.discrepancy_count == 0
    }

    fn record(&mut self, d: Discrepancy) {
        self.discrepancy_count += 1;
        if self.discrepancies.len() < Self::KEPT {
            self.discrepancies.push(d);
        }
    }
}

/// The elements every comparison runs over: `samples` random units,
/// `samples` draws from each side's sampler, and `samples / 4` draws from
/// every other P-family sampler as probes near the group boundaries.
fn comparison_pool<R: Rng + ?Sized>(
    sides: &[GroupId],
    sig: Signature,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
) -> Result<Vec<(SampleSource, Unit)>> {
    let mut pool = Vec::new();
    let mut push = |source, t: Multivector| {
        let unit = Unit::new(t).expect("samplers return units");
        pool.push((source, unit));
    };
    for _ in 0..samples {
        push(SampleSource::RandomUnit, sample::random_full_unit(sig, rng, cfg)?);
    }
    for &g in sides {
        if g.is_p_family() {
            for _ in 0..samples {
                push(SampleSource::Sampled(g), sample_group_element(g, sig, rng, cfg)?);
            }
        }
    }
    for g in GroupId::P_FAMILY {
        if !sides.contains(&g) {
            for _ in 0..samples / 4 {
                push(SampleSource::Sampled(g), sample_group_element(g, sig, rng, cfg)?);
            }
        }
    }
    Ok(pool)
}

fn compare<R: Rng + ?Sized>(
    lhs: GroupId,
    rhs: GroupId,
    sig: Signature,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
    agree: impl Fn(bool, bool) -> bool,
) -> Result<IdentityReport> {
    let pool = comparison_pool(&[lhs, rhs], sig, rng, samples, cfg)?;
    let mut report = IdentityReport {
        lhs,
        rhs,
        sig,
        checked: 0,
        common_members: 0,
        discrepancy_count: 0,
        discrepancies: Vec::new(),
    };
    for (source, unit) in pool {
        let a = member_unit(lhs, &unit).member;
        let b = member_unit(rhs, &unit).member;
        // Draws from a group's own sampler must land in it.
        let own = match source {
            SampleSource::Sampled(g) if g == lhs => a,
            SampleSource::Sampled(g) if g == rhs => b,
            _ => true,
        };
        report.checked += 1;
        report.common_members += (a && b) as usize;
        if !agree(a, b) || !own {
            report.record(Discrepancy {
                source,
                element: unit.element().clone(),
                lhs: a,
                rhs: b,
            });
        }
    }
    Ok(report)
}

/// Checks `lhs = rhs` on sampled elements: membership must agree on every
/// element of the pool, and each side's own samples must be members.
pub fn verify_group_identity<R: Rng + ?Sized>(
    lhs: GroupId,
    rhs: GroupId,
    sig: Signature,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
) -> Result<IdentityReport> {
    compare(lhs, rhs, sig, rng, samples, cfg, |a, b| a == b)
}

/// Checks `sub ⊆ sup` on the same kind of pool.
pub fn verify_group_inclusion<R: Rng + ?Sized>(
    sub: GroupId,
    sup: GroupId,
    sig: Signature,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
) -> Result<IdentityReport> {
    compare(sub, sup, sig, rng, samples, cfg, |a, b| !a || b)
}

/// Group axioms on samples: `e` is a member, and products and inverses of
/// sampled members are members. Returns the number of failures.
pub fn closure_failures<R: Rng + ?Sized>(
    group: GroupId,
    sig: Signature,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
) -> Result<usize> {
    let mut failures = (!member(group, &Multivector::one(sig)).member) as usize;
    for _ in 0..samples {
        let a = sample_group_element(group, sig, rng, cfg)?;
        let b = sample_group_element(group, sig, rng, cfg)?;
        failures += (!member(group, &(&a * &b)).member) as usize;
        let inv = a.inverse().ok_or(Error::NotInvertible)?;
        failures += (!member(group, &inv).member) as usize;
    }
    Ok(failures)
}
