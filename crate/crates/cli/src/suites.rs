//! The claims checked by `degenga verify`, one function per claim.
//!
//! Each claim runs on one signature with its own RNG stream and returns an
//! [`Outcome`]; [`run`] turns them into ordered [`Record`]s.

use std::time::Instant;

use degenga_core::group::{self, Unit, Witness};
use degenga_core::lie;
use degenga_core::matrix_rep::{self, MatrixExample};
use degenga_core::sample::{self, SampleConfig};
use degenga_core::subspace::{self, Constraint};
use degenga_core::{
    print, Error, GroupId, Multivector, Representation, Signature, SubspaceKind, SubspaceSpec,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::claim_rng;
use crate::report::{Record, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Lemmas,
    Theorems,
    Lie,
    Matrix,
    All,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub signatures: Vec<Signature>,
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
    pub suites: Vec<Suite>,
    pub timing: bool,
    pub tolerance: f64,
}

impl VerifyConfig {
    pub fn sample_config(&self) -> SampleConfig {
        SampleConfig {
            coeff_bound: self.coeff_bound,
            ..SampleConfig::default()
        }
    }

    fn wants(&self, s: Suite) -> bool {
        self.suites.contains(&s) || self.suites.contains(&Suite::All)
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            signatures: Signature::all_up_to(4),
            samples: 200,
            seed: 42,
            coeff_bound: 5,
            suites: vec![Suite::All],
            timing: false,
            tolerance: 1e-9,
        }
    }
}

/// What a single claim found.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
    pub witness: Option<String>,
}

impl Outcome {
    fn new(passed: bool, checked: usize, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            checked,
            detail: detail.into(),
            witness: None,
        }
    }

    fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }
}

pub type ClaimResult = Result<Outcome, Error>;

pub fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Twisted(m) => format!("hat(T^-1)*T = {}", print(m)),
        Witness::Conjugation { blade, image } => format!("{blade:?} -> {}", print(image)),
        Witness::NotInvertible => "not invertible".into(),
    }
}

fn blade_list(blades: &[degenga_core::Blade]) -> String {
    let names: Vec<String> = blades.iter().map(|b| format!("{b:?}")).collect();
    format!("[{}]", names.join(" "))
}

// ---------------------------------------------------------------- lemmas

/// Does `T` fix every basis blade under `rep`?
fn fixes_everything(rep: Representation, unit: &Unit) -> Result<bool, Error> {
    let sig = unit.element().signature();
    for b in sig.blades() {
        let u = Multivector::blade(sig, b)?;
        if unit.conjugate(rep, &u)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trivial action under `rep` iff membership in the kernel formula, on
/// `samples` random units plus `samples / 4` units drawn from the kernel.
pub fn kernel_claim(rep: Representation, sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let spec = subspace::kernel_spec(rep, sig);
    let mut checked = 0;
    let mut in_kernel = 0;
    for k in 0..samples + samples / 4 {
        let t = if k < samples {
            sample::random_full_unit(sig, rng, cfg)?
        } else {
            sample::random_unit(&spec, rng, cfg)?
        };
        let unit = Unit::new(t.clone()).ok_or(Error::NotInvertible)?;
        let member = spec.contains(&t)?;
        let fixed = fixes_everything(rep, &unit)?;
        checked += 1;
        in_kernel += member as usize;
        if member != fixed {
            let detail = format!("kernel {} says {member}, action says {fixed}", spec.kind().name());
            return Ok(Outcome::new(false, checked, detail).with_witness(Some(print(&t))));
        }
    }
    Ok(Outcome::new(
        true,
        checked,
        format!("kernel = {} ({in_kernel} kernel elements)", spec.kind().name()),
    ))
}

/// Centralizer nullspace against the closed-form subspace.
pub fn centralizer_claim(constraint: Constraint, generating: SubspaceKind, sig: Signature) -> ClaimResult {
    let spec = SubspaceSpec::new(sig, generating)?;
    let formula = subspace::centralizer_formula(constraint, &spec)?;
    let got = subspace::centralizer(constraint, &spec)?;
    let want = formula.basis();
    let passed = got == want;
    let detail = format!("{} ({} blades)", formula.kind().name(), want.len());
    let witness = (!passed).then(|| format!("nullspace {} vs formula {}", blade_list(&got), blade_list(&want)));
    Ok(Outcome::new(passed, 1, detail).with_witness(witness))
}

/// `e + xy` is invertible for `y` in the radical and arbitrary `x`.
pub fn e_plus_xy_claim(sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let rad = SubspaceSpec::new(sig, SubspaceKind::Rad)?;
    for k in 0..samples {
        let x = sample::random_with(sig, rng, cfg.coeff_bound, |_| true);
        let y = sample::random_element(&rad, rng, cfg.coeff_bound);
        let t = &Multivector::one(sig) + &(&x * &y);
        if t.inverse().is_none() {
            return Ok(Outcome::new(false, k + 1, "e + xy not invertible").with_witness(Some(format!(
                "x = {}, y = {}",
                print(&x),
                print(&y)
            ))));
        }
    }
    Ok(Outcome::new(true, samples, "all invertible"))
}

/// On `G⁰ ⊕ rad`: invertible iff the scalar part is nonzero.
pub fn scalar_plus_rad_claim(sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let spec = SubspaceSpec::new(sig, SubspaceKind::G0plusRad)?;
    let mut singular = 0;
    for k in 0..samples {
        let mut t = sample::random_element(&spec, rng, cfg.coeff_bound);
        // Force a zero scalar part now and then so both sides are exercised.
        if k % 8 == 7 {
            t = t.filter(|b| b.mask() != 0);
        }
        let zero = t.scalar_part() == degenga_core::Scalar::from_int(0);
        singular += zero as usize;
        if t.inverse().is_some() == zero {
            return Ok(Outcome::new(false, k + 1, "invertibility disagrees with scalar part").with_witness(Some(print(&t))));
        }
    }
    Ok(Outcome::new(true, samples, format!("{singular} with zero scalar part")))
}

/// `x̂ (U₁⋯U_m) = (U₁⋯U_m) x` for `x ∈ Λ` and an odd number of vectors.
pub fn odd_products_claim(sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let lambda = SubspaceSpec::new(sig, SubspaceKind::Lambda)?;
    let vectors = SubspaceSpec::new(sig, SubspaceKind::Grade(1))?;
    for k in 0..samples {
        let x = sample::random_element(&lambda, rng, cfg.coeff_bound);
        let m = 2 * rng.gen_range(0..3) + 1;
        let mut factors = Vec::with_capacity(m);
        for _ in 0..m {
            let v = sample::random_element(&vectors, rng, cfg.coeff_bound);
            factors.push(if v.is_zero() { Multivector::generator(sig, 1)? } else { v });
        }
        if !subspace::odd_product_property_check(&x, &[factors])? {
            return Ok(Outcome::new(false, k + 1, "odd product violated").with_witness(Some(print(&x))));
        }
    }
    Ok(Outcome::new(true, samples, "holds"))
}

// -------------------------------------------------------------- theorems

/// A preservation group against the P-family group (or all units) it is
/// identified with.
pub fn identity_claim(gamma: GroupId, sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let rhs = gamma.identification(sig);
    let report = group::verify_group_identity(gamma, rhs, sig, rng, samples, cfg)?;
    let detail = format!(
        "{gamma} = {rhs}: {} discrepancies, {} common members",
        report.discrepancy_count, report.common_members
    );
    let witness = report.discrepancies.first().map(|d| {
        format!("{} ({}): {gamma}={} {rhs}={}", print(&d.element), d.source, d.lhs, d.rhs)
    });
    Ok(Outcome::new(report.passed(), report.checked, detail).with_witness(witness))
}

/// Every equivalent characterization of a P-family group gives the same
/// membership.
pub fn alternative_targets_claim(g: GroupId, sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let base = g.target(sig).ok_or_else(|| Error::Unsupported(format!("{g} has no target")))?;
    let alts = g.alternative_targets(sig);
    let mut checked = 0;
    let mut members = 0;
    let sources = std::iter::once(None).chain(GroupId::P_FAMILY.iter().map(Some));
    for source in sources {
        let count = if source == Some(&g) || source.is_none() { samples } else { samples / 4 };
        for _ in 0..count {
            let t = match source {
                None => sample::random_full_unit(sig, rng, cfg)?,
                Some(h) => group::sample_group_element(*h, sig, rng, cfg)?,
            };
            let unit = Unit::new(t).ok_or(Error::NotInvertible)?;
            let want = group::member_by_target(&unit, &base)?;
            members += want as usize;
            checked += 1;
            for alt in &alts {
                if group::member_by_target(&unit, alt)? != want {
                    let detail = format!("{} disagrees with {}", alt.kind().name(), base.kind().name());
                    return Ok(Outcome::new(false, checked, detail).with_witness(Some(print(unit.element()))));
                }
            }
        }
    }
    let names: Vec<String> = alts.iter().map(|a| a.kind().name()).collect();
    Ok(Outcome::new(true, checked, format!("{members} members; targets {}", names.join(", "))))
}

/// Identity, products and inverses of sampled members stay in the group.
pub fn closure_claim(g: GroupId, sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let failures = group::closure_failures(g, sig, rng, samples, cfg)?;
    Ok(Outcome::new(failures == 0, 2 * samples + 1, format!("{failures} failures")))
}

/// The four grade-preservation facts for `T = e + e1`.
pub fn counterexample_claim(sig: Signature) -> ClaimResult {
    let report = group::counterexample_check(sig)?;
    let facts: Vec<String> = report
        .facts
        .iter()
        .map(|f| match &f.witness {
            Some((b, image)) => format!("{} ({b:?} -> {})", f.label(), print(image)),
            None => f.label(),
        })
        .collect();
    Ok(Outcome::new(report.holds(), report.facts.len(), facts.join("; ")))
}

// ------------------------------------------------------------------- lie

pub fn lie_dimension_claim(g: GroupId, sig: Signature) -> ClaimResult {
    let alg = lie::lie_algebra_of(g, sig)?;
    let formula = lie::formula_dimension(g, sig).ok_or_else(|| Error::Unsupported(format!("no formula for {g}")))?;
    Ok(Outcome::new(alg.dim() == formula, 1, format!("basis {} vs formula {formula}", alg.dim())))
}

pub fn lie_closure_claim(g: GroupId, sig: Signature) -> ClaimResult {
    let alg = lie::lie_algebra_of(g, sig)?;
    let pairs = alg.dim() * (alg.dim() + 1) / 2;
    Ok(match lie::closure_violation(&alg) {
        None => Outcome::new(true, pairs, "closed"),
        Some((a, b, c)) => Outcome::new(false, pairs, "commutator leaves the algebra")
            .with_witness(Some(format!("[{a:?}, {b:?}] = {}", print(&c)))),
    })
}

pub fn lie_tangency_claim(
    g: GroupId,
    sig: Signature,
    rng: &mut impl Rng,
    samples: usize,
    tolerance: f64,
    cfg: SampleConfig,
) -> ClaimResult {
    let alg = lie::lie_algebra_of(g, sig)?;
    let report = lie::check_tangency(&alg, rng, samples, tolerance, cfg)?;
    let detail = format!(
        "{} exact / {} numeric failures, max residual {:.2e}",
        report.exact_failures.len(),
        report.numeric_failures.len(),
        report.max_residual
    );
    let witness = report.exact_failures.first().or(report.numeric_failures.first()).map(print);
    Ok(Outcome::new(report.passed(), report.checked, detail).with_witness(witness))
}

// ---------------------------------------------------------------- matrix

pub fn matrix_claim(example: MatrixExample, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> ClaimResult {
    let report = matrix_rep::structural_check(example, rng, samples, cfg)?;
    let failed: Vec<&str> = report.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} structural checks", report.items.len())
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Ok(Outcome::new(report.passed(), report.items.len(), detail))
}

// ---------------------------------------------------------------- runner

type Claim<'a> = (String, Signature, Box<dyn FnOnce(&mut ChaCha8Rng) -> ClaimResult + 'a>);

fn claims_for(sig: Signature, cfg: &VerifyConfig) -> Vec<Claim<'_>> {
    let sc = cfg.sample_config();
    let s = cfg.samples;
    let quarter = (s / 4).max(1);
    let mut out: Vec<Claim> = Vec::new();
    let mut add = |name: String, f: Box<dyn FnOnce(&mut ChaCha8Rng) -> ClaimResult>| out.push((name, sig, f));

    if cfg.wants(Suite::Lemmas) {
        for (rep, tag) in [(Representation::Ad, "ad"), (Representation::TwistedAd, "twisted_ad")] {
            add(format!("lemma.kernel.{tag}"), Box::new(move |r| kernel_claim(rep, sig, r, s, sc)));
        }
        for (c, ctag) in [(Constraint::Plain, "plain"), (Constraint::Twisted, "twisted")] {
            for (k, ktag) in [(SubspaceKind::Grade(1), "vectors"), (SubspaceKind::Parity(0), "even")] {
                add(format!("lemma.centralizer.{ctag}.{ktag}"), Box::new(move |_| centralizer_claim(c, k, sig)));
            }
        }
        add("lemma.invertible.e_plus_xy".into(), Box::new(move |r| e_plus_xy_claim(sig, r, s, sc)));
        add("lemma.invertible.scalar_plus_rad".into(), Box::new(move |r| scalar_plus_rad_claim(sig, r, s, sc)));
        add("lemma.odd_products".into(), Box::new(move |r| odd_products_claim(sig, r, quarter, sc)));
    }
    if cfg.wants(Suite::Theorems) {
        for g in GroupId::GAMMA_FAMILY {
            add(format!("theorem.identity.{g}"), Box::new(move |r| identity_claim(g, sig, r, s, sc)));
        }
        for g in GroupId::P_FAMILY {
            add(format!("theorem.targets.{g}"), Box::new(move |r| alternative_targets_claim(g, sig, r, quarter, sc)));
        }
        for g in GroupId::P_FAMILY {
            add(format!("theorem.closure.{g}"), Box::new(move |r| closure_claim(g, sig, r, quarter, sc)));
        }
        if sig.p() == 0 && sig.q() == 0 && sig.r() >= 3 {
            add("theorem.counterexample".into(), Box::new(move |_| counterexample_claim(sig)));
        }
    }
    if cfg.wants(Suite::Lie) {
        let tol = cfg.tolerance;
        for g in GroupId::P_FAMILY {
            add(format!("lie.dimension.{g}"), Box::new(move |_| lie_dimension_claim(g, sig)));
            add(format!("lie.closure.{g}"), Box::new(move |_| lie_closure_claim(g, sig)));
            add(format!("lie.tangency.{g}"), Box::new(move |r| lie_tangency_claim(g, sig, r, quarter, tol, sc)));
        }
    }
    out
}

fn execute(cfg: &VerifyConfig, claim: Claim) -> Record {
    let (name, sig, f) = claim;
    let mut rng = claim_rng(cfg.seed, &name, sig);
    let start = Instant::now();
    let result = f(&mut rng);
    let elapsed_ms = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let (status, checked, detail, witness) = match result {
        Ok(o) => (if o.passed { Status::Pass } else { Status::Fail }, o.checked, o.detail, o.witness),
        Err(e) => (Status::Error, 0, e.to_string(), None),
    };
    Record {
        claim: name,
        signature: sig.to_string(),
        status,
        checked,
        detail,
        witness,
        elapsed_ms,
    }
}

/// Runs the selected suites, signature by signature, then the matrix
/// examples. Records come out in that fixed order.
pub fn run(cfg: &VerifyConfig, mut sink: impl FnMut(&Record)) -> Vec<Record> {
    let mut records = Vec::new();
    let mut emit = |r: Record| {
        sink(&r);
        records.push(r);
    };
    for &sig in &cfg.signatures {
        for claim in claims_for(sig, cfg) {
            emit(execute(cfg, claim));
        }
    }
    if cfg.wants(Suite::Matrix) {
        let sc = cfg.sample_config();
        let s = (cfg.samples / 4).max(1);
        for ex in MatrixExample::ALL {
            let claim: Claim = (
                format!("matrix.{}", ex.id()),
                ex.source(),
                Box::new(move |r| matrix_claim(ex, r, s, sc)),
            );
            emit(execute(cfg, claim));
        }
    }
    records
}
