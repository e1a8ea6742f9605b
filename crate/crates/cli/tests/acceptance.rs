//! Acceptance criteria. Every test prints one `PASS`/`FAIL` line (written
//! straight to stderr so it shows without `--nocapture`) and then asserts.

use std::io::Write;
use std::time::Instant;

use degenga::atlas;
use degenga::claim_rng;
use degenga::suites::{self, Outcome};
use degenga_core::group::{self, Witness};
use degenga_core::lie;
use degenga_core::matrix_rep::{self, MatrixExample, MatrixRep};
use degenga_core::sample::{self, SampleConfig};
use degenga_core::subspace::Constraint;
use degenga_core::{parse, print, GroupId, Matrix, Multivector, Representation, Signature, SubspaceKind};

const SEED: u64 = 42;

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

fn report(id: u32, title: &str, failures: &[String], summary: String, start: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let line = format!(
        "{status} criterion {id:>2}: {title}: {summary} ({:.1} s)\n",
        start.elapsed().as_secs_f64()
    );
    let mut err = std::io::stderr().lock();
    let _ = err.write_all(line.as_bytes());
    for f in failures.iter().take(10) {
        let _ = err.write_all(format!("    {f}\n").as_bytes());
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

/// Collects failing outcomes as readable lines.
fn check(failures: &mut Vec<String>, label: String, outcome: Result<Outcome, degenga_core::Error>) -> usize {
    match outcome {
        Ok(o) if o.passed => o.checked,
        Ok(o) => {
            failures.push(format!("{label}: {} {}", o.detail, o.witness.unwrap_or_default()));
            o.checked
        }
        Err(e) => {
            failures.push(format!("{label}: error {e}"));
            0
        }
    }
}

fn sigs(max_n: usize) -> Vec<Signature> {
    Signature::all_up_to(max_n)
}

#[test]
fn criterion_01_kernel_formulas() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for sig in sigs(4) {
        for rep in [Representation::Ad, Representation::TwistedAd] {
            let name = format!("kernel.{rep:?}");
            let mut rng = claim_rng(SEED, &name, sig);
            checked += check(&mut failures, format!("{name} {sig}"), suites::kernel_claim(rep, sig, &mut rng, 200, cfg()));
        }
    }
    report(1, "ker ad / ker twisted ad", &failures, format!("{} signatures, {checked} elements", sigs(4).len()), start);
}

#[test]
fn criterion_02_commutant_lemmas() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for sig in sigs(4) {
        for c in [Constraint::Plain, Constraint::Twisted] {
            for k in [SubspaceKind::Grade(1), SubspaceKind::Parity(0)] {
                count += check(&mut failures, format!("{c:?} {k:?} {sig}"), suites::centralizer_claim(c, k, sig));
            }
        }
    }
    report(2, "centralizer nullspace = formula basis", &failures, format!("{count} exact comparisons"), start);
}

#[test]
fn criterion_03_invertibility_lemmas() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for sig in sigs(4) {
        let mut rng = claim_rng(SEED, "e_plus_xy", sig);
        checked += check(&mut failures, format!("e + xy {sig}"), suites::e_plus_xy_claim(sig, &mut rng, 500, cfg()));
        let mut rng = claim_rng(SEED, "scalar_plus_rad", sig);
        checked += check(&mut failures, format!("G0+rad {sig}"), suites::scalar_plus_rad_claim(sig, &mut rng, 500, cfg()));
    }
    report(3, "e + xy invertible; G0+rad invertible iff scalar part nonzero", &failures, format!("{checked} samples"), start);
}

fn identity_criterion(id: u32, title: &str, groups: &[GroupId]) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for sig in sigs(4) {
        for &g in groups {
            let mut rng = claim_rng(SEED, &format!("identity.{g}"), sig);
            checked += check(&mut failures, format!("{g} {sig}"), suites::identity_claim(g, sig, &mut rng, 200, cfg()));
        }
    }
    report(id, title, &failures, format!("{checked} membership comparisons, 0 discrepancies allowed"), start);
}

#[test]
fn criterion_04_parity_preservation_identities() {
    identity_criterion(
        4,
        "Gamma_odd = P, Gamma_even = P_Lambda, Gamma_check_even = P_pm, Gamma_check_odd = P_pm_Lambda",
        &[
            GroupId::GammaParity(1),
            GroupId::GammaParity(0),
            GroupId::GammaCheckParity(0),
            GroupId::GammaCheckParity(1),
        ],
    );
}

#[test]
fn criterion_05_grade_0_n_identities() {
    identity_criterion(
        5,
        "Gamma_0, Gamma_n, Gamma_0n, Gamma_check_0, Gamma_check_n, Gamma_check_0n",
        &[
            GroupId::Gamma0,
            GroupId::GammaN,
            GroupId::Gamma0n,
            GroupId::GammaCheck0,
            GroupId::GammaCheckN,
            GroupId::GammaCheck0n,
        ],
    );
}

#[test]
fn criterion_06_counterexample() {
    let start = Instant::now();
    let g = Signature::new(0, 0, 3).unwrap();
    let mut failures = Vec::new();
    let rep = group::counterexample_check(g).unwrap();
    let want_t = parse("e + e1", g).unwrap();
    if rep.element != want_t {
        failures.push(format!("element {}", print(&rep.element)));
    }
    let expected: [(bool, Option<&str>); 4] = [
        (false, Some("e2 + 2*e12")),
        (true, None),
        (true, None),
        (false, Some("e23 - 2*e123")),
    ];
    for (fact, (preserved, image)) in rep.facts.iter().zip(expected) {
        let got = fact.witness.as_ref().map(|(_, m)| m.clone());
        let want = image.map(|s| parse(s, g).unwrap());
        if fact.preserved != preserved || got != want {
            failures.push(format!("{}: witness {:?}", fact.label(), got.map(|m| print(&m))));
        }
    }
    // The membership API reports the same witnesses.
    let t = parse("e + e1", g).unwrap();
    let m = group::member(GroupId::P, &t);
    if m.member {
        failures.push("e + e1 in P".into());
    }
    let summary = rep.facts.iter().map(|f| f.label()).collect::<Vec<_>>().join("; ");
    report(6, "e + e1 in G(0,0,3)", &failures, summary, start);
}

#[test]
fn criterion_07_lie_algebras() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let all = sigs(6);
    for &sig in &all {
        for g in GroupId::P_FAMILY {
            check(&mut failures, format!("dim {g} {sig}"), suites::lie_dimension_claim(g, sig));
        }
    }
    let mut closure = 0;
    for sig in sigs(5) {
        for g in GroupId::P_FAMILY {
            closure += check(&mut failures, format!("closure {g} {sig}"), suites::lie_closure_claim(g, sig));
        }
    }
    // Dimensions of G(0,0,3) in the order p±, p, p±Λ, pΛ, p±rad.
    let g003 = Signature::new(0, 0, 3).unwrap();
    let dims: Vec<usize> = [GroupId::Ppm, GroupId::P, GroupId::PpmLambda, GroupId::PLambda, GroupId::PpmRad]
        .iter()
        .map(|g| lie::lie_algebra_of(*g, g003).unwrap().dim())
        .collect();
    if dims != [4, 5, 8, 8, 8] {
        failures.push(format!("G(0,0,3) dims {dims:?}"));
    }
    report(
        7,
        "Lie algebra dimensions (n <= 6) and commutator closure (n <= 5)",
        &failures,
        format!("{} signatures, {closure} blade commutators", all.len()),
        start,
    );
}

#[test]
fn criterion_08_matrix_examples() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for ex in MatrixExample::ALL {
        let rep = MatrixRep::builtin(ex).unwrap();
        if !rep.clifford_relations_hold() {
            failures.push(format!("{ex}: generator relations"));
        }
        // Each displayed family reproduced coordinate by coordinate.
        for pat in ex.patterns() {
            for k in pat.used_coords() {
                let image = rep.represent(&Multivector::blade(ex.source(), pat.coords[k]).unwrap()).unwrap();
                if image != pat.coordinate_matrix(k) {
                    failures.push(format!("{ex} {}: x{k}", pat.name));
                }
            }
        }
        let mut rng = claim_rng(SEED, "matrix", ex.source());
        let sc = matrix_rep::structural_check(ex, &mut rng, 50, cfg()).unwrap();
        for item in sc.items.iter().filter(|i| !i.passed) {
            failures.push(format!("{ex}: {}", item.name));
        }
    }
    // The three displayed families, written out.
    let g = Signature::new(0, 0, 1).unwrap();
    let rep = MatrixRep::builtin(MatrixExample::Lambda1InG110).unwrap();
    let m = rep.represent(&parse("3 + 5*e1", g).unwrap()).unwrap();
    if m != Matrix::from_ints(&[&[3, 5], &[0, 3]]).unwrap() {
        failures.push(format!("Lambda_1: {m}"));
    }
    let g = Signature::new(0, 0, 2).unwrap();
    let rep = MatrixRep::builtin(MatrixExample::Lambda2InG220).unwrap();
    // x0 = 2, x1 = 3 (e2), x2 = 5 (e1), x3 = 7 (e12).
    let m = rep.represent(&parse("2 + 5*e1 + 3*e2 + 7*e12", g).unwrap()).unwrap();
    let want = Matrix::from_ints(&[&[2, 3, 5, 7], &[0, 2, 0, -5], &[0, 0, 2, 3], &[0, 0, 0, 2]]).unwrap();
    if m != want {
        failures.push(format!("Lambda_2: {m}"));
    }
    let g = Signature::new(1, 0, 1).unwrap();
    let rep = MatrixRep::builtin(MatrixExample::G101InG210).unwrap();
    let m = rep.represent(&parse("3*e1 + 4*e2", g).unwrap()).unwrap();
    let want = Matrix::from_ints(&[&[3, 4, 0, 0], &[0, -3, 0, 0], &[0, 0, -3, -4], &[0, 0, 0, 3]]).unwrap();
    if m != want {
        failures.push(format!("G(1,0,1) odd: {m}"));
    }
    let m = rep.represent(&parse("3 + 4*e12", g).unwrap()).unwrap();
    let want = Matrix::from_ints(&[&[3, 4, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 4], &[0, 0, 0, 3]]).unwrap();
    if m != want {
        failures.push(format!("G(1,0,1) even: {m}"));
    }
    report(8, "matrix families bit-exact, Clifford relations exact", &failures, "3 examples".into(), start);
}

#[test]
fn criterion_09_collapse_chains() {
    use GroupId::*;
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rows = 0;
    let mut expect: Vec<(Signature, Vec<Vec<GroupId>>)> = vec![
        (Signature::new(0, 0, 1).unwrap(), vec![vec![Ppm], vec![P, PpmLambda, PLambda, PpmRad]]),
        (Signature::new(0, 0, 2).unwrap(), vec![vec![Ppm, P], vec![PpmLambda, PLambda, PpmRad]]),
        (Signature::new(0, 0, 3).unwrap(), vec![vec![Ppm], vec![P], vec![PpmLambda, PLambda, PpmRad]]),
    ];
    for n in 1..=4 {
        for p in 0..=n {
            let sig = Signature::new(p, n - p, 0).unwrap();
            let classes = if n % 2 == 0 {
                vec![GroupId::P_FAMILY.to_vec()]
            } else {
                vec![vec![Ppm, PpmLambda, PpmRad], vec![P, PLambda]]
            };
            expect.push((sig, classes));
        }
    }
    for (sig, classes) in expect {
        let row = atlas::row(sig, SEED, 50, cfg()).unwrap();
        rows += 1;
        let want: Vec<Vec<String>> = classes.iter().map(|c| c.iter().map(|g| g.to_string()).collect()).collect();
        if row.classes != want || row.target_classes != want {
            failures.push(format!("{sig}: {}", atlas::chain(&row)));
        }
        if !row.coincidences_confirmed {
            failures.push(format!("{sig}: sampled membership disagrees inside a class"));
        }
        if row.unconfirmed_separations() > 0 {
            failures.push(format!("{sig}: distinct classes without a separating element"));
        }
    }
    report(9, "Grassmann and non-degenerate coincidence chains", &failures, format!("{rows} atlas rows"), start);
}

#[test]
fn criterion_10_parser_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for sig in sigs(6) {
        let mut rng = claim_rng(SEED, "round_trip", sig);
        for k in 0..1000 {
            // Mix dense, sparse and rational elements.
            let u = match k % 3 {
                0 => sample::random_with(sig, &mut rng, 5, |_| true),
                1 => sample::random_with(sig, &mut rng, 2, |b| b.grade() % 2 == 1),
                _ => {
                    let a = sample::random_with(sig, &mut rng, 3, |b| b.grade() <= 2);
                    a.scale(&degenga_core::Scalar::from_ratio(1, 3 + (k as i64 % 5)))
                }
            };
            let text = print(&u);
            match parse(&text, sig) {
                Ok(v) if v == u => {}
                Ok(v) => failures.push(format!("{sig}: {text} -> {}", print(&v))),
                Err(e) => failures.push(format!("{sig}: {text}: {e}")),
            }
            count += 1;
        }
    }
    report(10, "parse(print(u)) = u", &failures, format!("{count} samples over {} signatures", sigs(6).len()), start);
}

#[test]
fn witness_kinds_are_reported() {
    // Not a numbered criterion: the three witness shapes reach the CLI text.
    let g = Signature::new(0, 0, 3).unwrap();
    let t = parse("e + e1", g).unwrap();
    let w = group::member(GroupId::Ppm, &t).witness.unwrap();
    assert_eq!(suites::witness_text(&w), "hat(T^-1)*T = e + 2*e1");
    let w = group::member(GroupId::GammaParity(1), &t).witness.unwrap();
    assert!(matches!(w, Witness::Conjugation { .. }));
    let w = group::member(GroupId::P, &parse("e1", g).unwrap()).witness.unwrap();
    assert_eq!(suites::witness_text(&w), "not invertible");
    let _ = sample::random_full_unit(g, &mut claim_rng(1, "x", g), cfg()).unwrap();
}
