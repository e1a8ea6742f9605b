use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use degenga::atlas;
use degenga::report::{write_records, Format, Record};
use degenga::suites::{self, Suite, VerifyConfig};
use degenga::{claim_rng, select_signatures};
use degenga_core::group;
use degenga_core::matrix_rep::MatrixExample;
use degenga_core::sample::SampleConfig;
use degenga_core::{parse, print, Field, GroupId, Signature};
use serde::Serialize;

/// Largest `--max-n` accepted by `verify`; beyond it exact inversion of
/// dense elements gets slow.
const VERIFY_MAX_N: usize = 6;

#[derive(Parser)]
#[command(name = "degenga", version, about = "Exact arithmetic and group checks in degenerate geometric algebras G(p,q,r)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, optionally applying one operation.
    Eval(EvalArgs),
    /// Decide membership of an element in a group.
    Member(MemberArgs),
    /// Run verification suites over signatures.
    Verify(VerifyArgs),
    /// Per-signature table of group coincidences, Lie dimensions and identifications.
    Atlas(AtlasArgs),
    /// Structural checks of the matrix representation examples.
    Matrix(MatrixArgs),
    /// The e + e1 grade-preservation counterexample.
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct Scalars {
    /// Complex scalars (all non-degenerate generators square to +1).
    #[arg(long, env = "DEGENGA_COMPLEX")]
    complex: bool,
}

impl Scalars {
    fn apply(&self, sig: Signature) -> Signature {
        sig.over(if self.complex { Field::Complex } else { Field::Real })
    }
}

#[derive(Args)]
struct Sampling {
    /// Samples per check.
    #[arg(long, env = "DEGENGA_SAMPLES", default_value_t = 200)]
    samples: usize,
    #[arg(long, env = "DEGENGA_SEED", default_value_t = 42)]
    seed: u64,
    /// Random coefficients are integers in [-B, B].
    #[arg(long, env = "DEGENGA_COEFF_BOUND", default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
    coeff_bound: i64,
}

impl Sampling {
    fn config(&self) -> SampleConfig {
        SampleConfig {
            coeff_bound: self.coeff_bound,
            ..SampleConfig::default()
        }
    }
}

#[derive(Args)]
#[group(multiple = false)]
struct EvalOp {
    /// Grade involution.
    #[arg(long)]
    hat: bool,
    /// Inverse.
    #[arg(long)]
    inv: bool,
    /// Grade-k projection.
    #[arg(long, value_name = "K")]
    grade: Option<usize>,
    /// Even part.
    #[arg(long)]
    even: bool,
    /// Odd part.
    #[arg(long)]
    odd: bool,
}

#[derive(Args)]
struct EvalArgs {
    expr: String,
    #[arg(long, env = "DEGENGA_SIG", value_name = "P,Q,R")]
    sig: Signature,
    #[command(flatten)]
    scalars: Scalars,
    #[command(flatten)]
    op: EvalOp,
}

#[derive(Args)]
struct MemberArgs {
    expr: String,
    #[arg(long, env = "DEGENGA_SIG", value_name = "P,Q,R")]
    sig: Signature,
    /// P_pm, P, P_pm_Lambda, P_Lambda, P_pm_rad, Gamma_even, Gamma_odd,
    /// Gamma_check_even, Gamma_check_odd, Gamma_0, Gamma_n, Gamma_0n,
    /// Gamma_check_0, Gamma_check_n, Gamma_check_0n or units.
    #[arg(long, env = "DEGENGA_GROUP")]
    group: String,
    #[command(flatten)]
    scalars: Scalars,
    #[arg(long, env = "DEGENGA_FORMAT", value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// A single signature; otherwise every signature with n <= --max-n.
    #[arg(long, env = "DEGENGA_SIG", value_name = "P,Q,R")]
    sig: Option<Signature>,
    #[arg(long, env = "DEGENGA_MAX_N", default_value_t = 4)]
    max_n: usize,
    #[arg(long, env = "DEGENGA_SUITE", value_enum, value_delimiter = ',', default_value = "all")]
    suite: Vec<Suite>,
    #[command(flatten)]
    sampling: Sampling,
    #[command(flatten)]
    scalars: Scalars,
    #[arg(long, env = "DEGENGA_FORMAT", value_enum, default_value = "human")]
    format: Format,
    /// Add wall-clock time per record (output is then no longer reproducible).
    #[arg(long, env = "DEGENGA_TIMING")]
    timing: bool,
    /// Tolerance of the floating-point tangency stage.
    #[arg(long, env = "DEGENGA_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long, env = "DEGENGA_MAX_N", default_value_t = 4)]
    max_n: usize,
    /// Write the table here instead of stdout.
    #[arg(long, short, env = "DEGENGA_OUTPUT")]
    output: Option<PathBuf>,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, env = "DEGENGA_FORMAT", value_enum, default_value = "jsonl")]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    /// lambda1_in_G110, lambda2_in_G220 or g101_in_G210; all by default.
    #[arg(long, env = "DEGENGA_EXAMPLE")]
    example: Option<String>,
    #[command(flatten)]
    sampling: Sampling,
    #[arg(long, env = "DEGENGA_FORMAT", value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long, env = "DEGENGA_SIG", value_name = "P,Q,R", default_value = "0,0,3")]
    sig: Signature,
    #[arg(long, env = "DEGENGA_FORMAT", value_enum, default_value = "human")]
    format: Format,
}

/// Exit 0: success or member; 1: a claim failed or non-member; 2: usage,
/// parse or runtime error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval(a) => eval(a, &mut out),
        Command::Member(a) => member(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::Atlas(a) => atlas_cmd(a, &mut out),
        Command::Matrix(a) => matrix(a, &mut out),
        Command::Counterexample(a) => counterexample(a, &mut out),
    }
}

fn eval(a: EvalArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    let sig = a.scalars.apply(a.sig);
    let u = parse(&a.expr, sig).with_context(|| format!("in {:?}", a.expr))?;
    let v = if a.op.hat {
        u.grade_involution()
    } else if a.op.inv {
        match u.inverse() {
            Some(v) => v,
            None => {
                writeln!(out, "not invertible")?;
                return Ok(true);
            }
        }
    } else if let Some(k) = a.op.grade {
        u.grade_project(k)?
    } else if a.op.even {
        u.even_part()
    } else if a.op.odd {
        u.odd_part()
    } else {
        u
    };
    writeln!(out, "{}", print(&v))?;
    Ok(true)
}

#[derive(Serialize)]
struct MemberRecord {
    element: String,
    signature: String,
    group: String,
    member: bool,
    witness: Option<String>,
}

fn member(a: MemberArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    let sig = a.scalars.apply(a.sig);
    let g = GroupId::parse_in(&a.group, sig)?;
    let t = parse(&a.expr, sig).with_context(|| format!("in {:?}", a.expr))?;
    let report = group::member(g, &t);
    let rec = MemberRecord {
        element: print(&t),
        signature: sig.to_string(),
        group: g.to_string(),
        member: report.member,
        witness: report.witness.as_ref().map(suites::witness_text),
    };
    match a.format {
        Format::Jsonl => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
        Format::Human => {
            let verdict = if rec.member { "member" } else { "non-member" };
            write!(out, "{verdict}: {} in {} over {}", rec.element, rec.group, rec.signature)?;
            if let Some(w) = &rec.witness {
                write!(out, "  witness: {w}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(report.member)
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    if a.sig.is_none() && !(1..=VERIFY_MAX_N).contains(&a.max_n) {
        bail!("--max-n must be between 1 and {VERIFY_MAX_N}");
    }
    if !(a.tolerance > 0.0) {
        bail!("--tolerance must be positive");
    }
    let cfg = VerifyConfig {
        signatures: select_signatures(a.sig, a.max_n, a.scalars.complex),
        samples: a.sampling.samples,
        seed: a.sampling.seed,
        coeff_bound: a.sampling.coeff_bound,
        suites: a.suite,
        timing: a.timing,
        tolerance: a.tolerance,
    };
    let format = a.format;
    let mut io_err = None;
    let records = suites::run(&cfg, |r| {
        if io_err.is_none() {
            if let Err(e) = write_one(out, r, format) {
                io_err = Some(e);
            }
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let failed = records.iter().filter(|r| !r.passed()).count();
    if format == Format::Human {
        writeln!(out, "{} records, {} passed, {} failed", records.len(), records.len() - failed, failed)?;
    }
    Ok(failed == 0)
}

fn write_one(out: &mut impl Write, r: &Record, format: Format) -> io::Result<()> {
    match format {
        Format::Jsonl => writeln!(out, "{}", serde_json::to_string(r).expect("plain data"))?,
        Format::Human => {
            let mut buf = Vec::new();
            write_records(&mut buf, std::slice::from_ref(r), format)?;
            // Drop the per-call summary line.
            let text = String::from_utf8_lossy(&buf);
            if let Some(line) = text.lines().next() {
                writeln!(out, "{line}")?;
            }
        }
    }
    out.flush()
}

fn atlas_cmd(a: AtlasArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    if !(1..=12).contains(&a.max_n) {
        bail!("--max-n must be between 1 and 12");
    }
    let mut sink: Box<dyn Write> = match &a.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot write {}", path.display()))?,
        )),
        None => Box::new(&mut *out),
    };
    let mut all_ok = true;
    for sig in Signature::all_up_to(a.max_n) {
        let row = atlas::row(sig, a.sampling.seed, a.sampling.samples, a.sampling.config())?;
        all_ok &= row.coincidences_confirmed;
        match a.format {
            Format::Jsonl => writeln!(sink, "{}", serde_json::to_string(&row)?)?,
            Format::Human => {
                let dims: Vec<String> = row.lie_dims.iter().map(|d| d.dim.to_string()).collect();
                let mut line = format!("{:10} {}  dims ({})", row.signature, atlas::chain(&row), dims.join(", "));
                if !row.coincidences_confirmed {
                    line.push_str("  [coincidence NOT confirmed by sampling]");
                }
                for [a, b] in &row.sampled_only {
                    line.push_str(&format!("  [{a} = {b} by sampling only]"));
                }
                writeln!(sink, "{line}")?;
            }
        }
    }
    sink.flush()?;
    Ok(all_ok)
}

fn matrix(a: MatrixArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    let examples: Vec<MatrixExample> = match &a.example {
        Some(id) => vec![id.parse()?],
        None => MatrixExample::ALL.to_vec(),
    };
    let mut records = Vec::new();
    for ex in examples {
        let name = format!("matrix.{}", ex.id());
        let mut rng = claim_rng(a.sampling.seed, &name, ex.source());
        let rep = degenga_core::matrix_rep::structural_check(ex, &mut rng, a.sampling.samples, a.sampling.config())?;
        for item in &rep.items {
            records.push(Record {
                claim: format!("{name}: {}", item.name),
                signature: ex.source().to_string(),
                status: if item.passed { degenga::report::Status::Pass } else { degenga::report::Status::Fail },
                checked: 1,
                detail: String::new(),
                witness: None,
                elapsed_ms: None,
            });
        }
    }
    write_records(out, &records, a.format)?;
    Ok(records.iter().all(Record::passed))
}

fn counterexample(a: CounterexampleArgs, out: &mut impl Write) -> anyhow::Result<bool> {
    let report = group::counterexample_check(a.sig)?;
    let t = print(&report.element);
    let records: Vec<Record> = report
        .facts
        .iter()
        .map(|f| Record {
            claim: f.label().replace('T', &t),
            signature: a.sig.to_string(),
            status: if f.expected == f.preserved {
                degenga::report::Status::Pass
            } else {
                degenga::report::Status::Fail
            },
            checked: 1,
            detail: if f.expected { "expected preserved".into() } else { "expected not preserved".into() },
            witness: f.witness.as_ref().map(|(b, image)| format!("{b:?} -> {}", print(image))),
            elapsed_ms: None,
        })
        .collect();
    write_records(out, &records, a.format)?;
    Ok(report.holds())
}
