//! Verification suites, the signature atlas and report formatting behind the
//! `degenga` binary.

pub mod atlas;
pub mod report;
pub mod suites;

use degenga_core::Signature;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream per (claim, signature), so adding or reordering
/// claims never shifts the draws of another.
pub fn claim_rng(seed: u64, claim: &str, sig: Signature) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(format!("{claim}@{sig}").as_bytes()));
    rng
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Signatures selected by `--sig` or `--max-n`.
pub fn select_signatures(sig: Option<Signature>, max_n: usize, complex: bool) -> Vec<Signature> {
    let field = if complex { degenga_core::Field::Complex } else { degenga_core::Field::Real };
    match sig {
        Some(s) => vec![s.over(field)],
        None => Signature::all_up_to(max_n).into_iter().map(|s| s.over(field)).collect(),
    }
}
