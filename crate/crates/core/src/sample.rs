//! Random elements with small integer coefficients.

use alloc::string::ToString;

use rand::Rng;

use crate::{Blade, Error, Multivector, Result, Scalar, Signature, SubspaceSpec};

/// Coefficient range and rejection budget for samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Coefficients are uniform integers in `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Retries before a unit sampler gives up.
    pub max_attempts: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            coeff_bound: 5,
            max_attempts: 1000,
        }
    }
}

/// A uniform integer, or a Gaussian integer in complex mode.
pub fn random_scalar<R: Rng + ?Sized>(sig: Signature, rng: &mut R, bound: i64) -> Scalar {
    let re = Scalar::from_int(rng.gen_range(-bound..=bound));
    if sig.is_complex() {
        re + Scalar::from_int(rng.gen_range(-bound..=bound)) * Scalar::i()
    } else {
        re
    }
}

/// A random combination of the blades accepted by `keep`.
pub fn random_with<R: Rng + ?Sized>(
    sig: Signature,
    rng: &mut R,
    bound: i64,
    keep: impl Fn(Blade) -> bool,
) -> Multivector {
    let terms = sig
        .blades()
        .filter(|b| keep(*b))
        .map(|b| (b, random_scalar(sig, rng, bound)))
        .collect::<alloc::vec::Vec<_>>();
    Multivector::from_terms(sig, terms).expect("blades come from the signature")
}

pub fn random_element<R: Rng + ?Sized>(spec: &SubspaceSpec, rng: &mut R, bound: i64) -> Multivector {
    random_with(spec.signature(), rng, bound, |b| spec.contains_blade(b))
}

/// Rejection-samples an invertible element of the subspace.
pub fn random_unit<R: Rng + ?Sized>(spec: &SubspaceSpec, rng: &mut R, cfg: SampleConfig) -> Result<Multivector> {
    for _ in 0..cfg.max_attempts {
        let u = random_element(spec, rng, cfg.coeff_bound);
        if u.is_invertible() {
            return Ok(u);
        }
    }
    Err(Error::SamplingFailed {
        what: spec.to_string(),
        attempts: cfg.max_attempts,
    })
}

/// An invertible element with every blade allowed.
pub fn random_full_unit<R: Rng + ?Sized>(sig: Signature, rng: &mut R, cfg: SampleConfig) -> Result<Multivector> {
    let full = SubspaceSpec::new(sig, crate::SubspaceKind::Full)?;
    random_unit(&full, rng, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SubspaceKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_stay_in_subspace_and_bound() {
        let sig = Signature::new(1, 1, 2).unwrap();
        let spec = SubspaceSpec::new(sig, SubspaceKind::G0plusRad).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = random_unit(&spec, &mut rng, SampleConfig::default()).unwrap();
            assert!(spec.contains(&u).unwrap());
            assert!(u.terms().all(|(_, s)| s.max_abs_f64() <= 5.0));
            assert!(!u.scalar_part().re().numer().sign().eq(&num_bigint::Sign::NoSign));
        }
    }

    #[test]
    fn impossible_units_fail_cleanly() {
        let sig = Signature::new(0, 0, 2).unwrap();
        let odd = SubspaceSpec::new(sig, SubspaceKind::Parity(1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = SampleConfig { coeff_bound: 3, max_attempts: 20 };
        assert!(matches!(
            random_unit(&odd, &mut rng, cfg),
            Err(Error::SamplingFailed { attempts: 20, .. })
        ));
    }

    #[test]
    fn complex_mode_draws_imaginary_parts() {
        let sig = Signature::complex(1, 0, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let any_complex = (0..20).any(|_| !random_scalar(sig, &mut rng, 5).is_real());
        assert!(any_complex);
    }
}
