//! Which of the five P-family groups coincide, signature by signature.
//!
//! Groups whose canonical targets have the same blade basis coincide.
//! Sampling backs that up: groups in one such class are compared with
//! [`group::verify_group_identity`], and groups in different classes are
//! searched for a separating element (a member of one that is not in the
//! other). Equal targets are sufficient but not necessary, so a pair for
//! which neither direction yields a witness is merged and reported in
//! `sampled_only`.

use degenga_core::group;
use degenga_core::lie;
use degenga_core::sample::SampleConfig;
use degenga_core::{print, Error, GroupId, Signature};
use rand::Rng;
use serde::Serialize;

use crate::claim_rng;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieDim {
    pub group: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub gamma: String,
    pub equals: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub groups: [String; 2],
    /// A member of the first group outside the second, if one was found.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub signature: String,
    /// Classes of coinciding groups, in P-family order.
    pub classes: Vec<Vec<String>>,
    /// Classes by target comparison alone.
    pub target_classes: Vec<Vec<String>>,
    /// Pairs merged only because no separating element was found.
    pub sampled_only: Vec<[String; 2]>,
    /// True iff sampled membership agreed inside every class.
    pub coincidences_confirmed: bool,
    pub separations: Vec<Separation>,
    pub lie_dims: Vec<LieDim>,
    pub identifications: Vec<Identification>,
}

impl AtlasRow {
    /// Pairs of target classes for which no separating element was found.
    pub fn unconfirmed_separations(&self) -> usize {
        self.separations.iter().filter(|s| s.witness.is_none()).count()
    }
}

/// Groups partitioned by canonical target.
pub fn classes(sig: Signature) -> Vec<Vec<GroupId>> {
    let mut out: Vec<(Vec<degenga_core::Blade>, Vec<GroupId>)> = Vec::new();
    for g in GroupId::P_FAMILY {
        let basis = g.canonical_target(sig).expect("P-family").basis();
        match out.iter_mut().find(|(b, _)| *b == basis) {
            Some((_, members)) => members.push(g),
            None => out.push((basis, vec![g])),
        }
    }
    out.into_iter().map(|(_, m)| m).collect()
}

/// A sampled member of `a` that is not in `b`.
fn separate(a: GroupId, b: GroupId, sig: Signature, rng: &mut impl Rng, samples: usize, cfg: SampleConfig) -> Result<Option<String>, Error> {
    for _ in 0..samples {
        let t = group::sample_group_element(a, sig, rng, cfg)?;
        if !group::member(b, &t).member {
            return Ok(Some(print(&t)));
        }
    }
    Ok(None)
}

pub fn row(sig: Signature, seed: u64, samples: usize, cfg: SampleConfig) -> Result<AtlasRow, Error> {
    let cls = classes(sig);
    let mut confirmed = true;
    for class in &cls {
        for w in class.windows(2) {
            let mut rng = claim_rng(seed, &format!("atlas.same.{}.{}", w[0], w[1]), sig);
            confirmed &= group::verify_group_identity(w[0], w[1], sig, &mut rng, samples, cfg)?.passed();
        }
    }
    let mut separations = Vec::new();
    for (i, ci) in cls.iter().enumerate() {
        for cj in &cls[i + 1..] {
            let (a, b) = (ci[0], cj[0]);
            let mut rng = claim_rng(seed, &format!("atlas.split.{a}.{b}"), sig);
            // Try both directions; one of them may be an inclusion.
            let witness = match separate(a, b, sig, &mut rng, samples, cfg)? {
                Some(w) => Some((a, b, w)),
                None => separate(b, a, sig, &mut rng, samples, cfg)?.map(|w| (b, a, w)),
            };
            separations.push(match witness {
                Some((x, y, w)) => Separation { groups: [x.to_string(), y.to_string()], witness: Some(w) },
                None => Separation { groups: [a.to_string(), b.to_string()], witness: None },
            });
        }
    }
    let mut merged: Vec<Vec<GroupId>> = Vec::new();
    let mut sampled_only = Vec::new();
    for class in &cls {
        let partner = separations
            .iter()
            .filter(|s| s.witness.is_none())
            .find_map(|s| {
                let (a, b) = (&s.groups[0], &s.groups[1]);
                let here = |n: &String| class.iter().any(|g| g.name() == n);
                if here(b) {
                    Some(a.clone())
                } else if here(a) {
                    Some(b.clone())
                } else {
                    None
                }
            })
            .filter(|other| merged.iter().any(|m| m.iter().any(|g| g.name() == other)));
        match partner {
            Some(other) => {
                let m = merged.iter_mut().find(|m| m.iter().any(|g| g.name() == other)).expect("found");
                sampled_only.push([other.clone(), class[0].to_string()]);
                m.extend(class.iter().copied());
            }
            None => merged.push(class.clone()),
        }
    }
    let names = |cs: &[Vec<GroupId>]| -> Vec<Vec<String>> {
        cs.iter().map(|c| c.iter().map(|g| g.to_string()).collect()).collect()
    };
    let lie_dims = GroupId::P_FAMILY
        .iter()
        .map(|&g| LieDim { group: g.to_string(), dim: lie::lie_algebra_of(g, sig).map(|a| a.dim()).unwrap_or(0) })
        .collect();
    let identifications = GroupId::GAMMA_FAMILY
        .iter()
        .map(|g| Identification { gamma: g.to_string(), equals: g.identification(sig).to_string() })
        .collect();
    Ok(AtlasRow {
        signature: sig.to_string(),
        classes: names(&merged),
        target_classes: names(&cls),
        sampled_only,
        coincidences_confirmed: confirmed,
        separations,
        lie_dims,
        identifications,
    })
}

/// `P_pm = P ⊂ P_pm_Lambda = …` style summary of a row.
pub fn chain(row: &AtlasRow) -> String {
    row.classes.iter().map(|c| c.join(" = ")).collect::<Vec<_>>().join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(sig: Signature) -> Vec<Vec<GroupId>> {
        classes(sig)
    }

    #[test]
    fn grassmann_classes() {
        use GroupId::*;
        let s = |r| Signature::new(0, 0, r).unwrap();
        assert_eq!(names(s(1)), vec![vec![Ppm], vec![P, PpmLambda, PLambda, PpmRad]]);
        assert_eq!(names(s(2)), vec![vec![Ppm, P], vec![PpmLambda, PLambda, PpmRad]]);
        assert_eq!(names(s(3)), vec![vec![Ppm], vec![P], vec![PpmLambda, PLambda, PpmRad]]);
    }

    #[test]
    fn row_is_deterministic() {
        let sig = Signature::new(1, 0, 1).unwrap();
        let a = row(sig, 7, 10, SampleConfig::default()).unwrap();
        let b = row(sig, 7, 10, SampleConfig::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.coincidences_confirmed);
        assert_eq!(a.unconfirmed_separations(), 1);
        assert_eq!(a.sampled_only, vec![["P_pm_Lambda".to_string(), "P_pm_rad".to_string()]]);
        assert_eq!(a.classes.len(), 2);
    }
}
