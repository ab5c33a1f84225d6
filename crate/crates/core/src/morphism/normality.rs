//! Normality of morphisms relative to probe actions, and extension of
//! regular morphisms to morphism spaces.

use super::space::{check_joint_frames, JointFrameFailure, MorSpace};
use super::{
    enumerate_morphisms, is_morphism, validate_regular, MorphismError, RegularMorphism,
    RegularViolation,
};
use crate::action::GlobalAction;
use crate::algebra::{decode_mixed, encode_mixed};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalityCounterexample {
    NotBijective,
    /// A frame of the source space whose image is not a frame. `probes`
    /// lists the probe positions used, outermost first.
    Frame { probes: Vec<usize>, frame: Vec<Vec<usize>>, image: Vec<Vec<usize>> },
    /// A morphism from the given source that is not normal.
    Source { source: usize, map: Vec<usize>, inner: Box<NormalityCounterexample> },
}

fn ensure_morphism(g: &[usize], x: &GlobalAction, y: &GlobalAction) -> Result<(), MorphismError> {
    match is_morphism(g, x, y)? {
        Verdict::Holds => Ok(()),
        Verdict::Fails(c) => {
            Err(MorphismError::NotMorphism { index: c.index, orbit: c.orbit, image: c.image })
        }
    }
}

/// `f -> g . f` from `Mor(Z, X)` to `Mor(Z, Y)`, on point ids.
pub fn postcomposition_table(
    g: &[usize],
    from: &MorSpace,
    to: &MorSpace,
) -> Result<Vec<usize>, MorphismError> {
    from.morphisms
        .iter()
        .map(|f| {
            let h: Vec<usize> = f.iter().map(|&v| g[v]).collect();
            to.id_of(&h).ok_or(MorphismError::Mismatch)
        })
        .collect()
}

/// `f -> f . g` from `Mor(X, Y)` to `Mor(Z, Y)`, on point ids.
pub fn precomposition_table(
    g: &[usize],
    from: &MorSpace,
    to: &MorSpace,
) -> Result<Vec<usize>, MorphismError> {
    from.morphisms
        .iter()
        .map(|f| {
            let h: Vec<usize> = g.iter().map(|&v| f[v]).collect();
            to.id_of(&h).ok_or(MorphismError::Mismatch)
        })
        .collect()
}

fn frame_failure(
    table: &[usize],
    from: &MorSpace,
    to: &MorSpace,
    probes: Vec<usize>,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    Ok(is_morphism(table, &from.action, &to.action)?.map(|c| NormalityCounterexample::Frame {
        probes,
        frame: c.orbit.iter().map(|&i| from.morphisms[i].clone()).collect(),
        image: c.image.iter().map(|&i| to.morphisms[i].clone()).collect(),
    }))
}

/// Whether postcomposition with `g: X -> Y` is a morphism
/// `Mor(Z, X) -> Mor(Z, Y)`.
pub fn is_z_normal(
    g: &[usize],
    x: &GlobalAction,
    y: &GlobalAction,
    z: &GlobalAction,
    limit: u64,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    ensure_morphism(g, x, y)?;
    let from = MorSpace::build(z, x, limit)?;
    let to = MorSpace::build(z, y, limit)?;
    let table = postcomposition_table(g, &from, &to)?;
    frame_failure(&table, &from, &to, vec![0])
}

/// Whether precomposition with `g: Z -> X` is a morphism
/// `Mor(X, Y) -> Mor(Z, Y)`.
pub fn precompose(
    g: &[usize],
    z: &GlobalAction,
    x: &GlobalAction,
    y: &GlobalAction,
    limit: u64,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    ensure_morphism(g, z, x)?;
    let from = MorSpace::build(x, y, limit)?;
    let to = MorSpace::build(z, y, limit)?;
    let table = precomposition_table(g, &from, &to)?;
    frame_failure(&table, &from, &to, vec![0])
}

/// A bijective morphism whose inverse is `Z`-normal.
pub fn is_z_normal_isomorphism(
    g: &[usize],
    x: &GlobalAction,
    y: &GlobalAction,
    z: &GlobalAction,
    limit: u64,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    ensure_morphism(g, x, y)?;
    if x.point_count() != y.point_count() {
        return Ok(Verdict::Fails(NormalityCounterexample::NotBijective));
    }
    let mut inverse = vec![usize::MAX; y.point_count()];
    for (p, &v) in g.iter().enumerate() {
        if inverse[v] != usize::MAX {
            return Ok(Verdict::Fails(NormalityCounterexample::NotBijective));
        }
        inverse[v] = p;
    }
    match is_morphism(&inverse, y, x)? {
        Verdict::Fails(_) => Ok(Verdict::Fails(NormalityCounterexample::NotBijective)),
        Verdict::Holds => is_z_normal(&inverse, y, x, z, limit),
    }
}

/// Every morphism from each listed source into `y` is `Z`-normal.
pub fn is_z_conormal(
    y: &GlobalAction,
    z: &GlobalAction,
    sources: &[&GlobalAction],
    limit: u64,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    let into_y = MorSpace::build(z, y, limit)?;
    for (k, &s) in sources.iter().enumerate() {
        let from = MorSpace::build(z, s, limit)?;
        for g in enumerate_morphisms(s, y, limit)? {
            let table = postcomposition_table(&g, &from, &into_y)?;
            if let Verdict::Fails(inner) = frame_failure(&table, &from, &into_y, vec![0])? {
                return Ok(Verdict::Fails(NormalityCounterexample::Source {
                    source: k,
                    map: g,
                    inner: Box::new(inner),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Normality against every probe and, at depth 2, normality of each
/// induced map `Mor(Z1, X) -> Mor(Z1, Y)` against every probe `Z2`.
pub fn sampled_infinity_normal(
    g: &[usize],
    x: &GlobalAction,
    y: &GlobalAction,
    probes: &[GlobalAction],
    depth: usize,
    limit: u64,
) -> Result<Verdict<NormalityCounterexample>, MorphismError> {
    ensure_morphism(g, x, y)?;
    for (i, z1) in probes.iter().enumerate() {
        let from = MorSpace::build(z1, x, limit)?;
        let to = MorSpace::build(z1, y, limit)?;
        let table = postcomposition_table(g, &from, &to)?;
        if let Verdict::Fails(c) = frame_failure(&table, &from, &to, vec![i])? {
            return Ok(Verdict::Fails(c));
        }
        if depth < 2 {
            continue;
        }
        for (j, z2) in probes.iter().enumerate() {
            let inner_from = MorSpace::build(z2, &from.action, limit)?;
            let inner_to = MorSpace::build(z2, &to.action, limit)?;
            let lifted = postcomposition_table(&table, &inner_from, &inner_to)?;
            if let Verdict::Fails(c) = frame_failure(&lifted, &inner_from, &inner_to, vec![i, j])? {
                return Ok(Verdict::Fails(c));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The regular morphism `Mor(Z, X) -> Mor(Z, Y)` induced by a regular
/// morphism `X -> Y`, with its validation and a joint-frame check on
/// `Mor(Z, X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub extension: Option<RegularMorphism>,
    pub regular: Verdict<RegularViolation>,
    pub joint_frames: Verdict<JointFrameFailure>,
}

pub fn extend_postcomposition(
    r: &RegularMorphism,
    x: &GlobalAction,
    y: &GlobalAction,
    z: &GlobalAction,
    limit: u64,
) -> Result<ExtensionReport, MorphismError> {
    if let Verdict::Fails(v) = validate_regular(r, x, y)? {
        return Err(MorphismError::InvalidRegular(v));
    }
    let from = MorSpace::build(z, x, limit)?;
    let to = MorSpace::build(z, y, limit)?;
    let joint_frames = check_joint_frames(&from, z, x);
    let lambda = postcomposition_table(&r.lambda, &from, &to)?;

    let mut iota = Vec::with_capacity(from.betas.len());
    for (k, beta) in from.betas.iter().enumerate() {
        let mapped: Vec<usize> = beta.iter().map(|&b| r.iota[b]).collect();
        match to.beta_id(&mapped) {
            Some(id) => iota.push(id),
            None => {
                // the image local set is empty, so the local set at `k` cannot map into it
                let point = from.action.index(k).carrier()[0];
                return Ok(ExtensionReport {
                    extension: None,
                    regular: Verdict::Fails(RegularViolation::LocalSetNotMapped { index: k, point }),
                    joint_frames,
                });
            }
        }
    }
    let kappa = from
        .betas
        .iter()
        .enumerate()
        .map(|(k, beta)| {
            let src = from.radices(k, x);
            let dst = to.radices(iota[k], y);
            let order: usize = src.iter().product();
            (0..order)
                .map(|s| {
                    let digits = decode_mixed(s, &src);
                    let mapped: Vec<usize> =
                        digits.iter().zip(beta).map(|(&d, &b)| r.kappa[b][d]).collect();
                    encode_mixed(&mapped, &dst)
                })
                .collect()
        })
        .collect();
    let extension = RegularMorphism { iota, kappa, lambda };
    let regular = validate_regular(&extension, &from.action, &to.action)?;
    Ok(ExtensionReport { extension: Some(extension), regular, joint_frames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;
    use crate::morphism::identity_regular;

    #[test]
    fn identity_is_normal() {
        let s = sd2();
        let c3 = c3_star();
        assert!(is_z_normal(&[0, 1, 2], &c3, &c3, &s, 100_000).unwrap().holds());
        assert!(is_z_normal_isomorphism(&[0, 1], &s, &s, &pt(), 1000).unwrap().holds());
        assert_eq!(
            is_z_normal_isomorphism(&[0, 0], &s, &s, &pt(), 1000).unwrap(),
            Verdict::Fails(NormalityCounterexample::NotBijective)
        );
    }

    #[test]
    fn constant_maps_are_normal() {
        let t = ft();
        let c3 = cyclic(3);
        assert!(is_z_normal(&[1, 1, 1], &c3, &t, &sd2(), 100_000).unwrap().holds());
    }

    #[test]
    fn pt_probe_is_always_normal() {
        let c4 = cyclic(4);
        for g in enumerate_morphisms(&c4, &c4, 1000).unwrap() {
            assert!(is_z_normal(&g, &c4, &c4, &pt(), 1000).unwrap().holds());
        }
    }

    #[test]
    fn identity_extends() {
        let s = sd2();
        let y = c3_star();
        let report = extend_postcomposition(&identity_regular(&y), &y, &y, &s, 100_000).unwrap();
        assert!(report.regular.holds());
        assert!(report.joint_frames.holds());
    }
}
