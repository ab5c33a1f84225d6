//! Currying between `Mor(X, Mor(Y, Z))` and `Mor(X x Y, Z)`.

use super::space::MorSpace;
use super::{is_morphism, validate_regular, MorphismError, OrbitCounterexample, RegularMorphism, RegularViolation};
use crate::action::GlobalAction;
use crate::algebra::{decode_mixed, encode_mixed};
use crate::Verdict;

/// The three materialized spaces and the two maps between the outer ones.
#[derive(Debug, Clone)]
pub struct ExponentialLaw {
    /// `Mor(Y, Z)`.
    pub inner: MorSpace,
    /// `Mor(X, Mor(Y, Z))`.
    pub curried: MorSpace,
    pub product: GlobalAction,
    /// `Mor(X x Y, Z)`.
    pub uncurried: MorSpace,
    /// Uncurrying on point ids; `None` where the result is not a morphism.
    pub e: Vec<Option<usize>>,
    /// Currying on point ids.
    pub e_prime: Vec<Option<usize>>,
    /// Uncurrying as a regular morphism, when every index has an image.
    pub e_regular: Option<RegularMorphism>,
    pub e_prime_regular: Option<RegularMorphism>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialReport {
    pub curried_count: usize,
    pub uncurried_count: usize,
    pub e_total: bool,
    pub e_prime_total: bool,
    /// Currying after uncurrying is the identity.
    pub curried_round_trip: bool,
    /// Uncurrying after currying is the identity.
    pub uncurried_round_trip: bool,
    /// Validation of uncurrying as a regular morphism.
    pub e_regular: Option<Verdict<RegularViolation>>,
    pub e_prime_morphism: Option<Verdict<OrbitCounterexample>>,
    pub e_prime_regular: Option<Verdict<RegularViolation>>,
}

impl ExponentialReport {
    /// Bijective with both maps frame-preserving and `E` regular.
    pub fn passes(&self) -> bool {
        self.e_total
            && self.e_prime_total
            && self.curried_round_trip
            && self.uncurried_round_trip
            && self.e_regular.as_ref().is_some_and(Verdict::holds)
            && self.e_prime_morphism.as_ref().is_some_and(Verdict::holds)
    }
}

fn regroup(sigma: usize, outer: &[usize], inner: &[Vec<usize>], flat: &[usize]) -> usize {
    let digits: Vec<usize> = decode_mixed(sigma, outer)
        .into_iter()
        .zip(inner)
        .flat_map(|(d, r)| decode_mixed(d, r))
        .collect();
    encode_mixed(&digits, flat)
}

fn split(sigma: usize, flat: &[usize], inner: &[Vec<usize>], outer: &[usize]) -> usize {
    let digits = decode_mixed(sigma, flat);
    let mut parts = Vec::with_capacity(inner.len());
    let mut at = 0;
    for r in inner {
        parts.push(encode_mixed(&digits[at..at + r.len()], r));
        at += r.len();
    }
    encode_mixed(&parts, outer)
}

/// Builds both sides and both maps, then verifies them.
pub fn exponential_law(
    x: &GlobalAction,
    y: &GlobalAction,
    z: &GlobalAction,
    limit: u64,
) -> Result<(ExponentialLaw, ExponentialReport), MorphismError> {
    let inner = MorSpace::build(y, z, limit)?;
    let curried = MorSpace::build(x, &inner.action, limit)?;
    let product = x.product(y);
    let uncurried = MorSpace::build(&product, z, limit)?;
    let ny = y.point_count();

    let e: Vec<Option<usize>> = curried
        .morphisms
        .iter()
        .map(|outer| {
            let h: Vec<usize> = outer.iter().flat_map(|&f| inner.morphisms[f].iter().copied()).collect();
            uncurried.id_of(&h)
        })
        .collect();
    let e_prime: Vec<Option<usize>> = uncurried
        .morphisms
        .iter()
        .map(|h| {
            let outer: Option<Vec<usize>> = h.chunks(ny.max(1)).map(|row| inner.id_of(row)).collect();
            outer.and_then(|o| curried.id_of(&o))
        })
        .collect();
    let e_total = e.iter().all(Option::is_some);
    let e_prime_total = e_prime.iter().all(Option::is_some);
    let curried_round_trip =
        e.iter().enumerate().all(|(i, img)| img.and_then(|j| e_prime[j]) == Some(i));
    let uncurried_round_trip =
        e_prime.iter().enumerate().all(|(i, img)| img.and_then(|j| e[j]) == Some(i));

    // index maps and per-index group maps
    let inner_radices = |k: usize| -> Vec<Vec<usize>> {
        curried.betas[k].iter().map(|&b| inner.radices(b, z)).collect()
    };
    let e_iota: Option<Vec<usize>> = curried
        .betas
        .iter()
        .map(|k| {
            let flat: Vec<usize> = k.iter().flat_map(|&b| inner.betas[b].iter().copied()).collect();
            uncurried.beta_id(&flat)
        })
        .collect();
    let e_regular = match (&e_iota, e_total) {
        (Some(iota), true) => {
            let kappa = (0..curried.betas.len())
                .map(|k| {
                    let outer = curried.radices(k, &inner.action);
                    let nested = inner_radices(k);
                    let flat = uncurried.radices(iota[k], z);
                    let order: usize = outer.iter().product();
                    (0..order).map(|s| regroup(s, &outer, &nested, &flat)).collect()
                })
                .collect();
            let lambda = e.iter().map(|v| v.expect("total")).collect();
            Some(RegularMorphism { iota: iota.clone(), kappa, lambda })
        }
        _ => None,
    };
    let e_prime_iota: Option<Vec<usize>> = uncurried
        .betas
        .iter()
        .map(|g| {
            let outer: Option<Vec<usize>> = g.chunks(ny.max(1)).map(|row| inner.beta_id(row)).collect();
            outer.and_then(|o| curried.beta_id(&o))
        })
        .collect();
    let e_prime_regular = match (&e_prime_iota, e_prime_total) {
        (Some(iota), true) => {
            let kappa = (0..uncurried.betas.len())
                .map(|g| {
                    let flat = uncurried.radices(g, z);
                    let outer = curried.radices(iota[g], &inner.action);
                    let nested = inner_radices(iota[g]);
                    let order: usize = flat.iter().product();
                    (0..order).map(|s| split(s, &flat, &nested, &outer)).collect()
                })
                .collect();
            let lambda = e_prime.iter().map(|v| v.expect("total")).collect();
            Some(RegularMorphism { iota: iota.clone(), kappa, lambda })
        }
        _ => None,
    };

    let e_regular_verdict = match &e_regular {
        Some(r) => Some(validate_regular(r, &curried.action, &uncurried.action)?),
        None => None,
    };
    let e_prime_morphism = if e_prime_total {
        let table: Vec<usize> = e_prime.iter().map(|v| v.expect("total")).collect();
        Some(is_morphism(&table, &uncurried.action, &curried.action)?)
    } else {
        None
    };
    let e_prime_regular_verdict = match &e_prime_regular {
        Some(r) => Some(validate_regular(r, &uncurried.action, &curried.action)?),
        None => None,
    };

    let report = ExponentialReport {
        curried_count: curried.morphisms.len(),
        uncurried_count: uncurried.morphisms.len(),
        e_total,
        e_prime_total,
        curried_round_trip,
        uncurried_round_trip,
        e_regular: e_regular_verdict,
        e_prime_morphism,
        e_prime_regular: e_prime_regular_verdict,
    };
    let law = ExponentialLaw { inner, curried, product, uncurried, e, e_prime, e_regular, e_prime_regular };
    Ok((law, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn point_cases() {
        let (law, report) = exponential_law(&pt(), &pt(), &cyclic(3), 10_000).unwrap();
        assert_eq!(report.curried_count, 3);
        assert_eq!(law.e, vec![Some(0), Some(1), Some(2)]);
        assert!(report.passes());
    }

    #[test]
    fn sd2_cases() {
        let (_, report) = exponential_law(&pt(), &sd2(), &sd2(), 100_000).unwrap();
        assert_eq!(report.curried_count, report.uncurried_count);
        assert!(report.passes());
        let (_, report) = exponential_law(&sd2(), &pt(), &c3_star(), 100_000).unwrap();
        assert!(report.passes());
        assert!(report.e_prime_regular.unwrap().holds());
    }

    #[test]
    fn regrouping_round_trips() {
        let outer = [4, 3];
        let nested = [vec![2, 2], vec![3]];
        let flat = [2, 2, 3];
        for s in 0..12 {
            assert_eq!(split(regroup(s, &outer, &nested, &flat), &flat, &nested, &outer), s);
        }
    }
}
