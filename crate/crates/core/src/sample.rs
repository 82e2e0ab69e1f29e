//! Seeded random generation of posets, functions, systems and maps.
//!
//! Everything here is deterministic for a fixed seed, which is what the
//! round-trip tests and the `random` CLI subcommands rely on. Systems are
//! generated from per-element data (a spanning function for multiplicative
//! systems, a potential for additive ones), so the defining relations hold
//! on every poset by construction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::algebra::IncidenceFunction;
use crate::automorphism::{
    compose_coalgebra_automorphism, AutDecomposition, MultiplicativeSystem,
};
use crate::coalgebra::{CoalgebraEndomap, CoalgebraVector};
use crate::derivation::{compose_coalgebra_derivation, AdditiveSystem, DerDecomposition};
use crate::error::Result;
use crate::poset::{Poset, PosetAutomorphism};
use crate::scalar::{FieldKind, FieldSpec, Scalar};

/// The stream cipher RNG used for all seeded generation.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random scalar (numerators and denominators stay single-digit
/// over the rationals).
pub fn scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field.kind() {
        FieldKind::Rationals => {
            let n = rng.random_range(-9i64..=9);
            let d = rng.random_range(1i64..=9);
            Scalar::from_fraction(n, d).expect("denominator is positive")
        }
        FieldKind::PrimeField => {
            let p = field.modulus().expect("prime field has a modulus");
            Scalar::from_integer(field, rng.random_range(0..p) as i64)
        }
    }
}

/// A random nonzero scalar.
pub fn nonzero_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A sparse random incidence function; each comparable pair carries a
/// value with probability `fill`.
pub fn incidence_function<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> IncidenceFunction {
    let mut entries = Vec::new();
    for &iv in poset.intervals() {
        if rng.random::<f64>() < fill {
            entries.push((iv, scalar(rng, field)));
        }
    }
    IncidenceFunction::from_entries(poset.clone(), field, entries)
        .expect("entries drawn from poset intervals")
}

/// A random invertible function: nonzero on the diagonal, sparse off it.
pub fn invertible_function<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> IncidenceFunction {
    let mut entries = Vec::new();
    for &iv in poset.intervals() {
        if iv.is_point() {
            entries.push((iv, nonzero_scalar(rng, field)));
        } else if rng.random::<f64>() < fill {
            entries.push((iv, scalar(rng, field)));
        }
    }
    IncidenceFunction::from_entries(poset.clone(), field, entries)
        .expect("entries drawn from poset intervals")
}

/// A random unit of the form identity plus strictly-off-diagonal part.
pub fn unit_triangular<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> IncidenceFunction {
    IncidenceFunction::delta(poset.clone(), field)
        .add(&strict_function(rng, poset, field, fill))
        .expect("same context")
}

/// A random strictly-off-diagonal function.
pub fn strict_function<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> IncidenceFunction {
    incidence_function(rng, poset, field, fill).strict_part()
}

/// A random diagonal function with nonzero values everywhere (a unit of
/// the diagonal subalgebra).
pub fn diagonal_unit<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> IncidenceFunction {
    let entries: Vec<_> = (0..poset.len())
        .map(|x| {
            (
                crate::poset::Interval::new(x, x),
                nonzero_scalar(rng, field),
            )
        })
        .collect();
    IncidenceFunction::from_entries(poset.clone(), field, entries)
        .expect("diagonal pairs are comparable")
}

/// A random multiplicative system, built as `c_xy = s(x)^{-1} s(y)` from a
/// random nonzero spanning function `s` on elements; the product relation
/// then holds automatically.
pub fn multiplicative_system<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> MultiplicativeSystem {
    let spanning: Vec<Scalar> = (0..poset.len())
        .map(|_| nonzero_scalar(rng, field))
        .collect();
    let values = poset
        .strict_pairs()
        .map(|iv| {
            let c = &spanning[iv.lo]
                .inverse()
                .expect("spanning values are nonzero")
                * &spanning[iv.hi];
            (iv, c)
        })
        .collect();
    MultiplicativeSystem::new(poset.clone(), field, values)
        .expect("spanning construction satisfies the product relation")
}

/// A random additive system, built as `c_xy = s(y) - s(x)` from a random
/// potential `s` on elements; the sum relation then holds automatically.
pub fn additive_system<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> AdditiveSystem {
    let potential: Vec<Scalar> = (0..poset.len()).map(|_| scalar(rng, field)).collect();
    let values = poset
        .strict_pairs()
        .map(|iv| (iv, &potential[iv.hi] - &potential[iv.lo]))
        .collect();
    AdditiveSystem::new(poset.clone(), field, values)
        .expect("potential construction satisfies the sum relation")
}

/// A uniformly random element of the automorphism group of the poset.
pub fn poset_automorphism<R: Rng>(rng: &mut R, poset: &Poset) -> Result<PosetAutomorphism> {
    let auts = poset.automorphisms()?;
    Ok(auts[rng.random_range(0..auts.len())].clone())
}

/// An arbitrary random linear self-map of the coalgebra.
pub fn endomap<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> CoalgebraEndomap {
    let images = poset
        .intervals()
        .iter()
        .map(|&iv| (iv, vector(rng, poset, field, fill)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    CoalgebraEndomap::from_images(poset.clone(), field, images)
        .expect("one image per interval")
}

/// A sparse random coalgebra vector.
pub fn vector<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
    fill: f64,
) -> CoalgebraVector {
    let mut terms = Vec::new();
    for &iv in poset.intervals() {
        if rng.random::<f64>() < fill {
            terms.push((iv, scalar(rng, field)));
        }
    }
    CoalgebraVector::from_terms(poset.clone(), field, terms)
        .expect("terms drawn from poset intervals")
}

/// A random coalgebra automorphism assembled from random order,
/// multiplicative and inner parts, returned together with those parts.
pub fn coalgebra_automorphism<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> Result<(CoalgebraEndomap, AutDecomposition)> {
    let parts = AutDecomposition {
        inner_unit: unit_triangular(rng, poset, field, 0.7),
        mult_system: multiplicative_system(rng, poset, field),
        order_part: poset_automorphism(rng, poset)?,
    };
    let map = compose_coalgebra_automorphism(poset, field, &parts)?;
    Ok((map, parts))
}

/// A random coalgebra derivation assembled from random inner and additive
/// parts, returned together with those parts.
pub fn coalgebra_derivation<R: Rng>(
    rng: &mut R,
    poset: &Arc<Poset>,
    field: FieldSpec,
) -> Result<(CoalgebraEndomap, DerDecomposition)> {
    let parts = DerDecomposition {
        inner_part: strict_function(rng, poset, field, 0.7),
        additive_system: additive_system(rng, poset, field),
    };
    let map = compose_coalgebra_derivation(poset, field, &parts)?;
    Ok((map, parts))
}
