//! Derivations of the incidence algebra and coalgebra.
//!
//! Two families on each side: inner derivations (commutators on the
//! algebra side, their interval form on the coalgebra side) and additive
//! derivations parametrized by additive systems. Every derivation is the
//! sum of an inner derivation by a strictly-off-diagonal element and an
//! additive one, uniquely; [`decompose_coalgebra_derivation`] computes the
//! pair through the dual transfer.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::IncidenceFunction;
use crate::coalgebra::{CoalgebraEndomap, CoalgebraVector};
use crate::duality::{dual_transfer, AlgebraEndomap};
use crate::error::{Error, Result};
use crate::poset::{Interval, Poset};
use crate::scalar::{FieldSpec, Scalar};

/// Scalars on strict pairs satisfying `c_xy = c_xz + c_zy` whenever
/// `x < z < y`. Zero values are allowed and omitted from storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveSystem {
    poset: Arc<Poset>,
    field: FieldSpec,
    values: BTreeMap<Interval, Scalar>,
}

impl AdditiveSystem {
    /// Validates keys, fields and the sum relation on all triples
    /// `x < z < y`; absent strict pairs count as zero.
    pub fn new(
        poset: Arc<Poset>,
        field: FieldSpec,
        values: BTreeMap<Interval, Scalar>,
    ) -> Result<Self> {
        for (&iv, v) in &values {
            if iv.lo >= poset.len() || iv.hi >= poset.len() || !poset.lt(iv.lo, iv.hi) {
                return Err(Error::Schema(format!(
                    "additive system key ({},{}) is not a strict pair",
                    iv.lo, iv.hi
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut values = values;
        values.retain(|_, v| !v.is_zero());
        let sys = AdditiveSystem {
            poset,
            field,
            values,
        };
        sys.check_relation()?;
        Ok(sys)
    }

    fn check_relation(&self) -> Result<()> {
        for iv in self.poset.strict_pairs() {
            for z in self
                .poset
                .interval_elements(iv.lo, iv.hi)
                .expect("strict pair is comparable")
            {
                if z == iv.lo || z == iv.hi {
                    continue;
                }
                let left = self.value(Interval::new(iv.lo, z));
                let right = self.value(Interval::new(z, iv.hi));
                if self.value(iv) != &left + &right {
                    return Err(Error::SystemRelationViolation(
                        self.poset.name(iv.lo).to_string(),
                        self.poset.name(z).to_string(),
                        self.poset.name(iv.hi).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn all_zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        AdditiveSystem {
            poset,
            field,
            values: BTreeMap::new(),
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The system value; zero on the diagonal and on omitted pairs.
    pub fn value(&self, iv: Interval) -> Scalar {
        self.values
            .get(&iv)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// The stored nonzero values.
    pub fn values(&self) -> impl Iterator<Item = (Interval, &Scalar)> {
        self.values.iter().map(|(&iv, v)| (iv, v))
    }
}

/// The unique splitting of an algebra derivation: an inner part given by
/// a strictly-off-diagonal element and an additive system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerDecomposition {
    pub inner_part: IncidenceFunction,
    pub additive_system: AdditiveSystem,
}

/// The coalgebra-side splitting `d = inner + additive`, with the
/// algebra-side witness it was pulled back from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraDerDecomposition {
    pub inner: CoalgebraEndomap,
    pub additive: CoalgebraEndomap,
    pub witness: DerDecomposition,
}

/// The additive derivation of the coalgebra: `[x,y] -> c_xy [x,y]` on
/// strict pairs, zero on point intervals.
pub fn additive_coalgebra_derivation(sys: &AdditiveSystem) -> CoalgebraEndomap {
    let poset = sys.poset().clone();
    let field = sys.field();
    CoalgebraEndomap::from_fn(poset.clone(), field, |iv| {
        if iv.is_point() {
            CoalgebraVector::zero(poset.clone(), field)
        } else {
            CoalgebraVector::basis(poset.clone(), field, iv)
                .expect("poset interval is valid")
                .scale(&sys.value(iv))
        }
    })
}

/// The inner derivation of the coalgebra determined by a function `g`:
///
/// `[x,y] -> sum over u of g(u,y) [x,u] - sum over v of g(x,v) [v,y]`,
///
/// both sums over the points of `[x,y]`. Its dual transfer is the
/// commutator `f -> fg - gf`.
pub fn inner_coalgebra_derivation(g: &IncidenceFunction) -> CoalgebraEndomap {
    let poset = g.poset().clone();
    let field = g.field();
    CoalgebraEndomap::from_fn(poset.clone(), field, |iv| {
        let inside = poset
            .interval_elements(iv.lo, iv.hi)
            .expect("poset interval is comparable");
        let mut terms = Vec::new();
        for &u in &inside {
            terms.push((Interval::new(iv.lo, u), g.value(u, iv.hi)));
        }
        for &v in &inside {
            terms.push((Interval::new(v, iv.hi), -&g.value(iv.lo, v)));
        }
        CoalgebraVector::from_terms(poset.clone(), field, terms)
            .expect("terms stay inside the interval")
    })
}

/// The additive derivation of the algebra: zero on the diagonal,
/// `e_{xy} -> c_{xy} e_{xy}` on strict pairs.
pub fn additive_algebra_derivation(sys: &AdditiveSystem) -> AlgebraEndomap {
    let poset = sys.poset().clone();
    let field = sys.field();
    AlgebraEndomap::from_fn(poset.clone(), field, |iv| {
        if iv.is_point() {
            IncidenceFunction::zero(poset.clone(), field)
        } else {
            IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)
                .expect("poset interval is valid")
                .scale(&sys.value(iv))
                .expect("system value shares the field")
        }
    })
}

/// The inner derivation `f -> fc - cf` of the algebra, tabulated on
/// matrix units.
pub fn inner_algebra_derivation(c: &IncidenceFunction) -> AlgebraEndomap {
    let poset = c.poset().clone();
    let field = c.field();
    AlgebraEndomap::from_fn(poset.clone(), field, |iv| {
        let unit = IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)
            .expect("poset interval is valid");
        unit.convolve(c)
            .and_then(|fc| fc.sub(&c.convolve(&unit)?))
            .expect("same context")
    })
}

/// Assembles the algebra derivation `inner + additive` from its parts.
pub fn compose_algebra_derivation(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &DerDecomposition,
) -> Result<AlgebraEndomap> {
    ensure_parts_context(poset, field, parts)?;
    inner_algebra_derivation(&parts.inner_part)
        .add(&additive_algebra_derivation(&parts.additive_system))
}

/// Assembles the coalgebra derivation `inner + additive` from its parts.
pub fn compose_coalgebra_derivation(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &DerDecomposition,
) -> Result<CoalgebraEndomap> {
    ensure_parts_context(poset, field, parts)?;
    inner_coalgebra_derivation(&parts.inner_part)
        .add(&additive_coalgebra_derivation(&parts.additive_system))
}

fn ensure_parts_context(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &DerDecomposition,
) -> Result<()> {
    if parts.inner_part.field() != field || parts.additive_system.field() != field {
        return Err(Error::FieldMismatch);
    }
    if **parts.inner_part.poset() != **poset || **parts.additive_system.poset() != **poset {
        return Err(Error::PosetMismatch);
    }
    Ok(())
}

/// Splits an element into its diagonal and strict parts; the inner
/// derivations they determine sum to the inner derivation of the whole,
/// exhibiting the splitting of the inner derivation space.
pub fn split_inner_derivation(c: &IncidenceFunction) -> (IncidenceFunction, IncidenceFunction) {
    c.split_diagonal()
}

/// Verifies the Leibniz rule `d(fg) = d(f) g + f d(g)` on all matrix-unit
/// pairs, which extends to the whole algebra by bilinearity.
pub fn verify_algebra_derivation(map: &AlgebraEndomap) -> Result<()> {
    let poset = map.poset().clone();
    for &a in poset.intervals() {
        for &b in poset.intervals() {
            let product_image = if a.hi == b.lo {
                map.image(Interval::new(a.lo, b.hi)).clone()
            } else {
                IncidenceFunction::zero(poset.clone(), map.field())
            };
            let unit_a = IncidenceFunction::matrix_unit(poset.clone(), map.field(), a.lo, a.hi)?;
            let unit_b = IncidenceFunction::matrix_unit(poset.clone(), map.field(), b.lo, b.hi)?;
            let leibniz = map
                .image(a)
                .convolve(&unit_b)?
                .add(&unit_a.convolve(map.image(b))?)?;
            if product_image != leibniz {
                return Err(Error::NotAlgebraDerivation(format!(
                    "Leibniz rule fails on {} * {}",
                    poset.pair_label(a),
                    poset.pair_label(b)
                )));
            }
        }
    }
    Ok(())
}

/// Splits an algebra derivation as `inner + additive` with a
/// strictly-off-diagonal inner element; the pair is unique.
///
/// The inner element is assembled from the rows of the idempotent images,
/// `g = sum over x of e_x d(e_x)`; the remainder must kill the diagonal
/// subalgebra and scale each strict matrix unit, which yields the
/// additive system. Recomposition is verified before returning.
pub fn decompose_algebra_derivation(map: &AlgebraEndomap) -> Result<DerDecomposition> {
    verify_algebra_derivation(map)?;
    let poset = map.poset().clone();
    let field = map.field();
    let n = poset.len();

    let mut inner_entries = Vec::new();
    for x in 0..n {
        for (iv, c) in map.image(Interval::new(x, x)).entries() {
            if iv.lo == x {
                inner_entries.push((iv, c.clone()));
            }
        }
    }
    let inner_part = IncidenceFunction::from_entries(poset.clone(), field, inner_entries)?;
    if !inner_part.is_strict() {
        return Err(Error::DecompositionInconsistency(
            "assembled inner element has diagonal support".into(),
        ));
    }

    let remainder = {
        let inner = inner_algebra_derivation(&inner_part);
        let mut images = BTreeMap::new();
        for (iv, f) in map.images() {
            images.insert(iv, f.sub(inner.image(iv))?);
        }
        AlgebraEndomap::from_images(poset.clone(), field, images)?
    };

    let mut system_values = BTreeMap::new();
    for &iv in poset.intervals() {
        let image = remainder.image(iv);
        if iv.is_point() {
            if !image.is_zero() {
                return Err(Error::DecompositionInconsistency(format!(
                    "residual derivation moves the idempotent at {}",
                    poset.name(iv.lo)
                )));
            }
        } else {
            let c = image.value(iv.lo, iv.hi);
            let unit = IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)?;
            if *image != unit.scale(&c)? {
                return Err(Error::DecompositionInconsistency(format!(
                    "residual derivation does not scale the unit at {}",
                    poset.pair_label(iv)
                )));
            }
            system_values.insert(iv, c);
        }
    }
    let additive_system = AdditiveSystem::new(poset.clone(), field, system_values)?;

    let decomposition = DerDecomposition {
        inner_part,
        additive_system,
    };
    let recomposed = compose_algebra_derivation(&poset, field, &decomposition)?;
    if recomposed != *map {
        return Err(Error::DecompositionInconsistency(
            "recomposition does not reproduce the input".into(),
        ));
    }
    Ok(decomposition)
}

/// Splits a coalgebra derivation as `inner + additive` by transferring to
/// the algebra side, splitting there, and pulling the parts back through
/// the coalgebra constructors. Linearity and injectivity of the transfer
/// make the pulled-back sum reproduce the input exactly, which is
/// verified before returning.
pub fn decompose_coalgebra_derivation(
    map: &CoalgebraEndomap,
) -> Result<CoalgebraDerDecomposition> {
    if let Some(violation) = map.derivation_violation() {
        return Err(Error::NotCoalgebraDerivation(
            map.poset().interval_label(violation.interval),
        ));
    }
    let transferred = dual_transfer(map);
    let witness = decompose_algebra_derivation(&transferred)?;
    let inner = inner_coalgebra_derivation(&witness.inner_part);
    let additive = additive_coalgebra_derivation(&witness.additive_system);
    let recomposed = inner.add(&additive)?;
    if recomposed != *map {
        return Err(Error::DecompositionInconsistency(
            "pulled-back parts do not reproduce the input".into(),
        ));
    }
    Ok(CoalgebraDerDecomposition {
        inner,
        additive,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(q(), n)
    }

    fn system(poset: &Arc<Poset>, values: &[((usize, usize), i64)]) -> Result<AdditiveSystem> {
        AdditiveSystem::new(
            poset.clone(),
            q(),
            values
                .iter()
                .map(|&((x, y), c)| (Interval::new(x, y), s(c)))
                .collect(),
        )
    }

    #[test]
    fn additive_system_validation() {
        let p = Poset::chain(3).unwrap();
        assert!(system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 5)]).is_ok());
        assert_eq!(
            system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 6)]),
            Err(Error::SystemRelationViolation(
                "0".into(),
                "1".into(),
                "2".into()
            ))
        );
        // Missing pairs default to zero only when consistent.
        assert!(system(&p, &[((0, 1), 2)]).is_err());
        assert!(system(&p, &[]).is_ok());
    }

    #[test]
    fn additive_derivation_scales_strict_intervals() {
        let p = Poset::chain(3).unwrap();
        let sys = system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 5)]).unwrap();
        let map = additive_coalgebra_derivation(&sys);
        let top = CoalgebraVector::basis(p.clone(), q(), Interval::new(0, 2)).unwrap();
        assert_eq!(map.apply(&top).unwrap(), top.scale(&s(5)));
        assert!(map.image(Interval::new(1, 1)).is_zero());
        assert!(map.is_coalgebra_derivation());

        let zero_sys = AdditiveSystem::all_zero(p.clone(), q());
        assert_eq!(
            additive_coalgebra_derivation(&zero_sys),
            CoalgebraEndomap::zero(p, q())
        );
    }

    #[test]
    fn inner_coalgebra_derivation_examples() {
        let p2 = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p2.clone(), q());
        assert_eq!(
            inner_coalgebra_derivation(&delta),
            CoalgebraEndomap::zero(p2.clone(), q())
        );

        let e01 = IncidenceFunction::matrix_unit(p2.clone(), q(), 0, 1).unwrap();
        let nu = inner_coalgebra_derivation(&e01);
        let expected = CoalgebraVector::from_terms(
            p2.clone(),
            q(),
            [(Interval::new(0, 0), s(1)), (Interval::new(1, 1), s(-1))],
        )
        .unwrap();
        assert_eq!(*nu.image(Interval::new(0, 1)), expected);
        assert!(nu.image(Interval::new(0, 0)).is_zero());
        assert!(nu.is_coalgebra_derivation());

        let p3 = Poset::chain(3).unwrap();
        let e02 = IncidenceFunction::matrix_unit(p3.clone(), q(), 0, 2).unwrap();
        let nu = inner_coalgebra_derivation(&e02);
        let expected = CoalgebraVector::from_terms(
            p3.clone(),
            q(),
            [(Interval::new(0, 0), s(1)), (Interval::new(2, 2), s(-1))],
        )
        .unwrap();
        assert_eq!(*nu.image(Interval::new(0, 2)), expected);
    }

    #[test]
    fn algebra_derivation_examples() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let zero = AlgebraEndomap::zero(p.clone(), q());
        assert_eq!(inner_algebra_derivation(&delta), zero);

        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let d = inner_algebra_derivation(&e01);
        assert_eq!(*d.image(Interval::new(0, 0)), e01);
        assert_eq!(*d.image(Interval::new(1, 1)), e01.neg());
        assert!(d.image(Interval::new(0, 1)).is_zero());
        assert!(verify_algebra_derivation(&d).is_ok());

        let sys = system(&p, &[((0, 1), 2)]).unwrap();
        let add = additive_algebra_derivation(&sys);
        assert_eq!(*add.image(Interval::new(0, 1)), e01.scale(&s(2)).unwrap());
        assert!(add.image(Interval::new(0, 0)).is_zero());
        assert!(verify_algebra_derivation(&add).is_ok());
    }

    #[test]
    fn inner_derivation_by_diagonal_element() {
        let p = Poset::chain(2).unwrap();
        let e0 = IncidenceFunction::idempotent(p.clone(), q(), 0).unwrap();
        let c = e0.scale(&s(2)).unwrap();
        let d = inner_algebra_derivation(&c);
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        assert_eq!(*d.image(Interval::new(0, 1)), e01.scale(&s(-2)).unwrap());
        assert!(d.image(Interval::new(0, 0)).is_zero());
    }

    #[test]
    fn split_inner_derivation_examples() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let c = delta.add(&e01).unwrap();
        let (diag, strict) = split_inner_derivation(&c);
        assert_eq!(diag, delta);
        assert_eq!(strict, e01);
        assert_eq!(
            inner_algebra_derivation(&delta),
            AlgebraEndomap::zero(p.clone(), q())
        );
        // d_c = d_diag + d_strict
        let total = inner_algebra_derivation(&c);
        let sum = inner_algebra_derivation(&diag)
            .add(&inner_algebra_derivation(&strict))
            .unwrap();
        assert_eq!(total, sum);
    }

    #[test]
    fn transfer_carries_derivations_pointwise() {
        let mut rng = sample::rng(57);
        for poset in [Poset::chain(3).unwrap(), Poset::boolean(2).unwrap()] {
            for field in [q(), FieldSpec::prime_field(5).unwrap()] {
                let g = sample::incidence_function(&mut rng, &poset, field, 0.6);
                assert_eq!(
                    dual_transfer(&inner_coalgebra_derivation(&g)),
                    inner_algebra_derivation(&g)
                );
                let sys = sample::additive_system(&mut rng, &poset, field);
                assert_eq!(
                    dual_transfer(&additive_coalgebra_derivation(&sys)),
                    additive_algebra_derivation(&sys)
                );
            }
        }
    }

    #[test]
    fn transfer_is_linear_on_derivations(){
        let mut rng = sample::rng(58);
        let p = Poset::random(5, 0.4, 21).unwrap();
        let a = sample::endomap(&mut rng, &p, q(), 0.5);
        let b = sample::endomap(&mut rng, &p, q(), 0.5);
        assert_eq!(
            dual_transfer(&a.add(&b).unwrap()),
            dual_transfer(&a).add(&dual_transfer(&b)).unwrap()
        );
    }

    #[test]
    fn leibniz_on_random_pairs() {
        let mut rng = sample::rng(59);
        let p = Poset::random(5, 0.5, 33).unwrap();
        let g = sample::incidence_function(&mut rng, &p, q(), 0.6);
        let d = inner_algebra_derivation(&g);
        for _ in 0..10 {
            let a = sample::incidence_function(&mut rng, &p, q(), 0.5);
            let b = sample::incidence_function(&mut rng, &p, q(), 0.5);
            let lhs = d.apply(&a.convolve(&b).unwrap()).unwrap();
            let rhs = d
                .apply(&a)
                .unwrap()
                .convolve(&b)
                .unwrap()
                .add(&a.convolve(&d.apply(&b).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn diagonal_compatibility_relations() {
        // For derivations that kill the diagonal-to-strict component, the
        // strict action is compatible with multiplication by diagonal
        // elements on either side.
        let mut rng = sample::rng(61);
        let p = Poset::random(6, 0.45, 8).unwrap();
        let diag = sample::diagonal_unit(&mut rng, &p, q());
        let strict = sample::strict_function(&mut rng, &p, q(), 0.6);
        for d in [
            inner_algebra_derivation(&sample::diagonal_unit(&mut rng, &p, q())),
            additive_algebra_derivation(&sample::additive_system(&mut rng, &p, q())),
        ] {
            assert!(d.apply(&diag).unwrap().is_zero());
            let lhs = d.apply(&diag.convolve(&strict).unwrap()).unwrap();
            let rhs = diag.convolve(&d.apply(&strict).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = d.apply(&strict.convolve(&diag).unwrap()).unwrap();
            let rhs = d.apply(&strict).unwrap().convolve(&diag).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn decompose_examples() {
        let p = Poset::chain(2).unwrap();
        let zero = AlgebraEndomap::zero(p.clone(), q());
        let dec = decompose_algebra_derivation(&zero).unwrap();
        assert!(dec.inner_part.is_zero());
        assert_eq!(dec.additive_system, AdditiveSystem::all_zero(p.clone(), q()));

        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let d = inner_algebra_derivation(&e01);
        let dec = decompose_algebra_derivation(&d).unwrap();
        assert_eq!(dec.inner_part, e01);
        assert_eq!(dec.additive_system.values().count(), 0);

        let sys = system(&p, &[((0, 1), 5)]).unwrap();
        let mixed = d.add(&additive_algebra_derivation(&sys)).unwrap();
        let dec = decompose_algebra_derivation(&mixed).unwrap();
        assert_eq!(dec.inner_part, e01);
        assert_eq!(dec.additive_system, sys);
    }

    #[test]
    fn decompose_coalgebra_round_trip() {
        let mut rng = sample::rng(62);
        for poset in [
            Poset::chain(3).unwrap(),
            Poset::boolean(2).unwrap(),
            Poset::random(5, 0.4, 14).unwrap(),
        ] {
            for field in [q(), FieldSpec::prime_field(5).unwrap()] {
                for _ in 0..5 {
                    let (map, parts) =
                        sample::coalgebra_derivation(&mut rng, &poset, field).unwrap();
                    let dec = decompose_coalgebra_derivation(&map).unwrap();
                    assert_eq!(dec.witness, parts);
                    assert_eq!(dec.inner.add(&dec.additive).unwrap(), map);
                }
            }
        }

        let p = Poset::chain(2).unwrap();
        let zero = CoalgebraEndomap::zero(p.clone(), q());
        let dec = decompose_coalgebra_derivation(&zero).unwrap();
        assert!(dec.witness.inner_part.is_zero());
        assert_eq!(dec.inner, zero);
        assert_eq!(dec.additive, zero);
    }

    #[test]
    fn decomposition_is_unique() {
        // If inner parts g and g' both produce the same derivation up to
        // additive parts, the difference kills the diagonal, forcing the
        // strict element to vanish.
        let mut rng = sample::rng(63);
        let p = Poset::random(5, 0.5, 17).unwrap();
        let g = sample::strict_function(&mut rng, &p, q(), 0.6);
        let sys = sample::additive_system(&mut rng, &p, q());
        let d = compose_algebra_derivation(
            &p,
            q(),
            &DerDecomposition {
                inner_part: g.clone(),
                additive_system: sys.clone(),
            },
        )
        .unwrap();
        let dec = decompose_algebra_derivation(&d).unwrap();
        assert_eq!(dec.inner_part, g);
        assert_eq!(dec.additive_system, sys);
    }

    #[test]
    fn non_derivations_are_rejected() {
        let p = Poset::chain(2).unwrap();
        let id_c = CoalgebraEndomap::identity(p.clone(), q());
        assert!(matches!(
            decompose_coalgebra_derivation(&id_c),
            Err(Error::NotCoalgebraDerivation(_))
        ));
        let id_a = AlgebraEndomap::identity(p, q());
        assert!(matches!(
            decompose_algebra_derivation(&id_a),
            Err(Error::NotAlgebraDerivation(_))
        ));
    }
}
