//! Automorphisms of the incidence algebra and coalgebra.
//!
//! Three families are constructed on each side: inner (conjugation by an
//! invertible function), multiplicative (scaling basis elements by a
//! multiplicative system) and order (induced by a poset automorphism).
//! Every automorphism factors exactly as order . mult . inner on the
//! coalgebra side, mirroring inner . mult . order on the algebra side, and
//! [`decompose_coalgebra_automorphism`] computes that factorization
//! constructively through the dual transfer.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::IncidenceFunction;
use crate::coalgebra::{CoalgebraEndomap, CoalgebraVector};
use crate::duality::{dual_transfer, AlgebraEndomap};
use crate::error::{Error, Result};
use crate::poset::{Interval, Poset, PosetAutomorphism};
use crate::scalar::{FieldSpec, Scalar};

/// Whether conjugation runs forward (`f -> h^{-1} f h` after transfer) or
/// backward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerDirection {
    Forward,
    Inverse,
}

/// Nonzero scalars on strict pairs satisfying `c_xy = c_xz c_zy` whenever
/// `x < z < y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeSystem {
    poset: Arc<Poset>,
    field: FieldSpec,
    values: BTreeMap<Interval, Scalar>,
}

impl MultiplicativeSystem {
    /// Validates completeness over strict pairs, nonzeroness, and the
    /// product relation on all triples `x < z < y`.
    pub fn new(
        poset: Arc<Poset>,
        field: FieldSpec,
        values: BTreeMap<Interval, Scalar>,
    ) -> Result<Self> {
        for iv in poset.strict_pairs() {
            match values.get(&iv) {
                None => {
                    return Err(Error::MissingSystemValue(
                        poset.name(iv.lo).to_string(),
                        poset.name(iv.hi).to_string(),
                    ))
                }
                Some(v) => {
                    if v.field() != field {
                        return Err(Error::FieldMismatch);
                    }
                    if v.is_zero() {
                        return Err(Error::ZeroSystemValue(
                            poset.name(iv.lo).to_string(),
                            poset.name(iv.hi).to_string(),
                        ));
                    }
                }
            }
        }
        if values.len() != poset.strict_pairs().count() {
            return Err(Error::Schema("system has values for unknown pairs".into()));
        }
        let sys = MultiplicativeSystem {
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
                let left = &self.values[&Interval::new(iv.lo, z)];
                let right = &self.values[&Interval::new(z, iv.hi)];
                if self.values[&iv] != left * right {
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

    /// The trivial system, all values one.
    pub fn all_ones(poset: Arc<Poset>, field: FieldSpec) -> Self {
        let values = poset
            .strict_pairs()
            .map(|iv| (iv, Scalar::one(field)))
            .collect();
        MultiplicativeSystem {
            poset,
            field,
            values,
        }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The system value, extended by 1 on the diagonal.
    pub fn value(&self, iv: Interval) -> Scalar {
        if iv.is_point() {
            Scalar::one(self.field)
        } else {
            self.values[&iv].clone()
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (Interval, &Scalar)> {
        self.values.iter().map(|(&iv, v)| (iv, v))
    }
}

/// The algebra-side factorization of an automorphism: conjugation by a
/// unit-diagonal element, then a multiplicative automorphism, then an
/// order automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutDecomposition {
    pub inner_unit: IncidenceFunction,
    pub mult_system: MultiplicativeSystem,
    pub order_part: PosetAutomorphism,
}

/// The coalgebra-side factorization `phi = order . mult . inner`, kept
/// together with the algebra-side witness it was pulled back from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraAutDecomposition {
    pub order: CoalgebraEndomap,
    pub mult: CoalgebraEndomap,
    pub inner: CoalgebraEndomap,
    pub witness: AutDecomposition,
}

/// The multiplicative automorphism of the coalgebra: scales each strict
/// basis interval by its system value and fixes point intervals.
pub fn mult_coalgebra_automorphism(sys: &MultiplicativeSystem) -> CoalgebraEndomap {
    let poset = sys.poset().clone();
    let field = sys.field();
    CoalgebraEndomap::from_fn(poset.clone(), field, |iv| {
        CoalgebraVector::basis(poset.clone(), field, iv)
            .expect("poset interval is valid")
            .scale(&sys.value(iv))
    })
}

/// The order automorphism of the coalgebra: `[x,y] -> [tau(x), tau(y)]`.
pub fn order_coalgebra_automorphism(
    poset: &Arc<Poset>,
    field: FieldSpec,
    tau: &PosetAutomorphism,
) -> Result<CoalgebraEndomap> {
    let tau = PosetAutomorphism::new(poset, tau.forward_map().to_vec())?;
    let p = poset.clone();
    Ok(CoalgebraEndomap::from_fn(poset.clone(), field, move |iv| {
        let image = Interval::new(tau.apply(iv.lo), tau.apply(iv.hi));
        CoalgebraVector::basis(p.clone(), field, image).expect("automorphism preserves order")
    }))
}

/// The inner automorphism of the coalgebra determined by an invertible
/// function `h`:
///
/// `[x,y] -> sum over x <= s <= t <= y of h^{-1}(x,s) h(t,y) [s,t]`
///
/// in the forward direction; the inverse direction swaps the roles,
/// `[x,y] -> sum of h^{-1}(t,y) h(x,s) [s,t]`, and composing the two in
/// either order gives the identity.
pub fn inner_coalgebra_automorphism(
    h: &IncidenceFunction,
    direction: InnerDirection,
) -> Result<CoalgebraEndomap> {
    let h_inv = h.inverse()?;
    let poset = h.poset().clone();
    let field = h.field();
    let mut images = BTreeMap::new();
    for &iv in poset.intervals() {
        let inside = poset
            .interval_elements(iv.lo, iv.hi)
            .expect("poset interval is comparable");
        let mut terms = Vec::new();
        for &s in &inside {
            for &t in &inside {
                if !poset.leq(s, t) {
                    continue;
                }
                let c = match direction {
                    InnerDirection::Forward => &h_inv.value(iv.lo, s) * &h.value(t, iv.hi),
                    InnerDirection::Inverse => &h_inv.value(t, iv.hi) * &h.value(iv.lo, s),
                };
                terms.push((Interval::new(s, t), c));
            }
        }
        images.insert(
            iv,
            CoalgebraVector::from_terms(poset.clone(), field, terms)?,
        );
    }
    CoalgebraEndomap::from_images(poset, field, images)
}

/// The multiplicative automorphism of the algebra: identity on the
/// diagonal, `e_{xy} -> c_{xy} e_{xy}` on strict pairs.
pub fn mult_algebra_automorphism(sys: &MultiplicativeSystem) -> AlgebraEndomap {
    let poset = sys.poset().clone();
    let field = sys.field();
    AlgebraEndomap::from_fn(poset.clone(), field, |iv| {
        IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)
            .expect("poset interval is valid")
            .scale(&sys.value(iv))
            .expect("system value shares the field")
    })
}

/// The order automorphism of the algebra, `f -> f . (tau x tau)`;
/// on matrix units this sends `e_{st}` to `e_{tau^{-1}(s), tau^{-1}(t)}`.
/// The assignment `tau -> eta_tau` reverses composition.
pub fn order_algebra_automorphism(
    poset: &Arc<Poset>,
    field: FieldSpec,
    tau: &PosetAutomorphism,
) -> Result<AlgebraEndomap> {
    let tau = PosetAutomorphism::new(poset, tau.forward_map().to_vec())?;
    let p = poset.clone();
    Ok(AlgebraEndomap::from_fn(poset.clone(), field, move |iv| {
        IncidenceFunction::matrix_unit(p.clone(), field, tau.unapply(iv.lo), tau.unapply(iv.hi))
            .expect("automorphism preserves order")
    }))
}

/// Conjugation `f -> v^{-1} f v` by an invertible function, tabulated on
/// matrix units.
pub fn inner_algebra_automorphism(v: &IncidenceFunction) -> Result<AlgebraEndomap> {
    let v_inv = v.inverse()?;
    let poset = v.poset().clone();
    let field = v.field();
    let mut images = BTreeMap::new();
    for &iv in poset.intervals() {
        let unit = IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)?;
        images.insert(iv, v_inv.convolve(&unit)?.convolve(v)?);
    }
    AlgebraEndomap::from_images(poset, field, images)
}

/// Assembles the algebra automorphism `inner . mult . order` from its
/// factors.
pub fn compose_algebra_automorphism(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &AutDecomposition,
) -> Result<AlgebraEndomap> {
    ensure_parts_context(poset, field, parts)?;
    let inner = inner_algebra_automorphism(&parts.inner_unit)?;
    let mult = mult_algebra_automorphism(&parts.mult_system);
    let order = order_algebra_automorphism(poset, field, &parts.order_part)?;
    inner.compose(&mult.compose(&order)?)
}

/// Assembles the coalgebra automorphism `order . mult . inner` from its
/// factors.
pub fn compose_coalgebra_automorphism(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &AutDecomposition,
) -> Result<CoalgebraEndomap> {
    ensure_parts_context(poset, field, parts)?;
    let inner = inner_coalgebra_automorphism(&parts.inner_unit, InnerDirection::Forward)?;
    let mult = mult_coalgebra_automorphism(&parts.mult_system);
    let order = order_coalgebra_automorphism(poset, field, &parts.order_part)?;
    order.compose(&mult.compose(&inner)?)
}

fn ensure_parts_context(
    poset: &Arc<Poset>,
    field: FieldSpec,
    parts: &AutDecomposition,
) -> Result<()> {
    if parts.inner_unit.field() != field || parts.mult_system.field() != field {
        return Err(Error::FieldMismatch);
    }
    if **parts.inner_unit.poset() != **poset || **parts.mult_system.poset() != **poset {
        return Err(Error::PosetMismatch);
    }
    Ok(())
}

/// Verifies that a tabulated linear map is an algebra automorphism:
/// it must fix the identity, be multiplicative on all basis pairs, and be
/// bijective.
pub fn verify_algebra_automorphism(map: &AlgebraEndomap) -> Result<()> {
    let poset = map.poset().clone();
    let field = map.field();
    let delta = IncidenceFunction::delta(poset.clone(), field);
    if map.apply(&delta)? != delta {
        return Err(Error::NotAlgebraAutomorphism(
            "identity is not preserved".into(),
        ));
    }
    for &a in poset.intervals() {
        for &b in poset.intervals() {
            let product_image = if a.hi == b.lo {
                map.image(Interval::new(a.lo, b.hi)).clone()
            } else {
                IncidenceFunction::zero(poset.clone(), field)
            };
            let image_product = map.image(a).convolve(map.image(b))?;
            if product_image != image_product {
                return Err(Error::NotAlgebraAutomorphism(format!(
                    "multiplicativity fails on {} * {}",
                    poset.pair_label(a),
                    poset.pair_label(b)
                )));
            }
        }
    }
    if !map.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(())
}

/// Factors an algebra automorphism as `inner . mult . order` with a
/// unit-diagonal inner element.
///
/// The factors are read off directly: the order part permutes the
/// diagonal idempotent images, stripping it leaves a map that fixes
/// idempotents up to conjugation by the unit `u` assembled from the rows
/// of the idempotent images, and what remains acts on each strict pair by
/// the scalar of a multiplicative system. Each step is verified, and the
/// factorization is recomposed and compared with the input before
/// returning.
pub fn decompose_algebra_automorphism(map: &AlgebraEndomap) -> Result<AutDecomposition> {
    verify_algebra_automorphism(map)?;
    let poset = map.poset().clone();
    let field = map.field();
    let n = poset.len();

    // Order part: the image of each idempotent has a single unit diagonal
    // value, locating the preimage element.
    let mut tau_forward = vec![usize::MAX; n];
    for x in 0..n {
        let image = map.image(Interval::new(x, x));
        let mut diag = (0..n).filter(|&y| !image.value(y, y).is_zero());
        let y = diag.next().ok_or_else(|| {
            Error::NotAlgebraAutomorphism(format!(
                "image of the idempotent at {} has zero diagonal",
                poset.name(x)
            ))
        })?;
        if diag.next().is_some() || !image.value(y, y).is_one() {
            return Err(Error::NotAlgebraAutomorphism(format!(
                "image of the idempotent at {} does not locate a unique element",
                poset.name(x)
            )));
        }
        // y = tau^{-1}(x)
        tau_forward[y] = x;
    }
    let tau = PosetAutomorphism::new(&poset, tau_forward)
        .map_err(|e| Error::NotAlgebraAutomorphism(e.to_string()))?;

    // Strip the order part.
    let eta_inverse = order_algebra_automorphism(&poset, field, &tau.inverse())?;
    let stripped = map.compose(&eta_inverse)?;

    // Inner part: collect row x of the image of each idempotent e_x.
    let mut unit_entries = Vec::new();
    for x in 0..n {
        for (iv, c) in stripped.image(Interval::new(x, x)).entries() {
            if iv.lo == x {
                unit_entries.push((iv, c.clone()));
            }
        }
    }
    let inner_unit = IncidenceFunction::from_entries(poset.clone(), field, unit_entries)?;
    if !inner_unit.has_unit_diagonal() {
        return Err(Error::DecompositionInconsistency(
            "assembled inner element is not unit-diagonal".into(),
        ));
    }

    // Strip the inner part: conjugate back by u.
    let unit_inverse = inner_unit.inverse()?;
    let mut mult_images = BTreeMap::new();
    for (iv, f) in stripped.images() {
        mult_images.insert(iv, inner_unit.convolve(f)?.convolve(&unit_inverse)?);
    }
    let mult_map = AlgebraEndomap::from_images(poset.clone(), field, mult_images)?;

    // What remains must fix every idempotent and scale every strict unit.
    let mut system_values = BTreeMap::new();
    for &iv in poset.intervals() {
        let image = mult_map.image(iv);
        let unit = IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)?;
        if iv.is_point() {
            if *image != unit {
                return Err(Error::DecompositionInconsistency(format!(
                    "residual map moves the idempotent at {}",
                    poset.name(iv.lo)
                )));
            }
        } else {
            let c = image.value(iv.lo, iv.hi);
            if image != &unit.scale(&c)? || c.is_zero() {
                return Err(Error::DecompositionInconsistency(format!(
                    "residual map does not scale the unit at {}",
                    poset.pair_label(iv)
                )));
            }
            system_values.insert(iv, c);
        }
    }
    let mult_system = MultiplicativeSystem::new(poset.clone(), field, system_values)?;

    let decomposition = AutDecomposition {
        inner_unit,
        mult_system,
        order_part: tau,
    };
    let recomposed = compose_algebra_automorphism(&poset, field, &decomposition)?;
    if recomposed != *map {
        return Err(Error::DecompositionInconsistency(
            "recomposition does not reproduce the input".into(),
        ));
    }
    Ok(decomposition)
}

/// Factors a coalgebra automorphism as `order . mult . inner`.
///
/// The map is transferred to the algebra side, factored there, and the
/// factors are pulled back through the corresponding coalgebra
/// constructors; since the transfer is injective and reverses
/// composition, the pulled-back triple recomposes to the input exactly,
/// which is verified before returning.
pub fn decompose_coalgebra_automorphism(
    map: &CoalgebraEndomap,
) -> Result<CoalgebraAutDecomposition> {
    if let Some(violation) = map.morphism_violation() {
        return Err(Error::NotCoalgebraMorphism {
            interval: map.poset().interval_label(violation.interval),
            law: violation.law.as_str(),
        });
    }
    if !map.is_bijective() {
        return Err(Error::NotBijective);
    }
    let transferred = dual_transfer(map);
    let witness = decompose_algebra_automorphism(&transferred)?;
    let poset = map.poset().clone();
    let field = map.field();
    let inner = inner_coalgebra_automorphism(&witness.inner_unit, InnerDirection::Forward)?;
    let mult = mult_coalgebra_automorphism(&witness.mult_system);
    let order = order_coalgebra_automorphism(&poset, field, &witness.order_part)?;
    let recomposed = order.compose(&mult.compose(&inner)?)?;
    if recomposed != *map {
        return Err(Error::DecompositionInconsistency(
            "pulled-back factors do not reproduce the input".into(),
        ));
    }
    Ok(CoalgebraAutDecomposition {
        order,
        mult,
        inner,
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

    fn system(
        poset: &Arc<Poset>,
        values: &[((usize, usize), i64)],
    ) -> Result<MultiplicativeSystem> {
        MultiplicativeSystem::new(
            poset.clone(),
            q(),
            values
                .iter()
                .map(|&((x, y), c)| (Interval::new(x, y), s(c)))
                .collect(),
        )
    }

    #[test]
    fn multiplicative_system_validation() {
        let p = Poset::chain(3).unwrap();
        assert!(system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 6)]).is_ok());
        assert_eq!(
            system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 5)]),
            Err(Error::SystemRelationViolation(
                "0".into(),
                "1".into(),
                "2".into()
            ))
        );
        assert_eq!(
            system(&p, &[((0, 1), 2), ((1, 2), 3)]),
            Err(Error::MissingSystemValue("0".into(), "2".into()))
        );
        assert_eq!(
            system(&p, &[((0, 1), 0), ((1, 2), 3), ((0, 2), 0)]),
            Err(Error::ZeroSystemValue("0".into(), "1".into()))
        );
    }

    #[test]
    fn mult_automorphism_scales_basis_vectors() {
        let p = Poset::chain(3).unwrap();
        let sys = system(&p, &[((0, 1), 2), ((1, 2), 3), ((0, 2), 6)]).unwrap();
        let map = mult_coalgebra_automorphism(&sys);
        let top = CoalgebraVector::basis(p.clone(), q(), Interval::new(0, 2)).unwrap();
        assert_eq!(map.apply(&top).unwrap(), top.scale(&s(6)));
        assert!(map.is_coalgebra_morphism());
        assert!(map.is_bijective());

        let ones = MultiplicativeSystem::all_ones(p.clone(), q());
        assert_eq!(
            mult_coalgebra_automorphism(&ones),
            CoalgebraEndomap::identity(p, q())
        );
    }

    #[test]
    fn order_automorphism_examples() {
        let p = Poset::antichain(2).unwrap();
        let swap = PosetAutomorphism::new(&p, vec![1, 0]).unwrap();
        let map = order_coalgebra_automorphism(&p, q(), &swap).unwrap();
        let a = CoalgebraVector::basis(p.clone(), q(), Interval::new(0, 0)).unwrap();
        let b = CoalgebraVector::basis(p.clone(), q(), Interval::new(1, 1)).unwrap();
        assert_eq!(map.apply(&a).unwrap(), b);
        assert!(map.is_coalgebra_morphism());

        let id = PosetAutomorphism::identity(2);
        assert_eq!(
            order_coalgebra_automorphism(&p, q(), &id).unwrap(),
            CoalgebraEndomap::identity(p.clone(), q())
        );

        // Atom swap on the boolean square: [{},{atom0}] -> [{},{atom1}].
        let b2 = Poset::boolean(2).unwrap();
        let swap_atoms = PosetAutomorphism::new(&b2, vec![0, 2, 1, 3]).unwrap();
        let map = order_coalgebra_automorphism(&b2, q(), &swap_atoms).unwrap();
        let from = CoalgebraVector::basis(b2.clone(), q(), Interval::new(0, 1)).unwrap();
        let to = CoalgebraVector::basis(b2.clone(), q(), Interval::new(0, 2)).unwrap();
        assert_eq!(map.apply(&from).unwrap(), to);

        let not_order = PosetAutomorphism::new(&Poset::chain(2).unwrap(), vec![1, 0]);
        assert!(not_order.is_err());
    }

    #[test]
    fn inner_automorphism_two_chain() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let h = delta.add(&e01).unwrap();

        let forward = inner_coalgebra_automorphism(&h, InnerDirection::Forward).unwrap();
        let expected = CoalgebraVector::from_terms(
            p.clone(),
            q(),
            [
                (Interval::new(0, 0), s(1)),
                (Interval::new(0, 1), s(1)),
                (Interval::new(1, 1), s(-1)),
            ],
        )
        .unwrap();
        assert_eq!(*forward.image(Interval::new(0, 1)), expected);
        assert!(forward.is_coalgebra_morphism());

        let inverse = inner_coalgebra_automorphism(&h, InnerDirection::Inverse).unwrap();
        let expected_inv = CoalgebraVector::from_terms(
            p.clone(),
            q(),
            [
                (Interval::new(0, 0), s(-1)),
                (Interval::new(0, 1), s(1)),
                (Interval::new(1, 1), s(1)),
            ],
        )
        .unwrap();
        assert_eq!(*inverse.image(Interval::new(0, 1)), expected_inv);

        let id = CoalgebraEndomap::identity(p.clone(), q());
        assert_eq!(forward.compose(&inverse).unwrap(), id);
        assert_eq!(inverse.compose(&forward).unwrap(), id);

        assert_eq!(
            inner_coalgebra_automorphism(&delta, InnerDirection::Forward).unwrap(),
            id
        );
    }

    #[test]
    fn inner_automorphism_transfers_to_conjugation() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let h = delta.add(&e01).unwrap();
        let nu = inner_coalgebra_automorphism(&h, InnerDirection::Forward).unwrap();
        let transferred = dual_transfer(&nu);

        let zeta = IncidenceFunction::zeta(p.clone(), q());
        let conjugated = transferred.apply(&zeta).unwrap();
        assert_eq!(conjugated.value(0, 1), s(1));
        assert_eq!(
            conjugated,
            h.inverse()
                .unwrap()
                .convolve(&zeta)
                .unwrap()
                .convolve(&h)
                .unwrap()
        );
        assert_eq!(transferred, inner_algebra_automorphism(&h).unwrap());
    }

    #[test]
    fn algebra_constructors_examples() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        assert_eq!(
            inner_algebra_automorphism(&delta).unwrap(),
            AlgebraEndomap::identity(p.clone(), q())
        );

        let sys = system(&p, &[((0, 1), 2)]).unwrap();
        let mult = mult_algebra_automorphism(&sys);
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let e0 = IncidenceFunction::idempotent(p.clone(), q(), 0).unwrap();
        assert_eq!(*mult.image(Interval::new(0, 1)), e01.scale(&s(2)).unwrap());
        assert_eq!(*mult.image(Interval::new(0, 0)), e0);

        let anti = Poset::antichain(2).unwrap();
        let swap = PosetAutomorphism::new(&anti, vec![1, 0]).unwrap();
        let eta = order_algebra_automorphism(&anti, q(), &swap).unwrap();
        let ea = IncidenceFunction::idempotent(anti.clone(), q(), 0).unwrap();
        let eb = IncidenceFunction::idempotent(anti.clone(), q(), 1).unwrap();
        assert_eq!(eta.apply(&ea).unwrap(), eb);
    }

    #[test]
    fn order_embedding_reverses_composition() {
        let p = Poset::antichain(3).unwrap();
        let auts = p.automorphisms().unwrap();
        for a in &auts {
            for b in &auts {
                let eta_ab =
                    order_algebra_automorphism(&p, q(), &a.compose(b)).unwrap();
                let eta_a = order_algebra_automorphism(&p, q(), a).unwrap();
                let eta_b = order_algebra_automorphism(&p, q(), b).unwrap();
                assert_eq!(eta_ab, eta_b.compose(&eta_a).unwrap());

                let q_ab = order_coalgebra_automorphism(&p, q(), &a.compose(b)).unwrap();
                let q_a = order_coalgebra_automorphism(&p, q(), a).unwrap();
                let q_b = order_coalgebra_automorphism(&p, q(), b).unwrap();
                assert_eq!(q_ab, q_a.compose(&q_b).unwrap());
            }
        }
    }

    #[test]
    fn mult_transfer_scales_matrix_units() {
        // Transfer of the coalgebra multiplicative automorphism scales the
        // matrix unit by the same system value.
        let p = Poset::chain(2).unwrap();
        let sys = system(&p, &[((0, 1), 2)]).unwrap();
        let lambda = mult_coalgebra_automorphism(&sys);
        let transferred = dual_transfer(&lambda);
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        assert_eq!(
            transferred.apply(&e01).unwrap(),
            e01.scale(&s(2)).unwrap()
        );
        assert_eq!(transferred, mult_algebra_automorphism(&sys));
    }

    #[test]
    fn decompose_identity() {
        let p = Poset::chain(2).unwrap();
        let id = AlgebraEndomap::identity(p.clone(), q());
        let dec = decompose_algebra_automorphism(&id).unwrap();
        assert_eq!(dec.inner_unit, IncidenceFunction::delta(p.clone(), q()));
        assert_eq!(dec.mult_system, MultiplicativeSystem::all_ones(p.clone(), q()));
        assert!(dec.order_part.is_identity());

        let id_c = CoalgebraEndomap::identity(p.clone(), q());
        let dec = decompose_coalgebra_automorphism(&id_c).unwrap();
        assert_eq!(dec.order, id_c);
        assert_eq!(dec.mult, id_c);
        assert_eq!(dec.inner, id_c);
    }

    #[test]
    fn decompose_pure_conjugation() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let u = delta.add(&e01).unwrap();
        let mu = inner_algebra_automorphism(&u).unwrap();
        let dec = decompose_algebra_automorphism(&mu).unwrap();
        assert_eq!(dec.inner_unit, u);
        assert_eq!(dec.mult_system, MultiplicativeSystem::all_ones(p.clone(), q()));
        assert!(dec.order_part.is_identity());

        let nu = inner_coalgebra_automorphism(&u, InnerDirection::Forward).unwrap();
        let dec = decompose_coalgebra_automorphism(&nu).unwrap();
        assert_eq!(dec.witness.inner_unit, u);
        assert!(dec.witness.order_part.is_identity());
    }

    #[test]
    fn decompose_pure_order_swap() {
        let p = Poset::antichain(2).unwrap();
        let swap = PosetAutomorphism::new(&p, vec![1, 0]).unwrap();
        let eta = order_algebra_automorphism(&p, q(), &swap).unwrap();
        let dec = decompose_algebra_automorphism(&eta).unwrap();
        assert_eq!(dec.inner_unit, IncidenceFunction::delta(p.clone(), q()));
        assert_eq!(dec.order_part, swap);
        assert_eq!(dec.mult_system.values().count(), 0);
    }

    #[test]
    fn decompose_round_trip_on_seeded_maps() {
        let mut rng = sample::rng(97);
        for poset in [
            Poset::chain(3).unwrap(),
            Poset::boolean(2).unwrap(),
            Poset::random(5, 0.4, 2).unwrap(),
        ] {
            for field in [q(), FieldSpec::prime_field(5).unwrap()] {
                for _ in 0..5 {
                    let (map, parts) =
                        sample::coalgebra_automorphism(&mut rng, &poset, field).unwrap();
                    let dec = decompose_coalgebra_automorphism(&map).unwrap();
                    assert_eq!(dec.witness, parts);
                    let recomposed =
                        compose_coalgebra_automorphism(&poset, field, &dec.witness).unwrap();
                    assert_eq!(recomposed, map);
                }
            }
        }
    }

    #[test]
    fn conjugation_by_diagonal_unit_lands_in_mult() {
        // Conjugating by an invertible diagonal element scales each strict
        // unit by a ratio of diagonal values, so the decomposition reports
        // a trivial inner part and a nontrivial multiplicative system.
        let p = Poset::chain(3).unwrap();
        let mut rng = sample::rng(3);
        let l = sample::diagonal_unit(&mut rng, &p, q());
        let mu = inner_algebra_automorphism(&l).unwrap();
        let dec = decompose_algebra_automorphism(&mu).unwrap();
        assert_eq!(dec.inner_unit, IncidenceFunction::delta(p.clone(), q()));
        assert!(dec.order_part.is_identity());
        for (iv, c) in dec.mult_system.values() {
            let expected = &l.value(iv.lo, iv.lo).inverse().unwrap() * &l.value(iv.hi, iv.hi);
            assert_eq!(*c, expected);
        }
    }

    #[test]
    fn factor_unit_splits_conjugation() {
        // Conjugation by any invertible v is conjugation by its diagonal
        // followed by conjugation by the unit-diagonal cofactor.
        let mut rng = sample::rng(19);
        let p = Poset::random(5, 0.5, 6).unwrap();
        let v = sample::invertible_function(&mut rng, &p, q(), 0.6);
        let (l, w) = v.factor_unit().unwrap();
        let mu_v = inner_algebra_automorphism(&v).unwrap();
        let mu_l = inner_algebra_automorphism(&l).unwrap();
        let mu_w = inner_algebra_automorphism(&w).unwrap();
        assert_eq!(mu_v, mu_w.compose(&mu_l).unwrap());
    }

    #[test]
    fn non_automorphisms_are_rejected() {
        let p = Poset::chain(2).unwrap();
        let zero = CoalgebraEndomap::zero(p.clone(), q());
        assert!(matches!(
            decompose_coalgebra_automorphism(&zero),
            Err(Error::NotCoalgebraMorphism { .. })
        ));

        let double = AlgebraEndomap::identity(p.clone(), q())
            .scale(&s(2))
            .unwrap();
        assert!(matches!(
            decompose_algebra_automorphism(&double),
            Err(Error::NotAlgebraAutomorphism(_))
        ));
    }

    #[test]
    fn conjugation_coefficients_satisfy_cocycle_identities() {
        // The coefficients alpha_{xy}(s,t) = h^{-1}(x,s) h(t,y) multiply
        // along refinements and telescope to zero across strict splits.
        let mut rng = sample::rng(71);
        for poset in [Poset::chain(4).unwrap(), Poset::boolean(2).unwrap()] {
            let h = sample::invertible_function(&mut rng, &poset, q(), 0.7);
            let h_inv = h.inverse().unwrap();
            let alpha = |x: usize, y: usize, s: usize, t: usize| {
                &h_inv.value(x, s) * &h.value(t, y)
            };
            let n = poset.len();
            let le = |a: usize, b: usize| poset.leq(a, b);

            // alpha_{xy}(s,t) = alpha_{xr}(s,r) alpha_{ry}(r,t)
            for x in 0..n {
                for s in 0..n {
                    for r in 0..n {
                        for t in 0..n {
                            for y in 0..n {
                                if le(x, s) && le(s, r) && le(r, t) && le(t, y) {
                                    assert_eq!(
                                        alpha(x, y, s, t),
                                        &alpha(x, r, s, r) * &alpha(r, y, r, t)
                                    );
                                }
                            }
                        }
                    }
                }
            }

            // Point values: alpha_{xx}(x,x) = 1 and the diagonal sum over
            // [x,y] vanishes for x < y.
            for x in 0..n {
                assert!(alpha(x, x, x, x).is_one());
            }
            for iv in poset.strict_pairs() {
                let mut total = Scalar::zero(q());
                for z in poset.interval_elements(iv.lo, iv.hi).unwrap() {
                    total = &total + &alpha(iv.lo, iv.hi, z, z);
                }
                assert!(total.is_zero());
            }
        }
    }
}
