//! The incidence coalgebra of a finite poset.
//!
//! The underlying space has one basis vector per interval `[x,y]`.
//! Comultiplication splits an interval at every intermediate point,
//! `[x,y] -> sum of [x,z] (x) [z,y]`, and the counit is supported on
//! one-point intervals. Linear self-maps are stored by their basis images.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poset::{Interval, Poset};
use crate::scalar::{FieldSpec, Scalar};

/// A finite linear combination of basis intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraVector {
    poset: Arc<Poset>,
    field: FieldSpec,
    terms: BTreeMap<Interval, Scalar>,
}

impl CoalgebraVector {
    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        CoalgebraVector {
            poset,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector for the interval `[lo, hi]`.
    pub fn basis(poset: Arc<Poset>, field: FieldSpec, iv: Interval) -> Result<Self> {
        if iv.lo >= poset.len() || iv.hi >= poset.len() {
            return Err(Error::UnknownElement(format!("#{}", iv.lo.max(iv.hi))));
        }
        if !poset.leq(iv.lo, iv.hi) {
            return Err(Error::NotComparable(
                poset.name(iv.lo).to_string(),
                poset.name(iv.hi).to_string(),
            ));
        }
        let mut terms = BTreeMap::new();
        terms.insert(iv, Scalar::one(field));
        Ok(CoalgebraVector {
            poset,
            field,
            terms,
        })
    }

    pub fn from_terms(
        poset: Arc<Poset>,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Interval, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(poset, field);
        for (iv, c) in terms {
            let basis = Self::basis(out.poset.clone(), field, iv)?;
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            out = out.add(&basis.scale(&c))?;
        }
        Ok(out)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (Interval, &Scalar)> {
        self.terms.iter().map(|(&iv, c)| (iv, c))
    }

    pub fn coefficient(&self, iv: Interval) -> Scalar {
        self.terms
            .get(&iv)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn ensure_same_context(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(&self.poset, &other.poset) && self.poset != other.poset {
            return Err(Error::PosetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut terms = self.terms.clone();
        for (&iv, c) in &other.terms {
            let slot = terms.entry(iv).or_insert_with(|| Scalar::zero(self.field));
            let sum = &*slot + c;
            if sum.is_zero() {
                terms.remove(&iv);
            } else {
                *slot = sum;
            }
        }
        Ok(CoalgebraVector {
            poset: self.poset.clone(),
            field: self.field,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CoalgebraVector {
            poset: self.poset.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(&iv, c)| (iv, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.poset.clone(), self.field);
        }
        CoalgebraVector {
            poset: self.poset.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(&iv, v)| (iv, v * c)).collect(),
        }
    }

    /// Comultiplication, extended linearly from
    /// `[x,y] -> sum over x <= z <= y of [x,z] (x) [z,y]`.
    pub fn comultiply(&self) -> TensorVector {
        let mut out = TensorVector::zero(self.poset.clone(), self.field);
        for (&iv, c) in &self.terms {
            let points = self
                .poset
                .interval_elements(iv.lo, iv.hi)
                .expect("stored interval is comparable");
            for z in points {
                out.add_term(
                    Interval::new(iv.lo, z),
                    Interval::new(z, iv.hi),
                    c.clone(),
                );
            }
        }
        out
    }

    /// The counit: the coefficient sum over one-point intervals.
    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for (&iv, c) in &self.terms {
            if iv.is_point() {
                acc = &acc + c;
            }
        }
        acc
    }
}

/// A finite linear combination of ordered interval pairs (an element of the
/// tensor square of the coalgebra).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    poset: Arc<Poset>,
    field: FieldSpec,
    terms: BTreeMap<(Interval, Interval), Scalar>,
}

impl TensorVector {
    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        TensorVector {
            poset,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The tensor product of two vectors over the same poset and field.
    pub fn tensor(a: &CoalgebraVector, b: &CoalgebraVector) -> Result<Self> {
        a.ensure_same_context(b)?;
        let mut out = Self::zero(a.poset.clone(), a.field);
        for (ia, ca) in a.terms() {
            for (ib, cb) in b.terms() {
                out.add_term(ia, ib, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ((Interval, Interval), &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, left: Interval, right: Interval) -> Scalar {
        self.terms
            .get(&(left, right))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, left: Interval, right: Interval, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((left, right))
            .or_insert_with(|| Scalar::zero(self.field));
        let sum = &*slot + &c;
        if sum.is_zero() {
            self.terms.remove(&(left, right));
        } else {
            *slot = sum;
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(&self.poset, &other.poset) && self.poset != other.poset {
            return Err(Error::PosetMismatch);
        }
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.0, k.1, c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to the left factor and `g` to the right factor of every
    /// term, where `None` stands for the identity.
    fn map_factors(
        &self,
        f: Option<&CoalgebraEndomap>,
        g: Option<&CoalgebraEndomap>,
    ) -> TensorVector {
        let mut out = TensorVector::zero(self.poset.clone(), self.field);
        for ((left, right), c) in self.terms() {
            let left_vec = match f {
                Some(f) => f.image(left).clone(),
                None => CoalgebraVector::basis(self.poset.clone(), self.field, left)
                    .expect("stored interval is valid"),
            };
            let right_vec = match g {
                Some(g) => g.image(right).clone(),
                None => CoalgebraVector::basis(self.poset.clone(), self.field, right)
                    .expect("stored interval is valid"),
            };
            for (ia, ca) in left_vec.terms() {
                for (ib, cb) in right_vec.terms() {
                    out.add_term(ia, ib, &(ca * cb) * c);
                }
            }
        }
        out
    }
}

/// Which coalgebra law a map failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoalgebraLaw {
    Comultiplication,
    Counit,
}

impl CoalgebraLaw {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoalgebraLaw::Comultiplication => "comultiplication",
            CoalgebraLaw::Counit => "counit",
        }
    }
}

/// First basis interval on which a morphism law fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismViolation {
    pub interval: Interval,
    pub law: CoalgebraLaw,
}

/// First basis interval on which the derivation law fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationViolation {
    pub interval: Interval,
}

/// A linear self-map of the coalgebra, stored by its images on every basis
/// interval and applied to general vectors by linear extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraEndomap {
    poset: Arc<Poset>,
    field: FieldSpec,
    images: BTreeMap<Interval, CoalgebraVector>,
}

impl CoalgebraEndomap {
    /// Builds a map from basis images; an image must be provided for every
    /// interval of the poset.
    pub fn from_images(
        poset: Arc<Poset>,
        field: FieldSpec,
        images: BTreeMap<Interval, CoalgebraVector>,
    ) -> Result<Self> {
        for &iv in poset.intervals() {
            match images.get(&iv) {
                None => return Err(Error::MissingImage(poset.interval_label(iv))),
                Some(v) => {
                    if v.field() != field {
                        return Err(Error::FieldMismatch);
                    }
                    if **v.poset() != *poset {
                        return Err(Error::PosetMismatch);
                    }
                }
            }
        }
        if images.len() != poset.intervals().len() {
            return Err(Error::Schema(
                "linear map has images for unknown intervals".into(),
            ));
        }
        Ok(CoalgebraEndomap {
            poset,
            field,
            images,
        })
    }

    /// Builds a map by evaluating `f` on every basis interval.
    pub fn from_fn(
        poset: Arc<Poset>,
        field: FieldSpec,
        f: impl Fn(Interval) -> CoalgebraVector,
    ) -> Self {
        let images = poset.intervals().iter().map(|&iv| (iv, f(iv))).collect();
        CoalgebraEndomap {
            poset,
            field,
            images,
        }
    }

    pub fn identity(poset: Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset.clone(), field, |iv| {
            CoalgebraVector::basis(poset.clone(), field, iv).expect("poset interval is valid")
        })
    }

    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset.clone(), field, |_| {
            CoalgebraVector::zero(poset.clone(), field)
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn image(&self, iv: Interval) -> &CoalgebraVector {
        &self.images[&iv]
    }

    pub fn images(&self) -> impl Iterator<Item = (Interval, &CoalgebraVector)> {
        self.images.iter().map(|(&iv, v)| (iv, v))
    }

    pub(crate) fn ensure_same_context_vec(&self, v: &CoalgebraVector) -> Result<()> {
        if self.field != v.field() {
            return Err(Error::FieldMismatch);
        }
        if **v.poset() != *self.poset {
            return Err(Error::PosetMismatch);
        }
        Ok(())
    }

    pub(crate) fn ensure_same_context(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if *other.poset != *self.poset {
            return Err(Error::PosetMismatch);
        }
        Ok(())
    }

    /// Linear extension to arbitrary vectors.
    pub fn apply(&self, v: &CoalgebraVector) -> Result<CoalgebraVector> {
        self.ensure_same_context_vec(v)?;
        let mut out = CoalgebraVector::zero(self.poset.clone(), self.field);
        for (iv, c) in v.terms() {
            out = out.add(&self.image(iv).scale(c))?;
        }
        Ok(out)
    }

    /// `self . other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, v) in other.images() {
            images.insert(iv, self.apply(v)?);
        }
        Ok(CoalgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, v) in self.images() {
            images.insert(iv, v.add(other.image(iv))?);
        }
        Ok(CoalgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, v) in self.images() {
            images.insert(iv, v.sub(other.image(iv))?);
        }
        Ok(CoalgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CoalgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images: self
                .images
                .iter()
                .map(|(&iv, v)| (iv, v.scale(c)))
                .collect(),
        }
    }

    /// Exact-rank bijectivity of the basis-image matrix.
    pub fn is_bijective(&self) -> bool {
        let basis = self.poset.intervals();
        let columns = basis
            .iter()
            .map(|&iv| {
                basis
                    .iter()
                    .map(|&row| self.image(iv).coefficient(row))
                    .collect()
            })
            .collect();
        linalg::is_invertible(columns)
    }

    /// Checks `(phi (x) phi) . Delta = Delta . phi` and `eps . phi = eps`
    /// on every basis interval, returning the first failure.
    pub fn morphism_violation(&self) -> Option<MorphismViolation> {
        for (&iv, image) in &self.images {
            let basis = CoalgebraVector::basis(self.poset.clone(), self.field, iv)
                .expect("poset interval is valid");
            let lhs = basis
                .comultiply()
                .map_factors(Some(self), Some(self));
            let rhs = image.comultiply();
            if lhs != rhs {
                return Some(MorphismViolation {
                    interval: iv,
                    law: CoalgebraLaw::Comultiplication,
                });
            }
            if image.counit() != basis.counit() {
                return Some(MorphismViolation {
                    interval: iv,
                    law: CoalgebraLaw::Counit,
                });
            }
        }
        None
    }

    pub fn is_coalgebra_morphism(&self) -> bool {
        self.morphism_violation().is_none()
    }

    pub fn is_coalgebra_automorphism(&self) -> bool {
        self.is_coalgebra_morphism() && self.is_bijective()
    }

    /// Checks `Delta . d = (d (x) 1) . Delta + (1 (x) d) . Delta` on every
    /// basis interval, returning the first failure.
    pub fn derivation_violation(&self) -> Option<DerivationViolation> {
        for (&iv, image) in &self.images {
            let basis = CoalgebraVector::basis(self.poset.clone(), self.field, iv)
                .expect("poset interval is valid");
            let split = basis.comultiply();
            let lhs = image.comultiply();
            let rhs = split
                .map_factors(Some(self), None)
                .add(&split.map_factors(None, Some(self)))
                .expect("same context");
            if lhs != rhs {
                return Some(DerivationViolation { interval: iv });
            }
        }
        None
    }

    pub fn is_coalgebra_derivation(&self) -> bool {
        self.derivation_violation().is_none()
    }
}

/// Which axiom of the coalgebra construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoalgebraAxiom {
    Coassociativity,
    CounitLeft,
    CounitRight,
}

impl CoalgebraAxiom {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoalgebraAxiom::Coassociativity => "coassociativity",
            CoalgebraAxiom::CounitLeft => "left counit",
            CoalgebraAxiom::CounitRight => "right counit",
        }
    }
}

/// Outcome of [`check_coalgebra_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomReport {
    pub violation: Option<(Interval, CoalgebraAxiom)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Verifies coassociativity and both counit laws of the incidence
/// coalgebra construction, exhaustively over basis intervals.
pub fn check_coalgebra_axioms(poset: &Arc<Poset>, field: FieldSpec) -> AxiomReport {
    for &iv in poset.intervals() {
        let basis = CoalgebraVector::basis(poset.clone(), field, iv).expect("interval is valid");
        let split = basis.comultiply();

        // Triple expansions, keyed by interval triples.
        let mut left_assoc: BTreeMap<(Interval, Interval, Interval), Scalar> = BTreeMap::new();
        let mut right_assoc: BTreeMap<(Interval, Interval, Interval), Scalar> = BTreeMap::new();
        for ((a, b), c) in split.terms() {
            for z in poset
                .interval_elements(a.lo, a.hi)
                .expect("interval is valid")
            {
                let key = (Interval::new(a.lo, z), Interval::new(z, a.hi), b);
                accumulate(&mut left_assoc, key, c.clone());
            }
            for z in poset
                .interval_elements(b.lo, b.hi)
                .expect("interval is valid")
            {
                let key = (a, Interval::new(b.lo, z), Interval::new(z, b.hi));
                accumulate(&mut right_assoc, key, c.clone());
            }
        }
        if left_assoc != right_assoc {
            return AxiomReport {
                violation: Some((iv, CoalgebraAxiom::Coassociativity)),
            };
        }

        // Counit laws after the canonical identifications: applying the
        // counit to one tensor factor scales the other factor.
        let mut left_counit = CoalgebraVector::zero(poset.clone(), field);
        let mut right_counit = CoalgebraVector::zero(poset.clone(), field);
        for ((a, b), c) in split.terms() {
            if a.is_point() {
                let term = CoalgebraVector::basis(poset.clone(), field, b)
                    .expect("interval is valid")
                    .scale(c);
                left_counit = left_counit.add(&term).expect("same context");
            }
            if b.is_point() {
                let term = CoalgebraVector::basis(poset.clone(), field, a)
                    .expect("interval is valid")
                    .scale(c);
                right_counit = right_counit.add(&term).expect("same context");
            }
        }
        if left_counit != basis {
            return AxiomReport {
                violation: Some((iv, CoalgebraAxiom::CounitLeft)),
            };
        }
        if right_counit != basis {
            return AxiomReport {
                violation: Some((iv, CoalgebraAxiom::CounitRight)),
            };
        }
    }
    AxiomReport { violation: None }
}

fn accumulate(
    map: &mut BTreeMap<(Interval, Interval, Interval), Scalar>,
    key: (Interval, Interval, Interval),
    c: Scalar,
) {
    let field = c.field();
    let slot = map.entry(key).or_insert_with(|| Scalar::zero(field));
    let sum = &*slot + &c;
    if sum.is_zero() {
        map.remove(&key);
    } else {
        *slot = sum;
    }
}
