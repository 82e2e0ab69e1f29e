//! The bridge between the incidence coalgebra and the incidence algebra.
//!
//! Functionals on the coalgebra are identified with incidence functions:
//! the function `f` acts on a basis interval `[x,y]` as `f(x,y)`. Under
//! that identification the dual-algebra product is convolution, and every
//! linear self-map of the coalgebra transfers to a linear self-map of the
//! algebra; the transfer reverses composition order.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::IncidenceFunction;
use crate::coalgebra::{CoalgebraEndomap, CoalgebraVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poset::{Interval, Poset};
use crate::scalar::{FieldSpec, Scalar};

/// A linear self-map of the incidence algebra, tabulated by its images on
/// the matrix-unit basis (one image per comparable pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraEndomap {
    poset: Arc<Poset>,
    field: FieldSpec,
    images: BTreeMap<Interval, IncidenceFunction>,
}

impl AlgebraEndomap {
    /// Builds a map from matrix-unit images; one must be provided for
    /// every comparable pair.
    pub fn from_images(
        poset: Arc<Poset>,
        field: FieldSpec,
        images: BTreeMap<Interval, IncidenceFunction>,
    ) -> Result<Self> {
        for &iv in poset.intervals() {
            match images.get(&iv) {
                None => return Err(Error::MissingImage(poset.pair_label(iv))),
                Some(f) => {
                    if f.field() != field {
                        return Err(Error::FieldMismatch);
                    }
                    if **f.poset() != *poset {
                        return Err(Error::PosetMismatch);
                    }
                }
            }
        }
        if images.len() != poset.intervals().len() {
            return Err(Error::Schema(
                "linear map has images for unknown pairs".into(),
            ));
        }
        Ok(AlgebraEndomap {
            poset,
            field,
            images,
        })
    }

    /// Builds a map by evaluating `f` on every basis pair.
    pub fn from_fn(
        poset: Arc<Poset>,
        field: FieldSpec,
        f: impl Fn(Interval) -> IncidenceFunction,
    ) -> Self {
        let images = poset.intervals().iter().map(|&iv| (iv, f(iv))).collect();
        AlgebraEndomap {
            poset,
            field,
            images,
        }
    }

    pub fn identity(poset: Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset.clone(), field, |iv| {
            IncidenceFunction::matrix_unit(poset.clone(), field, iv.lo, iv.hi)
                .expect("poset interval is valid")
        })
    }

    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset.clone(), field, |_| {
            IncidenceFunction::zero(poset.clone(), field)
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn image(&self, iv: Interval) -> &IncidenceFunction {
        &self.images[&iv]
    }

    pub fn images(&self) -> impl Iterator<Item = (Interval, &IncidenceFunction)> {
        self.images.iter().map(|(&iv, f)| (iv, f))
    }

    pub(crate) fn ensure_same_context_fn(&self, f: &IncidenceFunction) -> Result<()> {
        if self.field != f.field() {
            return Err(Error::FieldMismatch);
        }
        if **f.poset() != *self.poset {
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

    /// Linear extension over the matrix-unit basis:
    /// the image of `f` is `sum of f(x,y) * image(x,y)`.
    pub fn apply(&self, f: &IncidenceFunction) -> Result<IncidenceFunction> {
        self.ensure_same_context_fn(f)?;
        let mut out = IncidenceFunction::zero(self.poset.clone(), self.field);
        for (iv, c) in f.entries() {
            out = out.add(&self.image(iv).scale(c)?)?;
        }
        Ok(out)
    }

    /// `self . other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, f) in other.images() {
            images.insert(iv, self.apply(f)?);
        }
        Ok(AlgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, f) in self.images() {
            images.insert(iv, f.add(other.image(iv))?);
        }
        Ok(AlgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut images = BTreeMap::new();
        for (iv, f) in self.images() {
            images.insert(iv, f.sub(other.image(iv))?);
        }
        Ok(AlgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let mut images = BTreeMap::new();
        for (iv, f) in self.images() {
            images.insert(iv, f.scale(c)?);
        }
        Ok(AlgebraEndomap {
            poset: self.poset.clone(),
            field: self.field,
            images,
        })
    }

    /// Exact-rank bijectivity of the basis-image matrix.
    pub fn is_bijective(&self) -> bool {
        let basis = self.poset.intervals();
        let columns = basis
            .iter()
            .map(|&iv| {
                basis
                    .iter()
                    .map(|&row| self.image(iv).value(row.lo, row.hi))
                    .collect()
            })
            .collect();
        linalg::is_invertible(columns)
    }
}

/// Evaluates the functional carried by `f` on the vector `v`:
/// the coefficient-weighted sum of the values `f(x,y)` over the terms of
/// `v`.
pub fn pairing(f: &IncidenceFunction, v: &CoalgebraVector) -> Result<Scalar> {
    if f.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    if f.poset() != v.poset() && **f.poset() != **v.poset() {
        return Err(Error::PosetMismatch);
    }
    let mut acc = Scalar::zero(f.field());
    for (iv, c) in v.terms() {
        acc = &acc + &(c * &f.value(iv.lo, iv.hi));
    }
    Ok(acc)
}

/// The product of the functionals carried by `f` and `g`, computed by
/// expanding the comultiplication of each basis interval and pairing the
/// factors. Equals convolution interval by interval.
pub fn dual_product(
    f: &IncidenceFunction,
    g: &IncidenceFunction,
) -> Result<IncidenceFunction> {
    f.ensure_same_context(g)?;
    let poset = f.poset().clone();
    let field = f.field();
    let mut entries = Vec::new();
    for &iv in poset.intervals() {
        let basis = CoalgebraVector::basis(poset.clone(), field, iv)?;
        let mut acc = Scalar::zero(field);
        for ((a, b), c) in basis.comultiply().terms() {
            acc = &acc + &(c * &(&f.value(a.lo, a.hi) * &g.value(b.lo, b.hi)));
        }
        entries.push((iv, acc));
    }
    IncidenceFunction::from_entries(poset, field, entries)
}

/// Transfers a coalgebra self-map to the algebra side: the image of `f`
/// takes the value `pairing(f, phi([x,y]))` at `(x,y)`. Tabulated on the
/// matrix-unit basis, this transposes the coefficient array of `phi`.
/// The transfer is linear, injective, and reverses composition.
pub fn dual_transfer(phi: &CoalgebraEndomap) -> AlgebraEndomap {
    let poset = phi.poset().clone();
    let field = phi.field();
    let mut images: BTreeMap<Interval, BTreeMap<Interval, Scalar>> = poset
        .intervals()
        .iter()
        .map(|&iv| (iv, BTreeMap::new()))
        .collect();
    for (domain_iv, image_vec) in phi.images() {
        for (term_iv, c) in image_vec.terms() {
            images
                .get_mut(&term_iv)
                .expect("image terms are poset intervals")
                .insert(domain_iv, c.clone());
        }
    }
    AlgebraEndomap::from_fn(poset.clone(), field, |iv| {
        IncidenceFunction::from_entries(poset.clone(), field, images[&iv].clone())
            .expect("entries come from validated vectors")
    })
}
