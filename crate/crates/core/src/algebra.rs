//! The incidence algebra of a finite poset: scalar-valued functions on
//! comparable pairs under convolution.
//!
//! Functions are kept in canonical sparse form (zero values never stored),
//! so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{Interval, Poset};
use crate::scalar::{FieldSpec, Scalar};

/// An element of the incidence algebra: a map from comparable pairs to
/// nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    field: FieldSpec,
    entries: BTreeMap<Interval, Scalar>,
}

impl IncidenceFunction {
    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        IncidenceFunction {
            poset,
            field,
            entries: BTreeMap::new(),
        }
    }

    /// The convolution identity: 1 on every (x,x), 0 elsewhere.
    pub fn delta(poset: Arc<Poset>, field: FieldSpec) -> Self {
        let entries = (0..poset.len())
            .map(|x| (Interval::new(x, x), Scalar::one(field)))
            .collect();
        IncidenceFunction {
            poset,
            field,
            entries,
        }
    }

    /// The zeta function: 1 on every comparable pair.
    pub fn zeta(poset: Arc<Poset>, field: FieldSpec) -> Self {
        let entries = poset
            .intervals()
            .iter()
            .map(|&iv| (iv, Scalar::one(field)))
            .collect();
        IncidenceFunction {
            poset,
            field,
            entries,
        }
    }

    /// The idempotent supported on (x,x).
    pub fn idempotent(poset: Arc<Poset>, field: FieldSpec, x: usize) -> Result<Self> {
        Self::matrix_unit(poset, field, x, x)
    }

    /// The matrix unit supported on (x,y) with value 1; requires x <= y.
    pub fn matrix_unit(poset: Arc<Poset>, field: FieldSpec, x: usize, y: usize) -> Result<Self> {
        if x >= poset.len() || y >= poset.len() {
            return Err(Error::UnknownElement(format!("#{}", x.max(y))));
        }
        if !poset.leq(x, y) {
            return Err(Error::NotComparable(
                poset.name(x).to_string(),
                poset.name(y).to_string(),
            ));
        }
        let mut entries = BTreeMap::new();
        entries.insert(Interval::new(x, y), Scalar::one(field));
        Ok(IncidenceFunction {
            poset,
            field,
            entries,
        })
    }

    /// Builds a function from (pair, value) data, dropping zeros.
    /// Every key must be a comparable pair of the poset.
    pub fn from_entries(
        poset: Arc<Poset>,
        field: FieldSpec,
        entries: impl IntoIterator<Item = (Interval, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(poset, field);
        for (iv, value) in entries {
            if iv.lo >= out.poset.len() || iv.hi >= out.poset.len() {
                return Err(Error::UnknownElement(format!("#{}", iv.lo.max(iv.hi))));
            }
            if !out.poset.leq(iv.lo, iv.hi) {
                return Err(Error::NotComparable(
                    out.poset.name(iv.lo).to_string(),
                    out.poset.name(iv.hi).to_string(),
                ));
            }
            if value.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !value.is_zero() {
                let slot = out.entries.entry(iv).or_insert_with(|| Scalar::zero(field));
                let sum = &*slot + &value;
                if sum.is_zero() {
                    out.entries.remove(&iv);
                } else {
                    *slot = sum;
                }
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

    /// The stored nonzero entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Interval, &Scalar)> {
        self.entries.iter().map(|(&iv, v)| (iv, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The value at (x, y); zero when no entry is stored.
    pub fn value(&self, x: usize, y: usize) -> Scalar {
        self.entries
            .get(&Interval::new(x, y))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&Scalar> {
        self.entries.get(&Interval::new(x, y))
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
        let mut entries = self.entries.clone();
        for (&iv, v) in &other.entries {
            let slot = entries
                .entry(iv)
                .or_insert_with(|| Scalar::zero(self.field));
            let sum = &*slot + v;
            if sum.is_zero() {
                entries.remove(&iv);
            } else {
                *slot = sum;
            }
        }
        Ok(IncidenceFunction {
            poset: self.poset.clone(),
            field: self.field,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_unchecked(|v| -v)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Self::zero(self.poset.clone(), self.field));
        }
        Ok(self.scale_unchecked(|v| v * c))
    }

    fn scale_unchecked(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        IncidenceFunction {
            poset: self.poset.clone(),
            field: self.field,
            entries: self
                .entries
                .iter()
                .map(|(&iv, v)| (iv, f(v)))
                .collect(),
        }
    }

    /// Convolution: `(fg)(x,y) = sum over x <= z <= y of f(x,z) g(z,y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.ensure_same_context(other)?;
        let mut by_lo: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&iv, v) in &other.entries {
            by_lo.entry(iv.lo).or_default().push((iv.hi, v));
        }
        let mut acc: BTreeMap<Interval, Scalar> = BTreeMap::new();
        for (&f_iv, a) in &self.entries {
            if let Some(tail) = by_lo.get(&f_iv.hi) {
                for &(y, b) in tail {
                    let key = Interval::new(f_iv.lo, y);
                    let slot = acc.entry(key).or_insert_with(|| Scalar::zero(self.field));
                    *slot = &*slot + &(a * b);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(IncidenceFunction {
            poset: self.poset.clone(),
            field: self.field,
            entries: acc,
        })
    }

    /// True when every diagonal value is nonzero, the invertibility
    /// criterion for incidence functions.
    pub fn is_invertible(&self) -> bool {
        (0..self.poset.len()).all(|x| self.get(x, x).is_some())
    }

    /// The convolution inverse, by the triangular recurrence over intervals
    /// in increasing size order. Both-sided correctness is verified before
    /// returning.
    pub fn inverse(&self) -> Result<Self> {
        for x in 0..self.poset.len() {
            if self.get(x, x).is_none() {
                return Err(Error::NotInvertible(self.poset.name(x).to_string()));
            }
        }
        let mut sized: Vec<(usize, Interval)> = self
            .poset
            .intervals()
            .iter()
            .map(|&iv| {
                let size = self
                    .poset
                    .interval_elements(iv.lo, iv.hi)
                    .expect("stored interval is comparable")
                    .len();
                (size, iv)
            })
            .collect();
        sized.sort();
        let mut inv: BTreeMap<Interval, Scalar> = BTreeMap::new();
        for (_, iv) in sized {
            let diag_inv = self
                .value(iv.lo, iv.lo)
                .inverse()
                .expect("diagonal checked nonzero");
            if iv.is_point() {
                inv.insert(iv, diag_inv);
                continue;
            }
            let mut sum = Scalar::zero(self.field);
            for z in self.poset.interval_elements(iv.lo, iv.hi)? {
                if z == iv.lo {
                    continue;
                }
                if let (Some(a), Some(b)) = (self.get(iv.lo, z), inv.get(&Interval::new(z, iv.hi)))
                {
                    sum = &sum + &(a * b);
                }
            }
            let value = -&(&diag_inv * &sum);
            if !value.is_zero() {
                inv.insert(iv, value);
            }
        }
        let result = IncidenceFunction {
            poset: self.poset.clone(),
            field: self.field,
            entries: inv,
        };
        let delta = Self::delta(self.poset.clone(), self.field);
        assert!(
            self.convolve(&result)? == delta && result.convolve(self)? == delta,
            "triangular inverse must be two-sided"
        );
        Ok(result)
    }

    /// Splits into (diagonal part, strictly off-diagonal part); the two
    /// summands generate the splitting of the algebra into its diagonal
    /// subalgebra and the strict ideal.
    pub fn split_diagonal(&self) -> (Self, Self) {
        let mut diag = BTreeMap::new();
        let mut strict = BTreeMap::new();
        for (&iv, v) in &self.entries {
            if iv.is_point() {
                diag.insert(iv, v.clone());
            } else {
                strict.insert(iv, v.clone());
            }
        }
        (
            IncidenceFunction {
                poset: self.poset.clone(),
                field: self.field,
                entries: diag,
            },
            IncidenceFunction {
                poset: self.poset.clone(),
                field: self.field,
                entries: strict,
            },
        )
    }

    /// The diagonal part alone.
    pub fn diagonal_part(&self) -> Self {
        self.split_diagonal().0
    }

    /// The strictly off-diagonal part alone.
    pub fn strict_part(&self) -> Self {
        self.split_diagonal().1
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(Interval::is_point)
    }

    pub fn is_strict(&self) -> bool {
        !self.entries.keys().any(Interval::is_point)
    }

    /// Every diagonal value equal to one.
    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.poset.len()).all(|x| self.get(x, x).is_some_and(Scalar::is_one))
    }

    /// Factors an invertible `v` as `l * w` with `l` its diagonal part and
    /// `w` of unit-diagonal form; conjugation by `v` is then conjugation by
    /// `l` followed by conjugation by `w`.
    pub fn factor_unit(&self) -> Result<(Self, Self)> {
        for x in 0..self.poset.len() {
            if self.get(x, x).is_none() {
                return Err(Error::NotInvertible(self.poset.name(x).to_string()));
            }
        }
        let diag = self.diagonal_part();
        let w = diag.inverse()?.convolve(self)?;
        debug_assert!(w.has_unit_diagonal());
        debug_assert_eq!(diag.convolve(&w)?, *self);
        Ok((diag, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(q(), n)
    }

    #[test]
    fn standard_functions() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        assert_eq!(delta.support_len(), 2);
        assert!(delta.value(0, 0).is_one());
        assert!(delta.value(0, 1).is_zero());

        let unit = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        assert_eq!(unit.support_len(), 1);
        assert!(unit.value(0, 1).is_one());

        let p3 = Poset::chain(3).unwrap();
        let zeta = IncidenceFunction::zeta(p3, q());
        assert_eq!(zeta.support_len(), 6);
        assert!(zeta.entries().all(|(_, v)| v.is_one()));

        let anti = Poset::antichain(2).unwrap();
        assert!(IncidenceFunction::matrix_unit(anti, q(), 0, 1).is_err());
    }

    #[test]
    fn convolution_examples() {
        let p = Poset::chain(3).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let zeta = IncidenceFunction::zeta(p.clone(), q());
        assert_eq!(delta.convolve(&zeta).unwrap(), zeta);
        assert_eq!(zeta.convolve(&delta).unwrap(), zeta);

        let sq = zeta.convolve(&zeta).unwrap();
        // sum over z in {0,1,2} of 1*1
        assert_eq!(sq.value(0, 2), s(3));
        assert_eq!(sq.value(0, 1), s(2));

        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let e12 = IncidenceFunction::matrix_unit(p.clone(), q(), 1, 2).unwrap();
        let e02 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 2).unwrap();
        assert_eq!(e01.convolve(&e12).unwrap(), e02);
        assert!(e12.convolve(&e01).unwrap().is_zero());
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let f = IncidenceFunction::zeta(Poset::chain(2).unwrap(), q());
        let g = IncidenceFunction::zeta(Poset::chain(3).unwrap(), q());
        assert_eq!(f.convolve(&g), Err(Error::PosetMismatch));
        let h = IncidenceFunction::zeta(
            Poset::chain(2).unwrap(),
            FieldSpec::prime_field(5).unwrap(),
        );
        assert_eq!(f.add(&h), Err(Error::FieldMismatch));
    }

    #[test]
    fn inverse_of_unit_triangular() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let v = delta.add(&e01).unwrap();
        let inv = v.inverse().unwrap();
        assert_eq!(inv, delta.sub(&e01).unwrap());
        assert_eq!(v.convolve(&inv).unwrap(), delta);
    }

    #[test]
    fn zeta_inverse_is_mobius() {
        let p = Poset::chain(3).unwrap();
        let zeta = IncidenceFunction::zeta(p.clone(), q());
        let mu = zeta.inverse().unwrap();
        assert_eq!(mu.value(0, 0), s(1));
        assert_eq!(mu.value(0, 1), s(-1));
        assert_eq!(mu.value(1, 2), s(-1));
        assert_eq!(mu.value(0, 2), s(0));
        let delta = IncidenceFunction::delta(p, q());
        assert_eq!(zeta.convolve(&mu).unwrap(), delta);
    }

    #[test]
    fn non_invertible_is_reported() {
        let p = Poset::chain(2).unwrap();
        let e0 = IncidenceFunction::idempotent(p, q(), 0).unwrap();
        assert_eq!(e0.inverse(), Err(Error::NotInvertible("1".into())));
    }

    #[test]
    fn split_examples() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();
        let v = delta.add(&e01).unwrap();
        assert_eq!(v.split_diagonal(), (delta.clone(), e01.clone()));

        let zeta = IncidenceFunction::zeta(p.clone(), q());
        assert_eq!(zeta.split_diagonal(), (delta.clone(), e01.clone()));

        let (l, m) = e01.split_diagonal();
        assert!(l.is_zero());
        assert_eq!(m, e01);
    }

    #[test]
    fn factor_unit_examples() {
        let p = Poset::chain(2).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let e01 = IncidenceFunction::matrix_unit(p.clone(), q(), 0, 1).unwrap();

        let v = delta.scale(&s(2)).unwrap().add(&e01).unwrap();
        let (l, w) = v.factor_unit().unwrap();
        assert_eq!(l, delta.scale(&s(2)).unwrap());
        let expected_w = delta
            .add(&e01.scale(&Scalar::from_fraction(1, 2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(w, expected_w);
        assert_eq!(l.convolve(&w).unwrap(), v);

        let u = delta.add(&e01).unwrap();
        assert_eq!(u.factor_unit().unwrap(), (delta.clone(), u.clone()));

        let l_only = delta.scale(&s(3)).unwrap();
        assert_eq!(l_only.factor_unit().unwrap(), (l_only.clone(), delta));
    }

    #[test]
    fn associativity_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..6 {
            let p = Poset::random(2 + (seed as usize % 6), 0.4, seed).unwrap();
            for field in [q(), FieldSpec::prime_field(5).unwrap()] {
                let f = sample::incidence_function(&mut rng, &p, field, 0.6);
                let g = sample::incidence_function(&mut rng, &p, field, 0.6);
                let h = sample::incidence_function(&mut rng, &p, field, 0.6);
                let lhs = f.convolve(&g).unwrap().convolve(&h).unwrap();
                let rhs = f.convolve(&g.convolve(&h).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn idempotents_are_orthogonal_and_sum_to_delta() {
        let p = Poset::random(5, 0.5, 7).unwrap();
        let delta = IncidenceFunction::delta(p.clone(), q());
        let mut total = IncidenceFunction::zero(p.clone(), q());
        for x in 0..p.len() {
            let ex = IncidenceFunction::idempotent(p.clone(), q(), x).unwrap();
            assert_eq!(ex.convolve(&ex).unwrap(), ex);
            for y in 0..p.len() {
                if x != y {
                    let ey = IncidenceFunction::idempotent(p.clone(), q(), y).unwrap();
                    assert!(ex.convolve(&ey).unwrap().is_zero());
                }
            }
            total = total.add(&ex).unwrap();
        }
        assert_eq!(total, delta);
    }

    #[test]
    fn strict_part_is_an_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let p = Poset::random(6, 0.4, 5).unwrap();
        for _ in 0..10 {
            let f = sample::incidence_function(&mut rng, &p, q(), 0.5);
            let m = sample::incidence_function(&mut rng, &p, q(), 0.5).strict_part();
            assert!(f.convolve(&m).unwrap().diagonal_part().is_zero());
            assert!(m.convolve(&f).unwrap().diagonal_part().is_zero());
        }
    }

    #[test]
    fn corner_products_have_single_pair_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let p = Poset::random(6, 0.5, 9).unwrap();
        let f = sample::incidence_function(&mut rng, &p, q(), 0.7);
        for &iv in p.intervals() {
            let ex = IncidenceFunction::idempotent(p.clone(), q(), iv.lo).unwrap();
            let ey = IncidenceFunction::idempotent(p.clone(), q(), iv.hi).unwrap();
            let corner = ex.convolve(&f).unwrap().convolve(&ey).unwrap();
            assert!(corner.entries().all(|(k, _)| k == iv));
        }
    }
}
