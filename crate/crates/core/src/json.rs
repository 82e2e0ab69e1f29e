//! JSON documents for every file format the tools read and write.
//!
//! Serialization is canonical: object keys are sorted, lists follow the
//! basis order, and scalars use their canonical text form, so equal values
//! always produce byte-identical documents.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::IncidenceFunction;
use crate::automorphism::{AutDecomposition, MultiplicativeSystem};
use crate::coalgebra::{CoalgebraEndomap, CoalgebraVector};
use crate::derivation::{AdditiveSystem, DerDecomposition};
use crate::duality::AlgebraEndomap;
use crate::error::{Error, Result};
use crate::poset::{Interval, Poset, PosetAutomorphism};
use crate::scalar::{FieldSpec, Scalar};

/// Serializes any document in the canonical pretty form.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize infallibly");
    out.push('\n');
    out
}

/// Parses a document, mapping syntax errors to schema errors.
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

/// Poset document: element names (fixing the index order) and relation
/// pairs. Emitted pairs are the cover relation; accepted pairs may be any
/// relation whose closure is a partial order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub covers: Vec<(String, String)>,
    pub elements: Vec<String>,
}

impl PosetDoc {
    pub fn from_poset(poset: &Poset) -> Self {
        PosetDoc {
            covers: poset
                .covers()
                .into_iter()
                .map(|(x, y)| (poset.name(x).to_string(), poset.name(y).to_string()))
                .collect(),
            elements: poset.element_names().to_vec(),
        }
    }

    pub fn to_poset(&self) -> Result<Arc<Poset>> {
        Poset::build(self.elements.clone(), &self.covers)
    }
}

/// Reference to a poset inside another document: inline, or by name for a
/// caller-resolved external file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRefDoc {
    Name(String),
    Inline(PosetDoc),
}

/// Incidence-function document with its poset and field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDoc {
    pub entries: Vec<(String, String, String)>,
    pub field: String,
    pub poset: PosetRefDoc,
}

impl FunctionDoc {
    pub fn from_function(function: &IncidenceFunction) -> Self {
        let poset = function.poset();
        FunctionDoc {
            entries: function
                .entries()
                .map(|(iv, v)| {
                    (
                        poset.name(iv.lo).to_string(),
                        poset.name(iv.hi).to_string(),
                        v.to_string(),
                    )
                })
                .collect(),
            field: function.field().to_string(),
            poset: PosetRefDoc::Inline(PosetDoc::from_poset(poset)),
        }
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    /// Builds the function from an inline poset; named references must be
    /// resolved by the caller first.
    pub fn to_function(&self) -> Result<IncidenceFunction> {
        let poset = match &self.poset {
            PosetRefDoc::Inline(doc) => doc.to_poset()?,
            PosetRefDoc::Name(name) => return Err(Error::UnresolvedPosetRef(name.clone())),
        };
        self.to_function_with(&poset, self.field()?)
    }

    /// Builds the function against an existing context, validating that
    /// the document agrees with it.
    pub fn to_function_with(
        &self,
        poset: &Arc<Poset>,
        field: FieldSpec,
    ) -> Result<IncidenceFunction> {
        if self.field()? != field {
            return Err(Error::FieldMismatch);
        }
        if let PosetRefDoc::Inline(doc) = &self.poset {
            if doc.to_poset()? != *poset {
                return Err(Error::PosetMismatch);
            }
        }
        let mut entries = Vec::new();
        for (x, y, value) in &self.entries {
            let iv = Interval::new(poset.resolve(x)?, poset.resolve(y)?);
            entries.push((iv, Scalar::parse(value, field)?));
        }
        IncidenceFunction::from_entries(poset.clone(), field, entries)
    }
}

/// One term of a linear-map image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub interval: (String, String),
}

/// Coalgebra linear-map document: the image of every basis interval,
/// keyed by `"[x,y]"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndomapDoc {
    pub images: BTreeMap<String, Vec<TermDoc>>,
}

impl EndomapDoc {
    pub fn from_endomap(map: &CoalgebraEndomap) -> Self {
        let poset = map.poset();
        let images = map
            .images()
            .map(|(iv, image)| {
                let terms = image
                    .terms()
                    .map(|(term, c)| TermDoc {
                        coeff: c.to_string(),
                        interval: (
                            poset.name(term.lo).to_string(),
                            poset.name(term.hi).to_string(),
                        ),
                    })
                    .collect();
                (poset.interval_label(iv), terms)
            })
            .collect();
        EndomapDoc { images }
    }

    pub fn to_endomap(&self, poset: &Arc<Poset>, field: FieldSpec) -> Result<CoalgebraEndomap> {
        let mut images = BTreeMap::new();
        for (key, terms) in &self.images {
            let iv = parse_bracket_key(poset, key, '[', ']')?;
            let mut parsed = Vec::new();
            for term in terms {
                let term_iv = Interval::new(
                    poset.resolve(&term.interval.0)?,
                    poset.resolve(&term.interval.1)?,
                );
                parsed.push((term_iv, Scalar::parse(&term.coeff, field)?));
            }
            images.insert(iv, CoalgebraVector::from_terms(poset.clone(), field, parsed)?);
        }
        CoalgebraEndomap::from_images(poset.clone(), field, images)
    }
}

/// Algebra linear-map document: the image of every matrix unit, keyed by
/// `"(x,y)"`, with incidence-function entry lists as values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraEndomapDoc {
    pub images: BTreeMap<String, Vec<(String, String, String)>>,
}

impl AlgebraEndomapDoc {
    pub fn from_endomap(map: &AlgebraEndomap) -> Self {
        let poset = map.poset();
        let images = map
            .images()
            .map(|(iv, image)| {
                let entries = image
                    .entries()
                    .map(|(pair, v)| {
                        (
                            poset.name(pair.lo).to_string(),
                            poset.name(pair.hi).to_string(),
                            v.to_string(),
                        )
                    })
                    .collect();
                (poset.pair_label(iv), entries)
            })
            .collect();
        AlgebraEndomapDoc { images }
    }

    pub fn to_endomap(&self, poset: &Arc<Poset>, field: FieldSpec) -> Result<AlgebraEndomap> {
        let mut images = BTreeMap::new();
        for (key, entries) in &self.images {
            let iv = parse_bracket_key(poset, key, '(', ')')?;
            let mut parsed = Vec::new();
            for (x, y, value) in entries {
                let pair = Interval::new(poset.resolve(x)?, poset.resolve(y)?);
                parsed.push((pair, Scalar::parse(value, field)?));
            }
            images.insert(
                iv,
                IncidenceFunction::from_entries(poset.clone(), field, parsed)?,
            );
        }
        AlgebraEndomap::from_images(poset.clone(), field, images)
    }
}

/// Scalar system document shared by multiplicative and additive systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub values: Vec<(String, String, String)>,
}

impl SystemDoc {
    pub fn from_multiplicative(sys: &MultiplicativeSystem) -> Self {
        let poset = sys.poset();
        SystemDoc {
            values: sys
                .values()
                .map(|(iv, v)| {
                    (
                        poset.name(iv.lo).to_string(),
                        poset.name(iv.hi).to_string(),
                        v.to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_additive(sys: &AdditiveSystem) -> Self {
        let poset = sys.poset();
        SystemDoc {
            values: sys
                .values()
                .map(|(iv, v)| {
                    (
                        poset.name(iv.lo).to_string(),
                        poset.name(iv.hi).to_string(),
                        v.to_string(),
                    )
                })
                .collect(),
        }
    }

    fn parsed_values(
        &self,
        poset: &Arc<Poset>,
        field: FieldSpec,
    ) -> Result<BTreeMap<Interval, Scalar>> {
        let mut values = BTreeMap::new();
        for (x, y, value) in &self.values {
            let iv = Interval::new(poset.resolve(x)?, poset.resolve(y)?);
            if values
                .insert(iv, Scalar::parse(value, field)?)
                .is_some()
            {
                return Err(Error::Schema(format!(
                    "duplicate system value for ({x},{y})"
                )));
            }
        }
        Ok(values)
    }

    /// Every strict pair must be present for a multiplicative system.
    pub fn to_multiplicative(
        &self,
        poset: &Arc<Poset>,
        field: FieldSpec,
    ) -> Result<MultiplicativeSystem> {
        MultiplicativeSystem::new(poset.clone(), field, self.parsed_values(poset, field)?)
    }

    /// Missing strict pairs default to zero, subject to the sum relation.
    pub fn to_additive(&self, poset: &Arc<Poset>, field: FieldSpec) -> Result<AdditiveSystem> {
        AdditiveSystem::new(poset.clone(), field, self.parsed_values(poset, field)?)
    }
}

/// Order-automorphism document: the forward map on element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub map: BTreeMap<String, String>,
}

impl OrderDoc {
    pub fn from_automorphism(poset: &Poset, tau: &PosetAutomorphism) -> Self {
        OrderDoc {
            map: (0..poset.len())
                .map(|x| {
                    (
                        poset.name(x).to_string(),
                        poset.name(tau.apply(x)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_automorphism(&self, poset: &Poset) -> Result<PosetAutomorphism> {
        let mut forward = vec![usize::MAX; poset.len()];
        for (from, to) in &self.map {
            forward[poset.resolve(from)?] = poset.resolve(to)?;
        }
        if forward.contains(&usize::MAX) {
            return Err(Error::NotOrderAutomorphism(
                "map does not cover every element".into(),
            ));
        }
        PosetAutomorphism::new(poset, forward)
    }
}

/// Report document for an automorphism factorization; also the sidecar
/// format emitted next to randomly generated automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPartsDoc {
    pub inner_unit: FunctionDoc,
    pub mult_system: SystemDoc,
    pub order: OrderDoc,
}

impl AutPartsDoc {
    pub fn from_parts(poset: &Poset, parts: &AutDecomposition) -> Self {
        AutPartsDoc {
            inner_unit: FunctionDoc::from_function(&parts.inner_unit),
            mult_system: SystemDoc::from_multiplicative(&parts.mult_system),
            order: OrderDoc::from_automorphism(poset, &parts.order_part),
        }
    }

    pub fn to_parts(&self, poset: &Arc<Poset>, field: FieldSpec) -> Result<AutDecomposition> {
        Ok(AutDecomposition {
            inner_unit: self.inner_unit.to_function_with(poset, field)?,
            mult_system: self.mult_system.to_multiplicative(poset, field)?,
            order_part: self.order.to_automorphism(poset)?,
        })
    }
}

/// Report document for a derivation splitting; also the sidecar format
/// for randomly generated derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerPartsDoc {
    pub additive_system: SystemDoc,
    pub inner_part: FunctionDoc,
}

impl DerPartsDoc {
    pub fn from_parts(parts: &DerDecomposition) -> Self {
        DerPartsDoc {
            additive_system: SystemDoc::from_additive(&parts.additive_system),
            inner_part: FunctionDoc::from_function(&parts.inner_part),
        }
    }

    pub fn to_parts(&self, poset: &Arc<Poset>, field: FieldSpec) -> Result<DerDecomposition> {
        Ok(DerDecomposition {
            inner_part: self.inner_part.to_function_with(poset, field)?,
            additive_system: self.additive_system.to_additive(poset, field)?,
        })
    }
}

fn parse_bracket_key(poset: &Poset, key: &str, open: char, close: char) -> Result<Interval> {
    let inner = key
        .strip_prefix(open)
        .and_then(|k| k.strip_suffix(close))
        .ok_or_else(|| Error::Schema(format!("malformed interval key `{key}`")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| Error::Schema(format!("malformed interval key `{key}`")))?;
    Ok(Interval::new(poset.resolve(x)?, poset.resolve(y)?))
}
