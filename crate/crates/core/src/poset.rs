//! Finite partially ordered sets.
//!
//! A [`Poset`] stores the full reflexive-transitive order relation, validated
//! at construction. The list of intervals `[x,y]` (all comparable pairs) is
//! precomputed in a fixed canonical order; that order is the basis order used
//! by every linear structure in the crate.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest poset for which the automorphism group is enumerated.
pub const MAX_AUT_ELEMENTS: usize = 10;
/// Largest random poset.
pub const MAX_RANDOM_ELEMENTS: usize = 16;
/// Largest subset-lattice exponent.
pub const MAX_BOOLEAN_EXPONENT: usize = 5;

/// A comparable pair `lo <= hi`, identifying the interval `[lo, hi]`.
///
/// The derived ordering (lo-major, hi-minor in index order) is the canonical
/// basis order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// A finite poset with named elements and a validated order relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<bool>,
    intervals: Vec<Interval>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("intervals", &self.intervals.len())
            .finish()
    }
}

fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty() && !name.contains(['[', ']', '(', ')', ',']);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidElementName(name.to_string()))
    }
}

impl Poset {
    /// Builds a poset from element names and arbitrary relation pairs.
    ///
    /// The order is the reflexive-transitive closure of `pairs`; closures
    /// that relate two distinct elements both ways are rejected.
    pub fn build<S: AsRef<str>>(elements: Vec<String>, pairs: &[(S, S)]) -> Result<Arc<Poset>> {
        let mut index_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let find = |name: &str| {
                elements
                    .iter()
                    .position(|e| e == name)
                    .ok_or_else(|| Error::UnknownElement(name.to_string()))
            };
            index_pairs.push((find(a.as_ref())?, find(b.as_ref())?));
        }
        Self::from_index_pairs(elements, &index_pairs)
    }

    /// As [`Poset::build`], with the relation given by element indices.
    pub fn from_index_pairs(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Arc<Poset>> {
        let n = elements.len();
        for (i, name) in elements.iter().enumerate() {
            validate_name(name)?;
            if elements[..i].contains(name) {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::AntisymmetryViolation(
                        elements[i].clone(),
                        elements[j].clone(),
                    ));
                }
            }
        }
        let mut intervals = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if leq[lo * n + hi] {
                    intervals.push(Interval::new(lo, hi));
                }
            }
        }
        Ok(Arc::new(Poset {
            elements,
            leq,
            intervals,
        }))
    }

    /// The total order 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> Result<Arc<Poset>> {
        if n == 0 {
            return Err(Error::InvalidParameter("chain size must be at least 1"));
        }
        let elements = numbered_names(n);
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_pairs(elements, &pairs)
    }

    /// n pairwise incomparable elements.
    pub fn antichain(n: usize) -> Result<Arc<Poset>> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "antichain size must be at least 1",
            ));
        }
        Self::from_index_pairs(numbered_names(n), &[])
    }

    /// The subset lattice of an n-element set, `1 <= n <= 5`.
    ///
    /// Elements are named by bitstrings `b_{n-1}..b_0`; bit `i` set means
    /// atom `i` belongs to the subset. Order is subset inclusion.
    pub fn boolean(n: usize) -> Result<Arc<Poset>> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "boolean lattice exponent must be at least 1",
            ));
        }
        if n > MAX_BOOLEAN_EXPONENT {
            return Err(Error::SizeLimit {
                what: "boolean lattice exponent",
                limit: MAX_BOOLEAN_EXPONENT,
                got: n,
            });
        }
        let size = 1usize << n;
        let elements: Vec<String> = (0..size).map(|mask| format!("{mask:0n$b}")).collect();
        let mut pairs = Vec::new();
        for a in 0..size {
            for b in 0..size {
                if a & b == a {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_index_pairs(elements, &pairs)
    }

    /// A seeded random order on `n <= 16` elements.
    ///
    /// Each pair (i, j) with i < j in index order is related with the given
    /// probability and the transitive closure is taken, so the result is
    /// always a valid poset and is deterministic for fixed parameters.
    pub fn random(n: usize, edge_density: f64, seed: u64) -> Result<Arc<Poset>> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "random poset size must be at least 1",
            ));
        }
        if n > MAX_RANDOM_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "random poset size",
                limit: MAX_RANDOM_ELEMENTS,
                got: n,
            });
        }
        if !(0.0..=1.0).contains(&edge_density) {
            return Err(Error::InvalidParameter("edge density must lie in [0, 1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random::<f64>() < edge_density {
                    pairs.push((i, j));
                }
            }
        }
        Self::from_index_pairs(numbered_names(n), &pairs)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// All intervals `[x,y]` in the canonical basis order.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Strict comparable pairs `x < y` in canonical order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = Interval> + '_ {
        self.intervals.iter().copied().filter(|iv| !iv.is_point())
    }

    /// The elements z with `lo <= z <= hi`, in index order.
    pub fn interval_elements(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable(
                self.elements[lo].clone(),
                self.elements[hi].clone(),
            ));
        }
        Ok((0..self.len())
            .filter(|&z| self.leq(lo, z) && self.leq(z, hi))
            .collect())
    }

    /// The cover relation: x covered by y when x < y with nothing between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for iv in self.strict_pairs() {
            let proper_between = (0..self.len())
                .any(|z| z != iv.lo && z != iv.hi && self.leq(iv.lo, z) && self.leq(z, iv.hi));
            if !proper_between {
                out.push((iv.lo, iv.hi));
            }
        }
        out
    }

    /// `"[x,y]"` using element names.
    pub fn interval_label(&self, iv: Interval) -> String {
        format!("[{},{}]", self.elements[iv.lo], self.elements[iv.hi])
    }

    /// `"(x,y)"` using element names.
    pub fn pair_label(&self, iv: Interval) -> String {
        format!("({},{})", self.elements[iv.lo], self.elements[iv.hi])
    }

    /// Enumerates the full automorphism group by backtracking over
    /// order-compatible bijections, in lexicographic image order.
    ///
    /// Candidate images are pruned by up-set/down-set sizes; guarded to at
    /// most [`MAX_AUT_ELEMENTS`] elements.
    pub fn automorphisms(&self) -> Result<Vec<PosetAutomorphism>> {
        let n = self.len();
        if n > MAX_AUT_ELEMENTS {
            return Err(Error::SizeLimit {
                what: "automorphism enumeration",
                limit: MAX_AUT_ELEMENTS,
                got: n,
            });
        }
        let profile: Vec<(usize, usize)> = (0..n)
            .map(|x| {
                let down = (0..n).filter(|&z| self.leq(z, x)).count();
                let up = (0..n).filter(|&z| self.leq(x, z)).count();
                (down, up)
            })
            .collect();
        let mut out = Vec::new();
        let mut forward = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.search(0, &profile, &mut forward, &mut used, &mut out);
        Ok(out)
    }

    fn search(
        &self,
        x: usize,
        profile: &[(usize, usize)],
        forward: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<PosetAutomorphism>,
    ) {
        let n = self.len();
        if x == n {
            out.push(PosetAutomorphism::from_forward(forward.clone()));
            return;
        }
        for y in 0..n {
            if used[y] || profile[x] != profile[y] {
                continue;
            }
            let consistent = (0..x).all(|prev| {
                self.leq(prev, x) == self.leq(forward[prev], y)
                    && self.leq(x, prev) == self.leq(y, forward[prev])
            });
            if consistent {
                forward[x] = y;
                used[y] = true;
                self.search(x + 1, profile, forward, used, out);
                used[y] = false;
                forward[x] = usize::MAX;
            }
        }
    }
}

fn numbered_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// An order automorphism of a poset, stored with its inverse.
#[derive(Debug, Clone, Eq)]
pub struct PosetAutomorphism {
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl PartialEq for PosetAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.forward == other.forward
    }
}

impl PosetAutomorphism {
    /// Validates that `forward` is a bijection preserving and reflecting
    /// the order of `poset`.
    pub fn new(poset: &Poset, forward: Vec<usize>) -> Result<Self> {
        let n = poset.len();
        if forward.len() != n {
            return Err(Error::NotOrderAutomorphism(format!(
                "map covers {} of {} elements",
                forward.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &y in &forward {
            if y >= n || seen[y] {
                return Err(Error::NotOrderAutomorphism("map is not a bijection".into()));
            }
            seen[y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if poset.leq(x, y) != poset.leq(forward[x], forward[y]) {
                    return Err(Error::NotOrderAutomorphism(format!(
                        "order not preserved on ({},{})",
                        poset.name(x),
                        poset.name(y)
                    )));
                }
            }
        }
        Ok(Self::from_forward(forward))
    }

    fn from_forward(forward: Vec<usize>) -> Self {
        let mut backward = vec![0; forward.len()];
        for (x, &y) in forward.iter().enumerate() {
            backward[y] = x;
        }
        PosetAutomorphism { forward, backward }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_forward((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    pub fn unapply(&self, y: usize) -> usize {
        self.backward[y]
    }

    pub fn forward_map(&self) -> &[usize] {
        &self.forward
    }

    /// `self . other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "automorphism size mismatch");
        Self::from_forward(other.forward.iter().map(|&y| self.forward[y]).collect())
    }

    pub fn inverse(&self) -> Self {
        PosetAutomorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }
}
