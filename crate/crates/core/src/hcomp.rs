//! The graded Hopf algebra of compositions.
//!
//! As an algebra it is free commutative on the generators `(1)` and all
//! compositions with at least two parts, so its basis is the multisets of
//! generators. A one-part composition `(n)` stands for the product `(1)^n`.
//! The coproduct of a generator `α` is
//!
//! ```text
//! Δ(α) = Σ_{β·γ = α or β⊙γ = α} C(|α|, |β|) β ⊗ γ
//! ```
//!
//! extended multiplicatively.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{compositions_of, splits, Composition};
use crate::error::{Error, Result};
use crate::monoid::OrbitClassElement;
use crate::scalar::{as_string, binomial, from_biguint, Rational};

/// A sorted multiset of generators; the empty multiset is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GeneratorMultiset(Vec<Composition>);

impl GeneratorMultiset {
    pub fn new(mut members: Vec<Composition>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|c| !c.is_generator()) {
            return Err(Error::NotAGenerator(bad.parts().to_vec()));
        }
        members.sort();
        Ok(GeneratorMultiset(members))
    }

    pub fn unit() -> Self {
        GeneratorMultiset(Vec::new())
    }

    pub fn members(&self) -> &[Composition] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Composition::weight).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union.
    pub fn union(&self, other: &GeneratorMultiset) -> GeneratorMultiset {
        let mut members = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                members.push(self.0[i].clone());
                i += 1;
            } else {
                members.push(other.0[j].clone());
                j += 1;
            }
        }
        members.extend_from_slice(&self.0[i..]);
        members.extend_from_slice(&other.0[j..]);
        GeneratorMultiset(members)
    }

    /// Representation of any composition: a generator is itself, `(n)` is
    /// `n` copies of `(1)`, and `∅` is the unit.
    pub fn of_composition(alpha: &Composition) -> GeneratorMultiset {
        if alpha.is_generator() {
            GeneratorMultiset(vec![alpha.clone()])
        } else {
            GeneratorMultiset(vec![Composition::ones(1); alpha.weight()])
        }
    }
}

impl<'de> Deserialize<'de> for GeneratorMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<Composition>::deserialize(d)?;
        // one-part members are accepted and expanded into copies of (1)
        let expanded = members
            .iter()
            .fold(GeneratorMultiset::unit(), |acc, c| acc.union(&GeneratorMultiset::of_composition(c)));
        Ok(expanded)
    }
}

/// The isomorphism class of a labeled element: its multiset of block
/// generators.
pub fn isomorphism_class(x: &OrbitClassElement) -> GeneratorMultiset {
    GeneratorMultiset(x.generators())
}

/// All generators of weight `m`, sorted.
pub fn generators_of_weight(m: usize) -> Vec<Composition> {
    compositions_of(m).into_iter().filter(Composition::is_generator).collect()
}

/// All basis multisets of total degree `d`, sorted.
pub fn basis_of_degree(d: usize) -> Vec<GeneratorMultiset> {
    let generators: Vec<Composition> = (1..=d).flat_map(generators_of_weight).collect();
    fn go(
        generators: &[Composition],
        from: usize,
        left: usize,
        current: &mut Vec<Composition>,
        out: &mut Vec<GeneratorMultiset>,
    ) {
        if left == 0 {
            out.push(GeneratorMultiset::new(current.clone()).unwrap());
            return;
        }
        for (k, g) in generators.iter().enumerate().skip(from) {
            if g.weight() <= left {
                current.push(g.clone());
                go(generators, k, left - g.weight(), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&generators, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// A finite rational combination of basis multisets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HopfElement {
    terms: BTreeMap<GeneratorMultiset, Rational>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement::default()
    }

    pub fn unit() -> Self {
        HopfElement::basis(GeneratorMultiset::unit())
    }

    pub fn basis(m: GeneratorMultiset) -> Self {
        HopfElement { terms: BTreeMap::from([(m, Rational::one())]) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GeneratorMultiset, Rational)>) -> Self {
        let mut out = HopfElement::zero();
        for (m, c) in terms {
            insert_term(&mut out.terms, m, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<GeneratorMultiset, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &GeneratorMultiset) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> HopfElement {
        HopfElement::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> HopfElement {
        HopfElement {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(GeneratorMultiset::degree).max()
    }
}

impl Add for &HopfElement {
    type Output = HopfElement;

    fn add(self, rhs: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            insert_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &HopfElement {
    type Output = HopfElement;

    fn neg(self) -> HopfElement {
        self.scale(&-Rational::one())
    }
}

impl Sub for &HopfElement {
    type Output = HopfElement;

    fn sub(self, rhs: &HopfElement) -> HopfElement {
        self + &-rhs
    }
}

impl Mul for &HopfElement {
    type Output = HopfElement;

    fn mul(self, rhs: &HopfElement) -> HopfElement {
        product(self, rhs)
    }
}

impl Serialize for HopfElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            #[serde(with = "as_string")]
            coeff: &'a Rational,
            multiset: &'a GeneratorMultiset,
        }
        s.collect_seq(self.terms.iter().map(|(multiset, coeff)| Term { coeff, multiset }))
    }
}

impl<'de> Deserialize<'de> for HopfElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Term {
            #[serde(with = "as_string")]
            coeff: Rational,
            multiset: GeneratorMultiset,
        }
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(HopfElement::from_terms(terms.into_iter().map(|t| (t.multiset, t.coeff))))
    }
}

/// A finite rational combination of `left ⊗ right` basis tensors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(GeneratorMultiset, GeneratorMultiset), Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn unit() -> Self {
        TensorElement::from_terms([((GeneratorMultiset::unit(), GeneratorMultiset::unit()), Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((GeneratorMultiset, GeneratorMultiset), Rational)>) -> Self {
        let mut out = TensorElement::zero();
        for (k, c) in terms {
            insert_term(&mut out.terms, k, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(GeneratorMultiset, GeneratorMultiset), Rational> {
        &self.terms
    }

    pub fn pure(left: &HopfElement, right: &HopfElement) -> TensorElement {
        TensorElement::from_terms(left.terms.iter().flat_map(|(a, x)| {
            right.terms.iter().map(move |(b, y)| ((a.clone(), b.clone()), x * y))
        }))
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn product(&self, other: &TensorElement) -> TensorElement {
        TensorElement::from_terms(self.terms.iter().flat_map(|((a, b), x)| {
            other.terms.iter().map(move |((c, d), y)| ((a.union(c), b.union(d)), x * y))
        }))
    }

    /// `f ⊗ g` applied termwise.
    pub fn map(
        &self,
        mut left: impl FnMut(&GeneratorMultiset) -> HopfElement,
        mut right: impl FnMut(&GeneratorMultiset) -> HopfElement,
    ) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c) in &self.terms {
            let piece = TensorElement::pure(&left(a), &right(b));
            for (k, v) in piece.terms {
                insert_term(&mut out.terms, k, v * c);
            }
        }
        out
    }

    /// Multiplication `H ⊗ H → H`.
    pub fn multiply(&self) -> HopfElement {
        HopfElement::from_terms(self.terms.iter().map(|((a, b), c)| (a.union(b), c.clone())))
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            #[serde(with = "as_string")]
            coeff: &'a Rational,
            left: &'a GeneratorMultiset,
            right: &'a GeneratorMultiset,
        }
        s.collect_seq(self.terms.iter().map(|((left, right), coeff)| Term { coeff, left, right }))
    }
}

pub fn inject(alpha: &Composition) -> HopfElement {
    HopfElement::basis(GeneratorMultiset::of_composition(alpha))
}

pub fn product(x: &HopfElement, y: &HopfElement) -> HopfElement {
    HopfElement::from_terms(
        x.terms.iter().flat_map(|(a, u)| y.terms.iter().map(move |(b, v)| (a.union(b), u * v))),
    )
}

/// Coproduct of a single generator (or any composition).
pub fn coproduct_composition(alpha: &Composition) -> TensorElement {
    let n = alpha.weight();
    TensorElement::from_terms(splits(alpha).into_iter().map(|(beta, gamma)| {
        let coeff = from_biguint(&binomial(n, beta.weight()));
        ((GeneratorMultiset::of_composition(&beta), GeneratorMultiset::of_composition(&gamma)), coeff)
    }))
}

fn coproduct_multiset(m: &GeneratorMultiset) -> TensorElement {
    m.0.iter().fold(TensorElement::unit(), |acc, g| acc.product(&coproduct_composition(g)))
}

pub fn coproduct(x: &HopfElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (m, c) in &x.terms {
        for (k, v) in coproduct_multiset(m).terms {
            insert_term(&mut out.terms, k, v * c);
        }
    }
    out
}

/// Coefficient of the unit.
pub fn counit(x: &HopfElement) -> Rational {
    x.coeff(&GeneratorMultiset::unit())
}

/// Antipode, determined degree by degree from `m∘(S⊗id)∘Δ = u∘ε`.
///
/// `S` is an algebra map since the algebra is commutative, so it suffices to
/// solve for each generator `α`: the `β = α` term of the identity is
/// `S(α)`, and every other term involves `S` on strictly smaller degree.
pub fn antipode(x: &HopfElement) -> HopfElement {
    let mut cache = HashMap::new();
    let mut out = HopfElement::zero();
    for (m, c) in &x.terms {
        out = &out + &antipode_multiset(m, &mut cache).scale(c);
    }
    out
}

fn antipode_multiset(m: &GeneratorMultiset, cache: &mut HashMap<Composition, HopfElement>) -> HopfElement {
    m.0.iter().fold(HopfElement::unit(), |acc, g| product(&acc, &antipode_generator(g, cache)))
}

fn antipode_generator(alpha: &Composition, cache: &mut HashMap<Composition, HopfElement>) -> HopfElement {
    if let Some(hit) = cache.get(alpha) {
        return hit.clone();
    }
    let mut sum = HopfElement::zero();
    for ((beta, gamma), c) in coproduct_composition(alpha).terms {
        if beta.degree() == alpha.weight() {
            continue;
        }
        let term = product(&antipode_multiset(&beta, cache), &HopfElement::basis(gamma));
        sum = &sum + &term.scale(&c);
    }
    let result = -&sum;
    cache.insert(alpha.clone(), result.clone());
    result
}

/// `(Δ⊗id)∘Δ` and `(id⊗Δ)∘Δ` on `x`, as maps from basis triples to
/// coefficients.
pub type TripleTensor = BTreeMap<(GeneratorMultiset, GeneratorMultiset, GeneratorMultiset), Rational>;

pub fn iterated_coproducts(x: &HopfElement) -> (TripleTensor, TripleTensor) {
    let once = coproduct(x);
    let mut left = TripleTensor::new();
    let mut right = TripleTensor::new();
    for ((a, b), c) in once.terms() {
        for ((a1, a2), v) in coproduct_multiset(a).terms {
            insert_term(&mut left, (a1, a2, b.clone()), v * c);
        }
        for ((b1, b2), v) in coproduct_multiset(b).terms {
            insert_term(&mut right, (a.clone(), b1, b2), v * c);
        }
    }
    (left, right)
}

/// Both sides of the antipode identity: `m∘(S⊗id)∘Δ(x)` and
/// `m∘(id⊗S)∘Δ(x)`.
pub fn antipode_sides(x: &HopfElement) -> (HopfElement, HopfElement) {
    let delta = coproduct(x);
    let left = delta.map(|a| antipode(&HopfElement::basis(a.clone())), |b| HopfElement::basis(b.clone()));
    let right = delta.map(|a| HopfElement::basis(a.clone()), |b| antipode(&HopfElement::basis(b.clone())));
    (left.multiply(), right.multiply())
}
