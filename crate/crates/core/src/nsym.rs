//! Characters of the orbit-polytope Hopf monoid and truncated series in the
//! ribbon basis of noncommutative symmetric functions.
//!
//! A character is fixed by its values on the generators `(1)` and the
//! compositions with at least two parts; on a point class `(n)` it is
//! `ζ((1))^n`. The map
//!
//! ```text
//! F(ζ) = Σ_β ζ(O_β) / |β|! · R_β
//! ```
//!
//! turns convolution of characters into multiplication of ribbon series,
//! where `R_β R_γ = R_{β·γ} + R_{β⊙γ}`. Its image is the group `G` of
//! series with `c_∅ = 1` and `n!·c_(n) = c_(1)^n`.

use std::collections::BTreeMap;

use num_traits::{One, Pow, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{compositions_of, concat, near_concat, splits, Composition};
use crate::error::{Error, Result};
use crate::hcomp::generators_of_weight;
use crate::monoid::OrbitClassElement;
use crate::scalar::{as_string, binomial, factorial, from_biguint, int, rat, Rational};

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    degree: usize,
    values: BTreeMap<Composition, Rational>,
}

impl Character {
    /// Character with the given generator values; unspecified generators of
    /// weight at most `degree` take the value zero.
    pub fn new(degree: usize, values: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let mut stored = BTreeMap::new();
        for (alpha, value) in values {
            if !alpha.is_generator() {
                return Err(Error::NotAGenerator(alpha.parts().to_vec()));
            }
            if alpha.weight() > degree {
                return Err(Error::WeightMismatch { expected: degree, found: alpha.weight() });
            }
            if !value.is_zero() {
                stored.insert(alpha, value);
            }
        }
        Ok(Character { degree, values: stored })
    }

    /// The convolution identity: zero on every generator.
    pub fn identity(degree: usize) -> Self {
        Character { degree, values: BTreeMap::new() }
    }

    /// One on points, zero elsewhere.
    pub fn basic(degree: usize) -> Self {
        let values = if degree >= 1 { BTreeMap::from([(Composition::ones(1), int(1))]) } else { BTreeMap::new() };
        Character { degree, values }
    }

    /// Uniform random small rationals on every generator up to `degree`.
    pub fn random(degree: usize, rng: &mut impl Rng) -> Self {
        let values = (1..=degree)
            .flat_map(generators_of_weight)
            .map(|g| (g, rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))))
            .collect::<Vec<_>>();
        Character::new(degree, values).expect("generators within degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Stored nonzero generator values.
    pub fn values(&self) -> &BTreeMap<Composition, Rational> {
        &self.values
    }

    /// `ζ(O_α)` for any composition: 1 on `∅`, `ζ((1))^n` on `(n)`.
    pub fn value(&self, alpha: &Composition) -> Rational {
        if alpha.is_empty() {
            return Rational::one();
        }
        if alpha.is_generator() {
            return self.values.get(alpha).cloned().unwrap_or_else(Rational::zero);
        }
        let point = self.value(&Composition::ones(1));
        Pow::pow(point, alpha.weight() as u32)
    }

    /// Value on a labeled element: the product over its blocks.
    pub fn eval_element(&self, x: &OrbitClassElement) -> Rational {
        x.blocks().iter().map(|b| self.value(&b.composition)).product()
    }

    pub fn with_degree(&self, degree: usize) -> Character {
        Character {
            degree,
            values: self.values.iter().filter(|(a, _)| a.weight() <= degree).map(|(a, v)| (a.clone(), v.clone())).collect(),
        }
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            composition: &'a Composition,
            #[serde(with = "as_string")]
            value: &'a Rational,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            degree: usize,
            values: Vec<Entry<'a>>,
        }
        Wire { degree: self.degree, values: self.values.iter().map(|(composition, value)| Entry { composition, value }).collect() }
            .serialize(s)
    }
}

/// Wire form of a character whose degree may be supplied separately.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub degree: Option<usize>,
    pub values: Vec<CharacterEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterEntry {
    pub composition: Composition,
    #[serde(with = "as_string")]
    pub value: Rational,
}

impl CharacterSpec {
    /// Builds the character, preferring `degree` over the stored one.
    pub fn build(self, degree: Option<usize>) -> Result<Character> {
        let degree = degree
            .or(self.degree)
            .unwrap_or_else(|| self.values.iter().map(|e| e.composition.weight()).max().unwrap_or(0));
        Character::new(degree, self.values.into_iter().map(|e| (e.composition, e.value)))
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CharacterSpec::deserialize(d)?.build(None).map_err(serde::de::Error::custom)
    }
}

/// `(ζ⋆ψ)(O_α) = Σ_i C(|α|, i) ζ(O_{β_i}) ψ(O_{γ_i})` over the splits of `α`.
pub fn convolve_value(zeta: &Character, psi: &Character, alpha: &Composition) -> Rational {
    let n = alpha.weight();
    splits(alpha)
        .iter()
        .map(|(beta, gamma)| from_biguint(&binomial(n, beta.weight())) * zeta.value(beta) * psi.value(gamma))
        .sum()
}

/// Convolution, truncated to the smaller of the two degrees.
pub fn convolve(zeta: &Character, psi: &Character) -> Character {
    let degree = zeta.degree.min(psi.degree);
    let values: Vec<_> = (1..=degree)
        .flat_map(generators_of_weight)
        .map(|g| {
            let v = convolve_value(zeta, psi, &g);
            (g, v)
        })
        .collect();
    Character::new(degree, values).expect("generators within degree")
}

/// Convolution inverse, solved weight by weight from `ζ⋆ψ = ε`.
pub fn invert_character(zeta: &Character) -> Character {
    let mut inverse = Character::identity(zeta.degree);
    for n in 1..=zeta.degree {
        for g in generators_of_weight(n) {
            // the i = 0 split contributes ζ(∅)·ψ(g) = ψ(g)
            let rest: Rational = splits(&g)
                .iter()
                .skip(1)
                .map(|(beta, gamma)| from_biguint(&binomial(n, beta.weight())) * zeta.value(beta) * inverse.value(gamma))
                .sum();
            if !rest.is_zero() {
                inverse.values.insert(g, -rest);
            }
        }
    }
    inverse
}

/// A ribbon series `Σ c_α R_α` truncated above weight `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSymSeries {
    degree: usize,
    coeffs: BTreeMap<Composition, Rational>,
}

impl NSymSeries {
    pub fn new(degree: usize, coeffs: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let mut out = NSymSeries { degree, coeffs: BTreeMap::new() };
        for (alpha, c) in coeffs {
            if alpha.weight() > degree {
                return Err(Error::WeightMismatch { expected: degree, found: alpha.weight() });
            }
            out.add_term(alpha, c);
        }
        Ok(out)
    }

    pub fn unit(degree: usize) -> Self {
        NSymSeries { degree, coeffs: BTreeMap::from([(Composition::empty(), int(1))]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Composition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, alpha: Composition, c: Rational) {
        if alpha.weight() > self.degree || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(alpha.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&alpha);
        }
    }

    pub fn scale(&self, c: &Rational) -> NSymSeries {
        let mut out = NSymSeries { degree: self.degree, coeffs: BTreeMap::new() };
        for (alpha, v) in &self.coeffs {
            out.add_term(alpha.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &NSymSeries) -> Result<NSymSeries> {
        check_degrees(self, other)?;
        let mut out = self.clone();
        for (alpha, v) in &other.coeffs {
            out.add_term(alpha.clone(), v.clone());
        }
        Ok(out)
    }
}

impl Serialize for NSymSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            composition: &'a Composition,
            #[serde(with = "as_string")]
            coeff: &'a Rational,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            degree: usize,
            coeffs: Vec<Term<'a>>,
        }
        Wire { degree: self.degree, coeffs: self.coeffs.iter().map(|(composition, coeff)| Term { composition, coeff }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NSymSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Term {
            composition: Composition,
            #[serde(with = "as_string")]
            coeff: Rational,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            degree: usize,
            coeffs: Vec<Term>,
        }
        let wire = Wire::deserialize(d)?;
        NSymSeries::new(wire.degree, wire.coeffs.into_iter().map(|t| (t.composition, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

fn check_degrees(f: &NSymSeries, g: &NSymSeries) -> Result<()> {
    if f.degree != g.degree {
        return Err(Error::DegreeMismatch { left: f.degree, right: g.degree });
    }
    Ok(())
}

/// `R_β R_γ`: the concatenation and, when both are nonempty, the
/// near-concatenation.
pub fn ribbon_mul(beta: &Composition, gamma: &Composition) -> Vec<Composition> {
    let mut out = vec![concat(beta, gamma)];
    if let Ok(near) = near_concat(beta, gamma) {
        out.push(near);
    }
    out
}

pub fn series_mul(f: &NSymSeries, g: &NSymSeries) -> Result<NSymSeries> {
    check_degrees(f, g)?;
    let mut out = NSymSeries { degree: f.degree, coeffs: BTreeMap::new() };
    for (beta, x) in &f.coeffs {
        for (gamma, y) in &g.coeffs {
            if beta.weight() + gamma.weight() > f.degree {
                continue;
            }
            for alpha in ribbon_mul(beta, gamma) {
                out.add_term(alpha, x * y);
            }
        }
    }
    Ok(out)
}

/// Multiplicative inverse up to the truncation degree.
///
/// The coefficient of `R_α` in `f·g` is `Σ_i f_{β_i} g_{γ_i}` over the splits
/// of `α`, so `g_α` follows from lower-weight coefficients once `f_∅ ≠ 0`.
pub fn series_inverse(f: &NSymSeries) -> Result<NSymSeries> {
    let constant = f.coeff(&Composition::empty());
    if constant.is_zero() {
        return Err(Error::NonInvertible);
    }
    let inv_constant = constant.recip();
    let mut g = NSymSeries { degree: f.degree, coeffs: BTreeMap::new() };
    g.add_term(Composition::empty(), inv_constant.clone());
    for n in 1..=f.degree {
        for alpha in compositions_of(n) {
            let rest: Rational = splits(&alpha)
                .iter()
                .skip(1)
                .map(|(beta, gamma)| f.coeff(beta) * g.coeff(gamma))
                .sum();
            g.add_term(alpha, -rest * &inv_constant);
        }
    }
    Ok(g)
}

/// Membership in `G`: `c_∅ = 1` and `n!·c_(n) = c_(1)^n` for `n ≤ degree`.
pub fn in_group_g(f: &NSymSeries) -> bool {
    if !f.coeff(&Composition::empty()).is_one() {
        return false;
    }
    let c1 = f.coeff(&Composition::ones(1));
    (2..=f.degree).all(|n| from_biguint(&factorial(n)) * f.coeff(&Composition::single(n)) == Pow::pow(&c1, n as u32))
}

/// `F(ζ)` truncated at `degree`, which may not exceed the character's own.
pub fn char_to_series(zeta: &Character, degree: usize) -> Result<NSymSeries> {
    if degree > zeta.degree {
        return Err(Error::DegreeMismatch { left: zeta.degree, right: degree });
    }
    let mut out = NSymSeries { degree, coeffs: BTreeMap::new() };
    for n in 0..=degree {
        let scale = from_biguint(&factorial(n)).recip();
        for beta in compositions_of(n) {
            let value = zeta.value(&beta);
            out.add_term(beta, value * &scale);
        }
    }
    Ok(out)
}

/// The character `ζ` with `F(ζ) = f`, for `f ∈ G`.
pub fn series_to_char(f: &NSymSeries) -> Result<Character> {
    if !in_group_g(f) {
        return Err(Error::NotInGroup);
    }
    let values = f
        .coeffs
        .iter()
        .filter(|(alpha, _)| alpha.is_generator())
        .map(|(alpha, c)| (alpha.clone(), c * from_biguint(&factorial(alpha.weight()))));
    Character::new(f.degree, values.collect::<Vec<_>>())
}
