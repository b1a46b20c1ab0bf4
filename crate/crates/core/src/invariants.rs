//! The basic character and its polynomial invariant.
//!
//! For a character `ζ` the invariant of `x ∈ H[I]` is
//!
//! ```text
//! χ(x)(t) = Σ_k ( Σ_{(S₁,…,S_k) ⊨ I} ζ(x|_{S₁}) ⋯ ζ(x|_{S_k}) ) C(t, k)
//! ```
//!
//! summing over ordered set partitions into nonempty blocks. For the basic
//! character and a class `O_α` only the block sizes refining `α` survive,
//! which gives `χ(O_α) = Σ_{γ refines α} C(|α|; γ) C(t, ℓ(γ))`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{multinomial, refinements, Composition};
use crate::error::{Error, Result};
use crate::geometry::{ordered_set_partitions, GroundSet};
use crate::monoid::{class_of, delta_iterated, OrbitClassElement};
use crate::scalar::{as_string, format_rational, from_biguint, int, Rational};

/// `Σ_k c_k C(t, k)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BinomialPolynomial {
    coeffs: BTreeMap<usize, Rational>,
}

fn falling_binomial(t: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (t - int(j as i64)) / int(j as i64 + 1))
}

impl BinomialPolynomial {
    pub fn new(coeffs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut out = BinomialPolynomial::default();
        for (k, c) in coeffs {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        BinomialPolynomial::new([(0, Rational::one())])
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().map(|(&k, c)| c * falling_binomial(t, k)).sum()
    }

    /// The polynomial of degree at most `values.len() − 1` taking `values[t]`
    /// at `t = 0, 1, …`; its binomial coefficients are the forward
    /// differences at zero.
    pub fn interpolate(values: &[Rational]) -> Self {
        let mut row = values.to_vec();
        let mut coeffs = Vec::with_capacity(values.len());
        while let Some(first) = row.first() {
            coeffs.push(first.clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        BinomialPolynomial::new(coeffs.into_iter().enumerate())
    }

    pub fn mul(&self, other: &BinomialPolynomial) -> BinomialPolynomial {
        let (Some(a), Some(b)) = (self.degree(), other.degree()) else {
            return BinomialPolynomial::default();
        };
        let values: Vec<Rational> = (0..=a + b)
            .map(|t| {
                let t = int(t as i64);
                self.eval(&t) * other.eval(&t)
            })
            .collect();
        BinomialPolynomial::interpolate(&values)
    }
}

/// Monomial coefficients `[c₀, c₁, …]`, expanding each
/// `C(t, k) = t(t−1)⋯(t−k+1)/k!`.
pub fn to_monomial(p: &BinomialPolynomial) -> Vec<Rational> {
    let Some(degree) = p.degree() else {
        return Vec::new();
    };
    let mut out = vec![Rational::zero(); degree + 1];
    for (&k, c) in &p.coeffs {
        // falling factorial t(t−1)⋯(t−k+1), built one factor at a time
        let mut falling = vec![Rational::one()];
        for j in 0..k {
            let mut next = vec![Rational::zero(); falling.len() + 1];
            for (i, a) in falling.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * int(j as i64);
            }
            falling = next;
        }
        let scale = c / from_biguint(&crate::scalar::factorial(k));
        for (i, a) in falling.into_iter().enumerate() {
            out[i] += a * &scale;
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Evaluates monomial coefficients at `t`.
pub fn eval_monomial(coeffs: &[Rational], t: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

impl Serialize for BinomialPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.coeffs.iter().map(|(k, c)| (k.to_string(), format_rational(c))))
    }
}

impl<'de> Deserialize<'de> for BinomialPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = BinomialPolynomial::default();
        for (k, c) in raw {
            let k: usize = k.parse().map_err(|_| D::Error::custom(format!("bad index {k:?}")))?;
            out.add_term(k, crate::scalar::parse_rational(&c).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

/// Wire form `{"binomial": {...}, "monomial": [...]}`.
#[derive(Debug, Clone, Serialize)]
pub struct ChiReport {
    pub binomial: BinomialPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<Vec<MonomialCoeff>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct MonomialCoeff(#[serde(with = "as_string")] pub Rational);

impl ChiReport {
    pub fn new(binomial: BinomialPolynomial, with_monomial: bool) -> Self {
        let monomial = with_monomial.then(|| to_monomial(&binomial).into_iter().map(MonomialCoeff).collect());
        ChiReport { binomial, monomial }
    }
}

/// 1 on compositions with at most one part, 0 otherwise.
pub fn basic_character(alpha: &Composition) -> Rational {
    if alpha.len() <= 1 {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Closed-form invariant of `O_α` as a refinement sum.
pub fn chi(alpha: &Composition) -> BinomialPolynomial {
    let n = alpha.weight();
    BinomialPolynomial::new(
        refinements(alpha)
            .into_iter()
            .map(|gamma| (gamma.len(), from_biguint(&multinomial(n, &gamma).expect("refinement keeps weight")))),
    )
}

/// Invariant of a labeled element: product of the blockwise invariants.
pub fn chi_element(x: &OrbitClassElement) -> BinomialPolynomial {
    x.blocks().iter().fold(BinomialPolynomial::one(), |acc, b| acc.mul(&chi(&b.composition)))
}

/// The defining sum over ordered set partitions of `[|α|]`.
pub fn chi_bruteforce(alpha: &Composition, bound: usize) -> Result<BinomialPolynomial> {
    let ground = GroundSet::indexed(alpha.weight());
    chi_bruteforce_element(&class_of(alpha, &ground.label_set())?, bound)
}

/// The defining sum over ordered set partitions of the ground set of `x`,
/// applying the iterated coproduct and the basic character on every piece.
pub fn chi_bruteforce_element(x: &OrbitClassElement, bound: usize) -> Result<BinomialPolynomial> {
    let size = x.ground().len();
    if size > bound {
        return Err(Error::BruteForceBound { size, bound });
    }
    let labels: Vec<String> = x.ground().iter().cloned().collect();
    let mut counts: BTreeMap<usize, Rational> = BTreeMap::new();
    for osp in ordered_set_partitions(&labels) {
        let pieces = delta_iterated(x, &osp)?;
        let weight: Rational = pieces
            .iter()
            .map(|piece| piece.blocks().iter().map(|b| basic_character(&b.composition)).product::<Rational>())
            .product();
        *counts.entry(osp.blocks.len()).or_insert_with(Rational::zero) += weight;
    }
    // on the empty set the single empty partition contributes C(t, 0)
    Ok(BinomialPolynomial::new(counts))
}
