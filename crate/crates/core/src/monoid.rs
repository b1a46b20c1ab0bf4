//! The Hopf monoid of normal equivalence classes of orbit polytopes.
//!
//! An element over a label set `I` is a product `O_{α₁,S₁} ⋯ O_{α_k,S_k}` of
//! classes on the blocks of a set partition of `I`. Elements are kept in a
//! canonical form where every block carries a generator: `(1)` on a singleton
//! or a composition with at least two parts. A point class `O_{(n)}` is a
//! product of `n` one-point classes, so it is stored as `n` singleton blocks.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::composition::{restrict_contract, Composition};
use crate::error::{Error, Result};
use crate::geometry::{composition_of_point, face_decomposition, GroundSet, LabelSet, OrderedSetPartition, Point};
use crate::scalar::{binomial, factorial, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Block {
    pub labels: LabelSet,
    pub composition: Composition,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrbitClassElement {
    ground: LabelSet,
    blocks: BTreeSet<Block>,
}

impl OrbitClassElement {
    /// The class on the empty ground set.
    pub fn unit() -> Self {
        OrbitClassElement { ground: LabelSet::new(), blocks: BTreeSet::new() }
    }

    /// Validates blocks and brings them to canonical form.
    pub fn from_blocks(ground: LabelSet, blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let mut seen = LabelSet::new();
        let mut canonical = BTreeSet::new();
        for block in blocks {
            if block.labels.is_empty() {
                return Err(Error::NotAPartition);
            }
            for label in &block.labels {
                if !ground.contains(label) {
                    return Err(Error::UnknownLabel(label.clone()));
                }
                if !seen.insert(label.clone()) {
                    return Err(Error::NotAPartition);
                }
            }
            canonical.extend(class_of(&block.composition, &block.labels)?.blocks);
        }
        if seen != ground {
            return Err(Error::NotAPartition);
        }
        Ok(OrbitClassElement { ground, blocks: canonical })
    }

    pub fn ground(&self) -> &LabelSet {
        &self.ground
    }

    pub fn blocks(&self) -> &BTreeSet<Block> {
        &self.blocks
    }

    /// The generator compositions of the blocks, sorted.
    pub fn generators(&self) -> Vec<Composition> {
        let mut out: Vec<Composition> = self.blocks.iter().map(|b| b.composition.clone()).collect();
        out.sort();
        out
    }

    /// Whether the class is a point: every block is a one-point class.
    pub fn is_point(&self) -> bool {
        self.blocks.iter().all(|b| b.composition.len() == 1)
    }
}

impl<'de> Deserialize<'de> for OrbitClassElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ground: Vec<String>,
            blocks: Vec<Block>,
        }
        let raw = Raw::deserialize(d)?;
        let ground: LabelSet = raw.ground.iter().cloned().collect();
        if ground.len() != raw.ground.len() {
            return Err(serde::de::Error::custom("duplicate ground label"));
        }
        OrbitClassElement::from_blocks(ground, raw.blocks).map_err(serde::de::Error::custom)
    }
}

/// The class `O_{α,I}` in canonical form.
pub fn class_of(alpha: &Composition, ground: &LabelSet) -> Result<OrbitClassElement> {
    if alpha.weight() != ground.len() {
        return Err(Error::WeightMismatch { expected: ground.len(), found: alpha.weight() });
    }
    let blocks = if alpha.is_generator() {
        BTreeSet::from([Block { labels: ground.clone(), composition: alpha.clone() }])
    } else {
        ground
            .iter()
            .map(|l| Block { labels: LabelSet::from([l.clone()]), composition: Composition::ones(1) })
            .collect()
    };
    Ok(OrbitClassElement { ground: ground.clone(), blocks })
}

/// Transports `x` along a bijection from `x.ground` onto a new label set.
pub fn relabel(x: &OrbitClassElement, sigma: &BTreeMap<String, String>) -> Result<OrbitClassElement> {
    let domain: LabelSet = sigma.keys().cloned().collect();
    let image: LabelSet = sigma.values().cloned().collect();
    if domain != x.ground || image.len() != domain.len() {
        return Err(Error::NotABijection);
    }
    let blocks = x
        .blocks
        .iter()
        .map(|b| Block {
            labels: b.labels.iter().map(|l| sigma[l].clone()).collect(),
            composition: b.composition.clone(),
        })
        .collect();
    Ok(OrbitClassElement { ground: image, blocks })
}

/// Product over disjoint ground sets: the union of the blocks.
pub fn mu(x: &OrbitClassElement, y: &OrbitClassElement) -> Result<OrbitClassElement> {
    if let Some(shared) = x.ground.intersection(&y.ground).next() {
        return Err(Error::OverlappingGrounds(shared.clone()));
    }
    Ok(OrbitClassElement {
        ground: x.ground.union(&y.ground).cloned().collect(),
        blocks: x.blocks.union(&y.blocks).cloned().collect(),
    })
}

/// Coproduct `Δ_{S,T}` with `T = I ∖ S`.
///
/// Each block `B` with composition `α` restricts to `α|` on `S ∩ B` and
/// contracts to `α/` on `B ∖ S`, where `(α|, α/)` is the restriction and
/// contraction of `α` at `|S ∩ B|`; the pieces multiply on each side.
pub fn delta(x: &OrbitClassElement, subset: &LabelSet) -> Result<(OrbitClassElement, OrbitClassElement)> {
    if let Some(stray) = subset.iter().find(|l| !x.ground.contains(*l)) {
        return Err(Error::UnknownLabel(stray.clone()));
    }
    let mut left = OrbitClassElement::unit();
    let mut right = OrbitClassElement::unit();
    for block in &x.blocks {
        let inside: LabelSet = block.labels.intersection(subset).cloned().collect();
        let outside: LabelSet = block.labels.difference(subset).cloned().collect();
        let (restricted, contracted) = restrict_contract(&block.composition, inside.len())?;
        left = mu(&left, &class_of(&restricted, &inside)?)?;
        right = mu(&right, &class_of(&contracted, &outside)?)?;
    }
    Ok((left, right))
}

/// Iterated coproduct `Δ_{S₁,…,S_k}`; empty parts yield units.
pub fn delta_iterated(x: &OrbitClassElement, parts: &OrderedSetPartition) -> Result<Vec<OrbitClassElement>> {
    parts.validate(&x.ground, true)?;
    let mut rest = x.clone();
    let mut out = Vec::with_capacity(parts.blocks.len());
    for part in &parts.blocks {
        let (head, tail) = delta(&rest, part)?;
        out.push(head);
        rest = tail;
    }
    Ok(out)
}

/// Number of generator classes on an `m`-element set: one for `m = 1`,
/// otherwise the `2^{m−1} − 1` compositions with at least two parts.
fn generator_count(m: usize) -> BigUint {
    match m {
        0 => BigUint::zero(),
        1 => BigUint::one(),
        _ => (BigUint::one() << (m - 1)) - BigUint::one(),
    }
}

/// `|OPbar[[n]]|`: the sum over set partitions of `[n]` of the product of
/// generator counts of the blocks. Evaluated by fixing the block containing
/// the first element.
pub fn count_structures(n: usize) -> BigUint {
    let mut counts = vec![BigUint::one()];
    for m in 1..=n {
        let total = (1..=m)
            .map(|k| binomial(m - 1, k - 1) * generator_count(k) * &counts[m - k])
            .fold(BigUint::zero(), |acc, t| acc + t);
        counts.push(total);
    }
    counts.swap_remove(n)
}

/// `k!·[t^k] exp(½e^{2t} − e^t + t + ½)` for `k = 0..=n`, by truncated
/// power-series exponentiation over the rationals.
pub fn egf_counts(n: usize) -> Vec<BigUint> {
    // inner series: ½·2^k/k! − 1/k! plus t and ½
    let inner: Vec<Rational> = (0..=n)
        .map(|k| {
            let kf = crate::scalar::from_biguint(&factorial(k));
            let mut c = crate::scalar::from_biguint(&(BigUint::one() << k)) / (int(2) * &kf) - int(1) / &kf;
            if k == 0 {
                c += rat(1, 2);
            }
            if k == 1 {
                c += int(1);
            }
            c
        })
        .collect();
    assert!(inner[0].is_zero());
    // e' = inner' · e  =>  k·e_k = Σ_{j=1..k} j·inner_j·e_{k−j}
    let mut outer = vec![int(1)];
    for k in 1..=n {
        let s: Rational = (1..=k).map(|j| int(j as i64) * &inner[j] * &outer[k - j]).sum();
        outer.push(s / int(k as i64));
    }
    outer
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let scaled = e * crate::scalar::from_biguint(&factorial(k));
            assert!(scaled.is_integer());
            scaled.to_integer().to_biguint().expect("counts are nonnegative")
        })
        .collect()
}

/// A point in the class `O_α` over `ground`, listed in ground order: run `j`
/// of `α` takes the value `n − 1 − j`.
pub fn representative_point(alpha: &Composition, ground: &GroundSet) -> Result<Point> {
    let n = ground.len();
    if alpha.weight() != n {
        return Err(Error::WeightMismatch { expected: n, found: alpha.weight() });
    }
    let coords = alpha
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(run, &len)| std::iter::repeat_n(int(n as i64 - 1 - run as i64), len))
        .collect();
    Point::new(ground.clone(), coords)
}

/// Coproduct computed geometrically: split a point of class `α` along `S`
/// and classify both factors of the resulting face.
pub fn geometric_delta(
    alpha: &Composition,
    ground: &GroundSet,
    subset: &LabelSet,
) -> Result<(OrbitClassElement, OrbitClassElement)> {
    let p = representative_point(alpha, ground)?;
    let (q, q_rest) = face_decomposition(&p, subset)?;
    let left = class_of(&composition_of_point(&q), &q.ground().label_set())?;
    let right = class_of(&composition_of_point(&q_rest), &q_rest.ground().label_set())?;
    Ok((left, right))
}
