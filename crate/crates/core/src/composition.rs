//! Integer compositions and the ways they split and glue.
//!
//! A composition `α = (α₁,…,α_k)` is read as the multiplicity pattern of a
//! coordinate multiset sorted in decreasing order: `α₁` copies of the largest
//! value, `α₂` of the next, and so on. Cutting that sorted sequence after `i`
//! entries gives the restriction and contraction of `α` at `i`; the two halves
//! glue back by concatenation when the cut falls between runs and by
//! near-concatenation when it falls inside one.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::scalar::factorial;

#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// The one-part composition `(n)`; empty when `n == 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Composition::empty()
        } else {
            Composition(vec![n])
        }
    }

    /// `(1,1,…,1)` with `n` parts.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators of the free commutative structure: `(1)` and every
    /// composition with at least two parts.
    pub fn is_generator(&self) -> bool {
        self.0.len() >= 2 || self.0 == [1]
    }

    /// Run label of each position in the expanded sorted sequence, e.g.
    /// `(2,1,3)` expands to `[0,0,1,2,2,2]`.
    fn expand(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(run, &len)| std::iter::repeat_n(run, len))
            .collect()
    }

    fn from_runs(labels: &[usize]) -> Self {
        let mut parts: Vec<usize> = Vec::new();
        let mut last = None;
        for &label in labels {
            if last == Some(label) {
                *parts.last_mut().unwrap() += 1;
            } else {
                parts.push(1);
                last = Some(label);
            }
        }
        Composition(parts)
    }

    /// Partial sums `α₁, α₁+α₂, …` (the descent set read as positions).
    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Whether `self` is obtained from `coarser` by splitting parts.
    pub fn refines(&self, coarser: &Composition) -> bool {
        if self.weight() != coarser.weight() {
            return false;
        }
        let fine = self.partial_sums();
        coarser.partial_sums().iter().all(|s| fine.binary_search(s).is_ok())
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// How two consecutive pieces are glued back together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Join {
    Concat,
    NearConcat,
}

pub fn concat(left: &Composition, right: &Composition) -> Composition {
    let mut parts = left.0.clone();
    parts.extend_from_slice(&right.0);
    Composition(parts)
}

pub fn near_concat(left: &Composition, right: &Composition) -> Result<Composition> {
    let (Some((&last, init)), Some((&first, tail))) = (left.0.split_last(), right.0.split_first())
    else {
        return Err(Error::EmptyNearConcat);
    };
    let mut parts = init.to_vec();
    parts.push(last + first);
    parts.extend_from_slice(tail);
    Ok(Composition(parts))
}

fn join(left: &Composition, right: &Composition, how: Join) -> Result<Composition> {
    match how {
        Join::Concat => Ok(concat(left, right)),
        Join::NearConcat => near_concat(left, right),
    }
}

/// Restriction and contraction at `i`: the compositions of the `i` largest
/// and the `|α| − i` smallest entries of the expanded sequence.
pub fn restrict_contract(alpha: &Composition, i: usize) -> Result<(Composition, Composition)> {
    let weight = alpha.weight();
    if i > weight {
        return Err(Error::IndexOutOfRange { index: i, weight });
    }
    let runs = alpha.expand();
    Ok((Composition::from_runs(&runs[..i]), Composition::from_runs(&runs[i..])))
}

/// Every `(β, γ)` with `β·γ = α` or `β⊙γ = α`, indexed by `|β| = 0..=|α|`.
pub fn splits(alpha: &Composition) -> Vec<(Composition, Composition)> {
    let runs = alpha.expand();
    (0..=runs.len())
        .map(|i| (Composition::from_runs(&runs[..i]), Composition::from_runs(&runs[i..])))
        .collect()
}

/// The join that reassembles `splits(α)[i]` into `α`.
pub fn split_join(alpha: &Composition, i: usize) -> Join {
    let runs = alpha.expand();
    if i > 0 && i < runs.len() && runs[i - 1] == runs[i] {
        Join::NearConcat
    } else {
        Join::Concat
    }
}

/// Cuts `α` into consecutive pieces of the given sizes.
pub fn iterated_restrict(alpha: &Composition, sizes: &[usize]) -> Result<Vec<Composition>> {
    Ok(iterated_restrict_with_joins(alpha, sizes)?.0)
}

/// Like [`iterated_restrict`], also returning the join placed before each
/// piece after the first. A join is `NearConcat` exactly when the cut falls
/// inside a run and both sides of it are nonempty.
pub fn iterated_restrict_with_joins(
    alpha: &Composition,
    sizes: &[usize],
) -> Result<(Vec<Composition>, Vec<Join>)> {
    let total: usize = sizes.iter().sum();
    if total != alpha.weight() {
        return Err(Error::WeightMismatch { expected: alpha.weight(), found: total });
    }
    let runs = alpha.expand();
    let mut pieces = Vec::with_capacity(sizes.len());
    let mut joins = Vec::with_capacity(sizes.len().saturating_sub(1));
    let mut start = 0;
    for (k, &size) in sizes.iter().enumerate() {
        if k > 0 {
            let inside_run = size > 0 && start > 0 && runs[start - 1] == runs[start];
            joins.push(if inside_run { Join::NearConcat } else { Join::Concat });
        }
        pieces.push(Composition::from_runs(&runs[start..start + size]));
        start += size;
    }
    Ok((pieces, joins))
}

/// Left fold of `pieces` under `joins`; empty pieces always concatenate.
pub fn reassemble(pieces: &[Composition], joins: &[Join]) -> Result<Composition> {
    if pieces.is_empty() {
        return Ok(Composition::empty());
    }
    if joins.len() + 1 != pieces.len() {
        return Err(Error::Schema("need exactly one join between consecutive pieces".into()));
    }
    let mut acc = pieces[0].clone();
    for (piece, &how) in pieces[1..].iter().zip(joins) {
        acc = if acc.is_empty() || piece.is_empty() {
            concat(&acc, piece)
        } else {
            join(&acc, piece, how)?
        };
    }
    Ok(acc)
}

/// All compositions of `n` in lexicographic order of their parts.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            go(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << n.saturating_sub(1));
    go(n, &mut Vec::new(), &mut out);
    out
}

/// All compositions refining `α`, sorted.
pub fn refinements(alpha: &Composition) -> Vec<Composition> {
    let mut out = vec![Composition::empty()];
    for &part in &alpha.0 {
        let pieces = compositions_of(part);
        out = out
            .iter()
            .flat_map(|prefix| pieces.iter().map(move |piece| concat(prefix, piece)))
            .collect();
    }
    out.sort();
    out
}

/// `n! / (γ₁! ⋯ γ_k!)`.
pub fn multinomial(n: usize, gamma: &Composition) -> Result<BigUint> {
    if gamma.weight() != n {
        return Err(Error::WeightMismatch { expected: n, found: gamma.weight() });
    }
    Ok(gamma.0.iter().fold(factorial(n), |acc, &p| acc / factorial(p)))
}
