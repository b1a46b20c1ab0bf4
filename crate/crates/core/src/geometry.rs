//! Orbit polytopes over exact rational points.
//!
//! The orbit polytope of `p ∈ ℝ^I` is the convex hull of every coordinate
//! permutation of `p`. Faces are represented by their vertex sets. Linear
//! functionals are coordinate vectors over the same ground set, so a
//! functional is just another [`Point`].

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

pub type LabelSet = BTreeSet<String>;

/// A total order on the ground set, listed from first to last.
pub type Chamber = Vec<String>;

/// Finite ground set with a fixed linear order. The order picks the
/// fundamental chamber: `x_{l₁} ≥ x_{l₂} ≥ …` for labels `l₁ ≺ l₂ ≺ …`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Labels `"1"`, `"2"`, …, `"n"`.
    pub fn indexed(n: usize) -> Self {
        GroundSet { labels: (1..=n).map(|i| i.to_string()).collect() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label_set(&self) -> LabelSet {
        self.labels.iter().cloned().collect()
    }

    /// The labels of `subset` in ground order.
    pub fn restrict(&self, subset: &LabelSet) -> Result<GroundSet> {
        if let Some(stray) = subset.iter().find(|l| self.position(l).is_none()) {
            return Err(Error::UnknownLabel(stray.clone()));
        }
        Ok(GroundSet {
            labels: self.labels.iter().filter(|l| subset.contains(*l)).cloned().collect(),
        })
    }

    fn mask(&self, subset: &LabelSet) -> Result<usize> {
        subset.iter().try_fold(0usize, |mask, label| {
            let pos = self.position(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
            Ok(mask | (1 << pos))
        })
    }
}

impl<'de> Deserialize<'de> for GroundSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GroundSet::new(Vec::<String>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A point of `ℝ^I` with rational coordinates, stored in ground order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    ground: GroundSet,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(ground: GroundSet, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != ground.len() {
            return Err(Error::WeightMismatch { expected: ground.len(), found: coords.len() });
        }
        Ok(Point { ground, coords })
    }

    /// Point on [`GroundSet::indexed`] with integer coordinates.
    pub fn from_ints(values: &[i64]) -> Self {
        Point {
            ground: GroundSet::indexed(values.len()),
            coords: values.iter().map(|&v| crate::scalar::int(v)).collect(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, label: &str) -> Option<&Rational> {
        self.ground.position(label).map(|i| &self.coords[i])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    fn with_coords(&self, coords: Vec<Rational>) -> Point {
        Point { ground: self.ground.clone(), coords }
    }

    /// Coordinates sorted in decreasing order.
    pub fn sorted_desc(&self) -> Vec<Rational> {
        let mut sorted = self.coords.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        sorted
    }

    /// Applies a permutation of positions: coordinate `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Point {
        let mut coords = self.coords.clone();
        for (i, &j) in perm.iter().enumerate() {
            coords[j] = self.coords[i].clone();
        }
        self.with_coords(coords)
    }

    pub fn dot(&self, other: &Point) -> Result<Rational> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        Ok(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coords.len()))?;
        for (label, value) in self.ground.labels.iter().zip(&self.coords) {
            map.serialize_entry(label, &format_rational(value))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let map = serde_json::Map::<String, serde_json::Value>::deserialize(d)?;
        let mut labels = Vec::with_capacity(map.len());
        let mut coords = Vec::with_capacity(map.len());
        for (label, value) in map {
            let value = match value {
                serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom)?,
                serde_json::Value::Number(n) if n.is_i64() => crate::scalar::int(n.as_i64().unwrap()),
                other => {
                    return Err(D::Error::custom(format!(
                        "coordinate for {label:?} must be a rational string, got {other}"
                    )))
                }
            };
            labels.push(label);
            coords.push(value);
        }
        Point::new(GroundSet::new(labels).map_err(D::Error::custom)?, coords).map_err(D::Error::custom)
    }
}

/// Blocks `S₁ ⊔ … ⊔ S_k` of an ordered set partition, i.e. a face of the
/// braid fan.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedSetPartition {
    pub blocks: Vec<LabelSet>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<LabelSet>) -> Self {
        OrderedSetPartition { blocks }
    }

    /// Checks that the blocks are disjoint and cover `ground`. Empty blocks
    /// are rejected unless `allow_empty` is set.
    pub fn validate(&self, ground: &LabelSet, allow_empty: bool) -> Result<()> {
        let mut seen = LabelSet::new();
        for block in &self.blocks {
            if block.is_empty() && !allow_empty {
                return Err(Error::NotAPartition);
            }
            for label in block {
                if !seen.insert(label.clone()) {
                    return Err(Error::NotAPartition);
                }
            }
        }
        if &seen != ground {
            return Err(Error::NotAPartition);
        }
        Ok(())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(LabelSet::len).collect()
    }
}

/// A set function on the subsets of a ground set, tabulated by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodularOracle {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl SubmodularOracle {
    pub fn from_fn(ground: GroundSet, f: impl Fn(usize) -> Rational) -> Self {
        let values = (0..1usize << ground.len()).map(f).collect();
        SubmodularOracle { ground, values }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn value(&self, subset: &LabelSet) -> Result<Rational> {
        Ok(self.values[self.ground.mask(subset)?].clone())
    }

    /// Value on the subset whose bit `i` marks the `i`-th label.
    pub fn value_mask(&self, mask: usize) -> &Rational {
        &self.values[mask]
    }

    /// `z(S∩T) + z(S∪T) ≤ z(S) + z(T)` for all pairs, and `z(∅) = 0`.
    pub fn is_submodular(&self) -> bool {
        let full = self.values.len();
        self.values[0].is_zero()
            && (0..full).all(|s| {
                (0..full).all(|t| &self.values[s & t] + &self.values[s | t] <= &self.values[s] + &self.values[t])
            })
    }

    /// Whether `z(S) = z(T)` whenever `|S| = |T|`.
    pub fn is_symmetric(&self) -> bool {
        let mut by_size: BTreeMap<u32, &Rational> = BTreeMap::new();
        self.values.iter().enumerate().all(|(mask, v)| {
            let size = (mask as u64).count_ones();
            *by_size.entry(size).or_insert(v) == v
        })
    }
}

/// Lexicographic successor; false when `items` is the last arrangement.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let Some(i) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = items.iter().rposition(|x| *x > items[i]).unwrap();
    items.swap(i, j);
    items[i + 1..].reverse();
    true
}

/// Distinct arrangements of a multiset in lexicographic order.
pub(crate) fn distinct_arrangements<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut current = items.to_vec();
    current.sort();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn check_bound(size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BruteForceBound { size, bound });
    }
    Ok(())
}

/// Run lengths of the coordinate multiset sorted in decreasing order.
pub fn composition_of_point(p: &Point) -> Composition {
    let sorted = p.sorted_desc();
    let mut parts: Vec<usize> = Vec::new();
    for (i, v) in sorted.iter().enumerate() {
        if i > 0 && sorted[i - 1] == *v {
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    }
    Composition::new(parts).expect("run lengths are positive")
}

/// All distinct coordinate permutations of `p`, lexicographically by
/// coordinates.
pub fn orbit_vertices(p: &Point) -> Vec<Point> {
    distinct_arrangements(&p.coords).into_iter().map(|c| p.with_coords(c)).collect()
}

/// Level sets of `y`, from the largest value down.
pub fn level_sets(y: &Point) -> OrderedSetPartition {
    let mut levels: BTreeMap<&Rational, LabelSet> = BTreeMap::new();
    for (label, value) in y.ground.labels.iter().zip(&y.coords) {
        levels.entry(value).or_default().insert(label.clone());
    }
    OrderedSetPartition::new(levels.into_values().rev().collect())
}

/// Vertices of `O(p)` on which the functional `y` is maximal.
///
/// By the rearrangement inequality the maximizers put the largest
/// coordinates of `p` on the top level set of `y`, the next ones on the next
/// level set, and so on, in every arrangement within each level set.
pub fn max_face_vertices(p: &Point, y: &Point) -> Result<Vec<Point>> {
    if p.ground != y.ground {
        return Err(Error::GroundMismatch);
    }
    let sorted = p.sorted_desc();
    let mut faces = vec![vec![Rational::zero(); p.dim()]];
    let mut start = 0;
    for block in level_sets(y).blocks {
        let positions: Vec<usize> = block.iter().map(|l| p.ground.position(l).unwrap()).collect();
        let chunk = &sorted[start..start + positions.len()];
        start += positions.len();
        let arrangements = distinct_arrangements(chunk);
        let positions = &positions;
        faces = faces
            .into_iter()
            .flat_map(|partial| {
                arrangements.iter().map(move |arr| {
                    let mut coords = partial.clone();
                    for (&pos, v) in positions.iter().zip(arr) {
                        coords[pos] = v.clone();
                    }
                    coords
                })
            })
            .collect();
    }
    let mut out: Vec<Point> = faces.into_iter().map(|c| p.with_coords(c)).collect();
    out.sort();
    Ok(out)
}

/// `z(S) = p₁ + … + p_{|S|}` with `p₁ ≥ p₂ ≥ …` the sorted coordinates.
pub fn submodular_of_orbit(p: &Point) -> SubmodularOracle {
    let prefix: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(p.sorted_desc().into_iter().scan(Rational::zero(), |acc, v| {
            *acc += v;
            Some(acc.clone())
        }))
        .collect();
    SubmodularOracle::from_fn(p.ground.clone(), |mask| prefix[mask.count_ones() as usize].clone())
}

/// Brute-force check that `O(p)` is the base polytope of
/// [`submodular_of_orbit`]: every vertex lies on `Σx = z(I)` and under every
/// `Σ_S x ≤ z(S)`, and each of those inequalities is attained.
pub fn check_base_polytope(p: &Point, bound: usize) -> Result<bool> {
    check_bound(p.dim(), bound)?;
    let z = submodular_of_orbit(p);
    let vertices = orbit_vertices(p);
    let full = (1usize << p.dim()) - 1;
    for mask in 0..=full {
        let bound_value = z.value_mask(mask);
        let mut tight = false;
        for v in &vertices {
            let sum: Rational = (0..p.dim()).filter(|i| mask >> i & 1 == 1).map(|i| &v.coords[i]).sum();
            if mask == full && sum != *bound_value {
                return Ok(false);
            }
            if sum > *bound_value {
                return Ok(false);
            }
            tight |= sum == *bound_value;
        }
        if !tight {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each total order of the ground set, the vertex of `O(p)` whose
/// coordinates weakly decrease along it.
///
/// Built vertex by vertex: a vertex lies in every chamber that lists its
/// level sets from the largest value down, in any order within each level
/// set. A chamber claimed twice, or one left unclaimed, is reported as an
/// inconsistency.
pub fn chamber_census(p: &Point, bound: usize) -> Result<BTreeMap<Chamber, Point>> {
    check_bound(p.dim(), bound)?;
    let mut census = BTreeMap::new();
    for vertex in orbit_vertices(p) {
        let mut chambers: Vec<Chamber> = vec![Vec::new()];
        for block in level_sets(&vertex).blocks {
            let labels: Vec<String> = block.into_iter().collect();
            let orders = distinct_arrangements(&labels);
            chambers = chambers
                .into_iter()
                .flat_map(|prefix| {
                    orders.iter().map(move |o| {
                        let mut c = prefix.clone();
                        c.extend(o.iter().cloned());
                        c
                    })
                })
                .collect();
        }
        for chamber in chambers {
            if census.insert(chamber, vertex.clone()).is_some() {
                return Err(Error::Schema("two vertices share a chamber".into()));
            }
        }
    }
    let expected: usize = (1..=p.dim()).product();
    if census.len() != expected {
        return Err(Error::Schema("chamber census is not total".into()));
    }
    Ok(census)
}

/// The normal fan of `O(p)` as a partition of the chambers: each vertex
/// contributes the set of chambers making up its normal cone. Vertex
/// coordinates are forgotten, so polytopes with equal fingerprints are
/// normally equivalent.
pub fn chamber_fingerprint(p: &Point, bound: usize) -> Result<BTreeSet<BTreeSet<Vec<usize>>>> {
    let mut cones: BTreeMap<Point, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for (chamber, vertex) in chamber_census(p, bound)? {
        let positions = chamber.iter().map(|l| p.ground.position(l).unwrap()).collect();
        cones.entry(vertex).or_default().insert(positions);
    }
    Ok(cones.into_values().collect())
}

/// Orbit polytopes are normally equivalent exactly when their points have
/// the same composition.
pub fn normally_equivalent(p: &Point, q: &Point) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::WeightMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(composition_of_point(p) == composition_of_point(q))
}

/// Splits `O(p)` along `S`: the face maximizing the indicator of `S` is
/// `O(q) × O(q′)` where `q ∈ ℝ^S` takes the `|S|` largest coordinates of `p`
/// and `q′ ∈ ℝ^{I∖S}` the rest, each placed in decreasing order along the
/// ground order.
pub fn face_decomposition(p: &Point, subset: &LabelSet) -> Result<(Point, Point)> {
    let inside = p.ground.restrict(subset)?;
    let outside = p.ground.restrict(&p.ground.label_set().difference(subset).cloned().collect())?;
    let mut sorted = p.sorted_desc();
    let rest = sorted.split_off(inside.len());
    Ok((Point::new(inside, sorted)?, Point::new(outside, rest)?))
}

/// Indicator functional of `S`.
pub fn indicator(ground: &GroundSet, subset: &LabelSet) -> Point {
    let coords = ground
        .labels
        .iter()
        .map(|l| if subset.contains(l) { crate::scalar::int(1) } else { Rational::zero() })
        .collect();
    Point { ground: ground.clone(), coords }
}

/// All ordered set partitions of `labels` into nonempty blocks.
pub fn ordered_set_partitions(labels: &[String]) -> Vec<OrderedSetPartition> {
    fn set_partitions(labels: &[String]) -> Vec<Vec<LabelSet>> {
        let Some((first, rest)) = labels.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        for partition in set_partitions(rest) {
            for i in 0..partition.len() {
                let mut grown = partition.clone();
                grown[i].insert(first.clone());
                out.push(grown);
            }
            let mut grown = partition;
            grown.push(LabelSet::from([first.clone()]));
            out.push(grown);
        }
        out
    }
    let mut out = Vec::new();
    for partition in set_partitions(labels) {
        let indices: Vec<usize> = (0..partition.len()).collect();
        for order in distinct_arrangements(&indices) {
            out.push(OrderedSetPartition::new(order.iter().map(|&i| partition[i].clone()).collect()));
        }
    }
    out
}
