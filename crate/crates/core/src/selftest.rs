//! Oracle-equivalence suites runnable from the command line.
//!
//! Each suite compares a closed-form or combinatorial computation against a
//! brute-force one and counts agreeing and disagreeing cases.

use num_bigint::BigUint;
use num_traits::Pow;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::composition::{compositions_of, concat, multinomial, near_concat, splits, Composition};
use crate::geometry::{
    chamber_census, chamber_fingerprint, check_base_polytope, composition_of_point, indicator, max_face_vertices,
    normally_equivalent, orbit_vertices, GroundSet, LabelSet, Point,
};
use crate::hcomp::{antipode_sides, basis_of_degree, counit, coproduct, iterated_coproducts, product, HopfElement};
use crate::invariants::{chi, chi_bruteforce};
use crate::monoid::{class_of, count_structures, delta, egf_counts, geometric_delta};
use crate::nsym::{char_to_series, convolve, convolve_value, in_group_g, invert_character, series_inverse, series_mul, Character};
use crate::scalar::rat;

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub max_n: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, passed: 0, failed: 0 }
    }

    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport { name: self.name, passed: self.passed, failed: self.failed }
    }
}

/// Point whose runs follow `alpha`, with values spaced by `step` from
/// `offset` downward.
fn spaced_point(alpha: &Composition, offset: i64, step: i64) -> Point {
    let mut values = Vec::new();
    for (run, &len) in alpha.parts().iter().enumerate() {
        values.extend(std::iter::repeat_n(offset - step * run as i64, len));
    }
    Point::from_ints(&values)
}

fn random_point(n: usize, rng: &mut StdRng) -> Point {
    let coords = (0..n).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    Point::new(GroundSet::indexed(n), coords).unwrap()
}

fn subsets(ground: &GroundSet) -> Vec<LabelSet> {
    (0..1usize << ground.len())
        .map(|mask| (0..ground.len()).filter(|i| mask >> i & 1 == 1).map(|i| ground.labels()[i].clone()).collect())
        .collect()
}

fn splits_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("splits");
    for n in 0..=max_n.min(7) {
        let all: Vec<Vec<Composition>> = (0..=n).map(compositions_of).collect();
        for alpha in &all[n] {
            for (i, split) in splits(alpha).iter().enumerate() {
                let found: Vec<(Composition, Composition)> = all[i]
                    .iter()
                    .flat_map(|b| all[n - i].iter().map(move |g| (b.clone(), g.clone())))
                    .filter(|(b, g)| concat(b, g) == *alpha || near_concat(b, g).is_ok_and(|x| x == *alpha))
                    .collect();
                t.check(found == [split.clone()]);
            }
        }
    }
    t.finish()
}

fn vertex_count_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("vertex-count");
    for n in 0..=max_n.min(7) {
        for alpha in compositions_of(n) {
            let count = orbit_vertices(&spaced_point(&alpha, 0, 1)).len();
            t.check(BigUint::from(count) == multinomial(n, &alpha).unwrap());
        }
    }
    t.finish()
}

fn chamber_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("chamber-census");
    for n in 1..=max_n.min(5) {
        for alpha in compositions_of(n) {
            let p = spaced_point(&alpha, 5, 2);
            let Ok(census) = chamber_census(&p, usize::MAX) else {
                t.check(false);
                continue;
            };
            let stabilizer: usize = alpha.parts().iter().map(|&m| (1..=m).product::<usize>()).product();
            for v in orbit_vertices(&p) {
                t.check(census.values().filter(|w| **w == v).count() == stabilizer);
            }
        }
    }
    t.finish()
}

fn normal_equivalence_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("normal-equivalence");
    for n in 1..=max_n.min(5) {
        let comps = compositions_of(n);
        let prints: Vec<_> = comps.iter().map(|a| chamber_fingerprint(&spaced_point(a, 0, 1), usize::MAX).unwrap()).collect();
        for (i, a) in comps.iter().enumerate() {
            for (j, b) in comps.iter().enumerate() {
                let claimed = normally_equivalent(&spaced_point(a, 0, 1), &spaced_point(b, 10, 3)).unwrap();
                t.check(claimed == (prints[i] == prints[j]));
            }
        }
    }
    t.finish()
}

fn max_face_suite(max_n: usize, rng: &mut StdRng) -> SuiteReport {
    let mut t = Tally::new("max-face");
    if max_n == 0 {
        return t.finish();
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=max_n.min(6));
        let p = random_point(n, rng);
        let y = random_point(n, rng);
        let vertices = orbit_vertices(&p);
        let best = vertices.iter().map(|v| v.dot(&y).unwrap()).max().unwrap();
        let mut naive: Vec<Point> = vertices.into_iter().filter(|v| v.dot(&y).unwrap() == best).collect();
        naive.sort();
        t.check(max_face_vertices(&p, &y).unwrap() == naive);
    }
    t.finish()
}

fn base_polytope_suite(max_n: usize, rng: &mut StdRng) -> SuiteReport {
    let mut t = Tally::new("base-polytope");
    if max_n == 0 {
        return t.finish();
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=max_n.min(6));
        let p = random_point(n, rng);
        t.check(check_base_polytope(&p, usize::MAX).unwrap_or(false));
    }
    t.finish()
}

fn geometric_coproduct_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("geometric-coproduct");
    for n in 0..=max_n.min(6) {
        let ground = GroundSet::indexed(n);
        let all = subsets(&ground);
        for alpha in compositions_of(n) {
            let x = class_of(&alpha, &ground.label_set()).unwrap();
            for s in &all {
                let face_prod = {
                    let (a, b) = crate::geometry::face_decomposition(&spaced_point(&alpha, 0, 1), s).unwrap();
                    // the face really is where the indicator of S is maximal
                    let face = max_face_vertices(&spaced_point(&alpha, 0, 1), &indicator(&ground, s)).unwrap();
                    face.len() == orbit_vertices(&a).len() * orbit_vertices(&b).len()
                };
                t.check(face_prod && geometric_delta(&alpha, &ground, s).unwrap() == delta(&x, s).unwrap());
            }
        }
    }
    t.finish()
}

fn hopf_axiom_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("hopf-axioms");
    let top = max_n.min(6);
    for d in 0..=top {
        for m in basis_of_degree(d) {
            let x = HopfElement::basis(m);
            let (left, right) = iterated_coproducts(&x);
            t.check(left == right);
            let delta = coproduct(&x);
            let counit_left = delta.map(|a| HopfElement::unit().scale(&counit(&HopfElement::basis(a.clone()))), |b| HopfElement::basis(b.clone()));
            let counit_right = delta.map(|a| HopfElement::basis(a.clone()), |b| HopfElement::unit().scale(&counit(&HopfElement::basis(b.clone()))));
            t.check(counit_left.multiply() == x && counit_right.multiply() == x);
            let expected = HopfElement::unit().scale(&counit(&x));
            let (s_left, s_right) = antipode_sides(&x);
            t.check(s_left == expected && s_right == expected);
        }
    }
    for d1 in 0..=top {
        for d2 in 0..=top.saturating_sub(d1).min(d1) {
            for a in basis_of_degree(d1) {
                for b in basis_of_degree(d2) {
                    let x = HopfElement::basis(a.clone());
                    let y = HopfElement::basis(b);
                    t.check(coproduct(&product(&x, &y)) == coproduct(&x).product(&coproduct(&y)));
                }
            }
        }
    }
    t.finish()
}

fn character_suite(max_n: usize, rng: &mut StdRng) -> SuiteReport {
    let mut t = Tally::new("character-isomorphism");
    let degree = max_n.min(6);
    for _ in 0..50 {
        let zeta = Character::random(degree, rng);
        let psi = Character::random(degree, rng);
        let f = char_to_series(&zeta, degree).unwrap();
        let g = char_to_series(&psi, degree).unwrap();
        let conv = convolve(&zeta, &psi);
        t.check(char_to_series(&conv, degree).unwrap() == series_mul(&f, &g).unwrap());
        t.check(in_group_g(&f) && in_group_g(&series_mul(&f, &g).unwrap()));
        let a1 = convolve_value(&zeta, &psi, &Composition::ones(1));
        t.check((2..=degree).all(|n| convolve_value(&zeta, &psi, &Composition::single(n)) == Pow::pow(&a1, n as u32)));
        let inv = series_inverse(&f).unwrap();
        t.check(char_to_series(&invert_character(&zeta), degree).unwrap() == inv && in_group_g(&inv));
    }
    t.finish()
}

fn chi_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("polynomial-invariant");
    for n in 0..=max_n.min(6) {
        for alpha in compositions_of(n) {
            t.check(chi_bruteforce(&alpha, usize::MAX).map(|b| b == chi(&alpha)).unwrap_or(false));
        }
    }
    t.finish()
}

fn species_suite(max_n: usize) -> SuiteReport {
    let mut t = Tally::new("species-counts");
    let top = max_n.min(8);
    for (n, value) in egf_counts(top).into_iter().enumerate() {
        t.check(value == count_structures(n));
    }
    t.finish()
}

fn classification_suite(rng: &mut StdRng) -> SuiteReport {
    let mut t = Tally::new("classification-invariance");
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let p = random_point(n, rng);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        t.check(composition_of_point(&p) == composition_of_point(&p.permuted(&perm)));
    }
    t.finish()
}

/// Runs every suite with sizes capped at `max_n`.
pub fn run(max_n: usize) -> SelftestReport {
    let mut rng = StdRng::seed_from_u64(SEED);
    let suites = vec![
        splits_suite(max_n),
        vertex_count_suite(max_n),
        classification_suite(&mut rng),
        chamber_suite(max_n),
        normal_equivalence_suite(max_n),
        max_face_suite(max_n, &mut rng),
        base_polytope_suite(max_n, &mut rng),
        geometric_coproduct_suite(max_n),
        hopf_axiom_suite(max_n),
        character_suite(max_n, &mut rng),
        chi_suite(max_n),
        species_suite(max_n),
    ];
    let passed = suites.iter().map(|s| s.passed).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    SelftestReport { max_n, suites, passed, failed }
}
