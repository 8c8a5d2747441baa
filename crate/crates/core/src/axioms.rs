//! Seeded randomized property suite for the closure axioms, the interior
//! calculus and the i-cover basis axioms.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::{compose_covers, intersect_covers, is_i_cover, is_interior_cover, refines, restrict_cover, Cover};
use crate::lattice::{build_lattice, Lattice};
use crate::pointset::PointSet;
use crate::space::{FiniteClosureSpace, Metric};

/// A subset where each point is kept with probability `p`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> PointSet {
    PointSet::from_bools(&(0..n).map(|_| rng.gen_bool(p)).collect::<Vec<_>>())
}

/// Random reflexive relation, graph, or planar point cloud on `1..=max_n` points.
pub fn random_space<R: Rng>(rng: &mut R, max_n: usize) -> FiniteClosureSpace {
    let n = rng.gen_range(1..=max_n);
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0.05..0.5);
            let rel: Vec<Vec<bool>> = (0..n).map(|y| (0..n).map(|x| x == y || rng.gen_bool(p)).collect()).collect();
            FiniteClosureSpace::from_relation(n, &rel).expect("reflexive by construction")
        }
        1 => {
            let p = rng.gen_range(0.05..0.6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            FiniteClosureSpace::from_graph(n, &edges).expect("indices in range")
        }
        _ => {
            let pts: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect();
            let r = rng.gen_range(0.0..0.6);
            FiniteClosureSpace::from_metric(&pts, Metric::Euclidean, r).expect("valid points")
        }
    }
}

/// A random i-cover of `base`: one member around each interior point's
/// minimal neighborhood, members covering the rest, and a few extras.
pub fn random_i_cover<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, base: &PointSet) -> Cover {
    let n = space.n();
    let inner = space.interior(base);
    let mut elements: Vec<PointSet> = Vec::new();
    let mut int_union = space.empty_set();
    let mut union = space.empty_set();
    let grow = |seed: PointSet, rng: &mut R| {
        let mut w = seed.union(&random_subset(rng, n, 0.3).intersection(base));
        w.intersect_with(base);
        w
    };
    for x in inner.iter() {
        if int_union.contains(x) {
            continue;
        }
        let w = grow(space.minimal_neighborhood(x).expect("in range").clone(), rng);
        int_union.union_with(&space.interior(&w));
        union.union_with(&w);
        elements.push(w);
    }
    for y in base.iter() {
        if union.contains(y) {
            continue;
        }
        let w = grow(PointSet::singleton(n, y), rng);
        union.union_with(&w);
        elements.push(w);
    }
    for _ in 0..rng.gen_range(0..3) {
        elements.push(random_subset(rng, n, 0.4).intersection(base));
    }
    elements.shuffle(rng);
    Cover::new(base.clone(), elements).expect("members lie in the base")
}

fn random_lattice_element<R: Rng>(rng: &mut R, lattice: &Lattice) -> PointSet {
    lattice.get(rng.gen_range(0..lattice.len())).clone()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub spaces: usize,
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

impl AxiomReport {
    fn check(&mut self, name: &str, ok: bool, context: impl FnOnce() -> String) {
        *self.checks.entry(name.to_string()).or_default() += 1;
        if !ok {
            self.violations.push(format!("{name}: {}", context()));
        }
    }

    pub fn total_checks(&self) -> usize {
        self.checks.values().sum()
    }

    pub fn count(&self, prefix: &str) -> usize {
        self.checks.iter().filter(|(k, _)| k.starts_with(prefix)).map(|(_, v)| v).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Closure and interior axioms on one space, with `subsets` random pairs.
pub fn check_closure_axioms<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, subsets: usize, report: &mut AxiomReport) {
    let n = space.n();
    let x = space.full_set();
    let ctx = |a: &PointSet, b: &PointSet| format!("n={n} A={a} B={b} relation={:?}", space.relation());
    report.check("closure.empty", space.closure(&space.empty_set()).is_empty(), || format!("n={n}"));
    report.check("interior.full", space.interior(&x) == x, || format!("n={n}"));
    for _ in 0..subsets {
        let (pa, pb) = (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
        let a = random_subset(rng, n, pa);
        let b = random_subset(rng, n, pb);
        let (ca, cb) = (space.closure(&a), space.closure(&b));
        report.check("closure.extensive", a.is_subset(&ca), || ctx(&a, &b));
        report.check("closure.additive", space.closure(&a.union(&b)) == ca.union(&cb), || ctx(&a, &b));
        let (ia, ib) = (space.interior(&a), space.interior(&b));
        report.check("interior.contracting", ia.is_subset(&a), || ctx(&a, &b));
        report.check("interior.meet", space.interior(&a.intersection(&b)) == ia.intersection(&ib), || ctx(&a, &b));
        let small = a.intersection(&b);
        report.check("interior.monotone", space.interior(&small).is_subset(&ia), || ctx(&a, &b));
        report.check("duality.interior", ia == x.difference(&space.closure(&x.difference(&a))), || ctx(&a, &b));
        report.check("duality.closure", ca == x.difference(&space.interior(&x.difference(&a))), || ctx(&a, &b));
    }
    for p in 0..n {
        let vx = space.minimal_neighborhood(p).expect("in range");
        report.check("neighborhood.interior", space.interior(vx).contains(p), || format!("x={p}"));
        for _ in 0..5 {
            let u = vx.union(&random_subset(rng, n, 0.3));
            report.check("neighborhood.minimal", !space.interior(&u).contains(p) || vx.is_subset(&u), || format!("x={p} U={u}"));
        }
    }
}

/// Basis axioms for i-covers on one space: identity families, pullback along
/// inclusions, composition, intersections, and the refinement preorder.
pub fn check_basis_axioms<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, lattice: &Lattice, rounds: usize, report: &mut AxiomReport) {
    for id in 0..lattice.len() {
        let u = lattice.get(id);
        report.check("basis.identity", is_i_cover(space, &Cover::identity(u.clone())), || format!("U={u}"));
    }
    for _ in 0..rounds {
        let base = if rng.gen_bool(0.3) { space.full_set() } else { random_lattice_element(rng, lattice) };
        let cov = random_i_cover(rng, space, &base);
        report.check("basis.generator", is_i_cover(space, &cov), || format!("U={base} cover={:?}", cov.elements()));

        let v = if rng.gen_bool(0.5) { random_lattice_element(rng, lattice).intersection(&base) } else { random_subset(rng, space.n(), 0.5).intersection(&base) };
        let pulled = restrict_cover(space, &cov, &v);
        report.check("basis.pullback", pulled.as_ref().is_ok_and(|c| is_i_cover(space, c)), || format!("U={base} V={v} err={:?}", pulled.as_ref().err()));

        let inners: Vec<Cover> = cov.elements().iter().map(|e| random_i_cover(rng, space, e)).collect();
        let composed = compose_covers(space, &cov, &inners);
        report.check("basis.composition", composed.as_ref().is_ok_and(|c| is_i_cover(space, c)), || format!("U={base} err={:?}", composed.as_ref().err()));

        let other = random_i_cover(rng, space, &base);
        let meet = intersect_covers(&cov, &other).expect("same base");
        report.check("basis.intersection", is_i_cover(space, &meet), || format!("U={base}"));
        report.check("refines.meet_left", refines(&meet, &cov).unwrap_or(false), || format!("U={base}"));
        report.check("refines.meet_right", refines(&meet, &other).unwrap_or(false), || format!("U={base}"));
        report.check("refines.reflexive", refines(&cov, &cov).unwrap_or(false), || format!("U={base}"));
        let third = intersect_covers(&meet, &random_i_cover(rng, space, &base)).expect("same base");
        let transitive = !refines(&third, &meet).unwrap_or(false) || refines(&third, &cov).unwrap_or(false);
        report.check("refines.transitive", transitive, || format!("U={base}"));

        if base.is_full() {
            report.check("interior_cover.intersection", is_interior_cover(space, &meet) && is_interior_cover(space, &cov), || "U=X".into());
        }
    }
}

/// Runs both suites on `spaces` random spaces with at most `max_n` points.
pub fn run_axiom_suite(seed: u64, spaces: usize, max_n: usize) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport { seed, spaces, ..Default::default() };
    for _ in 0..spaces {
        let space = random_space(&mut rng, max_n);
        check_closure_axioms(&mut rng, &space, 20, &mut report);
        match build_lattice(&space, 1 << 12) {
            Ok(lattice) => check_basis_axioms(&mut rng, &space, &lattice, 4, &mut report),
            Err(e) => report.violations.push(format!("lattice: {e}")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_clean_and_deterministic() {
        let a = run_axiom_suite(7, 20, 8);
        assert!(a.passed(), "{:?}", a.violations);
        let b = run_axiom_suite(7, 20, 8);
        assert_eq!(a.checks, b.checks);
        assert!(a.count("basis.") > 50);
    }

    #[test]
    fn random_i_covers_are_i_covers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = random_space(&mut rng, 7);
            let base = random_subset(&mut rng, s.n(), 0.6);
            assert!(is_i_cover(&s, &random_i_cover(&mut rng, &s, &base)));
        }
    }
}
