#![allow(dead_code)]

use closure_cohomology::{Cover, FiniteClosureSpace, PointSet};
use rand::Rng;

/// Interior straight from the relation matrix: `x ∈ i(A)` iff no `y ∉ A`
/// has `x` in its closure.
pub fn interior_mask(rel: &[Vec<bool>], a: u32) -> u32 {
    let n = rel.len();
    let outside: Vec<usize> = (0..n).filter(|&y| a >> y & 1 == 0).collect();
    (0..n).filter(|&x| outside.iter().all(|&y| !rel[y][x])).fold(0, |m, x| m | 1 << x)
}

pub fn mask_of(s: &PointSet) -> u32 {
    s.iter().fold(0, |m, x| m | 1 << x)
}

pub fn set_of(n: usize, mask: u32) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|&b| mask >> b & 1 == 1)).unwrap()
}

pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    pub fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
    pub fn count(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

pub fn random_relation<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Vec<bool>> {
    (0..n).map(|y| (0..n).map(|x| x == y || rng.gen_bool(p)).collect()).collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random interior cover of at most `max_len` members, sometimes with a repeated member.
pub fn random_interior_cover<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, max_len: usize) -> Cover {
    let n = space.n();
    let k = rng.gen_range(1..=max_len);
    let mut elements: Vec<PointSet> =
        (0..k).map(|_| PointSet::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())).collect();
    let mut covered = space.empty_set();
    for e in &elements {
        covered.union_with(&space.interior(e));
    }
    for x in 0..n {
        if !covered.contains(x) {
            let j = rng.gen_range(0..k);
            elements[j].union_with(space.minimal_neighborhood(x).unwrap());
            covered.union_with(&space.interior(&elements[j]));
        }
    }
    if k < max_len && rng.gen_bool(0.3) {
        let dup = elements[rng.gen_range(0..k)].clone();
        elements.push(dup);
    }
    Cover::of_space(space, elements).unwrap()
}
