//! Finite Čech closure spaces.
//!
//! On a finite ground set the closure operator is additive, so it is fully
//! determined by the closures of singletons. A space is stored as that
//! relation: row `y` holds `c({y})`. The transposed rows are the minimal
//! neighborhoods `V_x = {y : x ∈ c({y})}`.

use std::str::FromStr;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClosureSpace {
    n: usize,
    singleton_closure: Vec<PointSet>,
    min_neighborhood: Vec<PointSet>,
}

/// Distance used by [`FiniteClosureSpace::from_metric`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl Metric {
    pub fn distance<F: Float>(self, a: &[F], b: &[F]) -> F {
        let diffs = a.iter().zip(b).map(|(&x, &y)| (x - y).abs());
        match self {
            Metric::Euclidean => diffs.fold(F::zero(), |acc, d| acc + d * d).sqrt(),
            Metric::Chebyshev => diffs.fold(F::zero(), |acc, d| acc.max(d)),
            Metric::Manhattan => diffs.fold(F::zero(), |acc, d| acc + d),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "l2" => Ok(Metric::Euclidean),
            "chebyshev" | "linf" => Ok(Metric::Chebyshev),
            "manhattan" | "l1" => Ok(Metric::Manhattan),
            other => Err(Error::Invalid(format!("unknown metric {other:?}"))),
        }
    }
}

impl FiniteClosureSpace {
    fn from_closures(singleton_closure: Vec<PointSet>) -> Self {
        let n = singleton_closure.len();
        let mut min_neighborhood = vec![PointSet::empty(n); n];
        for (y, cy) in singleton_closure.iter().enumerate() {
            for x in cy.iter() {
                min_neighborhood[x].insert(y);
            }
        }
        FiniteClosureSpace { n, singleton_closure, min_neighborhood }
    }

    /// Closure induced by a graph: `c({v}) = {v} ∪ {v' : (v, v') ∈ E}`.
    /// Edges are treated as undirected; duplicates are harmless.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut closures: Vec<PointSet> = (0..n).map(|v| PointSet::singleton(n, v)).collect();
        for &(u, v) in edges {
            for idx in [u, v] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            closures[u].insert(v);
            closures[v].insert(u);
        }
        Ok(Self::from_closures(closures))
    }

    /// Mesoscopic closure `c_r(A) = {x : d(x, A) ≤ r}`. Ties at exactly `r`
    /// are inside; the comparison is `≤` on the computed distance.
    pub fn from_metric<F: Float>(points: &[Vec<F>], metric: Metric, r: F) -> Result<Self> {
        if r.is_nan() || r < F::zero() {
            return Err(Error::InvalidRadius);
        }
        let dim = points.first().map_or(0, Vec::len);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { index: i, expected: dim, found: p.len() });
            }
            if p.iter().any(|c| c.is_nan()) {
                return Err(Error::NanCoordinate(i));
            }
        }
        let n = points.len();
        let mut closures: Vec<PointSet> = (0..n).map(|v| PointSet::singleton(n, v)).collect();
        for y in 0..n {
            for x in (y + 1)..n {
                if metric.distance(&points[y], &points[x]) <= r {
                    closures[y].insert(x);
                    closures[x].insert(y);
                }
            }
        }
        Ok(Self::from_closures(closures))
    }

    /// General constructor. `relation[y][x]` is true iff `x ∈ c({y})`; the
    /// relation must be reflexive but need not be symmetric.
    pub fn from_relation(n: usize, relation: &[Vec<bool>]) -> Result<Self> {
        if relation.len() != n {
            return Err(Error::RelationShape { rows: relation.len(), expected: n });
        }
        let mut closures = Vec::with_capacity(n);
        for (y, row) in relation.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: row.len() });
            }
            if !row[y] {
                return Err(Error::NotReflexive(y));
            }
            closures.push(PointSet::from_bools(row));
        }
        Ok(Self::from_closures(closures))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.n)
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// `c({y})`.
    pub fn singleton_closure(&self, y: usize) -> &PointSet {
        &self.singleton_closure[y]
    }

    /// Row-major boolean relation, entry `(y, x)` true iff `x ∈ c({y})`.
    pub fn relation(&self) -> Vec<Vec<bool>> {
        self.singleton_closure
            .iter()
            .map(|c| (0..self.n).map(|x| c.contains(x)).collect())
            .collect()
    }

    pub fn closure(&self, a: &PointSet) -> PointSet {
        self.check(a);
        let mut out = self.empty_set();
        for y in a.iter() {
            out.union_with(&self.singleton_closure[y]);
        }
        out
    }

    /// `i(A) = X − c(X − A)`, evaluated pointwise as `x ∈ i(A) ⟺ V_x ⊆ A`.
    pub fn interior(&self, a: &PointSet) -> PointSet {
        self.check(a);
        let mut out = self.empty_set();
        for (x, vx) in self.min_neighborhood.iter().enumerate() {
            if vx.is_subset(a) {
                out.insert(x);
            }
        }
        out
    }

    /// True iff `c` is idempotent (Kuratowski). Checking singletons suffices by additivity.
    pub fn is_topological(&self) -> bool {
        self.singleton_closure.iter().all(|c| self.closure(c) == *c)
    }

    /// The smallest set `U` with `x ∈ i(U)`.
    pub fn minimal_neighborhood(&self, x: usize) -> Result<&PointSet> {
        self.min_neighborhood.get(x).ok_or(Error::IndexOutOfRange { index: x, n: self.n })
    }

    pub fn minimal_neighborhoods(&self) -> &[PointSet] {
        &self.min_neighborhood
    }

    pub fn is_neighborhood_of(&self, u: &PointSet, a: &PointSet) -> bool {
        a.is_subset(&self.interior(u))
    }

    fn check(&self, a: &PointSet) {
        assert_eq!(a.universe(), self.n, "subset universe does not match the space");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> PointSet {
        PointSet::from_indices(n, xs.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> FiniteClosureSpace {
        let edges: Vec<_> = (0..n).map(|k| (k, (k + 1) % n)).collect();
        FiniteClosureSpace::from_graph(n, &edges).unwrap()
    }

    #[test]
    fn cycle_closure_and_interior() {
        let c8 = cycle(8);
        assert_eq!(c8.closure(&set(8, &[0])), set(8, &[7, 0, 1]));
        assert_eq!(c8.interior(&set(8, &[7, 0, 1])), set(8, &[0]));
        assert_eq!(c8.minimal_neighborhood(0).unwrap(), &set(8, &[7, 0, 1]));
        assert!(c8.closure(&c8.empty_set()).is_empty());
        assert!(c8.closure(&c8.full_set()).is_full());
        assert!(c8.interior(&c8.full_set()).is_full());
    }

    #[test]
    fn graph_constructors() {
        let empty = FiniteClosureSpace::from_graph(5, &[]).unwrap();
        for v in 0..5 {
            assert_eq!(empty.singleton_closure(v), &set(5, &[v]));
        }
        let k3 = FiniteClosureSpace::from_graph(3, &[(0, 1), (1, 2), (0, 2), (0, 1)]).unwrap();
        for v in 0..3 {
            assert!(k3.singleton_closure(v).is_full());
        }
        assert_eq!(
            FiniteClosureSpace::from_graph(3, &[(0, 3)]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn metric_constructor() {
        let pts = vec![vec![0.0], vec![1.0], vec![2.0]];
        let s = FiniteClosureSpace::from_metric(&pts, Metric::Euclidean, 1.0).unwrap();
        assert!(s.singleton_closure(1).is_full());
        assert_eq!(s.singleton_closure(0), &set(3, &[0, 1]));
        let discrete = FiniteClosureSpace::from_metric(&pts, Metric::Euclidean, 0.0).unwrap();
        assert!(discrete.is_topological());
        assert_eq!(discrete.singleton_closure(2), &set(3, &[2]));
        let all = FiniteClosureSpace::from_metric(&pts, Metric::Manhattan, 2.0).unwrap();
        assert!((0..3).all(|y| all.singleton_closure(y).is_full()));

        let f32_pts = vec![vec![0.0f32, 0.0], vec![1.0, 1.0]];
        let cheb = FiniteClosureSpace::from_metric(&f32_pts, Metric::Chebyshev, 1.0f32).unwrap();
        assert!(cheb.singleton_closure(0).is_full());
        let eucl = FiniteClosureSpace::from_metric(&f32_pts, Metric::Euclidean, 1.0f32).unwrap();
        assert_eq!(eucl.singleton_closure(0), &set(2, &[0]));
    }

    #[test]
    fn metric_errors() {
        let ragged = vec![vec![0.0, 1.0], vec![1.0]];
        assert!(matches!(
            FiniteClosureSpace::from_metric(&ragged, Metric::Euclidean, 1.0),
            Err(Error::DimensionMismatch { index: 1, .. })
        ));
        let pts = vec![vec![0.0], vec![f64::NAN]];
        assert_eq!(
            FiniteClosureSpace::from_metric(&pts, Metric::Euclidean, 1.0),
            Err(Error::NanCoordinate(1))
        );
        assert_eq!(
            FiniteClosureSpace::from_metric(&[vec![0.0]], Metric::Euclidean, -1.0),
            Err(Error::InvalidRadius)
        );
    }

    #[test]
    fn relation_constructor() {
        let mut rel = vec![vec![false; 2]; 2];
        rel[0][0] = true;
        rel[1][1] = true;
        rel[0][1] = true;
        let s = FiniteClosureSpace::from_relation(2, &rel).unwrap();
        assert_eq!(s.singleton_closure(0), &set(2, &[0, 1]));
        assert_eq!(s.singleton_closure(1), &set(2, &[1]));
        assert_eq!(s.minimal_neighborhood(1).unwrap(), &set(2, &[0, 1]));
        assert_eq!(s.minimal_neighborhood(0).unwrap(), &set(2, &[0]));

        let identity: Vec<Vec<bool>> = (0..4).map(|y| (0..4).map(|x| x == y).collect()).collect();
        let discrete = FiniteClosureSpace::from_relation(4, &identity).unwrap();
        assert!(discrete.is_topological());
        let a = set(4, &[1, 3]);
        assert_eq!(discrete.interior(&a), a);

        let full = FiniteClosureSpace::from_relation(2, &[vec![true; 2], vec![true; 2]]).unwrap();
        assert!(full.singleton_closure(0).is_full());

        let mut bad = identity.clone();
        bad[2][2] = false;
        assert_eq!(FiniteClosureSpace::from_relation(4, &bad), Err(Error::NotReflexive(2)));
    }

    #[test]
    fn topological_detection() {
        let path = FiniteClosureSpace::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_topological());
        let c = path.closure(&set(3, &[0]));
        assert_eq!(c, set(3, &[0, 1]));
        assert!(path.closure(&c).is_full());
        let k3 = FiniteClosureSpace::from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(k3.is_topological());
    }

    #[test]
    fn minimal_neighborhood_out_of_range() {
        assert!(cycle(4).minimal_neighborhood(4).is_err());
    }
}
