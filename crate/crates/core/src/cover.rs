//! Covers, interior covers and i-covers, with the refinement order and the
//! operations that make i-covers a basis for a Grothendieck topology.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// An indexed family of subsets of `base`. Repeated elements are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    base: PointSet,
    elements: Vec<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Cover {
    pub fn new(base: PointSet, elements: Vec<PointSet>) -> Result<Self> {
        for (i, e) in elements.iter().enumerate() {
            if e.universe() != base.universe() {
                return Err(Error::SizeMismatch { expected: base.universe(), found: e.universe() });
            }
            if !e.is_subset(&base) {
                return Err(Error::ElementOutsideBase(i));
            }
        }
        Ok(Cover { base, elements, labels: None })
    }

    /// A family over the whole ground set.
    pub fn of_space(space: &FiniteClosureSpace, elements: Vec<PointSet>) -> Result<Self> {
        Self::new(space.full_set(), elements)
    }

    /// The one-element family `{U}`.
    pub fn identity(base: PointSet) -> Self {
        Cover { elements: vec![base.clone()], base, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.elements.len() {
            return Err(Error::SizeMismatch { expected: self.elements.len(), found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// First occurrence of every distinct element, in order.
    pub fn dedup(&self) -> Cover {
        let mut seen = std::collections::HashSet::new();
        let mut elements = Vec::new();
        let mut labels = self.labels.as_ref().map(|_| Vec::new());
        for (i, e) in self.elements.iter().enumerate() {
            if seen.insert(e.clone()) {
                elements.push(e.clone());
                if let (Some(out), Some(src)) = (labels.as_mut(), self.labels.as_ref()) {
                    out.push(src[i].clone());
                }
            }
        }
        Cover { base: self.base.clone(), elements, labels }
    }

    fn union(&self) -> PointSet {
        let mut u = PointSet::empty(self.base.universe());
        for e in &self.elements {
            u.union_with(e);
        }
        u
    }

    fn interior_union(&self, space: &FiniteClosureSpace) -> PointSet {
        let mut u = space.empty_set();
        for e in &self.elements {
            u.union_with(&space.interior(e));
        }
        u
    }
}

/// `X = ⋃ U_α`.
pub fn is_cover(space: &FiniteClosureSpace, cov: &Cover) -> bool {
    cov.union().is_full() && cov.base.universe() == space.n()
}

/// `X = ⋃ i(U_α)`.
pub fn is_interior_cover(space: &FiniteClosureSpace, cov: &Cover) -> bool {
    cov.interior_union(space).is_full()
}

/// `U = ⋃ U_α` and `i(U) = ⋃ i(U_α)`, interiors taken in the ambient space.
pub fn is_i_cover(space: &FiniteClosureSpace, cov: &Cover) -> bool {
    cov.union() == cov.base && cov.interior_union(space) == space.interior(&cov.base)
}

/// All pairwise intersections, indexed by the product of the index sets (row-major).
pub fn intersect_covers(a: &Cover, b: &Cover) -> Result<Cover> {
    if a.base != b.base {
        return Err(Error::BaseMismatch);
    }
    let mut elements = Vec::with_capacity(a.len() * b.len());
    let mut labels = Vec::new();
    for (i, u) in a.elements.iter().enumerate() {
        for (j, v) in b.elements.iter().enumerate() {
            elements.push(u.intersection(v));
            if let (Some(la), Some(lb)) = (&a.labels, &b.labels) {
                labels.push(format!("{}∩{}", la[i], lb[j]));
            }
        }
    }
    let labels = (a.labels.is_some() && b.labels.is_some()).then_some(labels);
    Ok(Cover { base: a.base.clone(), elements, labels })
}

/// Every element of `fine` lies inside some element of `coarse`.
pub fn refines(fine: &Cover, coarse: &Cover) -> Result<bool> {
    if fine.base != coarse.base {
        return Err(Error::BaseMismatch);
    }
    Ok(fine.elements.iter().all(|f| coarse.elements.iter().any(|c| f.is_subset(c))))
}

/// The minimal neighborhoods `{V_x}`, deduplicated. It is an interior cover
/// and refines every interior cover of the space.
pub fn canonical_cover(space: &FiniteClosureSpace) -> Cover {
    let elements = space.minimal_neighborhoods().to_vec();
    let labels = (0..space.n()).map(|x| format!("V{x}")).collect();
    Cover { base: space.full_set(), elements, labels: Some(labels) }.dedup()
}

/// Pullback of an i-cover of `U` along `V ⊆ U`: the family `{V ∩ U_α}`.
pub fn restrict_cover(space: &FiniteClosureSpace, cov: &Cover, v: &PointSet) -> Result<Cover> {
    if !v.is_subset(&cov.base) {
        return Err(Error::NotASubset);
    }
    if !is_i_cover(space, cov) {
        return Err(Error::NotAnICover("restriction source".into()));
    }
    let elements = cov.elements.iter().map(|u| u.intersection(v)).collect();
    let out = Cover { base: v.clone(), elements, labels: cov.labels.clone() };
    if !is_i_cover(space, &out) {
        return Err(Error::NotAnICover("restricted family".into()));
    }
    Ok(out)
}

/// Composite of an i-cover `{U_α}` of `U` with i-covers `{V_βα}` of each `U_α`.
pub fn compose_covers(space: &FiniteClosureSpace, outer: &Cover, inners: &[Cover]) -> Result<Cover> {
    if inners.len() != outer.len() {
        return Err(Error::InnerCountMismatch { expected: outer.len(), found: inners.len() });
    }
    if !is_i_cover(space, outer) {
        return Err(Error::NotAnICover("outer family".into()));
    }
    let mut elements = Vec::new();
    for (alpha, (inner, u)) in inners.iter().zip(&outer.elements).enumerate() {
        if inner.base != *u {
            return Err(Error::BaseMismatch);
        }
        if !is_i_cover(space, inner) {
            return Err(Error::NotAnICover(format!("inner family {alpha}")));
        }
        elements.extend(inner.elements.iter().cloned());
    }
    let out = Cover { base: outer.base.clone(), elements, labels: None };
    if !is_i_cover(space, &out) {
        return Err(Error::NotAnICover("composite family".into()));
    }
    Ok(out)
}

/// Every interior cover of the space made of at most `max_size` distinct
/// nonempty subsets. Fails once more than `cap` candidate families were tried.
pub fn enumerate_interior_covers(space: &FiniteClosureSpace, max_size: usize, cap: usize) -> Result<Vec<Cover>> {
    let n = space.n();
    if n >= 20 {
        return Err(Error::EnumerationCapExceeded { cap });
    }
    let pool: Vec<PointSet> = (1u64..(1 << n))
        .map(|mask| PointSet::from_indices(n, (0..n).filter(|b| mask >> b & 1 == 1)).unwrap())
        .collect();
    let interiors: Vec<PointSet> = pool.iter().map(|s| space.interior(s)).collect();
    let mut out = Vec::new();
    let mut tried = 0usize;
    let mut stack: Vec<usize> = Vec::new();
    // Depth-first over increasing index tuples.
    fn walk(
        start: usize,
        stack: &mut Vec<usize>,
        ctx: (&[PointSet], &[PointSet], usize, usize),
        tried: &mut usize,
        out: &mut Vec<Cover>,
        space: &FiniteClosureSpace,
    ) -> Result<()> {
        let (pool, interiors, max_size, cap) = ctx;
        for i in start..pool.len() {
            *tried += 1;
            if *tried > cap {
                return Err(Error::EnumerationCapExceeded { cap });
            }
            stack.push(i);
            let mut cov = space.empty_set();
            for &k in stack.iter() {
                cov.union_with(&interiors[k]);
            }
            if cov.is_full() {
                let elements = stack.iter().map(|&k| pool[k].clone()).collect();
                out.push(Cover::of_space(space, elements)?);
            }
            if stack.len() < max_size {
                walk(i + 1, stack, ctx, tried, out, space)?;
            }
            stack.pop();
        }
        Ok(())
    }
    walk(0, &mut stack, (&pool, &interiors, max_size, cap), &mut tried, &mut out, space)?;
    Ok(out)
}
