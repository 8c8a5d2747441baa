//! The intersection lattice 𝓛(X,c): sets with nonempty interior together
//! with all their finite intersections, plus ∅ and X.
//!
//! Every set with nonempty interior contains some minimal neighborhood and
//! hence the core `K = ⋂_x V_x`. Conversely every `S ⊇ K` is the
//! intersection of the sets `X − {y}` for `y ∉ S`, each of which misses some
//! `V_x` and so contains it. The lattice is therefore `{∅} ∪ {S : S ⊇ K}`,
//! which is how it is enumerated here.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

pub const DEFAULT_LATTICE_CAP: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    elements: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
    neighborhood: Vec<bool>,
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements sorted by cardinality, then members; `∅` has id 0.
    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn get(&self, id: usize) -> &PointSet {
        &self.elements[id]
    }

    pub fn id_of(&self, set: &PointSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn require_id(&self, set: &PointSet) -> Result<usize> {
        self.id_of(set).ok_or_else(|| Error::NotInLattice(set.to_bit_string()))
    }

    pub fn empty_id(&self) -> usize {
        0
    }

    pub fn full_id(&self) -> usize {
        self.elements.len() - 1
    }

    /// Whether the element has nonempty interior (belongs to 𝒩(X,c)).
    pub fn is_neighborhood(&self, id: usize) -> bool {
        self.neighborhood[id]
    }

    /// Id of `a ∩ b`.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].intersection(&self.elements[b]);
        self.index[&m]
    }

    /// Ids of lattice elements contained in `id`, in id order.
    pub fn subelements(&self, id: usize) -> Vec<usize> {
        let u = &self.elements[id];
        (0..self.elements.len()).filter(|&v| self.elements[v].is_subset(u)).collect()
    }

    /// 𝓛(x): elements containing `x`.
    pub fn containing(&self, x: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&v| self.elements[v].contains(x)).collect()
    }

    /// 𝒩(x): elements having `x` in their interior.
    pub fn neighborhoods_of(&self, space: &FiniteClosureSpace, x: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&v| space.interior(&self.elements[v]).contains(x)).collect()
    }

    /// 𝓜(x): elements containing `x` on their boundary.
    pub fn boundary_of(&self, space: &FiniteClosureSpace, x: usize) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&v| {
                let e = &self.elements[v];
                e.contains(x) && !space.interior(e).contains(x)
            })
            .collect()
    }

    /// `m_x`, the smallest element containing `x`.
    pub fn smallest_containing(&self, x: usize) -> Result<usize> {
        let mut acc = PointSet::full(self.n);
        for e in self.elements.iter().filter(|e| e.contains(x)) {
            acc.intersect_with(e);
        }
        if !acc.contains(x) {
            return Err(Error::IndexOutOfRange { index: x, n: self.n });
        }
        self.require_id(&acc)
    }
}

/// Builds 𝓛(X,c), failing if it would have more than `cap` elements.
pub fn build_lattice(space: &FiniteClosureSpace, cap: usize) -> Result<Lattice> {
    let n = space.n();
    let mut core = space.full_set();
    for v in space.minimal_neighborhoods() {
        core.intersect_with(v);
    }
    let free: Vec<usize> = core.complement().iter().collect();
    let ups: u128 = if free.len() >= 127 { u128::MAX } else { 1u128 << free.len() };
    let total = ups.saturating_add(if core.is_empty() { 0 } else { 1 });
    if total > cap as u128 {
        return Err(Error::LatticeCapExceeded { cap, reached: usize::try_from(total).unwrap_or(usize::MAX) });
    }
    let mut elements = Vec::with_capacity(total as usize);
    if !core.is_empty() {
        elements.push(space.empty_set());
    }
    for mask in 0..(ups as u64) {
        let mut s = core.clone();
        for (bit, &x) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                s.insert(x);
            }
        }
        elements.push(s);
    }
    elements.sort_by_cached_key(PointSet::sort_key);
    let index = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let neighborhood = elements.iter().map(|e| !space.interior(e).is_empty()).collect();
    Ok(Lattice { n, elements, index, neighborhood })
}
