//! Sheaf, flabbiness and stalk evaluation for presheaves on the lattice.
//!
//! The sheaf condition for an i-cover `{U_α}` of `U` is left exactness of
//! `0 → F(U) → ∏ F(U_α) → ∏ F(U_α ∩ U_β)` with the last map the difference
//! of the two restrictions. Both halves are decided with Smith normal form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FgAbGroup;
use crate::lattice::Lattice;
use crate::linalg::Matrix;
use crate::pointset::PointSet;
use crate::presented::subquotient;
use crate::presheaf::PresheafData;
use crate::space::FiniteClosureSpace;

pub const DEFAULT_COVER_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafVerdict {
    Sheaf,
    NotSheaf,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafCondition {
    /// Sections vanishing on every member vanish.
    Uniqueness,
    /// Compatible families glue.
    Gluing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafFailure {
    pub element: usize,
    pub set: PointSet,
    pub cover: Vec<PointSet>,
    pub condition: SheafCondition,
    /// `ker` of the first map for uniqueness, `ker h / im` for gluing.
    pub obstruction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafReport {
    pub verdict: SheafVerdict,
    pub failures: Vec<SheafFailure>,
    /// Lattice elements whose covers could not all be enumerated within the cap.
    pub unchecked: Vec<PointSet>,
    pub covers_checked: usize,
}

/// Outcome of the equalizer test on one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualizerDefect {
    /// Kernel of `F(U) → ∏ F(U_α)`.
    pub kernel: FgAbGroup,
    /// `ker h / im(F(U))` at `∏ F(U_α)`.
    pub gluing: FgAbGroup,
}

impl EqualizerDefect {
    pub fn is_exact(&self) -> bool {
        self.kernel.is_zero() && self.gluing.is_zero()
    }
}

/// Runs the equalizer test for the family `members` (lattice ids) of `base`.
pub fn equalizer_defect(lattice: &Lattice, presheaf: &PresheafData, base: usize, members: &[usize]) -> Result<EqualizerDefect> {
    let g_orders = presheaf.value(base).generator_orders();
    let offsets = block_offsets(members.iter().map(|&a| presheaf.value(a).generators()));
    let p_orders: Vec<u64> = members.iter().flat_map(|&a| presheaf.value(a).generator_orders()).collect();

    let mut e = Matrix::<i64>::zeros(p_orders.len(), g_orders.len());
    for (k, &a) in members.iter().enumerate() {
        let m = presheaf.restriction(base, a)?;
        paste(&mut e, &m, offsets[k], 0, 1)?;
    }

    // Pairs with α = β vanish and (β, α) repeats (α, β) up to sign.
    let mut pairs = Vec::new();
    for a in 0..members.len() {
        for b in (a + 1)..members.len() {
            pairs.push((a, b, lattice.meet(members[a], members[b])));
        }
    }
    let q_offsets = block_offsets(pairs.iter().map(|&(_, _, ab)| presheaf.value(ab).generators()));
    let q_orders: Vec<u64> = pairs.iter().flat_map(|&(_, _, ab)| presheaf.value(ab).generator_orders()).collect();
    let mut h = Matrix::<i64>::zeros(q_orders.len(), p_orders.len());
    for (k, &(a, b, ab)) in pairs.iter().enumerate() {
        let (ra, rb) = (presheaf.restriction(members[a], ab)?, presheaf.restriction(members[b], ab)?);
        paste(&mut h, &ra, q_offsets[k], offsets[a], 1)?;
        paste(&mut h, &rb, q_offsets[k], offsets[b], -1)?;
    }

    let kernel = subquotient(&g_orders, &p_orders, &Matrix::zeros(g_orders.len(), 0), &e)?;
    let gluing = subquotient(&p_orders, &q_orders, &e, &h)?;
    Ok(EqualizerDefect { kernel, gluing })
}

fn block_offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

fn paste(target: &mut Matrix<i64>, block: &Matrix<i64>, row: usize, col: usize, sign: i64) -> Result<()> {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block[(i, j)].checked_mul(sign).ok_or(Error::Overflow("restriction block"))?;
            let cell = &mut target[(row + i, col + j)];
            *cell = cell.checked_add(v).ok_or(Error::Overflow("restriction block"))?;
        }
    }
    Ok(())
}

/// Depth-first search for the antichain i-covers of one lattice element.
///
/// A family with `A ⊆ B` among its members has the same equalizer defect as
/// the family without `A`: a compatible section on `A` is forced to be the
/// restriction of the one on `B`, and compatibility of `A` with any other
/// member follows from that of `B`. Only antichains need to be examined.
struct AntichainSearch<'a> {
    sets: Vec<&'a PointSet>,
    interiors: Vec<&'a PointSet>,
    comparable: Vec<Vec<bool>>,
    suffix_union: Vec<PointSet>,
    suffix_interior: Vec<PointSet>,
    target: &'a PointSet,
    target_interior: &'a PointSet,
    cap: usize,
    nodes: usize,
}

enum Flow {
    Continue,
    Stop,
    Capped,
}

impl<'a> AntichainSearch<'a> {
    fn new(pool: &[usize], lattice: &'a Lattice, interiors: &'a [PointSet], base: usize, cap: usize) -> Self {
        let sets: Vec<&PointSet> = pool.iter().map(|&i| lattice.get(i)).collect();
        let ints: Vec<&PointSet> = pool.iter().map(|&i| &interiors[i]).collect();
        let comparable = sets.iter().map(|a| sets.iter().map(|b| a.is_subset(b) || b.is_subset(a)).collect()).collect();
        let empty = PointSet::empty(lattice.n());
        let mut suffix_union = vec![empty.clone(); sets.len() + 1];
        let mut suffix_interior = vec![empty; sets.len() + 1];
        for j in (0..sets.len()).rev() {
            suffix_union[j] = suffix_union[j + 1].union(sets[j]);
            suffix_interior[j] = suffix_interior[j + 1].union(ints[j]);
        }
        AntichainSearch {
            sets,
            interiors: ints,
            comparable,
            suffix_union,
            suffix_interior,
            target: lattice.get(base),
            target_interior: &interiors[base],
            cap,
            nodes: 0,
        }
    }

    /// Visits the i-cover antichains by increasing size. `visit` receives pool
    /// indices and returns whether to keep going.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> Result<bool>) -> Result<Flow> {
        let empty = PointSet::empty(self.target.universe());
        for k in 0..=self.sets.len() {
            let mut chosen = Vec::with_capacity(k);
            match self.walk(0, k, &mut chosen, &empty, &empty, visit)? {
                Flow::Continue => {}
                done => return Ok(done),
            }
        }
        Ok(Flow::Continue)
    }

    fn walk(
        &mut self,
        start: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        union: &PointSet,
        interior: &PointSet,
        visit: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<Flow> {
        if chosen.len() == k {
            if union == self.target && interior == self.target_interior {
                return Ok(if visit(chosen)? { Flow::Continue } else { Flow::Stop });
            }
            return Ok(Flow::Continue);
        }
        let m = self.sets.len();
        for j in start..m {
            if m - j < k - chosen.len() {
                break;
            }
            // Members come from j onward only, so the suffix bounds what is reachable.
            if !self.target.is_subset(&union.union(&self.suffix_union[j]))
                || !self.target_interior.is_subset(&interior.union(&self.suffix_interior[j]))
            {
                break;
            }
            if chosen.iter().any(|&c| self.comparable[c][j]) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Ok(Flow::Capped);
            }
            chosen.push(j);
            let flow = self.walk(j + 1, k, chosen, &union.union(self.sets[j]), &interior.union(self.interiors[j]), visit)?;
            chosen.pop();
            if !matches!(flow, Flow::Continue) {
                return Ok(flow);
            }
        }
        Ok(Flow::Continue)
    }
}

/// Checks both sheaf conditions for every lattice element `U` and every
/// i-cover of `U` by lattice elements.
///
/// Families with one member inside another reduce to smaller families with
/// the same defect, so only antichains are examined; in particular families
/// containing `U` reduce to `{U}`, which is always exact. At most
/// `cover_cap` search steps are spent per element; elements beyond the cap
/// are reported as unchecked.
pub fn check_sheaf(space: &FiniteClosureSpace, lattice: &Lattice, presheaf: &PresheafData, cover_cap: usize) -> Result<SheafReport> {
    let interiors: Vec<PointSet> = lattice.elements().iter().map(|e| space.interior(e)).collect();
    let mut failures = Vec::new();
    let mut unchecked = Vec::new();
    let mut covers_checked = 0;
    for u in 0..lattice.len() {
        let pool: Vec<usize> = lattice.subelements(u).into_iter().filter(|&v| v != u).collect();
        let mut search = AntichainSearch::new(&pool, lattice, &interiors, u, cover_cap);
        let mut found = [false; 2];
        let flow = search.run(&mut |picked| {
            covers_checked += 1;
            let members: Vec<usize> = picked.iter().map(|&i| pool[i]).collect();
            let defect = equalizer_defect(lattice, presheaf, u, &members)?;
            let cover = || members.iter().map(|&m| lattice.get(m).clone()).collect::<Vec<_>>();
            for (slot, condition, obstruction) in
                [(0, SheafCondition::Uniqueness, &defect.kernel), (1, SheafCondition::Gluing, &defect.gluing)]
            {
                if !obstruction.is_zero() && !found[slot] {
                    found[slot] = true;
                    failures.push(SheafFailure {
                        element: u,
                        set: lattice.get(u).clone(),
                        cover: cover(),
                        condition,
                        obstruction: obstruction.to_string(),
                    });
                }
            }
            Ok(!(found[0] && found[1]))
        })?;
        if matches!(flow, Flow::Capped) {
            unchecked.push(lattice.get(u).clone());
        }
    }
    let verdict = if !failures.is_empty() {
        SheafVerdict::NotSheaf
    } else if !unchecked.is_empty() {
        SheafVerdict::Indeterminate
    } else {
        SheafVerdict::Sheaf
    };
    Ok(SheafReport { verdict, failures, unchecked, covers_checked })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlabbyFailure {
    pub element: usize,
    pub set: PointSet,
    pub cokernel: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlabbyReport {
    pub flabby: bool,
    pub failures: Vec<FlabbyFailure>,
}

/// Whether every restriction `F(X) → F(U)` is surjective.
pub fn check_flabby(lattice: &Lattice, presheaf: &PresheafData) -> Result<FlabbyReport> {
    let x = lattice.full_id();
    let mut failures = Vec::new();
    for u in 0..lattice.len() {
        let m = presheaf.restriction(x, u)?;
        let orders = presheaf.value(u).generator_orders();
        let coker = subquotient(&orders, &[], &m, &Matrix::zeros(0, orders.len()))?;
        if !coker.is_zero() {
            failures.push(FlabbyFailure { element: u, set: lattice.get(u).clone(), cokernel: coker.to_string() });
        }
    }
    Ok(FlabbyReport { flabby: failures.is_empty(), failures })
}

/// `F(x) = F_𝒩(x) ⊕ F_𝓛(x)` with both summands reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stalk {
    pub point: usize,
    /// Terminal member of 𝒩(x), the minimal neighborhood `V_x`.
    pub neighborhood_set: PointSet,
    pub neighborhood_stalk: FgAbGroup,
    /// Terminal member of 𝓛(x), the smallest lattice element `m_x` containing `x`.
    pub lattice_set: PointSet,
    pub lattice_stalk: FgAbGroup,
    pub stalk: FgAbGroup,
}

pub fn stalk(space: &FiniteClosureSpace, lattice: &Lattice, presheaf: &PresheafData, x: usize) -> Result<Stalk> {
    let vx = space.minimal_neighborhood(x)?.clone();
    // V_x always has x in its interior; the F(∅) case is kept for completeness.
    let neighborhood_stalk = if space.interior(&vx).contains(x) {
        presheaf.value(lattice.require_id(&vx)?).clone()
    } else {
        presheaf.value(lattice.empty_id()).clone()
    };
    let mx = lattice.smallest_containing(x)?;
    let lattice_stalk = presheaf.value(mx).clone();
    let stalk = neighborhood_stalk.direct_sum(&lattice_stalk)?;
    Ok(Stalk {
        point: x,
        neighborhood_set: vx,
        neighborhood_stalk,
        lattice_set: lattice.get(mx).clone(),
        lattice_stalk,
        stalk,
    })
}
