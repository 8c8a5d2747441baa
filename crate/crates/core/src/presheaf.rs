//! Presheaves of finitely generated abelian groups on the intersection lattice.

use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FgAbGroup;
use crate::lattice::Lattice;
use crate::linalg::Matrix;
use crate::pointset::PointSet;
use crate::presented::{compose, congruent, is_well_defined, widen};

#[derive(Clone, Debug, PartialEq)]
enum Restrictions {
    /// Identity between equal values, zero otherwise.
    Constant,
    /// Keyed by `(from, to)` lattice ids with `to ⊆ from`.
    Explicit(BTreeMap<(usize, usize), Matrix<i64>>),
}

/// Values `F(U)` per lattice id and restriction matrices `F(U) → F(V)` for `V ⊆ U`.
///
/// A matrix has `generators(F(V))` rows and `generators(F(U))` columns.
/// Missing restrictions default to the identity when `U = V` and to the zero
/// map whenever either side has no generators.
#[derive(Clone, Debug, PartialEq)]
pub struct PresheafData {
    values: Vec<FgAbGroup>,
    restrictions: Restrictions,
}

impl PresheafData {
    /// Constant presheaf: `group` on every nonempty element, `0` on `∅`.
    pub fn constant(lattice: &Lattice, group: &FgAbGroup) -> Self {
        let values = lattice
            .elements()
            .iter()
            .map(|e| if e.is_empty() { FgAbGroup::zero() } else { group.clone() })
            .collect();
        PresheafData { values, restrictions: Restrictions::Constant }
    }

    /// Explicit presheaf with no restrictions yet.
    pub fn explicit(values: Vec<FgAbGroup>) -> Self {
        PresheafData { values, restrictions: Restrictions::Explicit(BTreeMap::new()) }
    }

    /// Materializes every restriction between comparable lattice elements.
    pub fn to_explicit(&self, lattice: &Lattice) -> Result<Self> {
        let mut out = PresheafData::explicit(self.values.clone());
        for u in 0..lattice.len() {
            for v in lattice.subelements(u) {
                let m = self.restriction(u, v)?.into_owned();
                out.set_restriction(u, v, m);
            }
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, id: usize) -> &FgAbGroup {
        &self.values[id]
    }

    pub fn values(&self) -> &[FgAbGroup] {
        &self.values
    }

    pub fn set_value(&mut self, id: usize, group: FgAbGroup) {
        self.values[id] = group;
    }

    pub fn set_restriction(&mut self, from: usize, to: usize, m: Matrix<i64>) {
        match &mut self.restrictions {
            Restrictions::Explicit(map) => {
                map.insert((from, to), m);
            }
            Restrictions::Constant => {
                let mut map = BTreeMap::new();
                map.insert((from, to), m);
                self.restrictions = Restrictions::Explicit(map);
            }
        }
    }

    /// Explicitly stored restrictions, if any.
    pub fn explicit_restrictions(&self) -> Option<&BTreeMap<(usize, usize), Matrix<i64>>> {
        match &self.restrictions {
            Restrictions::Explicit(map) => Some(map),
            Restrictions::Constant => None,
        }
    }

    /// `ρ^U_V` as a generator matrix.
    pub fn restriction(&self, from: usize, to: usize) -> Result<Cow<'_, Matrix<i64>>> {
        let (rows, cols) = (self.values[to].generators(), self.values[from].generators());
        match &self.restrictions {
            Restrictions::Constant => {
                if self.values[to] == self.values[from] {
                    Ok(Cow::Owned(Matrix::identity(cols)))
                } else {
                    Ok(Cow::Owned(Matrix::zeros(rows, cols)))
                }
            }
            Restrictions::Explicit(map) => {
                if let Some(m) = map.get(&(from, to)) {
                    if m.shape() != (rows, cols) {
                        return Err(Error::RestrictionShape {
                            from,
                            to,
                            rows: m.rows(),
                            cols: m.cols(),
                            expected_rows: rows,
                            expected_cols: cols,
                        });
                    }
                    Ok(Cow::Borrowed(m))
                } else if from == to {
                    Ok(Cow::Owned(Matrix::identity(cols)))
                } else if rows == 0 || cols == 0 {
                    Ok(Cow::Owned(Matrix::zeros(rows, cols)))
                } else {
                    Err(Error::MissingRestriction { from, to })
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresheafViolation {
    ValueCount { expected: usize, found: usize },
    NotInclusion { from: usize, to: usize },
    Malformed { from: usize, to: usize, message: String },
    NotWellDefined { from: usize, to: usize },
    NotIdentity { element: usize },
    NotFunctorial { u: usize, v: usize, w: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresheafReport {
    pub ok: bool,
    pub violations: Vec<PresheafViolation>,
}

/// Checks identities and composition `ρ^U_W = ρ^V_W ∘ ρ^U_V` over every chain `W ⊆ V ⊆ U`.
pub fn check_presheaf(lattice: &Lattice, presheaf: &PresheafData) -> PresheafReport {
    let mut violations = Vec::new();
    if presheaf.len() != lattice.len() {
        violations.push(PresheafViolation::ValueCount { expected: lattice.len(), found: presheaf.len() });
        return PresheafReport { ok: false, violations };
    }
    if let Some(map) = presheaf.explicit_restrictions() {
        for &(from, to) in map.keys() {
            if from >= lattice.len() || to >= lattice.len() || !lattice.get(to).is_subset(lattice.get(from)) {
                violations.push(PresheafViolation::NotInclusion { from, to });
            }
        }
    }
    let orders: Vec<Vec<u64>> = presheaf.values().iter().map(FgAbGroup::generator_orders).collect();
    let subs: Vec<Vec<usize>> = (0..lattice.len()).map(|u| lattice.subelements(u)).collect();
    // Widened restriction for every comparable pair, or None when malformed.
    let mut maps: BTreeMap<(usize, usize), Matrix<i128>> = BTreeMap::new();
    for (u, below) in subs.iter().enumerate() {
        for &v in below {
            match presheaf.restriction(u, v) {
                Ok(m) => {
                    if !is_well_defined(&m, &orders[u], &orders[v]) {
                        violations.push(PresheafViolation::NotWellDefined { from: u, to: v });
                    }
                    maps.insert((u, v), widen(&m));
                }
                Err(e) => violations.push(PresheafViolation::Malformed { from: u, to: v, message: e.to_string() }),
            }
        }
    }
    for (u, order) in orders.iter().enumerate() {
        if let Some(m) = maps.get(&(u, u)) {
            if !congruent(m, &Matrix::identity(m.rows()), order) {
                violations.push(PresheafViolation::NotIdentity { element: u });
            }
        }
    }
    for (u, below) in subs.iter().enumerate() {
        for &v in below {
            let Some(uv) = maps.get(&(u, v)) else { continue };
            for &w in &subs[v] {
                let (Some(vw), Some(uw)) = (maps.get(&(v, w)), maps.get(&(u, w))) else { continue };
                let ok = compose(vw, uv).is_some_and(|c| congruent(&c, uw, &orders[w]));
                if !ok {
                    violations.push(PresheafViolation::NotFunctorial { u, v, w });
                }
            }
        }
    }
    PresheafReport { ok: violations.is_empty(), violations }
}

/// Source of coefficient groups on arbitrary intersections of cover elements.
pub trait Coefficients {
    fn value_on(&self, set: &PointSet) -> Result<FgAbGroup>;

    /// Restriction `F(from) → F(to)` for `to ⊆ from`.
    fn restriction_on(&self, from: &PointSet, to: &PointSet) -> Result<Matrix<i64>>;

    fn describe(&self) -> String;
}

/// The constant presheaf with a given group, defined on every subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantCoefficients(pub FgAbGroup);

impl Coefficients for ConstantCoefficients {
    fn value_on(&self, set: &PointSet) -> Result<FgAbGroup> {
        Ok(if set.is_empty() { FgAbGroup::zero() } else { self.0.clone() })
    }

    fn restriction_on(&self, from: &PointSet, to: &PointSet) -> Result<Matrix<i64>> {
        let g = self.0.generators();
        if from.is_empty() && !to.is_empty() {
            return Err(Error::NotASubset);
        }
        Ok(if to.is_empty() { Matrix::zeros(0, self.value_on(from)?.generators()) } else { Matrix::identity(g) })
    }

    fn describe(&self) -> String {
        format!("constant {}", self.0)
    }
}

/// A presheaf given on the lattice, evaluated on lattice elements only.
#[derive(Clone, Debug)]
pub struct LatticeCoefficients<'a> {
    pub lattice: &'a Lattice,
    pub presheaf: &'a PresheafData,
}

impl Coefficients for LatticeCoefficients<'_> {
    fn value_on(&self, set: &PointSet) -> Result<FgAbGroup> {
        Ok(self.presheaf.value(self.lattice.require_id(set)?).clone())
    }

    fn restriction_on(&self, from: &PointSet, to: &PointSet) -> Result<Matrix<i64>> {
        let (f, t) = (self.lattice.require_id(from)?, self.lattice.require_id(to)?);
        Ok(self.presheaf.restriction(f, t)?.into_owned())
    }

    fn describe(&self) -> String {
        "lattice presheaf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::space::FiniteClosureSpace;

    fn discrete(n: usize) -> (FiniteClosureSpace, Lattice) {
        let s = FiniteClosureSpace::from_graph(n, &[]).unwrap();
        let l = build_lattice(&s, 1 << 10).unwrap();
        (s, l)
    }

    #[test]
    fn constant_presheaves_are_presheaves() {
        let (_, l) = discrete(3);
        for g in [FgAbGroup::integers(), FgAbGroup::zero(), FgAbGroup::cyclic(2)] {
            let p = PresheafData::constant(&l, &g);
            assert_eq!(p.value(l.empty_id()), &FgAbGroup::zero());
            assert_eq!(p.value(l.full_id()), &g);
            assert!(check_presheaf(&l, &p).ok);
            assert!(check_presheaf(&l, &p.to_explicit(&l).unwrap()).ok);
        }
    }

    #[test]
    fn trivial_lattice_accepts_anything() {
        let k3 = FiniteClosureSpace::from_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let l = build_lattice(&k3, 10).unwrap();
        let mut p = PresheafData::explicit(vec![FgAbGroup::cyclic(3), FgAbGroup::free(2)]);
        p.set_restriction(1, 0, Matrix::from_rows(vec![vec![1, 2]]));
        assert!(check_presheaf(&l, &p).ok);
    }

    #[test]
    fn non_commuting_triangle_is_named() {
        let (_, l) = discrete(3);
        let mut p = PresheafData::constant(&l, &FgAbGroup::integers()).to_explicit(&l).unwrap();
        let x = l.full_id();
        let zero_one = l.id_of(&PointSet::from_indices(3, [0, 1]).unwrap()).unwrap();
        let zero = l.id_of(&PointSet::from_indices(3, [0]).unwrap()).unwrap();
        // Break ρ^X_{0} while keeping ρ^X_{01} and ρ^{01}_{0}.
        p.set_restriction(x, zero, Matrix::from_rows(vec![vec![2]]));
        let report = check_presheaf(&l, &p);
        assert!(!report.ok);
        assert!(report.violations.contains(&PresheafViolation::NotFunctorial { u: x, v: zero_one, w: zero }));
    }

    #[test]
    fn ill_defined_and_misshapen_maps() {
        let (_, l) = discrete(1);
        let mut p = PresheafData::explicit(vec![FgAbGroup::zero(), FgAbGroup::cyclic(2)]);
        p.set_restriction(1, 1, Matrix::from_rows(vec![vec![3]]));
        assert!(check_presheaf(&l, &p).ok);
        let mut q = PresheafData::explicit(vec![FgAbGroup::zero(), FgAbGroup::cyclic(2)]);
        q.set_value(0, FgAbGroup::cyclic(3));
        q.set_restriction(1, 0, Matrix::from_rows(vec![vec![1]]));
        let r = check_presheaf(&l, &q);
        assert!(r.violations.contains(&PresheafViolation::NotWellDefined { from: 1, to: 0 }));
        q.set_restriction(1, 0, Matrix::from_rows(vec![vec![1, 1]]));
        assert!(matches!(check_presheaf(&l, &q).violations[0], PresheafViolation::Malformed { .. }));
    }

    #[test]
    fn missing_restriction_is_an_error() {
        let (_, l) = discrete(1);
        let p = PresheafData::explicit(vec![FgAbGroup::integers(), FgAbGroup::integers()]);
        assert_eq!(p.restriction(1, 0).unwrap_err(), Error::MissingRestriction { from: 1, to: 0 });
        assert!(!check_presheaf(&l, &p).ok);
    }
}
