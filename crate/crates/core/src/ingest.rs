//! Input formats: edge lists, point clouds, label maps and presheaf documents.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FgAbGroup;
use crate::lattice::Lattice;
use crate::linalg::Matrix;
use crate::pointset::PointSet;
use crate::presheaf::PresheafData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Label → dense index map read from a two-column file (`label index`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    index: HashMap<String, usize>,
    names: Vec<Option<String>>,
}

impl LabelMap {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = LabelMap::default();
        for (lineno, line) in content_lines(text) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [label, idx] = fields[..] else {
                return Err(Error::Parse { line: lineno, message: "expected `label index`".into() });
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse { line: lineno, message: format!("bad index {idx:?}") })?;
            if map.index.insert(label.to_string(), idx).is_some() {
                return Err(Error::Parse { line: lineno, message: format!("duplicate label {label:?}") });
            }
            if map.names.len() <= idx {
                map.names.resize(idx + 1, None);
            }
            map.names[idx] = Some(label.to_string());
        }
        Ok(map)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn name_of(&self, idx: usize) -> Option<&str> {
        self.names.get(idx).and_then(|n| n.as_deref())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Lines `u v` of vertex indices; `#` starts a comment line; an optional
/// `n=K` line fixes the vertex count, otherwise it is one more than the
/// largest index seen.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    parse_edges_with(text, |tok| tok.parse::<usize>().ok())
}

/// Like [`parse_edge_list`], with endpoints given as labels from `labels`.
pub fn parse_labeled_edge_list(text: &str, labels: &LabelMap) -> Result<EdgeList> {
    let mut el = parse_edges_with(text, |tok| labels.index_of(tok))?;
    el.n = el.n.max(labels.len());
    Ok(el)
}

fn parse_edges_with(text: &str, resolve: impl Fn(&str) -> Option<usize>) -> Result<EdgeList> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
            let k = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: lineno, message: format!("bad vertex count {rest:?}") })?;
            header = Some(k);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse { line: lineno, message: format!("expected two vertices, found {line:?}") });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&fields) {
            *slot = resolve(tok).ok_or_else(|| Error::Parse { line: lineno, message: format!("bad vertex {tok:?}") })?;
        }
        edges.push((ends[0], ends[1]));
    }
    let n = match header {
        Some(k) => k,
        None => match edges.iter().map(|&(u, v)| u.max(v)).max() {
            Some(m) => m + 1,
            None => return Err(Error::Parse { line: 0, message: "empty edge list without an `n=` header".into() }),
        },
    };
    Ok(EdgeList { n, edges })
}

/// One point per line, comma-separated decimal coordinates.
pub fn parse_points_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let coords = line
            .split(',')
            .map(|f| {
                let f = f.trim();
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse { line: lineno, message: format!("non-numeric field {f:?}") })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = points.first() {
            if first.len() != coords.len() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("ragged row: {} fields, expected {}", coords.len(), first.len()),
                });
            }
        }
        points.push(coords);
    }
    Ok(points)
}

/// Row-major integer matrix restricting `elements[from]` to `elements[to]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionEntry {
    pub from: usize,
    pub to: usize,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

/// Presheaf exchange document. `elements` are bit strings of lattice sets;
/// `values[i]` is the group on `elements[i]`; restriction ids index `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafDocument {
    pub elements: Vec<PointSet>,
    pub values: Vec<FgAbGroup>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionEntry>,
}

impl PresheafDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presheaf documents always serialize")
    }

    /// Resolves the document against a lattice. `∅` defaults to the zero
    /// group; every other lattice element must be listed.
    pub fn into_presheaf(self, lattice: &Lattice) -> Result<PresheafData> {
        if self.elements.len() != self.values.len() {
            return Err(Error::Invalid(format!(
                "{} elements but {} values",
                self.elements.len(),
                self.values.len()
            )));
        }
        let mut ids = Vec::with_capacity(self.elements.len());
        let mut values: Vec<Option<FgAbGroup>> = vec![None; lattice.len()];
        for (e, v) in self.elements.iter().zip(self.values) {
            if e.universe() != lattice.n() {
                return Err(Error::SizeMismatch { expected: lattice.n(), found: e.universe() });
            }
            let id = lattice.require_id(e)?;
            if values[id].replace(v).is_some() {
                return Err(Error::Invalid(format!("element {} listed twice", e.to_bit_string())));
            }
            ids.push(id);
        }
        let empty = lattice.empty_id();
        values[empty].get_or_insert_with(FgAbGroup::zero);
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Invalid(format!("no value for lattice element {}", lattice.get(i).to_bit_string()))))
            .collect::<Result<Vec<_>>>()?;
        let mut presheaf = PresheafData::explicit(values);
        for r in self.restrictions {
            let (Some(&from), Some(&to)) = (ids.get(r.from), ids.get(r.to)) else {
                return Err(Error::Invalid(format!("restriction refers to unknown element {} or {}", r.from, r.to)));
            };
            if r.data.len() != r.rows * r.cols {
                return Err(Error::Invalid(format!("restriction {} -> {} has {} entries for a {}x{} matrix", r.from, r.to, r.data.len(), r.rows, r.cols)));
            }
            presheaf.set_restriction(from, to, Matrix::from_vec(r.rows, r.cols, r.data));
        }
        Ok(presheaf)
    }

    /// Document listing every lattice element and every restriction between comparable pairs.
    pub fn from_presheaf(lattice: &Lattice, presheaf: &PresheafData) -> Result<Self> {
        let mut restrictions = Vec::new();
        for u in 0..lattice.len() {
            for v in lattice.subelements(u) {
                let m = presheaf.restriction(u, v)?;
                if m.rows() == 0 || m.cols() == 0 {
                    continue;
                }
                restrictions.push(RestrictionEntry { from: u, to: v, rows: m.rows(), cols: m.cols(), data: m.as_slice().to_vec() });
            }
        }
        Ok(PresheafDocument { elements: lattice.elements().to_vec(), values: presheaf.values().to_vec(), restrictions })
    }
}
