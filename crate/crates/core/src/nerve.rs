//! Nerve of a cover.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::pointset::PointSet;

/// Faces are strictly increasing index tuples into `elements` with nonempty
/// common intersection. `faces[q]` holds the q-dimensional faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub elements: Vec<PointSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().rposition(|f| !f.is_empty())
    }

    pub fn face_count(&self, q: usize) -> usize {
        self.faces.get(q).map_or(0, Vec::len)
    }

    /// Closed under taking subfaces, with strictly increasing tuples.
    pub fn is_closed(&self) -> bool {
        for (q, faces) in self.faces.iter().enumerate() {
            for f in faces {
                if f.len() != q + 1 || f.windows(2).any(|w| w[0] >= w[1]) {
                    return false;
                }
                if q > 0 {
                    for skip in 0..f.len() {
                        let sub: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        if !self.faces[q - 1].contains(&sub) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Graphviz rendering of the 1-skeleton; higher faces are listed as comments.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph nerve {\n");
        let name = |i: usize| match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("U{i}"),
        };
        for v in self.faces.first().into_iter().flatten() {
            let i = v[0];
            let _ = writeln!(out, "  {i} [label=\"{}\" members=\"{}\"];", name(i), self.elements[i]);
        }
        for e in self.faces.get(1).into_iter().flatten() {
            let _ = writeln!(out, "  {} -- {};", e[0], e[1]);
        }
        for (q, faces) in self.faces.iter().enumerate().skip(2) {
            for f in faces {
                let ids: Vec<String> = f.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "  // {q}-face {}", ids.join(" "));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nerve of the deduplicated cover up to dimension `q_max`.
pub fn nerve(cov: &Cover, q_max: usize) -> SimplicialComplex {
    let cov = cov.dedup();
    let elements = cov.elements().to_vec();
    let mut faces = vec![Vec::new(); q_max + 1];
    let n = cov.base().universe();
    let mut stack = Vec::new();
    extend_faces(&elements, 0, &PointSet::full(n), &mut stack, &mut faces, q_max);
    for f in faces.iter_mut() {
        f.sort();
    }
    SimplicialComplex { elements, labels: cov.labels().map(<[String]>::to_vec), faces }
}

fn extend_faces(
    elements: &[PointSet],
    start: usize,
    common: &PointSet,
    stack: &mut Vec<usize>,
    faces: &mut [Vec<Vec<usize>>],
    q_max: usize,
) {
    for i in start..elements.len() {
        let meet = common.intersection(&elements[i]);
        if meet.is_empty() {
            continue;
        }
        stack.push(i);
        faces[stack.len() - 1].push(stack.clone());
        if stack.len() <= q_max {
            extend_faces(elements, i + 1, &meet, stack, faces, q_max);
        }
        stack.pop();
    }
}
