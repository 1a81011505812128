//! JSON file formats for algebras and frames.
//!
//! Algebra: `{"elements":["0","a","1"],"leq":[["0","a"],["a","1"]],
//! "to":[[...]],"from":[[...]]}` — `leq` lists name pairs (covering or
//! full; the reflexive-transitive closure is taken), `to`/`from` are
//! n x n tables of element names with the row as left argument and are
//! optional for lattice-only uses.
//!
//! Frame: `{"points":[["1"],["a","1"]],"leq":[[0,1]],"R":[[0,0],[0,1]],
//! "S":[...]}` — points are label lists (a canonical-frame point is the
//! member list of its prime filter), relations are index pairs.

use crate::algebra::ArrowAlgebra;
use crate::frame::Frame;
use crate::lattice::FiniteBDL;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("duplicate element name {0:?}")]
    DuplicateElement(String),
    #[error("{which} table must be {n}x{n}")]
    TableShape { which: &'static str, n: usize },
    #[error("missing {0} table")]
    MissingTable(&'static str),
    #[error("point index {got} out of range for {n} points")]
    PointOutOfRange { got: usize, n: usize },
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error(transparent)]
    Frame(#[from] crate::frame::FrameError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub points: Vec<Vec<String>>,
    pub leq: Vec<(usize, usize)>,
    #[serde(rename = "R")]
    pub r: Vec<(usize, usize)>,
    #[serde(rename = "S")]
    pub s: Vec<(usize, usize)>,
}

fn index_of(elements: &[String], name: &str) -> Result<usize, IoError> {
    elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| IoError::UnknownElement(name.to_string()))
}

/// Parses the lattice part only; ignores `to`/`from`.
pub fn lattice_from_json(text: &str) -> Result<FiniteBDL, IoError> {
    let doc: AlgebraJson = serde_json::from_str(text)?;
    lattice_of(&doc)
}

fn lattice_of(doc: &AlgebraJson) -> Result<FiniteBDL, IoError> {
    for (i, e) in doc.elements.iter().enumerate() {
        if doc.elements[..i].contains(e) {
            return Err(IoError::DuplicateElement(e.clone()));
        }
    }
    let mut pairs = Vec::with_capacity(doc.leq.len());
    for (a, b) in &doc.leq {
        pairs.push((index_of(&doc.elements, a)?, index_of(&doc.elements, b)?));
    }
    Ok(FiniteBDL::from_pairs(doc.elements.clone(), &pairs)?)
}

pub fn algebra_from_json(text: &str) -> Result<ArrowAlgebra, IoError> {
    let doc: AlgebraJson = serde_json::from_str(text)?;
    let lat = lattice_of(&doc)?;
    let n = lat.size();
    let read_table = |which: &'static str,
                      table: &Option<Vec<Vec<String>>>|
     -> Result<Vec<usize>, IoError> {
        let rows = table.as_ref().ok_or(IoError::MissingTable(which))?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(IoError::TableShape { which, n });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            for name in row {
                flat.push(index_of(&doc.elements, name)?);
            }
        }
        Ok(flat)
    };
    let to = read_table("to", &doc.to)?;
    let from = read_table("from", &doc.from)?;
    Ok(ArrowAlgebra::new(lat, to, from).expect("indices already validated"))
}

pub fn algebra_to_json(alg: &ArrowAlgebra) -> String {
    let lat = alg.lattice();
    let n = lat.size();
    let name = |x: usize| lat.name(x).to_string();
    let mut leq = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lat.leq(a, b) {
                leq.push((name(a), name(b)));
            }
        }
    }
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
        (0..n)
            .map(|a| (0..n).map(|b| name(f(a, b))).collect())
            .collect()
    };
    let doc = AlgebraJson {
        elements: (0..n).map(name).collect(),
        leq,
        to: Some(table(&|a, b| alg.imp(a, b))),
        from: Some(table(&|a, b| alg.dif(a, b))),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn frame_from_json(text: &str) -> Result<Frame, IoError> {
    let doc: FrameJson = serde_json::from_str(text)?;
    let n = doc.points.len();
    for pairs in [&doc.leq, &doc.r, &doc.s] {
        for (a, b) in pairs.iter().copied() {
            for got in [a, b] {
                if got >= n {
                    return Err(IoError::PointOutOfRange { got, n });
                }
            }
        }
    }
    let labels: Vec<String> = doc
        .points
        .iter()
        .map(|names| format!("{{{}}}", names.join(",")))
        .collect();
    Ok(Frame::new(labels, &doc.leq, &doc.r, &doc.s)?)
}

/// Point labels have the shape `{name,name,...}`; element names may
/// themselves contain braces and commas (the enumerator produces names
/// like `{j0,j1}`), so split only at commas outside any inner braces.
fn split_point_label(label: &str) -> Vec<String> {
    let inner = label.strip_prefix('{').and_then(|l| l.strip_suffix('}')).unwrap_or(label);
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn frame_to_json(frame: &Frame) -> String {
    let n = frame.size();
    let points: Vec<Vec<String>> = frame.labels().iter().map(|l| split_point_label(l)).collect();
    let pairs = |rel: &dyn Fn(usize, usize) -> bool| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if rel(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    };
    let doc = FrameJson {
        points,
        leq: pairs(&|a, b| frame.leq(a, b)),
        r: pairs(&|a, b| frame.r(a, b)),
        s: pairs(&|a, b| frame.s(a, b)),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diamond_example, three_chain_example};
    use crate::spectrum::canonical_frame;

    #[test]
    fn point_labels_with_braced_element_names_round_trip() {
        // enumerator-style names like {j0,j1} must survive the
        // label split in frame emission
        assert_eq!(
            split_point_label("{{j0},{j0,j1}}"),
            vec!["{j0}".to_string(), "{j0,j1}".to_string()]
        );
        assert_eq!(split_point_label("{a,1}"), vec!["a".to_string(), "1".to_string()]);
        let lat = crate::enumerate::enumerate_bdls(3).unwrap().pop().unwrap();
        let alg = crate::algebra::ArrowAlgebra::heyting_brouwer(lat);
        let frame = canonical_frame(&alg);
        let back = frame_from_json(&frame_to_json(&frame)).unwrap();
        assert_eq!(back, frame);
    }

    #[test]
    fn algebra_round_trip() {
        for alg in [three_chain_example(), diamond_example()] {
            let text = algebra_to_json(&alg);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back.lattice().size(), alg.size());
            for a in 0..alg.size() {
                assert_eq!(back.lattice().name(a), alg.lattice().name(a));
                for b in 0..alg.size() {
                    assert_eq!(back.lattice().leq(a, b), alg.lattice().leq(a, b));
                    assert_eq!(back.imp(a, b), alg.imp(a, b));
                    assert_eq!(back.dif(a, b), alg.dif(a, b));
                }
            }
        }
    }

    #[test]
    fn covering_pairs_are_closed() {
        // leq given as covers only; closure fills in 0 <= 1
        let text = r#"{"elements":["0","a","1"],
                       "leq":[["0","a"],["a","1"]],
                       "to":[["1","1","1"],["1","1","1"],["0","a","1"]],
                       "from":[["0","0","0"],["a","0","0"],["1","a","0"]]}"#;
        let alg = algebra_from_json(text).unwrap();
        assert!(alg.lattice().leq(0, 2));
        assert_eq!(alg.imp(0, 0), 2);
    }

    #[test]
    fn lattice_only_documents_parse() {
        let text = r#"{"elements":["0","1"],"leq":[["0","1"]]}"#;
        assert!(lattice_from_json(text).is_ok());
        assert!(matches!(
            algebra_from_json(text),
            Err(IoError::MissingTable("to"))
        ));
    }

    #[test]
    fn bad_documents_are_rejected() {
        let dup = r#"{"elements":["x","x"],"leq":[["x","x"]]}"#;
        assert!(matches!(lattice_from_json(dup), Err(IoError::DuplicateElement(_))));
        let unknown = r#"{"elements":["0","1"],"leq":[["0","z"]]}"#;
        assert!(matches!(lattice_from_json(unknown), Err(IoError::UnknownElement(_))));
        let shape = r#"{"elements":["0","1"],"leq":[["0","1"]],
                        "to":[["1","1"]],"from":[["0","0"],["0","0"]]}"#;
        assert!(matches!(algebra_from_json(shape), Err(IoError::TableShape { .. })));
        assert!(lattice_from_json("not json").is_err());
    }

    #[test]
    fn frame_round_trip_preserves_structure() {
        let frame = canonical_frame(&three_chain_example());
        let text = frame_to_json(&frame);
        let back = frame_from_json(&text).unwrap();
        assert_eq!(back.size(), frame.size());
        for a in 0..frame.size() {
            for b in 0..frame.size() {
                assert_eq!(back.leq(a, b), frame.leq(a, b));
                assert_eq!(back.r(a, b), frame.r(a, b));
                assert_eq!(back.s(a, b), frame.s(a, b));
            }
        }
    }

    #[test]
    fn frame_json_shape_matches_interface() {
        // canonical frame of the 3-chain 0 < 1 < 2: prime filters in
        // bitset order are {2} then {1,2}
        let frame = canonical_frame(&three_chain_example());
        let doc: FrameJson = serde_json::from_str(&frame_to_json(&frame)).unwrap();
        assert_eq!(doc.points.len(), 2);
        assert_eq!(doc.points[0], vec!["2"]);
        assert_eq!(doc.points[1], vec!["1", "2"]);
        assert!(doc.leq.contains(&(0, 1)));
        let bad = r#"{"points":[["1"]],"leq":[[0,5]],"R":[],"S":[]}"#;
        assert!(matches!(frame_from_json(bad), Err(IoError::PointOutOfRange { .. })));
    }
}
