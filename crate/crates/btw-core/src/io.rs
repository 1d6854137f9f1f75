use crate::perm::Perm4;
use crate::tri::{Gluing, RawTriangulation, Triangulation};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported format marker {0:?}")]
    BadFormat(String),
    #[error("validation failed: {0:?}")]
    Invalid(Vec<crate::tri::ValidationError>),
}

pub const TRI_FORMAT: &str = "btw-tri/1";
pub const BRANCHING_FORMAT: &str = "btw-branching/1";
pub const PB_FORMAT: &str = "btw-pb/1";
pub const MOVES_FORMAT: &str = "btw-moves/1";

pub fn triangulation_to_json(t: &Triangulation) -> Value {
    let gluings: Vec<Value> = t
        .gluings()
        .iter()
        .map(|faces| {
            Value::Array(
                faces
                    .iter()
                    .map(|g| {
                        json!({
                            "tet": g.tet,
                            "perm": g.perm.images().to_vec(),
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    let mut m = Map::new();
    m.insert("format".into(), Value::from(TRI_FORMAT));
    m.insert("name".into(), Value::from(t.name()));
    m.insert("tetrahedra".into(), Value::from(t.n_tets()));
    m.insert("gluings".into(), Value::Array(gluings));
    Value::Object(m)
}

pub fn triangulation_from_json(v: &Value) -> Result<Triangulation, IoError> {
    let fmt = v["format"].as_str().unwrap_or("");
    if fmt != TRI_FORMAT {
        return Err(IoError::BadFormat(fmt.to_string()));
    }
    let name = v["name"].as_str().unwrap_or("unnamed").to_string();
    let arr = v["gluings"]
        .as_array()
        .ok_or_else(|| IoError::Parse { line: 0, msg: "missing gluings array".into() })?;
    let mut gluings = Vec::new();
    for (i, tv) in arr.iter().enumerate() {
        let faces = tv
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| IoError::Parse { line: i, msg: "each tet needs 4 gluings".into() })?;
        let mut row = [Gluing { tet: 0, perm: Perm4::IDENTITY }; 4];
        for (f, gv) in faces.iter().enumerate() {
            let tet = gv["tet"]
                .as_u64()
                .ok_or_else(|| IoError::Parse { line: i, msg: "missing tet index".into() })?
                as usize;
            let pv = gv["perm"]
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| IoError::Parse { line: i, msg: "missing perm".into() })?;
            let mut images = [0u8; 4];
            for (k, x) in pv.iter().enumerate() {
                images[k] = x
                    .as_u64()
                    .filter(|&x| x < 4)
                    .ok_or_else(|| IoError::Parse { line: i, msg: "bad perm entry".into() })?
                    as u8;
            }
            let perm = Perm4::new(images)
                .ok_or_else(|| IoError::Parse { line: i, msg: "perm is not a bijection".into() })?;
            row[f] = Gluing { tet, perm };
        }
        gluings.push(row);
    }
    Triangulation::validate(&RawTriangulation { name, gluings }).map_err(IoError::Invalid)
}

/// Plain census format: one line per tetrahedron, four "tet p0p1p2p3" tokens,
/// e.g. "1 0132  1 1230  1 2310  1 2103". Lines starting with '#' and blank
/// lines are skipped.
pub fn triangulation_from_plain(name: &str, text: &str) -> Result<Triangulation, IoError> {
    let mut gluings = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 8 {
            return Err(IoError::Parse {
                line: lineno + 1,
                msg: format!("expected 8 tokens (4 'tet perm' pairs), found {}", toks.len()),
            });
        }
        let mut row = [Gluing { tet: 0, perm: Perm4::IDENTITY }; 4];
        for f in 0..4 {
            let tet: usize = toks[2 * f].parse().map_err(|_| IoError::Parse {
                line: lineno + 1,
                msg: format!("bad tet index {:?}", toks[2 * f]),
            })?;
            let ptok = toks[2 * f + 1];
            if ptok.len() != 4 || !ptok.bytes().all(|b| (b'0'..=b'3').contains(&b)) {
                return Err(IoError::Parse {
                    line: lineno + 1,
                    msg: format!("bad perm token {:?}", ptok),
                });
            }
            let b = ptok.as_bytes();
            let perm = Perm4::new([b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0'])
                .ok_or_else(|| IoError::Parse {
                    line: lineno + 1,
                    msg: format!("perm token {:?} is not a bijection", ptok),
                })?;
            row[f] = Gluing { tet, perm };
        }
        gluings.push(row);
    }
    Triangulation::validate(&RawTriangulation { name: name.to_string(), gluings })
        .map_err(IoError::Invalid)
}

pub fn triangulation_to_plain(t: &Triangulation) -> String {
    let mut out = String::new();
    for faces in t.gluings() {
        let toks: Vec<String> = faces
            .iter()
            .map(|g| {
                let im = g.perm.images();
                format!("{} {}{}{}{}", g.tet, im[0], im[1], im[2], im[3])
            })
            .collect();
        out.push_str(&toks.join("  "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::tri::{Gluing, Triangulation};

    fn one_tet_example() -> Triangulation {
        let p = Perm4::new([3, 2, 1, 0]).unwrap();
        let r = Perm4::new([0, 2, 1, 3]).unwrap();
        Triangulation::from_gluings(
            "one-tet",
            vec![[
                Gluing { tet: 0, perm: p },
                Gluing { tet: 0, perm: r },
                Gluing { tet: 0, perm: r },
                Gluing { tet: 0, perm: p },
            ]],
        )
    }

    #[test]
    fn json_roundtrip() {
        let t = one_tet_example();
        let v = triangulation_to_json(&t);
        let t2 = triangulation_from_json(&v).unwrap();
        assert_eq!(t.gluings(), t2.gluings());
        // idempotent second pass
        assert_eq!(v, triangulation_to_json(&t2));
    }

    #[test]
    fn plain_roundtrip() {
        let t = one_tet_example();
        let s = triangulation_to_plain(&t);
        let t2 = triangulation_from_plain("one-tet", &s).unwrap();
        assert_eq!(t.gluings(), t2.gluings());
    }

    #[test]
    fn malformed_perm_token() {
        let err = triangulation_from_plain("x", "0 0134  0 0123  0 0123  0 0123");
        assert!(matches!(err, Err(IoError::Parse { .. })));
    }
}
