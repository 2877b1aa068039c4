//! Plain-text polytope files: one vertex per line, three integers separated
//! by single spaces, lines sorted lexicographically.
//!
//! The reader is lenient: blank lines, `#` comments, extra whitespace and
//! unsorted or repeated lines are accepted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::IntVec3;

pub fn parse_points(text: &str) -> Result<Vec<IntVec3>> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::PolytopeFormat {
                line: i + 1,
                message: format!("expected 3 integers, found {} fields", fields.len()),
            });
        }
        let mut v = [0i64; 3];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::PolytopeFormat {
                line: i + 1,
                message: format!("'{field}' is not an integer"),
            })?;
        }
        points.push(IntVec3(v));
    }
    if points.is_empty() {
        return Err(Error::PolytopeFormat {
            line: 0,
            message: "no points".into(),
        });
    }
    Ok(points)
}

/// Canonical form: sorted, deduplicated, newline-terminated.
pub fn write_points(points: &[IntVec3]) -> String {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = String::new();
    for p in sorted {
        let [x, y, z] = p.0;
        writeln!(out, "{x} {y} {z}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_and_writes() {
        let pts =
            parse_points("# octahedron\n1 0 0\n-1 0 0\n\n0 1 0\n0 -1 0\n0 0 1\n0 0 -1\n").unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(
            write_points(&pts),
            "-1 0 0\n0 -1 0\n0 0 -1\n0 0 1\n0 1 0\n1 0 0\n"
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            parse_points("1 2\n"),
            Err(Error::PolytopeFormat { line: 1, .. })
        ));
        assert!(matches!(
            parse_points("1 2 3\n1 x 3"),
            Err(Error::PolytopeFormat { line: 2, .. })
        ));
        assert!(parse_points("\n# nothing\n").is_err());
    }

    proptest! {
        #[test]
        fn canonical_text_is_a_fixed_point(v in prop::collection::vec(prop::array::uniform3(-50i64..50), 1..20)) {
            let pts: Vec<IntVec3> = v.into_iter().map(IntVec3).collect();
            let text = write_points(&pts);
            prop_assert_eq!(write_points(&parse_points(&text).unwrap()), text);
        }
    }
}
