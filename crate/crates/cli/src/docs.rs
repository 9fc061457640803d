//! Plain-text input documents for groups and automorphisms.
//!
//! Both formats are `key = value` lines; blank lines and lines starting
//! with `#` are skipped.  Matrices use the row text form (`;` between rows,
//! `,` between entries), scalars the rational literal grammar.
//!
//! Group document keys: `ring` (`Q` or `Z[1/p]`), `n`, `theta`, optional
//! `label`.  Automorphism document keys: `N`, `eps` (`+1` or `-1`),
//! optional `z` (comma-separated vector, defaults to zero).

use std::collections::BTreeMap;

use reispec_core::ring::parse_rational;
use reispec_core::{AutoDesc, GroupDesc, Matrix, Rational, Ring, Sign};

#[derive(Debug)]
pub struct DocError(pub String);

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parse_pairs(text: &str, what: &str) -> Result<BTreeMap<String, String>, DocError> {
    let mut pairs = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(DocError(format!(
                "{what} line {}: expected `key = value`, got {line:?}",
                lineno + 1
            )));
        };
        pairs.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(pairs)
}

fn parse_ring(text: &str) -> Result<Ring, DocError> {
    if text == "Q" {
        return Ok(Ring::Rationals);
    }
    if let Some(inner) = text.strip_prefix("Z[1/").and_then(|s| s.strip_suffix(']')) {
        let p: u32 = inner
            .parse()
            .map_err(|_| DocError(format!("ring {text:?}: bad prime {inner:?}")))?;
        return Ring::p_local(p).map_err(|e| DocError(format!("ring {text:?}: {e}")));
    }
    Err(DocError(format!(
        "ring {text:?}: expected `Q` or `Z[1/p]` with p prime"
    )))
}

/// Parse and validate a group document into a checked descriptor.
pub fn parse_group(text: &str) -> Result<GroupDesc, DocError> {
    let pairs = parse_pairs(text, "group file")?;
    let ring_text = pairs
        .get("ring")
        .ok_or_else(|| DocError("group file: missing `ring`".into()))?;
    let ring = parse_ring(ring_text)?;
    let n: usize = pairs
        .get("n")
        .ok_or_else(|| DocError("group file: missing `n`".into()))?
        .parse()
        .map_err(|_| DocError("group file: `n` must be a positive integer".into()))?;
    let theta: Matrix = pairs
        .get("theta")
        .ok_or_else(|| DocError("group file: missing `theta`".into()))?
        .parse()
        .map_err(|e| DocError(format!("group file: theta: {e}")))?;
    if theta.rows() != n || theta.cols() != n {
        return Err(DocError(format!(
            "group file: theta is {}x{} but n = {n}",
            theta.rows(),
            theta.cols()
        )));
    }
    let group = GroupDesc::new(ring, theta).map_err(|e| DocError(format!("group file: {e}")))?;
    Ok(match pairs.get("label") {
        Some(label) => group.with_label(label.clone()),
        None => group,
    })
}

/// Parse an automorphism document; compatibility with a particular group is
/// checked by the caller.
pub fn parse_auto(text: &str, n: usize) -> Result<AutoDesc, DocError> {
    let pairs = parse_pairs(text, "auto file")?;
    let n_mat: Matrix = pairs
        .get("N")
        .ok_or_else(|| DocError("auto file: missing `N`".into()))?
        .parse()
        .map_err(|e| DocError(format!("auto file: N: {e}")))?;
    let eps = match pairs
        .get("eps")
        .ok_or_else(|| DocError("auto file: missing `eps`".into()))?
        .as_str()
    {
        "+1" | "1" => Sign::Plus,
        "-1" => Sign::Minus,
        other => {
            return Err(DocError(format!(
                "auto file: eps must be `+1` or `-1`, got {other:?}"
            )))
        }
    };
    let z: Vec<Rational> = match pairs.get("z") {
        Some(text) => text
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| DocError(format!("auto file: z: {e}"))))
            .collect::<Result<_, _>>()?,
        None => vec![Rational::from_integer(0.into()); n],
    };
    Ok(AutoDesc::new(n_mat, eps, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_document_round_trip() {
        let g = parse_group("ring = Z[1/3]\nn = 1\ntheta = -1\nlabel = tiny\n").unwrap();
        assert_eq!(g.ring(), &Ring::p_local(3).unwrap());
        assert_eq!(g.n(), 1);
        assert_eq!(g.label(), Some("tiny"));

        let g = parse_group("# a comment\nring = Q\nn = 2\ntheta = 2,0;0,1/2\n").unwrap();
        assert_eq!(g.n(), 2);
    }

    #[test]
    fn group_document_diagnostics() {
        let cases = [
            ("n = 1\ntheta = 2\n", "missing `ring`"),
            ("ring = Z[1/4]\nn = 1\ntheta = 2\n", "not a prime"),
            ("ring = Q\nn = 2\ntheta = 2\n", "1x1 but n = 2"),
            ("ring = Z[1/2]\nn = 1\ntheta = 3\n", "not invertible"),
            ("ring = Z[1/2]\nn = 1\ntheta = 1/3\n", "outside"),
            ("ring = Q\nn = 1\ntheta = 0\n", "not invertible"),
        ];
        for (text, needle) in cases {
            let err = parse_group(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn auto_document() {
        let a = parse_auto("N = 3\neps = -1\n", 1).unwrap();
        assert_eq!(a.eps, Sign::Minus);
        assert_eq!(a.z.len(), 1);
        let a = parse_auto("N = 0,1;1,0\neps = +1\nz = 1/2,-3\n", 2).unwrap();
        assert_eq!(a.z.len(), 2);
        assert!(parse_auto("N = 1\neps = 2\n", 1).is_err());
    }
}
