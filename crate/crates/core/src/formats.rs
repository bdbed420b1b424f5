//! Line-oriented instance formats. Blank lines and lines starting with `#` or `c` are skipped.
//!
//! * CNF: DIMACS (`p cnf V C`, clauses terminated by `0`, possibly spanning lines).
//! * 3-DM: first line `m`, then one triplet `a b c` per line, 1-based.
//! * Digraph: first line `n`, then one arc `u v` per line, 1-based.
//! * ES family: one `k`-subset per line, space-separated 1-based indices.

use crate::error::{Error, Result};
use crate::gadgets::{CnfInstance, Digraph, EsInstance, ThreeDmInstance};
use crate::subset::Subset;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c') && !l.starts_with('%'))
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<T>().map_err(|_| Error::parse(line, format!("expected a number, got {tok:?}"))))
        .collect()
}

fn precondition_at(line: usize, e: Error) -> Error {
    match e {
        Error::Precondition(m) => Error::parse(line, m),
        other => other,
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last = 0;
    for (line, body) in content_lines(text) {
        last = line;
        if let Some(rest) = body.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                return Err(Error::parse(line, "expected a single `p cnf <vars> <clauses>` header"));
            }
            let v = numbers::<usize>(line, parts[1])?[0];
            let c = numbers::<usize>(line, parts[2])?[0];
            header = Some((v, c, line));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(line, "clause before `p cnf` header"));
        }
        for lit in numbers::<i64>(line, body)? {
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((vars, count, header_line)) = header else {
        return Err(Error::parse(1, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::parse(
            header_line,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfInstance::new(vars, clauses).map_err(|e| precondition_at(last, e))
}

fn header_count<'a>(text: &'a str, what: &str) -> Result<(usize, Vec<(usize, &'a str)>)> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| Error::parse(1, format!("missing {what} header")))?;
    let head = numbers::<usize>(line, first)?;
    if head.len() != 1 {
        return Err(Error::parse(line, format!("header must be a single {what}")));
    }
    Ok((head[0], lines.collect()))
}

pub fn parse_3dm(text: &str) -> Result<ThreeDmInstance> {
    let (m, rest) = header_count(text, "m")?;
    let mut triplets = Vec::with_capacity(rest.len());
    for (line, body) in rest {
        let t = numbers::<usize>(line, body)?;
        if t.len() != 3 {
            return Err(Error::parse(line, format!("expected 3 coordinates, got {}", t.len())));
        }
        let triplet = [t[0], t[1], t[2]];
        ThreeDmInstance::new(m, triplets.iter().copied().chain([triplet]).collect())
            .map_err(|e| precondition_at(line, e))?;
        triplets.push(triplet);
    }
    ThreeDmInstance::new(m, triplets)
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (n, rest) = header_count(text, "vertex count")?;
    let mut arcs = Vec::with_capacity(rest.len());
    for (line, body) in rest {
        let uv = numbers::<usize>(line, body)?;
        if uv.len() != 2 {
            return Err(Error::parse(line, format!("expected `u v`, got {} numbers", uv.len())));
        }
        if uv.iter().any(|&x| x < 1 || x > n) {
            return Err(Error::parse(line, format!("vertex outside 1..={n}")));
        }
        let arc = (uv[0] - 1, uv[1] - 1);
        Digraph::new(n, arcs.iter().copied().chain([arc]).collect()).map_err(|e| precondition_at(line, e))?;
        arcs.push(arc);
    }
    Digraph::new(n, arcs)
}

/// Parses an explicit family over `[n]`. `k` defaults to the size of the first listed set;
/// an empty file needs `k`.
pub fn parse_es_family(text: &str, n: usize, k: Option<usize>) -> Result<EsInstance> {
    let mut members = Vec::new();
    let mut k = k;
    for (line, body) in content_lines(text) {
        let elements = numbers::<usize>(line, body)?;
        if elements.iter().any(|&e| e < 1 || e > n) {
            return Err(Error::parse(line, format!("index outside 1..={n}")));
        }
        let s = Subset::from_elements(elements.iter().map(|e| e - 1));
        if s.len() != elements.len() {
            return Err(Error::parse(line, "repeated index"));
        }
        let want = *k.get_or_insert(s.len());
        if s.len() != want {
            return Err(Error::parse(line, format!("expected a {want}-subset, got {} indices", s.len())));
        }
        members.push(s);
    }
    let k = k.ok_or_else(|| Error::Precondition("empty family needs an explicit k".into()))?;
    EsInstance::explicit(n, k, &members)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs() {
        let cnf = parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n2 3\n0\n").unwrap();
        assert_eq!(cnf.vars(), 3);
        assert_eq!(cnf.clauses(), &[vec![1, -2], vec![2, 3]]);
        let err = parse_dimacs("p cnf 2 1\n1 5 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_dimacs("1 2 0\n").unwrap_err().is_parse());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").unwrap_err().is_parse());
    }

    #[test]
    fn three_dm() {
        let inst = parse_3dm("2\n1 1 1\n2 2 2\n").unwrap();
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.triplets().len(), 2);
        let err = parse_3dm("2\n1 1 1\n1 3 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_3dm("2\n1 1\n").unwrap_err().is_parse());
    }

    #[test]
    fn digraph() {
        let g = parse_digraph("3\n1 2\n2 3\n").unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (1, 2)]);
        assert!(matches!(parse_digraph("3\n1 1\n").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(parse_digraph("3\n1 x\n").unwrap_err().is_parse());
    }

    #[test]
    fn es_family() {
        let es = parse_es_family("1 3 6\n# comment\n2 4 5\n", 6, None).unwrap();
        assert_eq!(es.k(), 3);
        assert!(es.query(Subset::from_elements([0, 2, 5])));
        assert!(!es.query(Subset::from_elements([0, 2, 4])));
        assert!(parse_es_family("1 2\n1 2 3\n", 6, None).unwrap_err().is_parse());
        assert!(parse_es_family("1 7\n", 6, None).unwrap_err().is_parse());
        assert_eq!(parse_es_family("", 6, Some(2)).unwrap().k(), 2);
    }
}
