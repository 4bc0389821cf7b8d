//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` with
//! `u < v`, sorted lexicographically, each terminated by `\n`.

use std::io::{BufRead, Write};
use std::path::Path;

use super::{Graph, GraphError};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    let edges = g.edges();
    writeln!(out, "{} {}", g.n(), edges.len())?;
    for (u, v) in edges {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn parse_edge_list<R: BufRead>(input: R) -> Result<Graph, GraphError> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| GraphError::Parse("missing header".into()))??;
    let (n, m) = pair(&header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        edges.push(pair(&line)?);
    }
    if edges.len() != m {
        return Err(GraphError::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::from_edges(n, &edges)?;
    if g.edge_count() != m {
        return Err(GraphError::Parse("repeated edge".into()));
    }
    Ok(g)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, GraphError> {
    let file = std::fs::File::open(path)?;
    parse_edge_list(std::io::BufReader::new(file))
}

fn pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse(format!("expected two integers, got {line:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, gnp};

    #[test]
    fn exact_text_format() {
        let mut buf = Vec::new();
        write_edge_list(&cycle(4), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn round_trip() {
        let g = gnp(60, 0.2, 4).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = parse_edge_list(buf.as_slice()).unwrap();
        assert!(back.same_edges(&g));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_edge_list("3 2\n0 1\n".as_bytes()).is_err());
        assert!(parse_edge_list("3 1\n0 x\n".as_bytes()).is_err());
        assert!(parse_edge_list("3 1\n0 5\n".as_bytes()).is_err());
        assert!(parse_edge_list("".as_bytes()).is_err());
    }
}
