//! Text formats: plain edge lists, graph6, and two-coloring files.
//!
//! Edge list: first non-blank line is the order `N`, then one `u v` pair per line.
//! Coloring file: header `red-of-complete N`, then the red edges as `u v` lines.
//! Lines starting with `#` are ignored in both.

use super::{Graph, GraphBuilder, TwoColoring};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn parse_edges<'a>(
    order: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph> {
    let mut b = GraphBuilder::new(order);
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 {
            return parse_err(ln, format!("expected `u v`, got `{l}`"));
        }
        let u: usize = parts[0].parse().or_else(|_| parse_err(ln, "bad vertex id"))?;
        let v: usize = parts[1].parse().or_else(|_| parse_err(ln, "bad vertex id"))?;
        if u >= order || v >= order {
            return parse_err(ln, format!("vertex out of range for order {order}"));
        }
        if u == v {
            return parse_err(ln, format!("self-loop at {u}"));
        }
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let Some((ln, first)) = lines.next() else {
        return parse_err(1, "empty input");
    };
    let order: usize = first.parse().or_else(|_| parse_err(ln, "expected vertex count"))?;
    parse_edges(order, lines)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<TwoColoring> {
    let mut lines = content_lines(text);
    let Some((ln, first)) = lines.next() else {
        return parse_err(1, "empty input");
    };
    let order = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["red-of-complete", n] => n.parse().or_else(|_| parse_err(ln, "bad order"))?,
        _ => return parse_err(ln, "expected header `red-of-complete N`"),
    };
    Ok(TwoColoring::from_red(parse_edges(order, lines)?))
}

pub fn write_coloring(c: &TwoColoring) -> String {
    let mut s = format!("red-of-complete {}\n", c.order());
    for (u, v) in c.red().edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for sh in [12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for sh in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> sh) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&c| !(63..=126).contains(&c)) {
        return parse_err(1, "graph6 byte outside 63..=126");
    }
    let (n, rest) = match bytes {
        [] => return parse_err(1, "empty graph6 string"),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return parse_err(1, "truncated graph6 header");
            }
            let n = tail[..6].iter().fold(0usize, |a, &c| a << 6 | (c - 63) as usize);
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return parse_err(1, "truncated graph6 header");
            }
            let n = tail[..3].iter().fold(0usize, |a, &c| a << 6 | (c - 63) as usize);
            (n, &tail[3..])
        }
        [c, tail @ ..] => ((c - 63) as usize, tail),
    };
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != need {
        return parse_err(1, format!("graph6 body has {} bytes, expected {need}", rest.len()));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen;
    use proptest::prelude::*;

    #[test]
    fn parses_edge_list() {
        let g = parse_edge_list("3\n0 1\n1 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("3\n0 1\n0 3\n").unwrap_err(),
            Error::Parse { line: 3, msg: "vertex out of range for order 3".into() }
        );
        assert!(matches!(parse_edge_list("2\n1 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn known_graph6_strings() {
        // Standard encodings: K4 is "C~", the Petersen graph "IheA@GUAo".
        assert_eq!(to_graph6(&gen::complete(4)), "C~");
        assert_eq!(to_graph6(&gen::path(3)), "Bg");
        assert_eq!(to_graph6(&gen::complete(3)), "Bw");
        let p = from_graph6("IheA@GUAo").unwrap();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(to_graph6(&p), "IheA@GUAo");
    }

    #[test]
    fn large_order_header() {
        let g = gen::cycle(100);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn coloring_round_trip() {
        let c = TwoColoring::from_red(gen::disjoint_cliques(&[2, 3]));
        let text = write_coloring(&c);
        assert!(text.starts_with("red-of-complete 5\n"));
        assert_eq!(parse_coloring(&text).unwrap(), c);
        assert!(parse_coloring("complete 5\n").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..70, seed in any::<u64>(), p in 0.0f64..1.0) {
            let g = gen::gnp_seeded(n, p, seed);
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
