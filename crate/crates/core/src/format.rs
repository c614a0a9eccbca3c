//! Line-oriented network file format.
//!
//! ```text
//! # Figure-1 style example
//! n 8
//! d 6
//! s 0
//! t 7
//! e 0 0 1 0.9
//! ```
//!
//! `n` and `d` are optional. Without `n`, the node set is every link endpoint
//! plus the two terminals. `#` starts a comment anywhere on a line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::network::{Link, Network};

/// Parses a network, taking the diameter from the `d` line.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    parse_network_with_diameter(text, None)
}

/// Parses a network; `diameter` overrides any `d` line.
pub fn parse_network_with_diameter(text: &str, diameter: Option<usize>) -> Result<Network, ParseError> {
    let mut node_count: Option<usize> = None;
    let mut file_diameter = None;
    let mut source: Option<(usize, usize)> = None;
    let mut terminal: Option<(usize, usize)> = None;
    let mut links: Vec<(usize, Link)> = Vec::new();
    let mut ids = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = fields.split_first() else {
            continue;
        };
        let malformed = |message: String| ParseError::Malformed { line, message };
        let int = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| malformed(format!("expected a non-negative integer, found `{tok}`")))
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(malformed(format!(
                    "`{directive}` takes {n} argument(s), found {}",
                    args.len()
                )))
            }
        };
        match directive {
            "n" => {
                arity(1)?;
                set_once(&mut node_count, int(args[0])?, line, 'n')?;
            }
            "d" => {
                arity(1)?;
                set_once(&mut file_diameter, int(args[0])?, line, 'd')?;
            }
            "s" => {
                arity(1)?;
                set_once(&mut source, (int(args[0])?, line), line, 's')?;
            }
            "t" => {
                arity(1)?;
                set_once(&mut terminal, (int(args[0])?, line), line, 't')?;
            }
            "e" => {
                arity(4)?;
                let id = int(args[0])?;
                let u = int(args[1])?;
                let v = int(args[2])?;
                let p: f64 = args[3]
                    .parse()
                    .map_err(|_| malformed(format!("expected a probability, found `{}`", args[3])))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(ParseError::ReliabilityOutOfRange { line, value: p });
                }
                if !ids.insert(id) {
                    return Err(ParseError::DuplicateLink { line, id });
                }
                links.push((line, Link::new(id, u, v, p)));
            }
            other => return Err(malformed(format!("unknown directive `{other}`"))),
        }
    }

    let (source, s_line) = source.ok_or(ParseError::Missing {
        line: last_line,
        directive: 's',
    })?;
    let (terminal, t_line) = terminal.ok_or(ParseError::Missing {
        line: last_line,
        directive: 't',
    })?;
    if source == terminal {
        return Err(ParseError::SameTerminals {
            line: s_line.max(t_line),
        });
    }
    let diameter = diameter.or(file_diameter).ok_or(ParseError::Missing {
        line: last_line,
        directive: 'd',
    })?;

    let nodes: BTreeSet<usize> = match node_count {
        Some(n) => {
            for (node, line) in [(source, s_line), (terminal, t_line)] {
                if node >= n {
                    return Err(ParseError::UnknownNode { line, node });
                }
            }
            for (line, l) in &links {
                for node in [l.endpoints.0, l.endpoints.1] {
                    if node >= n {
                        return Err(ParseError::UnknownNode { line: *line, node });
                    }
                }
            }
            (0..n).collect()
        }
        None => links
            .iter()
            .flat_map(|(_, l)| [l.endpoints.0, l.endpoints.1])
            .chain([source, terminal])
            .collect(),
    };

    let links = links.into_iter().map(|(_, l)| l).collect();
    Ok(Network::new(nodes, links, source, terminal, diameter).expect("parser establishes every network invariant"))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, directive: char) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::Malformed {
            line,
            message: format!("repeated `{directive}` line"),
        });
    }
    *slot = Some(value);
    Ok(())
}

/// Serializes a network. Reliabilities carry 17 significant digits, so
/// parsing the output reproduces every value bit-exactly. Isolated
/// non-terminal nodes are not preserved.
pub fn write_network(net: &Network) -> String {
    let mut out = String::new();
    writeln!(out, "d {}", net.diameter()).unwrap();
    writeln!(out, "s {}", net.source()).unwrap();
    writeln!(out, "t {}", net.terminal()).unwrap();
    for l in net.links() {
        writeln!(
            out,
            "e {} {} {} {}",
            l.id,
            l.endpoints.0,
            l.endpoints.1,
            format_significant(l.reliability, 17)
        )
        .unwrap();
    }
    out
}

/// Plain decimal rendering of `x` rounded to `digits` significant digits,
/// with trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x.abs());
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i64 = exp.parse().unwrap();
    let mantissa_digits: String = mantissa.chars().filter(|c| *c != '.').collect();

    let mut body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), mantissa_digits)
    } else {
        let int_len = exp as usize + 1;
        if mantissa_digits.len() <= int_len {
            format!("{}{}", mantissa_digits, "0".repeat(int_len - mantissa_digits.len()))
        } else {
            format!("{}.{}", &mantissa_digits[..int_len], &mantissa_digits[int_len..])
        }
    };
    if body.contains('.') {
        while body.ends_with('0') {
            body.pop();
        }
        if body.ends_with('.') {
            body.pop();
        }
    }
    if x < 0.0 {
        body.insert(0, '-');
    }
    body
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let g = parse_network("n 8\nd 6\ns 0\nt 7\ne 0 0 1 0.9\ne 1 1 7 0.9").unwrap();
        assert_eq!(g.link_count(), 2);
        assert_eq!((g.source(), g.terminal(), g.diameter()), (0, 7, 6));
        assert_eq!(g.nodes().len(), 8);
    }

    #[test]
    fn comments_and_implied_nodes() {
        let g = parse_network("# header\ns 0 # source\nt 2\nd 2\n\ne 5 0 1 0.5\ne 9 1 2 1\n").unwrap();
        assert_eq!(g.nodes().iter().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(g.link(9).unwrap().perfect);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases: &[(&str, ParseError)] = &[
            (
                "s 0\nt 1\nd 1\ne 0 0 1 1.5",
                ParseError::ReliabilityOutOfRange { line: 4, value: 1.5 },
            ),
            (
                "s 0\nt 1\nd 1\ne 0 0 1 0.5\ne 0 1 0 0.5",
                ParseError::DuplicateLink { line: 5, id: 0 },
            ),
            (
                "n 2\ns 0\nt 1\nd 1\ne 0 0 2 0.5",
                ParseError::UnknownNode { line: 5, node: 2 },
            ),
            ("n 2\ns 0\nt 5\nd 1", ParseError::UnknownNode { line: 3, node: 5 }),
            (
                "s 0\nd 1\ne 0 0 1 0.5",
                ParseError::Missing {
                    line: 3,
                    directive: 't',
                },
            ),
            (
                "t 0\nd 1",
                ParseError::Missing {
                    line: 2,
                    directive: 's',
                },
            ),
            (
                "s 0\nt 1",
                ParseError::Missing {
                    line: 2,
                    directive: 'd',
                },
            ),
            ("s 1\nt 1\nd 1", ParseError::SameTerminals { line: 2 }),
        ];
        for (text, expected) in cases {
            assert_eq!(&parse_network(text).unwrap_err(), expected, "input {text:?}");
        }
        for bad in [
            "s 0\nt 1\nd 1\ne 0 0 1",
            "s x\nt 1\nd 1",
            "q 1",
            "s 0\ns 1\nt 2\nd 1",
            "s 0\nt 1\nd 1\ne 0 0 1 nan",
        ] {
            let err = parse_network(bad).unwrap_err();
            assert!(
                matches!(
                    err,
                    ParseError::Malformed { .. } | ParseError::ReliabilityOutOfRange { .. }
                ),
                "{bad:?} -> {err:?}"
            );
        }
    }

    #[test]
    fn diameter_override() {
        let g = parse_network_with_diameter("s 0\nt 1\nd 4\ne 0 0 1 0.5", Some(1)).unwrap();
        assert_eq!(g.diameter(), 1);
        let g = parse_network_with_diameter("s 0\nt 1\ne 0 0 1 0.5", Some(3)).unwrap();
        assert_eq!(g.diameter(), 3);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.9, 17), "0.90000000000000002");
        assert_eq!(format_significant(0.265625, 12), "0.265625");
        assert_eq!(format_significant(1.0, 17), "1");
        assert_eq!(format_significant(0.0, 17), "0");
        assert_eq!(format_significant(1.25e-7, 5), "0.000000125");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(123.5, 3), "124");
    }

    #[test]
    fn written_network_reparses() {
        let text = "s 0\nt 2\nd 2\ne 3 0 1 0.1\ne 7 1 2 0.7000000000000001\n";
        let g = parse_network(text).unwrap();
        let again = parse_network(&write_network(&g)).unwrap();
        assert_eq!(g, again);
    }
}
