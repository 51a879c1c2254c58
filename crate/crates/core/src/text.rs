//! Line-based text format for presentations.
//!
//! ```text
//! # the comb
//! graph comb
//! core 1
//! tail 0 period 2
//! intra 0 0 1
//! inter 0 0 0
//! attach 0 0 0
//! ```
//!
//! Directives: `graph <name>`, `core <n>`, `core_edge <u> <v>`,
//! `tail <t> period <p>`, `intra <t> <i> <j>`, `inter <t> <i> <j>`,
//! `attach <t> <c> <i>`, `hub <t> <h> <i> <s> <d>`. Tails are declared in
//! order and before any rule mentioning them.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::presentation::{EpgPresentation, HubRule, TailSpec};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
}

impl Line<'_> {
    fn arity(&self, n: usize, usage: &str) -> Result<()> {
        if self.words.len() != n + 1 {
            return Err(err(
                self.no,
                format!("{} expects {n} arguments: {usage}", self.words[0]),
            ));
        }
        Ok(())
    }

    fn num(&self, idx: usize) -> Result<usize> {
        let w = self.words[idx];
        w.parse()
            .map_err(|_| err(self.no, format!("expected a nonnegative integer, got {w:?}")))
    }

    fn nums<const N: usize>(&self) -> Result<[usize; N]> {
        let mut out = [0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.num(i + 1)?;
        }
        Ok(out)
    }
}

fn tail_mut(p: &mut EpgPresentation, t: usize, line: usize) -> Result<&mut TailSpec> {
    p.tails
        .get_mut(t)
        .ok_or_else(|| err(line, format!("forward reference: tail {t} is not declared yet")))
}

fn in_range(line: usize, what: &str, v: usize, bound: usize) -> Result<()> {
    if v >= bound {
        return Err(err(line, format!("{what} {v} out of range (must be < {bound})")));
    }
    Ok(())
}

pub fn parse_presentation(text: &str) -> Result<EpgPresentation> {
    let mut p = EpgPresentation::new("unnamed", 0);
    let mut cores_declared = false;
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let line = Line { no, words };
        match line.words[0] {
            "graph" => {
                line.arity(1, "graph <name>")?;
                p.name = line.words[1].to_string();
            }
            "core" => {
                line.arity(1, "core <n>")?;
                if cores_declared {
                    return Err(err(no, "core count declared twice"));
                }
                p.core_count = line.num(1)?;
                cores_declared = true;
            }
            "core_edge" => {
                line.arity(2, "core_edge <u> <v>")?;
                let [u, v] = line.nums()?;
                in_range(no, "core", u, p.core_count)?;
                in_range(no, "core", v, p.core_count)?;
                p.core_edges.push((u, v));
            }
            "tail" => {
                if line.words.len() != 4 || line.words[2] != "period" {
                    return Err(err(no, "tail expects: tail <t> period <p>"));
                }
                let t = line.num(1)?;
                let period = line.num(3)?;
                if t != p.tails.len() {
                    return Err(err(no, format!("tails must be declared in order: expected tail {}", p.tails.len())));
                }
                if period == 0 {
                    return Err(err(no, "period must be ≥ 1"));
                }
                p.tails.push(TailSpec::new(period));
            }
            "intra" | "inter" => {
                line.arity(3, "<t> <i> <j>")?;
                let [t, i, j] = line.nums()?;
                let spec = tail_mut(&mut p, t, no)?;
                in_range(no, "strand", i, spec.period)?;
                in_range(no, "strand", j, spec.period)?;
                if line.words[0] == "intra" {
                    spec.intra.push((i, j));
                } else {
                    spec.inter.push((i, j));
                }
            }
            "attach" => {
                line.arity(3, "attach <t> <c> <i>")?;
                let [t, c, i] = line.nums()?;
                let cores = p.core_count;
                let spec = tail_mut(&mut p, t, no)?;
                in_range(no, "core", c, cores)?;
                in_range(no, "strand", i, spec.period)?;
                spec.attach.push((c, i));
            }
            "hub" => {
                line.arity(5, "hub <t> <h> <i> <s> <d>")?;
                let [t, hub, strand, start, stride] = line.nums()?;
                if stride == 0 {
                    return Err(err(no, "stride must be ≥ 1"));
                }
                let cores = p.core_count;
                let spec = tail_mut(&mut p, t, no)?;
                in_range(no, "core", hub, cores)?;
                in_range(no, "strand", strand, spec.period)?;
                spec.hubs.push(HubRule { hub, strand, start, stride });
            }
            other => return Err(err(no, format!("unknown directive {other:?}"))),
        }
    }
    let problems = p.syntax_problems();
    if !problems.is_empty() {
        return Err(Error::InvalidPresentation(problems.join("; ")));
    }
    Ok(p.normalized())
}

/// Canonical text of a presentation; `parse_presentation` inverts it.
pub fn emit_presentation(pres: &EpgPresentation) -> String {
    let p = pres.clone().normalized();
    let mut out = String::new();
    let _ = writeln!(out, "graph {}", p.name);
    let _ = writeln!(out, "core {}", p.core_count);
    for (u, v) in &p.core_edges {
        let _ = writeln!(out, "core_edge {u} {v}");
    }
    for (t, spec) in p.tails.iter().enumerate() {
        let _ = writeln!(out, "tail {t} period {}", spec.period);
        for (i, j) in &spec.intra {
            let _ = writeln!(out, "intra {t} {i} {j}");
        }
        for (i, j) in &spec.inter {
            let _ = writeln!(out, "inter {t} {i} {j}");
        }
        for (c, i) in &spec.attach {
            let _ = writeln!(out, "attach {t} {c} {i}");
        }
        for h in &spec.hubs {
            let _ = writeln!(out, "hub {t} {} {} {} {}", h.hub, h.strand, h.start, h.stride);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn parse_err(text: &str) -> (usize, String) {
        match parse_presentation(text) {
            Err(Error::Parse { line, msg }) => (line, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn zoo_round_trips() {
        for p in zoo::all() {
            let text = emit_presentation(&p);
            let q = parse_presentation(&text).unwrap();
            assert_eq!(q, p);
            assert_eq!(emit_presentation(&q), text);
        }
    }

    #[test]
    fn ray_file() {
        let text = "# a ray\ngraph ray\ncore 1\ntail 0 period 1\ninter 0 0 0\nattach 0 0 0\n";
        assert_eq!(parse_presentation(text).unwrap(), zoo::ray());
    }

    #[test]
    fn zero_stride() {
        let (line, msg) = parse_err("hub 0 0 0 0 0");
        assert_eq!(line, 1);
        assert!(msg.contains("stride must be ≥ 1"), "{msg}");
    }

    #[test]
    fn forward_reference() {
        let (line, msg) = parse_err("core 1\nintra 0 0 1\ntail 0 period 2\n");
        assert_eq!(line, 2);
        assert!(msg.contains("forward reference"), "{msg}");
    }

    #[test]
    fn arity_and_range_and_unknown() {
        assert_eq!(parse_err("core 1\ncore_edge 0").0, 2);
        let (line, msg) = parse_err("core 1\ntail 0 period 1\nattach 0 3 0");
        assert_eq!(line, 3);
        assert!(msg.contains("out of range"));
        let (line, msg) = parse_err("graph g\n\nbogus 1 2");
        assert_eq!(line, 3);
        assert!(msg.contains("unknown directive"));
    }

    #[test]
    fn semantic_problems_are_reported() {
        let r = parse_presentation("core 2\ncore_edge 0 1\ncore_edge 1 0\n");
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
    }
}
