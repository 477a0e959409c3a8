//! Graph file formats.
//!
//! Edge list:
//!
//! ```text
//! # polarity-lab k=3 q=4 form=pseudo-symplectic construction=paper n=8 t0=2
//! 0 5
//! ...
//! ```
//!
//! one `u v` pair per line with `u <= v`, canonical 0-based ids, loops as
//! `u u`. The `t0=` key is written only for the trace-one construction.
//!
//! DIMACS: a `p edge <n> <m>` header and 1-based `e u v` lines. Loops cannot
//! be expressed and are dropped with a `c` warning line.

use std::io::{BufRead, Write};

use crate::analysis::{build_graph, VerifyConfig, DEFAULT_SPECTRUM_CAP};
use crate::graph::{Construction, Graph};
use crate::polarity::FormKind;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHeader {
    pub k: usize,
    pub q: u32,
    pub form: FormKind,
    pub construction: Construction,
    pub n: usize,
    pub t0: Option<u16>,
}

impl GraphHeader {
    pub fn line(&self) -> String {
        let mut s = format!(
            "# polarity-lab k={} q={} form={} construction={} n={}",
            self.k,
            self.q,
            self.form.name(),
            self.construction.name(),
            self.n
        );
        if let Some(t0) = self.t0 {
            s.push_str(&format!(" t0={t0}"));
        }
        s
    }

    fn parse(line: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse {
            line: 1,
            msg: msg.to_string(),
        };
        let rest = line
            .strip_prefix("# polarity-lab")
            .ok_or_else(|| err("missing '# polarity-lab' header"))?;
        let (mut k, mut q, mut form, mut construction, mut n, mut t0) =
            (None, None, None, None, None, None);
        for token in rest.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| err(&format!("bad header token '{token}'")))?;
            let bad = || err(&format!("bad value for {key}: '{value}'"));
            match key {
                "k" => k = Some(value.parse().map_err(|_| bad())?),
                "q" => q = Some(value.parse().map_err(|_| bad())?),
                "form" => form = Some(FormKind::parse(value).ok_or_else(bad)?),
                "construction" => construction = Some(Construction::parse(value).ok_or_else(bad)?),
                "n" => n = Some(value.parse().map_err(|_| bad())?),
                "t0" => t0 = Some(value.parse().map_err(|_| bad())?),
                _ => return Err(err(&format!("unknown header key '{key}'"))),
            }
        }
        Ok(GraphHeader {
            k: k.ok_or_else(|| err("header lacks k"))?,
            q: q.ok_or_else(|| err("header lacks q"))?,
            form: form.ok_or_else(|| err("header lacks form"))?,
            construction: construction.ok_or_else(|| err("header lacks construction"))?,
            n: n.ok_or_else(|| err("header lacks n"))?,
            t0,
        })
    }
}

pub fn write_edge_list<W: Write>(w: &mut W, header: &GraphHeader, g: &Graph) -> Result<()> {
    writeln!(w, "{}", header.line())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_dimacs<W: Write>(w: &mut W, g: &Graph) -> Result<()> {
    if g.loop_count() > 0 {
        writeln!(w, "c warning: {} loops omitted", g.loop_count())?;
    }
    writeln!(w, "p edge {} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        if u != v {
            writeln!(w, "e {} {}", u + 1, v + 1)?;
        }
    }
    Ok(())
}

/// Reads an edge list. Labels are restored by rebuilding the graph named in
/// the header; the rebuilt adjacency must agree with the file.
pub fn read_edge_list<R: BufRead>(r: R) -> Result<(GraphHeader, Graph)> {
    let mut lines = r.lines();
    let first = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty file".into(),
    })??;
    let header = GraphHeader::parse(first.trim_end())?;
    let mut edges = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse {
            line: lineno,
            msg: format!("expected 'u v', got '{line}'"),
        };
        let mut parts = line.split_whitespace();
        let u: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() || u > v || v >= header.n {
            return Err(bad());
        }
        edges.push((u, v));
    }

    let labels = match header.construction {
        Construction::Other => Vec::new(),
        construction => {
            let config = VerifyConfig {
                k: header.k,
                q: header.q,
                t0: header.t0,
                form: header.form,
                construction,
                suites: Vec::new(),
                seed: 0,
                trials: 0,
                spectrum_cap: DEFAULT_SPECTRUM_CAP,
            };
            let (rebuilt, _) = build_graph(&config)?;
            if rebuilt.n() != header.n {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("header n={} but parameters give {}", header.n, rebuilt.n()),
                });
            }
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != rebuilt.edges() {
                return Err(Error::Parse {
                    line: 1,
                    msg: "edges do not match the graph named in the header".into(),
                });
            }
            rebuilt.labels().to_vec()
        }
    };
    let g = Graph::from_edges(header.n, &edges, labels);
    Ok((header, g))
}
