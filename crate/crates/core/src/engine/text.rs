//! Text formats for sum-of-product instances and weighted graphs.
//!
//! Instance files:
//!
//! ```text
//! semiring: tropical
//! domain x1: 0 1 2
//! factor edge(x1 x2): (0,1)=3 (1,2)=5
//! ```
//!
//! Zero values (`0` for Boolean/counting, `inf` for tropical) are legal on
//! input but never stored. Graph files:
//!
//! ```text
//! n: 6
//! edge 0 1 3
//! edge 1 2
//! ```
//!
//! with the weight omitted meaning semiring one.

use super::{
    BooleanSemiring, CountingSemiring, FactorTable, MaxTimesSemiring, Semiring,
    SumProdInstance, Tropical, TropicalSemiring, WeightedGraph,
};
use crate::error::{Error, Result};
use crate::hypergraph::{strip_comment, Hypergraph, VertexSet};

/// A semiring with a text encoding for its values.
pub trait TextSemiring: Semiring {
    fn name(&self) -> &'static str;
    fn parse_value(&self, text: &str) -> Option<Self::Value>;
    fn format_value(&self, v: &Self::Value) -> String;
}

impl TextSemiring for BooleanSemiring {
    fn name(&self) -> &'static str {
        "boolean"
    }
    fn parse_value(&self, text: &str) -> Option<bool> {
        match text {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        }
    }
    fn format_value(&self, v: &bool) -> String {
        if *v { "1".into() } else { "0".into() }
    }
}

impl TextSemiring for CountingSemiring {
    fn name(&self) -> &'static str {
        "counting"
    }
    fn parse_value(&self, text: &str) -> Option<u64> {
        text.parse().ok()
    }
    fn format_value(&self, v: &u64) -> String {
        v.to_string()
    }
}

impl TextSemiring for TropicalSemiring {
    fn name(&self) -> &'static str {
        "tropical"
    }
    fn parse_value(&self, text: &str) -> Option<Tropical> {
        if text == "inf" {
            Some(Tropical::Infinite)
        } else {
            text.parse().ok().map(Tropical::Finite)
        }
    }
    fn format_value(&self, v: &Tropical) -> String {
        v.to_string()
    }
}

impl TextSemiring for MaxTimesSemiring {
    fn name(&self) -> &'static str {
        "max-times"
    }
    fn parse_value(&self, text: &str) -> Option<u64> {
        text.parse().ok()
    }
    fn format_value(&self, v: &u64) -> String {
        v.to_string()
    }
}

/// Parse an instance file for the given semiring. The file's `semiring:`
/// line must match the semiring's name.
pub fn parse_instance<S: TextSemiring>(
    text: &str,
    semiring: &S,
) -> Result<SumProdInstance<S::Value>> {
    let mut declared: Option<String> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut domains: Vec<Vec<u64>> = Vec::new();
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut tables: Vec<FactorTable<S::Value>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("semiring:") {
            if declared.is_some() {
                return Err(Error::parse(lineno, "duplicate `semiring:` line"));
            }
            declared = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("domain") {
            let (name, values) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "`domain` line missing `:`"))?;
            let name = name.trim().to_string();
            if labels.contains(&name) {
                return Err(Error::parse(lineno, format!("duplicate domain for `{name}`")));
            }
            let mut dom: Vec<u64> = Vec::new();
            for tok in values.split_whitespace() {
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad domain value `{tok}`")))?;
                dom.push(v);
            }
            dom.sort_unstable();
            dom.dedup();
            if dom.is_empty() {
                return Err(Error::parse(lineno, format!("empty domain for `{name}`")));
            }
            labels.push(name);
            domains.push(dom);
        } else if let Some(rest) = line.strip_prefix("factor edge(") {
            let (vars_part, entries_part) = rest
                .split_once("):")
                .ok_or_else(|| Error::parse(lineno, "`factor` line missing `):`"))?;
            let mut edge = VertexSet::EMPTY;
            let mut vars: Vec<usize> = Vec::new();
            for tok in vars_part.split_whitespace() {
                let v = labels
                    .iter()
                    .position(|l| l == tok)
                    .ok_or_else(|| Error::parse(lineno, format!("unknown variable `{tok}`")))?;
                edge.insert(v);
                vars.push(v);
            }
            if vars.is_empty() {
                return Err(Error::parse(lineno, "factor with no variables"));
            }
            let sorted = {
                let mut s = vars.clone();
                s.sort_unstable();
                s
            };
            if sorted != vars {
                return Err(Error::parse(
                    lineno,
                    "factor variables must be listed in declaration order",
                ));
            }
            let mut entries: Vec<(Vec<u64>, S::Value)> = Vec::new();
            for tok in entries_part.split_whitespace() {
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.split_once(")="))
                    .ok_or_else(|| Error::parse(lineno, format!("bad entry `{tok}`")))?;
                let (tuple_part, value_part) = inner;
                let mut tuple: Vec<u64> = Vec::new();
                for t in tuple_part.split(',') {
                    let v: u64 = t
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad tuple value `{t}`")))?;
                    tuple.push(v);
                }
                if tuple.len() != vars.len() {
                    return Err(Error::parse(lineno, format!("entry arity mismatch in `{tok}`")));
                }
                let value = semiring
                    .parse_value(value_part)
                    .ok_or_else(|| Error::parse(lineno, format!("bad value `{value_part}`")))?;
                if semiring.is_zero(&value) {
                    continue; // zeros are representable in files but never stored
                }
                entries.push((tuple, value));
            }
            edges.push(edge);
            tables.push(FactorTable { entries });
        } else {
            return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
        }
    }

    match declared {
        Some(name) if name == semiring.name() => {}
        Some(name) => {
            return Err(Error::input(format!(
                "instance declares semiring `{name}`, expected `{}`",
                semiring.name()
            )))
        }
        None => return Err(Error::input("missing `semiring:` line")),
    }
    let h = Hypergraph::with_labels(labels, edges)?;
    SumProdInstance::new(h, domains, tables, semiring)
}

pub fn write_instance<S: TextSemiring>(
    inst: &SumProdInstance<S::Value>,
    semiring: &S,
) -> String {
    let mut out = format!("semiring: {}\n", semiring.name());
    for (v, dom) in inst.domains.iter().enumerate() {
        let values: Vec<String> = dom.iter().map(u64::to_string).collect();
        out.push_str(&format!(
            "domain {}: {}\n",
            inst.hypergraph.label(v),
            values.join(" ")
        ));
    }
    for (idx, table) in inst.factors.iter().enumerate() {
        let names: Vec<&str> = inst.hypergraph.edges()[idx]
            .iter()
            .map(|v| inst.hypergraph.label(v))
            .collect();
        let entries: Vec<String> = table
            .entries
            .iter()
            .map(|(tuple, value)| {
                let vals: Vec<String> = tuple.iter().map(u64::to_string).collect();
                format!("({})={}", vals.join(","), semiring.format_value(value))
            })
            .collect();
        out.push_str(&format!(
            "factor edge({}): {}\n",
            names.join(" "),
            entries.join(" ")
        ));
    }
    out
}

/// Parse a weighted graph file; omitted weights are semiring one.
pub fn parse_weighted_graph<S: TextSemiring>(
    text: &str,
    semiring: &S,
) -> Result<WeightedGraph<S::Value>> {
    let mut n: Option<usize> = None;
    let mut entries: Vec<((usize, usize), S::Value)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n:") {
            if n.is_some() {
                return Err(Error::parse(lineno, "duplicate `n:` line"));
            }
            n = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| Error::parse(lineno, "`n:` expects a vertex count"))?,
            );
        } else if let Some(rest) = line.strip_prefix("edge") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 && parts.len() != 3 {
                return Err(Error::parse(lineno, "`edge` expects `u v [weight]`"));
            }
            let u: usize = parts[0]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad vertex `{}`", parts[0])))?;
            let v: usize = parts[1]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad vertex `{}`", parts[1])))?;
            let w = if parts.len() == 3 {
                semiring
                    .parse_value(parts[2])
                    .ok_or_else(|| Error::parse(lineno, format!("bad weight `{}`", parts[2])))?
            } else {
                semiring.one()
            };
            if semiring.is_zero(&w) {
                continue;
            }
            entries.push(((u, v), w));
        } else {
            return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
        }
    }
    let n = n.ok_or_else(|| Error::input("missing `n:` line"))?;
    WeightedGraph::new(n, entries, semiring)
}

pub fn write_weighted_graph<S: TextSemiring>(
    g: &WeightedGraph<S::Value>,
    semiring: &S,
) -> String {
    let mut out = format!("n: {}\n", g.vertex_count());
    for (&(u, v), w) in g.edges() {
        out.push_str(&format!("edge {u} {v} {}\n", semiring.format_value(w)));
    }
    out
}
