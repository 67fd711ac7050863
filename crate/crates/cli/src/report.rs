//! Text and JSON renderings of command results. All rationals print as
//! exact `p/q` strings.

use std::io::Write;
use std::path::Path;

use serde_json::json;

use embtool_core::embedding::{Embedding, EmbeddingReport, FractionalWitness};
use embtool_core::hypergraph::{Hypergraph, VertexSet};
use embtool_core::ratlp::Rational;

fn set_names(h: &Hypergraph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| h.label(v).to_string()).collect()
}

pub(crate) fn emb(out: &mut impl Write, h: &Hypergraph, w: &FractionalWitness, json: bool) {
    if json {
        let weights: Vec<_> = w
            .weights
            .iter()
            .map(|(s, x)| json!({ "set": set_names(h, *s), "weight": x.to_string() }))
            .collect();
        let doc = json!({
            "emb": w.embedding_power().to_string(),
            "w_star": w.w_star.to_string(),
            "K": w.scale.to_string(),
            "weights": weights,
            "component": w.component.map(|c| set_names(h, c)),
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = writeln!(out, "emb = {}, K = {}", w.embedding_power(), w.scale);
    let _ = writeln!(out, "w_star = {}", w.w_star);
    if let Some(c) = w.component {
        let _ = writeln!(
            out,
            "note: hypergraph is disconnected; optimum attained on component {}",
            h.set_to_string(c)
        );
    }
    for (s, x) in &w.weights {
        let _ = writeln!(out, "weight {} : {}", set_names(h, *s).join(" "), x);
    }
}

pub(crate) fn witness_file(h: &Hypergraph, w: &FractionalWitness) -> String {
    let mut text = format!("w_star: {}\nK: {}\n", w.w_star, w.scale);
    for (s, x) in &w.weights {
        text.push_str(&format!("weight {} : {}\n", set_names(h, *s).join(" "), x));
    }
    text
}

pub(crate) fn embk(
    out: &mut impl Write,
    h: &Hypergraph,
    k: usize,
    wed: usize,
    e: &Embedding,
    json: bool,
) {
    let power = Rational::new(k.into(), wed.into());
    if json {
        let witness: Vec<_> = e.images().iter().map(|&s| set_names(h, s)).collect();
        let doc = json!({
            "k": k,
            "wed": wed,
            "emb_k": power.to_string(),
            "witness": witness,
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = writeln!(out, "k = {k}");
    let _ = writeln!(out, "wed = {wed}");
    let _ = writeln!(out, "emb_k = {power}");
    for (i, &s) in e.images().iter().enumerate() {
        let _ = writeln!(out, "map {}: {}", i + 1, set_names(h, s).join(" "));
    }
}

pub(crate) fn verify(out: &mut impl Write, h: &Hypergraph, rep: &EmbeddingReport, json: bool) {
    if json {
        let doc = json!({
            "valid": rep.valid,
            "violations": rep.violations,
            "wed": rep.wed,
            "ed": rep.ed,
            "vertex_depths": (0..h.vertex_count())
                .map(|v| json!({ "vertex": h.label(v), "depth": rep.vertex_depths[v] }))
                .collect::<Vec<_>>(),
            "edge_weak_depths": rep.edge_weak_depths,
            "edge_depths": rep.edge_depths,
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = writeln!(out, "valid = {}", rep.valid);
    for v in &rep.violations {
        let _ = writeln!(out, "violation: {v}");
    }
    let _ = writeln!(out, "wed = {}", rep.wed);
    let _ = writeln!(out, "ed = {}", rep.ed);
    for v in 0..h.vertex_count() {
        let _ = writeln!(out, "depth {} = {}", h.label(v), rep.vertex_depths[v]);
    }
    for (i, &e) in h.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "edge {} : weak depth {}, depth {}",
            h.set_to_string(e),
            rep.edge_weak_depths[i],
            rep.edge_depths[i]
        );
    }
}

#[derive(Default)]
pub(crate) struct WidthsReport {
    pub acyclic: Option<bool>,
    pub chordal: Option<bool>,
    pub fhw: Option<Rational>,
    pub proper_tds: Option<Vec<Vec<VertexSet>>>,
}

pub(crate) fn widths(out: &mut impl Write, h: &Hypergraph, r: &WidthsReport, json: bool) {
    if json {
        let tds = r.proper_tds.as_ref().map(|tds| {
            tds.iter()
                .map(|bags| bags.iter().map(|&b| set_names(h, b)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        });
        let doc = json!({
            "acyclic": r.acyclic,
            "chordal": r.chordal,
            "fhw": r.fhw.as_ref().map(|v| v.to_string()),
            "proper_td_count": r.proper_tds.as_ref().map(Vec::len),
            "proper_tds": tds,
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    if let Some(a) = r.acyclic {
        let _ = writeln!(out, "acyclic = {a}");
    }
    if let Some(c) = r.chordal {
        let _ = writeln!(out, "chordal = {c}");
    }
    if let Some(tds) = &r.proper_tds {
        let _ = writeln!(out, "proper tree decompositions = {}", tds.len());
        for (i, bags) in tds.iter().enumerate() {
            let shown: Vec<String> = bags.iter().map(|&b| h.set_to_string(b)).collect();
            let _ = writeln!(out, "td {}: {}", i + 1, shown.join(" "));
        }
    }
    if let Some(v) = &r.fhw {
        let _ = writeln!(out, "fhw = {v}");
    }
}

pub(crate) fn reduce(
    out: &mut impl Write,
    size: usize,
    depth: usize,
    output: &Path,
    sidecar: &Path,
    json: bool,
) {
    if json {
        let doc = json!({
            "instance_size": size,
            "depth_bound": depth,
            "output": output.display().to_string(),
            "sidecar": sidecar.display().to_string(),
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = writeln!(out, "instance size = {size}");
    let _ = writeln!(out, "depth bound = {depth}");
    let _ = writeln!(out, "wrote {} and {}", output.display(), sidecar.display());
}

pub(crate) fn eval(out: &mut impl Write, semiring: &str, value: &str, json: bool) {
    if json {
        let doc = json!({ "semiring": semiring, "value": value });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = writeln!(out, "value = {value}");
}

pub(crate) fn family(out: &mut impl Write, h: &Hypergraph, path: Option<&Path>, json: bool) {
    if json {
        let edges: Vec<Vec<String>> =
            h.edges().iter().map(|&e| set_names(h, e)).collect();
        let doc = json!({
            "vertices": h.labels(),
            "edges": edges,
            "output": path.map(|p| p.display().to_string()),
        });
        let _ = writeln!(out, "{doc}");
        return;
    }
    let _ = write!(out, "{}", h.to_text());
    if let Some(p) = path {
        let _ = writeln!(out, "wrote {}", p.display());
    }
}
