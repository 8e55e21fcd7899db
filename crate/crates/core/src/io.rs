//! Line-oriented text formats for graphs, instances, graph streams and
//! skeleton families. Serialization is canonical: sorted ids, sorted lines,
//! so identical values produce identical bytes.

use std::collections::HashSet;

use crate::bounded_degree::Skeleton;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::KSetInstance;
use crate::partial::{PairState, PartialGraph};
use crate::vset::VertexSet;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Numbered, comment-stripped, non-blank lines.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .collect()
}

fn parse_id(line: usize, tok: &str, n: usize) -> Result<u32> {
    let v: u32 = tok
        .parse()
        .map_err(|_| perr(line, format!("expected vertex id, got {tok:?}")))?;
    if v as usize >= n {
        return Err(perr(line, format!("vertex id {v} outside 0..{n}")));
    }
    Ok(v)
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected {what}, got {tok:?}")))
}

// ---------------------------------------------------------------------------
// graph files
// ---------------------------------------------------------------------------

pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = content_lines(text);
    parse_graph_lines(&lines)
}

fn parse_graph_lines(lines: &[(usize, &str)]) -> Result<Graph> {
    let mut it = lines.iter();
    let (lno, header) = it
        .next()
        .ok_or_else(|| perr(0, "empty input, expected `graph v1` header"))?;
    if *header != "graph v1" {
        return Err(perr(*lno, format!("expected `graph v1` header, got {header:?}")));
    }
    let (lno, nline) = it
        .next()
        .ok_or_else(|| perr(*lno, "missing `n <count>` line"))?;
    let mut toks = nline.split_whitespace();
    if toks.next() != Some("n") {
        return Err(perr(*lno, format!("expected `n <count>` line, got {nline:?}")));
    }
    let n = parse_usize(*lno, toks.next().unwrap_or(""), "vertex count")?;
    if toks.next().is_some() {
        return Err(perr(*lno, "trailing tokens after vertex count"));
    }

    let mut g = Graph::new(n);
    let mut seen_pairs = HashSet::new();
    let mut seen_labels = HashSet::new();
    for (lno, line) in it {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("label") => {
                let v = parse_id(*lno, toks.next().unwrap_or(""), n)?;
                if !seen_labels.insert(v) {
                    return Err(perr(*lno, format!("duplicate label for vertex {v}")));
                }
                let rest: Vec<&str> = toks.collect();
                if rest.is_empty() {
                    return Err(perr(*lno, "label line missing text"));
                }
                g.set_label(v, rest.join(" ")).map_err(|e| perr(*lno, e.to_string()))?;
            }
            Some("e") => {
                let u = parse_id(*lno, toks.next().unwrap_or(""), n)?;
                let v = parse_id(*lno, toks.next().unwrap_or(""), n)?;
                if toks.next().is_some() {
                    return Err(perr(*lno, "trailing tokens after edge"));
                }
                if u == v {
                    return Err(perr(*lno, format!("self-loop at vertex {u}")));
                }
                let key = (u.min(v), u.max(v));
                if !seen_pairs.insert(key) {
                    return Err(perr(*lno, format!("duplicate edge ({} {})", key.0, key.1)));
                }
                g.add_edge(u, v).map_err(|e| perr(*lno, e.to_string()))?;
            }
            Some(tok) => {
                return Err(perr(*lno, format!("unknown directive {tok:?}")));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::from("graph v1\n");
    out.push_str(&format!("n {}\n", g.n()));
    for (v, label) in g.labels() {
        out.push_str(&format!("label {v} {label}\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// multi-graph streams
// ---------------------------------------------------------------------------

/// Repeated graph blocks separated by `---` lines.
pub fn serialize_graph_stream(graphs: &[Graph]) -> String {
    graphs
        .iter()
        .map(serialize_graph)
        .collect::<Vec<_>>()
        .join("---\n")
}

pub fn parse_graph_stream(text: &str) -> Result<Vec<Graph>> {
    let lines = content_lines(text);
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (lno, line) in lines {
        if line == "---" {
            out.push(parse_graph_lines(&block)?);
            block.clear();
        } else {
            block.push((lno, line));
        }
    }
    if !block.is_empty() {
        out.push(parse_graph_lines(&block)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// instance files
// ---------------------------------------------------------------------------

pub fn parse_instance(text: &str) -> Result<KSetInstance> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (lno, header) = it
        .next()
        .ok_or_else(|| perr(0, "empty input, expected `kset v1` header"))?;
    if *header != "kset v1" {
        return Err(perr(*lno, format!("expected `kset v1` header, got {header:?}")));
    }
    let mut expect_kv = |name: &str| -> Result<usize> {
        let (lno, line) = it
            .next()
            .ok_or_else(|| perr(*lno, format!("missing `{name} <value>` line")))?;
        let mut toks = line.split_whitespace();
        if toks.next() != Some(name) {
            return Err(perr(*lno, format!("expected `{name} <value>` line, got {line:?}")));
        }
        let v = parse_usize(*lno, toks.next().unwrap_or(""), name)?;
        if toks.next().is_some() {
            return Err(perr(*lno, format!("trailing tokens after {name}")));
        }
        Ok(v)
    };
    let n = expect_kv("n")?;
    let k = expect_kv("k")?;

    let (lno, mline) = it
        .next()
        .ok_or_else(|| perr(0, "missing `mode complete|partial` line"))?;
    let complete = match *mline {
        "mode complete" => true,
        "mode partial" => false,
        _ => {
            return Err(perr(
                *lno,
                format!("expected `mode complete` or `mode partial`, got {mline:?}"),
            ))
        }
    };

    let mut connected = Vec::new();
    let mut disconnected = Vec::new();
    let mut seen: HashSet<(bool, Vec<u32>)> = HashSet::new();
    for (lno, line) in it {
        let mut toks = line.split_whitespace();
        let kind = match toks.next() {
            Some("C") => true,
            Some("D") => {
                if complete {
                    return Err(perr(*lno, "`D` lines are forbidden in complete mode"));
                }
                false
            }
            Some(tok) => return Err(perr(*lno, format!("unknown directive {tok:?}"))),
            None => unreachable!(),
        };
        let mut ids = Vec::new();
        for tok in toks {
            ids.push(parse_id(*lno, tok, n)?);
        }
        if ids.len() != k {
            return Err(perr(
                *lno,
                format!("set has {} vertices, expected k = {k}", ids.len()),
            ));
        }
        let set = VertexSet::from_ids(ids.iter().copied());
        if set.len() != k {
            return Err(perr(*lno, "set contains a repeated vertex"));
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if !seen.insert((kind, sorted)) {
            return Err(perr(*lno, "duplicate set line"));
        }
        if kind {
            connected.push(set);
        } else {
            disconnected.push(set);
        }
    }
    let inst = if complete {
        KSetInstance::complete(n, k, connected)
    } else {
        KSetInstance::partial(n, k, connected, disconnected)
    };
    inst.map_err(|e| perr(0, e.to_string()))
}

pub fn serialize_instance(inst: &KSetInstance) -> String {
    let mut out = String::from("kset v1\n");
    out.push_str(&format!("n {}\n", inst.n()));
    out.push_str(&format!("k {}\n", inst.k()));
    out.push_str(&format!(
        "mode {}\n",
        if inst.is_complete() { "complete" } else { "partial" }
    ));
    for s in inst.connected_sets() {
        let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("C {}\n", ids.join(" ")));
    }
    if !inst.is_complete() {
        for s in inst.disconnected_sets() {
            let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("D {}\n", ids.join(" ")));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// skeleton files
// ---------------------------------------------------------------------------

/// One skeleton block: known edges of H, cells, then one `cg` line per
/// collection member listing its edge pairs. Non-edges are implicit: inside
/// a cell every pair is unknown, everywhere else an unlisted pair is a
/// non-edge.
pub fn serialize_skeleton(sk: &Skeleton) -> String {
    let mut out = String::from("skeleton v1\n");
    out.push_str(&format!("n {}\n", sk.h.n()));
    for (u, v) in sk.h.known_edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for cell in &sk.cells {
        let ids: Vec<String> = cell.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("cell {}\n", ids.join(" ")));
    }
    for (i, coll) in sk.collections.iter().enumerate() {
        for member in coll {
            let mut line = format!("cg {i}");
            for (u, v) in member {
                line.push_str(&format!(" {u} {v}"));
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

pub fn serialize_skeleton_family(sks: &[Skeleton]) -> String {
    sks.iter()
        .map(serialize_skeleton)
        .collect::<Vec<_>>()
        .join("---\n")
}

pub fn parse_skeleton(text: &str) -> Result<Skeleton> {
    let lines = content_lines(text);
    parse_skeleton_lines(&lines)
}

fn parse_skeleton_lines(lines: &[(usize, &str)]) -> Result<Skeleton> {
    let mut it = lines.iter();
    let (lno, header) = it
        .next()
        .ok_or_else(|| perr(0, "empty input, expected `skeleton v1` header"))?;
    if *header != "skeleton v1" {
        return Err(perr(*lno, format!("expected `skeleton v1` header, got {header:?}")));
    }
    let (lno, nline) = it.next().ok_or_else(|| perr(*lno, "missing `n <count>` line"))?;
    let mut toks = nline.split_whitespace();
    if toks.next() != Some("n") {
        return Err(perr(*lno, format!("expected `n <count>` line, got {nline:?}")));
    }
    let n = parse_usize(*lno, toks.next().unwrap_or(""), "vertex count")?;

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut cells: Vec<VertexSet> = Vec::new();
    let mut members: Vec<Vec<Vec<(u32, u32)>>> = Vec::new();
    for (lno, line) in it {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("e") => {
                let u = parse_id(*lno, toks.next().unwrap_or(""), n)?;
                let v = parse_id(*lno, toks.next().unwrap_or(""), n)?;
                edges.push((u, v));
            }
            Some("cell") => {
                let mut ids = Vec::new();
                for tok in toks {
                    ids.push(parse_id(*lno, tok, n)?);
                }
                if ids.len() < 2 {
                    return Err(perr(*lno, "cell needs at least two vertices"));
                }
                cells.push(VertexSet::from_ids(ids.iter().copied()));
                members.push(Vec::new());
            }
            Some("cg") => {
                let idx = parse_usize(*lno, toks.next().unwrap_or(""), "cell index")?;
                if idx >= cells.len() {
                    return Err(perr(*lno, format!("cg references undeclared cell {idx}")));
                }
                let ids: Vec<&str> = toks.collect();
                if !ids.len().is_multiple_of(2) {
                    return Err(perr(*lno, "cg line has an odd number of ids"));
                }
                let mut es = Vec::new();
                for pair in ids.chunks(2) {
                    let u = parse_id(*lno, pair[0], n)?;
                    let v = parse_id(*lno, pair[1], n)?;
                    if !cells[idx].contains(u) || !cells[idx].contains(v) {
                        return Err(perr(*lno, "cg pair outside its cell"));
                    }
                    es.push((u.min(v), u.max(v)));
                }
                es.sort_unstable();
                members[idx].push(es);
            }
            Some(tok) => return Err(perr(*lno, format!("unknown directive {tok:?}"))),
            None => unreachable!(),
        }
    }

    // disjointness of cells
    let mut union = VertexSet::new();
    for cell in &cells {
        if !union.is_disjoint(cell) {
            return Err(perr(0, "cells are not disjoint"));
        }
        union.union_with(cell);
    }

    let mut h = PartialGraph::unknown(n);
    let mut within_cell = HashSet::new();
    for cell in &cells {
        let ids = cell.to_vec();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                within_cell.insert((u, v));
            }
        }
    }
    for &(u, v) in &edges {
        let key = (u.min(v), u.max(v));
        if within_cell.contains(&key) {
            return Err(perr(0, format!("edge ({} {}) lies inside a cell", key.0, key.1)));
        }
        h.set_state(u, v, PairState::Edge);
    }
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if h.state(u, v) == PairState::Unknown && !within_cell.contains(&(u, v)) {
                h.set_state(u, v, PairState::NonEdge);
            }
        }
    }
    Ok(Skeleton {
        h,
        cells,
        collections: members,
    })
}

pub fn parse_skeleton_family(text: &str) -> Result<Vec<Skeleton>> {
    let lines = content_lines(text);
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (lno, line) in lines {
        if line == "---" {
            out.push(parse_skeleton_lines(&block)?);
            block.clear();
        } else {
            block.push((lno, line));
        }
    }
    if !block.is_empty() {
        out.push(parse_skeleton_lines(&block)?);
    }
    Ok(out)
}
