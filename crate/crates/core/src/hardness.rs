//! Reduction from 3-CNF formulas to partial reconstruction instances, plus
//! a generic backtracking solver for partial instances at desk scale.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{for_each_ksubset, KSetInstance};
use crate::partial::{PairState, PartialGraph};
use crate::vset::VertexSet;

/// A 3-CNF formula: positive literal `i` is the variable x_i (1-based),
/// negative `-i` its negation. Every clause holds three distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for clause in &clauses {
            let mut vars: Vec<u32> = clause.iter().map(|l| l.unsigned_abs()).collect();
            if vars.iter().any(|&v| v == 0 || v as usize > num_vars) {
                return Err(Error::InvalidParameter(format!(
                    "literal out of range in clause {clause:?}"
                )));
            }
            vars.sort_unstable();
            vars.dedup();
            if vars.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "clause {clause:?} must mention three distinct variables"
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Brute-force satisfiability over all assignments; usable for the desk
    /// scales the reduction is exercised at.
    pub fn brute_force_satisfiable(&self) -> bool {
        for bits in 0u64..1 << self.num_vars {
            if self.satisfied_by(|v| bits >> (v - 1) & 1 != 0) {
                return true;
            }
        }
        self.num_vars == 0
    }

    pub fn satisfied_by<F: Fn(usize) -> bool>(&self, assignment: F) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let val = assignment(lit.unsigned_abs() as usize);
                if lit > 0 {
                    val
                } else {
                    !val
                }
            })
        })
    }
}

/// Standard DIMACS CNF text. Clauses must come 0-terminated with exactly
/// three literals over three distinct variables.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut num_vars = None;
    let mut num_clauses = 0usize;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    let mut pending_line = 0usize;
    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if num_vars.is_some() {
                return Err(Error::Parse {
                    line: lno,
                    message: "duplicate problem line".into(),
                });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(Error::Parse {
                    line: lno,
                    message: format!("malformed problem line {line:?}"),
                });
            }
            num_vars = Some(toks[2].parse::<usize>().map_err(|_| Error::Parse {
                line: lno,
                message: "bad variable count".into(),
            })?);
            num_clauses = toks[3].parse::<usize>().map_err(|_| Error::Parse {
                line: lno,
                message: "bad clause count".into(),
            })?;
            continue;
        }
        let nv = num_vars.ok_or_else(|| Error::Parse {
            line: lno,
            message: "clause before problem line".into(),
        })?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::Parse {
                line: lno,
                message: format!("expected literal, got {tok:?}"),
            })?;
            if lit == 0 {
                if pending.len() != 3 {
                    return Err(Error::Parse {
                        line: lno,
                        message: format!("clause has {} literals, expected 3", pending.len()),
                    });
                }
                let arr = [pending[0], pending[1], pending[2]];
                let mut vars: Vec<u32> = arr.iter().map(|l| l.unsigned_abs()).collect();
                vars.sort_unstable();
                vars.dedup();
                if vars.len() != 3 {
                    return Err(Error::Parse {
                        line: lno,
                        message: "clause mentions a repeated variable".into(),
                    });
                }
                if vars.iter().any(|&v| v as usize > nv) {
                    return Err(Error::Parse {
                        line: lno,
                        message: "literal outside declared variable range".into(),
                    });
                }
                clauses.push(arr);
                pending.clear();
            } else {
                if pending.is_empty() {
                    pending_line = lno;
                }
                pending.push(lit);
            }
        }
    }
    if !pending.is_empty() {
        return Err(Error::Parse {
            line: pending_line,
            message: "unterminated clause".into(),
        });
    }
    let nv = num_vars.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing problem line".into(),
    })?;
    if clauses.len() != num_clauses {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        });
    }
    CnfFormula::new(nv, clauses)
}

/// The reduction's output: a partial instance, the auxiliary partial graph,
/// and the role map naming every gadget vertex.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub inst: KSetInstance,
    pub h: PartialGraph,
    /// (role name, vertex id), sorted by id.
    pub roles: Vec<(String, u32)>,
}

impl GadgetInstance {
    pub fn role(&self, name: &str) -> Option<u32> {
        self.roles
            .iter()
            .find(|(r, _)| r == name)
            .map(|&(_, id)| id)
    }

    pub fn hub(&self) -> u32 {
        self.role("v").unwrap()
    }

    pub fn anchor(&self, i: usize) -> u32 {
        self.role(&format!("u_{i}")).unwrap()
    }

    pub fn separator(&self, i: usize) -> u32 {
        self.role(&format!("w_{i}")).unwrap()
    }

    pub fn positive(&self, i: usize) -> u32 {
        self.role(&format!("x_{i}")).unwrap()
    }

    pub fn negative(&self, i: usize) -> u32 {
        self.role(&format!("y_{i}")).unwrap()
    }
}

/// Builds the partial k-reconstruction instance of a 3-CNF formula. The
/// instance admits a graph exactly when the formula is satisfiable.
pub fn reduce_3sat(phi: &CnfFormula, k: usize) -> Result<GadgetInstance> {
    if k < 4 {
        return Err(Error::Unsupported(
            "the reduction needs k >= 4; k = 3 stays tractable".into(),
        ));
    }
    // re-validate in case the formula was built by hand
    let phi = CnfFormula::new(phi.num_vars, phi.clauses.clone())?;
    let nvars = phi.num_vars;
    let n = 2 * nvars * k + k + 2 * (k - 3) * k;

    let mut roles: Vec<(String, u32)> = Vec::new();
    let mut next = 0u32;
    let mut fresh = |name: String, roles: &mut Vec<(String, u32)>| {
        let id = next;
        next += 1;
        roles.push((name, id));
        id
    };
    let v = fresh("v".into(), &mut roles);
    let v_priv: Vec<u32> = (1..k).map(|j| fresh(format!("v^{j}"), &mut roles)).collect();
    let mut u = Vec::new();
    let mut u_priv = Vec::new();
    for i in 1..=k - 3 {
        u.push(fresh(format!("u_{i}"), &mut roles));
        u_priv.push(
            (1..k)
                .map(|j| fresh(format!("u_{i}^{j}"), &mut roles))
                .collect::<Vec<u32>>(),
        );
    }
    let mut w = Vec::new();
    let mut w_priv = Vec::new();
    for i in 1..=k - 3 {
        w.push(fresh(format!("w_{i}"), &mut roles));
        w_priv.push(
            (1..k)
                .map(|j| fresh(format!("w_{i}^{j}"), &mut roles))
                .collect::<Vec<u32>>(),
        );
    }
    let mut x = Vec::new();
    let mut x_priv = Vec::new();
    let mut y = Vec::new();
    let mut y_priv = Vec::new();
    for i in 1..=nvars {
        x.push(fresh(format!("x_{i}"), &mut roles));
        x_priv.push(
            (1..k)
                .map(|j| fresh(format!("x_{i}^{j}"), &mut roles))
                .collect::<Vec<u32>>(),
        );
        y.push(fresh(format!("y_{i}"), &mut roles));
        y_priv.push(
            (1..k)
                .map(|j| fresh(format!("y_{i}^{j}"), &mut roles))
                .collect::<Vec<u32>>(),
        );
    }
    assert_eq!(next as usize, n);

    // auxiliary partial graph: gadget edges, the 2n unknown hub pairs,
    // non-edges everywhere else
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for i in 0..k - 3 {
        edges.push((u[i], v));
        for j in 0..k - 1 {
            edges.push((u[i], u_priv[i][j]));
            edges.push((w[i], w_priv[i][j]));
        }
        for i2 in 0..nvars {
            edges.push((w[i], x[i2]));
            edges.push((w[i], y[i2]));
        }
    }
    for &vp in &v_priv {
        edges.push((v, vp));
    }
    for i in 0..nvars {
        for j in 0..k - 1 {
            edges.push((x[i], x_priv[i][j]));
            edges.push((y[i], y_priv[i][j]));
        }
    }
    // the variable block is a clique minus the matching x_i y_i
    let mut block: Vec<u32> = Vec::new();
    for i in 0..nvars {
        block.push(x[i]);
        block.push(y[i]);
    }
    for (a_pos, &a) in block.iter().enumerate() {
        for &b in &block[a_pos + 1..] {
            let matched = (0..nvars).any(|i| (x[i] == a && y[i] == b) || (y[i] == a && x[i] == b));
            if !matched {
                edges.push((a, b));
            }
        }
    }

    let mut h = PartialGraph::unknown(n);
    for &(a, b) in &edges {
        h.set_state(a, b, PairState::Edge);
    }
    let mut unknown: Vec<(u32, u32)> = Vec::new();
    for i in 0..nvars {
        unknown.push((v.min(x[i]), v.max(x[i])));
        unknown.push((v.min(y[i]), v.max(y[i])));
    }
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if h.state(a, b) == PairState::Unknown
                && !unknown.contains(&(a, b))
            {
                h.set_state(a, b, PairState::NonEdge);
            }
        }
    }

    let mut connected: Vec<VertexSet> = Vec::new();
    let mut disconnected: Vec<VertexSet> = Vec::new();
    let add_block_families = |verts: Vec<u32>, conn: &mut Vec<VertexSet>, disc: &mut Vec<VertexSet>| {
        let local = block_graph(&h, &verts);
        for_each_ksubset(verts.len(), k, |s| {
            let global = VertexSet::from_ids(s.iter().map(|i| verts[i as usize]));
            if local.connected_on(s) {
                conn.push(global);
            } else {
                disc.push(global);
            }
        });
    };

    // 1. edges v u_i: the graph on {v, v^j, u_i, u_i^j}
    {
        let mut verts = vec![v];
        verts.extend(&v_priv);
        for i in 0..k - 3 {
            verts.push(u[i]);
            verts.extend(&u_priv[i]);
        }
        add_block_families(verts, &mut connected, &mut disconnected);
    }
    // 2. non-edges v w_i: the graph on {v, v^j, w_i, w_i^j}
    {
        let mut verts = vec![v];
        verts.extend(&v_priv);
        for i in 0..k - 3 {
            verts.push(w[i]);
            verts.extend(&w_priv[i]);
        }
        add_block_families(verts, &mut connected, &mut disconnected);
    }
    // 3. non-edges x_i u_l, y_i u_l: per variable, the graph on
    //    {x_i, x_i^j, y_i, y_i^j, u_l, u_l^j}
    for i in 0..nvars {
        let mut verts = vec![x[i]];
        verts.extend(&x_priv[i]);
        verts.push(y[i]);
        verts.extend(&y_priv[i]);
        for l in 0..k - 3 {
            verts.push(u[l]);
            verts.extend(&u_priv[l]);
        }
        add_block_families(verts, &mut connected, &mut disconnected);
    }
    // 4. variables: {x_i, y_i, v, u_1..u_{k-3}} must be disconnected
    for i in 0..nvars {
        let mut s = VertexSet::from_ids([x[i], y[i], v]);
        for &ui in &u {
            s.insert(ui);
        }
        debug_assert_eq!(s.len(), k);
        disconnected.push(s);
    }
    // 5. clauses: {z_1, z_2, z_3, v, u_1..u_{k-4}} must be connected
    for clause in phi.clauses() {
        let mut s = VertexSet::singleton(v);
        for &lit in clause {
            let i = lit.unsigned_abs() as usize - 1;
            s.insert(if lit > 0 { x[i] } else { y[i] });
        }
        for &ui in u.iter().take(k - 4) {
            s.insert(ui);
        }
        debug_assert_eq!(s.len(), k);
        connected.push(s);
    }

    let inst = KSetInstance::partial(n, k, connected, disconnected)?;
    Ok(GadgetInstance { inst, h, roles })
}

/// Extracts the known graph on `verts`; every pair inside must be known.
fn block_graph(h: &PartialGraph, verts: &[u32]) -> Graph {
    let mut g = Graph::new(verts.len());
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            match h.state(a, b) {
                PairState::Edge => g.add_edge(i as u32, j as u32).unwrap(),
                PairState::NonEdge => {}
                PairState::Unknown => unreachable!("gadget blocks are fully known"),
            }
        }
    }
    g
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Found(Graph),
    Unsatisfiable,
    BudgetExceeded,
}

struct SolverSet {
    verts: Vec<u32>,
    vars: Vec<usize>,
    required_connected: bool,
}

/// Decision levels a conclusion depends on, as a bitset.
type LevelSet = Vec<u64>;

struct Solver<'a> {
    sets: &'a [SolverSet],
    var_sets: &'a [Vec<usize>],
    order: &'a [usize],
    assignment: Vec<Option<bool>>,
    /// For every assigned variable, the decision levels its value rests on;
    /// a decision depends on its own level alone.
    depends: Vec<LevelSet>,
    trail: Vec<usize>,
    resolved: Vec<bool>,
    resolved_trail: Vec<usize>,
    resolved_count: usize,
    queued: Vec<bool>,
    budget: u64,
    level_words: usize,
}

/// Searches for a graph matching every listed k-set of a partial instance.
/// Only pairs occurring inside at least one listed set are branched on;
/// everything else is fixed to a non-edge in the witness. `budget` caps the
/// number of branching decisions.
pub fn solve_partial(inst: &KSetInstance, budget: u64) -> Result<SolveOutcome> {
    if inst.is_complete() {
        return Err(Error::InvalidParameter(
            "solve_partial expects a partial instance".into(),
        ));
    }
    let n = inst.n();

    // variables: constrained pairs
    let mut var_of: HashMap<(u32, u32), usize> = HashMap::new();
    let mut var_pairs: Vec<(u32, u32)> = Vec::new();
    let mut sets: Vec<SolverSet> = Vec::new();
    let register = |s: &VertexSet, required: bool, var_of: &mut HashMap<(u32, u32), usize>, var_pairs: &mut Vec<(u32, u32)>| {
        let verts = s.to_vec();
        let mut vars = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                let id = *var_of.entry((a, b)).or_insert_with(|| {
                    var_pairs.push((a, b));
                    var_pairs.len() - 1
                });
                vars.push(id);
            }
        }
        SolverSet {
            verts,
            vars,
            required_connected: required,
        }
    };
    for s in inst.connected_sets() {
        let set = register(&s, true, &mut var_of, &mut var_pairs);
        sets.push(set);
    }
    for s in inst.disconnected_sets() {
        let set = register(&s, false, &mut var_of, &mut var_pairs);
        sets.push(set);
    }

    let mut var_sets: Vec<Vec<usize>> = vec![Vec::new(); var_pairs.len()];
    for (si, set) in sets.iter().enumerate() {
        for &vid in &set.vars {
            var_sets[vid].push(si);
        }
    }
    // static branch order: pairs constrained by the most sets first
    let mut order: Vec<usize> = (0..var_pairs.len()).collect();
    order.sort_by_key(|&vid| (std::cmp::Reverse(var_sets[vid].len()), var_pairs[vid]));

    let nvars = var_pairs.len();
    let level_words = (nvars + 2).div_ceil(64);
    let mut solver = Solver {
        sets: &sets,
        var_sets: &var_sets,
        order: &order,
        assignment: vec![None; nvars],
        depends: vec![vec![0; level_words]; nvars],
        trail: Vec::new(),
        resolved: vec![false; sets.len()],
        resolved_trail: Vec::new(),
        resolved_count: 0,
        queued: vec![false; sets.len()],
        budget,
        level_words,
    };

    // root propagation catches sets that are impossible outright and pins
    // unconditional pairs
    let root_sets: Vec<usize> = (0..sets.len()).collect();
    if solver.propagate_sets(&root_sets).is_err() {
        return Ok(SolveOutcome::Unsatisfiable);
    }
    match solver.dfs(0, 1) {
        DfsOutcome::Found => {
            let mut g = Graph::new(n);
            for (vid, &(a, b)) in var_pairs.iter().enumerate() {
                if solver.assignment[vid] == Some(true) {
                    g.add_edge(a, b)?;
                }
            }
            debug_assert!(inst.is_consistent(&g).unwrap());
            Ok(SolveOutcome::Found(g))
        }
        DfsOutcome::Fail(_) => Ok(SolveOutcome::Unsatisfiable),
        DfsOutcome::Budget => Ok(SolveOutcome::BudgetExceeded),
    }
}

enum DfsOutcome {
    Found,
    /// Exhausted; carries the decision levels the refutation rests on, so
    /// ancestors whose level does not appear can skip their remaining
    /// values (conflict-directed backjumping).
    Fail(LevelSet),
    Budget,
}

impl Solver<'_> {
    fn ls_new(&self) -> LevelSet {
        vec![0; self.level_words]
    }

    fn ls_with(&self, level: u32) -> LevelSet {
        let mut ls = self.ls_new();
        ls[(level / 64) as usize] |= 1 << (level % 64);
        ls
    }

    fn ls_union(acc: &mut LevelSet, other: &LevelSet) {
        for (a, b) in acc.iter_mut().zip(other) {
            *a |= b;
        }
    }

    fn ls_contains(ls: &LevelSet, level: u32) -> bool {
        ls[(level / 64) as usize] >> (level % 64) & 1 != 0
    }

    fn ls_remove(ls: &mut LevelSet, level: u32) {
        ls[(level / 64) as usize] &= !(1u64 << (level % 64));
    }

    fn dfs(&mut self, cursor: usize, level: u32) -> DfsOutcome {
        let mut cursor = cursor;
        while cursor < self.order.len() && self.assignment[self.order[cursor]].is_some() {
            cursor += 1;
        }
        if cursor == self.order.len() {
            return DfsOutcome::Found;
        }
        let vid = self.order[cursor];
        let mut refutation = self.ls_new();
        for val in [true, false] {
            if self.budget == 0 {
                return DfsOutcome::Budget;
            }
            self.budget -= 1;
            let mark = self.trail.len();
            let rmark = self.resolved_trail.len();
            self.assignment[vid] = Some(val);
            self.depends[vid] = self.ls_with(level);
            self.trail.push(vid);
            let affected = self.var_sets[vid].clone();
            match self.propagate_sets(&affected) {
                Err(mut conflict) => {
                    self.undo(mark, rmark);
                    Self::ls_remove(&mut conflict, level);
                    Self::ls_union(&mut refutation, &conflict);
                }
                Ok(()) => {
                    if self.resolved_count == self.sets.len() {
                        // every set's status is locked; any completion works
                        return DfsOutcome::Found;
                    }
                    match self.dfs(cursor + 1, level + 1) {
                        DfsOutcome::Fail(mut conflict) => {
                            self.undo(mark, rmark);
                            if !Self::ls_contains(&conflict, level) {
                                // this decision is irrelevant to the failure
                                return DfsOutcome::Fail(conflict);
                            }
                            Self::ls_remove(&mut conflict, level);
                            Self::ls_union(&mut refutation, &conflict);
                        }
                        other => return other,
                    }
                }
            }
        }
        DfsOutcome::Fail(refutation)
    }

    fn undo(&mut self, mark: usize, rmark: usize) {
        while self.trail.len() > mark {
            let vid = self.trail.pop().unwrap();
            self.assignment[vid] = None;
        }
        while self.resolved_trail.len() > rmark {
            let si = self.resolved_trail.pop().unwrap();
            self.resolved[si] = false;
            self.resolved_count -= 1;
        }
    }

    /// Monotone checks plus forcing over the touched sets; a conflict
    /// reports the union of decision levels the firing set's assignments
    /// rest on.
    fn enqueue(&mut self, queue: &mut Vec<usize>, si: usize) {
        if !self.queued[si] && !self.resolved[si] {
            self.queued[si] = true;
            queue.push(si);
        }
    }

    fn propagate_sets(&mut self, seed: &[usize]) -> std::result::Result<(), LevelSet> {
        let mut queue: Vec<usize> = Vec::with_capacity(seed.len());
        for &si in seed {
            self.enqueue(&mut queue, si);
        }
        let result = loop {
            let si = match queue.pop() {
                Some(si) => si,
                None => break Ok(()),
            };
            self.queued[si] = false;
            if self.resolved[si] {
                continue;
            }
            let set = &self.sets[si];
            let undecided: Vec<usize> = set
                .vars
                .iter()
                .copied()
                .filter(|&v| self.assignment[v].is_none())
                .collect();
            let conflict = if set.required_connected {
                !self.connected_with(set, None, true)
            } else {
                self.connected_with(set, None, false)
            };
            if conflict {
                break Err(self.set_dependencies(si));
            }
            let locked = if set.required_connected {
                self.connected_with(set, None, false)
            } else {
                !self.connected_with(set, None, true)
            };
            if locked {
                // connected on decided edges alone, or disconnected even
                // with every undecided pair optimistic
                self.resolve(si);
                continue;
            }
            if undecided.len() > set.verts.len() {
                // forcing rarely bites while most of the set is open; skip
                // the per-pair scan until it tightens
                continue;
            }
            let mut failure = None;
            for &p in &undecided {
                let forced = if set.required_connected {
                    // a pair whose absence disconnects the optimistic graph
                    // must be present
                    (!self.connected_with(set, Some((p, false)), true)).then_some(true)
                } else {
                    // a pair whose presence connects the pessimistic graph
                    // must be absent
                    self.connected_with(set, Some((p, true)), false)
                        .then_some(false)
                };
                if let Some(val) = forced {
                    let reason = self.set_dependencies(si);
                    match self.assignment[p] {
                        Some(v) if v == val => {}
                        Some(_) => {
                            let mut both = reason;
                            let dep = self.depends[p].clone();
                            Self::ls_union(&mut both, &dep);
                            failure = Some(both);
                            break;
                        }
                        None => {
                            self.assignment[p] = Some(val);
                            self.depends[p] = reason;
                            self.trail.push(p);
                            for s2pos in 0..self.var_sets[p].len() {
                                let s2 = self.var_sets[p][s2pos];
                                if s2 != si {
                                    self.enqueue(&mut queue, s2);
                                }
                            }
                        }
                    }
                }
            }
            if let Some(f) = failure {
                break Err(f);
            }
        };
        // stale in-queue marks would suppress future rechecks
        for &si in &queue {
            self.queued[si] = false;
        }
        result
    }

    /// Union of the decision levels behind a set's current assignments.
    fn set_dependencies(&self, si: usize) -> LevelSet {
        let mut acc = self.ls_new();
        for &v in &self.sets[si].vars {
            if self.assignment[v].is_some() {
                Self::ls_union(&mut acc, &self.depends[v]);
            }
        }
        acc
    }

    fn resolve(&mut self, si: usize) {
        self.resolved[si] = true;
        self.resolved_trail.push(si);
        self.resolved_count += 1;
    }

    /// Connectivity of the set with undecided pairs read as `undecided_as`
    /// (optimistic edges or pessimistic non-edges), optionally overriding
    /// one pair.
    fn connected_with(
        &self,
        set: &SolverSet,
        override_pair: Option<(usize, bool)>,
        undecided_as: bool,
    ) -> bool {
        let kk = set.verts.len();
        let mut adj = [0u16; 16];
        debug_assert!(kk <= 16);
        let mut vi = 0;
        for i in 0..kk {
            for j in i + 1..kk {
                let vid = set.vars[vi];
                vi += 1;
                let present = match override_pair {
                    Some((p, v)) if p == vid => v,
                    _ => self.assignment[vid].unwrap_or(undecided_as),
                };
                if present {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let all: u16 = if kk == 16 { u16::MAX } else { (1 << kk) - 1 };
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next: u16 = 0;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[i];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & all == all
    }
}
