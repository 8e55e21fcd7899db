//! Connectivity instances: the families of connected and disconnected
//! k-subsets that drive reconstruction, plus the counting oracle wrapped
//! around them.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Classification of k-subsets of `0..n`.
///
/// A complete instance materializes only the connected family; membership in
/// the disconnected family is "a valid k-subset not listed connected". A
/// partial instance lists both families explicitly and leaves every other
/// subset unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSetInstance {
    n: usize,
    k: usize,
    connected: HashSet<VertexSet>,
    disconnected: HashSet<VertexSet>,
    complete: bool,
}

impl KSetInstance {
    pub fn complete(n: usize, k: usize, connected: Vec<VertexSet>) -> Result<Self> {
        let mut inst = KSetInstance {
            n,
            k,
            connected: HashSet::new(),
            disconnected: HashSet::new(),
            complete: true,
        };
        inst.check_k()?;
        for s in connected {
            inst.check_set(&s)?;
            inst.connected.insert(s);
        }
        Ok(inst)
    }

    pub fn partial(
        n: usize,
        k: usize,
        connected: Vec<VertexSet>,
        disconnected: Vec<VertexSet>,
    ) -> Result<Self> {
        let mut inst = KSetInstance {
            n,
            k,
            connected: HashSet::new(),
            disconnected: HashSet::new(),
            complete: false,
        };
        inst.check_k()?;
        for s in connected {
            inst.check_set(&s)?;
            inst.connected.insert(s);
        }
        for s in disconnected {
            inst.check_set(&s)?;
            if inst.connected.contains(&s) {
                return Err(Error::InvalidParameter(format!(
                    "set {:?} listed both connected and disconnected",
                    s.to_vec()
                )));
            }
            inst.disconnected.insert(s);
        }
        Ok(inst)
    }

    fn check_k(&self) -> Result<()> {
        if self.k < 2 || self.k > self.n {
            return Err(Error::InvalidParameter(format!(
                "k = {} out of range 2..={}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.len() != self.k {
            return Err(Error::InvalidParameter(format!(
                "set {:?} does not have exactly k = {} vertices",
                s.to_vec(),
                self.k
            )));
        }
        if let Some(max) = s.iter().last() {
            if max as usize >= self.n {
                return Err(Error::InvalidParameter(format!(
                    "set vertex {max} outside 0..{}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains_connected(&self, s: &VertexSet) -> bool {
        self.connected.contains(s)
    }

    pub fn contains_disconnected(&self, s: &VertexSet) -> bool {
        if self.complete {
            !self.connected.contains(s)
        } else {
            self.disconnected.contains(s)
        }
    }

    /// Required status of `s`: `Some(true)` connected, `Some(false)`
    /// disconnected, `None` unconstrained (partial instances only).
    pub fn classify(&self, s: &VertexSet) -> Option<bool> {
        if self.connected.contains(s) {
            Some(true)
        } else if self.complete || self.disconnected.contains(s) {
            Some(false)
        } else {
            None
        }
    }

    /// Connected family in canonical (id-vector lexicographic) order.
    pub fn connected_sets(&self) -> Vec<VertexSet> {
        sorted_sets(&self.connected)
    }

    /// Explicitly listed disconnected family, canonical order. Empty for
    /// complete instances.
    pub fn disconnected_sets(&self) -> Vec<VertexSet> {
        sorted_sets(&self.disconnected)
    }

    pub fn connected_count(&self) -> usize {
        self.connected.len()
    }

    /// Whether `g` matches every constrained k-set of the instance.
    pub fn is_consistent(&self, g: &Graph) -> Result<bool> {
        if g.n() != self.n {
            return Err(Error::InvalidParameter(format!(
                "graph has {} vertices, instance has {}",
                g.n(),
                self.n
            )));
        }
        if self.complete {
            let mut ok = true;
            for_each_ksubset(self.n, self.k, |s| {
                if ok && g.connected_on(s) != self.connected.contains(s) {
                    ok = false;
                }
            });
            Ok(ok)
        } else {
            for s in &self.connected {
                if !g.connected_on(s) {
                    return Ok(false);
                }
            }
            for s in &self.disconnected {
                if g.connected_on(s) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn sorted_sets(sets: &HashSet<VertexSet>) -> Vec<VertexSet> {
    let mut v: Vec<VertexSet> = sets.iter().cloned().collect();
    v.sort_by_key(|s| s.to_vec());
    v
}

/// The complete instance of a graph: every k-subset classified by the
/// connectivity of its induced subgraph.
pub fn connected_ksets(g: &Graph, k: usize) -> Result<KSetInstance> {
    if k < 2 || k > g.n() {
        return Err(Error::InvalidParameter(format!(
            "k = {} out of range 2..={}",
            k,
            g.n()
        )));
    }
    let mut connected = Vec::new();
    for_each_ksubset(g.n(), k, |s| {
        if g.connected_on(s) {
            connected.push(s.clone());
        }
    });
    KSetInstance::complete(g.n(), k, connected)
}

/// Membership-probe accumulator. Shared freely across worker threads; each
/// top-level operation owns one and reports its totals with the result.
#[derive(Default, Debug)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn count(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// A complete instance together with a per-call query counter. Every
/// membership probe into the k-set families goes through here, so the
/// probe budgets can be asserted on real counts.
pub struct Oracle<'a> {
    inst: &'a KSetInstance,
    counter: QueryCounter,
}

impl<'a> Oracle<'a> {
    pub fn new(inst: &'a KSetInstance) -> Result<Self> {
        if !inst.is_complete() {
            return Err(Error::Unsupported(
                "oracle queries require a complete instance".into(),
            ));
        }
        Ok(Oracle {
            inst,
            counter: QueryCounter::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.inst.n
    }

    pub fn k(&self) -> usize {
        self.inst.k
    }

    pub fn instance(&self) -> &'a KSetInstance {
        self.inst
    }

    /// One membership probe: is `s` in the connected family?
    pub fn is_connected_kset(&self, s: &VertexSet) -> bool {
        debug_assert_eq!(s.len(), self.inst.k);
        self.counter.record();
        self.inst.connected.contains(s)
    }

    pub fn queries(&self) -> u64 {
        self.counter.count()
    }
}

/// Exact open neighborhood of a connected k-set `t`, recovered from probes
/// alone: v lies in N(t) iff swapping some member of t for v keeps the set
/// connected. Identical for every graph consistent with the instance.
pub fn neighborhood_of_set(oracle: &Oracle<'_>, t: &VertexSet) -> Result<VertexSet> {
    if !oracle.instance().contains_connected(t) {
        return Err(Error::InvalidParameter(format!(
            "set {:?} is not a listed connected k-set",
            t.to_vec()
        )));
    }
    let mut out = VertexSet::new();
    for v in 0..oracle.n() as u32 {
        if t.contains(v) {
            continue;
        }
        for u in t.iter() {
            let mut probe = t.clone();
            probe.remove(u);
            probe.insert(v);
            if oracle.is_connected_kset(&probe) {
                out.insert(v);
                break;
            }
        }
    }
    Ok(out)
}

/// Calls `f` with every k-subset of `0..n` in lexicographic order. The
/// buffer is reused between calls.
pub(crate) fn for_each_ksubset<F: FnMut(&VertexSet)>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<u32> = (0..k as u32).collect();
    loop {
        f(&VertexSet::from_ids(idx.iter().copied()));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < (n - k + i) as u32 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
