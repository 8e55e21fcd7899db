//! Shared helpers for the integration suites: graphs on up to 8 vertices as
//! adjacency bit rows keyed by edge masks, and signature grouping.

#![allow(dead_code)]

use std::collections::HashMap;

use rayon::prelude::*;

use kset_recon::Graph;

pub fn mask_adj(n: usize, mask: u64) -> [u8; 8] {
    let mut adj = [0u8; 8];
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> idx & 1 != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            idx += 1;
        }
    }
    adj
}

pub fn subset_connected(adj: &[u8; 8], sub: u8) -> bool {
    if sub == 0 {
        return false;
    }
    let start = sub.trailing_zeros() as usize;
    let mut seen = 1u8 << start;
    loop {
        let mut next = seen;
        let mut f = seen;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] & sub;
        }
        if next == seen {
            return seen == sub;
        }
        seen = next;
    }
}

pub fn mask_connected(n: usize, adj: &[u8; 8]) -> bool {
    subset_connected(adj, ((1u16 << n) - 1) as u8)
}

pub fn mask_triangle_free(n: usize, adj: &[u8; 8]) -> bool {
    for u in 0..n {
        let mut nb = adj[u] & !((1u16 << (u + 1)) - 1) as u8;
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if adj[u] & adj[v] != 0 {
                return false;
            }
        }
    }
    true
}

pub fn mask_max_degree(n: usize, adj: &[u8; 8]) -> usize {
    (0..n).map(|v| adj[v].count_ones() as usize).max().unwrap_or(0)
}

/// k-subsets of 0..n as bitmasks, lexicographic by id vector.
pub fn ksubsets(n: usize, k: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u8, |m, &i| m | 1 << i));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Connectivity signature of a graph over the fixed subset list.
pub fn sig(adj: &[u8; 8], subsets: &[u8]) -> u64 {
    let mut s = 0u64;
    for (i, &sub) in subsets.iter().enumerate() {
        if subset_connected(adj, sub) {
            s |= 1 << i;
        }
    }
    s
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn masks_of(graphs: &[Graph]) -> Vec<u64> {
    let mut v: Vec<u64> = graphs.iter().map(|g| g.edge_mask()).collect();
    v.sort_unstable();
    v
}

/// Groups all masks passing `keep` by connectivity signature; groups sorted
/// by smallest member, members ascending.
pub fn group_by_signature<F: Fn(&[u8; 8]) -> bool + Sync>(
    n: usize,
    k: usize,
    keep: F,
) -> Vec<Vec<u64>> {
    let subsets = ksubsets(n, k);
    let total = 1u64 << pair_count(n);
    let chunk = 1u64 << 12;
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let partials: Vec<HashMap<u64, Vec<u64>>> = chunks
        .par_iter()
        .map(|&c| {
            let mut local: HashMap<u64, Vec<u64>> = HashMap::new();
            for mask in c * chunk..(c * chunk + chunk).min(total) {
                let adj = mask_adj(n, mask);
                if keep(&adj) {
                    local.entry(sig(&adj, &subsets)).or_default().push(mask);
                }
            }
            local
        })
        .collect();
    let mut merged: HashMap<u64, Vec<u64>> = HashMap::new();
    for part in partials {
        for (s, mut masks) in part {
            merged.entry(s).or_default().append(&mut masks);
        }
    }
    let mut groups: Vec<Vec<u64>> = merged
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    groups.sort_by_key(|g| g[0]);
    groups
}
