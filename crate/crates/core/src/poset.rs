//! The cobweb poset: levels, linear indexing, cover relation, level
//! truncations and copies of the prototype subposet.
//!
//! Level 0 holds the root alone; level s ≥ 1 holds F_s vertices ⟨j, s⟩,
//! 1 ≤ j ≤ F_s. Every vertex of level s lies below every vertex of every
//! higher level, so consecutive levels are joined by complete bipartite
//! cover edges.

use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// F_s as a machine word. Level sizes and linear indices overflow `u64` past
/// level 92, which is far beyond anything materialized here.
pub(crate) fn fib_u64(s: u32) -> u64 {
    assert!(s <= 93, "F_{s} does not fit in u64");
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..s {
        (a, b) = (b, a + b);
    }
    a
}

/// Number of vertices at level `s`: 1 for the root level, F_s otherwise.
pub fn level_size(s: u32) -> u64 {
    if s == 0 {
        1
    } else {
        fib_u64(s)
    }
}

/// A vertex ⟨pos, level⟩; `pos` is 1-based within its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub level: u32,
    pub pos: u64,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { level: 0, pos: 1 };

    pub fn new(pos: u64, level: u32) -> Result<Self> {
        if pos == 0 || pos > level_size(level) {
            return Err(Error::InvalidArgument(format!(
                "position {pos} is outside level {level} of size {}",
                level_size(level)
            )));
        }
        Ok(Self { level, pos })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.level)
    }
}

/// Row index of `v` in the staircase ζ matrix: 0 for the root and
/// F_{s+1} + j − 1 for ⟨j, s⟩, s ≥ 1.
pub fn to_linear(v: Vertex) -> u64 {
    if v.level == 0 {
        0
    } else {
        fib_u64(v.level + 1) + v.pos - 1
    }
}

/// Inverse of [`to_linear`].
pub fn from_linear(i: u64) -> Vertex {
    if i == 0 {
        return Vertex::ROOT;
    }
    // F_{s+1} <= i < F_{s+2}
    let mut s = 1;
    while fib_u64(s + 2) <= i {
        s += 1;
    }
    Vertex {
        level: s,
        pos: i - fib_u64(s + 1) + 1,
    }
}

/// First linear index of level `s`.
pub fn level_start(s: u32) -> u64 {
    if s == 0 {
        0
    } else {
        fib_u64(s + 1)
    }
}

pub fn leq(u: Vertex, v: Vertex) -> bool {
    u == v || u.level < v.level
}

pub fn covers(u: Vertex, v: Vertex) -> bool {
    v.level == u.level + 1
}

/// The prototype subposet P_L: levels 0..=L with their cover edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobwebTruncation {
    max_level: u32,
    vertex_count: u64,
    edges: Vec<(u64, u64)>,
}

#[derive(Serialize)]
struct TruncationJson<'a> {
    schema: u32,
    max_level: u32,
    vertices: u64,
    edges: &'a [(u64, u64)],
}

/// Build levels `0..=max_level`.
pub fn truncate(max_level: u32) -> CobwebTruncation {
    let vertex_count = (0..=max_level).map(level_size).sum();
    let mut edges = Vec::new();
    for s in 0..max_level {
        let lower = level_start(s)..level_start(s) + level_size(s);
        let upper = level_start(s + 1)..level_start(s + 1) + level_size(s + 1);
        edges.extend(lower.cartesian_product(upper));
    }
    CobwebTruncation {
        max_level,
        vertex_count,
        edges,
    }
}

impl CobwebTruncation {
    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    /// Cover pairs as linear indices, lower vertex first.
    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_count).map(from_linear)
    }

    /// Vertices of level `s`, in position order.
    pub fn level(&self, s: u32) -> impl Iterator<Item = Vertex> {
        let size = if s <= self.max_level {
            level_size(s)
        } else {
            0
        };
        (1..=size).map(move |pos| Vertex { level: s, pos })
    }

    /// Upward adjacency lists indexed by linear index.
    pub fn successors(&self) -> Vec<Vec<u64>> {
        let mut adj = vec![Vec::new(); self.vertex_count as usize];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
        }
        adj
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph cobweb {\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=circle, fontsize=10];\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  v{} [label=\"{}\"];", to_linear(v), v);
        }
        for s in 0..=self.max_level {
            let ids = self
                .level(s)
                .map(|v| format!("v{}", to_linear(v)))
                .join("; ");
            let _ = writeln!(out, "  {{ rank=same; {ids}; }}");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -> v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TruncationJson {
            schema: 1,
            max_level: self.max_level,
            vertices: self.vertex_count,
            edges: &self.edges,
        })
        .expect("truncation serializes")
    }
}

/// A copy of P_m rooted at `root`: for each i in 1..=m a subset A_i of level
/// root.level + i with |A_i| = level_size(i).
///
/// Inter-level edges are complete, so any such choice induces a subposet
/// isomorphic to P_m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CobwebCopy {
    root: Vertex,
    level_subsets: Vec<Vec<u64>>,
}

impl CobwebCopy {
    /// `level_subsets[i - 1]` lists the chosen positions at level root.level + i.
    pub fn new(root: Vertex, mut level_subsets: Vec<Vec<u64>>) -> Result<Self> {
        Vertex::new(root.pos, root.level)?;
        for (i, subset) in level_subsets.iter_mut().enumerate() {
            let height = i as u32 + 1;
            let level = root.level + height;
            subset.sort_unstable();
            subset.dedup();
            if subset.len() as u64 != level_size(height) {
                return Err(Error::InvalidArgument(format!(
                    "level {level} needs {} distinct vertices, got {}",
                    level_size(height),
                    subset.len()
                )));
            }
            if subset.iter().any(|&p| p == 0 || p > level_size(level)) {
                return Err(Error::InvalidArgument(format!(
                    "position outside level {level}"
                )));
            }
        }
        Ok(Self {
            root,
            level_subsets,
        })
    }

    /// The literal coordinate shift of P_m to `root`: A_i = {r, r+1, …}
    /// with r = root.pos. `None` when `root` is invalid or some A_i runs off
    /// its level; the latter cannot happen for a valid root because
    /// F_{k+i} ≥ F_k + F_i − 1.
    pub fn shifted(root: Vertex, m: u32) -> Option<Self> {
        let subsets = (1..=m)
            .map(|i| {
                let start = root.pos;
                let end = start + level_size(i) - 1;
                (end <= level_size(root.level + i)).then(|| (start..=end).collect())
            })
            .collect::<Option<Vec<_>>>()?;
        Self::new(root, subsets).ok()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn height(&self) -> u32 {
        self.level_subsets.len() as u32
    }

    pub fn level_subsets(&self) -> &[Vec<u64>] {
        &self.level_subsets
    }

    /// Number of maximal chains inside the copy, m_F!.
    pub fn chain_count(&self) -> BigInt {
        self.level_subsets
            .iter()
            .map(|s| BigInt::from(s.len()))
            .product()
    }

    /// Two copies with the same root share a maximal chain iff their subsets
    /// meet on every level.
    pub fn chain_disjoint(&self, other: &CobwebCopy) -> bool {
        self.root != other.root
            || self
                .level_subsets
                .iter()
                .zip(&other.level_subsets)
                .any(|(a, b)| a.iter().all(|p| b.binary_search(p).is_err()))
    }

    /// All maximal chains of the copy, as position sequences above the root.
    pub fn chains(&self) -> Vec<Vec<u64>> {
        self.level_subsets
            .iter()
            .map(|s| s.iter().copied())
            .multi_cartesian_product()
            .collect()
    }
}

/// C(n, k) over big integers.
pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of copies of P_m rooted at `root`:
/// ∏_{i=1..m} C(level_size(k+i), level_size(i)).
pub fn count_copies_rooted(root: Vertex, m: u32) -> BigInt {
    (1..=m)
        .map(|i| binomial(level_size(root.level + i), level_size(i)))
        .product()
}

/// Every copy of P_m rooted at `root`, by exhaustive choice of level subsets.
pub fn enumerate_copies(root: Vertex, m: u32) -> Vec<CobwebCopy> {
    let per_level: Vec<Vec<Vec<u64>>> = (1..=m)
        .map(|i| {
            (1..=level_size(root.level + i))
                .combinations(level_size(i) as usize)
                .collect()
        })
        .collect();
    if per_level.is_empty() {
        return vec![CobwebCopy {
            root,
            level_subsets: Vec::new(),
        }];
    }
    per_level
        .into_iter()
        .multi_cartesian_product()
        .map(|level_subsets| CobwebCopy {
            root,
            level_subsets,
        })
        .collect()
}
