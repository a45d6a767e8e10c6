//! Maximal-chain counts in the cobweb poset and the fibonomial read as a
//! copy count.
//!
//! From a fixed vertex at level k there are n_F^(m) saturated chains up to
//! level n = k + m, and every copy of P_m carries m_F! of them. Dividing the
//! first count by the second gives the fibonomial (n over k)_F.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fib::{fib, fibonomial_def, psi_factorial, psi_falling, PsiSequence};
use crate::par::{self, Exec};
use crate::poset::{
    count_copies_rooted, enumerate_copies, level_size, level_start, to_linear, truncate,
    CobwebCopy, Vertex,
};

/// Largest target level the DFS oracle accepts by default; 8_F! = 65 520
/// chains from the root.
pub const DEFAULT_ORACLE_MAX: u32 = 8;

fn fibonacci() -> PsiSequence {
    PsiSequence::fibonacci()
}

/// Saturated chains from the root to level `n`: n_F!.
pub fn max_chains_from_root(n: u32) -> BigInt {
    psi_factorial(&fibonacci(), n).expect("F_m != 0 for m >= 1")
}

/// Saturated chains from any one vertex of level `k` to level `n`: the
/// falling factorial n_F^(n−k).
pub fn max_chains_from_fixed(k: u32, n: u32) -> Result<BigInt> {
    if k > n {
        return Err(Error::KExceedsN {
            n: n.into(),
            k: k.into(),
        });
    }
    psi_falling(&fibonacci(), n, n - k)
}

/// All saturated chains from level `k` to level `n`, k ≥ 1.
pub fn max_chains_level_to_level(k: u32, n: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "level 0 is the root; use max_chains_from_root".into(),
        ));
    }
    Ok(BigInt::from(level_size(k)) * max_chains_from_fixed(k, n)?)
}

/// (n over k)_F as chains-from-a-fixed-vertex divided by chains-per-copy.
pub fn fibonomial_via_chains(n: u32, k: u32) -> Result<BigInt> {
    let per_source = max_chains_from_fixed(k, n)?;
    let per_copy = max_chains_from_root(n - k);
    let (q, r) = per_source.div_rem(&per_copy);
    if !r.is_zero() {
        return Err(Error::InexactDivision("fibonomial_via_chains"));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCountReport {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::ser_decimal")]
    pub per_source: BigInt,
    #[serde(serialize_with = "crate::ser_decimal")]
    pub total: BigInt,
    #[serde(serialize_with = "crate::ser_decimal")]
    pub fibonomial: BigInt,
}

impl ChainCountReport {
    /// Chain counts from level `k` to level `n`; `total` counts every source.
    pub fn new(k: u32, n: u32) -> Result<Self> {
        let per_source = max_chains_from_fixed(k, n)?;
        Ok(Self {
            n,
            k,
            total: BigInt::from(level_size(k)) * &per_source,
            per_source,
            fibonomial: fibonomial_via_chains(n, k)?,
        })
    }

    /// Number of copies of P_{n−k} over the whole level k:
    /// level_size(k) · (n over k)_F.
    pub fn copies_total(&self) -> BigInt {
        BigInt::from(level_size(self.k)) * &self.fibonomial
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// At k = 1 the copy reading of the fibonomial breaks down: F_1 = F_2, so
/// the level factor no longer tells the first level apart from the second.
/// The coefficient itself is still F_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K1Report {
    pub n: u32,
    #[serde(serialize_with = "crate::ser_decimal")]
    pub value: BigInt,
    pub f1_equals_f2: bool,
    pub flagged: bool,
}

pub fn check_k1_degeneracy(n: u32) -> Result<K1Report> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let value = fibonomial_def(n, 1)?;
    let f1_equals_f2 = fib(1) == fib(2);
    debug_assert_eq!(value, fib(n.into()));
    Ok(K1Report {
        n,
        value,
        f1_equals_f2,
        flagged: f1_equals_f2,
    })
}

/// The two summands of (n+1 over k)_F = F_{k+1} (n over k)_F + F_{n−k} (n over k−1)_F.
pub fn recurrence_class_split(n: u32, k: u32) -> Result<(BigInt, BigInt)> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let first = fib((k + 1).into()) * fibonomial_def(n, k)?;
    let second = fib((n - k).into()) * fibonomial_def(n, k - 1)?;
    Ok((first, second))
}

/// Where the DFS oracle starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Vertex(Vertex),
    /// Every vertex of the starting level.
    All,
}

/// Saturated chains from level `k` to level `n` by DFS over `truncate(n)`,
/// with the default bound and execution strategy.
pub fn brute_force_max_chains(k: u32, n: u32, source: Source) -> Result<BigInt> {
    brute_force_max_chains_with(Exec::default(), k, n, source, DEFAULT_ORACLE_MAX)
}

/// DFS oracle with an explicit strategy and bound on `n`. Work is split
/// across the starting vertices and their first-step successors.
pub fn brute_force_max_chains_with(
    exec: Exec,
    k: u32,
    n: u32,
    source: Source,
    bound: u32,
) -> Result<BigInt> {
    if n > bound {
        return Err(Error::AboveBound {
            what: "oracle level",
            value: n.into(),
            bound: bound.into(),
        });
    }
    if k > n {
        return Err(Error::KExceedsN {
            n: n.into(),
            k: k.into(),
        });
    }
    let t = truncate(n);
    let succ = t.successors();
    let starts: Vec<u64> = match source {
        Source::Vertex(v) => {
            if v.level != k {
                return Err(Error::InvalidArgument(format!(
                    "source {v} is not on level {k}"
                )));
            }
            Vertex::new(v.pos, v.level)?;
            vec![to_linear(v)]
        }
        Source::All => t.level(k).map(to_linear).collect(),
    };
    let target = level_start(n);
    let work: Vec<u64> = if k == n {
        starts
    } else {
        starts
            .iter()
            .flat_map(|&s| succ[s as usize].iter().copied())
            .collect()
    };
    Ok(par::sum_by(exec, &work, |&w| {
        BigInt::from(count_to_level(&succ, w, target))
    }))
}

/// Paths from `start` along cover edges until the first index at or past
/// `target` (the first vertex of the top level).
fn count_to_level(succ: &[Vec<u64>], start: u64, target: u64) -> u64 {
    let mut stack = vec![start];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        if v >= target {
            count += 1;
        } else {
            stack.extend(&succ[v as usize]);
        }
    }
    count
}

/// Upper limit on the copies the greedy demonstrator will scan.
pub const GREEDY_COPY_LIMIT: u64 = 200_000;

/// One family of pairwise chain-disjoint copies of P_m rooted at `root`,
/// picked greedily in lexicographic order of level subsets.
///
/// This only exhibits a family; it is not claimed to be maximum.
pub fn greedy_disjoint_copies(root: Vertex, m: u32) -> Result<Vec<CobwebCopy>> {
    let candidates = count_copies_rooted(root, m);
    if candidates > BigInt::from(GREEDY_COPY_LIMIT) {
        return Err(Error::AboveBound {
            what: "copies to scan",
            value: u64::try_from(&candidates).unwrap_or(u64::MAX),
            bound: GREEDY_COPY_LIMIT,
        });
    }
    let mut family: Vec<CobwebCopy> = Vec::new();
    for copy in enumerate_copies(root, m) {
        if family.iter().all(|c| c.chain_disjoint(&copy)) {
            family.push(copy);
        }
    }
    Ok(family)
}
