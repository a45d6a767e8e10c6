//! The crosscheck harness: every identity the library relies on, checked at
//! configurable bounds and reported as one PASS/FAIL row per check.

use std::fmt::Display;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use cobweb_core::chains::{
    brute_force_max_chains_with, check_k1_degeneracy, fibonomial_via_chains, max_chains_from_fixed,
    max_chains_from_root, max_chains_level_to_level, recurrence_class_split, ChainCountReport,
    Source,
};
use cobweb_core::fib::{
    fib, fibonomial_def, psi_binomial, FibonomialTable, PsiSequence, RecurrenceForm,
};
use cobweb_core::incidence::{
    mobius, truncation_size, zeta_explicit, zeta_from_order, TriangularMatrix,
};
use cobweb_core::konvalina::{
    brute_sum, c_first_kind, gaussian_binomial, s_second_kind, specialize, Kind, Specialization,
};
use cobweb_core::paths::{
    beck_identity, fibonomial_via_gv_with, pascal_diagonal, BeckForm, FencePoset, Zigzag, GV_MAX,
};
use cobweb_core::poset::{
    count_copies_rooted, enumerate_copies, from_linear, leq, level_size, to_linear, truncate,
    Vertex,
};
use cobweb_core::{Exec, WeightVector};

/// Leading 16×16 block of the printed staircase figure. Cell (10, 13) is
/// printed as 0 but the order relation gives 1 there.
pub const FIGURE_ZETA: [&str; 16] = [
    "1111111111111111",
    "0111111111111111",
    "0011111111111111",
    "0001011111111111",
    "0000111111111111",
    "0000010011111111",
    "0000001011111111",
    "0000000111111111",
    "0000000010000111",
    "0000000001000111",
    "0000000000100011",
    "0000000000010111",
    "0000000000001111",
    "0000000000000100",
    "0000000000000010",
    "0000000000000001",
];

/// The one figure cell that disagrees with the order relation.
pub const FIGURE_TYPO: (usize, usize) = (10, 13);

pub const DEFAULT_MAX_N: u32 = 10;
pub const DEFAULT_ORACLE_MAX_N: u32 = 7;

/// Number of random weight vectors the Konvalina check draws.
pub const KONVALINA_SAMPLES: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckConfig {
    pub max_n: u32,
    pub oracle_max_n: u32,
    pub jobs: usize,
    /// Name of a check whose first comparison is deliberately corrupted.
    pub fault: Option<String>,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            oracle_max_n: DEFAULT_ORACLE_MAX_N,
            jobs: 1,
            fault: None,
        }
    }
}

impl CrosscheckConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_n == 0 || self.oracle_max_n == 0 || self.jobs == 0 {
            return Err("--max-n, --oracle-max-n and --jobs must be positive".into());
        }
        if self.oracle_max_n > self.max_n {
            return Err(format!(
                "--oracle-max-n ({}) must not exceed --max-n ({})",
                self.oracle_max_n, self.max_n
            ));
        }
        if let Some(name) = &self.fault {
            if !CHECKS.iter().any(|c| c.name == name) {
                return Err(format!("unknown check `{name}`"));
            }
        }
        Ok(())
    }
}

/// How a check's range follows the configuration.
#[derive(Debug, Clone, Copy)]
enum Scale {
    /// Runs exactly as written.
    Fixed,
    /// `nominal` at the default --max-n, proportionally otherwise, never
    /// above `cap`.
    MaxN { nominal: u32, cap: u32 },
    /// Tracks --oracle-max-n directly, never above `cap`.
    Oracle { cap: u32 },
}

struct Check {
    name: &'static str,
    /// Smallest --max-n at which the check is meaningful.
    min_max_n: u32,
    scale: Scale,
    run: fn(&mut Ctx) -> Result<String, String>,
}

/// Per-check context: the resolved bound and the comparison helper.
pub struct Ctx {
    bound: u32,
    fault: bool,
}

impl Ctx {
    fn eq<T: PartialEq + Display + Clone + std::ops::Add<Output = T> + From<u8>>(
        &mut self,
        got: T,
        want: T,
        what: impl FnOnce() -> String,
    ) -> Result<(), String> {
        let got = if std::mem::take(&mut self.fault) {
            got + T::from(1)
        } else {
            got
        };
        if got == want {
            Ok(())
        } else {
            Err(format!("{}: got {got}, expected {want}", what()))
        }
    }

    fn holds(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
        let ok = ok && !std::mem::take(&mut self.fault);
        if ok {
            Ok(())
        } else {
            Err(what())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub bound: Option<u32>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let width = self
            .results
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = format!(
            "{:<width$}  {:>5}  {:<6}  detail\n",
            "check", "bound", "result"
        );
        for r in &self.results {
            let bound = r.bound.map_or_else(|| "-".to_string(), |b| b.to_string());
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{:<width$}  {:>5}  {:<6}  {}\n",
                r.name, bound, status, r.detail
            ));
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        out.push_str(&format!(
            "summary: {passed} passed, {} failed\n",
            self.results.len() - passed
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,bound,result,detail\n");
        for r in &self.results {
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                r.name,
                r.bound.map_or_else(String::new, |b| b.to_string()),
                if r.passed { "PASS" } else { "FAIL" },
                r.detail.replace('"', "\"\"")
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<_> = self
            .results
            .iter()
            .map(|r| json!({"name": r.name, "bound": r.bound, "passed": r.passed, "detail": r.detail}))
            .collect();
        json!({"schema": 1, "passed": self.all_passed(), "checks": checks}).to_string()
    }
}

/// Names of every registered check, in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn resolve(scale: Scale, cfg: &CrosscheckConfig) -> Option<u32> {
    match scale {
        Scale::Fixed => None,
        Scale::MaxN { nominal, cap } => {
            let scaled = (nominal * cfg.max_n).div_ceil(DEFAULT_MAX_N);
            Some(scaled.min(cap))
        }
        Scale::Oracle { cap } => Some(cfg.oracle_max_n.min(cap)),
    }
}

fn run_one(check: &Check, cfg: &CrosscheckConfig) -> CheckResult {
    let bound = resolve(check.scale, cfg);
    let mut ctx = Ctx {
        bound: bound.unwrap_or(0),
        fault: cfg.fault.as_deref() == Some(check.name),
    };
    let outcome = (check.run)(&mut ctx);
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        name: check.name.to_string(),
        bound,
        passed,
        detail,
    }
}

/// Runs every applicable check; rows come back in registry order regardless
/// of `jobs`.
pub fn run(cfg: &CrosscheckConfig) -> Report {
    let selected: Vec<&Check> = CHECKS.iter().filter(|c| cfg.max_n >= c.min_max_n).collect();
    let results = run_selected(&selected, cfg);
    Report { results }
}

#[cfg(feature = "parallel")]
fn run_selected(selected: &[&Check], cfg: &CrosscheckConfig) -> Vec<CheckResult> {
    use rayon::prelude::*;
    if cfg.jobs <= 1 {
        return selected.iter().map(|c| run_one(c, cfg)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .expect("thread pool");
    // collect() on an indexed parallel iterator keeps the input order
    pool.install(|| selected.par_iter().map(|c| run_one(c, cfg)).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_selected(selected: &[&Check], cfg: &CrosscheckConfig) -> Vec<CheckResult> {
    selected.iter().map(|c| run_one(c, cfg)).collect()
}

fn big(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

const CHECKS: &[Check] = &[
    Check {
        name: "worked-examples",
        min_max_n: 5,
        scale: Scale::Fixed,
        run: check_worked_examples,
    },
    Check {
        name: "fib.symmetry",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_symmetry,
    },
    Check {
        name: "fib.recurrences",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_recurrences,
    },
    Check {
        name: "fib.cross-identity",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_cross_identity,
    },
    Check {
        name: "fib.integrality",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 60,
            cap: 90,
        },
        run: check_integrality,
    },
    Check {
        name: "fib.psi-natural-pascal",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_psi_natural,
    },
    Check {
        name: "poset.linear-index",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 12,
            cap: 20,
        },
        run: check_linear_index,
    },
    Check {
        name: "poset.partial-order",
        min_max_n: 1,
        scale: Scale::MaxN { nominal: 7, cap: 8 },
        run: check_partial_order,
    },
    Check {
        name: "poset.edge-count",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 12,
            cap: 14,
        },
        run: check_edge_count,
    },
    Check {
        name: "poset.copies",
        min_max_n: 1,
        scale: Scale::MaxN { nominal: 6, cap: 7 },
        run: check_copies,
    },
    Check {
        name: "zeta.equivalence",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 10,
            cap: 12,
        },
        run: check_zeta,
    },
    Check {
        name: "mobius.inverse",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 10,
            cap: 12,
        },
        run: check_mobius,
    },
    Check {
        name: "eta.chains",
        min_max_n: 1,
        scale: Scale::MaxN { nominal: 6, cap: 7 },
        run: check_eta,
    },
    Check {
        name: "chains.dfs-oracle",
        min_max_n: 1,
        scale: Scale::Oracle { cap: 9 },
        run: check_dfs_oracle,
    },
    Check {
        name: "chains.division-identity",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 12,
            cap: 40,
        },
        run: check_division_identity,
    },
    Check {
        name: "chains.k1-degeneracy",
        min_max_n: 2,
        scale: Scale::MaxN {
            nominal: 10,
            cap: 40,
        },
        run: check_k1,
    },
    Check {
        name: "fibonomial.five-way",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 12,
            cap: GV_MAX,
        },
        run: check_five_way,
    },
    Check {
        name: "recurrence.class-split",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_class_split,
    },
    Check {
        name: "konvalina.dp-vs-brute",
        min_max_n: 1,
        scale: Scale::MaxN { nominal: 8, cap: 8 },
        run: check_konvalina_dp,
    },
    Check {
        name: "konvalina.specializations",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 10,
            cap: 14,
        },
        run: check_konvalina_special,
    },
    Check {
        name: "gv.pascal-diagonal",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_pascal_diagonal,
    },
    Check {
        name: "fence.ideals",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 20,
            cap: 40,
        },
        run: check_fence,
    },
    Check {
        name: "beck.identities",
        min_max_n: 1,
        scale: Scale::MaxN {
            nominal: 30,
            cap: 60,
        },
        run: check_beck,
    },
];

fn check_worked_examples(ctx: &mut Ctx) -> Result<String, String> {
    // (k, n, level factor × fibonomial)
    const CASES: [(u32, u32, u32); 5] = [(3, 4, 6), (2, 4, 6), (3, 5, 30), (2, 5, 15), (4, 5, 15)];
    for (k, n, want) in CASES {
        let report = ChainCountReport::new(k, n).map_err(|e| e.to_string())?;
        ctx.eq(report.copies_total(), big(want), || format!("k={k} n={n}"))?;
    }
    for (n, want) in [(4, 3), (5, 5)] {
        let r = check_k1_degeneracy(n).map_err(|e| e.to_string())?;
        ctx.eq(r.value, big(want), || format!("k=1 n={n}"))?;
        ctx.holds(r.flagged, || format!("k=1 n={n} not flagged"))?;
    }
    Ok("5 worked examples, 2 flagged k=1 cases".into())
}

fn check_symmetry(ctx: &mut Ctx) -> Result<String, String> {
    let mut count = 0;
    for n in 0..=ctx.bound {
        for k in 0..=n {
            let a = fibonomial_def(n, k).map_err(|e| e.to_string())?;
            let b = fibonomial_def(n, n - k).map_err(|e| e.to_string())?;
            ctx.eq(a, b, || format!("({n},{k})"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn check_recurrences(ctx: &mut Ctx) -> Result<String, String> {
    let a = FibonomialTable::build(RecurrenceForm::A, ctx.bound);
    let b = FibonomialTable::build(RecurrenceForm::B, ctx.bound);
    for n in 0..=ctx.bound {
        for k in 0..=n {
            let d = fibonomial_def(n, k).map_err(|e| e.to_string())?;
            ctx.eq(a.get(n, k).unwrap_or_default(), d.clone(), || {
                format!("form A ({n},{k})")
            })?;
            ctx.eq(b.get(n, k).unwrap_or_default(), d, || {
                format!("form B ({n},{k})")
            })?;
        }
    }
    Ok("forms A and B equal the definition".into())
}

fn check_cross_identity(ctx: &mut Ctx) -> Result<String, String> {
    for n in 1..=ctx.bound {
        for k in 1..=n {
            let lhs = fib(k.into()) * fibonomial_def(n, k).map_err(|e| e.to_string())?;
            let rhs =
                fib((n - k + 1).into()) * fibonomial_def(n, k - 1).map_err(|e| e.to_string())?;
            ctx.eq(lhs, rhs, || format!("({n},{k})"))?;
        }
    }
    Ok("F_k (n,k) = F_{n-k+1} (n,k-1)".into())
}

fn check_integrality(ctx: &mut Ctx) -> Result<String, String> {
    for n in 0..=ctx.bound {
        for k in 0..=n {
            let v = fibonomial_def(n, k).map_err(|e| format!("({n},{k}): {e}"))?;
            ctx.holds(v >= BigInt::from(1), || format!("({n},{k}) = {v}"))?;
        }
    }
    Ok("exact division throughout".into())
}

fn check_psi_natural(ctx: &mut Ctx) -> Result<String, String> {
    let nat = PsiSequence::natural();
    let mut row = vec![BigInt::from(1)];
    for n in 0..=ctx.bound {
        if n > 0 {
            let mut next = vec![BigInt::from(1); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        for k in 0..=n {
            let v = psi_binomial(&nat, n, k).map_err(|e| e.to_string())?;
            ctx.holds(v.is_integer(), || format!("({n},{k}) not integral"))?;
            ctx.eq(v.to_integer(), row[k as usize].clone(), || {
                format!("({n},{k})")
            })?;
        }
    }
    Ok("equals Pascal's triangle".into())
}

fn check_linear_index(ctx: &mut Ctx) -> Result<String, String> {
    let n = truncation_size(ctx.bound) as u64;
    let mut last = 0;
    for i in 0..n {
        let v = from_linear(i);
        ctx.eq(to_linear(v), i, || format!("index {i}"))?;
        ctx.holds(v.level >= last, || format!("level drops at {i}"))?;
        last = v.level;
    }
    Ok(format!("{n} indices"))
}

fn check_partial_order(ctx: &mut Ctx) -> Result<String, String> {
    let vs: Vec<Vertex> = truncate(ctx.bound).vertices().collect();
    for &a in &vs {
        ctx.holds(leq(a, a), || format!("{a} not reflexive"))?;
        for &b in &vs {
            if a != b && leq(a, b) && leq(b, a) {
                return Err(format!("{a}, {b} violate antisymmetry"));
            }
            if leq(a, b) {
                for &c in &vs {
                    if leq(b, c) && !leq(a, c) {
                        return Err(format!("{a} <= {b} <= {c} not transitive"));
                    }
                }
            }
        }
    }
    Ok(format!("{} vertices", vs.len()))
}

fn check_edge_count(ctx: &mut Ctx) -> Result<String, String> {
    for l in 0..=ctx.bound {
        let t = truncate(l);
        ctx.eq(t.vertex_count(), truncation_size(l) as u64, || {
            format!("vertices at L={l}")
        })?;
        let expected: u64 = (0..l).map(|s| level_size(s) * level_size(s + 1)).sum();
        ctx.eq(t.edges().len() as u64, expected, || {
            format!("edges at L={l}")
        })?;
    }
    Ok("vertex and edge counts".into())
}

fn check_copies(ctx: &mut Ctx) -> Result<String, String> {
    let mut roots = 0;
    for k in 0..=ctx.bound {
        for m in 0..=ctx.bound - k {
            for pos in 1..=level_size(k) {
                let root = Vertex { level: k, pos };
                let n = enumerate_copies(root, m).len();
                ctx.eq(count_copies_rooted(root, m), big(n), || {
                    format!("{root} m={m}")
                })?;
                roots += 1;
            }
        }
    }
    Ok(format!("{roots} (root, m) pairs enumerated"))
}

fn check_zeta(ctx: &mut Ctx) -> Result<String, String> {
    for l in 0..=ctx.bound {
        let a = zeta_from_order(l);
        let b = zeta_explicit(truncation_size(l));
        ctx.holds(a == b, || format!("order and explicit ζ differ at L={l}"))?;
    }
    if ctx.bound >= 6 {
        let z = zeta_from_order(6).leading_block(16);
        for (r, line) in FIGURE_ZETA.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                let printed = BigInt::from(ch.to_digit(10).unwrap_or(9));
                let want = if (r, c) == FIGURE_TYPO {
                    BigInt::from(1)
                } else {
                    printed
                };
                ctx.eq(z.get(r, c).clone(), want, || {
                    format!("figure cell ({r},{c})")
                })?;
            }
        }
        Ok("order = explicit; figure block matches except cell (10,13)".into())
    } else {
        Ok("order = explicit".into())
    }
}

fn check_mobius(ctx: &mut Ctx) -> Result<String, String> {
    for l in 0..=ctx.bound {
        let z = zeta_from_order(l);
        let mu = mobius(&z).map_err(|e| e.to_string())?;
        let id = TriangularMatrix::identity(z.size());
        ctx.holds(mu.mul(&z) == id && z.mul(&mu) == id, || {
            format!("μζ ≠ δ at L={l}")
        })?;
    }
    Ok(format!("size up to {}", truncation_size(ctx.bound)))
}

fn check_eta(ctx: &mut Ctx) -> Result<String, String> {
    for l in 0..=ctx.bound {
        let z = zeta_from_order(l);
        let eta = z.eta();
        let n = z.size();
        let mut power = eta.clone();
        let mut total = TriangularMatrix::from_fn(n, |_, _| BigInt::from(0));
        for _ in 0..l {
            total = TriangularMatrix::from_fn(n, |r, c| total.get(r, c) + power.get(r, c));
            power = power.mul(&eta);
        }
        ctx.holds(power.is_zero(), || format!("η^{} ≠ 0 at L={l}", l + 1))?;
        // strict chains x < … < y, counted by dynamic programming over the order
        for x in 0..n {
            let mut chains = vec![BigInt::from(0); n];
            for y in x + 1..n {
                let (vx, vy) = (from_linear(x as u64), from_linear(y as u64));
                if !leq(vx, vy) {
                    continue;
                }
                let through: BigInt = (x + 1..y)
                    .filter(|&w| leq(from_linear(w as u64), vy))
                    .map(|w| chains[w].clone())
                    .sum();
                chains[y] = through + 1;
                ctx.eq(total.get(x, y).clone(), chains[y].clone(), || {
                    format!("Σ η^t ({x},{y}) at L={l}")
                })?;
            }
        }
    }
    Ok("nilpotent; Σ η^t counts strict chains".into())
}

fn check_dfs_oracle(ctx: &mut Ctx) -> Result<String, String> {
    let bound = ctx.bound;
    let mut sources = 0;
    for n in 0..=bound {
        let root =
            brute_force_max_chains_with(Exec::default(), 0, n, Source::Vertex(Vertex::ROOT), bound)
                .map_err(|e| e.to_string())?;
        ctx.eq(root, max_chains_from_root(n), || {
            format!("root to level {n}")
        })?;
        for k in 1..=n {
            let want = max_chains_from_fixed(k, n).map_err(|e| e.to_string())?;
            for pos in 1..=level_size(k) {
                let v = Vertex { level: k, pos };
                let got =
                    brute_force_max_chains_with(Exec::default(), k, n, Source::Vertex(v), bound)
                        .map_err(|e| e.to_string())?;
                ctx.eq(got, want.clone(), || format!("{v} to level {n}"))?;
                sources += 1;
            }
        }
    }
    Ok(format!("{sources} fixed sources plus the root"))
}

fn check_division_identity(ctx: &mut Ctx) -> Result<String, String> {
    for n in 1..=ctx.bound {
        for k in 1..=n {
            let lhs = BigInt::from(level_size(k))
                * fibonomial_via_chains(n, k).map_err(|e| e.to_string())?
                * max_chains_from_root(n - k);
            let rhs = max_chains_level_to_level(k, n).map_err(|e| e.to_string())?;
            ctx.eq(lhs, rhs, || format!("({n},{k})"))?;
        }
    }
    Ok("k_F (n,k)_F m_F! = [level k -> level n]".into())
}

fn check_k1(ctx: &mut Ctx) -> Result<String, String> {
    for n in 2..=ctx.bound {
        let r = check_k1_degeneracy(n).map_err(|e| e.to_string())?;
        ctx.eq(r.value, fib(n.into()), || format!("n={n}"))?;
        ctx.holds(r.flagged && r.f1_equals_f2, || format!("n={n} not flagged"))?;
    }
    Ok("(n,1)_F = F_n, flagged".into())
}

fn check_five_way(ctx: &mut Ctx) -> Result<String, String> {
    let bound = ctx.bound;
    let a = FibonomialTable::build(RecurrenceForm::A, bound);
    let b = FibonomialTable::build(RecurrenceForm::B, bound);
    for n in 0..=bound {
        for k in 0..=n {
            let d = fibonomial_def(n, k).map_err(|e| e.to_string())?;
            let values = [
                ("recA", a.get(n, k).unwrap_or_default()),
                ("recB", b.get(n, k).unwrap_or_default()),
                (
                    "chains",
                    fibonomial_via_chains(n, k).map_err(|e| e.to_string())?,
                ),
                (
                    "gv",
                    fibonomial_via_gv_with(Exec::default(), n, k).map_err(|e| e.to_string())?,
                ),
            ];
            for (method, v) in values {
                ctx.eq(v, d.clone(), || format!("{method} at ({n},{k})"))?;
            }
        }
    }
    Ok("def = recA = recB = chains = gv".into())
}

fn check_class_split(ctx: &mut Ctx) -> Result<String, String> {
    for n in 1..=ctx.bound {
        for k in 1..=n {
            let (first, second) = recurrence_class_split(n, k).map_err(|e| e.to_string())?;
            let want = fibonomial_def(n + 1, k).map_err(|e| e.to_string())?;
            ctx.eq(first + second, want, || format!("({n},{k})"))?;
        }
    }
    Ok("first + second = (n+1,k)_F".into())
}

/// `count` weight vectors with 1..=max_len entries drawn from 1..=5, from a
/// fixed seed.
pub fn sample_weight_vectors(count: usize, max_len: usize, seed: u64) -> Vec<WeightVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            let mut w: Vec<u64> = (0..len).map(|_| rng.random_range(1..=5)).collect();
            w.sort_unstable();
            WeightVector::new(w).expect("sorted positive weights")
        })
        .collect()
}

fn check_konvalina_dp(ctx: &mut Ctx) -> Result<String, String> {
    let max_len = ctx.bound as usize;
    let vectors = sample_weight_vectors(KONVALINA_SAMPLES, max_len, 0x5eed);
    let mut comparisons = 0;
    for w in &vectors {
        for k in 0..=max_len {
            let brute = brute_sum(w, k, Kind::Second).map_err(|e| e.to_string())?;
            ctx.eq(s_second_kind(w, k), brute, || format!("S_{k} of {w:?}"))?;
            comparisons += 1;
            if k <= w.len() {
                let brute = brute_sum(w, k, Kind::First).map_err(|e| e.to_string())?;
                let dp = c_first_kind(w, k).map_err(|e| e.to_string())?;
                ctx.eq(dp, brute, || format!("C_{k} of {w:?}"))?;
                comparisons += 1;
            }
        }
    }
    Ok(format!(
        "{} vectors, {comparisons} comparisons",
        vectors.len()
    ))
}

fn stirling_tables(n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let zero = || vec![vec![BigInt::from(0); n + 1]; n + 1];
    let (mut first, mut second) = (zero(), zero());
    first[0][0] = BigInt::from(1);
    second[0][0] = BigInt::from(1);
    for i in 1..=n {
        for j in 1..=i {
            first[i][j] = &first[i - 1][j - 1] + &first[i - 1][j] * (i - 1);
            second[i][j] = &second[i - 1][j - 1] + &second[i - 1][j] * j;
        }
    }
    (first, second)
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let mut row = vec![BigInt::from(1); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

fn check_konvalina_special(ctx: &mut Ctx) -> Result<String, String> {
    let uniform = ctx.bound as usize;
    let geometric = (uniform * 6).div_ceil(10);
    let arithmetic = (uniform * 7).div_ceil(10);
    let p = pascal(2 * uniform);
    for n in 1..=uniform {
        let w = specialize(Specialization::Uniform, n).map_err(|e| e.to_string())?;
        for k in 0..=uniform {
            if k <= n {
                let c = c_first_kind(&w, k).map_err(|e| e.to_string())?;
                ctx.eq(c, p[n][k].clone(), || format!("uniform C n={n} k={k}"))?;
            }
            ctx.eq(s_second_kind(&w, k), p[n + k - 1][k].clone(), || {
                format!("uniform S n={n} k={k}")
            })?;
        }
    }
    for q in [2u64, 3] {
        for n in 1..=geometric {
            let w = specialize(Specialization::Geometric(q), n).map_err(|e| e.to_string())?;
            for k in 0..=geometric {
                let g = |a: usize, b: usize| {
                    gaussian_binomial(a as u32, b as u32, q).map_err(|e| e.to_string())
                };
                if k <= n {
                    let scale = BigInt::from(q).pow((k * k.saturating_sub(1) / 2) as u32);
                    let c = c_first_kind(&w, k).map_err(|e| e.to_string())?;
                    ctx.eq(c, scale * g(n, k)?, || {
                        format!("geometric({q}) C n={n} k={k}")
                    })?;
                }
                ctx.eq(s_second_kind(&w, k), g(n + k - 1, k)?, || {
                    format!("geometric({q}) S n={n} k={k}")
                })?;
            }
        }
    }
    let (s1, s2) = stirling_tables(2 * arithmetic + 1);
    for n in 1..=arithmetic {
        let w = specialize(Specialization::Arithmetic, n).map_err(|e| e.to_string())?;
        for k in 0..=arithmetic {
            ctx.eq(s_second_kind(&w, k), s2[n + k][n].clone(), || {
                format!("arithmetic S n={n} k={k}")
            })?;
            if k <= n {
                let c = c_first_kind(&w, k).map_err(|e| e.to_string())?;
                ctx.eq(c, s1[n + 1][n + 1 - k].clone(), || {
                    format!("arithmetic C n={n} k={k}")
                })?;
            }
        }
    }
    Ok(format!(
        "binomial n,k<={uniform}; Gaussian q=2,3 n,k<={geometric}; Stirling n,k<={arithmetic}"
    ))
}

fn check_pascal_diagonal(ctx: &mut Ctx) -> Result<String, String> {
    for n in 0..=ctx.bound {
        ctx.eq(pascal_diagonal(n.into()), fib((n + 1).into()), || {
            format!("n={n}")
        })?;
    }
    Ok("Σ C(r, n-r) = F_{n+1}".into())
}

fn check_fence(ctx: &mut Ctx) -> Result<String, String> {
    let brute_max = (ctx.bound * 9)
        .div_ceil(10)
        .min(cobweb_core::paths::FENCE_BRUTE_MAX);
    for n in 1..=ctx.bound {
        let fence = FencePoset::new(n);
        let transfer = fence.ideals_transfer();
        ctx.eq(transfer.clone(), fib((n + 2).into()), || {
            format!("transfer n={n}")
        })?;
        if n <= brute_max {
            for z in [Zigzag::UpFirst, Zigzag::DownFirst] {
                let brute = FencePoset::with_orientation(n, z)
                    .ideals_brute(Exec::default())
                    .map_err(|e| e.to_string())?;
                ctx.eq(BigInt::from(brute), transfer.clone(), || {
                    format!("brute {z:?} n={n}")
                })?;
            }
        }
    }
    Ok(format!("ideals = F_(n+2); brute force to n={brute_max}"))
}

fn check_beck(ctx: &mut Ctx) -> Result<String, String> {
    let mut count = 0;
    for n in 1..=ctx.bound {
        for k in 1..=n {
            for form in [BeckForm::One, BeckForm::Two] {
                let ok = beck_identity(n, k, form).map_err(|e| e.to_string())?;
                ctx.holds(ok, || format!("{form:?} fails at n={n} k={k}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_passes() {
        let report = run(&CrosscheckConfig::default());
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.results.len() >= 12);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn small_config_runs_fewer_checks() {
        let cfg = CrosscheckConfig {
            max_n: 4,
            oracle_max_n: 4,
            ..Default::default()
        };
        let report = run(&cfg);
        assert!(report.all_passed(), "{}", report.to_text());
        assert!(report.results.len() < CHECKS.len());
    }

    #[test]
    fn every_check_detects_an_injected_fault() {
        for name in check_names() {
            let cfg = CrosscheckConfig {
                max_n: 5,
                oracle_max_n: 5,
                jobs: 1,
                fault: Some(name.to_string()),
            };
            let report = run(&cfg);
            let failed: Vec<_> = report
                .results
                .iter()
                .filter(|r| !r.passed)
                .map(|r| r.name.as_str())
                .collect();
            assert_eq!(failed, vec![name]);
            assert_eq!(report.exit_code(), 1);
        }
    }

    #[test]
    fn validation() {
        let bad = CrosscheckConfig {
            max_n: 5,
            oracle_max_n: 7,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = CrosscheckConfig {
            fault: Some("nope".into()),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(CrosscheckConfig::default().validate().is_ok());
    }

    #[test]
    fn sampled_vectors_are_deterministic() {
        let a = sample_weight_vectors(50, 8, 1);
        assert_eq!(a, sample_weight_vectors(50, 8, 1));
        assert!(a.iter().all(|w| (1..=8).contains(&w.len())));
    }
}
