//! Incidence algebra of a level truncation: ζ (from the order and from the
//! closed Kronecker-delta formula), μ = ζ⁻¹, and chain counts from powers of
//! η = ζ − δ.
//!
//! Matrices are dense and indexed by linear vertex index (see
//! [`crate::poset::to_linear`]).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{self, fib_u64, from_linear, leq, level_size, level_start};

/// Dense upper-triangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize)]
struct MatrixJson {
    schema: u32,
    size: usize,
    rows: Vec<Vec<String>>,
}

impl TriangularMatrix {
    /// Builds the matrix from `f(row, col)`, consulted only for row <= col.
    pub fn from_fn<F>(size: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigInt,
    {
        let mut entries = vec![BigInt::zero(); size * size];
        for r in 0..size {
            for c in r..size {
                entries[r * size + c] = f(r, c);
            }
        }
        Self { size, entries }
    }

    /// Accepts a full square array and rejects anything below the diagonal.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "row {r} has {} entries, expected {size}",
                    row.len()
                )));
            }
            if let Some(c) = row[..r].iter().position(|v| !v.is_zero()) {
                return Err(Error::InvalidArgument(format!(
                    "nonzero entry below the diagonal at ({r}, {c})"
                )));
            }
            entries.extend(row);
        }
        Ok(Self { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |r, c| {
            if r == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    pub fn is_unitriangular(&self) -> bool {
        (0..self.size).all(|i| self.get(i, i).is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Leading `n × n` block.
    pub fn leading_block(&self, n: usize) -> Self {
        let n = n.min(self.size);
        Self::from_fn(n, |r, c| self.get(r, c).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "size mismatch");
        let n = self.size;
        let mut entries = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for m in r..n {
                let a = self.get(r, m);
                if a.is_zero() {
                    continue;
                }
                for c in m..n {
                    let b = other.get(m, c);
                    if !b.is_zero() {
                        entries[r * n + c] += a * b;
                    }
                }
            }
        }
        Self { size: n, entries }
    }

    /// η = self − δ.
    pub fn eta(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.size {
            out.entries[i * self.size + i] -= 1;
        }
        out
    }

    pub fn pow(&self, t: u32) -> Self {
        (0..t).fold(Self::identity(self.size), |acc, _| acc.mul(self))
    }

    /// Space-separated grid, one row per line.
    pub fn to_dense(&self) -> String {
        self.render(' ')
    }

    pub fn to_csv(&self) -> String {
        self.render(',')
    }

    fn render(&self, sep: char) -> String {
        let mut out = String::new();
        for r in 0..self.size {
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    out.push(sep);
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    /// `{"schema":1,"size":N,"rows":[["1","0",…],…]}` with decimal strings.
    pub fn to_json(&self) -> String {
        let rows = (0..self.size)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        serde_json::to_string(&MatrixJson {
            schema: 1,
            size: self.size,
            rows,
        })
        .expect("matrix serializes")
    }

    /// Parses the output of [`TriangularMatrix::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let rows = value["rows"]
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("missing `rows`".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::InvalidArgument("row is not an array".into()))?
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .and_then(|s| s.parse::<BigInt>().ok())
                            .ok_or_else(|| Error::InvalidArgument(format!("bad entry {v}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

/// Matrix size of the truncation at `levels`, F_{levels+2}.
pub fn truncation_size(levels: u32) -> usize {
    fib_u64(levels + 2) as usize
}

/// ζ of P_L straight from the order relation.
pub fn zeta_from_order(levels: u32) -> TriangularMatrix {
    TriangularMatrix::from_fn(truncation_size(levels), |x, y| {
        let related = leq(from_linear(x as u64), from_linear(y as u64));
        BigInt::from(u8::from(related))
    })
}

/// ζ = ζ₁ − ζ₀ from the closed Kronecker-delta formula, where ζ₁ is the
/// upper triangle of ones and
///
/// ζ₀(x, y) = Σ_{k≥0} Σ_{s≥1} δ(x, F_{s+1}+k) Σ_{1≤r≤F_s−k−1} δ(k+F_{s+1}+r, y).
///
/// The sums are evaluated term by term; nothing about levels is assumed.
pub fn zeta_explicit(size: usize) -> TriangularMatrix {
    let mut zeta0 = vec![0i64; size * size];
    let mut s = 1;
    while (fib_u64(s + 1) as usize) < size {
        let base = fib_u64(s + 1) as i64;
        let width = fib_u64(s) as i64;
        let mut k = 0i64;
        while ((base + k) as usize) < size {
            let x = (base + k) as usize;
            for r in 1..=(width - k - 1) {
                let y = (k + base + r) as usize;
                if y < size {
                    zeta0[x * size + y] += 1;
                }
            }
            k += 1;
        }
        s += 1;
    }
    TriangularMatrix::from_fn(size, |x, y| {
        // ζ₁(x, y) = Σ_k δ(x+k, y) = 1 on and above the diagonal
        BigInt::from(1 - zeta0[x * size + y])
    })
}

/// μ = ζ⁻¹ by back substitution: μ(x,x) = 1 and
/// μ(x,y) = −Σ_{x≤w<y} μ(x,w) z(w,y).
pub fn mobius(z: &TriangularMatrix) -> Result<TriangularMatrix> {
    if let Some(i) = (0..z.size()).find(|&i| !z.get(i, i).is_one()) {
        return Err(Error::NotUnitriangular { row: i, col: i });
    }
    let n = z.size();
    let mut entries = vec![BigInt::zero(); n * n];
    for x in 0..n {
        entries[x * n + x] = BigInt::one();
        for y in x + 1..n {
            let mut acc = BigInt::zero();
            for w in x..y {
                let m = &entries[x * n + w];
                let zeta = z.get(w, y);
                if !m.is_zero() && !zeta.is_zero() {
                    acc += m * zeta;
                }
            }
            entries[x * n + y] = -acc;
        }
    }
    Ok(TriangularMatrix { size: n, entries })
}

/// Entry (x, y) of η^length: the number of strict chains
/// x = z₀ < z₁ < … < z_length = y.
pub fn chain_count(z: &TriangularMatrix, x: usize, y: usize, length: u32) -> BigInt {
    let eta = z.eta();
    let n = z.size();
    let mut row = vec![BigInt::zero(); n];
    row[x] = BigInt::one();
    for _ in 0..length {
        let mut next = vec![BigInt::zero(); n];
        for (m, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, b) in eta.row(m).iter().enumerate().skip(m) {
                if !b.is_zero() {
                    next[c] += a * b;
                }
            }
        }
        row = next;
    }
    std::mem::take(&mut row[y])
}

/// Saturated-chain counts between two levels of P_L, as the product of the
/// per-step cover matrices. Rows index level `from_level` by position,
/// columns index level `to_level`.
pub fn maximal_chain_matrix(
    levels: u32,
    from_level: u32,
    to_level: u32,
) -> Result<Vec<Vec<BigInt>>> {
    if from_level > to_level || to_level > levels {
        return Err(Error::InvalidArgument(format!(
            "need from_level <= to_level <= {levels}, got {from_level}..{to_level}"
        )));
    }
    let t = poset::truncate(levels);
    let cover = |s: u32| -> Vec<Vec<BigInt>> {
        let (lo, hi) = (level_start(s), level_start(s + 1));
        let mut m = vec![vec![BigInt::zero(); level_size(s + 1) as usize]; level_size(s) as usize];
        for &(a, b) in t.edges() {
            if (lo..lo + level_size(s)).contains(&a) {
                m[(a - lo) as usize][(b - hi) as usize] = BigInt::one();
            }
        }
        m
    };
    let size = level_size(from_level) as usize;
    let mut acc: Vec<Vec<BigInt>> = (0..size)
        .map(|r| (0..size).map(|c| BigInt::from(u8::from(r == c))).collect())
        .collect();
    for s in from_level..to_level {
        let step = cover(s);
        let cols = step[0].len();
        acc = acc
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|c| row.iter().zip(&step).map(|(a, srow)| a * &srow[c]).sum())
                    .collect()
            })
            .collect();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{to_linear, truncate, Vertex};

    /// Leading 16×16 block of the printed staircase figure, verbatim.
    const FIGURE: [&str; 16] = [
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

    fn v(pos: u64, level: u32) -> usize {
        to_linear(Vertex::new(pos, level).unwrap()) as usize
    }

    /// Number of strict chains x < … < y by DFS over the order relation.
    fn dfs_chains(size: usize, x: usize, y: usize, by_length: &mut Vec<u64>, depth: usize) {
        if x == y {
            if by_length.len() <= depth {
                by_length.resize(depth + 1, 0);
            }
            by_length[depth] += 1;
            return;
        }
        for w in x + 1..size {
            let (a, b) = (from_linear(x as u64), from_linear(w as u64));
            if leq(a, b) && leq(b, from_linear(y as u64)) {
                dfs_chains(size, w, y, by_length, depth + 1);
            }
        }
    }

    #[test]
    fn zeta_from_order_rows() {
        let z = zeta_from_order(3);
        assert_eq!(z.size(), 5);
        assert_eq!(z.row(3)[3..], [BigInt::one(), BigInt::zero()]);
        let z = zeta_from_order(5);
        let row8: Vec<i32> = (8..13).map(|c| z.get(8, c).try_into().unwrap()).collect();
        assert_eq!(row8, [1, 0, 0, 0, 0]);
        let z = zeta_from_order(6);
        assert!((13..16).all(|c| z.get(8, c).is_one()));
        for l in 0..=8 {
            assert!(zeta_from_order(l).is_unitriangular());
        }
    }

    #[test]
    fn zeta_explicit_rows() {
        let z = zeta_explicit(21);
        let row = |r: usize, cols: std::ops::Range<usize>| -> Vec<i32> {
            cols.map(|c| z.get(r, c).try_into().unwrap()).collect()
        };
        assert_eq!(row(5, 5..9), [1, 0, 0, 1]);
        assert!(z.row(0).iter().all(One::is_one));
        assert_eq!(row(11, 11..16), [1, 0, 1, 1, 1]);
    }

    #[test]
    fn zeta_sources_agree() {
        for l in 0..=10 {
            let size = truncation_size(l);
            assert_eq!(zeta_from_order(l), zeta_explicit(size), "L = {l}");
        }
    }

    #[test]
    fn figure_block_matches_except_documented_cell() {
        let z = zeta_from_order(6).leading_block(16);
        for (r, line) in FIGURE.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                let printed = BigInt::from(ch.to_digit(10).unwrap());
                if (r, c) == (10, 13) {
                    // the figure prints 0; (3,5) lies below every level-6 vertex
                    assert_eq!(printed, BigInt::zero());
                    assert!(z.get(r, c).is_one());
                } else {
                    assert_eq!(*z.get(r, c), printed, "cell ({r}, {c})");
                }
            }
        }
    }

    #[test]
    fn zeros_right_of_diagonal() {
        let l = 7;
        let z = zeta_from_order(l);
        for x in 0..z.size() {
            let u = from_linear(x as u64);
            let zeros = z.row(x)[x + 1..].iter().filter(|e| e.is_zero()).count() as u64;
            assert_eq!(zeros, level_size(u.level) - u.pos, "row {x}");
        }
    }

    #[test]
    fn mobius_examples() {
        let z = zeta_from_order(5);
        let mu = mobius(&z).unwrap();
        assert!(mu.is_unitriangular());
        assert_eq!(*mu.get(0, v(1, 1)), BigInt::from(-1));
        assert_eq!(*mu.get(v(1, 2), v(1, 4)), BigInt::one());
    }

    #[test]
    fn mobius_matches_recursive_definition() {
        // μ(x,y) = −Σ_{x≤w<y, w≤y} μ(x,w), evaluated over the poset itself
        let l = 5;
        let n = truncation_size(l);
        let mu = mobius(&zeta_from_order(l)).unwrap();
        for x in 0..n {
            let mut by_hand = vec![BigInt::zero(); n];
            by_hand[x] = BigInt::one();
            for y in x + 1..n {
                let (vx, vy) = (from_linear(x as u64), from_linear(y as u64));
                if !leq(vx, vy) {
                    continue;
                }
                by_hand[y] = -(x..y)
                    .filter(|&w| {
                        let vw = from_linear(w as u64);
                        leq(vx, vw) && leq(vw, vy)
                    })
                    .map(|w| by_hand[w].clone())
                    .sum::<BigInt>();
            }
            assert_eq!(mu.row(x), &by_hand[..], "row {x}");
        }
    }

    #[test]
    fn mobius_inverts_zeta() {
        for l in 0..=10 {
            let z = zeta_from_order(l);
            let mu = mobius(&z).unwrap();
            let id = TriangularMatrix::identity(z.size());
            assert_eq!(mu.mul(&z), id, "L = {l}");
            assert_eq!(z.mul(&mu), id, "L = {l}");
        }
    }

    #[test]
    fn mobius_rejects_non_unitriangular() {
        let m = TriangularMatrix::from_fn(3, |r, c| BigInt::from(if r == c { 2 } else { 1 }));
        assert_eq!(mobius(&m), Err(Error::NotUnitriangular { row: 0, col: 0 }));
    }

    #[test]
    fn chain_count_examples() {
        let z = zeta_from_order(3);
        let top = v(1, 3);
        assert_eq!(chain_count(&z, 0, top, 1), BigInt::one());
        assert_eq!(chain_count(&z, 0, top, 2), BigInt::from(2));
        let total: BigInt = (1..=3).map(|t| chain_count(&z, 0, top, t)).sum();
        assert_eq!(total, BigInt::from(4));
    }

    #[test]
    fn eta_is_nilpotent() {
        for l in 0..=6 {
            let eta = zeta_from_order(l).eta();
            assert!(!eta.pow(l).is_zero() || l == 0);
            assert!(eta.pow(l + 1).is_zero(), "L = {l}");
        }
    }

    #[test]
    fn eta_powers_match_dfs() {
        for l in 0..=6 {
            let z = zeta_from_order(l);
            let n = z.size();
            let powers: Vec<_> = (1..=l + 1).map(|t| z.eta().pow(t)).collect();
            for x in 0..n {
                for y in x..n {
                    if !leq(from_linear(x as u64), from_linear(y as u64)) {
                        continue;
                    }
                    let mut by_length = Vec::new();
                    dfs_chains(n, x, y, &mut by_length, 0);
                    for (t, p) in powers.iter().enumerate() {
                        let expected = by_length.get(t + 1).copied().unwrap_or(0);
                        assert_eq!(*p.get(x, y), BigInt::from(expected));
                    }
                    let total: BigInt = powers.iter().map(|p| p.get(x, y).clone()).sum();
                    let dfs_total: u64 = by_length.iter().skip(1).sum();
                    assert_eq!(total, BigInt::from(dfs_total));
                }
            }
        }
    }

    #[test]
    fn maximal_chain_matrix_examples() {
        let m = maximal_chain_matrix(5, 0, 3).unwrap();
        assert_eq!(m, vec![vec![BigInt::one(), BigInt::one()]]);
        let m = maximal_chain_matrix(5, 2, 4).unwrap();
        assert!(m
            .iter()
            .all(|row| row.iter().sum::<BigInt>() == BigInt::from(6)));
        let m = maximal_chain_matrix(5, 3, 3).unwrap();
        assert_eq!(
            m,
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one()]
            ]
        );
        assert!(maximal_chain_matrix(5, 4, 3).is_err());
        assert!(maximal_chain_matrix(5, 2, 6).is_err());
    }

    #[test]
    fn maximal_chain_matrix_matches_dfs() {
        let l = 6;
        let t = truncate(l);
        let succ = t.successors();
        fn count(succ: &[Vec<u64>], from: u64, target: u64) -> u64 {
            if from == target {
                return 1;
            }
            succ[from as usize]
                .iter()
                .map(|&w| {
                    if w <= target {
                        count(succ, w, target)
                    } else {
                        0
                    }
                })
                .sum()
        }
        for a in 0..=l {
            for b in a..=l {
                let m = maximal_chain_matrix(l, a, b).unwrap();
                for (i, row) in m.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        let from = level_start(a) + i as u64;
                        let to = level_start(b) + j as u64;
                        assert_eq!(*e, BigInt::from(count(&succ, from, to)));
                    }
                }
            }
        }
    }

    #[test]
    fn exports() {
        let z = zeta_from_order(2);
        assert_eq!(z.to_dense(), "1 1 1\n0 1 1\n0 0 1\n");
        assert_eq!(z.to_csv(), "1,1,1\n0,1,1\n0,0,1\n");
        let mu = mobius(&zeta_from_order(4)).unwrap();
        let back = TriangularMatrix::from_json(&mu.to_json()).unwrap();
        assert_eq!(back, mu);
        assert!(mu
            .to_json()
            .starts_with("{\"schema\":1,\"size\":8,\"rows\":[[\"1\",\"-1\""));
    }

    #[test]
    fn from_rows_rejects_lower_entries() {
        let rows = vec![
            vec![BigInt::one(), BigInt::zero()],
            vec![BigInt::one(), BigInt::one()],
        ];
        assert!(TriangularMatrix::from_rows(rows).is_err());
    }
}
