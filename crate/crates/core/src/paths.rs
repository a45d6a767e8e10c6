//! Fibonomials as sums of binomial determinants over index subsets, and
//! Fibonacci numbers as order-ideal counts of fence posets.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fib::fib_signed;
use crate::par::{self, Exec};
use crate::poset::binomial;

/// Largest N accepted by [`fibonomial_via_gv`]; the sum has C(N, k) terms.
pub const GV_MAX: u32 = 14;

/// Largest fence the brute-force ideal enumerator accepts.
pub const FENCE_BRUTE_MAX: u32 = 25;

/// R = {r_1 < … < r_k} ⊆ {0, …, n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSubset(Vec<u64>);

impl IndexSubset {
    pub fn new(r: Vec<u64>, n: u64) -> Result<Self> {
        if r.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{r:?} is not strictly increasing"
            )));
        }
        if r.last().is_some_and(|&x| x > n) {
            return Err(Error::InvalidArgument(format!("{r:?} leaves 0..={n}")));
        }
        Ok(Self(r))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// M[i][j] = C(r_i, n − r_{k+1−j}), with C(a, b) = 0 outside 0 ≤ b ≤ a.
pub fn path_matrix(r: &IndexSubset, n: u64) -> Vec<Vec<BigInt>> {
    let r = r.as_slice();
    let k = r.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let top = r[k - 1 - j];
                    if top > n {
                        BigInt::zero()
                    } else {
                        binomial(r[i], n - top)
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..k {
        let Some(pivot) = (p..k).find(|&r| !m[r][p].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != p {
            m.swap(pivot, p);
            sign = -sign;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = &m[i][j] * &m[p][p] - &m[i][p] * &m[p][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = q;
            }
        }
        prev = m[p][p].clone();
    }
    if k == 0 {
        sign
    } else {
        sign * &m[k - 1][k - 1]
    }
}

/// N(R) = det M for the binomial matrix of [`path_matrix`].
pub fn path_determinant(r: &IndexSubset, n: u64) -> BigInt {
    determinant(path_matrix(r, n))
}

/// Every k-subset of {0, …, big_n − 1} with its determinant.
pub fn gv_terms(big_n: u32, k: u32) -> Result<Vec<(IndexSubset, BigInt)>> {
    check_gv(big_n, k)?;
    let n = u64::from(big_n).saturating_sub(1);
    Ok((0..u64::from(big_n))
        .combinations(k as usize)
        .map(|r| {
            let r = IndexSubset(r);
            let d = path_determinant(&r, n);
            (r, d)
        })
        .collect())
}

fn check_gv(big_n: u32, k: u32) -> Result<()> {
    if big_n > GV_MAX {
        return Err(Error::AboveBound {
            what: "N",
            value: big_n.into(),
            bound: GV_MAX.into(),
        });
    }
    if k > big_n {
        return Err(Error::KExceedsN {
            n: big_n.into(),
            k: k.into(),
        });
    }
    Ok(())
}

/// (N over k)_F = Σ_R N(R) over k-subsets R of {0, …, N−1}.
pub fn fibonomial_via_gv(big_n: u32, k: u32) -> Result<BigInt> {
    fibonomial_via_gv_with(Exec::default(), big_n, k)
}

pub fn fibonomial_via_gv_with(exec: Exec, big_n: u32, k: u32) -> Result<BigInt> {
    check_gv(big_n, k)?;
    let n = u64::from(big_n).saturating_sub(1);
    let subsets: Vec<Vec<u64>> = (0..u64::from(big_n)).combinations(k as usize).collect();
    Ok(par::sum_by(exec, &subsets, |r| {
        determinant(path_matrix(&IndexSubset(r.clone()), n))
    }))
}

/// Σ_{r=0}^{n} C(r, n − r), the shallow-diagonal sum of Pascal's triangle.
pub fn pascal_diagonal(n: u64) -> BigInt {
    (0..=n).map(|r| binomial(r, n - r)).sum()
}

/// Orientation of the first comparison in a fence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zigzag {
    /// x_1 < x_2 > x_3 < …
    UpFirst,
    /// x_1 > x_2 < x_3 > …
    DownFirst,
}

/// The n-element fence: consecutive elements are comparable, alternating
/// direction, and nothing else is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FencePoset {
    n: u32,
    zigzag: Zigzag,
}

impl FencePoset {
    pub fn new(n: u32) -> Self {
        Self::with_orientation(n, Zigzag::UpFirst)
    }

    pub fn with_orientation(n: u32, zigzag: Zigzag) -> Self {
        Self { n, zigzag }
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Whether x_{i+1} covers x_i (0-based i).
    fn rises_at(&self, i: u32) -> bool {
        i.is_multiple_of(2) == (self.zigzag == Zigzag::UpFirst)
    }

    /// Cover pairs (lower, upper), 0-based.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        (0..self.n.saturating_sub(1))
            .map(|i| {
                if self.rises_at(i) {
                    (i, i + 1)
                } else {
                    (i + 1, i)
                }
            })
            .collect()
    }

    /// Down-sets by exhaustive scan of all 2^n subsets.
    pub fn ideals_brute(&self, exec: Exec) -> Result<u64> {
        if self.n > FENCE_BRUTE_MAX {
            return Err(Error::AboveBound {
                what: "fence size",
                value: self.n.into(),
                bound: FENCE_BRUTE_MAX.into(),
            });
        }
        // below[i]: elements that must be present whenever i is
        let mut below = vec![0u32; self.n as usize];
        for (lo, hi) in self.covers() {
            below[hi as usize] |= 1 << lo;
        }
        let is_ideal = |s: u32| {
            let mut rest = s;
            while rest != 0 {
                let i = rest.trailing_zeros();
                if below[i as usize] & !s != 0 {
                    return false;
                }
                rest &= rest - 1;
            }
            true
        };
        const CHUNK_BITS: u32 = 12;
        let (chunks, width) = if self.n > CHUNK_BITS {
            (1u64 << (self.n - CHUNK_BITS), 1u32 << CHUNK_BITS)
        } else {
            (1, 1u32 << self.n)
        };
        Ok(par::sum_range(exec, chunks, |c| {
            let base = c as u32 * width;
            (base..base + width).filter(|&s| is_ideal(s)).count() as u64
        }))
    }

    /// Down-sets by a left-to-right transfer over (x_i ∈ I, x_i ∉ I).
    pub fn ideals_transfer(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        let (mut with, mut without) = (BigInt::one(), BigInt::one());
        for i in 0..self.n - 1 {
            let (w, wo) = if self.rises_at(i) {
                // x_{i+1} present forces x_i present
                (with.clone(), &with + &without)
            } else {
                // x_i present forces x_{i+1} present
                (&with + &without, without.clone())
            };
            with = w;
            without = wo;
        }
        with + without
    }
}

/// Order ideals of the n-element fence.
pub fn fence_ideals(n: u32) -> BigInt {
    FencePoset::new(n).ideals_transfer()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeckForm {
    /// F(n) = F(k) F(n+1−k) + F(k−1) F(n−k)
    One,
    /// The same identity at k − 1.
    Two,
}

/// Evaluates both sides of Beck's identity; F is extended to negative
/// indices so that k = 1 is meaningful in the second form.
pub fn beck_identity(n: u32, k: u32, form: BeckForm) -> Result<bool> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let (n, k) = (i64::from(n), i64::from(k));
    let k = match form {
        BeckForm::One => k,
        BeckForm::Two => k - 1,
    };
    let rhs = fib_signed(k) * fib_signed(n + 1 - k) + fib_signed(k - 1) * fib_signed(n - k);
    Ok(fib_signed(n) == rhs)
}
