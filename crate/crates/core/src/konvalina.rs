//! Konvalina's generalized binomial coefficients over weighted boxes.
//!
//! Box i holds w_i distinct objects. C_k^n(w) counts selections of one object
//! from each of k distinct boxes (the elementary symmetric function e_k(w));
//! S_k^n(w) lets boxes repeat (the complete homogeneous function h_k(w)).

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fib::fibonomial_def;

/// Positive nondecreasing weights w_1 ≤ … ≤ w_n, n ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        let ok = !weights.is_empty() && weights[0] >= 1 && weights.windows(2).all(|w| w[0] <= w[1]);
        if ok {
            Ok(Self(weights))
        } else {
            Err(Error::InvalidWeights)
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl std::str::FromStr for WeightVector {
    type Err = Error;

    /// Comma-separated list, e.g. `1,2,4`.
    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad weight `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }
}

/// C_k^n(w) via C_k^n = C_k^{n−1} + w_n C_{k−1}^{n−1}.
pub fn c_first_kind(w: &WeightVector, k: usize) -> Result<BigInt> {
    if k > w.len() {
        return Err(Error::KExceedsN {
            n: w.len() as u64,
            k: k as u64,
        });
    }
    let mut c = vec![BigInt::zero(); k + 1];
    c[0] = BigInt::one();
    for &wn in w.as_slice() {
        for j in (1..=k).rev() {
            let add = &c[j - 1] * wn;
            c[j] += add;
        }
    }
    Ok(c.swap_remove(k))
}

/// S_k^n(w) via S_k^n = S_k^{n−1} + w_n S_{k−1}^n.
pub fn s_second_kind(w: &WeightVector, k: usize) -> BigInt {
    let mut s = vec![BigInt::zero(); k + 1];
    s[0] = BigInt::one();
    for &wn in w.as_slice() {
        for j in 1..=k {
            let add = &s[j - 1] * wn;
            s[j] += add;
        }
    }
    s.swap_remove(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Distinct boxes, i_1 < … < i_k.
    First,
    /// Repeatable boxes, i_1 ≤ … ≤ i_k.
    Second,
}

pub const BRUTE_MAX: usize = 12;

/// Literal sum of w_{i_1} ⋯ w_{i_k} over all index tuples of `kind`.
pub fn brute_sum(w: &WeightVector, k: usize, kind: Kind) -> Result<BigInt> {
    for (what, value) in [("boxes", w.len()), ("k", k)] {
        if value > BRUTE_MAX {
            return Err(Error::AboveBound {
                what,
                value: value as u64,
                bound: BRUTE_MAX as u64,
            });
        }
    }
    let product = |idx: Vec<&u64>| {
        idx.into_iter()
            .map(|&x| BigInt::from(x))
            .product::<BigInt>()
    };
    let ws = w.as_slice();
    Ok(match kind {
        Kind::First => ws.iter().combinations(k).map(product).sum(),
        Kind::Second => ws
            .iter()
            .combinations_with_replacement(k)
            .map(product)
            .sum(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// (1, …, 1): binomial coefficients.
    Uniform,
    /// (1, q, …, q^{n−1}): Gaussian coefficients.
    Geometric(u64),
    /// (1, 2, …, n): Stirling numbers.
    Arithmetic,
}

pub fn specialize(kind: Specialization, n: usize) -> Result<WeightVector> {
    let weights = match kind {
        Specialization::Uniform => vec![1; n],
        Specialization::Geometric(q) => {
            if q == 0 {
                return Err(Error::InvalidArgument(
                    "geometric weights need q >= 1".into(),
                ));
            }
            (0..n as u32).map(|i| q.pow(i)).collect()
        }
        Specialization::Arithmetic => (1..=n as u64).collect(),
    };
    WeightVector::new(weights)
}

/// Gaussian binomial ∏_{i=1..k} (q^{n−k+i} − 1)/(q^i − 1); q = 1 gives C(n, k).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::KExceedsN {
            n: n.into(),
            k: k.into(),
        });
    }
    if q == 0 {
        return Err(Error::InvalidArgument("q must be positive".into()));
    }
    if q == 1 {
        return Ok(crate::poset::binomial(n.into(), k.into()));
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=k {
        num *= q.pow(n - k + i) - 1u32;
        den *= q.pow(i) - 1u32;
    }
    let (value, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::InexactDivision("gaussian_binomial"));
    }
    Ok(value)
}

/// Outcome of looking for weights whose Konvalina coefficients reproduce a
/// whole fibonomial row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSearch {
    pub n: usize,
    pub kind: Kind,
    pub tried: u64,
    pub matches: Vec<WeightVector>,
}

/// For each n ≤ `max_n`, scans every nondecreasing weight vector of length n
/// with entries ≤ `max_weight` and keeps those with
/// C_k^n(w) = (n over k)_F for all k (first kind) or
/// S_k^n(w) = (n+k−1 over k)_F for all k ≤ n (second kind).
pub fn fibonomial_weight_search(max_n: usize, max_weight: u64) -> Vec<WeightSearch> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let candidates: Vec<WeightVector> = (1..=max_weight)
            .combinations_with_replacement(n)
            .map(|w| WeightVector::new(w).expect("sorted and positive"))
            .collect();
        for kind in [Kind::First, Kind::Second] {
            let matches = candidates
                .iter()
                .filter(|w| {
                    (0..=n).all(|k| {
                        let (got, want) = match kind {
                            Kind::First => {
                                (c_first_kind(w, k).ok(), fibonomial_def(n as u32, k as u32))
                            }
                            Kind::Second => (
                                Some(s_second_kind(w, k)),
                                fibonomial_def((n + k - 1) as u32, k as u32),
                            ),
                        };
                        got.is_some() && got == want.ok()
                    })
                })
                .cloned()
                .collect();
            out.push(WeightSearch {
                n,
                kind,
                tried: candidates.len() as u64,
                matches,
            });
        }
    }
    out
}
