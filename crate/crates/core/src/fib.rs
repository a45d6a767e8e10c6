//! Fibonacci numbers, ψ-factorials and fibonomial coefficients.
//!
//! Indexing is fixed to F_0 = 0, F_1 = F_2 = 1.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// F_n, by fast doubling.
pub fn fib(n: u64) -> BigInt {
    fib_pair(n).0
}

/// (F_n, F_{n+1}).
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    // F_2m = F_m (2 F_{m+1} - F_m), F_2m+1 = F_m^2 + F_{m+1}^2
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// F_n extended to negative indices by F_{-n} = (-1)^{n+1} F_n.
///
/// The recurrences below reach F_{-1} = 1 at their diagonal boundary.
pub fn fib_signed(n: i64) -> BigInt {
    if n >= 0 {
        return fib(n as u64);
    }
    let m = n.unsigned_abs();
    let value = fib(m);
    if m.is_multiple_of(2) {
        -value
    } else {
        value
    }
}

/// A nonvanishing integer sequence ψ that generates ψ-factorials and
/// ψ-binomials.
#[derive(Clone)]
pub struct PsiSequence {
    name: String,
    values: Arc<dyn Fn(u32) -> BigInt + Send + Sync>,
}

impl PsiSequence {
    pub fn new<F>(name: impl Into<String>, values: F) -> Self
    where
        F: Fn(u32) -> BigInt + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            values: Arc::new(values),
        }
    }

    /// ψ(n) = F_n.
    pub fn fibonacci() -> Self {
        Self::new("fibonacci", |n| fib(n.into()))
    }

    /// ψ(n) = n; recovers the ordinary factorial and binomial.
    pub fn natural() -> Self {
        Self::new("natural", BigInt::from)
    }

    /// ψ(n) = q^n.
    pub fn geometric(q: u64) -> Self {
        Self::new(format!("geometric({q})"), move |n| BigInt::from(q).pow(n))
    }

    /// ψ(n) = 1 + q + … + q^{n-1}; the ψ-binomial is the Gaussian binomial.
    pub fn q_integer(q: u64) -> Self {
        Self::new(format!("q-integer({q})"), move |n| {
            (0..n).map(|i| BigInt::from(q).pow(i)).sum()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, n: u32) -> BigInt {
        (self.values)(n)
    }

    fn nonzero_value(&self, n: u32) -> Result<BigInt> {
        let v = self.value(n);
        if v.is_zero() {
            return Err(Error::ZeroSequenceValue {
                name: self.name.clone(),
                index: n,
            });
        }
        Ok(v)
    }
}

impl fmt::Debug for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsiSequence")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// n_ψ! = ψ(n) ψ(n-1) … ψ(1), with 0_ψ! = 1.
pub fn psi_factorial(seq: &PsiSequence, n: u32) -> Result<BigInt> {
    (1..=n).try_fold(BigInt::one(), |acc, m| Ok(acc * seq.nonzero_value(m)?))
}

/// x_ψ^(k) = ψ(x) ψ(x-1) … ψ(x-k+1), the falling ψ-factorial.
pub fn psi_falling(seq: &PsiSequence, x: u32, k: u32) -> Result<BigInt> {
    if k > x {
        return Err(Error::KExceedsN {
            n: x.into(),
            k: k.into(),
        });
    }
    (x - k + 1..=x).try_fold(BigInt::one(), |acc, m| Ok(acc * seq.nonzero_value(m)?))
}

/// n_ψ^(k) / k_ψ! as an exact rational.
pub fn psi_binomial(seq: &PsiSequence, n: u32, k: u32) -> Result<BigRational> {
    let num = psi_falling(seq, n, k)?;
    let den = psi_factorial(seq, k)?;
    Ok(BigRational::new(num, den))
}

fn exact_div(num: BigInt, den: &BigInt, context: &'static str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(context))
    }
}

/// The fibonomial coefficient by its defining quotient n_F^(k) / k_F!.
pub fn fibonomial_def(n: u32, k: u32) -> Result<BigInt> {
    let seq = PsiSequence::fibonacci();
    let falling = psi_falling(&seq, n, k)?;
    exact_div(falling, &psi_factorial(&seq, k)?, "fibonomial_def")
}

/// A fibonomial coefficient together with its indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fibonomial {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::ser_decimal")]
    pub value: BigInt,
}

impl Fibonomial {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        Ok(Self {
            n,
            k,
            value: fibonomial_def(n, k)?,
        })
    }
}

/// Which of the two equivalent Fibonacci recurrences drives the DP.
///
/// * `A`: (n+1, k) = F_{k-1} (n, k) + F_{n-k+2} (n, k-1)
/// * `B`: (n+1, k) = F_{k+1} (n, k) + F_{n-k} (n, k-1)
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecurrenceForm {
    A,
    B,
}

/// Fibonomial triangle rows `0..=max_n` built by one recurrence form.
///
/// Each entry is computed exactly once; `get` is total and returns 0 for
/// k > n.
#[derive(Debug, Clone)]
pub struct FibonomialTable {
    form: RecurrenceForm,
    rows: Vec<Vec<BigInt>>,
}

impl FibonomialTable {
    pub fn build(form: RecurrenceForm, max_n: u32) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n as usize + 1);
        rows.push(vec![BigInt::one()]);
        for big_n in 1..=max_n as i64 {
            let n = big_n - 1;
            let prev = &rows[n as usize];
            let at = |k: i64| prev.get(k as usize).cloned().unwrap_or_default();
            let mut row = Vec::with_capacity(big_n as usize + 1);
            row.push(BigInt::one());
            for k in 1..=big_n {
                let (left, right) = match form {
                    RecurrenceForm::A => (fib_signed(k - 1), fib_signed(n - k + 2)),
                    RecurrenceForm::B => (fib_signed(k + 1), fib_signed(n - k)),
                };
                row.push(left * at(k) + right * at(k - 1));
            }
            rows.push(row);
        }
        Self { form, rows }
    }

    pub fn form(&self) -> RecurrenceForm {
        self.form
    }

    pub fn max_n(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// `None` only when `n` lies beyond the table.
    pub fn get(&self, n: u32, k: u32) -> Option<BigInt> {
        let row = self.rows.get(n as usize)?;
        Some(row.get(k as usize).cloned().unwrap_or_default())
    }
}

/// The fibonomial coefficient by dynamic programming over `form`.
///
/// Total in (n, k): values with k > n are 0.
pub fn fibonomial_rec(n: u32, k: u32, form: RecurrenceForm) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    FibonomialTable::build(form, n)
        .get(n, k)
        .expect("table covers n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn pascal(max_n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    fn naive_fib(n: u64) -> BigInt {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        for _ in 0..n {
            let c = &a + &b;
            a = b;
            b = c;
        }
        a
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib(0), BigInt::zero());
        assert_eq!(fib(5), BigInt::from(5));
        assert_eq!(fib(10), BigInt::from(55));
    }

    #[test]
    fn fast_doubling_matches_iteration() {
        for n in 0..300 {
            assert_eq!(fib(n), naive_fib(n), "n = {n}");
        }
    }

    #[test]
    fn negative_indices() {
        assert_eq!(fib_signed(-1), BigInt::one());
        assert_eq!(fib_signed(-2), BigInt::from(-1));
        for n in -20..20i64 {
            assert_eq!(fib_signed(n + 2), fib_signed(n + 1) + fib_signed(n));
        }
    }

    #[test]
    fn psi_factorial_examples() {
        let f = PsiSequence::fibonacci();
        assert_eq!(psi_factorial(&f, 0).unwrap(), BigInt::one());
        assert_eq!(psi_factorial(&f, 5).unwrap(), BigInt::from(30));
        assert_eq!(
            psi_factorial(&PsiSequence::natural(), 4).unwrap(),
            BigInt::from(24)
        );
    }

    #[test]
    fn psi_factorial_rejects_vanishing_sequence() {
        let shifted = PsiSequence::new("shifted", |n| BigInt::from(n as i64 - 2));
        assert_eq!(
            psi_factorial(&shifted, 3),
            Err(Error::ZeroSequenceValue {
                name: "shifted".into(),
                index: 2
            })
        );
    }

    #[test]
    fn psi_falling_examples() {
        let f = PsiSequence::fibonacci();
        assert_eq!(psi_falling(&f, 5, 2).unwrap(), BigInt::from(15));
        assert_eq!(psi_falling(&f, 9, 0).unwrap(), BigInt::one());
        assert_eq!(psi_falling(&f, 5, 5).unwrap(), BigInt::from(30));
        assert_eq!(psi_falling(&f, 3, 4), Err(Error::KExceedsN { n: 3, k: 4 }));
    }

    #[test]
    fn fibonomial_def_examples() {
        assert_eq!(fibonomial_def(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(fibonomial_def(7, 0).unwrap(), BigInt::one());
        assert_eq!(fibonomial_def(5, 3).unwrap(), BigInt::from(15));
        assert_eq!(fibonomial_def(2, 3), Err(Error::KExceedsN { n: 2, k: 3 }));
    }

    #[test]
    fn fibonomial_rec_examples() {
        assert_eq!(fibonomial_rec(5, 2, RecurrenceForm::A), BigInt::from(15));
        assert_eq!(fibonomial_rec(5, 2, RecurrenceForm::B), BigInt::from(15));
        assert_eq!(fibonomial_rec(0, 3, RecurrenceForm::A), BigInt::zero());
        assert_eq!(fibonomial_rec(0, 0, RecurrenceForm::B), BigInt::one());
    }

    #[test]
    fn recurrence_form_a_expansion() {
        // (5,2) = F_1 (4,2) + F_4 (4,1) = 1*6 + 3*3
        let t = FibonomialTable::build(RecurrenceForm::A, 5);
        assert_eq!(t.get(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(t.get(4, 1).unwrap(), BigInt::from(3));
        assert_eq!(t.get(5, 2).unwrap(), fib(1) * 6 + fib(4) * 3);
        assert_eq!(t.get(4, 9).unwrap(), BigInt::zero());
        assert!(t.get(6, 0).is_none());
    }

    #[test]
    fn psi_binomial_examples() {
        let nat = PsiSequence::natural();
        let f = PsiSequence::fibonacci();
        assert_eq!(
            psi_binomial(&nat, 5, 2).unwrap(),
            BigRational::from_integer(10.into())
        );
        assert_eq!(
            psi_binomial(&f, 6, 3).unwrap(),
            BigRational::from_integer(60.into())
        );
        assert_eq!(
            psi_binomial(&f, 3, 1).unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(psi_binomial(&f, 1, 2).is_err());
    }

    #[test]
    fn psi_binomial_non_integral_sequence() {
        // ψ(n) = n + 1: 3_ψ^(1)/1_ψ! = 4/2 and 3_ψ^(2)/2_ψ! = 12/6, but
        // 4_ψ^(2)/2_ψ! = 20/6 is not integral.
        let shifted = PsiSequence::new("n+1", |n| BigInt::from(n + 1));
        assert_eq!(
            psi_binomial(&shifted, 4, 2).unwrap(),
            BigRational::new(10.into(), 3.into())
        );
    }

    #[test]
    fn q_integer_gives_gaussian() {
        // (2^4-1)(2^3-1)/((2^2-1)(2-1)) = 35
        let q2 = PsiSequence::q_integer(2);
        assert_eq!(
            psi_binomial(&q2, 4, 2).unwrap(),
            BigRational::from_integer(35.into())
        );
        let g = PsiSequence::geometric(3);
        // q^{k(n-k)}
        assert_eq!(
            psi_binomial(&g, 5, 2).unwrap(),
            BigRational::from_integer(BigInt::from(3).pow(6))
        );
    }

    #[test]
    fn symmetry_and_recurrence_equivalence() {
        let a = FibonomialTable::build(RecurrenceForm::A, 20);
        let b = FibonomialTable::build(RecurrenceForm::B, 20);
        for n in 0..=20 {
            for k in 0..=n {
                let d = fibonomial_def(n, k).unwrap();
                assert_eq!(d, fibonomial_def(n, n - k).unwrap());
                assert_eq!(a.get(n, k).unwrap(), d, "A at ({n},{k})");
                assert_eq!(b.get(n, k).unwrap(), d, "B at ({n},{k})");
            }
        }
    }

    #[test]
    fn cross_identity() {
        for n in 1..=20u32 {
            for k in 1..=n {
                let lhs = fib(k.into()) * fibonomial_def(n, k).unwrap();
                let rhs = fib((n - k + 1).into()) * fibonomial_def(n, k - 1).unwrap();
                assert_eq!(lhs, rhs, "({n},{k})");
            }
        }
    }

    #[test]
    fn integrality_to_sixty() {
        for n in 0..=60 {
            for k in 0..=n {
                let v = fibonomial_def(n, k).unwrap();
                assert!(!v.is_negative());
            }
        }
    }

    #[test]
    fn natural_psi_binomial_is_pascal() {
        let nat = PsiSequence::natural();
        let p = pascal(20);
        for n in 0..=20u32 {
            for k in 0..=n {
                assert_eq!(
                    psi_binomial(&nat, n, k).unwrap(),
                    BigRational::from_integer(p[n as usize][k as usize].clone())
                );
            }
        }
    }

    #[test]
    fn fibonomial_struct_serializes_decimal() {
        let f = Fibonomial::new(30, 15).unwrap();
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(
            json["value"],
            serde_json::Value::String(f.value.to_string())
        );
    }
}
