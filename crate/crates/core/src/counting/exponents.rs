//! Exact exponent arithmetic for the known bounds on
//! `ex(n, K_r^{(r-1)}, K_r^{(r-1)}(a_1, ..., a_r))`.
//!
//! Every exponent `x` stands for a bound of order `n^x`. All values are exact
//! rationals.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Exponent = Ratio<i128>;

/// Which lower-bound construction an exponent comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LowerKind {
    /// `r - 1/(a_1 ⋯ a_{r-2})`, valid if the conjectured order of
    /// `ex(n, K_{r-1}^{(r-1)}(a_1, ..., a_{r-1}))` holds.
    Conditional,
    /// `r - (r-1)(a-1)/(a^{r-1} - 1)` when all `a_i = a ≥ 2` (deletion method).
    AllEqual,
    /// `r - r(r-1)/a^{r-2}` when `a_1 = 1` and `a_2 = ⋯ = a_r = a ≥ 2`.
    LeadingOne,
    /// `r - 1/⌈(2^{r-1} - 1)/(r - 1)⌉` when all `a_i = 2`.
    AllTwo,
}

impl LowerKind {
    pub fn label(self) -> &'static str {
        match self {
            LowerKind::Conditional => "conditional",
            LowerKind::AllEqual => "all-equal",
            LowerKind::LeadingOne => "leading-one",
            LowerKind::AllTwo => "all-two",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            LowerKind::Conditional => "general; assumes ex(n, K_{r-1}^{(r-1)}(a_1..a_{r-1})) = Omega(n^{r-1-1/(a_1..a_{r-2})})",
            LowerKind::AllEqual => "a_1 = ... = a_r = a >= 2",
            LowerKind::LeadingOne => "a_1 = 1, a_2 = ... = a_r = a >= 2",
            LowerKind::AllTwo => "a_1 = ... = a_r = 2",
        }
    }
}

impl fmt::Display for LowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub kind: LowerKind,
    pub exponent: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub r: usize,
    pub a: Vec<u64>,
    /// `r - 1/(a_1 ⋯ a_{r-1})`.
    pub upper: Exponent,
    pub lowers: Vec<LowerBound>,
}

impl ExponentReport {
    /// Whether `r - 1 <= upper < r` and every lower exponent is at most `upper`.
    pub fn is_consistent(&self) -> bool {
        let r = int(self.r as i128);
        self.upper >= r - Exponent::one()
            && self.upper < r
            && self.lowers.iter().all(|l| l.exponent <= self.upper)
    }
}

fn int(v: i128) -> Exponent {
    Exponent::from_integer(v)
}

fn overflow() -> Error {
    Error::InvalidParameter("exponent arithmetic overflow".into())
}

fn product(xs: &[u64]) -> Result<i128> {
    xs.iter()
        .try_fold(1i128, |acc, &x| acc.checked_mul(x as i128))
        .ok_or_else(overflow)
}

fn pow(base: u64, exp: usize) -> Result<i128> {
    (base as i128).checked_pow(exp as u32).ok_or_else(overflow)
}

/// Exponents for `r ≥ 3` and `1 ≤ a_1 ≤ ⋯ ≤ a_r`.
pub fn exponents(r: usize, a: &[u64]) -> Result<ExponentReport> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!("r = {r} must be at least 3")));
    }
    if a.len() != r {
        return Err(Error::InvalidParameter(format!(
            "expected {r} class sizes, got {}",
            a.len()
        )));
    }
    if a[0] == 0 {
        return Err(Error::InvalidParameter("class sizes must be positive".into()));
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "class sizes {a:?} are not sorted ascending"
        )));
    }
    let rr = int(r as i128);
    let upper = rr - Exponent::new(1, product(&a[..r - 1])?);

    let mut lowers = vec![LowerBound {
        kind: LowerKind::Conditional,
        exponent: rr - Exponent::new(1, product(&a[..r - 2])?),
    }];
    let first = a[0];
    if first >= 2 && a.iter().all(|&x| x == first) {
        let num = (r as i128 - 1) * (first as i128 - 1);
        let den = pow(first, r - 1)? - 1;
        lowers.push(LowerBound {
            kind: LowerKind::AllEqual,
            exponent: rr - Exponent::new(num, den),
        });
    }
    let second = a[1];
    if first == 1 && second >= 2 && a[1..].iter().all(|&x| x == second) {
        let num = r as i128 * (r as i128 - 1);
        lowers.push(LowerBound {
            kind: LowerKind::LeadingOne,
            exponent: rr - Exponent::new(num, pow(second, r - 2)?),
        });
    }
    if a.iter().all(|&x| x == 2) {
        let num = pow(2, r - 1)? - 1;
        let den = r as i128 - 1;
        let ceil = (num + den - 1) / den;
        lowers.push(LowerBound {
            kind: LowerKind::AllTwo,
            exponent: rr - Exponent::new(1, ceil),
        });
    }
    Ok(ExponentReport {
        r,
        a: a.to_vec(),
        upper,
        lowers,
    })
}

/// `l - 1/a^{l-1}`, the exponent for copies of an `l`-vertex pattern `F` in
/// `F(a)`-free hosts.
pub fn pattern_blowup_upper(l: usize, a: u64) -> Result<Exponent> {
    if l < 2 || a == 0 {
        return Err(Error::InvalidParameter(format!("need l >= 2 and a >= 1, got l = {l}, a = {a}")));
    }
    Ok(int(l as i128) - Exponent::new(1, pow(a, l - 1)?))
}

/// Edge-probability exponent `(v - s)/(e - 1)` for deleting copies of a
/// forbidden `s`-graph with `v` vertices and `e ≥ 2` edges: with
/// `p = n^{-(v-s)/(e-1)}`, expected copies and expected edges balance.
pub fn deletion_edge_exponent(s: usize, vertices: usize, edges: usize) -> Result<Exponent> {
    if edges < 2 || vertices < s {
        return Err(Error::InvalidParameter(format!(
            "deletion exponent needs at least two edges on at least s vertices (v = {vertices}, e = {edges}, s = {s})"
        )));
    }
    Ok(Exponent::new(vertices as i128 - s as i128, edges as i128 - 1))
}

/// Edge-probability exponent `(r-1)/a^{r-2}` for deleting copies of
/// `K_r^{(r-1)}(1, a, ..., a)` from a random `(r-1)`-graph while keeping
/// cliques; the surviving clique count is of order `n^{r - r(r-1)/a^{r-2}}`.
pub fn deletion_clique_exponent(r: usize, a: u64) -> Result<Exponent> {
    if r < 3 || a < 2 {
        return Err(Error::InvalidParameter(format!("need r >= 3 and a >= 2, got r = {r}, a = {a}")));
    }
    Ok(Exponent::new(r as i128 - 1, pow(a, r - 2)?))
}

/// Decimal rendering of an exponent.
pub fn to_f64(x: &Exponent) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` or `p` for integers.
pub fn format_exponent(x: &Exponent) -> String {
    if x.denom().is_one() || x.numer().is_zero() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
