//! Subsets of `[n]` without `r`-term arithmetic progressions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by the exact search.
pub const EXACT_AP_LIMIT: u64 = 40;

/// Largest `n` accepted by the sphere construction.
pub const BEHREND_LIMIT: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApMode {
    Exact,
    Greedy,
    Behrend,
}

impl std::str::FromStr for ApMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<ApMode> {
        match s {
            "exact" => Ok(ApMode::Exact),
            "greedy" => Ok(ApMode::Greedy),
            "behrend" => Ok(ApMode::Behrend),
            _ => Err(Error::InvalidParameter(format!(
                "unknown AP-free mode `{s}` (exact, greedy, behrend)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApFreeSet {
    pub n: u64,
    pub r: usize,
    /// Sorted ascending, within `1..=n`.
    pub elements: Vec<u64>,
    /// Whether the set is known to have maximum size `r_r(n)`.
    pub exact: bool,
}

impl ApFreeSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Checks range, order and the absence of `r`-term progressions.
    pub fn verify(&self) -> Result<()> {
        if self.r < 3 {
            return Err(Error::InvalidParameter(format!("r = {} must be at least 3", self.r)));
        }
        if self.elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Verification("elements are not strictly increasing".into()));
        }
        if let Some(&x) = self.elements.iter().find(|&&x| x == 0 || x > self.n) {
            return Err(Error::Verification(format!("element {x} outside [1, {}]", self.n)));
        }
        if let Some((a, d)) = find_progression(&self.elements, self.r) {
            return Err(Error::Verification(format!(
                "{}-term progression starting at {a} with difference {d}",
                self.r
            )));
        }
        Ok(())
    }
}

/// First `r`-term progression `(a, d)` in a sorted set, if any.
pub fn find_progression(sorted: &[u64], r: usize) -> Option<(u64, u64)> {
    let set: std::collections::HashSet<u64> = sorted.iter().copied().collect();
    let max = *sorted.last()?;
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            let d = b - a;
            if a + (r as u64 - 1) * d > max {
                break;
            }
            if (2..r as u64).all(|j| set.contains(&(a + j * d))) {
                return Some((a, d));
            }
        }
    }
    None
}

/// Whether adding `x` (larger than every member of `mask`) closes an
/// `r`-term progression. Bit `i` of `mask` stands for the element `i + 1`.
fn closes_progression(mask: u64, x: u64, r: usize) -> bool {
    let steps = r as u64 - 1;
    let mut d = 1;
    while steps * d < x {
        if (1..=steps).all(|j| mask >> (x - j * d - 1) & 1 == 1) {
            return true;
        }
        d += 1;
    }
    false
}

pub fn apfree_set(n: u64, r: usize, mode: ApMode) -> Result<ApFreeSet> {
    if n == 0 || r < 3 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and r >= 3, got n = {n}, r = {r}"
        )));
    }
    if (r as u64) > n {
        return Ok(ApFreeSet {
            n,
            r,
            elements: (1..=n).collect(),
            exact: true,
        });
    }
    let set = match mode {
        ApMode::Exact => exact(n, r)?,
        ApMode::Greedy => ApFreeSet {
            n,
            r,
            elements: greedy(n, r),
            exact: false,
        },
        ApMode::Behrend => behrend(n, r)?,
    };
    set.verify()?;
    Ok(set)
}

fn greedy(n: u64, r: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut set = std::collections::HashSet::new();
    let steps = r as u64 - 1;
    for x in 1..=n {
        let closes = (1..).take_while(|d| steps * d < x).any(|d| {
            (1..=steps).all(|j| set.contains(&(x - j * d)))
        });
        if !closes {
            out.push(x);
            set.insert(x);
        }
    }
    out
}

/// Maximum sets for every `m ≤ n`, built up from smaller ranges: a set of
/// size `r(m-1) + 1` in `[m]` must contain both `1` and `m`, and its part
/// above any point `i` fits in a range of length `m - i`.
fn exact(n: u64, r: usize) -> Result<ApFreeSet> {
    if n > EXACT_AP_LIMIT {
        return Err(Error::Infeasible(format!(
            "exact AP-free search is limited to n <= {EXACT_AP_LIMIT}, got {n}"
        )));
    }
    let mut best_sizes = vec![0usize; n as usize + 1];
    let mut best_set = 0u64;
    for m in 1..=n {
        let prev = best_sizes[m as usize - 1];
        match extend_to(m, r, prev + 1, &best_sizes) {
            Some(mask) => {
                best_sizes[m as usize] = prev + 1;
                best_set = mask;
            }
            None => best_sizes[m as usize] = prev,
        }
    }
    let elements = (1..=n).filter(|x| best_set >> (x - 1) & 1 == 1).collect();
    Ok(ApFreeSet {
        n,
        r,
        elements,
        exact: true,
    })
}

/// An AP-free subset of `[m]` of size `target` containing 1 and `m`.
fn extend_to(m: u64, r: usize, target: usize, best_sizes: &[usize]) -> Option<u64> {
    if target == 1 {
        return (m == 1).then_some(1);
    }
    fn go(
        x: u64,
        m: u64,
        r: usize,
        mask: u64,
        size: usize,
        target: usize,
        best: &[usize],
    ) -> Option<u64> {
        if size == target {
            return Some(mask);
        }
        if x > m {
            return None;
        }
        // room left in [x, m]; m itself is forced in, so count it separately
        let rest = best[(m - x) as usize];
        if size + rest + 1 < target {
            return None;
        }
        if !closes_progression(mask, x, r) {
            let with = mask | 1 << (x - 1);
            let forced_last = x == m;
            if forced_last || size + 1 < target {
                if let Some(found) = go(x + 1, m, r, with, size + 1, target, best) {
                    if found >> (m - 1) & 1 == 1 {
                        return Some(found);
                    }
                }
            }
        }
        if x == m {
            return None;
        }
        go(x + 1, m, r, mask, size, target, best)
    }
    go(2, m, r, 1, 1, target, best_sizes)
}

/// The sphere construction: numbers whose base-`(2d-1)` digits are below
/// `d` and whose digit vector has a fixed squared norm. Adding two such
/// numbers never carries, so `x + z = 2y` forces equal digit vectors.
fn behrend(n: u64, r: usize) -> Result<ApFreeSet> {
    if r != 3 {
        return Err(Error::InvalidParameter(format!(
            "the sphere construction avoids 3-term progressions only, got r = {r}"
        )));
    }
    if n > BEHREND_LIMIT {
        return Err(Error::Infeasible(format!(
            "sphere construction is limited to n <= {BEHREND_LIMIT}"
        )));
    }
    let mut best: Vec<u64> = vec![1];
    for k in 1..=8u32 {
        for d in 2u64.. {
            let base = 2 * d - 1;
            let Some(top) = base.checked_pow(k) else { break };
            // largest element: all digits d - 1
            let largest = (d - 1) * (top - 1) / (base - 1);
            if largest + 1 > n {
                break;
            }
            let mut classes: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
            let count = d.pow(k);
            for code in 0..count {
                let (mut c, mut value, mut norm, mut place) = (code, 0u64, 0u64, 1u64);
                for _ in 0..k {
                    let digit = c % d;
                    c /= d;
                    value += digit * place;
                    norm += digit * digit;
                    place *= base;
                }
                classes.entry(norm).or_default().push(value + 1);
            }
            for (_, mut members) in classes {
                if members.len() > best.len() {
                    members.sort_unstable();
                    best = members;
                }
            }
        }
    }
    Ok(ApFreeSet {
        n,
        r,
        elements: best,
        exact: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: u64, r: usize) -> usize {
        (0u64..1 << n)
            .filter_map(|m| {
                let s: Vec<u64> = (1..=n).filter(|x| m >> (x - 1) & 1 == 1).collect();
                find_progression(&s, r).is_none().then_some(s.len())
            })
            .max()
            .unwrap()
    }

    #[test]
    fn small_exact_values() {
        let s4 = apfree_set(4, 3, ApMode::Exact).unwrap();
        assert_eq!(s4.elements, vec![1, 2, 4]);
        assert_eq!(apfree_set(8, 3, ApMode::Exact).unwrap().len(), 4);
        for n in 1..=14 {
            assert_eq!(apfree_set(n, 3, ApMode::Exact).unwrap().len(), oracle(n, 3), "n = {n}");
            assert_eq!(apfree_set(n, 4, ApMode::Exact).unwrap().len(), oracle(n, 4), "n = {n}");
        }
    }

    #[test]
    fn known_value_at_forty() {
        assert_eq!(apfree_set(18, 3, ApMode::Exact).unwrap().len(), 8);
        assert_eq!(apfree_set(40, 3, ApMode::Exact).unwrap().len(), 15);
        assert!(apfree_set(41, 3, ApMode::Exact).is_err());
    }

    #[test]
    fn short_ranges_are_full() {
        assert_eq!(apfree_set(2, 3, ApMode::Greedy).unwrap().elements, vec![1, 2]);
        assert_eq!(apfree_set(3, 4, ApMode::Exact).unwrap().elements, vec![1, 2, 3]);
    }

    #[test]
    fn greedy_and_behrend_are_valid() {
        let g = apfree_set(30, 3, ApMode::Greedy).unwrap();
        assert_eq!(&g.elements[..4], &[1, 2, 4, 5]);
        let b = apfree_set(1000, 3, ApMode::Behrend).unwrap();
        b.verify().unwrap();
        assert!(b.len() >= 20);
        assert!(apfree_set(100, 4, ApMode::Behrend).is_err());
    }

    #[test]
    fn verify_catches_progressions() {
        let bad = ApFreeSet { n: 5, r: 3, elements: vec![1, 3, 5], exact: false };
        assert!(bad.verify().is_err());
    }
}
