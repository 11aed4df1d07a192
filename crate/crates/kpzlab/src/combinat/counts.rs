//! Counting formulas and streaming enumeration for symmetry classes.

use super::{Permutation, SymmetryClass};
use crate::{Error, Result};
use num::BigUint;
use num_traits::{One, Zero};

/// Default cap on the permutation size accepted by the enumerators.
pub const ENUMERATION_BOUND: usize = 10;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of involutions of S_n with exactly m two-cycles:
/// C(n, 2m) (2m)! / (2^m m!).
pub fn symmetry_counts_diag(n: usize, m: usize) -> Result<BigUint> {
    if 2 * m > n {
        return Err(Error::Domain(format!(
            "need 0 <= 2m <= n, got n = {n}, m = {m}"
        )));
    }
    let num = factorial(n);
    let den = factorial(n - 2 * m) * factorial(m) * BigUint::from(2u32).pow(m as u32);
    Ok(num / den)
}

/// Doubly refined count n! / (m_plus! m_minus! ((n - m_plus - m_minus)/2)!)
/// for configurations with points on both diagonals; the gap must be even.
pub fn symmetry_counts_both(n: usize, m_plus: usize, m_minus: usize) -> Result<BigUint> {
    if m_plus + m_minus > n {
        return Err(Error::Domain(format!(
            "need m_plus + m_minus <= n, got n = {n}, m_plus = {m_plus}, m_minus = {m_minus}"
        )));
    }
    let gap = n - m_plus - m_minus;
    if gap % 2 != 0 {
        return Err(Error::Domain(format!(
            "n - m_plus - m_minus must be even, got {gap}"
        )));
    }
    Ok(factorial(n) / (factorial(m_plus) * factorial(m_minus) * factorial(gap / 2)))
}

/// Optional filter on the diagonal structure of class members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassConstraint {
    /// No filtering.
    Any,
    /// Exactly m two-cycles: for Diag the permutation has n - 2m fixed
    /// points, for AntiDiag n - 2m anti-diagonal fixed points.
    TwoCycles(usize),
    /// Exact fixed-point and/or anti-fixed-point counts.
    FixedCounts {
        diag: Option<usize>,
        anti: Option<usize>,
    },
}

impl ClassConstraint {
    fn admits(&self, class: SymmetryClass, p: &Permutation) -> Result<bool> {
        let n = p.n();
        match *self {
            ClassConstraint::Any => Ok(true),
            ClassConstraint::TwoCycles(m) => {
                if 2 * m > n {
                    return Ok(false);
                }
                match class {
                    SymmetryClass::Diag => Ok(p.fixed_points() == n - 2 * m),
                    SymmetryClass::AntiDiag => Ok(p.anti_fixed_points() == n - 2 * m),
                    _ => Err(Error::Domain(
                        "two-cycle constraint applies to Diag or AntiDiag only".into(),
                    )),
                }
            }
            ClassConstraint::FixedCounts { diag, anti } => {
                let d = diag.map_or(true, |c| p.fixed_points() == c);
                let a = anti.map_or(true, |c| p.anti_fixed_points() == c);
                Ok(d && a)
            }
        }
    }
}

/// Lexicographic permutation stream over 1..=n.
struct LexPerms {
    cur: Option<Vec<usize>>,
}

impl LexPerms {
    fn new(n: usize) -> Self {
        LexPerms {
            cur: Some((1..=n).collect()),
        }
    }
}

impl Iterator for LexPerms {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let v = self.cur.as_mut().expect("present");
        let n = v.len();
        let mut k = n.saturating_sub(1);
        while k > 0 && v[k - 1] >= v[k] {
            k -= 1;
        }
        if k == 0 {
            self.cur = None;
        } else {
            let j = (k..n).rev().find(|&j| v[j] > v[k - 1]).expect("successor");
            v.swap(k - 1, j);
            v[k..].reverse();
        }
        Some(out)
    }
}

/// Streams the permutations of the class, optionally filtered by the
/// constraint, with a configurable size cap.
pub fn enumerate_class_bounded(
    n: usize,
    class: SymmetryClass,
    constraint: ClassConstraint,
    bound: usize,
) -> Result<impl Iterator<Item = Permutation>> {
    if n > bound {
        return Err(Error::Domain(format!(
            "enumeration bound {bound} exceeded (n = {n})"
        )));
    }
    // Pre-validate the constraint/class pairing on the identity so the
    // stream itself cannot fail.
    if n > 0 {
        let id = Permutation::new((1..=n).collect())?;
        constraint.admits(class, &id)?;
    }
    Ok(LexPerms::new(n)
        .map(|v| Permutation::new(v).expect("valid by construction"))
        .filter(move |p| {
            class.contains(p) && constraint.admits(class, p).unwrap_or(false)
        }))
}

/// `enumerate_class_bounded` with the default cap of 10.
pub fn enumerate_class(
    n: usize,
    class: SymmetryClass,
    constraint: ClassConstraint,
) -> Result<impl Iterator<Item = Permutation>> {
    enumerate_class_bounded(n, class, constraint, ENUMERATION_BOUND)
}

/// Exact cardinality of a symmetry class inside S_n.
pub fn class_size(n: usize, class: SymmetryClass) -> Result<BigUint> {
    match class {
        SymmetryClass::Plain => Ok(factorial(n)),
        SymmetryClass::Diag | SymmetryClass::AntiDiag => {
            // Anti-transpose-invariant permutations biject onto involutions
            // by composing with the reversal.
            let mut total = BigUint::zero();
            for m in 0..=n / 2 {
                total += symmetry_counts_diag(n, m)?;
            }
            Ok(total)
        }
        SymmetryClass::Central => {
            if n % 2 != 0 {
                return Ok(BigUint::zero());
            }
            let k = n / 2;
            Ok(BigUint::from(2u32).pow(k as u32) * factorial(k))
        }
        SymmetryClass::BothDiags => {
            let count = enumerate_class(n, class, ClassConstraint::Any)?.count();
            Ok(BigUint::from(count))
        }
    }
}
