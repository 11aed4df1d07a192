//! Exact combinatorics: permutations, longest increasing subsequences,
//! the Robinson-Schensted-Knuth correspondence, Young tableaux and Schur
//! enumeration, reflection symmetry classes of permutation matrices, and
//! brute-force probability oracles for small sizes.
//!
//! Everything here is exact (integers and rationals); no floating point
//! except in the walker transfer DP, whose weights are real by contract.

pub mod brute;
pub mod counts;
pub mod evacuation;
pub mod lis;
pub mod rsk;
pub mod schur;
pub mod walker;

pub use brute::{brute_cdf, ClassConstraint};
pub use counts::{class_size, enumerate_class, symmetry_counts_diag, symmetry_counts_both};
pub use evacuation::{evacuation, ssyt_evacuation};
pub use lis::{lis, longest_chain_dp, patience_layers};
pub use rsk::{inverse_rsk, rsk, rsk_matrix};
pub use schur::{
    num_standard_tableaux, schur_eval, schur_self_dual_eval, self_dual_tableaux_count,
    standard_tableaux,
};
pub use walker::walker_count;

use crate::{Error, Result};

/// A permutation of {1..n} in one-line notation (1-based images).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || seen[v] {
                return Err(Error::Domain(format!(
                    "not a permutation of 1..{n}: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of j (1-based).
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.n();
        let mut inv = vec![0; n];
        for (j, &v) in self.images.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { images: inv }
    }

    /// One-line reversal: images read right to left.
    pub fn reverse(&self) -> Permutation {
        let mut images = self.images.clone();
        images.reverse();
        Permutation { images }
    }

    /// Conjugation by the longest element: j -> n+1 - p(n+1-j). A
    /// permutation equals this image exactly when its matrix is invariant
    /// under the half-turn rotation.
    pub fn central_image(&self) -> Permutation {
        let n = self.n();
        let images = (1..=n).map(|j| n + 1 - self.image(n + 1 - j)).collect();
        Permutation { images }
    }

    /// Anti-transpose: the matrix reflected in the anti-diagonal, i.e.
    /// j -> n+1 - p^{-1}(n+1-j).
    pub fn anti_transpose(&self) -> Permutation {
        let n = self.n();
        let inv = self.inverse();
        let images = (1..=n).map(|j| n + 1 - inv.image(n + 1 - j)).collect();
        Permutation { images }
    }

    pub fn is_involution(&self) -> bool {
        (1..=self.n()).all(|j| self.image(self.image(j)) == j)
    }

    /// Number of j with p(j) = j (diagonal entries of the matrix).
    pub fn fixed_points(&self) -> usize {
        (1..=self.n()).filter(|&j| self.image(j) == j).count()
    }

    /// Number of j with p(j) = n+1-j (anti-diagonal entries).
    pub fn anti_fixed_points(&self) -> usize {
        let n = self.n();
        (1..=n).filter(|&j| self.image(j) == n + 1 - j).count()
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain(format!(
                "parts must decrease weakly and stay positive: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Total number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// Alternating part sum mu_1 - mu_2 + mu_3 - ..., which for the shape
    /// of an involution's tableau counts its fixed points (equivalently
    /// the number of odd columns).
    pub fn alternating_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, &p)| if j % 2 == 0 { p as i64 } else { -(p as i64) })
            .sum()
    }

    /// All partitions of n with first part at most max_part (0 allowed,
    /// giving only the empty partition when n = 0).
    pub fn all_of(n: usize, max_part: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn rec(rem: usize, cap: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition {
                    parts: stack.clone(),
                });
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                stack.push(p);
                rec(rem - p, p, stack, out);
                stack.pop();
            }
        }
        rec(n, max_part, &mut stack, &mut out);
        out
    }
}

/// A standard Young tableau: entries 1..n, rows and columns strictly
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = StandardTableau { rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        StandardTableau { rows }
    }

    fn validate(&self) -> Result<()> {
        let n: usize = self.rows.iter().map(|r| r.len()).sum();
        let mut seen = vec![false; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 && row.len() > self.rows[i - 1].len() {
                return Err(Error::Domain("tableau rows must shrink weakly".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 1 || v > n || seen[v] {
                    return Err(Error::Domain(format!("bad tableau entry {v}")));
                }
                seen[v] = true;
                if j > 0 && row[j - 1] >= v {
                    return Err(Error::Domain("rows must increase strictly".into()));
                }
                if i > 0 && self.rows[i - 1][j] >= v {
                    return Err(Error::Domain("columns must increase strictly".into()));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

/// Reflection symmetry classes of permutation matrices: unconstrained,
/// fixed under transposition (diagonal reflection), fixed under the
/// anti-diagonal reflection, fixed under both, and fixed under the
/// half-turn rotation (even sizes only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Plain,
    Diag,
    AntiDiag,
    BothDiags,
    Central,
}

impl SymmetryClass {
    pub fn contains(&self, p: &Permutation) -> bool {
        match self {
            SymmetryClass::Plain => true,
            SymmetryClass::Diag => p.is_involution(),
            SymmetryClass::AntiDiag => p.anti_transpose() == *p,
            SymmetryClass::BothDiags => p.is_involution() && p.anti_transpose() == *p,
            SymmetryClass::Central => p.n() % 2 == 0 && p.central_image() == *p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SymmetryClass::Plain => "plain",
            SymmetryClass::Diag => "diag",
            SymmetryClass::AntiDiag => "antidiag",
            SymmetryClass::BothDiags => "bothdiags",
            SymmetryClass::Central => "central",
        }
    }
}

impl std::str::FromStr for SymmetryClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(SymmetryClass::Plain),
            "diag" => Ok(SymmetryClass::Diag),
            "antidiag" => Ok(SymmetryClass::AntiDiag),
            "bothdiags" => Ok(SymmetryClass::BothDiags),
            "central" => Ok(SymmetryClass::Central),
            other => Err(Error::Domain(format!("unknown symmetry class '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_permutation_validation() {
        assert!(Permutation::new(vec![2, 1, 3]).is_ok());
        assert!(Permutation::new(vec![2, 2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn unit_inverse_and_reverse() {
        let p = Permutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.inverse().images(), &[2, 3, 1]);
        assert_eq!(p.reverse().images(), &[2, 1, 3]);
        assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn unit_conjugate_involution() {
        let mu = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(mu.conjugate().parts(), &[3, 2, 1, 1]);
        assert_eq!(mu.conjugate().conjugate(), mu);
        assert_eq!(mu.size(), 7);
        assert_eq!(mu.alternating_sum(), 4 - 2 + 1);
    }

    #[test]
    fn unit_partitions_in_box() {
        // Partitions of 4 with parts <= 2: (2,2), (2,1,1), (1,1,1,1).
        let ps = Partition::all_of(4, 2);
        assert_eq!(ps.len(), 3);
        // All partitions of 6: p(6) = 11.
        assert_eq!(Partition::all_of(6, 6).len(), 11);
    }

    #[test]
    fn unit_symmetry_membership() {
        let p = Permutation::new(vec![2, 1]).unwrap();
        assert!(SymmetryClass::Diag.contains(&p));
        assert!(SymmetryClass::AntiDiag.contains(&p));
        assert!(SymmetryClass::Central.contains(&p));
        let q = Permutation::new(vec![2, 3, 1]).unwrap();
        assert!(!SymmetryClass::Diag.contains(&q));
        // Odd size never central.
        let r = Permutation::new(vec![1, 2, 3]).unwrap();
        assert!(!SymmetryClass::Central.contains(&r));
    }

    #[test]
    fn unit_anti_transpose_is_involution_map() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(p.anti_transpose().anti_transpose(), p);
        assert_eq!(p.central_image().central_image(), p);
    }

    #[test]
    fn unit_fixed_point_counters() {
        let p = Permutation::new(vec![1, 3, 2, 4]).unwrap();
        assert_eq!(p.fixed_points(), 2);
        let q = Permutation::new(vec![4, 2, 3, 1]).unwrap();
        assert_eq!(q.anti_fixed_points(), 2);
        let r = Permutation::new(vec![4, 3, 2, 1]).unwrap();
        assert_eq!(r.anti_fixed_points(), 4);
    }

    #[test]
    fn unit_tableau_validation() {
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3]]).is_ok());
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(StandardTableau::new(vec![vec![2, 1], vec![3]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![2]]).is_err());
    }
}
