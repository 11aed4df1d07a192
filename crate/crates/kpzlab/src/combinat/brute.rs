//! Exact rational longest-increasing-subsequence distributions by
//! exhaustive enumeration; the oracle for every exact-formula module.

pub use super::counts::ClassConstraint;
use super::counts::enumerate_class;
use super::lis::lis;
use super::SymmetryClass;
use crate::{Error, Result};
use num::{BigInt, BigRational};

/// Exact probability that the longest increasing subsequence of a
/// uniformly random member of the class (under the constraint) is <= l.
pub fn brute_cdf(
    n: usize,
    l: usize,
    class: SymmetryClass,
    constraint: ClassConstraint,
) -> Result<BigRational> {
    let mut total = 0u64;
    let mut good = 0u64;
    for p in enumerate_class(n, class, constraint)? {
        total += 1;
        if lis(&p) <= l {
            good += 1;
        }
    }
    if total == 0 {
        return Err(Error::Domain(format!(
            "no permutations of size {n} in {class:?} satisfy the constraint"
        )));
    }
    Ok(BigRational::new(BigInt::from(good), BigInt::from(total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: u64, b: u64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn unit_plain_small() {
        let r = brute_cdf(2, 1, SymmetryClass::Plain, ClassConstraint::Any).unwrap();
        assert_eq!(r, ratio(1, 2));
    }

    #[test]
    fn unit_diag_constrained() {
        let r = brute_cdf(2, 1, SymmetryClass::Diag, ClassConstraint::TwoCycles(1)).unwrap();
        assert_eq!(r, ratio(1, 1));
    }

    #[test]
    fn unit_full_support() {
        for n in 1..=8 {
            let r = brute_cdf(n, n, SymmetryClass::Plain, ClassConstraint::Any).unwrap();
            assert_eq!(r, ratio(1, 1), "n = {n}");
        }
    }

    #[test]
    fn unit_monotone_in_l() {
        let mut prev = ratio(0, 1);
        for l in 0..=5 {
            let r = brute_cdf(5, l, SymmetryClass::Plain, ClassConstraint::Any).unwrap();
            assert!(r >= prev);
            prev = r;
        }
        assert_eq!(prev, ratio(1, 1));
    }

    #[test]
    fn unit_empty_class_is_domain_error() {
        let r = brute_cdf(3, 1, SymmetryClass::Diag, ClassConstraint::TwoCycles(2));
        assert!(r.is_err());
    }

    #[test]
    fn unit_central_matches_direct_count() {
        // S_4 central permutations: 8 of them; count lis <= 2 directly.
        use crate::combinat::counts::enumerate_class;
        let members: Vec<_> =
            enumerate_class(4, SymmetryClass::Central, ClassConstraint::Any)
                .unwrap()
                .collect();
        assert_eq!(members.len(), 8);
        let good = members.iter().filter(|p| lis(p) <= 2).count() as u64;
        let r = brute_cdf(4, 2, SymmetryClass::Central, ClassConstraint::Any).unwrap();
        assert_eq!(r, ratio(good, 8));
    }
}
