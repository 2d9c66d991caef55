use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 20;

/// Bernoulli coefficients in the positive ("old") convention:
/// entry `r` is `|B_{2r}|` of the modern signed numbering, so the table
/// starts 1/6, 1/30, 1/42, 1/30, 5/66.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    coefficients: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Exact coefficient `B_r`, `r` counted from 1.
    pub fn get(&self, r: usize) -> Option<&BigRational> {
        r.checked_sub(1).and_then(|i| self.coefficients.get(i))
    }

    /// Nearest double to `B_r`.
    pub fn value(&self, r: usize) -> Option<f64> {
        self.get(r).and_then(|b| b.to_f64())
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigRational> {
        self.coefficients.iter()
    }
}

/// Builds the table for `r = 1..=r_max` from the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`, `B_0 = 1`.
pub fn bernoulli(r_max: usize) -> Result<BernoulliTable> {
    if !(1..=MAX_ORDER).contains(&r_max) {
        return Err(Error::domain(format!(
            "bernoulli table size must be in 1..={MAX_ORDER}, got {r_max}"
        )));
    }
    let top = 2 * r_max;
    let mut signed: Vec<BigRational> = Vec::with_capacity(top + 1);
    signed.push(BigRational::one());
    for m in 1..=top {
        // binomial C(m+1, j) built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b_j) in signed.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * b_j;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        signed.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    let coefficients = (1..=r_max).map(|r| signed[2 * r].abs()).collect();
    Ok(BernoulliTable { coefficients })
}
