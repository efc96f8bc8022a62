//! Sign + log-magnitude arithmetic.
//!
//! Family scans evaluate monomial parameter laws with exponents up to
//! ~20 at samples up to 10^6, which overflows f64. All scan arithmetic
//! therefore runs on `(sign, ln |x|)` pairs; signed sums factor out the
//! largest magnitude and accumulate the rest in descending order.

use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNum {
    /// -1, 0, or +1.
    pub sign: i8,
    /// Natural log of the magnitude; meaningless when `sign == 0`.
    pub ln: Real,
}

impl LogNum {
    pub const ZERO: LogNum = LogNum { sign: 0, ln: f64::NEG_INFINITY };
    pub const ONE: LogNum = LogNum { sign: 1, ln: 0.0 };

    pub fn from_f64(x: Real) -> LogNum {
        if x == 0.0 {
            LogNum::ZERO
        } else {
            LogNum { sign: if x > 0.0 { 1 } else { -1 }, ln: x.abs().ln() }
        }
    }

    pub fn to_f64(self) -> Real {
        self.sign as Real * self.ln.exp()
    }

    pub fn log10(self) -> Real {
        self.ln / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn neg(self) -> LogNum {
        LogNum { sign: -self.sign, ln: self.ln }
    }

    pub fn mul(self, other: LogNum) -> LogNum {
        if self.sign == 0 || other.sign == 0 {
            return LogNum::ZERO;
        }
        LogNum { sign: self.sign * other.sign, ln: self.ln + other.ln }
    }

    pub fn div(self, other: LogNum) -> LogNum {
        assert!(other.sign != 0, "log-space division by zero");
        if self.sign == 0 {
            return LogNum::ZERO;
        }
        LogNum { sign: self.sign * other.sign, ln: self.ln - other.ln }
    }

    /// Integer power; tracks sign parity.
    pub fn powi(self, e: i32) -> LogNum {
        if self.sign == 0 {
            return if e == 0 { LogNum::ONE } else { LogNum::ZERO };
        }
        let sign = if self.sign == -1 && e % 2 != 0 { -1 } else { 1 };
        LogNum { sign, ln: self.ln * e as Real }
    }

    /// Real power of a nonnegative value.
    pub fn powf(self, e: Real) -> LogNum {
        assert!(self.sign >= 0, "real power of a negative log-space value");
        if self.sign == 0 {
            return LogNum::ZERO;
        }
        LogNum { sign: 1, ln: self.ln * e }
    }

    pub fn sqrt(self) -> LogNum {
        self.powf(0.5)
    }
}

/// Signed sum of log-space terms: factor out the largest magnitude and
/// accumulate `sign_i * exp(ln_i - ln_max)` from largest to smallest.
/// Also returns the ln of the largest term, the natural tolerance
/// scale of the sum.
pub fn signed_sum(terms: &[LogNum]) -> (LogNum, Real) {
    let mut live: Vec<LogNum> = terms.iter().copied().filter(|t| t.sign != 0).collect();
    if live.is_empty() {
        return (LogNum::ZERO, f64::NEG_INFINITY);
    }
    live.sort_by(|a, b| b.ln.partial_cmp(&a.ln).unwrap());
    let max_ln = live[0].ln;
    let mut acc = 0.0f64;
    for t in &live {
        acc += t.sign as Real * (t.ln - max_ln).exp();
    }
    if acc == 0.0 {
        (LogNum::ZERO, max_ln)
    } else {
        (
            LogNum { sign: if acc > 0.0 { 1 } else { -1 }, ln: max_ln + acc.abs().ln() },
            max_ln,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_ops() {
        let a = LogNum::from_f64(12.0);
        let b = LogNum::from_f64(-3.0);
        assert!((a.mul(b).to_f64() + 36.0).abs() < 1e-9);
        assert!((a.div(b).to_f64() + 4.0).abs() < 1e-12);
        assert!((b.powi(3).to_f64() + 27.0).abs() < 1e-9);
        assert!((a.sqrt().to_f64() - 12.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(LogNum::from_f64(0.0), LogNum::ZERO);
    }

    #[test]
    fn signed_sum_survives_large_exponents() {
        // 10^300 * 10^300 style products would overflow f64; here the
        // representation is exact in ln.
        let big = LogNum { sign: 1, ln: 300.0 * std::f64::consts::LN_10 };
        let prod = big.mul(big);
        assert!((prod.log10() - 600.0).abs() < 1e-9);
        let (sum, scale) = signed_sum(&[prod, prod.neg()]);
        assert!(sum.is_zero());
        assert!((scale - prod.ln).abs() < 1e-9);
    }

    #[test]
    fn signed_sum_small_cases() {
        let terms: Vec<LogNum> = [1.0, -0.25, 3.5].iter().map(|&x| LogNum::from_f64(x)).collect();
        let (sum, _) = signed_sum(&terms);
        assert!((sum.to_f64() - 4.25).abs() < 1e-12);
        let (zero, _) = signed_sum(&[]);
        assert!(zero.is_zero());
    }
}
