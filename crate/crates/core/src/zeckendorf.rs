//! Zeckendorf numeration: positive integers as sums of non-consecutive
//! Fibonacci numbers over the basis `1, 2, 3, 5, 8, ...`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ZeckendorfError {
    #[error("only positive integers have a Zeckendorf code")]
    NotPositive,
    #[error("code contains two consecutive 1s")]
    ConsecutiveOnes,
    #[error("code must start with 1")]
    LeadingZero,
    #[error("`{0}` is not a binary digit")]
    BadDigit(char),
    #[error("code is too long for a 64-bit value")]
    TooLong,
}

/// A Zeckendorf code, most significant digit first. Always starts with 1
/// and never contains `11`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeckendorfCode {
    bits: Vec<bool>,
}

/// `1, 2, 3, 5, 8, ...` up to the last value not exceeding `limit`.
fn basis_up_to(limit: u64) -> Vec<u64> {
    let mut basis = vec![1u64];
    let mut next = 2u64;
    while next <= limit {
        basis.push(next);
        match basis[basis.len() - 2].checked_add(next) {
            Some(n) => next = n,
            None => break,
        }
    }
    basis
}

impl ZeckendorfCode {
    /// Validates a digit sequence, most significant first.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self, ZeckendorfError> {
        match bits.first() {
            None | Some(false) => return Err(ZeckendorfError::LeadingZero),
            Some(true) => {}
        }
        if bits.windows(2).any(|w| w[0] && w[1]) {
            return Err(ZeckendorfError::ConsecutiveOnes);
        }
        // 93 digits already exceed u64::MAX
        if bits.len() > 92 {
            return Err(ZeckendorfError::TooLong);
        }
        Ok(ZeckendorfCode { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The represented integer.
    pub fn value(&self) -> Result<u64, ZeckendorfError> {
        let mut basis = basis_up_to(u64::MAX);
        basis.truncate(self.bits.len());
        if basis.len() < self.bits.len() {
            return Err(ZeckendorfError::TooLong);
        }
        self.bits
            .iter()
            .rev()
            .zip(&basis)
            .filter(|(bit, _)| **bit)
            .try_fold(0u64, |acc, (_, &b)| acc.checked_add(b))
            .ok_or(ZeckendorfError::TooLong)
    }
}

impl fmt::Display for ZeckendorfCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ZeckendorfCode {
    type Err = ZeckendorfError;

    fn from_str(s: &str) -> Result<Self, ZeckendorfError> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ZeckendorfError::BadDigit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ZeckendorfCode::from_bits(bits)
    }
}

/// Greedy decomposition: take the largest basis value that fits, repeat.
pub fn encode(m: u64) -> Result<ZeckendorfCode, ZeckendorfError> {
    if m == 0 {
        return Err(ZeckendorfError::NotPositive);
    }
    let basis = basis_up_to(m);
    let mut rest = m;
    let bits = basis
        .iter()
        .rev()
        .map(|&b| {
            let take = b <= rest;
            if take {
                rest -= b;
            }
            take
        })
        .collect();
    debug_assert_eq!(rest, 0);
    Ok(ZeckendorfCode { bits })
}

/// Parses and evaluates a code such as `"10101"`.
pub fn decode(code: &str) -> Result<u64, ZeckendorfError> {
    code.parse::<ZeckendorfCode>()?.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(encode(1).unwrap().to_string(), "1");
        assert_eq!(encode(4).unwrap().to_string(), "101");
        assert_eq!(encode(12).unwrap().to_string(), "10101");
        assert_eq!(decode("1"), Ok(1));
        assert_eq!(decode("10101"), Ok(12));
        assert_eq!(decode("11"), Err(ZeckendorfError::ConsecutiveOnes));
        assert_eq!(decode("0101"), Err(ZeckendorfError::LeadingZero));
        assert_eq!(decode(""), Err(ZeckendorfError::LeadingZero));
        assert_eq!(decode("102"), Err(ZeckendorfError::BadDigit('2')));
        assert_eq!(encode(0), Err(ZeckendorfError::NotPositive));
    }

    #[test]
    fn extremes() {
        let code = encode(u64::MAX).unwrap();
        assert_eq!(code.value(), Ok(u64::MAX));
        assert!(!code.to_string().contains("11"));
    }
}
