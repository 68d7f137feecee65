use std::fmt;

use super::matrix::{CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Complex polynomial with coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct CPolynomial {
    coeffs: Vec<C64>,
}

impl CPolynomial {
    /// Trailing zero coefficients are dropped so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        CPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&ONE)
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    /// `sum |c_k| r^k`, the natural magnitude of the terms at radius `r`.
    pub fn magnitude_at(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }
}

impl fmt::Display for CPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monic characteristic polynomial `det(x I - a)` via Faddeev-LeVerrier.
///
/// On integer input every intermediate is an integer matrix, so results are exact
/// while magnitudes stay below 2^53.
pub fn cm_charpoly(a: &CMatrix) -> Result<CPolynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "cm_charpoly",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    let mut m = CMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a * &m;
        coeffs[n - k] = -am.trace() / (k as f64);
    }
    Ok(CPolynomial { coeffs })
}
