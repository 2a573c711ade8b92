use crate::Field;
use std::fmt;

/// Truncated Laurent series `Σ coeffs[k] w^(valuation + k)`, exact through
/// `w^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct Laurent<F: Field> {
    pub valuation: i64,
    pub order: i64,
    pub coeffs: Vec<F>,
}

impl<F: Field> Laurent<F> {
    pub fn zero(order: i64) -> Self {
        Self { valuation: order + 1, order, coeffs: Vec::new() }
    }

    /// Coefficient of w^e (zero outside the stored window).
    pub fn coeff(&self, e: i64) -> F {
        if e < self.valuation || e > self.order {
            return F::zero();
        }
        self.coeffs[(e - self.valuation) as usize].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*w^{}", self.valuation + k as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(w^{})", self.order + 1)
    }
}

/// First `n` coefficients of num/den as power series; `den[0]` must be nonzero.
pub(crate) fn series_div<F: Field>(num: &[F], den: &[F], n: usize) -> Vec<F> {
    let inv = den[0].inv();
    let mut out: Vec<F> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.get(k).cloned().unwrap_or_else(F::zero);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            acc = acc - den[j].clone() * out[k - j].clone();
        }
        out.push(acc * inv.clone());
    }
    out
}
