use p5_algebra::{q, qi, Field, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaSeries {
    #[serde(serialize_with = "crate::report::ser_qs")]
    pub coeffs: Vec<Rational>,
}

impl SigmaSeries {
    pub fn get(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_integral_from(&self, start: usize) -> bool {
        self.coeffs.iter().skip(start).all(|c| c.is_integer())
    }
}

/// σ₀..σ_K from the quadratic/cubic recursion.
pub fn sigma_coeffs(k_max: usize) -> SigmaSeries {
    let mut s: Vec<Rational> = vec![q(1, 16)];
    for k in 1..=k_max {
        s.push(next_coeff(&s, k, true));
    }
    SigmaSeries { coeffs: s }
}

/// The recursion with its last quadratic sum dropped.
pub fn printed_recursion(k_max: usize) -> Vec<Rational> {
    let mut s: Vec<Rational> = vec![q(1, 16)];
    for k in 1..=k_max {
        s.push(next_coeff(&s, k, false));
    }
    s
}

fn w(n: i64) -> Rational {
    qi(n)
}

fn next_coeff(s: &[Rational], k: usize, full: bool) -> Rational {
    let k = k as i64;
    let sg = |j: i64| &s[j as usize];
    let a = |j: i64| w((2 - 2 * j) * (1 - 2 * j)) * sg(j);
    let mut acc = Rational::zero();
    for j in 0..k {
        acc += w(16) * a(j) * a(k - 1 - j);
    }
    for i in 1..k {
        acc -= w(16 * (2 * i - 1) * (1 - 2 * k + 2 * i)) * sg(i) * sg(k - i);
    }
    for i in 1..k {
        for j in 0..=i {
            acc -= w(64 * (2 - 2 * j) * (2 - 2 * i + 2 * j) * (1 - 2 * k + 2 * i))
                * sg(j)
                * sg(i - j)
                * sg(k - i);
        }
    }
    if full {
        for j in 1..k {
            acc -= w(4 * (2 - 2 * j) * (2 - 2 * k + 2 * j)) * sg(j) * sg(k - j);
        }
    }
    acc
}

/// Coefficients R_K of x^(2K) t^(4−2K) in
/// sign·(x t σ̈)² + (tσ̇ − σ)(tσ̇ − σ − 4σ̇²) for the truncated series.
/// Entries 0..=K are exact consequences of σ₀..σ_K.
pub fn chazy_residual(sigma: &[Rational], sign: i64) -> Vec<Rational> {
    let kk = sigma.len();
    let scaled = |f: &dyn Fn(i64) -> i64| -> Vec<Rational> {
        sigma.iter().enumerate().map(|(k, c)| w(f(k as i64)) * c).collect()
    };
    let a = scaled(&|k| 1 - 2 * k);
    let b = scaled(&|k| 2 - 2 * k);
    let c = scaled(&|k| (2 - 2 * k) * (1 - 2 * k));
    let mul = |p: &[Rational], r: &[Rational], shift: usize| {
        let mut out = vec![Rational::zero(); kk];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in r.iter().enumerate() {
                if i + j + shift < kk {
                    out[i + j + shift] += x * y;
                }
            }
        }
        out
    };
    let b2 = mul(&b, &b, 0);
    let inner: Vec<Rational> = a.iter().zip(&b2).map(|(x, y)| x - w(4) * y).collect();
    let first = mul(&c, &c, 1);
    let second = mul(&a, &inner, 0);
    first.iter().zip(&second).map(|(x, y)| w(sign) * x + y).collect()
}

/// Term of σ̂(s) = Σ coeff · π^piPower · s^sPower · ħ^(2k).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SigmaHatTerm {
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub coeff: Rational,
    pub s_power: i32,
    pub pi_power: i32,
}

/// σ̂(s) = −π² Σ (−1)ᵏ σₖ (2s)^(2−2k) ħ^(2k).
pub fn sigma_hat_series(k_max: usize) -> Vec<SigmaHatTerm> {
    let s = sigma_coeffs(k_max);
    (0..=k_max)
        .map(|k| {
            let sign = if k % 2 == 0 { -Rational::one() } else { Rational::one() };
            let two = pow2(2 - 2 * k as i64);
            SigmaHatTerm { k, coeff: sign * two * s.get(k), s_power: 2 - 2 * k as i32, pi_power: 2 }
        })
        .collect()
}

pub(crate) fn pow2(e: i64) -> Rational {
    qi(2).powi(e)
}
