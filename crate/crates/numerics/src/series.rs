use crate::scalar::Scalar;

fn conv<T: Scalar>(a: &[T], b: &[T], n: usize) -> T {
    (0..=n).filter(|&i| i < a.len() && n - i < b.len()).fold(T::zero(), |acc, i| acc + a[i] * b[n - i])
}

/// σ̂ coefficients in any scalar type.
///
/// Seeded by a₁ = a₂ = −1; for n ≥ 3 the sⁿ coefficient of the σ-form residual
/// is linear in aₙ with slope −4(n−1)²/π².
pub(crate) fn small_s_coeffs<T: Scalar>(order: usize) -> Vec<T> {
    let order = order.max(2);
    let mut a = vec![T::zero(); order + 1];
    a[1] = -T::one();
    a[2] = -T::one();
    let pi2 = T::pi() * T::pi();
    let four = T::from_u(4);
    for n in 3..=order {
        // u = sσ̇ − σ, v = sσ̈, d = σ̇
        let at = |k: usize| if k <= n { a[k] } else { T::zero() };
        let u: Vec<T> = (0..=n).map(|k| (T::from_u(k) - T::one()) * a[k]).collect();
        let v: Vec<T> = (0..=n).map(|k| T::from_u((k + 1) * k) * at(k + 1)).collect();
        let d: Vec<T> = (0..=n).map(|k| T::from_u(k + 1) * at(k + 1)).collect();
        let inner: Vec<T> = (0..=n).map(|k| u[k] + conv(&d, &d, k) / pi2).collect();
        let r = conv(&v, &v, n) / pi2 + four * conv(&u, &inner, n);
        a[n] = pi2 * r / (four * T::from_u((n - 1) * (n - 1)));
    }
    a
}

/// Coefficients a₀..a_order of σ̂(s) = Σ aₖ sᵏ near s = 0.
pub fn small_s_expansion(order: usize) -> Vec<f64> {
    small_s_coeffs::<f64>(order)
}

pub(crate) fn integrate_coeffs<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().enumerate().map(|(k, &c)| if k == 0 { T::zero() } else { c / T::from_u(k) }).collect()
}

/// Coefficients of log τ̂(s) = ∫₀ˢ σ̂(u)/u du.
pub fn log_tau_series(order: usize) -> Vec<f64> {
    integrate_coeffs(&small_s_expansion(order))
}

pub(crate) fn horner<T: Scalar>(c: &[T], s: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &x| acc * s + x)
}

/// Σ cₖ sᵏ
pub fn eval_series(c: &[f64], s: f64) -> f64 {
    horner(c, s)
}
