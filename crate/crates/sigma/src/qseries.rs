use p5_algebra::{Field, GaussianRational};
use num_traits::{One, Zero};

type G = GaussianRational;

/// Truncated power series Σ c[k] q^k over ℚ(i), exact through q^(len−1).
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    pub c: Vec<G>,
}

impl QSeries {
    pub fn new(mut c: Vec<G>, len: usize) -> Self {
        c.resize(len, G::zero());
        Self { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn constant(a: G, len: usize) -> Self {
        Self::new(vec![a], len)
    }

    pub fn coeff(&self, k: usize) -> G {
        self.c.get(k).cloned().unwrap_or_else(G::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        Self { c: (0..n).map(|k| self.c[k].clone() + o.c[k].clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-G::one()))
    }

    pub fn scale(&self, a: &G) -> Self {
        Self { c: self.c.iter().map(|x| x.clone() * a.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let mut c = vec![G::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { c }
    }

    /// 1/self; the constant term must be nonzero.
    pub fn inv(&self) -> Self {
        let n = self.len();
        let a0 = self.c[0].inv();
        let mut out: Vec<G> = Vec::with_capacity(n);
        out.push(a0.clone());
        for k in 1..n {
            let mut acc = G::zero();
            for j in 1..=k {
                acc = acc + self.c[j].clone() * out[k - j].clone();
            }
            out.push(-(acc * a0.clone()));
        }
        Self { c: out }
    }

    /// Square root with prescribed constant term r0 (r0² = c0).
    pub fn sqrt_with(&self, r0: G) -> Self {
        let n = self.len();
        let two_r0_inv = (r0.clone() + r0.clone()).inv();
        let mut r: Vec<G> = vec![r0];
        for k in 1..n {
            let mut acc = self.c[k].clone();
            for j in 1..k {
                acc = acc - r[j].clone() * r[k - j].clone();
            }
            r.push(acc * two_r0_inv.clone());
        }
        Self { c: r }
    }

    /// q · d/dq.
    pub fn q_deriv(&self) -> Self {
        Self {
            c: self.c.iter().enumerate().map(|(k, x)| x.clone() * G::from_i64(k as i64)).collect(),
        }
    }

    /// Multiply by q^k, keeping the length.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.len();
        let mut c = vec![G::zero(); k.min(n)];
        c.extend(self.c.iter().take(n.saturating_sub(k)).cloned());
        Self { c }
    }

    /// Divide by q^k, dropping the first k coefficients (which must vanish).
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        Self { c: self.c.iter().skip(k).cloned().collect() }
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self { c: self.c.iter().take(len).cloned().collect() }
    }
}
