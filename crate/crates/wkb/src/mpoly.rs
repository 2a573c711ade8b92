use p5_algebra::{Field, Poly};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: F) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// x_var^e
    pub fn var_pow(nvars: usize, var: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = e;
        Self::monomial(nvars, exps, F::one())
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::var_pow(nvars, var, 1)
    }

    /// Embed a univariate polynomial as a polynomial in `var`.
    pub fn from_poly(nvars: usize, var: usize, p: &Poly<F>) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[var] = k as i32;
            out.add_term(exps, c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * a.clone())).collect() }
    }

    /// Exchange two variables.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitute a value for one variable, keeping the arity.
    pub fn specialize(&self, var: usize, x: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let k = std::mem::replace(&mut e[var], 0);
            out.add_term(e, c.clone() * x.powi(k as i64));
        }
        out
    }

    /// Identify variable `j` with variable `i`.
    pub fn identify(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += std::mem::replace(&mut e[j], 0);
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            acc + e.iter().zip(x).fold(c.clone(), |t, (&k, xi)| if k == 0 { t } else { t * xi.powi(k as i64) })
        })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k != 0)
                .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            parts.push(if mono.is_empty() { format!("({c})") } else { format!("({c})*{}", mono.join("*")) });
        }
        parts.join(" + ")
    }
}

impl<F: Field> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: &MPoly<F>) -> MPoly<F> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &MPoly<F>) -> MPoly<F> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: &MPoly<F>) -> MPoly<F> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        self.scale(&-F::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for MPoly<F> {
            type Output = MPoly<F>;
            fn $m(self, o: MPoly<F>) -> MPoly<F> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
