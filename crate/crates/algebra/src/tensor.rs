use crate::{
    parse_rational, rational_to_string, AlgebraError, Field, PartialFraction, QRatFun, Rational,
};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Per-variable pole descriptor: absent, or `(z − ε)^(−a)` with ε = ±1, a ≥ 1.
///
/// The derived order puts "absent" first, then ε = −1, then ε = +1, each by
/// ascending order `a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pole(u16);

const PLUS: u16 = 0x4000;

impl Pole {
    pub const ABSENT: Pole = Pole(0);

    pub fn new(eps: i8, order: u16) -> Pole {
        assert!(eps == 1 || eps == -1, "branch must be ±1");
        assert!(order >= 1 && order < PLUS, "pole order out of range");
        Pole(if eps > 0 { PLUS | order } else { order })
    }

    pub fn is_absent(self) -> bool {
        self.0 == 0
    }

    pub fn eps(self) -> i8 {
        if self.0 & PLUS != 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(self) -> u16 {
        self.0 & (PLUS - 1)
    }
}

impl fmt::Debug for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_absent() {
            write!(f, "null")
        } else {
            write!(f, "[{},{}]", self.eps(), self.order())
        }
    }
}

/// `Σ c · Π_i (z_i − ε_i)^(−a_i) · s^sGrade` with rational `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoleBasisTensor {
    nvars: usize,
    s_grade: i32,
    terms: BTreeMap<Vec<Pole>, Rational>,
}

impl PoleBasisTensor {
    pub fn zero(nvars: usize, s_grade: i32) -> Self {
        assert!(nvars >= 1, "a tensor needs at least one variable");
        Self { nvars, s_grade, terms: BTreeMap::new() }
    }

    /// Build from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        s_grade: i32,
        terms: impl IntoIterator<Item = (Vec<Pole>, Rational)>,
    ) -> Self {
        let mut t = Self::zero(nvars, s_grade);
        for (m, c) in terms {
            t.add_term(m, c);
        }
        t
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn s_grade(&self) -> i32 {
        self.s_grade
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Pole>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[Pole]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Vec<Pole>, c: Rational) {
        assert_eq!(m.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.nvars != o.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: o.nvars });
        }
        if self.s_grade != o.s_grade && !self.is_zero() && !o.is_zero() {
            return Err(AlgebraError::GradeMismatch { left: self.s_grade, right: o.s_grade });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut out = if self.is_zero() { Self::zero(o.nvars, o.s_grade) } else { self.clone() };
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return Self::zero(self.nvars, self.s_grade);
        }
        Self {
            nvars: self.nvars,
            s_grade: self.s_grade,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect(),
        }
    }

    /// Variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.nvars,
            self.s_grade,
            self.terms.iter().map(|(m, c)| (perm.iter().map(|&p| m[p]).collect(), c.clone())),
        )
    }

    /// Invariance under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        loop {
            if self.permute(&perm) != *self {
                return false;
            }
            if !next_permutation(&mut perm) {
                return true;
            }
        }
    }

    /// Highest pole order carried by variable `var`.
    pub fn max_order(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| if m[var].is_absent() { 0 } else { m[var].order() }).max().unwrap_or(0)
    }

    /// Exact value at a point, with `s` substituted.
    pub fn eval<F: Field>(&self, z: &[F], s: &F) -> Result<F, AlgebraError> {
        if z.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: z.len() });
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from(c.clone());
            for (p, zi) in m.iter().zip(z) {
                if p.is_absent() {
                    continue;
                }
                let d = zi.clone() - F::from_i64(p.eps() as i64);
                if d.is_zero() {
                    return Err(AlgebraError::Pole);
                }
                t = t * d.powi(-(p.order() as i64));
            }
            acc = acc + t;
        }
        Ok(acc * s.powi(self.s_grade as i64))
    }

    /// Single-variable tensor as a rational function in z (s-grade dropped).
    pub fn to_ratfun(&self) -> Result<QRatFun, AlgebraError> {
        if self.nvars != 1 {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: 1 });
        }
        Ok(self.split_var(0).pop().map(|(_, f)| f).unwrap_or_else(QRatFun::zero))
    }

    pub fn from_ratfun(f: &QRatFun, s_grade: i32) -> Result<Self, AlgebraError> {
        Self::join_var(1, s_grade, 0, &[(Vec::new(), f.clone())])
    }

    /// Group by the remaining variables: `Σ_M M · f_M(z_var)`.
    pub fn split_var(&self, var: usize) -> Vec<(Vec<Pole>, QRatFun)> {
        let mut groups: BTreeMap<Vec<Pole>, Vec<PartialFraction<Rational>>> = BTreeMap::new();
        let mut consts: BTreeMap<Vec<Pole>, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let p = rest.remove(var);
            if p.is_absent() {
                let e = consts.entry(rest).or_insert_with(Rational::zero);
                *e = e.clone() + c;
            } else {
                groups.entry(rest).or_default().push(PartialFraction {
                    point: crate::qi(p.eps() as i64),
                    order: p.order() as u32,
                    coeff: c.clone(),
                });
            }
        }
        let mut keys: Vec<Vec<Pole>> = groups.keys().chain(consts.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| {
                let mut f = groups.get(&k).map(|g| QRatFun::from_partial_fractions(g)).unwrap_or_else(QRatFun::zero);
                if let Some(c) = consts.get(&k) {
                    f = &f + &QRatFun::constant(c.clone());
                }
                (k, f)
            })
            .collect()
    }

    /// Inverse of [`split_var`](Self::split_var); each rational function must
    /// decompose over the poles ±1 plus a constant.
    pub fn join_var(
        nvars: usize,
        s_grade: i32,
        var: usize,
        pieces: &[(Vec<Pole>, QRatFun)],
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(nvars, s_grade);
        let poles = [crate::qi(-1), crate::qi(1)];
        for (rest, f) in pieces {
            let (c0, proper) = split_constant(f)?;
            let mk = |p: Pole| {
                let mut m = rest.clone();
                m.insert(var, p);
                m
            };
            if !c0.is_zero() {
                out.add_term(mk(Pole::ABSENT), c0);
            }
            for pf in proper.partial_fractions(&poles)? {
                let eps = if pf.point == crate::qi(1) { 1 } else { -1 };
                out.add_term(mk(Pole::new(eps, pf.order as u16)), pf.coeff);
            }
        }
        Ok(out)
    }

    pub fn into_map(self) -> BTreeMap<Vec<Pole>, Rational> {
        self.terms
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(s).map_err(|e| AlgebraError::Parse(e.to_string()))
    }
}

fn split_constant(f: &QRatFun) -> Result<(Rational, QRatFun), AlgebraError> {
    let dn = f.numer().degree().unwrap_or(0);
    let dd = f.denom().degree().unwrap_or(0);
    if f.is_zero() || dn < dd {
        return Ok((Rational::zero(), f.clone()));
    }
    if dn > dd {
        return Err(AlgebraError::Improper { num: dn, den: dd });
    }
    let c = f.numer().lead() / f.denom().lead();
    Ok((c.clone(), f - &QRatFun::constant(c)))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    poles: Vec<Option<(i8, u16)>>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TensorJson {
    nvars: usize,
    s_grade: i32,
    terms: Vec<TermJson>,
}

impl Serialize for PoleBasisTensor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TensorJson {
            nvars: self.nvars,
            s_grade: self.s_grade,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    poles: m.iter().map(|p| (!p.is_absent()).then(|| (p.eps(), p.order()))).collect(),
                    coeff: rational_to_string(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoleBasisTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = TensorJson::deserialize(d)?;
        if j.nvars == 0 {
            return Err(D::Error::custom("nvars must be at least 1"));
        }
        let mut t = Self::zero(j.nvars, j.s_grade);
        for term in j.terms {
            if term.poles.len() != j.nvars {
                return Err(D::Error::custom("pole list length differs from nvars"));
            }
            let mut m = Vec::with_capacity(j.nvars);
            for p in term.poles {
                m.push(match p {
                    None => Pole::ABSENT,
                    Some((e, a)) if (e == 1 || e == -1) && a >= 1 && a < PLUS => Pole::new(e, a),
                    Some(_) => return Err(D::Error::custom("invalid pole descriptor")),
                });
            }
            t.add_term(m, parse_rational(&term.coeff).map_err(D::Error::custom)?);
        }
        Ok(t)
    }
}
