use crate::laurent::series_div;
use crate::{AlgebraError, Field, Laurent, Poly};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Univariate rational function in canonical form: monic denominator,
/// coprime numerator and denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

/// One term `coeff·(z − point)^(−order)` of a partial-fraction decomposition.
#[derive(Clone, PartialEq, Debug)]
pub struct PartialFraction<F: Field> {
    pub point: F,
    pub order: u32,
    pub coeff: F,
}

impl<F: Field> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let l = den.lead().inv();
        Ok(Self { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(a: F) -> Self {
        Self::from_poly(Poly::constant(a))
    }

    /// The coordinate function z.
    pub fn z() -> Self {
        Self::from_poly(Poly::x())
    }

    /// (z − a)^e for any integer e.
    pub fn linear_pow(a: F, e: i32) -> Self {
        let p = Poly::linear_root(a).pow(e.unsigned_abs());
        if e >= 0 {
            Self::from_poly(p)
        } else {
            Self { num: Poly::one(), den: p }
        }
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let p = Self { num: self.num.pow(e.unsigned_abs()), den: self.den.pow(e.unsigned_abs()) };
        if e >= 0 {
            p
        } else {
            p.inv().expect("negative power of zero")
        }
    }

    pub fn eval(&self, x: &F) -> Result<F, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// f(1/z) in canonical form.
    pub fn substitute_inverse(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let m = dn.max(dd);
        Self::new(self.num.reversed(dn).shift_up(m - dn), self.den.reversed(dd).shift_up(m - dd))
            .expect("nonzero denominator")
    }

    /// f(g(z)).
    pub fn compose(&self, g: &Self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let m = dn.max(dd);
        // homogenise: N(g) = Σ a_k G^k H^(m-k) / H^m with g = G/H
        let hom = |p: &Poly<F>| {
            let mut acc = Poly::zero();
            for (k, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let t = &g.num.pow(k as u32) * &g.den.pow((m - k) as u32);
                acc = &acc + &t.scale(a);
            }
            acc
        };
        Self::new(hom(&self.num), hom(&self.den)).expect("composition hit a pole identically")
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFun<G> {
        RatFun::new(self.num.map(&f), self.den.map(&f)).expect("nonzero denominator")
    }

    /// Laurent expansion at `point` through exponent `order`.
    pub fn laurent_expand(&self, point: &F, order: i64) -> Result<Laurent<F>, AlgebraError> {
        if self.is_zero() {
            return Ok(Laurent::zero(order));
        }
        let n = self.num.taylor_shift(point);
        let d = self.den.taylor_shift(point);
        let k = n.valuation().expect("nonzero") as i64;
        let m = d.valuation().expect("nonzero") as i64;
        let valuation = k - m;
        if order < valuation {
            return Err(AlgebraError::OrderBelowValuation { order, valuation });
        }
        let len = (order - valuation + 1) as usize;
        let coeffs = series_div(
            n.shift_down(k as usize).coeffs(),
            d.shift_down(m as usize).coeffs(),
            len,
        );
        Ok(Laurent { valuation, order, coeffs })
    }

    /// Pole order at `point` (0 when regular).
    pub fn pole_order(&self, point: &F) -> u32 {
        let d = self.den.taylor_shift(point);
        d.valuation().unwrap_or(0) as u32
    }

    pub fn residue_at(&self, point: &F) -> Result<F, AlgebraError> {
        let p = self.pole_order(point);
        if p == 0 {
            return Ok(F::zero());
        }
        Ok(self.laurent_expand(point, -1)?.coeff(-1))
    }

    /// Residue at infinity, −Res_{z=0} f(1/z)/z².
    pub fn residue_at_infinity(&self) -> F {
        let g = &self.substitute_inverse() * &Self::linear_pow(F::zero(), -2);
        -g.residue_at(&F::zero()).expect("finite pole order")
    }

    /// Partial fractions over the listed poles; the function must be proper
    /// and its denominator must split over them.
    pub fn partial_fractions(&self, poles: &[F]) -> Result<Vec<PartialFraction<F>>, AlgebraError> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        if dn >= dd {
            return Err(AlgebraError::Improper { num: dn, den: dd });
        }
        let mut rest = self.den.clone();
        let mut orders = Vec::with_capacity(poles.len());
        for p in poles {
            let lin = Poly::linear_root(p.clone());
            let mut k = 0u32;
            loop {
                let (q, r) = rest.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            orders.push(k);
        }
        if rest.degree() != Some(0) {
            return Err(AlgebraError::UnlistedPole { factor: rest.to_string() });
        }
        let mut out = Vec::new();
        for (p, &k) in poles.iter().zip(&orders) {
            if k == 0 {
                continue;
            }
            let l = self.laurent_expand(p, -1)?;
            for a in (1..=k).rev() {
                let c = l.coeff(-(a as i64));
                if !c.is_zero() {
                    out.push(PartialFraction { point: p.clone(), order: a, coeff: c });
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`partial_fractions`](Self::partial_fractions).
    pub fn from_partial_fractions(terms: &[PartialFraction<F>]) -> Self {
        let mut acc = Self::zero();
        for t in terms {
            acc = &acc + &Self::linear_pow(t.point.clone(), -(t.order as i32)).scale(&t.coeff);
        }
        acc
    }
}

impl<F: Field> Add for &RatFun<F> {
    type Output = RatFun<F>;
    fn add(self, o: &RatFun<F>) -> RatFun<F> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFun::new(n, &self.den * &o.den).expect("nonzero")
    }
}

impl<F: Field> Sub for &RatFun<F> {
    type Output = RatFun<F>;
    fn sub(self, o: &RatFun<F>) -> RatFun<F> {
        self + &(-o)
    }
}

impl<F: Field> Mul for &RatFun<F> {
    type Output = RatFun<F>;
    fn mul(self, o: &RatFun<F>) -> RatFun<F> {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl<F: Field> Div for &RatFun<F> {
    type Output = RatFun<F>;
    fn div(self, o: &RatFun<F>) -> RatFun<F> {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFun::new(&self.num * &o.den, &self.den * &o.num).expect("nonzero")
    }
}

impl<F: Field> Neg for &RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for RatFun<F> {
            type Output = RatFun<F>;
            fn $m(self, o: RatFun<F>) -> RatFun<F> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl<F: Field> Neg for RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
