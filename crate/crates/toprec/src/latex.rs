//! LaTeX in the `eqnarray` layout of the correlator and free-energy tables.

use crate::energy::FreeEnergy;
use num_traits::{One, Signed, Zero};
use p5_algebra::{qi, Poly, PoleBasisTensor, Rational};
use num_bigint::BigInt;
use num_integer::Integer;

fn s_pow(k: i32) -> String {
    match k {
        0 => String::new(),
        1 => "s".into(),
        k if k < 10 => format!("s^{k}"),
        k => format!("s^{{{k}}}"),
    }
}

fn z_pow(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.into(),
        k if k < 10 => format!("{var}^{k}"),
        k => format!("{var}^{{{k}}}"),
    }
}

fn poly_tex(p: &Poly<Rational>) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !a.is_one() || k == 0 {
            out.push_str(&a.to_string());
        }
        out.push_str(&z_pow("z", k));
    }
    out
}

/// Split `p` as `c·P` with `P` integral, primitive, positive leading coefficient.
fn content(p: &Poly<Rational>) -> (Rational, Poly<Rational>) {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
        g = g.gcd(c.numer());
    }
    if g.is_zero() {
        return (Rational::zero(), p.clone());
    }
    let mut c = Rational::new(g, BigInt::one()) / Rational::new(l, BigInt::one());
    if p.lead().is_negative() {
        c = -c;
    }
    (c.clone(), p.scale(&(Rational::one() / c)))
}

fn pole_tex(var: &str, eps: i8, order: u16) -> String {
    let sign = if eps > 0 { '-' } else { '+' };
    if order == 1 {
        format!("({var}{sign}1)")
    } else if order < 10 {
        format!("({var}{sign}1)^{order}")
    } else {
        format!("({var}{sign}1)^{{{order}}}")
    }
}

fn frac(c: &Rational, num_tail: &str, den_tail: &str, first: bool) -> String {
    let mut out = String::new();
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    let mut num = String::new();
    if !a.numer().is_one() || num_tail.is_empty() {
        num.push_str(&a.numer().to_string());
    }
    num.push_str(num_tail);
    let mut den = String::new();
    if !a.denom().is_one() {
        den.push_str(&a.denom().to_string());
    }
    den.push_str(den_tail);
    if den.is_empty() {
        out.push_str(&num);
    } else {
        out.push_str(&format!("\\frac{{{num}}}{{{den}}}"));
    }
    out
}

fn one_var(t: &PoleBasisTensor) -> Option<String> {
    let f = t.to_ratfun().ok()?;
    let d = f.denom();
    let deg = d.degree()?;
    let base = Poly::new(vec![qi(-1), qi(0), qi(1)]);
    if deg % 2 != 0 || *d != base.pow(deg as u32 / 2) {
        return None;
    }
    let (c, p) = content(f.numer());
    let plus = Poly::new(vec![qi(1), qi(0), qi(1)]);
    let (quot, rem) = p.div_rem(&plus).ok()?;
    let num = if rem.is_zero() {
        let rest = poly_tex(&quot);
        if rest == "1" {
            "(z^2+1)".to_string()
        } else {
            format!("(z^2+1)({rest})")
        }
    } else {
        format!("({})", poly_tex(&p))
    };
    let den = format!("{}(z^2-1)^{}", s_pow(-t.s_grade()), brace(deg / 2));
    Some(frac(&c, &num, &den, true))
}

fn brace(k: usize) -> String {
    if k < 10 {
        k.to_string()
    } else {
        format!("{{{k}}}")
    }
}

fn vars(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["z".into()]
    } else {
        (1..=n).map(|i| format!("z_{i}")).collect()
    }
}

fn two_branch(t: &PoleBasisTensor) -> Option<String> {
    let n = t.nvars();
    if n < 3 || t.len() != 2 {
        return None;
    }
    let terms: Vec<_> = t.terms().collect();
    let (c0, c1) = (terms[0].1, terms[1].1);
    if c0 != c1 {
        return None;
    }
    for (poles, eps) in [(terms[0].0, -1i8), (terms[1].0, 1i8)] {
        if !poles.iter().all(|p| !p.is_absent() && p.eps() == eps && p.order() == 2) {
            return None;
        }
    }
    let prod = |sign: char| {
        if n == 3 {
            (1..=3).map(|i| format!("(z_{i}{sign}1)^2")).collect::<String>()
        } else {
            format!("(z_1{sign}1)^2\\dots(z_{n}{sign}1)^2")
        }
    };
    let head = frac(c0, "", &s_pow(-t.s_grade()), true);
    Some(format!(
        "{head}\\left(\\frac{{1}}{{{}}}+\\frac{{1}}{{{}}}\\right)",
        prod('-'),
        prod('+')
    ))
}

fn generic(t: &PoleBasisTensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let names = vars(t.nvars());
    let mut out = String::new();
    for (poles, c) in t.terms() {
        let mut den = s_pow(-t.s_grade());
        for (v, p) in names.iter().zip(poles) {
            if !p.is_absent() {
                den.push_str(&pole_tex(v, p.eps(), p.order()));
            }
        }
        out.push_str(&frac(c, "", &den, out.is_empty()));
    }
    out
}

/// Right-hand side for W_n^(g), in the most compact of the table's shapes.
pub fn correlator_latex(t: &PoleBasisTensor) -> String {
    if t.nvars() == 1 {
        if let Some(s) = one_var(t) {
            return s;
        }
    }
    two_branch(t).unwrap_or_else(|| generic(t))
}

/// One `eqnarray` row per correlator, `(g, n, W)`.
pub fn correlator_table_latex(rows: &[(usize, usize, &PoleBasisTensor)]) -> String {
    let mut out = String::from("\\begin{eqnarray}\n");
    out.push_str("W_n^{(0)}(z_1,\\dots,z_n)&=&0 \\,\\, \\forall n\\geq 3\\cr\n");
    for (g, n, t) in rows {
        let args = match n {
            1 => "z".to_string(),
            2 | 3 => vars(*n).join(","),
            _ => format!("z_1,\\dots,z_{n}"),
        };
        out.push_str(&format!("W_{n}^{{({g})}}({args})&=&{}\\cr\n", correlator_latex(t)));
    }
    out.push_str("\\end{eqnarray}\n");
    out
}

pub fn free_energy_latex(rows: &[FreeEnergy]) -> String {
    let mut out = String::from("\\begin{eqnarray}\n");
    for f in rows {
        let body = if f.is_log {
            frac(&f.coeff, "", "", true) + "\\ln s"
        } else if f.s_power >= 0 {
            frac(&f.coeff, &s_pow(f.s_power), "", true)
        } else {
            frac(&f.coeff, "", &s_pow(-f.s_power), true)
        };
        out.push_str(&format!("F^{{({})}}&=&{body}\\cr\n", f.g));
    }
    out.push_str("\\end{eqnarray}\n");
    out
}
