use crate::orders::{Which, WkbFunction};
use crate::zhukovsky::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use p5_algebra::{GRatFun, Poly, Rational};

fn symbol(w: Which) -> &'static str {
    match w {
        Which::Psi => "\\psi",
        Which::Phi => "\\phi",
        Which::PsiTilde => "\\tilde{\\psi}",
        Which::PhiTilde => "\\tilde{\\phi}",
    }
}

fn int_poly_latex(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let unit = mag.is_one() && k > 0;
        if !unit {
            out.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => out.push('z'),
            _ => out.push_str(&format!("z^{{{k}}}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Split p = c·P with P primitive over ℤ, c a Gaussian rational with P real.
fn primitive(p: &Poly<G>) -> Option<(G, Vec<BigInt>)> {
    let real = p.coeffs().iter().all(|c| c.im.is_zero());
    let imag = p.coeffs().iter().all(|c| c.re.is_zero());
    if !real && !imag {
        return None;
    }
    let parts: Vec<Rational> = p.coeffs().iter().map(|c| if real { c.re.clone() } else { c.im.clone() }).collect();
    let den = parts.iter().fold(BigInt::one(), |a, r| a.lcm(r.denom()));
    let ints: Vec<BigInt> = parts.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut gcd = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        gcd = -gcd;
    }
    let prim = ints.iter().map(|x| x / &gcd).collect();
    let scale = Rational::new(gcd, den);
    let c = if real { g(scale) } else { i() * g(scale) };
    Some((c, prim))
}

fn z2m1_power(d: &Poly<G>) -> Option<u32> {
    (0..=d.degree()? as u32 / 2).find(|&k| *d == poly(&[-1, 0, 1]).pow(k))
}

/// (negative, numerator, denominator) of a real or purely imaginary rational.
fn coeff_latex(c: &G) -> Option<(bool, String, String)> {
    let (r, unit) = if c.im.is_zero() {
        (c.re.clone(), "")
    } else if c.re.is_zero() {
        (c.im.clone(), "i")
    } else {
        return None;
    };
    let mag = r.abs();
    let num = if mag.numer().is_one() && !unit.is_empty() { unit.to_string() } else { format!("{}{unit}", mag.numer()) };
    let den = if mag.denom().is_one() { String::new() } else { mag.denom().to_string() };
    Some((r.is_negative(), num, den))
}

/// LaTeX of one rational order in the Zhukovsky variable.
pub fn ratfun_latex(f: &GRatFun, t_power: i64) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let tpart = match t_power {
        0 => String::new(),
        1 => "t".into(),
        k => format!("t^{{{k}}}"),
    };
    let fallback = || format!("\\frac{{{}}}{{{tpart}({})}}", f.numer(), f.denom());
    let Some((c, prim)) = primitive(f.numer()) else {
        return fallback();
    };
    let Some((neg, cnum, cden)) = coeff_latex(&c) else {
        return fallback();
    };
    let num_body = int_poly_latex(&prim);
    let den = match z2m1_power(f.denom()) {
        Some(0) => String::new(),
        Some(1) => "\\left(z^{2}-1\\right)".into(),
        Some(k) => format!("\\left(z^{{2}}-1\\right)^{{{k}}}"),
        None => format!("\\left({}\\right)", f.denom()),
    };
    let sign = if neg { "-" } else { "" };
    let numerator = match (prim.iter().filter(|x| !x.is_zero()).count() > 1, num_body.as_str()) {
        (true, _) => format!("\\left({num_body}\\right)"),
        (false, "1") => String::new(),
        _ => num_body.clone(),
    };
    let lead = if cnum == "1" && !numerator.is_empty() { String::new() } else { cnum };
    let denom = format!("{cden}{tpart}{den}");
    if denom.is_empty() {
        format!("{sign}{lead}{numerator}")
    } else {
        format!("{sign}\\frac{{{lead}{numerator}}}{{{denom}}}")
    }
}

/// `\psi_{k}(t,\xi)=…` for order k ≥ 1.
pub fn wkb_order_latex(f: &WkbFunction, k: usize) -> String {
    format!("{}_{{{k}}}(t,\\xi)={}", symbol(f.which), ratfun_latex(f.order(k), k as i64))
}

/// All orders 1..=K, one per line, with the Zhukovsky parametrization.
pub fn wkb_latex(f: &WkbFunction) -> String {
    let mut out = vec![format!(
        "% xi = (z+1)^2/(4z), sqrt(xi(xi-1)) = (z^2-1)/(4z); normalization {:?}",
        f.convention
    )];
    out.extend((1..=f.depth()).map(|k| wkb_order_latex(f, k)));
    out.join("\n")
}
