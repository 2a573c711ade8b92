use crate::lax::lax_expansions;
use crate::sigma::{printed_recursion, sigma_coeffs};
use crate::tau::{tau_coeffs, TauCoefficient};
use num_traits::{One, Signed};
use p5_algebra::{q, qi, rational_to_string, Rational};
use serde::{Serialize, Serializer};

pub(crate) fn ser_q<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(r))
}

pub(crate) fn ser_qs<S: Serializer>(r: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(rational_to_string))
}

/// A printed value that disagrees with the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Discrepancy {
    pub location: String,
    pub printed_value: String,
    pub computed_value: String,
}

/// Known printed values checked against the recursion, for every entry
/// reachable with σ₀..σ_K.
pub fn discrepancies(k_max: usize) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let mut push = |location: &str, printed: Rational, computed: Rational| {
        if printed != computed {
            out.push(Discrepancy {
                location: location.to_string(),
                printed_value: rational_to_string(&printed),
                computed_value: rational_to_string(&computed),
            });
        }
    };
    if k_max >= 4 {
        let printed = printed_recursion(4);
        let s = sigma_coeffs(4);
        push("sigma_4 (three-sum recursion as printed)", printed[4].clone(), s.get(4).clone());
    }
    if k_max >= 5 {
        let tau = tau_coeffs(5);
        push("tau_5 coefficient of hbar^8/s^8 (printed tau series)", q(-6375, 16), tau[5].coeff.clone());
        push("F_5 coefficient of 1/s^8 (printed free-energy table)", q(-6575, 16), tau[5].coeff.clone());
    }
    if k_max >= 3 {
        let lax = lax_expansions(6);
        push("z_3 coefficient of hbar^6/t^5 (printed z(t) expansion)", qi(16), lax.z_coeffs[3].clone());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    #[serde(serialize_with = "ser_qs")]
    pub sigma: Vec<Rational>,
    pub tau: Vec<TauCoefficient>,
    pub discrepancies: Vec<Discrepancy>,
}

impl SigmaReport {
    pub fn new(k_max: usize) -> Self {
        SigmaReport {
            sigma: sigma_coeffs(k_max).coeffs,
            tau: tau_coeffs(k_max),
            discrepancies: discrepancies(k_max),
        }
    }
}

fn pow_tex(base: &str, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        e if e < 10 => format!("{base}^{e}"),
        e => format!("{base}^{{{e}}}"),
    }
}

/// `\log \hat{\tau}(s)=…+O(\hbar^{2G})` with one term per genus.
pub fn tau_latex(tau: &[TauCoefficient]) -> String {
    let mut out = String::from("\\log \\hat{\\tau}(s)=");
    for (idx, t) in tau.iter().enumerate() {
        let neg = t.coeff.is_negative();
        if neg {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        let c = t.coeff.abs();
        let (p, d) = (c.numer().clone(), c.denom().clone());
        if t.is_log {
            out.push_str(&format!("\\frac{{{p}}}{{{d}}}\\ln s"));
            continue;
        }
        let h = 2 * t.g as i32 - 2;
        let (mut top, mut bot) = (String::new(), String::new());
        if !p.is_one() || (h <= 0 && t.s_power <= 0) {
            top.push_str(&p.to_string());
        }
        if !d.is_one() {
            bot.push_str(&d.to_string());
        }
        if h > 0 { top.push_str(&pow_tex("\\hbar", h)) } else { bot.push_str(&pow_tex("\\hbar", -h)) }
        if t.s_power > 0 {
            top.push_str(&pow_tex("s", t.s_power))
        } else {
            bot.push_str(&pow_tex("s", -t.s_power))
        }
        if bot.is_empty() {
            out.push_str(&top);
        } else {
            out.push_str(&format!("\\frac{{{top}}}{{{bot}}}"));
        }
    }
    let next = 2 * tau.len() as i32 - 2;
    out.push_str(&format!("+O({})", pow_tex("\\hbar", next.max(0))));
    out
}

