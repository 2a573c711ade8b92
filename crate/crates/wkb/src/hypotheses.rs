use crate::det::{default_sample_points, det_correlator_at, DetCorrelator};
use crate::error::WkbError;
use crate::orders::{check_regularity, RegularityReport};
use crate::zhukovsky::*;
use p5_algebra::par::Exec;
use p5_algebra::{qi, rational_to_string, Rational};
use p5_sigma::HbarConvention;
use p5_toprec::{Convention, Correlator, Store};
use serde::Serialize;

/// s at which the recursion output is compared with the q-expansion.
pub fn comparison_s() -> G {
    -(i() * half())
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComparisonHeader {
    pub hbar: HbarConvention,
    pub recursion_kernel: &'static str,
    pub jacobian: &'static str,
    pub s: String,
    pub two_point_subtraction: &'static str,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LeadingExponent {
    pub n: usize,
    pub exponent: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hypothesis1 {
    pub n_max: usize,
    pub depth: usize,
    pub parity: bool,
    pub leading_order: bool,
    pub cycles_cancel: bool,
    pub leading_exponents: Vec<LeadingExponent>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hypothesis2 {
    #[serde(flatten)]
    pub regularity: RegularityReport,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Match {
    pub n: usize,
    pub g: usize,
    pub hbar_exponent: i64,
    pub sample_points: Vec<Vec<String>>,
    pub det_values: Vec<String>,
    pub recursion_values: Vec<String>,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HypothesesReport {
    pub header: ComparisonHeader,
    pub hypothesis1: Hypothesis1,
    pub hypothesis2: Hypothesis2,
    pub hypothesis3: &'static str,
    pub matches: Vec<Match>,
    pub all_passed: bool,
}

fn dxi_prod(zs: &[Rational]) -> G {
    g(zs.iter().map(dxi_at).fold(qi(1), |a, b| a * b))
}

/// W_n^(g) from the recursion, as a coefficient of dξ₁…dξₙ at s = −i/2.
pub fn recursion_value(store: &Store, n: usize, genus: usize, zs: &[Rational]) -> Result<G, WkbError> {
    let s = comparison_s();
    let zg: Vec<G> = zs.iter().cloned().map(g).collect();
    let v = match store.correlator(genus, n)? {
        Correlator::Omega => {
            let z = &zs[0];
            s * g((z * z + qi(1)) / (qi(4) * z * z))
        }
        Correlator::Bergman => {
            let d = &zs[0] - &zs[1];
            let dx = xi_at(&zs[0]) - xi_at(&zs[1]);
            // subtract the ξ-plane double pole
            return Ok(g((&d * &d).recip()) / dxi_prod(zs) - g((&dx * &dx).recip()));
        }
        Correlator::Stable(t) => t.eval(&zg, &s)?,
    };
    Ok(v / dxi_prod(zs))
}

/// Runs the three hypotheses and the determinantal-vs-recursion comparison
/// for every (n, g) with n ≤ nMax, g ≤ gMax and n + 2g − 2 ≤ depth.
pub fn verify_hypotheses(n_max: usize, g_max: usize, depth: Option<usize>) -> Result<HypothesesReport, WkbError> {
    let depth = depth.unwrap_or(4).max((n_max + 2 * g_max).saturating_sub(2));
    let samples = default_sample_points();
    let store = Store::with_convention(Convention::EynardOrantin, Exec::default(), None);
    let dets: Vec<DetCorrelator> =
        (1..=n_max).map(|n| det_correlator_at(n, depth, &samples)).collect::<Result<_, _>>()?;
    let h1 = Hypothesis1 {
        n_max,
        depth,
        parity: dets.iter().all(DetCorrelator::parity_holds),
        leading_order: dets.iter().all(DetCorrelator::leading_order_holds),
        cycles_cancel: dets.iter().flat_map(|d| &d.cycles).all(|c| c.exponential_cancels && c.half_exponents_cancel),
        leading_exponents: dets.iter().map(|d| LeadingExponent { n: d.n, exponent: d.leading_exponent }).collect(),
        pass: false,
    };
    let h1 = Hypothesis1 { pass: h1.parity && h1.leading_order && h1.cycles_cancel, ..h1 };
    let regularity = check_regularity(dets[0].wkb())?;
    let h2 = Hypothesis2 { pass: regularity.regular, regularity };
    let mut matches = Vec::new();
    for det in &dets {
        let n = det.n;
        for genus in 0..=g_max {
            let m = (n + 2 * genus) as i64 - 2;
            if m > depth as i64 {
                continue;
            }
            let mut dv = Vec::new();
            let mut rv = Vec::new();
            for pts in &det.sample_points {
                dv.push(det.eval(pts)?[&m].clone());
                rv.push(recursion_value(&store, n, genus, pts)?);
            }
            matches.push(Match {
                n,
                g: genus,
                hbar_exponent: m,
                sample_points: det.sample_points.iter().map(|p| p.iter().map(rational_to_string).collect()).collect(),
                equal: dv == rv,
                det_values: dv.iter().map(ToString::to_string).collect(),
                recursion_values: rv.iter().map(ToString::to_string).collect(),
            });
        }
    }
    let all_passed = h1.pass && h2.pass && matches.iter().all(|m| m.equal);
    Ok(HypothesesReport {
        header: ComparisonHeader {
            hbar: HbarConvention::AppendixB,
            recursion_kernel: Convention::EynardOrantin.slug(),
            jacobian: "recursion forms divided by prod dxi/dz",
            s: comparison_s().to_string(),
            two_point_subtraction: "W_2^(0) compared as B/(dxi1 dxi2) - 1/(xi1-xi2)^2",
        },
        hypothesis1: h1,
        hypothesis2: h2,
        hypothesis3: "trivial",
        matches,
        all_passed,
    })
}
