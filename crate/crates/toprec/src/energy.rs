use crate::curve::GapSpectralCurve;
use crate::error::TrError;
use crate::store::Store;
use num_traits::Zero;
use p5_algebra::{q, qi, rational_to_string, Rational};
use p5_sigma::{tau_coeffs, TauCoefficient};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// residue formula over the branch points
    Computed,
    /// closed-form value for g = 0, 1
    Supplied,
}

fn ser_q<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(r))
}

/// F⁽ᵍ⁾ = coeff·s^sPower, or coeff·ln s when `is_log`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FreeEnergy {
    pub g: usize,
    #[serde(serialize_with = "ser_q")]
    pub coeff: Rational,
    pub s_power: i32,
    pub is_log: bool,
    pub provenance: Provenance,
}

impl FreeEnergy {
    pub fn matches(&self, t: &TauCoefficient) -> bool {
        self.g == t.g && self.coeff == t.coeff && self.s_power == t.s_power && self.is_log == t.is_log
    }
}

pub fn free_energy(store: &Store, g: usize) -> Result<FreeEnergy, TrError> {
    match g {
        0 => {
            return Ok(FreeEnergy {
                g,
                coeff: q(-1, 8),
                s_power: 2,
                is_log: false,
                provenance: Provenance::Supplied,
            })
        }
        1 => {
            return Ok(FreeEnergy {
                g,
                coeff: q(1, 4),
                s_power: 0,
                is_log: true,
                provenance: Provenance::Supplied,
            })
        }
        _ => {}
    }
    let w = store.tensor(g, 1)?.to_ratfun()?;
    let (p, m) = (qi(1), qi(-1));
    let w_sum = w.residue_at(&p)? + w.residue_at(&m)?;
    if !w_sum.is_zero() {
        return Err(TrError::ResidueCheck {
            g,
            what: format!("Res W1 over the branch points is {w_sum}"),
        });
    }
    let f = &GapSpectralCurve::new().phi * &w;
    let branch = f.residue_at(&p)? + f.residue_at(&m)?;
    let other = f.residue_at(&Rational::zero())? + f.residue_at_infinity();
    if other != -branch.clone() {
        return Err(TrError::ResidueCheck {
            g,
            what: format!("Res_0 + Res_inf = {other}, branch sum = {branch}"),
        });
    }
    let coeff = branch / qi(2 - 2 * g as i64);
    Ok(FreeEnergy {
        g,
        coeff,
        s_power: 2 - 2 * g as i32,
        is_log: false,
        provenance: Provenance::Computed,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremRow {
    pub g: usize,
    pub free_energy: FreeEnergy,
    pub tau: TauCoefficient,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MainTheoremReport {
    pub max_genus: usize,
    pub rows: Vec<TheoremRow>,
    pub all_equal: bool,
}

impl MainTheoremReport {
    pub fn failures(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| !r.equal)
            .map(|r| {
                format!(
                    "g={}: F = {} s^{}, tau = {} s^{}",
                    r.g,
                    rational_to_string(&r.free_energy.coeff),
                    r.free_energy.s_power,
                    rational_to_string(&r.tau.coeff),
                    r.tau.s_power
                )
            })
            .collect()
    }
}

/// Compare F⁽ᵍ⁾ with τ̂_g for g = 0..=G.
pub fn verify_main_theorem(store: &Store, max_genus: usize) -> Result<MainTheoremReport, TrError> {
    let tau = tau_coeffs(max_genus);
    let mut rows = Vec::with_capacity(max_genus + 1);
    for t in tau {
        let f = free_energy(store, t.g)?;
        let equal = f.matches(&t);
        rows.push(TheoremRow { g: t.g, free_energy: f, tau: t, equal });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(MainTheoremReport { max_genus, rows, all_equal })
}

