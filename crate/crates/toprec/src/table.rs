use crate::error::TrError;
use crate::latex::correlator_latex;
use crate::store::Store;
use p5_algebra::{q, qi, Pole, PoleBasisTensor, Poly, QRatFun, Rational};
use serde::Serialize;

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::new(c.iter().map(|&x| qi(x)).collect())
}

fn one_point(g: usize, num: Poly<Rational>, den_scale: i64) -> PoleBasisTensor {
    let den = poly(&[-1, 0, 1]).pow(2 * g as u32).scale(&qi(den_scale));
    let f = QRatFun::new(num, den).expect("nonzero denominator");
    PoleBasisTensor::from_ratfun(&f, 1 - 2 * g as i32).expect("poles only at ±1")
}

fn two_branch(n: usize, c: Rational) -> PoleBasisTensor {
    PoleBasisTensor::from_terms(
        n,
        -(n as i32),
        [(vec![Pole::new(1, 2); n], c.clone()), (vec![Pole::new(-1, 2); n], c)],
    )
}

fn palindrome(half: &[i64]) -> Poly<Rational> {
    let mut c: Vec<i64> = Vec::new();
    for (k, &a) in half.iter().chain(half.iter().rev().skip(1)).enumerate() {
        if k > 0 {
            c.push(0);
        }
        c.push(a);
    }
    poly(&c)
}

/// One display of the published genus-expansion table.
#[derive(Clone, Debug)]
pub struct PrintedEntry {
    pub g: usize,
    pub n: usize,
    /// `None` when the display cannot be read as a function.
    pub value: Option<PoleBasisTensor>,
}

/// The nine published nonzero correlators, transcribed as displayed.
pub fn printed_correlators() -> Vec<PrintedEntry> {
    let zp = poly(&[1, 0, 1]);
    let e = |g, n, value| PrintedEntry { g, n, value };
    vec![
        e(1, 1, Some(one_point(1, zp.clone(), -2))),
        e(1, 2, None),
        e(2, 1, Some(one_point(2, &zp * &palindrome(&[1, -11]), -2))),
        e(1, 3, Some(two_branch(3, qi(2)))),
        e(3, 1, Some(one_point(3, &zp * &palindrome(&[5, -47, 309]), 1))),
        e(1, 4, Some(two_branch(4, qi(12)))),
        e(4, 1, Some(one_point(4, palindrome(&[262, -2841, 15756, -81479]), -2))),
        e(1, 5, Some(two_branch(5, qi(96)))),
        e(
            5,
            1,
            Some(one_point(5, (&zp * &palindrome(&[1315, -16588, 102133, -434810, 1646095])).scale(&qi(5)), 1)),
        ),
    ]
}

/// Value of W₂⁽¹⁾ when its display is read with numerator 1.
pub fn w2_1_unit_numerator() -> PoleBasisTensor {
    two_branch(2, q(1, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum TableStatus {
    Match,
    Mismatch,
    Unreadable,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableRow {
    pub g: usize,
    pub n: usize,
    pub status: TableStatus,
    pub computed: String,
    pub printed: Option<String>,
    /// computed / printed, for one-point mismatches.
    pub quotient: Option<String>,
}

/// Compares each printed display with the store's correlator.
pub fn compare_printed_table(store: &Store) -> Result<Vec<TableRow>, TrError> {
    printed_correlators()
        .into_iter()
        .map(|p| {
            let c = store.tensor(p.g, p.n)?;
            let (status, quotient) = match &p.value {
                None => (TableStatus::Unreadable, None),
                Some(v) if v == c.as_ref() => (TableStatus::Match, None),
                Some(v) => {
                    let quotient = if p.n == 1 {
                        let a = c.to_ratfun()?;
                        let b = v.to_ratfun()?;
                        Some((&a / &b).to_string())
                    } else {
                        None
                    };
                    (TableStatus::Mismatch, quotient)
                }
            };
            Ok(TableRow {
                g: p.g,
                n: p.n,
                status,
                computed: correlator_latex(&c),
                printed: p.value.as_ref().map(correlator_latex),
                quotient,
            })
        })
        .collect()
}
