//! One step of the recursion: residues at z = ±1 of the kernel against the
//! bracket, expanded as Laurent series in w = z − a with tensor coefficients
//! in the spectator variables.

use crate::curve::BRANCH_POINTS;
use num_traits::Zero;
use p5_algebra::par::Exec;
use p5_algebra::{qi, Pole, PoleBasisTensor, QRatFun, Rational};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Single-variable factor of a bracket term, as a function of `u`
/// (`u = z` on the left slot, `u = 1/z` on the right slot).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Factor {
    /// `(u − ε)^(−k)`
    Pole(Pole),
    /// `(u − a)^k` at the active branch point `a`
    Mono(u16),
}

impl Factor {
    fn order_at(self, a: i8) -> u16 {
        match self {
            Factor::Pole(p) if p.eps() == a => p.order(),
            _ => 0,
        }
    }

    fn ratfun(self, a: i8) -> QRatFun {
        match self {
            Factor::Pole(p) => QRatFun::linear_pow(qi(p.eps() as i64), -(p.order() as i32)),
            Factor::Mono(k) => QRatFun::linear_pow(qi(a as i64), k as i32),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Profile {
    /// left(z) · right(1/z) / z²
    Pair(Factor, Factor),
    /// W₂⁽⁰⁾(z, 1/z) / z²
    Diagonal,
}

/// Normalization of the recursion kernel.
///
/// Every bracket term has exactly one conjugate slot, pulled back as a
/// differential (dz̄ = −dz/z²), so the two conventions differ by the sign of
/// each recursion step: stable W_n^(g) agree up to (−1)^n.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Kernel 𝒦/ω = (z²−1)z²/((z₀z−1)(z−z₀)(z²+1)s), as displayed with the
    /// correlator table.
    #[default]
    PrintedRatio,
    /// Kernel ½∫_{z̄}^{z}B(z₀,·)/(ω(z)−ω(z̄)), the negative of the above.
    EynardOrantin,
}

impl Convention {
    fn step_sign(self) -> i64 {
        match self {
            Convention::PrintedRatio => -1,
            Convention::EynardOrantin => 1,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Convention::PrintedRatio => "printed-ratio",
            Convention::EynardOrantin => "eynard-orantin",
        }
    }
}

enum Side<'a> {
    Fixed(&'a PoleBasisTensor, Vec<usize>),
    Bergman(usize),
}

type Accum = HashMap<Profile, HashMap<Vec<Pole>, Rational>>;

pub struct Engine {
    convention: Convention,
    exec: Exec,
    residues: RwLock<HashMap<(i8, Profile), Arc<Vec<Rational>>>>,
    kernels: RwLock<HashMap<(i8, u16), Arc<Vec<Rational>>>>,
}

impl Engine {
    pub fn new(convention: Convention, exec: Exec) -> Self {
        Engine { convention, exec, residues: RwLock::default(), kernels: RwLock::default() }
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Coefficients κ_j[e], e = j..=hi, of z²/(z²+1)·((1/z−a)^j − (z−a)^j).
    fn kernel_series(&self, a: i8, j: u16, hi: i64) -> Arc<Vec<Rational>> {
        if let Some(v) = self.kernels.read().unwrap().get(&(a, j)) {
            if v.len() as i64 >= hi - j as i64 + 1 {
                return v.clone();
            }
        }
        let ap = qi(a as i64);
        let lin = QRatFun::linear_pow(ap.clone(), j as i32);
        let diff = &lin.substitute_inverse() - &lin;
        let pre = QRatFun::new(
            p5_algebra::Poly::new(vec![qi(0), qi(0), qi(1)]),
            p5_algebra::Poly::new(vec![qi(1), qi(0), qi(1)]),
        )
        .expect("nonzero");
        let f = &pre * &diff;
        let hi = hi.max(j as i64 + 8);
        let l = f.laurent_expand(&ap, hi).expect("regular at the branch point");
        let v: Vec<Rational> = (j as i64..=hi).map(|e| l.coeff(e)).collect();
        let v = Arc::new(v);
        self.kernels.write().unwrap().insert((a, j), v.clone());
        v
    }

    /// r_j = Res_{z=a} κ_j(z)·S(z) for j = 1..; empty when S has at most a
    /// simple pole.
    fn residue_vector(&self, a: i8, p: Profile) -> Arc<Vec<Rational>> {
        if let Some(v) = self.residues.read().unwrap().get(&(a, p)) {
            return v.clone();
        }
        let ap = qi(a as i64);
        let inv_z2 = QRatFun::linear_pow(qi(0), -2);
        let s = match p {
            Profile::Pair(l, r) => &(&l.ratfun(a) * &r.ratfun(a).substitute_inverse()) * &inv_z2,
            Profile::Diagonal => QRatFun::linear_pow(qi(1), -2) * QRatFun::linear_pow(qi(-1), -2),
        };
        let ord = s.pole_order(&ap) as i64;
        let mut out = Vec::new();
        if ord >= 2 {
            let ser = s.laurent_expand(&ap, -2).expect("order above valuation");
            let top = ord - 1;
            for j in 1..=top {
                let k = self.kernel_series(a, j as u16, top);
                let mut acc = Rational::zero();
                for e in j..=top {
                    let kc = &k[(e - j) as usize];
                    if !kc.is_zero() {
                        acc += kc * ser.coeff(-1 - e);
                    }
                }
                out.push(acc);
            }
        }
        let v = Arc::new(out);
        self.residues.write().unwrap().insert((a, p), v.clone());
        v
    }

    /// W_{n+1}^{(g)}(z₀, z₁..z_n) from the lower correlators supplied by `get`,
    /// which must answer every stable (h, k) with 2h−2+k < 2g−1+n.
    pub fn step<G>(&self, g: usize, n: usize, get: G) -> PoleBasisTensor
    where
        G: Fn(usize, usize) -> Arc<PoleBasisTensor> + Sync,
    {
        let grade = 2 - 2 * g as i32 - (n as i32 + 1);
        let mut items: Vec<(i8, Option<(usize, u32)>)> = Vec::new();
        for a in BRANCH_POINTS {
            if g >= 1 {
                items.push((a, None));
            }
            for m in 0..=g {
                for mask in 0..(1u32 << n) {
                    let k1 = mask.count_ones() as usize + 1;
                    let k2 = n + 2 - k1;
                    if (m, k1) == (0, 1) || (g - m, k2) == (0, 1) {
                        continue;
                    }
                    items.push((a, Some((m, mask))));
                }
            }
        }
        self.exec.map_reduce(
            items,
            |(a, it)| {
                let mut acc: Accum = HashMap::new();
                match it {
                    None => self.diagonal_terms(g, n, a, &get, &mut acc),
                    Some((m, mask)) => self.split_terms(g, n, a, m, mask, &get, &mut acc),
                }
                self.finish(a, n, grade, acc)
            },
            || PoleBasisTensor::zero(n + 1, grade),
            |x, y| x.add(&y).expect("same shape"),
        )
    }

    fn diagonal_terms<G>(&self, g: usize, n: usize, _a: i8, get: &G, acc: &mut Accum)
    where
        G: Fn(usize, usize) -> Arc<PoleBasisTensor>,
    {
        if g == 1 && n == 0 {
            acc.entry(Profile::Diagonal).or_default().insert(Vec::new(), qi(1));
            return;
        }
        let w = get(g - 1, n + 2);
        for (poles, c) in w.terms() {
            let p = Profile::Pair(Factor::Pole(poles[0]), Factor::Pole(poles[1]));
            add(acc, p, poles[2..].to_vec(), c.clone());
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn split_terms<G>(&self, g: usize, n: usize, a: i8, m: usize, mask: u32, get: &G, acc: &mut Accum)
    where
        G: Fn(usize, usize) -> Arc<PoleBasisTensor>,
    {
        let left_vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let right_vars: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        let lt;
        let rt;
        let left = if m == 0 && left_vars.len() == 1 {
            Side::Bergman(left_vars[0])
        } else {
            lt = get(m, left_vars.len() + 1);
            Side::Fixed(&lt, left_vars)
        };
        let right = if g == m && right_vars.len() == 1 {
            Side::Bergman(right_vars[0])
        } else {
            rt = get(g - m, right_vars.len() + 1);
            Side::Fixed(&rt, right_vars)
        };
        match (&left, &right) {
            (Side::Bergman(_), Side::Bergman(_)) => {}
            (Side::Fixed(lt, lv), Side::Fixed(rt, rv)) => {
                for (lp, lc) in lt.terms() {
                    let fl = Factor::Pole(lp[0]);
                    for (rp, rc) in rt.terms() {
                        let fr = Factor::Pole(rp[0]);
                        if fl.order_at(a) + fr.order_at(a) < 2 {
                            continue;
                        }
                        let mut rest = vec![Pole::ABSENT; n];
                        for (i, &v) in lv.iter().enumerate() {
                            rest[v] = lp[i + 1];
                        }
                        for (i, &v) in rv.iter().enumerate() {
                            rest[v] = rp[i + 1];
                        }
                        add(acc, Profile::Pair(fl, fr), rest, lc * rc);
                    }
                }
            }
            (Side::Bergman(bv), Side::Fixed(t, tv)) | (Side::Fixed(t, tv), Side::Bergman(bv)) => {
                let bergman_left = matches!(left, Side::Bergman(_));
                for (tp, tc) in t.terms() {
                    let ft = Factor::Pole(tp[0]);
                    let ord = ft.order_at(a);
                    if ord < 2 {
                        continue;
                    }
                    let mut base = vec![Pole::ABSENT; n];
                    for (i, &v) in tv.iter().enumerate() {
                        base[v] = tp[i + 1];
                    }
                    for k in 0..=(ord - 2) {
                        let mut rest = base.clone();
                        rest[*bv] = Pole::new(a, k + 2);
                        let c = tc * qi(k as i64 + 1);
                        let p = if bergman_left {
                            Profile::Pair(Factor::Mono(k), ft)
                        } else {
                            Profile::Pair(ft, Factor::Mono(k))
                        };
                        add(acc, p, rest, c);
                    }
                }
            }
        }
    }

    fn finish(&self, a: i8, n: usize, grade: i32, acc: Accum) -> PoleBasisTensor {
        let sign = qi(self.convention.step_sign());
        let mut out = PoleBasisTensor::zero(n + 1, grade);
        for (p, rests) in acc {
            let r = self.residue_vector(a, p);
            for (j, rj) in r.iter().enumerate() {
                if rj.is_zero() {
                    continue;
                }
                let head = Pole::new(a, j as u16 + 2);
                let f = rj * &sign;
                for (rest, c) in &rests {
                    debug_assert!(rest.iter().all(|p| !p.is_absent()));
                    let mut key = Vec::with_capacity(n + 1);
                    key.push(head);
                    key.extend_from_slice(rest);
                    out.add_term(key, &f * c);
                }
            }
        }
        out
    }
}

fn add(acc: &mut Accum, p: Profile, rest: Vec<Pole>, c: Rational) {
    let e = acc.entry(p).or_default().entry(rest).or_insert_with(Rational::zero);
    *e += c;
}
