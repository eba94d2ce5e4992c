//! Double-exponential quadrature of the weights, Gram matrices and the
//! Favard positivity scan.

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    generate, norm, recurrence_table, weight_spec, Bound, Component, Decay, FamilyId, Node, Params, WeightSpec,
};
use crate::numerics::PrecisionContext;

/// Hard cap on nodes per component.
pub const NODE_CAP: usize = 1 << 20;
/// Tails are cut where the density falls below 10^(−digits−10)·peak.
pub const TAIL_SHIFT: i32 = -10;
const MIN_LEVEL: u32 = 3;
const COARSE: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: Vec<Float>,
    /// Estimate from the previous refinement level.
    pub previous: Vec<Float>,
    pub error_estimate: f64,
    pub node_count: usize,
    pub converged: bool,
}

/// Which double-exponential map a component uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Map {
    TanhSinh,
    ExpSinhRight,
    ExpSinhLeft,
    SinhSinh,
}

struct Mapped {
    node: Node,
    jac: Float,
}

fn map_of(c: &Component) -> Map {
    match (&c.lo, &c.hi) {
        (Bound::Finite(_), Bound::Finite(_)) => Map::TanhSinh,
        (Bound::Finite(_), Bound::PosInf) => Map::ExpSinhRight,
        (Bound::NegInf, Bound::Finite(_)) => Map::ExpSinhLeft,
        _ => Map::SinhSinh,
    }
}

fn map_point(c: &Component, t: &Float, prec: u32) -> Mapped {
    let hp = Float::with_val(prec, Constant::Pi) / 2u32;
    let u = Float::with_val(prec, t.sinh_ref()) * &hp;
    let ch = Float::with_val(prec, t.cosh_ref()) * &hp;
    match map_of(c) {
        Map::TanhSinh => {
            let a = c.lo.finite().unwrap();
            let b = c.hi.finite().unwrap();
            let w = Float::with_val(prec, b - a);
            let e2 = Float::with_val(prec, &u * 2u32).exp();
            let dl = Float::with_val(prec, &w / (Float::with_val(prec, e2.recip_ref()) + 1u32));
            let dr = Float::with_val(prec, &w / (Float::with_val(prec, &e2 + 1u32)));
            let x = if t.is_sign_negative() { Float::with_val(prec, a + &dl) } else { Float::with_val(prec, b - &dr) };
            // (w/2)·(π/2)cosh t / cosh²u = 2w·ch·e2/(1+e2)²
            let den = Float::with_val(prec, &e2 + 1u32).square();
            let jac = w * 2u32 * ch * e2 / den;
            Mapped { node: Node { x, lo: Some(a.clone()), hi: Some(b.clone()), dl: Some(dl), dr: Some(dr) }, jac }
        }
        Map::ExpSinhRight => {
            let a = c.lo.finite().unwrap();
            let e = u.exp();
            let x = Float::with_val(prec, a + &e);
            let jac = Float::with_val(prec, &ch * &e);
            Mapped { node: Node { x, lo: Some(a.clone()), hi: None, dl: Some(e), dr: None }, jac }
        }
        Map::ExpSinhLeft => {
            let b = c.hi.finite().unwrap();
            let e = u.exp();
            let x = Float::with_val(prec, b - &e);
            let jac = Float::with_val(prec, &ch * &e);
            Mapped { node: Node { x, lo: None, hi: Some(b.clone()), dl: None, dr: Some(e) }, jac }
        }
        Map::SinhSinh => {
            let x = Float::with_val(prec, u.sinh_ref());
            let jac = ch * u.cosh();
            Mapped { node: Node::interior(x), jac }
        }
    }
}

/// Finds the t-range outside which density·jac·(1+x²)^degree is negligible.
fn truncation(c: &Component, degree: u32, ctx: &PrecisionContext) -> (f64, f64) {
    let prec = ctx.prec();
    let step = 0.125;
    let thr = ctx.tol(TAIL_SHIFT);
    let bound = |t: f64| -> Float {
        let m = map_point(c, &Float::with_val(prec, t), prec);
        let d = (c.density)(&m.node);
        let x2 = Float::with_val(prec, m.node.x.square_ref()) + 1u32;
        let v = d * m.jac * Float::with_val(prec, rug::ops::Pow::pow(&x2, degree));
        if v.is_nan() {
            Float::with_val(prec, 0)
        } else {
            v.abs()
        }
    };
    let mut peak = bound(0.0);
    let mut ends = [0.0f64; 2];
    for (k, dir) in [-1.0f64, 1.0].into_iter().enumerate() {
        let mut small = 0;
        let mut t = 0.0;
        while t < 12.0 {
            t += step;
            let v = bound(dir * t);
            if v > peak {
                peak = v.clone();
            }
            if v <= Float::with_val(prec, &thr * &peak) {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        ends[k] = t;
    }
    (ends[0], ends[1])
}

/// Trapezoid sum over j·h for odd j only (or all j when `all`).
fn level_sum<F>(c: &Component, f: &F, k: usize, h: f64, range: (f64, f64), all: bool, ctx: &PrecisionContext) -> (Vec<Float>, usize)
where
    F: Fn(&Float) -> Vec<Float> + Sync,
{
    let prec = ctx.prec();
    let jlo = -(range.0 / h).floor() as i64;
    let jhi = (range.1 / h).floor() as i64;
    let js: Vec<i64> = (jlo..=jhi).filter(|j| all || j.rem_euclid(2) == 1).collect();
    let parts: Vec<Option<Vec<Float>>> = js
        .par_iter()
        .map(|&j| {
            let t = Float::with_val(prec, j) * h;
            let m = map_point(c, &t, prec);
            let w = (c.density)(&m.node) * &m.jac;
            if w.is_zero() || !w.is_finite() {
                return None;
            }
            Some(f(&m.node.x).into_iter().map(|v| v * &w).collect())
        })
        .collect();
    let mut acc = vec![Float::with_val(prec, 0); k];
    for p in parts.into_iter().flatten() {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
    }
    let hf = Float::with_val(prec, h);
    (acc.into_iter().map(|a| a * &hf).collect(), js.len())
}

/// Integrates a vector-valued f against one component.
///
/// `scale(values)` gives, per entry, the magnitude that the successive-level
/// difference is measured against.
fn integrate_component<F, S>(
    c: &Component,
    f: &F,
    k: usize,
    degree: u32,
    tol: &Float,
    scale: &S,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult>
where
    F: Fn(&Float) -> Vec<Float> + Sync,
    S: Fn(&[Float]) -> Vec<Float>,
{
    let prec = ctx.prec();
    let range = truncation(c, degree, ctx);
    let mut h = COARSE;
    let (mut s, mut nodes) = level_sum(c, f, k, h, range, true, ctx);
    let mut level = 0;
    loop {
        level += 1;
        h /= 2.0;
        let (odd, n) = level_sum(c, f, k, h, range, false, ctx);
        nodes += n;
        let next: Vec<Float> = s.iter().zip(&odd).map(|(a, b)| Float::with_val(prec, a / 2u32) + b).collect();
        let sc = scale(&next);
        let mut worst = 0.0f64;
        let mut ok = true;
        for ((a, b), m) in next.iter().zip(&s).zip(&sc) {
            let d = Float::with_val(prec, a - b).abs();
            let lim = Float::with_val(prec, tol * m);
            if d > lim {
                ok = false;
            }
            if !m.is_zero() {
                worst = worst.max((d / m).to_f64());
            }
        }
        let previous = std::mem::replace(&mut s, next);
        let done = ok && level >= MIN_LEVEL;
        if done || nodes * 2 > NODE_CAP {
            return Ok(QuadratureResult { value: s, previous, error_estimate: worst, node_count: nodes, converged: done });
        }
    }
}

/// ∫ weight · f over the support for each entry of f (the prefactor is not
/// applied). Entries converge relative to `scale(values)`.
pub fn integrate_many<F, S>(
    w: &WeightSpec,
    f: &F,
    k: usize,
    degree: u32,
    tol: &Float,
    scale: &S,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult>
where
    F: Fn(&Float) -> Vec<Float> + Sync,
    S: Fn(&[Float]) -> Vec<Float>,
{
    let prec = ctx.prec();
    let mut total = QuadratureResult {
        value: vec![Float::with_val(prec, 0); k],
        previous: vec![Float::with_val(prec, 0); k],
        error_estimate: 0.0,
        node_count: 0,
        converged: true,
    };
    for c in &w.components {
        let r = integrate_component(c, f, k, degree, tol, scale, ctx)?;
        for (a, v) in total.value.iter_mut().zip(r.value) {
            *a += v;
        }
        for (a, v) in total.previous.iter_mut().zip(r.previous) {
            *a += v;
        }
        total.error_estimate = total.error_estimate.max(r.error_estimate);
        total.node_count += r.node_count;
        total.converged &= r.converged;
    }
    Ok(total)
}

/// ∫ weight · f with relative tolerance `tol`.
pub fn integrate<F>(w: &WeightSpec, f: F, tol: &Float, ctx: &PrecisionContext) -> Result<QuadratureResult>
where
    F: Fn(&Float) -> Float + Sync,
{
    let g = |x: &Float| vec![f(x)];
    let sc = |v: &[Float]| vec![Float::with_val(ctx.prec(), v[0].abs_ref())];
    let r = integrate_many(w, &g, 1, 0, tol, &sc, ctx)?;
    if !r.converged {
        return Err(Error::NonConvergence {
            nodes: r.node_count,
            last: r.value[0].to_string_radix(10, Some(20)),
            prev: r.previous[0].to_string_radix(10, Some(20)),
        });
    }
    Ok(r)
}

/// Total mass including the printed prefactor.
pub fn mass(p: &Params, ctx: &PrecisionContext) -> Result<QuadratureResult> {
    let w = weight_spec(p, ctx)?;
    let mut r = integrate(&w, |x| Float::with_val(x.prec(), 1), &ctx.tol(8), ctx)?;
    r.value[0] *= &w.prefactor;
    Ok(r)
}

/// Default relative tolerance of quadrature: 10^(−digits+8).
pub fn default_tol(ctx: &PrecisionContext) -> Float {
    ctx.tol(8)
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub family: FamilyId,
    pub params: String,
    pub n: u32,
    /// Lower triangle, row n holds ⟨P_n, P_m⟩ for m ≤ n.
    #[serde(skip)]
    pub entries: Vec<Vec<Float>>,
    /// max over m < n of |⟨P_n,P_m⟩| / √(h_n h_m).
    pub off_diagonal_max: f64,
    /// |⟨P_n,P_n⟩ − h_n| / h_n per n.
    pub diagonal_rel_err: Vec<f64>,
    pub node_count: usize,
    pub error_estimate: f64,
    pub converged: bool,
}

impl GramReport {
    pub fn diagonal_max(&self) -> f64 {
        self.diagonal_rel_err.iter().cloned().fold(0.0, f64::max)
    }
}

/// ⟨P_n, P_m⟩ for 0 ≤ m ≤ n ≤ N from one shared node set.
pub fn gram(p: &Params, nmax: u32, tol: &Float, ctx: &PrecisionContext) -> Result<GramReport> {
    let prec = ctx.prec();
    let w = weight_spec(p, ctx)?;
    let ps = generate(p, nmax, ctx)?;
    let size = nmax as usize + 1;
    let idx: Vec<(usize, usize)> = (0..size).flat_map(|n| (0..=n).map(move |m| (n, m))).collect();
    let f = |x: &Float| {
        let v: Vec<Float> = ps.iter().map(|q| q.evaluate_real(x)).collect();
        idx.iter().map(|&(n, m)| Float::with_val(prec, &v[n] * &v[m])).collect::<Vec<_>>()
    };
    let diag_pos: Vec<usize> = (0..size).map(|n| n * (n + 1) / 2 + n).collect();
    // each entry against √(G_nn G_mm)
    let scale = |vals: &[Float]| {
        idx.iter()
            .map(|&(n, m)| {
                let a = Float::with_val(prec, vals[diag_pos[n]].abs_ref());
                let b = Float::with_val(prec, vals[diag_pos[m]].abs_ref());
                (a * b).sqrt()
            })
            .collect::<Vec<_>>()
    };
    let r = integrate_many(&w, &f, idx.len(), nmax, tol, &scale, ctx)?;
    let mut entries = vec![Vec::new(); size];
    for (k, &(n, _)) in idx.iter().enumerate() {
        entries[n].push(Float::with_val(prec, &r.value[k] * &w.prefactor));
    }
    let hs: Vec<Float> = (0..nmax + 1).map(|n| norm(p, n, ctx)).collect::<Result<_>>()?;
    let mut off = 0.0f64;
    let mut diag = Vec::new();
    for n in 0..size {
        for m in 0..=n {
            let g = &entries[n][m];
            if m == n {
                diag.push((Float::with_val(prec, g - &hs[n]) / &hs[n]).abs().to_f64());
            } else {
                let s = Float::with_val(prec, &hs[n] * &hs[m]).abs().sqrt();
                off = off.max((Float::with_val(prec, g.abs_ref()) / s).to_f64());
            }
        }
    }
    Ok(GramReport {
        family: p.family(),
        params: p.to_string(),
        n: nmax,
        entries,
        off_diagonal_max: off,
        diagonal_rel_err: diag,
        node_count: r.node_count,
        error_estimate: r.error_estimate,
        converged: r.converged,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FavardReport {
    pub family: FamilyId,
    pub n: u32,
    pub min_u: f64,
    pub argmin_u: u32,
    pub max_imag_b: f64,
    pub max_imag_u: f64,
    pub pass: bool,
}

/// u_n > 0 and b_n, u_n real for 1 ≤ n ≤ N.
pub fn favard_scan(p: &Params, nmax: u32, ctx: &PrecisionContext) -> Result<FavardReport> {
    let tab = recurrence_table(p, nmax, ctx)?;
    let tol = ctx.tol_f64(10);
    let mut min_u = f64::INFINITY;
    let mut arg = 0;
    let (mut ib, mut iu) = (0.0f64, 0.0f64);
    for (n, r) in tab.iter().enumerate() {
        let rel = |z: &crate::numerics::CNum| {
            let a = z.abs();
            if a.is_zero() {
                0.0
            } else {
                (Float::with_val(a.prec(), z.im().abs_ref()) / a).to_f64()
            }
        };
        ib = ib.max(rel(&r.b));
        if n == 0 {
            continue;
        }
        iu = iu.max(rel(&r.u));
        let u = r.u.re().to_f64();
        if u < min_u {
            min_u = u;
            arg = n as u32;
        }
    }
    let pass = min_u > 0.0 && ib <= tol && iu <= tol;
    Ok(FavardReport { family: p.family(), n: nmax, min_u, argmin_u: arg, max_imag_b: ib, max_imag_u: iu, pass })
}

/// Moments ∫ω x^k / ∫ω implied by the recurrence (k ≤ kmax).
pub fn recurrence_moments(p: &Params, kmax: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let prec = ctx.prec();
    let tab = recurrence_table(p, kmax + 1, ctx)?;
    let size = kmax as usize + 2;
    // coordinates of x^k in the basis P_0, P_1, …
    let mut v = vec![ctx.zero(); size];
    v[0] = ctx.one();
    let mut out = vec![Float::with_val(prec, 1)];
    for _ in 0..kmax {
        let mut nv = vec![ctx.zero(); size];
        for n in 0..size - 1 {
            if v[n].is_zero() {
                continue;
            }
            nv[n + 1] += &v[n];
            nv[n] += &(&tab[n].b * &v[n]);
            if n > 0 {
                nv[n - 1] += &(&tab[n].u * &v[n]);
            }
        }
        v = nv;
        out.push(v[0].re().clone());
    }
    Ok(out)
}

/// max over k ≤ kmax of the relative gap between quadrature and recurrence moments.
pub fn moment_check(p: &Params, kmax: u32, ctx: &PrecisionContext) -> Result<f64> {
    let prec = ctx.prec();
    let w = weight_spec(p, ctx)?;
    let f = |x: &Float| {
        let mut v = vec![Float::with_val(prec, 1)];
        for k in 1..=kmax as usize {
            let next = Float::with_val(prec, &v[k - 1] * x);
            v.push(next);
        }
        v
    };
    let sc = |vals: &[Float]| vec![Float::with_val(prec, vals[0].abs_ref()); vals.len()];
    let q = integrate_many(&w, &f, kmax as usize + 1, kmax, &default_tol(ctx), &sc, ctx)?;
    let rec = recurrence_moments(p, kmax, ctx)?;
    let mut worst = 0.0f64;
    for k in 0..=kmax as usize {
        let qm = Float::with_val(prec, &q.value[k] / &q.value[0]);
        let d = (qm - &rec[k]).abs();
        let s = Float::with_val(prec, rec[k].abs_ref()).max(&Float::with_val(prec, 1));
        worst = worst.max((d / s).to_f64());
    }
    Ok(worst)
}

/// Decay class of a component's infinite ends, for reporting.
pub fn decay_of(c: &Component) -> Option<Decay> {
    c.decay
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_mass() {
        let c = PrecisionContext::default();
        let p = Params::new(FamilyId::Hermite, vec![]).unwrap();
        let m = mass(&p, &c).unwrap();
        let sp = c.pi().sqrt();
        assert!((Float::with_val(c.prec(), &m.value[0] - &sp) / sp).abs() < c.tol(10));
    }

    #[test]
    fn legendre_mass() {
        let c = PrecisionContext::default();
        let p = Params::real(FamilyId::Gegenbauer, &[0.5], &c).unwrap();
        let m = mass(&p, &c).unwrap();
        assert!((Float::with_val(c.prec(), &m.value[0] - 2u32)).abs() < c.tol(10));
    }

    #[test]
    fn hermite_favard() {
        let c = PrecisionContext::default();
        let p = Params::new(FamilyId::Hermite, vec![]).unwrap();
        let r = favard_scan(&p, 200, &c).unwrap();
        assert!(r.pass);
        assert_eq!(r.argmin_u, 1);
        assert!((r.min_u - 0.5).abs() < 1e-15);
    }
}
