use std::fmt;
use std::sync::Arc;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::{FamilyId, Params};
use crate::error::{Error, Result};
use crate::numerics::{factorial, gamma, ln_gamma, pochhammer, CNum, PrecisionContext};

use FamilyId::*;

/// Component endpoint.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Float),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Float> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// Tail behaviour at an infinite endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decay {
    Gaussian,
    GammaModulus,
    Algebraic,
}

/// A quadrature point together with its exact distances to the finite
/// endpoints of its component.
#[derive(Clone, Debug)]
pub struct Node {
    pub x: Float,
    pub lo: Option<Float>,
    pub hi: Option<Float>,
    /// x − lo
    pub dl: Option<Float>,
    /// hi − x
    pub dr: Option<Float>,
}

impl Node {
    pub fn interior(x: Float) -> Node {
        Node { x, lo: None, hi: None, dl: None, dr: None }
    }

    /// x − p, exact when p is one of the component endpoints.
    pub fn minus(&self, p: &Float) -> Float {
        if let (Some(lo), Some(dl)) = (&self.lo, &self.dl) {
            if lo == p {
                return dl.clone();
            }
        }
        if let (Some(hi), Some(dr)) = (&self.hi, &self.dr) {
            if hi == p {
                return -dr.clone();
            }
        }
        Float::with_val(self.x.prec(), &self.x - p)
    }
}

pub type Density = Arc<dyn Fn(&Node) -> Float + Send + Sync>;

/// One interval of the support.
#[derive(Clone)]
pub struct Component {
    pub lo: Bound,
    pub hi: Bound,
    /// Algebraic exponents at the finite endpoints.
    pub exp_lo: Option<f64>,
    pub exp_hi: Option<f64>,
    /// Decay class at infinite endpoints.
    pub decay: Option<Decay>,
    pub density: Density,
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Component")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("exp_lo", &self.exp_lo)
            .field("exp_hi", &self.exp_hi)
            .field("decay", &self.decay)
            .finish()
    }
}

/// Weight of an orthogonality relation: `prefactor · Σ ∫ density P_n P_m`
/// equals `norm(n) δ_nm`.
#[derive(Clone, Debug)]
pub struct WeightSpec {
    pub family: FamilyId,
    pub components: Vec<Component>,
    pub prefactor: Float,
    /// Density carries the sign factor θ(x) = sgn(x).
    pub theta: bool,
    pub description: &'static str,
}

impl WeightSpec {
    /// Density at a point of component `k`.
    pub fn density(&self, k: usize, node: &Node) -> Float {
        (self.components[k].density)(node)
    }

    /// Density at a bare real point, using whichever component contains it.
    pub fn density_at(&self, x: &Float) -> Float {
        for c in &self.components {
            let above = match &c.lo {
                Bound::Finite(a) => x >= a,
                Bound::NegInf => true,
                Bound::PosInf => false,
            };
            let below = match &c.hi {
                Bound::Finite(b) => x <= b,
                Bound::PosInf => true,
                Bound::NegInf => false,
            };
            if above && below {
                let mut n = Node::interior(x.clone());
                if let Bound::Finite(a) = &c.lo {
                    n.dl = Some(Float::with_val(x.prec(), x - a));
                    n.lo = Some(a.clone());
                }
                if let Bound::Finite(b) = &c.hi {
                    n.dr = Some(Float::with_val(x.prec(), b - x));
                    n.hi = Some(b.clone());
                }
                return (c.density)(&n);
            }
        }
        Float::with_val(x.prec(), 0)
    }
}

fn re(p: &Params, i: usize) -> Float {
    p[i].re().clone()
}

fn sgn(x: &Float) -> Float {
    let v = if x.is_sign_negative() { -1 } else { 1 };
    Float::with_val(x.prec(), v)
}

/// b^e with b clamped at 0.
fn pw(b: Float, e: &Float) -> Float {
    if b <= 0 {
        if *e == 0 {
            return Float::with_val(b.prec(), 1);
        }
        return Float::with_val(b.prec(), 0);
    }
    b.pow(e)
}

fn inadmissible(f: FamilyId, clause: &str) -> Error {
    Error::Inadmissible { family: f.id().into(), clause: clause.into() }
}

/// Checks the "If …" clause of the orthogonality relation.
pub fn admissibility(p: &Params) -> Result<()> {
    let f = p.family();
    let clause = f.admissible();
    let pos = |v: &CNum| v.is_real() && *v.re() > 0;
    let gt = |v: &CNum, t: f64| v.is_real() && *v.re() > t;
    let ok = match f {
        ContinuousBannaiIto => p.values().iter().all(pos),
        ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => p.values().iter().all(pos),
        BigMinus1Jacobi => pos(&p[0]) && pos(&p[1]) && p[2].is_real() && *p[2].re() >= 0 && *p[2].re() < 1,
        Chihara => gt(&p[0], -1.0) && pos(&p[1]) && p[2].is_real(),
        GeneralizedGegenbauer => gt(&p[0], -1.0) && pos(&p[1]),
        LittleMinus1Jacobi => pos(&p[0]) && pos(&p[1]),
        Minus1MeixnerPollaczek => gt(&p[0], -0.5) && p[1].is_real(),
        SpecialLittleMinus1Jacobi => pos(&p[0]),
        Gegenbauer | GeneralizedHermite => gt(&p[0], -0.5),
        Hermite => true,
        SymmetricBannaiIto => conj_pairs(&p.values()[..2]),
        GeneralizedSymmetricBannaiIto => {
            let s = &p[0] + &p[1] + &p[2];
            conj_pairs(p.values()) && s.is_real() && *s.re() > 1
        }
        _ => return Err(Error::Unsupported { family: f.id().into(), what: "orthogonality measure".into() }),
    };
    if ok {
        Ok(())
    } else {
        Err(inadmissible(f, clause))
    }
}

/// Positive real parts and non-real values closed under conjugation.
fn conj_pairs(v: &[CNum]) -> bool {
    if v.iter().any(|z| *z.re() <= 0) {
        return false;
    }
    v.iter().all(|z| {
        z.is_real() || v.iter().any(|w| {
            let d = Float::with_val(z.prec(), (w - &z.conj()).abs());
            d.is_zero() || d < Float::with_val(z.prec(), 1e-30)
        })
    })
}

fn fin(x: &Float) -> Bound {
    Bound::Finite(x.clone())
}

fn comp(lo: Bound, hi: Bound, e: (Option<f64>, Option<f64>), decay: Option<Decay>, d: Density) -> Component {
    Component { lo, hi, exp_lo: e.0, exp_hi: e.1, decay, density: d }
}

/// exp(2 Re Σ ± ln Γ(z_k)) at the given arguments.
fn gamma_modulus(plus: &[CNum], minus: &[CNum], ctx: &PrecisionContext) -> Float {
    let mut s = Float::with_val(ctx.prec(), 0);
    for z in plus {
        match ln_gamma(z, ctx) {
            Ok(l) => s += l.re(),
            Err(_) => return Float::with_val(ctx.prec(), 0),
        }
    }
    for z in minus {
        match ln_gamma(z, ctx) {
            Ok(l) => s -= l.re(),
            Err(_) => return Float::with_val(ctx.prec(), f64::INFINITY),
        }
    }
    (s * 2u32).exp()
}

/// Support, density and prefactor of the printed orthogonality relation.
pub fn weight_spec(p: &Params, ctx: &PrecisionContext) -> Result<WeightSpec> {
    admissibility(p)?;
    let prec = ctx.prec();
    let f = p.family();
    let zero = Float::with_val(prec, 0);
    let one = Float::with_val(prec, 1);
    let mone = Float::with_val(prec, -1);
    let half = Float::with_val(prec, 0.5);
    let unit = Float::with_val(prec, 1);
    let four_pi_inv = Float::with_val(prec, Constant::Pi).recip() / 4u32;
    let line = |d: Density, decay: Decay| vec![comp(Bound::NegInf, Bound::PosInf, (None, None), Some(decay), d)];
    let (components, prefactor, theta, description): (Vec<Component>, Float, bool, &'static str) = match f {
        Hermite => {
            let d: Density = Arc::new(|n: &Node| {
                let x2 = Float::with_val(n.x.prec(), n.x.square_ref());
                (-x2).exp()
            });
            (line(d, Decay::Gaussian), unit, false, "exp(-x^2)")
        }
        GeneralizedHermite => {
            let e = Float::with_val(prec, re(p, 0) * 2u32);
            let ef = e.to_f64();
            let d: Density = Arc::new(move |n: &Node| {
                let ax = n.minus(&Float::with_val(n.x.prec(), 0)).abs();
                let x2 = Float::with_val(n.x.prec(), n.x.square_ref());
                pw(ax, &e) * (-x2).exp()
            });
            (
                vec![
                    comp(Bound::NegInf, fin(&zero), (None, Some(ef)), Some(Decay::Gaussian), d.clone()),
                    comp(fin(&zero), Bound::PosInf, (Some(ef), None), Some(Decay::Gaussian), d),
                ],
                unit,
                false,
                "|x|^(2 alpha) exp(-x^2)",
            )
        }
        Gegenbauer => {
            let e = Float::with_val(prec, re(p, 0) - 0.5);
            let ef = e.to_f64();
            let (o, m) = (one.clone(), mone.clone());
            let d: Density = Arc::new(move |n: &Node| {
                let b = n.minus(&m) * -n.minus(&o);
                pw(b, &e)
            });
            (vec![comp(fin(&mone), fin(&one), (Some(ef), Some(ef)), None, d)], unit, false, "(1-x^2)^(alpha-1/2)")
        }
        SpecialLittleMinus1Jacobi => {
            let e = Float::with_val(prec, (re(p, 0) - 1u32) / 2u32);
            let ef = e.to_f64();
            let (o, m) = (one.clone(), mone.clone());
            let d: Density = Arc::new(move |n: &Node| {
                let xp = n.minus(&m);
                let b = Float::with_val(xp.prec(), &xp * &-n.minus(&o));
                pw(b, &e) * xp
            });
            (
                vec![comp(fin(&mone), fin(&one), (Some(ef + 1.0), Some(ef)), None, d)],
                unit,
                false,
                "(1-x^2)^((alpha-1)/2) (1+x)",
            )
        }
        GeneralizedGegenbauer | LittleMinus1Jacobi => {
            let (e0, e1) = if f == GeneralizedGegenbauer {
                (Float::with_val(prec, re(p, 0) * 2u32 + 1u32), re(p, 1))
            } else {
                (re(p, 0), Float::with_val(prec, (re(p, 1) - 1u32) / 2u32))
            };
            let jac = f == LittleMinus1Jacobi;
            let (o, m, z) = (one.clone(), mone.clone(), zero.clone());
            let (f0, f1) = (e0.to_f64(), e1.to_f64());
            let d: Density = Arc::new(move |n: &Node| {
                let ax = n.minus(&z).abs();
                let xp = n.minus(&m);
                let b = Float::with_val(xp.prec(), &xp * &-n.minus(&o));
                let v = pw(ax, &e0) * pw(b, &e1);
                if jac {
                    v * xp
                } else {
                    v
                }
            });
            let extra = if jac { 1.0 } else { 0.0 };
            (
                vec![
                    comp(fin(&mone), fin(&zero), (Some(f1 + extra), Some(f0)), None, d.clone()),
                    comp(fin(&zero), fin(&one), (Some(f0), Some(f1)), None, d),
                ],
                unit,
                false,
                if jac { "|x|^alpha (1-x^2)^((beta-1)/2) (1+x)" } else { "|x|^(2 alpha+1) (1-x^2)^beta" },
            )
        }
        Chihara => {
            let (al, be, ga) = (re(p, 0), re(p, 1), re(p, 2));
            let g = Float::with_val(prec, ga.abs_ref());
            let s = (Float::with_val(prec, ga.square_ref()) + 1u32).sqrt();
            let (ng, ns) = (Float::with_val(prec, -&g), Float::with_val(prec, -&s));
            let (fa, fb) = (al.to_f64(), be.to_f64());
            let mga = Float::with_val(prec, -&ga);
            let (g2, ng2, s2, ns2) = (g.clone(), ng.clone(), s.clone(), ns.clone());
            let d: Density = Arc::new(move |n: &Node| {
                let xg = n.minus(&mga);
                let inner = n.minus(&g2) * n.minus(&ng2);
                let outer = -(n.minus(&s2) * n.minus(&ns2));
                sgn(&n.x) * xg * pw(inner, &al) * pw(outer, &be)
            });
            let right_lo = if ga > 0 { fa } else { fa + 1.0 };
            let left_hi = if ga < 0 { fa } else { fa + 1.0 };
            (
                vec![
                    comp(fin(&ns), fin(&ng), (Some(fb), Some(left_hi)), None, d.clone()),
                    comp(fin(&g), fin(&s), (Some(right_lo), Some(fb)), None, d),
                ],
                unit,
                true,
                "sgn(x)(x+gamma)(x^2-gamma^2)^alpha (1+gamma^2-x^2)^beta",
            )
        }
        Minus1MeixnerPollaczek => {
            let (al, ga) = (re(p, 0), re(p, 1));
            let e = Float::with_val(prec, &al - &half);
            let g = Float::with_val(prec, ga.abs_ref());
            let ng = Float::with_val(prec, -&g);
            let mga = Float::with_val(prec, -&ga);
            let ef = e.to_f64();
            let (g2, ng2) = (g.clone(), ng.clone());
            let d: Density = Arc::new(move |n: &Node| {
                let xg = n.minus(&mga);
                let inner = n.minus(&g2) * n.minus(&ng2);
                let x2 = Float::with_val(n.x.prec(), n.x.square_ref());
                sgn(&n.x) * xg * pw(inner, &e) * (-x2).exp()
            });
            (
                vec![
                    comp(Bound::NegInf, fin(&ng), (None, Some(ef)), Some(Decay::Gaussian), d.clone()),
                    comp(fin(&g), Bound::PosInf, (Some(ef), None), Some(Decay::Gaussian), d),
                ],
                unit,
                true,
                "sgn(x)(x+gamma)(x^2-gamma^2)^(alpha-1/2) exp(-x^2)",
            )
        }
        BigMinus1Jacobi => {
            let (al, be, c) = (re(p, 0), re(p, 1), re(p, 2));
            let ea = Float::with_val(prec, &al - 1u32) / 2u32;
            let eb = Float::with_val(prec, &be + 1u32) / 2u32;
            let nc = Float::with_val(prec, -&c);
            let (fa, fb) = (ea.to_f64(), eb.to_f64());
            let (o, m, c2, nc2) = (one.clone(), mone.clone(), c.clone(), nc.clone());
            let d: Density = Arc::new(move |n: &Node| {
                let xp1 = n.minus(&m);
                let xpc = n.minus(&nc2);
                let a = Float::with_val(xp1.prec(), &xp1 * &-n.minus(&o));
                let b = n.minus(&c2) * &xpc;
                sgn(&n.x) * (xp1 / xpc) * pw(a, &ea) * pw(b, &eb)
            });
            (
                vec![
                    comp(fin(&mone), fin(&nc), (Some(fa + 1.0), Some(fb - 1.0)), None, d.clone()),
                    comp(fin(&c), fin(&one), (Some(fb), Some(fa)), None, d),
                ],
                unit,
                true,
                "sgn(x)(1+x)/(c+x)(1-x^2)^((alpha-1)/2)(x^2-c^2)^((beta+1)/2)",
            )
        }
        ContinuousBannaiIto | ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => {
            let [fa, fb, fc, fd] = cbi_frak(p, ctx);
            let c = ctx.clone();
            let h = ctx.ratio(1, 2);
            let d: Density = Arc::new(move |n: &Node| {
                let ix2 = c.cnum(&Float::with_val(c.prec(), 0), &Float::with_val(c.prec(), &n.x / 2u32));
                let ix = &ix2 * 2;
                gamma_modulus(
                    &[&fa + &ix2 + 1, &fb + &ix2 + 1, &fc + &ix2 + &h, &fd + &ix2 + &h],
                    &[&h + &ix],
                    &c,
                )
            });
            (line(d, Decay::GammaModulus), unit, false, "|G(a+ix/2+1)G(b+ix/2+1)G(c+ix/2+1/2)G(d+ix/2+1/2)/G(1/2+ix)|^2")
        }
        SymmetricBannaiIto | GeneralizedSymmetricBannaiIto => {
            let ps: Vec<CNum> = p.values().to_vec();
            let c = ctx.clone();
            let d: Density = Arc::new(move |n: &Node| {
                let ix = c.cnum(&Float::with_val(c.prec(), 0), &n.x);
                // Γ(ix)/Γ(2ix) = 2 Γ(1+ix)/Γ(1+2ix)
                let mut plus = vec![&ix + 1];
                plus.extend(ps.iter().map(|a| a + &ix));
                gamma_modulus(&plus, &[&ix * 2 + 1], &c) * 4u32
            });
            (
                line(d, Decay::GammaModulus),
                four_pi_inv,
                false,
                if f == SymmetricBannaiIto { "|G(ix)G(a+ix)G(b+ix)/G(2ix)|^2" } else { "|G(ix)G(a+ix)G(b+ix)G(c+ix)/G(2ix)|^2" },
            )
        }
        _ => unreachable!("admissibility rejects families without a measure"),
    };
    Ok(WeightSpec { family: f, components, prefactor, theta, description })
}

/// 𝔞, 𝔟, 𝔠, 𝔡 of the continuous Bannai–Ito parametrization.
pub(crate) fn cbi_frak(p: &Params, ctx: &PrecisionContext) -> [CNum; 4] {
    let i = ctx.i();
    let (al, be, ga) = (&p[0], &p[1], &p[2]);
    let de = match p.family() {
        ContinuousMinus1Hahn1 => p[1].clone(),
        ContinuousMinus1Hahn2 => -p[1].clone(),
        _ => p[3].clone(),
    };
    [al + &(&i * be), ga + &(&i * &de), ga - &(&i * &de), al - &(&i * be)]
}

fn g(z: CNum, ctx: &PrecisionContext) -> Result<CNum> {
    gamma(&z, ctx)
}

fn realify(z: CNum) -> Float {
    z.re().clone()
}

/// Right-hand side of the printed orthogonality relation for monic P_n.
pub fn norm(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<Float> {
    admissibility(p)?;
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let even = n.is_multiple_of(2);
    let h = ctx.ratio(1, 2);
    let fm = factorial(m, ctx);
    let v = match p.family() {
        Hermite | GeneralizedHermite | Minus1MeixnerPollaczek => {
            let al = if p.family() == Hermite { ctx.zero() } else { p[0].clone() };
            let base = &mm + &al + &h + if even { 0 } else { 1 };
            let mut v = &fm * &g(base, ctx)?;
            if p.family() == Minus1MeixnerPollaczek {
                v = &v * &(-(&p[1] * &p[1])).exp();
            }
            v
        }
        Gegenbauer => {
            let a = &p[0];
            if even {
                g(&mm + &h, ctx)? * g(&mm + a + &h, ctx)? / g(&mm + a, ctx)? * &fm
                    / (&(&(&mm * 2) + a) * &pochhammer(&(&mm + a), m).powu(2))
            } else {
                g(&mm + &ctx.ratio(3, 2), ctx)? * g(&mm + a + &h, ctx)? / g(&mm + a + 1, ctx)? * &fm
                    / (&(&(&mm * 2) + a + 1) * &pochhammer(&(&mm + a + 1), m).powu(2))
            }
        }
        GeneralizedGegenbauer | Chihara => {
            let (al, be) = (&p[0], &p[1]);
            let e = if even { 0 } else { 1 };
            g(&mm + al + 1 + e, ctx)? * g(&mm + be + 1, ctx)? / g(&mm + al + be + 1 + e, ctx)? * &fm
                / (&(&(&mm * 2) + al + be + 1 + e) * &pochhammer(&(&mm + al + be + 1 + e), m).powu(2))
        }
        LittleMinus1Jacobi => l1j_pre(&p[0], &p[1], ctx)? * l1j_kappa(&p[0], &p[1], n, ctx),
        BigMinus1Jacobi => {
            let (al, be, c) = (&p[0], &p[1], &p[2]);
            let omc2 = ctx.one() - &(c * c);
            let pre = &(ctx.one() - c) * &omc2.pow(&((al + be) / 2)) * &l1j_pre(al, be, ctx)?;
            // the degree n of J_n, not the half-index, sits in the exponent of 1 − c²
            let mut k = l1j_kappa(al, be, n, ctx) * omc2.powu(n - n % 2);
            if !even {
                k = &k * &(c + 1).powu(2);
            }
            pre * k
        }
        SpecialLittleMinus1Jacobi => {
            let al = &p[0];
            let nn = ctx.int(n as i64);
            let sp = ctx.from_real(&ctx.pi().sqrt());
            sp * g((al + 1) / 2, ctx)? / ctx.int(4).powu(n) * g(&nn + 1, ctx)? * g(&nn + 1 + al, ctx)?
                / g(&nn + 1 + &(al / 2), ctx)?.powu(2)
                * g(al / 2 + 1, ctx)?
                / g(al + 1, ctx)?
        }
        ContinuousBannaiIto | ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => {
            let [fa, fb, fc, fd] = cbi_frak(p, ctx);
            let th = ctx.ratio(3, 2);
            let h0 = g(&fa + &fb + &th, ctx)? * g(&fa + &fc + 1, ctx)? * g(&fb + &fc + 1, ctx)? * g(&fa + &fd + 1, ctx)?
                * g(&fb + &fd + 1, ctx)?
                * g(&fc + &fd + &th, ctx)?
                / g(&fa + &fb + &fc + &fd + 2, ctx)?;
            let four_pi = ctx.from_real(&(ctx.pi() * 4u32));
            four_pi * h0 * cbi_kappa(p, n, ctx)
        }
        SymmetricBannaiIto => {
            let (a, b) = (&p[0], &p[1]);
            let k = g(&mm + a + b, ctx)? * g(&mm + a, ctx)? * g(&mm + b, ctx)? * &fm;
            if even {
                k
            } else {
                k * (&mm + a) * (&mm + b)
            }
        }
        GeneralizedSymmetricBannaiIto => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let s = a + b + c;
            let k = gsbi_kappa(a, b, c, m, ctx)?;
            if even {
                k
            } else {
                let t = &(&mm * 2) + &s;
                k * (&mm + &s - 1) * (&mm + c) * (&mm + a) * (&mm + b) / (&(&t - 1) * &t)
            }
        }
        f => return Err(Error::Unsupported { family: f.id().into(), what: "norm".into() }),
    };
    Ok(realify(v))
}

/// The norm as printed where it differs from [`norm`]: SBI and GSBI κ
/// evaluated at the full index n, big −1 Jacobi with (1 − c²) to the half-index.
pub fn norm_printed(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<Float> {
    admissibility(p)?;
    let nn = ctx.int(n as i64);
    let v = match p.family() {
        SymmetricBannaiIto => {
            let (a, b) = (&p[0], &p[1]);
            g(&nn + a + b, ctx)? * g(&nn + a, ctx)? * g(&nn + b, ctx)? * factorial(n, ctx)
        }
        GeneralizedSymmetricBannaiIto => gsbi_kappa(&p[0], &p[1], &p[2], n, ctx)?,
        BigMinus1Jacobi => {
            // (1 − c²) raised to the half-index
            let c = &p[2];
            let omc2 = ctx.one() - &(c * c);
            let m = n / 2;
            let fix = omc2.powu(m) / omc2.powu(n - n % 2);
            return Ok(realify(ctx.from_real(&norm(p, n, ctx)?) * fix));
        }
        _ => return norm(p, n, ctx),
    };
    Ok(realify(v))
}

fn gsbi_kappa(a: &CNum, b: &CNum, c: &CNum, m: u32, ctx: &PrecisionContext) -> Result<CNum> {
    let mm = ctx.int(m as i64);
    let s = a + b + c;
    Ok(g(&mm + a + b, ctx)? * g(&mm + a + c, ctx)? * g(&mm + b + c, ctx)? * g(&mm + a, ctx)? * g(&mm + b, ctx)?
        * g(&mm + c, ctx)?
        * factorial(m, ctx)
        / (g(&(&mm * 2) + &s, ctx)? * pochhammer(&(&mm + &s - 1), m)))
}

fn l1j_pre(al: &CNum, be: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    Ok(g((al + 1) / 2, ctx)? * g((be + 1) / 2, ctx)? / g((al + be) / 2 + 1, ctx)?)
}

fn l1j_kappa(al: &CNum, be: &CNum, n: u32, ctx: &PrecisionContext) -> CNum {
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let s = (al + be) / 2;
    let a2 = (al + 1) / 2;
    let b2 = (be + 1) / 2;
    let fm = factorial(m, ctx);
    if n.is_multiple_of(2) {
        fm * pochhammer(&a2, m) * pochhammer(&b2, m) / (pochhammer(&(&s + 1), 2 * m) * pochhammer(&(&mm + &s + 1), m))
    } else {
        fm * pochhammer(&a2, m + 1) * pochhammer(&b2, m + 1)
            / (pochhammer(&(&s + 1), 2 * m + 1) * pochhammer(&(&mm + &s + 1), m + 1))
    }
}

/// κ_n of the continuous Bannai–Ito relation (and its two δ = ±β faces).
fn cbi_kappa(p: &Params, n: u32, ctx: &PrecisionContext) -> CNum {
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let even = n.is_multiple_of(2);
    let i = ctx.i();
    let h = ctx.ratio(1, 2);
    let (al, be, ga) = (&p[0], &p[1], &p[2]);
    let fm = factorial(m, ctx);
    let four_n = ctx.int(4).powu(n);
    let gsum = &(al + ga) * 2 + 2;
    let prod = |kmax: u32, shift: &CNum, im: &CNum| -> CNum {
        let mut acc = ctx.one();
        for k in 1..=kmax {
            let z = ctx.int(k as i64) + al + ga + shift + &(&i * im);
            acc = &acc * &ctx.from_real(&z.norm_sqr());
        }
        acc
    };
    let base = |j: u32| -> CNum {
        let den = if even {
            pochhammer(&gsum, 2 * m) * pochhammer(&(&mm + &gsum), m)
        } else {
            pochhammer(&gsum, 2 * m + 1) * pochhammer(&(&mm + &gsum), m + 1)
        };
        &four_n * &fm * pochhammer(&(al * 2 + 1), j) * pochhammer(&(ga * 2 + 1), j) / den
    };
    let zero = ctx.zero();
    match p.family() {
        ContinuousBannaiIto => {
            let de = &p[3];
            if even {
                base(m) * prod(m, &zero, &(be - de)) * prod(m, &h, &(be + de))
            } else {
                base(m + 1) * prod(m + 1, &zero, &(be - de)) * prod(m, &h, &(be + de))
            }
        }
        ContinuousMinus1Hahn1 => {
            let b2 = be * 2;
            let q = al + ga + 1;
            if even {
                base(m) * pochhammer(&q, m).powu(2) * prod(m, &h, &b2)
            } else {
                base(m + 1) * pochhammer(&q, m + 1).powu(2) * prod(m, &h, &b2)
            }
        }
        _ => {
            let b2 = be * 2;
            let q = al + ga + &ctx.ratio(3, 2);
            if even {
                base(m) * pochhammer(&q, m).powu(2) * prod(m, &zero, &b2)
            } else {
                base(m + 1) * pochhammer(&q, m).powu(2) * prod(m + 1, &zero, &b2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_norms() {
        let c = PrecisionContext::default();
        let h = Params::new(Hermite, vec![]).unwrap();
        let v = norm(&h, 1, &c).unwrap();
        let want = c.pi().sqrt() / 2u32;
        assert!(Float::with_val(c.prec(), &v - &want).abs() < c.tol(2));
        let geg = Params::real(Gegenbauer, &[0.5], &c).unwrap();
        let v = norm(&geg, 0, &c).unwrap();
        assert!(Float::with_val(c.prec(), &v - 2u32).abs() < c.tol(2));
        let gs = Params::real(GeneralizedSymmetricBannaiIto, &[1.0, 1.0, 1.0], &c).unwrap();
        let v = norm(&gs, 0, &c).unwrap();
        assert!(Float::with_val(c.prec(), &v - 0.5f64).abs() < c.tol(2));
    }

    #[test]
    fn chihara_support() {
        let c = PrecisionContext::default();
        let p = Params::real(Chihara, &[0.5, 1.5, 0.25], &c).unwrap();
        let w = weight_spec(&p, &c).unwrap();
        assert_eq!(w.components.len(), 2);
        let hi = w.components[1].hi.finite().unwrap().clone();
        let want = Float::with_val(c.prec(), 17u32).sqrt() / 4u32;
        assert!(Float::with_val(c.prec(), &hi - &want).abs() < c.tol(2));
        assert!(w.theta);
    }

    #[test]
    fn densities_nonnegative() {
        let c = PrecisionContext::new(20).unwrap();
        let p = Params::real(BigMinus1Jacobi, &[1.0, 2.0, 0.25], &c).unwrap();
        let w = weight_spec(&p, &c).unwrap();
        for x in [-0.9, -0.5, -0.3, 0.3, 0.6, 0.99] {
            assert!(w.density_at(&c.real(x)) >= 0);
        }
    }

    #[test]
    fn inadmissible_rejected() {
        let c = PrecisionContext::default();
        let p = Params::real(BigMinus1Jacobi, &[1.0, 2.0, 1.5], &c).unwrap();
        assert!(matches!(weight_spec(&p, &c), Err(Error::Inadmissible { .. })));
    }
}
