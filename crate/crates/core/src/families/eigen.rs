//! Dunkl eigen systems L P_n = λ_n P_n.

use serde::Serialize;

use super::{FamilyId, Params};
use crate::error::{Error, Result};
use crate::numerics::{CNum, PrecisionContext};
use crate::operators::{DunklOperator, Symbol};
use crate::polynomials::{Polynomial, RationalFunction};

use FamilyId::*;

/// Which printed form of the operator to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorVariant {
    Corrected,
    /// Coefficients exactly as printed: β−x and δ−x in the Bannai–Ito
    /// coefficient, G(R−I) for the −1 Jacobi type.
    Printed,
}

#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub family: FamilyId,
    pub params: Params,
    pub operator: DunklOperator,
    /// The free parameter (ε or σ) when the family has one.
    pub free: Option<CNum>,
    pub variant: OperatorVariant,
}

/// Default value of the free parameter.
pub fn default_free(ctx: &PrecisionContext) -> CNum {
    ctx.ratio(1, 2)
}

pub fn has_free_parameter(f: FamilyId) -> bool {
    matches!(
        f,
        Hermite
            | GeneralizedHermite
            | Gegenbauer
            | GeneralizedGegenbauer
            | Chihara
            | Minus1MeixnerPollaczek
            | GeneralizedSymmetricBannaiIto
            | SymmetricBannaiIto
    )
}

impl EigenSystem {
    pub fn eigenvalue(&self, n: u32, ctx: &PrecisionContext) -> CNum {
        let p = &self.params;
        let m = ctx.int((n / 2) as i64);
        let par = (n % 2) as i64;
        let free = self.free.clone().unwrap_or_else(|| ctx.zero());
        let pf = if par == 1 { free } else { ctx.zero() };
        let nn = ctx.int(n as i64);
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        match self.family {
            Hermite | GeneralizedHermite | Minus1MeixnerPollaczek | SymmetricBannaiIto => m + &pf,
            Gegenbauer => m.powu(2) + &((&p[0] + par) * &m) + &pf,
            GeneralizedGegenbauer | Chihara => m.powu(2) + &((&p[0] + &p[1] + (1 + par)) * &m) + &pf,
            GeneralizedSymmetricBannaiIto => {
                let s = &p[0] + &p[1] + &p[2];
                m.powu(2) + &((s + (par - 1)) * &m) + &pf
            }
            LittleMinus1Jacobi | BigMinus1Jacobi if par == 0 => nn * -2,
            LittleMinus1Jacobi | BigMinus1Jacobi => (nn + &p[0] + &p[1] + 1) * 2,
            SpecialLittleMinus1Jacobi if par == 0 => nn * -2,
            SpecialLittleMinus1Jacobi => (nn + &p[0] + 1) * 2,
            ContinuousBannaiIto | ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => {
                let g = &p[0] * 2 + &(&p[2] * 2) + &ctx.ratio(3, 2);
                (nn + &g) * sign
            }
            _ => ctx.zero(),
        }
    }
}

pub fn eigen_system(p: &Params, free: Option<&CNum>, ctx: &PrecisionContext) -> Result<EigenSystem> {
    eigen_system_variant(p, free, OperatorVariant::Corrected, ctx)
}

fn poly(c: &[CNum], ctx: &PrecisionContext) -> Polynomial {
    Polynomial::new(c.to_vec(), ctx)
}

fn xpow(k: usize, ctx: &PrecisionContext) -> Polynomial {
    let mut c = vec![ctx.zero(); k + 1];
    c[k] = ctx.one();
    Polynomial::new(c, ctx)
}

/// num / (scale · x^k)
fn over_x(num: Polynomial, scale: i64, k: usize, ctx: &PrecisionContext) -> Result<RationalFunction> {
    RationalFunction::new(num, xpow(k, ctx).scale(&ctx.int(scale)))
}

fn cst(c: CNum, ctx: &PrecisionContext) -> RationalFunction {
    RationalFunction::constant(c, ctx)
}

/// S∂² + t·T∂R + U∂ + V(I − R).
fn suv(
    s: RationalFunction,
    t: Option<(RationalFunction, i64)>,
    u: RationalFunction,
    v: RationalFunction,
    ctx: &PrecisionContext,
) -> Result<DunklOperator> {
    let mut op = DunklOperator::new(ctx.i()).term(s.reduce(ctx)?, Symbol::D2);
    if let Some((t, sign)) = t {
        op = op.term(t.scale(&ctx.int(sign)).reduce(ctx)?, Symbol::DR);
    }
    let v = v.reduce(ctx)?;
    Ok(op.term(u.reduce(ctx)?, Symbol::D).term(v.neg(), Symbol::R).term(v, Symbol::I))
}

pub fn eigen_system_variant(
    p: &Params,
    free: Option<&CNum>,
    variant: OperatorVariant,
    ctx: &PrecisionContext,
) -> Result<EigenSystem> {
    let f = p.family();
    let eps = if has_free_parameter(f) { Some(free.cloned().unwrap_or_else(|| default_free(ctx))) } else { None };
    let e = eps.clone().unwrap_or_else(|| ctx.zero());
    let z = ctx.zero();
    let one = ctx.one();
    let half = ctx.ratio(1, 2);
    let quarter = ctx.ratio(1, 4);
    let x2m = |c: &CNum| poly(&[-c.clone(), z.clone(), one.clone()], ctx); // x² − c
    let operator = match f {
        Hermite => suv(
            cst(-quarter.clone(), ctx),
            None,
            RationalFunction::from_poly(poly(&[z.clone(), half.clone()], ctx), ctx),
            cst(&e / 2 - &quarter, ctx),
            ctx,
        )?,
        GeneralizedHermite => {
            let a = &p[0];
            suv(
                cst(-quarter.clone(), ctx),
                None,
                over_x(x2m(a), 2, 1, ctx)?,
                over_x(poly(&[a.clone(), z.clone(), &e * 2 - 1], ctx), 4, 2, ctx)?,
                ctx,
            )?
        }
        Gegenbauer => {
            let a = &p[0] + &half;
            suv(
                RationalFunction::from_poly(x2m(&one).scale(&quarter), ctx),
                None,
                RationalFunction::from_poly(poly(&[z.clone(), &a / 2], ctx), ctx),
                cst(-(&a / 4) + &(&e / 2), ctx),
                ctx,
            )?
        }
        GeneralizedGegenbauer => {
            let k = &p[0] + &p[1] + &ctx.ratio(3, 2);
            let h = &p[0] + &half;
            suv(
                RationalFunction::from_poly(x2m(&one).scale(&quarter), ctx),
                None,
                over_x(poly(&[-h.clone(), z.clone(), k.clone()], ctx), 2, 1, ctx)?,
                over_x(poly(&[h, z.clone(), &e * 2 - &k], ctx), 4, 2, ctx)?,
                ctx,
            )?
        }
        Chihara => {
            let (al, be, g) = (&p[0], &p[1], &p[2]);
            let k = al + be + &ctx.ratio(3, 2);
            let h = al + &half;
            let g2 = g.powu(2);
            let a = x2m(&g2); // x² − γ²
            let b = x2m(&(&g2 + 1)); // x² − γ² − 1
            let xl = |c0: CNum, c1: CNum| Polynomial::linear(c0, c1);
            let s = over_x(a.mul(&b), 4, 2, ctx)?;
            let t = over_x(b.mul(&xl(-g.clone(), one.clone())).scale(g), 4, 3, ctx)?;
            let u = over_x(b.mul(&xl(g * 2, -one.clone())).scale(g), 4, 3, ctx)?
                .add(&over_x(a.scale(&k), 2, 1, ctx)?)
                .sub(&over_x(Polynomial::constant(h.clone()), 2, 1, ctx)?);
            let v = over_x(b.mul(&xl(-(g * 3) / 2, one.clone())).scale(g), 4, 4, ctx)?
                .sub(&over_x(a.scale(&k), 4, 2, ctx)?)
                .add(&over_x(Polynomial::constant(h), 4, 2, ctx)?)
                .add(&over_x(xl(-(g * &e), e.clone()), 2, 1, ctx)?);
            suv(s, Some((t, 1)), u, v, ctx)?
        }
        Minus1MeixnerPollaczek => {
            let (al, g) = (&p[0], &p[1]);
            let g2 = g.powu(2);
            let h = al + &g2;
            let s = over_x(poly(&[g2.clone(), z.clone(), -one.clone()], ctx), 4, 2, ctx)?;
            let t = over_x(Polynomial::linear(-(g * g), g.clone()), 4, 3, ctx)?;
            // x/2 + γ/(4x²) − γ²/(2x³) − h/(2x) over 4x³
            let u = over_x(
                poly(&[-(&g2 * 2), g.clone(), -(&h * 2), z.clone(), ctx.int(2)], ctx),
                4,
                3,
                ctx,
            )?;
            // 3γ²/(8x⁴) − γ/(4x³) + h/(4x²) + ε(x−γ)/(2x) − 1/4 over 8x⁴
            let v = over_x(
                poly(&[&g2 * 3, -(g * 2), &h * 2, -(g * &e) * 4, &e * 4 - 2], ctx),
                8,
                4,
                ctx,
            )?;
            suv(s, Some((t, -1)), u, v, ctx)?
        }
        LittleMinus1Jacobi | BigMinus1Jacobi | SpecialLittleMinus1Jacobi => {
            let (g, fr) = match f {
                LittleMinus1Jacobi => {
                    let (al, be) = (&p[0], &p[1]);
                    (
                        over_x(poly(&[z.clone(), -al.clone(), al + be + 1], ctx), 1, 2, ctx)?,
                        RationalFunction::from_poly(poly(&[ctx.int(2), ctx.int(-2)], ctx), ctx),
                    )
                }
                BigMinus1Jacobi => {
                    let (al, be, c) = (&p[0], &p[1], &p[2]);
                    // 2(1−x)(c+x)/x
                    let fnum = poly(&[ctx.int(2), ctx.int(-2)], ctx).mul(&Polynomial::linear(c.clone(), one.clone()));
                    (
                        over_x(poly(&[c.clone(), c * al - be, al + be + 1], ctx), 1, 2, ctx)?,
                        over_x(fnum, 1, 1, ctx)?,
                    )
                }
                _ => (
                    cst(&p[0] + 1, ctx),
                    RationalFunction::from_poly(poly(&[ctx.int(2), ctx.int(-2)], ctx), ctx),
                ),
            };
            let g = g.reduce(ctx)?;
            let g = if variant == OperatorVariant::Printed { g.neg() } else { g };
            DunklOperator::new(ctx.i()).term(g.clone(), Symbol::I).term(g.neg(), Symbol::R).term(fr.reduce(ctx)?, Symbol::DR)
        }
        ContinuousBannaiIto | ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => cbi_operator(p, variant, ctx)?,
        GeneralizedSymmetricBannaiIto | SymmetricBannaiIto => {
            let i = ctx.i();
            let ix = |c: &CNum| Polynomial::linear(c.clone(), i.clone()); // ix + c
            let (mut num_a, mut num_b) = (Polynomial::one(ctx), Polynomial::one(ctx));
            for a in p.values() {
                num_a = num_a.mul(&ix(a));
                num_b = num_b.mul(&ix(&-a.clone()));
            }
            // A: denominator 2(2ix+1); B: 2(2ix−1) for GSBI, 2(1−2ix) for SBI
            let sbi = f == SymmetricBannaiIto;
            let da = Polynomial::linear(ctx.int(2), &i * 4);
            let db = if sbi { Polynomial::linear(ctx.int(2), -(&i * 4)) } else { Polynomial::linear(ctx.int(-2), &i * 4) };
            let a = RationalFunction::new(num_a, da)?;
            let b = RationalFunction::new(num_b, db)?;
            let sum = if sbi {
                cst((&p[0] + &p[1]) / 2, ctx)
            } else {
                let e2 = &p[0] * &p[1] + &(&p[0] * &p[2]) + &(&p[1] * &p[2]);
                RationalFunction::from_poly(poly(&[e2, z.clone(), -one.clone()], ctx).scale(&half), ctx)
            };
            let c = sum.sub(&a).sub(&b).reduce(ctx)?;
            let hs = cst(&e / 2, ctx);
            DunklOperator::new(i.clone())
                .term(b, Symbol::SPlus)
                .term(a, Symbol::SMinus)
                .term(c.sub(&hs).reduce(ctx)?, Symbol::R)
                .term(sum.neg().add(&hs).reduce(ctx)?, Symbol::I)
        }
        _ => {
            return Err(Error::Unsupported { family: f.id().into(), what: "Dunkl eigen system".into() });
        }
    };
    Ok(EigenSystem { family: f, params: p.clone(), operator, free: eps, variant })
}

/// 𝒜(S⁺R − I) + 𝒜̄(S⁻R − I) + (2α+2γ+3/2) I.
fn cbi_operator(p: &Params, variant: OperatorVariant, ctx: &PrecisionContext) -> Result<DunklOperator> {
    let f = p.family();
    let (al, be, ga) = (&p[0], &p[1], &p[2]);
    let de = match f {
        ContinuousMinus1Hahn1 => be.clone(),
        ContinuousMinus1Hahn2 => -be.clone(),
        _ => p[3].clone(),
    };
    let i = ctx.i();
    // factor 2a+1 + s·i(w·b − x)
    let fac = |a: &CNum, b: &CNum, s: i64, w: i64| {
        let si = &i * s;
        Polynomial::linear(a * 2 + 1 + &(&si * &(b * w)), -si)
    };
    let (a, abar) = match variant {
        OperatorVariant::Corrected => (
            fac(al, be, 1, 2).mul(&fac(ga, &de, 1, 2)),
            fac(al, be, -1, 2).mul(&fac(ga, &de, -1, 2)),
        ),
        OperatorVariant::Printed => {
            // printed: β−x and δ−x; K1 prints β−x in both factors, K2 prints 2γ+1−i(β+x)
            let d1 = match f {
                ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => be.clone(),
                _ => de.clone(),
            };
            let second = |s: i64| match f {
                ContinuousMinus1Hahn2 => Polynomial::linear(ga * 2 + 1 - &(&i * s * be), -(&i * s)),
                _ => fac(ga, &d1, s, 1),
            };
            (fac(al, be, 1, 1).mul(&second(1)), fac(al, be, -1, 1).mul(&second(-1)))
        }
    };
    let a = RationalFunction::new(a, Polynomial::linear(ctx.one(), -(&i * 2)))?;
    let abar = RationalFunction::new(abar, Polynomial::linear(ctx.one(), &i * 2))?;
    let k = al * 2 + &(ga * 2) + &ctx.ratio(3, 2);
    let diag = a.add(&abar).neg().add(&RationalFunction::constant(k, ctx)).reduce(ctx)?;
    Ok(DunklOperator::new(i)
        .term(a, Symbol::SPlusR)
        .term(abar, Symbol::SMinusR)
        .term(diag, Symbol::I))
}
