use super::{FamilyId, Params};
use crate::error::{Error, Result};
use crate::numerics::{format_cnum, pochhammer, CNum, PrecisionContext};
use crate::polynomials::Polynomial;

use FamilyId::*;

/// Σ_{k=0}^{m} ∏(num_i)_k / ∏(den_j)_k · z^k / k! with polynomial numerator
/// parameters and argument.
pub fn hyp_poly(
    nums: &[Polynomial],
    dens: &[CNum],
    z: &Polynomial,
    m: u32,
    ctx: &PrecisionContext,
) -> Result<Polynomial> {
    for d in dens {
        if let Some(j) = d.as_nonpositive_integer() {
            if j < m {
                return Err(Error::ZeroDenominator { param: format_cnum(d, 12), k: j + 1 });
            }
        }
    }
    let mut term = Polynomial::one(ctx);
    let mut sum = Polynomial::one(ctx);
    for k in 0..m {
        let kk = ctx.int(k as i64);
        for a in nums {
            term = term.mul(&a.add(&Polynomial::constant(kk.clone())));
        }
        let mut den = ctx.int(k as i64 + 1);
        for d in dens {
            den = &den * &(d + &kk);
        }
        term = term.mul(z).scale(&den.recip());
        sum = sum.add(&term);
    }
    Ok(sum)
}

fn k(c: CNum) -> Polynomial {
    Polynomial::constant(c)
}

/// x² as a polynomial.
fn x2(ctx: &PrecisionContext) -> Polynomial {
    Polynomial::new(vec![ctx.zero(), ctx.zero(), ctx.one()], ctx)
}

/// p(y) ↦ p(x²).
fn in_x2(p: &Polynomial, ctx: &PrecisionContext) -> Polynomial {
    p.compose(&x2(ctx))
}

/// Monic closed form, with printed typos corrected.
pub fn closed_form(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<Polynomial> {
    monic_of(p, closed_form_raw(p, n, ctx)?)
}

/// Closed form exactly as printed, typos included, monic.
pub fn closed_form_printed(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<Polynomial> {
    monic_of(p, build(p, n, true, ctx)?)
}

fn monic_of(p: &Params, q: Polynomial) -> Result<Polynomial> {
    q.trimmed().monic().map_err(|_| Error::Degenerate {
        family: p.family().id().into(),
        detail: "closed form vanishes identically".into(),
    })
}

/// Closed form with the printed prefactors, before monic normalization.
pub fn closed_form_raw(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<Polynomial> {
    build(p, n, false, ctx)
}

fn degenerate(p: &Params, e: Error) -> Error {
    match e {
        Error::ZeroDenominator { param, k } => Error::Degenerate {
            family: p.family().id().into(),
            detail: format!("denominator Pochhammer ({param})_{k} vanishes"),
        },
        e => e,
    }
}

fn build(p: &Params, n: u32, printed: bool, ctx: &PrecisionContext) -> Result<Polynomial> {
    build_inner(p, n, printed, ctx).map_err(|e| degenerate(p, e))
}

fn build_inner(p: &Params, n: u32, printed: bool, ctx: &PrecisionContext) -> Result<Polynomial> {
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let even = n.is_multiple_of(2);
    let one = ctx.one();
    let half = ctx.ratio(1, 2);
    let x = Polynomial::x(ctx);
    match p.family() {
        ContinuousBannaiIto => cbi(&p[0], &p[1], &p[2], &p[3], n, printed, ctx),
        ContinuousMinus1Hahn1 => cbi(&p[0], &p[1], &p[2], &p[1], n, printed, ctx),
        ContinuousMinus1Hahn2 => cbi(&p[0], &p[1], &p[2], &(-p[1].clone()), n, printed, ctx),
        Chihara | GeneralizedGegenbauer => {
            let (al, be) = (&p[0], &p[1]);
            let ga = if p.family() == Chihara { p[2].clone() } else { ctx.zero() };
            let z = x2(ctx).sub(&k(&ga * &ga));
            let sgn = if m.is_multiple_of(2) { one.clone() } else { -one.clone() };
            if even {
                let f = hyp_poly(&[k(-mm.clone()), k(&mm + al + be + 1)], &[al + 1], &z, m, ctx)?;
                Ok(f.scale(&(sgn * pochhammer(&(al + 1), m) / pochhammer(&(&mm + al + be + 1), m))))
            } else {
                let f = hyp_poly(&[k(-mm.clone()), k(&mm + al + be + 2)], &[al + 2], &z, m, ctx)?;
                let lin = Polynomial::linear(-ga, one.clone());
                Ok(lin.mul(&f).scale(&(sgn * pochhammer(&(al + 2), m) / pochhammer(&(&mm + al + be + 2), m))))
            }
        }
        Gegenbauer => {
            let a = &p[0];
            if even {
                hyp_poly(&[k(-mm.clone()), k(&mm + a)], &[half], &x2(ctx), m, ctx)
            } else {
                let f = hyp_poly(&[k(-mm.clone()), k(&mm + a + 1)], &[ctx.ratio(3, 2)], &x2(ctx), m, ctx)?;
                Ok(x.mul(&f))
            }
        }
        Minus1MeixnerPollaczek | GeneralizedHermite | Hermite => {
            let al = if p.family() == Hermite { ctx.zero() } else { p[0].clone() };
            let ga = if p.family() == Minus1MeixnerPollaczek { p[1].clone() } else { ctx.zero() };
            let z = x2(ctx).sub(&k(&ga * &ga));
            let sgn = if m.is_multiple_of(2) { one.clone() } else { -one.clone() };
            if even {
                let den = &al + &half;
                let f = hyp_poly(&[k(-mm.clone())], std::slice::from_ref(&den), &z, m, ctx)?;
                Ok(f.scale(&(sgn * pochhammer(&den, m))))
            } else {
                let den = &al + &ctx.ratio(3, 2);
                let f = hyp_poly(&[k(-mm.clone())], std::slice::from_ref(&den), &z, m, ctx)?;
                Ok(Polynomial::linear(-ga, one.clone()).mul(&f).scale(&(sgn * pochhammer(&den, m))))
            }
        }
        SymmetricBannaiIto => {
            let (a, b) = (&p[0], &p[1]);
            let cdh_of = |a0: CNum| -> Result<Polynomial> {
                let q = Params::new(ContinuousDualHahn, vec![a0, a.clone(), b.clone()])?;
                Ok(in_x2(&build_inner(&q, m, printed, ctx)?, ctx))
            };
            if even {
                cdh_of(ctx.zero())
            } else {
                Ok(x.mul(&cdh_of(one.clone())?))
            }
        }
        GeneralizedSymmetricBannaiIto => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let s = a + b + c;
            let i = ctx.i();
            if even {
                let nums = [
                    k(-mm.clone()),
                    k(&mm + &s - 1),
                    Polynomial::linear(ctx.zero(), i.clone()),
                    Polynomial::linear(ctx.zero(), -i.clone()),
                ];
                hyp_poly(&nums, &[a.clone(), b.clone(), c.clone()], &k(one.clone()), m, ctx)
            } else {
                let nums = [
                    k(-mm.clone()),
                    k(&mm + &s),
                    Polynomial::linear(one.clone(), i.clone()),
                    Polynomial::linear(one.clone(), -i.clone()),
                ];
                let f = hyp_poly(&nums, &[a + 1, b + 1, c + 1], &k(one.clone()), m, ctx)?;
                Ok(x.mul(&f))
            }
        }
        LittleMinus1Jacobi | SpecialLittleMinus1Jacobi | BigMinus1Jacobi => jacobi_type(p, n, printed, ctx),
        ContinuousComplementaryBannaiIto => {
            let (a1, b1, a2, b2) = (&p[0], &p[1], &p[2], &p[3]);
            let i = ctx.i();
            let ib2 = &i * b2;
            let rest = [a1 + &(&i * b1), a1 - &(&i * b1), a2 - &ib2];
            let w = |a0: CNum| -> Result<Polynomial> {
                let q = Params::new(Wilson, vec![a0, rest[0].clone(), rest[1].clone(), rest[2].clone()])?;
                Ok(in_x2(&build_inner(&q, m, printed, ctx)?, ctx))
            };
            if even {
                w(ib2)
            } else {
                Ok(Polynomial::linear(-b2.clone(), one.clone()).mul(&w(&ib2 + 1)?))
            }
        }
        Wilson => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let nn = ctx.int(n as i64);
            let top = &nn + a + b + c + d - 1;
            wilson_like(a, &[-nn.clone(), top], &[a + b, a + c, a + d], n, ctx)
        }
        ContinuousDualHahn => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let nn = ctx.int(n as i64);
            wilson_like(a, &[-nn], &[a + b, a + c], n, ctx)
        }
        LittleQJacobiDilated | ContinuousQHahn | QMeixnerPollaczek | BigQJacobi => Err(Error::Unsupported {
            family: p.family().id().into(),
            what: "closed form".into(),
        }),
    }
}

/// Σ_k ∏(num)_k/∏(den)_k/k! · (a+iy^{1/2})_k (a−iy^{1/2})_k in the variable y.
fn wilson_like(a: &CNum, nums: &[CNum], dens: &[CNum], n: u32, ctx: &PrecisionContext) -> Result<Polynomial> {
    let mut sum = Polynomial::one(ctx);
    let mut prod = Polynomial::one(ctx);
    let mut coef = ctx.one();
    for kk in 0..n {
        let kc = ctx.int(kk as i64);
        let aj = a + &kc;
        prod = prod.mul(&Polynomial::linear(&aj * &aj, ctx.one()));
        for v in nums {
            coef = &coef * &(v + &kc);
        }
        for d in dens {
            let dk = d + &kc;
            if dk.is_zero() {
                return Err(Error::ZeroDenominator { param: format_cnum(d, 12), k: kk + 1 });
            }
            coef = &coef / &dk;
        }
        coef = &coef / &ctx.int(kk as i64 + 1);
        sum = sum.add(&prod.scale(&coef));
    }
    Ok(sum)
}

#[allow(clippy::too_many_arguments)]
fn cbi(al: &CNum, be: &CNum, ga: &CNum, de: &CNum, n: u32, printed: bool, ctx: &PrecisionContext) -> Result<Polynomial> {
    let i = ctx.i();
    let h = ctx.ratio(1, 2);
    let fa = al + &(&i * be);
    let fd = al - &(&i * be);
    let fb = ga + &(&i * de);
    let fc = ga - &(&i * de);
    let g = al * 2 + &(ga * 2) + 1;
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let three_h = ctx.ratio(3, 2);
    let five_h = ctx.ratio(5, 2);
    let d1 = [&three_h + &fa + &fb, &fb + &fc + 1, &fb + &fd + 1];
    let d2 = [&five_h + &fa + &fb, &fb + &fc + 2, &fb + &fd + 2];
    let kap1 = |j: u32| -> CNum {
        let jj = ctx.int(j as i64);
        pochhammer(&d1[0], j) * pochhammer(&d1[1], j) * pochhammer(&d1[2], j) / pochhammer(&(&jj + &g + 1), j)
    };
    let kap2 = |j: u32| -> CNum {
        let jj = ctx.int(j as i64);
        pochhammer(&d2[0], j) * pochhammer(&d2[1], j) * pochhammer(&d2[2], j) / pochhammer(&(&jj + &g + 2), j)
    };
    let half_i = &i * &h;
    let lin = Polynomial::linear(-(&fb + &h), half_i.clone());
    let f1 = |j: u32| -> Result<Polynomial> {
        let jj = ctx.int(j as i64);
        let nums = [
            k(-jj.clone()),
            k(&jj + &g + 1),
            Polynomial::linear(fb.clone(), half_i.clone()),
            Polynomial::linear(&fb + &h, -half_i.clone()),
        ];
        hyp_poly(&nums, &d1, &k(ctx.one()), j, ctx)
    };
    let f2 = |j: u32, top: CNum| -> Result<Polynomial> {
        let jj = ctx.int(j as i64);
        let nums = [
            k(-jj),
            k(top),
            Polynomial::linear(&fb + 1, half_i.clone()),
            Polynomial::linear(&fb + &three_h, -half_i.clone()),
        ];
        hyp_poly(&nums, &d2, &k(ctx.one()), j, ctx)
    };
    let body = if n.is_multiple_of(2) {
        let t2 = f1(m)?.scale(&kap1(m));
        if m == 0 {
            t2
        } else {
            let xi = &mm * &(&mm + &fc + &fd + &h) / &(&(&mm * 2) + &g);
            let top = if printed { &mm + &g + 2 } else { &mm + &g + 1 };
            lin.mul(&f2(m - 1, top)?).scale(&(xi * kap2(m - 1))).add(&t2)
        }
    } else {
        let eta = &(&mm + &fb + &fc + 1) * &(&mm + &fb + &fd + 1) / &(&(&mm * 2) + &g + 1);
        let t1 = lin.mul(&f2(m, &mm + &g + 2)?).scale(&kap2(m));
        t1.add(&f1(m)?.scale(&(eta * kap1(m))))
    };
    let pre = (i * -2).powu(n);
    Ok(body.scale(&pre))
}

fn jacobi_type(p: &Params, n: u32, printed: bool, ctx: &PrecisionContext) -> Result<Polynomial> {
    let m = n / 2;
    let mm = ctx.int(m as i64);
    let one = ctx.one();
    let (al, be, c) = match p.family() {
        LittleMinus1Jacobi => (p[0].clone(), p[1].clone(), None),
        SpecialLittleMinus1Jacobi => (ctx.zero(), p[0].clone(), None),
        _ => (p[0].clone(), p[1].clone(), Some(p[2].clone())),
    };
    // z and the linear factor multiplying the second block
    let (z, lin, cfac) = match &c {
        None => (x2(ctx), Polynomial::x(ctx), one.clone()),
        Some(c) => {
            let s = (&one - &(c * c)).recip();
            (
                Polynomial::new(vec![s.clone(), ctx.zero(), -s], ctx),
                Polynomial::linear(one.clone(), -one.clone()),
                c + 1,
            )
        }
    };
    let top = (&(&mm * 2) + &al + &be + 2) / 2;
    let d1 = (&al + 1) / 2;
    let d2 = (&al + 3) / 2;
    let first = hyp_poly(&[k(-mm.clone()), k(top.clone())], std::slice::from_ref(&d1), &z, m, ctx);
    if n.is_multiple_of(2) {
        let first = first?;
        if m == 0 {
            return Ok(first);
        }
        let sec = hyp_poly(&[k(&one - &mm), k(top)], &[d2], &z, m - 1, ctx)?;
        let f = &(&mm * 2) / &(&cfac * &(&al + 1));
        Ok(first.add(&lin.mul(&sec).scale(&f)))
    } else {
        let first = if printed && c.is_none() {
            // printed top parameter of the first block: (m+α+β+1)/2
            let t = (&mm + &al + &be + 1) / 2;
            hyp_poly(&[k(-mm.clone()), k(t)], &[d1], &z, m, ctx)?
        } else {
            first?
        };
        let top2 = if printed && p.family() == SpecialLittleMinus1Jacobi {
            // printed: (m+α+3)/2
            (&mm + &be + 3) / 2
        } else {
            (&(&mm * 2) + &al + &be + 4) / 2
        };
        let sec = hyp_poly(&[k(-mm.clone()), k(top2)], &[d2], &z, m, ctx)?;
        let f = -(&(&mm * 2) + &al + &be + 2) / (&cfac * &(&al + 1));
        Ok(first.add(&lin.mul(&sec).scale(&f)))
    }
}

/// Leading coefficient of the printed closed form (1 when the printed
/// normalization is already monic).
pub fn printed_leading(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<CNum> {
    Ok(closed_form_raw(p, n, ctx)?.trimmed().leading().clone())
}

