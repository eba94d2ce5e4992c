use super::{FamilyId, Params};
use crate::error::{Error, Result};
use crate::numerics::{CNum, PrecisionContext};
use crate::polynomials::Polynomial;

use FamilyId::*;

/// Coefficients of x P_n = P_{n+1} + b_n P_n + u_n P_{n−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrencePair {
    pub b: CNum,
    pub u: CNum,
    /// (A_n, C_n) where the family is presented that way.
    pub ac: Option<(CNum, CNum)>,
}

fn sq(z: &CNum) -> CNum {
    z * z
}

/// b_n, u_n as printed; u_0 is always 0.
pub fn recurrence(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<RecurrencePair> {
    let r = raw(p, n, ctx)?;
    let fin = r.b.is_finite() && r.u.is_finite() && r.ac.as_ref().is_none_or(|(a, c)| a.is_finite() && c.is_finite());
    if !fin {
        return Err(Error::ParameterSingularity {
            family: p.family().id().into(),
            n,
            detail: "a printed denominator vanishes".into(),
        });
    }
    Ok(r)
}

pub fn recurrence_table(p: &Params, nmax: u32, ctx: &PrecisionContext) -> Result<Vec<RecurrencePair>> {
    (0..=nmax).map(|n| recurrence(p, n, ctx)).collect()
}

/// P_0 … P_N from the recurrence.
pub fn generate(p: &Params, nmax: u32, ctx: &PrecisionContext) -> Result<Vec<Polynomial>> {
    let rec = recurrence_table(p, nmax, ctx)?;
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(Polynomial::one(ctx));
    let x = Polynomial::x(ctx);
    for n in 0..nmax as usize {
        let mut next = x.mul(&out[n]).sub(&out[n].scale(&rec[n].b));
        if n > 0 {
            next = next.sub(&out[n - 1].scale(&rec[n].u));
        }
        out.push(next);
    }
    Ok(out)
}

fn from_ac(a: CNum, c: CNum, a_prev: CNum, ctx: &PrecisionContext, n: u32) -> RecurrencePair {
    let b = ctx.one() - &a - &c;
    let u = if n == 0 { ctx.zero() } else { &a_prev * &c };
    RecurrencePair { b, u, ac: Some((a, c)) }
}

fn raw(p: &Params, n: u32, ctx: &PrecisionContext) -> Result<RecurrencePair> {
    let nn = ctx.int(n as i64);
    let m = ctx.int((n / 2) as i64);
    let even = n.is_multiple_of(2);
    let half = ctx.ratio(1, 2);
    let zero = ctx.zero();
    let plain = |b: CNum, u: CNum| {
        let u = if n == 0 { ctx.zero() } else { u };
        Ok(RecurrencePair { b, u, ac: None })
    };
    match p.family() {
        ContinuousBannaiIto => {
            let (al, be, ga, de) = (&p[0], &p[1], &p[2], &p[3]);
            let g1 = &nn + &(al * 2) + &(ga * 2) + 1;
            let g2 = &g1 + 1;
            let bm = be - de;
            let bp = be + de;
            let b = if even {
                be * 2 - &(&nn + &(al * 4) + 2) * &bm / &g2 - &(&nn * &bp) / &g1
            } else {
                be * 2 - &(&nn + &(al * 4) + &(ga * 4) + 3) * &bp / &g2 - &(&nn + &(ga * 4) + 1) * &bm / &g1
            };
            let u = if even {
                &nn * &(&nn + &(al * 4) + &(ga * 4) + 2) * &(sq(&g1) + sq(&bp) * 4) / &(sq(&g1) * 4)
            } else {
                &(&nn + &(al * 4) + 1) * &(&nn + &(ga * 4) + 1) * &(sq(&g1) + sq(&bm) * 4) / &(sq(&g1) * 4)
            };
            plain(b, u)
        }
        ContinuousMinus1Hahn1 => {
            let (al, be, ga) = (&p[0], &p[1], &p[2]);
            let g1 = &nn + &(al * 2) + &(ga * 2) + 1;
            let g2 = &g1 + 1;
            let b = if even {
                be * 2 - &(be * 2) * &nn / &g1
            } else {
                be * 2 - &(be * 2) * &(&nn + &(al * 4) + &(ga * 4) + 3) / &g2
            };
            let u = if even {
                &nn * &(&nn + &(al * 4) + &(ga * 4) + 2) * &(sq(&g1) + sq(be) * 16) / &(sq(&g1) * 4)
            } else {
                &(&nn + &(al * 4) + 1) * &(&nn + &(ga * 4) + 1) * &sq(&g1) / &(sq(&g1) * 4)
            };
            plain(b, u)
        }
        ContinuousMinus1Hahn2 => {
            let (al, be, ga) = (&p[0], &p[1], &p[2]);
            let g1 = &nn + &(al * 2) + &(ga * 2) + 1;
            let g2 = &g1 + 1;
            let b = if even {
                be * 2 - &(be * 2) * &(&nn + &(al * 4) + 2) / &g2
            } else {
                be * 2 - &(be * 2) * &(&nn + &(ga * 4) + 1) / &g1
            };
            let u = if even {
                &nn * &(&nn + &(al * 4) + &(ga * 4) + 2) * &sq(&g1) / &(sq(&g1) * 4)
            } else {
                &(&nn + &(al * 4) + 1) * &(&nn + &(ga * 4) + 1) * &(sq(&g1) + sq(be) * 16) / &(sq(&g1) * 4)
            };
            plain(b, u)
        }
        BigMinus1Jacobi => {
            let (al, be, c) = (&p[0], &p[1], &p[2]);
            let ac = |k: u32| -> (CNum, CNum) {
                let kk = ctx.int(k as i64);
                let s = &(&kk * 2) + al + be;
                if k.is_multiple_of(2) {
                    (
                        &(c + 1) * &(&kk + al + 1) / &(&s + 2),
                        &(ctx.one() - c) * &kk / &s,
                    )
                } else {
                    (
                        &(ctx.one() - c) * &(&kk + al + be + 1) / &(&s + 2),
                        &(c + 1) * &(&kk + be) / &s,
                    )
                }
            };
            let (a, cc) = ac(n);
            let cc = if n == 0 { zero } else { cc };
            let ap = if n == 0 { ctx.zero() } else { ac(n - 1).0 };
            Ok(from_ac(a, cc, ap, ctx, n))
        }
        LittleMinus1Jacobi => {
            let (al, be) = (&p[0], &p[1]);
            let ac = |k: u32| -> (CNum, CNum) {
                let kk = ctx.int(k as i64);
                let s = &(&kk * 2) + al + be;
                if k.is_multiple_of(2) {
                    ((&kk + be + 1) / &(&s + 2), &kk / &s)
                } else {
                    ((&kk + al + be + 1) / &(&s + 2), (&kk + al) / &s)
                }
            };
            let (a, cc) = ac(n);
            let cc = if n == 0 { zero } else { cc };
            let ap = if n == 0 { ctx.zero() } else { ac(n - 1).0 };
            Ok(from_ac(a, cc, ap, ctx, n))
        }
        SpecialLittleMinus1Jacobi => {
            let al = &p[0];
            let ac = |k: u32| -> (CNum, CNum) {
                let kk = ctx.int(k as i64);
                let s = &(&kk * 2) + al;
                ((&kk + al + 1) / &(&s + 2), &kk / &s)
            };
            let (a, cc) = ac(n);
            let cc = if n == 0 { zero } else { cc };
            let ap = if n == 0 { ctx.zero() } else { ac(n - 1).0 };
            Ok(from_ac(a, cc, ap, ctx, n))
        }
        Chihara | GeneralizedGegenbauer => {
            let (al, be) = (&p[0], &p[1]);
            let ga = if p.family() == Chihara { p[2].clone() } else { ctx.zero() };
            let s = &(&m * 2) + al + be;
            let u = if even {
                &m * &(&m + be) / &(&s * &(&s + 1))
            } else {
                &(&m + al + 1) * &(&m + al + be + 1) / &(&(&s + 1) * &(&s + 2))
            };
            let b = if even { ga } else { -ga };
            plain(b, u)
        }
        Gegenbauer => {
            let a = &p[0];
            let u = &nn * &(&nn + &(a * 2) - 1) / &(&(&(&nn * 2) + &(a * 2) - 2) * &(&(&nn * 2) + &(a * 2)));
            plain(ctx.zero(), u)
        }
        Minus1MeixnerPollaczek | GeneralizedHermite => {
            let al = &p[0];
            let ga = if p.family() == Minus1MeixnerPollaczek { p[1].clone() } else { ctx.zero() };
            let u = if even { m.clone() } else { &m + al + &half };
            let b = if even { ga } else { -ga };
            plain(b, u)
        }
        Hermite => plain(ctx.zero(), &nn / 2),
        SymmetricBannaiIto => {
            let (a, b) = (&p[0], &p[1]);
            let u = if even { &m * &(&m + a + b - 1) } else { &(&m + a) * &(&m + b) };
            plain(ctx.zero(), u)
        }
        GeneralizedSymmetricBannaiIto => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let s = a + b + c;
            let t = &(&m * 2) + &s;
            let u = if even {
                &m * &(&m + a + b - 1) * &(&m + a + c - 1) * &(&m + b + c - 1) / &(&(&t - 2) * &(&t - 1))
            } else {
                &(&m + &s - 1) * &(&m + c) * &(&m + a) * &(&m + b) / &(&(&t - 1) * &t)
            };
            plain(ctx.zero(), u)
        }
        ContinuousComplementaryBannaiIto => {
            let (a1, b1, a2, b2) = (&p[0], &p[1], &p[2], &p[3]);
            let i = ctx.i();
            let t = &(&m * 2) + &(a1 * 2) + a2;
            let u = if even {
                &m * &(&m + &(a1 * 2) - 1)
                    * &(&m + a1 + a2 - 1 + &i * &(b1 - b2))
                    * &(&m + a1 + a2 - 1 - &i * &(b1 + b2))
                    / &(&(&t - 2) * &(&t - 1))
            } else {
                &(&m + &(a1 * 2) + a2 - 1) * &(&m + a2) * &(&m + a1 + &i * &(b1 + b2)) * &(&m + a1 - &i * &(b1 - b2))
                    / &(&(&t - 1) * &t)
            };
            let b = if even { b2.clone() } else { -b2.clone() };
            plain(b, u)
        }
        Wilson => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let s = a + b + c + d;
            let ac = |k: u32| -> (CNum, CNum) {
                let kk = ctx.int(k as i64);
                let t = &(&kk * 2) + &s;
                let an = &(&kk + &s - 1) * &(&kk + a + b) * &(&kk + a + c) * &(&kk + a + d) / &(&(&t - 1) * &t);
                let cn = if k == 0 {
                    ctx.zero()
                } else {
                    &kk * &(&kk + b + c - 1) * &(&kk + b + d - 1) * &(&kk + c + d - 1) / &(&(&t - 2) * &(&t - 1))
                };
                (an, cn)
            };
            helper(ac, a, n, ctx)
        }
        ContinuousDualHahn => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let ac = |k: u32| -> (CNum, CNum) {
                let kk = ctx.int(k as i64);
                (&(&kk + a + b) * &(&kk + a + c), &kk * &(&kk + b + c - 1))
            };
            helper(ac, a, n, ctx)
        }
        LittleQJacobiDilated => {
            let (a, b, q) = (&p[0], &p[1], &p[2]);
            let ac = |k: u32| lqj_ac(a, b, q, k, ctx);
            let (an, cn) = ac(n);
            let ap = if n == 0 { ctx.zero() } else { ac(n - 1).0 };
            Ok(from_ac(an, cn, ap, ctx, n))
        }
        BigQJacobi => {
            let (a, b, c, q) = (&p[0], &p[1], &p[2], &p[3]);
            let ac = |k: u32| -> (CNum, CNum) {
                let qk = q.powu(k);
                let qk1 = &qk * q;
                let ab = a * b;
                let an = &(ctx.one() - &(a * &qk1)) * &(ctx.one() - &(&ab * &qk1)) * &(ctx.one() - &(c * &qk1))
                    / &(&(ctx.one() - &(&ab * &(&qk * &qk1))) * &(ctx.one() - &(&ab * &(&qk1 * &qk1))));
                let cn = if k == 0 {
                    ctx.zero()
                } else {
                    -(a * &qk1) * &(ctx.one() - &qk) * &(c - &(&ab * &qk)) * &(ctx.one() - &(b * &qk))
                        / &(&(ctx.one() - &(&ab * &(&qk * &qk))) * &(ctx.one() - &(&ab * &(&qk * &qk1))))
                };
                (an, cn)
            };
            let (an, cn) = ac(n);
            let ap = if n == 0 { ctx.zero() } else { ac(n - 1).0 };
            Ok(from_ac(an, cn, ap, ctx, n))
        }
        ContinuousQHahn => {
            let (a, b, phi, q) = (&p[0], &p[1], &p[2], &p[3]);
            let e = phi.mul_i().exp();
            let ae = a * &e;
            let one = ctx.one();
            let a2b2 = sq(a) * sq(b);
            let ab = a * b;
            let ac = |k: u32| -> (CNum, CNum) {
                let qk = q.powi(k as i64);
                let qm = q.powi(k as i64 - 1);
                let an = &(&one - &(&ab * &sq(&e) * &qk)) * &(&one - &(sq(a) * &qk)) * &(&one - &(&ab * &qk))
                    * &(&one - &(&a2b2 * &qm))
                    / &(&ae * &(q + 1) * &(&one - &(&a2b2 * &q.powi(2 * k as i64 - 1))) * &(&one - &(&a2b2 * &q.powi(2 * k as i64))));
                let cn = if k == 0 {
                    ctx.zero()
                } else {
                    &ae * &(&one - &qk) * &(&one - &(&ab * &qm)) * &(&one - &(sq(b) * &qm)) * &(&one - &(&ab * &sq(&e).recip() * &qm))
                        / &(&(q + 1)
                            * &(&one - &(&a2b2 * &q.powi(2 * k as i64 - 2)))
                            * &(&one - &(&a2b2 * &q.powi(2 * k as i64 - 1))))
                };
                (an, cn)
            };
            let (an, cn) = ac(n);
            let b = (&(&ae + &ae.recip()) / &(q + 1) - &(&an + &cn)) / 2;
            let u = if n == 0 { ctx.zero() } else { &ac(n - 1).0 * &cn / 4 };
            Ok(RecurrencePair { b, u, ac: Some((an, cn)) })
        }
        QMeixnerPollaczek => {
            let (a, phi, q) = (&p[0], &p[1], &p[2]);
            let qn = q.powu(n);
            let b = a * &qn * &phi.cos();
            let u = if n == 0 {
                ctx.zero()
            } else {
                &(ctx.one() - &qn) * &(ctx.one() - &(sq(a) * &q.powu(n - 1))) / 4
            };
            Ok(RecurrencePair { b, u, ac: None })
        }
    }
}

/// A_n, C_n of the dilated little q-Jacobi family.
pub(crate) fn lqj_ac(a: &CNum, b: &CNum, q: &CNum, k: u32, ctx: &PrecisionContext) -> (CNum, CNum) {
    let one = ctx.one();
    let ab = a * b;
    let qk = q.powu(k);
    let qk1 = &qk * q;
    let an = &(&one - &(b * &qk1)) * &(&one - &(&ab * &qk1)) / &(&(&one - &(&ab * &(&qk * &qk1))) * &(&one - &(&ab * &(&qk1 * &qk1))));
    let cn = if k == 0 {
        ctx.zero()
    } else {
        &ab * b * &(&qk * &qk1) * &(&one - &qk) * &(&one - &(a * &qk))
            / &(&(&one - &(&ab * &(&qk * &qk))) * &(&one - &(&ab * &(&qk * &qk1))))
    };
    (an, cn)
}

fn helper(
    ac: impl Fn(u32) -> (CNum, CNum),
    a: &CNum,
    n: u32,
    ctx: &PrecisionContext,
) -> Result<RecurrencePair> {
    let (an, cn) = ac(n);
    let b = &an + &cn - &sq(a);
    let u = if n == 0 { ctx.zero() } else { &ac(n - 1).0 * &cn };
    Ok(RecurrencePair { b, u, ac: Some((an, cn)) })
}

/// The dilated little q-Jacobi b_n with the sign as printed: 1 − A_n + C_n.
pub fn lqj_printed_b(p: &Params, n: u32, ctx: &PrecisionContext) -> CNum {
    let (an, cn) = lqj_ac(&p[0], &p[1], &p[2], n, ctx);
    ctx.one() - &an + &cn
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn hermite_u2() {
        let c = ctx();
        let p = Params::new(Hermite, vec![]).unwrap();
        let r = recurrence(&p, 2, &c).unwrap();
        assert!(r.b.is_zero());
        assert_eq!(r.u, c.one());
        let ps = generate(&p, 2, &c).unwrap();
        assert_eq!(ps[2], Polynomial::new(vec![c.ratio(-1, 2), c.zero(), c.one()], &c));
    }

    #[test]
    fn cbi_hand_values() {
        // α = γ = δ = 0, β = 1: b₀ = 2 − 2·1/2 = 1 and u₁ = 2·2·|2+2i|²/16 = 2
        let c = ctx();
        let p = Params::real(ContinuousBannaiIto, &[0.0, 1.0, 0.0, 0.0], &c).unwrap();
        assert_eq!(recurrence(&p, 0, &c).unwrap().b, c.one());
        let u1 = recurrence(&p, 1, &c).unwrap().u;
        assert!(u1.rel_dist(&c.int(2), &c.real(0.0)) < c.tol(0));
    }

    #[test]
    fn gg_u1() {
        let c = ctx();
        let p = Params::real(GeneralizedGegenbauer, &[0.0, 1.0], &c).unwrap();
        let u1 = recurrence(&p, 1, &c).unwrap().u;
        assert!(u1.rel_dist(&c.ratio(1, 3), &c.real(0.0)) < c.tol(0));
    }

    #[test]
    fn chihara_and_mp_low_degree() {
        let c = ctx();
        let p = Params::real(Chihara, &[0.5, 1.5, 0.25], &c).unwrap();
        let ps = generate(&p, 1, &c).unwrap();
        assert_eq!(ps[1], Polynomial::new(vec![c.ratio(-1, 4), c.one()], &c));
        let p = Params::real(Minus1MeixnerPollaczek, &[0.75, 0.5], &c).unwrap();
        let ps = generate(&p, 2, &c).unwrap();
        // (x+γ)(x−γ) − (α+1/2)
        let want = Polynomial::new(vec![c.ratio(-3, 2), c.zero(), c.one()], &c);
        assert!(ps[2].approx_eq(&want, &c));
    }

    #[test]
    fn singular_denominator() {
        let c = ctx();
        // 2n+α+β = 0 at n = 1 with α = β = −1
        let p = Params::real(LittleMinus1Jacobi, &[-1.0, -1.0], &c).unwrap();
        assert!(matches!(recurrence(&p, 1, &c), Err(Error::ParameterSingularity { .. })));
    }

    #[test]
    fn bqj_at_c_zero_is_lqj_swapped() {
        let c = ctx();
        let q = c.ratio(-9, 10);
        let (a, b) = (c.ratio(-7, 10), c.ratio(-4, 5));
        let big = Params::new(BigQJacobi, vec![a.clone(), b.clone(), c.zero(), q.clone()]).unwrap();
        let lit = Params::new(LittleQJacobiDilated, vec![b, a, q]).unwrap();
        for n in 0..8 {
            let r1 = recurrence(&big, n, &c).unwrap();
            let r2 = recurrence(&lit, n, &c).unwrap();
            assert!(r1.b.rel_dist(&r2.b, &c.real(1.0)) < c.tol(8));
            assert!(r1.u.rel_dist(&r2.u, &c.real(1.0)) < c.tol(8));
        }
    }
}
