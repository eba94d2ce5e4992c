//! Positivity analysis of the continuous complementary Bannai–Ito recurrence.

use rug::Float;
use serde::Serialize;

use super::{recurrence, FamilyId, Params};
use crate::error::Result;
use crate::numerics::{CNum, PrecisionContext};

/// Raw parametrization ρ₁ = a₁+ib₁−1, ρ₂ = ib₂, −r₁ = a₃+ib₃−1/2, −r₂ = a₄+ib₄−1/2.
#[derive(Clone, Debug)]
pub struct RawParams {
    pub a1: CNum,
    pub b1: CNum,
    pub b2: CNum,
    pub a3: CNum,
    pub b3: CNum,
    pub a4: CNum,
    pub b4: CNum,
}

impl RawParams {
    /// The point on the solution branch a₃ = a₁, b₃ = −b₁, a₄ = a₂, b₄ = −b₂.
    pub fn from_ccbi(p: &Params) -> RawParams {
        RawParams {
            a1: p[0].clone(),
            b1: p[1].clone(),
            b2: p[3].clone(),
            a3: p[0].clone(),
            b3: -p[1].clone(),
            a4: p[2].clone(),
            b4: -p[3].clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// First n (0-based scan) where it fails.
    pub first_failure: Option<u32>,
    /// Largest |Im| / |value| seen.
    pub max_rel_imag: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub n_max: u32,
    /// Σ b_k = 0.
    pub sum_condition: Condition,
    /// Reality of the even-index product, derived from τ_{2n}.
    pub even_condition: Condition,
    /// Reality of the odd-index product.
    pub odd_condition: Condition,
    /// The even-index condition with the printed shifts (no −1 on the first two factors).
    pub even_condition_printed: Condition,
    pub all_hold: bool,
}

fn rel_imag(z: &CNum) -> f64 {
    let a = z.abs();
    if a.is_zero() {
        return 0.0;
    }
    let r = Float::with_val(a.prec(), z.im().abs_ref()) / a;
    r.to_f64()
}

fn scan(n_max: u32, ctx: &PrecisionContext, f: impl Fn(&CNum) -> CNum) -> Condition {
    let tol = ctx.tol_f64(10);
    let mut first = None;
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let r = rel_imag(&f(&ctx.int(n as i64)));
        worst = worst.max(r);
        if r > tol && first.is_none() {
            first = Some(n);
        }
    }
    Condition { holds: first.is_none(), first_failure: first, max_rel_imag: worst }
}

/// Evaluates the three reality conditions for n = 0…n_max.
pub fn positivity_conditions(r: &RawParams, n_max: u32, ctx: &PrecisionContext) -> PositivityReport {
    let i = ctx.i();
    let sum = &r.b1 + &r.b2 + &r.b3 + &r.b4;
    let scale = [&r.b1, &r.b2, &r.b3, &r.b4].iter().map(|b| b.abs()).fold(Float::with_val(ctx.prec(), 1), |m, v| if v > m { v } else { m });
    let sum_ok = Float::with_val(ctx.prec(), sum.abs() / &scale) < ctx.tol(10);
    let sum_condition = Condition {
        holds: sum_ok,
        first_failure: if sum_ok { None } else { Some(0) },
        max_rel_imag: (sum.abs() / scale).to_f64(),
    };
    let cplx = |re: CNum, im: CNum| re + &i * &im;
    let even = |shift: i64| {
        move |n: &CNum| -> CNum {
            cplx(n + &r.a1 + &r.a3 + shift, &r.b1 + &r.b3)
                * cplx(n + &r.a1 + &r.a4 + shift, &r.b1 + &r.b4)
                * cplx(n + &r.a3 + &r.a4 - 1, &r.b3 + &r.b4)
        }
    };
    let even_condition = scan(n_max, ctx, even(-1));
    let even_condition_printed = scan(n_max, ctx, even(0));
    let odd_condition = scan(n_max, ctx, |n| {
        cplx(n + &r.a3, &r.b2 + &r.b3) * cplx(n + &r.a4, &r.b2 + &r.b4) * cplx(n + &r.a1, &r.b1 + &r.b2)
    });
    let all_hold = sum_condition.holds && even_condition.holds && odd_condition.holds;
    PositivityReport { n_max, sum_condition, even_condition, odd_condition, even_condition_printed, all_hold }
}

/// First n ≤ n_max with a non-real τ_n, if any.
pub fn first_nonreal_tau(p: &Params, n_max: u32, ctx: &PrecisionContext) -> Result<Option<u32>> {
    debug_assert_eq!(p.family(), FamilyId::ContinuousComplementaryBannaiIto);
    let tol = ctx.tol_f64(10);
    for n in 1..=n_max {
        let r = recurrence(p, n, ctx)?;
        if rel_imag(&r.u) > tol {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_zero_branch_is_real() {
        let c = PrecisionContext::default();
        let p = Params::real(FamilyId::ContinuousComplementaryBannaiIto, &[0.5, 1.0 / 3.0, 1.0, 0.0], &c).unwrap();
        let rep = positivity_conditions(&RawParams::from_ccbi(&p), 20, &c);
        assert!(rep.all_hold, "{rep:?}");
        // printed shifts break the even condition as soon as b₁ ≠ 0
        assert!(!rep.even_condition_printed.holds);
        assert_eq!(first_nonreal_tau(&p, 5, &c).unwrap(), None);
    }

    #[test]
    fn lone_b2_breaks_sum() {
        let c = PrecisionContext::default();
        let z = c.zero();
        let r = RawParams {
            a1: c.one(),
            b1: z.clone(),
            b2: c.one(),
            a3: c.one(),
            b3: z.clone(),
            a4: c.one(),
            b4: z,
        };
        assert!(!positivity_conditions(&r, 5, &c).sum_condition.holds);
    }

    #[test]
    fn b2_nonzero_gives_complex_tau() {
        let c = PrecisionContext::default();
        let p = Params::real(FamilyId::ContinuousComplementaryBannaiIto, &[0.5, 1.0 / 3.0, 1.0, 0.25], &c).unwrap();
        let n = first_nonreal_tau(&p, 5, &c).unwrap();
        assert!(n.is_some() && n.unwrap() <= 5);
        let rep = positivity_conditions(&RawParams::from_ccbi(&p), 5, &c);
        assert!(!rep.even_condition.holds || !rep.odd_condition.holds);
    }
}
