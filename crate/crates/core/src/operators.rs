//! Dunkl operators: reflections, imaginary shifts and derivatives with
//! rational coefficients, applied exactly to polynomials.

use std::fmt;

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{eigen_system, generate, FamilyId, Params};
use crate::numerics::{CNum, PrecisionContext};
use crate::polynomials::{classify_zero, poly_gcd, Polynomial, RationalFunction, ZeroClass};
use crate::report::Status;

/// Elementary operators. Composite symbols read right to left by default:
/// `SPlusR` is S⁺∘R, i.e. f ↦ f(−x−i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Symbol {
    I,
    R,
    SPlus,
    SMinus,
    SPlusR,
    SMinusR,
    D,
    DR,
    D2,
    TPlus,
    TPlusR,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Symbol::I => "I",
            Symbol::R => "R",
            Symbol::SPlus => "S+",
            Symbol::SMinus => "S-",
            Symbol::SPlusR => "S+R",
            Symbol::SMinusR => "S-R",
            Symbol::D => "d",
            Symbol::DR => "dR",
            Symbol::D2 => "d2",
            Symbol::TPlus => "T+",
            Symbol::TPlusR => "T+R",
        };
        f.write_str(s)
    }
}

/// How a composite like S⁺R acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// (S⁺R)f = S⁺(Rf): f(−x−i).
    RightToLeft,
    /// (S⁺R)f = R(S⁺f): f(−x+i).
    LeftToRight,
}

/// Σ coefficient(x) · symbol.
#[derive(Clone, Debug)]
pub struct DunklOperator {
    pub terms: Vec<(RationalFunction, Symbol)>,
    /// Step of the imaginary shifts S±.
    pub step: CNum,
    pub convention: Convention,
}

impl DunklOperator {
    pub fn new(step: CNum) -> DunklOperator {
        DunklOperator { terms: Vec::new(), step, convention: Convention::RightToLeft }
    }

    pub fn term(mut self, c: RationalFunction, s: Symbol) -> DunklOperator {
        self.terms.push((c, s));
        self
    }

    pub fn with_convention(mut self, c: Convention) -> DunklOperator {
        self.convention = c;
        self
    }

    /// Coefficient of a symbol (the first one registered).
    pub fn coefficient(&self, s: Symbol) -> Option<&RationalFunction> {
        self.terms.iter().find(|(_, t)| *t == s).map(|(c, _)| c)
    }

    fn act(&self, s: Symbol, p: &Polynomial, ctx: &PrecisionContext) -> Polynomial {
        let rtl = self.convention == Convention::RightToLeft;
        let st = &self.step;
        let one = ctx.one();
        match s {
            Symbol::I => p.clone(),
            Symbol::R => p.reflect(),
            Symbol::SPlus => p.shift(st),
            Symbol::SMinus => p.shift(&-st.clone()),
            Symbol::SPlusR if rtl => p.reflect().shift(st),
            Symbol::SPlusR => p.shift(st).reflect(),
            Symbol::SMinusR if rtl => p.reflect().shift(&-st.clone()),
            Symbol::SMinusR => p.shift(&-st.clone()).reflect(),
            Symbol::D => p.differentiate(),
            Symbol::DR if rtl => p.reflect().differentiate(),
            Symbol::DR => p.differentiate().reflect(),
            Symbol::D2 => p.differentiate().differentiate(),
            Symbol::TPlus => p.shift(&one),
            Symbol::TPlusR if rtl => p.reflect().shift(&one),
            Symbol::TPlusR => p.shift(&one).reflect(),
        }
    }
}

/// Sum of the term contributions over a common denominator (unreduced).
pub fn apply_raw(op: &DunklOperator, p: &Polynomial, ctx: &PrecisionContext) -> Result<RationalFunction> {
    // lcm of the coefficient denominators
    let mut den = Polynomial::one(ctx);
    for (c, _) in &op.terms {
        let d = c.den.monic()?;
        let g = poly_gcd(&den, &d, ctx)?;
        den = den.mul(&d.div_exact(&g, ctx)?);
    }
    let mut num = Polynomial::zero(ctx);
    for (c, s) in &op.terms {
        let l = c.den.leading().recip();
        let cofactor = den.div_exact(&c.den.monic()?, ctx)?;
        let q = op.act(*s, p, ctx);
        num = num.add(&c.num.scale(&l).mul(&cofactor).mul(&q));
    }
    RationalFunction::new(num, den)
}

/// L p as a reduced rational function.
pub fn apply(op: &DunklOperator, p: &Polynomial, ctx: &PrecisionContext) -> Result<RationalFunction> {
    apply_raw(op, p, ctx)?.reduce(ctx)
}

/// Outcome of dividing out the denominator of L p.
#[derive(Clone, Debug)]
pub enum Collapse {
    Polynomial(Polynomial),
    NotPolynomial(f64),
    Ambiguous(f64),
}

/// L p when the singular parts cancel.
pub fn apply_polynomial(op: &DunklOperator, p: &Polynomial, ctx: &PrecisionContext) -> Result<Collapse> {
    let r = apply_raw(op, p, ctx)?;
    let (q, rem) = r.num.div_rem(&r.den)?;
    // compare the remainder against the size of the individual contributions
    let scale = r.num.norm().max(&Float::with_val(ctx.prec(), p.norm() * r.den.norm())).clone();
    let ratio = if scale.is_zero() { 0.0 } else { (rem.norm() / &scale).to_f64() };
    Ok(match classify_zero(&rem.norm(), &scale, ctx) {
        ZeroClass::Zero => Collapse::Polynomial(q.scale(&r.den.leading().recip()).trimmed()),
        ZeroClass::Ambiguous => Collapse::Ambiguous(ratio),
        ZeroClass::NonZero => Collapse::NotPolynomial(ratio),
    })
}

/// Result of checking L P_n = λ_n P_n.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub family: FamilyId,
    pub n: u32,
    pub eigenvalue: (f64, f64),
    /// ‖L P_n − λ_n P_n‖ / ‖λ_n P_n‖ (‖P_n‖ when λ_n = 0).
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
    pub detail: String,
}

/// Relative tolerance of the eigen check: 10^(−digits+10).
pub const EIGEN_SHIFT: i32 = 10;

pub fn verify_eigen(p: &Params, n: u32, free: Option<&CNum>, ctx: &PrecisionContext) -> Result<EigenCheck> {
    let sys = eigen_system(p, free, ctx)?;
    let pn = generate(p, n, ctx)?.pop().expect("nonempty");
    check_eigen_with(&sys.operator, &pn, &sys.eigenvalue(n, ctx), p.family(), n, ctx)
}

pub fn check_eigen_with(
    op: &DunklOperator,
    pn: &Polynomial,
    lambda: &CNum,
    family: FamilyId,
    n: u32,
    ctx: &PrecisionContext,
) -> Result<EigenCheck> {
    let tol = ctx.tol_f64(EIGEN_SHIFT);
    let lp = pn.scale(lambda);
    let mut scale = lp.norm();
    if lambda.is_zero() {
        scale = pn.norm();
    }
    let base = EigenCheck {
        family,
        n,
        eigenvalue: lambda.to_f64_pair(),
        residual: f64::NAN,
        tolerance: tol,
        status: Status::Fail,
        detail: String::new(),
    };
    Ok(match apply_polynomial(op, pn, ctx)? {
        Collapse::Polynomial(q) => {
            let r = (q.sub(&lp).norm() / scale).to_f64();
            EigenCheck { residual: r, status: Status::from_bool(r <= tol), ..base }
        }
        Collapse::Ambiguous(ratio) => EigenCheck {
            residual: ratio,
            status: Status::Inconclusive,
            detail: "reduction ambiguity: remainder inside the ambiguity band".into(),
            ..base
        },
        Collapse::NotPolynomial(ratio) => EigenCheck {
            residual: ratio,
            status: Status::Fail,
            detail: "singular parts do not cancel".into(),
            ..base
        },
    })
}

/// Which reading of S⁺R makes the eigen-equation hold.
#[derive(Clone, Debug, Serialize)]
pub struct ConventionReport {
    pub family: FamilyId,
    pub right_to_left: Vec<bool>,
    pub left_to_right: Vec<bool>,
    pub chosen: Convention,
}

/// Tests both compositions of S⁺R on n = 1, 2, 3.
pub fn resolve_composition_convention(p: &Params, ctx: &PrecisionContext) -> Result<ConventionReport> {
    let f = p.family();
    if !matches!(
        f,
        FamilyId::ContinuousBannaiIto | FamilyId::ContinuousMinus1Hahn1 | FamilyId::ContinuousMinus1Hahn2
    ) {
        return Err(Error::Unsupported { family: f.id().into(), what: "S+R composition question".into() });
    }
    let sys = eigen_system(p, None, ctx)?;
    let ps = generate(p, 3, ctx)?;
    let mut res = [Vec::new(), Vec::new()];
    for (k, conv) in [Convention::RightToLeft, Convention::LeftToRight].into_iter().enumerate() {
        let op = sys.operator.clone().with_convention(conv);
        for n in 1..=3u32 {
            let c = check_eigen_with(&op, &ps[n as usize], &sys.eigenvalue(n, ctx), f, n, ctx)?;
            res[k].push(c.status == Status::Pass);
        }
    }
    let [rtl, ltr] = res;
    let chosen = if rtl.iter().all(|b| *b) {
        Convention::RightToLeft
    } else if ltr.iter().all(|b| *b) {
        Convention::LeftToRight
    } else {
        return Err(Error::BothConventionsFail(f.id().into()));
    };
    Ok(ConventionReport { family: f, right_to_left: rtl, left_to_right: ltr, chosen })
}

/// Matrix of L in the basis P_0 … P_N: column n holds the expansion of L P_n.
pub fn operator_matrix(p: &Params, nmax: u32, free: Option<&CNum>, ctx: &PrecisionContext) -> Result<Vec<Vec<CNum>>> {
    let sys = eigen_system(p, free, ctx)?;
    let ps = generate(p, nmax, ctx)?;
    let size = nmax as usize + 1;
    let mut m = vec![vec![ctx.zero(); size]; size];
    for n in 0..size {
        let q = match apply_polynomial(&sys.operator, &ps[n], ctx)? {
            Collapse::Polynomial(q) => q,
            Collapse::Ambiguous(r) => return Err(Error::ReductionAmbiguity { ratio: r }),
            Collapse::NotPolynomial(r) => {
                return Err(Error::NotDivisible(format!("L P_{n} is not a polynomial (remainder {r:.3e})")))
            }
        };
        // peel off leading terms against the monic basis
        let mut rest = q;
        for k in (0..size).rev() {
            let c = rest.coeff(k).cloned().unwrap_or_else(|| ctx.zero());
            if !c.is_zero() {
                rest = rest.sub(&ps[k].scale(&c));
            }
            m[k][n] = c;
        }
        if rest.norm() > ctx.tol(EIGEN_SHIFT) * ps[n].norm() * 1e6f64 {
            return Err(Error::NotDivisible(format!("L P_{n} leaves the span of P_0..P_{nmax}")));
        }
    }
    Ok(m)
}

/// Largest off-diagonal and diagonal deviation (relative to max |λ_n|, at least 1).
pub fn matrix_diagonality(
    m: &[Vec<CNum>],
    lambdas: &[CNum],
    ctx: &PrecisionContext,
) -> (f64, f64) {
    let mut scale = Float::with_val(ctx.prec(), 1);
    for l in lambdas {
        let a = l.abs();
        if a > scale {
            scale = a;
        }
    }
    let mut off = Float::with_val(ctx.prec(), 0);
    let mut diag = Float::with_val(ctx.prec(), 0);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                let d = (v - &lambdas[i]).abs();
                if d > diag {
                    diag = d;
                }
            } else {
                let d = v.abs();
                if d > off {
                    off = d;
                }
            }
        }
    }
    ((off / &scale).to_f64(), (diag / &scale).to_f64())
}

/// max |L_σ P − L_0 P − σ/2 (P − RP)| / ‖P‖ over P_0 … P_N (GSBI and SBI).
pub fn sigma_shift_residual(p: &Params, nmax: u32, sigma: &CNum, ctx: &PrecisionContext) -> Result<f64> {
    let zero = ctx.zero();
    let l0 = eigen_system(p, Some(&zero), ctx)?.operator;
    let ls = eigen_system(p, Some(sigma), ctx)?.operator;
    let mut worst = 0.0f64;
    for pn in generate(p, nmax, ctx)? {
        let a = apply_raw(&ls, &pn, ctx)?;
        let b = apply_raw(&l0, &pn, ctx)?;
        let lhs = a.sub(&b);
        let rhs = pn.sub(&pn.reflect()).scale(&(sigma / 2));
        let d = lhs.num.sub(&lhs.den.mul(&rhs));
        let r = (d.norm() / (lhs.den.norm() * pn.norm())).to_f64();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// max over x of |coef(S⁻R)(x) − conj(coef(S⁺R)(x))| / |coef(S⁺R)(x)|.
pub fn conjugation_residual(op: &DunklOperator, xs: &[Float], ctx: &PrecisionContext) -> Option<f64> {
    let a = op.coefficient(Symbol::SPlusR)?;
    let b = op.coefficient(Symbol::SMinusR)?;
    let mut worst = 0.0f64;
    for x in xs {
        let z = ctx.from_real(x);
        let va = a.evaluate(&z);
        let vb = b.evaluate(&z);
        let r = ((&vb - &va.conj()).abs() / va.abs()).to_f64();
        worst = worst.max(r);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_reflection() {
        let c = PrecisionContext::default();
        let one = RationalFunction::constant(c.one(), &c);
        let op = DunklOperator::new(c.i()).term(one, Symbol::I);
        let p = Polynomial::from_reals(&[1.0, 2.0, 3.0], &c);
        match apply_polynomial(&op, &p, &c).unwrap() {
            Collapse::Polynomial(q) => assert!(q.approx_eq(&p, &c)),
            _ => panic!(),
        }
    }

    #[test]
    fn shift_composition_readings() {
        let c = PrecisionContext::default();
        let one = RationalFunction::constant(c.one(), &c);
        let p = Polynomial::x(&c);
        let rtl = DunklOperator::new(c.i()).term(one.clone(), Symbol::SPlusR);
        let ltr = rtl.clone().with_convention(Convention::LeftToRight);
        let a = apply(&rtl, &p, &c).unwrap().num;
        let b = apply(&ltr, &p, &c).unwrap().num;
        // f(−x−i) = −x − i and f(−x+i) = −x + i
        assert!(a.approx_eq(&Polynomial::linear(-c.i(), -c.one()), &c));
        assert!(b.approx_eq(&Polynomial::linear(c.i(), -c.one()), &c));
        // ∂x R f = −f′(−x)
        let d = DunklOperator::new(c.i()).term(one, Symbol::DR);
        let q = apply(&d, &Polynomial::from_reals(&[0.0, 0.0, 1.0], &c), &c).unwrap().num;
        assert!(q.approx_eq(&Polynomial::from_reals(&[0.0, 2.0], &c), &c));
    }
}
