//! Dense polynomials and rational functions over [`CNum`].

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numerics::{pochhammer, CNum, PrecisionContext};

/// Coefficients lowest power first. Family members are kept monic.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<CNum>,
}

/// Family members P_n are monic polynomials; the alias names that role.
pub type MonicPolynomial = Polynomial;

/// Outcome of the two-threshold zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroClass {
    Zero,
    Ambiguous,
    NonZero,
}

/// Relative size below which a remainder is zero: 10^(−digits+10).
pub const ZERO_SHIFT: i32 = 10;
/// Upper edge of the ambiguity band: 10^(−digits+14).
pub const AMBIGUOUS_SHIFT: i32 = 14;
/// Relative tolerance of polynomial equality: 10^(−digits+8).
pub const EQUALITY_SHIFT: i32 = 8;

/// Classifies `residual / scale` against the zero and ambiguity thresholds.
pub fn classify_zero(residual: &Float, scale: &Float, ctx: &PrecisionContext) -> ZeroClass {
    if residual.is_zero() {
        return ZeroClass::Zero;
    }
    let s = if scale.is_zero() {
        Float::with_val(ctx.prec(), 1)
    } else {
        scale.clone()
    };
    let r = Float::with_val(ctx.prec(), residual / &s);
    if r < ctx.tol(ZERO_SHIFT) {
        ZeroClass::Zero
    } else if r < ctx.tol(AMBIGUOUS_SHIFT) {
        ZeroClass::Ambiguous
    } else {
        ZeroClass::NonZero
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<CNum>, ctx: &PrecisionContext) -> Polynomial {
        if coeffs.is_empty() {
            coeffs.push(ctx.zero());
        }
        Polynomial { coeffs }
    }

    pub fn zero(ctx: &PrecisionContext) -> Polynomial {
        Polynomial { coeffs: vec![ctx.zero()] }
    }

    pub fn one(ctx: &PrecisionContext) -> Polynomial {
        Polynomial { coeffs: vec![ctx.one()] }
    }

    pub fn constant(c: CNum) -> Polynomial {
        Polynomial { coeffs: vec![c] }
    }

    /// The polynomial x.
    pub fn x(ctx: &PrecisionContext) -> Polynomial {
        Polynomial { coeffs: vec![ctx.zero(), ctx.one()] }
    }

    /// c0 + c1 x.
    pub fn linear(c0: CNum, c1: CNum) -> Polynomial {
        Polynomial { coeffs: vec![c0, c1] }
    }

    pub fn from_reals(vals: &[f64], ctx: &PrecisionContext) -> Polynomial {
        Polynomial::new(
            vals.iter().map(|&v| ctx.from_real(&ctx.real(v))).collect(),
            ctx,
        )
    }

    pub fn coeffs(&self) -> &[CNum] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&CNum> {
        self.coeffs.get(k)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &CNum {
        self.coeffs.last().expect("never empty")
    }

    fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    /// Drops exactly-zero top coefficients.
    pub fn trimmed(mut self) -> Polynomial {
        while self.coeffs.len() > 1 && self.leading().is_zero() {
            self.coeffs.pop();
        }
        self
    }

    /// Drops top coefficients that are negligible against the coefficient norm.
    pub fn trimmed_rel(mut self, ctx: &PrecisionContext) -> Polynomial {
        let norm = self.norm();
        while self.coeffs.len() > 1
            && classify_zero(&self.leading().abs(), &norm, ctx) == ZeroClass::Zero
        {
            self.coeffs.pop();
        }
        self
    }

    /// Max coefficient modulus.
    pub fn norm(&self) -> Float {
        let mut m = Float::with_val(self.prec(), 0);
        for c in &self.coeffs {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial { coeffs }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let p = self.prec().max(o.prec());
        let mut out: Vec<CNum> = (0..self.coeffs.len() + o.coeffs.len() - 1)
            .map(|_| CNum(Complex::with_val(p, 0)))
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j].0 += &a.0 * &b.0;
            }
        }
        Polynomial { coeffs: out }
    }

    pub fn scale(&self, s: &CNum) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, k: u32, ctx: &PrecisionContext) -> Polynomial {
        let mut acc = Polynomial::one(ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at a complex point.
    pub fn evaluate(&self, z: &CNum) -> CNum {
        let mut acc = self.leading().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc * z + c;
        }
        acc
    }

    /// Horner evaluation of the real parts at a real point.
    pub fn evaluate_real(&self, x: &Float) -> Float {
        let mut acc = self.leading().re().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc *= x;
            acc += c.re();
        }
        acc
    }

    /// Coefficient of x^k multiplied by (−1)^k.
    pub fn reflect(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn differentiate(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial { coeffs: vec![CNum(Complex::with_val(self.prec(), 0))] };
        }
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| CNum(Complex::with_val(self.prec(), &c.0 * k as u32)))
                .collect(),
        }
    }

    /// q(x) = p(x + delta) by repeated synthetic division (Taylor shift).
    pub fn shift(&self, delta: &CNum) -> Polynomial {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let t = &c[k + 1] * delta;
                c[k] += &t;
            }
        }
        Polynomial { coeffs: c }
    }

    /// p(s·x).
    pub fn scale_var(&self, s: &CNum) -> Polynomial {
        let mut f = CNum(Complex::with_val(self.prec(), 1));
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &f);
            f = &f * s;
        }
        Polynomial { coeffs }
    }

    /// p(q(x)).
    pub fn compose(&self, q: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::constant(self.leading().clone());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(q).add(&Polynomial::constant(c.clone()));
        }
        acc
    }

    pub fn conj(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let l = self.leading();
        if l.is_zero() {
            return Err(Error::NotDivisible("zero leading coefficient".into()));
        }
        let inv = l.recip();
        let mut p = self.scale(&inv);
        let last = p.coeffs.len() - 1;
        p.coeffs[last] = CNum(Complex::with_val(self.prec(), 1));
        Ok(p)
    }

    /// Long division; the divisor's leading coefficient must be nonzero.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let d = d.clone().trimmed();
        let lead = d.leading().clone();
        if lead.is_zero() {
            return Err(Error::NotDivisible("division by zero polynomial".into()));
        }
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((
                Polynomial { coeffs: vec![CNum(Complex::with_val(self.prec(), 0))] },
                self.clone(),
            ));
        }
        let nq = r.len() - dd;
        let mut q: Vec<CNum> = vec![CNum(Complex::with_val(self.prec(), 0)); nq];
        for k in (0..nq).rev() {
            let t = &r[k + dd] / &lead;
            for j in 0..=dd {
                let s = &t * &d.coeffs[j];
                r[k + j] -= &s;
            }
            r[k + dd] = CNum(Complex::with_val(self.prec(), 0));
            q[k] = t;
        }
        r.truncate(dd.max(1));
        Ok((Polynomial { coeffs: q }, Polynomial { coeffs: r }))
    }

    /// Quotient when `d` divides exactly under the two-threshold zero test.
    pub fn div_exact(&self, d: &Polynomial, ctx: &PrecisionContext) -> Result<Polynomial> {
        let (q, r) = self.div_rem(d)?;
        match classify_zero(&r.norm(), &self.norm(), ctx) {
            ZeroClass::Zero => Ok(q),
            ZeroClass::Ambiguous => Err(Error::ReductionAmbiguity {
                ratio: (r.norm() / self.norm()).to_f64(),
            }),
            ZeroClass::NonZero => Err(Error::NotDivisible(format!(
                "remainder norm {:.3e}",
                r.norm().to_f64()
            ))),
        }
    }

    /// max_k |a_k − b_k| / max(‖a‖, ‖b‖); degrees may differ.
    pub fn rel_diff(&self, o: &Polynomial) -> Float {
        let d = self.sub(o).norm();
        let mut s = self.norm();
        let on = o.norm();
        if on > s {
            s = on;
        }
        if s.is_zero() {
            return d;
        }
        d / s
    }

    /// Coefficient-wise equality to relative 10^(−digits+8).
    pub fn approx_eq(&self, o: &Polynomial, ctx: &PrecisionContext) -> bool {
        self.rel_diff(o) <= ctx.tol(EQUALITY_SHIFT)
    }

    /// Largest |Im| over coefficients.
    pub fn max_imag(&self) -> Float {
        let mut m = Float::with_val(self.prec(), 0);
        for c in &self.coeffs {
            let a = Float::with_val(self.prec(), c.im().abs_ref());
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Rising factorial (p)_k with p a polynomial: p (p+1) … (p+k−1).
    pub fn pochhammer(&self, k: u32, ctx: &PrecisionContext) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial::constant(pochhammer(&self.coeffs[0], k));
        }
        let mut acc = Polynomial::one(ctx);
        let mut t = self.clone();
        for _ in 0..k {
            acc = acc.mul(&t);
            t.coeffs[0].0 += 1;
        }
        acc
    }
}

/// num/den with nonzero denominator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::NotDivisible("zero denominator".into()));
        }
        Ok(RationalFunction { num, den: den.trimmed() })
    }

    pub fn from_poly(p: Polynomial, ctx: &PrecisionContext) -> RationalFunction {
        RationalFunction { num: p, den: Polynomial::one(ctx) }
    }

    pub fn constant(c: CNum, ctx: &PrecisionContext) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(c), ctx)
    }

    pub fn zero(ctx: &PrecisionContext) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero(ctx), ctx)
    }

    fn same_den(&self, o: &RationalFunction) -> bool {
        self.den.coeffs.len() == o.den.coeffs.len()
            && self.den.coeffs.iter().zip(&o.den.coeffs).all(|(a, b)| a == b)
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.same_den(o) {
            return RationalFunction { num: self.num.add(&o.num), den: self.den.clone() };
        }
        RationalFunction {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFunction {
        RationalFunction { num: self.num.mul(p), den: self.den.clone() }
    }

    pub fn scale(&self, s: &CNum) -> RationalFunction {
        RationalFunction { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Conjugates every coefficient (the rational function f̄(x) for real x).
    pub fn conj(&self) -> RationalFunction {
        RationalFunction { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn evaluate(&self, z: &CNum) -> CNum {
        self.num.evaluate(z) / self.den.evaluate(z)
    }

    /// Cancels the common factor found by a Euclidean gcd under the
    /// two-threshold rule and makes the denominator monic.
    pub fn reduce(&self, ctx: &PrecisionContext) -> Result<RationalFunction> {
        let num = self.num.clone().trimmed_rel(ctx);
        let den = self.den.clone().trimmed_rel(ctx);
        if num.is_zero() {
            return Ok(RationalFunction { num: Polynomial::zero(ctx), den: Polynomial::one(ctx) });
        }
        let g = poly_gcd(&num, &den, ctx)?;
        let (num, den) = if g.degree() > 0 {
            (num.div_exact(&g, ctx)?, den.div_exact(&g, ctx)?)
        } else {
            (num, den)
        };
        let l = den.leading().recip();
        Ok(RationalFunction { num: num.scale(&l), den: den.monic()? })
    }

    /// The polynomial num/den when the division is exact, `None` when the
    /// remainder is clearly nonzero, error inside the ambiguity band.
    pub fn is_polynomial(&self, ctx: &PrecisionContext) -> Result<Option<Polynomial>> {
        let den = self.den.clone().trimmed_rel(ctx);
        match self.num.div_exact(&den, ctx) {
            Ok(q) => Ok(Some(q)),
            Err(Error::NotDivisible(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Monic gcd by the Euclidean algorithm with the two-threshold remainder test.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial, ctx: &PrecisionContext) -> Result<Polynomial> {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.monic()?, b.monic()?)
    } else {
        (b.monic()?, a.monic()?)
    };
    loop {
        if b.degree() == 0 {
            return Ok(Polynomial::one(ctx));
        }
        let (_, r) = a.div_rem(&b)?;
        let scale = a.norm().max(&b.norm()).clone();
        let r = r.trimmed();
        match classify_zero(&r.norm(), &scale, ctx) {
            ZeroClass::Zero => return b.monic(),
            ZeroClass::Ambiguous => {
                return Err(Error::ReductionAmbiguity { ratio: (r.norm() / scale).to_f64() })
            }
            ZeroClass::NonZero => {
                let r = r.trimmed_rel(ctx);
                a = b;
                b = r.monic()?;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn p(v: &[f64], c: &PrecisionContext) -> Polynomial {
        Polynomial::from_reals(v, c)
    }

    #[test]
    fn arithmetic() {
        let c = ctx();
        assert_eq!(Polynomial::x(&c).mul(&Polynomial::x(&c)), p(&[0.0, 0.0, 1.0], &c));
        assert!(p(&[-1.0, 1.0], &c).add(&p(&[1.0, 1.0], &c)).approx_eq(&p(&[0.0, 2.0], &c), &c));
        assert_eq!(p(&[1.0, 0.0, 1.0], &c).scale(&c.int(2)), p(&[2.0, 0.0, 2.0], &c));
    }

    #[test]
    fn evaluation() {
        let c = ctx();
        let h2 = p(&[-0.5, 0.0, 1.0], &c);
        assert_eq!(h2.evaluate(&c.zero()), c.ratio(-1, 2));
        assert_eq!(h2.evaluate(&c.one()), c.ratio(1, 2));
        assert_eq!(Polynomial::x(&c).evaluate(&c.i()), c.i());
    }

    #[test]
    fn reflect_and_derivative() {
        let c = ctx();
        assert_eq!(p(&[0.0, 1.0, 1.0], &c).reflect(), p(&[0.0, -1.0, 1.0], &c));
        assert_eq!(p(&[0.0, 0.0, 0.0, 1.0], &c).differentiate(), p(&[0.0, 0.0, 3.0], &c));
        assert!(p(&[4.0], &c).differentiate().is_zero());
    }

    #[test]
    fn shifts() {
        let c = ctx();
        let x = Polynomial::x(&c);
        assert_eq!(x.shift(&c.i()), Polynomial::linear(c.i(), c.one()));
        assert_eq!(p(&[0.0, 0.0, 1.0], &c).shift(&c.one()), p(&[1.0, 2.0, 1.0], &c));
        let q = p(&[0.3, -1.0, 2.0, 0.5], &c);
        assert!(q.shift(&c.i()).shift(&-c.i()).approx_eq(&q, &c));
    }

    #[test]
    fn rational_reduction() {
        let c = ctx();
        let r = RationalFunction::new(p(&[-1.0, 0.0, 1.0], &c), p(&[-1.0, 1.0], &c)).unwrap();
        let q = r.is_polynomial(&c).unwrap().unwrap();
        assert!(q.approx_eq(&p(&[1.0, 1.0], &c), &c));
        let r = RationalFunction::new(Polynomial::x(&c), p(&[0.0, 0.0, 1.0], &c)).unwrap();
        assert!(r.is_polynomial(&c).unwrap().is_none());
        let red = r.reduce(&c).unwrap();
        assert_eq!(red.den.degree(), 1);
        assert_eq!(red.num.degree(), 0);
        let g = c.ratio(1, 4);
        let num = Polynomial::linear(-&g, c.one()).mul(&Polynomial::linear(g.clone(), c.one()));
        let r = RationalFunction::new(num, Polynomial::linear(g.clone(), c.one())).unwrap();
        let q = r.is_polynomial(&c).unwrap().unwrap();
        assert!(q.approx_eq(&Polynomial::linear(-g, c.one()), &c));
    }

    #[test]
    fn reduce_is_idempotent() {
        let c = ctx();
        let num = p(&[1.0, 3.0, 2.0], &c);
        let den = p(&[0.0, 1.0, 2.0, 1.0], &c);
        let r1 = RationalFunction::new(num, den).unwrap().reduce(&c).unwrap();
        let r2 = r1.reduce(&c).unwrap();
        assert!(r1.num.approx_eq(&r2.num, &c) && r1.den.approx_eq(&r2.den, &c));
        assert_eq!(r1.den.degree(), 2);
    }

    #[test]
    fn ambiguity_band() {
        let c = ctx();
        let eps = c.tol(12);
        let num = Polynomial::new(vec![c.from_real(&eps), c.zero(), c.one()], &c);
        let r = RationalFunction::new(num, Polynomial::x(&c)).unwrap();
        assert!(matches!(r.is_polynomial(&c), Err(Error::ReductionAmbiguity { .. })));
    }
}
