//! Configurable-precision complex arithmetic, complex gamma, Pochhammer symbols
//! and terminating hypergeometric sums.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Decimal digits of working precision carried on top of the requested digits.
pub const GUARD_DIGITS: u32 = 20;
pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 15;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Precision settings passed explicitly to every computation.
///
/// `digits` is the contract precision; arithmetic runs with
/// `digits + GUARD_DIGITS` decimal digits so that the contract tolerances
/// (all of the form `10^(-digits+k)`) sit well above rounding noise.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    digits: u32,
    prec: u32,
    bernoulli: Arc<Vec<Float>>,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Precision(format!(
                "digits must be at least {MIN_DIGITS}, got {digits}"
            )));
        }
        let prec = ((digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32;
        let bernoulli = Arc::new(bernoulli_table(prec + 64, stirling_terms(prec)));
        Ok(PrecisionContext {
            digits,
            prec,
            bernoulli,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// 10^(-digits): the contract unit roundoff.
    pub fn unit_roundoff(&self) -> Float {
        self.tol(0)
    }

    /// 10^(-digits + shift).
    pub fn tol(&self, shift: i32) -> Float {
        let e = -(self.digits as i32) + shift;
        Float::with_val(self.prec, Float::i_pow_u(10, e.unsigned_abs()))
            .pow_sign(e < 0)
    }

    pub fn tol_f64(&self, shift: i32) -> f64 {
        10f64.powi(-(self.digits as i32) + shift)
    }

    pub fn real(&self, v: f64) -> Float {
        Float::with_val(self.prec, v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub fn zero(&self) -> CNum {
        CNum::from_int(self, 0)
    }

    pub fn one(&self) -> CNum {
        CNum::from_int(self, 1)
    }

    pub fn i(&self) -> CNum {
        CNum(Complex::with_val(self.prec, (0, 1)))
    }

    pub fn int(&self, v: i64) -> CNum {
        CNum::from_int(self, v)
    }

    /// Exact rational p/q rounded once.
    pub fn ratio(&self, p: i64, q: i64) -> CNum {
        let r = Rational::from((p, q));
        CNum(Complex::with_val(self.prec, (r, 0)))
    }

    pub fn cnum(&self, re: &Float, im: &Float) -> CNum {
        CNum(Complex::with_val(self.prec, (re, im)))
    }

    pub fn from_real(&self, re: &Float) -> CNum {
        CNum(Complex::with_val(self.prec, (re, 0)))
    }

    /// Parses a decimal real at full precision (never through f64).
    pub fn parse_real(&self, s: &str) -> Result<Float> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p = self.parse_real(p)?;
            let q = self.parse_real(q)?;
            if q.is_zero() {
                return Err(Error::BadParameter(format!("zero denominator in `{s}`")));
            }
            return Ok(p / q);
        }
        let parsed =
            Float::parse(t).map_err(|e| Error::BadParameter(format!("`{s}`: {e}")))?;
        Ok(Float::with_val(self.prec, parsed))
    }

    /// Parses `re`, `re+imi`, `re-imi`, `imi` or `i` forms.
    pub fn parse_cnum(&self, s: &str) -> Result<CNum> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::BadParameter("empty value".into()));
        }
        if !t.ends_with('i') {
            return Ok(self.from_real(&self.parse_real(&t)?));
        }
        let body = &t[..t.len() - 1];
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && !matches!(bytes[k - 1], b'e' | b'E')
            {
                split = Some(k);
                break;
            }
        }
        let imag = |txt: &str| -> Result<Float> {
            match txt {
                "" | "+" => Ok(self.real(1.0)),
                "-" => Ok(self.real(-1.0)),
                _ => self.parse_real(txt),
            }
        };
        match split {
            Some(k) => {
                let re = self.parse_real(&body[..k])?;
                let im = imag(&body[k..])?;
                Ok(self.cnum(&re, &im))
            }
            None => Ok(self.cnum(&self.real(0.0), &imag(body)?)),
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(DEFAULT_DIGITS).expect("default digits are valid")
    }
}

trait PowSign {
    fn pow_sign(self, negative: bool) -> Self;
}

impl PowSign for Float {
    fn pow_sign(self, negative: bool) -> Float {
        if negative {
            self.recip()
        } else {
            self
        }
    }
}

/// Complex number at the working precision of the context that made it.
#[derive(Clone, Debug, PartialEq)]
pub struct CNum(pub Complex);

impl CNum {
    pub fn from_int(ctx: &PrecisionContext, v: i64) -> CNum {
        CNum(Complex::with_val(ctx.prec, (v, 0)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn conj(&self) -> CNum {
        CNum(self.0.clone().conj())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    /// |z|².
    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.0.norm_ref())
    }

    pub fn is_zero(&self) -> bool {
        self.re().is_zero() && self.im().is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im().is_zero()
    }

    pub fn recip(&self) -> CNum {
        CNum(self.0.clone().recip())
    }

    pub fn sqrt(&self) -> CNum {
        CNum(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> CNum {
        CNum(self.0.clone().exp())
    }

    pub fn ln(&self) -> CNum {
        CNum(self.0.clone().ln())
    }

    pub fn sin(&self) -> CNum {
        CNum(self.0.clone().sin())
    }

    pub fn cos(&self) -> CNum {
        CNum(self.0.clone().cos())
    }

    pub fn powu(&self, n: u32) -> CNum {
        let mut acc = CNum(Complex::with_val(self.prec(), (1, 0)));
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, n: i64) -> CNum {
        if n >= 0 {
            self.powu(n as u32)
        } else {
            self.powu(n.unsigned_abs() as u32).recip()
        }
    }

    /// Principal-branch power.
    pub fn pow(&self, w: &CNum) -> CNum {
        if w.is_real() && w.re().is_integer() {
            if let Some(k) = w.re().to_i32_saturating() {
                if k.unsigned_abs() <= 4096 {
                    return self.powi(k as i64);
                }
            }
        }
        (&self.ln() * w).exp()
    }

    pub fn scale(&self, s: &Float) -> CNum {
        CNum(Complex::with_val(self.prec(), &self.0 * s))
    }

    pub fn mul_i(&self) -> CNum {
        let (re, im) = self.0.clone().into_real_imag();
        CNum(Complex::with_val(self.prec(), (-im, re)))
    }

    /// `Some(n)` when the value is exactly the non-positive integer −n.
    pub fn as_nonpositive_integer(&self) -> Option<u32> {
        if !self.is_real() || !self.re().is_integer() || self.re().cmp0() == Some(Ordering::Greater)
        {
            return None;
        }
        let v = Float::with_val(self.prec(), -self.re());
        v.to_u32_saturating().filter(|&n| Float::with_val(64, n) == v)
    }

    pub fn is_finite(&self) -> bool {
        self.re().is_finite() && self.im().is_finite()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re().to_f64(), self.im().to_f64())
    }

    /// Relative distance |a − b| / max(|a|, |b|, floor).
    pub fn rel_dist(&self, other: &CNum, floor: &Float) -> Float {
        let d = (self - other).abs();
        let mut s = self.abs();
        let o = other.abs();
        if o > s {
            s = o;
        }
        if *floor > s {
            s = floor.clone();
        }
        if s.is_zero() {
            return d;
        }
        d / s
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&CNum> for &CNum {
            type Output = CNum;
            fn $m(self, o: &CNum) -> CNum {
                let p = self.prec().max(o.prec());
                CNum(Complex::with_val(p, &self.0 $op &o.0))
            }
        }
        impl $tr<CNum> for CNum {
            type Output = CNum;
            fn $m(self, o: CNum) -> CNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CNum> for CNum {
            type Output = CNum;
            fn $m(self, o: &CNum) -> CNum {
                (&self).$m(o)
            }
        }
        impl $tr<CNum> for &CNum {
            type Output = CNum;
            fn $m(self, o: CNum) -> CNum {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

macro_rules! intop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<i64> for &CNum {
            type Output = CNum;
            fn $m(self, o: i64) -> CNum {
                CNum(Complex::with_val(self.prec(), &self.0 $op o))
            }
        }
        impl $tr<i64> for CNum {
            type Output = CNum;
            fn $m(self, o: i64) -> CNum {
                (&self).$m(o)
            }
        }
    };
}

intop!(Add, add, +);
intop!(Sub, sub, -);
intop!(Mul, mul, *);
intop!(Div, div, /);

impl Neg for CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum(-self.0)
    }
}

impl Neg for &CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum(-self.0.clone())
    }
}

impl AddAssign<&CNum> for CNum {
    fn add_assign(&mut self, o: &CNum) {
        self.0 += &o.0;
    }
}

impl SubAssign<&CNum> for CNum {
    fn sub_assign(&mut self, o: &CNum) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&CNum> for CNum {
    fn mul_assign(&mut self, o: &CNum) {
        self.0 *= &o.0;
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{}", format_cnum(self, d))
    }
}

/// Decimal rendering with `digits` significant digits, trailing zeros trimmed.
pub fn format_real(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits.max(1)));
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.as_str()),
    };
    let (m, e) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let point = m.find('.').unwrap_or(m.len()) as i64 + e;
    let mut d: String = m.chars().filter(|c| c.is_ascii_digit()).collect();
    while d.len() > 1 && d.ends_with('0') {
        d.pop();
    }
    let lead = d.chars().take_while(|&c| c == '0').count();
    let d = if lead == d.len() { "0".to_string() } else { d[lead..].to_string() };
    let point = point - lead as i64;
    let mut out = String::new();
    if point <= -5 || point > 21 {
        out.push_str(&d[..1]);
        if d.len() > 1 {
            out.push('.');
            out.push_str(&d[1..]);
        }
        out.push_str(&format!("e{}", point - 1));
    } else if point <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-point) as usize));
        out.push_str(&d);
    } else if point as usize >= d.len() {
        out.push_str(&d);
        out.push_str(&"0".repeat(point as usize - d.len()));
    } else {
        out.push_str(&d[..point as usize]);
        out.push('.');
        out.push_str(&d[point as usize..]);
    }
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

/// `re`, `re+imi` or `re-imi` with `digits` significant digits per part.
pub fn format_cnum(z: &CNum, digits: usize) -> String {
    let re = format_real(z.re(), digits);
    if z.im().is_zero() {
        return re;
    }
    let im = format_real(z.im(), digits);
    if z.re().is_zero() {
        return format!("{im}i");
    }
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn stirling_terms(prec: u32) -> usize {
    (prec as usize / 4).max(24)
}

fn stirling_radius(prec: u32) -> f64 {
    (prec as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI)).ceil() + 4.0
}

/// B_2, B_4, …, B_{2k} via the exact binomial recurrence.
fn bernoulli_table(prec: u32, k: usize) -> Vec<Float> {
    let m = 2 * k;
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::from(1));
    for n in 1..=m {
        let mut s = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(n as u32 + 1, j as u32));
            s += Rational::from(c) * bj;
        }
        b.push(-s / Rational::from(n as u32 + 1));
    }
    (1..=k).map(|j| Float::with_val(prec, &b[2 * j])).collect()
}

/// ln Γ(z) on Re z ≥ 1/2 by shifted Stirling series; the imaginary part is
/// only defined modulo 2π.
fn ln_gamma_right(z: &CNum, ctx: &PrecisionContext) -> CNum {
    let scale_bits = {
        let (re, im) = z.to_f64_pair();
        let m = re.abs() + im.abs() + 2.0;
        (m * m.ln()).log2().max(0.0) as u32
    };
    let wp = ctx.prec + 32 + scale_bits;
    let r = stirling_radius(ctx.prec);
    let (zr, zi) = z.to_f64_pair();
    let shift = if zi.abs() < r {
        ((r * r - zi * zi).sqrt() - zr).ceil().max(0.0) as u32
    } else {
        0
    };
    let mut w = CNum(Complex::with_val(wp, &z.0));
    let mut prod = CNum(Complex::with_val(wp, (1, 0)));
    for _ in 0..shift {
        prod = &prod * &w;
        w.0 += 1;
    }
    let half = Float::with_val(wp, 0.5);
    let ln_w = w.ln();
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let mut s = CNum(Complex::with_val(wp, &w.0 - &half)) * &ln_w - &w;
    s.0 += Float::with_val(wp, two_pi.ln()) / 2u32;
    let w2 = &w * &w;
    let mut wpow = w.clone();
    let cutoff = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    for (k, b) in ctx.bernoulli.iter().enumerate() {
        let kk = (2 * k + 2) as u32;
        let term = CNum(Complex::with_val(wp, (b, 0))) / &wpow;
        let term = term.scale(&Float::with_val(wp, kk * (kk - 1)).recip());
        let small = term.abs() < cutoff;
        s += &term;
        if small {
            break;
        }
        wpow = &wpow * &w2;
    }
    if shift > 0 {
        s -= &prod.ln();
    }
    s
}

fn check_pole(z: &CNum) -> Result<()> {
    if z.as_nonpositive_integer().is_some() {
        return Err(Error::Pole(format_cnum(z, 12)));
    }
    Ok(())
}

/// ln Γ(z) modulo 2πi.
pub fn ln_gamma(z: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    check_pole(z)?;
    let half = Float::with_val(ctx.prec, 0.5);
    if *z.re() >= half {
        let v = ln_gamma_right(z, ctx);
        return Ok(CNum(Complex::with_val(ctx.prec, &v.0)));
    }
    // Γ(z) = π / (sin(πz) Γ(1−z))
    let wp = ctx.prec + 32;
    let pi = Float::with_val(wp, Constant::Pi);
    let zz = CNum(Complex::with_val(wp, &z.0));
    let s = zz.scale(&pi).sin();
    let one = CNum(Complex::with_val(wp, (1, 0)));
    let rest = ln_gamma_right(&(&one - &zz), ctx);
    let v = CNum(Complex::with_val(wp, (pi.ln(), 0))) - s.ln() - rest;
    Ok(CNum(Complex::with_val(ctx.prec, &v.0)))
}

/// Γ(z) on the complex plane minus the poles.
pub fn gamma(z: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    check_pole(z)?;
    if z.is_real() && z.re().is_integer() {
        if let Some(n) = z.re().to_u32_saturating() {
            if n <= 2000 {
                let f = Integer::from(Integer::factorial(n - 1));
                return Ok(CNum(Complex::with_val(ctx.prec, (f, 0))));
            }
        }
    }
    Ok(ln_gamma(z, ctx)?.exp())
}

/// |Γ(z)|² without forming Γ(z).
pub fn abs_gamma_sq(z: &CNum, ctx: &PrecisionContext) -> Result<Float> {
    let l = ln_gamma(z, ctx)?;
    Ok(Float::with_val(ctx.prec, l.re() * 2u32).exp())
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: &CNum, n: u32) -> CNum {
    let mut acc = CNum(Complex::with_val(a.prec(), (1, 0)));
    let mut t = a.clone();
    for _ in 0..n {
        acc = &acc * &t;
        t.0 += 1;
    }
    acc
}

/// n! as a CNum.
pub fn factorial(n: u32, ctx: &PrecisionContext) -> CNum {
    CNum(Complex::with_val(ctx.prec, (Integer::from(Integer::factorial(n)), 0)))
}

/// Finite sum Σ_{k=0}^{n} ∏(num)_k / ∏(den)_k · z^k / k! where −n is the
/// terminating numerator.
pub fn hyp_pfq_terminating(
    numerators: &[CNum],
    denominators: &[CNum],
    z: &CNum,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let n = numerators
        .iter()
        .filter_map(|a| a.as_nonpositive_integer())
        .min()
        .ok_or(Error::NotTerminating)?;
    for d in denominators {
        if let Some(m) = d.as_nonpositive_integer() {
            if m < n {
                return Err(Error::ZeroDenominator {
                    param: format_cnum(d, 12),
                    k: m + 1,
                });
            }
        }
    }
    let mut term = ctx.one();
    let mut sum = ctx.one();
    for k in 0..n {
        let kk = ctx.int(k as i64);
        for a in numerators {
            term = &term * &(a + &kk);
        }
        for d in denominators {
            term = &term / &(d + &kk);
        }
        term = &term * z / ctx.int(k as i64 + 1);
        sum += &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn gamma_small_values() {
        let c = ctx();
        let g = gamma(&c.int(5), &c).unwrap();
        assert_eq!(g, c.int(24));
        let half = gamma(&c.ratio(1, 2), &c).unwrap();
        let sp = c.pi().sqrt();
        assert!(half.rel_dist(&c.from_real(&sp), &c.real(0.0)) < c.tol(2));
    }

    #[test]
    fn gamma_pole() {
        let c = ctx();
        assert!(matches!(gamma(&c.int(-3), &c), Err(Error::Pole(_))));
        assert!(matches!(gamma(&c.zero(), &c), Err(Error::Pole(_))));
    }

    #[test]
    fn gamma_modulus_at_one_plus_i() {
        // |Γ(1+i)|² = π / sinh π
        let c = ctx();
        let z = c.one() + c.i();
        let v = abs_gamma_sq(&z, &c).unwrap();
        let pi = c.pi();
        let expect = pi.clone() / pi.sinh();
        let e = (v - &expect).abs() / expect;
        assert!(e < c.tol(2), "{e}");
    }

    #[test]
    fn gamma_matches_mpfr_on_reals() {
        let c = ctx();
        for s in ["0.1", "0.37", "2.5", "7.25", "31.9", "-1.5", "-3.7"] {
            let x = c.parse_real(s).unwrap();
            let g = gamma(&c.from_real(&x), &c).unwrap();
            let r = x.clone().gamma();
            let e = (g.re().clone() - &r).abs() / r.clone().abs();
            assert!(e < c.tol(2), "{s}: {e}");
            assert!(g.im().clone().abs() < c.tol(2) * r.abs());
        }
    }

    #[test]
    fn pochhammer_values() {
        let c = ctx();
        assert_eq!(pochhammer(&c.int(7), 0), c.one());
        assert_eq!(pochhammer(&c.int(3), 2), c.int(12));
        assert_eq!(pochhammer(&c.ratio(1, 2), 3), c.ratio(15, 8));
    }

    #[test]
    fn pfq_small() {
        let c = ctx();
        let x = c.real(1.0);
        let v = hyp_pfq_terminating(&[c.int(-1)], &[c.ratio(1, 2)], &c.from_real(&(x.clone() * &x)), &c)
            .unwrap();
        assert_eq!(v, c.int(-1));
        let b = c.ratio(3, 7);
        let cc = c.ratio(5, 3);
        let z = c.ratio(2, 9);
        let v = hyp_pfq_terminating(&[c.int(-1), b.clone()], std::slice::from_ref(&cc), &z, &c).unwrap();
        let expect = c.one() - &b * &z / &cc;
        assert!(v.rel_dist(&expect, &c.real(1.0)) < c.tol(0));
        let four = hyp_pfq_terminating(
            &[c.zero(), c.int(2), c.int(3), c.int(4)],
            &[c.int(5), c.int(6), c.int(7)],
            &c.one(),
            &c,
        )
        .unwrap();
        assert_eq!(four, c.one());
    }

    #[test]
    fn pfq_zero_denominator() {
        let c = ctx();
        let r = hyp_pfq_terminating(&[c.int(-3)], &[c.int(-1)], &c.one(), &c);
        assert!(matches!(r, Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn parse_forms() {
        let c = ctx();
        let z = c.parse_cnum("0.7+0.4i").unwrap();
        assert_eq!(format_cnum(&z, 10), "0.7+0.4i");
        let z = c.parse_cnum("-2.5e-1-i").unwrap();
        assert_eq!(format_cnum(&z, 10), "-0.25-1i");
        let z = c.parse_cnum("1/3").unwrap();
        assert!(z.rel_dist(&c.ratio(1, 3), &c.real(1.0)) < c.tol(-10));
        assert!(PrecisionContext::new(10).is_err());
    }

    #[test]
    fn tolerance_scale() {
        let c = ctx();
        assert!((c.tol(10).to_f64() / 1e-40 - 1.0).abs() < 1e-12);
    }
}
