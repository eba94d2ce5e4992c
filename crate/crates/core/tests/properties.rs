use minus_one::families::{eigen_system, generate, recurrence, weight_spec, FamilyId, Params};
use minus_one::numerics::{gamma, hyp_pfq_terminating, pochhammer, CNum, PrecisionContext};
use minus_one::operators::{apply, conjugation_residual, sigma_shift_residual};
use minus_one::orthogonality::{favard_scan, integrate, moment_check};
use minus_one::polynomials::{Polynomial, RationalFunction};
use proptest::prelude::*;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn c2(c: &PrecisionContext, re: f64, im: f64) -> CNum {
    c.cnum(&c.real(re), &c.real(im))
}

fn rel(a: &CNum, b: &CNum) -> f64 {
    let d = (a - b).abs();
    let s = a.abs().max(&b.abs()).clone();
    if s.is_zero() {
        0.0
    } else {
        (d / s).to_f64()
    }
}

fn poly(c: &PrecisionContext, v: &[(f64, f64)]) -> Polynomial {
    Polynomial::new(v.iter().map(|&(a, b)| c2(c, a, b)).collect(), c)
}

fn coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 1..7)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn gamma_recurrence(re in 0.1..5.0f64, im in -8.0..8.0f64) {
        prop_assume!(re.hypot(im) <= 10.0);
        let c = ctx();
        let z = c2(&c, re, im);
        let g1 = gamma(&(&z + 1), &c).unwrap();
        let g0 = gamma(&z, &c).unwrap();
        let lhs = (&g1 - &(&z * &g0)).abs().to_f64();
        prop_assert!(lhs <= c.tol_f64(4) * g1.abs().to_f64());
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn gamma_reflection(re in -3.5..3.5f64, im in -3.0..3.0f64) {
        prop_assume!((re - re.round()).abs() > 0.05 || im.abs() > 0.05);
        let c = ctx();
        let z = c2(&c, re, im);
        let w = &c.one() - &z;
        let pi = c.from_real(&c.pi());
        let v = &(&(&gamma(&z, &c).unwrap() * &gamma(&w, &c).unwrap()) * &(&z * &pi).sin()) / &pi;
        prop_assert!(rel(&v, &c.one()) <= c.tol_f64(4));
    }

    #[test]
    fn pochhammer_splits(re in -4.0..4.0f64, im in -2.0..2.0f64, m in 0u32..10, n in 0u32..10) {
        let c = ctx();
        let a = c2(&c, re, im);
        let lhs = pochhammer(&a, m + n);
        let rhs = &pochhammer(&a, m) * &pochhammer(&(&a + m as i64), n);
        prop_assert!(rel(&lhs, &rhs) <= c.tol_f64(4));
    }

    #[test]
    fn pfq_matches_termwise_sum(n in 0u32..=10, a in -2.0..2.0f64, b in -2.0..2.0f64, cc in 0.5..3.0f64, d in 0.5..3.0f64, z in -1.0..1.0f64) {
        let c = ctx();
        let num = [c.int(-(n as i64)), c2(&c, a, 0.0), c2(&c, b, 0.0)];
        let den = [c2(&c, cc, 0.0), c2(&c, d, 0.0)];
        let v = hyp_pfq_terminating(&num, &den, &c2(&c, z, 0.0), &c).unwrap().re().to_f64();
        // oracle in doubles
        let (mut term, mut sum, mut scale) = (1.0f64, 1.0f64, 1.0f64);
        for k in 0..n {
            let k = k as f64;
            term *= (k - n as f64) * (a + k) * (b + k) / ((cc + k) * (d + k)) * z / (k + 1.0);
            sum += term;
            scale += term.abs();
        }
        prop_assert!((v - sum).abs() <= 1e-12 * scale);
    }

    #[test]
    fn shift_evaluates_at_offset(p in coeffs(), d in (-2.0..2.0f64, -2.0..2.0f64), x in (-2.0..2.0f64, -2.0..2.0f64)) {
        let c = ctx();
        let p = poly(&c, &p);
        let (d, x) = (c2(&c, d.0, d.1), c2(&c, x.0, x.1));
        let lhs = p.shift(&d).evaluate(&x);
        let rhs = p.evaluate(&(&x + &d));
        let scale = p.coeffs().iter().enumerate().fold(0.0, |s, (k, a)| s + a.abs().to_f64() * (&x + &d).abs().to_f64().powi(k as i32)).max(1.0);
        prop_assert!((&lhs - &rhs).abs().to_f64() <= c.tol_f64(6) * scale);
    }

    #[test]
    fn reflect_is_multiplicative(p in coeffs(), q in coeffs()) {
        let c = ctx();
        let (p, q) = (poly(&c, &p), poly(&c, &q));
        prop_assert!(p.mul(&q).reflect().approx_eq(&p.reflect().mul(&q.reflect()), &c));
    }

    #[test]
    fn leibniz_rule(p in coeffs(), q in coeffs()) {
        let c = ctx();
        let (p, q) = (poly(&c, &p), poly(&c, &q));
        let lhs = p.mul(&q).differentiate();
        let rhs = p.differentiate().mul(&q).add(&p.mul(&q.differentiate()));
        prop_assert!(lhs.sub(&rhs).norm().to_f64() <= c.tol_f64(6) * (1.0 + lhs.norm().to_f64()));
    }

    #[test]
    fn product_over_factor_collapses(p in coeffs(), q in coeffs()) {
        let c = ctx();
        let (p, q) = (poly(&c, &p), poly(&c, &q));
        prop_assume!(!q.is_zero() && q.leading().abs().to_f64() > 0.1);
        let r = RationalFunction::new(p.mul(&q), q).unwrap();
        let back = r.is_polynomial(&c).unwrap().expect("collapses");
        let tol = c.tol_f64(6) * p.norm().to_f64().max(1.0);
        for k in 0..=p.degree().max(back.degree()) {
            let a = p.coeff(k).cloned().unwrap_or_else(|| c.zero());
            let b = back.coeff(k).cloned().unwrap_or_else(|| c.zero());
            prop_assert!((&a - &b).abs().to_f64() <= tol);
        }
    }
}

fn positive() -> impl Strategy<Value = f64> {
    0.2..3.0f64
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn symmetric_families_have_parity(a in positive(), b in positive(), cc in positive(), k in 0usize..6) {
        let c = ctx();
        let p = match k {
            0 => Params::real(FamilyId::GeneralizedSymmetricBannaiIto, &[a, b, cc + 1.0], &c),
            1 => Params::real(FamilyId::SymmetricBannaiIto, &[a, b], &c),
            2 => Params::real(FamilyId::GeneralizedGegenbauer, &[a - 0.9, b], &c),
            3 => Params::real(FamilyId::Gegenbauer, &[a - 0.4], &c),
            4 => Params::real(FamilyId::GeneralizedHermite, &[a - 0.4], &c),
            _ => Params::new(FamilyId::Hermite, vec![]),
        }.unwrap();
        for (n, pn) in generate(&p, 10, &c).unwrap().iter().enumerate() {
            let s = if n % 2 == 0 { pn.clone() } else { pn.neg() };
            prop_assert!(pn.reflect().approx_eq(&s, &c), "{} n={}", p, n);
        }
    }

    #[test]
    fn gamma_reflection_covariance(a in positive(), b in positive(), g in -2.0..2.0f64, mp in any::<bool>()) {
        let c = ctx();
        let (p, gi) = if mp {
            (Params::real(FamilyId::Minus1MeixnerPollaczek, &[a, g], &c).unwrap(), 1)
        } else {
            (Params::real(FamilyId::Chihara, &[a, b, g], &c).unwrap(), 2)
        };
        let q = p.with(gi, -&p[gi]);
        let (ps, qs) = (generate(&p, 10, &c).unwrap(), generate(&q, 10, &c).unwrap());
        for n in 0..=10usize {
            let r = ps[n].reflect();
            let s = if n % 2 == 0 { r } else { r.neg() };
            prop_assert!(qs[n].approx_eq(&s, &c), "{} n={}", p, n);
        }
    }

    #[test]
    fn bannai_ito_favard(a in positive(), b in positive(), g in positive(), d in positive()) {
        let c = ctx();
        let p = Params::real(FamilyId::ContinuousBannaiIto, &[a, b, g, d], &c).unwrap();
        prop_assert!(favard_scan(&p, 200, &c).unwrap().pass);
    }

    #[test]
    fn decomposition_matches_u(a in positive(), b in positive(), g in positive(), k in 0usize..3) {
        let c = ctx();
        let p = match k {
            0 => Params::real(FamilyId::BigMinus1Jacobi, &[a, b, g / 3.5], &c),
            1 => Params::real(FamilyId::LittleMinus1Jacobi, &[a, b], &c),
            _ => Params::real(FamilyId::SpecialLittleMinus1Jacobi, &[a], &c),
        }.unwrap();
        let mut prev: Option<CNum> = None;
        for n in 0..=10 {
            let r = recurrence(&p, n, &c).unwrap();
            let (an, cn) = r.ac.expect("A_n, C_n present");
            if let Some(ap) = prev {
                prop_assert!(rel(&(&ap * &cn), &r.u) <= c.tol_f64(10), "{} n={}", p, n);
            }
            prev = Some(an);
        }
    }

    #[test]
    fn operators_are_linear(p in coeffs(), q in coeffs(), k in 0usize..4, x in -0.9..0.9f64) {
        let c = ctx();
        let fam = match k {
            0 => Params::real(FamilyId::BigMinus1Jacobi, &[1.5, 0.5, 0.25], &c),
            1 => Params::real(FamilyId::ContinuousBannaiIto, &[0.5, 1.0, 1.5, 0.75], &c),
            2 => Params::real(FamilyId::GeneralizedSymmetricBannaiIto, &[1.0, 1.0, 1.0], &c),
            _ => Params::real(FamilyId::ContinuousMinus1Hahn1, &[0.5, 1.0, 1.5], &c),
        }.unwrap();
        let op = eigen_system(&fam, None, &c).unwrap().operator;
        let (p, q) = (poly(&c, &p), poly(&c, &q));
        let z = c2(&c, x, 0.3);
        let lhs = apply(&op, &p.add(&q), &c).unwrap().evaluate(&z);
        let rhs = &apply(&op, &p, &c).unwrap().evaluate(&z) + &apply(&op, &q, &c).unwrap().evaluate(&z);
        let scale = lhs.abs().to_f64().max(1.0);
        prop_assert!((&lhs - &rhs).abs().to_f64() <= c.tol_f64(10) * scale);
    }

    #[test]
    fn sigma_shift_law(a in positive(), b in positive(), s in -3.0..3.0f64, sbi in any::<bool>()) {
        let c = ctx();
        let p = if sbi {
            Params::real(FamilyId::SymmetricBannaiIto, &[a, b], &c)
        } else {
            Params::real(FamilyId::GeneralizedSymmetricBannaiIto, &[a, b, 1.0], &c)
        }.unwrap();
        let r = sigma_shift_residual(&p, 8, &c2(&c, s, 0.0), &c).unwrap();
        prop_assert!(r <= c.tol_f64(10));
    }

    #[test]
    fn hahn_shift_coefficients_conjugate(a in positive(), b in positive(), g in positive(), two in any::<bool>(), xs in prop::collection::vec(-5.0..5.0f64, 20)) {
        let c = ctx();
        let f = if two { FamilyId::ContinuousMinus1Hahn2 } else { FamilyId::ContinuousMinus1Hahn1 };
        let p = Params::real(f, &[a, b, g], &c).unwrap();
        let op = eigen_system(&p, None, &c).unwrap().operator;
        let xs: Vec<Float> = xs.iter().map(|&x| c.real(x)).collect();
        let r = conjugation_residual(&op, &xs, &c).expect("S+R and S-R terms");
        prop_assert!(r <= c.tol_f64(10));
    }
}

#[test]
fn moments_agree_with_recurrence() {
    let c = ctx();
    for p in [Params::real(FamilyId::LittleMinus1Jacobi, &[1.5, 0.5], &c).unwrap(), Params::new(FamilyId::Hermite, vec![]).unwrap()] {
        let r = moment_check(&p, 6, &c).unwrap();
        assert!(r <= c.tol_f64(10), "{p}: {r:e}");
    }
}

#[test]
fn halving_tolerance_stays_within_estimate() {
    let c = ctx();
    for p in [
        Params::new(FamilyId::Hermite, vec![]).unwrap(),
        Params::real(FamilyId::BigMinus1Jacobi, &[1.5, 0.5, 0.25], &c).unwrap(),
        Params::real(FamilyId::SymmetricBannaiIto, &[0.75, 1.25], &c).unwrap(),
    ] {
        let w = weight_spec(&p, &c).unwrap();
        let one = |x: &Float| Float::with_val(x.prec(), 1);
        let t = c.tol(16);
        let coarse = integrate(&w, one, &t, &c).unwrap();
        let fine = integrate(&w, one, &(t / 2u32), &c).unwrap();
        assert!(coarse.converged && fine.converged);
        let d = Float::with_val(c.prec(), &coarse.value[0] - &fine.value[0]).abs() / coarse.value[0].clone().abs();
        assert!(d.to_f64() <= coarse.error_estimate.max(c.tol_f64(10)), "{p}: {:e} vs {:e}", d.to_f64(), coarse.error_estimate);
    }
}
