//! The scheme as data: edges between families, with exact, limit and
//! kernel-partner verification and a graph export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{generate, lqj_printed_b, recurrence, recurrence_table, FamilyId, Params, RecurrencePair};
use crate::numerics::{format_cnum, CNum, PrecisionContext};
use crate::operators::resolve_composition_convention;
use crate::polynomials::Polynomial;
use crate::report::{CheckResult, Status};

use FamilyId::*;

/// Exact edges must agree to 10^(−digits+10).
pub const EXACT_SHIFT: i32 = 10;
/// Extrapolated limit error bound.
pub const LIMIT_TOL: f64 = 1e-8;
/// Default degree bound for edge checks.
pub const EDGE_N: u32 = 10;
/// Degree bound for ladder runs.
pub const LADDER_N: u32 = 8;
/// Ladder points that must decrease monotonically at the end of a run.
pub const MIN_TAIL: usize = 4;
/// Slack on the fitted order: a finite ladder cannot separate 1 − 10^(−3) from 1.
pub const ORDER_FIT_TOL: f64 = 1e-3;
pub const RANDOM_POINTS: usize = 20;
const SEED: u64 = 0x5eed_2013;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Specialization,
    Limit,
    QLimit,
    Christoffel,
    Geronimus,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Specialization => "specialization",
            EdgeKind::Limit => "limit",
            EdgeKind::QLimit => "q-limit",
            EdgeKind::Christoffel => "christoffel",
            EdgeKind::Geronimus => "geronimus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "h->0")]
    HToZero,
    #[serde(rename = "h->inf")]
    HToInfinity,
    #[serde(rename = "eps->0")]
    EpsToZero,
}

impl Direction {
    /// Geometric default ladder.
    pub fn ladder(self) -> Vec<&'static str> {
        match self {
            Direction::Exact => vec![],
            Direction::HToInfinity => vec!["1e1", "1e2", "1e3", "1e4", "1e5", "1e6"],
            _ => vec!["1e-1", "1e-2", "1e-3", "1e-4", "1e-5", "1e-6"],
        }
    }
}

/// A concrete source/target pair. Target P_n(x) is compared with s^(−n)·Q_n(s·x).
#[derive(Clone, Debug)]
pub struct Instance {
    pub source: Params,
    pub target: Params,
    pub scale: CNum,
}

type Build = fn(&[CNum], &CNum, &PrecisionContext) -> Result<Instance>;

#[derive(Clone, Debug, Serialize)]
pub struct SchemeEdge {
    pub source: FamilyId,
    pub target: FamilyId,
    pub kind: EdgeKind,
    pub direction: Direction,
    /// Names of the free parameters the edge is evaluated at.
    pub base: &'static [&'static str],
    pub map: &'static str,
    pub scaling: &'static str,
    pub anchor: String,
    pub ladder: Vec<&'static str>,
    #[serde(skip)]
    pub points: &'static [&'static [&'static str]],
    #[serde(skip)]
    build: Build,
}

impl SchemeEdge {
    pub fn id(&self) -> String {
        format!("{}:{}", self.source.id(), self.target.id())
    }

    pub fn instance(&self, base: &[CNum], h: &CNum, ctx: &PrecisionContext) -> Result<Instance> {
        if base.len() != self.base.len() {
            return Err(Error::BadParameter(format!(
                "edge {} takes {} parameters ({}), got {}",
                self.id(),
                self.base.len(),
                self.base.join(", "),
                base.len()
            )));
        }
        (self.build)(base, h, ctx)
    }

    /// Replaces the default ladder; used where the asymptotic regime starts late.
    pub fn with_ladder(mut self, ladder: &[&'static str]) -> SchemeEdge {
        self.ladder = ladder.to_vec();
        self
    }

    pub fn fixture_points(&self, ctx: &PrecisionContext) -> Result<Vec<Vec<CNum>>> {
        self.points
            .iter()
            .map(|pt| pt.iter().map(|s| ctx.parse_cnum(s)).collect())
            .collect()
    }
}

fn edge(
    source: FamilyId,
    target: FamilyId,
    kind: EdgeKind,
    direction: Direction,
    base: &'static [&'static str],
    map: &'static str,
    scaling: &'static str,
    points: &'static [&'static [&'static str]],
    build: Build,
) -> SchemeEdge {
    let anchor = format!("edge:{}->{}", source.id(), target.id());
    let ladder = direction.ladder();
    SchemeEdge { source, target, kind, direction, base, map, scaling, anchor, ladder, points, build }
}

fn inst(sf: FamilyId, sv: Vec<CNum>, tf: FamilyId, tv: Vec<CNum>, scale: CNum) -> Result<Instance> {
    Ok(Instance { source: Params::new(sf, sv)?, target: Params::new(tf, tv)?, scale })
}

fn ex(z: &CNum) -> CNum {
    z.exp()
}

fn half(ctx: &PrecisionContext) -> CNum {
    ctx.ratio(1, 2)
}

/// −e^ε
fn q_of(e: &CNum) -> CNum {
    -ex(e)
}

/// c with −c/√(1−c²) = γ, and s = √(1−c²).
fn chihara_c(g: &CNum, ctx: &PrecisionContext) -> (CNum, CNum) {
    let r = (ctx.one() + &(g * g)).sqrt();
    (-(g / &r), r.recip())
}

const LONG_SMALL: &[&str] = &["1e-1", "1e-2", "1e-3", "1e-4", "1e-5", "1e-6", "1e-7", "1e-8"];
const LONG_BIG: &[&str] = &["1e1", "1e2", "1e3", "1e4", "1e5", "1e6", "1e7", "1e8"];
const P_AB: &[&[&str]] = &[&["1", "2"], &["1/2", "3/2"], &["2", "1/2"]];
const P_ABC: &[&[&str]] = &[&["1", "2", "1/4"], &["3/2", "1/2", "1/3"], &["1/2", "3/2", "3/5"]];
const P_CHI: &[&[&str]] = &[&["1/2", "3/2", "1/4"], &["0", "1", "1/2"], &["1", "2", "-1/3"]];
const P_K: &[&[&str]] = &[&["3/10", "2/5", "1/2"], &["1/4", "1", "1/2"], &["1", "1/3", "1/4"]];
const P_MP: &[&[&str]] = &[&["1", "1/2"], &["1/2", "1/4"], &["3/2", "1"]];
const P_A: &[&[&str]] = &[&["1/2"], &["1"], &["3/2"]];
const P_NONE: &[&[&str]] = &[&[]];

/// Every edge of the scheme, in a fixed order.
pub fn edge_catalog() -> Vec<SchemeEdge> {
    use Direction::*;
    use EdgeKind::*;
    vec![
        // q → −1
        edge(LittleQJacobiDilated, LittleMinus1Jacobi, QLimit, EpsToZero, &["alpha", "beta"],
            "a = -e^(eps*alpha), b = -e^(eps*beta), q = -e^eps", "1", P_AB,
            |v, e, ctx| inst(LittleQJacobiDilated, vec![-ex(&(e * &v[0])), -ex(&(e * &v[1])), q_of(e)],
                LittleMinus1Jacobi, v.to_vec(), ctx.one())),
        edge(LittleQJacobiDilated, GeneralizedGegenbauer, QLimit, EpsToZero, &["alpha", "beta"],
            "a = -e^(eps*(2alpha+1)), b = e^(2eps*beta), q = -e^eps", "1", P_AB,
            |v, e, ctx| inst(LittleQJacobiDilated,
                vec![-ex(&(e * &(&v[0] * 2 + 1))), ex(&(e * &v[1] * 2)), q_of(e)],
                GeneralizedGegenbauer, v.to_vec(), ctx.one())),
        edge(BigQJacobi, BigMinus1Jacobi, QLimit, EpsToZero, &["alpha", "beta", "c"],
            "a = -e^(eps*alpha), b = -e^(eps*beta), c = c, q = -e^eps", "1", P_ABC,
            |v, e, ctx| inst(BigQJacobi, vec![-ex(&(e * &v[0])), -ex(&(e * &v[1])), v[2].clone(), q_of(e)],
                BigMinus1Jacobi, v.to_vec(), ctx.one())),
        edge(BigQJacobi, Chihara, QLimit, EpsToZero, &["alpha", "beta", "gamma"],
            "a = e^(2eps*beta), b = -e^(eps*(2alpha+1)), c = -gamma/sqrt(1+gamma^2), q = -e^eps",
            "sqrt(1-c^2)", P_CHI,
            |v, e, ctx| {
                let (c, s) = chihara_c(&v[2], ctx);
                inst(BigQJacobi, vec![ex(&(e * &v[1] * 2)), -ex(&(e * &(&v[0] * 2 + 1))), c, q_of(e)],
                    Chihara, v.to_vec(), s)
            }),
        edge(ContinuousQHahn, ContinuousMinus1Hahn1, QLimit, EpsToZero, &["alpha", "beta", "gamma"],
            "a = e^(eps*(2alpha+1)), b = e^(eps*(2gamma+1)), phi = pi/2 + 2eps*beta, q = -e^eps", "1", P_K,
            |v, e, ctx| qhahn(v, e, ctx, false)),
        edge(ContinuousQHahn, ContinuousMinus1Hahn2, QLimit, EpsToZero, &["alpha", "beta", "gamma"],
            "a = e^(eps*(2alpha+1)), b = -e^(eps*(2gamma+1)), phi = pi/2 + 2eps*beta, q = -e^eps", "1", P_K,
            |v, e, ctx| qhahn(v, e, ctx, true)),
        edge(QMeixnerPollaczek, Minus1MeixnerPollaczek, QLimit, EpsToZero, &["alpha", "gamma"],
            "a = -e^(-eps*(alpha+1/2)), phi = pi/2 + sqrt(eps)*gamma, q = -e^(-eps)", "sqrt(1+q)", P_MP,
            |v, e, ctx| qmp(v, e, ctx, false))
        .with_ladder(LONG_SMALL),
        // limits
        edge(ContinuousBannaiIto, BigMinus1Jacobi, Limit, HToZero, &["alpha", "beta", "gamma", "delta"],
            "CBI(alpha, beta/h, gamma, delta/h) -> J(4alpha+1, 4gamma+1, -delta/beta)", "2beta/h",
            &[&["1/4", "1", "1/4", "1/2"], &["1/2", "1/3", "1", "1/4"], &["1", "1", "1/2", "-1/2"]],
            |v, h, _| inst(ContinuousBannaiIto, vec![v[0].clone(), &v[1] / h, v[2].clone(), &v[3] / h],
                BigMinus1Jacobi, vec![&v[0] * 4 + 1, &v[2] * 4 + 1, -(&v[3] / &v[1])], &v[1] * 2 / h)),
        edge(ContinuousComplementaryBannaiIto, Chihara, Limit, HToInfinity, &["alpha", "beta", "gamma"],
            "CCBI((beta+1)/2, h*sqrt(1+gamma^2), alpha+1, h*gamma)", "h", P_CHI,
            |v, h, ctx| {
                let r = (ctx.one() + &(&v[2] * &v[2])).sqrt();
                inst(ContinuousComplementaryBannaiIto,
                    vec![(&v[1] + 1) / 2, h * &r, &v[0] + 1, h * &v[2]], Chihara, v.to_vec(), h.clone())
            }),
        edge(GeneralizedSymmetricBannaiIto, SymmetricBannaiIto, Limit, HToInfinity, &["a", "b"],
            "GSBI(a, b, h)", "1", &[&["1/2", "1"], &["0.6+0.5i", "0.6-0.5i"], &["2", "3/2"]],
            |v, h, ctx| inst(GeneralizedSymmetricBannaiIto, vec![v[0].clone(), v[1].clone(), h.clone()],
                SymmetricBannaiIto, v.to_vec(), ctx.one())),
        edge(GeneralizedSymmetricBannaiIto, GeneralizedGegenbauer, Limit, HToInfinity, &["alpha", "beta"],
            "GSBI((beta+1)/2 + ih, (beta+1)/2 - ih, alpha+1)", "h", P_AB,
            |v, h, _| {
                let m = (&v[1] + 1) / 2;
                let ih = h.mul_i();
                inst(GeneralizedSymmetricBannaiIto, vec![&m + &ih, &m - &ih, &v[0] + 1],
                    GeneralizedGegenbauer, v.to_vec(), h.clone())
            }),
        edge(ContinuousMinus1Hahn1, Minus1MeixnerPollaczek, Limit, HToInfinity, &["alpha", "gamma"],
            "K1((2alpha-1)/4, sqrt(h/2)*gamma, h)", "sqrt(2h)", P_MP,
            |v, h, ctx| k_to_mp(v, h, ctx, ContinuousMinus1Hahn1, false))
        .with_ladder(LONG_BIG),
        edge(ContinuousMinus1Hahn2, Minus1MeixnerPollaczek, Limit, HToInfinity, &["alpha", "gamma"],
            "K2((2alpha-1)/4, sqrt(h/2)*gamma, h)", "sqrt(2h)", P_MP,
            |v, h, ctx| k_to_mp(v, h, ctx, ContinuousMinus1Hahn2, false))
        .with_ladder(LONG_BIG),
        edge(Chihara, Minus1MeixnerPollaczek, Limit, HToInfinity, &["alpha", "gamma"],
            "C(alpha-1/2, h, gamma/sqrt(h))", "1/sqrt(h)", P_MP,
            |v, h, ctx| {
                let r = h.sqrt();
                inst(Chihara, vec![&v[0] - &half(ctx), h.clone(), &v[1] / &r], Minus1MeixnerPollaczek,
                    v.to_vec(), r.recip())
            }),
        edge(GeneralizedGegenbauer, GeneralizedHermite, Limit, HToInfinity, &["alpha"],
            "G(alpha-1/2, h)", "1/sqrt(h)", P_A,
            |v, h, ctx| inst(GeneralizedGegenbauer, vec![&v[0] - &half(ctx), h.clone()], GeneralizedHermite,
                v.to_vec(), h.sqrt().recip())),
        edge(Gegenbauer, Hermite, Limit, HToInfinity, &[], "G(h)", "1/sqrt(h)", P_NONE,
            |_, h, _| inst(Gegenbauer, vec![h.clone()], Hermite, vec![], h.sqrt().recip())),
        edge(SymmetricBannaiIto, GeneralizedHermite, Limit, HToInfinity, &["alpha"],
            "S(alpha+1/2, h)", "sqrt(h)", P_A,
            |v, h, ctx| inst(SymmetricBannaiIto, vec![&v[0] + &half(ctx), h.clone()], GeneralizedHermite,
                v.to_vec(), h.sqrt())),
        // exact specializations
        edge(ContinuousBannaiIto, ContinuousMinus1Hahn1, Specialization, Exact, &["alpha", "beta", "gamma"],
            "delta = beta", "1", P_K,
            |v, _, ctx| inst(ContinuousBannaiIto, vec![v[0].clone(), v[1].clone(), v[2].clone(), v[1].clone()],
                ContinuousMinus1Hahn1, v.to_vec(), ctx.one())),
        edge(ContinuousBannaiIto, ContinuousMinus1Hahn2, Specialization, Exact, &["alpha", "beta", "gamma"],
            "delta = -beta", "1", P_K,
            |v, _, ctx| inst(ContinuousBannaiIto, vec![v[0].clone(), v[1].clone(), v[2].clone(), -v[1].clone()],
                ContinuousMinus1Hahn2, v.to_vec(), ctx.one())),
        edge(BigMinus1Jacobi, LittleMinus1Jacobi, Specialization, Exact, &["alpha", "beta"],
            "c = 0; J(alpha, beta, 0) = P(beta, alpha)", "1", P_AB,
            |v, _, ctx| inst(BigMinus1Jacobi, vec![v[0].clone(), v[1].clone(), ctx.zero()],
                LittleMinus1Jacobi, vec![v[1].clone(), v[0].clone()], ctx.one())),
        edge(Chihara, GeneralizedGegenbauer, Specialization, Exact, &["alpha", "beta"],
            "gamma = 0", "1", P_AB,
            |v, _, ctx| inst(Chihara, vec![v[0].clone(), v[1].clone(), ctx.zero()],
                GeneralizedGegenbauer, v.to_vec(), ctx.one())),
        edge(LittleMinus1Jacobi, SpecialLittleMinus1Jacobi, Specialization, Exact, &["alpha"],
            "P(0, alpha) = S(alpha)", "1", P_A,
            |v, _, ctx| inst(LittleMinus1Jacobi, vec![ctx.zero(), v[0].clone()],
                SpecialLittleMinus1Jacobi, v.to_vec(), ctx.one())),
        edge(GeneralizedGegenbauer, Gegenbauer, Specialization, Exact, &["alpha"],
            "G(-1/2, alpha-1/2) = G(alpha)", "1", P_A,
            |v, _, ctx| inst(GeneralizedGegenbauer, vec![-half(ctx), &v[0] - &half(ctx)], Gegenbauer,
                v.to_vec(), ctx.one())),
        edge(Minus1MeixnerPollaczek, GeneralizedHermite, Specialization, Exact, &["alpha"],
            "gamma = 0", "1", P_A,
            |v, _, ctx| inst(Minus1MeixnerPollaczek, vec![v[0].clone(), ctx.zero()], GeneralizedHermite,
                v.to_vec(), ctx.one())),
        edge(GeneralizedHermite, Hermite, Specialization, Exact, &[], "alpha = 0", "1", P_NONE,
            |_, _, ctx| inst(GeneralizedHermite, vec![ctx.zero()], Hermite, vec![], ctx.one())),
        edge(ContinuousMinus1Hahn1, SymmetricBannaiIto, Specialization, Exact, &["alpha", "gamma"],
            "beta = 0; K(alpha, 0, gamma) = S(2alpha+1, 2gamma+1)", "1", P_MP,
            |v, _, ctx| inst(ContinuousMinus1Hahn1, vec![v[0].clone(), ctx.zero(), v[1].clone()],
                SymmetricBannaiIto, vec![&v[0] * 2 + 1, &v[1] * 2 + 1], ctx.one())),
        edge(ContinuousMinus1Hahn2, SymmetricBannaiIto, Specialization, Exact, &["alpha", "gamma"],
            "beta = 0; K(alpha, 0, gamma) = S(2alpha+1, 2gamma+1)", "1", P_MP,
            |v, _, ctx| inst(ContinuousMinus1Hahn2, vec![v[0].clone(), ctx.zero(), v[1].clone()],
                SymmetricBannaiIto, vec![&v[0] * 2 + 1, &v[1] * 2 + 1], ctx.one())),
        edge(ContinuousComplementaryBannaiIto, GeneralizedSymmetricBannaiIto, Specialization, Exact,
            &["a1", "b1", "a2"], "b2 = 0; GSBI(a1 + i b1, a1 - i b1, a2)", "1",
            &[&["1/2", "1/3", "1"], &["3/4", "1", "1/2"], &["1", "0", "1"]],
            |v, _, ctx| {
                let ib = v[1].mul_i();
                inst(ContinuousComplementaryBannaiIto, vec![v[0].clone(), v[1].clone(), v[2].clone(), ctx.zero()],
                    GeneralizedSymmetricBannaiIto, vec![&v[0] + &ib, &v[0] - &ib, v[2].clone()], ctx.one())
            }),
        edge(BigQJacobi, LittleQJacobiDilated, Specialization, Exact, &["a", "b", "q"],
            "c = 0; big(a, b, 0; q) = little(b, a; q)", "1",
            &[&["-7/10", "-4/5", "-9/10"], &["3/10", "7/10", "-3/5"], &["-1/2", "1/4", "1/2"]],
            |v, _, ctx| inst(BigQJacobi, vec![v[0].clone(), v[1].clone(), ctx.zero(), v[2].clone()],
                LittleQJacobiDilated, vec![v[1].clone(), v[0].clone(), v[2].clone()], ctx.one())),
        // kernel partners at x = 1
        edge(LittleMinus1Jacobi, GeneralizedGegenbauer, Christoffel, Exact, &["alpha", "beta"],
            "G((alpha-1)/2, (beta+1)/2)", "1", P_AB,
            |v, _, ctx| inst(LittleMinus1Jacobi, v.to_vec(), GeneralizedGegenbauer,
                vec![(&v[0] - 1) / 2, (&v[1] + 1) / 2], ctx.one())),
        edge(GeneralizedGegenbauer, LittleMinus1Jacobi, Geronimus, Exact, &["alpha", "beta"],
            "P(2alpha+1, 2beta-1)", "1", &[&["0", "1"], &["1/2", "3/2"], &["1", "2"]],
            |v, _, ctx| inst(GeneralizedGegenbauer, v.to_vec(), LittleMinus1Jacobi,
                vec![&v[0] * 2 + 1, &v[1] * 2 - 1], ctx.one())),
        edge(SpecialLittleMinus1Jacobi, Gegenbauer, Christoffel, Exact, &["alpha"],
            "G((alpha+2)/2)", "1", P_A,
            |v, _, ctx| inst(SpecialLittleMinus1Jacobi, v.to_vec(), Gegenbauer, vec![(&v[0] + 2) / 2], ctx.one())),
        edge(Gegenbauer, SpecialLittleMinus1Jacobi, Geronimus, Exact, &["alpha"],
            "S(2alpha-2)", "1", &[&["3/2"], &["2"], &["5/2"]],
            |v, _, ctx| inst(Gegenbauer, v.to_vec(), SpecialLittleMinus1Jacobi, vec![&v[0] * 2 - 2], ctx.one())),
        edge(BigMinus1Jacobi, Chihara, Christoffel, Exact, &["alpha", "beta", "c"],
            "C((beta-1)/2, (alpha+1)/2, -c/s), s = sqrt(1-c^2)", "sqrt(1-c^2)", P_ABC,
            |v, _, ctx| {
                let s = (ctx.one() - &(&v[2] * &v[2])).sqrt();
                let g = -(&v[2] / &s);
                inst(BigMinus1Jacobi, v.to_vec(), Chihara, vec![(&v[1] - 1) / 2, (&v[0] + 1) / 2, g], s)
            }),
        edge(Chihara, BigMinus1Jacobi, Geronimus, Exact, &["alpha", "beta", "gamma"],
            "J(2beta-1, 2alpha+1, c), c = -gamma/sqrt(1+gamma^2)", "sqrt(1-c^2)",
            &[&["1", "3/2", "1/4"], &["3/2", "1", "1/2"], &["2", "2", "-1/3"]],
            |v, _, ctx| {
                let (c, s) = chihara_c(&v[2], ctx);
                inst(Chihara, v.to_vec(), BigMinus1Jacobi, vec![&v[1] * 2 - 1, &v[0] * 2 + 1, c], s)
            }),
    ]
}

fn qhahn(v: &[CNum], e: &CNum, ctx: &PrecisionContext, second: bool) -> Result<Instance> {
    let b = ex(&(e * &(&v[2] * 2 + 1)));
    let phi = ctx.from_real(&ctx.pi()) / 2 + &(e * &v[1] * 2);
    let (b, tf) = if second { (-b, ContinuousMinus1Hahn2) } else { (b, ContinuousMinus1Hahn1) };
    inst(ContinuousQHahn, vec![ex(&(e * &(&v[0] * 2 + 1))), b, phi, q_of(e)], tf, v.to_vec(), ctx.one())
}

/// `printed` uses q = −e^ε with a = −e^(ε(α+1/2)) instead of the e^(−ε) reading.
fn qmp(v: &[CNum], e: &CNum, ctx: &PrecisionContext, printed: bool) -> Result<Instance> {
    let sgn = if printed { e.clone() } else { -e.clone() };
    let a = -ex(&(&sgn * &(&v[0] + &half(ctx))));
    let q = -ex(&sgn);
    let phi = ctx.from_real(&ctx.pi()) / 2 + &(e.sqrt() * &v[1]);
    let s = (&q + 1).sqrt();
    inst(QMeixnerPollaczek, vec![a, phi, q], Minus1MeixnerPollaczek, v.to_vec(), s)
}

/// `printed` takes β = sqrt(hγ/2) rather than sqrt(h/2)·γ.
fn k_to_mp(v: &[CNum], h: &CNum, ctx: &PrecisionContext, fam: FamilyId, printed: bool) -> Result<Instance> {
    let beta = if printed { (h * &v[1] / 2).sqrt() } else { (h / 2).sqrt() * &v[1] };
    let a = (&v[0] * 2 - 1) / 4;
    let _ = ctx;
    inst(fam, vec![a, beta, h.clone()], Minus1MeixnerPollaczek, v.to_vec(), (h * 2).sqrt())
}

pub fn find_edge(spec: &str) -> Result<SchemeEdge> {
    let (a, b) = spec.split_once(':').ok_or_else(|| Error::UnknownEdge(spec.into()))?;
    let src: FamilyId = a.parse().map_err(|_| Error::UnknownEdge(spec.into()))?;
    let tgt: FamilyId = b.parse().map_err(|_| Error::UnknownEdge(spec.into()))?;
    edge_catalog()
        .into_iter()
        .find(|e| e.source == src && e.target == tgt)
        .ok_or_else(|| Error::UnknownEdge(spec.into()))
}

fn f64_of(x: &rug::Float) -> f64 {
    x.to_f64()
}

fn describe(base: &[&str], v: &[CNum]) -> String {
    let s: Vec<String> = base.iter().zip(v).map(|(k, x)| format!("{k}={}", format_cnum(x, 8))).collect();
    format!("({})", s.join(", "))
}

/// b_n/s, u_n/s² for n < N, then the coefficients of s^(−n) P_n(s x) for n ≤ N.
fn quantities(p: &Params, s: &CNum, nmax: u32, ctx: &PrecisionContext) -> Result<Vec<CNum>> {
    let rec = recurrence_table(p, nmax - 1, ctx)?;
    let s2 = s * s;
    let mut out = Vec::new();
    for (n, r) in rec.iter().enumerate() {
        out.push(&r.b / s);
        if n > 0 {
            out.push(&r.u / &s2);
        }
    }
    for (n, poly) in generate(p, nmax, ctx)?.iter().enumerate() {
        let q = poly.scale_var(s).scale(&s.powi(-(n as i64)));
        for k in 0..=n {
            out.push(q.coeff(k).cloned().unwrap_or_else(|| ctx.zero()));
        }
    }
    Ok(out)
}

/// max |v − t| / max(1, |t|)
fn vec_err(v: &[CNum], t: &[CNum], ctx: &PrecisionContext) -> f64 {
    let floor = ctx.real(1.0);
    v.iter().zip(t).map(|(a, b)| f64_of(&a.rel_dist(b, &floor))).fold(0.0, f64::max)
}

/// Coefficient-level residual of an exact edge.
pub fn verify_exact(edge: &SchemeEdge, base: &[CNum], nmax: u32, ctx: &PrecisionContext) -> Result<CheckResult> {
    let one = ctx.one();
    let i = edge.instance(base, &one, ctx)?;
    let src = quantities(&i.source, &i.scale, nmax, ctx)?;
    let tgt = quantities(&i.target, &one, nmax, ctx)?;
    let res = vec_err(&src, &tgt, ctx);
    Ok(CheckResult::new(edge.id(), "exact", &edge.anchor)
        .measured(res, ctx.tol_f64(EXACT_SHIFT))
        .note(format!("{} n<={nmax}", describe(edge.base, base))))
}

/// One ladder run against a fixed target vector.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub edge: String,
    pub params: String,
    pub variant: String,
    pub h: Vec<f64>,
    pub errors: Vec<f64>,
    pub monotone: bool,
    pub order: Option<f64>,
    pub extrapolated_error: Option<f64>,
    pub status: Status,
    #[serde(skip)]
    pub extrapolated: Option<Vec<CNum>>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_check(&self, check: &str, anchor: &str) -> CheckResult {
        let errs: Vec<String> = self.errors.iter().map(|e| format!("{e:.2e}")).collect();
        let mut r = CheckResult::new(self.edge.clone(), check, anchor)
            .note(format!("{} {}", self.variant, self.params))
            .note(format!("errors [{}]", errs.join(", ")));
        if let Some(p) = self.order {
            r = r.note(format!("order {p:.3}"));
        }
        if !self.monotone {
            r = r.note(format!("monotone tail shorter than {MIN_TAIL} points"));
        }
        r.residual = self.extrapolated_error.or(self.errors.last().copied());
        r.tolerance = Some(LIMIT_TOL);
        r.status = self.status;
        r
    }
}

/// Order p from a least-squares fit of log e = a + p·log t + d·t, which
/// absorbs the leading correction to a pure power law.
fn fit_order(t: &[f64], e: &[f64]) -> Option<f64> {
    if t.len() < 3 || e.iter().any(|x| *x <= 0.0 || !x.is_finite()) {
        return None;
    }
    let rows: Vec<[f64; 3]> = t.iter().map(|x| [1.0, x.log10(), *x]).collect();
    let ys: Vec<f64> = e.iter().map(|x| x.log10()).collect();
    if t.len() == 3 {
        // exactly determined; fall back to the plain slope of the last pair
        return Some((ys[2] - ys[1]) / (rows[2][1] - rows[1][1]));
    }
    let mut m = [[0.0f64; 3]; 3];
    let mut r = [0.0f64; 3];
    for (row, y) in rows.iter().zip(&ys) {
        for i in 0..3 {
            r[i] += row[i] * y;
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
        }
    }
    let det = |a: &[[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(&m);
    if d == 0.0 {
        return None;
    }
    let mut m1 = m;
    for i in 0..3 {
        m1[i][1] = r[i];
    }
    Some(det(&m1) / d)
}

/// Two Richardson levels on the last three points; t shrinks by `r` per step.
fn richardson(v: &[Vec<CNum>], r: &CNum, p: u32) -> Vec<CNum> {
    let n = v.len();
    let lvl = |a: &[CNum], b: &[CNum], k: u32| -> Vec<CNum> {
        let rp = r.powu(k);
        let d = &rp - 1;
        a.iter().zip(b).map(|(x, y)| (&(&rp * y) - x) / &d).collect()
    };
    let r1 = lvl(&v[n - 3], &v[n - 2], p);
    let r2 = lvl(&v[n - 2], &v[n - 1], p);
    lvl(&r1, &r2, p + 1)
}

fn run_ladder(
    edge: &SchemeEdge,
    params: String,
    variant: &str,
    ladder: &[CNum],
    sample: &dyn Fn(&CNum) -> Result<Vec<CNum>>,
    target: &[CNum],
    ctx: &PrecisionContext,
) -> Result<ConvergenceReport> {
    let to_zero = edge.direction != Direction::HToInfinity;
    let mut vals = Vec::new();
    let mut errors = Vec::new();
    for h in ladder {
        let v = sample(h)?;
        errors.push(vec_err(&v, target, ctx));
        vals.push(v);
    }
    let hs: Vec<f64> = ladder.iter().map(|h| h.re().to_f64()).collect();
    let ts: Vec<f64> = hs.iter().map(|h| if to_zero { *h } else { 1.0 / h }).collect();
    // the monotone tail; earlier points may be pre-asymptotic
    let mut start = errors.len().saturating_sub(1);
    while start > 0 && errors[start] < errors[start - 1] {
        start -= 1;
    }
    let tail = errors.len() - start;
    let monotone = tail >= MIN_TAIL;
    let from = errors.len() - tail.min(MIN_TAIL);
    let order = if tail >= 3 { fit_order(&ts[from..], &errors[from..]) } else { None };
    let (extrapolated, extrapolated_error) = match order {
        Some(p) if vals.len() >= 3 => {
            let n = ladder.len();
            let r = if to_zero { &ladder[n - 2] / &ladder[n - 1] } else { &ladder[n - 1] / &ladder[n - 2] };
            let pi = (p.round() as i64).max(1) as u32;
            let x = richardson(&vals, &r, pi);
            let e = vec_err(&x, target, ctx);
            (Some(x), Some(e))
        }
        _ => (None, None),
    };
    let ok = monotone
        && order.is_some_and(|p| p >= 1.0 - ORDER_FIT_TOL)
        && extrapolated_error.is_some_and(|e| e <= LIMIT_TOL);
    Ok(ConvergenceReport {
        edge: edge.id(),
        params,
        variant: variant.into(),
        h: hs,
        errors,
        monotone,
        order,
        extrapolated_error,
        status: Status::from_bool(ok),
        extrapolated,
    })
}

fn parse_ladder(ladder: &[&str], ctx: &PrecisionContext) -> Result<Vec<CNum>> {
    ladder.iter().map(|s| ctx.parse_cnum(s)).collect()
}

/// Ladder run of a limit or q-limit edge.
pub fn verify_limit(
    edge: &SchemeEdge,
    base: &[CNum],
    nmax: u32,
    ladder: Option<&[CNum]>,
    ctx: &PrecisionContext,
) -> Result<ConvergenceReport> {
    let default = parse_ladder(&edge.ladder, ctx)?;
    let ladder = ladder.unwrap_or(&default);
    let one = ctx.one();
    let t = edge.instance(base, &one, ctx)?.target;
    let target = quantities(&t, &one, nmax, ctx)?;
    let sample = |h: &CNum| -> Result<Vec<CNum>> {
        let i = edge.instance(base, h, ctx)?;
        quantities(&i.source, &i.scale, nmax, ctx)
    };
    run_ladder(edge, describe(edge.base, base), "as catalogued", ladder, &sample, &target, ctx)
}

/// Recurrence-only ladder with a custom sampler, for printed variants.
fn ladder_recurrence(
    edge: &SchemeEdge,
    base: &[CNum],
    variant: &str,
    nmax: u32,
    sample: &dyn Fn(&CNum) -> Result<Vec<CNum>>,
    ctx: &PrecisionContext,
) -> Result<ConvergenceReport> {
    let one = ctx.one();
    let t = edge.instance(base, &one, ctx)?.target;
    let mut target = Vec::new();
    for (n, r) in recurrence_table(&t, nmax - 1, ctx)?.into_iter().enumerate() {
        target.push(r.b);
        if n > 0 {
            target.push(r.u);
        }
    }
    let ladder = parse_ladder(&edge.ladder, ctx)?;
    run_ladder(edge, describe(edge.base, base), variant, &ladder, sample, &target, ctx)
}

fn rec_vec(p: &Params, s: &CNum, nmax: u32, b: impl Fn(u32, &RecurrencePair) -> CNum, ctx: &PrecisionContext) -> Result<Vec<CNum>> {
    let s2 = s * s;
    let mut out = Vec::new();
    for n in 0..nmax {
        let r = recurrence(p, n, ctx)?;
        out.push(&b(n, &r) / s);
        if n > 0 {
            out.push(&r.u / &s2);
        }
    }
    Ok(out)
}

/// G_n = (P_{n+1} − A_n P_n)/(x − 1), n ≤ N.
pub fn christoffel(p: &Params, nmax: u32, ctx: &PrecisionContext) -> Result<Vec<Polynomial>> {
    let ps = generate(p, nmax + 1, ctx)?;
    let d = Polynomial::linear(-ctx.one(), ctx.one());
    (0..=nmax)
        .map(|n| {
            let (a, _) = recurrence(p, n, ctx)?.ac.ok_or_else(|| Error::Unsupported {
                family: p.family().id().into(),
                what: "A_n/C_n decomposition".into(),
            })?;
            let num = ps[n as usize + 1].sub(&ps[n as usize].scale(&a));
            num.div_exact(&d, ctx)
        })
        .collect()
}

/// P_n = G_n − C_n G_{n−1}, with C_n taken from `p`.
pub fn geronimus(g: &[Polynomial], p: &Params, ctx: &PrecisionContext) -> Result<Vec<Polynomial>> {
    (0..g.len())
        .map(|n| {
            let (_, c) = recurrence(p, n as u32, ctx)?.ac.ok_or_else(|| Error::Unsupported {
                family: p.family().id().into(),
                what: "A_n/C_n decomposition".into(),
            })?;
            Ok(if n == 0 { g[0].clone() } else { g[n].sub(&g[n - 1].scale(&c)) })
        })
        .collect()
}

/// Recurrence of the kernel partner: A'_n = C_{n+1}, C'_n = A_n.
pub fn kernel_partner_recurrence(p: &Params, nmax: u32, ctx: &PrecisionContext) -> Result<Vec<RecurrencePair>> {
    let ac: Vec<(CNum, CNum)> = (0..=nmax + 1)
        .map(|n| {
            recurrence(p, n, ctx)?.ac.ok_or_else(|| Error::Unsupported {
                family: p.family().id().into(),
                what: "A_n/C_n decomposition".into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok((0..=nmax as usize)
        .map(|n| {
            let a = ac[n + 1].1.clone();
            let c = ac[n].0.clone();
            let b = ctx.one() - &a - &c;
            let u = if n == 0 { ctx.zero() } else { &ac[n].1 * &c };
            RecurrencePair { b, u, ac: Some((a, c)) }
        })
        .collect())
}

fn scaled(ps: &[Polynomial], s: &CNum) -> Vec<Polynomial> {
    ps.iter().enumerate().map(|(n, p)| p.scale_var(s).scale(&s.powi(-(n as i64)))).collect()
}

/// Christoffel or Geronimus edge at one point, coefficient level.
pub fn verify_kernel(edge: &SchemeEdge, base: &[CNum], nmax: u32, ctx: &PrecisionContext) -> Result<CheckResult> {
    let one = ctx.one();
    let i = edge.instance(base, &one, ctx)?;
    let (got, want) = match edge.kind {
        EdgeKind::Christoffel => {
            let g = christoffel(&i.source, nmax, ctx)?;
            (scaled(&g, &i.scale), generate(&i.target, nmax, ctx)?)
        }
        EdgeKind::Geronimus => {
            let g = scaled(&generate(&i.source, nmax, ctx)?, &i.scale.recip());
            (geronimus(&g, &i.target, ctx)?, generate(&i.target, nmax, ctx)?)
        }
        _ => return Err(Error::BadParameter(format!("{} is not a kernel edge", edge.id()))),
    };
    let res = got.iter().zip(&want).map(|(a, b)| f64_of(&a.rel_diff(b))).fold(0.0, f64::max);
    let check = if edge.kind == EdgeKind::Christoffel { "ct" } else { "gt" };
    Ok(CheckResult::new(edge.id(), check, &edge.anchor)
        .measured(res, ctx.tol_f64(EXACT_SHIFT))
        .note(format!("{} n<={nmax}", describe(edge.base, base))))
}

/// The recurrence map against the partner's own recurrence, at seeded random points.
pub fn verify_recurrence_map(edge: &SchemeEdge, points: usize, nmax: u32, ctx: &PrecisionContext) -> Result<CheckResult> {
    if edge.kind != EdgeKind::Christoffel {
        return Err(Error::BadParameter(format!("{} is not a christoffel edge", edge.id())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ edge.base.len() as u64);
    let mut worst = 0.0f64;
    let one = ctx.one();
    for _ in 0..points {
        let base: Vec<CNum> = edge
            .base
            .iter()
            .map(|name| {
                let x: f64 = if *name == "c" { rng.gen_range(0.05..0.9) } else { rng.gen_range(0.2..3.0) };
                ctx.from_real(&ctx.real(x))
            })
            .collect();
        let i = edge.instance(&base, &one, ctx)?;
        let mapped = kernel_partner_recurrence(&i.source, nmax, ctx)?;
        let want = recurrence_table(&i.target, nmax, ctx)?;
        let s = &i.scale;
        let s2 = s * s;
        for (n, (m, w)) in mapped.iter().zip(&want).enumerate() {
            worst = worst.max(f64_of(&(&m.b / s).rel_dist(&w.b, &ctx.real(1.0))));
            if n > 0 {
                worst = worst.max(f64_of(&(&m.u / &s2).rel_dist(&w.u, &ctx.real(1.0))));
            }
        }
    }
    Ok(CheckResult::new(edge.id(), "recurrence-map", &edge.anchor)
        .measured(worst, ctx.tol_f64(EXACT_SHIFT))
        .note(format!("{points} seeded random points, n<={nmax}")))
}

/// Every check of one edge at its fixture points.
pub fn verify_edge(edge: &SchemeEdge, ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (k, base) in edge.fixture_points(ctx)?.iter().enumerate() {
        let r = match edge.kind {
            EdgeKind::Specialization => verify_exact(edge, base, EDGE_N, ctx),
            EdgeKind::Limit | EdgeKind::QLimit => verify_limit(edge, base, LADDER_N, None, ctx)
                .map(|c| c.to_check(edge.kind.as_str(), &edge.anchor)),
            EdgeKind::Christoffel | EdgeKind::Geronimus => verify_kernel(edge, base, EDGE_N, ctx),
        };
        let mut r = r.unwrap_or_else(|e| {
            CheckResult::new(edge.id(), edge.kind.as_str(), &edge.anchor).status(Status::Fail).note(e.to_string())
        });
        r.check = format!("{}#{k}", r.check);
        out.push(r);
    }
    if edge.kind == EdgeKind::Christoffel {
        out.push(verify_recurrence_map(edge, RANDOM_POINTS, EDGE_N, ctx)?);
    }
    Ok(out)
}

/// The two commuting squares relating q → −1 and c → 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    /// big q-Jacobi, big −1 Jacobi, little q-Jacobi, little −1 Jacobi.
    Jacobi,
    /// big q-Jacobi, Chihara, little q-Jacobi, generalized Gegenbauer.
    Chihara,
}

impl Square {
    pub fn id(self) -> &'static str {
        match self {
            Square::Jacobi => "square:big-q-jacobi/little-minus1-jacobi",
            Square::Chihara => "square:big-q-jacobi/generalized-gegenbauer",
        }
    }
}

/// Both paths around a square at (α, β): each q-leg must converge, the
/// exact legs must hold, and the two extrapolated limits must agree.
pub fn verify_commuting_square(sq: Square, alpha: &CNum, beta: &CNum, ctx: &PrecisionContext) -> Result<Vec<CheckResult>> {
    let cat = edge_catalog();
    let find = |s, t| cat.iter().find(|e| e.source == s && e.target == t).expect("catalogued edge");
    let anchor = "edge:commuting-square";
    let one = ctx.one();
    let (big_leg, little_leg, exact_leg, big_base, little_base) = match sq {
        Square::Jacobi => (
            find(BigQJacobi, BigMinus1Jacobi),
            find(LittleQJacobiDilated, LittleMinus1Jacobi),
            find(BigMinus1Jacobi, LittleMinus1Jacobi),
            vec![alpha.clone(), beta.clone(), ctx.zero()],
            vec![beta.clone(), alpha.clone()],
        ),
        Square::Chihara => (
            find(BigQJacobi, Chihara),
            find(LittleQJacobiDilated, GeneralizedGegenbauer),
            find(Chihara, GeneralizedGegenbauer),
            vec![alpha.clone(), beta.clone(), ctx.zero()],
            vec![alpha.clone(), beta.clone()],
        ),
    };
    let n = LADDER_N;
    let a = verify_limit(big_leg, &big_base, n, None, ctx)?;
    let b = verify_limit(little_leg, &little_base, n, None, ctx)?;
    let exact_base = &big_base[..2];
    let c = verify_exact(exact_leg, exact_base, n, ctx)?;
    // the c = 0 q-level identity, at each ladder point
    let mut qexact = 0.0f64;
    for e in parse_ladder(&Direction::EpsToZero.ladder(), ctx)? {
        let big = big_leg.instance(&big_base, &e, ctx)?;
        let little = little_leg.instance(&little_base, &e, ctx)?;
        let x = quantities(&big.source, &one, n, ctx)?;
        let y = quantities(&little.source, &one, n, ctx)?;
        qexact = qexact.max(vec_err(&x, &y, ctx));
    }
    let agree = match (&a.extrapolated, &b.extrapolated) {
        (Some(x), Some(y)) => Some(vec_err(x, y, ctx)),
        _ => None,
    };
    let tag = format!("alpha={}, beta={}", format_cnum(alpha, 8), format_cnum(beta, 8));
    let mut out = vec![
        a.to_check("q-leg-big", anchor).note(tag.clone()),
        b.to_check("q-leg-little", anchor).note(tag.clone()),
        c.note("c = 0 leg at q = -1"),
        CheckResult::new(sq.id(), "c0-leg-q", anchor)
            .measured(qexact, ctx.tol_f64(EXACT_SHIFT))
            .note("big(a, b, 0; q) = little(b, a; q) along the ladder"),
    ];
    let mut agree_r = CheckResult::new(sq.id(), "paths-agree", anchor).note(tag);
    agree_r = match agree {
        Some(d) => agree_r.measured(d, LIMIT_TOL),
        None => agree_r.status(Status::Fail).note("a leg has no extrapolation"),
    };
    out.push(agree_r);
    for r in out.iter_mut() {
        r.id = sq.id().into();
    }
    Ok(out)
}

/// Variant runs behind the recorded open-question resolutions.
#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub id: String,
    pub question: String,
    pub chosen: String,
    pub variants: Vec<(String, Status, Option<f64>)>,
}

impl Resolution {
    pub fn to_check(&self) -> CheckResult {
        let any = self.variants.iter().any(|v| v.1 == Status::Pass);
        let parts: Vec<String> = self
            .variants
            .iter()
            .map(|(n, s, e)| format!("{n}: {s:?}{}", e.map(|x| format!(" ({x:.2e})")).unwrap_or_default()))
            .collect();
        let mut r = CheckResult::new(self.id.clone(), "resolution", "edge:open-question")
            .status(Status::from_bool(any))
            .note(self.question.clone())
            .note(format!("chosen: {}", self.chosen))
            .note(parts.join("; "));
        r.residual = self
            .variants
            .iter()
            .filter(|v| v.1 == Status::Pass)
            .filter_map(|v| v.2)
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |y| y.min(x))));
        r.tolerance = Some(LIMIT_TOL);
        r
    }
}

fn best(rs: &[ConvergenceReport]) -> (Status, Option<f64>) {
    let st = rs.iter().fold(Status::Pass, |s, r| s.and(r.status));
    let e = rs.iter().map(|r| r.extrapolated_error.or(r.errors.last().copied()).unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    (st, Some(e))
}

/// The three printed-variant questions: the little q-Jacobi b_n sign, the
/// C−1H → −1 MP scaling, and the S⁺R composition order.
pub fn resolve_open_questions(ctx: &PrecisionContext) -> Result<Vec<Resolution>> {
    let cat = edge_catalog();
    let find = |s, t| cat.iter().find(|e| e.source == s && e.target == t).expect("catalogued edge");
    let n = LADDER_N;
    let mut out = Vec::new();

    // b_n sign
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for e in [find(LittleQJacobiDilated, LittleMinus1Jacobi), find(LittleQJacobiDilated, GeneralizedGegenbauer)] {
        for base in e.fixture_points(ctx)? {
            minus.push(verify_limit(e, &base, n, None, ctx)?);
            let one = ctx.one();
            let sample = |h: &CNum| -> Result<Vec<CNum>> {
                let i = e.instance(&base, h, ctx)?;
                rec_vec(&i.source, &one, n, |k, _| lqj_printed_b(&i.source, k, ctx), ctx)
            };
            plus.push(ladder_recurrence(e, &base, "b = 1 - A + C", n, &sample, ctx)?);
        }
    }
    let (sm, em) = best(&minus);
    let (sp, ep) = best(&plus);
    out.push(Resolution {
        id: "oq:little-q-jacobi-sign".into(),
        question: "sign of C_n in the dilated little q-Jacobi b_n".into(),
        chosen: if sm == Status::Pass { "1 - A_n - C_n" } else if sp == Status::Pass { "1 - A_n + C_n" } else { "none" }.into(),
        variants: vec![("1 - A_n - C_n".into(), sm, em), ("1 - A_n + C_n".into(), sp, ep)],
    });

    // C−1H → −1 MP scaling
    let mut s4 = Vec::new();
    let mut a9 = Vec::new();
    for (fam, e) in [
        (ContinuousMinus1Hahn1, find(ContinuousMinus1Hahn1, Minus1MeixnerPollaczek)),
        (ContinuousMinus1Hahn2, find(ContinuousMinus1Hahn2, Minus1MeixnerPollaczek)),
    ] {
        for base in e.fixture_points(ctx)? {
            s4.push(verify_limit(e, &base, n, None, ctx)?);
            let sample = |h: &CNum| -> Result<Vec<CNum>> {
                let i = k_to_mp(&base, h, ctx, fam, true)?;
                rec_vec(&i.source, &i.scale, n, |_, r| r.b.clone(), ctx)
            };
            a9.push(ladder_recurrence(e, &base, "beta = sqrt(h*gamma/2)", n, &sample, ctx)?);
        }
    }
    let (s1, e1) = best(&s4);
    let (s2, e2) = best(&a9);
    out.push(Resolution {
        id: "oq:hahn-to-meixner-pollaczek-scaling".into(),
        question: "beta = sqrt(h/2)*gamma or sqrt(h*gamma/2) in the limit to -1 Meixner-Pollaczek".into(),
        chosen: if s1 == Status::Pass { "sqrt(h/2)*gamma" } else if s2 == Status::Pass { "sqrt(h*gamma/2)" } else { "none" }.into(),
        variants: vec![("sqrt(h/2)*gamma".into(), s1, e1), ("sqrt(h*gamma/2)".into(), s2, e2)],
    });

    // q-MP reading, recorded alongside
    let e = find(QMeixnerPollaczek, Minus1MeixnerPollaczek);
    let mut neg = Vec::new();
    let mut pos = Vec::new();
    for base in e.fixture_points(ctx)? {
        neg.push(verify_limit(e, &base, n, None, ctx)?);
        let sample = |h: &CNum| -> Result<Vec<CNum>> {
            let i = qmp(&base, h, ctx, true)?;
            rec_vec(&i.source, &i.scale, n, |_, r| r.b.clone(), ctx)
        };
        pos.push(ladder_recurrence(e, &base, "q = -e^eps", n, &sample, ctx)?);
    }
    let (s1, e1) = best(&neg);
    let (s2, e2) = best(&pos);
    out.push(Resolution {
        id: "oq:q-meixner-pollaczek-reading".into(),
        question: "q = -e^(-eps) or q = -e^eps in the q-Meixner-Pollaczek limit".into(),
        chosen: if s1 == Status::Pass { "q = -e^(-eps)" } else if s2 == Status::Pass { "q = -e^eps" } else { "none" }.into(),
        variants: vec![("q = -e^(-eps)".into(), s1, e1), ("q = -e^eps".into(), s2, e2)],
    });

    // S⁺R composition order
    let mut rtl = Status::Pass;
    let mut ltr = Status::Pass;
    for f in [ContinuousBannaiIto, ContinuousMinus1Hahn1, ContinuousMinus1Hahn2] {
        for p in crate::fixtures::fixtures_for(f, ctx)? {
            let c = resolve_composition_convention(&p, ctx)?;
            rtl = rtl.and(Status::from_bool(c.right_to_left.iter().all(|b| *b)));
            ltr = ltr.and(Status::from_bool(c.left_to_right.iter().all(|b| *b)));
        }
    }
    out.push(Resolution {
        id: "oq:shift-reflection-order".into(),
        question: "S+R read right-to-left, f(-x-i), or left-to-right, f(-x+i)".into(),
        chosen: if rtl == Status::Pass { "right-to-left" } else if ltr == Status::Pass { "left-to-right" } else { "none" }.into(),
        variants: vec![("right-to-left".into(), rtl, None), ("left-to-right".into(), ltr, None)],
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

fn style(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Specialization => "style=solid, color=black",
        EdgeKind::Limit => "style=dashed, color=black",
        EdgeKind::QLimit => "style=dashed, color=gray40",
        EdgeKind::Christoffel | EdgeKind::Geronimus => "style=bold, color=blue",
    }
}

/// The scheme graph. `status` maps edge ids to verification outcomes.
pub fn export_graph(format: GraphFormat, status: Option<&BTreeMap<String, Status>>) -> String {
    let edges = edge_catalog();
    let st = |id: &str| -> String {
        match status.and_then(|m| m.get(id)) {
            Some(s) => format!("{s:?}").to_lowercase(),
            None => "unverified".into(),
        }
    };
    match format {
        GraphFormat::Dot => {
            let mut s = String::from("digraph scheme {\n  rankdir=TB;\n  node [shape=box];\n");
            for f in FamilyId::scheme() {
                let dash = if f.is_orthogonal() { "" } else { ", style=dashed" };
                let _ = writeln!(s, "  \"{}\" [label=\"{}\", row={}{}];", f.id(), f.name(), f.row().unwrap_or(0), dash);
            }
            for row in (0..=4).rev() {
                let ids: Vec<String> = FamilyId::scheme()
                    .iter()
                    .filter(|f| f.row() == Some(row))
                    .map(|f| format!("\"{}\"", f.id()))
                    .collect();
                if !ids.is_empty() {
                    let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
                }
            }
            for e in &edges {
                let _ = writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [kind=\"{}\", {}, anchor=\"{}\", verified=\"{}\"];",
                    e.source.id(),
                    e.target.id(),
                    e.kind.as_str(),
                    style(e.kind),
                    e.anchor,
                    st(&e.id())
                );
            }
            s.push_str("}\n");
            s
        }
        GraphFormat::Json => {
            let nodes: Vec<serde_json::Value> = FamilyId::scheme()
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "id": f.id(),
                        "name": f.name(),
                        "row": f.row(),
                        "orthogonal": f.is_orthogonal(),
                    })
                })
                .collect();
            let es: Vec<serde_json::Value> = edges
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id(),
                        "source": e.source.id(),
                        "target": e.target.id(),
                        "kind": e.kind.as_str(),
                        "direction": e.direction,
                        "map": e.map,
                        "scaling": e.scaling,
                        "anchor": e.anchor,
                        "verified": st(&e.id()),
                    })
                })
                .collect();
            let aux: Vec<&str> = FamilyId::all()
                .iter()
                .filter(|f| f.kind() == crate::families::FamilyKind::Aux)
                .map(|f| f.id())
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "nodes": nodes, "edges": es, "q_sources": aux }))
                .expect("graph serializes")
        }
    }
}

/// "Limit Relations" headings of the compendium in scope (continuous part),
/// as (source, target). Each must be covered by a catalog edge.
pub const COVERAGE: &[(FamilyId, FamilyId)] = &[
    (ContinuousBannaiIto, BigMinus1Jacobi),
    (ContinuousBannaiIto, ContinuousMinus1Hahn1),
    (ContinuousBannaiIto, ContinuousMinus1Hahn2),
    (ContinuousQHahn, ContinuousMinus1Hahn1),
    (ContinuousQHahn, ContinuousMinus1Hahn2),
    (ContinuousMinus1Hahn1, Minus1MeixnerPollaczek),
    (ContinuousMinus1Hahn2, Minus1MeixnerPollaczek),
    (ContinuousMinus1Hahn1, SymmetricBannaiIto),
    (ContinuousMinus1Hahn2, SymmetricBannaiIto),
    (ContinuousComplementaryBannaiIto, Chihara),
    (BigMinus1Jacobi, Chihara),
    (BigMinus1Jacobi, LittleMinus1Jacobi),
    (BigQJacobi, BigMinus1Jacobi),
    (BigQJacobi, Chihara),
    (Chihara, Minus1MeixnerPollaczek),
    (Chihara, GeneralizedGegenbauer),
    (Gegenbauer, Hermite),
    (GeneralizedGegenbauer, Gegenbauer),
    (GeneralizedGegenbauer, GeneralizedHermite),
    (GeneralizedHermite, Hermite),
    (GeneralizedSymmetricBannaiIto, GeneralizedGegenbauer),
    (GeneralizedSymmetricBannaiIto, SymmetricBannaiIto),
    (LittleMinus1Jacobi, GeneralizedGegenbauer),
    (LittleMinus1Jacobi, SpecialLittleMinus1Jacobi),
    (LittleQJacobiDilated, GeneralizedGegenbauer),
    (LittleQJacobiDilated, LittleMinus1Jacobi),
    (SpecialLittleMinus1Jacobi, Gegenbauer),
    (SymmetricBannaiIto, GeneralizedHermite),
    (QMeixnerPollaczek, Minus1MeixnerPollaczek),
    (Minus1MeixnerPollaczek, GeneralizedHermite),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn catalog_shape() {
        let cat = edge_catalog();
        assert_eq!(cat.len(), 35);
        let count = |k| cat.iter().filter(|e| e.kind == k).count();
        assert_eq!(count(EdgeKind::QLimit), 7);
        assert_eq!(count(EdgeKind::Limit), 10);
        assert_eq!(count(EdgeKind::Specialization), 12);
        assert_eq!(count(EdgeKind::Christoffel), 3);
        assert_eq!(count(EdgeKind::Geronimus), 3);
        let mut ids: Vec<String> = cat.iter().map(|e| e.id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 35);
    }

    #[test]
    fn coverage_lock() {
        let cat = edge_catalog();
        for (s, t) in COVERAGE {
            assert!(cat.iter().any(|e| e.source == *s && e.target == *t), "missing edge {s} -> {t}");
        }
    }

    #[test]
    fn spec_examples_present() {
        assert_eq!(find_edge("cbi:big-minus1-jacobi").unwrap().kind, EdgeKind::Limit);
        assert_eq!(find_edge("gh:h").unwrap().kind, EdgeKind::Specialization);
        assert_eq!(find_edge("chi:gg").unwrap().kind, EdgeKind::Specialization);
        assert!(find_edge("h:gh").is_err());
    }

    #[test]
    fn christoffel_n0_is_one() {
        let c = ctx();
        let p = Params::real(LittleMinus1Jacobi, &[1.0, 2.0], &c).unwrap();
        let g = christoffel(&p, 0, &c).unwrap();
        assert!(g[0].approx_eq(&Polynomial::one(&c), &c));
    }

    #[test]
    fn round_trip() {
        let c = ctx();
        let p = Params::real(LittleMinus1Jacobi, &[1.5, 0.5], &c).unwrap();
        let g = christoffel(&p, 8, &c).unwrap();
        let back = geronimus(&g, &p, &c).unwrap();
        let orig = generate(&p, 8, &c).unwrap();
        for (a, b) in back.iter().zip(&orig) {
            assert!(a.approx_eq(b, &c));
        }
    }

    #[test]
    fn richardson_kills_linear_term() {
        let c = ctx();
        // v(t) = 1 + t + t², t = 1e-1, 1e-2, 1e-3
        let v: Vec<Vec<CNum>> = [0.1, 0.01, 0.001]
            .iter()
            .map(|t| vec![c.from_real(&c.real(1.0 + t + t * t))])
            .collect();
        let x = richardson(&v, &c.int(10), 1);
        assert!(f64_of(&x[0].rel_dist(&c.one(), &c.real(1.0))) < 1e-12);
    }

    #[test]
    fn dot_has_fifteen_nodes() {
        let d = export_graph(GraphFormat::Dot, None);
        assert_eq!(d.lines().filter(|l| l.contains("row=")).count(), 15);
        assert_eq!(d.lines().filter(|l| l.contains("->")).count(), 35);
    }
}
