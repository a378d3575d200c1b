//! Verification harness: a registry of identities, each reduced to a list of
//! exact comparisons that are checked with λ symbolic and, optionally, at
//! rational values of λ.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, FamilyKind, PolyFamily};
use crate::oracle;
use crate::poly::{deg_falling_factorial, falling_factorial, lambda_shifted_falling, LambdaPoly, XPoly};
use crate::rational::{binomial, factorial, rat, render_rational, Rational};
use crate::ring::Coeff;
use crate::series::{
    binomial_power_x, deg_exp, deg_exp_minus_one, deg_exp_x, deg_log, iterated_deg_exp,
    iterated_deg_log, Series,
};
use crate::triangles::{self, Triangle};
use crate::umbral::{self, ShefferSeq};

pub const DEFAULT_ORDER: usize = 12;

/// Scale caps for checks whose cost grows quickly with n.
const ORACLE_N: usize = 10;
const SLICE_N: usize = 10;
const UMBRAL_N: usize = 10;
const MATRIX_POWER_N: usize = 10;
const INVERSION_ORDER: usize = 16;

/// One side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Lambda(LambdaPoly),
    X(XPoly),
}

impl Value {
    fn specialize(&self, lambda: &Rational) -> Value {
        match self {
            Value::Lambda(p) => Value::Lambda(LambdaPoly::constant(p.specialize(lambda))),
            Value::X(p) => Value::X(p.specialize_lambda(lambda)),
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Lambda(p) => p.to_string(),
            Value::X(p) => p.to_string(),
        }
    }
}

impl From<LambdaPoly> for Value {
    fn from(p: LambdaPoly) -> Self {
        Value::Lambda(p)
    }
}

impl From<XPoly> for Value {
    fn from(p: XPoly) -> Self {
        Value::X(p)
    }
}

impl From<i64> for Value {
    fn from(c: i64) -> Self {
        Value::Lambda(LambdaPoly::from_ints(&[c]))
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub at: String,
    pub lhs: Value,
    pub rhs: Value,
}

fn cmp(at: impl Into<String>, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Comparison {
    Comparison {
        at: at.into(),
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub order: usize,
    /// `"symbolic"` or the rational value substituted for λ.
    pub lambda: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub order: usize,
    pub lambda_specializations: Vec<Rational>,
    pub identity_filter: Option<Vec<String>>,
    /// Run identities that are registered as off by default.
    pub include_optional: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            order: DEFAULT_ORDER,
            lambda_specializations: Vec::new(),
            identity_filter: None,
            include_optional: false,
        }
    }
}

type CheckFn = fn(&Context) -> Result<Vec<Comparison>>;

pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// Off unless named in the filter or `include_optional` is set.
    pub optional: bool,
    check: CheckFn,
}

impl Identity {
    /// The exact comparisons this identity reduces to at the context's order.
    pub fn comparisons(&self, ctx: &Context) -> Result<Vec<Comparison>> {
        (self.check)(ctx)
    }
}

/// Tables shared by all checks at one order, each computed by its series
/// (or explicit-sum) route only, so that every other route stays a check.
pub struct Context {
    pub order: usize,
    pub s1: Triangle,
    pub s2: Triangle,
    pub j1: Triangle,
    pub j2: Triangle,
    pub bell: PolyFamily,
    pub jindalrae: PolyFamily,
    pub gaenari: PolyFamily,
    /// (1)_{n,λ}
    pub falling_one: Vec<LambdaPoly>,
}

impl Context {
    pub fn new(order: usize) -> Self {
        let s1 = triangles::stirling1_deg_series(order);
        let s2 = triangles::stirling2_deg_series(order);
        let j1 = triangles::jstirling1_series(order);
        let j2 = triangles::jstirling2_series(order);
        let bell = families::explicit_sum(FamilyKind::DegBell, &s2);
        let jindalrae = families::explicit_sum(FamilyKind::Jindalrae, &j2);
        let gaenari = families::explicit_sum(FamilyKind::Gaenari, &j1);
        let falling_one = (0..=order)
            .map(|n| deg_falling_factorial(n).at_x(&rat(1)))
            .collect();
        Context {
            order,
            s1,
            s2,
            j1,
            j2,
            bell,
            jindalrae,
            gaenari,
            falling_one,
        }
    }
}

fn nk(n: usize, k: usize) -> String {
    format!("n={n},k={k}")
}

fn delta(n: usize, k: usize) -> LambdaPoly {
    LambdaPoly::from_ints(&[i64::from(n == k)])
}

fn triangles_agree(a: &Triangle, b: &Triangle) -> Vec<Comparison> {
    let order = a.order().min(b.order());
    let mut out = Vec::new();
    for n in 0..=order {
        for k in 0..=n {
            out.push(cmp(nk(n, k), a[(n, k)].clone(), b[(n, k)].clone()));
        }
    }
    out
}

fn families_agree(a: &PolyFamily, b: &PolyFamily) -> Vec<Comparison> {
    a.polys()
        .iter()
        .zip(b.polys())
        .enumerate()
        .map(|(n, (p, q))| cmp(format!("n={n}"), p.clone(), q.clone()))
        .collect()
}

fn series_agree<C: Coeff + Into<Value>>(label: &str, a: &Series<C>, b: &Series<C>) -> Vec<Comparison> {
    let order = a.order().min(b.order());
    (0..=order)
        .map(|n| cmp(format!("{label} t^{n}"), a.coeff(n).clone(), b.coeff(n).clone()))
        .collect()
}

/// Σ_m fam[m](x) · tri(n, m).
fn family_sum(fam: &PolyFamily, tri: &Triangle, n: usize) -> XPoly {
    (0..=n)
        .map(|m| fam[m].map_coeffs(|c| c * &tri[(n, m)]))
        .sum()
}

fn product_sum(len: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> LambdaPoly) -> LambdaPoly {
    len.map(f).sum()
}

fn check_s2_routes(c: &Context) -> Result<Vec<Comparison>> {
    Ok(triangles_agree(&c.s2, &triangles::stirling2_deg_basis(c.order)))
}

fn check_s1_routes(c: &Context) -> Result<Vec<Comparison>> {
    Ok(triangles_agree(&c.s1, &triangles::stirling1_deg_basis(c.order)))
}

fn check_orthogonality(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order {
        for k in 0..=n {
            let a = product_sum(k..=n, |m| &c.s1[(n, m)] * &c.s2[(m, k)]);
            let b = product_sum(k..=n, |m| &c.s2[(n, m)] * &c.s1[(m, k)]);
            out.push(cmp(format!("S1·S2 {}", nk(n, k)), a, delta(n, k)));
            out.push(cmp(format!("S2·S1 {}", nk(n, k)), b, delta(n, k)));
        }
    }
    Ok(out)
}

fn check_j2_from_s2deg(c: &Context) -> Result<Vec<Comparison>> {
    Ok(triangles_agree(&c.j2, &c.s2.convolve(&c.s2, c.j2.kind())))
}

fn check_s2deg_from_j2(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order {
        for k in 0..=n {
            let rhs = product_sum(k..=n, |m| &c.j2[(m, k)] * &c.s1[(n, m)]);
            out.push(cmp(nk(n, k), c.s2[(n, k)].clone(), rhs));
        }
    }
    Ok(out)
}

fn check_j2_first_column(c: &Context) -> Result<Vec<Comparison>> {
    let bell_numbers = c.bell.numbers();
    let mut out = Vec::new();
    for n in 1..=c.order {
        let conv = product_sum(1..=n, |m| &c.s2[(n, m)] * &c.falling_one[m]);
        out.push(cmp(format!("J2(n,1) n={n}"), c.j2[(n, 1)].clone(), bell_numbers[n].clone()));
        out.push(cmp(format!("Bell sum n={n}"), bell_numbers[n].clone(), conv));
    }
    Ok(out)
}

fn check_s2deg_first_column(c: &Context) -> Result<Vec<Comparison>> {
    let bell_numbers = c.bell.numbers();
    let mut out = Vec::new();
    for n in 1..=c.order {
        let rhs = product_sum(1..=n, |m| &bell_numbers[m] * &c.s1[(n, m)]);
        out.push(cmp(format!("n={n}"), c.s2[(n, 1)].clone(), rhs));
        out.push(cmp(format!("S2(n,1) n={n}"), c.s2[(n, 1)].clone(), c.falling_one[n].clone()));
    }
    Ok(out)
}

fn check_bell_against_s1deg(c: &Context) -> Result<Vec<Comparison>> {
    let bell_numbers = c.bell.numbers();
    Ok((1..=c.order)
        .map(|n| {
            let lhs = product_sum(1..=n, |m| &bell_numbers[m] * &c.s1[(n, m)]);
            cmp(format!("n={n}"), lhs, c.falling_one[n].clone())
        })
        .collect())
}

fn check_j1_from_s1deg(c: &Context) -> Result<Vec<Comparison>> {
    Ok(triangles_agree(&c.j1, &c.s1.convolve(&c.s1, c.j1.kind())))
}

fn check_j1_first_column(c: &Context) -> Result<Vec<Comparison>> {
    Ok((1..=c.order)
        .map(|n| {
            let rhs = product_sum(1..=n, |m| &lambda_shifted_falling(m) * &c.s1[(n, m)]);
            cmp(format!("n={n}"), c.j1[(n, 1)].clone(), rhs)
        })
        .collect())
}

fn check_j2_differences(c: &Context) -> Result<Vec<Comparison>> {
    // B_{n,λ}(l) for integer l, λ symbolic
    let at_points: Vec<Vec<LambdaPoly>> = (0..=c.order)
        .map(|n| (0..=c.order).map(|l| c.bell[n].at_x(&rat(l as i64))).collect())
        .collect();
    let mut out = Vec::new();
    for n in 0..=c.order {
        for k in 0..=c.order {
            let mut sum = LambdaPoly::ZERO;
            for l in 0..=k {
                let sign = if (k - l) % 2 == 0 { 1 } else { -1 };
                let coeff = Rational::from_integer(binomial(k, l) * sign);
                sum = &sum + &at_points[n][l].scale(&coeff);
            }
            let lhs = sum.scale(&Rational::new(1.into(), factorial(k)));
            let rhs = if n >= k { c.j2[(n, k)].clone() } else { LambdaPoly::ZERO };
            out.push(cmp(nk(n, k), lhs, rhs));
        }
    }
    Ok(out)
}

fn check_s1deg_from_j1(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order {
        for l in 0..=n {
            let rhs = product_sum(l..=n, |k| &c.j1[(n, k)] * &c.s2[(k, l)]);
            out.push(cmp(format!("n={n},l={l}"), c.s1[(n, l)].clone(), rhs));
        }
    }
    Ok(out)
}

fn check_s1deg_first_column(c: &Context) -> Result<Vec<Comparison>> {
    Ok((1..=c.order)
        .map(|n| {
            let rhs = product_sum(1..=n, |k| &c.falling_one[k] * &c.j1[(n, k)]);
            cmp(format!("n={n}"), c.s1[(n, 1)].clone(), rhs)
        })
        .collect())
}

fn check_jindalrae_gf(c: &Context) -> Result<Vec<Comparison>> {
    let gf = families::from_generating_function(FamilyKind::Jindalrae, &iterated_deg_exp(c.order))?;
    Ok(families_agree(&c.jindalrae, &gf))
}

fn check_degbell_from_jindalrae(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| cmp(format!("n={n}"), c.bell[n].clone(), family_sum(&c.jindalrae, &c.s1, n)))
        .collect())
}

fn check_jindalrae_from_degbell(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| cmp(format!("n={n}"), c.jindalrae[n].clone(), family_sum(&c.bell, &c.s2, n)))
        .collect())
}

fn check_gaenari_gf(c: &Context) -> Result<Vec<Comparison>> {
    let gf = families::from_generating_function(FamilyKind::Gaenari, &iterated_deg_log(c.order))?;
    Ok(families_agree(&c.gaenari, &gf))
}

fn check_falling_from_gaenari(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| cmp(format!("n={n}"), falling_factorial(n), family_sum(&c.gaenari, &c.s2, n)))
        .collect())
}

fn check_gaenari_numbers_vanish(c: &Context) -> Result<Vec<Comparison>> {
    let numbers = c.gaenari.numbers();
    let mut out = vec![cmp("G0", numbers[0].clone(), 1)];
    for n in 0..=c.order {
        let sum = product_sum(0..=n, |m| &numbers[m] * &c.s2[(n, m)]);
        out.push(cmp(format!("n={n}"), sum, i64::from(n <= 1)));
    }
    Ok(out)
}

fn check_gaenari_numbers_closed(c: &Context) -> Result<Vec<Comparison>> {
    // λ^{n-1}(1)_{n,1/λ}: reverse the n coefficients of (1)_{n,μ} in μ
    let numbers = c.gaenari.numbers();
    Ok((1..=c.order)
        .map(|n| {
            let mut coeffs = c.falling_one[n].coeffs().to_vec();
            coeffs.resize(n, Rational::from_integer(0.into()));
            coeffs.reverse();
            cmp(format!("n={n}"), numbers[n].clone(), LambdaPoly::new(coeffs))
        })
        .collect())
}

fn check_gaenari_binomial_gf(c: &Context) -> Result<Vec<Comparison>> {
    let gf = binomial_power_x(&deg_log(c.order))?;
    let fam = PolyFamily::new(FamilyKind::Gaenari, gf.egf_coeffs());
    Ok(families_agree(&c.gaenari, &fam))
}

fn check_deg_falling_via_gaenari(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| cmp(format!("n={n}"), deg_falling_factorial(n), family_sum(&c.gaenari, &c.j2, n)))
        .collect())
}

fn check_deg_falling_via_jindalrae(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| cmp(format!("n={n}"), deg_falling_factorial(n), family_sum(&c.jindalrae, &c.j1, n)))
        .collect())
}

fn check_gaenari_jindalrae_agree(c: &Context) -> Result<Vec<Comparison>> {
    Ok((0..=c.order)
        .map(|n| {
            cmp(
                format!("n={n}"),
                family_sum(&c.gaenari, &c.j2, n),
                family_sum(&c.jindalrae, &c.j1, n),
            )
        })
        .collect())
}

fn check_degbell_routes(c: &Context) -> Result<Vec<Comparison>> {
    let gf = families::from_generating_function(FamilyKind::DegBell, &deg_exp_minus_one(c.order))?;
    Ok(families_agree(&c.bell, &gf))
}

fn check_newtypebell_routes(c: &Context) -> Result<Vec<Comparison>> {
    let s2 = c.s2.specialized(triangles::TriangleKind::S2Classical, &rat(0));
    let sum = families::explicit_sum(FamilyKind::NewTypeBell, &s2);
    let e = &triangles_exp(c.order) - &Series::one(c.order);
    let gf = families::from_generating_function(FamilyKind::NewTypeBell, &e)?;
    let mut out = families_agree(&sum, &gf);
    for n in 0..=c.order.min(ORACLE_N) {
        out.push(cmp(
            format!("λ=0 n={n}"),
            sum[n].specialize_lambda(&rat(0)),
            families::bell_polynomial_oracle(n),
        ));
    }
    Ok(out)
}

fn triangles_exp(order: usize) -> Series<LambdaPoly> {
    crate::series::exp_classical(order)
}

fn check_classical_s1(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order.min(ORACLE_N) {
        for k in 0..=n {
            let value = c.s1[(n, k)].specialize(&rat(0));
            let expected = rat(oracle::signed_cycle_oracle(n, k));
            out.push(cmp(nk(n, k), LambdaPoly::constant(value), LambdaPoly::constant(expected)));
        }
    }
    Ok(out)
}

fn check_classical_s2(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order.min(ORACLE_N) {
        let counts = oracle::partition_counts(n);
        for k in 0..=n {
            let value = c.s2[(n, k)].specialize(&rat(0));
            out.push(cmp(
                nk(n, k),
                LambdaPoly::constant(value),
                counts[k] as i64,
            ));
        }
    }
    Ok(out)
}

fn check_classical_bell(c: &Context) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for n in 0..=c.order.min(ORACLE_N) {
        let value = c.bell[n].evaluate(&rat(0), &rat(1));
        out.push(cmp(
            format!("B_n n={n}"),
            LambdaPoly::constant(value),
            oracle::bell_number_classical(n) as i64,
        ));
        out.push(cmp(
            format!("B_n(x) n={n}"),
            c.bell[n].specialize_lambda(&rat(0)),
            families::bell_polynomial_oracle(n),
        ));
    }
    Ok(out)
}

fn check_t_routes(c: &Context) -> Result<Vec<Comparison>> {
    let conv = triangles::t_numbers_convolution(c.order);
    let mut out = triangles_agree(&conv, &triangles::t_numbers_series(c.order));
    for n in 0..=c.order.min(triangles::T_MULTINOMIAL_MAX_N) {
        for k in 0..=n {
            let multi = LambdaPoly::constant(Rational::from_integer(triangles::t_number_multinomial(n, k)));
            out.push(cmp(format!("multinomial {}", nk(n, k)), conv[(n, k)].clone(), multi));
        }
    }
    Ok(out)
}

fn check_t_bell(c: &Context) -> Result<Vec<Comparison>> {
    let conv = triangles::t_numbers_convolution(c.order.min(ORACLE_N));
    Ok((1..=conv.order())
        .map(|n| cmp(format!("n={n}"), conv[(n, 1)].clone(), oracle::bell_number_classical(n) as i64))
        .collect())
}

fn check_deg_log(c: &Context) -> Result<Vec<Comparison>> {
    let inverse = deg_exp_minus_one(c.order).comp_inverse()?;
    Ok(series_agree("log", &deg_log(c.order), &inverse))
}

fn check_inverse_pairs(c: &Context) -> Result<Vec<Comparison>> {
    let order = c.order.max(INVERSION_ORDER);
    let t = Series::identity(order);
    let mut out = Vec::new();
    let pairs = [
        ("e-1", deg_exp_minus_one(order)),
        ("log", deg_log(order)),
        ("e(e-1)-1", iterated_deg_exp(order)),
        ("log(log+1)", iterated_deg_log(order)),
    ];
    for (label, f) in &pairs {
        let inv = f.comp_inverse()?;
        out.extend(series_agree(&format!("f∘f̄ {label}"), &f.compose(&inv)?, &t));
        out.extend(series_agree(&format!("f̄∘f {label}"), &inv.compose(f)?, &t));
    }
    out.extend(series_agree(
        "inverse of e(e-1)-1",
        &iterated_deg_exp(c.order).comp_inverse()?,
        &iterated_deg_log(c.order),
    ));
    Ok(out)
}

fn slice_tables(c: &Context) -> (usize, Vec<Vec<LambdaPoly>>, Vec<Vec<LambdaPoly>>) {
    let n_max = c.order.min(SLICE_N);
    (
        n_max,
        triangles::slice_table(n_max, n_max, triangles::korobov),
        triangles::slice_table(n_max, n_max, triangles::deg_bernoulli),
    )
}

fn slice_check(c: &Context, korobov: bool, m: usize) -> Result<Vec<Comparison>> {
    let (n_max, k_table, b_table) = slice_tables(c);
    let (table, tri) = match (korobov, m) {
        (true, 2) => (&k_table, &c.j2),
        (true, _) => (&k_table, &c.s2),
        (false, 2) => (&b_table, &c.j1),
        (false, _) => (&b_table, &c.s1),
    };
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            let expected = match m {
                1 => tri[(n, k)].clone(),
                2 => tri[(n, k)].clone(),
                _ => {
                    // m-fold product of the base triangle
                    let base = if korobov { &c.s2 } else { &c.s1 };
                    let mut power = base.clone();
                    for _ in 1..m {
                        power = base.convolve(&power, base.kind());
                    }
                    power[(n, k)].clone()
                }
            };
            let formula = if m == 1 {
                triangles::binomial_slice(table, n, k)
            } else {
                triangles::multinomial_slice_sum(table, n, k, m)
            };
            out.push(cmp(nk(n, k), expected, formula));
        }
    }
    Ok(out)
}

fn check_korobov_slice(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, true, 1)
}
fn check_korobov_square(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, true, 2)
}
fn check_korobov_cube(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, true, 3)
}
fn check_bernoulli_slice(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, false, 1)
}
fn check_bernoulli_square(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, false, 2)
}
fn check_bernoulli_cube(c: &Context) -> Result<Vec<Comparison>> {
    slice_check(c, false, 3)
}

/// Sheffer sequences used for the group-law checks.
pub fn test_sequences(order: usize) -> Result<Vec<(&'static str, ShefferSeq)>> {
    let one = Series::one(order);
    Ok(vec![
        ("(1,t)", umbral::identity_seq(order)),
        ("(1,e-1)", ShefferSeq::from_pair(&one, &deg_exp_minus_one(order), order)?),
        ("(1,log)", ShefferSeq::from_pair(&one, &deg_log(order), order)?),
        ("(e,t)", ShefferSeq::from_pair(&deg_exp(order), &Series::identity(order), order)?),
        ("(e,log)", ShefferSeq::from_pair(&deg_exp(order), &deg_log(order), order)?),
    ])
}

fn matrices_agree(label: &str, a: &ShefferSeq, b: &ShefferSeq) -> Vec<Comparison> {
    let mut out = Vec::new();
    for n in 0..=a.order().min(b.order()) {
        for k in 0..=n {
            out.push(cmp(
                format!("{label} {}", nk(n, k)),
                a.entry(n, k).clone(),
                b.entry(n, k).clone(),
            ));
        }
    }
    out
}

fn check_group_law(c: &Context) -> Result<Vec<Comparison>> {
    let order = c.order.min(UMBRAL_N);
    let seqs = test_sequences(order)?;
    let mut out = Vec::new();
    for (qn, q) in &seqs {
        for (pn, p) in &seqs {
            let product = umbral::umbral_compose(q, p)?;
            let regenerated = ShefferSeq::from_pair(product.g(), product.f(), order)?;
            out.extend(matrices_agree(&format!("{qn}∘{pn}"), &product, &regenerated));
        }
    }
    Ok(out)
}

fn check_inverse_law(c: &Context) -> Result<Vec<Comparison>> {
    let order = c.order.min(UMBRAL_N);
    let id = umbral::identity_seq(order);
    let mut out = Vec::new();
    for (name, s) in test_sequences(order)? {
        let inv = s.inverse()?;
        out.extend(matrices_agree(&format!("inv∘{name}"), &umbral::umbral_compose(&inv, &s)?, &id));
        out.extend(matrices_agree(&format!("{name}∘inv"), &umbral::umbral_compose(&s, &inv)?, &id));
    }
    Ok(out)
}

fn check_umbral_powers(c: &Context) -> Result<Vec<Comparison>> {
    let order = c.order.min(MATRIX_POWER_N);
    let mut out = Vec::new();
    for (name, r) in [("S2", umbral::stirling2_seq(order)), ("S1", umbral::stirling1_seq(order))] {
        for m in [2, 3] {
            let power = umbral::umbral_power(&r, m)?;
            for n in 0..=order {
                for k in 0..=n {
                    out.push(cmp(
                        format!("{name} m={m} {}", nk(n, k)),
                        power.entry(n, k).clone(),
                        umbral::explicit_power_entry(&r, m, n, k),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn check_jindalrae_umbral(c: &Context) -> Result<Vec<Comparison>> {
    let r = umbral::stirling2_seq(c.order);
    let composed = umbral::umbral_compose(&umbral::umbral_power(&r, 2)?, &umbral::deg_falling_seq(c.order))?;
    let fam = PolyFamily::new(FamilyKind::Jindalrae, composed.polys());
    Ok(families_agree(&fam, &c.jindalrae))
}

fn check_gaenari_umbral(c: &Context) -> Result<Vec<Comparison>> {
    let r = umbral::stirling1_seq(c.order);
    let composed = umbral::umbral_compose(&umbral::umbral_power(&r, 2)?, &umbral::deg_falling_seq(c.order))?;
    let fam = PolyFamily::new(FamilyKind::Gaenari, composed.polys());
    Ok(families_agree(&fam, &c.gaenari))
}

fn check_umbral_substitution(c: &Context) -> Result<Vec<Comparison>> {
    let order = c.order.min(UMBRAL_N);
    let s = umbral::deg_falling_seq(order);
    let mut out = Vec::new();
    let cases = [
        ("J", umbral::stirling2_seq(order), iterated_deg_exp(order)),
        ("G", umbral::stirling1_seq(order), iterated_deg_log(order)),
    ];
    for (label, r, inner) in &cases {
        let report = umbral::substitution_check(r, &s, 2)?;
        let direct = deg_exp_x(order).compose(&inner.lift_x())?;
        out.extend(series_agree(&format!("{label} composed"), &report.composed_egf, &report.substituted_egf));
        out.extend(series_agree(&format!("{label} direct"), &report.substituted_egf, &direct));
        out.extend(series_agree(
            &format!("{label} inverse"),
            &report.inverse_of_composite,
            &report.composite_of_inverses,
        ));
    }
    for m in 1..=3 {
        let report = umbral::substitution_check(&umbral::identity_seq(order), &s, m)?;
        out.extend(series_agree(&format!("(1,t) m={m}"), &report.composed_egf, &report.substituted_egf));
    }
    Ok(out)
}

/// Every registered identity, in reporting order.
pub fn registry() -> Vec<Identity> {
    macro_rules! id {
        ($id:literal, $desc:literal, $f:expr) => {
            Identity { id: $id, description: $desc, optional: false, check: $f }
        };
        ($id:literal, $desc:literal, $f:expr, optional) => {
            Identity { id: $id, description: $desc, optional: true, check: $f }
        };
    }
    vec![
        id!("s2deg-routes", "S2deg by series powers equals S2deg by change of basis (x)_{n,λ} -> (x)_k", check_s2_routes),
        id!("s1deg-routes", "S1deg by series powers equals S1deg by change of basis (x)_n -> (x)_{k,λ}", check_s1_routes),
        id!("stirling-orthogonality", "S1deg and S2deg are mutually inverse triangles", check_orthogonality),
        id!("j2-from-s2deg", "J2(n,k) = Σ_m S2deg(n,m) S2deg(m,k)", check_j2_from_s2deg),
        id!("s2deg-from-j2", "S2deg(n,k) = Σ_m J2(m,k) S1deg(n,m)", check_s2deg_from_j2),
        id!("j2-first-column", "J2(n,1) = B_{n,λ} = Σ_m S2deg(n,m) (1)_{m,λ}", check_j2_first_column),
        id!("s2deg-first-column", "S2deg(n,1) = Σ_m B_{m,λ} S1deg(n,m) and S2deg(n,1) = (1)_{n,λ}", check_s2deg_first_column),
        id!("bell-against-s1deg", "Σ_m B_{m,λ} S1deg(n,m) = (1)_{n,λ}", check_bell_against_s1deg),
        id!("j1-from-s1deg", "J1(n,k) = Σ_m S1deg(n,m) S1deg(m,k)", check_j1_from_s1deg),
        id!("j1-first-column", "J1(n,1) = Σ_m (m-1)! C(λ-1,m-1) S1deg(n,m)", check_j1_first_column),
        id!("j2-differences", "J2(n,k) = (1/k!) Σ_l C(k,l)(-1)^{k-l} B_{n,λ}(l), vanishing for n < k", check_j2_differences),
        id!("s1deg-from-j1", "S1deg(n,l) = Σ_k J1(n,k) S2deg(k,l)", check_s1deg_from_j1),
        id!("s1deg-first-column", "S1deg(n,1) = Σ_k (1)_{k,λ} J1(n,k)", check_s1deg_first_column),
        id!("jindalrae-gf", "J_{n,λ}(x) explicit sum equals its generating function", check_jindalrae_gf),
        id!("degbell-from-jindalrae", "B_{n,λ}(x) = Σ_m J_{m,λ}(x) S1deg(n,m)", check_degbell_from_jindalrae),
        id!("jindalrae-from-degbell", "J_{n,λ}(x) = Σ_m B_{m,λ}(x) S2deg(n,m)", check_jindalrae_from_degbell),
        id!("gaenari-gf", "G_{n,λ}(x) explicit sum equals its generating function", check_gaenari_gf),
        id!("falling-from-gaenari", "(x)_n = Σ_m G_{m,λ}(x) S2deg(n,m)", check_falling_from_gaenari),
        id!("gaenari-numbers-vanish", "Σ_m G_{m,λ} S2deg(n,m) is 1 for n <= 1 and 0 beyond", check_gaenari_numbers_vanish),
        id!("gaenari-numbers-closed", "G_{n,λ} = λ^{n-1}(1)_{n,1/λ}", check_gaenari_numbers_closed),
        id!("gaenari-binomial-gf", "G_{n,λ}(x) are the coefficients of (1 + log_λ(1+t))^x", check_gaenari_binomial_gf),
        id!("deg-falling-via-gaenari", "(x)_{n,λ} = Σ_m G_{m,λ}(x) J2(n,m)", check_deg_falling_via_gaenari),
        id!("deg-falling-via-jindalrae", "(x)_{n,λ} = Σ_m J_{m,λ}(x) J1(n,m)", check_deg_falling_via_jindalrae),
        id!("gaenari-jindalrae-agree", "Σ_m G_{m,λ}(x) J2(n,m) = Σ_m J_{m,λ}(x) J1(n,m)", check_gaenari_jindalrae_agree),
        id!("degbell-routes", "B_{n,λ}(x) explicit sum equals its generating function", check_degbell_routes),
        id!("newtypebell-routes", "Bel_{n,λ}(x) explicit sum equals its generating function and is B_n(x) at λ=0", check_newtypebell_routes),
        id!("classical-s1", "S1deg at λ=0 equals the coefficients of x(x-1)...(x-n+1)", check_classical_s1),
        id!("classical-s2", "S2deg at λ=0 equals set-partition counts", check_classical_s2),
        id!("classical-bell", "B_{n,λ}(x) at λ=0 equals enumerated Bell polynomials", check_classical_bell),
        id!("t-routes", "T(n,k): convolution, series and multinomial Bell sum agree", check_t_routes),
        id!("t-bell", "T(n,1) = B_n", check_t_bell),
        id!("deg-log", "log_λ(1+t) is the compositional inverse of e_λ(t) - 1", check_deg_log),
        id!("inversion", "compositional inverses round-trip; e_λ(e_λ(t)-1)-1 inverts to log_λ(log_λ(1+t)+1)", check_inverse_pairs),
        id!("korobov-slice", "S2deg(n,k) = C(n-1,k-1) K_{n-k,(n)}(λ)", check_korobov_slice),
        id!("korobov-square", "J2(n,k) as a multinomial sum of Korobov-number products", check_korobov_square),
        id!("bernoulli-slice", "S1deg(n,k) = C(n-1,k-1) β_{n-k,(n)}(λ)", check_bernoulli_slice),
        id!("bernoulli-square", "J1(n,k) as a multinomial sum of degenerate Bernoulli products", check_bernoulli_square),
        id!("umbral-group-law", "umbral composition acts on pairs by (g·h(f), ℓ(f))", check_group_law),
        id!("umbral-inverse-law", "a sequence composed with its inverse pair is the identity", check_inverse_law),
        id!("umbral-powers", "umbral powers equal the explicit multi-index matrix sum", check_umbral_powers),
        id!("jindalrae-umbral", "J_{n,λ}(x) = r^{(2)} ∘ (x)_{n,λ} with r the S2deg sequence", check_jindalrae_umbral),
        id!("gaenari-umbral", "G_{n,λ}(x) = r^{(2)} ∘ (x)_{n,λ} with r the S1deg sequence", check_gaenari_umbral),
        id!("umbral-substitution", "generating function of r^{(m)}∘s is that of s at ℓ̄^m(t)", check_umbral_substitution),
        id!("korobov-cube", "three-fold S2deg product as a Korobov multinomial sum", check_korobov_cube, optional),
        id!("bernoulli-cube", "three-fold S1deg product as a degenerate Bernoulli multinomial sum", check_bernoulli_cube, optional),
    ]
}

fn evaluate(
    id: &str,
    order: usize,
    comparisons: &Result<Vec<Comparison>>,
    lambda: Option<&Rational>,
) -> CheckResult {
    let label = lambda.map_or_else(|| "symbolic".to_string(), render_rational);
    let result = |witness: Option<Witness>| CheckResult {
        id: id.to_string(),
        order,
        lambda: label.clone(),
        status: if witness.is_some() { Status::Fail } else { Status::Pass },
        witness,
    };
    let comparisons = match comparisons {
        Ok(c) => c,
        Err(e) => {
            return result(Some(Witness {
                at: "evaluation".into(),
                lhs: e.to_string(),
                rhs: String::new(),
            }))
        }
    };
    for c in comparisons {
        let (lhs, rhs) = match lambda {
            None => (c.lhs.clone(), c.rhs.clone()),
            Some(l) => (c.lhs.specialize(l), c.rhs.specialize(l)),
        };
        if lhs != rhs {
            return result(Some(Witness {
                at: c.at.clone(),
                lhs: lhs.render(),
                rhs: rhs.render(),
            }));
        }
    }
    result(None)
}

/// Selects identities from the registry, rejecting unknown ids.
pub fn select(config: &SuiteConfig) -> Result<Vec<Identity>> {
    let all = registry();
    match &config.identity_filter {
        None => Ok(all
            .into_iter()
            .filter(|i| !i.optional || config.include_optional)
            .collect()),
        Some(filter) => {
            if let Some(bad) = filter.iter().find(|f| !all.iter().any(|i| i.id == f.as_str())) {
                return Err(Error::Unknown {
                    what: "identity id",
                    name: bad.clone(),
                });
            }
            Ok(all
                .into_iter()
                .filter(|i| filter.iter().any(|f| f == i.id))
                .collect())
        }
    }
}

/// Runs the selected identities. Results come back in registry order, each
/// identity first with λ symbolic and then at every requested λ.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    if config.order < 1 {
        return Err(Error::Precondition("suite order must be at least 1".into()));
    }
    let selected = select(config)?;
    let ctx = Context::new(config.order);
    let results: Vec<Vec<CheckResult>> = selected
        .par_iter()
        .map(|identity| {
            let comparisons = (identity.check)(&ctx);
            std::iter::once(None)
                .chain(config.lambda_specializations.iter().map(Some))
                .map(|l| evaluate(identity.id, config.order, &comparisons, l))
                .collect()
        })
        .collect();
    Ok(results.into_iter().flatten().collect())
}
