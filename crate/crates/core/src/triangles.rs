//! Number triangles indexed by (n, k), each produced by two independent
//! routes that must agree.
//!
//! The series route reads EGF coefficients off (1/k!)·F(t)^k. The second
//! route is either a change of polynomial basis (degenerate Stirling
//! numbers) or a convolution of simpler triangles (Jindalrae-Stirling
//! numbers and T(n, k)).

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::oracle;
use crate::poly::{deg_falling_factorial, falling_factorial, LambdaPoly, XPoly};
use crate::rational::{binomial, factorial, multinomial, rat, Rational};
use crate::ring::Coeff;
use crate::series::{
    deg_exp_minus_one, deg_log, exp_classical, iterated_deg_exp, iterated_deg_log, Series,
};

static ZERO: LambdaPoly = LambdaPoly::ZERO;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    S1Classical,
    S2Classical,
    S1Deg,
    S2Deg,
    J1Deg,
    J2Deg,
    TCompose,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 7] = [
        TriangleKind::S1Classical,
        TriangleKind::S2Classical,
        TriangleKind::S1Deg,
        TriangleKind::S2Deg,
        TriangleKind::J1Deg,
        TriangleKind::J2Deg,
        TriangleKind::TCompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::S1Classical => "s1",
            TriangleKind::S2Classical => "s2",
            TriangleKind::S1Deg => "s1deg",
            TriangleKind::S2Deg => "s2deg",
            TriangleKind::J1Deg => "j1",
            TriangleKind::J2Deg => "j2",
            TriangleKind::TCompose => "t",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unknown {
                what: "triangle kind",
                name: name.to_string(),
            })
    }

    /// Whether entries never depend on λ.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            TriangleKind::S1Classical | TriangleKind::S2Classical | TriangleKind::TCompose
        )
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lower-triangular table of λ-polynomials; `rows[n]` holds k = 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    kind: TriangleKind,
    order: usize,
    rows: Vec<Vec<LambdaPoly>>,
}

impl Triangle {
    pub fn from_fn(
        kind: TriangleKind,
        order: usize,
        mut f: impl FnMut(usize, usize) -> LambdaPoly,
    ) -> Self {
        let rows = (0..=order)
            .map(|n| (0..=n).map(|k| f(n, k)).collect())
            .collect();
        Triangle { kind, order, rows }
    }

    /// Column k of the triangle is the EGF of `columns[k]`.
    fn from_columns(kind: TriangleKind, order: usize, columns: &[Series<LambdaPoly>]) -> Self {
        Triangle::from_fn(kind, order, |n, k| columns[k].egf_coeff(n))
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[Vec<LambdaPoly>] {
        &self.rows
    }

    /// Entry (n, k); zero above the diagonal, an error past the stored order.
    pub fn get(&self, n: usize, k: usize) -> Result<&LambdaPoly> {
        if n > self.order {
            return Err(Error::OutOfRange {
                n,
                k,
                order: self.order,
            });
        }
        Ok(self.rows[n].get(k).unwrap_or(&ZERO))
    }

    pub fn specialize(&self, lambda: &Rational) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|p| p.specialize(lambda)).collect())
            .collect()
    }

    /// Replaces every entry by its value at λ = `lambda`, as constants.
    pub fn specialized(&self, kind: TriangleKind, lambda: &Rational) -> Triangle {
        Triangle::from_fn(kind, self.order, |n, k| {
            LambdaPoly::constant(self[(n, k)].specialize(lambda))
        })
    }

    /// Fails with the first differing entry.
    pub fn ensure_same(&self, other: &Triangle, what: &str) -> Result<()> {
        let order = self.order.min(other.order);
        for n in 0..=order {
            for k in 0..=n {
                let (a, b) = (&self.rows[n][k], &other.rows[n][k]);
                if a != b {
                    return Err(Error::RouteMismatch {
                        what: what.to_string(),
                        at: format!("(n={n}, k={k})"),
                        left: a.to_string(),
                        right: b.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `(self · other)(n, k) = Σ_{m=k}^{n} self(n, m) · other(m, k)`.
    pub fn convolve(&self, other: &Triangle, kind: TriangleKind) -> Triangle {
        let order = self.order.min(other.order);
        Triangle::from_fn(kind, order, |n, k| {
            (k..=n).map(|m| &self.rows[n][m] * &other.rows[m][k]).sum()
        })
    }
}

impl Index<(usize, usize)> for Triangle {
    type Output = LambdaPoly;

    /// Panics past the stored order; see [`Triangle::get`].
    fn index(&self, (n, k): (usize, usize)) -> &LambdaPoly {
        self.get(n, k).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Coordinates of `p` in a basis of monic polynomials, `basis(d)` of degree d.
pub fn expand_in_basis(p: &XPoly, basis: impl Fn(usize) -> XPoly) -> Vec<LambdaPoly> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut rest = p.clone();
    let mut out = vec![LambdaPoly::ZERO; deg + 1];
    for d in (0..=deg).rev() {
        let c = rest.coeff(d);
        if c.is_zero() {
            continue;
        }
        let b = basis(d);
        debug_assert_eq!(b.degree(), Some(d));
        rest = &rest - &b.map_coeffs(|a| a * &c);
        out[d] = c;
    }
    debug_assert!(rest.is_zero());
    out
}

fn basis_triangle(
    kind: TriangleKind,
    order: usize,
    source: impl Fn(usize) -> XPoly,
    basis: impl Fn(usize) -> XPoly + Copy,
) -> Triangle {
    let rows: Vec<Vec<LambdaPoly>> = (0..=order)
        .map(|n| {
            let mut row = expand_in_basis(&source(n), basis);
            row.resize(n + 1, LambdaPoly::ZERO);
            row
        })
        .collect();
    Triangle::from_fn(kind, order, |n, k| rows[n][k].clone())
}

/// S_{2,λ}(n, k) from (1/k!)(e_λ(t) - 1)^k.
pub fn stirling2_deg_series(order: usize) -> Triangle {
    let cols = deg_exp_minus_one(order).scaled_powers(order);
    Triangle::from_columns(TriangleKind::S2Deg, order, &cols)
}

/// S_{2,λ}(n, k) as coordinates of (x)_{n,λ} in the basis (x)_k.
pub fn stirling2_deg_basis(order: usize) -> Triangle {
    basis_triangle(
        TriangleKind::S2Deg,
        order,
        deg_falling_factorial,
        falling_factorial,
    )
}

/// Degenerate Stirling numbers of the second kind, both routes checked.
pub fn stirling2_deg(order: usize) -> Result<Triangle> {
    let t = stirling2_deg_series(order);
    t.ensure_same(&stirling2_deg_basis(order), "S2deg series vs basis change")?;
    Ok(t)
}

/// S_{1,λ}(n, k) from (1/k!)(log_λ(1+t))^k.
pub fn stirling1_deg_series(order: usize) -> Triangle {
    let cols = deg_log(order).scaled_powers(order);
    Triangle::from_columns(TriangleKind::S1Deg, order, &cols)
}

/// S_{1,λ}(n, k) as coordinates of (x)_n in the basis (x)_{k,λ}.
pub fn stirling1_deg_basis(order: usize) -> Triangle {
    basis_triangle(
        TriangleKind::S1Deg,
        order,
        falling_factorial,
        deg_falling_factorial,
    )
}

/// Degenerate Stirling numbers of the first kind, both routes checked.
pub fn stirling1_deg(order: usize) -> Result<Triangle> {
    let t = stirling1_deg_series(order);
    t.ensure_same(&stirling1_deg_basis(order), "S1deg series vs basis change")?;
    Ok(t)
}

/// Jindalrae-Stirling numbers of the second kind from
/// (1/k!)(e_λ(e_λ(t) - 1) - 1)^k.
pub fn jstirling2_series(order: usize) -> Triangle {
    let cols = iterated_deg_exp(order).scaled_powers(order);
    Triangle::from_columns(TriangleKind::J2Deg, order, &cols)
}

/// Σ_m S_{2,λ}(n, m) S_{2,λ}(m, k).
pub fn jstirling2_convolution(order: usize) -> Triangle {
    let s2 = stirling2_deg_series(order);
    s2.convolve(&s2, TriangleKind::J2Deg)
}

pub fn jstirling2(order: usize) -> Result<Triangle> {
    let t = jstirling2_series(order);
    t.ensure_same(&jstirling2_convolution(order), "J2 series vs convolution")?;
    Ok(t)
}

/// Jindalrae-Stirling numbers of the first kind from
/// (1/k!)(log_λ(log_λ(1+t) + 1))^k.
pub fn jstirling1_series(order: usize) -> Triangle {
    let cols = iterated_deg_log(order).scaled_powers(order);
    Triangle::from_columns(TriangleKind::J1Deg, order, &cols)
}

/// Σ_m S_{1,λ}(n, m) S_{1,λ}(m, k).
pub fn jstirling1_convolution(order: usize) -> Triangle {
    let s1 = stirling1_deg_series(order);
    s1.convolve(&s1, TriangleKind::J1Deg)
}

pub fn jstirling1(order: usize) -> Result<Triangle> {
    let t = jstirling1_series(order);
    t.ensure_same(&jstirling1_convolution(order), "J1 series vs convolution")?;
    Ok(t)
}

/// Signed classical S_1 and classical S_2, in that order, as the λ = 0
/// specializations of the degenerate triangles. Up to the oracle limit both
/// are checked against brute-force enumeration.
pub fn classical_triangles(order: usize) -> Result<(Triangle, Triangle)> {
    let zero = rat(0);
    let s1 = stirling1_deg(order)?.specialized(TriangleKind::S1Classical, &zero);
    let s2 = stirling2_deg(order)?.specialized(TriangleKind::S2Classical, &zero);
    let checked = order.min(oracle::ORACLE_MAX_N);
    let s1_oracle = Triangle::from_fn(TriangleKind::S1Classical, checked, |n, k| {
        LambdaPoly::from_ints(&[oracle::signed_cycle_oracle(n, k)])
    });
    let s2_oracle = Triangle::from_fn(TriangleKind::S2Classical, checked, |n, k| {
        LambdaPoly::constant(Rational::from_integer(oracle::partition_oracle(n, k).into()))
    });
    s1.ensure_same(&s1_oracle, "classical S1 vs cycle oracle")?;
    s2.ensure_same(&s2_oracle, "classical S2 vs partition oracle")?;
    Ok((s1, s2))
}

/// Largest n for which the multinomial Bell-product route is evaluated.
pub const T_MULTINOMIAL_MAX_N: usize = 8;

/// T(n, k) as Σ_m S_2(n, m) S_2(m, k) with classical S_2.
pub fn t_numbers_convolution(order: usize) -> Triangle {
    let s2 = stirling2_deg_series(order).specialized(TriangleKind::S2Classical, &rat(0));
    s2.convolve(&s2, TriangleKind::TCompose)
}

/// T(n, k) from (1/k!)(e^{e^t - 1} - 1)^k.
pub fn t_numbers_series(order: usize) -> Triangle {
    let e = &exp_classical(order) - &Series::one(order);
    let inner = e.compose(&e).expect("e^t - 1 has zero constant term");
    Triangle::from_columns(TriangleKind::TCompose, order, &inner.scaled_powers(order))
}

fn compositions(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut impl FnMut(&[usize])) {
    if k == 0 {
        if n == 0 {
            out(prefix);
        }
        return;
    }
    for first in 1..=n.saturating_sub(k - 1) {
        prefix.push(first);
        compositions(n - first, k - 1, prefix, out);
        prefix.pop();
    }
}

/// T(n, k) = (1/k!) Σ multinomial(n; n_1..n_k) B_{n_1}...B_{n_k} over
/// compositions of n into k positive parts, with Bell numbers from set
/// partition enumeration.
pub fn t_number_multinomial(n: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::from(u8::from(n == 0));
    }
    let bells: Vec<BigInt> = (0..=n).map(|m| oracle::bell_number_classical(m).into()).collect();
    let mut total = BigInt::from(0);
    compositions(n, k, &mut Vec::new(), &mut |parts| {
        let product = parts
            .iter()
            .fold(multinomial(n, parts), |acc, &p| acc * &bells[p]);
        total += product;
    });
    total / factorial(k)
}

/// T(n, k) by convolution, checked against the series route for every n and
/// the multinomial route for n ≤ 8.
pub fn t_numbers(order: usize) -> Result<Triangle> {
    let t = t_numbers_convolution(order);
    t.ensure_same(&t_numbers_series(order), "T convolution vs series")?;
    let checked = order.min(T_MULTINOMIAL_MAX_N);
    let multi = Triangle::from_fn(TriangleKind::TCompose, checked, |n, k| {
        LambdaPoly::constant(Rational::from_integer(t_number_multinomial(n, k)))
    });
    t.ensure_same(&multi, "T convolution vs multinomial Bell sum")?;
    Ok(t)
}

/// The triangle of the given kind, with every available route cross-checked.
pub fn triangle(kind: TriangleKind, order: usize) -> Result<Triangle> {
    match kind {
        TriangleKind::S1Classical => Ok(classical_triangles(order)?.0),
        TriangleKind::S2Classical => Ok(classical_triangles(order)?.1),
        TriangleKind::S1Deg => stirling1_deg(order),
        TriangleKind::S2Deg => stirling2_deg(order),
        TriangleKind::J1Deg => jstirling1(order),
        TriangleKind::J2Deg => jstirling2(order),
        TriangleKind::TCompose => t_numbers(order),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// Korobov numbers of the first kind of order r.
    Korobov(usize),
    /// Degenerate Bernoulli numbers of order r.
    DegBernoulli(usize),
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Korobov(_) => "korobov",
            SequenceKind::DegBernoulli(_) => "degbernoulli",
        }
    }

    pub fn r(self) -> usize {
        match self {
            SequenceKind::Korobov(r) | SequenceKind::DegBernoulli(r) => r,
        }
    }
}

/// A single indexed slice n ↦ value, e.g. K_{n,(r)}(λ) for fixed r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberSeq {
    pub kind: SequenceKind,
    pub values: Vec<LambdaPoly>,
}

impl NumberSeq {
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

fn powered_slice(base: &Series<LambdaPoly>, r: usize, kind: SequenceKind) -> Result<NumberSeq> {
    if r == 0 {
        return Err(Error::Precondition("order r must be at least 1".into()));
    }
    let values = base.t_over()?.pow(r).egf_coeffs();
    Ok(NumberSeq { kind, values })
}

/// K_{n,(r)}(λ) for n ≤ `order`: EGF coefficients of (t / log_λ(1+t))^r.
pub fn korobov(order: usize, r: usize) -> Result<NumberSeq> {
    powered_slice(&deg_log(order + 1), r, SequenceKind::Korobov(r))
}

/// β_{n,(r)}(λ) for n ≤ `order`: EGF coefficients of (t / (e_λ(t) - 1))^r.
pub fn deg_bernoulli(order: usize, r: usize) -> Result<NumberSeq> {
    powered_slice(&deg_exp_minus_one(order + 1), r, SequenceKind::DegBernoulli(r))
}

/// `table[r][j]` = K_{j,(r)}(λ) (or β) for 1 ≤ r ≤ `max_r`, j ≤ `order`;
/// row 0 is left empty.
pub fn slice_table(
    order: usize,
    max_r: usize,
    slice: fn(usize, usize) -> Result<NumberSeq>,
) -> Vec<Vec<LambdaPoly>> {
    std::iter::once(Vec::new())
        .chain((1..=max_r).map(|r| slice(order, r).expect("r >= 1").values))
        .collect()
}

/// The m-fold convolution identity in its multinomial form:
/// Σ_{k_1+..+k_m = n-k} multinomial(n-1; k_1..k_m, k-1)
///   · Π_j slice_{k_j, (n - Σ_{i>j} k_i)}.
///
/// `table` comes from [`slice_table`] with `max_r ≥ n`. Requires k ≥ 1.
pub fn multinomial_slice_sum(table: &[Vec<LambdaPoly>], n: usize, k: usize, m: usize) -> LambdaPoly {
    assert!(k >= 1 && k <= n && m >= 1);
    let mut total = LambdaPoly::ZERO;
    let mut parts = vec![0usize; m];
    fn walk(
        idx: usize,
        left: usize,
        parts: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if idx + 1 == parts.len() {
            parts[idx] = left;
            f(parts);
            return;
        }
        for v in 0..=left {
            parts[idx] = v;
            walk(idx + 1, left - v, parts, f);
        }
    }
    walk(0, n - k, &mut parts, &mut |ks| {
        let mut counts = ks.to_vec();
        counts.push(k - 1);
        let coeff = Rational::from_integer(multinomial(n - 1, &counts));
        let mut product = LambdaPoly::constant(coeff);
        for j in 0..m {
            let tail: usize = ks[j + 1..].iter().sum();
            product = &product * &table[n - tail][ks[j]];
        }
        total = &total + &product;
    });
    total
}

/// C(n-1, k-1) · slice_{n-k, (n)}: the m = 1 case.
pub fn binomial_slice(table: &[Vec<LambdaPoly>], n: usize, k: usize) -> LambdaPoly {
    let c = Rational::from_integer(binomial(n - 1, k - 1));
    table[n][n - k].scale(&c)
}
