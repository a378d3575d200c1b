//! Truncated power series in t over a [`Coeff`] ring.
//!
//! A `Series` of order N stores the raw coefficients c_0..c_N of t^0..t^N and
//! is known modulo t^(N+1). Generating functions are exponential, so the
//! conventional accessor is [`Series::egf_coeff`], which returns n!·c_n.
//! Binary operations truncate to the smaller of the two orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{deg_falling_factorial, lambda_shifted_falling, LambdaPoly, XPoly};
use crate::rational::{factorial, rat, Rational};
use crate::ring::Coeff;

#[derive(Clone, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn inv_fact(n: usize) -> Rational {
    Rational::new(BigInt::from(1), factorial(n))
}

impl<C: Coeff> Series<C> {
    /// Builds a series from raw coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Series { coeffs }
    }

    pub fn from_raw(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series::new((0..=order).map(f).collect())
    }

    /// Builds Σ a_n t^n/n! from its EGF coefficients a_n.
    pub fn from_egf(order: usize, mut f: impl FnMut(usize) -> C) -> Self {
        Series::from_raw(order, |n| f(n).scale(&inv_fact(n)))
    }

    pub fn zero(order: usize) -> Self {
        Series::from_raw(order, |_| C::zero())
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(C::one(), order)
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Raw coefficient of t^n. Panics beyond the order.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    /// n!·c_n.
    pub fn egf_coeff(&self, n: usize) -> C {
        self.coeffs[n].scale(&fact(n))
    }

    pub fn egf_coeffs(&self) -> Vec<C> {
        (0..=self.order()).map(|n| self.egf_coeff(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Series<D> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Series::one(self.order()), |acc, _| &acc * self)
    }

    /// f^k / k!.
    pub fn scaled_power(&self, k: usize) -> Self {
        self.pow(k).scale(&inv_fact(k))
    }

    /// The sequence f^0/0!, f^1/1!, ..., f^k/k!.
    pub fn scaled_powers(&self, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Series::one(self.order()));
        for j in 1..=k {
            let next = (&out[j - 1] * self).scale(&Rational::new(1.into(), j.into()));
            out.push(next);
        }
        out
    }

    /// `self(inner(t))`, by Horner's rule over truncated series.
    pub fn compose(&self, inner: &Series<C>) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant {
                coeff: inner.coeffs[0].render(),
            });
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Σ c_i·inner^i; inner^i has valuation >= i, so the products shrink
        let mut acc = Series::constant(self.coeffs[0].clone(), order);
        let mut power = inner.clone();
        for (i, c) in self.coeffs[..=order].iter().enumerate().skip(1) {
            if i > 1 {
                power = &power * &inner;
            }
            if !c.is_zero() {
                for (a, p) in acc.coeffs.iter_mut().zip(&power.coeffs).skip(i) {
                    if !p.is_zero() {
                        *a = a.add_ref(&c.mul_ref(p));
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Compositional inverse f̄ with f(f̄(t)) = f̄(f(t)) = t.
    ///
    /// Solved order by order: the t^n coefficient of f(g) is
    /// f_1·g_n plus terms involving only g_1..g_{n-1}.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(format!(
                "compositional inverse needs f(0) = 0, found {}",
                self.coeffs[0].render()
            )));
        }
        let order = self.order();
        if order == 0 {
            return Ok(Series::zero(0));
        }
        let f1_inv = self.coeffs[1].unit_inverse().ok_or_else(|| {
            Error::Precondition(format!(
                "compositional inverse needs an invertible t-coefficient, found {}",
                self.coeffs[1].render()
            ))
        })?;
        // powers[j][i] = [t^i] g^j, filled column by column
        let mut powers = vec![vec![C::zero(); order + 1]; order + 1];
        powers[1][1] = f1_inv.clone();
        for j in 2..=order {
            powers[j][j] = powers[j - 1][j - 1].mul_ref(&f1_inv);
        }
        for n in 2..=order {
            let mut rest = C::zero();
            for j in 2..=n {
                if j < n {
                    let mut c = C::zero();
                    for i in (j - 1)..n {
                        let g = &powers[1][n - i];
                        if !g.is_zero() && !powers[j - 1][i].is_zero() {
                            c = c.add_ref(&powers[j - 1][i].mul_ref(g));
                        }
                    }
                    powers[j][n] = c;
                }
                if !self.coeffs[j].is_zero() {
                    rest = rest.add_ref(&self.coeffs[j].mul_ref(&powers[j][n]));
                }
            }
            powers[1][n] = rest.neg_ref().mul_ref(&f1_inv);
        }
        let mut g = std::mem::take(&mut powers[1]);
        g[0] = C::zero();
        Ok(Series::new(g))
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn mul_inverse(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].unit_inverse().ok_or_else(|| {
            Error::Precondition(format!(
                "multiplicative inverse needs an invertible constant term, found {}",
                self.coeffs[0].render()
            ))
        })?;
        let order = self.order();
        let mut g: Vec<C> = Vec::with_capacity(order + 1);
        g.push(c0_inv.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for i in 1..=n {
                acc = acc.add_ref(&self.coeffs[i].mul_ref(&g[n - i]));
            }
            g.push(acc.neg_ref().mul_ref(&c0_inv));
        }
        Ok(Series::new(g))
    }

    /// f(t)/t for f with zero constant term; the order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant {
                coeff: self.coeffs[0].render(),
            });
        }
        if self.order() == 0 {
            return Err(Error::Precondition(
                "cannot divide an order-0 series by t".into(),
            ));
        }
        Ok(Series::new(self.coeffs[1..].to_vec()))
    }

    /// m-fold composition f∘f∘...∘f, left-associated; m = 0 gives t.
    pub fn compositional_power(&self, m: usize) -> Result<Self> {
        let mut acc = Series::identity(self.order());
        for _ in 0..m {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `t / f(t)` for a delta series f, valid to order `self.order() - 1`.
    pub fn t_over(&self) -> Result<Self> {
        self.shift_down()?.mul_inverse()
    }
}

impl Series<LambdaPoly> {
    /// Views the λ-coefficients as constant polynomials in x.
    pub fn lift_x(&self) -> Series<XPoly> {
        self.map(|c| XPoly::from_lambda(c.clone()))
    }

    pub fn specialize(&self, lambda: &Rational) -> Series<Rational> {
        self.map(|c| c.specialize(lambda))
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series::from_raw(order, |n| self.coeffs[n].add_ref(&rhs.coeffs[n]))
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        Series::from_raw(order, |n| self.coeffs[n].sub_ref(&rhs.coeffs[n]))
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Series::new(out)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map(Coeff::neg_ref)
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series{:?} + O(t^{})", self.coeffs, self.coeffs.len())
    }
}

/// e_λ(t) = Σ (1)_{n,λ} t^n/n!.
pub fn deg_exp(order: usize) -> Series<LambdaPoly> {
    Series::from_egf(order, |n| deg_falling_factorial(n).at_x(&rat(1)))
}

/// e_λ^x(t) = Σ (x)_{n,λ} t^n/n!.
pub fn deg_exp_x(order: usize) -> Series<XPoly> {
    Series::from_egf(order, deg_falling_factorial)
}

/// e_λ^e(t) for an arbitrary exponent e in the x-ring: EGF coefficients
/// e(e-λ)...(e-(n-1)λ).
pub fn deg_exp_pow(exponent: &XPoly, order: usize) -> Series<XPoly> {
    let lambda = XPoly::from_lambda(LambdaPoly::lambda());
    let mut falling = XPoly::one();
    Series::from_egf(order, |n| {
        if n > 0 {
            let j = XPoly::from_lambda(LambdaPoly::from_ints(&[(n - 1) as i64]));
            falling = &falling * &(exponent - &(&j * &lambda));
        }
        falling.clone()
    })
}

/// log_λ(1+t) = (1/λ)((1+t)^λ - 1), built from its closed-form EGF
/// coefficients (λ-1)(λ-2)...(λ-n+1) for n ≥ 1.
pub fn deg_log(order: usize) -> Series<LambdaPoly> {
    Series::from_egf(order, |n| match n {
        0 => LambdaPoly::ZERO,
        _ => lambda_shifted_falling(n),
    })
}

/// e_λ(t) - 1.
pub fn deg_exp_minus_one(order: usize) -> Series<LambdaPoly> {
    &deg_exp(order) - &Series::one(order)
}

/// e^t, with λ-free coefficients.
pub fn exp_classical(order: usize) -> Series<LambdaPoly> {
    Series::from_egf(order, |_| LambdaPoly::one())
}

/// log(1+t), with λ-free coefficients.
pub fn log_classical(order: usize) -> Series<LambdaPoly> {
    Series::from_raw(order, |n| match n {
        0 => LambdaPoly::ZERO,
        _ => {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            LambdaPoly::constant(Rational::new(sign.into(), n.into()))
        }
    })
}

/// e_λ(e_λ(t) - 1) - 1.
pub fn iterated_deg_exp(order: usize) -> Series<LambdaPoly> {
    let inner = deg_exp_minus_one(order);
    deg_exp_minus_one(order)
        .compose(&inner)
        .expect("e_λ(t) - 1 has zero constant term")
}

/// log_λ(log_λ(1+t) + 1).
pub fn iterated_deg_log(order: usize) -> Series<LambdaPoly> {
    deg_log(order)
        .compose(&deg_log(order))
        .expect("log_λ(1+t) has zero constant term")
}

/// (1 + f)^x = Σ (x)_l f^l / l! for a series f with zero constant term.
pub fn binomial_power_x(f: &Series<LambdaPoly>) -> Result<Series<XPoly>> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstant {
            coeff: f.coeff(0).render(),
        });
    }
    let order = f.order();
    let powers = f.scaled_powers(order);
    let mut out = Series::zero(order);
    for (l, p) in powers.iter().enumerate() {
        let falling = crate::poly::falling_factorial(l);
        let term = p.map(|c| &falling * &XPoly::from_lambda(c.clone()));
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn lp(c: &[i64]) -> LambdaPoly {
        LambdaPoly::from_ints(c)
    }

    #[test]
    fn degenerate_exponential() {
        let e = deg_exp(2);
        assert_eq!(e.coeffs(), &[lp(&[1]), lp(&[1]), LambdaPoly::new(vec![ratio(1, 2), ratio(-1, 2)])]);
        let classical = e.specialize(&rat(0));
        assert_eq!(classical.coeffs(), &[rat(1), rat(1), ratio(1, 2)]);
        let ex = deg_exp_x(1);
        assert_eq!(ex.coeffs(), &[XPoly::one(), XPoly::x()]);
    }

    #[test]
    fn degenerate_exponential_general_exponent() {
        let ex = deg_exp_pow(&XPoly::x(), 6);
        assert_eq!(ex, deg_exp_x(6));
        let one = deg_exp_pow(&XPoly::one(), 6);
        assert_eq!(one, deg_exp(6).lift_x());
    }

    #[test]
    fn degenerate_logarithm() {
        let l = deg_log(3);
        assert_eq!(l.coeff(0), &LambdaPoly::ZERO);
        assert_eq!(l.coeff(1), &lp(&[1]));
        assert_eq!(l.coeff(2), &LambdaPoly::new(vec![ratio(-1, 2), ratio(1, 2)]));
        // (λ-1)(λ-2)/6
        assert_eq!(l.coeff(3), &lp(&[2, -3, 1]).scale(&ratio(1, 6)));
        assert_eq!(
            deg_log(2).specialize(&rat(0)).coeffs(),
            &[rat(0), rat(1), ratio(-1, 2)]
        );
    }

    #[test]
    fn compose_rejects_constant_term() {
        let err = deg_log(3).compose(&deg_exp(3)).unwrap_err();
        assert!(matches!(err, Error::NonzeroConstant { .. }));
        assert!(err.to_string().contains("[1]"));
    }

    #[test]
    fn compose_examples() {
        let f = deg_log(6);
        assert_eq!(Series::identity(6).compose(&f).unwrap(), f);
        assert_eq!(
            deg_exp_minus_one(12).compose(&deg_log(12)).unwrap(),
            Series::identity(12)
        );
        let ee = deg_exp_minus_one(2).compose(&deg_exp_minus_one(2)).unwrap();
        assert_eq!(ee.egf_coeff(1), lp(&[1]));
        assert_eq!(ee.egf_coeff(2), lp(&[2, -2]));
    }

    #[test]
    fn compositional_inverse() {
        assert_eq!(Series::<LambdaPoly>::identity(5).comp_inverse().unwrap(), Series::identity(5));
        assert_eq!(deg_exp_minus_one(12).comp_inverse().unwrap(), deg_log(12));
        assert_eq!(iterated_deg_exp(8).comp_inverse().unwrap(), iterated_deg_log(8));
        assert!(deg_exp(4).comp_inverse().is_err());
        let lambda_lead = Series::new(vec![LambdaPoly::ZERO, LambdaPoly::lambda(), LambdaPoly::one()]);
        let err = lambda_lead.comp_inverse().unwrap_err();
        assert!(err.to_string().contains("invertible t-coefficient"));
    }

    #[test]
    fn multiplicative_inverse() {
        assert_eq!(Series::<LambdaPoly>::one(4).mul_inverse().unwrap(), Series::one(4));
        let q = deg_log(2).shift_down().unwrap();
        let inv = q.mul_inverse().unwrap();
        // 1 - (λ-1)t/2
        assert_eq!(inv.coeffs(), &[lp(&[1]), LambdaPoly::new(vec![ratio(1, 2), ratio(-1, 2)])]);
        assert!(deg_log(3).mul_inverse().is_err());
    }

    #[test]
    fn scaled_powers_give_stirling_entries() {
        let s2 = deg_exp_minus_one(3).scaled_power(2);
        assert_eq!(s2.egf_coeff(3), lp(&[3, -3]));
        let s1 = deg_log(3).scaled_power(2);
        assert_eq!(s1.egf_coeff(3), lp(&[-3, 3]));
        assert_eq!(deg_log(3).scaled_power(0), Series::one(3));
        let all = deg_log(5).scaled_powers(4);
        for (k, p) in all.iter().enumerate() {
            assert_eq!(p, &deg_log(5).scaled_power(k));
        }
    }

    #[test]
    fn mismatched_orders_truncate_to_minimum() {
        let s = &deg_exp(3) * &deg_exp(5);
        assert_eq!(s.order(), 3);
        assert_eq!((&deg_log(7) + &deg_log(2)).order(), 2);
    }

    #[test]
    fn binomial_power_matches_composition() {
        // (1 + f)^x = e_λ^x(log_λ(1 + f))
        let f = deg_log(7);
        let direct = binomial_power_x(&f).unwrap();
        let inner = deg_log(7).compose(&f).unwrap().lift_x();
        let via = deg_exp_x(7).compose(&inner).unwrap();
        assert_eq!(direct, via);
    }
}
