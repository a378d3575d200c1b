//! Dense univariate polynomials over a [`Coeff`] ring.
//!
//! The λ/x tower is `LambdaPoly = Poly<Rational>` (polynomials in λ) and
//! `XPoly = Poly<LambdaPoly>` (polynomials in x whose coefficients are
//! polynomials in λ). Coefficient vectors are kept trimmed, so structural
//! equality is ring equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::{rat, Rational};
use crate::ring::Coeff;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type LambdaPoly = Poly<Rational>;
pub type XPoly = Poly<LambdaPoly>;

impl<C> Poly<C> {
    pub const ZERO: Poly<C> = Poly { coeffs: Vec::new() };

    /// Coefficients in ascending powers; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitutes a polynomial for the indeterminate.
    pub fn compose(&self, inner: &Poly<C>) -> Poly<C> {
        self.coeffs.iter().rev().fold(Poly::ZERO, |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }
}

impl LambdaPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// λ itself.
    pub fn lambda() -> Self {
        Self::var()
    }

    /// Value at a rational λ.
    pub fn specialize(&self, lambda: &Rational) -> Rational {
        self.eval(lambda)
    }

    /// The constant value when the polynomial does not depend on λ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(<Rational as Coeff>::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl XPoly {
    /// x itself.
    pub fn x() -> Self {
        Self::var()
    }

    pub fn from_lambda(p: LambdaPoly) -> Self {
        Self::constant(p)
    }

    /// Fixes λ, leaving a polynomial in x with constant coefficients.
    pub fn specialize_lambda(&self, lambda: &Rational) -> XPoly {
        self.map_coeffs(|c| LambdaPoly::constant(c.specialize(lambda)))
    }

    /// Fixes x, leaving a polynomial in λ.
    pub fn at_x(&self, x: &Rational) -> LambdaPoly {
        self.eval(&LambdaPoly::constant(x.clone()))
    }

    /// Full scalar evaluation at rational (λ, x).
    pub fn evaluate(&self, lambda: &Rational, x: &Rational) -> Rational {
        self.at_x(x).specialize(lambda)
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn zero() -> Self {
        Poly::ZERO
    }
    fn one() -> Self {
        Poly::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }
    fn from_rational(c: Rational) -> Self {
        Poly::constant(C::from_rational(c))
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.unit_inverse().map(Poly::constant),
            _ => None,
        }
    }
    fn render(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(Coeff::render).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add_ref(s);
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.sub_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg_ref(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::ZERO;
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(out)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(Coeff::neg_ref).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::ZERO, |acc, p| &acc + &p)
    }
}

/// `(x)_n = x(x-1)...(x-n+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(n: usize) -> XPoly {
    (0..n).fold(XPoly::one(), |acc, j| {
        &acc * &XPoly::new(vec![LambdaPoly::from_ints(&[-(j as i64)]), LambdaPoly::one()])
    })
}

/// `(x)_{n,λ} = x(x-λ)(x-2λ)...(x-(n-1)λ)`, with `(x)_{0,λ} = 1`.
pub fn deg_falling_factorial(n: usize) -> XPoly {
    (0..n).fold(XPoly::one(), |acc, j| {
        let shift = LambdaPoly::from_ints(&[0, -(j as i64)]);
        &acc * &XPoly::new(vec![shift, LambdaPoly::one()])
    })
}

/// `(λ-1)(λ-2)...(λ-m+1)`, i.e. `(m-1)!·C(λ-1, m-1)`; equals 1 for `m = 1`.
///
/// Panics if `m == 0`.
pub fn lambda_shifted_falling(m: usize) -> LambdaPoly {
    assert!(m >= 1, "lambda_shifted_falling needs m >= 1");
    (1..m).fold(LambdaPoly::one(), |acc, j| {
        &acc * &LambdaPoly::from_ints(&[-(j as i64), 1])
    })
}

fn write_poly<C>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    var: &str,
    ascending: bool,
    term: impl Fn(&C) -> (String, bool, bool),
) -> fmt::Result {
    // term(c) -> (text, compound, negative)
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    let order: Vec<usize> = if ascending {
        (0..coeffs.len()).collect()
    } else {
        (0..coeffs.len()).rev().collect()
    };
    for i in order {
        let c = &coeffs[i];
        let (text, compound, negative) = term(c);
        if text == "0" {
            continue;
        }
        let body = if negative && !compound {
            text.trim_start_matches('-').to_string()
        } else {
            text
        };
        let body = match (i, compound, body.as_str()) {
            (0, _, _) => body,
            (_, false, "1") => String::new(),
            (_, true, _) => format!("({body})"),
            (_, false, b) if b.contains('/') => format!("({body})"),
            _ => body,
        };
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let sign_neg = negative && !compound;
        if first {
            if sign_neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if sign_neg { " - " } else { " + " })?;
        }
        write!(f, "{body}{power}")?;
        first = false;
    }
    Ok(())
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "λ", true, |c| {
            (
                crate::rational::render_rational(c),
                false,
                crate::rational::is_negative(c),
            )
        })
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x", false, |c| {
            let compound = c.coeffs.iter().filter(|a| !a.is_zero()).count() > 1;
            let negative = !compound
                && c.leading().is_some_and(crate::rational::is_negative);
            (c.to_string(), compound, negative)
        })
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}
