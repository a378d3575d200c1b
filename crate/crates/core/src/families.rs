//! Polynomial families in x over λ: degenerate Bell, new-type degenerate
//! Bell, Jindalrae and Gaenari polynomials.
//!
//! Each family has an explicit-sum route Σ_k c(n, k)·(x)_{k,λ} over a number
//! triangle, and a generating-function route e_λ^x(F(t)) read off as EGF
//! coefficients. The public constructors compute both and fail on the first
//! disagreement.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::poly::{deg_falling_factorial, LambdaPoly, XPoly};
use crate::series::{
    binomial_power_x, deg_exp_minus_one, deg_exp_x, deg_log, exp_classical, iterated_deg_exp,
    iterated_deg_log, Series,
};
use crate::triangles::{
    jstirling1_series, jstirling2_series, stirling2_deg_series, t_numbers_convolution, Triangle,
    TriangleKind,
};

pub use crate::oracle::bell_number_classical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    DegBell,
    NewTypeBell,
    Jindalrae,
    Gaenari,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::DegBell,
        FamilyKind::NewTypeBell,
        FamilyKind::Jindalrae,
        FamilyKind::Gaenari,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DegBell => "degbell",
            FamilyKind::NewTypeBell => "newtypebell",
            FamilyKind::Jindalrae => "jindalrae",
            FamilyKind::Gaenari => "gaenari",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unknown {
                what: "polynomial family",
                name: name.to_string(),
            })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFamily {
    kind: FamilyKind,
    polys: Vec<XPoly>,
}

impl PolyFamily {
    pub fn new(kind: FamilyKind, polys: Vec<XPoly>) -> Self {
        assert!(!polys.is_empty());
        PolyFamily { kind, polys }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[XPoly] {
        &self.polys
    }

    /// The numbers P_n(1), still symbolic in λ.
    pub fn numbers(&self) -> Vec<LambdaPoly> {
        let one = crate::rational::rat(1);
        self.polys.iter().map(|p| p.at_x(&one)).collect()
    }

    pub fn ensure_same(&self, other: &PolyFamily, what: &str) -> Result<()> {
        for (n, (a, b)) in self.polys.iter().zip(&other.polys).enumerate() {
            if a != b {
                return Err(Error::RouteMismatch {
                    what: what.to_string(),
                    at: format!("n={n}"),
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl Index<usize> for PolyFamily {
    type Output = XPoly;
    fn index(&self, n: usize) -> &XPoly {
        &self.polys[n]
    }
}

/// P_n(x) = Σ_k c(n, k)·(x)_{k,λ}.
pub fn explicit_sum(kind: FamilyKind, coeffs: &Triangle) -> PolyFamily {
    let falling: Vec<XPoly> = (0..=coeffs.order()).map(deg_falling_factorial).collect();
    let polys = coeffs
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&falling)
                .map(|(c, f)| f.map_coeffs(|a| a * c))
                .sum()
        })
        .collect();
    PolyFamily::new(kind, polys)
}

/// P_n(x) = EGF coefficients of e_λ^x(inner(t)).
pub fn from_generating_function(kind: FamilyKind, inner: &Series<LambdaPoly>) -> Result<PolyFamily> {
    let order = inner.order();
    let gf = deg_exp_x(order).compose(&inner.lift_x())?;
    Ok(PolyFamily::new(kind, gf.egf_coeffs()))
}

fn checked(a: PolyFamily, b: PolyFamily, what: &str) -> Result<PolyFamily> {
    a.ensure_same(&b, what)?;
    Ok(a)
}

/// B_{n,λ}(x) = Σ_k S_{2,λ}(n, k)(x)_{k,λ}, generated by e_λ^x(e_λ(t) - 1).
pub fn deg_bell(order: usize) -> Result<PolyFamily> {
    checked(
        explicit_sum(FamilyKind::DegBell, &stirling2_deg_series(order)),
        from_generating_function(FamilyKind::DegBell, &deg_exp_minus_one(order))?,
        "degenerate Bell sum vs generating function",
    )
}

/// Bel_{n,λ}(x) = Σ_k S_2(n, k)(x)_{k,λ}, generated by e_λ^x(e^t - 1).
pub fn newtype_bell(order: usize) -> Result<PolyFamily> {
    let s2 = stirling2_deg_series(order)
        .specialized(TriangleKind::S2Classical, &crate::rational::rat(0));
    let e = &exp_classical(order) - &Series::one(order);
    checked(
        explicit_sum(FamilyKind::NewTypeBell, &s2),
        from_generating_function(FamilyKind::NewTypeBell, &e)?,
        "new-type Bell sum vs generating function",
    )
}

/// J_{n,λ}(x) = Σ_k S^{(2)}_{J,λ}(n, k)(x)_{k,λ}, generated by
/// e_λ^x(e_λ(e_λ(t) - 1) - 1).
pub fn jindalrae(order: usize) -> Result<PolyFamily> {
    checked(
        explicit_sum(FamilyKind::Jindalrae, &jstirling2_series(order)),
        from_generating_function(FamilyKind::Jindalrae, &iterated_deg_exp(order))?,
        "Jindalrae sum vs generating function",
    )
}

/// G_{n,λ}(x) = Σ_k S^{(1)}_{J,λ}(n, k)(x)_{k,λ}, generated by
/// e_λ^x(log_λ(log_λ(1+t) + 1)).
pub fn gaenari(order: usize) -> Result<PolyFamily> {
    checked(
        explicit_sum(FamilyKind::Gaenari, &jstirling1_series(order)),
        from_generating_function(FamilyKind::Gaenari, &iterated_deg_log(order))?,
        "Gaenari sum vs generating function",
    )
}

/// G_{n,λ}(x) as the coefficients of (1 + log_λ(1+t))^x.
pub fn gaenari_binomial(order: usize) -> PolyFamily {
    let gf = binomial_power_x(&deg_log(order)).expect("log_λ(1+t) has zero constant term");
    PolyFamily::new(FamilyKind::Gaenari, gf.egf_coeffs())
}

pub fn family(kind: FamilyKind, order: usize) -> Result<PolyFamily> {
    match kind {
        FamilyKind::DegBell => deg_bell(order),
        FamilyKind::NewTypeBell => newtype_bell(order),
        FamilyKind::Jindalrae => jindalrae(order),
        FamilyKind::Gaenari => gaenari(order),
    }
}

/// Classical Bell polynomials B_n(x) = Σ_k S_2(n, k) x^k, from the partition
/// oracle's block counts.
pub fn bell_polynomial_oracle(n: usize) -> XPoly {
    XPoly::new(
        crate::oracle::partition_counts(n)
            .into_iter()
            .map(|c| LambdaPoly::from_ints(&[c as i64]))
            .collect(),
    )
}

/// T(n, 1) read from the T triangle; equals the Bell number B_n for n ≥ 1.
pub fn t_first_column(order: usize) -> Vec<LambdaPoly> {
    let t = t_numbers_convolution(order);
    (0..=order).map(|n| t[(n, 1.min(n))].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::lambda_shifted_falling;
    use crate::ring::Coeff;
    use crate::rational::rat;

    fn lp(c: &[i64]) -> LambdaPoly {
        LambdaPoly::from_ints(c)
    }

    fn xp(c: Vec<LambdaPoly>) -> XPoly {
        XPoly::new(c)
    }

    #[test]
    fn degenerate_bell() {
        let b = deg_bell(6).unwrap();
        assert_eq!(b[0], XPoly::one());
        assert_eq!(b[1], XPoly::x());
        let p2 = xp(vec![lp(&[]), lp(&[1, -2]), lp(&[1])]);
        assert_eq!(b[2], p2);
        assert_eq!(b[2].at_x(&rat(1)), lp(&[2, -2]));
        assert_eq!(b[2].evaluate(&rat(0), &rat(1)), rat(2));
    }

    #[test]
    fn new_type_bell() {
        let b = newtype_bell(8).unwrap();
        assert_eq!(b[1], XPoly::x());
        assert_eq!(b[2], xp(vec![lp(&[]), lp(&[1, -1]), lp(&[1])]));
        for n in 0..=8 {
            assert_eq!(b[n].specialize_lambda(&rat(0)), bell_polynomial_oracle(n));
        }
    }

    #[test]
    fn jindalrae_polys() {
        let j = jindalrae(6).unwrap();
        assert_eq!(j[0], XPoly::one());
        assert_eq!(j[1], XPoly::x());
        assert_eq!(j[2], xp(vec![lp(&[]), lp(&[2, -3]), lp(&[1])]));
    }

    #[test]
    fn gaenari_polys() {
        let g = gaenari(8).unwrap();
        assert_eq!(g[1], XPoly::x());
        assert_eq!(g[2], xp(vec![lp(&[]), lp(&[-2, 1]), lp(&[1])]));
        for n in 1..=8 {
            assert_eq!(g[n].at_x(&rat(1)), lambda_shifted_falling(n));
        }
        assert_eq!(gaenari_binomial(8), g);
    }

    #[test]
    fn invariants_hold_for_every_family() {
        for kind in FamilyKind::ALL {
            let fam = family(kind, 7).unwrap();
            assert_eq!(fam[0], XPoly::one());
            for (n, p) in fam.polys().iter().enumerate() {
                assert_eq!(p.degree(), Some(n), "{kind} degree at n={n}");
                assert_eq!(p.leading(), Some(&LambdaPoly::one()));
            }
        }
    }

    #[test]
    fn bell_first_column() {
        let col = t_first_column(10);
        for n in 1..=10 {
            assert_eq!(col[n], lp(&[bell_number_classical(n) as i64]));
        }
        assert_eq!(bell_number_classical(10), 115975);
    }

    #[test]
    fn names_roundtrip() {
        for kind in FamilyKind::ALL {
            assert_eq!(FamilyKind::from_name(kind.name()).unwrap(), kind);
        }
        assert!(FamilyKind::from_name("hermite").is_err());
    }
}
