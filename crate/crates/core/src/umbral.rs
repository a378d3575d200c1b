//! Sheffer sequences and umbral composition.
//!
//! A Sheffer sequence s_n(x) ~ (g(t), f(t)) is determined by its generating
//! function (1/g(f̄(t)))·e^{x f̄(t)} = Σ s_n(x) t^n/n!, where f̄ is the
//! compositional inverse of f. The linear-functional pairing is not modelled;
//! the generating identity is the definition used here.
//!
//! Umbral composition q∘p replaces x^k in q_n(x) by p_k(x), which is the
//! product of the two lower-triangular coefficient matrices. On pairs it
//! acts by r∘s ~ (g(t)·h(f(t)), ℓ(f(t))) for s ~ (g, f), r ~ (h, ℓ).

use crate::error::{Error, Result};
use crate::families::{self, FamilyKind, PolyFamily};
use crate::poly::{LambdaPoly, XPoly};
use crate::ring::Coeff;
use crate::series::{deg_exp_minus_one, deg_log, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShefferSeq {
    g: Series<LambdaPoly>,
    f: Series<LambdaPoly>,
    /// `matrix[n][k]` is the coefficient of x^k in s_n(x), for k ≤ n.
    matrix: Vec<Vec<LambdaPoly>>,
}

impl ShefferSeq {
    /// Builds the sequence attached to an invertible series g and a delta
    /// series f, to order `order`.
    pub fn from_pair(g: &Series<LambdaPoly>, f: &Series<LambdaPoly>, order: usize) -> Result<Self> {
        if g.order() < order || f.order() < order {
            return Err(Error::Precondition(format!(
                "pair series known to orders ({}, {}), need {order}",
                g.order(),
                f.order()
            )));
        }
        let (g, f) = (g.truncate(order), f.truncate(order));
        if g.coeff(0).unit_inverse().is_none() {
            return Err(Error::Precondition(format!(
                "g must be invertible (order 0), but g(0) = {}",
                g.coeff(0)
            )));
        }
        if !f.coeff(0).is_zero() || order >= 1 && f.coeff(1).unit_inverse().is_none() {
            return Err(Error::Precondition(format!(
                "f must be a delta series (order 1), but starts {} + ({})t",
                f.coeff(0),
                if order >= 1 { f.coeff(1).to_string() } else { "?".into() }
            )));
        }
        let f_bar = f.comp_inverse()?;
        let weight = g.compose(&f_bar)?.mul_inverse()?;
        let columns: Vec<Series<LambdaPoly>> = f_bar
            .scaled_powers(order)
            .iter()
            .map(|p| &weight * p)
            .collect();
        let matrix = (0..=order)
            .map(|n| (0..=n).map(|k| columns[k].egf_coeff(n)).collect())
            .collect();
        Ok(ShefferSeq { g, f, matrix })
    }

    pub fn g(&self) -> &Series<LambdaPoly> {
        &self.g
    }

    pub fn f(&self) -> &Series<LambdaPoly> {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<LambdaPoly>] {
        &self.matrix
    }

    pub fn entry(&self, n: usize, k: usize) -> &LambdaPoly {
        static ZERO: LambdaPoly = LambdaPoly::ZERO;
        self.matrix[n].get(k).unwrap_or(&ZERO)
    }

    /// Whether g = 1, i.e. the sequence is associated to f.
    pub fn is_associated(&self) -> bool {
        self.g == Series::one(self.g.order())
    }

    pub fn polys(&self) -> Vec<XPoly> {
        self.matrix.iter().map(|row| XPoly::new(row.clone())).collect()
    }

    /// Σ s_n(x) t^n/n!.
    pub fn egf(&self) -> Series<XPoly> {
        Series::from_egf(self.order(), |n| XPoly::new(self.matrix[n].clone()))
    }

    /// The group inverse, attached to (1/g(f̄(t)), f̄(t)).
    pub fn inverse(&self) -> Result<ShefferSeq> {
        let f_bar = self.f.comp_inverse()?;
        let g = self.g.compose(&f_bar)?.mul_inverse()?;
        ShefferSeq::from_pair(&g, &f_bar, self.order())
    }
}

/// q∘p: coefficient matrix Q·P, pair (g_p·g_q(f_p), f_q(f_p)).
pub fn umbral_compose(q: &ShefferSeq, p: &ShefferSeq) -> Result<ShefferSeq> {
    if q.order() != p.order() {
        return Err(Error::Precondition(format!(
            "umbral composition needs equal orders, got {} and {}",
            q.order(),
            p.order()
        )));
    }
    let matrix = (0..=q.order())
        .map(|n| {
            (0..=n)
                .map(|k| (k..=n).map(|l| q.entry(n, l) * p.entry(l, k)).sum())
                .collect()
        })
        .collect();
    let g = &p.g * &q.g.compose(&p.f)?;
    let f = q.f.compose(&p.f)?;
    Ok(ShefferSeq { g, f, matrix })
}

/// r^{(m)} = r∘r∘...∘r (m times).
pub fn umbral_power(r: &ShefferSeq, m: usize) -> Result<ShefferSeq> {
    if m == 0 {
        return Err(Error::Precondition("umbral power needs m >= 1".into()));
    }
    let mut acc = r.clone();
    for _ in 1..m {
        acc = umbral_compose(r, &acc)?;
    }
    Ok(acc)
}

/// x^n ~ (1, t), the identity of the group.
pub fn identity_seq(order: usize) -> ShefferSeq {
    ShefferSeq::from_pair(&Series::one(order), &Series::identity(order), order)
        .expect("(1, t) is a Sheffer pair")
}

/// f(t) = (e^{λt} - 1)/λ = Σ λ^{n-1} t^n/n!; its associated sequence is (x)_{n,λ}.
pub fn deg_falling_delta(order: usize) -> Series<LambdaPoly> {
    Series::from_egf(order, |n| match n {
        0 => LambdaPoly::ZERO,
        _ => LambdaPoly::monomial(crate::rational::rat(1), n - 1),
    })
}

/// s_n(x) = (x)_{n,λ} ~ (1, (e^{λt} - 1)/λ).
pub fn deg_falling_seq(order: usize) -> ShefferSeq {
    ShefferSeq::from_pair(&Series::one(order), &deg_falling_delta(order), order)
        .expect("(e^{λt} - 1)/λ is a delta series")
}

/// r_n(x) = Σ_k S_{2,λ}(n, k) x^k ~ (1, log_λ(1+t)).
pub fn stirling2_seq(order: usize) -> ShefferSeq {
    ShefferSeq::from_pair(&Series::one(order), &deg_log(order), order)
        .expect("log_λ(1+t) is a delta series")
}

/// r_n(x) = Σ_k S_{1,λ}(n, k) x^k ~ (1, e_λ(t) - 1).
pub fn stirling1_seq(order: usize) -> ShefferSeq {
    ShefferSeq::from_pair(&Series::one(order), &deg_exp_minus_one(order), order)
        .expect("e_λ(t) - 1 is a delta series")
}

fn via_umbral(kind: FamilyKind, r: &ShefferSeq, order: usize) -> Result<PolyFamily> {
    let composed = umbral_compose(&umbral_power(r, 2)?, &deg_falling_seq(order))?;
    let fam = PolyFamily::new(kind, composed.polys());
    let direct = families::family(kind, order)?;
    fam.ensure_same(&direct, &format!("{kind} umbral vs direct"))?;
    Ok(fam)
}

/// J_{n,λ}(x) = r^{(2)}_n ∘ (x)_{n,λ} with r the S_{2,λ} sequence.
pub fn jindalrae_via_umbral(order: usize) -> Result<PolyFamily> {
    via_umbral(FamilyKind::Jindalrae, &stirling2_seq(order), order)
}

/// G_{n,λ}(x) = r^{(2)}_n ∘ (x)_{n,λ} with r the S_{1,λ} sequence.
pub fn gaenari_via_umbral(order: usize) -> Result<PolyFamily> {
    via_umbral(FamilyKind::Gaenari, &stirling1_seq(order), order)
}

/// Outcome of the substitution check for r^{(m)}∘s with r associated.
#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    /// Σ (r^{(m)}∘s)_n(x) t^n/n!.
    pub composed_egf: Series<XPoly>,
    /// The generating function of s with ℓ̄^m(t) substituted for t.
    pub substituted_egf: Series<XPoly>,
    /// The compositional inverse of ℓ^m(f(t)).
    pub inverse_of_composite: Series<LambdaPoly>,
    /// f̄(ℓ̄^m(t)), which should equal `inverse_of_composite`.
    pub composite_of_inverses: Series<LambdaPoly>,
}

impl SubstitutionReport {
    pub fn holds(&self) -> bool {
        self.inverse_of_composite == self.composite_of_inverses
            && self.composed_egf == self.substituted_egf
    }
}

/// Checks that the generating function of r^{(m)}∘s is that of s with
/// ℓ̄^m(t) in place of t, where r ~ (1, ℓ).
pub fn substitution_check(r: &ShefferSeq, s: &ShefferSeq, m: usize) -> Result<SubstitutionReport> {
    if !r.is_associated() {
        return Err(Error::Precondition(
            "substitution check needs an associated sequence r ~ (1, ℓ)".into(),
        ));
    }
    let composed_egf = umbral_compose(&umbral_power(r, m)?, s)?.egf();
    let l_bar_m = r.f.comp_inverse()?.compositional_power(m)?;
    let substituted_egf = s.egf().compose(&l_bar_m.lift_x())?;
    let inverse_of_composite = r.f.compositional_power(m)?.compose(&s.f)?.comp_inverse()?;
    let composite_of_inverses = s.f.comp_inverse()?.compose(&l_bar_m)?;
    Ok(SubstitutionReport {
        composed_egf,
        substituted_egf,
        inverse_of_composite,
        composite_of_inverses,
    })
}

/// r^{(m)}_{n,k} as the unrestricted multi-index sum
/// Σ_{l_1..l_{m-1} = 0..n} r_{n,l_1} r_{l_1,l_2} ... r_{l_{m-1},k}.
pub fn explicit_power_entry(r: &ShefferSeq, m: usize, n: usize, k: usize) -> LambdaPoly {
    assert!(m >= 1);
    let at = |i: usize, j: usize| -> LambdaPoly {
        if j > i {
            LambdaPoly::ZERO
        } else {
            r.entry(i, j).clone()
        }
    };
    if m == 1 {
        return at(n, k);
    }
    let mut idx = vec![0usize; m - 1];
    let mut total = LambdaPoly::ZERO;
    loop {
        let mut prod = at(n, idx[0]);
        for w in idx.windows(2) {
            if prod.is_zero() {
                break;
            }
            prod = &prod * &at(w[0], w[1]);
        }
        if !prod.is_zero() {
            prod = &prod * &at(idx[m - 2], k);
            total = &total + &prod;
        }
        // odometer over 0..=n
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return total;
            }
            idx[pos] += 1;
            if idx[pos] <= n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::deg_falling_factorial;
    use crate::triangles::{jstirling1_series, jstirling2_series, stirling2_deg_series};

    fn lp(c: &[i64]) -> LambdaPoly {
        LambdaPoly::from_ints(c)
    }

    #[test]
    fn identity_pair_gives_monomials() {
        let id = identity_seq(6);
        for (n, p) in id.polys().iter().enumerate() {
            assert_eq!(p, &XPoly::monomial(LambdaPoly::one(), n));
        }
    }

    #[test]
    fn degenerate_falling_pair() {
        let s = deg_falling_seq(8);
        for (n, p) in s.polys().iter().enumerate() {
            assert_eq!(p, &deg_falling_factorial(n));
        }
        assert_eq!(s.egf(), crate::series::deg_exp_x(8));
    }

    #[test]
    fn stirling_pair() {
        let r = stirling2_seq(8);
        let s2 = stirling2_deg_series(8);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(r.entry(n, k), &s2[(n, k)]);
            }
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let err = ShefferSeq::from_pair(&deg_log(4), &deg_log(4), 4).unwrap_err();
        assert!(err.to_string().contains("g must be invertible"));
        let err = ShefferSeq::from_pair(&Series::one(4), &Series::one(4), 4).unwrap_err();
        assert!(err.to_string().contains("f must be a delta series"));
    }

    #[test]
    fn composition_examples() {
        let id = identity_seq(6);
        let r = stirling2_seq(6);
        assert_eq!(umbral_compose(&id, &r).unwrap().matrix(), r.matrix());
        let sq = umbral_compose(&r, &r).unwrap();
        let j2 = jstirling2_series(6);
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(sq.entry(n, k), &j2[(n, k)]);
            }
        }
        let inv = r.inverse().unwrap();
        assert_eq!(umbral_compose(&inv, &r).unwrap().matrix(), id.matrix());
    }

    #[test]
    fn powers() {
        let r = stirling1_seq(6);
        assert_eq!(umbral_power(&r, 1).unwrap(), r);
        let j1 = jstirling1_series(6);
        let sq = umbral_power(&r, 2).unwrap();
        assert_eq!(sq.entry(3, 1), &j1[(3, 1)]);
        let cube = umbral_power(&r, 3).unwrap();
        assert_eq!(cube, umbral_compose(&r, &sq).unwrap());
        assert!(umbral_power(&r, 0).is_err());
        assert_eq!(explicit_power_entry(&r, 3, 4, 2), cube.entry(4, 2).clone());
    }

    #[test]
    fn families_via_umbral() {
        let j = jindalrae_via_umbral(5).unwrap();
        assert_eq!(j[0], XPoly::one());
        assert_eq!(j[1], XPoly::x());
        assert_eq!(j[2], XPoly::new(vec![lp(&[]), lp(&[2, -3]), lp(&[1])]));
        let g = gaenari_via_umbral(5).unwrap();
        assert_eq!(g[2], XPoly::new(vec![lp(&[]), lp(&[-2, 1]), lp(&[1])]));
        assert_eq!(g[2].at_x(&crate::rational::rat(1)), lp(&[-1, 1]));
    }

    #[test]
    fn substitution_with_identity() {
        let s = stirling1_seq(6);
        for m in 1..=3 {
            assert!(substitution_check(&identity_seq(6), &s, m).unwrap().holds());
        }
        let weighted = ShefferSeq::from_pair(&crate::series::deg_exp(6), &Series::identity(6), 6).unwrap();
        assert!(substitution_check(&weighted, &s, 2).is_err());
    }
}
