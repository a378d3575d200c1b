//! Single-value expressions such as `s2deg(5,2)`, `gaenari(4)` or
//! `korobov(3,2)`.

use degen_core::families::{self, FamilyKind};
use degen_core::rational::render_rational;
use degen_core::triangles::{self, TriangleKind};
use degen_core::{Error, LambdaPoly, Rational, Result};

fn parse_call(expr: &str) -> Result<(&str, Vec<usize>)> {
    let bad = || Error::Parse(format!("expected name(args), got {expr:?}"));
    let (name, rest) = expr.trim().split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let args = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok((name.trim(), args))
}

fn arity(name: &str, args: &[usize], want: usize) -> Result<()> {
    if args.len() != want {
        return Err(Error::Parse(format!("{name} takes {want} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn number(v: &LambdaPoly, lambda: Option<&Rational>) -> String {
    match lambda {
        Some(l) => render_rational(&v.specialize(l)),
        None => v.to_string(),
    }
}

fn no_x(name: &str, x: Option<&Rational>) -> Result<()> {
    if x.is_some() {
        return Err(Error::Precondition(format!("{name} does not depend on x")));
    }
    Ok(())
}

/// Evaluates `expr` and renders the value as display text.
pub fn evaluate(expr: &str, lambda: Option<&Rational>, x: Option<&Rational>) -> Result<String> {
    let (name, args) = parse_call(expr)?;
    if name == "korobov" || name == "degbernoulli" {
        arity(name, &args, 2)?;
        no_x(name, x)?;
        let (n, r) = (args[0], args[1]);
        let seq = if name == "korobov" {
            triangles::korobov(n, r)?
        } else {
            triangles::deg_bernoulli(n, r)?
        };
        return Ok(number(&seq.values[n], lambda));
    }
    if let Ok(kind) = FamilyKind::from_name(name) {
        arity(name, &args, 1)?;
        let n = args[0];
        let p = families::family(kind, n)?.polys()[n].clone();
        return Ok(match (lambda, x) {
            (Some(l), Some(x)) => render_rational(&p.evaluate(l, x)),
            (None, Some(x)) => p.at_x(x).to_string(),
            (Some(l), None) => p.specialize_lambda(l).to_string(),
            (None, None) => p.to_string(),
        });
    }
    let kind = TriangleKind::from_name(name).map_err(|_| Error::Unknown {
        what: "expression name",
        name: name.to_string(),
    })?;
    arity(name, &args, 2)?;
    no_x(name, x)?;
    let (n, k) = (args[0], args[1]);
    let tri = triangles::triangle(kind, n)?;
    Ok(number(tri.get(n, k)?, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use degen_core::rational::rat;

    #[test]
    fn triangle_entries() {
        assert_eq!(evaluate("s2deg(2,1)", None, None).unwrap(), "1 - λ");
        assert_eq!(evaluate("s2deg(3, 2)", Some(&rat(0)), None).unwrap(), "3");
        assert_eq!(evaluate("t(3,1)", None, None).unwrap(), "5");
        assert_eq!(evaluate("s1(4,1)", None, None).unwrap(), "-6");
        assert_eq!(evaluate("s2deg(2,3)", None, None).unwrap(), "0");
    }

    #[test]
    fn families_and_sequences() {
        assert_eq!(evaluate("gaenari(2)", None, Some(&rat(1))).unwrap(), "-1 + λ");
        assert_eq!(evaluate("degbell(2)", Some(&rat(0)), Some(&rat(1))).unwrap(), "2");
        assert_eq!(evaluate("jindalrae(0)", None, None).unwrap(), "1");
        assert_eq!(evaluate("korobov(0,3)", None, None).unwrap(), "1");
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(evaluate("s2deg 3 2", None, None), Err(Error::Parse(_))));
        assert!(matches!(evaluate("s2deg(3)", None, None), Err(Error::Parse(_))));
        assert!(matches!(evaluate("hermite(3)", None, None), Err(Error::Unknown { .. })));
        assert!(evaluate("s2deg(3,1)", None, Some(&rat(2))).is_err());
    }
}
