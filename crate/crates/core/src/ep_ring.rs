//! Arithmetic in the ring `E_p = <r, s | pr = ps = 0, r^2 = r, s^2 = s, rs = r, sr = s>`.
//!
//! Every element is `i*r + j*s` for unique `i, j` in `F_p`. The relations
//! collapse the product to `x * y = alpha(y) * x` where `alpha(i*r + j*s) = i + j`
//! is reduction modulo the maximal ideal `I = F_p * t`, `t = r + (p-1)s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fp_linalg::{FpScalar, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpElem {
    i: u8,
    j: u8,
    p: Prime,
}

impl EpElem {
    /// `i*r + j*s`, with both coefficients reduced mod `p`.
    pub fn new(i: i64, j: i64, p: Prime) -> Self {
        EpElem {
            i: p.reduce(i),
            j: p.reduce(j),
            p,
        }
    }

    pub fn zero(p: Prime) -> Self {
        EpElem { i: 0, j: 0, p }
    }

    pub fn r(p: Prime) -> Self {
        EpElem { i: 1, j: 0, p }
    }

    pub fn s(p: Prime) -> Self {
        EpElem { i: 0, j: 1, p }
    }

    pub fn t(p: Prime) -> Self {
        EpElem {
            i: 1,
            j: p.get() - 1,
            p,
        }
    }

    /// `u*r + v*t`.
    pub fn from_t_adic(u: u8, v: u8, p: Prime) -> Self {
        // u r + v (r - s) = (u + v) r - v s
        EpElem {
            i: p.add(u, v),
            j: p.neg(v),
            p,
        }
    }

    /// All `p^2` elements in `(i, j)` lexicographic order.
    pub fn all(p: Prime) -> impl Iterator<Item = EpElem> {
        (0..p.get()).flat_map(move |i| (0..p.get()).map(move |j| EpElem { i, j, p }))
    }

    pub fn modulus(self) -> Prime {
        self.p
    }

    /// Coefficient of `r`.
    pub fn r_coeff(self) -> u8 {
        self.i
    }

    /// Coefficient of `s`.
    pub fn s_coeff(self) -> u8 {
        self.j
    }

    pub fn is_zero(self) -> bool {
        self.i == 0 && self.j == 0
    }

    /// Reduction modulo the maximal ideal.
    pub fn alpha(self) -> FpScalar {
        FpScalar::new(self.alpha_raw() as i64, self.p)
    }

    #[inline]
    pub(crate) fn alpha_raw(self) -> u8 {
        self.p.add(self.i, self.j)
    }

    /// The `(u, v)` with `self = u*r + v*t`.
    pub fn t_adic(self) -> (FpScalar, FpScalar) {
        let (u, v) = self.t_adic_raw();
        (FpScalar::new(u as i64, self.p), FpScalar::new(v as i64, self.p))
    }

    #[inline]
    pub(crate) fn t_adic_raw(self) -> (u8, u8) {
        (self.p.add(self.i, self.j), self.p.neg(self.j))
    }

    /// The `F_p` action `u * x`, which multiplies both coordinates.
    pub fn scalar_action(self, u: FpScalar) -> Self {
        assert_eq!(u.modulus(), self.p, "modulus mismatch");
        self.scaled(u.value())
    }

    pub(crate) fn scaled(self, u: u8) -> Self {
        EpElem {
            i: self.p.mul(self.i, u),
            j: self.p.mul(self.j, u),
            p: self.p,
        }
    }

    /// Membership in `I = {m t}`; equivalently, `self` is a right zero divisor.
    pub fn in_max_ideal(self) -> bool {
        self.alpha_raw() == 0
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.same_ring(rhs)?;
        Ok(self * rhs)
    }

    fn same_ring(self, rhs: Self) -> Result<()> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.get(), rhs.p.get()))
        }
    }

    /// Parses one token of the `0 | [c]r | [c]s | [c]t | [c]r+[d]s` grammar.
    pub fn parse(token: &str, p: Prime) -> std::result::Result<Self, String> {
        if token == "0" {
            return Ok(EpElem::zero(p));
        }
        if let Some((a, b)) = token.split_once('+') {
            let (c, ga) = parse_term(a, p)?;
            let (d, gb) = parse_term(b, p)?;
            if ga != 'r' || gb != 's' {
                return Err(format!("expected `[c]r+[d]s`, found `{token}`"));
            }
            return Ok(EpElem { i: c, j: d, p });
        }
        let (c, g) = parse_term(token, p)?;
        Ok(match g {
            'r' => EpElem::r(p).scaled(c),
            's' => EpElem::s(p).scaled(c),
            _ => EpElem::t(p).scaled(c),
        })
    }
}

fn parse_term(term: &str, p: Prime) -> std::result::Result<(u8, char), String> {
    let Some(g) = term.chars().last().filter(|c| matches!(c, 'r' | 's' | 't')) else {
        return Err(format!("`{term}` is not an element token"));
    };
    let digits = &term[..term.len() - 1];
    let c = if digits.is_empty() {
        1
    } else {
        match digits.parse::<u32>() {
            Ok(c) if c >= 1 && c < p.get() as u32 => c as u8,
            Ok(c) => return Err(format!("coefficient {c} outside 1..{}", p.get() - 1)),
            Err(_) => return Err(format!("`{digits}` is not a coefficient")),
        }
    };
    Ok((c, g))
}

impl Add for EpElem {
    type Output = EpElem;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        EpElem {
            i: self.p.add(self.i, rhs.i),
            j: self.p.add(self.j, rhs.j),
            p: self.p,
        }
    }
}

impl Neg for EpElem {
    type Output = EpElem;
    fn neg(self) -> Self {
        EpElem {
            i: self.p.neg(self.i),
            j: self.p.neg(self.j),
            p: self.p,
        }
    }
}

impl Sub for EpElem {
    type Output = EpElem;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for EpElem {
    type Output = EpElem;
    /// `x * y = alpha(y) x`.
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        self.scaled(rhs.alpha_raw())
    }
}

impl fmt::Display for EpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(f: &mut fmt::Formatter<'_>, c: u8, g: char) -> fmt::Result {
            if c == 1 {
                write!(f, "{g}")
            } else {
                write!(f, "{c}{g}")
            }
        }
        let p = self.p;
        match (self.i, self.j) {
            (0, 0) => f.write_str("0"),
            (i, j) if j == p.neg(i) => term(f, i, 't'),
            (i, 0) => term(f, i, 'r'),
            (0, j) => term(f, j, 's'),
            (i, j) => {
                term(f, i, 'r')?;
                f.write_str("+")?;
                term(f, j, 's')
            }
        }
    }
}

/// Parses a token over `E_2`; use [`EpElem::parse`] for other primes.
impl FromStr for EpElem {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        EpElem::parse(s, Prime::TWO)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes() -> [Prime; 3] {
        [Prime::TWO, Prime::THREE, Prime::new(5).unwrap()]
    }

    /// Product by bilinear expansion over the relation table, independent of `alpha`.
    fn bilinear(x: EpElem, y: EpElem) -> EpElem {
        let p = x.p;
        let (r, s) = (EpElem::r(p), EpElem::s(p));
        // r*r = r, r*s = r, s*r = s, s*s = s
        let table = |a: usize, b: usize| [[r, r], [s, s]][a][b];
        let xs = [x.i, x.j];
        let ys = [y.i, y.j];
        let mut acc = EpElem::zero(p);
        for a in 0..2 {
            for b in 0..2 {
                acc = acc + table(a, b).scaled(p.mul(xs[a], ys[b]));
            }
        }
        acc
    }

    #[test]
    fn defining_relations() {
        for p in primes() {
            let (r, s) = (EpElem::r(p), EpElem::s(p));
            assert_eq!(r * r, r);
            assert_eq!(s * s, s);
            assert_eq!(r * s, r);
            assert_eq!(s * r, s);
            assert_ne!(r * s, s * r);
            for x in EpElem::all(p) {
                assert_eq!(x.scaled(0), EpElem::zero(p));
                let mut acc = EpElem::zero(p);
                for _ in 0..p.get() {
                    acc = acc + x;
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn closed_form_matches_bilinear_expansion() {
        for p in primes() {
            for x in EpElem::all(p) {
                for y in EpElem::all(p) {
                    assert_eq!(x * y, bilinear(x, y), "{x} * {y} over E_{p}");
                }
            }
        }
    }

    #[test]
    fn ring_axioms() {
        for p in primes() {
            for x in EpElem::all(p) {
                for y in EpElem::all(p) {
                    for z in EpElem::all(p) {
                        assert_eq!((x * y) * z, x * (y * z));
                        assert_eq!(x * (y + z), x * y + x * z);
                        assert_eq!((x + y) * z, x * z + y * z);
                    }
                }
            }
        }
    }

    #[test]
    fn addition_examples() {
        let p = Prime::TWO;
        assert_eq!(EpElem::r(p) + EpElem::s(p), EpElem::new(1, 1, p));
        assert_eq!(EpElem::t(p) + EpElem::s(p), EpElem::r(p));
        for q in primes() {
            for x in EpElem::all(q) {
                assert!((x + -x).is_zero());
            }
        }
    }

    #[test]
    fn products_with_t() {
        for p in primes() {
            let t = EpElem::t(p);
            for x in EpElem::all(p) {
                assert!((x * t).is_zero());
            }
            assert_eq!(t * EpElem::r(p), t);
        }
    }

    #[test]
    fn alpha_is_a_surjective_morphism() {
        for p in primes() {
            assert_eq!(EpElem::r(p).alpha().value(), 1);
            assert_eq!(EpElem::s(p).alpha().value(), 1);
            assert_eq!(EpElem::t(p).alpha().value(), 0);
            let mut kernel = 0;
            let mut image = std::collections::BTreeSet::new();
            for x in EpElem::all(p) {
                image.insert(x.alpha().value());
                kernel += x.in_max_ideal() as usize;
                for y in EpElem::all(p) {
                    assert_eq!((x * y).alpha(), x.alpha() * y.alpha());
                    assert_eq!((x + y).alpha(), x.alpha() + y.alpha());
                }
            }
            assert_eq!(kernel, p.get() as usize);
            assert_eq!(image.len(), p.get() as usize);
        }
        let p = Prime::THREE;
        assert_eq!(EpElem::new(2, 2, p).alpha().value(), 1);
    }

    #[test]
    fn t_adic_decomposition() {
        for p in primes() {
            let pm1 = p.get() - 1;
            assert_eq!(EpElem::r(p).t_adic_raw(), (1, 0));
            assert_eq!(EpElem::s(p).t_adic_raw(), (1, pm1));
            assert_eq!(EpElem::t(p).t_adic_raw(), (0, 1));
            let mut seen = std::collections::HashSet::new();
            for x in EpElem::all(p) {
                let (u, v) = x.t_adic_raw();
                assert!(seen.insert((u, v)));
                let rebuilt = EpElem::r(p).scaled(u) + EpElem::t(p).scaled(v);
                assert_eq!(rebuilt, x);
                assert_eq!(EpElem::from_t_adic(u, v, p), x);
            }
        }
    }

    #[test]
    fn right_zero_divisors_are_the_maximal_ideal() {
        for p in primes() {
            for x in EpElem::all(p) {
                let right_zero_divisor =
                    EpElem::all(p).any(|y| !y.is_zero() && (y * x).is_zero());
                assert_eq!(right_zero_divisor, x.in_max_ideal(), "{x} over E_{p}");
            }
        }
    }

    #[test]
    fn scalar_action_and_ideal() {
        let p = Prime::THREE;
        let two = FpScalar::new(2, p);
        assert_eq!(EpElem::r(p).scalar_action(two), EpElem::new(2, 0, p));
        assert!(EpElem::t(p).in_max_ideal());
        assert!(!EpElem::s(p).in_max_ideal());
    }

    #[test]
    fn tokens_round_trip() {
        for p in primes() {
            for x in EpElem::all(p) {
                let tok = x.to_string();
                assert_eq!(EpElem::parse(&tok, p).unwrap(), x, "token {tok}");
            }
        }
        let p = Prime::THREE;
        assert_eq!(EpElem::parse("2r", p).unwrap(), EpElem::new(2, 0, p));
        assert_eq!(EpElem::parse("r+2s", p).unwrap(), EpElem::new(1, 2, p));
        assert_eq!(EpElem::parse("t", p).unwrap(), EpElem::new(1, 2, p));
        assert_eq!(EpElem::new(1, 2, p).to_string(), "t");
        assert_eq!(EpElem::new(2, 1, p).to_string(), "2t");
        assert_eq!(EpElem::new(1, 1, p).to_string(), "r+s");
        assert_eq!("t".parse::<EpElem>().unwrap(), EpElem::new(1, 1, Prime::TWO));
        for bad in ["3r", "x", "", "r+t", "s+r", "0r", "2"] {
            assert!(EpElem::parse(bad, p).is_err(), "{bad}");
        }
    }

    #[test]
    fn mismatched_moduli() {
        let a = EpElem::r(Prime::TWO);
        let b = EpElem::r(Prime::THREE);
        assert_eq!(a.try_add(b), Err(Error::ModulusMismatch(2, 3)));
        assert!(a.try_mul(b).is_err());
    }
}
