//! Sparse multivariate polynomials over the integers with half-integer
//! (and, where needed, negative) exponents.
//!
//! Every exponent is stored doubled: `x^{1/2}` is kept as `("x", 1)`,
//! `x^2` as `("x", 4)`. Terms live in a `BTreeMap` with no zero
//! coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type VarId = String;

/// Power product with doubled exponents, sorted by variable name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(VarId, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Integer exponents; doubled internally.
    pub fn new(pairs: &[(&str, i64)]) -> Self {
        let doubled: Vec<(&str, i64)> = pairs.iter().map(|&(v, e)| (v, 2 * e)).collect();
        Self::from_doubled(&doubled)
    }

    /// Exponents given already doubled, so odd values mean half-integers.
    pub fn from_doubled(pairs: &[(&str, i64)]) -> Self {
        let mut map: BTreeMap<&str, i64> = BTreeMap::new();
        for &(v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(
            map.into_iter()
                .filter(|&(_, e)| e != 0)
                .map(|(v, e)| (v.to_string(), e))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Doubled exponent of `var` (0 if absent).
    pub fn exponent(&self, var: &str) -> i64 {
        self.0
            .binary_search_by(|(v, _)| v.as_str().cmp(var))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(v, e)| (v.as_str(), *e))
    }

    /// Sum of doubled exponents.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn scale(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    fn halve(&self) -> Option<Monomial> {
        if self.0.iter().all(|(_, e)| e % 2 == 0) {
            Some(Monomial(
                self.0.iter().map(|(v, e)| (v.clone(), e / 2)).collect(),
            ))
        } else {
            None
        }
    }

    pub fn without(&self, var: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }

    /// Graded lexicographic order: higher total degree first, then the
    /// larger exponent on the alphabetically first differing variable.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {
                            if ea != eb {
                                return eb.cmp(ea);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

fn fmt_exponent(d: i64) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{}/2", d)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 2 {
                    v.clone()
                } else {
                    format!("{}^{}", v, fmt_exponent(*e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// How a variable is replaced during substitution.
#[derive(Clone, Debug)]
pub enum Binding {
    /// `var := p`. Half-integer powers need `p` to be a monomial with a
    /// square root.
    Poly(Polynomial),
    /// `var := s²`, so `var^{k/2}` becomes `s^k` for every `k`.
    Sqrt(Polynomial),
}

/// One record of the structured output form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermRecord {
    pub coefficient: String,
    pub exponents: BTreeMap<VarId, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::var_pow(name, 1)
    }

    /// `name^k` for an integer `k`.
    pub fn var_pow(name: &str, k: i64) -> Self {
        Self::term(BigInt::one(), Monomial::new(&[(name, k)]))
    }

    /// `name^{d/2}`; the half-integer flag is the explicit doubled form.
    pub fn var_half_pow(name: &str, doubled: i64) -> Self {
        Self::term(BigInt::one(), Monomial::from_doubled(&[(name, doubled)]))
    }

    /// Builds from `(coefficient, [(var, doubled exponent)])` terms.
    pub fn from_terms(terms: &[(i64, &[(&str, i64)])]) -> Self {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(BigInt::from(*c), Monomial::from_doubled(m));
        }
        p
    }

    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn as_single_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.to_string()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Smallest and largest doubled exponent of `var` over all terms.
    pub fn exponent_range(&self, var: &str) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| m.exponent(var));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// True when no exponent is negative or half-integral.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().all(|(_, e)| e >= 0 && e % 2 == 0))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, k) in &self.terms {
            p.add_term(k * c, m.clone());
        }
        p
    }

    /// Divides every coefficient by `d`, or `None` if some term is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Polynomial { terms })
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous renaming of variables, e.g. a swap `x ↔ y`.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let renamed: Vec<(&str, i64)> = m
                .iter()
                .map(|(v, e)| {
                    (
                        pairs.iter().find(|(f, _)| *f == v).map_or(v, |(_, t)| *t),
                        e,
                    )
                })
                .collect();
            out.add_term(c.clone(), Monomial::from_doubled(&renamed));
        }
        out
    }

    /// `var^j ↦ base^{degree − j}`: the value of `base^degree · p(var = 1/base)`
    /// when `var` occurs with integer exponents in `0..=degree`.
    pub fn homogenize(&self, var: &str, degree: i64, base: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let d = m.exponent(var);
            if d % 2 != 0 || d / 2 > degree || d < 0 {
                return Err(Error::FractionalSubstitution {
                    var: var.to_string(),
                });
            }
            let rest = Polynomial::term(c.clone(), m.without(var));
            out += &(&rest * &base.pow((degree - d / 2) as u32));
        }
        Ok(out)
    }

    /// `var ↦ 1/var`.
    pub fn invert_var(&self, var: &str) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e = m.exponent(var);
                    let m2 = if e == 0 {
                        m.clone()
                    } else {
                        m.mul(&Monomial::from_doubled(&[(var, -2 * e)]))
                    };
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Rewrites `s^k` as `s^{k mod 2} · radicand^{k div 2}`, the canonical
    /// form modulo `s² = radicand`. Fails on negative or fractional powers of `s`.
    pub fn reduce_square(&self, s: &str, radicand: &Polynomial) -> Result<Polynomial> {
        let mut cache: HashMap<i64, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let d = m.exponent(s);
            if d < 0 || d % 2 != 0 {
                return Err(Error::FractionalSubstitution { var: s.to_string() });
            }
            let k = d / 2;
            let rest = m.without(s);
            let head = Polynomial::term(c.clone(), rest.mul(&Monomial::new(&[(s, k % 2)])));
            let factor = cache
                .entry(k / 2)
                .or_insert_with(|| radicand.pow((k / 2) as u32));
            out += &(&head * &*factor);
        }
        Ok(out)
    }

    /// Inverse of a single term with unit coefficient.
    fn unit_inverse(&self) -> Option<Polynomial> {
        let (m, c) = self.as_single_term()?;
        if c.abs().is_one() {
            Some(Polynomial::term(c.clone(), m.scale(-1)))
        } else {
            None
        }
    }

    fn sqrt_monomial(&self) -> Option<Polynomial> {
        let (m, c) = self.as_single_term()?;
        if c.is_negative() {
            return None;
        }
        let r = c.sqrt();
        if &(&r * &r) != c {
            return None;
        }
        Some(Polynomial::term(r, m.halve()?))
    }

    fn power_of(base: &Polynomial, k: i64, var: &str) -> Result<Polynomial> {
        if k >= 0 {
            Ok(base.pow(k as u32))
        } else {
            let inv = base
                .unit_inverse()
                .ok_or_else(|| Error::NonInvertibleSubstitution {
                    var: var.to_string(),
                })?;
            Ok(inv.pow((-k) as u32))
        }
    }

    /// Substitutes bound variables; unbound ones pass through.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Binding>) -> Result<Polynomial> {
        let mut cache: HashMap<(String, i64), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::term(c.clone(), Monomial::one());
            let mut free: Vec<(&str, i64)> = Vec::new();
            for (v, d) in m.iter() {
                let Some(b) = bindings.get(v) else {
                    free.push((v, d));
                    continue;
                };
                let key = (v.to_string(), d);
                if !cache.contains_key(&key) {
                    let val =
                        match b {
                            Binding::Sqrt(s) => Self::power_of(s, d, v)?,
                            Binding::Poly(q) if d % 2 == 0 => Self::power_of(q, d / 2, v)?,
                            Binding::Poly(q) => {
                                let r = q.sqrt_monomial().ok_or_else(|| {
                                    Error::FractionalSubstitution { var: v.to_string() }
                                })?;
                                Self::power_of(&r, d, v)?
                            }
                        };
                    cache.insert(key.clone(), val);
                }
                acc = &acc * &cache[&key];
            }
            out += &acc.mul_monomial(&Monomial::from_doubled(&free));
        }
        Ok(out)
    }

    /// `var ↦ target` for a Laurent monomial, at the level of exponents:
    /// `var^{d/2}` becomes `target^{d/2}`, which needs every exponent of
    /// `target` times `d/2` to be a half-integer.
    pub fn map_monomial(&self, var: &str, target: &Monomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let d = m.exponent(var);
            if target.0.iter().any(|(_, e)| (e * d) % 2 != 0) {
                return Err(Error::FractionalSubstitution {
                    var: var.to_string(),
                });
            }
            let image = Monomial(
                target
                    .0
                    .iter()
                    .filter(|_| d != 0)
                    .map(|(v, e)| (v.clone(), e * d / 2))
                    .collect(),
            );
            out.add_term(c.clone(), m.without(var).mul(&image));
        }
        Ok(out)
    }

    /// Convenience: plain polynomial bindings.
    pub fn subs(&self, pairs: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let b: BTreeMap<VarId, Binding> = pairs
            .iter()
            .map(|(v, p)| (v.to_string(), Binding::Poly(p.clone())))
            .collect();
        self.substitute(&b)
    }

    /// Exact rational evaluation.
    pub fn eval(&self, point: &BTreeMap<VarId, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, d) in m.iter() {
                let val = point
                    .get(v)
                    .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                let base = if d % 2 == 0 {
                    val.clone()
                } else {
                    rational_sqrt(val).ok_or_else(|| Error::NonSquareBase {
                        var: v.to_string(),
                        value: val.to_string(),
                    })?
                };
                let k = if d % 2 == 0 { d / 2 } else { d };
                if k < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero(v.to_string()));
                }
                t *= pow_rational(&base, k);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| TermRecord {
                coefficient: c.to_string(),
                exponents: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect()
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.grlex_cmp(b.0));
        ts
    }
}

fn pow_rational(b: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(b.clone(), k as usize)
    } else {
        num_traits::pow(b.recip(), (-k) as usize)
    }
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

/// Shorthand for `var(name)`.
pub fn v(name: &str) -> Polynomial {
    Polynomial::var(name)
}

/// Shorthand for an integer constant.
pub fn c(k: i64) -> Polynomial {
    Polynomial::constant(k)
}

/// Parses a rational like `3`, `-2/5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Small integer view of a rational, handy in tests.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(pairs: &[(&str, i64)]) -> BTreeMap<VarId, BigRational> {
        pairs
            .iter()
            .map(|(v, x)| (v.to_string(), BigRational::from_integer((*x).into())))
            .collect()
    }

    #[test]
    fn difference_of_squares() {
        let p = (v("x") + c(1)) * (v("x") - c(1));
        assert_eq!(p, v("x").pow(2) - c(1));
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn additive_identity() {
        let p = v("x") * v("y") + c(3);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn half_powers_add() {
        let h = Polynomial::var_half_pow("x", 1);
        assert_eq!(&h * &h, v("x"));
        assert_eq!(Polynomial::var_half_pow("x", 3).to_string(), "x^3/2");
    }

    #[test]
    fn grlex_rendering() {
        let p = v("y") + v("x") + v("x").pow(2);
        assert_eq!(p.to_string(), "x^2 + x + y");
        let q = c(3) * v("x1") * v("y1") * v("y2") - v("x1");
        assert_eq!(q.to_string(), "3*x1*y1*y2 - x1");
    }

    #[test]
    fn substitute_direct() {
        let p = v("x").pow(2) + v("x") + v("y");
        let r = p.subs(&[("x", c(1)), ("y", c(2))]).unwrap();
        assert_eq!(r, c(4));
    }

    #[test]
    fn substitute_sqrt_protocol() {
        let p = Polynomial::var_half_pow("x", 1);
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), Binding::Sqrt(v("s")));
        assert_eq!(p.substitute(&b).unwrap(), v("s"));
        let err = p.subs(&[("x", v("y") - c(1))]).unwrap_err();
        assert!(matches!(err, Error::FractionalSubstitution { .. }));
        // a square monomial binding is fine
        assert_eq!(
            p.subs(&[("x", c(4) * v("y").pow(2))]).unwrap(),
            c(2) * v("y")
        );
    }

    #[test]
    fn eval_examples() {
        let p = v("x").pow(2) + v("x") + v("y");
        assert_eq!(
            p.eval(&point(&[("x", 2), ("y", 1)])).unwrap(),
            BigRational::from_integer(7.into())
        );
        let h = Polynomial::var_half_pow("x", 1);
        assert_eq!(
            h.eval(&point(&[("x", 9)])).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert!(matches!(
            h.eval(&point(&[("x", 2)])),
            Err(Error::NonSquareBase { .. })
        ));
    }

    #[test]
    fn reduce_square_canonical() {
        let s = v("s");
        let p = s.pow(3) + s.pow(2);
        let r = p.reduce_square("s", &(v("y") - c(1))).unwrap();
        assert_eq!(r, &(v("s") + c(1)) * &(v("y") - c(1)));
    }

    #[test]
    fn invert_and_laurent() {
        let p = v("z").pow(2) + c(1);
        let q = p.invert_var("z");
        assert_eq!(q.exponent_range("z"), Some((-4, 0)));
        assert!(!q.is_polynomial());
        assert_eq!(q.mul_monomial(&Monomial::new(&[("z", 2)])), p);
    }
}
