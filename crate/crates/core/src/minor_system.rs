//! Generic minor systems and their canonical Tutte polynomial α.
//!
//! A system supplies deletion, contraction, a classification of
//! one-element objects, and a rank profile. Everything else — the
//! coproduct, ∗-exponentials, the three α engines, the uniformity
//! detector, universality and convolution — is written once here.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::poly::{c, Binding, Monomial, Polynomial};
use std::collections::BTreeMap;

pub const DEFAULT_CAP: usize = 16;
pub const BRUTEFORCE_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemTag {
    Matroid,
    Perspective,
    Graph,
    DeltaMatroid,
    PenroseDeltaMatroid,
    PenroseHat,
    Ribbon,
    PartitionedRibbon,
    PartitionedCellular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grade1Class {
    pub system: SystemTag,
    pub id: usize,
    pub label: &'static str,
}

pub trait MinorSystem: Clone + Eq + Hash + Debug {
    const TAG: SystemTag;

    /// Number of elements; elements are `0..size()` in order.
    fn size(&self) -> usize;

    /// Removes element `e`; the rest keep their relative order.
    fn delete(&self, e: usize) -> Result<Self>;

    fn contract(&self, e: usize) -> Result<Self>;

    fn class_labels() -> &'static [&'static str];

    /// Class id of a one-element object.
    fn classify(&self) -> Result<usize>;

    /// Per-class increments `m[i][j]`, doubled.
    fn profile_matrix() -> Vec<Vec<i64>>;

    /// Values `r_j(self)`, doubled.
    fn profile_ranks(&self) -> Result<Vec<i64>>;

    fn classify_grade1(&self) -> Result<Grade1Class> {
        let id = self.classify()?;
        Ok(Grade1Class {
            system: Self::TAG,
            id,
            label: Self::class_labels()[id],
        })
    }

    /// Profile ranks of `self ∖ A^c`; override when cheaper directly.
    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        restrict(self, mask)?.profile_ranks()
    }
}

/// Systems with a direct sum (the Hopf multiplication).
pub trait DirectSum: MinorSystem {
    fn direct_sum(&self, other: &Self) -> Self;
}

/// Systems with a duality swapping deletion and contraction.
pub trait Dual: MinorSystem {
    fn dual(&self) -> Result<Self>;
    /// Class of `S*` when `S` is in class `i`.
    fn dual_class(i: usize) -> usize;
}

/// `S ∖ A^c`: deletes every element outside `mask`.
pub fn restrict<M: MinorSystem>(s: &M, mask: u32) -> Result<M> {
    minor(s, full_mask(s.size()) & !mask, 0)
}

/// `S / A`.
pub fn contract_set<M: MinorSystem>(s: &M, mask: u32) -> Result<M> {
    minor(s, 0, mask)
}

/// Deletes `del` and contracts `con`, highest index first.
pub fn minor<M: MinorSystem>(s: &M, del: u32, con: u32) -> Result<M> {
    if del & con != 0 {
        return Err(Error::OverlappingSets);
    }
    let mut cur = s.clone();
    for e in (0..s.size()).rev() {
        if del >> e & 1 == 1 {
            cur = cur.delete(e)?;
        } else if con >> e & 1 == 1 {
            cur = cur.contract(e)?;
        }
    }
    Ok(cur)
}

pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Class of `S` restricted to element `e`.
pub fn class_of_restriction<M: MinorSystem>(s: &M, e: usize) -> Result<usize> {
    restrict(s, 1 << e)?.classify()
}

/// Class of `S` with every other element contracted.
pub fn class_of_contraction<M: MinorSystem>(s: &M, e: usize) -> Result<usize> {
    contract_set(s, full_mask(s.size()) & !(1 << e))?.classify()
}

/// The pairs `(S ∖ A^c, S / A)` in binary-counting order of `A`.
pub fn coproduct_terms<M: MinorSystem>(s: &M) -> Result<Vec<(M, M)>> {
    coproduct_terms_capped(s, DEFAULT_CAP)
}

pub fn coproduct_terms_capped<M: MinorSystem>(s: &M, cap: usize) -> Result<Vec<(M, M)>> {
    check_cap(s.size(), cap)?;
    (0..=full_mask(s.size()))
        .map(|a| Ok((restrict(s, a)?, contract_set(s, a)?)))
        .collect()
}

/// Coefficients of a selector, indexed by class id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    pub coeffs: Vec<Polynomial>,
}

impl Selector {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        Selector { coeffs }
    }

    pub fn get(&self, class: usize) -> &Polynomial {
        &self.coeffs[class]
    }

    /// `a_i = ∏_j prefix_j^{m_ij}` in variables `prefix1, prefix2, …`.
    pub fn generic<M: MinorSystem>(prefix: &str) -> Self {
        let names: Vec<String> = (1..=M::profile_matrix()[0].len())
            .map(|j| format!("{prefix}{j}"))
            .collect();
        Selector::new(
            M::profile_matrix()
                .iter()
                .map(|row| {
                    let pairs: Vec<(&str, i64)> = names
                        .iter()
                        .map(|n| n.as_str())
                        .zip(row.iter().copied())
                        .collect();
                    Polynomial::term(BigInt::one(), Monomial::from_doubled(&pairs))
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Selector::new(self.coeffs.iter().map(|p| -p).collect())
    }

    /// `δ_{a*} = δ_a ∘ *`.
    pub fn dual<M: Dual>(&self) -> Self {
        Selector::new(
            (0..self.coeffs.len())
                .map(|i| self.coeffs[M::dual_class(i)].clone())
                .collect(),
        )
    }

    pub fn substitute(&self, b: &BTreeMap<String, Binding>) -> Result<Self> {
        Ok(Selector::new(
            self.coeffs
                .iter()
                .map(|p| p.substitute(b))
                .collect::<Result<_>>()?,
        ))
    }

    fn check_len<M: MinorSystem>(&self) -> Result<()> {
        if self.coeffs.len() != M::class_labels().len() {
            return Err(Error::ProfileMismatch(format!(
                "selector has {} coefficients, system has {} classes",
                self.coeffs.len(),
                M::class_labels().len()
            )));
        }
        Ok(())
    }
}

/// Triples `(k, i, j)` with `m_k = (m_i + m_j)/2`: uniformity then forces
/// `a_k² = a_i a_j`.
pub fn sqrt_constraints<M: MinorSystem>() -> Vec<(usize, usize, usize)> {
    let m = M::profile_matrix();
    let mut out = Vec::new();
    for (k, row) in m.iter().enumerate() {
        if row.iter().all(|e| e % 2 == 0) {
            continue;
        }
        for (i, j) in (0..m.len()).tuple_combinations() {
            if i != k && j != k && (0..row.len()).all(|t| 2 * row[t] == m[i][t] + m[j][t]) {
                out.push((k, i, j));
            }
        }
    }
    out
}

/// Checks the algebraic uniformity constraints of the profile.
pub fn check_selector_constraints<M: MinorSystem>(d: &Selector) -> Result<()> {
    d.check_len::<M>()?;
    for (k, i, j) in sqrt_constraints::<M>() {
        let lhs = d.get(k) * d.get(k);
        let rhs = d.get(i) * d.get(j);
        if lhs != rhs {
            return Err(Error::NonUniformSelector(format!(
                "{}² ≠ {}·{} for classes {}, {}, {}",
                d.get(k),
                d.get(i),
                d.get(j),
                M::class_labels()[k],
                M::class_labels()[i],
                M::class_labels()[j]
            )));
        }
    }
    Ok(())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Sum over all orderings of the elements of the δ-products along the
/// corresponding full decomposition (i.e. `n! · exp_*(δ)(S)`).
fn exp_star_sum<M: MinorSystem>(
    s: &M,
    d: &Selector,
    memo: &mut HashMap<M, Polynomial>,
) -> Result<Polynomial> {
    if s.size() == 0 {
        return Ok(Polynomial::one());
    }
    if let Some(p) = memo.get(s) {
        return Ok(p.clone());
    }
    let mut total = Polynomial::zero();
    for e in 0..s.size() {
        let coeff = d.get(class_of_restriction(s, e)?);
        if coeff.is_zero() {
            continue;
        }
        let rest = exp_star_sum(&s.contract(e)?, d, memo)?;
        total += &(coeff * &rest);
    }
    memo.insert(s.clone(), total.clone());
    Ok(total)
}

fn exp_star_memo<M: MinorSystem>(
    s: &M,
    d: &Selector,
    memo: &mut HashMap<M, Polynomial>,
) -> Result<Polynomial> {
    let sum = exp_star_sum(s, d, memo)?;
    let n = factorial(s.size());
    sum.div_exact(&n).ok_or_else(|| Error::NonIntegralAverage {
        sum: sum.to_string(),
        orderings: n.to_string(),
    })
}

/// `exp_*(δ)(S)`, the average of `δ^{⊗n}` over the `n!` full decompositions.
pub fn exp_star_bruteforce<M: MinorSystem>(s: &M, d: &Selector) -> Result<Polynomial> {
    check_cap(s.size(), BRUTEFORCE_CAP)?;
    d.check_len::<M>()?;
    exp_star_memo(s, d, &mut HashMap::new())
}

/// Product of δ along the decomposition that peels elements in `order`
/// (original indices).
pub fn decomposition_product<M: MinorSystem>(
    s: &M,
    d: &Selector,
    order: &[usize],
) -> Result<Polynomial> {
    let mut cur = s.clone();
    let mut alive: Vec<usize> = (0..s.size()).collect();
    let mut prod = Polynomial::one();
    for &orig in order {
        let idx = alive
            .iter()
            .position(|&x| x == orig)
            .expect("order is a permutation");
        prod = &prod * d.get(class_of_restriction(&cur, idx)?);
        cur = cur.contract(idx)?;
        alive.remove(idx);
    }
    Ok(prod)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformity {
    Uniform,
    Witness {
        first: Vec<usize>,
        first_value: Polynomial,
        second: Vec<usize>,
        second_value: Polynomial,
    },
}

/// Compares the δ-products of every full decomposition of `S`.
pub fn check_uniform<M: MinorSystem>(s: &M, d: &Selector) -> Result<Uniformity> {
    check_cap(s.size(), BRUTEFORCE_CAP)?;
    d.check_len::<M>()?;
    let mut seen: Option<(Vec<usize>, Polynomial)> = None;
    for order in (0..s.size()).permutations(s.size()) {
        let value = decomposition_product(s, d, &order)?;
        match &seen {
            None => seen = Some((order, value)),
            Some((o, v)) if *v != value => {
                return Ok(Uniformity::Witness {
                    first: o.clone(),
                    first_value: v.clone(),
                    second: order,
                    second_value: value,
                })
            }
            _ => {}
        }
    }
    Ok(Uniformity::Uniform)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bruteforce,
    Statesum,
    Delcon,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Bruteforce, Engine::Statesum, Engine::Delcon];
}

/// The canonical Tutte polynomial α(a, b)(S).
pub fn alpha<M: MinorSystem>(
    s: &M,
    a: &Selector,
    b: &Selector,
    engine: Engine,
) -> Result<Polynomial> {
    match engine {
        Engine::Bruteforce => alpha_bruteforce(s, a, b),
        Engine::Statesum => alpha_statesum(s, a, b),
        Engine::Delcon => alpha_delcon(s, a, b),
    }
}

/// `Σ_A exp_*(δa)(S∖A^c) · exp_*(δb)(S/A)`.
pub fn alpha_bruteforce<M: MinorSystem>(s: &M, a: &Selector, b: &Selector) -> Result<Polynomial> {
    check_cap(s.size(), BRUTEFORCE_CAP)?;
    a.check_len::<M>()?;
    b.check_len::<M>()?;
    let (mut ma, mut mb) = (HashMap::new(), HashMap::new());
    let mut total = Polynomial::zero();
    for mask in 0..=full_mask(s.size()) {
        let left = exp_star_memo(&restrict(s, mask)?, a, &mut ma)?;
        if left.is_zero() {
            continue;
        }
        let right = exp_star_memo(&contract_set(s, mask)?, b, &mut mb)?;
        total += &(&left * &right);
    }
    Ok(total)
}

/// Variables `x1…xk` / `y1…yk` the state sum is written in.
pub fn profile_vars<M: MinorSystem>(prefix: &str) -> Vec<String> {
    (1..=M::profile_matrix()[0].len())
        .map(|j| format!("{prefix}{j}"))
        .collect()
}

/// State-sum form, valid for the generic monomial selectors only.
pub fn alpha_statesum<M: MinorSystem>(s: &M, a: &Selector, b: &Selector) -> Result<Polynomial> {
    check_cap(s.size(), DEFAULT_CAP)?;
    for (sel, prefix) in [(a, "x"), (b, "y")] {
        sel.check_len::<M>()?;
        if *sel != Selector::generic::<M>(prefix) {
            return Err(Error::ProfileMismatch(format!(
                "state sum needs a_i = ∏ {prefix}_j^(m_ij); got {:?}",
                sel.coeffs.iter().map(|p| p.to_string()).collect::<Vec<_>>()
            )));
        }
    }
    statesum_generic(s)
}

/// `∏ y_j^{r_j(S)} Σ_A ∏ (x_j/y_j)^{r_j(S∖A^c)}`.
pub fn statesum_generic<M: MinorSystem>(s: &M) -> Result<Polynomial> {
    check_cap(s.size(), DEFAULT_CAP)?;
    let xs = profile_vars::<M>("x");
    let ys = profile_vars::<M>("y");
    let top = s.profile_ranks()?;
    let mut total = Polynomial::zero();
    for mask in 0..=full_mask(s.size()) {
        let r = s.restricted_ranks(mask)?;
        let mut pairs: Vec<(&str, i64)> = Vec::new();
        for j in 0..r.len() {
            pairs.push((xs[j].as_str(), r[j]));
            pairs.push((ys[j].as_str(), top[j] - r[j]));
        }
        total.add_term(BigInt::one(), Monomial::from_doubled(&pairs));
    }
    Ok(total)
}

/// Deletion–contraction on the lowest-index element.
pub fn alpha_delcon<M: MinorSystem>(s: &M, a: &Selector, b: &Selector) -> Result<Polynomial> {
    check_cap(s.size(), DEFAULT_CAP)?;
    check_selector_constraints::<M>(a)?;
    check_selector_constraints::<M>(b)?;
    delcon_rec(s, a, b, &mut HashMap::new(), &|_| 0)
}

/// Deletion–contraction with a caller-chosen element at each step.
pub fn alpha_delcon_with<M: MinorSystem>(
    s: &M,
    a: &Selector,
    b: &Selector,
    pick: &dyn Fn(&M) -> usize,
) -> Result<Polynomial> {
    check_cap(s.size(), DEFAULT_CAP)?;
    check_selector_constraints::<M>(a)?;
    check_selector_constraints::<M>(b)?;
    delcon_rec(s, a, b, &mut HashMap::new(), pick)
}

fn delcon_rec<M: MinorSystem>(
    s: &M,
    a: &Selector,
    b: &Selector,
    memo: &mut HashMap<M, Polynomial>,
    pick: &dyn Fn(&M) -> usize,
) -> Result<Polynomial> {
    if s.size() == 0 {
        return Ok(Polynomial::one());
    }
    if let Some(p) = memo.get(s) {
        return Ok(p.clone());
    }
    let e = pick(s);
    let fb = b.get(class_of_contraction(s, e)?);
    let fa = a.get(class_of_restriction(s, e)?);
    let mut out = Polynomial::zero();
    if !fb.is_zero() {
        out += &(fb * &delcon_rec(&s.delete(e)?, a, b, memo, pick)?);
    }
    if !fa.is_zero() {
        out += &(fa * &delcon_rec(&s.contract(e)?, a, b, memo, pick)?);
    }
    memo.insert(s.clone(), out.clone());
    Ok(out)
}

/// Checks the increment hypothesis `r_j(S) = r_j(S/e) + m_ij` for every
/// element; returns the first offending `(e, j)`.
pub fn check_profile_hypothesis<M: MinorSystem>(s: &M) -> Result<Option<(usize, usize)>> {
    let m = M::profile_matrix();
    let top = s.profile_ranks()?;
    for e in 0..s.size() {
        let i = class_of_restriction(s, e)?;
        let below = s.contract(e)?.profile_ranks()?;
        for j in 0..top.len() {
            if top[j] != below[j] + m[i][j] {
                return Ok(Some((e, j)));
            }
        }
    }
    if s.size() == 0 && top.iter().any(|&r| r != 0) {
        return Ok(Some((0, 0)));
    }
    Ok(None)
}

/// `α(a,b)(S) = Σ_A α(a,c)(S∖A^c) · α(−c,b)(S/A)`, both sides computed.
pub fn convolution_sides<M: MinorSystem>(
    s: &M,
    a: &Selector,
    b: &Selector,
    cvec: &Selector,
) -> Result<(Polynomial, Polynomial)> {
    let lhs = alpha_delcon(s, a, b)?;
    let neg = cvec.neg();
    let mut rhs = Polynomial::zero();
    for mask in 0..=full_mask(s.size()) {
        let l = alpha_delcon(&restrict(s, mask)?, a, cvec)?;
        if l.is_zero() {
            continue;
        }
        rhs += &(&l * &alpha_delcon(&contract_set(s, mask)?, &neg, b)?);
    }
    Ok((lhs, rhs))
}

/// Both sides of the universality rescaling for a partition `J_X, J_Y`
/// (the rest is `J_Z`) of the profile indices.
pub fn universality_sides<M: MinorSystem>(
    s: &M,
    jx: &[usize],
    jy: &[usize],
) -> Result<(Polynomial, Polynomial)> {
    let xs = profile_vars::<M>("x");
    let ys = profile_vars::<M>("y");
    let full = statesum_generic(s)?;
    let mut set_one = BTreeMap::new();
    for &j in jx {
        set_one.insert(xs[j].clone(), Binding::Poly(c(1)));
    }
    let a2 = Selector::generic::<M>("x").substitute(&set_one)?;
    let mut set_one = BTreeMap::new();
    for &j in jy {
        set_one.insert(ys[j].clone(), Binding::Poly(c(1)));
    }
    let b2 = Selector::generic::<M>("y").substitute(&set_one)?;
    let reduced = alpha_delcon(s, &a2, &b2)?;
    let mut back = BTreeMap::new();
    for &j in jx {
        let m = Monomial::from_doubled(&[(ys[j].as_str(), 2), (xs[j].as_str(), -2)]);
        back.insert(
            ys[j].clone(),
            Binding::Poly(Polynomial::term(BigInt::one(), m)),
        );
    }
    for &j in jy {
        let m = Monomial::from_doubled(&[(xs[j].as_str(), 2), (ys[j].as_str(), -2)]);
        back.insert(
            xs[j].clone(),
            Binding::Poly(Polynomial::term(BigInt::one(), m)),
        );
    }
    let top = s.profile_ranks()?;
    let mut pre: Vec<(&str, i64)> = Vec::new();
    for &j in jx {
        pre.push((xs[j].as_str(), top[j]));
    }
    for &j in jy {
        pre.push((ys[j].as_str(), top[j]));
    }
    let rhs = reduced
        .substitute(&back)?
        .mul_monomial(&Monomial::from_doubled(&pre));
    Ok((full, rhs))
}
