//! Delta-matroids as feasible-set families: twists, loop complementation,
//! minors, the ρ and ξ rank functions, Bollobás–Riordan and Penrose
//! polynomials, and the three minor systems built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::bits::{elements, popcount, remove_bit};
use crate::error::{check_cap, Error, Result};
use crate::matroid::Matroid;
use crate::minor_system::{full_mask, DirectSum, Dual, MinorSystem, SystemTag, DEFAULT_CAP};
use crate::poly::{c, v, Monomial, Polynomial};

/// Square-root variables used by half-integer expansions:
/// `sx² = x − 1`, `sy² = y − 1`.
pub const SX: &str = "sx";
pub const SY: &str = "sy";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMatroid {
    n: usize,
    feasible: Vec<u32>,
}

/// One step of a twist / loop-complementation sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Twist(usize),
    Complement(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoopKind {
    No,
    Orientable,
    NonOrientable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementKind {
    pub is_loop: bool,
    pub is_coloop: bool,
    pub ribbon_loop: LoopKind,
    pub dual_loop: LoopKind,
}

fn normalize(mut fam: Vec<u32>) -> Vec<u32> {
    fam.sort_unstable();
    fam.dedup();
    fam
}

/// First `(X, Y, u)` breaking symmetric exchange, if any.
fn sea_violation(n: usize, fam: &[u32]) -> Option<(u32, u32, usize)> {
    let mut member = vec![false; 1usize << n];
    for &f in fam {
        member[f as usize] = true;
    }
    for &x in fam {
        for &y in fam {
            let d = x ^ y;
            for u in elements(d) {
                if !elements(d).any(|w| member[(x ^ (1 << u | 1 << w)) as usize]) {
                    return Some((x, y, u));
                }
            }
        }
    }
    None
}

fn twist_raw(fam: &[u32], a: u32) -> Vec<u32> {
    normalize(fam.iter().map(|f| f ^ a).collect())
}

fn complement_raw(fam: &[u32], e: usize) -> Vec<u32> {
    let bit = 1u32 << e;
    let mut out: Vec<u32> = fam.to_vec();
    for &f in fam {
        if f & bit == 0 {
            let g = f | bit;
            match out.binary_search(&g) {
                Ok(i) => {
                    out.remove(i);
                }
                Err(i) => out.insert(i, g),
            }
        }
    }
    out
}

fn fmt_family(fam: &[u32]) -> String {
    let sets: Vec<String> = fam
        .iter()
        .map(|&f| {
            format!(
                "{{{}}}",
                elements(f)
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", sets.join(", "))
}

impl DeltaMatroid {
    /// Validates the family exhaustively.
    pub fn new(n: usize, feasible: Vec<u32>) -> Result<Self> {
        check_cap(n, DEFAULT_CAP)?;
        if feasible.is_empty() {
            return Err(Error::NotADeltaMatroid("empty feasible family".into()));
        }
        if let Some(&f) = feasible.iter().find(|&&f| f & !full_mask(n) != 0) {
            return Err(Error::NotADeltaMatroid(format!(
                "feasible set {f:#b} leaves the ground set"
            )));
        }
        let feasible = normalize(feasible);
        if let Some((x, y, u)) = sea_violation(n, &feasible) {
            return Err(Error::NotADeltaMatroid(format!(
                "symmetric exchange fails for X={}, Y={}, u={u} in {}",
                fmt_family(&[x]),
                fmt_family(&[y]),
                fmt_family(&feasible)
            )));
        }
        Ok(DeltaMatroid { n, feasible })
    }

    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut fam = Vec::new();
        for s in sets {
            let mut m = 0u32;
            for &e in s {
                if e >= n {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        size: n,
                    });
                }
                m |= 1 << e;
            }
            fam.push(m);
        }
        Self::new(n, fam)
    }

    /// For families known to be delta-matroids (minors, twists, ribbon graphs).
    pub(crate) fn trusted(n: usize, feasible: Vec<u32>) -> Self {
        DeltaMatroid {
            n,
            feasible: normalize(feasible),
        }
    }

    /// The delta-matroid whose feasible sets are the bases of `m`.
    pub fn from_matroid(m: &Matroid) -> Self {
        let r = m.full_rank();
        let bases = (0..=full_mask(m.len()))
            .filter(|&a| popcount(a) == r && m.rank(a) == r)
            .collect();
        Self::trusted(m.len(), bases)
    }

    pub fn unit() -> Self {
        Self::trusted(0, vec![0])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn feasible(&self) -> &[u32] {
        &self.feasible
    }

    pub fn is_feasible(&self, a: u32) -> bool {
        self.feasible.binary_search(&a).is_ok()
    }

    pub fn r_min(&self) -> i64 {
        self.feasible
            .iter()
            .map(|&f| popcount(f))
            .min()
            .unwrap_or(0)
    }

    pub fn r_max(&self) -> i64 {
        self.feasible
            .iter()
            .map(|&f| popcount(f))
            .max()
            .unwrap_or(0)
    }

    fn layer(&self, size: i64) -> impl Iterator<Item = u32> + '_ {
        self.feasible
            .iter()
            .copied()
            .filter(move |&f| popcount(f) == size)
    }

    /// The lower matroid `D_min`.
    pub fn lower_matroid(&self) -> Result<Matroid> {
        let fmin: Vec<u32> = self.layer(self.r_min()).collect();
        Matroid::from_rank_fn(self.n, |a| {
            fmin.iter()
                .map(|&f| (f & a).count_ones() as usize)
                .max()
                .unwrap_or(0)
        })
    }

    /// The upper matroid `D_max`.
    pub fn upper_matroid(&self) -> Result<Matroid> {
        let fmax: Vec<u32> = self.layer(self.r_max()).collect();
        Matroid::from_rank_fn(self.n, |a| {
            fmax.iter()
                .map(|&f| (f & a).count_ones() as usize)
                .max()
                .unwrap_or(0)
        })
    }

    pub fn is_even(&self) -> bool {
        let p = self.feasible[0].count_ones() % 2;
        self.feasible.iter().all(|f| f.count_ones() % 2 == p)
    }

    /// `e` lies in no feasible set.
    pub fn is_loop(&self, e: usize) -> bool {
        self.feasible.iter().all(|f| f >> e & 1 == 0)
    }

    /// `e` lies in every feasible set.
    pub fn is_coloop(&self, e: usize) -> bool {
        self.feasible.iter().all(|f| f >> e & 1 == 1)
    }

    pub fn twist(&self, a: u32) -> DeltaMatroid {
        Self::trusted(self.n, twist_raw(&self.feasible, a))
    }

    pub fn dual(&self) -> DeltaMatroid {
        self.twist(full_mask(self.n))
    }

    /// `D + e`, revalidated.
    pub fn loop_complement(&self, e: usize) -> Result<DeltaMatroid> {
        self.loop_complement_set(1 << e)
    }

    /// `D + A`, revalidated once at the end.
    pub fn loop_complement_set(&self, a: u32) -> Result<DeltaMatroid> {
        let fam = elements(a).fold(self.feasible.clone(), |f, e| complement_raw(&f, e));
        Self::new(self.n, fam)
    }

    /// `r_max(D + A)` without requiring `D + A` to be a delta-matroid.
    pub fn r_max_complemented(&self, a: u32) -> i64 {
        let fam = elements(a).fold(self.feasible.clone(), |f, e| complement_raw(&f, e));
        fam.iter().map(|&f| popcount(f)).max().unwrap_or(0)
    }

    /// `D ∗̄ X = ((D ∗ X) + X) ∗ X`.
    pub fn dual_pivot(&self, x: u32) -> Result<DeltaMatroid> {
        Ok(self.twist(x).loop_complement_set(x)?.twist(x))
    }

    /// Applies a sequence left to right, validating after every complement.
    pub fn transform(&self, seq: &[Transform]) -> Result<DeltaMatroid> {
        let mut d = self.clone();
        for t in seq {
            match *t {
                Transform::Twist(e) | Transform::Complement(e) if e >= self.n => {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        size: self.n,
                    })
                }
                Transform::Twist(e) => d = d.twist(1 << e),
                Transform::Complement(e) => d = d.loop_complement(e)?,
            }
        }
        Ok(d)
    }

    /// Every combination of per-element transformation-group elements
    /// yields a delta-matroid (exhaustive, `n ≤ 4`).
    pub fn is_vf_safe(&self) -> Result<bool> {
        check_cap(self.n, 4)?;
        // the six words of the group generated by ∗e and +e
        const WORDS: [&[u8]; 6] = [&[], &[0], &[1], &[0, 1], &[1, 0], &[0, 1, 0]];
        let mut choice = vec![0usize; self.n];
        loop {
            let mut fam = self.feasible.clone();
            for (e, &w) in choice.iter().enumerate() {
                for &op in WORDS[w] {
                    fam = if op == 0 {
                        twist_raw(&fam, 1 << e)
                    } else {
                        complement_raw(&fam, e)
                    };
                }
            }
            if fam.is_empty() || sea_violation(self.n, &fam).is_some() {
                return Ok(false);
            }
            let mut i = 0;
            while i < self.n && choice[i] == 5 {
                choice[i] = 0;
                i += 1;
            }
            if i == self.n {
                return Ok(true);
            }
            choice[i] += 1;
        }
    }

    /// `D ∖ e`; a coloop is contracted instead.
    pub fn delete_element(&self, e: usize) -> DeltaMatroid {
        if self.is_coloop(e) {
            return self.contract_element(e);
        }
        let fam = self
            .feasible
            .iter()
            .filter(|&&f| f >> e & 1 == 0)
            .map(|&f| remove_bit(f, e))
            .collect();
        Self::trusted(self.n - 1, fam)
    }

    /// `D / e`; a loop is deleted instead.
    pub fn contract_element(&self, e: usize) -> DeltaMatroid {
        if self.is_loop(e) {
            return self.delete_element(e);
        }
        let fam = self
            .feasible
            .iter()
            .filter(|&&f| f >> e & 1 == 1)
            .map(|&f| remove_bit(f, e))
            .collect();
        Self::trusted(self.n - 1, fam)
    }

    pub fn minor(&self, del: u32, con: u32) -> Result<DeltaMatroid> {
        if del & con != 0 {
            return Err(Error::OverlappingSets);
        }
        let mut d = self.clone();
        for e in (0..self.n).rev() {
            if del >> e & 1 == 1 {
                d = d.delete_element(e);
            } else if con >> e & 1 == 1 {
                d = d.contract_element(e);
            }
        }
        Ok(d)
    }

    /// `D|_A = D ∖ A^c`.
    pub fn restriction(&self, a: u32) -> DeltaMatroid {
        self.minor(full_mask(self.n) & !a, 0).expect("disjoint")
    }

    /// `2ρ(D) = r_max + r_min`.
    pub fn rho2(&self) -> i64 {
        self.r_max() + self.r_min()
    }

    /// `2ρ(A) = 2ρ(D ∖ A^c)`.
    pub fn rho2_of(&self, a: u32) -> i64 {
        self.restriction(a).rho2()
    }

    /// `2ξ(A) = |A| + r_max(D + A) − r_max(D)`.
    pub fn xi2_of(&self, a: u32) -> i64 {
        popcount(a) + self.r_max_complemented(a) - self.r_max()
    }

    pub fn xi2(&self) -> i64 {
        self.xi2_of(full_mask(self.n))
    }

    /// `w(A)`: width of `D|_A`.
    pub fn width(&self, a: u32) -> i64 {
        let r = self.restriction(a);
        r.r_max() - r.r_min()
    }

    pub fn ribbon_loop_kind(&self, e: usize) -> LoopKind {
        let rmin = self.r_min();
        if self.layer(rmin).any(|f| f >> e & 1 == 1) {
            return LoopKind::No;
        }
        let t = self.twist(1 << e);
        let tmin = t.r_min();
        if t.layer(tmin).any(|f| f >> e & 1 == 1) {
            LoopKind::Orientable
        } else {
            LoopKind::NonOrientable
        }
    }

    pub fn dual_loop_kind(&self, e: usize) -> LoopKind {
        let rmax = self.r_max();
        if self.layer(rmax).any(|f| f >> e & 1 == 0) {
            return LoopKind::No;
        }
        let t = self.twist(1 << e);
        let tmax = t.r_max();
        if t.layer(tmax).any(|f| f >> e & 1 == 0) {
            LoopKind::Orientable
        } else {
            LoopKind::NonOrientable
        }
    }

    pub fn classify_element(&self, e: usize) -> Result<ElementKind> {
        if e >= self.n {
            return Err(Error::ElementOutOfRange {
                element: e,
                size: self.n,
            });
        }
        Ok(ElementKind {
            is_loop: self.is_loop(e),
            is_coloop: self.is_coloop(e),
            ribbon_loop: self.ribbon_loop_kind(e),
            dual_loop: self.dual_loop_kind(e),
        })
    }

    /// `R̃_D(x, y)` in `x, y` and the square-root variables [`SX`], [`SY`].
    pub fn br2(&self) -> Result<Polynomial> {
        check_cap(self.n, DEFAULT_CAP)?;
        let top = self.rho2();
        let mut p = Polynomial::zero();
        for a in 0..=full_mask(self.n) {
            let r = self.rho2_of(a);
            p.add_term(
                BigInt::one(),
                Monomial::new(&[(SX, top - r), (SY, 2 * popcount(a) - r)]),
            );
        }
        reduce_sqrt_xy(&p)
    }

    /// `R_D(x, y, z)`, with `r_min(A)` read as `r_min(D|_A)`.
    pub fn br3(&self) -> Result<Polynomial> {
        check_cap(self.n, DEFAULT_CAP)?;
        let top = self.r_min();
        let x1 = v("x") - c(1);
        let mut p = Polynomial::zero();
        for a in 0..=full_mask(self.n) {
            let r = self.restriction(a);
            let m = Monomial::new(&[("y", popcount(a) - r.r_min()), ("z", r.r_max() - r.r_min())]);
            p += &x1.pow((top - r.r_min()) as u32).mul_monomial(&m);
        }
        Ok(p)
    }

    /// `R̃_D` by deletion–contraction on the lowest element, with the
    /// coefficient of each branch read off the element's loop kinds.
    pub fn br2_delcon(&self) -> Result<Polynomial> {
        check_cap(self.n, DEFAULT_CAP)?;
        reduce_sqrt_xy(&self.br2_delcon_raw())
    }

    fn br2_delcon_raw(&self) -> Polynomial {
        if self.n == 0 {
            return Polynomial::one();
        }
        let (del, con) = nine_case_coefficients(self.dual_loop_kind(0), self.ribbon_loop_kind(0));
        &(&del * &self.delete_element(0).br2_delcon_raw())
            + &(&con * &self.contract_element(0).br2_delcon_raw())
    }

    /// `P̃_D(x, y)` in `x, y`, [`SX`], [`SY`]; errors when a needed loop
    /// complementation leaves the class of delta-matroids.
    pub fn penrose2(&self) -> Result<Polynomial> {
        check_cap(self.n, DEFAULT_CAP)?;
        let top = self.xi2();
        let mut p = Polynomial::zero();
        for a in 0..=full_mask(self.n) {
            self.loop_complement_set(a)?;
            let x = self.xi2_of(a);
            p.add_term(
                BigInt::one(),
                Monomial::new(&[(SX, top - x), (SY, 2 * popcount(a) - x)]),
            );
        }
        reduce_sqrt_xy(&p)
    }

    /// `P(D; λ) = Σ_A (−1)^{|A|} λ^{r_min(D ∗ E ∗̄ A)}` in the variable `lam`.
    pub fn penrose(&self) -> Result<Polynomial> {
        check_cap(self.n, DEFAULT_CAP)?;
        let d = self.dual();
        let mut p = Polynomial::zero();
        for a in 0..=full_mask(self.n) {
            let sign = if popcount(a) % 2 == 0 { 1 } else { -1 };
            let k = d.dual_pivot(a)?.r_min();
            p.add_term(BigInt::from(sign), Monomial::new(&[("lam", k)]));
        }
        Ok(p)
    }

    pub fn penrose_eval(&self, lam: &BigRational) -> Result<BigRational> {
        let point = BTreeMap::from([("lam".to_string(), lam.clone())]);
        self.penrose()?.eval(&point)
    }

    /// Both sides of the Penrose specialization `sx = i√λ`, `sy = −i√λ`,
    /// as Gaussian polynomials `(re, im)` in `u = √λ`:
    /// `P̃_D = i^{2ξ(E)} λ^{ξ(E) + r_max(D) − |E|} P(D; λ)`.
    pub fn penrose_specialization_sides(&self) -> Result<(Gaussian, Gaussian)> {
        let p2 = self.penrose2()?;
        let lhs = specialize_sqrt_imaginary(&p2);
        let xi2 = self.xi2();
        let shift = xi2 + 2 * self.r_max() - 2 * self.n as i64;
        let classic = self.penrose()?;
        let mut scaled = Polynomial::zero();
        for (m, coef) in classic.terms() {
            scaled.add_term(
                coef.clone(),
                Monomial::from_doubled(&[("u", 2 * m.exponent("lam") + 2 * shift)]),
            );
        }
        Ok((lhs, Gaussian::unit_power(xi2).mul_poly(&scaled)))
    }
}

/// `a + i·b` with polynomial parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gaussian {
    pub re: Polynomial,
    pub im: Polynomial,
}

impl Gaussian {
    /// `i^k`.
    pub fn unit_power(k: i64) -> Gaussian {
        match k.rem_euclid(4) {
            0 => Gaussian { re: c(1), im: c(0) },
            1 => Gaussian { re: c(0), im: c(1) },
            2 => Gaussian {
                re: c(-1),
                im: c(0),
            },
            _ => Gaussian {
                re: c(0),
                im: c(-1),
            },
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Gaussian {
        Gaussian {
            re: &self.re * p,
            im: &self.im * p,
        }
    }
}

/// Substitutes `sx → i·u`, `sy → −i·u` (with `x = sx² + 1`, `y = sy² + 1`).
pub fn specialize_sqrt_imaginary(p: &Polynomial) -> Gaussian {
    let mut re = Polynomial::zero();
    let mut im = Polynomial::zero();
    let expanded = p
        .subs(&[("x", &v(SX).pow(2) + &c(1)), ("y", &v(SY).pow(2) + &c(1))])
        .expect("integral substitution");
    for (m, coef) in expanded.terms() {
        let a = m.exponent(SX) / 2;
        let b = m.exponent(SY) / 2;
        let unit = Gaussian::unit_power(a + 3 * b);
        let mut pairs: Vec<(&str, i64)> = m.iter().filter(|(n, _)| *n != SX && *n != SY).collect();
        pairs.push(("u", 2 * (a + b)));
        let t = Polynomial::term(coef.clone(), Monomial::from_doubled(&pairs));
        re += &(&unit.re * &t);
        im += &(&unit.im * &t);
    }
    Gaussian { re, im }
}

/// `x ↔ y` together with the matching square-root variables.
pub fn swap_xy(p: &Polynomial) -> Polynomial {
    p.rename(&[("x", "y"), ("y", "x"), (SX, SY), (SY, SX)])
}

/// `(x−1)^{k/2} p(x, y−1, 1/√((x−1)(y−1)))` for a polynomial `p` in `x, y, z`,
/// reduced into the square-root variables; `k` is `shift`.
pub fn sqrt_specialize_three_variable(p: &Polynomial, shift: i64) -> Result<Polynomial> {
    let r = p
        .subs(&[
            ("x", Polynomial::var_pow(SX, 2) + c(1)),
            ("y", Polynomial::var_pow(SY, 2)),
        ])?
        .map_monomial("z", &Monomial::new(&[(SX, -1), (SY, -1)]))?
        .mul_monomial(&Monomial::new(&[(SX, shift)]));
    reduce_sqrt_xy(&r)
}

/// Reduces `sx`, `sy` to exponent ≤ 1 using `sx² = x − 1`, `sy² = y − 1`.
pub fn reduce_sqrt_xy(p: &Polynomial) -> Result<Polynomial> {
    p.reduce_square(SX, &(v("x") - c(1)))?
        .reduce_square(SY, &(v("y") - c(1)))
}

/// `(f(e), g(e))`: coefficients of `R̃_{D∖e}` and `R̃_{D/e}` for the given
/// dual-loop and ribbon-loop kinds of `e`.
pub fn nine_case_coefficients(dual: LoopKind, ribbon: LoopKind) -> (Polynomial, Polynomial) {
    let f = match dual {
        LoopKind::No => c(1),
        LoopKind::Orientable => v("x") - c(1),
        LoopKind::NonOrientable => v(SX),
    };
    let g = match ribbon {
        LoopKind::No => c(1),
        LoopKind::Orientable => v("y") - c(1),
        LoopKind::NonOrientable => v(SY),
    };
    (f, g)
}

fn one_element_class(d: &DeltaMatroid) -> Result<usize> {
    if d.n != 1 {
        return Err(Error::WrongGrade { size: d.n });
    }
    Ok(match d.feasible.as_slice() {
        [1] => 0,
        [0] => 1,
        _ => 2,
    })
}

const DM_LABELS: [&str; 3] = ["coloop", "orientable-loop", "non-orientable-loop"];

impl MinorSystem for DeltaMatroid {
    const TAG: SystemTag = SystemTag::DeltaMatroid;

    fn size(&self) -> usize {
        self.n
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(self.delete_element(e))
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(self.contract_element(e))
    }

    fn class_labels() -> &'static [&'static str] {
        &DM_LABELS
    }

    fn classify(&self) -> Result<usize> {
        one_element_class(self)
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0], vec![0, 2], vec![1, 1]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        let r = self.rho2();
        Ok(vec![r, 2 * self.n as i64 - r])
    }
}

impl DirectSum for DeltaMatroid {
    fn direct_sum(&self, other: &Self) -> Self {
        let mut fam = Vec::new();
        for &f in &self.feasible {
            for &g in &other.feasible {
                fam.push(f | g << self.n);
            }
        }
        Self::trusted(self.n + other.n, fam)
    }
}

impl Dual for DeltaMatroid {
    fn dual(&self) -> Result<Self> {
        Ok(DeltaMatroid::dual(self))
    }

    fn dual_class(i: usize) -> usize {
        [1, 0, 2][i]
    }
}

/// Delta-matroids with `D / e` as deletion and `(D + e) / e` as contraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PenroseDm(pub DeltaMatroid);

/// Delta-matroids with `D ∖ e` as deletion and `(D + e) / e` as contraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PenroseHat(pub DeltaMatroid);

fn xi_profile(d: &DeltaMatroid) -> Vec<i64> {
    let x = d.xi2();
    vec![x, 2 * d.n as i64 - x]
}

impl MinorSystem for PenroseDm {
    const TAG: SystemTag = SystemTag::PenroseDeltaMatroid;

    fn size(&self) -> usize {
        self.0.n
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(PenroseDm(self.0.contract_element(e)))
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(PenroseDm(self.0.loop_complement(e)?.contract_element(e)))
    }

    fn class_labels() -> &'static [&'static str] {
        &DM_LABELS
    }

    fn classify(&self) -> Result<usize> {
        one_element_class(&self.0)
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![1, 1], vec![2, 0], vec![0, 2]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        Ok(xi_profile(&self.0))
    }

    /// `ξ(A)` of `D` itself.
    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let x = self.0.xi2_of(mask);
        Ok(vec![x, 2 * popcount(mask) - x])
    }
}

impl DirectSum for PenroseDm {
    fn direct_sum(&self, other: &Self) -> Self {
        PenroseDm(self.0.direct_sum(&other.0))
    }
}

impl MinorSystem for PenroseHat {
    const TAG: SystemTag = SystemTag::PenroseHat;

    fn size(&self) -> usize {
        self.0.n
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(PenroseHat(self.0.delete_element(e)))
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(PenroseHat(self.0.loop_complement(e)?.contract_element(e)))
    }

    fn class_labels() -> &'static [&'static str] {
        &DM_LABELS
    }

    fn classify(&self) -> Result<usize> {
        one_element_class(&self.0)
    }

    /// Rows of the Penrose profile permuted by the dual class map.
    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0], vec![1, 1], vec![0, 2]]
    }

    /// The ξ-profile of `D*`.
    fn profile_ranks(&self) -> Result<Vec<i64>> {
        Ok(xi_profile(&self.0.dual()))
    }
}

impl DirectSum for PenroseHat {
    fn direct_sum(&self, other: &Self) -> Self {
        PenroseHat(self.0.direct_sum(&other.0))
    }
}

/// `D_c`, `D_o`, `D_n`.
pub fn d_c() -> DeltaMatroid {
    DeltaMatroid::trusted(1, vec![1])
}

pub fn d_o() -> DeltaMatroid {
    DeltaMatroid::trusted(1, vec![0])
}

pub fn d_n() -> DeltaMatroid {
    DeltaMatroid::trusted(1, vec![0, 1])
}

/// Selectors with `α = R̃_D` in the square-root variables:
/// `a = (1, sy², sy)`, `b = (sx², 1, sx)`; finish with [`reduce_sqrt_xy`].
pub fn br2_selectors() -> (crate::minor_system::Selector, crate::minor_system::Selector) {
    use crate::minor_system::Selector;
    (
        Selector::new(vec![c(1), v(SY).pow(2), v(SY)]),
        Selector::new(vec![v(SX).pow(2), c(1), v(SX)]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor_system::{alpha, check_profile_hypothesis, Engine, Selector};
    use num_traits::Zero;

    fn dm(n: usize, sets: &[&[usize]]) -> DeltaMatroid {
        DeltaMatroid::from_sets(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// All delta-matroids on `n ≤ 3` elements.
    fn all_dms(n: usize) -> Vec<DeltaMatroid> {
        let subsets = 1u32 << n;
        (1u64..1 << subsets)
            .filter_map(|fam| {
                let f: Vec<u32> = (0..subsets).filter(|s| fam >> s & 1 == 1).collect();
                DeltaMatroid::new(n, f).ok()
            })
            .collect()
    }

    #[test]
    fn rejects_non_delta_matroids() {
        assert!(DeltaMatroid::from_sets(3, &[vec![], vec![0, 1, 2]]).is_err());
        assert!(DeltaMatroid::from_sets(2, &[vec![], vec![0, 1]]).is_ok());
        assert!(DeltaMatroid::new(1, vec![]).is_err());
        assert!(DeltaMatroid::from_sets(2, &[vec![], vec![0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn transforms() {
        assert_eq!(d_c().transform(&[Transform::Twist(0)]).unwrap(), d_o());
        assert_eq!(d_o().transform(&[Transform::Complement(0)]).unwrap(), d_n());
        for d in all_dms(2) {
            assert_eq!(d.dual().dual(), d);
        }
    }

    #[test]
    fn minors() {
        assert_eq!(d_n().contract_element(0), DeltaMatroid::unit());
        let d = dm(2, &[&[], &[0], &[0, 1]]);
        assert_eq!(d.contract_element(0), dm(1, &[&[], &[0]]));
        assert_eq!(d_c().delete_element(0), d_c().contract_element(0));
    }

    #[test]
    fn ranks() {
        assert_eq!(d_n().rho2(), 1);
        assert_eq!(d_c().xi2(), 1);
        let m = DeltaMatroid::from_matroid(&Matroid::uniform(2, 4).unwrap());
        assert_eq!(m.rho2(), 4);
    }

    #[test]
    fn element_kinds() {
        let k = d_c().classify_element(0).unwrap();
        assert_eq!(
            (k.ribbon_loop, k.dual_loop),
            (LoopKind::No, LoopKind::Orientable)
        );
        assert_eq!(d_o().ribbon_loop_kind(0), LoopKind::Orientable);
        let k = d_n().classify_element(0).unwrap();
        assert_eq!(
            (k.ribbon_loop, k.dual_loop),
            (LoopKind::NonOrientable, LoopKind::NonOrientable)
        );
    }

    #[test]
    fn element_kind_matches_restriction() {
        for n in 1..=3 {
            for d in all_dms(n) {
                for e in 0..n {
                    let r = d.restriction(1 << e).classify().unwrap();
                    assert_eq!(
                        r,
                        [LoopKind::No, LoopKind::Orientable, LoopKind::NonOrientable]
                            .iter()
                            .position(|&k| k == d.ribbon_loop_kind(e))
                            .unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn br2_small() {
        assert_eq!(d_c().br2().unwrap(), v("x"));
        assert_eq!(d_o().br2().unwrap(), v("y"));
        assert_eq!(d_n().br2().unwrap(), v(SX) + v(SY));
        let m = Matroid::uniform(1, 2).unwrap();
        assert_eq!(DeltaMatroid::from_matroid(&m).br2().unwrap(), m.tutte());
    }

    #[test]
    fn br2_delcon_agrees() {
        for n in 0..=3 {
            for d in all_dms(n) {
                assert_eq!(d.br2_delcon().unwrap(), d.br2().unwrap(), "{d:?}");
            }
        }
    }

    #[test]
    fn br2_is_alpha() {
        let (a, b) = br2_selectors();
        for n in 0..=3 {
            for d in all_dms(n) {
                let al = reduce_sqrt_xy(&alpha(&d, &a, &b, Engine::Delcon).unwrap()).unwrap();
                assert_eq!(al, d.br2().unwrap());
            }
        }
    }

    #[test]
    fn profile_hypotheses() {
        for n in 0..=3 {
            for d in all_dms(n) {
                assert_eq!(check_profile_hypothesis(&d).unwrap(), None);
                if n <= 2 && d.is_vf_safe().unwrap() {
                    assert_eq!(
                        check_profile_hypothesis(&PenroseDm(d.clone())).unwrap(),
                        None,
                        "{d:?}"
                    );
                    assert_eq!(
                        check_profile_hypothesis(&PenroseHat(d.clone())).unwrap(),
                        None,
                        "{d:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniformity_witness() {
        use crate::minor_system::{check_uniform, Uniformity};
        let d = dm(2, &[&[], &[0], &[0, 1]]);
        let free = Selector::new(vec![v("a1"), v("a2"), v("a3")]);
        assert!(matches!(
            check_uniform(&d, &free).unwrap(),
            Uniformity::Witness { .. }
        ));
        let tied = Selector::generic::<DeltaMatroid>("a");
        assert_eq!(check_uniform(&d, &tied).unwrap(), Uniformity::Uniform);
    }

    #[test]
    fn penrose_small() {
        assert_eq!(DeltaMatroid::unit().penrose().unwrap(), c(1));
        assert!(d_c().penrose().unwrap().is_zero());
        assert_eq!(d_o().penrose().unwrap(), v("lam") - c(1));
        let lam = BigRational::from_integer(3.into());
        assert!(d_c().penrose_eval(&lam).unwrap().is_zero());
    }

    #[test]
    fn penrose_exponent_matches_complement_rank() {
        for n in 0..=2 {
            for d in all_dms(n).into_iter().filter(|d| d.is_vf_safe().unwrap()) {
                let mut alt = Polynomial::zero();
                for a in 0..=full_mask(n) {
                    let s = if popcount(a) % 2 == 0 { 1 } else { -1 };
                    alt.add_term(
                        BigInt::from(s),
                        Monomial::new(&[("lam", n as i64 - d.r_max_complemented(a))]),
                    );
                }
                assert_eq!(d.penrose().unwrap(), alt);
            }
        }
    }

    #[test]
    fn penrose_specialization() {
        for n in 0..=2 {
            for d in all_dms(n).into_iter().filter(|d| d.is_vf_safe().unwrap()) {
                let (l, r) = d.penrose_specialization_sides().unwrap();
                assert_eq!(l, r, "{d:?}");
            }
        }
    }

    #[test]
    fn vf_safety() {
        assert!(d_n().is_vf_safe().unwrap());
        assert!(dm(2, &[&[], &[0], &[0, 1]]).is_vf_safe().unwrap());
    }
}
