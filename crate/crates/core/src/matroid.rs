//! Matroids as full rank tables, matroid perspectives, and their Tutte
//! polynomials.

use crate::bits::{insert_zero, popcount};
use crate::error::{check_cap, Error, Result};
use crate::minor_system::{full_mask, DirectSum, Dual, MinorSystem, SystemTag, DEFAULT_CAP};
use crate::poly::{c, v, Monomial, Polynomial};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    ranks: Vec<u8>,
}

impl Matroid {
    /// Validates the rank axioms over every subset.
    pub fn new(n: usize, ranks: Vec<u8>) -> Result<Self> {
        check_cap(n, DEFAULT_CAP)?;
        if ranks.len() != 1 << n {
            return Err(Error::NotAMatroid(format!(
                "expected {} ranks, got {}",
                1usize << n,
                ranks.len()
            )));
        }
        if ranks[0] != 0 {
            return Err(Error::NotAMatroid("r(∅) ≠ 0".into()));
        }
        for a in 0..ranks.len() {
            for e in 0..n {
                if a >> e & 1 == 1 {
                    continue;
                }
                let ae = a | 1 << e;
                let d = ranks[ae] as i32 - ranks[a] as i32;
                if d != 0 && d != 1 {
                    return Err(Error::NotAMatroid(format!("r({ae:#b}) − r({a:#b}) = {d}")));
                }
                for f in e + 1..n {
                    if a >> f & 1 == 1 {
                        continue;
                    }
                    let af = a | 1 << f;
                    if ranks[a] == ranks[ae]
                        && ranks[a] == ranks[af]
                        && ranks[af | 1 << e] != ranks[a]
                    {
                        return Err(Error::NotAMatroid(format!(
                            "local exchange fails at {a:#b}, {e}, {f}"
                        )));
                    }
                }
            }
        }
        Ok(Matroid { n, ranks })
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::NotAMatroid(format!("U_{{{k},{n}}} needs k ≤ n")));
        }
        check_cap(n, DEFAULT_CAP)?;
        Matroid::new(
            n,
            (0..1u32 << n)
                .map(|a| (a.count_ones() as usize).min(k) as u8)
                .collect(),
        )
    }

    /// Built from any rank oracle; still validated.
    pub fn from_rank_fn(n: usize, r: impl Fn(u32) -> usize) -> Result<Self> {
        check_cap(n, DEFAULT_CAP)?;
        Matroid::new(n, (0..1u32 << n).map(|a| r(a) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self, a: u32) -> i64 {
        self.ranks[a as usize] as i64
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.ranks
    }

    pub fn full_rank(&self) -> i64 {
        self.rank(full_mask(self.n))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let all = full_mask(self.n);
        self.rank(all) - self.rank(all & !(1 << e)) == 1
    }

    pub fn delete_element(&self, e: usize) -> Matroid {
        let ranks = (0..1u32 << (self.n - 1))
            .map(|b| self.ranks[insert_zero(b, e) as usize])
            .collect();
        Matroid {
            n: self.n - 1,
            ranks,
        }
    }

    pub fn contract_element(&self, e: usize) -> Matroid {
        let re = self.ranks[1 << e];
        let ranks = (0..1u32 << (self.n - 1))
            .map(|b| self.ranks[(insert_zero(b, e) | 1 << e) as usize] - re)
            .collect();
        Matroid {
            n: self.n - 1,
            ranks,
        }
    }

    /// `M ∖ del / con`.
    pub fn minor(&self, del: u32, con: u32) -> Result<Matroid> {
        if del & con != 0 {
            return Err(Error::OverlappingSets);
        }
        let mut m = self.clone();
        for e in (0..self.n).rev() {
            if del >> e & 1 == 1 {
                m = m.delete_element(e);
            } else if con >> e & 1 == 1 {
                m = m.contract_element(e);
            }
        }
        Matroid::new(m.n, m.ranks)
    }

    pub fn dual(&self) -> Matroid {
        let all = full_mask(self.n);
        let r = self.full_rank();
        let ranks = (0..=all)
            .map(|a| (popcount(a) + self.rank(all & !a) - r) as u8)
            .collect();
        Matroid { n: self.n, ranks }
    }

    /// `T_M = Σ (x−1)^{r(E)−r(A)} (y−1)^{|A|−r(A)}`.
    pub fn tutte(&self) -> Polynomial {
        let x1 = v("x") - c(1);
        let y1 = v("y") - c(1);
        shifted_sum(
            self,
            |a| (self.full_rank() - self.rank(a), popcount(a) - self.rank(a)),
            &x1,
            &y1,
        )
    }
}

/// `Σ_A X^{f(A)} Y^{g(A)}`, collecting exponent pairs before expanding.
fn shifted_sum(
    m: &Matroid,
    exps: impl Fn(u32) -> (i64, i64),
    x: &Polynomial,
    y: &Polynomial,
) -> Polynomial {
    let mut counts = std::collections::BTreeMap::<(i64, i64), i64>::new();
    for a in 0..=full_mask(m.n) {
        *counts.entry(exps(a)).or_insert(0) += 1;
    }
    let mut out = Polynomial::zero();
    for ((i, j), k) in counts {
        out += &(&(&x.pow(i as u32) * &y.pow(j as u32)) * &c(k));
    }
    out
}

impl MinorSystem for Matroid {
    const TAG: SystemTag = SystemTag::Matroid;

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
        &["coloop", "loop"]
    }

    fn classify(&self) -> Result<usize> {
        if self.n != 1 {
            return Err(Error::WrongGrade { size: self.n });
        }
        Ok(if self.rank(1) == 1 { 0 } else { 1 })
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0], vec![0, 2]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        let r = self.full_rank();
        Ok(vec![2 * r, 2 * (self.n as i64 - r)])
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let r = self.rank(mask);
        Ok(vec![2 * r, 2 * (popcount(mask) - r)])
    }
}

impl DirectSum for Matroid {
    fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let lo = full_mask(self.n);
        let ranks = (0..1u32 << n)
            .map(|a| self.ranks[(a & lo) as usize] + other.ranks[(a >> self.n) as usize])
            .collect();
        Matroid { n, ranks }
    }
}

impl Dual for Matroid {
    fn dual(&self) -> Result<Self> {
        Ok(Matroid::dual(self))
    }

    fn dual_class(i: usize) -> usize {
        1 - i
    }
}

/// A pair `M → M'` on one ground set with `r(B)−r(A) ≥ r'(B)−r'(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatroidPerspective {
    front: Matroid,
    back: Matroid,
}

impl MatroidPerspective {
    /// Checks the domination condition on every covering pair `A ⊂ A+e`,
    /// which telescopes to every nested pair.
    pub fn new(front: Matroid, back: Matroid) -> Result<Self> {
        if front.n != back.n {
            return Err(Error::NotAPerspective("ground sets differ".into()));
        }
        for a in 0..=full_mask(front.n) {
            for e in 0..front.n {
                if a >> e & 1 == 0 {
                    let b = a | 1 << e;
                    if front.rank(b) - front.rank(a) < back.rank(b) - back.rank(a) {
                        return Err(Error::NotAPerspective(format!("fails at {a:#b} + {e}")));
                    }
                }
            }
        }
        Ok(MatroidPerspective { front, back })
    }

    pub fn identity(m: Matroid) -> Self {
        MatroidPerspective {
            front: m.clone(),
            back: m,
        }
    }

    pub fn front(&self) -> &Matroid {
        &self.front
    }

    pub fn back(&self) -> &Matroid {
        &self.back
    }

    pub fn len(&self) -> usize {
        self.front.n
    }

    pub fn is_empty(&self) -> bool {
        self.front.n == 0
    }

    /// `(M → M')* = M'* → M*`.
    pub fn dual(&self) -> MatroidPerspective {
        MatroidPerspective {
            front: self.back.dual(),
            back: self.front.dual(),
        }
    }

    /// `T_{M→M'}(x, y, z)` by subset expansion.
    pub fn lv_tutte(&self) -> Polynomial {
        let (m, mp) = (&self.front, &self.back);
        let all = full_mask(m.n);
        let (r, rp) = (m.full_rank(), mp.full_rank());
        let mut counts = std::collections::BTreeMap::<(i64, i64, i64), i64>::new();
        for a in 0..=all {
            let key = (
                rp - mp.rank(a),
                popcount(a) - m.rank(a),
                (r - m.rank(a)) - (rp - mp.rank(a)),
            );
            *counts.entry(key).or_insert(0) += 1;
        }
        let x1 = v("x") - c(1);
        let y1 = v("y") - c(1);
        let mut out = Polynomial::zero();
        for ((i, j, k), cnt) in counts {
            let t = &(&x1.pow(i as u32) * &y1.pow(j as u32))
                * &Polynomial::term(BigInt::from(cnt), Monomial::new(&[("z", k)]));
            out += &t;
        }
        out
    }
}

impl MinorSystem for MatroidPerspective {
    const TAG: SystemTag = SystemTag::Perspective;

    fn size(&self) -> usize {
        self.front.n
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(MatroidPerspective {
            front: self.front.delete_element(e),
            back: self.back.delete_element(e),
        })
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(MatroidPerspective {
            front: self.front.contract_element(e),
            back: self.back.contract_element(e),
        })
    }

    fn class_labels() -> &'static [&'static str] {
        &["coloop-coloop", "loop-loop", "coloop-loop"]
    }

    fn classify(&self) -> Result<usize> {
        if self.front.n != 1 {
            return Err(Error::WrongGrade { size: self.front.n });
        }
        Ok(match (self.front.rank(1), self.back.rank(1)) {
            (1, 1) => 0,
            (0, 0) => 1,
            _ => 2,
        })
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        self.restricted_ranks(full_mask(self.front.n))
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let (r, rp) = (self.front.rank(mask), self.back.rank(mask));
        Ok(vec![2 * rp, 2 * (popcount(mask) - r), 2 * (r - rp)])
    }
}

impl Dual for MatroidPerspective {
    fn dual(&self) -> Result<Self> {
        Ok(MatroidPerspective::dual(self))
    }

    fn dual_class(i: usize) -> usize {
        [1, 0, 2][i]
    }
}

/// Selector pair giving `T_M = α(1, y−1, x−1, 1)`.
pub fn tutte_selectors() -> (crate::minor_system::Selector, crate::minor_system::Selector) {
    use crate::minor_system::Selector;
    (
        Selector::new(vec![c(1), v("y") - c(1)]),
        Selector::new(vec![v("x") - c(1), c(1)]),
    )
}

/// Selector pair giving `T_{M→M'} = α((1, y−1, 1), (x−1, 1, z))`.
pub fn lv_selectors() -> (crate::minor_system::Selector, crate::minor_system::Selector) {
    use crate::minor_system::Selector;
    (
        Selector::new(vec![c(1), v("y") - c(1), c(1)]),
        Selector::new(vec![v("x") - c(1), c(1), v("z")]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor_system::{alpha, Engine};

    #[test]
    fn uniform_contract_and_dual() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.contract_element(0), Matroid::uniform(1, 2).unwrap());
        assert_eq!(u23.dual(), Matroid::uniform(1, 3).unwrap());
        assert_eq!(
            Matroid::uniform(1, 1).unwrap().dual(),
            Matroid::uniform(0, 1).unwrap()
        );
        assert_eq!(u23.dual().dual(), u23);
    }

    #[test]
    fn loop_contraction_is_deletion() {
        let m = Matroid::uniform(1, 2)
            .unwrap()
            .direct_sum(&Matroid::uniform(0, 1).unwrap());
        assert_eq!(m.contract_element(2), m.delete_element(2));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Matroid::new(1, vec![0, 2]).is_err());
        assert!(Matroid::new(1, vec![1, 1]).is_err());
        // r({0})=r({1})=r(∅)=0 but r({0,1})=1
        assert!(Matroid::new(2, vec![0, 0, 0, 1]).is_err());
        assert!(Matroid::uniform(1, 1).unwrap().minor(1, 1).is_err());
    }

    #[test]
    fn small_tutte() {
        assert_eq!(Matroid::uniform(0, 0).unwrap().tutte(), c(1));
        assert_eq!(Matroid::uniform(1, 1).unwrap().tutte(), v("x"));
        assert_eq!(Matroid::uniform(0, 1).unwrap().tutte(), v("y"));
        assert_eq!(
            Matroid::uniform(2, 3).unwrap().tutte().to_string(),
            "x^2 + x + y"
        );
    }

    #[test]
    fn u12_alpha_is_x_plus_y() {
        let (a, b) = tutte_selectors();
        let m = Matroid::uniform(1, 2).unwrap();
        for e in [Engine::Bruteforce, Engine::Delcon] {
            assert_eq!(alpha(&m, &a, &b, e).unwrap(), v("x") + v("y"));
        }
    }

    #[test]
    fn lv_two_term_example() {
        let p = MatroidPerspective::new(
            Matroid::uniform(1, 1).unwrap(),
            Matroid::uniform(0, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(p.lv_tutte(), v("z") + c(1));
        assert!(MatroidPerspective::new(
            Matroid::uniform(0, 1).unwrap(),
            Matroid::uniform(1, 1).unwrap()
        )
        .is_err());
    }
}
