//! Verification suites over an enumerated corpus, input records for the
//! command line, and structured reports.
//!
//! Every identity is checked by computing both sides exactly and comparing
//! them as polynomials; a mismatch is recorded with both rendered sides.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::popcount;
use crate::delta_matroid::{
    br2_selectors, reduce_sqrt_xy, sqrt_specialize_three_variable, swap_xy, DeltaMatroid, Gaussian,
    LoopKind, PenroseDm, PenroseHat, SX, SY,
};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexPartition};
use crate::lasvergnas::{
    lv_dual_side, lv_krushkal_sides, lv_of_ribbon, lv_projection, EmbeddedPerspective,
};
use crate::matroid::{lv_selectors, tutte_selectors, Matroid, MatroidPerspective};
use crate::minor_system::{
    alpha, alpha_delcon, alpha_delcon_with, check_uniform, contract_set, convolution_sides,
    full_mask, restrict, sqrt_constraints, universality_sides, DirectSum, Dual, Engine,
    MinorSystem, Selector, Uniformity,
};
use crate::poly::{c, parse_rational, v, Monomial, Polynomial, TermRecord};
use crate::ribbon::{
    br2_via_partitioned, br3_via_krushkal, enumerate_rotation_systems, krushkal_tilde_via_k, named,
    partitioned_br, CellularGraph, PartitionedRibbon, RibbonGraph,
};

/// Largest `max_elements` the suites accept.
pub const MAX_ELEMENTS_CAP: usize = 6;

/// Ribbon graphs are enumerated up to this many vertices and edges.
pub const RIBBON_ENUM_VERTICES: usize = 2;
pub const RIBBON_ENUM_EDGES: usize = 3;

/// Seeded random ribbon graphs fill in sizes the enumeration does not reach.
pub const RIBBON_SAMPLE_SEED: u64 = 0x5eed;
pub const RIBBON_SAMPLES_PER_SIZE: usize = 40;

/// Delta-matroids are enumerated exhaustively up to this size.
pub const DM_ENUM_ELEMENTS: usize = 3;

pub const SUITES: [&str; 12] = [
    "anchors",
    "engines",
    "specialization",
    "duality",
    "convolution",
    "morphisms",
    "universality",
    "penrose",
    "ribbon-square",
    "krushkal",
    "uniformity",
    "nine-case",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub object: String,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

/// Rendering of a checked value inside a report.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for Polynomial {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for Gaussian {
    fn render(&self) -> String {
        format!("({}) + i·({})", self.re, self.im)
    }
}

impl Render for BigRational {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for i64 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for bool {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for DeltaMatroid {
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, object: &str, identity: &str, lhs: String, rhs: String) {
        self.failures.push(Failure {
            object: object.to_string(),
            identity: identity.to_string(),
            lhs,
            rhs,
        });
    }

    /// Records one case comparing two computed sides; an error on either
    /// side counts as a failure.
    pub fn check<T: PartialEq + Render>(
        &mut self,
        object: &str,
        identity: &str,
        lhs: Result<T>,
        rhs: Result<T>,
    ) {
        self.cases += 1;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => self.fail(object, identity, l.render(), r.render()),
            (l, r) => {
                let show = |x: Result<T>| x.map_or_else(|e| format!("error: {e}"), |v| v.render());
                self.fail(object, identity, show(l), show(r));
            }
        }
    }

    /// Records one case that must hold.
    pub fn check_true(&mut self, object: &str, identity: &str, ok: Result<bool>) {
        self.check(object, identity, ok, Ok(true));
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per failure plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&format!(
                "FAIL {} [{}]: {} ≠ {}\n",
                f.object, f.identity, f.lhs, f.rhs
            ));
        }
        out.push_str(&format!(
            "suite {}: {} cases, {} failures\n",
            self.suite,
            self.cases,
            self.failures.len()
        ));
        out
    }
}

/// Pushes `(id, item)` unless an equal item is already present.
fn push_unique<T: Clone + Eq + Hash>(
    out: &mut Vec<(String, T)>,
    seen: &mut HashSet<T>,
    id: String,
    item: T,
) {
    if seen.insert(item.clone()) {
        out.push((id, item));
    }
}

/// Every delta-matroid on `n` elements, in order of the bitmask of the family.
pub fn all_delta_matroids(n: usize) -> Vec<DeltaMatroid> {
    let subsets = 1u32 << n;
    (1u64..1u64 << subsets)
        .filter_map(|fam| {
            let f: Vec<u32> = (0..subsets).filter(|s| fam >> s & 1 == 1).collect();
            DeltaMatroid::new(n, f).ok()
        })
        .collect()
}

/// Signed rotation systems with at most `vertices` vertices and `edges`
/// edges, one per canonical class, in enumeration order.
pub fn ribbon_enumeration(vertices: usize, edges: usize) -> Vec<RibbonGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for nv in 1..=vertices {
        for ne in 0..=edges {
            for g in enumerate_rotation_systems(nv, ne) {
                let canon = g.canonical();
                if seen.insert(canon.clone()) {
                    out.push(canon);
                }
            }
        }
    }
    out
}

/// `count` random ribbon graphs with `edges` edges on one to three
/// vertices, reproducible from `seed`.
pub fn random_ribbons(seed: u64, edges: usize, count: usize) -> Vec<RibbonGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ edges as u64);
    (0..count)
        .map(|_| {
            let nv = rng.random_range(1..=3);
            let mut rot = vec![Vec::new(); nv];
            for h in 0..2 * edges {
                rot[rng.random_range(0..nv)].push(h);
            }
            for cyc in &mut rot {
                cyc.shuffle(&mut rng);
            }
            let sign = (0..edges).map(|_| rng.random_bool(0.5)).collect();
            RibbonGraph::from_rotations(rot, sign)
                .expect("valid rotation system")
                .canonical()
        })
        .collect()
}

fn named_graphs() -> Vec<(&'static str, Multigraph)> {
    let g = |v: usize, e: &[(usize, usize)]| Multigraph::new(v, e.to_vec()).expect("named graph");
    vec![
        ("triangle", g(3, &[(0, 1), (1, 2), (2, 0)])),
        ("square", g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("theta", g(2, &[(0, 1), (0, 1), (0, 1)])),
        (
            "triangle-with-loop",
            g(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]),
        ),
        ("diamond", g(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)])),
        (
            "k4",
            g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]),
        ),
    ]
}

/// The enumerated objects every suite runs over.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub max_elements: usize,
    pub matroids: Vec<(String, Matroid)>,
    pub perspectives: Vec<(String, MatroidPerspective)>,
    pub graphs: Vec<(String, Multigraph)>,
    pub delta_matroids: Vec<(String, DeltaMatroid)>,
    pub ribbons: Vec<(String, RibbonGraph)>,
}

impl Corpus {
    pub fn build(max_elements: usize) -> Result<Corpus> {
        if max_elements > MAX_ELEMENTS_CAP {
            return Err(Error::CapExceeded {
                size: max_elements,
                cap: MAX_ELEMENTS_CAP,
            });
        }
        let n_max = max_elements;

        let mut ribbons = Vec::new();
        let mut seen = HashSet::new();
        for (i, g) in ribbon_enumeration(RIBBON_ENUM_VERTICES, RIBBON_ENUM_EDGES.min(n_max))
            .into_iter()
            .enumerate()
        {
            push_unique(&mut ribbons, &mut seen, format!("ribbon:enum-{i}"), g);
        }
        for e in RIBBON_ENUM_EDGES + 1..=n_max.min(5) {
            for (i, g) in random_ribbons(RIBBON_SAMPLE_SEED, e, RIBBON_SAMPLES_PER_SIZE)
                .into_iter()
                .enumerate()
            {
                push_unique(
                    &mut ribbons,
                    &mut seen,
                    format!("ribbon:random-e{e}-{i}"),
                    g,
                );
            }
        }
        for (name, g) in named::all() {
            if g.edge_count() <= n_max {
                push_unique(
                    &mut ribbons,
                    &mut seen,
                    format!("ribbon:{name}"),
                    g.canonical(),
                );
            }
        }

        let mut graphs = Vec::new();
        let mut seen = HashSet::new();
        for (name, g) in named_graphs() {
            if g.edge_count() <= n_max {
                push_unique(&mut graphs, &mut seen, format!("graph:{name}"), g);
            }
        }
        for (id, g) in &ribbons {
            push_unique(
                &mut graphs,
                &mut seen,
                format!("graph:underlying({id})"),
                g.underlying_graph(),
            );
        }

        let mut matroids = Vec::new();
        let mut seen = HashSet::new();
        let uniforms: Vec<(usize, usize, Matroid)> = (0..=n_max)
            .flat_map(|n| (0..=n).map(move |k| (k, n)))
            .map(|(k, n)| (k, n, Matroid::uniform(k, n).expect("uniform")))
            .collect();
        for (k, n, m) in &uniforms {
            push_unique(
                &mut matroids,
                &mut seen,
                format!("matroid:U{k},{n}"),
                m.clone(),
            );
        }
        for (k1, n1, m1) in &uniforms {
            for (k2, n2, m2) in &uniforms {
                if *n1 >= 1 && *n2 >= 1 && n1 + n2 <= n_max {
                    push_unique(
                        &mut matroids,
                        &mut seen,
                        format!("matroid:U{k1},{n1}+U{k2},{n2}"),
                        m1.direct_sum(m2),
                    );
                }
            }
        }
        for (id, g) in &graphs {
            push_unique(
                &mut matroids,
                &mut seen,
                format!("matroid:cycle({id})"),
                g.cycle_matroid()?,
            );
        }

        let mut perspectives = Vec::new();
        let mut seen = HashSet::new();
        for (id, m) in &matroids {
            push_unique(
                &mut perspectives,
                &mut seen,
                format!("perspective:id({id})"),
                MatroidPerspective::identity(m.clone()),
            );
            let zero = Matroid::uniform(0, m.len())?;
            push_unique(
                &mut perspectives,
                &mut seen,
                format!("perspective:{id}->U0"),
                MatroidPerspective::new(m.clone(), zero)?,
            );
            if !m.is_empty() {
                let e = m.len() - 1;
                let p = MatroidPerspective::new(m.delete_element(e), m.contract_element(e))?;
                push_unique(
                    &mut perspectives,
                    &mut seen,
                    format!("perspective:quotient({id},{e})"),
                    p,
                );
            }
        }
        for (id, g) in &ribbons {
            push_unique(
                &mut perspectives,
                &mut seen,
                format!("perspective:lv({id})"),
                EmbeddedPerspective::new(g)?.perspective,
            );
        }

        let mut delta_matroids = Vec::new();
        let mut seen = HashSet::new();
        for n in 0..=DM_ENUM_ELEMENTS.min(n_max) {
            for (i, d) in all_delta_matroids(n).into_iter().enumerate() {
                push_unique(&mut delta_matroids, &mut seen, format!("dm:n{n}-{i}"), d);
            }
        }
        for (id, g) in &ribbons {
            push_unique(
                &mut delta_matroids,
                &mut seen,
                format!("dm:D({id})"),
                g.delta_matroid()?,
            );
        }
        for (id, m) in &matroids {
            push_unique(
                &mut delta_matroids,
                &mut seen,
                format!("dm:bases({id})"),
                DeltaMatroid::from_matroid(m),
            );
        }

        Ok(Corpus {
            max_elements,
            matroids,
            perspectives,
            graphs,
            delta_matroids,
            ribbons,
        })
    }

    /// Delta-matroids on which the Penrose systems are defined (vf-safe,
    /// small enough for the exhaustive safety check).
    pub fn vf_safe_delta_matroids(&self) -> Vec<(String, DeltaMatroid)> {
        self.delta_matroids
            .iter()
            .filter(|(_, d)| d.len() <= 4 && d.is_vf_safe().unwrap_or(false))
            .cloned()
            .collect()
    }

    fn partitioned(&self) -> Vec<(String, PartitionedRibbon)> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (id, g) in &self.ribbons {
            for (pname, p) in partitions_of(g) {
                let pr = PartitionedRibbon::new(g.clone(), p).expect("partition fits");
                push_unique(&mut out, &mut seen, format!("{id}/{pname}"), pr);
            }
        }
        out
    }

    fn cellular(&self) -> Vec<(String, CellularGraph)> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (id, g) in &self.ribbons {
            for (pname, p) in partitions_of(g) {
                let cg = CellularGraph::cellular(g.clone(), p).expect("partition fits");
                push_unique(&mut out, &mut seen, format!("{id}/{pname}"), cg);
            }
        }
        out
    }
}

fn partitions_of(g: &RibbonGraph) -> Vec<(&'static str, VertexPartition)> {
    let nv = g.vertex_count();
    vec![
        ("singletons", VertexPartition::singletons(nv)),
        ("one-block", VertexPartition::one_block(nv)),
    ]
}

fn small<T: MinorSystem>(items: &[(String, T)], max: usize) -> impl Iterator<Item = &(String, T)> {
    items.iter().filter(move |(_, s)| s.size() <= max)
}

/// Runs a named suite, or every suite for `all`.
pub fn run_suite(name: &str, max_elements: usize) -> Result<SuiteReport> {
    if name != "all" && !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let corpus = Corpus::build(max_elements)?;
    if name == "all" {
        let mut report = SuiteReport::new("all");
        for s in SUITES {
            report.merge(run_suite_on(s, &corpus)?);
        }
        return Ok(report);
    }
    run_suite_on(name, &corpus)
}

pub fn run_suite_on(name: &str, corpus: &Corpus) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name);
    match name {
        "anchors" => anchors(&mut r),
        "engines" => engines(&mut r, corpus),
        "specialization" => specialization(&mut r, corpus),
        "duality" => duality(&mut r, corpus),
        "convolution" => convolution(&mut r, corpus),
        "morphisms" => {
            specialization(&mut r, corpus);
            morphisms(&mut r, corpus);
        }
        "universality" => universality(&mut r, corpus),
        "penrose" => penrose(&mut r, corpus),
        "ribbon-square" => ribbon_square(&mut r, corpus),
        "krushkal" => krushkal(&mut r, corpus),
        "uniformity" => uniformity(&mut r, corpus),
        "nine-case" => nine_case(&mut r, corpus),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    Ok(r)
}

fn sel(coeffs: Vec<Polynomial>) -> Selector {
    Selector::new(coeffs)
}

/// `√(p q)` for monomials `p`, `q`, as a monomial with doubled exponents.
fn sqrt_mono(pairs: &[(&str, i64)]) -> Polynomial {
    Polynomial::term(BigInt::one(), Monomial::from_doubled(pairs))
}

// ---------------------------------------------------------------- anchors

/// Proper edge colourings with `k` colours, by exhaustive assignment.
pub fn proper_edge_colourings(g: &Multigraph, k: usize) -> u64 {
    let e = g.edge_count();
    let edges = g.edges();
    if edges.iter().any(|(a, b)| a == b) {
        return 0;
    }
    let mut count = 0;
    let mut colour = vec![0usize; e];
    'outer: loop {
        let ok = (0..e).all(|i| {
            (i + 1..e).all(|j| {
                let (a, b) = edges[i];
                let (p, q) = edges[j];
                colour[i] != colour[j] || !(a == p || a == q || b == p || b == q)
            })
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == e {
                break 'outer;
            }
            colour[i] += 1;
            if colour[i] < k {
                break;
            }
            colour[i] = 0;
            i += 1;
        }
    }
    count
}

fn anchors(r: &mut SuiteReport) {
    let triangle = &named_graphs()[0].1;
    let t = v("x").pow(2) + v("x") + v("y");
    r.check(
        "graph:triangle",
        "T = x² + x + y",
        triangle.tutte(),
        Ok(t.clone()),
    );
    r.check(
        "matroid:cycle(triangle)",
        "T = x² + x + y",
        triangle.cycle_matroid().map(|m| m.tutte()),
        Ok(t),
    );
    r.check(
        "matroid:U1,1",
        "T = x",
        Matroid::uniform(1, 1).map(|m| m.tutte()),
        Ok(v("x")),
    );
    r.check(
        "matroid:U0,1",
        "T = y",
        Matroid::uniform(0, 1).map(|m| m.tutte()),
        Ok(v("y")),
    );
    let (a, b) = (sel(vec![v("x1"), v("x2")]), sel(vec![v("y1"), v("y2")]));
    let expected = Polynomial::from_terms(&[
        (1, &[("y1", 4), ("y2", 2)]),
        (3, &[("x1", 2), ("y1", 2), ("y2", 2)]),
        (3, &[("x1", 4), ("y2", 2)]),
        (1, &[("x1", 4), ("x2", 2)]),
    ]);
    for e in Engine::ALL {
        let got = if e == Engine::Statesum {
            alpha(
                triangle,
                &Selector::generic::<Multigraph>("x"),
                &Selector::generic::<Multigraph>("y"),
                e,
            )
        } else {
            alpha(triangle, &a, &b, e)
        };
        r.check(
            "graph:triangle",
            &format!("α(x, y) by {e:?}"),
            got,
            Ok(expected.clone()),
        );
    }
    let (ta, tb) = tutte_selectors();
    for e in [Engine::Bruteforce, Engine::Delcon] {
        let m = Matroid::uniform(1, 2).expect("uniform");
        r.check(
            "matroid:U1,2",
            &format!("α(1, y−1; x−1, 1) by {e:?}"),
            alpha(&m, &ta, &tb, e),
            Ok(v("x") + v("y")),
        );
    }
}

// ---------------------------------------------------------------- engines

fn engine_agreement<M: MinorSystem>(
    r: &mut SuiteReport,
    kind: &str,
    items: &[(String, M)],
    max: usize,
) {
    let a = Selector::generic::<M>("x");
    let b = Selector::generic::<M>("y");
    for (id, s) in small(items, max) {
        let reference = alpha(s, &a, &b, Engine::Delcon);
        for e in [Engine::Bruteforce, Engine::Statesum] {
            r.check(
                id,
                &format!("{kind}: {e:?} = Delcon"),
                alpha(s, &a, &b, e),
                reference.clone(),
            );
        }
        let last = alpha_delcon_with(s, &a, &b, &|t: &M| t.size() - 1);
        r.check(
            id,
            &format!("{kind}: Delcon order independence"),
            last,
            reference,
        );
    }
}

fn engines(r: &mut SuiteReport, corpus: &Corpus) {
    let max = corpus.max_elements.min(5);
    engine_agreement(r, "matroid", &corpus.matroids, max);
    engine_agreement(r, "perspective", &corpus.perspectives, max);
    engine_agreement(r, "graph", &corpus.graphs, max);
    engine_agreement(r, "delta-matroid", &corpus.delta_matroids, max);
    let safe = corpus.vf_safe_delta_matroids();
    let pd: Vec<(String, PenroseDm)> = safe
        .iter()
        .map(|(id, d)| (id.clone(), PenroseDm(d.clone())))
        .collect();
    engine_agreement(r, "penrose", &pd, max);
    let ph: Vec<(String, PenroseHat)> = safe
        .iter()
        .map(|(id, d)| (id.clone(), PenroseHat(d.clone())))
        .collect();
    engine_agreement(r, "penrose-hat", &ph, max);
    engine_agreement(r, "ribbon", &corpus.ribbons, max);
    engine_agreement(r, "partitioned-ribbon", &corpus.partitioned(), max);
    engine_agreement(r, "cellular", &corpus.cellular(), max);
}

// ---------------------------------------------------------------- specialization

fn specialization(r: &mut SuiteReport, corpus: &Corpus) {
    for (id, m) in &corpus.matroids {
        r.check(
            id,
            "T_M = T_{M→M}",
            Ok(m.tutte()),
            Ok(MatroidPerspective::identity(m.clone()).lv_tutte()),
        );
    }
    for (id, p) in &corpus.perspectives {
        let l = p.lv_tutte();
        let (front, back) = (p.front(), p.back());
        r.check(
            id,
            "T_M = T_{M→M'}(x, y, x−1)",
            l.subs(&[("z", v("x") - c(1))]),
            Ok(front.tutte()),
        );
        let k = front.full_rank() - back.full_rank();
        r.check(
            id,
            "T_{M'} = (y−1)^{r−r'} T_{M→M'}(x, y, 1/(y−1))",
            l.homogenize("z", k, &(v("y") - c(1))),
            Ok(back.tutte()),
        );
    }
}

// ---------------------------------------------------------------- duality

fn generic_duality<M: Dual>(r: &mut SuiteReport, kind: &str, items: &[(String, M)], max: usize) {
    let a = Selector::generic::<M>("x");
    let b = Selector::generic::<M>("y");
    let (bs, as_) = (b.dual::<M>(), a.dual::<M>());
    for (id, s) in small(items, max) {
        let rhs = s.dual().and_then(|d| alpha_delcon(&d, &bs, &as_));
        r.check(
            id,
            &format!("{kind}: α(a,b)(S) = α(b*,a*)(S*)"),
            alpha_delcon(s, &a, &b),
            rhs,
        );
    }
}

fn duality(r: &mut SuiteReport, corpus: &Corpus) {
    let max = corpus.max_elements;
    for (id, m) in &corpus.matroids {
        r.check(
            id,
            "T_M(x,y) = T_{M*}(y,x)",
            Ok(m.tutte()),
            Ok(swap_xy(&m.dual().tutte())),
        );
    }
    for (id, d) in &corpus.delta_matroids {
        r.check(
            id,
            "R̃_D(x,y) = R̃_{D*}(y,x)",
            d.br2(),
            d.dual().br2().map(|p| swap_xy(&p)),
        );
    }
    for (id, g) in &corpus.ribbons {
        r.check(
            id,
            "R̃_G(x,y) = R̃_{G*}(y,x)",
            g.br2(),
            g.dual().br2().map(|p| swap_xy(&p)),
        );
        r.check(
            id,
            "L_G(x,y,z) = z^{n−κ} L_{G*}(y,x,1/z)",
            lv_of_ribbon(g),
            lv_dual_side(g),
        );
    }
    generic_duality(r, "matroid", &corpus.matroids, max);
    generic_duality(r, "perspective", &corpus.perspectives, max);
    generic_duality(r, "delta-matroid", &corpus.delta_matroids, max);
    generic_duality(r, "ribbon", &corpus.ribbons, max);
}

// ---------------------------------------------------------------- convolution

/// `Σ_A f(S∖A^c) · g(S/A)`.
fn subset_convolution<M: MinorSystem>(
    s: &M,
    f: impl Fn(&M) -> Result<Polynomial>,
    g: impl Fn(&M) -> Result<Polynomial>,
) -> Result<Polynomial> {
    let mut total = Polynomial::zero();
    for mask in 0..=full_mask(s.size()) {
        total += &(&f(&restrict(s, mask)?)? * &g(&contract_set(s, mask)?)?);
    }
    Ok(total)
}

fn check_sides(
    r: &mut SuiteReport,
    id: &str,
    identity: &str,
    sides: Result<(Polynomial, Polynomial)>,
) {
    match sides {
        Ok((l, rr)) => r.check(id, identity, Ok(l), Ok(rr)),
        Err(e) => r.check::<Polynomial>(id, identity, Err(e), Ok(Polynomial::zero())),
    }
}

/// Selectors `(a, b, c)` for the Krushkal convolution in `K̃(x, y, a, ab²)` form.
pub fn krushkal_convolution_selectors() -> (Selector, Selector, Selector) {
    let ab = Polynomial::var("a") * Polynomial::var("b");
    let ab2 = &ab * &Polynomial::var("b");
    (
        sel(vec![c(1), v("y"), v("a"), ab, ab2]),
        sel(vec![v("x"), c(1), c(1), c(1), c(1)]),
        sel(vec![c(-1), c(1), c(1), c(1), c(1)]),
    )
}

/// Selectors `(a, b)` with `α = K̃(x, y, a, b)`.
pub fn krushkal_selectors() -> (Selector, Selector) {
    (
        sel(vec![
            c(1),
            v("y"),
            v("a"),
            sqrt_mono(&[("a", 1), ("b", 1)]),
            v("b"),
        ]),
        sel(vec![v("x"), c(1), c(1), c(1), c(1)]),
    )
}

/// Selectors `(a, b)` with `α = R_{(G,P)}(x, y, z)`.
pub fn partitioned_br_selectors() -> (Selector, Selector) {
    let yz = v("y") * v("z");
    let yz2 = &yz * &v("z");
    (
        sel(vec![c(1), v("y"), yz, yz2]),
        sel(vec![v("x") - c(1), c(1), c(1), c(1)]),
    )
}

/// Selectors `(a, b)` with `α = P̃_D` in the square-root variables.
pub fn penrose_selectors() -> (Selector, Selector) {
    (
        sel(vec![v(SY), c(1), v(SY).pow(2)]),
        sel(vec![v(SX), v(SX).pow(2), c(1)]),
    )
}

fn convolution(r: &mut SuiteReport, corpus: &Corpus) {
    let max = corpus.max_elements;
    let (ta, tb) = tutte_selectors();
    let tc = sel(vec![c(-1), c(1)]);
    for (id, m) in small(&corpus.matroids, max) {
        let rhs = subset_convolution(
            m,
            |x| x.tutte().subs(&[("x", c(0))]),
            |y| y.tutte().subs(&[("y", c(0))]),
        );
        r.check(
            id,
            "T_M = Σ T_{M∖A^c}(0,y) T_{M/A}(x,0)",
            Ok(m.tutte()),
            rhs,
        );
        check_sides(
            r,
            id,
            "matroid convolution of α",
            convolution_sides(m, &ta, &tb, &tc),
        );
    }
    let (la, lb) = lv_selectors();
    let lc = sel(vec![c(-1), c(1), c(-1)]);
    for (id, p) in small(&corpus.perspectives, max) {
        let rhs = subset_convolution(
            p,
            |x| x.lv_tutte().subs(&[("x", c(0)), ("z", c(-1))]),
            |y| y.lv_tutte().subs(&[("y", c(0))]),
        );
        r.check(
            id,
            "T_M(x,y,z) = Σ T_{M∖A^c}(0,y,−1) T_{M/A}(x,0,z)",
            Ok(p.lv_tutte()),
            rhs,
        );
        check_sides(
            r,
            id,
            "perspective convolution of α",
            convolution_sides(p, &la, &lb, &lc),
        );
    }
    for (id, d) in small(&corpus.delta_matroids, max).filter(|(_, d)| d.is_even()) {
        let rhs = subset_convolution(
            d,
            |x| x.br2()?.subs(&[("x", c(0))]),
            |y| y.br2()?.subs(&[("y", c(0))]),
        );
        r.check(id, "R̃_D = Σ R̃_{D∖A^c}(0,y) R̃_{D/A}(x,0)", d.br2(), rhs);
    }
    let (pa, pb) = partitioned_br_selectors();
    let pc = sel(vec![c(-1), c(1), c(1), c(1)]);
    for (id, s) in small(&corpus.partitioned(), max) {
        let lhs = partitioned_br(&s.graph, &s.partition);
        let rhs = subset_convolution(
            s,
            |x| partitioned_br(&x.graph, &x.partition)?.subs(&[("x", c(0))]),
            |y| partitioned_br(&y.graph, &y.partition)?.subs(&[("y", c(-1)), ("z", c(1))]),
        );
        r.check(
            id,
            "R_{(G,P)} = Σ R_{∖A^c}(0,y,z) R_{/A}(x,−1,1)",
            lhs.clone(),
            rhs,
        );
        r.check(id, "R_{(G,P)} = α", lhs, alpha_delcon(s, &pa, &pb));
        check_sides(
            r,
            id,
            "partitioned convolution of α",
            convolution_sides(s, &pa, &pb, &pc),
        );
    }
    let (ka, kb, kc) = krushkal_convolution_selectors();
    for (id, s) in small(&corpus.cellular(), max) {
        let lhs = s
            .krushkal_tilde()
            .and_then(|k| k.map_monomial("b", &Monomial::new(&[("a", 1), ("b", 2)])));
        r.check(id, "K̃(x,y,a,ab²) = α", lhs, alpha_delcon(s, &ka, &kb));
        check_sides(
            r,
            id,
            "Krushkal convolution of α",
            convolution_sides(s, &ka, &kb, &kc),
        );
    }
}

// ---------------------------------------------------------------- morphisms

fn morphisms(r: &mut SuiteReport, corpus: &Corpus) {
    let max = corpus.max_elements;
    let (ga, gb) = (
        Selector::generic::<Multigraph>("x"),
        Selector::generic::<Multigraph>("y"),
    );
    for (id, g) in small(&corpus.graphs, max) {
        let m = g.cycle_matroid();
        r.check(
            id,
            "T_G = T_{C(G)}",
            g.tutte(),
            m.as_ref().map(|m| m.tutte()).map_err(Clone::clone),
        );
        let rhs = m.and_then(|m| alpha_delcon(&m, &ga, &gb));
        r.check(id, "α_G = α_{C(G)}", alpha_delcon(g, &ga, &gb), rhs);
    }
    for (id, m) in small(&corpus.matroids, max) {
        r.check(
            id,
            "R̃_{D(M)} = T_M",
            DeltaMatroid::from_matroid(m).br2(),
            Ok(m.tutte()),
        );
    }
    let (ba, bb) = br2_selectors();
    for (id, d) in small(&corpus.delta_matroids, max) {
        let all = full_mask(d.len());
        let three = d
            .br3()
            .and_then(|p| sqrt_specialize_three_variable(&p, d.width(all)));
        r.check(
            id,
            "R̃_D = (x−1)^{w/2} R_D(x, y−1, 1/√((x−1)(y−1)))",
            d.br2(),
            three,
        );
        let via_alpha = alpha_delcon(d, &ba, &bb).and_then(|p| reduce_sqrt_xy(&p));
        r.check(
            id,
            "R̃_D = α(1, y−1, √(y−1); x−1, 1, √(x−1))",
            d.br2(),
            via_alpha,
        );
        r.check(
            id,
            "R̃_D by the nine-case recursion",
            d.br2(),
            d.br2_delcon(),
        );
    }
    for (id, g) in &corpus.ribbons {
        let d = g.delta_matroid();
        r.check(
            id,
            "R̃_G = R̃_{D(G)}",
            g.br2(),
            d.as_ref().map_err(Clone::clone).and_then(|d| d.br2()),
        );
        for (pname, p) in partitions_of(g) {
            r.check(
                id,
                &format!("R̃_G from R_(G,P), {pname}"),
                g.br2(),
                br2_via_partitioned(g, &p),
            );
        }
        r.check(id, "R_G = K̃(x−1, y, yz², y)", g.br3(), br3_via_krushkal(g));
        r.check(
            id,
            "T_G = (y−1)^{n−κ} L_G(x, y, 1/(y−1))",
            lv_projection(g),
            g.underlying_graph().tutte(),
        );
        if g.genus(g.all_edges()) == 0 {
            r.check(
                id,
                "plane: L_G = T_G",
                lv_of_ribbon(g),
                g.underlying_graph().tutte(),
            );
        }
    }
}

// ---------------------------------------------------------------- universality

fn universality_for<M: MinorSystem>(
    r: &mut SuiteReport,
    kind: &str,
    items: &[(String, M)],
    max: usize,
) {
    let k = M::profile_matrix()[0].len();
    let mut splits = Vec::new();
    for code in 0..3usize.pow(k as u32) {
        let (mut jx, mut jy) = (Vec::new(), Vec::new());
        let mut rest = code;
        for j in 0..k {
            match rest % 3 {
                1 => jx.push(j),
                2 => jy.push(j),
                _ => {}
            }
            rest /= 3;
        }
        splits.push((jx, jy));
    }
    for (id, s) in small(items, max) {
        for (jx, jy) in &splits {
            check_sides(
                r,
                id,
                &format!("{kind}: universality J_X={jx:?} J_Y={jy:?}"),
                universality_sides(s, jx, jy),
            );
        }
    }
}

fn universality(r: &mut SuiteReport, corpus: &Corpus) {
    let max = corpus.max_elements.min(4);
    universality_for(r, "matroid", &corpus.matroids, max);
    universality_for(r, "perspective", &corpus.perspectives, max);
    universality_for(r, "delta-matroid", &corpus.delta_matroids, max);
    universality_for(r, "ribbon", &corpus.ribbons, max);
    universality_for(r, "partitioned-ribbon", &corpus.partitioned(), max);
}

// ---------------------------------------------------------------- penrose

fn penrose(r: &mut SuiteReport, corpus: &Corpus) {
    let three = BigRational::from_integer(3.into());
    let at3 = |g: &RibbonGraph| -> Result<BigRational> {
        let point = [("lam".to_string(), three.clone())].into_iter().collect();
        g.penrose()?.eval(&point)
    };
    let theta = named::theta();
    let colourings = proper_edge_colourings(&theta.underlying_graph(), 3) as i64;
    r.check(
        "ribbon:theta",
        "edge 3-colourings of theta = 6",
        Ok(colourings),
        Ok(6),
    );
    r.check(
        "ribbon:theta",
        "P_theta(3) = edge 3-colourings",
        at3(&theta),
        Ok(BigRational::from_integer(colourings.into())),
    );
    for (id, g) in &corpus.ribbons {
        let ug = g.underlying_graph();
        let cubic = (0..g.vertex_count()).all(|x| g.rotations()[x].len() == 3);
        if cubic && g.genus(g.all_edges()) == 0 && g.components(g.all_edges()) == 1 {
            let count = proper_edge_colourings(&ug, 3) as i64;
            r.check(
                id,
                "plane cubic: P_G(3) = edge 3-colourings",
                at3(g),
                Ok(BigRational::from_integer(count.into())),
            );
        }
        let d = g.delta_matroid();
        let lam_c = Monomial::new(&[("lam", g.components(g.all_edges()) as i64)]);
        let rhs = d
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|d| Ok(d.penrose()?.mul_monomial(&lam_c)));
        r.check(id, "P_G(λ) = λ^{c(G)} P_{D(G)}(λ)", g.penrose(), rhs);
        r.check(
            id,
            "P̃_G = P̃_{D(G)}",
            g.penrose2(),
            d.and_then(|d| d.penrose2()),
        );
    }
    let (pa, pb) = penrose_selectors();
    let ga = Selector::generic::<PenroseDm>("x");
    let gb = Selector::generic::<PenroseDm>("y");
    let (ha, hb) = (ga.dual::<DeltaMatroid>(), gb.dual::<DeltaMatroid>());
    for (id, d) in corpus.vf_safe_delta_matroids() {
        match d.penrose_specialization_sides() {
            Ok((l, rr)) => r.check(&id, "P̃_D at √(x−1)=i√λ, √(y−1)=−i√λ", Ok(l), Ok(rr)),
            Err(e) => r.check::<Gaussian>(
                &id,
                "P̃_D specialization",
                Err(e),
                Ok(Gaussian::unit_power(0)),
            ),
        }
        let via_alpha =
            alpha_delcon(&PenroseDm(d.clone()), &pa, &pb).and_then(|p| reduce_sqrt_xy(&p));
        r.check(
            &id,
            "P̃_D = α of the Penrose selectors",
            d.penrose2(),
            via_alpha,
        );
        let hat = alpha_delcon(&PenroseHat(d.clone()), &ha, &hb);
        r.check(
            &id,
            "α̂(â,b̂)(D) = α(a,b)(D*)",
            hat,
            alpha_delcon(&PenroseDm(d.dual()), &ga, &gb),
        );
    }
}

// ---------------------------------------------------------------- ribbon squares

fn ribbon_square(r: &mut SuiteReport, corpus: &Corpus) {
    for (id, g) in &corpus.ribbons {
        let d = match g.delta_matroid() {
            Ok(d) => d,
            Err(e) => {
                r.check::<DeltaMatroid>(id, "D(G)", Err(e), Ok(DeltaMatroid::unit()));
                continue;
            }
        };
        r.check_true(
            id,
            "D(G) satisfies the exchange axiom",
            Ok(DeltaMatroid::new(d.len(), d.feasible().to_vec()).is_ok()),
        );
        r.check(id, "D(G*) = D(G)*", g.dual().delta_matroid(), Ok(d.dual()));
        for e in 0..g.edge_count() {
            r.check(
                id,
                &format!("D(G∖{e}) = D(G)∖{e}"),
                g.delete_edge(e).delta_matroid(),
                Ok(d.delete_element(e)),
            );
            r.check(
                id,
                &format!("D(G/{e}) = D(G)/{e}"),
                g.contract_edge(e).delta_matroid(),
                Ok(d.contract_element(e)),
            );
            r.check(
                id,
                &format!("D(G^τ({e})) = D(G)+{e}"),
                g.petrial(1 << e).delta_matroid(),
                d.loop_complement(e),
            );
        }
        for a in 0..=g.all_edges() {
            let p = g.boundary_profile(a);
            r.check(
                id,
                "Euler: v − |A| + f = 2c − γ",
                Ok(p.v as i64 - popcount(a) + p.f as i64),
                Ok(2 * p.c as i64 - p.gamma),
            );
            r.check(id, "ρ_{D(G)}(A) = ρ_G(A)", Ok(d.rho2_of(a)), Ok(p.rho2));
        }
    }
}

// ---------------------------------------------------------------- krushkal

fn krushkal(r: &mut SuiteReport, corpus: &Corpus) {
    let (ka, kb) = krushkal_selectors();
    for (id, g) in &corpus.ribbons {
        let gamma = g.genus(g.all_edges());
        for a in 0..=g.all_edges() {
            let (kappa, _, sp) = g.kappa_sperp(a);
            r.check(
                id,
                "γ(Σ) − s⊥(A) = 2(|A| − ρ(A) − κ(A))",
                Ok(gamma - sp),
                Ok(2 * popcount(a) - g.rho2_of(a) - 2 * kappa),
            );
        }
        let nv = g.vertex_count();
        let sing = CellularGraph::cellular(g.clone(), VertexPartition::singletons(nv));
        let kt = sing.and_then(|s| s.krushkal_tilde());
        if gamma == 0 {
            let t = g
                .underlying_graph()
                .tutte()
                .and_then(|t| t.subs(&[("x", v("x") + c(1)), ("y", v("y") + c(1))]));
            r.check(id, "plane: K̃ = T(x+1, y+1)", kt.clone(), t);
        }
        r.check(id, "R_G = K̃(x−1, y, yz², y)", g.br3(), br3_via_krushkal(g));
        r.check(
            id,
            "K̃ = b^{γ/2} K(x, y, a, 1/b)",
            kt,
            krushkal_tilde_via_k(g),
        );
        check_sides(
            r,
            id,
            "L_G = z^{(s−s⊥)/2} K(x−1, y−1, 1/z, z)",
            lv_krushkal_sides(g),
        );
    }
    for (id, s) in &corpus.cellular() {
        r.check(
            id,
            "K̃ = α(1, y, a, √(ab), b; x, 1, 1, 1, 1)",
            s.krushkal_tilde(),
            alpha_delcon(s, &ka, &kb),
        );
    }
}

// ---------------------------------------------------------------- uniformity

/// Free selector `a1, a2, …` and the one with every constrained class
/// replaced by the geometric mean its profile row forces.
fn free_and_constrained<M: MinorSystem>() -> (Selector, Selector) {
    let k = M::class_labels().len();
    let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    let free = sel(names.iter().map(|n| v(n)).collect());
    let mut constrained = free.clone();
    for (kk, i, j) in sqrt_constraints::<M>() {
        constrained.coeffs[kk] = sqrt_mono(&[(names[i].as_str(), 1), (names[j].as_str(), 1)]);
    }
    (free, constrained)
}

fn uniformity_for<M: MinorSystem>(r: &mut SuiteReport, kind: &str, items: &[(String, M)]) {
    let (free, constrained) = free_and_constrained::<M>();
    let witness = items
        .iter()
        .filter(|(_, s)| s.size() == 2)
        .find(|(_, s)| matches!(check_uniform(s, &free), Ok(Uniformity::Witness { .. })));
    r.check_true(
        kind,
        "free selector: a 2-element non-uniformity witness exists",
        Ok(witness.is_some()),
    );
    if let Some((id, s)) = witness {
        r.check_true(
            id,
            "constrained selector is uniform on the witness",
            check_uniform(s, &constrained).map(|u| u == Uniformity::Uniform),
        );
    }
    for (id, s) in items.iter().filter(|(_, s)| s.size() <= 3) {
        r.check_true(
            id,
            &format!("{kind}: constrained selector is uniform"),
            check_uniform(s, &constrained).map(|u| u == Uniformity::Uniform),
        );
    }
}

fn uniformity(r: &mut SuiteReport, corpus: &Corpus) {
    uniformity_for(r, "delta-matroid", &corpus.delta_matroids);
    uniformity_for(r, "ribbon", &corpus.ribbons);
    uniformity_for(r, "partitioned-ribbon", &corpus.partitioned());
    uniformity_for(r, "cellular", &corpus.cellular());
    let safe: Vec<(String, PenroseDm)> = corpus
        .vf_safe_delta_matroids()
        .into_iter()
        .map(|(id, d)| (id, PenroseDm(d)))
        .collect();
    uniformity_for(r, "penrose", &safe);
}

// ---------------------------------------------------------------- nine cases

const LOOP_KINDS: [LoopKind; 3] = [LoopKind::No, LoopKind::Orientable, LoopKind::NonOrientable];

/// For each (dual-loop, ribbon-loop) kind of the first element, the first
/// delta-matroid with at most two elements realising it.
pub fn nine_case_witnesses(
    dms: &[(String, DeltaMatroid)],
) -> Vec<((LoopKind, LoopKind), Option<String>)> {
    let mut out = Vec::new();
    for dual in LOOP_KINDS {
        for ribbon in LOOP_KINDS {
            let w = dms
                .iter()
                .filter(|(_, d)| (1..=2).contains(&d.len()))
                .find(|(_, d)| d.dual_loop_kind(0) == dual && d.ribbon_loop_kind(0) == ribbon)
                .map(|(id, _)| id.clone());
            out.push(((dual, ribbon), w));
        }
    }
    out
}

fn nine_case(r: &mut SuiteReport, corpus: &Corpus) {
    let dms = &corpus.delta_matroids;
    for ((dual, ribbon), w) in nine_case_witnesses(dms) {
        let label = format!("dual-loop {dual:?}, ribbon-loop {ribbon:?}");
        match w {
            None => r.check_true(&label, "has a ≤ 2-element witness", Ok(false)),
            Some(id) => {
                let d = &dms
                    .iter()
                    .find(|(i, _)| *i == id)
                    .expect("witness in corpus")
                    .1;
                r.check(
                    &id,
                    &format!("{label}: recursion = subset expansion"),
                    d.br2_delcon(),
                    d.br2(),
                );
            }
        }
    }
}

// ---------------------------------------------------------------- input records

#[derive(Clone, Debug, Deserialize)]
struct PartitionRecord {
    blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
struct EdgeRecord {
    pair: [usize; 2],
    sign: i8,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum Record {
    Matroid {
        n: usize,
        ranks: Vec<u8>,
    },
    Uniform {
        k: usize,
        n: usize,
    },
    Perspective {
        front: Box<Record>,
        back: Box<Record>,
    },
    Graph {
        v: usize,
        edges: Vec<[usize; 2]>,
        partition: Option<PartitionRecord>,
    },
    DeltaMatroid {
        n: usize,
        feasible: Vec<Vec<usize>>,
    },
    Ribbon {
        vertices: Vec<Vec<usize>>,
        edges: Vec<EdgeRecord>,
        partition: Option<PartitionRecord>,
    },
}

/// A parsed input object.
#[derive(Clone, Debug)]
pub enum InputObject {
    Matroid(Matroid),
    Perspective(MatroidPerspective),
    Graph(Multigraph, Option<VertexPartition>),
    DeltaMatroid(DeltaMatroid),
    Ribbon(RibbonGraph, Option<VertexPartition>),
}

fn at_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::ParseError { location, message } => Error::ParseError {
            location: format!("{field}.{location}"),
            message,
        },
        other => Error::ParseError {
            location: format!("field `{field}`"),
            message: other.to_string(),
        },
    })
}

fn record_matroid(rec: &Record, field: &str) -> Result<Matroid> {
    match rec {
        Record::Matroid { n, ranks } => at_field(field, Matroid::new(*n, ranks.clone())),
        Record::Uniform { k, n } => at_field(field, Matroid::uniform(*k, *n)),
        _ => Err(Error::ParseError {
            location: format!("field `{field}`"),
            message: "expected a matroid record".into(),
        }),
    }
}

fn record_partition(p: &Option<PartitionRecord>, v: usize) -> Result<Option<VertexPartition>> {
    p.as_ref()
        .map(|p| at_field("partition", VertexPartition::new(v, &p.blocks)))
        .transpose()
}

/// Parses one JSON input record.
pub fn parse_object(text: &str) -> Result<InputObject> {
    let rec: Record = serde_json::from_str(text).map_err(|e| Error::ParseError {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    Ok(match &rec {
        Record::Matroid { .. } | Record::Uniform { .. } => {
            InputObject::Matroid(record_matroid(&rec, "ranks")?)
        }
        Record::Perspective { front, back } => {
            let (f, b) = (
                record_matroid(front, "front")?,
                record_matroid(back, "back")?,
            );
            InputObject::Perspective(at_field("back", MatroidPerspective::new(f, b))?)
        }
        Record::Graph {
            v,
            edges,
            partition,
        } => {
            let g = at_field(
                "edges",
                Multigraph::new(*v, edges.iter().map(|&[a, b]| (a, b)).collect()),
            )?;
            InputObject::Graph(g, record_partition(partition, *v)?)
        }
        Record::DeltaMatroid { n, feasible } => {
            InputObject::DeltaMatroid(at_field("feasible", DeltaMatroid::from_sets(*n, feasible))?)
        }
        Record::Ribbon {
            vertices,
            edges,
            partition,
        } => {
            let e = edges
                .iter()
                .map(|e| ((e.pair[0], e.pair[1]), e.sign))
                .collect();
            let g = at_field("edges", RibbonGraph::new(vertices.clone(), e))?;
            let p = record_partition(partition, g.vertex_count())?;
            InputObject::Ribbon(g, p)
        }
    })
}

/// Polynomials the command line can compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Tutte,
    Lv,
    Br2,
    Br3,
    BrPartitioned,
    Krushkal,
    Penrose2,
    Penrose,
}

impl std::str::FromStr for PolyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tutte" => PolyKind::Tutte,
            "lv" => PolyKind::Lv,
            "br2" => PolyKind::Br2,
            "br3" => PolyKind::Br3,
            "br-partitioned" => PolyKind::BrPartitioned,
            "krushkal" => PolyKind::Krushkal,
            "penrose2" => PolyKind::Penrose2,
            "penrose" => PolyKind::Penrose,
            other => {
                return Err(Error::ParseError {
                    location: "--polynomial".into(),
                    message: format!("unknown polynomial `{other}`"),
                })
            }
        })
    }
}

/// A computed value: a polynomial, or a number for a Penrose evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputeOutput {
    pub text: String,
    pub terms: Vec<TermRecord>,
}

impl ComputeOutput {
    fn poly(p: &Polynomial) -> Self {
        ComputeOutput {
            text: p.to_string(),
            terms: p.to_records(),
        }
    }
}

fn unsupported(kind: PolyKind, what: &str) -> Error {
    Error::ParseError {
        location: "--polynomial".into(),
        message: format!("{kind:?} is not defined for a {what}"),
    }
}

fn partition_or_singletons(p: &Option<VertexPartition>, v: usize) -> VertexPartition {
    p.clone().unwrap_or_else(|| VertexPartition::singletons(v))
}

/// Computes `kind` on `obj`; `lambda` is required for `Penrose`.
pub fn compute(obj: &InputObject, kind: PolyKind, lambda: Option<&str>) -> Result<ComputeOutput> {
    let lam = || -> Result<BigRational> {
        let s = lambda.ok_or_else(|| Error::ParseError {
            location: "--lambda".into(),
            message: "required for penrose".into(),
        })?;
        parse_rational(s).ok_or_else(|| Error::ParseError {
            location: "--lambda".into(),
            message: format!("`{s}` is not a rational"),
        })
    };
    let number = |q: BigRational| ComputeOutput {
        text: q.to_string(),
        terms: vec![TermRecord {
            coefficient: q.to_string(),
            exponents: Default::default(),
        }],
    };
    match (obj, kind) {
        (InputObject::Matroid(m), PolyKind::Tutte) => Ok(ComputeOutput::poly(&m.tutte())),
        (InputObject::Matroid(m), PolyKind::Br2) => {
            Ok(ComputeOutput::poly(&DeltaMatroid::from_matroid(m).br2()?))
        }
        (InputObject::Matroid(_), k) => Err(unsupported(k, "matroid")),
        (InputObject::Perspective(p), PolyKind::Lv) => Ok(ComputeOutput::poly(&p.lv_tutte())),
        (InputObject::Perspective(p), PolyKind::Tutte) => {
            Ok(ComputeOutput::poly(&p.front().tutte()))
        }
        (InputObject::Perspective(_), k) => Err(unsupported(k, "perspective")),
        (InputObject::Graph(g, _), PolyKind::Tutte) => Ok(ComputeOutput::poly(&g.tutte()?)),
        (InputObject::Graph(_, _), k) => Err(unsupported(k, "graph")),
        (InputObject::DeltaMatroid(d), k) => match k {
            PolyKind::Br2 => Ok(ComputeOutput::poly(&d.br2()?)),
            PolyKind::Br3 => Ok(ComputeOutput::poly(&d.br3()?)),
            PolyKind::Penrose2 => Ok(ComputeOutput::poly(&d.penrose2()?)),
            PolyKind::Penrose => Ok(number(d.penrose_eval(&lam()?)?)),
            k => Err(unsupported(k, "delta-matroid")),
        },
        (InputObject::Ribbon(g, p), k) => {
            let part = partition_or_singletons(p, g.vertex_count());
            match k {
                PolyKind::Tutte => Ok(ComputeOutput::poly(&g.underlying_graph().tutte()?)),
                PolyKind::Lv => Ok(ComputeOutput::poly(&lv_of_ribbon(g)?)),
                PolyKind::Br2 => Ok(ComputeOutput::poly(&g.br2()?)),
                PolyKind::Br3 => Ok(ComputeOutput::poly(&g.br3()?)),
                PolyKind::BrPartitioned => Ok(ComputeOutput::poly(&partitioned_br(g, &part)?)),
                PolyKind::Krushkal => Ok(ComputeOutput::poly(
                    &CellularGraph::cellular(g.clone(), part)?.krushkal_tilde()?,
                )),
                PolyKind::Penrose2 => Ok(ComputeOutput::poly(&g.penrose2()?)),
                PolyKind::Penrose => {
                    let point = [("lam".to_string(), lam()?)].into_iter().collect();
                    Ok(number(g.penrose()?.eval(&point)?))
                }
            }
        }
    }
}
