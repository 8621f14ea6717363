//! Picard lattices of the degree one and degree two del Pezzo surfaces and
//! the blowdown dictionary between them.
//!
//! The degree one lattice is modelled as `Z(-K) + Q(E8)` with `-K` a
//! unimodular vector orthogonal to the root part and the intersection form
//! restricting to the negated root form. The degree two lattice is modelled
//! as the character group of an extended torus: pairs `(lambda, m)` with
//! `lambda` a weight of E7 and `m` an integer, coupled by parity. Contracting
//! one exceptional curve carries the 240 lines of the first surface onto the
//! lines, conics and cubics of the second, indexed by the grading of E8 at
//! the marked node. Everything here is lattice arithmetic on root systems;
//! no Lie algebra is constructed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::rat::{qi, Q};
use crate::report::Check;
use crate::roots::{CartanType, Root, RootSystem, Weight};

fn as_int(v: &Q) -> i64 {
    debug_assert!(v.is_integer());
    v.to_integer().to_i64().expect("intersection fits in i64")
}

/// A divisor class `k(-K) + lam` on the degree one surface, with `lam` in
/// simple-root coordinates of E8.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dp1Class {
    pub k: i64,
    pub lam: Root,
}

impl Dp1Class {
    pub fn add(&self, other: &Dp1Class) -> Dp1Class {
        Dp1Class {
            k: self.k + other.k,
            lam: self.lam.add(&other.lam),
        }
    }

    pub fn sub(&self, other: &Dp1Class) -> Dp1Class {
        Dp1Class {
            k: self.k - other.k,
            lam: self.lam.sub(&other.lam),
        }
    }
}

/// The degree one del Pezzo lattice: rank 9, odd, unimodular, with
/// `(-K)^2 = 1` and root part E8.
pub struct DegreeOne {
    pub rs: RootSystem,
}

impl DegreeOne {
    pub fn new() -> DegreeOne {
        DegreeOne {
            rs: RootSystem::new(CartanType::parse("E8").expect("valid type")),
        }
    }

    pub fn minus_k(&self) -> Dp1Class {
        Dp1Class {
            k: 1,
            lam: Root(vec![0; self.rs.rank]),
        }
    }

    /// The line attached to a root: `-K + beta`.
    pub fn line(&self, beta: &Root) -> Dp1Class {
        Dp1Class {
            k: 1,
            lam: beta.clone(),
        }
    }

    /// All 240 lines, in root order.
    pub fn lines(&self) -> Vec<Dp1Class> {
        self.rs.roots.iter().map(|b| self.line(b)).collect()
    }

    /// Intersection number. `-K` is orthogonal to the root part and the
    /// form restricts to minus the root form, so the value is
    /// `k k' - (lam, lam')`.
    pub fn pair(&self, a: &Dp1Class, b: &Dp1Class) -> Q {
        qi(a.k * b.k) - self.rs.pairing(&a.lam, &b.lam)
    }

    pub fn degree(&self, a: &Dp1Class) -> Q {
        self.pair(a, &self.minus_k())
    }

    pub fn gram_det(&self, classes: &[Dp1Class]) -> Q {
        let gram: Vec<Vec<Q>> = classes
            .iter()
            .map(|a| classes.iter().map(|b| self.pair(a, b)).collect())
            .collect();
        linalg::det(&gram)
    }

    /// Histogram of intersection numbers of one line against all lines.
    pub fn line_row_histogram(&self, line: &Dp1Class) -> BTreeMap<i64, usize> {
        let mut hist = BTreeMap::new();
        for other in self.lines() {
            *hist.entry(as_int(&self.pair(line, &other))).or_insert(0) += 1;
        }
        hist
    }
}

impl Default for DegreeOne {
    fn default() -> Self {
        DegreeOne::new()
    }
}

/// Roots pairwise meeting a fixed pairing value, found by backtracking.
pub fn root_clique(rs: &RootSystem, value: i64, size: usize) -> Option<Vec<Root>> {
    let target = qi(value);
    let n = rs.roots.len();
    let mut chosen: Vec<usize> = Vec::new();

    fn extend(
        rs: &RootSystem,
        target: &Q,
        size: usize,
        n: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for cand in start..n {
            let ok = chosen
                .iter()
                .all(|&i| &rs.pairing(&rs.roots[i], &rs.roots[cand]) == target);
            if ok {
                chosen.push(cand);
                if extend(rs, target, size, n, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if extend(rs, &target, size, n, &mut chosen) {
        Some(chosen.iter().map(|&i| rs.roots[i].clone()).collect())
    } else {
        None
    }
}

/// A character `(lambda, m)` of the extended torus, with `lambda` a weight of
/// E7 in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dp2Class {
    pub w: Vec<i64>,
    pub m: i64,
}

impl Dp2Class {
    fn weight(&self) -> Weight {
        Weight(self.w.clone())
    }

    pub fn add(&self, other: &Dp2Class) -> Dp2Class {
        Dp2Class {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
            m: self.m + other.m,
        }
    }

    pub fn sub(&self, other: &Dp2Class) -> Dp2Class {
        Dp2Class {
            w: self.w.iter().zip(&other.w).map(|(a, b)| a - b).collect(),
            m: self.m - other.m,
        }
    }
}

/// The degree two del Pezzo lattice as a character group: pairs `(lambda, m)`
/// with `lambda` in the weight lattice of E7 and `lambda` in the root lattice
/// exactly when `m` is even. The intersection form is `m m' / 2 - (lambda,
/// lambda')`, integral precisely on the coupled pairs.
pub struct DegreeTwo {
    pub rs: RootSystem,
    minuscule: Vec<Weight>,
}

impl DegreeTwo {
    pub fn new() -> DegreeTwo {
        let rs = RootSystem::new(CartanType::parse("E7").expect("valid type"));
        // Orbit of the minuscule fundamental weight at the end of the long
        // arm; 56 elements.
        let minuscule = rs.weyl_orbit(&rs.fundamental_weight(6));
        assert_eq!(minuscule.len(), 56);
        DegreeTwo { rs, minuscule }
    }

    /// The anticanonical class: `(0, 2)`, self-intersection 2.
    pub fn chi0(&self) -> Dp2Class {
        Dp2Class {
            w: vec![0; self.rs.rank],
            m: 2,
        }
    }

    /// Membership in the coupled lattice.
    pub fn contains(&self, c: &Dp2Class) -> bool {
        self.rs.weight_in_root_lattice(&c.weight()) == (c.m % 2 == 0)
    }

    pub fn pair(&self, a: &Dp2Class, b: &Dp2Class) -> Q {
        qi(a.m * b.m) / qi(2) - self.rs.weight_pairing(&a.weight(), &b.weight())
    }

    /// Degree is intersection with the anticanonical class, which is `m`.
    pub fn degree(&self, c: &Dp2Class) -> Q {
        self.pair(c, &self.chi0())
    }

    /// The 56 lines: minuscule weights at level one.
    pub fn lines(&self) -> Vec<Dp2Class> {
        self.minuscule
            .iter()
            .map(|w| Dp2Class { w: w.0.clone(), m: 1 })
            .collect()
    }

    /// The 126 conics: roots at level two.
    pub fn conics(&self) -> Vec<Dp2Class> {
        self.rs
            .roots
            .iter()
            .map(|r| Dp2Class {
                w: self.rs.root_to_weight(r).0,
                m: 2,
            })
            .collect()
    }

    /// The 56 cubics: minuscule weights at level three.
    pub fn cubics(&self) -> Vec<Dp2Class> {
        self.minuscule
            .iter()
            .map(|w| Dp2Class { w: w.0.clone(), m: 3 })
            .collect()
    }

    /// The second line on the fiber through a line: `chi0 - l`, the unique
    /// other line meeting it twice.
    pub fn line_partner(&self, l: &Dp2Class) -> Dp2Class {
        self.chi0().sub(l)
    }

    /// Split a conic as a sum of two lines meeting once, if possible.
    pub fn conic_split(&self, c: &Dp2Class) -> Option<(Dp2Class, Dp2Class)> {
        let lines = self.lines();
        for l in &lines {
            let rest = c.sub(l);
            if lines.contains(&rest) && self.pair(l, &rest) == qi(1) {
                return Some((l.clone(), rest));
            }
        }
        None
    }

    pub fn line_row_histogram(&self, line: &Dp2Class) -> BTreeMap<i64, usize> {
        let mut hist = BTreeMap::new();
        for other in self.lines() {
            *hist.entry(as_int(&self.pair(line, &other))).or_insert(0) += 1;
        }
        hist
    }
}

impl Default for DegreeTwo {
    fn default() -> Self {
        DegreeTwo::new()
    }
}

/// Contraction of one exceptional curve: the marked node of E8 grades the
/// root system, and each root becomes a class on the degree two surface by
/// restricting its weight coordinates and recording the grade.
pub struct Blowdown {
    pub big: DegreeOne,
    pub small: DegreeTwo,
    pub mark: usize,
}

impl Blowdown {
    pub fn new() -> Blowdown {
        let big = DegreeOne::new();
        let small = DegreeTwo::new();
        let mark = big.rs.rank - 1;
        // The small system must be the full subdiagram away from the mark.
        for i in 0..small.rs.rank {
            for j in 0..small.rs.rank {
                assert_eq!(small.rs.cartan[i][j], big.rs.cartan[i][j]);
            }
        }
        Blowdown { big, small, mark }
    }

    /// Coefficient of the marked simple root.
    pub fn grade(&self, beta: &Root) -> i64 {
        beta.0[self.mark]
    }

    /// Weight coordinates against the unmarked simple coroots.
    pub fn restricted_weight(&self, beta: &Root) -> Vec<i64> {
        let mut w = self.big.rs.wcoords(beta);
        w.remove(self.mark);
        w
    }

    /// The image class: grade `n` restricts to level `2 - n`.
    pub fn image(&self, beta: &Root) -> Dp2Class {
        Dp2Class {
            w: self.restricted_weight(beta),
            m: 2 - self.grade(beta),
        }
    }

    /// Vanishing order along the contracted curve: `1 - n` at grade `n`.
    pub fn multiplicity(&self, beta: &Root) -> i64 {
        1 - self.grade(beta)
    }
}

impl Default for Blowdown {
    fn default() -> Self {
        Blowdown::new()
    }
}

fn node_name(prefix: &str, i: usize) -> String {
    format!("{prefix}{i}")
}

/// GraphViz rendering of the line incidence graph, one edge per pair of
/// lines meeting at least `min` times. Output is deterministic.
pub fn dp1_line_graph(s: &DegreeOne, min: i64) -> String {
    let lines = s.lines();
    let mut out = String::from("graph lines_degree_one {\n");
    let _ = writeln!(out, "  // {} lines, edges at intersection >= {}", lines.len(), min);
    for (i, l) in lines.iter().enumerate() {
        let coords: Vec<String> = l.lam.0.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "  {} [label=\"{}\"];", node_name("L", i), coords.join(","));
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = as_int(&s.pair(&lines[i], &lines[j]));
            if p >= min {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{}\"];",
                    node_name("L", i),
                    node_name("L", j),
                    p
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn dp2_line_graph(s: &DegreeTwo, min: i64) -> String {
    let lines = s.lines();
    let mut out = String::from("graph lines_degree_two {\n");
    let _ = writeln!(out, "  // {} lines, edges at intersection >= {}", lines.len(), min);
    for (i, l) in lines.iter().enumerate() {
        let coords: Vec<String> = l.w.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "  {} [label=\"{}\"];", node_name("L", i), coords.join(","));
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = as_int(&s.pair(&lines[i], &lines[j]));
            if p >= min {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{}\"];",
                    node_name("L", i),
                    node_name("L", j),
                    p
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

fn dp1_checks(s: &DegreeOne, out: &mut Vec<Check>) {
    let lines = s.lines();
    let minus_k = s.minus_k();

    let count_ok = lines.len() == 240;
    let geometry_ok = lines
        .iter()
        .all(|l| s.pair(l, l) == qi(-1) && s.degree(l) == qi(1));
    out.push(Check::with_detail(
        "dp1-lines",
        "the degree one surface has 240 lines of self-intersection -1",
        count_ok && geometry_ok,
        format!("{} classes", lines.len()),
    ));

    let frozen: BTreeMap<i64, usize> =
        [(-1, 1), (0, 56), (1, 126), (2, 56), (3, 1)].into_iter().collect();
    let hist_ok = lines.iter().all(|l| s.line_row_histogram(l) == frozen);
    out.push(Check::new(
        "dp1-histogram",
        "every line meets the others with the same intersection profile",
        hist_ok,
    ));

    // Three bases: the simple-root lines span unimodularly with -K; an
    // orthogonal root set leaves index 2^7; a pairwise-incident octet
    // leaves index 3^2.
    let simple_basis: Vec<Dp1Class> = std::iter::once(minus_k.clone())
        .chain((0..s.rs.rank).map(|i| s.line(&Root::simple(s.rs.rank, i))))
        .collect();
    let det_simple = s.gram_det(&simple_basis);

    let orth = root_clique(&s.rs, 0, 7).expect("orthogonal 7-set exists");
    let orth_basis: Vec<Dp1Class> = std::iter::once(minus_k.clone())
        .chain(orth.iter().map(|b| s.line(b)))
        .collect();
    let det_orth = s.gram_det(&orth_basis);

    let clique = root_clique(&s.rs, 1, 8).expect("pairing-one octet exists");
    let clique_basis: Vec<Dp1Class> = std::iter::once(minus_k.clone())
        .chain(clique.iter().map(|b| s.line(b)))
        .collect();
    let det_clique = s.gram_det(&clique_basis);

    let dets_ok = det_simple == qi(1) && det_orth == qi(-128) && det_clique == qi(9);
    out.push(Check::with_detail(
        "dp1-basis",
        "line bases have the expected Gram determinants",
        dets_ok,
        format!("simple {det_simple}, orthogonal {det_orth}, incident {det_clique}"),
    ));
}

fn dp2_checks(s: &DegreeTwo, out: &mut Vec<Check>) {
    let chi0 = s.chi0();
    let lines = s.lines();
    let conics = s.conics();
    let cubics = s.cubics();

    let counts_ok = lines.len() == 56 && conics.len() == 126 && cubics.len() == 56;
    out.push(Check::with_detail(
        "dp2-counts",
        "the degree two surface has 56 lines, 126 conics and 56 cubics",
        counts_ok,
        format!("{} / {} / {}", lines.len(), conics.len(), cubics.len()),
    ));

    let catalog: Vec<&Dp2Class> = std::iter::once(&chi0)
        .chain(&lines)
        .chain(&conics)
        .chain(&cubics)
        .collect();
    let member_ok = catalog.iter().all(|c| s.contains(c));
    let integral_ok = catalog
        .iter()
        .flat_map(|a| catalog.iter().map(move |b| s.pair(a, b)))
        .all(|v| v.is_integer());
    let anti_ok = s.pair(&chi0, &chi0) == qi(2)
        && (0..s.rs.rank).all(|i| {
            let alpha = Dp2Class {
                w: s.rs.root_to_weight(&Root::simple(s.rs.rank, i)).0,
                m: 0,
            };
            s.contains(&alpha) && s.pair(&chi0, &alpha).is_zero()
        });
    out.push(Check::new(
        "dp2-integrality",
        "the parity coupling makes every curve pairing an integer",
        member_ok && integral_ok && anti_ok,
    ));

    let frozen: BTreeMap<i64, usize> = [(-1, 1), (0, 27), (1, 27), (2, 1)].into_iter().collect();
    let line_ok = lines.iter().all(|l| {
        let partner = s.line_partner(l);
        s.pair(l, l) == qi(-1)
            && s.degree(l) == qi(1)
            && lines.contains(&partner)
            && s.pair(l, &partner) == qi(2)
            && s.line_row_histogram(l) == frozen
    });
    out.push(Check::new(
        "dp2-lines",
        "lines pair off under the anticanonical involution with profile 1/27/27/1",
        line_ok,
    ));

    let conic_ok = conics.iter().all(|c| {
        let split = s.conic_split(c);
        s.pair(c, c).is_zero()
            && s.degree(c) == qi(2)
            && split.is_some_and(|(a, b)| a.add(&b) == *c)
    });
    out.push(Check::new(
        "dp2-conics",
        "every conic is a sum of two lines meeting once",
        conic_ok,
    ));

    let cubic_ok = cubics.iter().all(|q| {
        let l = Dp2Class { w: q.w.clone(), m: 1 };
        s.pair(q, q) == qi(3) && s.degree(q) == qi(3) && chi0.add(&l) == *q
    });
    out.push(Check::new(
        "dp2-cubics",
        "cubics are anticanonical translates of lines with self-intersection 3",
        cubic_ok,
    ));

    // Root lattice -> lattice -> Z, with the level map split by any line,
    // and Z chi0 -> lattice -> weight lattice, with the weight map onto.
    let root_injects = s.rs.roots.iter().all(|r| {
        let c = Dp2Class {
            w: s.rs.root_to_weight(r).0,
            m: 0,
        };
        s.contains(&c)
    });
    let kernel_ok = {
        let even = Dp2Class { w: vec![0; s.rs.rank], m: 2 };
        let odd = Dp2Class { w: vec![0; s.rs.rank], m: 1 };
        s.contains(&even) && !s.contains(&odd)
    };
    let not_in_root_lattice = Dp2Class {
        w: s.rs.fundamental_weight(6).0,
        m: 0,
    };
    let middle_ok = !s.contains(&not_in_root_lattice);
    let level_onto = lines.iter().all(|l| l.m == 1);
    let weight_onto = {
        let mut rows: Vec<Vec<i64>> = (0..s.rs.rank)
            .map(|i| s.rs.root_to_weight(&Root::simple(s.rs.rank, i)).0)
            .collect();
        rows.push(lines[0].w.clone());
        let diag = linalg::smith_diagonal(&rows);
        diag.len() == s.rs.rank && diag.iter().all(|d| d.is_one())
    };
    let root_index_two = {
        let rows: Vec<Vec<i64>> = (0..s.rs.rank)
            .map(|i| s.rs.root_to_weight(&Root::simple(s.rs.rank, i)).0)
            .collect();
        let diag = linalg::smith_diagonal(&rows);
        let product: num::BigInt = diag.iter().product();
        product == num::BigInt::from(2)
    };
    out.push(Check::new(
        "dp2-sequences",
        "the lattice extends the root lattice by a level and the weights by a center",
        root_injects && kernel_ok && middle_ok && level_onto && weight_onto && root_index_two,
    ));
}

fn blowdown_checks(bd: &Blowdown, out: &mut Vec<Check>) {
    let e8 = &bd.big.rs;
    let theta = e8.highest_root().clone();

    let mut by_grade: BTreeMap<i64, usize> = BTreeMap::new();
    for beta in &e8.roots {
        *by_grade.entry(bd.grade(beta)).or_insert(0) += 1;
    }
    let frozen: BTreeMap<i64, usize> =
        [(-2, 1), (-1, 56), (0, 126), (1, 56), (2, 1)].into_iter().collect();
    let mult_ok = e8.roots.iter().all(|b| bd.multiplicity(b) == 1 - bd.grade(b));
    out.push(Check::with_detail(
        "blowdown-counts",
        "the marked grading splits the 240 lines as 1 + 56 + 126 + 56 + 1",
        by_grade == frozen && mult_ok,
        format!("{by_grade:?}"),
    ));

    let line_set: BTreeSet<Dp2Class> = bd.small.lines().into_iter().collect();
    let conic_set: BTreeSet<Dp2Class> = bd.small.conics().into_iter().collect();
    let cubic_set: BTreeSet<Dp2Class> = bd.small.cubics().into_iter().collect();
    let mut classes_ok = true;
    for beta in &e8.roots {
        let img = bd.image(beta);
        let hit = match bd.grade(beta) {
            1 => line_set.contains(&img),
            0 => conic_set.contains(&img),
            -1 => cubic_set.contains(&img),
            2 => img.w.iter().all(|&c| c == 0) && img.m == 0,
            -2 => img == bd.small.chi0().add(&bd.small.chi0()),
            _ => false,
        };
        classes_ok &= hit;
    }
    // Each family is hit exactly once.
    let grade_one: BTreeSet<Dp2Class> = e8
        .roots
        .iter()
        .filter(|b| bd.grade(b) == 1)
        .map(|b| bd.image(b))
        .collect();
    let grade_zero: BTreeSet<Dp2Class> = e8
        .roots
        .iter()
        .filter(|b| bd.grade(b) == 0)
        .map(|b| bd.image(b))
        .collect();
    let grade_minus: BTreeSet<Dp2Class> = e8
        .roots
        .iter()
        .filter(|b| bd.grade(b) == -1)
        .map(|b| bd.image(b))
        .collect();
    classes_ok &= grade_one == line_set && grade_zero == conic_set && grade_minus == cubic_set;
    out.push(Check::new(
        "blowdown-classes",
        "grades one, zero and minus one map onto lines, conics and cubics",
        classes_ok,
    ));

    // Decisive cross-check: intersection numbers agree along both routes,
    // after correcting by the vanishing orders along the contracted curve.
    let mut iso_ok = true;
    for beta in &e8.roots {
        let lb = bd.big.line(beta);
        let ib = bd.image(beta);
        let mb = bd.multiplicity(beta);
        for gamma in &e8.roots {
            let direct = bd.big.pair(&lb, &bd.big.line(gamma));
            let pushed =
                bd.small.pair(&ib, &bd.image(gamma)) - qi(mb * bd.multiplicity(gamma));
            if direct != pushed {
                iso_ok = false;
            }
        }
    }
    out.push(Check::new(
        "blowdown-isometry",
        "pushing lines through the contraction preserves all intersection numbers",
        iso_ok,
    ));

    // The contracted curve is the line of the highest root, and the strict
    // transform of a plane section through it has degree 0 and square -2.
    let e = bd.big.line(&theta);
    let c = bd.big.minus_k().sub(&e);
    let anchor_ok = bd.big.pair(&e, &e) == qi(-1)
        && bd.big.degree(&e) == qi(1)
        && bd.big.degree(&c).is_zero()
        && bd.big.pair(&c, &c) == qi(-2)
        && c == Dp1Class {
            k: 0,
            lam: theta.neg(),
        };
    out.push(Check::new(
        "blowdown-anchor",
        "the contracted curve sits over the highest root with a degree zero residual",
        anchor_ok,
    ));
}

fn weyl_checks(bd: &Blowdown, seed: u64, out: &mut Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = &bd.big;
    let n = s.rs.roots.len();
    let mut ok = true;
    for _ in 0..5 {
        let len = rng.random_range(1..=6);
        let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..s.rs.rank)).collect();
        let apply = |r: &Root| {
            let mut x = r.clone();
            for &i in &word {
                x = s.rs.reflect_simple(&x, i);
            }
            x
        };
        for _ in 0..20 {
            let beta = &s.rs.roots[rng.random_range(0..n)];
            let gamma = &s.rs.roots[rng.random_range(0..n)];
            let before = s.pair(&s.line(beta), &s.line(gamma));
            let after = s.pair(&s.line(&apply(beta)), &s.line(&apply(gamma)));
            if before != after {
                ok = false;
            }
        }
    }
    out.push(Check::new(
        "weyl-invariance",
        "Weyl words permute the lines without changing intersections",
        ok,
    ));
}

/// The full lattice verification suite.
pub fn lattice_checks(seed: u64) -> Vec<Check> {
    let bd = Blowdown::new();
    let mut out = Vec::new();
    dp1_checks(&bd.big, &mut out);
    dp2_checks(&bd.small, &mut out);
    blowdown_checks(&bd, &mut out);
    weyl_checks(&bd, seed, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_intersections_have_the_frozen_profile() {
        let s = DegreeOne::new();
        let lines = s.lines();
        assert_eq!(lines.len(), 240);
        let frozen: BTreeMap<i64, usize> =
            [(-1, 1), (0, 56), (1, 126), (2, 56), (3, 1)].into_iter().collect();
        for l in &lines {
            assert_eq!(s.pair(l, l), qi(-1));
            assert_eq!(s.degree(l), qi(1));
            assert_eq!(s.line_row_histogram(l), frozen);
        }
    }

    #[test]
    fn gram_determinants_detect_the_sublattice_indices() {
        let s = DegreeOne::new();
        let mk = s.minus_k();
        assert_eq!(s.pair(&mk, &mk), qi(1));

        let simple: Vec<Dp1Class> = std::iter::once(mk.clone())
            .chain((0..8).map(|i| s.line(&Root::simple(8, i))))
            .collect();
        assert_eq!(s.gram_det(&simple), qi(1));

        let orth = root_clique(&s.rs, 0, 7).unwrap();
        for (i, a) in orth.iter().enumerate() {
            for b in &orth[i + 1..] {
                assert!(s.rs.pairing(a, b).is_zero());
            }
        }
        let basis: Vec<Dp1Class> = std::iter::once(mk.clone())
            .chain(orth.iter().map(|b| s.line(b)))
            .collect();
        assert_eq!(s.gram_det(&basis), qi(-128));

        let clique = root_clique(&s.rs, 1, 8).unwrap();
        for (i, a) in clique.iter().enumerate() {
            for b in &clique[i + 1..] {
                assert_eq!(s.rs.pairing(a, b), qi(1));
            }
        }
        let basis: Vec<Dp1Class> = std::iter::once(mk)
            .chain(clique.iter().map(|b| s.line(b)))
            .collect();
        assert_eq!(s.gram_det(&basis), qi(9));
    }

    #[test]
    fn level_and_parity_cut_out_the_curve_classes() {
        let s = DegreeTwo::new();
        let chi0 = s.chi0();
        assert_eq!(s.pair(&chi0, &chi0), qi(2));
        assert!(s.contains(&chi0));

        for l in s.lines() {
            assert!(s.contains(&l));
            assert_eq!(s.pair(&l, &l), qi(-1));
            let partner = s.line_partner(&l);
            assert_eq!(s.pair(&l, &partner), qi(2));
            // The partner is the only line met twice.
            let twos = s
                .lines()
                .iter()
                .filter(|o| s.pair(&l, o) == qi(2))
                .count();
            assert_eq!(twos, 1);
        }

        // A weight outside the root lattice needs an odd level.
        let bad = Dp2Class {
            w: s.rs.fundamental_weight(6).0,
            m: 0,
        };
        assert!(!s.contains(&bad));
        let good = Dp2Class { w: bad.w.clone(), m: 1 };
        assert!(s.contains(&good));
    }

    #[test]
    fn every_conic_splits_into_an_incident_line_pair() {
        let s = DegreeTwo::new();
        for c in s.conics() {
            assert!(s.pair(&c, &c).is_zero());
            let (a, b) = s.conic_split(&c).expect("conic splits");
            assert_eq!(a.add(&b), c);
            assert_eq!(s.pair(&a, &b), qi(1));
        }
    }

    #[test]
    fn restriction_lands_exactly_on_the_minuscule_orbit() {
        let bd = Blowdown::new();
        let lines: BTreeSet<Vec<i64>> = bd.small.lines().into_iter().map(|c| c.w).collect();
        let restricted: BTreeSet<Vec<i64>> = bd
            .big
            .rs
            .roots
            .iter()
            .filter(|b| bd.grade(b) == 1)
            .map(|b| bd.restricted_weight(b))
            .collect();
        assert_eq!(lines, restricted);

        let cubic_side: BTreeSet<Vec<i64>> = bd
            .big
            .rs
            .roots
            .iter()
            .filter(|b| bd.grade(b) == -1)
            .map(|b| bd.restricted_weight(b))
            .collect();
        assert_eq!(lines, cubic_side);
    }

    #[test]
    fn pushforward_is_an_isometry_up_to_vanishing_orders() {
        let bd = Blowdown::new();
        let roots = bd.big.rs.roots.clone();
        for beta in &roots {
            let lb = bd.big.line(beta);
            let ib = bd.image(beta);
            let mb = bd.multiplicity(beta);
            for gamma in &roots {
                let direct = bd.big.pair(&lb, &bd.big.line(gamma));
                let pushed =
                    bd.small.pair(&ib, &bd.image(gamma)) - qi(mb * bd.multiplicity(gamma));
                assert_eq!(direct, pushed, "mismatch at {beta:?}, {gamma:?}");
            }
        }
    }

    #[test]
    fn lattice_suite_is_green() {
        let checks = lattice_checks(7);
        assert_eq!(checks.len(), 14);
        for c in &checks {
            assert!(c.pass, "failed: {} ({:?})", c.id, c.detail);
        }
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let s = DegreeTwo::new();
        let a = dp2_line_graph(&s, 2);
        let b = dp2_line_graph(&s, 2);
        assert_eq!(a, b);
        assert!(a.starts_with("graph lines_degree_two {"));
        assert_eq!(a.matches("[label=\"").count(), 56 + 28);
        // Exactly one partner per line at intersection two.
        assert_eq!(a.matches(" -- ").count(), 28);

        let g1 = dp1_line_graph(&DegreeOne::new(), 3);
        // Only opposite roots meet three times.
        assert_eq!(g1.matches(" -- ").count(), 120);
    }
}
