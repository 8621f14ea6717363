//! Orbit geometry of the graded module: cone sampling, tangent spaces, the
//! open-chart fiber decomposition, and stability of weight supports.
//!
//! Points of the highest-weight cone in grade -1 are produced as explicit
//! group words applied to the extremal vector, so every sampled point comes
//! with a certificate of membership. The checks then compare the cut-out
//! equations, tangent computations and projection formulas against those
//! certified points, exactly over the rationals.

use crate::algebra::AlgebraElement;
use crate::linalg::{self, InteriorResult};
use crate::module::AdjointModule;
use crate::rat::{qi, sample_small, sample_small_nonzero, Q};
use crate::report::Check;
use crate::roots::Root;
use crate::Result;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// One letter of a group word acting on the algebra.
#[derive(Debug, Clone)]
pub enum GroupStep {
    /// `exp(ad(coeff * X_root))`; the root vector is always ad-nilpotent.
    Exp { root: Root, coeff: Q },
    /// Torus element scaling the root line of `beta` by `t^<lambda, beta>`.
    Torus { lambda: Vec<i64>, t: Q },
    /// Global rescaling; cones are stable under it.
    Scale(Q),
}

/// A sampled point together with the word that produced it.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub vector: AlgebraElement,
    pub word: Vec<GroupStep>,
}

impl OrbitPoint {
    pub fn from_word(
        m: &AdjointModule,
        seed: AlgebraElement,
        word: Vec<GroupStep>,
    ) -> Result<Self> {
        let mut vector = seed;
        for step in &word {
            vector = apply_step(m, step, &vector)?;
        }
        Ok(OrbitPoint { vector, word })
    }
}

fn apply_step(m: &AdjointModule, step: &GroupStep, x: &AlgebraElement) -> Result<AlgebraElement> {
    match step {
        GroupStep::Exp { root, coeff } => {
            let u = m.g.root_vector(root)?.scale(coeff);
            m.g.exp_apply(&u, x)
        }
        GroupStep::Torus { lambda, t } => Ok(m.g.torus_scale(lambda, t, x)),
        GroupStep::Scale(c) => Ok(x.scale(c)),
    }
}

/// The extremal vector of grade -1: the root line of minus the marked
/// simple root, which no positive grade-0 root raises out of the module.
pub fn extremal_minus_vector(m: &AdjointModule) -> AlgebraElement {
    let alpha = Root::simple(m.g.rank, m.mark);
    m.g.root_vector(&alpha.neg())
        .expect("minus the marked simple root is a root")
}

/// Random point of the grade -1 cone: a short word in grade-0 root groups,
/// an optional torus element and a rescaling, applied to the extremal line.
pub fn sample_gprime_point<R: Rng>(m: &AdjointModule, rng: &mut R) -> OrbitPoint {
    let zero_roots: Vec<&Root> =
        m.g.rs.roots.iter().filter(|r| r.0[m.mark] == 0).collect();
    let mut word = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        word.push(GroupStep::Exp {
            root: zero_roots[rng.random_range(0..zero_roots.len())].clone(),
            coeff: sample_small_nonzero(rng),
        });
    }
    if rng.random_bool(0.5) {
        word.push(GroupStep::Torus {
            lambda: (0..m.g.rank).map(|_| rng.random_range(-2..=2)).collect(),
            t: sample_small_nonzero(rng),
        });
    }
    word.push(GroupStep::Scale(sample_small_nonzero(rng)));
    OrbitPoint::from_word(m, extremal_minus_vector(m), word).expect("word letters are valid")
}

/// Random point of the full cone in the ambient module: a word in arbitrary
/// root groups applied to a multiple of the highest vector.
pub fn sample_gp_point<R: Rng>(m: &AdjointModule, rng: &mut R) -> OrbitPoint {
    let mut word = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let k = rng.random_range(0..m.g.rs.root_count());
        word.push(GroupStep::Exp {
            root: m.g.rs.roots[k].clone(),
            coeff: sample_small_nonzero(rng),
        });
    }
    word.push(GroupStep::Scale(sample_small_nonzero(rng)));
    OrbitPoint::from_word(m, m.v.clone(), word).expect("word letters are valid")
}

/// Membership test for the grade -1 cone; on failure names a nonzero
/// component of the quadratic obstruction.
pub fn on_gprime_cone(m: &AdjointModule, x: &AlgebraElement) -> (bool, Option<String>) {
    let p = m.p(x);
    if p.is_zero() {
        (true, None)
    } else {
        let i = p.support().next().expect("nonzero element has support");
        (false, Some(format!("p(x) has component {}", m.g.describe_basis(i))))
    }
}

fn minus_coords(m: &AdjointModule, x: &AlgebraElement) -> Vec<Q> {
    let mut pos = vec![usize::MAX; m.g.dim];
    for (k, &i) in m.minus_indices.iter().enumerate() {
        pos[i] = k;
    }
    let mut out = vec![Q::zero(); m.minus_indices.len()];
    for (i, c) in &x.coeffs {
        let k = pos[*i as usize];
        assert!(k != usize::MAX, "element must live in grade -1");
        out[k] = c.clone();
    }
    out
}

/// Spanning rows of the tangent space `k x + [g_0, x]` of the cone at `x`,
/// written in grade -1 coordinates.
pub fn tangent_rows(m: &AdjointModule, x: &AlgebraElement) -> Vec<Vec<Q>> {
    let mut rows = vec![minus_coords(m, x)];
    for &i in &m.zero_indices {
        let b = m.g.bracket(&AlgebraElement::basis(i), x);
        rows.push(minus_coords(m, &b));
    }
    rows
}

pub fn tangent_dim(m: &AdjointModule, x: &AlgebraElement) -> usize {
    linalg::rank(&tangent_rows(m, x))
}

/// Is `a` tangent to the cone at `x`? Decided by a rank comparison.
pub fn tangent_member(m: &AdjointModule, x: &AlgebraElement, a: &AlgebraElement) -> bool {
    let mut rows = tangent_rows(m, x);
    let r = linalg::rank(&rows);
    rows.push(minus_coords(m, a));
    linalg::rank(&rows) == r
}

/// Dimension the tangent space must have at every smooth cone point: one
/// for the scaling direction plus one for each grade-0 root moving the
/// extremal line to another root line.
pub fn tangent_dim_oracle(m: &AdjointModule) -> usize {
    let alpha = Root::simple(m.g.rank, m.mark);
    1 + m
        .g
        .rs
        .roots
        .iter()
        .filter(|r| r.0[m.mark] == 0 && m.g.rs.is_root(&r.sub(&alpha)))
        .count()
}

/// Matrix of the linear map `a -> p2(x, a)` in basis coordinates, one row
/// per grade-0 coordinate of the value; its kernel is the candidate tangent
/// space cut by the quadratic equations.
pub fn quadric_kernel(m: &AdjointModule, x: &AlgebraElement) -> Vec<Vec<Q>> {
    let n = m.minus_indices.len();
    let images: Vec<AlgebraElement> = (0..n)
        .map(|k| m.p2(x, &AlgebraElement::basis(m.minus_indices[k])))
        .collect();
    let rows: Vec<Vec<Q>> = m
        .zero_indices
        .iter()
        .map(|&j| images.iter().map(|im| im.get(j)).collect())
        .collect();
    linalg::kernel(&rows)
}

/// Decomposition data of an open-chart point `xi = g_t exp(c w) exp(x) v`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberData {
    pub t: Q,
    pub c: Q,
    pub x: AlgebraElement,
}

/// Builds the chart point with the given fiber data.
pub fn chart_point(m: &AdjointModule, data: &FiberData) -> Result<AlgebraElement> {
    let inner = m.g.exp_apply(&data.x, &m.v)?;
    let outer = m.g.exp_apply(&m.w.scale(&data.c), &inner)?;
    m.g.d_scale(&data.t, &outer)
}

/// Recovers the fiber data of a chart point: the highest coefficient is
/// `t`, the grade 1 part brackets back to `x` against the lowest vector,
/// and after undoing both the residual grade 0 part is `-c z`.
pub fn fiber_decomposition(m: &AdjointModule, xi: &AlgebraElement) -> Result<FiberData> {
    let t = xi.get(m.v_index);
    if t.is_zero() {
        return Err(crate::Error::NotOnCone);
    }
    let x = m.g.bracket(&m.g.grade_project(xi, 1), &m.w);
    let unscaled = m.g.d_scale(&(Q::one() / &t), xi)?;
    let undone = m.g.exp_apply(&x.neg(), &unscaled)?;
    let c = -m.z_scalar(&m.g.grade_project(&undone, 0));
    Ok(FiberData { t, c, x })
}

/// Weight support of an element: the roots whose lines carry a nonzero
/// coefficient, ignoring the Cartan part.
pub fn weight_support(m: &AdjointModule, y: &AlgebraElement) -> Vec<Root> {
    y.support()
        .filter_map(|i| m.g.root_of_index(i).cloned())
        .collect()
}

/// Weights of the given grade within a support.
pub fn support_in_grade<'a>(m: &AdjointModule, support: &'a [Root], n: i64) -> Vec<&'a Root> {
    support.iter().filter(|r| r.0[m.mark] == n).collect()
}

/// Stability of a weight support: zero must be interior to its hull.
pub fn hilbert_mumford_stable(support: &[Root], rank: usize) -> InteriorResult {
    let points: Vec<Vec<i64>> = support.iter().map(|r| r.0.clone()).collect();
    linalg::zero_in_interior(&points, rank)
}

/// Sufficient criterion for a trivial torus stabiliser: the differences of
/// support weights generate the full root lattice.
pub fn generates_root_lattice(support: &[Root], rank: usize) -> bool {
    if support.len() < 2 {
        return false;
    }
    let base = &support[0];
    let rows: Vec<Vec<i64>> = support[1..].iter().map(|r| r.sub(base).0).collect();
    let diag = linalg::smith_diagonal(&rows);
    diag.len() == rank && diag.iter().all(One::is_one)
}

/// The unordered pairs of grade-0 roots with pairing 1; condition (i) of
/// the fatness test quantifies over exactly these.
pub fn close_gprime_pairs(m: &AdjointModule) -> Vec<(Root, Root)> {
    let zeros: Vec<&Root> = m.g.rs.roots.iter().filter(|r| r.0[m.mark] == 0).collect();
    let mut out = Vec::new();
    for i in 0..zeros.len() {
        for j in (i + 1)..zeros.len() {
            if m.g.rs.pairing(zeros[i], zeros[j]) == qi(1) {
                out.push((zeros[i].clone(), zeros[j].clone()));
            }
        }
    }
    out
}

/// Fatness of a support: every close grade-0 pair meets it, and both grade
/// ±1 parts are populated.
pub fn is_fat(m: &AdjointModule, pairs: &[(Root, Root)], support: &[Root]) -> bool {
    let set: HashSet<&Root> = support.iter().collect();
    let grades: HashSet<i64> = support.iter().map(|r| r.0[m.mark]).collect();
    grades.contains(&1)
        && grades.contains(&-1)
        && pairs
            .iter()
            .all(|(a, b)| set.contains(a) || set.contains(b))
}

/// Random fat support: a random set of roots repaired until it satisfies
/// both fatness conditions. Repairs only ever add roots, so one pass over
/// the pair list suffices.
pub fn sample_fat_support<R: Rng>(
    m: &AdjointModule,
    pairs: &[(Root, Root)],
    rng: &mut R,
) -> Vec<Root> {
    let mut set: HashSet<Root> = m
        .g
        .rs
        .roots
        .iter()
        .filter(|_| rng.random_bool(0.4))
        .cloned()
        .collect();
    for (a, b) in pairs {
        if !set.contains(a) && !set.contains(b) {
            set.insert(if rng.random_bool(0.5) { a.clone() } else { b.clone() });
        }
    }
    for want in [1i64, -1] {
        if !set.iter().any(|r| r.0[m.mark] == want) {
            let candidates: Vec<&Root> =
                m.g.rs.roots.iter().filter(|r| r.0[m.mark] == want).collect();
            set.insert(candidates[rng.random_range(0..candidates.len())].clone());
        }
    }
    let mut out: Vec<Root> = set.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Triviality of the grade -2 stabilisers of the two extremal vectors of
/// the upper grades, plus the exhaustive grade 1 version.
fn annihilator_checks(m: &AdjointModule) -> Vec<Check> {
    let g = &m.g;
    let top = g.bracket(&m.w, &m.v);
    let highest_ok = top == m.z.neg() && !top.is_zero();

    let alpha = Root::simple(g.rank, m.mark);
    let next = g.bracket(&g.root_vector(&alpha.neg()).unwrap(), &m.v);
    let moved = g.bracket(&m.w, &next);
    let adjacent_ok =
        !next.is_zero() && moved == g.root_vector(&alpha.neg()).unwrap().neg();

    let all_grade_one = m
        .plus_indices
        .iter()
        .all(|&i| !g.bracket(&m.w, &AlgebraElement::basis(i)).is_zero());

    vec![
        Check::with_detail(
            "annihilator-highest",
            "the lowest root vector does not annihilate the highest vector",
            highest_ok,
            "[w, v] = -z".to_string(),
        ),
        Check::with_detail(
            "annihilator-adjacent",
            "the lowest root vector does not annihilate the adjacent weight vector",
            adjacent_ok,
            "[w, [X_{-alpha}, v]] = -X_{-alpha}".to_string(),
        ),
        Check::with_detail(
            "annihilator-grade-one",
            "no grade 1 weight vector is annihilated by the lowest root vector",
            all_grade_one,
            format!("{} weight lines", m.plus_indices.len()),
        ),
    ]
}

/// Full orbit suite: samples both cones and checks equations, tangents,
/// the fiber decomposition and the projection formulas.
pub fn orbit_checks(m: &AdjointModule, samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = &m.g;
    let oracle = tangent_dim_oracle(m);

    let mut cone_ok = true;
    let mut cone_detail = None;
    let mut dim_ok = true;
    let mut pairing_ok = true;
    let mut quadric_ok = true;
    let mut fixes_ok = true;
    let mut fiber_ok = true;
    let mut scaling_ok = true;
    let mut branch_ok = true;

    for _ in 0..samples {
        let pt = sample_gprime_point(m, &mut rng);
        let x = &pt.vector;

        let (on, detail) = on_gprime_cone(m, x);
        if !on {
            cone_ok = false;
            cone_detail = detail;
        }

        let rows = tangent_rows(m, x);
        let dim = linalg::rank(&rows);
        dim_ok &= dim == oracle;

        // A random tangent vector: combination of a few spanning rows.
        let mut a = x.scale(&sample_small(&mut rng));
        for _ in 0..3 {
            let u = AlgebraElement::basis(m.zero_indices[rng.random_range(0..m.zero_indices.len())]);
            a = a.add(&g.bracket(&u, x).scale(&sample_small(&mut rng)));
        }
        pairing_ok &= m.symplectic(x, &a).is_zero() && m.p2(x, &a).is_zero();

        // The quadric equations cut exactly the tangent space.
        let kernel = quadric_kernel(m, x);
        quadric_ok &= kernel.len() == dim;
        for kv in &kernel {
            let el = AlgebraElement::from_pairs(
                kv.iter()
                    .enumerate()
                    .map(|(k, c)| (m.minus_indices[k] as u32, c.clone()))
                    .collect(),
            );
            quadric_ok &= tangent_member(m, x, &el) && m.symplectic(x, &el).is_zero();
        }

        // Tangent directions fix the image of x upstairs, exactly.
        let xv = g.bracket(x, &m.v);
        fixes_ok &= g.exp_apply(&a, &xv).map(|e| e == xv).unwrap_or(false);

        // Fiber decomposition round trip through a generic chart point.
        let data = FiberData {
            t: sample_small_nonzero(&mut rng),
            c: sample_small(&mut rng),
            x: m.sample_minus_one(&mut rng),
        };
        match chart_point(m, &data).and_then(|xi| {
            let rec = fiber_decomposition(m, &xi)?;
            let rebuilt = chart_point(m, &rec)?;
            Ok((rec, rebuilt, xi))
        }) {
            Ok((rec, rebuilt, xi)) => fiber_ok &= rec == data && rebuilt == xi,
            Err(_) => fiber_ok = false,
        }

        // The derived grade-0 projection scales by 1/t along the torus.
        let x0 = m.sample_minus_one(&mut rng);
        let t = sample_small_nonzero(&mut rng);
        let xi = g.d_scale(&t, &m.exp_v(&x0)).expect("graded");
        let part = m.gprime_project(&g.grade_project(&xi, 0));
        scaling_ok &= part == m.p(&x0).scale(&(Q::one() / &t));

        // Degenerate branch: applying exp(y) to the image of a cone point
        // keeps the top coordinate zero, fixes grade 1, and lands the
        // grade 0 part on the polarized quadric and pairing values.
        let y = m.sample_minus_one(&mut rng);
        let eta = g.exp_apply(&y, &xv).expect("grade -1 is nilpotent");
        let eta0 = g.grade_project(&eta, 0);
        branch_ok &= g.grade_project(&eta, 2).is_zero()
            && g.grade_project(&eta, 1) == xv
            && m.gprime_project(&eta0) == m.p2(x, &y).scale(&qi(2))
            && m.z_scalar(&eta0) == m.symplectic(x, &y) / qi(2);
    }

    let mut checks = vec![
        Check::with_detail(
            "cone-equation",
            "sampled orbit points satisfy the quadratic cone equations",
            cone_ok,
            cone_detail.unwrap_or_else(|| format!("{samples} samples")),
        ),
        Check::with_detail(
            "tangent-dim",
            "tangent dimension is constant and matches the root count",
            dim_ok,
            format!("dimension {oracle}"),
        ),
        Check::new(
            "tangent-pairing",
            "tangent vectors pair to zero with the base point",
            pairing_ok,
        ),
        Check::new(
            "tangent-quadric",
            "the polarized quadric cuts exactly the tangent space",
            quadric_ok,
        ),
        Check::new(
            "exp-fixes-tangent",
            "exponentials of tangent vectors fix the image of the point",
            fixes_ok,
        ),
        Check::new(
            "fiber-roundtrip",
            "chart points decompose and rebuild exactly",
            fiber_ok,
        ),
        Check::new(
            "projection-scaling",
            "the grade 0 projection scales inversely along the torus",
            scaling_ok,
        ),
        Check::new(
            "degenerate-branch",
            "top-coordinate-free points keep their grade 1 part and quadric value",
            branch_ok,
        ),
    ];
    checks.extend(annihilator_checks(m));
    checks
}

/// Stability suite: random fat supports must be stable with trivial torus
/// stabiliser; any counterexample is reported with its certificate.
pub fn stability_checks(m: &AdjointModule, supports: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = close_gprime_pairs(m);
    let rank = m.g.rank;

    let mut all_fat = true;
    let mut all_stable = true;
    let mut all_trivial = true;
    let mut witness = None;
    for _ in 0..supports {
        let support = sample_fat_support(m, &pairs, &mut rng);
        if !is_fat(m, &pairs, &support) {
            all_fat = false;
        }
        let hm = hilbert_mumford_stable(&support, rank);
        if !hm.interior {
            all_stable = false;
            witness = Some(format!("separating functional {:?}", hm.separating));
        }
        if !generates_root_lattice(&support, rank) {
            all_trivial = false;
        }
    }

    // The full root set is the support of a generic point and must pass;
    // a single weight line never does.
    let everything: Vec<Root> = m.g.rs.roots.clone();
    let full_ok = hilbert_mumford_stable(&everything, rank).interior
        && generates_root_lattice(&everything, rank);
    let single = vec![m.g.rs.highest_root().clone()];
    let single_hm = hilbert_mumford_stable(&single, rank);
    let single_ok = !single_hm.interior && single_hm.separating.is_some();

    // With no close pairs the first fatness condition is vacuous and the
    // implication has no content; the detail makes a failure readable.
    let pair_note = if pairs.is_empty() {
        format!("{supports} supports, no close pairs: fatness is vacuous here")
    } else {
        format!("{supports} supports over {} close pairs", pairs.len())
    };

    vec![
        Check::with_detail(
            "fat-sampler",
            "repaired random supports satisfy both fatness conditions",
            all_fat,
            pair_note.clone(),
        ),
        Check::with_detail(
            "fat-implies-stable",
            "every sampled fat support is Hilbert-Mumford stable",
            all_stable,
            witness.unwrap_or(pair_note),
        ),
        Check::new(
            "fat-implies-trivial-stabiliser",
            "every sampled fat support generates the root lattice",
            all_trivial,
        ),
        Check::new(
            "full-support-stable",
            "the full root set is stable with trivial stabiliser",
            full_ok,
        ),
        Check::new(
            "single-weight-unstable",
            "a single weight line is separated by a functional",
            single_ok,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SignConvention;
    use rand::rngs::StdRng;

    fn module(case: &str) -> AdjointModule {
        AdjointModule::from_case(case, SignConvention::default()).unwrap()
    }

    #[test]
    fn small_case_tangent_dimensions_are_frozen() {
        let expect = [("G2:a2", 2), ("B3:a2", 3), ("F4:a1", 7)];
        let mut rng = StdRng::seed_from_u64(5);
        for (case, dim) in expect {
            let m = module(case);
            assert_eq!(tangent_dim_oracle(&m), dim, "{case} oracle");
            for _ in 0..4 {
                let pt = sample_gprime_point(&m, &mut rng);
                assert_eq!(tangent_dim(&m, &pt.vector), dim, "{case} sample");
                assert!(m.p(&pt.vector).is_zero(), "{case} cone equation");
            }
        }
    }

    #[test]
    fn extremal_vector_sits_on_the_cone() {
        for case in ["G2:a2", "B3:a2", "F4:a1", "E7:a1"] {
            let m = module(case);
            let x = extremal_minus_vector(&m);
            assert!(m.p(&x).is_zero(), "{case}");
            assert!(m.q_cubic(&x).is_zero(), "{case}");
            assert!(m.r_quartic(&x).is_zero(), "{case}");
        }
    }

    #[test]
    fn fiber_recovery_is_exact_for_every_grade_minus_one_point() {
        let m = module("B3:a2");
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let data = FiberData {
                t: crate::rat::sample_small_nonzero(&mut rng),
                c: crate::rat::sample_small(&mut rng),
                x: m.sample_minus_one(&mut rng),
            };
            let xi = chart_point(&m, &data).unwrap();
            let rec = fiber_decomposition(&m, &xi).unwrap();
            assert_eq!(rec, data);
        }
    }

    #[test]
    fn decomposition_needs_a_top_coefficient() {
        let m = module("G2:a2");
        let x = extremal_minus_vector(&m);
        let xv = m.g.bracket(&x, &m.v);
        assert!(matches!(
            fiber_decomposition(&m, &xv),
            Err(crate::Error::NotOnCone)
        ));
    }

    #[test]
    fn exhaustive_annihilators_on_the_smallest_case() {
        let m = module("G2:a2");
        // Every basis vector of every negative grade against every weight
        // vector of the two top grades: only genuine weight arithmetic may
        // vanish, and the two extremal vectors are never annihilated.
        for c in annihilator_checks(&m) {
            assert!(c.pass, "{} failed", c.id);
        }
        for &i in m.minus_indices.iter().chain([m.w_index].iter()) {
            for &j in m.plus_indices.iter().chain([m.v_index].iter()) {
                let b = m.g.bracket(&AlgebraElement::basis(i), &AlgebraElement::basis(j));
                let ri = m.g.root_of_index(i).unwrap();
                let rj = m.g.root_of_index(j).unwrap();
                let sum = ri.add(rj);
                // A bracket of root vectors vanishes exactly when the sum
                // is neither a root nor zero.
                assert_eq!(
                    b.is_zero(),
                    !m.g.rs.is_root(&sum) && !sum.is_zero(),
                    "bracket support mismatch at {ri:?} + {rj:?}"
                );
            }
        }
    }

    #[test]
    fn whole_root_system_is_stable_but_one_orbit_is_not() {
        let m = module("B3:a2");
        let rank = m.g.rank;
        let all: Vec<Root> = m.g.rs.roots.clone();
        assert!(hilbert_mumford_stable(&all, rank).interior);
        assert!(generates_root_lattice(&all, rank));

        let single = vec![m.g.rs.highest_root().clone()];
        let res = hilbert_mumford_stable(&single, rank);
        assert!(!res.interior);
        // The certificate really separates.
        let phi = res.separating.unwrap();
        let val: Q = single[0]
            .0
            .iter()
            .zip(&phi)
            .map(|(&a, b)| qi(a) * b)
            .sum();
        assert!(val >= Q::zero());

        // Positive roots only: never stable, zero is on the boundary.
        let pos: Vec<Root> = m.g.rs.positive.clone();
        assert!(!hilbert_mumford_stable(&pos, rank).interior);
    }

    #[test]
    fn orbit_suite_passes_on_small_cases() {
        for case in ["G2:a2", "B3:a2"] {
            let m = module(case);
            for c in orbit_checks(&m, 6, 17) {
                assert!(c.pass, "{case}: {} failed", c.id);
            }
        }
    }

    #[test]
    fn fatness_only_controls_stability_in_the_big_case() {
        // The grade-0 subsystems of the small cases have no close root
        // pairs at all, so condition (i) is vacuous there and fat supports
        // can be tiny and unstable. The implication is a fact about the
        // 56-dimensional module, not about five-term gradings in general.
        let m = module("G2:a2");
        let pairs = close_gprime_pairs(&m);
        assert!(pairs.is_empty());
        let mut rng = StdRng::seed_from_u64(23);
        let mut found_unstable = false;
        for _ in 0..60 {
            let support = sample_fat_support(&m, &pairs, &mut rng);
            assert!(is_fat(&m, &pairs, &support));
            if !hilbert_mumford_stable(&support, m.g.rank).interior {
                found_unstable = true;
                break;
            }
        }
        assert!(found_unstable, "every sampled fat support was stable");
    }

    #[test]
    fn stability_suite_passes_on_the_big_case() {
        let m = module("E8:a8");
        assert_eq!(tangent_dim_oracle(&m), 28);
        let pairs = close_gprime_pairs(&m);
        // Each of the 126 grade-0 roots is close to 32 others.
        assert_eq!(pairs.len(), 126 * 32 / 2);
        for c in stability_checks(&m, 25, 23) {
            assert!(c.pass, "{} failed", c.id);
        }
    }

    #[test]
    fn orbit_suite_holds_under_the_other_convention() {
        let m = AdjointModule::from_case("B3:a2", SignConvention::ExtraspecialNegative).unwrap();
        for c in orbit_checks(&m, 4, 29) {
            assert!(c.pass, "{} failed", c.id);
        }
    }
}
