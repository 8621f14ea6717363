//! Split simple Lie algebras over the rationals in a Chevalley basis.
//!
//! The basis is `h_1 .. h_rank` (simple coroots) followed by one root vector
//! per root, ordered by height then lexicographically. Structure constants
//! are integers; they are produced by fixing the signs of the extraspecial
//! pairs and propagating everything else through the Jacobi identity, so the
//! table is correct by construction and double-checked against the
//! root-string lengths.
//!
//! When a simple root is marked, the algebra carries the associated Z-grading
//! by the coefficient on that root, and grading-aware operations (projections,
//! one-parameter scalings) become available.

use crate::linalg;
use crate::rat::{qi, qpow, Q};
use crate::roots::{CartanType, Root, RootSystem};
use crate::{Error, Result};
use num::{One, Zero};
use serde_json::json;
use std::collections::{BTreeMap, HashMap};

/// Choice of signs for the extraspecial structure constants. Either choice
/// yields a Chevalley basis; keeping both around lets every downstream
/// computation be replayed under a genuinely different but equally valid
/// basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SignConvention {
    #[default]
    ExtraspecialPositive,
    ExtraspecialNegative,
}

/// Sparse element of the algebra: sorted `(basis index, coefficient)` pairs
/// with no explicit zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    pub coeffs: Vec<(u32, Q)>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { coeffs: Vec::new() }
    }

    pub fn basis(i: usize) -> Self {
        AlgebraElement {
            coeffs: vec![(i as u32, Q::one())],
        }
    }

    pub fn from_pairs(pairs: Vec<(u32, Q)>) -> Self {
        let mut pairs = pairs;
        pairs.sort_by_key(|(i, _)| *i);
        let mut coeffs: Vec<(u32, Q)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match coeffs.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => coeffs.push((i, c)),
            }
        }
        coeffs.retain(|(_, c)| !c.is_zero());
        AlgebraElement { coeffs }
    }

    pub fn from_dense(dense: Vec<Q>) -> Self {
        AlgebraElement {
            coeffs: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.coeffs.binary_search_by_key(&(i as u32), |(j, _)| *j) {
            Ok(p) => self.coeffs[p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut a, mut b) = (self.coeffs.iter().peekable(), other.coeffs.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let s = x + y;
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (Some(_), Some((j, y))) => {
                    out.push((*j, y.clone()));
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        AlgebraElement { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().map(|(i, _)| *i as usize)
    }
}

/// A split simple Lie algebra in a Chevalley basis, optionally graded by a
/// marked simple root.
pub struct GradedAlgebra {
    pub rs: RootSystem,
    pub sign: SignConvention,
    pub dim: usize,
    pub rank: usize,
    /// Marked simple root (zero-based) when the algebra is graded.
    pub mark: Option<usize>,
    grades: Vec<i64>,
    /// Sparse bracket of basis pairs, flat row-major: entry `i*dim + j`.
    table: Vec<Vec<(u32, i64)>>,
}

impl GradedAlgebra {
    pub fn new(t: CartanType, sign: SignConvention) -> Self {
        Self::build(t, None, sign)
    }

    pub fn graded(t: CartanType, mark: usize, sign: SignConvention) -> Result<Self> {
        if mark >= t.rank {
            return Err(Error::Invalid(format!(
                "mark a{} out of range for {t}",
                mark + 1
            )));
        }
        Ok(Self::build(t, Some(mark), sign))
    }

    fn build(t: CartanType, mark: Option<usize>, sign: SignConvention) -> Self {
        let rs = RootSystem::new(t);
        let rank = rs.rank;
        let nroots = rs.root_count();
        let dim = rank + nroots;

        let npos = positive_constants(&rs, sign);
        let pos_map: HashMap<&Root, usize> =
            rs.positive.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let full_n = |b: &Root, g: &Root| -> i64 { signed_constant(&rs, &npos, &pos_map, b, g) };

        let mut table = vec![Vec::new(); dim * dim];
        for (bi, beta) in rs.roots.iter().enumerate() {
            let i = rank + bi;
            // [h_a, e_beta] and [e_beta, h_a].
            for a in 0..rank {
                let c = rs.wcoord(beta, a);
                if c != 0 {
                    table[a * dim + i] = vec![(i as u32, c)];
                    table[i * dim + a] = vec![(i as u32, -c)];
                }
            }
            for (gi, gamma) in rs.roots.iter().enumerate() {
                let j = rank + gi;
                let sum = beta.add(gamma);
                if sum.0.iter().all(|&c| c == 0) {
                    // [e_beta, e_{-beta}] is the coroot of beta.
                    let norm = rs.norm(beta);
                    let mut entry = Vec::new();
                    for a in 0..rank {
                        if beta.0[a] != 0 {
                            let k = qi(beta.0[a]) * &rs.norms[a] / &norm;
                            assert!(k.is_integer(), "coroot coefficient must be integral");
                            entry.push((a as u32, int_value(&k)));
                        }
                    }
                    table[i * dim + j] = entry;
                } else if let Some(si) = rs.index_of(&sum) {
                    let n = full_n(beta, gamma);
                    table[i * dim + j] = vec![((rank + si) as u32, n)];
                }
            }
        }

        // Cross-check every constant against the root-string length.
        for beta in &rs.roots {
            for gamma in &rs.roots {
                if rs.is_root(&beta.add(gamma)) {
                    let p = string_down(&rs, gamma, beta);
                    let n = full_n(beta, gamma);
                    assert_eq!(
                        n.unsigned_abs() as i64,
                        p + 1,
                        "structure constant magnitude must be p+1"
                    );
                }
            }
        }

        let grades: Vec<i64> = (0..dim)
            .map(|i| match (mark, i.checked_sub(rank)) {
                (Some(m), Some(ri)) => rs.roots[ri].0[m],
                _ => 0,
            })
            .collect();

        GradedAlgebra {
            rs,
            sign,
            dim,
            rank,
            mark,
            grades,
            table,
        }
    }

    /// The bracket of two basis elements as a sparse list of terms.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        // Small operands skip the dense scratch vector entirely.
        if x.coeffs.len() * y.coeffs.len() <= 64 {
            let mut pairs = Vec::new();
            for (i, ci) in &x.coeffs {
                let base = *i as usize * self.dim;
                for (j, cj) in &y.coeffs {
                    for (k, n) in &self.table[base + *j as usize] {
                        pairs.push((*k, ci * cj * qi(*n)));
                    }
                }
            }
            return AlgebraElement::from_pairs(pairs);
        }
        let mut dense = vec![Q::zero(); self.dim];
        for (i, ci) in &x.coeffs {
            let base = *i as usize * self.dim;
            for (j, cj) in &y.coeffs {
                let entry = &self.table[base + *j as usize];
                if entry.is_empty() {
                    continue;
                }
                let prod = ci * cj;
                for (k, n) in entry {
                    dense[*k as usize] += &prod * qi(*n);
                }
            }
        }
        AlgebraElement::from_dense(dense)
    }

    /// `exp(ad x)` applied to `y`; fails if the series does not terminate.
    pub fn exp_apply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let mut acc = y.clone();
        let mut term = y.clone();
        for k in 1..=self.dim as i64 + 1 {
            term = self.bracket(x, &term).scale(&(Q::one() / qi(k)));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&term);
        }
        Err(Error::NotNilpotent)
    }

    pub fn cartan(&self, i: usize) -> AlgebraElement {
        assert!(i < self.rank);
        AlgebraElement::basis(i)
    }

    pub fn root_vector_index(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r).map(|i| self.rank + i)
    }

    pub fn root_vector(&self, r: &Root) -> Result<AlgebraElement> {
        self.root_vector_index(r)
            .map(AlgebraElement::basis)
            .ok_or_else(|| Error::Invalid(format!("{:?} is not a root", r.0)))
    }

    pub fn root_of_index(&self, i: usize) -> Option<&Root> {
        i.checked_sub(self.rank).map(|ri| &self.rs.roots[ri])
    }

    /// The coroot `r^vee` as an element of the Cartan subalgebra.
    pub fn coroot(&self, r: &Root) -> AlgebraElement {
        let norm = self.rs.norm(r);
        let pairs = (0..self.rank)
            .filter(|&a| r.0[a] != 0)
            .map(|a| {
                let k = qi(r.0[a]) * &self.rs.norms[a] / &norm;
                assert!(k.is_integer());
                (a as u32, k)
            })
            .collect();
        AlgebraElement::from_pairs(pairs)
    }

    pub fn grade_of_index(&self, i: usize) -> i64 {
        self.grades[i]
    }

    pub fn grade_project(&self, x: &AlgebraElement, n: i64) -> AlgebraElement {
        AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .filter(|(i, _)| self.grades[*i as usize] == n)
                .cloned()
                .collect(),
        }
    }

    pub fn grade_parts(&self, x: &AlgebraElement) -> BTreeMap<i64, AlgebraElement> {
        let mut parts: BTreeMap<i64, Vec<(u32, Q)>> = BTreeMap::new();
        for (i, c) in &x.coeffs {
            parts
                .entry(self.grades[*i as usize])
                .or_default()
                .push((*i, c.clone()));
        }
        parts
            .into_iter()
            .map(|(n, coeffs)| (n, AlgebraElement { coeffs }))
            .collect()
    }

    /// Dimensions of the graded pieces `g_n` for `n` in `-m ..= m`.
    pub fn grade_dims(&self) -> Result<Vec<usize>> {
        let mark = self.mark.ok_or(Error::Ungraded)?;
        let m = self.rs.highest_root().0[mark];
        let mut dims = vec![0usize; (2 * m + 1) as usize];
        for i in 0..self.dim {
            dims[(self.grades[i] + m) as usize] += 1;
        }
        Ok(dims)
    }

    /// The semisimple element acting on `g_n` with eigenvalue `n`.
    pub fn grading_element(&self) -> Result<AlgebraElement> {
        let mark = self.mark.ok_or(Error::Ungraded)?;
        let a: Vec<Vec<Q>> = self
            .rs
            .cartan
            .iter()
            .map(|row| row.iter().map(|&v| qi(v)).collect())
            .collect();
        let mut rhs = vec![Q::zero(); self.rank];
        rhs[mark] = Q::one();
        let c = linalg::solve(&a, &rhs).expect("Cartan matrix is invertible");
        Ok(AlgebraElement::from_pairs(
            c.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i as u32, v))
                .collect(),
        ))
    }

    /// Rescales `e_beta` by `t^<beta, lambda>` for an integer cocharacter
    /// `lambda` in the basis dual to the simple roots; fixes the Cartan.
    pub fn torus_scale(&self, lambda: &[i64], t: &Q, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(lambda.len(), self.rank);
        assert!(!t.is_zero(), "torus parameter must be invertible");
        AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .map(|(i, c)| {
                    let e = match self.root_of_index(*i as usize) {
                        Some(r) => r.0.iter().zip(lambda).map(|(a, b)| a * b).sum(),
                        None => 0,
                    };
                    (*i, c * qpow(t, e))
                })
                .collect(),
        }
    }

    /// Scales the grade-`n` part by `t^(n-1)`: the vector-field action of the
    /// one-parameter group attached to the grading, shifted for the affine
    /// chart based at grade one.
    pub fn d_scale(&self, t: &Q, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.mark.ok_or(Error::Ungraded)?;
        assert!(!t.is_zero());
        Ok(AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c * qpow(t, self.grades[*i as usize] - 1)))
                .collect(),
        })
    }

    /// Scales the grade-`n` part by `t^n`: conjugation action on the algebra.
    pub fn ad_grade_scale(&self, t: &Q, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.mark.ok_or(Error::Ungraded)?;
        assert!(!t.is_zero());
        Ok(AlgebraElement {
            coeffs: x
                .coeffs
                .iter()
                .map(|(i, c)| (*i, c * qpow(t, self.grades[*i as usize])))
                .collect(),
        })
    }

    pub fn describe_basis(&self, i: usize) -> String {
        match self.root_of_index(i) {
            None => format!("h{}", i + 1),
            Some(r) => format!(
                "e[{}]",
                r.0.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<_> = (0..self.dim)
            .map(|i| match self.root_of_index(i) {
                None => json!({"kind": "cartan", "index": i + 1}),
                Some(r) => json!({"kind": "root", "coeffs": r.0, "grade": self.grades[i]}),
            })
            .collect();
        let mut constants = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, n) in &self.table[i * self.dim + j] {
                    constants.push(json!([i, j, *k, *n]));
                }
            }
        }
        json!({
            "type": self.rs.cartan_type.to_string(),
            "dim": self.dim,
            "mark": self.mark.map(|m| format!("a{}", m + 1)),
            "grading": self.mark.map(|_| self.grade_dims().unwrap()),
            "basis": basis,
            "constants": constants,
        })
    }
}

/// Largest `k >= 0` with `gamma - k*beta` a root.
fn string_down(rs: &RootSystem, gamma: &Root, beta: &Root) -> i64 {
    let mut p = 0;
    let mut cur = gamma.sub(beta);
    while rs.is_root(&cur) {
        p += 1;
        cur = cur.sub(beta);
    }
    p
}

/// Structure constants on ordered pairs of positive roots whose sum is a
/// root, keyed by positive-root indices. Extraspecial pairs get `p+1` with
/// the convention sign; all other values follow from the Jacobi identity.
fn positive_constants(rs: &RootSystem, sign: SignConvention) -> HashMap<(usize, usize), i64> {
    let pos = &rs.positive;
    let np = pos.len();
    let pos_map: HashMap<&Root, usize> = pos.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut lex: Vec<usize> = (0..np).collect();
    lex.sort_by_key(|&i| pos[i].0.clone());

    let mut npos: HashMap<(usize, usize), i64> = HashMap::new();
    // Positive roots are already sorted by height, so every value the
    // recursion consults has been filled in by the time it is needed.
    for xi in pos {
        if xi.height() < 2 {
            continue;
        }
        let Some((a1, b1)) = lex
            .iter()
            .find_map(|&ai| pos_map.get(&xi.sub(&pos[ai])).map(|&bi| (ai, bi)))
        else {
            unreachable!("every non-simple positive root decomposes")
        };
        let p = string_down(rs, &pos[b1], &pos[a1]);
        let base = match sign {
            SignConvention::ExtraspecialPositive => p + 1,
            SignConvention::ExtraspecialNegative => -(p + 1),
        };
        npos.insert((a1, b1), base);
        npos.insert((b1, a1), -base);

        for &ai in &lex {
            if ai == a1 {
                continue;
            }
            let Some(&bi) = pos_map.get(&xi.sub(&pos[ai])) else {
                continue;
            };
            if pos[ai].0 >= pos[bi].0 {
                continue; // handled from the other side by antisymmetry
            }
            let alpha = &pos[ai];
            let beta = &pos[bi];
            let alpha1 = &pos[a1];
            let beta1 = &pos[b1];
            let mut t = Q::zero();
            let gamma = alpha.sub(alpha1);
            if let Some(&gi) = pos_map.get(&gamma) {
                t += rs.norm(&gamma) / rs.norm(alpha)
                    * qi(npos[&(a1, gi)])
                    * qi(npos[&(gi, bi)]);
            }
            let delta = beta.sub(alpha1);
            if let Some(&di) = pos_map.get(&delta) {
                t -= rs.norm(&delta) / rs.norm(beta)
                    * qi(npos[&(a1, di)])
                    * qi(npos[&(di, ai)]);
            }
            let val = rs.norm(xi) / rs.norm(beta1) * t / qi(npos[&(a1, b1)]);
            assert!(val.is_integer(), "structure constant must be integral");
            let val = int_value(&val);
            npos.insert((ai, bi), val);
            npos.insert((bi, ai), -val);
        }
    }
    npos
}

/// Structure constant `N(beta, gamma)` for arbitrary roots with
/// `beta + gamma` a root, reduced to the positive table through the cyclic
/// identity `N(a,b)/(c,c) = N(b,c)/(a,a)` for `a + b + c = 0`.
fn signed_constant(
    rs: &RootSystem,
    npos: &HashMap<(usize, usize), i64>,
    pos_map: &HashMap<&Root, usize>,
    beta: &Root,
    gamma: &Root,
) -> i64 {
    let bp = beta.is_positive();
    let gp = gamma.is_positive();
    match (bp, gp) {
        (true, true) => npos[&(pos_map[beta], pos_map[gamma])],
        (false, false) => -signed_constant(rs, npos, pos_map, &beta.neg(), &gamma.neg()),
        (true, false) => {
            let delta = beta;
            let sigma = gamma.neg();
            let eta = delta.sub(&sigma);
            let val = if eta.is_positive() {
                -rs.norm(&eta) / rs.norm(delta)
                    * qi(npos[&(pos_map[&sigma], pos_map[&eta])])
            } else {
                let eta = eta.neg();
                rs.norm(&eta) / rs.norm(&sigma)
                    * qi(npos[&(pos_map[&eta], pos_map[delta])])
            };
            assert!(val.is_integer(), "mixed-sign constant must be integral");
            int_value(&val)
        }
        (false, true) => -signed_constant(rs, npos, pos_map, gamma, beta),
    }
}

fn int_value(v: &Q) -> i64 {
    use num::ToPrimitive;
    v.to_integer().to_i64().expect("value fits in i64")
}

/// Case label like `E8:a8`: a Cartan type and a marked simple root.
pub fn parse_case(s: &str) -> Result<(CartanType, usize)> {
    let (ty, mk) = s
        .split_once(':')
        .ok_or_else(|| Error::Invalid(format!("expected TYPE:MARK, got {s:?}")))?;
    let t = CartanType::parse(ty)?;
    let mk = mk.trim();
    let digits = mk
        .strip_prefix("alpha")
        .or_else(|| mk.strip_prefix('a'))
        .unwrap_or(mk);
    let idx: usize = digits
        .parse()
        .map_err(|_| Error::Invalid(format!("bad mark {mk:?}")))?;
    if idx == 0 || idx > t.rank {
        return Err(Error::Invalid(format!("mark a{idx} out of range for {t}")));
    }
    Ok((t, idx - 1))
}

pub fn format_case(t: CartanType, mark: usize) -> String {
    format!("{t}:a{}", mark + 1)
}

/// Marked types `(type, node)` whose grading has exactly the grades
/// `-2 ..= 2`: the coefficient of the node in the highest root is 2.
pub fn five_term_gradings(max_rank: usize) -> Vec<(CartanType, usize)> {
    let mut out = Vec::new();
    for t in CartanType::enumerate_up_to_rank(max_rank) {
        let rs = RootSystem::new(t);
        let theta = rs.highest_root();
        for i in 0..t.rank {
            if theta.0[i] == 2 {
                out.push((t, i));
            }
        }
    }
    out
}

/// Five-term gradings by a long root whose top piece is one-dimensional:
/// the gradings for which the whole tensor construction goes through.
pub fn adjoint_fundamental_gradings(max_rank: usize) -> Vec<(CartanType, usize)> {
    let mut out = Vec::new();
    for t in CartanType::enumerate_up_to_rank(max_rank) {
        let rs = RootSystem::new(t);
        let theta = rs.highest_root().clone();
        for i in 0..t.rank {
            if theta.0[i] != 2 || !rs.is_long(&Root::simple(t.rank, i)) {
                continue;
            }
            let top = rs.roots.iter().filter(|r| r.0[i] == 2).count();
            if top == 1 {
                out.push((t, i));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn alg(s: &str) -> GradedAlgebra {
        GradedAlgebra::new(CartanType::parse(s).unwrap(), SignConvention::default())
    }

    fn jacobi_holds(g: &GradedAlgebra, x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> bool {
        let a = g.bracket(&g.bracket(x, y), z);
        let b = g.bracket(&g.bracket(y, z), x);
        let c = g.bracket(&g.bracket(z, x), y);
        a.add(&b).add(&c).is_zero()
    }

    #[test]
    fn sl2_relations() {
        let g = alg("A1");
        let h = g.cartan(0);
        let e = g.root_vector(&Root(vec![1])).unwrap();
        let f = g.root_vector(&Root(vec![-1])).unwrap();
        assert_eq!(g.bracket(&h, &e), e.scale(&qi(2)));
        assert_eq!(g.bracket(&h, &f), f.scale(&qi(-2)));
        assert_eq!(g.bracket(&e, &f), h);
        // exp(ad e) f = f + h - e.
        let expect = f.add(&h).sub(&e);
        assert_eq!(g.exp_apply(&e, &f).unwrap(), expect);
    }

    #[test]
    fn a2_constants_are_unimodular() {
        let g = alg("A2");
        let e1 = g.root_vector(&Root(vec![1, 0])).unwrap();
        let e2 = g.root_vector(&Root(vec![0, 1])).unwrap();
        let e12 = g.root_vector(&Root(vec![1, 1])).unwrap();
        // The extraspecial pair for [1,1] is ([0,1], [1,0]) in lex order.
        assert_eq!(g.bracket(&e2, &e1), e12);
        assert_eq!(g.bracket(&e1, &e2), e12.neg());
    }

    #[test]
    fn g2_string_lengths_appear() {
        let g = alg("G2");
        // N for alpha1 + (alpha1 + alpha2) has a 2-string below it.
        let a1 = Root(vec![1, 0]);
        let a1a2 = Root(vec![1, 1]);
        let e = g.root_vector(&a1).unwrap();
        let f = g.root_vector(&a1a2).unwrap();
        let prod = g.bracket(&e, &f);
        let target = g.root_vector_index(&Root(vec![2, 1])).unwrap();
        assert_eq!(prod.get(target).abs(), qi(2));
    }

    #[test]
    fn jacobi_exhaustive_small_ranks() {
        for name in ["A2", "B2", "G2", "A3", "B3", "C3"] {
            let g = alg(name);
            for i in 0..g.dim {
                let x = AlgebraElement::basis(i);
                for j in i + 1..g.dim {
                    let y = AlgebraElement::basis(j);
                    for k in j + 1..g.dim {
                        let z = AlgebraElement::basis(k);
                        assert!(jacobi_holds(&g, &x, &y, &z), "{name}: jacobi at {i},{j},{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_exhaustive_f4_and_d4() {
        for name in ["F4", "D4"] {
            let g = alg(name);
            for i in 0..g.dim {
                let x = AlgebraElement::basis(i);
                for j in i + 1..g.dim {
                    let y = AlgebraElement::basis(j);
                    for k in j + 1..g.dim {
                        let z = AlgebraElement::basis(k);
                        assert!(jacobi_holds(&g, &x, &y, &z), "{name}: jacobi at {i},{j},{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_sampled_large_ranks() {
        let mut rng = StdRng::seed_from_u64(11);
        for name in ["E7", "E8"] {
            let g = alg(name);
            for _ in 0..4000 {
                let x = AlgebraElement::basis(rng.random_range(0..g.dim));
                let y = AlgebraElement::basis(rng.random_range(0..g.dim));
                let z = AlgebraElement::basis(rng.random_range(0..g.dim));
                assert!(jacobi_holds(&g, &x, &y, &z), "{name}: jacobi failed");
            }
        }
    }

    #[test]
    fn jacobi_under_negated_convention() {
        for name in ["G2", "B3", "F4"] {
            let g = GradedAlgebra::new(
                CartanType::parse(name).unwrap(),
                SignConvention::ExtraspecialNegative,
            );
            for i in 0..g.dim {
                let x = AlgebraElement::basis(i);
                for j in i + 1..g.dim {
                    let y = AlgebraElement::basis(j);
                    for k in j + 1..g.dim {
                        let z = AlgebraElement::basis(k);
                        assert!(jacobi_holds(&g, &x, &y, &z), "{name}: jacobi at {i},{j},{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn grading_dimensions() {
        let cases = [
            ("G2:a2", vec![1, 4, 4, 4, 1]),
            ("B3:a2", vec![1, 6, 7, 6, 1]),
            ("F4:a1", vec![1, 14, 22, 14, 1]),
            ("E7:a1", vec![1, 32, 67, 32, 1]),
            ("E8:a8", vec![1, 56, 134, 56, 1]),
        ];
        for (case, dims) in cases {
            let (t, mark) = parse_case(case).unwrap();
            let g = GradedAlgebra::graded(t, mark, SignConvention::default()).unwrap();
            assert_eq!(g.grade_dims().unwrap(), dims, "{case}");
        }
    }

    #[test]
    fn grading_element_acts_by_grade() {
        for case in ["G2:a2", "B3:a2", "F4:a1"] {
            let (t, mark) = parse_case(case).unwrap();
            let g = GradedAlgebra::graded(t, mark, SignConvention::default()).unwrap();
            let z = g.grading_element().unwrap();
            for i in 0..g.dim {
                let x = AlgebraElement::basis(i);
                let zx = g.bracket(&z, &x);
                assert_eq!(zx, x.scale(&qi(g.grade_of_index(i))), "{case} index {i}");
            }
            // For these gradings the grading element is the coroot of the
            // highest root.
            let theta = g.rs.highest_root().clone();
            assert_eq!(z, g.coroot(&theta), "{case}");
        }
    }

    #[test]
    fn five_term_listing() {
        let got = five_term_gradings(8);
        // Encode the classification by marked node (one-based).
        let mut expect: Vec<(String, usize)> = Vec::new();
        let mut add = |ty: &str, nodes: &[usize]| {
            for &n in nodes {
                expect.push((ty.to_string(), n));
            }
        };
        // A_n: none.
        add("B2", &[2]);
        add("B3", &[2, 3]);
        add("B4", &[2, 3, 4]);
        add("B5", &[2, 3, 4, 5]);
        add("B6", &[2, 3, 4, 5, 6]);
        add("B7", &[2, 3, 4, 5, 6, 7]);
        add("B8", &[2, 3, 4, 5, 6, 7, 8]);
        add("C2", &[1]);
        add("C3", &[1, 2]);
        add("C4", &[1, 2, 3]);
        add("C5", &[1, 2, 3, 4]);
        add("C6", &[1, 2, 3, 4, 5]);
        add("C7", &[1, 2, 3, 4, 5, 6]);
        add("C8", &[1, 2, 3, 4, 5, 6, 7]);
        add("D4", &[2]);
        add("D5", &[2, 3]);
        add("D6", &[2, 3, 4]);
        add("D7", &[2, 3, 4, 5]);
        add("D8", &[2, 3, 4, 5, 6]);
        add("E6", &[2, 3, 5]);
        add("E7", &[1, 2, 6]);
        add("E8", &[1, 8]);
        add("F4", &[1, 4]);
        add("G2", &[2]);
        let got: Vec<(String, usize)> = got
            .into_iter()
            .map(|(t, i)| (t.to_string(), i + 1))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn adjoint_fundamental_listing() {
        let got: Vec<(String, usize)> = adjoint_fundamental_gradings(8)
            .into_iter()
            .map(|(t, i)| (t.to_string(), i + 1))
            .collect();
        let expect: Vec<(String, usize)> = vec![
            ("B3", 2),
            ("B4", 2),
            ("B5", 2),
            ("B6", 2),
            ("B7", 2),
            ("B8", 2),
            ("D4", 2),
            ("D5", 2),
            ("D6", 2),
            ("D7", 2),
            ("D8", 2),
            ("E6", 2),
            ("E7", 1),
            ("E8", 8),
            ("F4", 1),
            ("G2", 2),
        ]
        .into_iter()
        .map(|(s, i)| (s.to_string(), i))
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn torus_conjugation_matches_scaled_argument() {
        let (t, mark) = parse_case("B3:a2").unwrap();
        let g = GradedAlgebra::graded(t, mark, SignConvention::default()).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let lambda = vec![1, -2, 1];
        let tval = crate::rat::q(3, 2);
        for _ in 0..10 {
            let x = AlgebraElement::basis(g.rank + rng.random_range(0..g.rs.root_count()));
            let y = AlgebraElement::basis(rng.random_range(0..g.dim));
            // Ad(t) exp(ad x) Ad(t)^-1 = exp(ad (t.x)).
            let lhs = g.torus_scale(
                &lambda,
                &tval,
                &g.exp_apply(&x, &g.torus_scale(&lambda, &(Q::one() / &tval), &y))
                    .unwrap(),
            );
            let rhs = g
                .exp_apply(&g.torus_scale(&lambda, &tval, &x), &y)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let g = alg("A1");
        let h = g.cartan(0);
        let e = g.root_vector(&Root(vec![1])).unwrap();
        assert_eq!(g.exp_apply(&h, &e), Err(Error::NotNilpotent));
    }

    #[test]
    fn case_parsing() {
        assert_eq!(parse_case("E8:a8").unwrap().1, 7);
        assert_eq!(parse_case("G2:alpha2").unwrap().1, 1);
        assert_eq!(parse_case("B3:2").unwrap().1, 1);
        assert!(parse_case("E8:a9").is_err());
        assert!(parse_case("E8").is_err());
        assert_eq!(format_case(CartanType::parse("E8").unwrap(), 7), "E8:a8");
    }

    #[test]
    fn element_arithmetic() {
        let x = AlgebraElement::from_pairs(vec![(2, qi(1)), (0, qi(3)), (2, qi(-1))]);
        assert_eq!(x.coeffs, vec![(0, qi(3))]);
        let y = AlgebraElement::basis(1).scale(&qi(2));
        let s = x.add(&y);
        assert_eq!(s.get(0), qi(3));
        assert_eq!(s.get(1), qi(2));
        assert!(s.sub(&s).is_zero());
    }
}
