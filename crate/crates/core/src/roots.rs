//! Root systems of the finite Cartan types in the Bourbaki numbering.
//!
//! Roots are stored as integer coefficient vectors over the simple roots.
//! The invariant pairing is normalized so long roots have square length 2;
//! all pairings are exact rationals and all coroot pairings are integers.

use crate::linalg;
use crate::rat::{qi, Q};
use crate::{Error, Result};
use num::{One, Zero};
use serde_json::json;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanKind::A => 'A',
            CartanKind::B => 'B',
            CartanKind::C => 'C',
            CartanKind::D => 'D',
            CartanKind::E => 'E',
            CartanKind::F => 'F',
            CartanKind::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A finite Cartan type such as `E8` or `B3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CartanType {
    pub kind: CartanKind,
    pub rank: usize,
}

impl CartanType {
    pub fn new(kind: CartanKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            CartanKind::A => rank >= 1,
            CartanKind::B | CartanKind::C => rank >= 2,
            CartanKind::D => rank >= 4,
            CartanKind::E => (6..=8).contains(&rank),
            CartanKind::F => rank == 4,
            CartanKind::G => rank == 2,
        };
        if ok {
            Ok(CartanType { kind, rank })
        } else {
            Err(Error::InvalidType(format!("{kind}{rank}")))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('A' | 'a') => CartanKind::A,
            Some('B' | 'b') => CartanKind::B,
            Some('C' | 'c') => CartanKind::C,
            Some('D' | 'd') => CartanKind::D,
            Some('E' | 'e') => CartanKind::E,
            Some('F' | 'f') => CartanKind::F,
            Some('G' | 'g') => CartanKind::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        CartanType::new(kind, rank)
    }

    /// All valid types with rank at most `max`, in a stable order.
    pub fn enumerate_up_to_rank(max: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        let mut push = |kind, lo: usize| {
            for n in lo..=max {
                if let Ok(t) = CartanType::new(kind, n) {
                    out.push(t);
                }
            }
        };
        push(CartanKind::A, 1);
        push(CartanKind::B, 2);
        push(CartanKind::C, 2);
        push(CartanKind::D, 4);
        push(CartanKind::E, 6);
        push(CartanKind::F, 4);
        push(CartanKind::G, 2);
        out
    }

    /// Number of roots, from the classical counts.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            CartanKind::A => n * (n + 1),
            CartanKind::B | CartanKind::C => 2 * n * n,
            CartanKind::D => 2 * n * (n - 1),
            CartanKind::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            CartanKind::F => 48,
            CartanKind::G => 12,
        }
    }

    /// Cartan matrix `A[i][j] = <alpha_i, alpha_j^vee>`, zero-indexed.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let edge = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.kind {
            CartanKind::A => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
            }
            CartanKind::B => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
                a[n - 2][n - 1] = -2; // alpha_n is short
            }
            CartanKind::C => {
                for i in 0..n - 1 {
                    edge(&mut a, i, i + 1);
                }
                a[n - 1][n - 2] = -2; // alpha_n is long
            }
            CartanKind::D => {
                for i in 0..n - 2 {
                    edge(&mut a, i, i + 1);
                }
                a[n - 2][n - 1] = 0;
                a[n - 1][n - 2] = 0;
                edge(&mut a, n - 3, n - 1);
            }
            CartanKind::E => {
                // Chain 1-3-4-5-...-n with 2 attached to 4 (Bourbaki).
                edge(&mut a, 0, 2);
                edge(&mut a, 1, 3);
                for i in 2..n - 1 {
                    edge(&mut a, i, i + 1);
                }
            }
            CartanKind::F => {
                edge(&mut a, 0, 1);
                edge(&mut a, 2, 3);
                a[1][2] = -2;
                a[2][1] = -1;
            }
            CartanKind::G => {
                a[0][1] = -1;
                a[1][0] = -3; // alpha_1 short, alpha_2 long
            }
        }
        a
    }

    /// Square lengths `(alpha_i, alpha_i)`, long roots normalized to 2.
    pub fn simple_norms(&self) -> Vec<Q> {
        let n = self.rank;
        match self.kind {
            CartanKind::A | CartanKind::D | CartanKind::E => vec![qi(2); n],
            CartanKind::B => {
                let mut v = vec![qi(2); n];
                v[n - 1] = qi(1);
                v
            }
            CartanKind::C => {
                let mut v = vec![qi(1); n];
                v[n - 1] = qi(2);
                v
            }
            CartanKind::F => vec![qi(2), qi(2), qi(1), qi(1)],
            CartanKind::G => vec![crate::rat::q(2, 3), qi(2)],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

/// A root as an integer vector over the simple roots.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// A weight in fundamental-weight coordinates `coords_i = <x, alpha_i^vee>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

/// A realized root system: the closed root set, index maps, and exact
/// pairing data for one Cartan type.
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub norms: Vec<Q>,
    /// All roots, sorted by height then lexicographically; negatives first.
    pub roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// Positive roots in increasing (height, lex) order.
    pub positive: Vec<Root>,
    /// Gram matrix of the simple roots: `B[i][j] = (alpha_i, alpha_j)`.
    gram: Vec<Vec<Q>>,
    /// Inverse transpose of the Cartan matrix, for weight conversions.
    inv_cartan_t: Vec<Vec<Q>>,
    /// Pairing matrix in fundamental-weight coordinates.
    weight_gram: Vec<Vec<Q>>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Self {
        let rank = t.rank;
        let cartan = t.cartan_matrix();
        let norms = t.simple_norms();
        // (alpha_i, alpha_j) = A[i][j] * (alpha_j, alpha_j) / 2.
        let gram: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| qi(cartan[i][j]) * &norms[j] / qi(2))
                    .collect()
            })
            .collect();

        // Close the simple roots under simple reflections.
        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..rank {
            let r = Root::simple(rank, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..rank {
                let pair: i64 = (0..rank).map(|j| r.0[j] * cartan[j][i]).sum();
                let mut s = r.clone();
                s.0[i] -= pair;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.height(), r.0.clone()));
        let index: HashMap<Root, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let positive: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();

        // Weight-side matrices.
        let a_t: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| qi(cartan[j][i])).collect())
            .collect();
        let inv_cartan_t = invert(&a_t);
        // fw = C^T c, so c = C^-T fw and the pairing matrix on
        // fundamental-weight coordinates is C^-1 B C^-T.
        let mut weight_gram = vec![vec![Q::zero(); rank]; rank];
        for (i, wrow) in weight_gram.iter_mut().enumerate() {
            for (j, entry) in wrow.iter_mut().enumerate() {
                let mut acc = Q::zero();
                for k in 0..rank {
                    for l in 0..rank {
                        acc += &inv_cartan_t[k][i] * &gram[k][l] * &inv_cartan_t[l][j];
                    }
                }
                *entry = acc;
            }
        }

        RootSystem {
            cartan_type: t,
            rank,
            cartan,
            norms,
            roots,
            index,
            positive,
            gram,
            inv_cartan_t,
            weight_gram,
        }
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Invariant pairing `(a, b)` of two root-lattice vectors.
    pub fn pairing(&self, a: &Root, b: &Root) -> Q {
        let mut acc = Q::zero();
        for (i, &ca) in a.0.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.0.iter().enumerate() {
                if cb != 0 {
                    acc += qi(ca * cb) * &self.gram[i][j];
                }
            }
        }
        acc
    }

    pub fn norm(&self, r: &Root) -> Q {
        self.pairing(r, r)
    }

    pub fn is_long(&self, r: &Root) -> bool {
        self.norm(r) == qi(2)
    }

    /// `<r, alpha_i^vee>`: the coefficient of `r` on the i-th coroot.
    pub fn wcoord(&self, r: &Root, i: usize) -> i64 {
        (0..self.rank).map(|j| r.0[j] * self.cartan[j][i]).sum()
    }

    /// All coroot coefficients of `r`: its weight coordinates.
    pub fn wcoords(&self, r: &Root) -> Vec<i64> {
        (0..self.rank).map(|i| self.wcoord(r, i)).collect()
    }

    pub fn root_to_weight(&self, r: &Root) -> Weight {
        Weight(self.wcoords(r))
    }

    /// The coroot `r^vee = 2 r / (r, r)` as a weight; always integral.
    pub fn coroot_to_weight(&self, r: &Root) -> Weight {
        let factor = qi(2) / self.norm(r);
        Weight(
            self.wcoords(r)
                .iter()
                .map(|&c| {
                    let v = qi(c) * &factor;
                    assert!(v.is_integer(), "coroot weight must be integral");
                    int_value(&v)
                })
                .collect(),
        )
    }

    /// Simple reflection `s_i` applied to a root-lattice vector.
    pub fn reflect_simple(&self, r: &Root, i: usize) -> Root {
        let mut s = r.clone();
        s.0[i] -= self.wcoord(r, i);
        s
    }

    /// Reflection through an arbitrary root.
    pub fn reflect(&self, r: &Root, through: &Root) -> Root {
        let c = qi(2) * self.pairing(r, through) / self.norm(through);
        assert!(c.is_integer(), "reflection coefficient must be integral");
        let c = int_value(&c);
        Root(
            r.0.iter()
                .zip(&through.0)
                .map(|(&a, &b)| a - c * b)
                .collect(),
        )
    }

    /// The highest root (unique maximum of the height order).
    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }

    /// Simple-root coordinates of a weight; rational in general.
    pub fn weight_to_simple_coords(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|k| &self.inv_cartan_t[i][k] * qi(w.0[k]))
                    .sum()
            })
            .collect()
    }

    /// Whether a weight lies in the root lattice.
    pub fn weight_in_root_lattice(&self, w: &Weight) -> bool {
        self.weight_to_simple_coords(w).iter().all(Q::is_integer)
    }

    pub fn weight_pairing(&self, a: &Weight, b: &Weight) -> Q {
        let mut acc = Q::zero();
        for (i, &ca) in a.0.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.0.iter().enumerate() {
                if cb != 0 {
                    acc += qi(ca * cb) * &self.weight_gram[i][j];
                }
            }
        }
        acc
    }

    /// Simple reflection on fundamental-weight coordinates.
    pub fn reflect_weight(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        Weight(
            (0..self.rank)
                .map(|j| w.0[j] - c * self.cartan[i][j])
                .collect(),
        )
    }

    /// The full Weyl orbit of a weight, sorted.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                let y = self.reflect_weight(&x, i);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut orbit: Vec<Weight> = seen.into_iter().collect();
        orbit.sort();
        orbit
    }

    /// Fundamental weight `omega_i` in fundamental-weight coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut c = vec![0; self.rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": self.cartan_type.to_string(),
            "rank": self.rank,
            "cartan_matrix": self.cartan,
            "simple_norms": self.norms.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "simple_roots": (0..self.rank).map(|i| Root::simple(self.rank, i).0).collect::<Vec<_>>(),
            "roots": self.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        })
    }
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    assert_eq!(pivots.len(), n, "matrix is singular");
    aug.iter().map(|r| r[n..].to_vec()).collect()
}

fn int_value(v: &Q) -> i64 {
    use num::ToPrimitive;
    v.to_integer().to_i64().expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(s: &str) -> RootSystem {
        RootSystem::new(CartanType::parse(s).unwrap())
    }

    #[test]
    fn type_validation() {
        assert!(CartanType::parse("E8").is_ok());
        assert!(CartanType::parse("A1").is_ok());
        assert!(CartanType::parse("D3").is_err());
        assert!(CartanType::parse("E9").is_err());
        assert!(CartanType::parse("F5").is_err());
        assert!(CartanType::parse("G3").is_err());
        assert!(CartanType::parse("H4").is_err());
        assert!(CartanType::parse("B1").is_err());
        assert_eq!(CartanType::parse("e7").unwrap().to_string(), "E7");
    }

    #[test]
    fn root_counts_match_closed_forms() {
        for t in CartanType::enumerate_up_to_rank(8) {
            let rs = RootSystem::new(t);
            assert_eq!(rs.root_count(), t.root_count(), "count for {t}");
            assert_eq!(rs.positive.len() * 2, rs.root_count(), "pos/neg split {t}");
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(system("G2").highest_root().0, vec![3, 2]);
        assert_eq!(system("B3").highest_root().0, vec![1, 2, 2]);
        assert_eq!(system("F4").highest_root().0, vec![2, 3, 4, 2]);
        assert_eq!(system("E7").highest_root().0, vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(system("E8").highest_root().0, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn pairings_are_crystallographic() {
        for name in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let rs = system(name);
            for b in &rs.roots {
                for g in &rs.roots {
                    let c = qi(2) * rs.pairing(b, g) / rs.norm(g);
                    assert!(c.is_integer(), "{name}: <b, g^vee> not integral");
                }
            }
        }
    }

    #[test]
    fn g2_norms_and_cartan() {
        let rs = system("G2");
        assert_eq!(rs.cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(rs.norm(&Root::simple(2, 0)), crate::rat::q(2, 3));
        assert_eq!(rs.norm(&Root::simple(2, 1)), qi(2));
        let long: Vec<_> = rs.roots.iter().filter(|r| rs.is_long(r)).collect();
        assert_eq!(long.len(), 6);
    }

    #[test]
    fn simple_reflections_permute_roots_and_preserve_pairing() {
        for name in ["B3", "G2", "F4", "E6"] {
            let rs = system(name);
            for i in 0..rs.rank {
                let image: Vec<usize> = rs
                    .roots
                    .iter()
                    .map(|r| rs.index_of(&rs.reflect_simple(r, i)).expect("closed"))
                    .collect();
                let mut sorted = image.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..rs.root_count()).collect::<Vec<_>>());
                for (a, &ia) in rs.roots.iter().zip(&image) {
                    for (b, &ib) in rs.roots.iter().zip(&image) {
                        assert_eq!(
                            rs.pairing(a, b),
                            rs.pairing(&rs.roots[ia], &rs.roots[ib]),
                            "{name}: s_{i} is not an isometry"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_roundtrips() {
        let rs = system("F4");
        for r in &rs.roots {
            let w = rs.root_to_weight(r);
            let c = rs.weight_to_simple_coords(&w);
            for (ci, &ri) in c.iter().zip(&r.0) {
                assert_eq!(*ci, qi(ri));
            }
            assert!(rs.weight_in_root_lattice(&w));
            // Pairing agrees between the two coordinate systems.
            for s in rs.roots.iter().take(8) {
                let ws = rs.root_to_weight(s);
                assert_eq!(rs.weight_pairing(&w, &ws), rs.pairing(r, s));
            }
        }
    }

    #[test]
    fn weyl_orbit_sizes() {
        let rs = system("A2");
        // Both fundamental weights of A2 sit on 3-element orbits.
        assert_eq!(rs.weyl_orbit(&rs.fundamental_weight(0)).len(), 3);
        assert_eq!(rs.weyl_orbit(&rs.fundamental_weight(1)).len(), 3);
        // Highest root orbit = long roots.
        let g2 = system("G2");
        let theta = g2.highest_root().clone();
        assert_eq!(g2.weyl_orbit(&g2.root_to_weight(&theta)).len(), 6);
        // The 56-dimensional orbit in E7.
        let e7 = system("E7");
        assert_eq!(e7.weyl_orbit(&e7.fundamental_weight(6)).len(), 56);
    }

    #[test]
    fn coroots_are_integral_weights() {
        for name in ["B4", "C4", "G2", "F4"] {
            let rs = system(name);
            for r in &rs.roots {
                let cw = rs.coroot_to_weight(r);
                // Entry i is <r^vee, alpha_i^vee>, recomputed from the pairing.
                for i in 0..rs.rank {
                    let ai = Root::simple(rs.rank, i);
                    let expect = qi(4) * rs.pairing(r, &ai) / (rs.norm(r) * rs.norm(&ai));
                    assert_eq!(qi(cw.0[i]), expect);
                }
            }
        }
    }
}
