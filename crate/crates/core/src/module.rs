//! The five-term graded structure attached to an adjoint-fundamental
//! marking: a long simple root whose coefficient in the highest root is 2
//! and whose top graded piece is a line.
//!
//! Fixing highest root vectors `v` in grade 2 and `w` in grade -2 gives
//! `z = [v, w]` acting as the grading element, an sl2 pairing between the
//! grade 1 and grade -1 pieces, a symplectic form on grade -1, and the
//! tensors `p`, `q`, `r` cut out of `exp(ad x) v`.

use crate::algebra::{format_case, parse_case, AlgebraElement, GradedAlgebra, SignConvention};
use crate::rat::{q, qi, sample_small, Q};
use crate::roots::{CartanType, Root};
use crate::{Error, Result};
use num::{One, Zero};
use rand::Rng;

pub struct AdjointModule {
    pub g: GradedAlgebra,
    pub mark: usize,
    pub theta: Root,
    /// Highest root vector spanning grade 2.
    pub v: AlgebraElement,
    /// Lowest root vector spanning grade -2.
    pub w: AlgebraElement,
    /// `[v, w]`: the coroot of the highest root, acting by the grade.
    pub z: AlgebraElement,
    pub v_index: usize,
    pub w_index: usize,
    /// Basis indices of the grade -1 root vectors, in basis order.
    pub minus_indices: Vec<usize>,
    /// Basis indices of the grade +1 root vectors, in basis order.
    pub plus_indices: Vec<usize>,
    /// Basis indices spanning grade 0.
    pub zero_indices: Vec<usize>,
}

impl AdjointModule {
    pub fn new(t: CartanType, mark: usize, sign: SignConvention) -> Result<Self> {
        let g = GradedAlgebra::graded(t, mark, sign)?;
        let case = format_case(t, mark);
        let theta = g.rs.highest_root().clone();
        if theta.0[mark] != 2 {
            return Err(Error::NotAdjointFundamental(format!(
                "{case}: highest-root coefficient is {}",
                theta.0[mark]
            )));
        }
        if !g.rs.is_long(&Root::simple(t.rank, mark)) {
            return Err(Error::NotAdjointFundamental(format!(
                "{case}: marked root is short"
            )));
        }
        let top = g.rs.roots.iter().filter(|r| r.0[mark] == 2).count();
        if top != 1 {
            return Err(Error::NotAdjointFundamental(format!(
                "{case}: top graded piece has dimension {top}"
            )));
        }

        let v_index = g.root_vector_index(&theta).expect("highest root");
        let w_index = g.root_vector_index(&theta.neg()).expect("lowest root");
        let v = AlgebraElement::basis(v_index);
        let w = AlgebraElement::basis(w_index);
        let z = g.bracket(&v, &w);
        assert_eq!(
            z,
            g.grading_element().expect("graded"),
            "[v, w] must act as the grading element"
        );

        let mut minus_indices = Vec::new();
        let mut plus_indices = Vec::new();
        let mut zero_indices = Vec::new();
        for i in 0..g.dim {
            match g.grade_of_index(i) {
                -1 => minus_indices.push(i),
                1 => plus_indices.push(i),
                0 => zero_indices.push(i),
                _ => {}
            }
        }

        Ok(AdjointModule {
            g,
            mark,
            theta,
            v,
            w,
            z,
            v_index,
            w_index,
            minus_indices,
            plus_indices,
            zero_indices,
        })
    }

    pub fn from_case(case: &str, sign: SignConvention) -> Result<Self> {
        let (t, mark) = parse_case(case)?;
        Self::new(t, mark, sign)
    }

    pub fn case(&self) -> String {
        format_case(self.g.rs.cartan_type, self.mark)
    }

    pub fn dim_g1(&self) -> usize {
        self.minus_indices.len()
    }

    pub fn dim_gprime(&self) -> usize {
        self.zero_indices.len() - 1
    }

    /// Random grade -1 element with small rational coefficients.
    pub fn sample_minus_one<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement::from_pairs(
            self.minus_indices
                .iter()
                .map(|&i| (i as u32, sample_small(rng)))
                .collect(),
        )
    }

    /// Random element supported on the given grades.
    pub fn sample_grades<R: Rng>(&self, grades: &[i64], rng: &mut R) -> AlgebraElement {
        AlgebraElement::from_pairs(
            (0..self.g.dim)
                .filter(|&i| grades.contains(&self.g.grade_of_index(i)))
                .map(|i| (i as u32, sample_small(rng)))
                .collect(),
        )
    }

    /// Symplectic form on grade -1: `[a, b] = <a, b> w`.
    pub fn symplectic(&self, a: &AlgebraElement, b: &AlgebraElement) -> Q {
        self.g.bracket(a, b).get(self.w_index)
    }

    /// The coefficient `s` with `x - s z` in the derived part of grade 0.
    pub fn z_scalar(&self, x0: &AlgebraElement) -> Q {
        self.g.bracket(x0, &self.v).get(self.v_index) / qi(2)
    }

    pub fn gprime_project(&self, x0: &AlgebraElement) -> AlgebraElement {
        x0.sub(&self.z.scale(&self.z_scalar(x0)))
    }

    /// Quadratic tensor: `p(x) = ad_x^2 v / 2`, valued in grade 0.
    pub fn p(&self, x: &AlgebraElement) -> AlgebraElement {
        let once = self.g.bracket(x, &self.v);
        self.g.bracket(x, &once).scale(&q(1, 2))
    }

    /// Cubic tensor: `q(x) = ad_x^3 v / 6`, valued in grade -1.
    pub fn q_cubic(&self, x: &AlgebraElement) -> AlgebraElement {
        let once = self.g.bracket(x, &self.v);
        let twice = self.g.bracket(x, &once);
        self.g.bracket(x, &twice).scale(&q(1, 6))
    }

    /// Quartic tensor: `ad_x^4 v / 24 = r(x) w`.
    pub fn r_quartic(&self, x: &AlgebraElement) -> Q {
        let mut t = self.g.bracket(x, &self.v);
        for _ in 0..3 {
            t = self.g.bracket(x, &t);
        }
        t.get(self.w_index) / qi(24)
    }

    /// `exp(ad x) v` for grade -1 arguments (a quartic polynomial in `x`).
    pub fn exp_v(&self, x: &AlgebraElement) -> AlgebraElement {
        self.g.exp_apply(x, &self.v).expect("grade -1 is nilpotent")
    }

    /// Symmetric bilinear polarization of `p`.
    pub fn p2(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let ab = self.g.bracket(a, &self.g.bracket(b, &self.v));
        let ba = self.g.bracket(b, &self.g.bracket(a, &self.v));
        ab.add(&ba).scale(&q(1, 4))
    }

    /// Symmetric trilinear polarization of `q`.
    pub fn q3(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        c: &AlgebraElement,
    ) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (x, y, z) in [
            (a, b, c),
            (a, c, b),
            (b, a, c),
            (b, c, a),
            (c, a, b),
            (c, b, a),
        ] {
            let t = self.g.bracket(x, &self.g.bracket(y, &self.g.bracket(z, &self.v)));
            acc = acc.add(&t);
        }
        acc.scale(&q(1, 36))
    }

    /// Symmetric quadrilinear polarization of `r`.
    pub fn r4(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        c: &AlgebraElement,
        d: &AlgebraElement,
    ) -> Q {
        let elems = [a, b, c, d];
        let mut acc = Q::zero();
        for perm in permutations4() {
            let mut t = self.g.bracket(elems[perm[3]], &self.v);
            t = self.g.bracket(elems[perm[2]], &t);
            t = self.g.bracket(elems[perm[1]], &t);
            t = self.g.bracket(elems[perm[0]], &t);
            acc += t.get(self.w_index);
        }
        acc / qi(576)
    }

    /// Positive roots of grade 0: the root system of the derived subalgebra.
    pub fn grade_zero_positive_roots(&self) -> Vec<Root> {
        self.g
            .rs
            .positive
            .iter()
            .filter(|r| r.0[self.mark] == 0)
            .cloned()
            .collect()
    }

    /// The grade 1 root whose vector is a grade-0 highest weight vector.
    pub fn highest_grade_one_root(&self) -> Root {
        let p0 = self.grade_zero_positive_roots();
        let mut found = None;
        for r in &self.g.rs.roots {
            if r.0[self.mark] != 1 {
                continue;
            }
            if p0.iter().all(|b| !self.g.rs.is_root(&r.add(b))) {
                assert!(found.is_none(), "highest weight line must be unique");
                found = Some(r.clone());
            }
        }
        found.expect("grade 1 module has a highest weight")
    }

    /// Weyl dimension of the irreducible grade-0 module whose highest
    /// weight has the given root-lattice coordinates.
    pub fn weyl_dim_grade_zero(&self, lambda: &Root) -> Q {
        let p0 = self.grade_zero_positive_roots();
        let mut two_rho = Root(vec![0; self.g.rank]);
        for b in &p0 {
            two_rho = two_rho.add(b);
        }
        let mut dim = Q::one();
        let num_base = lambda.scaled(2).add(&two_rho);
        for b in &p0 {
            dim *= self.g.rs.pairing(&num_base, b) / self.g.rs.pairing(&two_rho, b);
        }
        assert!(dim.is_integer(), "Weyl dimension must be an integer");
        dim
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}
