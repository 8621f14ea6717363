//! Laurent-parameter degenerations along the scaling torus.
//!
//! A curve through the cone is pushed to the boundary by conjugating with
//! the one-parameter grading torus. Everything is an exact Laurent
//! polynomial in the parameter: the exponent has nilpotent coefficients, so
//! the exponential terminates and limits are read off the degree-zero term.
//! Whether the limit exists at all is controlled by one scalar matching
//! condition, and both outcomes are verified against closed forms.

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::module::AdjointModule;
use crate::orbit::sample_gprime_point;
use crate::rat::{q, qi, sample_small_nonzero, Q};
use crate::report::Check;
use crate::{Error, Result};
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Laurent polynomial in one parameter with algebra-element coefficients.
/// Absent degrees are zero; stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentSeries {
    pub terms: BTreeMap<i64, AlgebraElement>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(deg: i64, el: AlgebraElement) -> Self {
        let mut s = Self::default();
        s.insert(deg, el);
        s
    }

    fn insert(&mut self, deg: i64, el: AlgebraElement) {
        if !el.is_zero() {
            self.terms.insert(deg, el);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: i64) -> AlgebraElement {
        self.terms.get(&deg).cloned().unwrap_or_else(AlgebraElement::zero)
    }

    pub fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, el) in &other.terms {
            let sum = out.coeff(d).add(el);
            if sum.is_zero() {
                out.terms.remove(&d);
            } else {
                out.terms.insert(d, sum);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentSeries {
            terms: self.terms.iter().map(|(&d, el)| (d, el.scale(c))).collect(),
        }
    }

    /// Multiplies by the `k`-th power of the parameter.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            terms: self.terms.iter().map(|(&d, el)| (d + k, el.clone())).collect(),
        }
    }
}

/// Degreewise bracket of two series.
pub fn bracket_series(g: &GradedAlgebra, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    let mut out = LaurentSeries::zero();
    for (&da, ca) in &a.terms {
        for (&db, cb) in &b.terms {
            let v = g.bracket(ca, cb);
            if !v.is_zero() {
                out = out.add(&LaurentSeries::term(da + db, v));
            }
        }
    }
    out
}

/// `exp(ad e)` applied to `y`, degree by degree. The coefficients of `e`
/// must be ad-nilpotent jointly; otherwise the iteration cannot terminate.
pub fn exp_ad_series(
    g: &GradedAlgebra,
    e: &LaurentSeries,
    y: &LaurentSeries,
) -> Result<LaurentSeries> {
    let mut acc = y.clone();
    let mut term = y.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        if k > g.dim as i64 {
            return Err(Error::NotNilpotent);
        }
        term = bracket_series(g, e, &term).scale(&(Q::one() / qi(k)));
        acc = acc.add(&term);
        k += 1;
    }
    Ok(acc)
}

/// The three scalars attached to a degenerating pair: values of the
/// quadratic correction on `(x,x)`, `(x,a)` and `(a,a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SWitness {
    pub sxx: Q,
    pub sxa: Q,
    pub saa: Q,
}

/// The witness that makes the degeneration converge: the mixed value must
/// be a quarter of the pairing, the two pure values must vanish.
pub fn witness_s(m: &AdjointModule, x: &AlgebraElement, a: &AlgebraElement) -> SWitness {
    SWitness {
        sxx: Q::zero(),
        sxa: m.symplectic(a, x) / qi(4),
        saa: Q::zero(),
    }
}

/// The exponent `E(t) = sxx w t^-2 + (x + 2 sxa w) t^-1 + (a + saa w)` of
/// the degenerating family.
pub fn degeneration_exponent(
    m: &AdjointModule,
    x: &AlgebraElement,
    a: &AlgebraElement,
    s: &SWitness,
) -> LaurentSeries {
    LaurentSeries::term(-2, m.w.scale(&s.sxx))
        .add(&LaurentSeries::term(-1, x.add(&m.w.scale(&(qi(2) * &s.sxa)))))
        .add(&LaurentSeries::term(0, a.add(&m.w.scale(&s.saa))))
}

/// The family `y(t) = exp(ad E(t)) (t v)` as an exact Laurent polynomial.
pub fn degeneration_series(
    m: &AdjointModule,
    x: &AlgebraElement,
    a: &AlgebraElement,
    s: &SWitness,
) -> Result<LaurentSeries> {
    let e = degeneration_exponent(m, x, a, s);
    exp_ad_series(&m.g, &e, &LaurentSeries::term(1, m.v.clone()))
}

/// Limit of the family at the boundary: requires the base point to satisfy
/// the cone equations, and the matching condition to kill every negative
/// degree; the limit is then the degree-zero coefficient.
pub fn limit_bl(
    m: &AdjointModule,
    x: &AlgebraElement,
    a: &AlgebraElement,
    s: &SWitness,
) -> Result<AlgebraElement> {
    if !m.p(x).is_zero() {
        return Err(Error::NotOnCone);
    }
    let y = degeneration_series(m, x, a, s)?;
    if let Some(lo) = y.lowest() {
        if lo < 0 {
            return Err(Error::NegativePower { exponent: lo });
        }
    }
    Ok(y.coeff(0))
}

/// Does `exp(b) exp(c) = exp(b + c + [b,c]/2)` hold as operators? True for
/// arguments in the nonpositive grades below zero, where the double bracket
/// dies; checked column by column.
pub fn ch_composition_holds(g: &GradedAlgebra, b: &AlgebraElement, c: &AlgebraElement) -> bool {
    let combined = b.add(c).add(&g.bracket(b, c).scale(&q(1, 2)));
    (0..g.dim).all(|i| {
        let col = AlgebraElement::basis(i);
        let two = g
            .exp_apply(c, &col)
            .and_then(|u| g.exp_apply(b, &u));
        let one = g.exp_apply(&combined, &col);
        matches!((two, one), (Ok(u), Ok(v)) if u == v)
    })
}

/// Full degeneration suite: the composition law, the convergent limit with
/// its closed form, and the obstruction when the matching condition fails.
pub fn series_checks(m: &AdjointModule, pairs: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = &m.g;

    // [grade <= -2, grade <= -1] = 0 exhaustively: the composition law's
    // precondition.
    let low: Vec<usize> = (0..g.dim).filter(|&i| g.grade_of_index(i) <= -2).collect();
    let lower: Vec<usize> = (0..g.dim).filter(|&i| g.grade_of_index(i) <= -1).collect();
    let pre_ok = low.iter().all(|&i| {
        lower
            .iter()
            .all(|&j| g.bracket(&AlgebraElement::basis(i), &AlgebraElement::basis(j)).is_zero())
    });

    let mut ch_ok = true;
    let mut inverse_ok = true;
    for _ in 0..pairs {
        let b = m.sample_grades(&[-1, -2], &mut rng);
        let c = m.sample_grades(&[-1, -2], &mut rng);
        ch_ok &= ch_composition_holds(g, &b, &c);
        inverse_ok &= ch_composition_holds(g, &b, &b.neg())
            && (0..g.dim).all(|i| {
                let col = AlgebraElement::basis(i);
                g.exp_apply(&b.neg(), &g.exp_apply(&b, &col).unwrap()).unwrap() == col
            });
    }

    let mut exact_ok = true;
    let mut congruence_ok = true;
    let mut base_ok = true;
    let mut obstruction_ok = true;
    let mut normalization_ok = true;
    let mut off_cone_ok = true;
    let mut conjugation_ok = true;

    for _ in 0..pairs {
        let x = sample_gprime_point(m, &mut rng).vector;
        let a = m.sample_minus_one(&mut rng);
        let s = witness_s(m, &x, &a);
        let xv = g.bracket(&x, &m.v);
        let expect = g.exp_apply(&a, &xv).expect("grade -1 is nilpotent");

        match limit_bl(m, &x, &a, &s) {
            Ok(lim) => {
                exact_ok &= lim == expect;
                let l0 = g.grade_project(&lim, 0);
                congruence_ok &= g.grade_project(&lim, 2).is_zero()
                    && g.grade_project(&lim, 1) == xv
                    && m.gprime_project(&l0) == m.p2(&x, &a).scale(&qi(2))
                    && m.z_scalar(&l0) == m.symplectic(&x, &a) / qi(2);
            }
            Err(_) => exact_ok = false,
        }

        let zero = AlgebraElement::zero();
        base_ok &= limit_bl(m, &x, &zero, &witness_s(m, &x, &zero))
            .map(|l| l == xv)
            .unwrap_or(false);

        // Break the matching condition: the family must blow up in degree
        // -1 with the predicted coefficient.
        let gamma = sample_small_nonzero(&mut rng);
        let broken = SWitness {
            sxx: Q::zero(),
            sxa: &s.sxa + &gamma,
            saa: Q::zero(),
        };
        let delta = qi(2) * &gamma;
        let pairing = m.symplectic(&a, &x);
        let predicted = x
            .scale(&delta)
            .add(&m.w.scale(&(&delta * (&delta + &pairing))))
            .neg();
        let series = degeneration_series(m, &x, &a, &broken).expect("nilpotent exponent");
        obstruction_ok &= series.lowest() == Some(-1)
            && series.coeff(-1) == predicted
            && matches!(
                limit_bl(m, &x, &a, &broken),
                Err(Error::NegativePower { exponent: -1 })
            );

        // A nonzero pure value on `a` shifts the limit off the clean
        // closed form by a computable multiple of exp(a) x.
        let shifted = SWitness {
            sxx: Q::zero(),
            sxa: s.sxa.clone(),
            saa: gamma.clone(),
        };
        let lim = limit_bl(m, &x, &a, &shifted).expect("matching condition still holds");
        let drift = g.exp_apply(&a, &x).unwrap().scale(&gamma);
        normalization_ok &= lim == expect.sub(&drift);

        // Off-cone base points are rejected before any series is built.
        let y = m.sample_minus_one(&mut rng);
        if !m.p(&y).is_zero() {
            off_cone_ok &=
                matches!(limit_bl(m, &y, &a, &witness_s(m, &y, &a)), Err(Error::NotOnCone));
        }

        // Conjugating an exponential by the grading torus rescales its
        // argument grade by grade.
        let t = sample_small_nonzero(&mut rng);
        let u = AlgebraElement::basis(rng.random_range(0..g.dim));
        let inner = g.d_scale(&(Q::one() / &t), &u).expect("graded");
        let lhs = g.d_scale(&t, &g.exp_apply(&a, &inner).unwrap()).expect("graded");
        let scaled_a = g.ad_grade_scale(&t, &a).expect("graded");
        conjugation_ok &= lhs == g.exp_apply(&scaled_a, &u).unwrap();
    }

    vec![
        Check::with_detail(
            "ch-precondition",
            "the lowest grades commute with everything below grade zero",
            pre_ok,
            format!("{} by {} brackets", low.len(), lower.len()),
        ),
        Check::with_detail(
            "ch-identity",
            "exponentials below grade zero compose through the half-bracket",
            ch_ok,
            format!("{pairs} pairs"),
        ),
        Check::new(
            "ch-inverse",
            "opposite exponentials compose to the identity",
            inverse_ok,
        ),
        Check::new(
            "limit-exact",
            "the matched family converges exactly to the translated image",
            exact_ok,
        ),
        Check::new(
            "limit-congruence",
            "the limit agrees with the quadric evaluation in the upper grades",
            congruence_ok,
        ),
        Check::new(
            "limit-basepoint",
            "the family over a trivial translation is constant",
            base_ok,
        ),
        Check::new(
            "limit-obstruction",
            "breaking the matching condition blows up with the predicted pole",
            obstruction_ok,
        ),
        Check::new(
            "limit-normalization",
            "a pure quadratic value drifts the limit by a multiple of exp(a) x",
            normalization_ok,
        ),
        Check::new(
            "limit-off-cone",
            "base points violating the cone equations are rejected",
            off_cone_ok,
        ),
        Check::new(
            "grading-conjugation",
            "the grading torus conjugates exponentials by rescaling arguments",
            conjugation_ok,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SignConvention;
    use crate::orbit::extremal_minus_vector;
    use crate::roots::Root;
    use proptest::prelude::*;
    use rand::rngs::StdRng;

    fn module(case: &str) -> AdjointModule {
        AdjointModule::from_case(case, SignConvention::default()).unwrap()
    }

    #[test]
    fn composition_law_exhaustive_on_the_smallest_case() {
        let m = module("G2:a2");
        let g = &m.g;
        let idx: Vec<usize> = (0..g.dim).filter(|&i| g.grade_of_index(i) <= -1).collect();
        for &i in &idx {
            for &j in &idx {
                assert!(ch_composition_holds(
                    g,
                    &AlgebraElement::basis(i),
                    &AlgebraElement::basis(j)
                ));
            }
        }
    }

    #[test]
    fn matched_family_converges_to_the_translate() {
        let m = module("B3:a2");
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..10 {
            let x = sample_gprime_point(&m, &mut rng).vector;
            let a = m.sample_minus_one(&mut rng);
            let s = witness_s(&m, &x, &a);
            let series = degeneration_series(&m, &x, &a, &s).unwrap();
            // The closed form: t * exp(a) v + exp(a) (x v), nothing else.
            let ev = m.g.exp_apply(&a, &m.v).unwrap();
            let exv = m.g.exp_apply(&a, &m.g.bracket(&x, &m.v)).unwrap();
            let expect = LaurentSeries::term(1, ev).add(&LaurentSeries::term(0, exv.clone()));
            assert_eq!(series, expect);
            assert_eq!(limit_bl(&m, &x, &a, &s).unwrap(), exv);
        }
    }

    #[test]
    fn pole_coefficient_matches_the_closed_form() {
        let m = module("G2:a2");
        let mut rng = StdRng::seed_from_u64(43);
        let x = extremal_minus_vector(&m);
        let a = m.sample_minus_one(&mut rng);
        let gamma = q(2, 3);
        let s = SWitness {
            sxx: Q::zero(),
            sxa: &witness_s(&m, &x, &a).sxa + &gamma,
            saa: Q::zero(),
        };
        let delta = qi(2) * &gamma;
        let series = degeneration_series(&m, &x, &a, &s).unwrap();
        let pairing = m.symplectic(&a, &x);
        let predicted = x
            .scale(&delta)
            .add(&m.w.scale(&(&delta * (&delta + &pairing))))
            .neg();
        assert_eq!(series.lowest(), Some(-1));
        assert_eq!(series.coeff(-1), predicted);
        assert!(matches!(
            limit_bl(&m, &x, &a, &s),
            Err(Error::NegativePower { exponent: -1 })
        ));
    }

    #[test]
    fn series_suite_passes_on_small_cases() {
        for case in ["G2:a2", "B3:a2"] {
            let m = module(case);
            for c in series_checks(&m, 5, 19) {
                assert!(c.pass, "{case}: {} failed", c.id);
            }
        }
    }

    #[test]
    fn nonnilpotent_exponents_are_rejected() {
        let m = module("G2:a2");
        let h = m.g.cartan(0);
        let e = LaurentSeries::term(0, h);
        // The simple root vector is an eigenvector of its own coroot with
        // eigenvalue 2, so the exponential never terminates.
        let x = m.g.root_vector(&Root::simple(m.g.rank, 0)).unwrap();
        let y = LaurentSeries::term(0, x);
        assert!(matches!(
            exp_ad_series(&m.g, &e, &y),
            Err(Error::NotNilpotent)
        ));
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        proptest::collection::vec(
            (-3i64..=3, 0u32..8, -4i64..=4, 1i64..=3),
            0..6,
        )
        .prop_map(|entries| {
            let mut s = LaurentSeries::zero();
            for (d, i, num, den) in entries {
                let el = AlgebraElement::from_pairs(vec![(i, q(num, den))]);
                s = s.add(&LaurentSeries::term(d, el));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn series_addition_is_associative_and_cancels(
            a in arb_series(), b in arb_series(), c in arb_series()
        ) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert!(a.add(&a.scale(&qi(-1))).is_zero());
        }

        #[test]
        fn series_scaling_distributes_and_shifts_compose(
            a in arb_series(), b in arb_series(), k in -3i64..=3
        ) {
            let c = q(3, 2);
            prop_assert_eq!(a.add(&b).scale(&c), a.scale(&c).add(&b.scale(&c)));
            prop_assert_eq!(a.shift(k).shift(-k), a.clone());
            prop_assert_eq!(a.add(&b).shift(k), a.shift(k).add(&b.shift(k)));
        }
    }
}
