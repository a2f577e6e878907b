//! Quantized point algebras: quadratic relations in the `v` letters, their
//! reduction to ordered monomials up to degree three, graded dimensions,
//! and the three-point change of generators.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{Gen, GenKind, NCPoly, StarStructure, Word};
use crate::linalg::{all_words, determinant, ideal_component, Echelon};
use crate::poisson::{cmul, t, v_to_t, LambdaMatrix, PoissonContext, PoissonError};
use crate::rewrite::{RewriteError, RewriteSystem, Strategy};
use crate::scalars::{Scalar, ScalarError, Var};
use crate::uqaction::lambda_relation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointAlgError {
    #[error("pair ({0},{1}): lambda = (q^2+1)/(q^2-1) leaves v_j v_i without a reduction rule")]
    NoReduction(u32, u32),
    #[error("pair ({0},{1}): lambda = (q^4+1)/(q^4-1) makes v_j^2 v_i irreducible")]
    SingularCubic(u32, u32),
    #[error("degree {0} is beyond the supported range")]
    UnsupportedDegree(usize),
    #[error("problem size exceeds the limit: {0}")]
    SizeLimit(String),
    #[error("nonzero residual: {0}")]
    Residual(String),
    #[error("no pairing configured for the complexified flavor")]
    MissingPairing,
    #[error("all index permutations give a singular transformation")]
    SingularTransform,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Real,
    Complexified,
    Exceptional,
}

/// `(q^2+1)/(q^2-1)`: the value where `v_j v_i` has no rule.
pub fn lambda_no_rule() -> Scalar {
    let q2 = Scalar::q().pow(2);
    (&q2 + &Scalar::one()).div(&(&q2 - &Scalar::one()))
}

/// `(q^4+1)/(q^4-1)`: the value where `1 - beta gamma` vanishes.
pub fn lambda_singular_cubic() -> Scalar {
    let q4 = Scalar::q().pow(4);
    (&q4 + &Scalar::one()).div(&(&q4 - &Scalar::one()))
}

/// `(1+q^2)/(1-q^2)`: the exceptional value.
pub fn lambda_exceptional() -> Scalar {
    -lambda_no_rule()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCoeffs {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl ReductionCoeffs {
    /// Coefficients of `v_j v_i = alpha v_i v_j + beta v_i^2 + gamma v_j^2`.
    pub fn new(lambda: &Scalar) -> Option<Self> {
        let q2 = Scalar::q().pow(2);
        let one = Scalar::one();
        let qm = &q2 - &one;
        let qp = &q2 + &one;
        let den = lambda * &qm - qp.clone();
        if den.is_zero() {
            return None;
        }
        let alpha = (-qp.clone() - lambda * &qm).div(&den);
        let beta = (&one - &(&q2 * &alpha)).div(&qp);
        let gamma = (&q2 - &alpha).div(&qp);
        Some(ReductionCoeffs { alpha, beta, gamma })
    }

    /// The closed forms of `beta` and `gamma` in terms of `lambda`.
    pub fn closed_forms(lambda: &Scalar) -> Option<(Scalar, Scalar)> {
        let q2 = Scalar::q().pow(2);
        let one = Scalar::one();
        let qm = &q2 - &one;
        let den = lambda * &qm - (&q2 + &one);
        if den.is_zero() {
            return None;
        }
        let beta = (&qm * &(&one + lambda)).div(&den);
        let gamma = (&qm * &(lambda - &one)).div(&den);
        Some((beta, gamma))
    }

    pub fn one_minus_beta_gamma(&self) -> Scalar {
        Scalar::one() - &self.beta * &self.gamma
    }

    /// `beta gamma (1 + alpha)`; the degree-four rewriting needs it to differ from 1.
    pub fn fourth_order_obstruction(&self) -> Scalar {
        &(&self.beta * &self.gamma) * &(Scalar::one() + self.alpha.clone())
    }

    /// Right side of the cubic rule for `v_j^2 v_i`, already divided by
    /// `1 - beta gamma`.
    pub fn cubic_rule(&self, i: Gen, j: Gen) -> Option<NCPoly> {
        let (a, b, c) = (&self.alpha, &self.beta, &self.gamma);
        let one = Scalar::one();
        let den = self.one_minus_beta_gamma();
        if den.is_zero() {
            return None;
        }
        let opa = &one + a;
        let w = |g: &[Gen]| Word::from_gens(g);
        let p = NCPoly::from_terms([
            (w(&[i, i, i]), b * &(b * &opa)),
            (w(&[i, i, j]), a * &(b * &opa)),
            (w(&[i, j, j]), a * a + a * &(b * c)),
            (w(&[j, j, j]), c * &opa),
        ]);
        Some(p.scale(&den.inv()))
    }
}

/// Fourth-order obstruction `beta gamma (1 + alpha)` for a given lambda.
pub fn fourth_order_obstruction(lambda: &Scalar) -> Result<Scalar, PointAlgError> {
    ReductionCoeffs::new(lambda)
        .map(|r| r.fourth_order_obstruction())
        .ok_or(PointAlgError::NoReduction(0, 0))
}

/// A point algebra: `v` letters modulo the quadratic relations fixed by a
/// lambda matrix.
#[derive(Clone, Debug)]
pub struct PointAlgebra {
    pub lambda: LambdaMatrix,
    pub flavor: Flavor,
}

impl PointAlgebra {
    pub fn new(lambda: LambdaMatrix, flavor: Flavor) -> Self {
        PointAlgebra { lambda, flavor }
    }

    pub fn real(lambda: LambdaMatrix) -> Self {
        PointAlgebra::new(lambda, Flavor::Real)
    }

    /// Every `lambda_ij = (1+q^2)/(1-q^2)`.
    pub fn exceptional(labels: Vec<u32>) -> Self {
        PointAlgebra::new(LambdaMatrix::constant(labels, &lambda_exceptional()), Flavor::Exceptional)
    }

    pub fn complexified(lambda: LambdaMatrix) -> Self {
        PointAlgebra::new(lambda, Flavor::Complexified)
    }

    pub fn labels(&self) -> &[u32] {
        self.lambda.labels()
    }

    pub fn gens(&self) -> Vec<Gen> {
        self.labels().iter().map(|&i| Gen::v(i)).collect()
    }

    pub fn star(&self) -> StarStructure {
        match self.lambda.pairing() {
            Some(p) => StarStructure::complexified(p),
            None => StarStructure::real(),
        }
    }

    /// `[v_j,v_i] - (q^2-1)/(q^2+1) (v_j^2 - v_i^2 - lambda_ij (v_i - v_j)^2)`.
    pub fn relation(&self, i: u32, j: u32) -> NCPoly {
        lambda_relation(i, j, &self.lambda.get(i, j), GenKind::V)
    }

    pub fn relations(&self) -> Vec<NCPoly> {
        self.lambda.pairs().into_iter().map(|(i, j)| self.relation(i, j)).collect()
    }

    pub fn reduction_coeffs(&self, i: u32, j: u32) -> Result<ReductionCoeffs, PointAlgError> {
        ReductionCoeffs::new(&self.lambda.get(i, j)).ok_or(PointAlgError::NoReduction(i, j))
    }

    /// Rules `v_j v_i -> alpha v_i v_j + beta v_i^2 + gamma v_j^2` for `i < j`.
    pub fn quadratic_system(&self) -> Result<RewriteSystem, PointAlgError> {
        let mut rs = RewriteSystem::new().with_step_cap(200_000);
        for (i, j) in self.lambda.pairs() {
            let r = self.reduction_coeffs(i, j)?;
            let (vi, vj) = (Gen::v(i), Gen::v(j));
            let w = |g: &[Gen]| Word::from_gens(g);
            rs.add(
                w(&[vj, vi]),
                NCPoly::from_terms([
                    (w(&[vi, vj]), r.alpha.clone()),
                    (w(&[vi, vi]), r.beta.clone()),
                    (w(&[vj, vj]), r.gamma.clone()),
                ]),
            );
        }
        Ok(rs)
    }

    /// Quadratic rules plus the cubic rule for each `v_j v_j v_i`.
    pub fn cubic_system(&self) -> Result<RewriteSystem, PointAlgError> {
        let mut rs = self.quadratic_system()?;
        for (i, j) in self.lambda.pairs() {
            let r = self.reduction_coeffs(i, j)?;
            let (vi, vj) = (Gen::v(i), Gen::v(j));
            let rhs = r.cubic_rule(vi, vj).ok_or(PointAlgError::SingularCubic(i, j))?;
            rs.add(Word::from_gens(&[vj, vj, vi]), rhs);
        }
        Ok(rs)
    }

    /// Ordered form of an element of degree at most three.
    pub fn normal_form_deg3(&self, p: &NCPoly) -> Result<NCPoly, PointAlgError> {
        self.normal_form_deg3_with(p, Strategy::Leftmost)
    }

    pub fn normal_form_deg3_with(&self, p: &NCPoly, strategy: Strategy) -> Result<NCPoly, PointAlgError> {
        if let Some(d) = p.degree() {
            if d > 3 {
                return Err(PointAlgError::UnsupportedDegree(d));
            }
        }
        let needs_cubic = p.terms().keys().any(|w| w.len() == 3);
        let rs = if needs_cubic { self.cubic_system()? } else { self.quadratic_system()? };
        Ok(rs.reduce_with(p, strategy)?)
    }

    /// Span of `w1 I w2` over relations `I` and words with `|w1|+|w2| = d-2`.
    pub fn ideal_component(&self, d: usize) -> Echelon {
        ideal_component(&self.gens(), &self.relations(), d)
    }

    /// Dimension of the degree-`d` part of the quotient.
    pub fn graded_dimension(&self, d: usize) -> Result<usize, PointAlgError> {
        let n = self.labels().len();
        if d > 4 || n > 4 {
            return Err(PointAlgError::SizeLimit(format!("n={n}, d={d}; limits are n<=4, d<=4")));
        }
        Ok(n.pow(d as u32) - self.ideal_component(d).rank())
    }

    /// Whether the ordered monomials of degree `d` are linearly independent
    /// modulo the ideal.
    pub fn ordered_monomials_independent(&self, d: usize) -> bool {
        let mut e = self.ideal_component(d);
        let rank0 = e.rank();
        let ordered: Vec<Word> = all_words(&self.gens(), d).into_iter().filter(Word::is_ordered).collect();
        for w in &ordered {
            e.insert(&NCPoly::word(w.clone()));
        }
        e.rank() == rank0 + ordered.len()
    }

    /// Conditions under which ordered monomials up to degree three form a basis:
    /// the Jacobi condition on every triple and no excluded pair value, or
    /// the exceptional structure.
    pub fn pbw_eligible(&self) -> bool {
        let exc = lambda_exceptional();
        if self.lambda.pairs().iter().all(|&(i, j)| self.lambda.get(i, j) == exc) {
            return true;
        }
        let (nr, sc) = (lambda_no_rule(), lambda_singular_cubic());
        let pairs_ok = self.lambda.pairs().iter().all(|&(i, j)| {
            let l = self.lambda.get(i, j);
            l != nr && l != sc
        });
        let triples_ok = self
            .lambda
            .triples()
            .iter()
            .all(|&(i, j, k)| self.lambda.jacobi_defect(i, j, k).is_ok_and(|d| d.is_zero()));
        pairs_ok && triples_ok
    }

    /// `(q^2+1)/(q^2-1)` times the reduced commutator `[v_j, v_i]`, at `s = 1`,
    /// paired with the bracket `{t_j, t_i}`.
    pub fn quasiclassical_limit(&self) -> Result<Vec<QuasiclassicalCheck>, PointAlgError> {
        let rs = self.quadratic_system()?;
        let ctx = PoissonContext::new(self.lambda.clone());
        let one = Scalar::one();
        let mut out = Vec::new();
        for (i, j) in self.lambda.pairs() {
            let vi = NCPoly::gen(Gen::v(i));
            let vj = NCPoly::gen(Gen::v(j));
            let red = rs.reduce(&vj.commutator(&vi))?;
            let scaled = red.scale(&lambda_no_rule());
            let limit = scaled.try_map_coeffs(|c| c.subst1(Var::S, &one))?;
            let limit = v_to_t(&limit);
            let bracket = ctx.bracket(&t(j), &t(i))?;
            let bracket = bracket.try_map_coeffs(|c| c.subst1(Var::S, &one))?;
            out.push(QuasiclassicalCheck { pair: (i, j), limit, bracket });
        }
        Ok(out)
    }

    /// Star-stability of the relations: each `star(I_ab)` lies in the degree-2
    /// span of the relations.
    pub fn star_stable(&self) -> bool {
        let st = self.star();
        let span = Echelon::from_span(self.relations().iter());
        self.relations().iter().all(|r| span.contains(&st.apply(r)))
    }

    /// Star-compatibility report for the complexified flavor.
    pub fn complexified_star_check(&self) -> Result<ComplexifiedReport, PointAlgError> {
        let pairs = self.lambda.pairing().ok_or(PointAlgError::MissingPairing)?.to_vec();
        let lambda_conditions = self.lambda.check_pairing()?;
        let star_stable = self.star_stable();
        let sigma: BTreeMap<u32, u32> =
            pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        let bar = |a: u32| sigma.get(&a).copied().unwrap_or(a);
        // Unpaired representatives: the first label of each pair.
        let reps: Vec<u32> = pairs.iter().map(|&(a, _)| a).collect();
        let mut sufficient = Vec::new();
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let (i, j) = (reps[a], reps[b]);
                sufficient.push((i, bar(i), j));
                for &k in &reps[b + 1..] {
                    sufficient.push((i, j, k));
                    sufficient.push((bar(i), j, k));
                }
            }
        }
        let reduced_ok = sufficient
            .iter()
            .all(|&(a, b, c)| self.lambda.jacobi_defect(a, b, c).is_ok_and(|d| d.is_zero()));
        let all_ok = self
            .lambda
            .triples()
            .iter()
            .all(|&(a, b, c)| self.lambda.jacobi_defect(a, b, c).is_ok_and(|d| d.is_zero()));
        Ok(ComplexifiedReport { lambda_conditions, star_stable, reduced_triples: sufficient, reduced_ok, all_ok })
    }

    /// Whether `lhs - rhs` lies in the degree-`d` part of the ideal.
    pub fn congruent(&self, lhs: &NCPoly, rhs: &NCPoly) -> bool {
        let diff = lhs.sub(rhs);
        let mut comps: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, c) in diff.terms() {
            comps.entry(w.len()).or_default().add_term(w.clone(), c);
        }
        comps.iter().all(|(&d, p)| d >= 2 && self.ideal_component(d).contains(p))
    }
}

#[derive(Clone, Debug)]
pub struct QuasiclassicalCheck {
    pub pair: (u32, u32),
    pub limit: NCPoly,
    pub bracket: NCPoly,
}

impl QuasiclassicalCheck {
    pub fn matches(&self) -> bool {
        self.limit == self.bracket
    }
}

#[derive(Clone, Debug)]
pub struct ComplexifiedReport {
    pub lambda_conditions: bool,
    pub star_stable: bool,
    pub reduced_triples: Vec<(u32, u32, u32)>,
    pub reduced_ok: bool,
    pub all_ok: bool,
}

impl ComplexifiedReport {
    pub fn passed(&self) -> bool {
        self.lambda_conditions && self.star_stable && self.reduced_ok && self.all_ok
    }
}

/// Result of reducing the three-index combination of quadratic generators.
#[derive(Clone, Debug)]
pub struct TripleCombination {
    /// Coefficients of `v_i^3, v_j^3, v_k^3, v_i^2 v_j, v_i v_j^2, v_i^2 v_k,
    /// v_i v_k^2, v_j^2 v_k, v_j v_k^2` in the reduced combination.
    pub computed: Vec<Scalar>,
    /// The same coefficients from the closed form.
    pub closed_form: Vec<Scalar>,
    pub factor: Scalar,
    /// Closed-form `p` coefficients (without the overall factor).
    pub p: Vec<Scalar>,
    /// Words with three distinct letters before reduction.
    pub distinct_letter_residual: NCPoly,
    /// Anything left outside the nine ordered two-index monomials.
    pub leftover: NCPoly,
}

impl TripleCombination {
    pub fn matches(&self) -> bool {
        self.distinct_letter_residual.is_zero()
            && self.leftover.is_zero()
            && self.computed == self.closed_form
    }
}

/// `X_ab = alpha v_a v_b + beta v_a^2 + gamma v_b^2 - v_b v_a`, the relation
/// normalized to coefficient -1 on `v_b v_a`.
pub fn normalized_generator(a: u32, b: u32, r: &ReductionCoeffs) -> NCPoly {
    let (va, vb) = (Gen::v(a), Gen::v(b));
    let w = |g: &[Gen]| Word::from_gens(g);
    NCPoly::from_terms([
        (w(&[va, vb]), r.alpha.clone()),
        (w(&[va, va]), r.beta.clone()),
        (w(&[vb, vb]), r.gamma.clone()),
        (w(&[vb, va]), -Scalar::one()),
    ])
}

/// Builds the degree-three combination
/// `-a_jk a_ik X_ij v_k - a_jk v_j X_ik - X_jk v_i + v_k X_ij + a_ij X_ik v_j + a_ik a_ij v_i X_jk`
/// with `a_ab = alpha_ab`, reduces it with the two-index rules, and compares
/// it with the closed form.
pub fn triple_combination(i: u32, j: u32, k: u32, lam: &LambdaMatrix) -> Result<TripleCombination, PointAlgError> {
    let (lij, lik, ljk) = (lam.get(i, j), lam.get(i, k), lam.get(j, k));
    let rij = ReductionCoeffs::new(&lij).ok_or(PointAlgError::NoReduction(i, j))?;
    let rik = ReductionCoeffs::new(&lik).ok_or(PointAlgError::NoReduction(i, k))?;
    let rjk = ReductionCoeffs::new(&ljk).ok_or(PointAlgError::NoReduction(j, k))?;
    let (xij, xik, xjk) = (
        normalized_generator(i, j, &rij),
        normalized_generator(i, k, &rik),
        normalized_generator(j, k, &rjk),
    );
    let (aij, aik, ajk) = (&rij.alpha, &rik.alpha, &rjk.alpha);
    let v = |a: u32| NCPoly::gen(Gen::v(a));
    let combo = xij
        .mul(&v(k))
        .scale(&-(ajk * aik))
        .sub(&v(j).mul(&xik).scale(ajk))
        .sub(&xjk.mul(&v(i)))
        .add(&v(k).mul(&xij))
        .add(&xik.mul(&v(j)).scale(aij))
        .add(&v(i).mul(&xjk).scale(&(aik * aij)));

    let distinct = NCPoly::from_terms(combo.terms().iter().filter_map(|(w, c)| {
        let l = w.letters();
        let d = l.len() == 3 && l[0] != l[1] && l[1] != l[2] && l[0] != l[2];
        d.then(|| (w.clone(), c.clone()))
    }));
    let sub = PointAlgebra::real(lam.clone());
    let reduced = sub.normal_form_deg3(&combo)?;

    let g = |a: u32| Gen::v(a);
    let monos: [[Gen; 3]; 9] = [
        [g(i), g(i), g(i)],
        [g(j), g(j), g(j)],
        [g(k), g(k), g(k)],
        [g(i), g(i), g(j)],
        [g(i), g(j), g(j)],
        [g(i), g(i), g(k)],
        [g(i), g(k), g(k)],
        [g(j), g(j), g(k)],
        [g(j), g(k), g(k)],
    ];
    let computed: Vec<Scalar> = monos.iter().map(|m| reduced.coeff(&Word::from_gens(m))).collect();
    let mut leftover = reduced.clone();
    for m in &monos {
        let w = Word::from_gens(m);
        let c = leftover.coeff(&w);
        leftover.add_term(w, &-c);
    }
    let (factor, p) = triple_closed_form(&lij, &lik, &ljk);
    let closed_form = p.iter().map(|x| &factor * x).collect();
    Ok(TripleCombination { computed, closed_form, factor, p, distinct_letter_residual: distinct, leftover })
}

/// Overall factor and the nine `p` coefficients of the closed form.
pub fn triple_closed_form(lij: &Scalar, lik: &Scalar, ljk: &Scalar) -> (Scalar, Vec<Scalar>) {
    let one = Scalar::one();
    let q2 = Scalar::q().pow(2);
    let q4 = q2.pow(2);
    let q6 = q2.pow(3);
    let k = |l: &Scalar| &(&one + &q2) + &(l * &(&one - &q2));
    let lf = |l: &Scalar| &(&one + &q4) + &(l * &(&one - &q4));
    let m = |l: &Scalar| &(&one + &q2) + &(l * &(&q2 - &one));
    let defect = lij * ljk - lij * lik - lik * ljk + one.clone();
    let qm = &q2 - &one;
    let factor = (&defect * &(&qm * &qm) * (&q2 + &one)).div(&(k(lij) * k(lik) * k(ljk)));
    let kk = -(&one + &q2 + q4.clone() + q6.clone())
        + lij * &(&one - &q2 + q4.clone() + q6.clone())
        + ljk * &(-one.clone() - q2.clone() + q4.clone() - q6.clone())
        + (lij * ljk) * (&one - &q2 - q4.clone() + q6.clone());
    let two = Scalar::from_int(2);
    let four = Scalar::from_int(4);
    let p = vec![
        (&four * &(lij - lik) * &q6 * &qm).div(&(lf(lij) * lf(lik))),
        (-(&two * &qm * &kk)).div(&(lf(lij) * lf(ljk))),
        (&four * &(lik - ljk) * &qm).div(&(lf(lik) * lf(ljk))),
        (-(&two * &m(lij) * &q2)).div(&lf(lij)),
        (&two * &m(lij)).div(&lf(lij)),
        (&two * &m(lik) * &q2).div(&lf(lik)),
        (-(&two * &m(lik))).div(&lf(lik)),
        (-(&two * &m(ljk) * &q2)).div(&lf(ljk)),
        (&two * &m(ljk)).div(&lf(ljk)),
    ];
    (factor, p)
}

/// A linear change of generators `u = M v` (or `v = M u`) on three letters.
pub fn apply_matrix(m: &[Vec<Scalar>], from: GenKind, to: GenKind) -> impl Fn(Gen) -> Option<NCPoly> + '_ {
    move |g: Gen| {
        if g.kind != from || !(1..=3).contains(&g.index) {
            return None;
        }
        let row = &m[(g.index - 1) as usize];
        let mut p = NCPoly::zero();
        for (c, coef) in row.iter().enumerate() {
            p.add_term(Word::from_gens(&[Gen::new(to, c as u32 + 1)]), coef);
        }
        Some(p)
    }
}

/// Matrix expressing `u` in terms of `v` for three points with given
/// `lambda_12`, `lambda_23`.
pub fn three_point_matrix(l12: &Scalar, l23: &Scalar) -> Vec<Vec<Scalar>> {
    let one = Scalar::one();
    let s = l12 + l23;
    vec![
        vec![l12 - &one, -s.clone(), l23 + &one],
        vec![-(l12 + &one), s.clone(), -(l23 - &one)],
        vec![
            &(&(l12 + &one) * &(l12 + &one)) * &(l23 + &one),
            -(&(&s * &(l12 - &one)) * &(l23 + &one)),
            &(&(l23 - &one) * &(l23 - &one)) * &(l12 - &one),
        ],
    ]
}

/// `(1/q^2 - 1)(lambda_12 - 1)(lambda_23 + 1)`.
pub fn three_point_epsilon(l12: &Scalar, l23: &Scalar) -> Scalar {
    let one = Scalar::one();
    (&Scalar::q().pow(2).inv() - &one) * (l12 - &one) * (l23 + &one)
}

/// Rules `u_2 u_1 -> q^-2 u_1 u_2`, `u_3 u_1 -> q^-2 u_1 u_3 + e u_2^2`,
/// `u_3 u_2 -> q^-2 u_2 u_3`.
pub fn u_system(e: &Scalar) -> RewriteSystem {
    let a = Scalar::q().pow(2).inv();
    let u = Gen::u;
    let w = |g: &[Gen]| Word::from_gens(g);
    let mut rs = RewriteSystem::new();
    rs.add(w(&[u(2), u(1)]), NCPoly::term(w(&[u(1), u(2)]), a.clone()));
    rs.add(
        w(&[u(3), u(1)]),
        NCPoly::from_terms([(w(&[u(1), u(3)]), a.clone()), (w(&[u(2), u(2)]), e.clone())]),
    );
    rs.add(w(&[u(3), u(2)]), NCPoly::term(w(&[u(2), u(3)]), a));
    rs
}

/// `lhs - rhs` as a relation polynomial from a rewrite system.
pub fn system_relations(rs: &RewriteSystem) -> Vec<NCPoly> {
    rs.rules().iter().map(|r| NCPoly::word(r.lhs.clone()).sub(&r.rhs)).collect()
}

#[derive(Clone, Debug)]
pub struct ThreePointReport {
    pub lambda12: Scalar,
    pub lambda23: Scalar,
    pub lambda13: Scalar,
    pub matrix: Vec<Vec<Scalar>>,
    pub determinant: Scalar,
    pub expected_determinant: Scalar,
    pub epsilon: Scalar,
    /// Computed `B_12, B_13, B_23` in the `v` letters.
    pub b_computed: Vec<NCPoly>,
    /// Residues of `B_ab` against the closed expressions.
    pub b_residues: Vec<NCPoly>,
    /// `A_13` as displayed, rewritten with the `u` rules.
    pub a13_residue: NCPoly,
    /// True when the `u` relations span the same degree-2 space as the
    /// `v` relations after the change of generators.
    pub same_ideal: bool,
    pub overlap_residues: Vec<NCPoly>,
    /// `(u_3 u_2) u_1` and `u_3 (u_2 u_1)` after reduction.
    pub overlap_sides: (NCPoly, NCPoly),
}

impl ThreePointReport {
    pub fn passed(&self) -> bool {
        self.determinant == self.expected_determinant
            && self.b_residues.iter().all(NCPoly::is_zero)
            && self.same_ideal
            && self.overlap_residues.iter().all(NCPoly::is_zero)
    }
}

/// `-(1+q^2)(v_b v_a - v_a v_b) + (1-q^2)(v_a^2 - v_b^2 + l (v_a - v_b)^2)`.
pub fn b_expression(a: u32, b: u32, l: &Scalar) -> NCPoly {
    let q2 = Scalar::q().pow(2);
    let one = Scalar::one();
    let va = NCPoly::gen(Gen::v(a));
    let vb = NCPoly::gen(Gen::v(b));
    let d = va.sub(&vb);
    vb.commutator(&va)
        .scale(&-(&one + &q2))
        .add(&va.mul(&va).sub(&vb.mul(&vb)).add(&d.mul(&d).scale(l)).scale(&(&one - &q2)))
}

/// Cofactor combinations of `A_12, A_13, A_23` with the matrix entries.
fn cofactor_combinations(k: &[Vec<Scalar>], a: &[NCPoly; 3], det: &Scalar) -> Vec<NCPoly> {
    let dinv = det.inv();
    let comb = |c: [(&Scalar, i64); 3]| {
        let mut p = NCPoly::zero();
        for (idx, (s, sign)) in c.iter().enumerate() {
            p.add_scaled(&a[idx], &(*s * &Scalar::from_int(*sign)));
        }
        p.scale(&dinv)
    };
    vec![
        comb([(&k[2][2], 1), (&k[1][2], -1), (&k[0][2], 1)]),
        comb([(&k[2][1], -1), (&k[1][1], 1), (&k[0][1], -1)]),
        comb([(&k[2][0], 1), (&k[1][0], -1), (&k[0][0], 1)]),
    ]
}

/// Three points with the Jacobi condition imposed through
/// `lambda_13 = (1 + lambda_12 lambda_23)/(lambda_12 + lambda_23)`.
pub fn three_point_u_form(l12: &Scalar, l23: &Scalar) -> Result<ThreePointReport, PointAlgError> {
    let one = Scalar::one();
    let q2 = Scalar::q().pow(2);
    let sum = l12 + l23;
    if sum.is_zero() {
        return Err(PointAlgError::SingularTransform);
    }
    let l13 = (&one + &(l12 * l23)).div(&sum);
    let k = three_point_matrix(l12, l23);
    let det = determinant(&k);
    let expected = Scalar::from_int(-8) * sum.pow(2);
    let eps = three_point_epsilon(l12, l23);

    let u = |i: u32| NCPoly::gen(Gen::u(i));
    let two = Scalar::from_int(2);
    let a12 = u(1).mul(&u(2)).scale(&two).sub(&u(2).mul(&u(1)).scale(&(&two * &q2)));
    let a23 = u(2).mul(&u(3)).scale(&two).sub(&u(3).mul(&u(2)).scale(&(&two * &q2)));
    let cross = (&one - &q2) * (l12 - &one) * (l23 + &one);
    let a13_displayed = u(1)
        .mul(&u(3))
        .scale(&two)
        .sub(&u(3).mul(&u(1)).scale(&(&two * &q2)))
        .add(&u(2).mul(&u(2)).scale(&cross));
    // The combination that vanishes under the u rules.
    let a13 = u(1)
        .mul(&u(3))
        .scale(&two)
        .sub(&u(3).mul(&u(1)).scale(&(&two * &q2)))
        .add(&u(2).mul(&u(2)).scale(&(&two * &q2 * &eps)));
    let rs = u_system(&eps);
    let a13_residue = rs.reduce(&a13_displayed)?;

    let to_v = apply_matrix(&k, GenKind::U, GenKind::V);
    let a_v = [a12, a13, a23].map(|p| p.linear_substitute(&to_v));
    let b_computed = cofactor_combinations(&k, &a_v, &det);
    let expected_b = [b_expression(1, 2, l12), b_expression(1, 3, &l13), b_expression(2, 3, l23)];
    let b_residues = b_computed.iter().zip(&expected_b).map(|(c, e)| c.sub(e)).collect();

    let mut lam = LambdaMatrix::new(vec![1, 2, 3]);
    lam.set(1, 2, l12.clone());
    lam.set(1, 3, l13.clone());
    lam.set(2, 3, l23.clone());
    let alg = PointAlgebra::real(lam);
    let v_span = Echelon::from_span(alg.relations().iter());
    let u_rel_v: Vec<NCPoly> = system_relations(&rs).iter().map(|p| p.linear_substitute(&to_v)).collect();
    let same_ideal = u_rel_v.iter().all(|p| v_span.contains(p))
        && Echelon::from_span(u_rel_v.iter()).rank() == v_span.rank();

    let overlap_residues: Vec<NCPoly> = rs.overlaps()?.into_iter().map(|o| o.residue).collect();
    let reduced = |p: &NCPoly| rs.reduce(p);
    let u3 = Word::from_gens(&[Gen::u(3)]);
    let u1 = Word::from_gens(&[Gen::u(1)]);
    let left = reduced(&reduced(&NCPoly::monomial(&[Gen::u(3), Gen::u(2)]))?.mul_word_right(&u1))?;
    let right = reduced(&reduced(&NCPoly::monomial(&[Gen::u(2), Gen::u(1)]))?.mul_word_left(&u3))?;
    Ok(ThreePointReport {
        lambda12: l12.clone(),
        lambda23: l23.clone(),
        lambda13: l13,
        matrix: k.clone(),
        determinant: det,
        expected_determinant: expected,
        epsilon: eps,
        b_computed,
        b_residues,
        a13_residue,
        same_ideal,
        overlap_residues,
        overlap_sides: (left, right),
    })
}

/// Tries the index permutations of a concrete three-point lambda matrix
/// until the change of generators is invertible.
pub fn three_point_any_order(lam: &LambdaMatrix) -> Result<(Vec<u32>, ThreePointReport), PointAlgError> {
    let l = lam.labels();
    if l.len() != 3 {
        return Err(PointAlgError::SizeLimit("three points required".into()));
    }
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        let (a, b, c) = (l[p[0]], l[p[1]], l[p[2]]);
        let (l12, l23) = (lam.get(a, b), lam.get(b, c));
        if (&l12 + &l23).is_zero() {
            continue;
        }
        let rep = three_point_u_form(&l12, &l23)?;
        return Ok((vec![a, b, c], rep));
    }
    Err(PointAlgError::SingularTransform)
}

#[derive(Clone, Debug)]
pub struct ExceptionalReport {
    pub determinant: Scalar,
    pub expected_determinant: Scalar,
    pub b_computed: Vec<NCPoly>,
    pub b_residues: Vec<NCPoly>,
    pub same_ideal: bool,
    pub overlap_residues: Vec<NCPoly>,
    pub dimension3: usize,
}

impl ExceptionalReport {
    pub fn passed(&self) -> bool {
        self.determinant == self.expected_determinant
            && self.b_residues.iter().all(NCPoly::is_zero)
            && self.same_ideal
            && self.overlap_residues.iter().all(NCPoly::is_zero)
            && self.dimension3 == 10
    }
}

/// Matrix expressing `v` in terms of `u` for the exceptional structure.
pub fn exceptional_matrix() -> Vec<Vec<Scalar>> {
    let q2 = Scalar::q().pow(2);
    let one = Scalar::one();
    vec![
        vec![q2.clone(), q2.clone(), q2.clone()],
        vec![one.clone(), q2.clone(), q2.clone()],
        vec![one.clone(), one, q2],
    ]
}

/// Rules `u_2 u_1 -> 0`, `u_3 u_1 -> q^-2 (u_1 u_3 + u_1 u_2)`,
/// `u_3 u_2 -> q^-2 (u_2 u_3 - u_1 u_2)`.
pub fn exceptional_u_system() -> RewriteSystem {
    let a = Scalar::q().pow(2).inv();
    let u = Gen::u;
    let w = |g: &[Gen]| Word::from_gens(g);
    let mut rs = RewriteSystem::new();
    rs.add(w(&[u(2), u(1)]), NCPoly::zero());
    rs.add(
        w(&[u(3), u(1)]),
        NCPoly::from_terms([(w(&[u(1), u(3)]), a.clone()), (w(&[u(1), u(2)]), a.clone())]),
    );
    rs.add(
        w(&[u(3), u(2)]),
        NCPoly::from_terms([(w(&[u(2), u(3)]), a.clone()), (w(&[u(1), u(2)]), -a)]),
    );
    rs
}

pub fn exceptional_u_form() -> Result<ExceptionalReport, PointAlgError> {
    let one = Scalar::one();
    let q2 = Scalar::q().pow(2);
    let k = exceptional_matrix();
    let det = determinant(&k);
    let expected = &q2 * &(&q2 - &one).pow(2);
    let v = |i: u32| NCPoly::gen(Gen::v(i));
    let opq = &one + &q2;
    let a = |i: u32, j: u32| {
        v(j).mul(&v(i)).scale(&-opq.clone()).add(&v(i).mul(&v(i))).add(&v(j).mul(&v(j)).scale(&q2))
    };
    let to_u = apply_matrix(&k, GenKind::V, GenKind::U);
    let a_u = [a(1, 2), a(1, 3), a(2, 3)].map(|p| p.linear_substitute(&to_u));
    let b_computed = cofactor_combinations(&k, &a_u, &det);
    let u = |i: u32| NCPoly::gen(Gen::u(i));
    let uu = |i: u32, j: u32| u(i).mul(&u(j));
    let expected_b = [
        uu(2, 1).scale(&-opq.clone()),
        uu(1, 2).add(&uu(2, 1)).add(&uu(1, 3)).sub(&uu(3, 1).scale(&q2)),
        uu(1, 2).neg().sub(&uu(2, 1)).add(&uu(2, 3)).sub(&uu(3, 2).scale(&q2)),
    ];
    let b_residues = b_computed.iter().zip(&expected_b).map(|(c, e)| c.sub(e)).collect();

    let rs = exceptional_u_system();
    let alg = PointAlgebra::exceptional(vec![1, 2, 3]);
    let v_rel_u: Vec<NCPoly> = alg.relations().iter().map(|p| p.linear_substitute(&to_u)).collect();
    let u_span = Echelon::from_span(system_relations(&rs).iter());
    let same_ideal = v_rel_u.iter().all(|p| u_span.contains(p))
        && Echelon::from_span(v_rel_u.iter()).rank() == u_span.rank();
    let overlap_residues = rs.overlaps()?.into_iter().map(|o| o.residue).collect();
    let dimension3 = alg.graded_dimension(3)?;
    Ok(ExceptionalReport {
        determinant: det,
        expected_determinant: expected,
        b_computed,
        b_residues,
        same_ideal,
        overlap_residues,
        dimension3,
    })
}

/// The commutator `[v_j, v_i]` reduced to ordered words.
pub fn reduced_commutator(alg: &PointAlgebra, i: u32, j: u32) -> Result<NCPoly, PointAlgError> {
    let vi = NCPoly::gen(Gen::v(i));
    let vj = NCPoly::gen(Gen::v(j));
    Ok(alg.quadratic_system()?.reduce(&vj.commutator(&vi))?)
}

/// `(q^2-1) v_i (v_j - v_i)`, the reduced commutator when `lambda_ij = 1`.
pub fn ones_commutator(i: u32, j: u32, kind: GenKind) -> NCPoly {
    let vi = NCPoly::gen(Gen::new(kind, i));
    let vj = NCPoly::gen(Gen::new(kind, j));
    vi.mul(&vj.sub(&vi)).scale(&(Scalar::q().pow(2) - Scalar::one()))
}

/// Commutative square helper used by the limit checks.
pub fn t_square(i: u32) -> NCPoly {
    cmul(&t(i), &t(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_coefficients() {
        let r = ReductionCoeffs::new(&Scalar::one()).unwrap();
        let q2 = Scalar::q().pow(2);
        assert_eq!(r.alpha, q2);
        assert_eq!(r.beta, Scalar::one() - q2);
        assert!(r.gamma.is_zero());
    }

    #[test]
    fn exceptional_coefficients() {
        let r = ReductionCoeffs::new(&lambda_exceptional()).unwrap();
        let q2 = Scalar::q().pow(2);
        let d = &Scalar::one() + &q2;
        assert!(r.alpha.is_zero());
        assert_eq!(r.beta, d.inv());
        assert_eq!(r.gamma, q2.div(&d));
    }

    #[test]
    fn excluded_value_has_no_rule() {
        assert!(ReductionCoeffs::new(&lambda_no_rule()).is_none());
    }

    #[test]
    fn ordered_word_is_fixed() {
        let alg = PointAlgebra::real(LambdaMatrix::constant(vec![1, 2, 3], &Scalar::one()));
        let w = NCPoly::monomial(&[Gen::v(1), Gen::v(2), Gen::v(3)]);
        assert_eq!(alg.normal_form_deg3(&w).unwrap(), w);
    }
}
