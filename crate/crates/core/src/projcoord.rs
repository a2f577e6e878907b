//! Homogeneous coordinates `x_i, y_i` (with `y_i` invertible) over the point
//! algebra, the invariants `(ij)`, cross ratios built from them and the
//! star-invariant quantum cross ratio.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{Gen, GenKind, NCPoly, StarStructure, Word};
use crate::linalg::quotient_dimension;
use crate::rewrite::{RewriteError, RewriteSystem};
use crate::scalars::{Scalar, ScalarError, StarMap, Var};
use crate::uqaction::{act, lambda_relation, ActionTable, UqError, UqOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("no coordinate parameters for pair ({0},{1})")]
    MissingPair(u32, u32),
    #[error("input of length {0} exceeds the cap for non-polynomial parameters")]
    UnsupportedDegree(usize),
    #[error("pairs {0} and {1} do not commute up to a scalar")]
    NotMonomial(String, String),
    #[error("expected a single inverted pair per term: {0}")]
    Unclearable(String),
    #[error("value is not a fractional-linear function of the cross ratio: {0}")]
    NotMobius(String),
    #[error("odd power of s where a power of q is needed: {0}")]
    OddPower(String),
    #[error("the rules for these parameters are not confluent, normal forms are not canonical")]
    NotConfluent,
    #[error("cross ratio table incomplete after propagation")]
    Incomplete,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Input words longer than this need the polynomial parameters `lambda = 1`.
pub const GENERAL_LENGTH_CAP: usize = 4;

/// Commutation parameters of one ordered pair `i < j`:
/// `x_j x_i = mu1 x_i x_j`, `x_j y_i = mu2 y_i x_j + (mu1 - mu2/q) x_i y_j`, etc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuPair {
    pub mu1: Scalar,
    pub mu2: Scalar,
}

impl MuPair {
    pub fn new(mu1: Scalar, mu2: Scalar) -> Self {
        MuPair { mu1, mu2 }
    }

    /// `mu1 = q^2`, `mu2 = q`: the parameters of `lambda = 1`.
    pub fn ones() -> Self {
        let q = Scalar::q();
        MuPair { mu1: q.pow(2), mu2: q }
    }

    pub fn symbolic(i: u32, j: u32) -> Self {
        MuPair { mu1: Scalar::var(Var::Mu1(i, j)), mu2: Scalar::var(Var::Mu2(i, j)) }
    }

    /// Parameters with `mu2 = q` realizing a given `lambda`.
    pub fn from_lambda(lambda: &Scalar) -> Self {
        let q = Scalar::q();
        MuPair { mu1: &q * &mu_from_lambda(lambda), mu2: q }
    }

    pub fn ratio(&self) -> Scalar {
        self.mu1.div(&self.mu2)
    }

    /// Parameters of the reversed pair:
    /// `mu1' = 1/mu1`, `mu2' = 1/(mu2 m (q + 1/q - m))` with `m = mu1/mu2`.
    pub fn reversed(&self) -> Self {
        let q = Scalar::q();
        let m = self.ratio();
        let mu2 = (&(&self.mu2 * &m) * &(&(&q + &q.inv()) - &m)).inv();
        MuPair { mu1: self.mu1.inv(), mu2 }
    }
}

/// `lambda = (q^2 - 2 q mu + 1)/(1 - q^2)`.
pub fn lambda_from_mu(mu: &Scalar) -> Scalar {
    let q = Scalar::q();
    let one = Scalar::one();
    let q2 = q.pow(2);
    (&(&q2 - &(&Scalar::from_int(2) * &(&q * mu))) + &one).div(&(&one - &q2))
}

/// `mu = (1 + q^2 + lambda (q^2 - 1))/(2q)`.
pub fn mu_from_lambda(lambda: &Scalar) -> Scalar {
    let q = Scalar::q();
    let one = Scalar::one();
    let q2 = q.pow(2);
    (&(&one + &q2) + &(lambda * &(&q2 - &one))).div(&(&Scalar::from_int(2) * &q))
}

fn g(x: Gen) -> NCPoly {
    NCPoly::gen(x)
}

fn w(gs: &[Gen]) -> Word {
    Word::from_gens(gs)
}

/// Coordinate algebra on a set of labels.
#[derive(Clone, Debug)]
pub struct ProjAlgebra {
    labels: Vec<u32>,
    mu: BTreeMap<(u32, u32), MuPair>,
}

impl ProjAlgebra {
    pub fn new(mut labels: Vec<u32>) -> Result<Self, ProjError> {
        labels.sort_unstable();
        let n = labels.len();
        labels.dedup();
        if labels.len() != n {
            return Err(ProjError::InvalidLabels("repeated label".into()));
        }
        Ok(ProjAlgebra { labels, mu: BTreeMap::new() })
    }

    /// Every pair has `lambda = 1`.
    pub fn ones(labels: Vec<u32>) -> Result<Self, ProjError> {
        let mut a = ProjAlgebra::new(labels)?;
        for (i, j) in a.pairs() {
            a.mu.insert((i, j), MuPair::ones());
        }
        Ok(a)
    }

    /// Independent symbols `mu1_ij`, `mu2_ij` for every pair.
    pub fn symbolic(labels: Vec<u32>) -> Result<Self, ProjError> {
        let mut a = ProjAlgebra::new(labels)?;
        for (i, j) in a.pairs() {
            a.mu.insert((i, j), MuPair::symbolic(i, j));
        }
        Ok(a)
    }

    pub fn with_pair(mut self, i: u32, j: u32, m: MuPair) -> Self {
        let (a, b) = (i.min(j), i.max(j));
        let m = if i < j { m } else { m.reversed() };
        self.mu.insert((a, b), m);
        self
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (a, &i) in self.labels.iter().enumerate() {
            for &j in &self.labels[a + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    /// Parameters for `(a,b)` in the given order.
    pub fn mu_pair(&self, a: u32, b: u32) -> Result<MuPair, ProjError> {
        let m = self.mu.get(&(a.min(b), a.max(b))).ok_or(ProjError::MissingPair(a, b))?;
        Ok(if a < b { m.clone() } else { m.reversed() })
    }

    pub fn mu(&self, a: u32, b: u32) -> Result<Scalar, ProjError> {
        Ok(self.mu_pair(a, b)?.ratio())
    }

    pub fn lambda(&self, a: u32, b: u32) -> Result<Scalar, ProjError> {
        Ok(lambda_from_mu(&self.mu(a, b)?))
    }

    /// True when every pair has `mu1 = q^(+-1) mu2`.
    pub fn is_polynomial_type(&self) -> bool {
        let q = Scalar::q();
        self.mu.values().all(|m| {
            let r = m.ratio();
            r == q || r == q.inv()
        })
    }

    pub fn gens(&self) -> Vec<Gen> {
        self.labels.iter().flat_map(|&i| [Gen::y(i), Gen::x(i)]).collect()
    }

    /// Defining relations without inverse letters.
    pub fn relations(&self) -> Vec<NCPoly> {
        let q = Scalar::q();
        let mut out = Vec::new();
        for &i in &self.labels {
            out.push(g(Gen::x(i)).mul(&g(Gen::y(i))).sub(&g(Gen::y(i)).mul(&g(Gen::x(i))).scale(&q)));
        }
        for (i, j) in self.pairs() {
            let m = &self.mu[&(i, j)];
            let (xi, xj, yi, yj) = (g(Gen::x(i)), g(Gen::x(j)), g(Gen::y(i)), g(Gen::y(j)));
            let d = &m.mu1 - &m.mu2.div(&q);
            let c = &m.mu1 - &(&q * &m.mu2);
            out.push(xj.mul(&xi).sub(&xi.mul(&xj).scale(&m.mu1)));
            out.push(yj.mul(&yi).sub(&yi.mul(&yj).scale(&m.mu1)));
            out.push(xj.mul(&yi).sub(&yi.mul(&xj).scale(&m.mu2)).sub(&xi.mul(&yj).scale(&d)));
            out.push(yj.mul(&xi).sub(&xi.mul(&yj).scale(&m.mu2)).sub(&yi.mul(&xj).scale(&c)));
        }
        out
    }

    /// Rules sorting letters by label with the `y`-power before `x`.
    /// The rules for `y^-1` follow from the defining relations by two-sided
    /// multiplication with inverses.
    pub fn rewrite_system(&self) -> RewriteSystem {
        let q = Scalar::q();
        let qi = q.inv();
        let one = Scalar::one();
        let mut rs = RewriteSystem::new().with_step_cap(500_000);
        for &i in &self.labels {
            let (x, y, yi) = (Gen::x(i), Gen::y(i), Gen::y_inv(i));
            rs.add(w(&[x, y]), NCPoly::term(w(&[y, x]), q.clone()));
            rs.add(w(&[x, yi]), NCPoly::term(w(&[yi, x]), qi.clone()));
            rs.add(w(&[y, yi]), NCPoly::one());
            rs.add(w(&[yi, y]), NCPoly::one());
        }
        for (i, j) in self.pairs() {
            let m = &self.mu[&(i, j)];
            let (xi, xj, yi, yj) = (Gen::x(i), Gen::x(j), Gen::y(i), Gen::y(j));
            let (yii, yji) = (Gen::y_inv(i), Gen::y_inv(j));
            let d = &m.mu1 - &m.mu2.div(&q);
            let c = &m.mu1 - &(&q * &m.mu2);
            let m1i = m.mu1.inv();
            let m2i = m.mu2.inv();
            rs.add(w(&[xj, xi]), NCPoly::term(w(&[xi, xj]), m.mu1.clone()));
            rs.add(w(&[yj, yi]), NCPoly::term(w(&[yi, yj]), m.mu1.clone()));
            rs.add(
                w(&[xj, yi]),
                NCPoly::from_terms([(w(&[yi, xj]), m.mu2.clone()), (w(&[xi, yj]), d.clone())]),
            );
            rs.add(
                w(&[yj, xi]),
                NCPoly::from_terms([(w(&[xi, yj]), m.mu2.clone()), (w(&[yi, xj]), c.clone())]),
            );
            rs.add(w(&[yji, yi]), NCPoly::term(w(&[yi, yji]), m1i.clone()));
            rs.add(w(&[yj, yii]), NCPoly::term(w(&[yii, yj]), m1i.clone()));
            rs.add(w(&[yji, yii]), NCPoly::term(w(&[yii, yji]), m.mu1.clone()));
            let k = &(&m1i * &m2i) * &qi;
            rs.add(
                w(&[yji, xi]),
                NCPoly::from_terms([
                    (w(&[xi, yji]), m2i.clone()),
                    (w(&[yi, yji, yji, xj]), -(&c * &k)),
                ]),
            );
            rs.add(
                w(&[xj, yii]),
                NCPoly::from_terms([
                    (w(&[yii, xj]), m2i.clone()),
                    (w(&[yii, yii, xi, yj]), -(&d * &k)),
                ]),
            );
        }
        let _ = one;
        rs
    }

    /// Canonical form: labels ascending, `y`-powers before `x` within a label.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, ProjError> {
        if !self.is_polynomial_type() {
            if let Some(len) = p.terms().keys().map(Word::len).max() {
                if len > GENERAL_LENGTH_CAP {
                    return Err(ProjError::UnsupportedDegree(len));
                }
            }
        }
        Ok(self.rewrite_system().reduce(p)?)
    }

    /// `v_i = s x_i y_i^-1`.
    pub fn embedded_v(&self, i: u32) -> NCPoly {
        NCPoly::monomial(&[Gen::x(i), Gen::y_inv(i)]).scale(&Scalar::s())
    }

    /// Replaces `v` letters by their coordinate expressions.
    pub fn embed(&self, p: &NCPoly) -> NCPoly {
        p.linear_substitute(&|gen: Gen| (gen.kind == GenKind::V).then(|| self.embedded_v(gen.index)))
    }

    /// Degree-`d` dimension of the presentation without inverses.
    pub fn graded_dimension(&self, d: usize) -> Result<usize, ProjError> {
        if self.labels.len() > 2 || d > 3 {
            return Err(ProjError::UnsupportedDegree(d));
        }
        Ok(quotient_dimension(&self.gens(), &self.relations(), d))
    }
}

/// Outcome of embedding the point letters into the coordinate algebra.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub pair: (u32, u32),
    pub lambda: Scalar,
    /// Quadratic relation of the pair evaluated on the embedded letters.
    pub relation_residue: NCPoly,
    /// `(operator, computed image, image required of a point letter)` on `v_i`.
    pub action: Vec<(UqOp, NCPoly, NCPoly)>,
}

impl EmbeddingReport {
    pub fn relation_holds(&self) -> bool {
        self.relation_residue.is_zero()
    }

    pub fn action_matches(&self) -> bool {
        self.action.iter().all(|(_, a, b)| a == b)
    }

    pub fn passed(&self) -> bool {
        self.relation_holds() && self.action_matches()
    }
}

/// Checks that `v_i = s x_i y_i^-1` satisfy the point relation with
/// `lambda` read off from `mu`, and compares the action on `v_i` with the
/// action on a point letter.
pub fn check_embedding(alg: &ProjAlgebra, i: u32, j: u32) -> Result<EmbeddingReport, ProjError> {
    if !alg.rewrite_system().overlaps()?.iter().all(|o| o.residue.is_zero()) {
        return Err(ProjError::NotConfluent);
    }
    let lambda = alg.lambda(i, j)?;
    let rel = lambda_relation(i, j, &lambda, GenKind::V);
    let relation_residue = alg.normal_form(&alg.embed(&rel))?;
    let vi = alg.embedded_v(i);
    let mut action = Vec::new();
    for op in UqOp::ALL {
        let computed = alg.normal_form(&act(ActionTable::Projective, op, &vi)?)?;
        let point = act(ActionTable::Point, op, &NCPoly::gen(Gen::v(i)))?;
        let expected = alg.normal_form(&alg.embed(&point))?;
        action.push((op, computed, expected));
    }
    Ok(EmbeddingReport { pair: (i, j), lambda, relation_residue, action })
}

/// `(ij) = s^-1 x_i y_j - s y_i x_j`.
pub fn pair_invariant(i: u32, j: u32) -> NCPoly {
    let s = Scalar::s();
    NCPoly::monomial(&[Gen::x(i), Gen::y(j)])
        .scale(&s.inv())
        .sub(&NCPoly::monomial(&[Gen::y(i), Gen::x(j)]).scale(&s))
}

#[derive(Clone, Debug)]
pub struct InvariantCertificate {
    pub pair: (u32, u32),
    pub e: NCPoly,
    pub f: NCPoly,
    /// `K((ij)) - (ij)`.
    pub k: NCPoly,
    /// `y_i (v_i - v_j) y_j - (ij)`.
    pub factorization: NCPoly,
}

impl InvariantCertificate {
    pub fn passed(&self) -> bool {
        self.e.is_zero() && self.f.is_zero() && self.k.is_zero() && self.factorization.is_zero()
    }
}

pub fn certify_invariant(alg: &ProjAlgebra, i: u32, j: u32) -> Result<InvariantCertificate, ProjError> {
    if i == j {
        return Err(ProjError::InvalidLabels(format!("({i}{i})")));
    }
    let p = pair_invariant(i, j);
    let nf = |x: &NCPoly| alg.normal_form(x);
    let e = nf(&act(ActionTable::Projective, UqOp::E, &p)?)?;
    let f = nf(&act(ActionTable::Projective, UqOp::F, &p)?)?;
    let k = nf(&act(ActionTable::Projective, UqOp::K, &p)?.sub(&p))?;
    let diff = alg.embedded_v(i).sub(&alg.embedded_v(j));
    let fact = g(Gen::y(i)).mul(&diff).mul(&g(Gen::y(j))).sub(&p);
    let factorization = nf(&fact)?;
    Ok(InvariantCertificate { pair: (i, j), e, f, k, factorization })
}

/// Residues of the commutation rules among the invariants of four ordered
/// labels, and of `(ij)* - (ij)`, in the `lambda = 1` algebra.
pub fn invariant_commutation_rules(labels: [u32; 4]) -> Result<Vec<(String, NCPoly)>, ProjError> {
    let [i, j, k, l] = labels;
    if !(i < j && j < k && k < l) {
        return Err(ProjError::InvalidLabels("expected four increasing labels".into()));
    }
    let alg = ProjAlgebra::ones(labels.to_vec())?;
    let q = Scalar::q();
    let p = pair_invariant;
    let prod = |a: &NCPoly, b: &NCPoly| a.mul(b);
    let rules: Vec<(String, NCPoly)> = vec![
        (format!("({k}{l})({i}{j}) = q^6 ({i}{j})({k}{l})"), prod(&p(k, l), &p(i, j)).sub(&prod(&p(i, j), &p(k, l)).scale(&q.pow(6)))),
        (format!("({j}{k})({i}{l}) = ({i}{l})({j}{k})"), prod(&p(j, k), &p(i, l)).sub(&prod(&p(i, l), &p(j, k)))),
        (
            format!("({j}{l})({i}{k}) = q^4 ({i}{k})({j}{l}) + (q^6 - q^4)({i}{j})({k}{l})"),
            prod(&p(j, l), &p(i, k))
                .sub(&prod(&p(i, k), &p(j, l)).scale(&q.pow(4)))
                .sub(&prod(&p(i, j), &p(k, l)).scale(&(q.pow(6) - q.pow(4)))),
        ),
        (format!("({j}{k})({i}{j}) = q^4 ({i}{j})({j}{k})"), prod(&p(j, k), &p(i, j)).sub(&prod(&p(i, j), &p(j, k)).scale(&q.pow(4)))),
        (format!("({i}{k})({i}{j}) = q^2 ({i}{j})({i}{k})"), prod(&p(i, k), &p(i, j)).sub(&prod(&p(i, j), &p(i, k)).scale(&q.pow(2)))),
        (format!("({j}{k})({i}{k}) = q^2 ({i}{k})({j}{k})"), prod(&p(j, k), &p(i, k)).sub(&prod(&p(i, k), &p(j, k)).scale(&q.pow(2)))),
        (format!("({i}{j})* = ({i}{j})"), StarStructure::real().apply(&p(i, j)).sub(&p(i, j))),
    ];
    rules.into_iter().map(|(n, r)| Ok((n, alg.normal_form(&r)?))).collect()
}

/// `y_a L = L' y_a` for `L` linear in point letters, with
/// `y_a v_a = q^-1 v_a y_a` and
/// `y_a v_b = ((q + 1/q - m_ab) v_b + (m_ab - q) v_a) y_a`.
pub fn conjugate_by_y(a: u32, l: &NCPoly, m: &dyn Fn(u32, u32) -> Scalar) -> NCPoly {
    let q = Scalar::q();
    let qq = &q + &q.inv();
    let mut out = NCPoly::zero();
    for (word, c) in l.terms() {
        let b = word.letters()[0].index;
        if b == a {
            out.add_term(w(&[Gen::v(a)]), &(c * &q.inv()));
        } else {
            let mab = m(a, b);
            out.add_term(w(&[Gen::v(b)]), &(c * &(&qq - &mab)));
            out.add_term(w(&[Gen::v(a)]), &(c * &(&mab - &q)));
        }
    }
    out
}

/// `(alpha, beta)` with `y_a v_b = (alpha v_b + beta v_a) y_a`, found by
/// rewriting in the coordinate algebra.
pub fn conjugation_by_rewriting(alg: &ProjAlgebra, a: u32, b: u32) -> Result<Option<(Scalar, Scalar)>, ProjError> {
    let lhs = alg.normal_form(&g(Gen::y(a)).mul(&alg.embedded_v(b)))?;
    let va_y = alg.normal_form(&alg.embedded_v(a).mul(&g(Gen::y(a))))?;
    let vb_y = alg.normal_form(&alg.embedded_v(b).mul(&g(Gen::y(a))))?;
    // vb_y has a word absent from va_y; that fixes alpha, then beta.
    let wb = match vb_y.terms().keys().find(|k| va_y.coeff(k).is_zero()) {
        Some(w) => w.clone(),
        None => return Ok(None),
    };
    let alpha = lhs.coeff(&wb).div(&vb_y.coeff(&wb));
    let left = lhs.sub(&vb_y.scale(&alpha));
    let beta = match va_y.lead() {
        Some((w, c)) => left.coeff(w).div(c),
        None => return Ok(None),
    };
    let rest = left.sub(&va_y.scale(&beta));
    Ok(rest.is_zero().then_some((alpha, beta)))
}

fn vdiff(a: u32, b: u32) -> NCPoly {
    g(Gen::v(a)).sub(&g(Gen::v(b)))
}

/// The four linear factors of a cross ratio after moving `y_i` through,
/// next to the closed expressions they should equal.
#[derive(Clone, Debug)]
pub struct CrossRatioInV {
    pub labels: [u32; 4],
    /// Numerator, inverted, numerator, inverted.
    pub computed: [NCPoly; 4],
    pub closed: [NCPoly; 4],
}

impl CrossRatioInV {
    pub fn mismatches(&self) -> Vec<usize> {
        (0..4).filter(|&n| self.computed[n] != self.closed[n]).collect()
    }

    pub fn matches(&self) -> bool {
        self.mismatches().is_empty()
    }
}

/// `C_ijkl = y_i [il][kl]^-1[kj][ij]^-1 y_i^-1` with `[ab] = v_a - v_b`,
/// rewritten as a product of linear factors in the point letters.
pub fn cross_ratio_in_v(labels: [u32; 4], m: &dyn Fn(u32, u32) -> Scalar) -> Result<CrossRatioInV, ProjError> {
    let [i, j, k, l] = labels;
    let mut sorted = labels;
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(ProjError::InvalidLabels(format!("{labels:?} not distinct")));
    }
    let computed = [
        conjugate_by_y(i, &vdiff(i, l), m),
        conjugate_by_y(i, &vdiff(k, l), m),
        conjugate_by_y(i, &vdiff(k, j), m),
        conjugate_by_y(i, &vdiff(i, j), m),
    ];
    let q = Scalar::q();
    let c = |a: u32, b: u32| &(&q + &q.inv()) - &m(a, b);
    let v = |a: u32| g(Gen::v(a));
    let closed = [
        vdiff(i, l).scale(&c(i, l)),
        v(k).scale(&c(i, k)).sub(&v(l).scale(&c(i, l))).add(&v(i).scale(&(&m(i, k) - &m(i, l)))),
        v(k).scale(&c(i, k)).sub(&v(j).scale(&c(i, j))).add(&v(i).scale(&(&m(i, k) - &m(i, j)))),
        vdiff(i, j).scale(&c(i, j)),
    ];
    Ok(CrossRatioInV { labels, computed, closed })
}

/// `(a b)` as an unordered-label invariant; stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(pub u32, pub u32);

impl Pair {
    pub fn oriented(self) -> (Pair, bool) {
        if self.0 < self.1 {
            (self, false)
        } else {
            (Pair(self.1, self.0), true)
        }
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}{})", self.0, self.1)
    }
}

/// Scalar times a product of invariants with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMonomial {
    pub coef: Scalar,
    pub factors: Vec<(Pair, i32)>,
}

impl PairMonomial {
    pub fn new(coef: Scalar, factors: Vec<(Pair, i32)>) -> Self {
        PairMonomial { coef, factors }
    }

    /// `C_abcd = (ad)(cd)^-1 (cb)(ab)^-1`.
    pub fn cross_ratio(a: u32, b: u32, c: u32, d: u32) -> Self {
        PairMonomial::new(
            Scalar::one(),
            vec![(Pair(a, d), 1), (Pair(c, d), -1), (Pair(c, b), 1), (Pair(a, b), -1)],
        )
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty() && self.coef.is_one()
    }

    pub fn mul(&self, o: &PairMonomial) -> PairMonomial {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().copied());
        PairMonomial::new(&self.coef * &o.coef, f)
    }

    pub fn inverse(&self) -> PairMonomial {
        PairMonomial::new(self.coef.inv(), self.factors.iter().rev().map(|&(p, e)| (p, -e)).collect())
    }

    /// Orients every pair using `(ba) = -(ab)` and cancels adjacent factors.
    pub fn reduced(&self) -> PairMonomial {
        let mut coef = self.coef.clone();
        let mut out: Vec<(Pair, i32)> = Vec::new();
        for &(p, e) in &self.factors {
            let (p, flip) = p.oriented();
            if flip && e % 2 != 0 {
                coef = -coef;
            }
            match out.last_mut() {
                Some((lp, le)) if *lp == p => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((p, e)),
            }
        }
        PairMonomial::new(coef, out)
    }

    /// Adjoint: factors reversed, coefficient starred, invariants self-adjoint.
    pub fn star(&self) -> PairMonomial {
        PairMonomial::new(StarMap::real().apply(&self.coef), self.factors.iter().rev().copied().collect())
    }
}

impl std::fmt::Display for PairMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.coef)?;
        for (p, e) in &self.factors {
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Products of invariants in the `lambda = 1` algebra, with the scalar
/// commutation factor of every pair of invariants computed by rewriting.
#[derive(Clone, Debug)]
pub struct PairCalculus {
    alg: ProjAlgebra,
    comm: BTreeMap<(Pair, Pair), Option<Scalar>>,
}

impl PairCalculus {
    pub fn new(labels: Vec<u32>) -> Result<Self, ProjError> {
        let alg = ProjAlgebra::ones(labels)?;
        let pairs: Vec<Pair> = alg.pairs().into_iter().map(|(a, b)| Pair(a, b)).collect();
        let mut comm = BTreeMap::new();
        for (n, &p) in pairs.iter().enumerate() {
            for &r in &pairs[n + 1..] {
                let pr = alg.normal_form(&pair_invariant(p.0, p.1).mul(&pair_invariant(r.0, r.1)))?;
                let rp = alg.normal_form(&pair_invariant(r.0, r.1).mul(&pair_invariant(p.0, p.1)))?;
                let c = pr.lead().map(|(w, c)| rp.coeff(w).div(c));
                let c = c.filter(|c| rp.sub(&pr.scale(c)).is_zero());
                comm.insert((p, r), c);
            }
        }
        Ok(PairCalculus { alg, comm })
    }

    pub fn algebra(&self) -> &ProjAlgebra {
        &self.alg
    }

    /// `c` with `(r)(p) = c (p)(r)` for `p < r`, when it exists.
    pub fn commutation(&self, p: Pair, r: Pair) -> Option<Scalar> {
        if p == r {
            return Some(Scalar::one());
        }
        self.comm.get(&(p, r)).cloned().flatten()
    }

    /// Coefficient picked up by swapping adjacent `left^x right^y` into `right^y left^x`.
    fn swap_coef(&self, left: (Pair, i32), right: (Pair, i32)) -> Result<Scalar, ProjError> {
        let (lp, x) = left;
        let (rp, y) = right;
        if lp == rp {
            return Ok(Scalar::one());
        }
        let not_mono = || ProjError::NotMonomial(lp.to_string(), rp.to_string());
        if lp < rp {
            let c = self.commutation(lp, rp).ok_or_else(not_mono)?;
            Ok(c.powi(-x * y))
        } else {
            let c = self.commutation(rp, lp).ok_or_else(not_mono)?;
            Ok(c.powi(x * y))
        }
    }

    /// Sorted form of a monomial whose factors commute up to scalars.
    pub fn canonical(&self, m: &PairMonomial) -> Result<PairMonomial, ProjError> {
        let mut m = m.reduced();
        let n = m.factors.len();
        for a in 0..n {
            for b in 0..n - 1 - a {
                if m.factors[b].0 > m.factors[b + 1].0 {
                    let c = self.swap_coef(m.factors[b], m.factors[b + 1])?;
                    m.coef = &m.coef * &c;
                    m.factors.swap(b, b + 1);
                }
            }
        }
        Ok(PairMonomial::new(m.coef.clone(), m.factors).reduced())
    }

    /// `a` with `x = a y`, when both sort to the same factors.
    pub fn ratio(&self, x: &PairMonomial, y: &PairMonomial) -> Result<Option<Scalar>, ProjError> {
        let cx = self.canonical(x)?;
        let cy = self.canonical(y)?;
        Ok((cx.factors == cy.factors).then(|| cx.coef.div(&cy.coef)))
    }

    pub fn expand(&self, m: &PairMonomial) -> Result<NCPoly, ProjError> {
        let m = m.reduced();
        let mut p = NCPoly::constant(m.coef.clone());
        for &(pair, e) in &m.factors {
            if e < 0 {
                return Err(ProjError::Unclearable(m.to_string()));
            }
            let inv = pair_invariant(pair.0, pair.1);
            for _ in 0..e {
                p = p.mul(&inv);
            }
        }
        Ok(p)
    }

    /// Normal form of `sum(terms) * P_1 * P_2 * ...`, clearing one shared
    /// inverted pair `P` per round. Each `P^-1` is moved to the right end,
    /// terms without it get `P` appended.
    pub fn clear_right(&self, terms: &[PairMonomial]) -> Result<NCPoly, ProjError> {
        let mut terms: Vec<PairMonomial> = terms.iter().map(PairMonomial::reduced).collect();
        loop {
            let mut inv: Option<Pair> = None;
            for t in &terms {
                if let Some(&(p, e)) = t.factors.iter().rev().find(|&&(_, e)| e < 0) {
                    if e != -1 {
                        return Err(ProjError::Unclearable(t.to_string()));
                    }
                    inv.get_or_insert(p);
                }
            }
            let Some(p) = inv else { break };
            let mut next = Vec::with_capacity(terms.len());
            for mut t in terms {
                let count = t.factors.iter().filter(|&&(r, e)| r == p && e < 0).count();
                if count > 1 {
                    return Err(ProjError::Unclearable(t.to_string()));
                }
                if let Some(pos) = t.factors.iter().position(|&(r, e)| r == p && e < 0) {
                    for b in pos..t.factors.len() - 1 {
                        let c = self.swap_coef(t.factors[b], t.factors[b + 1])?;
                        t.coef = &t.coef * &c;
                        t.factors.swap(b, b + 1);
                    }
                    t.factors.pop();
                } else {
                    t.factors.push((p, 1));
                }
                next.push(t.reduced());
            }
            terms = next;
        }
        let mut total = NCPoly::zero();
        for t in &terms {
            total = total.add(&self.expand(t)?);
        }
        self.alg.normal_form(&total)
    }
}

/// Position permutations of four labels, in the order `i j k l` is listed.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut s = p;
                    s.sort_unstable();
                    if s == [0, 1, 2, 3] {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The symbol standing for `C_ijkl` of the increasing quadruple.
pub fn cross_ratio_symbol(labels: [u32; 4]) -> Var {
    Var::sym(&format!("C[{},{},{},{}]", labels[0], labels[1], labels[2], labels[3]))
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub residue: NCPoly,
}

/// Every permuted cross ratio of four increasing labels as a rational
/// function of `C = C_ijkl`, with the identities used to obtain it.
#[derive(Clone, Debug)]
pub struct CrossRatioTable {
    pub labels: [u32; 4],
    pub symbol: Var,
    pub values: BTreeMap<[usize; 4], Scalar>,
    /// `C* = star_factor C`.
    pub star_factor: Scalar,
    pub checks: Vec<IdentityCheck>,
    /// Entries reached twice with different values.
    pub conflicts: Vec<[usize; 4]>,
}

impl CrossRatioTable {
    pub fn value(&self, perm: [usize; 4]) -> &Scalar {
        &self.values[&perm]
    }

    /// Adjoint of a value: starred coefficients and `C -> C*`.
    pub fn star_value(&self, v: &Scalar) -> Result<Scalar, ProjError> {
        let c = Scalar::var(self.symbol);
        Ok(StarMap::real().apply(v).subst1(self.symbol, &(&self.star_factor * &c))?)
    }

    pub fn consistent(&self) -> bool {
        self.conflicts.is_empty() && self.checks.iter().all(|c| c.residue.is_zero()) && self.values.len() == 24
    }

    /// `f` with `C_perm* = f(C_perm)`, as a function of the symbol `z`.
    pub fn adjoint_law(&self, perm: [usize; 4]) -> Result<Scalar, ProjError> {
        let val = self.value(perm);
        let z = Var::sym("z");
        let (a, b, c, d) = mobius_coeffs(val, self.symbol)?;
        let zs = Scalar::var(z);
        // C = (d z - b)/(a - c z)
        let inv = (&(&d * &zs) - &b).div(&(&a - &(&c * &zs)));
        Ok(self.star_value(val)?.subst1(self.symbol, &inv)?)
    }

    /// Quantum cross ratio of a permutation: the adjoint law with `q^2`
    /// replaced by `q`, applied to `C_perm`.
    pub fn quantum(&self, perm: [usize; 4]) -> Result<Scalar, ProjError> {
        let f = self.adjoint_law(perm)?;
        let half = f.halve_s().ok_or_else(|| ProjError::OddPower(f.to_string()))?;
        Ok(half.subst1(Var::sym("z"), self.value(perm))?)
    }
}

/// `(a, b, c, d)` with `v = (a C + b)/(c C + d)`.
fn mobius_coeffs(v: &Scalar, c: Var) -> Result<(Scalar, Scalar, Scalar, Scalar), ProjError> {
    let num = v.numer().coeffs_in(c);
    let den = v.denom().coeffs_in(c);
    if num.keys().chain(den.keys()).any(|&e| e > 1) {
        return Err(ProjError::NotMobius(v.to_string()));
    }
    let get = |m: &BTreeMap<u32, crate::scalars::MPoly>, e: u32| {
        m.get(&e).cloned().map(Scalar::from_poly).unwrap_or_else(Scalar::zero)
    };
    Ok((get(&num, 1), get(&num, 0), get(&den, 1), get(&den, 0)))
}

/// Derives all 24 permuted cross ratios from `C`: sortable products are
/// compared directly, `C_adcb C_abcd = 1` by cancellation, and
/// `C_abdc + C_abcd = 1` by clearing the shared inverse and rewriting.
pub fn cross_ratio_table(labels: [u32; 4]) -> Result<CrossRatioTable, ProjError> {
    let mut sorted = labels;
    sorted.sort_unstable();
    if sorted != labels || labels.windows(2).any(|p| p[0] == p[1]) {
        return Err(ProjError::InvalidLabels("expected four increasing labels".into()));
    }
    let calc = PairCalculus::new(labels.to_vec())?;
    let symbol = cross_ratio_symbol(labels);
    let c_sym = Scalar::var(symbol);
    let lab = |p: [usize; 4]| p.map(|x| labels[x]);
    let cr = |p: [usize; 4]| {
        let [a, b, c, d] = lab(p);
        PairMonomial::cross_ratio(a, b, c, d)
    };
    let id = [0, 1, 2, 3];
    let base = cr(id);
    let mut values: BTreeMap<[usize; 4], Scalar> = BTreeMap::new();
    let mut checks = Vec::new();
    let mut conflicts = Vec::new();
    values.insert(id, c_sym.clone());

    let star_factor = calc.ratio(&base.star(), &base)?.ok_or_else(|| {
        ProjError::NotMonomial("C*".into(), "C".into())
    })?;

    for p in permutations4() {
        let m = cr(p);
        let direct = match calc.ratio(&m, &base) {
            Ok(Some(a)) => Some(&a * &c_sym),
            Ok(None) => match calc.ratio(&m, &base.inverse()) {
                Ok(Some(a)) => Some(a.div(&c_sym)),
                _ => None,
            },
            Err(_) => None,
        };
        if let Some(v) = direct {
            if let Some(old) = values.get(&p) {
                if *old != v {
                    conflicts.push(p);
                }
            }
            values.insert(p, v);
        }
    }

    let one = Scalar::one();
    for p in permutations4() {
        let [a, b, c, d] = p;
        let inv_perm = [a, d, c, b];
        let prod = cr(inv_perm).mul(&cr(p)).reduced();
        let residue = if prod.is_unit() { NCPoly::zero() } else { calc.expand(&prod).unwrap_or_else(|_| NCPoly::one()).sub(&NCPoly::one()) };
        checks.push(IdentityCheck { id: format!("C{:?} C{:?} = 1", lab(inv_perm), lab(p)), residue });
        let swap_perm = [a, b, d, c];
        let [la, lb, lc, ld] = lab(p);
        let terms = [
            PairMonomial::cross_ratio(la, lb, ld, lc),
            PairMonomial::cross_ratio(la, lb, lc, ld),
            PairMonomial::new(-one.clone(), vec![]),
        ];
        let residue = calc.clear_right(&terms)?;
        checks.push(IdentityCheck { id: format!("C{:?} + C{:?} = 1", lab(swap_perm), lab(p)), residue });
    }

    loop {
        let before = values.len();
        for p in permutations4() {
            let [a, b, c, d] = p;
            let derived = [([a, d, c, b], true), ([a, b, d, c], false)];
            for (other, reciprocal) in derived {
                let known = (values.get(&p).cloned(), values.get(&other).cloned());
                let (src, dst, v) = match known {
                    (Some(v), None) => (p, other, v),
                    (None, Some(v)) => (other, p, v),
                    (Some(v1), Some(v2)) => {
                        let ok = if reciprocal { (&v1 * &v2).is_one() } else { (&v1 + &v2).is_one() };
                        if !ok && !conflicts.contains(&p) {
                            conflicts.push(p);
                        }
                        continue;
                    }
                    (None, None) => continue,
                };
                let _ = src;
                let nv = if reciprocal { v.inv() } else { &one - &v };
                values.insert(dst, nv);
            }
        }
        if values.len() == before {
            break;
        }
    }
    if values.len() != 24 {
        return Err(ProjError::Incomplete);
    }
    Ok(CrossRatioTable { labels, symbol, values, star_factor, checks, conflicts })
}

/// Parses a permutation word such as `ilkj` into positions.
pub fn parse_perm(word: &str) -> Result<[usize; 4], ProjError> {
    let mut out = [0usize; 4];
    let chars: Vec<char> = word.chars().collect();
    if chars.len() != 4 {
        return Err(ProjError::InvalidLabels(word.to_string()));
    }
    for (n, ch) in chars.iter().enumerate() {
        out[n] = match ch {
            'i' => 0,
            'j' => 1,
            'k' => 2,
            'l' => 3,
            _ => return Err(ProjError::InvalidLabels(word.to_string())),
        };
    }
    let mut s = out;
    s.sort_unstable();
    if s != [0, 1, 2, 3] {
        return Err(ProjError::InvalidLabels(word.to_string()));
    }
    Ok(out)
}

pub fn perm_word(p: [usize; 4]) -> String {
    p.iter().map(|&x| ['i', 'j', 'k', 'l'][x]).collect()
}

/// Reference values of the permuted cross ratios in terms of `C = C_ijkl`.
pub fn reference_table(c: &Scalar) -> Vec<(&'static str, Scalar)> {
    let one = Scalar::one();
    let q2c = &Scalar::q().pow(2) * c;
    let mut out = Vec::new();
    let rows: [(&[&str], Scalar); 12] = [
        (&["ijkl", "klij"], c.clone()),
        (&["jilk", "lkji"], q2c.clone()),
        (&["ilkj", "kjil"], c.inv()),
        (&["jkli", "lijk"], q2c.inv()),
        (&["ijlk", "klji"], &one - c),
        (&["jikl", "lkij"], &one - &q2c),
        (&["ikjl", "kilj"], c.div(&(c - &one))),
        (&["jlik", "ljki"], q2c.div(&(&q2c - &one))),
        (&["iklj", "kijl"], (&one - c).inv()),
        (&["jlki", "ljik"], (&one - &q2c).inv()),
        (&["iljk", "kjli"], &one - &c.inv()),
        (&["jkil", "likj"], &one - &q2c.inv()),
    ];
    for (names, v) in rows {
        for n in names {
            out.push((*n, v.clone()));
        }
    }
    out
}

/// Reference quantum cross ratios in terms of the ordinary ones.
pub fn reference_quantum(perm: &str, c: &Scalar) -> Option<Scalar> {
    let q = Scalar::q();
    let one = Scalar::one();
    Some(match perm {
        "ijkl" => &q * c,
        "ilkj" => c.div(&q),
        "ijlk" => &(&q * c) + &(&one - &q),
        "ikjl" => (&q * c).div(&(&one + &(&(&q - &one) * c))),
        "iklj" => c.div(&(&q + &(&(&one - &q) * c))),
        "iljk" => &c.div(&q) + &(&one - &q.inv()),
        _ => return None,
    })
}

impl CrossRatioTable {
    /// Entries that differ from the reference table.
    pub fn reference_mismatches(&self) -> Vec<String> {
        let c = Scalar::var(self.symbol);
        reference_table(&c)
            .into_iter()
            .filter(|(n, v)| parse_perm(n).map(|p| self.value(p) != v).unwrap_or(true))
            .map(|(n, _)| n.to_string())
            .collect()
    }

    /// Named checks on the quantum cross ratios: self-adjointness of all
    /// 24, the reference formulas and the four-fold symmetry.
    pub fn quantum_checks(&self) -> Result<Vec<(String, bool)>, ProjError> {
        let mut out = Vec::new();
        let mut quantum = BTreeMap::new();
        for p in permutations4() {
            let v = self.quantum(p)?;
            let fixed = self.star_value(&v)? == v;
            out.push((format!("star-fixed {}", perm_word(p)), fixed));
            quantum.insert(p, v);
        }
        for name in ["ijkl", "ilkj", "ijlk", "ikjl", "iklj", "iljk"] {
            let p = parse_perm(name)?;
            let expected = reference_quantum(name, self.value(p)).expect("listed");
            out.push((format!("reference {name}"), quantum[&p] == expected));
        }
        let base = &quantum[&[0, 1, 2, 3]];
        for name in ["lkji", "klij", "jilk"] {
            out.push((format!("ijkl = {name}"), &quantum[&parse_perm(name)?] == base));
        }
        Ok(out)
    }

    /// Permutations whose value at `s = 1`, `C -> classical`, differs from
    /// the classical cross ratio of the permuted labels.
    pub fn classical_mismatches(&self) -> Result<Vec<String>, ProjError> {
        let [i, j, k, l] = self.labels;
        let cl = classical_cross_ratio(i, j, k, l);
        let mut out = Vec::new();
        for p in permutations4() {
            for (what, v) in [("C", self.value(p).clone()), ("quantum", self.quantum(p)?)] {
                let at_one = v.subst1(Var::S, &Scalar::one())?.subst1(self.symbol, &cl)?;
                let [a, b, c, d] = p.map(|x| self.labels[x]);
                if at_one != classical_cross_ratio(a, b, c, d) {
                    out.push(format!("{what} {}", perm_word(p)));
                }
            }
        }
        Ok(out)
    }
}

/// `(ji) + (ij)` in normal form.
pub fn reversed_pair_residue(alg: &ProjAlgebra, i: u32, j: u32) -> Result<NCPoly, ProjError> {
    alg.normal_form(&pair_invariant(j, i).add(&pair_invariant(i, j)))
}

/// `b` with `(jl)(ik) = q^4 (ik)(jl) + b (ij)(kl)` in the `lambda = 1`
/// algebra, if such a scalar exists.
pub fn mixed_rule_coefficient(labels: [u32; 4]) -> Result<Option<Scalar>, ProjError> {
    let [i, j, k, l] = labels;
    let alg = ProjAlgebra::ones(labels.to_vec())?;
    let p = pair_invariant;
    let lhs = alg.normal_form(&p(j, l).mul(&p(i, k)).sub(&p(i, k).mul(&p(j, l)).scale(&Scalar::q().pow(4))))?;
    let basis = alg.normal_form(&p(i, j).mul(&p(k, l)))?;
    let Some((w, c)) = basis.lead() else { return Ok(None) };
    let b = lhs.coeff(w).div(c);
    Ok(lhs.sub(&basis.scale(&b)).is_zero().then_some(b))
}

/// Classical cross ratio `(t_a - t_d)(t_c - t_b)/((t_c - t_d)(t_a - t_b))`.
pub fn classical_cross_ratio(a: u32, b: u32, c: u32, d: u32) -> Scalar {
    let t = Scalar::t;
    ((t(a) - t(d)) * (t(c) - t(b))).div(&((t(c) - t(d)) * (t(a) - t(b))))
}

/// Labels in increasing order and the positions of `quad` within them.
pub fn sort_quadruple(quad: [u32; 4]) -> Result<([u32; 4], [usize; 4]), ProjError> {
    let mut sorted = quad;
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(ProjError::InvalidLabels(format!("{quad:?} not distinct")));
    }
    let perm = quad.map(|x| sorted.iter().position(|&y| y == x).expect("present"));
    Ok((sorted, perm))
}

/// Quantum cross ratio of an arbitrary quadruple of distinct labels, as a
/// function of the `C` symbol of its sorted quadruple.
pub fn quantum_cross_ratio(quad: [u32; 4]) -> Result<Scalar, ProjError> {
    let (sorted, perm) = sort_quadruple(quad)?;
    cross_ratio_table(sorted)?.quantum(perm)
}

/// `D(j, i) = CR(o, e, inf, j) - CR(o, e, inf, i)` with `CR` the quantum cross ratio.
pub fn quantum_distance(base: [u32; 3], j: u32, i: u32) -> Result<Scalar, ProjError> {
    for x in [j, i] {
        if base.contains(&x) {
            return Err(ProjError::InvalidLabels(format!("{x} collides with the base points")));
        }
    }
    if base[0] == base[1] || base[1] == base[2] || base[0] == base[2] {
        return Err(ProjError::InvalidLabels("base points must differ".into()));
    }
    let [o, e, inf] = base;
    Ok(quantum_cross_ratio([o, e, inf, j])? - quantum_cross_ratio([o, e, inf, i])?)
}

/// Adjoint of an expression in cross-ratio symbols: starred coefficients
/// and `C -> q^2 C` for every symbol.
pub fn star_cross_ratio_expr(v: &Scalar, star_factor: &Scalar) -> Result<Scalar, ProjError> {
    let mut out = StarMap::real().apply(v);
    for var in v.vars() {
        if matches!(var, Var::Sym(_)) {
            out = out.subst1(var, &(star_factor * &Scalar::var(var)))?;
        }
    }
    Ok(out)
}

/// At `s = 1`, replaces each cross-ratio symbol by the classical cross
/// ratio of its quadruple.
pub fn classical_limit(v: &Scalar, quads: &[[u32; 4]]) -> Result<Scalar, ProjError> {
    let mut out = v.subst1(Var::S, &Scalar::one())?;
    for &qd in quads {
        out = out.subst1(cross_ratio_symbol(qd), &classical_cross_ratio(qd[0], qd[1], qd[2], qd[3]))?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub dims: Vec<(usize, usize, usize)>,
}

impl ProbeReport {
    /// `(degree, dimension, classical dimension)`; true when all agree.
    pub fn classical(&self) -> bool {
        self.dims.iter().all(|&(_, d, c)| d == c)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded dimensions of the two-label coordinate algebra up to `degree`.
pub fn polynomiality_probe(mu1: &Scalar, mu2: &Scalar, degree: usize) -> Result<ProbeReport, ProjError> {
    if degree > 3 {
        return Err(ProjError::UnsupportedDegree(degree));
    }
    let alg = ProjAlgebra::new(vec![1, 2])?.with_pair(1, 2, MuPair::new(mu1.clone(), mu2.clone()));
    let mut dims = Vec::new();
    for d in 1..=degree {
        dims.push((d, alg.graded_dimension(d)?, binomial(d + 3, 3)));
    }
    Ok(ProbeReport { dims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_past_y_same_label() {
        let alg = ProjAlgebra::ones(vec![1, 2]).unwrap();
        let p = NCPoly::monomial(&[Gen::x(1), Gen::y(1)]);
        let expected = NCPoly::monomial(&[Gen::y(1), Gen::x(1)]).scale(&Scalar::q());
        assert_eq!(alg.normal_form(&p).unwrap(), expected);
    }

    #[test]
    fn y_letters_reorder() {
        let alg = ProjAlgebra::ones(vec![1, 2]).unwrap();
        let p = NCPoly::monomial(&[Gen::y(2), Gen::y(1)]);
        let expected = NCPoly::monomial(&[Gen::y(1), Gen::y(2)]).scale(&Scalar::q().pow(2));
        assert_eq!(alg.normal_form(&p).unwrap(), expected);
    }

    #[test]
    fn inverse_past_x() {
        let alg = ProjAlgebra::ones(vec![1]).unwrap();
        let lhs = NCPoly::monomial(&[Gen::y_inv(1), Gen::x(1)]);
        let rhs = NCPoly::monomial(&[Gen::x(1), Gen::y_inv(1)]).scale(&Scalar::q());
        assert_eq!(alg.normal_form(&lhs).unwrap(), alg.normal_form(&rhs).unwrap());
    }

    #[test]
    fn lambda_mu_round_trip() {
        let l = Scalar::lambda(1, 2);
        assert_eq!(lambda_from_mu(&mu_from_lambda(&l)), l);
        assert_eq!(mu_from_lambda(&Scalar::one()), Scalar::q());
    }

    #[test]
    fn reversed_twice_is_identity() {
        let m = MuPair::symbolic(1, 2);
        assert_eq!(m.reversed().reversed(), m);
    }
}
