//! The lambda-parameterized quadratic bracket on commuting point coordinates,
//! its Jacobi criterion, and a catalogue of solutions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{Gen, GenKind, NCPoly, Word};
use crate::scalars::{Scalar, StarMap, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("label {0} is not in the index set")]
    UnknownLabel(u32),
    #[error("labels must be pairwise distinct")]
    RepeatedLabel,
    #[error("lambda vanishes on pair ({0},{1})")]
    ZeroLambda(u32, u32),
    #[error("invalid example parameters: {0}")]
    InvalidParams(String),
}

/// Antisymmetric matrix of scalars over an ordered label set. Only entries
/// with `i < j` are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaMatrix {
    labels: Vec<u32>,
    entries: BTreeMap<(u32, u32), Scalar>,
    pairing: Option<Vec<(u32, u32)>>,
}

impl LambdaMatrix {
    pub fn new(labels: Vec<u32>) -> Self {
        let mut labels = labels;
        labels.sort_unstable();
        labels.dedup();
        LambdaMatrix { labels, entries: BTreeMap::new(), pairing: None }
    }

    /// All `lambda_ij = value` for `i < j`.
    pub fn constant(labels: Vec<u32>, value: &Scalar) -> Self {
        let mut m = LambdaMatrix::new(labels);
        for (a, &i) in m.labels.clone().iter().enumerate() {
            for &j in &m.labels.clone()[a + 1..] {
                m.set(i, j, value.clone());
            }
        }
        m
    }

    /// Fully symbolic entries `lambda_{i,j}`.
    pub fn symbolic(labels: Vec<u32>) -> Self {
        let mut m = LambdaMatrix::new(labels);
        for (a, &i) in m.labels.clone().iter().enumerate() {
            for &j in &m.labels.clone()[a + 1..] {
                m.set(i, j, Scalar::lambda(i, j));
            }
        }
        m
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn pairing(&self) -> Option<&[(u32, u32)]> {
        self.pairing.as_deref()
    }

    pub fn with_pairing(mut self, pairs: Vec<(u32, u32)>) -> Self {
        self.pairing = Some(pairs);
        self
    }

    /// Sets `lambda_ij`; `lambda_ji` becomes its negative.
    pub fn set(&mut self, i: u32, j: u32, v: Scalar) {
        if !self.labels.contains(&i) {
            self.labels.push(i);
        }
        if !self.labels.contains(&j) {
            self.labels.push(j);
        }
        self.labels.sort_unstable();
        if i < j {
            self.entries.insert((i, j), v);
        } else if j < i {
            self.entries.insert((j, i), -v);
        }
    }

    pub fn get(&self, i: u32, j: u32) -> Scalar {
        if i < j {
            self.entries.get(&(i, j)).cloned().unwrap_or_default()
        } else if j < i {
            -self.entries.get(&(j, i)).cloned().unwrap_or_default()
        } else {
            Scalar::zero()
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        self.labels.binary_search(&i).is_ok()
    }

    /// Ordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (a, &i) in self.labels.iter().enumerate() {
            for &j in &self.labels[a + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    /// Ordered triples `i < j < k`.
    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        let l = &self.labels;
        let mut out = Vec::new();
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                for c in b + 1..l.len() {
                    out.push((l[a], l[b], l[c]));
                }
            }
        }
        out
    }

    /// `lambda_ij lambda_jk - lambda_ij lambda_ik - lambda_ik lambda_jk + 1`.
    pub fn jacobi_defect(&self, i: u32, j: u32, k: u32) -> Result<Scalar, PoissonError> {
        for l in [i, j, k] {
            if !self.contains(l) {
                return Err(PoissonError::UnknownLabel(l));
            }
        }
        if i == j || j == k || i == k {
            return Err(PoissonError::RepeatedLabel);
        }
        let (ij, jk, ik) = (self.get(i, j), self.get(j, k), self.get(i, k));
        Ok(&ij * &jk - &ij * &ik - &ik * &jk + Scalar::one())
    }

    /// Checks the conjugation constraints `star(lambda_ij) = lambda_{s(i) s(j)}`
    /// for the configured pairing.
    pub fn check_pairing(&self) -> Result<bool, PoissonError> {
        let Some(pairs) = &self.pairing else {
            return Err(PoissonError::InvalidParams("no pairing configured".into()));
        };
        let st = StarMap::with_pairs(pairs);
        Ok(self.pairs().into_iter().all(|(i, j)| {
            st.apply(&self.get(i, j)) == self.get(st.sigma(i), st.sigma(j))
        }))
    }
}

/// Commutative product: concatenate then sort letters.
pub fn cmul(a: &NCPoly, b: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let mut w = wa.concat(wb);
            w.0.sort_unstable();
            out.add_term(w, &(ca * cb));
        }
    }
    out
}

fn sorted(p: &NCPoly) -> NCPoly {
    NCPoly::from_terms(p.terms().iter().map(|(w, c)| {
        let mut w = w.clone();
        w.0.sort_unstable();
        (w, c.clone())
    }))
}

pub fn t(i: u32) -> NCPoly {
    NCPoly::gen(Gen::t(i))
}

/// Bracket on commuting `t` letters determined by a lambda matrix.
#[derive(Clone, Debug)]
pub struct PoissonContext {
    pub lambda: LambdaMatrix,
}

impl PoissonContext {
    pub fn new(lambda: LambdaMatrix) -> Self {
        PoissonContext { lambda }
    }

    /// `{t_a, t_b} = t_a^2 - t_b^2 - lambda_ba (t_b - t_a)^2`.
    pub fn bracket_gens(&self, a: u32, b: u32) -> Result<NCPoly, PoissonError> {
        for l in [a, b] {
            if !self.lambda.contains(l) {
                return Err(PoissonError::UnknownLabel(l));
            }
        }
        if a == b {
            return Ok(NCPoly::zero());
        }
        let (ta, tb) = (t(a), t(b));
        let d = tb.sub(&ta);
        Ok(cmul(&ta, &ta)
            .sub(&cmul(&tb, &tb))
            .sub(&cmul(&d, &d).scale(&self.lambda.get(b, a))))
    }

    /// Biderivation extension to polynomials in commuting `t` letters.
    pub fn bracket(&self, p: &NCPoly, r: &NCPoly) -> Result<NCPoly, PoissonError> {
        let (p, r) = (sorted(p), sorted(r));
        let mut cache: BTreeMap<(u32, u32), NCPoly> = BTreeMap::new();
        let mut out = NCPoly::zero();
        for (wa, ca) in p.terms() {
            for (wb, cb) in r.terms() {
                let c = ca * cb;
                for (ka, ga) in wa.letters().iter().enumerate() {
                    for (kb, gb) in wb.letters().iter().enumerate() {
                        if ga.kind != GenKind::T || gb.kind != GenKind::T {
                            return Err(PoissonError::InvalidParams(
                                "bracket is defined on t letters only".into(),
                            ));
                        }
                        let key = (ga.index, gb.index);
                        let br = match cache.get(&key) {
                            Some(b) => b.clone(),
                            None => {
                                let b = self.bracket_gens(ga.index, gb.index)?;
                                cache.insert(key, b.clone());
                                b
                            }
                        };
                        if br.is_zero() {
                            continue;
                        }
                        let mut rest: Vec<Gen> = Vec::new();
                        rest.extend(wa.letters().iter().enumerate().filter(|&(k, _)| k != ka).map(|(_, g)| *g));
                        rest.extend(wb.letters().iter().enumerate().filter(|&(k, _)| k != kb).map(|(_, g)| *g));
                        let cof = NCPoly::term(Word::from_gens(&rest), c.clone());
                        out = out.add(&cmul(&cof, &br));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
    pub fn jacobiator(&self, f: &NCPoly, g: &NCPoly, h: &NCPoly) -> Result<NCPoly, PoissonError> {
        let a = self.bracket(&self.bracket(f, g)?, h)?;
        let b = self.bracket(&self.bracket(g, h)?, f)?;
        let c = self.bracket(&self.bracket(h, f)?, g)?;
        Ok(a.add(&b).add(&c))
    }

    pub fn jacobi_defect(&self, i: u32, j: u32, k: u32) -> Result<Scalar, PoissonError> {
        self.lambda.jacobi_defect(i, j, k)
    }

    /// Per-triple defect and jacobiator on generators.
    pub fn triple_report(&self) -> Result<Vec<TripleCheck>, PoissonError> {
        self.lambda
            .triples()
            .into_iter()
            .map(|(i, j, k)| {
                Ok(TripleCheck {
                    triple: (i, j, k),
                    defect: self.jacobi_defect(i, j, k)?,
                    jacobiator: self.jacobiator(&t(i), &t(j), &t(k))?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TripleCheck {
    pub triple: (u32, u32, u32),
    pub defect: Scalar,
    pub jacobiator: NCPoly,
}

/// `(T+1)/(T-1)` with `T` the product of `t_k` for `k` in `i..j`.
pub fn coth_sum(i: u32, j: u32) -> Scalar {
    let tt = (i..j).fold(Scalar::one(), |acc, k| acc * Scalar::t(k));
    (&tt + &Scalar::one()).div(&(&tt - &Scalar::one()))
}

/// `(T-1)/(T+1)`, the hyperbolic tangent counterpart of [`coth_sum`].
pub fn tanh_sum(i: u32, j: u32) -> Scalar {
    coth_sum(i, j).inv()
}

/// Parameters for the catalogue of solutions.
#[derive(Clone, Debug)]
pub struct ExampleParams {
    /// Number of points (or conjugate pairs for the paired example).
    pub points: u32,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams { points: 4 }
    }
}

/// Builds one of the six catalogued lambda matrices:
/// 1 all ones; 2 coth of partial sums; 3 coth with imaginary half-period
/// shifts; 4 conjugate pairs `2k, 2k+1`; 5 block composition; 6 the fixed
/// complex four-point instance.
pub fn build_example(n: u32, params: &ExampleParams) -> Result<PoissonContext, PoissonError> {
    let k = params.points;
    let labels: Vec<u32> = (1..=k).collect();
    let lam = match n {
        1 => LambdaMatrix::constant(labels, &Scalar::one()),
        2 => {
            let mut m = LambdaMatrix::new(labels.clone());
            for (i, j) in m.pairs() {
                m.set(i, j, coth_sum(i, j));
            }
            m
        }
        3 => {
            let mut m = LambdaMatrix::new(labels.clone());
            for (i, j) in m.pairs() {
                let v = if (j - i) % 2 == 1 { tanh_sum(i, j) } else { coth_sum(i, j) };
                m.set(i, j, v);
            }
            m
        }
        4 => {
            if k == 0 {
                return Err(PoissonError::InvalidParams("need at least one pair".into()));
            }
            let labels: Vec<u32> = (0..2 * k).map(|a| a + 2).collect();
            let mut m = LambdaMatrix::constant(labels, &Scalar::one());
            let mut pairs = Vec::new();
            for p in 1..=k {
                m.set(2 * p, 2 * p + 1, Scalar::zero());
                pairs.push((2 * p, 2 * p + 1));
            }
            m.with_pairing(pairs)
        }
        5 => {
            // A coth block on 1..=k followed by the complex four-point block.
            let block_a = build_example(2, params)?.lambda;
            let block_b = build_example(6, params)?.lambda;
            let shift = k;
            let mut labels: Vec<u32> = block_a.labels().to_vec();
            labels.extend(block_b.labels().iter().map(|l| l + shift));
            let mut m = LambdaMatrix::constant(labels, &Scalar::one());
            for (i, j) in block_a.pairs() {
                m.set(i, j, block_a.get(i, j));
            }
            for (i, j) in block_b.pairs() {
                m.set(i + shift, j + shift, block_b.get(i, j));
            }
            m
        }
        6 => {
            let i = Scalar::imag_unit();
            let mut m = LambdaMatrix::new(vec![1, 2, 3, 4]);
            m.set(1, 2, i.clone());
            m.set(2, 3, i.clone());
            m.set(3, 4, i.clone());
            m.set(1, 4, -i);
            m.set(1, 3, Scalar::zero());
            m.set(2, 4, Scalar::zero());
            m
        }
        _ => return Err(PoissonError::InvalidParams(format!("no example {n}"))),
    };
    Ok(PoissonContext::new(lam))
}

/// The velocity constant `c = i (q^2+1)/(q^2-1)`.
pub fn einstein_constant() -> Scalar {
    let q2 = Scalar::q().pow(2);
    Scalar::imag_unit() * (&q2 + &Scalar::one()).div(&(&q2 - &Scalar::one()))
}

#[derive(Clone, Debug)]
pub struct EinsteinReport {
    pub phi: BTreeMap<(u32, u32), Scalar>,
    /// For each triple `i<j<k`: whether the defect vanishes and whether the
    /// relativistic addition law holds for `phi_ik`.
    pub triples: Vec<((u32, u32, u32), bool, bool)>,
}

impl EinsteinReport {
    pub fn consistent(&self) -> bool {
        self.triples.iter().all(|&(_, d, a)| d == a)
    }
}

/// `phi_ij = c / lambda_ij` and the addition law
/// `phi_ik = (phi_ij + phi_jk) / (1 + phi_ij phi_jk / c^2)` per triple.
pub fn einstein_reparam(lam: &LambdaMatrix) -> Result<EinsteinReport, PoissonError> {
    let c = einstein_constant();
    let c2 = c.pow(2);
    let mut phi = BTreeMap::new();
    for (i, j) in lam.pairs() {
        let l = lam.get(i, j);
        if l.is_zero() {
            return Err(PoissonError::ZeroLambda(i, j));
        }
        phi.insert((i, j), c.div(&l));
    }
    let mut triples = Vec::new();
    for (i, j, k) in lam.triples() {
        let defect_zero = lam.jacobi_defect(i, j, k)?.is_zero();
        let (pij, pjk, pik) = (&phi[&(i, j)], &phi[&(j, k)], &phi[&(i, k)]);
        let den = Scalar::one() + (pij * pjk).div(&c2);
        let law = if den.is_zero() { false } else { (pij + pjk).div(&den) == *pik };
        triples.push(((i, j, k), defect_zero, law));
    }
    Ok(EinsteinReport { phi, triples })
}

/// Renames `t` letters into the matching point letters `v`.
pub fn t_to_v(p: &NCPoly) -> NCPoly {
    p.linear_substitute(&|g| (g.kind == GenKind::T).then(|| NCPoly::gen(Gen::v(g.index))))
}

/// Renames `v` letters into `t` letters.
pub fn v_to_t(p: &NCPoly) -> NCPoly {
    sorted(&p.linear_substitute(&|g| (g.kind == GenKind::V).then(|| NCPoly::gen(Gen::t(g.index)))))
}

/// Variables occurring in any entry (used to pick generic specializations).
pub fn lambda_vars(lam: &LambdaMatrix) -> Vec<Var> {
    let mut vs = std::collections::BTreeSet::new();
    for (i, j) in lam.pairs() {
        vs.extend(lam.get(i, j).vars());
    }
    vs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_bracket() {
        let ctx = build_example(1, &ExampleParams { points: 3 }).unwrap();
        let b = ctx.bracket(&t(2), &t(1)).unwrap();
        let expected = cmul(&t(1), &t(2).sub(&t(1))).scale(&Scalar::from_int(2));
        assert_eq!(b, expected);
        assert!(ctx.bracket(&t(1), &t(1)).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_product() {
        let ctx = build_example(2, &ExampleParams { points: 3 }).unwrap();
        let lhs = ctx.bracket(&cmul(&t(1), &t(2)), &t(3)).unwrap();
        let rhs = cmul(&t(1), &ctx.bracket(&t(2), &t(3)).unwrap())
            .add(&cmul(&t(2), &ctx.bracket(&t(1), &t(3)).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn complex_example_defects() {
        let ctx = build_example(6, &ExampleParams::default()).unwrap();
        for (i, j, k) in ctx.lambda.triples() {
            assert!(ctx.jacobi_defect(i, j, k).unwrap().is_zero());
        }
        assert_eq!(ctx.jacobi_defect(1, 1, 2), Err(PoissonError::RepeatedLabel));
    }
}
