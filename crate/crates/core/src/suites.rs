//! Named verification suites and the lambda configurations they run on.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::expr::{parse_scalar, ExprError};
use crate::freealg::{Gen, GenKind, NCPoly};
use crate::pointalg::{
    exceptional_u_form, lambda_exceptional, lambda_no_rule, lambda_singular_cubic, three_point_u_form,
    triple_combination, PointAlgebra, ReductionCoeffs,
};
use crate::poisson::{build_example, coth_sum, t, ExampleParams, LambdaMatrix, PoissonContext};
use crate::projcoord::{
    certify_invariant, check_embedding, conjugate_by_y, conjugation_by_rewriting, cross_ratio_in_v,
    cross_ratio_table, invariant_commutation_rules, mixed_rule_coefficient, polynomiality_probe, quantum_distance,
    reversed_pair_residue, star_cross_ratio_expr, classical_limit, classical_cross_ratio, MuPair, ProjAlgebra,
    ProjError,
};
use crate::report::{Outcome, Report};
use crate::scalars::{Scalar, Var};
use crate::uqaction::{act, check_quadratic_ideal, invariant_coefficients, symbolic_ad, ActionTable, UqOp};

pub const SUITES: [&str; 15] = [
    "poisson-examples",
    "prop1",
    "lemma2",
    "lemma3",
    "theorem4-dim",
    "three-point",
    "exceptional",
    "lemma9",
    "lemma12",
    "prop10",
    "prop11",
    "cross-table",
    "distance",
    "quasiclassical-limit",
    "bmu-probe",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub lambda: Option<LambdaMatrix>,
    pub degree: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { seed, ..Default::default() }
    }
}

#[derive(Deserialize)]
struct LambdaFile {
    points: Vec<u32>,
    #[serde(default)]
    lambda: BTreeMap<String, String>,
    #[serde(default)]
    pairing: Option<Vec<(u32, u32)>>,
}

fn parse_pair_key(k: &str) -> Result<(u32, u32), SuiteError> {
    let bad = || SuiteError::Config(format!("pair key '{k}' should look like \"1,2\""));
    let (a, b) = k.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    if a == b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Reads `{"points": [...], "lambda": {"1,2": "<scalar>"}, "pairing": [[a,b]]}`.
/// Pairs left out default to `lambda = 1`.
pub fn lambda_from_json(text: &str) -> Result<LambdaMatrix, SuiteError> {
    let f: LambdaFile = serde_json::from_str(text)?;
    if f.points.is_empty() {
        return Err(SuiteError::Config("no points".into()));
    }
    let mut m = LambdaMatrix::constant(f.points.clone(), &Scalar::one());
    for (k, v) in &f.lambda {
        let (a, b) = parse_pair_key(k)?;
        if !f.points.contains(&a) || !f.points.contains(&b) {
            return Err(SuiteError::Config(format!("pair {k} uses a label outside the points")));
        }
        m.set(a, b, parse_scalar(v)?);
    }
    if let Some(p) = f.pairing {
        m = m.with_pairing(p);
    }
    Ok(m)
}

/// Named lambda configurations on the labels `1..=n`:
/// `ones`, `zero`, `symbolic`, `exceptional`, `coth` (symbolic `t_k`),
/// `coth:<k>` (symbolic `t_k` on `k` points), `coth:<t_1>,<t_2>,...`
/// (numeric `t_1..t_(n-1)`) and `complexified:<pairs>`.
pub fn lambda_preset(name: &str, n: u32) -> Result<LambdaMatrix, SuiteError> {
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    let mut n = n;
    let mut arg = arg;
    if head == "coth" && !arg.contains(',') && !arg.is_empty() {
        n = arg.parse().map_err(|_| SuiteError::Config(format!("bad point count '{arg}'")))?;
        arg = "";
    } else if head == "coth" && !arg.is_empty() {
        n = arg.split(',').count() as u32 + 1;
    }
    let labels: Vec<u32> = (1..=n).collect();
    Ok(match head {
        "ones" => LambdaMatrix::constant(labels, &Scalar::one()),
        "zero" => LambdaMatrix::constant(labels, &Scalar::zero()),
        "symbolic" => LambdaMatrix::symbolic(labels),
        "exceptional" => LambdaMatrix::constant(labels, &lambda_exceptional()),
        "coth" => {
            let mut m = LambdaMatrix::new(labels);
            let mut values = BTreeMap::new();
            if !arg.is_empty() {
                for (k, v) in arg.split(',').enumerate() {
                    values.insert(Var::T(k as u32 + 1), parse_scalar(v.trim())?);
                }
            }
            for (i, j) in m.pairs() {
                let v = coth_sum(i, j)
                    .substitute(&values)
                    .map_err(|e| SuiteError::Config(format!("coth preset: {e}")))?;
                m.set(i, j, v);
            }
            m
        }
        "complexified" => {
            let k: u32 = arg.parse().map_err(|_| SuiteError::Config(format!("bad pair count '{arg}'")))?;
            build_example(4, &ExampleParams { points: k })
                .map_err(|e| SuiteError::Config(e.to_string()))?
                .lambda
        }
        _ => return Err(SuiteError::Config(format!("unknown lambda preset '{name}'"))),
    })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn nz(p: &NCPoly) -> String {
    p.to_string()
}

/// Runs a named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let mut r = Report::new(name, cfg.seed);
    match name {
        "poisson-examples" => poisson_examples(&mut r, cfg),
        "prop1" => invariant_ideals(&mut r),
        "lemma2" => cubic_reduction(&mut r),
        "lemma3" => triple_suite(&mut r, cfg),
        "theorem4-dim" => graded_dimensions(&mut r, cfg),
        "three-point" => three_point(&mut r, cfg),
        "exceptional" => exceptional(&mut r),
        "lemma9" => coordinate_embedding(&mut r),
        "lemma12" => pair_commutation(&mut r),
        "prop10" => cross_ratio_letters(&mut r),
        "prop11" => cross_ratio_identities(&mut r),
        "cross-table" => cross_table(&mut r),
        "distance" => distance(&mut r),
        "quasiclassical-limit" => quasiclassical(&mut r, cfg),
        "bmu-probe" => bmu_probe(&mut r, cfg),
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    }
    Ok(r)
}

/// The catalogued examples at sizes small enough for exact checks.
pub fn example_contexts() -> Vec<(u32, PoissonContext)> {
    let sizes = [(1, 4), (2, 4), (3, 4), (4, 2), (5, 2), (6, 4)];
    sizes
        .iter()
        .map(|&(n, k)| (n, build_example(n, &ExampleParams { points: k }).expect("catalogued example")))
        .collect()
}

/// Random rational in `[-6, 6]` with denominator at most 4, never zero.
fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-24..=24);
        let d: i64 = rng.gen_range(1..=4);
        if n != 0 {
            return Scalar::from_ratio(n, d);
        }
    }
}

/// Three-point matrices: even draws satisfy the Jacobi condition by
/// construction, odd draws are unconstrained.
pub fn random_three_point(seed: u64, count: usize) -> Vec<LambdaMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let l12 = random_rational(&mut rng);
        let l23 = random_rational(&mut rng);
        let l13 = if out.len() % 2 == 0 {
            let sum = &l12 + &l23;
            if sum.is_zero() {
                continue;
            }
            (Scalar::one() + &l12 * &l23).div(&sum)
        } else {
            random_rational(&mut rng)
        };
        let mut m = LambdaMatrix::new(vec![1, 2, 3]);
        m.set(1, 2, l12);
        m.set(1, 3, l13);
        m.set(2, 3, l23);
        out.push(m);
    }
    out
}

fn poisson_examples(r: &mut Report, cfg: &SuiteConfig) {
    for (n, ctx) in example_contexts() {
        r.run(&format!("example {n}: defect and jacobiator vanish"), "catalogued solutions", || {
            let rows = ctx.triple_report()?;
            let bad: Vec<String> = rows
                .iter()
                .filter(|c| !c.defect.is_zero() || !c.jacobiator.is_zero())
                .map(|c| format!("{:?}: defect {}, jacobiator {}", c.triple, c.defect, c.jacobiator))
                .collect();
            Ok::<_, crate::poisson::PoissonError>(Outcome::check(bad.is_empty(), || bad.join("; ")))
        });
    }
    let mats = random_three_point(cfg.seed, 50);
    r.run("random matrices: jacobiator vanishes iff defect vanishes", "Jacobi condition", || {
        let mut bad = Vec::new();
        let mut zero_defects = 0;
        for m in &mats {
            let ctx = PoissonContext::new(m.clone());
            let defect = ctx.jacobi_defect(1, 2, 3)?;
            let jac = ctx.jacobiator(&t(1), &t(2), &t(3))?;
            zero_defects += usize::from(defect.is_zero());
            if defect.is_zero() != jac.is_zero() {
                bad.push(format!("{:?}", m.pairs().iter().map(|&(i, j)| m.get(i, j).to_string()).collect::<Vec<_>>()));
            }
        }
        let o = Outcome::check(bad.is_empty(), || bad.join("; "));
        Ok::<_, crate::poisson::PoissonError>(o.with_note(format!("{zero_defects} of {} draws satisfy the condition", mats.len())))
    });
}

fn invariant_ideals(r: &mut Report) {
    let (a, d) = symbolic_ad();
    r.run("invariant ideal: E(X) = 0, K(X) = q^-2 X, F(X) decomposes, lambda recovered", "invariant quadratic ideals", || {
        let (b, c) = invariant_coefficients(&a, &d);
        let rep = check_quadratic_ideal(1, 2, &a, &b, &c, &d);
        let expected = (Scalar::q().pow(2) + Scalar::one()).div(&(Scalar::q().pow(2) - Scalar::one())) * (&a + &d).div(&(&a - &d));
        let lam_ok = rep.lambda.as_ref() == Some(&expected);
        Ok::<_, String>(Outcome::check(rep.passed() && lam_ok, || {
            format!(
                "E: {}; K: {}; F: {}; generator: {}",
                rep.e_image,
                rep.k_residue,
                rep.f_residue.as_ref().map(nz).unwrap_or_default(),
                rep.generator_residue.as_ref().map(nz).unwrap_or_default()
            )
        }))
    });
    r.run("a = d gives the (x_i - x_j)^2 branch", "invariant quadratic ideals", || {
        let (b, c) = invariant_coefficients(&a, &a);
        let rep = check_quadratic_ideal(1, 2, &a, &b, &c, &a);
        Ok::<_, String>(Outcome::check(rep.degenerate && rep.passed(), || {
            format!("generator residue {}", rep.generator_residue.as_ref().map(nz).unwrap_or_default())
        }))
    });
}

fn cubic_reduction(r: &mut Report) {
    let lam = Scalar::lambda(1, 2);
    r.run("v_j^2 v_i equals the cubic rule modulo the relation", "cubic reduction", || {
        let coeffs = ReductionCoeffs::new(&lam).ok_or("no reduction")?;
        let rhs = coeffs.cubic_rule(Gen::v(1), Gen::v(2)).ok_or("singular")?;
        let lhs = NCPoly::monomial(&[Gen::v(2), Gen::v(2), Gen::v(1)]);
        let mut m = LambdaMatrix::new(vec![1, 2]);
        m.set(1, 2, lam.clone());
        let alg = PointAlgebra::real(m);
        Ok::<_, &str>(Outcome::check(alg.congruent(&lhs, &rhs), || lhs.sub(&rhs).to_string()))
    });
    r.run("1 - beta gamma closed form", "cubic reduction", || {
        let c = ReductionCoeffs::new(&lam).ok_or("no reduction")?;
        let q2 = Scalar::q().pow(2);
        let q4 = q2.pow(2);
        let one = Scalar::one();
        let two = Scalar::from_int(2);
        let closed = (&(&two * &(&q4 + &one)) - &(&two * &(&lam * &(&q4 - &one)))).div(&(&lam * &(&q2 - &one) - (&q2 + &one)).pow(2));
        let diff = c.one_minus_beta_gamma() - closed;
        Ok::<_, &str>(Outcome::check(diff.is_zero(), || diff.to_string()))
    });
    r.run("1 - beta gamma vanishes at (q^4+1)/(q^4-1)", "cubic reduction", || {
        let c = ReductionCoeffs::new(&lambda_singular_cubic()).ok_or("no reduction")?;
        let v = c.one_minus_beta_gamma();
        Ok::<_, &str>(Outcome::check(v.is_zero(), || v.to_string()))
    });
}

fn triple_suite(r: &mut Report, cfg: &SuiteConfig) {
    let lam = match &cfg.lambda {
        Some(l) if l.labels().len() == 3 => l.clone(),
        _ => LambdaMatrix::symbolic(vec![1, 2, 3]),
    };
    let [i, j, k] = [lam.labels()[0], lam.labels()[1], lam.labels()[2]];
    r.run("three-index combination matches the closed form", "three-index cubic combination", || {
        let tc = triple_combination(i, j, k, &lam)?;
        Ok::<_, crate::pointalg::PointAlgError>(Outcome::check(tc.matches(), || {
            let bad: Vec<String> = tc
                .computed
                .iter()
                .zip(&tc.closed_form)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(n, (a, b))| format!("p{}: {} vs {}", n + 1, a, b))
                .collect();
            format!("distinct {}; leftover {}; {}", tc.distinct_letter_residual, tc.leftover, bad.join("; "))
        }))
    });
}

/// `lambda_13` forced by the Jacobi condition.
pub fn jacobi_completion(l12: &Scalar, l23: &Scalar) -> LambdaMatrix {
    let l13 = (Scalar::one() + l12 * l23).div(&(l12 + l23));
    let mut m = LambdaMatrix::new(vec![1, 2, 3]);
    m.set(1, 2, l12.clone());
    m.set(1, 3, l13);
    m.set(2, 3, l23.clone());
    m
}

fn dimension_check(r: &mut Report, id: &str, alg: PointAlgebra, d: usize, expect: impl Fn(usize) -> bool, want: &str) {
    r.run(id, "graded dimensions", || {
        let dim = alg.graded_dimension(d)?;
        let ordered = alg.ordered_monomials_independent(d);
        let note = if ordered { format!("dimension {dim}") } else { format!("dimension {dim}, ordered monomials dependent") };
        Ok::<_, crate::pointalg::PointAlgError>(
            Outcome::check(expect(dim), || format!("{note}, expected {want}")).with_note(note),
        )
    });
}

fn graded_dimensions(r: &mut Report, cfg: &SuiteConfig) {
    let d = cfg.degree.unwrap_or(3);
    if let Some(lam) = &cfg.lambda {
        let n = lam.labels().len();
        let classical = binomial(n + d - 1, d);
        let alg = PointAlgebra::real(lam.clone());
        let eligible = alg.pbw_eligible();
        dimension_check(
            r,
            &format!("n={n}, degree {d}: classical dimension {classical} iff eligible ({eligible})"),
            alg,
            d,
            move |dim| (dim == classical) == eligible,
            &format!("{classical} exactly when eligible"),
        );
        return;
    }
    let ones3 = LambdaMatrix::constant(vec![1, 2, 3], &Scalar::one());
    dimension_check(r, "lambda = 1, n = 3", PointAlgebra::real(ones3), 3, |x| x == 10, "10");
    let ones4 = LambdaMatrix::constant(vec![1, 2, 3, 4], &Scalar::one());
    dimension_check(r, "lambda = 1, n = 4", PointAlgebra::real(ones4), 3, |x| x == 20, "20");
    let coth = lambda_preset("coth:2,3", 3).expect("preset");
    dimension_check(r, "coth family at t = (2, 3), n = 3", PointAlgebra::real(coth), 3, |x| x == 10, "10");
    dimension_check(r, "exceptional structure, n = 3", PointAlgebra::exceptional(vec![1, 2, 3]), 3, |x| x == 10, "10");
    let two = Scalar::from_int(2);
    for (name, v) in [("(q^2+1)/(q^2-1)", lambda_no_rule()), ("(q^4+1)/(q^4-1)", lambda_singular_cubic())] {
        dimension_check(
            r,
            &format!("lambda_12 = {name}, lambda_23 = 2, Jacobi condition held"),
            PointAlgebra::real(jacobi_completion(&v, &two)),
            3,
            |x| x < 10,
            "below 10",
        );
        let mut m = LambdaMatrix::constant(vec![1, 2, 3], &Scalar::one());
        m.set(1, 2, v.clone());
        dimension_check(
            r,
            &format!("lambda_12 = {name}, other pairs 1"),
            PointAlgebra::real(m),
            3,
            |x| x < 10,
            "below 10",
        );
    }
    for (name, m) in [
        ("all lambda = 0", LambdaMatrix::constant(vec![1, 2, 3], &Scalar::zero())),
        ("lambda = (2, 3, 5)", {
            let mut m = LambdaMatrix::new(vec![1, 2, 3]);
            m.set(1, 2, two.clone());
            m.set(1, 3, Scalar::from_int(3));
            m.set(2, 3, Scalar::from_int(5));
            m
        }),
    ] {
        dimension_check(r, &format!("{name}: Jacobi condition fails"), PointAlgebra::real(m), 3, |x| x < 10, "below 10");
    }
}

fn three_point(r: &mut Report, cfg: &SuiteConfig) {
    let (l12, l23) = match &cfg.lambda {
        Some(l) if l.labels().len() == 3 => {
            let ls = l.labels();
            (l.get(ls[0], ls[1]), l.get(ls[1], ls[2]))
        }
        _ => (Scalar::lambda(1, 2), Scalar::lambda(2, 3)),
    };
    let rep = match three_point_u_form(&l12, &l23) {
        Ok(rep) => rep,
        Err(e) => {
            r.run("change of generators", "three-point normal form", || Err::<Outcome, _>(e));
            return;
        }
    };
    r.run("determinant = -8 (lambda_12 + lambda_23)^2", "three-point normal form", || {
        Ok::<_, String>(Outcome::check(rep.determinant == rep.expected_determinant, || rep.determinant.to_string()))
    });
    for (n, name) in ["B_12", "B_13", "B_23"].iter().enumerate() {
        r.run(&format!("{name} expansion"), "three-point normal form", || {
            Ok::<_, String>(Outcome::check(rep.b_residues[n].is_zero(), || rep.b_residues[n].to_string()))
        });
    }
    r.run("u relations generate the same ideal", "three-point normal form", || {
        Ok::<_, String>(Outcome::check(rep.same_ideal, || "span differs".into()))
    });
    r.run("overlap u_3 u_2 u_1 resolves", "three-point normal form", || {
        let ok = rep.overlap_residues.iter().all(NCPoly::is_zero) && rep.overlap_sides.0 == rep.overlap_sides.1;
        Ok::<_, String>(Outcome::check(ok, || format!("{} vs {}", rep.overlap_sides.0, rep.overlap_sides.1)))
    });
}

fn exceptional(r: &mut Report) {
    r.run("exceptional change of generators", "exceptional structure", || {
        let rep = exceptional_u_form()?;
        Ok::<_, crate::pointalg::PointAlgError>(Outcome::check(rep.passed(), || {
            format!(
                "det {} (want {}), B residues {:?}, same ideal {}, overlaps {:?}, dim {}",
                rep.determinant,
                rep.expected_determinant,
                rep.b_residues.iter().map(nz).collect::<Vec<_>>(),
                rep.same_ideal,
                rep.overlap_residues.iter().map(nz).collect::<Vec<_>>(),
                rep.dimension3
            )
        }))
    });
}

/// Coordinate algebras on which the embedding is checked.
pub fn embedding_cases() -> Vec<(String, ProjAlgebra)> {
    let q = Scalar::q();
    let a = Scalar::var(Var::sym("a"));
    let two = |m: MuPair| ProjAlgebra::new(vec![1, 2]).expect("labels").with_pair(1, 2, m);
    vec![
        ("mu1 = q^2, mu2 = q".into(), two(MuPair::ones())),
        ("mu1 = q a, mu2 = a".into(), two(MuPair::new(&q * &a, a.clone()))),
        ("mu1 = 1, mu2 = q".into(), two(MuPair::new(Scalar::one(), q.clone()))),
    ]
}

fn coordinate_embedding(r: &mut Report) {
    for (name, alg) in embedding_cases() {
        let rep = check_embedding(&alg, 1, 2);
        r.run(&format!("{name}: quadratic relation with lambda from mu"), "coordinate embedding", || {
            let rep = rep.as_ref().map_err(Clone::clone)?;
            Ok::<_, ProjError>(Outcome::check(rep.relation_holds(), || rep.relation_residue.to_string()).with_note(format!("lambda = {}", rep.lambda)))
        });
        r.run(&format!("{name}: E, F, K act on v_1 as on a point letter"), "coordinate embedding", || {
            let rep = rep.as_ref().map_err(Clone::clone)?;
            let bad: Vec<String> = rep
                .action
                .iter()
                .filter(|(_, a, b)| a != b)
                .map(|(op, a, b)| format!("{op:?}: {a} vs {b}"))
                .collect();
            Ok::<_, ProjError>(Outcome::check(bad.is_empty(), || bad.join("; ")))
        });
    }
    r.run("x_1 y_1^-1 without the s prefactor carries the point action", "coordinate embedding", || {
        let alg = ProjAlgebra::ones(vec![1, 2])?;
        let bare = NCPoly::monomial(&[Gen::x(1), Gen::y_inv(1)]);
        let mut bad = Vec::new();
        for op in UqOp::ALL {
            let got = alg.normal_form(&act(ActionTable::Projective, op, &bare)?)?;
            let point = act(ActionTable::Point, op, &NCPoly::gen(Gen::v(1)))?;
            let want = alg.normal_form(&point.linear_substitute(&|g: Gen| (g.kind == GenKind::V).then(|| bare.clone())))?;
            if got != want {
                bad.push(format!("{op:?}: {got} vs {want}"));
            }
        }
        Ok::<_, ProjError>(Outcome::check(bad.is_empty(), || bad.join("; ")))
    });
    r.skip(
        "symbolic mu1, mu2",
        "coordinate embedding",
        "the rules are not confluent for independent mu1, mu2, so normal forms are not canonical",
    );
}

fn pair_commutation(r: &mut Report) {
    match invariant_commutation_rules([1, 2, 3, 4]) {
        Ok(rules) => {
            for (id, res) in rules {
                r.run(&id, "commutation of pair invariants", || {
                    Ok::<_, String>(Outcome::check(res.is_zero(), || res.to_string()))
                });
            }
        }
        Err(e) => r.run("commutation rules", "commutation of pair invariants", || Err::<Outcome, _>(e)),
    }
    r.run("(24)(13) - q^4 (13)(24) is a multiple of (12)(34)", "commutation of pair invariants", || {
        let b = mixed_rule_coefficient([1, 2, 3, 4])?;
        Ok::<_, ProjError>(match b {
            Some(b) => Outcome::pass().with_note(format!("coefficient {b}")),
            None => Outcome::fail("not a multiple"),
        })
    });
    let alg = ProjAlgebra::ones(vec![1, 2, 3]).expect("labels");
    r.run("(21) = -(12)", "pair invariants", || {
        let res = reversed_pair_residue(&alg, 1, 2)?;
        Ok::<_, ProjError>(Outcome::check(res.is_zero(), || res.to_string()))
    });
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        r.run(&format!("({i}{j}) is invariant and equals y_{i} (v_{i} - v_{j}) y_{j}"), "pair invariants", || {
            let c = certify_invariant(&alg, i, j)?;
            Ok::<_, ProjError>(Outcome::check(c.passed(), || format!("E {}; F {}; K {}; factorization {}", c.e, c.f, c.k, c.factorization)))
        });
    }
}

/// Symbolic `mu_ab` for unordered pairs.
pub fn symbolic_mu(a: u32, b: u32) -> Scalar {
    Scalar::var(Var::Mu(a.min(b), a.max(b)))
}

fn cross_ratio_letters(r: &mut Report) {
    r.run("conjugated factors match the closed expression, symbolic mu", "cross ratio in point letters", || {
        let c = cross_ratio_in_v([1, 2, 3, 4], &symbolic_mu)?;
        Ok::<_, ProjError>(Outcome::check(c.matches(), || format!("factors {:?} differ", c.mismatches())))
    });
    r.run("at mu = q every prefactor is 1/q", "cross ratio in point letters", || {
        let q = Scalar::q();
        let c = cross_ratio_in_v([1, 2, 3, 4], &|_, _| q.clone())?;
        let v = |a: u32| NCPoly::gen(Gen::v(a));
        let qi = q.inv();
        let expect = [v(1).sub(&v(4)), v(3).sub(&v(4)), v(3).sub(&v(2)), v(1).sub(&v(2))].map(|p| p.scale(&qi));
        let ok = c.computed.iter().zip(&expect).all(|(a, b)| a == b);
        Ok::<_, ProjError>(Outcome::check(ok && c.matches(), || format!("{:?}", c.computed.iter().map(nz).collect::<Vec<_>>())))
    });
    r.run("conjugation by y agrees with rewriting when mu is read for the reversed pair", "cross ratio in point letters", || {
        let alg = ProjAlgebra::ones(vec![1, 2]).expect("labels");
        let mut bad = Vec::new();
        for (a, b) in [(1, 2), (2, 1)] {
            let (alpha, beta) = conjugation_by_rewriting(&alg, a, b)?.ok_or(ProjError::NotConfluent)?;
            let m = alg.mu(b, a)?;
            let formula = conjugate_by_y(a, &NCPoly::gen(Gen::v(b)), &|_, _| m.clone());
            let direct = NCPoly::gen(Gen::v(b)).scale(&alpha).add(&NCPoly::gen(Gen::v(a)).scale(&beta));
            if formula != direct {
                bad.push(format!("y_{a} v_{b}: {formula} vs {direct}"));
            }
        }
        Ok::<_, ProjError>(Outcome::check(bad.is_empty(), || bad.join("; ")))
    });
    r.run("repeated label is rejected", "cross ratio in point letters", || {
        Ok::<_, String>(Outcome::check(cross_ratio_in_v([1, 1, 3, 4], &symbolic_mu).is_err(), || "accepted".into()))
    });
}

fn cross_ratio_identities(r: &mut Report) {
    let table = match cross_ratio_table([1, 2, 3, 4]) {
        Ok(t) => t,
        Err(e) => {
            r.run("cross ratio table", "cross ratio identities", || Err::<Outcome, _>(e));
            return;
        }
    };
    let inverse_checks: Vec<_> = table.checks.iter().filter(|c| c.id.contains("= 1") && !c.id.contains('+')).collect();
    r.run("C_adcb C_abcd = 1 for all arrangements", "cross ratio identities", || {
        let bad: Vec<String> = inverse_checks.iter().filter(|c| !c.residue.is_zero()).map(|c| c.id.clone()).collect();
        Ok::<_, String>(Outcome::check(bad.is_empty(), || bad.join("; ")))
    });
    r.run("C_abdc + C_abcd = 1 for all arrangements", "cross ratio identities", || {
        let bad: Vec<String> = table
            .checks
            .iter()
            .filter(|c| c.id.contains('+') && !c.residue.is_zero())
            .map(|c| format!("{}: {}", c.id, c.residue))
            .collect();
        Ok::<_, String>(Outcome::check(bad.is_empty(), || bad.join("; ")))
    });
    let c = Scalar::var(table.symbol);
    let one = Scalar::one();
    let five = [
        ("C_ilkj = 1/C", "ilkj", c.inv()),
        ("C_ijlk = 1 - C", "ijlk", &one - &c),
        ("C_ikjl = C/(C-1)", "ikjl", c.div(&(&c - &one))),
        ("C_iklj = 1/(1-C)", "iklj", (&one - &c).inv()),
        ("C_iljk = 1 - 1/C", "iljk", &one - &c.inv()),
    ];
    for (id, perm, want) in five {
        r.run(id, "cross ratio identities", || {
            let got = table.value(crate::projcoord::parse_perm(perm)?).clone();
            Ok::<_, ProjError>(Outcome::check(got == want, || got.to_string()))
        });
    }
    r.run("propagation is consistent", "cross ratio identities", || {
        Ok::<_, String>(Outcome::check(table.consistent(), || format!("conflicts {:?}", table.conflicts)))
    });
}

fn cross_table(r: &mut Report) {
    let table = match cross_ratio_table([1, 2, 3, 4]) {
        Ok(t) => t,
        Err(e) => {
            r.run("cross ratio table", "cross ratio table", || Err::<Outcome, _>(e));
            return;
        }
    };
    r.run("C* = q^2 C", "cross ratio table", || {
        let want = Scalar::q().pow(2);
        Ok::<_, String>(Outcome::check(table.star_factor == want, || table.star_factor.to_string()))
    });
    r.run("24 permutations match the reference table", "cross ratio table", || {
        let bad = table.reference_mismatches();
        Ok::<_, String>(Outcome::check(bad.is_empty(), || bad.join(", ")))
    });
    r.run("quantum cross ratios: self-adjoint, reference formulas, symmetry", "quantum cross ratio", || {
        let checks = table.quantum_checks()?;
        let bad: Vec<String> = checks.into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        Ok::<_, ProjError>(Outcome::check(bad.is_empty(), || bad.join(", ")))
    });
    r.run("s = 1 gives the classical cross ratios", "quantum cross ratio", || {
        let bad = table.classical_mismatches()?;
        Ok::<_, ProjError>(Outcome::check(bad.is_empty(), || bad.join(", ")))
    });
}

/// The quadruples whose cross-ratio symbols can occur in `D(j,i)`.
fn quads_for(base: [u32; 3], j: u32, i: u32) -> Vec<[u32; 4]> {
    [j, i]
        .iter()
        .map(|&x| {
            let mut q = [base[0], base[1], base[2], x];
            q.sort_unstable();
            q
        })
        .collect()
}

fn distance(r: &mut Report) {
    let cases: [([u32; 3], u32, u32); 3] = [([1, 2, 3], 4, 5), ([3, 1, 5], 2, 4), ([5, 4, 1], 3, 2)];
    let q2 = Scalar::q().pow(2);
    for (base, j, i) in cases {
        let tag = format!("base {base:?}, points {j}, {i}");
        r.run(&format!("{tag}: D* = D"), "quantum distance", || {
            let d = quantum_distance(base, j, i)?;
            let st = star_cross_ratio_expr(&d, &q2)?;
            Ok::<_, ProjError>(Outcome::check(st == d, || format!("{d} vs {st}")))
        });
        r.run(&format!("{tag}: D(j,i) = -D(i,j)"), "quantum distance", || {
            let s = quantum_distance(base, j, i)? + quantum_distance(base, i, j)?;
            Ok::<_, ProjError>(Outcome::check(s.is_zero(), || s.to_string()))
        });
        r.run(&format!("{tag}: D(i,i) = 0"), "quantum distance", || {
            let z = quantum_distance(base, i, i)?;
            Ok::<_, ProjError>(Outcome::check(z.is_zero(), || z.to_string()))
        });
        r.run(&format!("{tag}: classical limit"), "quantum distance", || {
            let d = quantum_distance(base, j, i)?;
            let cl = classical_limit(&d, &quads_for(base, j, i))?;
            let [o, e, inf] = base;
            let want = classical_cross_ratio(o, e, inf, j) - classical_cross_ratio(o, e, inf, i);
            Ok::<_, ProjError>(Outcome::check(cl == want, || format!("{cl} vs {want}")))
        });
    }
    r.run("label collision is rejected", "quantum distance", || {
        Ok::<_, String>(Outcome::check(quantum_distance([1, 2, 3], 3, 4).is_err(), || "accepted".into()))
    });
}

fn quasiclassical(r: &mut Report, cfg: &SuiteConfig) {
    let contexts: Vec<(String, LambdaMatrix)> = match &cfg.lambda {
        Some(l) => vec![("configured".into(), l.clone())],
        None => example_contexts().into_iter().map(|(n, c)| (format!("example {n}"), c.lambda)).collect(),
    };
    for (name, lam) in contexts {
        r.run(&format!("{name}: scaled commutators at s = 1 equal the brackets"), "quasiclassical limit", || {
            let alg = PointAlgebra::real(lam.clone());
            let checks = alg.quasiclassical_limit()?;
            let bad: Vec<String> = checks
                .iter()
                .filter(|c| !c.matches())
                .map(|c| format!("{:?}: {} vs {}", c.pair, c.limit, c.bracket))
                .collect();
            Ok::<_, crate::pointalg::PointAlgError>(Outcome::check(bad.is_empty(), || bad.join("; ")))
        });
    }
}

fn bmu_probe(r: &mut Report, cfg: &SuiteConfig) {
    let q = Scalar::q();
    let d = cfg.degree.unwrap_or(3);
    let m = Scalar::var(Var::sym("m"));
    let cases: [(&str, Scalar, Scalar, bool); 3] = [
        ("mu1 = q^2, mu2 = q", q.pow(2), q.clone(), true),
        ("mu1 = 1, mu2 = q", Scalar::one(), q.clone(), true),
        ("mu1 = m q, mu2 = q with symbolic m", &m * &q, q.clone(), false),
    ];
    for (name, mu1, mu2, classical) in cases {
        r.run(name, "polynomiality of coordinates", || {
            let rep = polynomiality_probe(&mu1, &mu2, d)?;
            let dims = format!("{:?}", rep.dims);
            Ok::<_, ProjError>(Outcome::check(rep.classical() == classical, || dims.clone()).with_note(dims))
        });
    }
}

/// Dimension of the quotient by the point relations, for the command line.
pub fn point_dimension(lam: &LambdaMatrix, d: usize) -> Result<(usize, usize, bool), crate::pointalg::PointAlgError> {
    let alg = PointAlgebra::real(lam.clone());
    let n = lam.labels().len();
    Ok((alg.graded_dimension(d)?, binomial(n + d - 1, d), alg.pbw_eligible()))
}

/// `v` letters of a point algebra, for parsing contexts.
pub fn point_letters(lam: &LambdaMatrix) -> Vec<Gen> {
    lam.labels().iter().map(|&i| Gen::new(GenKind::V, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &SuiteConfig::new(1)), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn json_config() {
        let m = lambda_from_json(r#"{"points":[1,2,3],"lambda":{"1,2":"2","2,3":"3/2"}}"#).unwrap();
        assert_eq!(m.get(1, 2), Scalar::from_int(2));
        assert_eq!(m.get(3, 2), -Scalar::from_ratio(3, 2));
        assert_eq!(m.get(1, 3), Scalar::one());
        assert!(lambda_from_json(r#"{"points":[1,2],"lambda":{"1,5":"2"}}"#).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(lambda_preset("ones", 3).unwrap().get(1, 3), Scalar::one());
        let c = lambda_preset("coth:2,3", 3).unwrap();
        assert_eq!(c.labels(), &[1, 2, 3]);
        assert_eq!(c.get(1, 2), Scalar::from_int(3));
        assert_eq!(c.get(1, 3), Scalar::from_ratio(7, 5));
        assert_eq!(lambda_preset("coth:4", 2).unwrap().labels().len(), 4);
        assert!(lambda_preset("bogus", 3).is_err());
    }
}
