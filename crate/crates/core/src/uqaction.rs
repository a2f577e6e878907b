//! Action of the quantum enveloping algebra of sl2 on free-algebra elements
//! through the twisted Leibniz rules.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{Gen, GenKind, NCPoly, Word};
use crate::scalars::{Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UqError {
    #[error("generator {0} has no entry in the action table")]
    UnknownGenerator(String),
    #[error("a = d: the ideal is generated by (x_i - x_j)^2 and has no finite lambda")]
    DegenerateBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UqOp {
    E,
    F,
    K,
    Kinv,
}

impl UqOp {
    pub const ALL: [UqOp; 4] = [UqOp::E, UqOp::F, UqOp::K, UqOp::Kinv];

    pub fn parse(s: &str) -> Option<UqOp> {
        match s {
            "E" => Some(UqOp::E),
            "F" => Some(UqOp::F),
            "K" => Some(UqOp::K),
            "Kinv" | "K^-1" => Some(UqOp::Kinv),
            _ => None,
        }
    }
}

/// Images of the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionTable {
    /// Point letters `v`, `x`, `t`, `w`, `wbar`: `E(x)=1`, `F(x)=-x^2`,
    /// `K(x)=q^-1 x`.
    Point,
    /// Homogeneous coordinates `x`, `y` with `s = q^(1/2)`:
    /// `E(x)=s y`, `F(y)=s^-1 x`, `K(x)=s^-1 x`, `K(y)=s y`, and `E(y)=F(x)=0`.
    /// Inverse letters `y^-1` are handled by [`ActionTable::inverse_image`].
    Projective,
}

fn g(x: Gen) -> NCPoly {
    NCPoly::gen(x)
}

impl ActionTable {
    /// Image of a single generator.
    pub fn image(&self, op: UqOp, x: Gen) -> Result<NCPoly, UqError> {
        let s = Scalar::s();
        let q = Scalar::q();
        match self {
            ActionTable::Point => match x.kind {
                GenKind::V | GenKind::X | GenKind::T | GenKind::W | GenKind::WStar => Ok(match op {
                    UqOp::E => NCPoly::one(),
                    UqOp::F => g(x).mul(&g(x)).neg(),
                    UqOp::K => g(x).scale(&q.inv()),
                    UqOp::Kinv => g(x).scale(&q),
                }),
                _ => Err(UqError::UnknownGenerator(x.to_string())),
            },
            ActionTable::Projective => match x.kind {
                GenKind::X => Ok(match op {
                    UqOp::E => g(Gen::y(x.index)).scale(&s),
                    UqOp::F => NCPoly::zero(),
                    UqOp::K => g(x).scale(&s.inv()),
                    UqOp::Kinv => g(x).scale(&s),
                }),
                GenKind::Y => Ok(match op {
                    UqOp::E => NCPoly::zero(),
                    UqOp::F => g(Gen::x(x.index)).scale(&s.inv()),
                    UqOp::K => g(x).scale(&s),
                    UqOp::Kinv => g(x).scale(&s.inv()),
                }),
                GenKind::YInv => self.inverse_image(op, Gen::y(x.index)),
                _ => Err(UqError::UnknownGenerator(x.to_string())),
            },
        }
    }

    /// Image of `y^-1` forced by applying the Leibniz rules to `y y^-1 = 1`.
    /// With `K(y) = c y` and `K^-1(y) = d y` this gives `K(y^-1) = c^-1 y^-1`
    /// and `E(y^-1) = -d^-1 y^-1 E(y) K(y^-1)`, and likewise for `F`.
    pub fn inverse_image(&self, op: UqOp, y: Gen) -> Result<NCPoly, UqError> {
        let yi = Gen::new(GenKind::YInv, y.index);
        let scale_of = |p: NCPoly| -> Scalar { p.coeff(&Word::from_gens(&[y])) };
        let c = scale_of(self.image(UqOp::K, y)?);
        let d = scale_of(self.image(UqOp::Kinv, y)?);
        let k_inv_img = g(yi).scale(&c.inv());
        match op {
            UqOp::K => Ok(k_inv_img),
            UqOp::Kinv => Ok(g(yi).scale(&d.inv())),
            UqOp::E | UqOp::F => {
                let img = self.image(op, y)?;
                Ok(g(yi).mul(&img).mul(&k_inv_img).scale(&-d.inv()))
            }
        }
    }
}

/// Applies an operator to `p` by splitting each word into its first letter
/// and the remainder.
pub fn act(table: ActionTable, op: UqOp, p: &NCPoly) -> Result<NCPoly, UqError> {
    let mut cache: BTreeMap<(UqOp, Gen), NCPoly> = BTreeMap::new();
    let mut img = |o: UqOp, x: Gen| -> Result<NCPoly, UqError> {
        if let Some(v) = cache.get(&(o, x)) {
            return Ok(v.clone());
        }
        let v = table.image(o, x)?;
        cache.insert((o, x), v.clone());
        Ok(v)
    };
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        // Suffix images, built from the right end of the word.
        let mut k = NCPoly::one();
        let mut kinv = NCPoly::one();
        let mut e = NCPoly::zero();
        for &x in w.letters().iter().rev() {
            let kx = img(UqOp::K, x)?;
            let kix = img(UqOp::Kinv, x)?;
            e = match op {
                UqOp::E | UqOp::F => img(op, x)?.mul(&k).add(&kix.mul(&e)),
                _ => e,
            };
            k = kx.mul(&k);
            kinv = kix.mul(&kinv);
        }
        let r = match op {
            UqOp::K => k,
            UqOp::Kinv => kinv,
            _ => e,
        };
        out.add_scaled(&r, c);
    }
    Ok(out)
}

/// Applies an operator using an arbitrary split point of each word, for
/// comparison with the canonical left-to-right evaluation.
pub fn act_split(table: ActionTable, op: UqOp, p: &NCPoly, split: &dyn Fn(usize) -> usize) -> Result<NCPoly, UqError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let r = act_word_split(table, op, w, split)?;
        out.add_scaled(&r, c);
    }
    Ok(out)
}

fn act_word_split(table: ActionTable, op: UqOp, w: &Word, split: &dyn Fn(usize) -> usize) -> Result<NCPoly, UqError> {
    if w.len() <= 1 {
        return act(table, op, &NCPoly::word(w.clone()));
    }
    let k = split(w.len()).clamp(1, w.len() - 1);
    let (a, b) = (w.slice(0, k), w.slice(k, w.len()));
    let rec = |o: UqOp, x: &Word| act_word_split(table, o, x, split);
    Ok(match op {
        UqOp::K | UqOp::Kinv => rec(op, &a)?.mul(&rec(op, &b)?),
        UqOp::E | UqOp::F => rec(op, &a)?
            .mul(&rec(UqOp::K, &b)?)
            .add(&rec(UqOp::Kinv, &a)?.mul(&rec(op, &b)?)),
    })
}

/// Invariance: `E(p) = 0`, `F(p) = 0`, `K(p) = p` after `reduce`.
pub fn is_invariant(
    table: ActionTable,
    p: &NCPoly,
    reduce: &dyn Fn(&NCPoly) -> NCPoly,
) -> Result<bool, UqError> {
    let e = reduce(&act(table, UqOp::E, p)?);
    let f = reduce(&act(table, UqOp::F, p)?);
    let k = reduce(&act(table, UqOp::K, p)?.sub(p));
    Ok(e.is_zero() && f.is_zero() && k.is_zero())
}

/// Residues of the defining relations of the quantum group, evaluated on `p`:
/// `K Kinv - id`, `K E - q E K`, `K F - q^-1 F K`, and
/// `(q - q^-1)(EF - FE) - (K^2 - K^-2)`.
pub fn operator_relation_residues(table: ActionTable, p: &NCPoly) -> Result<[NCPoly; 4], UqError> {
    let a = |o: UqOp, x: &NCPoly| act(table, o, x);
    let q = Scalar::q();
    let kk = a(UqOp::K, &a(UqOp::Kinv, p)?)?.sub(p);
    let ke = a(UqOp::K, &a(UqOp::E, p)?)?.sub(&a(UqOp::E, &a(UqOp::K, p)?)?.scale(&q));
    let kf = a(UqOp::K, &a(UqOp::F, p)?)?.sub(&a(UqOp::F, &a(UqOp::K, p)?)?.scale(&q.inv()));
    let ef = a(UqOp::E, &a(UqOp::F, p)?)?.sub(&a(UqOp::F, &a(UqOp::E, p)?)?);
    let k2 = a(UqOp::K, &a(UqOp::K, p)?)?;
    let km2 = a(UqOp::Kinv, &a(UqOp::Kinv, p)?)?;
    let comm = ef.scale(&(&q - &q.inv())).sub(&k2.sub(&km2));
    Ok([kk, ke, kf, comm])
}

/// `a x_i x_j + b x_i^2 + c x_j^2 + d x_j x_i`.
pub fn quadratic_generator(i: u32, j: u32, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> NCPoly {
    let (xi, xj) = (Gen::x(i), Gen::x(j));
    NCPoly::from_terms([
        (Word::from_gens(&[xi, xj]), a.clone()),
        (Word::from_gens(&[xi, xi]), b.clone()),
        (Word::from_gens(&[xj, xj]), c.clone()),
        (Word::from_gens(&[xj, xi]), d.clone()),
    ])
}

/// The normalized relation `[x_j,x_i] - (q^2-1)/(q^2+1) (x_j^2 - x_i^2 - lambda (x_i-x_j)^2)`.
pub fn lambda_relation(i: u32, j: u32, lambda: &Scalar, kind: GenKind) -> NCPoly {
    let xi = NCPoly::gen(Gen::new(kind, i));
    let xj = NCPoly::gen(Gen::new(kind, j));
    let q2 = Scalar::q().pow(2);
    let one = Scalar::one();
    let f = (&q2 - &one).div(&(&q2 + &one));
    let diff = xi.sub(&xj);
    let inner = xj.mul(&xj).sub(&xi.mul(&xi)).sub(&diff.mul(&diff).scale(lambda));
    xj.commutator(&xi).sub(&inner.scale(&f))
}

/// Result of checking ideal invariance for one quadratic generator.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// `E(X)`; zero exactly when both linear conditions hold.
    pub e_image: NCPoly,
    /// `K(X) - q^-2 X`.
    pub k_residue: NCPoly,
    pub alpha: Option<Scalar>,
    pub beta: Option<Scalar>,
    /// `F(X) - alpha (x_i X + X x_j) - beta (x_j X + X x_i)`.
    pub f_residue: Option<NCPoly>,
    /// Recovered `lambda` when `a != d`.
    pub lambda: Option<Scalar>,
    /// `X - (-(a-d)/2) I^lambda`, or `X + a (x_i - x_j)^2` when `a = d`.
    pub generator_residue: Option<NCPoly>,
    pub degenerate: bool,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.e_image.is_zero()
            && self.k_residue.is_zero()
            && self.f_residue.as_ref().is_none_or(NCPoly::is_zero)
            && self.generator_residue.as_ref().is_none_or(NCPoly::is_zero)
    }
}

/// Checks that the ideal generated by `X = a x_i x_j + b x_i^2 + c x_j^2 + d x_j x_i`
/// is stable under the action, decomposes `F(X)` and recovers `lambda`.
pub fn check_quadratic_ideal(i: u32, j: u32, a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> InvarianceReport {
    let t = ActionTable::Point;
    let x = quadratic_generator(i, j, a, b, c, d);
    let e_image = act(t, UqOp::E, &x).expect("point letters");
    let q = Scalar::q();
    let k_residue = act(t, UqOp::K, &x).expect("point letters").sub(&x.scale(&q.pow(2).inv()));
    let mut rep = InvarianceReport {
        e_image,
        k_residue,
        alpha: None,
        beta: None,
        f_residue: None,
        lambda: None,
        generator_residue: None,
        degenerate: a == d,
    };
    let xi = NCPoly::gen(Gen::x(i));
    let xj = NCPoly::gen(Gen::x(j));
    let one = Scalar::one();
    let q2 = q.pow(2);
    if a != d {
        let pref = (&one + &q2).div(&q);
        let alpha = &pref * &a.div(&(d - a));
        let beta = &pref * &d.div(&(a - d));
        let f = act(t, UqOp::F, &x).expect("point letters");
        let rhs = xi
            .mul(&x)
            .add(&x.mul(&xj))
            .scale(&alpha)
            .add(&xj.mul(&x).add(&x.mul(&xi)).scale(&beta));
        rep.f_residue = Some(f.sub(&rhs));
        let lam = (&q2 + &one).div(&(&q2 - &one)) * (a + d).div(&(a - d));
        let rel = lambda_relation(i, j, &lam, GenKind::X);
        rep.generator_residue = Some(rel.sub(&x.scale(&Scalar::from_int(-2).div(&(a - d)))));
        rep.alpha = Some(alpha);
        rep.beta = Some(beta);
        rep.lambda = Some(lam);
    } else {
        let diff = xi.sub(&xj);
        rep.generator_residue = Some(x.add(&diff.mul(&diff).scale(a)));
    }
    rep
}

/// Symbolic coefficients satisfying both linear invariance conditions:
/// `b = -(a q^2 + d)/(1+q^2)`, `c = -(a + d q^2)/(1+q^2)` with free `a`, `d`.
pub fn invariant_coefficients(a: &Scalar, d: &Scalar) -> (Scalar, Scalar) {
    let q2 = Scalar::q().pow(2);
    let den = &Scalar::one() + &q2;
    let b = -(a * &q2 + d.clone()).div(&den);
    let c = -(a + &(d * &q2)).div(&den);
    (b, c)
}

/// Free symbols `a` and `d` used for the fully symbolic check.
pub fn symbolic_ad() -> (Scalar, Scalar) {
    (Scalar::var(Var::sym("a")), Scalar::var(Var::sym("d")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_on_product() {
        let p = NCPoly::monomial(&[Gen::x(1), Gen::x(2)]);
        let r = act(ActionTable::Point, UqOp::E, &p).unwrap();
        let q = Scalar::q();
        let expected = NCPoly::gen(Gen::x(2)).scale(&q.inv()).add(&NCPoly::gen(Gen::x(1)).scale(&q));
        assert_eq!(r, expected);
    }

    #[test]
    fn unit_is_fixed() {
        let one = NCPoly::one();
        assert!(act(ActionTable::Point, UqOp::F, &one).unwrap().is_zero());
        assert_eq!(act(ActionTable::Point, UqOp::K, &one).unwrap(), one);
        assert!(is_invariant(ActionTable::Point, &one, &|p| p.clone()).unwrap());
        assert!(!is_invariant(ActionTable::Point, &NCPoly::gen(Gen::x(1)), &|p| p.clone()).unwrap());
    }

    #[test]
    fn inverse_letter_images() {
        let t = ActionTable::Projective;
        let s = Scalar::s();
        let f = t.image(UqOp::F, Gen::y_inv(1)).unwrap();
        let expected = NCPoly::monomial(&[Gen::y_inv(1), Gen::x(1), Gen::y_inv(1)]).scale(&-s.inv());
        assert_eq!(f, expected);
        assert!(t.image(UqOp::E, Gen::y_inv(1)).unwrap().is_zero());
    }
}
