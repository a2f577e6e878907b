use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gauss::GaussianRational;
use super::poly::{Monomial, MPoly};
use super::var::Var;

type Coef = GaussianRational;

/// Monic greatest common divisor of two polynomials over Q(i).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let gm = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma).expect("monomial content divides");
    let b1 = b.div_monomial(&mb).expect("monomial content divides");
    let g = gcd_no_monomial(&a1, &b1);
    g.mul_monomial(&gm).monic()
}

fn gcd_no_monomial(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }

    let va = a.vars();
    let vb = b.vars();
    // A variable present in only one argument: the gcd divides that
    // argument's content with respect to the variable.
    if let Some(&v) = va.difference(&vb).next() {
        let c = content_in(a, v);
        return gcd(&c, b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        let c = content_in(b, v);
        return gcd(a, &c);
    }
    if va.len() == 1 {
        let v = *va.iter().next().unwrap();
        return univariate_gcd(a, b, v);
    }

    // Main variable: the one of least degree keeps the remainder sequence short.
    let v = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), a.degree_in(v).max(b.degree_in(v))))
        .unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    if image_degree_bound(&pa, &pb, v) == 0 {
        return gc;
    }
    let g = primitive_prs(&pa, &pb, v);
    g.mul(&gc).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MPoly, v: Var) -> MPoly {
    let parts = p.coeffs_in(v);
    let mut coeffs: Vec<MPoly> = parts.into_values().collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = MPoly::zero();
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &MPoly, v: Var) -> MPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

fn lead_in(p: &MPoly, v: Var) -> (u32, MPoly) {
    let parts = p.coeffs_in(v);
    let (&d, c) = parts.iter().next_back().expect("nonzero polynomial");
    (d, c.clone())
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = lead_in(&r, v);
        if dr < db {
            return r;
        }
        let shift = MPoly::term(Monomial::var(v, dr - db), Coef::one());
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
    }
}

fn primitive_prs(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_part_in(&g, v).monic();
        }
        if r.degree_in(v) == 0 {
            return MPoly::one();
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

fn univariate_gcd(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let to_dense = |p: &MPoly| p.univariate_image(v, &BTreeMap::new());
    let g = dense_gcd(to_dense(a), to_dense(b));
    MPoly::from_terms(
        g.into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(v, k as u32), c)),
    )
}

fn trim(p: &mut Vec<Coef>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Euclid on dense coefficient vectors (index = exponent); result is monic.
fn dense_gcd(mut a: Vec<Coef>, mut b: Vec<Coef>) -> Vec<Coef> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        let inv = lc.inv().expect("nonzero");
        for c in &mut a {
            *c = &*c * &inv;
        }
    }
    a
}

fn dense_rem(a: &[Coef], b: &[Coef]) -> Vec<Coef> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero");
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let f = &r[k] * &inv;
        let shift = k - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&f * c);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Degree in `v` of the gcd of univariate images at a random point. This
/// bounds the true degree from above when leading coefficients survive.
fn image_degree_bound(a: &MPoly, b: &MPoly, v: Var) -> usize {
    let mut others = a.vars();
    others.extend(b.vars());
    others.remove(&v);
    let da = a.degree_in(v) as usize;
    let db = b.degree_in(v) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_eed0_f9cd);
    for _ in 0..8 {
        let point: BTreeMap<Var, Coef> = others
            .iter()
            .map(|&w| (w, Coef::from_int(rng.gen_range(2..1000))))
            .collect();
        let ia = a.univariate_image(v, &point);
        let ib = b.univariate_image(v, &point);
        if ia.len() != da + 1 || ib.len() != db + 1 || ia[da].is_zero() || ib[db].is_zero() {
            continue;
        }
        let g = dense_gcd(ia, ib);
        return g.len().saturating_sub(1);
    }
    usize::MAX
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MPoly {
        MPoly::var(x)
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(Coef::from_int(n))
    }

    #[test]
    fn multivariate_common_factor() {
        let s = v(Var::S);
        let l = v(Var::Lambda(1, 2));
        let t = v(Var::T(1));
        let f = s.mul(&l).add(&c(1)).sub(&t.pow(2));
        let a = f.mul(&s.add(&l));
        let b = f.mul(&l.sub(&t).pow(2)).mul(&s);
        let g = gcd(&a, &b);
        assert_eq!(g, f.monic());
    }

    #[test]
    fn coprime_inputs() {
        let s = v(Var::S);
        let l = v(Var::Lambda(1, 2));
        let a = s.pow(2).add(&l);
        let b = s.sub(&l.pow(3)).add(&c(2));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_part() {
        let s = v(Var::S);
        let l = v(Var::Lambda(1, 2));
        let a = s.pow(3).mul(&l);
        let b = s.pow(2).mul(&l.add(&c(1)));
        assert_eq!(gcd(&a, &b), s.pow(2));
    }
}
