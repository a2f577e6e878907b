use std::collections::BTreeMap;

use super::poly::{MPoly, Monomial};
use super::ratfunc::Scalar;
use super::var::Var;

/// Antilinear field automorphism: `s -> 1/s`, `i -> -i`, and
/// `lambda_{a,b} -> lambda_{sigma(a),sigma(b)}` for a label involution sigma.
/// Every other indeterminate is treated as real.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarMap {
    sigma: BTreeMap<u32, u32>,
}

impl StarMap {
    /// Star with the identity pairing on labels.
    pub fn real() -> Self {
        StarMap::default()
    }

    /// Star with the label involution given by `pairs` (each pair swapped).
    pub fn with_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut sigma = BTreeMap::new();
        for &(a, b) in pairs {
            sigma.insert(a, b);
            sigma.insert(b, a);
        }
        StarMap { sigma }
    }

    pub fn sigma(&self, a: u32) -> u32 {
        self.sigma.get(&a).copied().unwrap_or(a)
    }

    fn star_poly(&self, p: &MPoly) -> (MPoly, u32) {
        let d = p.degree_in(Var::S);
        let mut terms = Vec::with_capacity(p.len());
        let mut negate = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let mut out = Monomial::one();
            let mut neg = false;
            for &(v, e) in m.factors() {
                let (w, flip) = match v {
                    Var::S => (Var::S, false),
                    Var::Lambda(a, b) => {
                        let (x, y) = (self.sigma(a), self.sigma(b));
                        if x < y {
                            (Var::Lambda(x, y), false)
                        } else {
                            (Var::Lambda(y, x), true)
                        }
                    }
                    other => (other, false),
                };
                let e2 = if v == Var::S { d - e } else { e };
                out = out.mul(&Monomial::var(w, e2));
                if flip && e % 2 == 1 {
                    neg = !neg;
                }
            }
            if m.degree_in(Var::S) == 0 && d > 0 {
                out = out.mul(&Monomial::var(Var::S, d));
            }
            terms.push((out, c.conj()));
            negate.push(neg);
        }
        let p = MPoly::from_terms(
            terms
                .into_iter()
                .zip(negate)
                .map(|((m, c), n)| (m, if n { -c } else { c })),
        );
        (p, d)
    }

    /// Applies the star to a scalar.
    pub fn apply(&self, a: &Scalar) -> Scalar {
        let (n, dn) = self.star_poly(a.numer());
        let (d, dd) = self.star_poly(a.denom());
        // star(p)(s) = s^-dn * n(s); the ratio picks up s^(dd - dn).
        let shift = dd as i64 - dn as i64;
        let (n, d) = if shift >= 0 {
            (n.mul_monomial(&Monomial::var(Var::S, shift as u32)), d)
        } else {
            (n, d.mul_monomial(&Monomial::var(Var::S, (-shift) as u32)))
        };
        Scalar::from_parts(n, d).expect("star of a nonzero denominator is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_of_s_cubed() {
        let st = StarMap::real();
        assert_eq!(st.apply(&Scalar::s().pow(3)), Scalar::s().pow(3).inv());
    }

    #[test]
    fn star_of_imaginary_expression() {
        let st = StarMap::real();
        let q2 = Scalar::q().pow(2);
        let a = Scalar::imag_unit() * (&q2 - &Scalar::one());
        let expected = Scalar::imag_unit() * (&q2 - &Scalar::one()).div(&q2);
        assert_eq!(st.apply(&a), expected);
    }

    #[test]
    fn paired_lambda() {
        let st = StarMap::with_pairs(&[(1, 2)]);
        assert_eq!(st.apply(&Scalar::lambda(1, 3)), Scalar::lambda(2, 3));
        assert_eq!(st.apply(&Scalar::lambda(1, 2)), -Scalar::lambda(1, 2));
        assert_eq!(StarMap::real().apply(&Scalar::lambda(1, 2)), Scalar::lambda(1, 2));
    }
}
