use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussianRational;
use super::gcd::gcd;
use super::poly::{MPoly, Monomial};
use super::var::Var;
use super::ScalarError;

/// An element of Q(i)(s, lambda, t, ...): a reduced fraction of polynomials
/// whose denominator has leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(MPoly::constant(GaussianRational::from_int(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_poly(MPoly::constant(GaussianRational::from_ratio(n, d)))
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Scalar::from_poly(MPoly::constant(c))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Scalar { num: p, den: MPoly::one() }
    }

    pub fn imag_unit() -> Self {
        Scalar::from_gauss(GaussianRational::imag_unit())
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(MPoly::var(v))
    }

    /// The square root of q.
    pub fn s() -> Self {
        Scalar::var(Var::S)
    }

    pub fn q() -> Self {
        Scalar::from_poly(MPoly::term(Monomial::var(Var::S, 2), GaussianRational::one()))
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i32) -> Self {
        Scalar::s().powi(2 * n)
    }

    /// `lambda_{i,j}`, antisymmetric in its indices.
    pub fn lambda(i: u32, j: u32) -> Self {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Scalar::var(Var::Lambda(i, j)),
            std::cmp::Ordering::Greater => -Scalar::var(Var::Lambda(j, i)),
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    pub fn t(k: u32) -> Self {
        Scalar::var(Var::T(k))
    }

    pub fn sym(name: &str) -> Self {
        Scalar::var(Var::sym(name))
    }

    /// Builds `num/den`, reducing and normalizing.
    pub fn from_parts(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Scalar::normalized(n, d))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        let lc = den.lead_coef();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().expect("nonzero denominator");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    /// Inverse; panics on zero. Use [`Scalar::try_inv`] for fallible code.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.try_inv()?)
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.try_div(o).expect("division by zero scalar")
    }

    pub fn pow(&self, e: u32) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }.renorm()
    }

    pub fn powi(&self, e: i32) -> Scalar {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }

    fn renorm(self) -> Scalar {
        Scalar::normalized(self.num, self.den)
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Simultaneous substitution of indeterminates by scalars.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Scalar>) -> Result<Scalar, ScalarError> {
        let n = eval_poly(&self.num, bindings);
        let d = eval_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(&n * &d.inv())
    }

    /// Substitutes a single indeterminate.
    pub fn subst1(&self, v: Var, value: &Scalar) -> Result<Scalar, ScalarError> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Replaces every `s^(2k)` by `s^k`; used to read a function of `q` as
    /// the same function of `s`. `None` if an odd power of `s` occurs.
    pub fn halve_s(&self) -> Option<Scalar> {
        let h = |p: &MPoly| -> Option<MPoly> {
            if p.terms().iter().any(|(m, _)| m.degree_in(Var::S) % 2 == 1) {
                return None;
            }
            Some(p.map_monomials(|m| m.map_exponent(Var::S, |e| e / 2)))
        };
        Scalar::from_parts(h(&self.num)?, h(&self.den)?).ok()
    }

    /// Replaces every `s^k` by `s^(2k)`, i.e. `q -> q^2`.
    pub fn double_s(&self) -> Scalar {
        let h = |p: &MPoly| p.map_monomials(|m| m.map_exponent(Var::S, |e| 2 * e));
        Scalar::from_parts(h(&self.num), h(&self.den)).expect("nonzero denominator")
    }
}

fn eval_poly(p: &MPoly, bindings: &BTreeMap<Var, Scalar>) -> Scalar {
    let mut cache: BTreeMap<(Var, u32), Scalar> = BTreeMap::new();
    let mut acc = Scalar::zero();
    // Group terms by their bound part to limit the number of field additions.
    let mut free_parts: BTreeMap<Monomial, Vec<(Monomial, GaussianRational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut bound = Monomial::one();
        let mut free = Monomial::one();
        for &(v, e) in m.factors() {
            if bindings.contains_key(&v) {
                bound = bound.mul(&Monomial::var(v, e));
            } else {
                free = free.mul(&Monomial::var(v, e));
            }
        }
        free_parts.entry(bound).or_default().push((free, c.clone()));
    }
    for (bound, rest) in free_parts {
        let mut val = Scalar::from_poly(MPoly::from_terms(rest));
        for &(v, e) in bound.factors() {
            let pw = cache
                .entry((v, e))
                .or_insert_with(|| bindings[&v].pow(e))
                .clone();
            val = &val * &pw;
        }
        acc = &acc + &val;
    }
    acc
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar::from_poly(n);
            }
            return Scalar::from_parts(n, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let n = self.num.mul(&o.den).add(&o.num);
            return Scalar { num: n, den: o.den.clone() };
        }
        if o.den.is_one() {
            let n = o.num.mul(&self.den).add(&self.num);
            return Scalar { num: n, den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Scalar::normalized(n, self.den.mul(&o.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d1).add(&o.num.mul(&b1));
        if t.is_zero() {
            return Scalar::zero();
        }
        let h = gcd(&t, &g);
        let (t, g) = if h.is_one() {
            (t, g)
        } else {
            (t.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        Scalar::normalized(t, b1.mul(&d1).mul(&g))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let reduce = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
            if d.is_one() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (a, d) = reduce(&self.num, &o.den);
        let (c, b) = reduce(&o.num, &self.den);
        Scalar::normalized(a.mul(&c), b.mul(&d))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::from_gauss(c)
    }
}

fn needs_parens(p: &MPoly) -> bool {
    p.len() > 1 || p.lead().is_some_and(|(m, c)| !m.is_one() && !c.is_one() && !c.is_real())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.len() > 1 || !self.den.lead().is_some_and(|(m, _)| m.factors().len() <= 1) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_denominator_collapses() {
        let q2 = Scalar::q().pow(2);
        let one = Scalar::one();
        let a = (&q2 - &one).div(&(&q2 + &one));
        let b = Scalar::from_int(2).div(&(&q2 + &one));
        assert!((a + b).is_one());
    }

    #[test]
    fn s_times_s_is_q() {
        assert_eq!(&Scalar::s() * &Scalar::s(), Scalar::q());
    }

    #[test]
    fn cancels_common_factor() {
        let s = Scalar::s();
        let one = Scalar::one();
        let r = (s.pow(4) - &one).div(&(s.pow(2) - &one));
        assert_eq!(r, s.pow(2) + one);
    }

    #[test]
    fn lambda_is_antisymmetric() {
        assert_eq!(Scalar::lambda(2, 1), -Scalar::lambda(1, 2));
        assert!(Scalar::lambda(3, 3).is_zero());
    }

    #[test]
    fn substitution_and_poles() {
        let q2 = Scalar::q().pow(2);
        let one = Scalar::one();
        let a = (&q2 - &one).div(&(&q2 + &one));
        assert!(a.subst1(Var::S, &one).unwrap().is_zero());
        let b = (&one + &q2).div(&(&one - &q2));
        assert_eq!(b.subst1(Var::S, &one), Err(ScalarError::Pole));
    }
}
