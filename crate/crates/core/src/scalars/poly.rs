use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;

use super::gauss::GaussianRational;
use super::var::Var;

type Coef = GaussianRational;

/// A power product of indeterminates, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            let mut m = SmallVec::new();
            m.push((v, e));
            Monomial(m)
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = o.degree_in(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Removes `v` from the monomial, returning its exponent.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut e = 0;
        for &(w, f) in &self.0 {
            if w == v {
                e = f;
            } else {
                out.push((w, f));
            }
        }
        (e, Monomial(out))
    }

    pub fn map_exponent(&self, v: Var, f: impl Fn(u32) -> u32) -> Monomial {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for &(w, e) in &self.0 {
            if w == v {
                let ne = f(e);
                if ne > 0 {
                    out.push((w, ne));
                }
            } else {
                out.push((w, e));
            }
        }
        Monomial(out)
    }
}

/// Lexicographic order; an earlier variable is more significant.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over Q(i). Terms are kept sorted by
/// decreasing monomial with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Coef)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(Coef::one())
    }

    pub fn constant(c: Coef) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        MPoly { terms: vec![(Monomial::var(v, 1), Coef::one())] }
    }

    pub fn term(m: Monomial, c: Coef) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Coef)>) -> Self {
        let mut acc: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Coef> {
        if self.terms.is_empty() {
            Some(Coef::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Coef)> {
        self.terms.first()
    }

    pub fn lead_coef(&self) -> Coef {
        self.terms.first().map_or_else(Coef::zero, |t| t.1.clone())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            for &(v, _) in m.factors() {
                out.insert(v);
            }
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn scale(&self, c: &Coef) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, c) in &self.terms {
            terms.push((n.div(m)?, c.clone()));
        }
        Some(MPoly { terms })
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn conj(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Normalizes so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, o: &MPoly, negate: bool) -> MPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly { terms: out }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.merge(o, true)
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return MPoly {
                terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
            };
        }
        let mut acc: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        MPoly { terms }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `o` does not divide `self`.
    pub fn div_exact(&self, o: &MPoly) -> Option<MPoly> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = o.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.div_monomial(m).map(|p| p.scale(&c.inv().expect("nonzero")));
        }
        for v in o.vars() {
            if self.degree_in(v) < o.degree_in(v) {
                return None;
            }
        }
        let (lm, lc) = o.terms[0].clone();
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let m = rm.div(&lm)?;
            let c = &rc * &lc_inv;
            rem = rem.sub(&o.mul(&MPoly::term(m.clone(), c.clone())));
            quot.push((m, c));
        }
        Some(MPoly { terms: quot })
    }

    /// Coefficients with respect to `v`, keyed by exponent.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, MPoly> {
        let mut parts: BTreeMap<u32, Vec<(Monomial, Coef)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            parts.entry(e).or_default().push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|(e, mut ts)| {
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                (e, MPoly { terms: ts })
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, parts: impl IntoIterator<Item = (u32, MPoly)>) -> MPoly {
        let mut terms = Vec::new();
        for (e, p) in parts {
            let vm = Monomial::var(v, e);
            for (m, c) in p.terms {
                terms.push((m.mul(&vm), c));
            }
        }
        MPoly::from_terms(terms)
    }

    /// Evaluates every variable listed in `point`; others stay symbolic.
    pub fn eval_partial(&self, point: &BTreeMap<Var, Coef>) -> MPoly {
        let mut cache: BTreeMap<(Var, u32), Coef> = BTreeMap::new();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest: SmallVec<[(Var, u32); 4]> = SmallVec::new();
            for &(v, e) in m.factors() {
                if let Some(x) = point.get(&v) {
                    let p = cache.entry((v, e)).or_insert_with(|| x.pow(e)).clone();
                    coef = &coef * &p;
                } else {
                    rest.push((v, e));
                }
            }
            out.push((Monomial(rest), coef));
        }
        MPoly::from_terms(out)
    }

    /// Dense univariate image in `v` after evaluating all other variables.
    pub fn univariate_image(&self, v: Var, point: &BTreeMap<Var, Coef>) -> Vec<Coef> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Coef::zero(); d + 1];
        let mut cache: BTreeMap<(Var, u32), Coef> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut k = 0usize;
            for &(w, e) in m.factors() {
                if w == v {
                    k = e as usize;
                } else {
                    let x = point.get(&w).expect("evaluation point covers every other variable");
                    let p = cache.entry((w, e)).or_insert_with(|| x.pow(e)).clone();
                    coef = &coef * &p;
                }
            }
            out[k] = &out[k] + &coef;
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coef) -> Coef) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_like();
            let a = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> MPoly {
        MPoly::var(Var::S)
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(Coef::from_int(n))
    }

    #[test]
    fn exact_division() {
        // (s^4 - 1) / (s^2 - 1) = s^2 + 1
        let num = s().pow(4).sub(&c(1));
        let den = s().pow(2).sub(&c(1));
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, s().pow(2).add(&c(1)));
        assert!(s().pow(2).add(&c(1)).div_exact(&s().sub(&c(1))).is_none());
    }

    #[test]
    fn lex_order_puts_s_first() {
        let l = MPoly::var(Var::Lambda(1, 2));
        let p = l.pow(3).add(&s());
        assert_eq!(p.lead().unwrap().0, Monomial::var(Var::S, 1));
    }
}
