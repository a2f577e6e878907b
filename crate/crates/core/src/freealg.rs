//! Free associative algebra over indexed generators, with star structures.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::scalars::{Scalar, StarMap};

/// Generator families. Within one point label the order is the declaration
/// order below, so inverse y-letters sort before y and y before x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    V,
    T,
    U,
    W,
    WStar,
    YInv,
    Y,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub index: u32,
    pub kind: GenKind,
}

impl Gen {
    pub const fn new(kind: GenKind, index: u32) -> Self {
        Gen { index, kind }
    }

    pub const fn v(i: u32) -> Self {
        Gen::new(GenKind::V, i)
    }

    pub const fn x(i: u32) -> Self {
        Gen::new(GenKind::X, i)
    }

    pub const fn y(i: u32) -> Self {
        Gen::new(GenKind::Y, i)
    }

    pub const fn y_inv(i: u32) -> Self {
        Gen::new(GenKind::YInv, i)
    }

    pub const fn u(i: u32) -> Self {
        Gen::new(GenKind::U, i)
    }

    pub const fn t(i: u32) -> Self {
        Gen::new(GenKind::T, i)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.kind {
            GenKind::V => write!(f, "v{i}"),
            GenKind::T => write!(f, "t{i}"),
            GenKind::U => write!(f, "u{i}"),
            GenKind::W => write!(f, "w{i}"),
            GenKind::WStar => write!(f, "wbar{i}"),
            GenKind::YInv => write!(f, "y{i}^-1"),
            GenKind::Y => write!(f, "y{i}"),
            GenKind::X => write!(f, "x{i}"),
        }
    }
}

/// A word in the generators; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Gen; 4]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_gens(g: &[Gen]) -> Self {
        Word(SmallVec::from_slice(g))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&o.0);
        Word(w)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word::from_gens(&self.0[a..b])
    }

    /// True when letters are non-decreasing in the generator order.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }
}

/// Degree first, then lexicographic on letters.
impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.as_slice().cmp(o.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of words with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        NCPoly::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { terms }
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(w, Scalar::one())
    }

    pub fn gen(g: Gen) -> Self {
        NCPoly::word(Word::from_gens(&[g]))
    }

    pub fn monomial(gs: &[Gen]) -> Self {
        NCPoly::word(Word::from_gens(gs))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word with its coefficient.
    pub fn lead(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Word::len);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let n = &*e + c;
                if n.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *e = n;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &o.terms {
            self.add_term(w.clone(), &(d * c));
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), &-c);
        }
        r
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect() }
    }

    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut r = NCPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.concat(b), &(ca * cb));
            }
        }
        r
    }

    pub fn mul_word_left(&self, w: &Word) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())).collect() }
    }

    pub fn mul_word_right(&self, w: &Word) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut r = NCPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `self * o - o * self`.
    pub fn commutator(&self, o: &NCPoly) -> NCPoly {
        self.mul(o).sub(&o.mul(self))
    }

    /// Homomorphic extension of a generator map; unmapped generators stay.
    pub fn linear_substitute(&self, map: &dyn Fn(Gen) -> Option<NCPoly>) -> NCPoly {
        let mut cache: BTreeMap<Gen, NCPoly> = BTreeMap::new();
        let mut r = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(c.clone());
            for &g in w.letters() {
                let img = cache
                    .entry(g)
                    .or_insert_with(|| map(g).unwrap_or_else(|| NCPoly::gen(g)))
                    .clone();
                acc = acc.mul(&img);
                if acc.is_zero() {
                    break;
                }
            }
            r = r.add(&acc);
        }
        r
    }

    /// Applies a scalar map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<NCPoly, E> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }

    pub fn component(&self, d: usize) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }
}

fn scalar_needs_parens(c: &Scalar) -> bool {
    !c.is_polynomial() || c.numer().len() > 1
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                if scalar_needs_parens(c) {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else if scalar_needs_parens(c) {
                write!(f, "({c})*{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Antilinear antimultiplicative involution on the free algebra.
#[derive(Clone, Debug, Default)]
pub struct StarStructure {
    /// Label involution for point letters (`v`, `t`) in the complexified flavor.
    pairs: BTreeMap<u32, u32>,
    scalar: StarMap,
}

impl StarStructure {
    /// Every generator is self-adjoint.
    pub fn real() -> Self {
        StarStructure::default()
    }

    /// Point letters are swapped along the given label pairs, and `w` letters
    /// are swapped with `wbar` letters of the same label.
    pub fn complexified(pairs: &[(u32, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for &(a, b) in pairs {
            m.insert(a, b);
            m.insert(b, a);
        }
        StarStructure { pairs: m, scalar: StarMap::with_pairs(pairs) }
    }

    pub fn scalar_star(&self) -> &StarMap {
        &self.scalar
    }

    pub fn gen(&self, g: Gen) -> Gen {
        match g.kind {
            GenKind::W => Gen::new(GenKind::WStar, g.index),
            GenKind::WStar => Gen::new(GenKind::W, g.index),
            GenKind::V | GenKind::T => {
                Gen::new(g.kind, self.pairs.get(&g.index).copied().unwrap_or(g.index))
            }
            _ => g,
        }
    }

    pub fn scalar(&self, c: &Scalar) -> Scalar {
        self.scalar.apply(c)
    }

    pub fn apply(&self, p: &NCPoly) -> NCPoly {
        NCPoly::from_terms(p.terms().iter().map(|(w, c)| {
            let r = Word(w.letters().iter().rev().map(|&g| self.gen(g)).collect());
            (r, self.scalar(c))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_do_not_commute() {
        let a = NCPoly::gen(Gen::x(1));
        let b = NCPoly::gen(Gen::x(2));
        let p = a.add(&b).mul(&a.sub(&b));
        let expected = NCPoly::from_terms([
            (Word::from_gens(&[Gen::x(1), Gen::x(1)]), Scalar::one()),
            (Word::from_gens(&[Gen::x(1), Gen::x(2)]), -Scalar::one()),
            (Word::from_gens(&[Gen::x(2), Gen::x(1)]), Scalar::one()),
            (Word::from_gens(&[Gen::x(2), Gen::x(2)]), -Scalar::one()),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn star_reverses_and_conjugates() {
        let st = StarStructure::real();
        let a = Scalar::imag_unit() * Scalar::s();
        let p = NCPoly::term(Word::from_gens(&[Gen::x(1), Gen::x(2)]), a.clone());
        let r = st.apply(&p);
        assert_eq!(r.coeff(&Word::from_gens(&[Gen::x(2), Gen::x(1)])), -Scalar::imag_unit() * Scalar::s().inv());
        assert_eq!(st.apply(&r), p);
    }

    #[test]
    fn star_swaps_w_letters() {
        let st = StarStructure::complexified(&[]);
        let w = NCPoly::gen(Gen::new(GenKind::W, 1));
        assert_eq!(st.apply(&w), NCPoly::gen(Gen::new(GenKind::WStar, 1)));
    }

    #[test]
    fn commutator_basics() {
        let x = NCPoly::gen(Gen::x(1));
        assert!(x.commutator(&x).is_zero());
        assert!(NCPoly::one().commutator(&x).is_zero());
    }

    #[test]
    fn zero_substitution_keeps_constant() {
        let p = NCPoly::gen(Gen::x(1)).add(&NCPoly::constant(Scalar::from_int(3)));
        let r = p.linear_substitute(&|_| Some(NCPoly::zero()));
        assert_eq!(r, NCPoly::constant(Scalar::from_int(3)));
    }
}
