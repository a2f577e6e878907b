//! Exact row reduction of vectors indexed by words.

use std::collections::BTreeMap;

use crate::freealg::{Gen, NCPoly, Word};
use crate::scalars::Scalar;

/// Row-echelon basis of a subspace of the word space. Each stored row has
/// leading (largest) word equal to its pivot and leading coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<Word, NCPoly>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_span<'a>(gens: impl IntoIterator<Item = &'a NCPoly>) -> Self {
        let mut e = Echelon::new();
        for g in gens {
            e.insert(g);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Word> {
        self.rows.keys()
    }

    /// Remainder of `p` after eliminating every pivot word.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut r = p.clone();
        let mut done = NCPoly::zero();
        while let Some((w, c)) = r.lead().map(|(w, c)| (w.clone(), c.clone())) {
            match self.rows.get(&w) {
                Some(row) => r.add_scaled(row, &-&c),
                None => {
                    r.add_term(w.clone(), &-&c);
                    done.add_term(w, &c);
                }
            }
        }
        done
    }

    /// Inserts `p`; returns true when the rank grew.
    pub fn insert(&mut self, p: &NCPoly) -> bool {
        let r = self.reduce(p);
        match r.lead().map(|(w, c)| (w.clone(), c.clone())) {
            None => false,
            Some((w, c)) => {
                let row = if c.is_one() { r } else { r.scale(&c.inv()) };
                self.rows.insert(w, row);
                true
            }
        }
    }

    pub fn contains(&self, p: &NCPoly) -> bool {
        self.reduce(p).is_zero()
    }
}

/// Rank of a finite family of vectors.
pub fn rank<'a>(vs: impl IntoIterator<Item = &'a NCPoly>) -> usize {
    Echelon::from_span(vs).rank()
}

/// All words of length `d` over `gens`.
pub fn all_words(gens: &[Gen], d: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * gens.len());
        for w in &out {
            for &g in gens {
                next.push(w.concat(&Word::from_gens(&[g])));
            }
        }
        out = next;
    }
    out
}

/// Degree-`d` part of the two-sided ideal generated by homogeneous
/// quadratic `rels`: the span of `w1 r w2` with `|w1| + |w2| = d - 2`.
pub fn ideal_component(gens: &[Gen], rels: &[NCPoly], d: usize) -> Echelon {
    let mut e = Echelon::new();
    if d < 2 {
        return e;
    }
    for left in 0..=d - 2 {
        let lw = all_words(gens, left);
        let rw = all_words(gens, d - 2 - left);
        for w1 in &lw {
            for w2 in &rw {
                for r in rels {
                    e.insert(&r.mul_word_left(w1).mul_word_right(w2));
                }
            }
        }
    }
    e
}

/// Dimension of the degree-`d` part of the quotient by quadratic `rels`.
pub fn quotient_dimension(gens: &[Gen], rels: &[NCPoly], d: usize) -> usize {
    gens.len().pow(d as u32) - ideal_component(gens, rels, d).rank()
}

/// Scalar determinant by fraction-free elimination on a small dense matrix.
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let pinv = p.inv();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &pinv;
            let pivot = a[col].clone();
            for (x, pk) in a[r].iter_mut().zip(&pivot).skip(col) {
                *x = &*x - &(&f * pk);
            }
        }
    }
    det
}

/// Solves `m x = b` for square invertible `m`; `None` when singular.
pub fn solve(m: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let pinv = a[col][col].inv();
        for x in a[col].iter_mut().skip(col) {
            *x = &*x * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot = a[col].clone();
            for (x, pk) in a[r].iter_mut().zip(&pivot).skip(col) {
                *x = &*x - &(&f * pk);
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Gen;

    #[test]
    fn rank_of_dependent_family() {
        let a = NCPoly::gen(Gen::v(1));
        let b = NCPoly::gen(Gen::v(2));
        let c = a.add(&b.scale(&Scalar::q()));
        assert_eq!(rank([&a, &b, &c]), 2);
        let e = Echelon::from_span([&a, &c]);
        assert!(e.contains(&b));
    }

    #[test]
    fn small_determinant() {
        let m = vec![
            vec![Scalar::from_int(2), Scalar::s()],
            vec![Scalar::s(), Scalar::from_int(1)],
        ];
        assert_eq!(determinant(&m), Scalar::from_int(2) - Scalar::q());
        let x = solve(&m, &[Scalar::from_int(1), Scalar::zero()]).unwrap();
        assert_eq!(&m[1][0] * &x[0] + &m[1][1] * &x[1], Scalar::zero());
    }
}
