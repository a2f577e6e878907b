//! Word rewriting: rules `pattern -> NCPoly`, leftmost-first reduction, and
//! an overlap checker for confluence.

use std::collections::HashMap;

use thiserror::Error;

use crate::freealg::{NCPoly, Word};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {0} steps")]
    StepLimit(usize),
}

/// Which match to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leftmost position; longer patterns first at equal position.
    #[default]
    Leftmost,
    /// Longest pattern anywhere; rightmost among equal lengths.
    LongestRightmost,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// An ordered rule set. Longer patterns win at the same position.
#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    lengths: Vec<usize>,
    step_cap: usize,
}

#[derive(Clone, Debug)]
pub struct Overlap {
    pub word: Word,
    pub left: usize,
    pub right: usize,
    pub residue: NCPoly,
}

impl RewriteSystem {
    pub fn new() -> Self {
        RewriteSystem { step_cap: 1_000_000, ..Default::default() }
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap = cap;
        self
    }

    /// Adds a rule; a later rule with the same pattern replaces the earlier.
    pub fn add(&mut self, lhs: Word, rhs: NCPoly) {
        let n = lhs.len();
        if let Some(&k) = self.index.get(&lhs) {
            self.rules[k].rhs = rhs;
            return;
        }
        self.index.insert(lhs.clone(), self.rules.len());
        self.rules.push(Rule { lhs, rhs });
        if !self.lengths.contains(&n) {
            self.lengths.push(n);
            self.lengths.sort_unstable_by(|a, b| b.cmp(a));
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_for(&self, lhs: &Word) -> Option<&NCPoly> {
        self.index.get(lhs).map(|&k| &self.rules[k].rhs)
    }

    /// Leftmost match in `w`: (position, rule index).
    pub fn find_match(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for &n in &self.lengths {
                if pos + n <= letters.len() {
                    let sub = Word::from_gens(&letters[pos..pos + n]);
                    if let Some(&k) = self.index.get(&sub) {
                        return Some((pos, k));
                    }
                }
            }
        }
        None
    }

    pub fn find_match_with(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        match strategy {
            Strategy::Leftmost => self.find_match(w),
            Strategy::LongestRightmost => {
                let letters = w.letters();
                for &n in &self.lengths {
                    if n > letters.len() {
                        continue;
                    }
                    for pos in (0..=letters.len() - n).rev() {
                        let sub = Word::from_gens(&letters[pos..pos + n]);
                        if let Some(&k) = self.index.get(&sub) {
                            return Some((pos, k));
                        }
                    }
                }
                None
            }
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_match(w).is_none()
    }

    /// One rewriting step applied to `c * w` at the leftmost match.
    pub fn step(&self, w: &Word, c: &Scalar) -> Option<NCPoly> {
        let (pos, k) = self.find_match(w)?;
        let r = &self.rules[k];
        Some(self.apply_at(w, pos, r).scale(c))
    }

    fn apply_at(&self, w: &Word, pos: usize, r: &Rule) -> NCPoly {
        let pre = w.slice(0, pos);
        let post = w.slice(pos + r.lhs.len(), w.len());
        r.rhs.mul_word_left(&pre).mul_word_right(&post)
    }

    /// Full reduction to irreducible words.
    pub fn reduce(&self, p: &NCPoly) -> Result<NCPoly, RewriteError> {
        self.reduce_with(p, Strategy::Leftmost)
    }

    pub fn reduce_with(&self, p: &NCPoly, strategy: Strategy) -> Result<NCPoly, RewriteError> {
        let mut done = NCPoly::zero();
        let mut pending = p.clone();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.lead().map(|(w, c)| (w.clone(), c.clone())) {
            pending.add_term(w.clone(), &-&c);
            match self.find_match_with(&w, strategy) {
                None => done.add_term(w, &c),
                Some((pos, k)) => {
                    steps += 1;
                    if steps > self.step_cap {
                        return Err(RewriteError::StepLimit(self.step_cap));
                    }
                    let img = self.apply_at(&w, pos, &self.rules[k]);
                    pending.add_scaled(&img, &c);
                }
            }
        }
        Ok(done)
    }

    /// All overlap and inclusion ambiguities between rule patterns, each
    /// resolved both ways; `residue` is the difference of the normal forms.
    pub fn overlaps(&self) -> Result<Vec<Overlap>, RewriteError> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let la = ra.lhs.letters();
                let lb = rb.lhs.letters();
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] != lb[..k] {
                        continue;
                    }
                    let word = ra.lhs.concat(&rb.lhs.slice(k, lb.len()));
                    let left = ra.rhs.mul_word_right(&rb.lhs.slice(k, lb.len()));
                    let right = rb.rhs.mul_word_left(&ra.lhs.slice(0, la.len() - k));
                    let residue = self.reduce(&left)?.sub(&self.reduce(&right)?);
                    out.push(Overlap { word, left: a, right: b, residue });
                }
                if a != b && lb.len() < la.len() {
                    for pos in 0..=la.len() - lb.len() {
                        if la[pos..pos + lb.len()] != *lb {
                            continue;
                        }
                        let left = ra.rhs.clone();
                        let right = self.apply_at(&ra.lhs, pos, rb);
                        let residue = self.reduce(&left)?.sub(&self.reduce(&right)?);
                        out.push(Overlap { word: ra.lhs.clone(), left: a, right: b, residue });
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Gen;

    #[test]
    fn quantum_plane_is_confluent() {
        // y x -> q x y together with the three-letter analogue is confluent.
        let mut rs = RewriteSystem::new();
        let q = Scalar::q();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            rs.add(
                Word::from_gens(&[Gen::v(b), Gen::v(a)]),
                NCPoly::term(Word::from_gens(&[Gen::v(a), Gen::v(b)]), q.clone()),
            );
        }
        let w = NCPoly::monomial(&[Gen::v(3), Gen::v(2), Gen::v(1)]);
        let r = rs.reduce(&w).unwrap();
        assert_eq!(r, NCPoly::term(Word::from_gens(&[Gen::v(1), Gen::v(2), Gen::v(3)]), q.pow(3)));
        assert!(rs.overlaps().unwrap().iter().all(|o| o.residue.is_zero()));
    }

    #[test]
    fn step_cap_reports() {
        let mut rs = RewriteSystem::new().with_step_cap(10);
        let ab = Word::from_gens(&[Gen::v(1), Gen::v(2)]);
        let ba = Word::from_gens(&[Gen::v(2), Gen::v(1)]);
        rs.add(ab.clone(), NCPoly::word(ba.clone()));
        rs.add(ba, NCPoly::word(ab.clone()));
        assert_eq!(rs.reduce(&NCPoly::word(ab)), Err(RewriteError::StepLimit(10)));
    }
}
