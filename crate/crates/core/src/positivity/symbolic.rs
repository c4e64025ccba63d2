//! Polynomials in the entries of a generic matrix, used to check exchange
//! relations without going through Laurent arithmetic.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::label::{ChamberLabel, LabelSet};
use crate::quiver::{apply_detected, detect_moves, Move};

/// Integer polynomial in the `n²` entries `m_ij`; keys are exponent vectors
/// indexed by `(i - 1) * n + (j - 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<Vec<u8>, i64>,
}

impl SymPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<u8>, c: i64) {
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
        }
    }

    pub fn one(n: usize) -> SymPoly {
        let mut p = SymPoly::default();
        p.add_term(vec![0; n * n], 1);
        p
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::default();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Leibniz expansion of the minor on rows `r` and columns `b` of the
    /// generic `n × n` matrix.
    pub fn minor(n: usize, label: ChamberLabel) -> SymPoly {
        if label.is_empty() {
            return SymPoly::one(n);
        }
        let rows = label.red_elements();
        let cols = label.blue_elements();
        let mut out = SymPoly::default();
        let mut perm: Vec<usize> = (0..cols.len()).collect();
        permutations(&mut perm, 0, 1, &mut |p, sign| {
            let mut e = vec![0u8; n * n];
            for (k, &i) in rows.iter().enumerate() {
                e[(i - 1) * n + (cols[p[k]] - 1)] += 1;
            }
            out.add_term(e, sign);
        });
        out
    }
}

/// Calls `f` with every permutation of `p[k..]` and its sign.
fn permutations(p: &mut Vec<usize>, k: usize, sign: i64, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        f(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { sign } else { -sign }, f);
        p.swap(k, i);
    }
}

/// Whether `X·Y − A·D − B·C` vanishes identically for the move's minors.
pub fn symb_identity_check(s: &LabelSet, m: &Move) -> bool {
    let n = s.strings();
    let d = |l| SymPoly::minor(n, l);
    let [(a, dd), (b, c)] = m.factors;
    let lhs = d(m.center).mul(&d(m.replacement));
    let rhs = d(a).mul(&d(dd)).add(&d(b).mul(&d(c)));
    lhs.sub(&rhs).is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub classes: usize,
    pub moves: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every move of every class in `classes`.
pub fn identity_check_classes(n: usize, classes: &[LabelSet]) -> IdentityReport {
    let mut moves = 0;
    let mut failures = Vec::new();
    for s in classes {
        for m in detect_moves(s) {
            moves += 1;
            if !symb_identity_check(s, &m) {
                failures.push(format!("{m} in class {{{s}}}"));
            }
        }
    }
    IdentityReport { n, classes: classes.len(), moves, failures }
}

/// Checks `count` moves picked along a seeded random walk over classes.
pub fn identity_check_sampled(n: usize, start: &LabelSet, count: usize, seed: u64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = start.clone();
    let mut failures = Vec::new();
    for _ in 0..count {
        let moves = detect_moves(&s);
        let m = *moves.choose(&mut rng).expect("every class has a move");
        if !symb_identity_check(&s, &m) {
            failures.push(format!("{m} in class {{{s}}}"));
        }
        s = apply_detected(&s, &m);
    }
    IdentityReport { n, classes: count, moves: count, failures }
}
