//! The chamber quiver of a class and braid-move detection by subquiver
//! matching.
//!
//! `Q(w)` has a vertex per chamber label and an arrow `(r, b) → (r', b')`
//! whenever `r' = r ∪ {i}` and `b' = b ∪ {j}` with `i ∉ r`, `j ∉ b`.
//!
//! A 2-move centered at `X` is a five-vertex "theta" `Bo → {Z1, X, Z2} → T`
//! in which `X`'s opposite corner `Y` (the fourth label sandwiched between
//! `Bo` and `T`) is absent. A 3-move is a complete seven-vertex hexagon
//! `Bo → trio → pair → T` (or its reversal) in which one color varies
//! across each layer while the other is constant per layer, and the
//! missing seventh corner of the hexagon is the replacement label.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::label::{ChamberLabel, LabelSet};
use crate::wiring::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("move {0} is not detected in this class")]
    MoveNotDetected(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MoveKind {
    Two,
    Three,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Two => "2-move",
            MoveKind::Three => "3-move",
        }
    }
}

/// A detected braid move. The exchange relation reads
/// `Δ(center) · Δ(replacement) = Δ(f0.0) Δ(f0.1) + Δ(f1.0) Δ(f1.1)`,
/// with `(∅,∅)` standing for the constant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub center: ChamberLabel,
    pub replacement: ChamberLabel,
    pub factors: [(ChamberLabel, ChamberLabel); 2],
}

impl Move {
    fn new(
        kind: MoveKind,
        center: ChamberLabel,
        replacement: ChamberLabel,
        p: (ChamberLabel, ChamberLabel),
        q: (ChamberLabel, ChamberLabel),
    ) -> Move {
        let order = |(a, b): (ChamberLabel, ChamberLabel)| if a <= b { (a, b) } else { (b, a) };
        let (p, q) = (order(p), order(q));
        let factors = if p <= q { [p, q] } else { [q, p] };
        Move { kind, center, replacement, factors }
    }

    /// The same move seen from the other side.
    pub fn inverse(&self) -> Move {
        Move { center: self.replacement, replacement: self.center, ..*self }
    }

    pub fn swap_colors(&self) -> Move {
        let f = |(a, b): (ChamberLabel, ChamberLabel)| (a.swap_colors(), b.swap_colors());
        Move::new(
            self.kind,
            self.center.swap_colors(),
            self.replacement.swap_colors(),
            f(self.factors[0]),
            f(self.factors[1]),
        )
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [(a, b), (c, d)] = self.factors;
        write!(
            f,
            "{} center {} -> {} factors ({} * {}) + ({} * {})",
            self.kind.as_str(),
            self.center,
            self.replacement,
            a,
            b,
            c,
            d
        )
    }
}

/// Whether the quiver has an arrow `from → to`.
#[inline]
pub fn is_arrow(from: ChamberLabel, to: ChamberLabel) -> bool {
    let r = to.red() & !from.red();
    let b = to.blue() & !from.blue();
    from.is_below(to) && r.count_ones() == 1 && b.count_ones() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    /// Red string added along the arrow (1-based).
    pub red_added: u8,
    /// Blue string added along the arrow (1-based).
    pub blue_added: u8,
}

/// Chamber quiver over a class label set. Vertex indices follow the sorted
/// order of the label set.
#[derive(Clone, Debug)]
pub struct Quiver {
    labels: LabelSet,
    arrows: Vec<Arrow>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

pub fn build_quiver(s: &LabelSet) -> Quiver {
    let len = s.len();
    let levels = s.strings();
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); levels + 1];
    for (i, l) in s.iter().enumerate() {
        by_level[l.level() as usize].push(i);
    }
    let mut arrows = Vec::new();
    let mut succ = vec![Vec::new(); len];
    let mut pred = vec![Vec::new(); len];
    let ls = s.labels();
    for k in 0..levels {
        for &u in &by_level[k] {
            for &v in &by_level[k + 1] {
                if ls[u].is_below(ls[v]) {
                    let red = ls[v].red() & !ls[u].red();
                    let blue = ls[v].blue() & !ls[u].blue();
                    arrows.push(Arrow {
                        from: u,
                        to: v,
                        red_added: red.trailing_zeros() as u8 + 1,
                        blue_added: blue.trailing_zeros() as u8 + 1,
                    });
                    succ[u].push(v);
                    pred[v].push(u);
                }
            }
        }
    }
    Quiver { labels: s.clone(), arrows, succ, pred }
}

impl Quiver {
    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn label(&self, i: usize) -> ChamberLabel {
        self.labels.labels()[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    /// Number of quiver arrows among `vertices`.
    pub fn induced_arrows(&self, vertices: &[ChamberLabel]) -> usize {
        induced_arrows(vertices)
    }

    /// Graphviz rendering with label-text vertex names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n  rankdir=BT;\n");
        for l in self.labels.iter() {
            let _ = writeln!(out, "  \"{l}\";");
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{},{}\"];",
                self.label(a.from),
                self.label(a.to),
                a.red_added,
                a.blue_added
            );
        }
        out.push_str("}\n");
        out
    }
}

fn induced_arrows(vertices: &[ChamberLabel]) -> usize {
    let mut count = 0;
    for &u in vertices {
        for &v in vertices {
            if is_arrow(u, v) {
                count += 1;
            }
        }
    }
    count
}

/// 2-moves: theta subquivers `Bo → {Z1, X, Z2} → T` whose fourth sandwiched
/// corner is absent. Returned sorted by center.
pub fn detect_2moves(q: &Quiver) -> Vec<Move> {
    let s = &q.labels;
    let mut out = Vec::new();
    for xi in 0..s.len() {
        let x = q.label(xi);
        for &bi in &q.pred[xi] {
            let bo = q.label(bi);
            for &ti in &q.succ[xi] {
                let top = q.label(ti);
                // the four labels sandwiched between Bo and T
                let red_alt = bo.red() | (top.red() & !x.red());
                let blue_alt = bo.blue() | (top.blue() & !x.blue());
                let side_red = ChamberLabel::new(red_alt, x.blue());
                let side_blue = ChamberLabel::new(x.red(), blue_alt);
                let opposite = ChamberLabel::new(red_alt, blue_alt);
                if s.contains(side_red) && s.contains(side_blue) && !s.contains(opposite) {
                    out.push(Move::new(MoveKind::Two, x, opposite, (side_red, side_blue), (bo, top)));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// 3-moves: complete hexagonal subquivers in which one color varies within
/// each layer and the other is constant per layer. Returned sorted by center.
pub fn detect_3moves(q: &Quiver) -> Vec<Move> {
    let mut out = Vec::new();
    for xi in 0..q.labels.len() {
        for color in Color::BOTH {
            lower_trio_moves(q, xi, color, &mut out);
            upper_trio_moves(q, xi, color, &mut out);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Center in the lower trio: `Bo=(S) → {S+a, S+b, S+c} → {S+ab, S+bc} → T=(S+abc)`
/// with `X = S+b` and missing corner `Y = S+ac`.
fn lower_trio_moves(q: &Quiver, xi: usize, c: Color, out: &mut Vec<Move>) {
    let s = &q.labels;
    let x = q.label(xi);
    let (cx, ox) = (x.part(c), x.part(c.other()));
    let succ = &q.succ[xi];
    for (i, &u1i) in succ.iter().enumerate() {
        let u1 = q.label(u1i);
        for &u2i in &succ[i + 1..] {
            let u2 = q.label(u2i);
            let upper_fixed = u1.part(c.other());
            if u2.part(c.other()) != upper_fixed {
                continue;
            }
            let a = u1.part(c) & !cx;
            let cc = u2.part(c) & !cx;
            for &bi in &q.pred[xi] {
                let bo = q.label(bi);
                let base = bo.part(c);
                let l1 = ChamberLabel::with_parts(c, base | a, ox);
                let r1 = ChamberLabel::with_parts(c, base | cc, ox);
                let y = ChamberLabel::with_parts(c, base | a | cc, upper_fixed);
                if !s.contains(l1) || !s.contains(r1) || s.contains(y) {
                    continue;
                }
                let top_part = cx | a | cc;
                let top = q.succ[u1i].iter().map(|&t| q.label(t)).find(|t| t.part(c) == top_part && u2.is_below(*t));
                let Some(top) = top else { continue };
                if induced_arrows(&[bo, l1, x, r1, u1, u2, top]) != 9 {
                    continue;
                }
                out.push(Move::new(MoveKind::Three, x, y, (l1, u2), (r1, u1)));
                break;
            }
        }
    }
}

/// Center in the upper trio: `Bo=(S) → {S+a, S+c} → {S+ab, S+ac, S+bc} → T`
/// with `X = S+ac` and missing corner `Y = S+b`.
fn upper_trio_moves(q: &Quiver, xi: usize, c: Color, out: &mut Vec<Move>) {
    let s = &q.labels;
    let x = q.label(xi);
    let (cx, ox) = (x.part(c), x.part(c.other()));
    let pred = &q.pred[xi];
    for (i, &z1i) in pred.iter().enumerate() {
        let z1 = q.label(z1i);
        for &z2i in &pred[i + 1..] {
            let z2 = q.label(z2i);
            let lower_fixed = z1.part(c.other());
            if z2.part(c.other()) != lower_fixed {
                continue;
            }
            let cc = cx & !z1.part(c);
            let a = cx & !z2.part(c);
            let base = cx & !a & !cc;
            let has_bottom = q.pred[z1i].iter().map(|&b| q.label(b)).find(|b| b.part(c) == base && b.is_below(z2));
            let Some(bo) = has_bottom else { continue };
            for &ti in &q.succ[xi] {
                let top = q.label(ti);
                let b = top.part(c) & !cx;
                let ab = ChamberLabel::with_parts(c, base | a | b, ox);
                let bc = ChamberLabel::with_parts(c, base | b | cc, ox);
                let y = ChamberLabel::with_parts(c, base | b, lower_fixed);
                if !s.contains(ab) || !s.contains(bc) || s.contains(y) {
                    continue;
                }
                if induced_arrows(&[bo, z1, z2, ab, x, bc, top]) != 9 {
                    continue;
                }
                out.push(Move::new(MoveKind::Three, x, y, (z1, bc), (z2, ab)));
                break;
            }
        }
    }
}

/// All braid moves of the class, sorted by `(kind, center)`.
pub fn detect_moves(s: &LabelSet) -> Vec<Move> {
    let q = build_quiver(s);
    let mut moves = detect_2moves(&q);
    moves.extend(detect_3moves(&q));
    moves.sort_unstable();
    moves.dedup();
    debug_assert!(moves.windows(2).all(|w| w[0].center != w[1].center), "two moves share a center in {s}");
    moves
}

/// `(s ∖ {center}) ∪ {replacement}` for a move detected in `s`.
pub fn apply_move(s: &LabelSet, m: &Move) -> Result<LabelSet, QuiverError> {
    if !detect_moves(s).contains(m) {
        return Err(QuiverError::MoveNotDetected(m.to_string()));
    }
    Ok(apply_detected(s, m))
}

/// [`apply_move`] without re-running detection; `m` must come from `detect_moves(s)`.
pub fn apply_detected(s: &LabelSet, m: &Move) -> LabelSet {
    s.replace(m.center, m.replacement).expect("detected move replaces a present label by an absent one")
}

/// Moves paired with the neighbor classes they produce.
pub fn neighbors(s: &LabelSet) -> Vec<(Move, LabelSet)> {
    detect_moves(s).into_iter().map(|m| (m, apply_detected(s, &m))).collect()
}
