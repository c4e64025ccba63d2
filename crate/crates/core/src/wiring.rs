//! Concrete double wiring diagrams as crossing words.
//!
//! Heights run `1..n` bottom to top. Red string `k` enters at height
//! `n + 1 - k` and blue string `k` enters at height `k`. A letter of color
//! `c` at level `i` crosses the two `c` strings occupying heights `i` and
//! `i + 1`. The chamber at level `m` of a vertical slice is labeled by the
//! red and blue strings occupying heights `1..m`.
//!
//! The word-level move detection here goes through the commutation poset
//! (heap) of the word. It is deliberately independent from the quiver
//! detection in [`crate::quiver`] and serves as its oracle.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::label::{ChamberLabel, LabelSet};
use crate::quiver::MoveKind;
use crate::MAX_STRINGS;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("{color:?} subword has {got} letters, expected {expected}")]
    WrongLength { color: Color, got: usize, expected: usize },
    #[error("{color:?} strings {a} and {b} cross twice (letter {position})")]
    RepeatedCrossing { color: Color, a: usize, b: usize, position: usize },
    #[error("{0:?} strings do not end in reversed order")]
    IncompleteReversal(Color),
    #[error("letter {position} has level {level}, outside 1..{n}")]
    LevelOutOfRange { position: usize, level: usize, n: usize },
    #[error("unsupported string count {0}")]
    BadStringCount(usize),
    #[error("cannot parse token `{0}`: expected R<level> or B<level>")]
    BadToken(String),
    #[error("move site is not applicable to this word")]
    SiteNotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// One crossing: a color and the level between heights `level` and `level + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub color: Color,
    pub level: u8,
}

impl Letter {
    pub const fn red(level: u8) -> Self {
        Letter { color: Color::Red, level }
    }

    pub const fn blue(level: u8) -> Self {
        Letter { color: Color::Blue, level }
    }

    /// Letters that can never be swapped past one another.
    fn depends_on(self, other: Letter) -> bool {
        if self.color == other.color {
            self.level.abs_diff(other.level) <= 1
        } else {
            self.level == other.level
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.color {
            Color::Red => 'R',
            Color::Blue => 'B',
        };
        write!(f, "{c}{}", self.level)
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadToken(s.to_string());
        let mut chars = s.chars();
        let color = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('R') => Color::Red,
            Some('B') => Color::Blue,
            _ => return Err(bad()),
        };
        let level: u8 = chars.as_str().parse().map_err(|_| bad())?;
        Ok(Letter { color, level })
    }
}

/// A validated double wiring diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    n: usize,
    letters: Vec<Letter>,
}

/// Parses whitespace separated `R<level>` / `B<level>` tokens.
pub fn parse_tokens(text: &str) -> Result<Vec<Letter>, WordError> {
    text.split_whitespace().map(str::parse).collect()
}

/// Accepts `letters` iff each monochrome subword is a reduced word for the
/// order-reversing permutation of `n` strings.
pub fn validate_word(letters: Vec<Letter>, n: usize) -> Result<Word, WordError> {
    if !(2..=MAX_STRINGS).contains(&n) {
        return Err(WordError::BadStringCount(n));
    }
    for (position, l) in letters.iter().enumerate() {
        if l.level == 0 || l.level as usize >= n {
            return Err(WordError::LevelOutOfRange { position, level: l.level as usize, n });
        }
    }
    let expected = n * (n - 1) / 2;
    for color in Color::BOTH {
        let got = letters.iter().filter(|l| l.color == color).count();
        if got != expected {
            return Err(WordError::WrongLength { color, got, expected });
        }
    }
    for color in Color::BOTH {
        let mut at: Vec<usize> = initial_heights(n, color);
        let mut crossed = vec![0u16; n + 1];
        for (position, l) in letters.iter().enumerate().filter(|(_, l)| l.color == color) {
            let h = l.level as usize - 1;
            let (a, b) = (at[h], at[h + 1]);
            if crossed[a] >> b & 1 == 1 {
                return Err(WordError::RepeatedCrossing { color, a: a.min(b), b: a.max(b), position });
            }
            crossed[a] |= 1 << b;
            crossed[b] |= 1 << a;
            at.swap(h, h + 1);
        }
        let mut reversed = initial_heights(n, color);
        reversed.reverse();
        if at != reversed {
            return Err(WordError::IncompleteReversal(color));
        }
    }
    Ok(Word { n, letters })
}

/// String occupying each height (index 0 is height 1) before any crossing.
fn initial_heights(n: usize, color: Color) -> Vec<usize> {
    match color {
        Color::Red => (1..=n).rev().collect(),
        Color::Blue => (1..=n).collect(),
    }
}

/// Red letters `1, 2 1, 3 2 1, …` followed by the same sequence in blue.
pub fn standard_word(n: usize) -> Word {
    assert!((2..=MAX_STRINGS).contains(&n), "string count {n} unsupported");
    let mut letters = Vec::with_capacity(n * (n - 1));
    for color in Color::BOTH {
        for top in 1..n {
            for level in (1..=top).rev() {
                letters.push(Letter { color, level: level as u8 });
            }
        }
    }
    Word { n, letters }
}

impl Word {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn parse(text: &str, n: usize) -> Result<Word, WordError> {
        validate_word(parse_tokens(text)?, n)
    }

    /// Red/blue swap of every letter.
    pub fn swap_colors(&self) -> Word {
        Word {
            n: self.n,
            letters: self.letters.iter().map(|l| Letter { color: l.color.other(), level: l.level }).collect(),
        }
    }

    /// Swaps adjacent letters `i` and `i + 1` without any check. Used by
    /// isotopy property tests.
    pub fn swapped_adjacent(&self, i: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.swap(i, i + 1);
        Word { n: self.n, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Sweeps the diagram left to right and collects every chamber label.
pub fn chamber_labels(w: &Word) -> LabelSet {
    let n = w.n;
    let mut red = initial_heights(n, Color::Red);
    let mut blue = initial_heights(n, Color::Blue);
    let prefix = |heights: &[usize], m: usize| -> u16 { heights[..m].iter().fold(0u16, |acc, &s| acc | 1 << (s - 1)) };
    let mut labels = Vec::with_capacity(n * n + 1);
    let mut current = Vec::with_capacity(n + 1);
    for m in 0..=n {
        current.push(ChamberLabel::new(prefix(&red, m), prefix(&blue, m)));
    }
    labels.extend_from_slice(&current);
    for l in &w.letters {
        let h = l.level as usize;
        match l.color {
            Color::Red => red.swap(h - 1, h),
            Color::Blue => blue.swap(h - 1, h),
        }
        let label = ChamberLabel::new(prefix(&red, h), prefix(&blue, h));
        // labels at one level never recur once they change
        debug_assert!(!labels.contains(&label), "label {label} recurs at level {h}");
        current[h] = label;
        labels.push(label);
    }
    let set = LabelSet::from_labels(labels);
    debug_assert_eq!(set.len(), n * n + 1);
    set
}

/// The commutation poset of a word: `u < v` when every word isotopic to `w`
/// places letter `u` before letter `v`.
#[derive(Clone, Debug)]
pub struct Heap {
    letters: Vec<Letter>,
    less: Vec<Vec<bool>>,
}

impl Heap {
    pub fn new(w: &Word) -> Heap {
        let letters = w.letters.clone();
        let len = letters.len();
        let mut less = vec![vec![false; len]; len];
        for v in 0..len {
            for u in (0..v).rev() {
                if letters[u].depends_on(letters[v]) {
                    less[u][v] = true;
                } else {
                    less[u][v] = (u + 1..v).any(|x| less[u][x] && letters[x].depends_on(letters[v]));
                }
            }
        }
        Heap { letters, less }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn less(&self, u: usize, v: usize) -> bool {
        self.less[u][v]
    }

    /// Elements strictly between `u` and `v`.
    pub fn between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.less[u][x] && self.less[x][v]).collect()
    }

    /// `v` covers `u`.
    pub fn covers(&self, u: usize, v: usize) -> bool {
        self.less[u][v] && !(u + 1..v).any(|x| self.less[u][x] && self.less[x][v])
    }
}

/// A braid move located in a word by letter positions (heap order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub letters: Vec<usize>,
}

/// Every braid move applicable to the commutation class of `w`.
pub fn word_move_sites(w: &Word) -> Vec<MoveSite> {
    let heap = Heap::new(w);
    let ls = &w.letters;
    let len = ls.len();
    let mut sites = Vec::new();
    for u in 0..len {
        for v in u + 1..len {
            if !heap.covers(u, v) {
                continue;
            }
            if ls[u].color != ls[v].color && ls[u].level == ls[v].level {
                sites.push(MoveSite { kind: MoveKind::Two, letters: vec![u, v] });
            }
            if ls[u].color == ls[v].color && ls[u].level.abs_diff(ls[v].level) == 1 {
                for x in v + 1..len {
                    if ls[x] == ls[u] && heap.covers(v, x) && heap.between(u, x) == [v] {
                        sites.push(MoveSite { kind: MoveKind::Three, letters: vec![u, v, x] });
                    }
                }
            }
        }
    }
    sites
}

/// Rewrites `w` along `site`: moves the site letters together in a linear
/// extension of the heap, then swaps them (2-move) or applies the braid
/// relation `i j i → j i j` (3-move).
pub fn apply_word_move(w: &Word, site: &MoveSite) -> Result<Word, WordError> {
    if !word_move_sites(w).contains(site) {
        return Err(WordError::SiteNotApplicable);
    }
    let heap = Heap::new(w);
    let len = w.letters.len();
    let in_site = |x: usize| site.letters.contains(&x);
    let below: Vec<bool> = (0..len).map(|x| !in_site(x) && site.letters.iter().any(|&s| heap.less(x, s))).collect();
    let mut order: Vec<usize> = (0..len).filter(|&x| below[x]).collect();
    order.extend(site.letters.iter().copied());
    order.extend((0..len).filter(|&x| !below[x] && !in_site(x)));
    let mut letters: Vec<Letter> = order.iter().map(|&x| w.letters[x]).collect();
    let start = order.iter().position(|&x| x == site.letters[0]).expect("site letter");
    match site.kind {
        MoveKind::Two => letters.swap(start, start + 1),
        MoveKind::Three => {
            let (i, j) = (letters[start].level, letters[start + 1].level);
            letters[start].level = j;
            letters[start + 1].level = i;
            letters[start + 2].level = j;
        }
    }
    let out = Word { n: w.n, letters };
    debug_assert!(validate_word(out.letters.clone(), out.n).is_ok());
    Ok(out)
}

/// Position of the rewritten letters after [`apply_word_move`]: the inverse site.
pub fn inverse_site(w: &Word, site: &MoveSite) -> MoveSite {
    let heap = Heap::new(w);
    let below = (0..w.letters.len())
        .filter(|&x| !site.letters.contains(&x) && site.letters.iter().any(|&s| heap.less(x, s)))
        .count();
    MoveSite { kind: site.kind, letters: (below..below + site.letters.len()).collect() }
}

/// Label sets of all classes one braid move away from the class of `w`.
pub fn word_neighbors(w: &Word) -> Vec<LabelSet> {
    word_move_sites(w)
        .iter()
        .map(|s| chamber_labels(&apply_word_move(w, s).expect("site from word_move_sites")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> LabelSet {
        xs.iter().map(|s| s.parse::<ChamberLabel>().unwrap()).collect()
    }

    #[test]
    fn validate_minimal_words() {
        let w = Word::parse("R1 B1", 2).unwrap();
        assert_eq!(w.letters().len(), 2);
        assert!(matches!(Word::parse("R1 R1", 2), Err(WordError::WrongLength { .. })));
        assert!(Word::parse("R1 R2 R1 B1 B2 B1", 3).is_ok());
        assert!(matches!(
            Word::parse("R1 R1 R2 B1 B2 B1", 3),
            Err(WordError::RepeatedCrossing { color: Color::Red, a: 2, b: 3, .. })
        ));
        assert!(matches!(Word::parse("R3 B1", 2), Err(WordError::LevelOutOfRange { .. })));
        assert!(matches!(Word::parse("X1 B1", 2), Err(WordError::BadToken(_))));
    }

    #[test]
    fn standard_words() {
        assert_eq!(standard_word(2).to_string(), "R1 B1");
        assert_eq!(standard_word(3).to_string(), "R1 R2 R1 B1 B2 B1");
        let w4 = standard_word(4);
        assert_eq!(w4.letters().len(), 12);
        assert!(validate_word(w4.letters().to_vec(), 4).is_ok());
    }

    #[test]
    fn labels_n2() {
        let w = Word::parse("R1 B1", 2).unwrap();
        assert_eq!(chamber_labels(&w), labels(&["-|-", "2|1", "1|1", "1|2", "12|12"]));
    }

    #[test]
    fn labels_n3_standard() {
        let got = chamber_labels(&standard_word(3));
        let want = labels(&["-|-", "3|1", "2|1", "1|1", "1|2", "1|3", "23|12", "12|12", "12|23", "123|123"]);
        assert_eq!(got, want);
    }

    #[test]
    fn sites_n2() {
        let w = standard_word(2);
        let sites = word_move_sites(&w);
        assert_eq!(sites, vec![MoveSite { kind: MoveKind::Two, letters: vec![0, 1] }]);
        assert_eq!(apply_word_move(&w, &sites[0]).unwrap().to_string(), "B1 R1");
    }

    #[test]
    fn sites_n3_standard() {
        let sites = word_move_sites(&standard_word(3));
        assert_eq!(sites.len(), 3);
        assert!(sites.contains(&MoveSite { kind: MoveKind::Three, letters: vec![0, 1, 2] }));
        assert!(sites.contains(&MoveSite { kind: MoveKind::Three, letters: vec![3, 4, 5] }));
        assert!(sites.contains(&MoveSite { kind: MoveKind::Two, letters: vec![2, 3] }));
    }

    #[test]
    fn red_three_move_n3() {
        let w = standard_word(3);
        let site = MoveSite { kind: MoveKind::Three, letters: vec![0, 1, 2] };
        let moved = apply_word_move(&w, &site).unwrap();
        assert_eq!(moved.to_string(), "R2 R1 R2 B1 B2 B1");
        let before = chamber_labels(&w);
        let after = chamber_labels(&moved);
        let want = before.replace("2|1".parse().unwrap(), "13|12".parse().unwrap()).unwrap();
        assert_eq!(after, want);
    }

    #[test]
    fn inapplicable_site() {
        let w = standard_word(3);
        let site = MoveSite { kind: MoveKind::Two, letters: vec![1, 4] };
        assert_eq!(apply_word_move(&w, &site), Err(WordError::SiteNotApplicable));
    }

    #[test]
    fn move_then_inverse_restores_labels() {
        let w = standard_word(4);
        for site in word_move_sites(&w) {
            let moved = apply_word_move(&w, &site).unwrap();
            let back = apply_word_move(&moved, &inverse_site(&w, &site)).unwrap();
            assert_eq!(chamber_labels(&back), chamber_labels(&w));
        }
    }
}
