//! Chamber labels and the label collections that identify commutation classes.
//!
//! A chamber label is a pair `(r, b)` of equal-size subsets of `{1..n}`
//! holding the red and blue strings that pass below the chamber. Subsets are
//! stored as bitmasks (bit `k - 1` for string `k`) and a label packs both
//! masks into a single `u32`: red in the low half, blue in the high half.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::MAX_STRINGS;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("malformed label `{0}`: expected `<red>|<blue>`")]
    Malformed(String),
    #[error("invalid subset element `{0}`")]
    BadElement(char),
    #[error("subset element {0} repeated")]
    Repeated(usize),
    #[error("red and blue subsets have different sizes in `{0}`")]
    UnequalSizes(String),
    #[error("element {element} exceeds string count {n}")]
    OutOfRange { element: usize, n: usize },
}

/// A chamber label `(r, b)`; also the index of the minor `Δ_{r,b}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct ChamberLabel(u32);

impl ChamberLabel {
    /// The empty chamber `(∅, ∅)`, whose minor is the constant 1.
    pub const EMPTY: ChamberLabel = ChamberLabel(0);

    pub const fn new(red: u16, blue: u16) -> Self {
        ChamberLabel(red as u32 | (blue as u32) << 16)
    }

    /// Builds a label from 1-based string indices.
    pub fn from_sets(red: &[usize], blue: &[usize]) -> Self {
        Self::new(mask_of(red), mask_of(blue))
    }

    /// The full chamber `({1..n}, {1..n})`.
    pub fn full(n: usize) -> Self {
        let m = low_mask(n);
        Self::new(m, m)
    }

    pub const fn from_code(code: u32) -> Self {
        ChamberLabel(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn red(self) -> u16 {
        self.0 as u16
    }

    pub const fn blue(self) -> u16 {
        (self.0 >> 16) as u16
    }

    /// Mask of the given color.
    pub const fn part(self, color: crate::Color) -> u16 {
        match color {
            crate::Color::Red => self.red(),
            crate::Color::Blue => self.blue(),
        }
    }

    /// Label with `varying` part for `color` and `fixed` part for the other color.
    pub const fn with_parts(color: crate::Color, varying: u16, fixed: u16) -> Self {
        match color {
            crate::Color::Red => Self::new(varying, fixed),
            crate::Color::Blue => Self::new(fixed, varying),
        }
    }

    /// Number of strings below the chamber in each family.
    pub const fn level(self) -> u32 {
        self.red().count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Both parts have the same size.
    pub const fn is_balanced(self) -> bool {
        self.red().count_ones() == self.blue().count_ones()
    }

    /// Whether `self ⊆ other` in both colors.
    pub const fn is_below(self, other: ChamberLabel) -> bool {
        self.0 & !other.0 == 0
    }

    /// Red/blue swap.
    pub const fn swap_colors(self) -> Self {
        Self::new(self.blue(), self.red())
    }

    pub fn red_elements(self) -> Vec<usize> {
        elements(self.red())
    }

    pub fn blue_elements(self) -> Vec<usize> {
        elements(self.blue())
    }

    /// Largest string index mentioned, 0 for the empty label.
    pub fn max_element(self) -> usize {
        (16 - self.red().leading_zeros()).max(16 - self.blue().leading_zeros()) as usize
    }
}

pub(crate) fn low_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

fn mask_of(set: &[usize]) -> u16 {
    set.iter().fold(0u16, |m, &k| {
        debug_assert!((1..=MAX_STRINGS).contains(&k));
        m | 1 << (k - 1)
    })
}

fn elements(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn element_char(k: usize) -> char {
    std::char::from_digit(k as u32, 36).expect("element below 36")
}

fn write_subset(f: &mut fmt::Formatter<'_>, mask: u16) -> fmt::Result {
    if mask == 0 {
        return f.write_str("-");
    }
    for k in elements(mask) {
        write!(f, "{}", element_char(k))?;
    }
    Ok(())
}

fn parse_subset(s: &str) -> Result<u16, LabelError> {
    if s == "-" || s == "∅" {
        return Ok(0);
    }
    let mut mask = 0u16;
    for c in s.chars() {
        let k = c.to_digit(36).ok_or(LabelError::BadElement(c))? as usize;
        if k == 0 || k > MAX_STRINGS {
            return Err(LabelError::BadElement(c));
        }
        if mask >> (k - 1) & 1 == 1 {
            return Err(LabelError::Repeated(k));
        }
        mask |= 1 << (k - 1);
    }
    Ok(mask)
}

impl fmt::Display for ChamberLabel {
    /// `134|123`, `-|-` for the empty chamber.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_subset(f, self.red())?;
        f.write_str("|")?;
        write_subset(f, self.blue())
    }
}

impl fmt::Debug for ChamberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for ChamberLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (r, b) =
            s.split_once('|').or_else(|| s.split_once(',')).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
        let label = ChamberLabel::new(parse_subset(r.trim())?, parse_subset(b.trim())?);
        if !label.is_balanced() {
            return Err(LabelError::UnequalSizes(s.to_string()));
        }
        Ok(label)
    }
}

/// The set of chamber labels of one commutation class, sorted by packed code.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LabelSet {
    labels: Vec<ChamberLabel>,
}

impl LabelSet {
    /// Builds a set from arbitrary labels; sorts and removes duplicates.
    pub fn from_labels(mut labels: Vec<ChamberLabel>) -> Self {
        labels.sort_unstable();
        labels.dedup();
        LabelSet { labels }
    }

    pub fn labels(&self) -> &[ChamberLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ChamberLabel> + '_ {
        self.labels.iter().copied()
    }

    #[inline]
    pub fn contains(&self, label: ChamberLabel) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// Index of `label` in the sorted order.
    pub fn position(&self, label: ChamberLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// String count implied by the full chamber.
    pub fn strings(&self) -> usize {
        self.labels.iter().map(|l| l.level() as usize).max().unwrap_or(0)
    }

    /// Replaces `old` by `new`; returns `None` when `old` is absent or `new` present.
    pub fn replace(&self, old: ChamberLabel, new: ChamberLabel) -> Option<LabelSet> {
        let at = self.position(old)?;
        if self.contains(new) {
            return None;
        }
        let mut labels = self.labels.clone();
        labels.remove(at);
        let ins = labels.binary_search(&new).unwrap_err();
        labels.insert(ins, new);
        Some(LabelSet { labels })
    }

    pub fn swap_colors(&self) -> LabelSet {
        LabelSet::from_labels(self.labels.iter().map(|l| l.swap_colors()).collect())
    }

    pub fn key(&self) -> ClassKey {
        ClassKey(self.labels.iter().map(|l| l.code()).collect())
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<ChamberLabel> for LabelSet {
    fn from_iter<I: IntoIterator<Item = ChamberLabel>>(iter: I) -> Self {
        LabelSet::from_labels(iter.into_iter().collect())
    }
}

/// The 2n labels shared by every class: `(∅,∅)` and, for `m = 1..n`,
/// `({n-m+1..n}, {1..m})` and `({1..m}, {n-m+1..n})`.
pub fn fixed_labels(n: usize) -> Vec<ChamberLabel> {
    let mut out = vec![ChamberLabel::EMPTY];
    for m in 1..=n {
        let low = low_mask(m);
        let high = low << (n - m);
        out.push(ChamberLabel::new(high, low));
        out.push(ChamberLabel::new(low, high));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All pairs of equal-size nonempty subsets of `{1..n}`, sorted by code.
pub fn all_minors(n: usize) -> Vec<ChamberLabel> {
    let full = low_mask(n);
    let mut out = Vec::new();
    for r in 1..=full {
        for b in 1..=full {
            if r.count_ones() == b.count_ones() {
                out.push(ChamberLabel::new(r, b));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Minors that are not chamber minors of every class.
pub fn non_fixed_minors(n: usize) -> Vec<ChamberLabel> {
    let fixed = fixed_labels(n);
    all_minors(n).into_iter().filter(|l| !fixed.contains(l)).collect()
}

/// Packed canonical identity of a class: ascending label codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassKey(Box<[u32]>);

impl ClassKey {
    pub fn from_codes(codes: Box<[u32]>) -> Self {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        ClassKey(codes)
    }

    pub fn codes(&self) -> &[u32] {
        &self.0
    }

    pub fn labels(&self) -> LabelSet {
        LabelSet { labels: self.0.iter().map(|&c| ChamberLabel(c)).collect() }
    }

    /// Stable 128-bit fingerprint (XXH3-128 over little-endian codes).
    pub fn fingerprint(&self) -> u128 {
        let mut bytes = Vec::with_capacity(self.0.len() * 4);
        for c in self.0.iter() {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        xxhash_rust::xxh3::xxh3_128(&bytes)
    }
}

impl From<&LabelSet> for ClassKey {
    fn from(s: &LabelSet) -> Self {
        s.key()
    }
}

impl From<&ClassKey> for LabelSet {
    fn from(k: &ClassKey) -> Self {
        k.labels()
    }
}
