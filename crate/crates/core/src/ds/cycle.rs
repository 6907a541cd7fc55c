//! Cyclic boundary words with bold/italic marks, and the pocket model behind them.
//!
//! In the inscribed regime (vertex `k` of `3n` on a circle belongs to triangle
//! `k mod n`), every triangle edge is a chord from position `j` to `j + n`.
//! The boundary between consecutive circle positions `k` and `k + 1` (the
//! pocket `k`) starts on chord `k`, ends on chord `k + 1 - n`, and in between
//! visits chords `k - d` for an increasing set of offsets `d` in `1..=n-2`.
//! Sides touching a circle vertex are bold; the others are italic.

use std::fmt;
use std::str::FromStr;

use super::sequence::{has_abab, ds2_max_len};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    Bold,
    Italic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    /// Triangle label, `1..=n`.
    pub triangle: usize,
    pub mark: Mark,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("bold entries must come in equal adjacent pairs (at entry {0})")]
    UnpairedBold(usize),
    #[error("italic run ending at entry {0} is not descending")]
    NotDescending(usize),
    #[error("label {label} outside 1..={n}")]
    LabelRange { label: usize, n: usize },
    #[error("not a pocket cycle: {0}")]
    NotPocketCycle(String),
}

/// A cyclic word of marked labels. Bold entries come in adjacent equal pairs
/// and every italic run between two pairs is cyclically descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledCycle {
    pub n: usize,
    pub entries: Vec<Entry>,
}

fn cyc_sub(a: usize, b: usize, n: usize) -> usize {
    (a + n - b % n) % n
}

impl LabeledCycle {
    pub fn new(n: usize, entries: Vec<Entry>) -> Result<Self, CycleError> {
        let c = LabeledCycle { n, entries };
        c.validate()?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the compact notation `44 55 432 11 22`: a group of two equal
    /// labels is a bold pair, any other group is an italic run. Labels above 9
    /// are written in parentheses, e.g. `(10)(10)`.
    pub fn parse(n: usize, text: &str) -> Result<Self, CycleError> {
        let mut entries = Vec::new();
        for group in text.split_whitespace() {
            let labels = parse_group(group)?;
            let bold = labels.len() == 2 && labels[0] == labels[1];
            let mark = if bold { Mark::Bold } else { Mark::Italic };
            entries.extend(labels.into_iter().map(|triangle| Entry { triangle, mark }));
        }
        LabeledCycle::new(n, entries)
    }

    /// Start indices of the bold pairs, in order. Requires a valid cycle.
    pub fn pair_starts(&self) -> Vec<usize> {
        let m = self.entries.len();
        let bold = |i: usize| self.entries[i % m].mark == Mark::Bold;
        // anchor at the start of a bold run
        let Some(anchor) = (0..m).find(|&i| bold(i) && !bold(i + m - 1)) else {
            return (self.all_bold_parity()..m).step_by(2).collect();
        };
        let mut out = Vec::new();
        let mut i = 0;
        while i < m {
            let p = (anchor + i) % m;
            if bold(p) {
                out.push(p);
                i += 2;
            } else {
                i += 1;
            }
        }
        out.sort_unstable();
        out
    }

    fn validate(&self) -> Result<(), CycleError> {
        let (n, m) = (self.n, self.entries.len());
        for e in &self.entries {
            if e.triangle == 0 || e.triangle > n {
                return Err(CycleError::LabelRange { label: e.triangle, n });
            }
        }
        let bold = |i: usize| self.entries[i % m].mark == Mark::Bold;
        if let Some(anchor) = (0..m).find(|&i| bold(i) && !bold(i + m - 1)) {
            let mut i = 0;
            while i < m {
                let p = anchor + i;
                if bold(p) {
                    if !bold(p + 1) || self.entries[p % m].triangle != self.entries[(p + 1) % m].triangle {
                        return Err(CycleError::UnpairedBold(p % m));
                    }
                    i += 2;
                    continue;
                }
                // italic run starting at p
                let mut drop = 0;
                let mut q = p;
                while !bold(q + 1) {
                    let step = cyc_sub(self.entries[q % m].triangle, self.entries[(q + 1) % m].triangle, n);
                    drop += step;
                    if step == 0 || drop >= n {
                        return Err(CycleError::NotDescending((q + 1) % m));
                    }
                    q += 1;
                }
                i += q - p + 1;
            }
        } else if m % 2 == 1 || !self.paired_from(self.all_bold_parity()) {
            return Err(CycleError::UnpairedBold(0));
        }
        Ok(())
    }

    fn paired_from(&self, offset: usize) -> bool {
        let m = self.entries.len();
        (offset..m + offset)
            .step_by(2)
            .all(|i| self.entries[i % m].triangle == self.entries[(i + 1) % m].triangle)
    }

    /// For an all-bold word, whether pairs start at even (0) or odd (1) entries.
    fn all_bold_parity(&self) -> usize {
        usize::from(!self.paired_from(0))
    }

    /// Occurrences of each label, `l[i - 1]` for triangle `i`.
    pub fn contributions(&self) -> Vec<usize> {
        let mut l = vec![0; self.n];
        for e in &self.entries {
            l[e.triangle - 1] += 1;
        }
        l
    }
}

fn parse_group(group: &str) -> Result<Vec<usize>, CycleError> {
    let mut out = Vec::new();
    let mut chars = group.chars();
    while let Some(c) = chars.next() {
        if c == '(' {
            let num: String = chars.by_ref().take_while(|&c| c != ')').collect();
            out.push(num.parse().map_err(|_| CycleError::BadToken(group.to_string()))?);
        } else {
            out.push(c.to_digit(10).ok_or(CycleError::BadToken(group.to_string()))? as usize);
        }
    }
    Ok(out)
}

fn write_label(f: &mut fmt::Formatter<'_>, x: usize) -> fmt::Result {
    if x < 10 {
        write!(f, "{x}")
    } else {
        write!(f, "({x})")
    }
}

impl fmt::Display for LabeledCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.entries.len();
        let pairs = self.pair_starts();
        let mut first = true;
        let start = pairs.first().copied().unwrap_or(0);
        let mut i = 0;
        while i < m {
            let p = (start + i) % m;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = self.entries[p];
            if e.mark == Mark::Bold {
                write_label(f, e.triangle)?;
                write_label(f, e.triangle)?;
                i += 2;
            } else {
                while i < m && self.entries[(start + i) % m].mark == Mark::Italic {
                    write_label(f, self.entries[(start + i) % m].triangle)?;
                    i += 1;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Mark {
    type Err = CycleError;
    fn from_str(s: &str) -> Result<Self, CycleError> {
        match s {
            "b" | "bold" => Ok(Mark::Bold),
            "i" | "italic" => Ok(Mark::Italic),
            _ => Err(CycleError::BadToken(s.to_string())),
        }
    }
}

/// Start index of every bold pair whose two outer neighbours carry different labels.
pub fn rule_s_violations(c: &LabeledCycle) -> Vec<usize> {
    let m = c.entries.len();
    c.pair_starts()
        .into_iter()
        .filter(|&p| {
            let before = c.entries[(p + m - 1) % m].triangle;
            let after = c.entries[(p + 2) % m].triangle;
            before != after
        })
        .collect()
}

/// Triangle label of circle position (or chord start) `j`.
pub fn label_of(j: i64, n: usize) -> usize {
    j.rem_euclid(n as i64) as usize + 1
}

/// Chord starts along pocket `k` in boundary order.
pub fn pocket_chords(k: i64, n: usize, row: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(row.len() + 2);
    out.push(k);
    out.extend(row.iter().map(|&d| k - d as i64));
    out.push(k + 1 - n as i64);
    out
}

/// Right and left words seen from circle vertex `v`: over pockets `v..v+n`,
/// chords starting at or after `v` in boundary order, and chords starting at
/// or before `v` in reverse order.
pub fn arc_words<'a>(n: usize, v: i64, row: impl Fn(i64) -> &'a [usize]) -> (Vec<usize>, Vec<usize>) {
    let mut right = Vec::new();
    let mut left = Vec::new();
    for k in v..v + n as i64 {
        for j in pocket_chords(k, n, row(k)) {
            if j >= v {
                right.push(label_of(j, n));
            }
            if j <= v {
                left.push(label_of(j, n));
            }
        }
    }
    left.reverse();
    (right, left)
}

/// The pocket model: `3n` pockets, each an increasing set of offsets in `1..=n-2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PocketCycle {
    pub n: usize,
    pub rows: Vec<Vec<usize>>,
}

impl PocketCycle {
    pub fn side_count(&self) -> usize {
        6 * self.n + self.rows.iter().map(Vec::len).sum::<usize>()
    }

    pub fn row(&self, k: i64) -> &[usize] {
        &self.rows[k.rem_euclid(self.rows.len() as i64) as usize]
    }

    pub fn to_labeled(&self) -> LabeledCycle {
        let n = self.n;
        let mut entries = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            let k = k as i64;
            let bold = Entry { triangle: label_of(k, n), mark: Mark::Bold };
            entries.push(bold);
            entries.push(bold);
            entries.extend(row.iter().map(|&d| Entry { triangle: label_of(k - d as i64, n), mark: Mark::Italic }));
        }
        LabeledCycle { n, entries }
    }

    /// Recovers pockets from a labeled cycle: `3n` bold pairs whose labels step
    /// by one, italic labels reachable as offsets `1..=n-2`. The result starts
    /// at the first pair labelled 1.
    pub fn from_labeled(c: &LabeledCycle) -> Result<PocketCycle, CycleError> {
        let n = c.n;
        let m = c.entries.len();
        let pairs = c.pair_starts();
        if pairs.len() != 3 * n {
            return Err(CycleError::NotPocketCycle(format!("{} bold pairs, expected {}", pairs.len(), 3 * n)));
        }
        let first = pairs
            .iter()
            .position(|&p| c.entries[p].triangle == 1)
            .ok_or(CycleError::NotPocketCycle("no pair labelled 1".into()))?;
        let mut rows = Vec::with_capacity(3 * n);
        for t in 0..3 * n {
            let p = pairs[(first + t) % pairs.len()];
            let q = pairs[(first + t + 1) % pairs.len()];
            let k = t as i64;
            if c.entries[p].triangle != label_of(k, n) {
                return Err(CycleError::NotPocketCycle(format!("pair at entry {p} breaks the label order")));
            }
            let mut row = Vec::new();
            let mut i = (p + 2) % m;
            while i != q {
                let d = cyc_sub(label_of(k, n), c.entries[i].triangle, n);
                if d == 0 || d > n.saturating_sub(2) || row.last().is_some_and(|&l| l >= d) {
                    return Err(CycleError::NotPocketCycle(format!("italic entry {i} has no valid offset")));
                }
                row.push(d);
                i = (i + 1) % m;
            }
            rows.push(row);
        }
        Ok(PocketCycle { n, rows })
    }

    /// Right and left words for every circle vertex.
    pub fn arc_words(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        (0..self.rows.len() as i64).map(|v| arc_words(self.n, v, |k| self.row(k))).collect()
    }

    /// Every arc word is a (2,n)-DS word (the necessary condition for realisability).
    pub fn arcs_are_ds(&self) -> bool {
        let m = ds2_max_len(self.n);
        self.arc_words()
            .iter()
            .all(|(r, l)| r.len() <= m && l.len() <= m && !has_abab(r) && !has_abab(l))
    }
}
