//! Forced extension of a single italic row under the side-count-maximal rules.
//!
//! Pockets are indexed by all integers (the word is unrolled) and each offset
//! of each pocket is present, absent or undecided. Three rules constrain them:
//! every bold pair is flanked by equal labels, every arc word has exactly
//! `2n - 1` letters, and no arc word contains `abab`. An undecided offset is
//! fixed whenever one of its two values breaks a rule locally. Once the decided
//! region around the seed repeats, the closing length of the labeled word is
//! reported.

use super::cycle::label_of;
use super::sequence::{ds2_max_len, has_abab};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssemblyOutcome {
    /// The forced word is periodic and closes up after this many entries.
    ClosedCycle(usize),
    /// Both values of some offset break a rule, after `step` forced decisions.
    Contradiction { step: usize, pocket: i64 },
    /// Propagation stopped without deciding a full period.
    Stalled { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub outcome: AssemblyOutcome,
    /// Decided neighbourhood of the seed after applying the flanking rule alone.
    pub first_extension: String,
    /// Decided neighbourhood of the seed after full propagation.
    pub assembled: String,
    /// Rows of one period (offset sets), starting at the seed pocket.
    pub period: Vec<Vec<usize>>,
    pub steps: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rules {
    FlankOnly,
    All,
}

struct State {
    n: usize,
    lo: i64,
    rows: Vec<Vec<Option<bool>>>,
}

impl State {
    fn row(&self, k: i64) -> &[Option<bool>] {
        &self.rows[(k - self.lo) as usize]
    }

    fn hi(&self) -> i64 {
        self.lo + self.rows.len() as i64 - 1
    }

    fn decided(&self, k: i64) -> bool {
        self.row(k).iter().all(Option::is_some)
    }

    fn offsets(&self, k: i64) -> Vec<usize> {
        self.row(k)
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Some(true))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Possible values of the largest present offset (0 when the row is empty).
    fn last_options(&self, k: i64) -> Vec<usize> {
        let r = self.row(k);
        (0..=r.len())
            .filter(|&e| (e == 0 || r[e - 1] != Some(false)) && r[e..].iter().all(|s| *s != Some(true)))
            .collect()
    }

    /// Possible values of the smallest present offset (None when the row is empty).
    fn first_options(&self, k: i64) -> Vec<Option<usize>> {
        let r = self.row(k);
        let mut out = Vec::new();
        if r.iter().all(|s| *s != Some(true)) {
            out.push(None);
        }
        for e in 1..=r.len() {
            if r[e - 1] != Some(false) && r[..e - 1].iter().all(|s| *s != Some(true)) {
                out.push(Some(e));
            }
        }
        out
    }

    /// Flank rule at the bold pair of vertex `k`: the last entry of pocket
    /// `k - 1` and the first entry of pocket `k` carry the same label.
    fn flank_ok(&self, k: i64) -> bool {
        let n = self.n as i64;
        let before = self.last_options(k - 1);
        let after = self.first_options(k);
        before.iter().any(|&a| {
            let la = k - 1 - a as i64;
            after.iter().any(|&b| {
                let lb = match b {
                    None => k + 1,
                    Some(d) => k - d as i64,
                };
                (la - lb).rem_euclid(n) == 0
            })
        })
    }

    fn arc_ok(&self, v: i64) -> bool {
        let n = self.n as i64;
        let target = ds2_max_len(self.n);
        let (mut right, mut left) = (Vec::new(), Vec::new());
        let (mut right_open, mut left_open) = (0, 0);
        for k in v..v + n {
            let mut chords: Vec<(i64, Option<bool>)> = vec![(k, Some(true))];
            chords.extend(self.row(k).iter().enumerate().map(|(i, s)| (k - 1 - i as i64, *s)));
            chords.push((k + 1 - n, Some(true)));
            for (j, s) in chords {
                if j >= v {
                    match s {
                        Some(true) => right.push(label_of(j, self.n)),
                        None => right_open += 1,
                        Some(false) => {}
                    }
                }
                if j <= v {
                    match s {
                        Some(true) => left.push(label_of(j, self.n)),
                        None => left_open += 1,
                        Some(false) => {}
                    }
                }
            }
        }
        right.len() <= target
            && right.len() + right_open >= target
            && left.len() <= target
            && left.len() + left_open >= target
            && !has_abab(&right)
            && !has_abab(&left)
    }

    /// Rules touching pocket `k` whose pockets all lie inside the window.
    fn local_ok(&self, k: i64, rules: Rules) -> bool {
        let (lo, hi) = (self.lo, self.hi());
        for pair in [k, k + 1] {
            if pair - 1 >= lo && pair <= hi && !self.flank_ok(pair) {
                return false;
            }
        }
        if rules == Rules::All {
            let n = self.n as i64;
            for v in (k - n + 1).max(lo)..=k.min(hi - n + 1) {
                if !self.arc_ok(v) {
                    return false;
                }
            }
        }
        true
    }

    /// Fixes forced offsets until nothing changes. Returns the offending
    /// pocket on contradiction.
    fn propagate(&mut self, rules: Rules, steps: &mut usize) -> Result<(), i64> {
        loop {
            let mut changed = false;
            for k in self.lo..=self.hi() {
                for i in 0..self.n - 2 {
                    if self.row(k)[i].is_some() {
                        continue;
                    }
                    let idx = (k - self.lo) as usize;
                    let mut ok = [false; 2];
                    for (t, val) in [true, false].into_iter().enumerate() {
                        self.rows[idx][i] = Some(val);
                        ok[t] = self.local_ok(k, rules);
                    }
                    self.rows[idx][i] = match ok {
                        [true, true] => None,
                        [true, false] => Some(true),
                        [false, true] => Some(false),
                        [false, false] => return Err(k),
                    };
                    if ok[0] != ok[1] {
                        *steps += 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Maximal run of decided pockets containing `k`.
    fn decided_run(&self, k: i64) -> (i64, i64) {
        let (mut a, mut b) = (k, k);
        while a > self.lo && self.decided(a - 1) {
            a -= 1;
        }
        while b < self.hi() && self.decided(b + 1) {
            b += 1;
        }
        (a, b)
    }

    /// Pair of vertex `a`, then each pocket followed by the next pair.
    fn render(&self, a: i64, b: i64) -> String {
        let lab = |j: i64| label_of(j, self.n).to_string();
        let mut parts = vec![lab(a).repeat(2)];
        for k in a..=b {
            let row: String = self.offsets(k).iter().map(|&d| lab(k - d as i64)).collect();
            if !row.is_empty() {
                parts.push(row);
            }
            parts.push(lab(k + 1).repeat(2));
        }
        parts.join(" ")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extends the italic row `seed` (labels, cyclically descending) as far as the rules force it.
pub fn self_assemble(seed: &[usize], n: usize) -> Assembly {
    let fail = |step: usize, pocket: i64| Assembly {
        outcome: AssemblyOutcome::Contradiction { step, pocket },
        first_extension: String::new(),
        assembled: String::new(),
        period: Vec::new(),
        steps: step,
    };
    // the seed sits in the pocket right after the vertex labelled seed[0] + 1
    let k0 = seed.first().copied().unwrap_or(n) as i64;
    let width = n.saturating_sub(2);
    let mut seed_row = vec![Some(false); width];
    let mut last = 0;
    for &s in seed {
        let d = (label_of(k0, n) + n - s % n) % n;
        let d = if d == 0 { n } else { d };
        if d > width || d <= last {
            return fail(0, k0);
        }
        seed_row[d - 1] = Some(true);
        last = d;
    }

    let radius = 6 * n as i64;
    let mut state = State { n, lo: k0 - radius, rows: vec![vec![None; width]; 2 * radius as usize + 1] };
    let idx = (k0 - state.lo) as usize;
    state.rows[idx] = seed_row;
    let mut steps = 0;

    let mut flank = State { n, lo: state.lo, rows: state.rows.clone() };
    if let Err(k) = flank.propagate(Rules::FlankOnly, &mut 0) {
        return fail(0, k);
    }
    let (a, b) = flank.decided_run(k0);
    let first_extension = flank.render(a, b);

    if let Err(k) = state.propagate(Rules::All, &mut steps) {
        return Assembly { first_extension, ..fail(steps, k) };
    }
    let (a, b) = state.decided_run(k0);
    let assembled = state.render(a, b);
    let rows: Vec<Vec<usize>> = (a..=b).map(|k| state.offsets(k)).collect();
    let len = rows.len();
    let period = (1..=len / 3).find(|&p| (0..len - p).all(|i| rows[i] == rows[i + p]));
    let (outcome, period_rows) = match period {
        Some(p) => {
            let start = (k0 - a) as usize;
            let at = |i: usize| {
                let mut j = start + i;
                while j >= len {
                    j -= p;
                }
                &rows[j]
            };
            let closing = p / gcd(p, n) * n;
            let tokens = (0..closing).map(|i| 2 + at(i).len()).sum();
            (AssemblyOutcome::ClosedCycle(tokens), (0..p).map(|i| at(i).clone()).collect())
        }
        None => (AssemblyOutcome::Stalled { step: steps }, Vec::new()),
    };
    Assembly { outcome, first_extension, assembled, period: period_rows, steps }
}
