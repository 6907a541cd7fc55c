//! Exhaustive search for boundary words of a given length in the pocket model.
//!
//! Rows are assigned pocket by pocket. A branch dies as soon as a bold pair
//! has unequal flanks, an arc word (restricted to assigned pockets) repeats a
//! pattern `abab` or grows past `2n - 1`, a finished arc word is shorter than
//! required, or the italic totals cannot reach the target. Rotations are
//! factored out by requiring pocket 0 to hold a longest row.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::cycle::{arc_words, label_of, LabeledCycle, PocketCycle};
use super::sequence::{ds2_max_len, has_abab, upper_bound};

#[derive(Clone, Debug)]
pub struct RefuteOptions {
    /// Node limit summed over all workers.
    pub budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Require equal flanks at every bold pair.
    pub rule_s: bool,
    /// Require every arc word to have exactly `2n - 1` letters (otherwise at most).
    pub maximal_arcs: bool,
    /// Require every triangle to own exactly `target / n` sides.
    pub equal_contributions: bool,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions { budget: 1_000_000_000, threads: None, rule_s: true, maximal_arcs: true, equal_contributions: true }
    }
}

impl RefuteOptions {
    /// The constraints forced when `target` equals the counting bound and
    /// `n` divides it: then every triangle is a champion, and every arc word
    /// must be maximal. Otherwise only the DS conditions apply.
    pub fn for_target(n: usize, target: usize) -> Self {
        let tight = n >= 2 && target == upper_bound(n) && target % n == 0;
        RefuteOptions { rule_s: tight, maximal_arcs: tight, equal_contributions: tight, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefuteOutcome {
    Refuted,
    Witness(LabeledCycle),
}

/// Audit record for one subtree (fixed first row).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BranchLog {
    pub first_row: Vec<usize>,
    pub nodes: u64,
    /// Dead ends by rule name.
    pub cuts: BTreeMap<&'static str, u64>,
    pub witness: Option<Vec<Vec<usize>>>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefuteReport {
    pub n: usize,
    pub target: usize,
    pub outcome: RefuteOutcome,
    pub nodes: u64,
    pub branches: Vec<BranchLog>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RefuteError {
    #[error("node budget exceeded after {} nodes", .0.nodes)]
    BudgetExceeded(Box<RefuteReport>),
    #[error("target {target} is not reachable with {n} triangles in this model")]
    BadTarget { n: usize, target: usize },
}

impl RefuteReport {
    /// Line-oriented log: one summary line, then one line per branch.
    pub fn audit_log(&self) -> String {
        let mut s = String::new();
        let verdict = match &self.outcome {
            RefuteOutcome::Refuted => "refuted".to_string(),
            RefuteOutcome::Witness(c) => format!("witness {c}"),
        };
        let _ = writeln!(s, "n={} target={} nodes={} result={}", self.n, self.target, self.nodes, verdict);
        for b in &self.branches {
            let row: Vec<String> = b.first_row.iter().map(|d| d.to_string()).collect();
            let cuts: Vec<String> = b.cuts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                s,
                "branch row0={{{}}} nodes={} complete={} witness={} {}",
                row.join(","),
                b.nodes,
                b.complete,
                b.witness.is_some(),
                cuts.join(" ")
            );
        }
        s
    }
}

struct Dfs<'a> {
    n: usize,
    m: usize,
    opts: &'a RefuteOptions,
    choices: Vec<Vec<usize>>,
    rows: Vec<Vec<usize>>,
    italics_needed: usize,
    italics: usize,
    label_cap: Option<usize>,
    label_count: Vec<usize>,
    log: BranchLog,
    shared: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Dfs<'_> {
    fn cut(&mut self, why: &'static str) -> bool {
        *self.log.cuts.entry(why).or_default() += 1;
        false
    }

    /// Checks everything involving pocket `k`, the last assigned one.
    fn admissible(&mut self, k: usize) -> bool {
        let (n, m) = (self.n, self.m);
        let max_row = self.rows[0].len();
        let assigned = k + 1;
        let remaining = m - assigned;
        if self.italics > self.italics_needed || self.italics + remaining * max_row < self.italics_needed {
            return self.cut("total");
        }
        if let Some(cap) = self.label_cap {
            if self.label_count.iter().any(|&c| c > cap) {
                return self.cut("labels");
            }
        }
        if self.opts.rule_s {
            let mut pairs = vec![k];
            if k + 1 == m {
                pairs.push(0);
            }
            for p in pairs {
                if p == 0 && k + 1 < m {
                    continue;
                }
                if !flank_ok(n, m, &self.rows, p) {
                    return self.cut("flank");
                }
            }
        }
        // arcs touching pocket k, restricted to assigned pockets
        let target = ds2_max_len(n);
        for v in (k as i64 - n as i64 + 1)..=(k as i64) {
            let complete = v >= 0 || assigned == m;
            let empty: &[usize] = &[];
            let (r, l) = arc_words(n, v, |q| {
                let q = q.rem_euclid(m as i64) as usize;
                if q < assigned {
                    &self.rows[q]
                } else {
                    empty
                }
            });
            // unassigned pockets still contribute their bold chords
            let unassigned = (v..v + n as i64).filter(|q| q.rem_euclid(m as i64) as usize >= assigned).count();
            if r.len() > target || l.len() > target {
                return self.cut("length");
            }
            if complete && unassigned == 0 && self.opts.maximal_arcs && (r.len() < target || l.len() < target) {
                return self.cut("short");
            }
            if has_abab(&r) || has_abab(&l) {
                return self.cut("abab");
            }
        }
        if assigned == m {
            // arcs wrapping past the end
            for v in (m - n + 1)..m {
                let (r, l) = arc_words(n, v as i64, |q| &self.rows[q.rem_euclid(m as i64) as usize]);
                let bad_len = if self.opts.maximal_arcs {
                    r.len() != target || l.len() != target
                } else {
                    r.len() > target || l.len() > target
                };
                if bad_len {
                    return self.cut("length");
                }
                if has_abab(&r) || has_abab(&l) {
                    return self.cut("abab");
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        self.log.nodes += 1;
        if self.shared.fetch_add(1, Ordering::Relaxed) >= self.opts.budget {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        if k == self.m {
            self.log.witness = Some(self.rows.clone());
            return true;
        }
        let max_row = self.rows[0].len();
        for c in 0..self.choices.len() {
            if self.choices[c].len() > max_row {
                continue;
            }
            let row = self.choices[c].clone();
            self.place(k, &row, true);
            let ok = self.admissible(k) && self.run(k + 1);
            if ok {
                return true;
            }
            self.place(k, &row, false);
        }
        false
    }

    fn place(&mut self, k: usize, row: &[usize], add: bool) {
        for &d in row {
            let lab = label_of(k as i64 - d as i64, self.n) - 1;
            if add {
                self.label_count[lab] += 1;
            } else {
                self.label_count[lab] -= 1;
            }
        }
        if add {
            self.italics += row.len();
            self.rows[k] = row.to_vec();
        } else {
            self.italics -= row.len();
            self.rows[k].clear();
        }
    }
}

fn flank_ok(n: usize, m: usize, rows: &[Vec<usize>], k: usize) -> bool {
    let kk = k as i64;
    let prev = &rows[(k + m - 1) % m];
    let before = match prev.last() {
        Some(&d) => kk - 1 - d as i64,
        None => kk - 1,
    };
    let after = match rows[k].first() {
        Some(&d) => kk - d as i64,
        None => kk + 1,
    };
    label_of(before, n) == label_of(after, n)
}

/// Searches the pocket model for a `target`-entry word meeting the options.
pub fn refute_target(n: usize, target: usize, opts: &RefuteOptions) -> Result<RefuteReport, RefuteError> {
    let m = 3 * n;
    let width = n.saturating_sub(2);
    if n < 2 || target < 6 * n || target > 6 * n + m * width {
        return Err(RefuteError::BadTarget { n, target });
    }
    let label_cap = if opts.equal_contributions {
        if target % n != 0 {
            return Err(RefuteError::BadTarget { n, target });
        }
        Some(target / n - 6)
    } else {
        None
    };
    let mut choices: Vec<Vec<usize>> = (0u32..1 << width)
        .map(|mask| (1..=width).filter(|d| mask >> (d - 1) & 1 == 1).collect())
        .collect();
    choices.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then(a.cmp(b)));

    let shared = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let branch = |first: &Vec<usize>| {
        let mut dfs = Dfs {
            n,
            m,
            opts,
            choices: choices.clone(),
            rows: vec![Vec::new(); m],
            italics_needed: target - 6 * n,
            italics: 0,
            label_cap,
            label_count: vec![0; n],
            log: BranchLog { first_row: first.clone(), ..Default::default() },
            shared: &shared,
            stop: &stop,
        };
        dfs.place(0, first, true);
        dfs.log.nodes += 1;
        let found = dfs.admissible(0) && dfs.run(1);
        dfs.log.complete = found || !stop.load(Ordering::Relaxed);
        dfs.log
    };
    let branches: Vec<BranchLog> = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(|| choices.par_iter().map(branch).collect()),
        None => choices.par_iter().map(branch).collect(),
    };

    let nodes = branches.iter().map(|b| b.nodes).sum();
    let witness = branches.iter().find_map(|b| b.witness.clone());
    let outcome = match witness {
        Some(rows) => RefuteOutcome::Witness(PocketCycle { n, rows }.to_labeled()),
        None => RefuteOutcome::Refuted,
    };
    let report = RefuteReport { n, target, outcome, nodes, branches };
    if report.outcome == RefuteOutcome::Refuted && report.branches.iter().any(|b| !b.complete) {
        return Err(RefuteError::BudgetExceeded(Box::new(report)));
    }
    Ok(report)
}
