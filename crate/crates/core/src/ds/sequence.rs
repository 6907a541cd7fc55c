//! (2,n)-Davenport–Schinzel sequences and the counting bound they imply.

use std::fmt;
use std::str::FromStr;

/// A finite word over triangle labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolSeq(pub Vec<usize>);

impl SymbolSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for SymbolSeq {
    type Err = String;

    /// Digit strings (`"12321"`) or whitespace/comma separated numbers (`"10 2 10"`).
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let parse = |t: &str| t.parse::<usize>().map_err(|e| format!("bad symbol {t:?}: {e}"));
        if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(parse)
                .collect::<Result<_, _>>()
                .map(SymbolSeq)
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or(format!("bad symbol {c:?}")))
                .collect::<Result<_, _>>()
                .map(SymbolSeq)
        }
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|&x| x < 10);
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// True iff `s` has no two equal neighbours and no subsequence `a b a b` with `a != b`.
pub fn is_ds2(s: &[usize]) -> bool {
    if s.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    !has_abab(s)
}

/// Whether some `a != b` occur as a subsequence `a b a b`.
pub fn has_abab(s: &[usize]) -> bool {
    let mut symbols: Vec<usize> = s.to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    for &a in &symbols {
        for &b in &symbols {
            if a == b {
                continue;
            }
            let pattern = [a, b, a, b];
            let mut matched = 0;
            for &x in s {
                if x == pattern[matched] {
                    matched += 1;
                    if matched == 4 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Maximal length of a (2,n)-DS sequence.
pub fn ds2_max_len(n: usize) -> usize {
    2 * n - 1
}

/// `floor(n (12n - 6) / (n + 1))`: the largest `M` with `2M/n + (M - M/n) <= 12n - 6`.
pub fn upper_bound(n: usize) -> usize {
    assert!(n >= 1);
    n * (12 * n - 6) / (n + 1)
}

/// `12n - 18 + [9 <= n <= 17]`, which agrees with [`upper_bound`] for `n >= 9`.
pub fn indicator_bound(n: usize) -> usize {
    12 * n - 18 + usize::from((9..=17).contains(&n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> bool {
        is_ds2(&s.parse::<SymbolSeq>().unwrap().0)
    }

    #[test]
    fn known_words() {
        assert!(ds("123214546417871"));
        assert!(ds("18781654613231"));
        assert!(!ds("1212"));
        assert!(!ds("11"));
        assert!(ds("1"));
        assert!(ds(""));
    }

    #[test]
    fn bound_values() {
        let expect = [(2, 12), (3, 22), (4, 33), (5, 45), (8, 80), (9, 91), (17, 187), (18, 198)];
        for (n, m) in expect {
            assert_eq!(upper_bound(n), m, "n={n}");
        }
        for n in 9..=200 {
            assert_eq!(upper_bound(n), indicator_bound(n), "n={n}");
        }
    }

    /// Exhaustive longest DS word over a small alphabet, by brute force.
    fn longest_brute(n: usize) -> usize {
        fn grow(n: usize, w: &mut Vec<usize>, best: &mut usize) {
            *best = (*best).max(w.len());
            for a in 1..=n {
                w.push(a);
                if is_ds2(w) {
                    grow(n, w, best);
                }
                w.pop();
            }
        }
        let mut best = 0;
        grow(n, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn max_length_matches_brute_force() {
        for n in 1..=4 {
            assert_eq!(longest_brute(n), ds2_max_len(n));
        }
    }
}
