//! Davenport–Schinzel words, the boundary-word model of inscribed
//! configurations, and the searches run over it.

mod assemble;
mod cycle;
mod extract;
mod refute;
mod sequence;

pub use assemble::{self_assemble, Assembly, AssemblyOutcome};
pub use cycle::{
    arc_words, label_of, pocket_chords, rule_s_violations, CycleError, Entry, LabeledCycle, Mark,
    PocketCycle,
};
pub use extract::{check_inequality, extract_lr_sequences, labeled_cycle, ArcWords, ChampionReport, RegimeViolation};
pub use refute::{refute_target, BranchLog, RefuteError, RefuteOptions, RefuteOutcome, RefuteReport};
pub use sequence::{ds2_max_len, has_abab, indicator_bound, is_ds2, upper_bound, SymbolSeq};
