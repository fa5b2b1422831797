//! A fixed corpus of small recurrences, orders 1 through 3, exercising
//! rational and irrational eigenvalues, repeated roots, denominators, and
//! degree-6 splitting fields. Used across the integration and acceptance
//! suites.

use crate::exact_arith::{parse_rat, Rat};
use crate::recurrence::Recurrence;

/// A named corpus recurrence.
pub struct CorpusEntry {
    pub name: &'static str,
    pub recurrence: Recurrence,
}

fn rats(literals: &[&str]) -> Vec<Rat> {
    literals
        .iter()
        .map(|s| parse_rat(s).expect("corpus literal"))
        .collect()
}

/// The full corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    let entries: [(&'static str, &[&str], &[&str]); 12] = [
        ("fibonacci", &["1", "1"], &["0", "1"]),
        ("lucas", &["1", "1"], &["2", "1"]),
        ("pell", &["2", "1"], &["0", "1"]),
        ("constant-two", &["1"], &["2"]),
        ("powers-of-two", &["2"], &["1"]),
        ("arithmetic", &["2", "-1"], &["1", "2"]),
        ("two-plus-three-powers", &["5", "-6"], &["2", "5"]),
        ("fermat-two", &["3", "-2"], &["-1", "0"]),
        ("half-weights", &["1/2", "1/2"], &["0", "1"]),
        ("perrin", &["0", "1", "1"], &["3", "0", "2"]),
        ("tribonacci", &["1", "1", "1"], &["0", "0", "1"]),
        ("squares", &["3", "-3", "1"], &["1", "4", "9"]),
    ];
    entries
        .iter()
        .map(|(name, coeffs, init)| CorpusEntry {
            name,
            recurrence: Recurrence::new(rats(coeffs), rats(init)).expect("corpus entry"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.len() >= 10);
        assert!(c.iter().all(|e| (1..=3).contains(&e.recurrence.order())));
    }

    #[test]
    fn selected_terms() {
        let c = corpus();
        let by_name = |n: &str| {
            &c.iter().find(|e| e.name == n).unwrap().recurrence
        };
        assert_eq!(by_name("lucas").term_at(4), rat_from_i64(7));
        assert_eq!(by_name("pell").term_at(4), rat_from_i64(12));
        assert_eq!(by_name("perrin").term_at(7), rat_from_i64(7));
        assert_eq!(by_name("tribonacci").term_at(7), rat_from_i64(13));
        assert_eq!(by_name("squares").term_at(5), rat_from_i64(36));
        assert_eq!(by_name("two-plus-three-powers").term_at(3), rat_from_i64(35));
        let hw = by_name("half-weights");
        assert_eq!(hw.term_at(2), parse_rat("1/2").unwrap());
        assert_eq!(hw.term_at(3), parse_rat("3/4").unwrap());
    }
}
