use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::life::Verdict;

pub type IndividualId = u64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    half_points: u64,
    games: u64,
    partners: BTreeSet<IndividualId>,
}

/// Every game played between pairs of live individuals.
///
/// Records are keyed by `(low id, high id)` and verdicts are stored from the
/// low id's point of view. Per-individual tallies are kept in step so that
/// fitness lookups are O(1).
#[derive(Clone, Debug, Default)]
pub struct CompetitionLedger {
    records: BTreeMap<(IndividualId, IndividualId), Vec<Verdict>>,
    tallies: HashMap<IndividualId, Tally>,
}

impl CompetitionLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends games of `a` against `b`; verdicts are from `a`'s side.
    pub fn record(&mut self, a: IndividualId, b: IndividualId, verdicts: &[Verdict]) {
        assert_ne!(a, b, "an individual does not play itself");
        let (key, oriented): ((IndividualId, IndividualId), Vec<Verdict>) = if a < b {
            ((a, b), verdicts.to_vec())
        } else {
            ((b, a), verdicts.iter().map(|v| v.flipped()).collect())
        };
        for v in &oriented {
            let low = self.tallies.entry(key.0).or_default();
            low.half_points += v.half_points_a() as u64;
            low.games += 1;
            low.partners.insert(key.1);
            let high = self.tallies.entry(key.1).or_default();
            high.half_points += v.flipped().half_points_a() as u64;
            high.games += 1;
            high.partners.insert(key.0);
        }
        self.records.entry(key).or_default().extend(oriented);
    }

    /// Games between `a` and `b`, from `a`'s side.
    pub fn games(&self, a: IndividualId, b: IndividualId) -> Vec<Verdict> {
        if a < b {
            self.records.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.records
                .get(&(b, a))
                .map(|vs| vs.iter().map(|v| v.flipped()).collect())
                .unwrap_or_default()
        }
    }

    /// Drops `id` and every record that mentions it.
    pub fn remove(&mut self, id: IndividualId) {
        let Some(entry) = self.tallies.remove(&id) else {
            return;
        };
        for other in entry.partners {
            let key = (id.min(other), id.max(other));
            let verdicts = self.records.remove(&key).unwrap_or_default();
            if let Some(t) = self.tallies.get_mut(&other) {
                for v in verdicts {
                    // credit that `other` earned in this game
                    let credit = if key.0 == other { v.half_points_a() } else { v.flipped().half_points_a() };
                    t.half_points -= credit as u64;
                    t.games -= 1;
                }
                t.partners.remove(&id);
            }
        }
    }

    pub fn contains(&self, id: IndividualId) -> bool {
        self.tallies.contains_key(&id)
    }

    pub fn games_played(&self, id: IndividualId) -> u64 {
        self.tallies.get(&id).map_or(0, |t| t.games)
    }

    /// Wins plus half the ties, over games played. An individual with no
    /// games yet sits at the population mean, 0.5.
    pub fn fitness(&self, id: IndividualId) -> Option<f64> {
        let t = self.tallies.get(&id)?;
        if t.games == 0 {
            return Some(0.5);
        }
        Some(t.half_points as f64 / (2 * t.games) as f64)
    }

    /// Number of recorded games in total.
    pub fn total_games(&self) -> usize {
        self.records.values().map(Vec::len).sum()
    }

    pub fn register(&mut self, id: IndividualId) {
        self.tallies.entry(id).or_default();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Verdict::*;

    #[test]
    fn records_both_sides() {
        let mut l = CompetitionLedger::new();
        l.record(3, 1, &[WinA, Tie]);
        assert_eq!(l.games(3, 1), vec![WinA, Tie]);
        assert_eq!(l.games(1, 3), vec![WinB, Tie]);
        assert_eq!(l.fitness(3), Some(0.75));
        assert_eq!(l.fitness(1), Some(0.25));
        assert_eq!(l.total_games(), 2);
    }

    #[test]
    fn remove_clears_records_and_tallies() {
        let mut l = CompetitionLedger::new();
        l.record(1, 2, &[WinA, WinA]);
        l.record(1, 3, &[Tie, WinB]);
        l.record(2, 3, &[WinB, WinB]);
        l.remove(1);
        assert!(!l.contains(1));
        assert!(l.games(1, 2).is_empty());
        assert_eq!(l.fitness(2), Some(0.0));
        assert_eq!(l.fitness(3), Some(1.0));
        assert_eq!(l.total_games(), 2);
    }
}
