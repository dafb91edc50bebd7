//! Label distributions and accuracy against a gold file.

use crate::error::{Error, Result};
use crate::lexica::data_lines;
use crate::modality::Label;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;
use std::path::Path;

/// Bucket order in every report.
pub const BUCKETS: [Label; 4] = [
    Label::Epistemic,
    Label::Deontic,
    Label::NonModal,
    Label::EpistemicDeontic,
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bucket {
    pub label: Label,
    pub count: usize,
    /// Exact share in percent.
    pub percent: f64,
    /// Rounded to one decimal so that the buckets add up to exactly 100.
    pub rounded: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    pub set: String,
    pub total: usize,
    pub buckets: Vec<Bucket>,
}

impl Distribution {
    pub fn count(&self, label: Label) -> usize {
        self.buckets.iter().find(|b| b.label == label).map_or(0, |b| b.count)
    }
}

/// Largest-remainder rounding of `counts` to tenths of a percent.
fn rounded_tenths(counts: &[usize], total: usize) -> Vec<u64> {
    if total == 0 {
        return vec![0; counts.len()];
    }
    let exact: Vec<(u64, u64)> = counts
        .iter()
        .map(|&c| {
            let scaled = c as u64 * 1000;
            (scaled / total as u64, scaled % total as u64)
        })
        .collect();
    let mut tenths: Vec<u64> = exact.iter().map(|&(q, _)| q).collect();
    let missing = 1000 - tenths.iter().sum::<u64>();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| exact[b].1.cmp(&exact[a].1).then(a.cmp(&b)));
    for &i in order.iter().take(missing as usize) {
        tenths[i] += 1;
    }
    tenths
}

/// Counts per label bucket. Percentages are 0 for an empty input.
pub fn distribution(set: &str, labels: impl IntoIterator<Item = Label>) -> Distribution {
    let mut counts = [0usize; 4];
    for label in labels {
        let i = BUCKETS
            .iter()
            .position(|b| *b == label)
            .expect("every label has a bucket");
        counts[i] += 1;
    }
    let total: usize = counts.iter().sum();
    let tenths = rounded_tenths(&counts, total);
    let buckets = BUCKETS
        .iter()
        .zip(counts)
        .zip(tenths)
        .map(|((&label, count), t)| Bucket {
            label,
            count,
            percent: if total == 0 {
                0.0
            } else {
                100.0 * count as f64 / total as f64
            },
            rounded: t as f64 / 10.0,
        })
        .collect();
    Distribution {
        set: set.to_string(),
        total,
        buckets,
    }
}

/// One predicted sentence: `id` is `set:index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub id: String,
    pub label: Label,
    pub lemmas: Vec<String>,
}

pub fn set_of(id: &str) -> &str {
    id.rsplit_once(':').map_or(id, |(set, _)| set)
}

/// Parses `id<TAB>LABEL` rows.
pub fn parse_gold(text: &str, origin: &Path) -> Result<Vec<(String, Label)>> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for (line_no, line) in data_lines(text) {
        let Some((id, label)) = line.split_once('\t') else {
            return Err(Error::malformed(origin, line_no, "expected `id<TAB>label`"));
        };
        let id = id.trim();
        let label: Label = label.trim().parse().map_err(|m| Error::malformed(origin, line_no, m))?;
        if !seen.insert(id.to_string()) {
            return Err(Error::malformed(origin, line_no, format!("duplicate id `{id}`")));
        }
        rows.push((id.to_string(), label));
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetAccuracy {
    pub set: String,
    pub correct: usize,
    pub total: usize,
    pub percent: f64,
}

impl SetAccuracy {
    fn new(set: &str, correct: usize, total: usize) -> Self {
        SetAccuracy {
            set: set.to_string(),
            correct,
            total,
            percent: if total == 0 {
                0.0
            } else {
                100.0 * correct as f64 / total as f64
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Misclassification {
    pub id: String,
    pub expected: Label,
    pub predicted: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub sets: Vec<SetAccuracy>,
    pub overall: SetAccuracy,
    /// Trigger lemma → occurrences in misclassified sentences.
    pub lemma_errors: BTreeMap<String, usize>,
    pub misclassified: Vec<Misclassification>,
}

/// Exact-match accuracy over the gold ids. Every gold id must have a
/// prediction; predictions without a gold row are not scored.
pub fn evaluate(predictions: &[Prediction], gold: &[(String, Label)]) -> Result<AccuracyReport> {
    let by_id: BTreeMap<&str, &Prediction> = predictions.iter().map(|p| (p.id.as_str(), p)).collect();
    let missing: Vec<String> = gold
        .iter()
        .filter(|(id, _)| !by_id.contains_key(id.as_str()))
        .map(|(id, _)| id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::UnknownGoldIds { ids: missing });
    }
    let mut per_set: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut lemma_errors = BTreeMap::new();
    let mut misclassified = Vec::new();
    let mut sorted: Vec<&(String, Label)> = gold.iter().collect();
    sorted.sort();
    for (id, expected) in sorted {
        let prediction = by_id[id.as_str()];
        let entry = per_set.entry(set_of(id)).or_default();
        entry.1 += 1;
        if prediction.label == *expected {
            entry.0 += 1;
        } else {
            for lemma in &prediction.lemmas {
                *lemma_errors.entry(lemma.clone()).or_insert(0) += 1;
            }
            misclassified.push(Misclassification {
                id: id.clone(),
                expected: *expected,
                predicted: prediction.label,
            });
        }
    }
    let (correct, total) = per_set.values().fold((0, 0), |(c, t), &(sc, st)| (c + sc, t + st));
    Ok(AccuracyReport {
        sets: per_set
            .iter()
            .map(|(set, &(c, t))| SetAccuracy::new(set, c, t))
            .collect(),
        overall: SetAccuracy::new("overall", correct, total),
        lemma_errors,
        misclassified,
    })
}

/// Holders per attitude group, by display name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AttitudeSummary {
    pub document: String,
    pub pro: Vec<String>,
    pub contra: Vec<String>,
    pub neutral: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub distributions: Vec<Distribution>,
    pub overall: Distribution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<AccuracyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attitude: Vec<AttitudeSummary>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut json = serde_json::to_string_pretty(self).expect("report serializes");
        json.push('\n');
        json
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .distributions
            .iter()
            .map(|d| d.set.len())
            .chain(self.accuracy.iter().flat_map(|a| a.sets.iter().map(|s| s.set.len())))
            .chain([7])
            .max()
            .unwrap_or(7);
        let _ = writeln!(out, "Label distribution");
        let _ = write!(out, "{:<width$}  {:>5}", "set", "total");
        for label in BUCKETS {
            let _ = write!(out, "  {:>17}", label.name());
        }
        out.push('\n');
        for d in self.distributions.iter().chain([&self.overall]) {
            let _ = write!(out, "{:<width$}  {:>5}", d.set, d.total);
            for b in &d.buckets {
                let _ = write!(out, "  {:>17}", format!("{} ({:.1}%)", b.count, b.rounded));
            }
            out.push('\n');
        }
        if let Some(acc) = &self.accuracy {
            let _ = writeln!(out, "\nAccuracy");
            let _ = writeln!(
                out,
                "{:<width$}  {:>7}  {:>5}  {:>7}",
                "set", "correct", "total", "percent"
            );
            for s in acc.sets.iter().chain([&acc.overall]) {
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>7}  {:>5}  {:>6.1}%",
                    s.set, s.correct, s.total, s.percent
                );
            }
            if !acc.lemma_errors.is_empty() {
                let _ = writeln!(out, "\nTrigger lemmas in misclassified sentences");
                let mut lemmas: Vec<(&String, &usize)> = acc.lemma_errors.iter().collect();
                lemmas.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
                for (lemma, count) in lemmas {
                    let _ = writeln!(out, "{lemma:<width$}  {count:>7}");
                }
            }
            if !acc.misclassified.is_empty() {
                let _ = writeln!(out, "\nMisclassified");
                for m in &acc.misclassified {
                    let _ = writeln!(out, "{}  expected {}  got {}", m.id, m.expected, m.predicted);
                }
            }
        }
        if !self.attitude.is_empty() {
            let _ = writeln!(out, "\nAttitude groups");
            for a in &self.attitude {
                let _ = writeln!(
                    out,
                    "{:<width$}  pro: [{}]  contra: [{}]  neutral: [{}]",
                    a.document,
                    a.pro.join(", "),
                    a.contra.join(", "),
                    a.neutral.join(", ")
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_distribution() {
        let d = distribution(
            "s",
            [Label::Epistemic, Label::Epistemic, Label::NonModal, Label::NonModal],
        );
        let pct: Vec<f64> = d.buckets.iter().map(|b| b.percent).collect();
        assert_eq!(pct, [50.0, 0.0, 50.0, 0.0]);
    }

    #[test]
    fn empty_distribution_is_all_zero() {
        let d = distribution("s", []);
        assert_eq!(d.total, 0);
        assert!(d
            .buckets
            .iter()
            .all(|b| b.count == 0 && b.percent == 0.0 && b.rounded == 0.0));
    }

    #[test]
    fn combined_label_is_its_own_bucket() {
        let d = distribution("s", [Label::EpistemicDeontic]);
        assert_eq!(d.count(Label::EpistemicDeontic), 1);
        assert_eq!(d.buckets[3].percent, 100.0);
        assert_eq!(d.count(Label::Epistemic), 0);
    }

    #[test]
    fn thirds_round_to_one_hundred() {
        let d = distribution("s", [Label::Epistemic, Label::Deontic, Label::NonModal]);
        let rounded: Vec<f64> = d.buckets.iter().map(|b| b.rounded).collect();
        assert_eq!(rounded, [33.4, 33.3, 33.3, 0.0]);
    }

    fn pred(id: &str, label: Label, lemmas: &[&str]) -> Prediction {
        Prediction {
            id: id.into(),
            label,
            lemmas: lemmas.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn self_evaluation_is_perfect() {
        let preds = vec![
            pred("a:0", Label::Epistemic, &["may"]),
            pred("b:1", Label::NonModal, &[]),
        ];
        let gold: Vec<_> = preds.iter().map(|p| (p.id.clone(), p.label)).collect();
        let acc = evaluate(&preds, &gold).unwrap();
        assert_eq!(acc.overall.percent, 100.0);
        assert_eq!(acc.sets.len(), 2);
    }

    #[test]
    fn errors_are_tallied_by_lemma() {
        let preds = vec![
            pred("a:0", Label::Epistemic, &["will", "perhaps"]),
            pred("a:1", Label::Deontic, &["will"]),
        ];
        let gold = vec![
            ("a:0".to_string(), Label::Deontic),
            ("a:1".to_string(), Label::Epistemic),
        ];
        let acc = evaluate(&preds, &gold).unwrap();
        assert_eq!(acc.overall.correct, 0);
        assert_eq!(acc.lemma_errors["will"], 2);
        assert_eq!(acc.lemma_errors["perhaps"], 1);
    }

    #[test]
    fn unknown_gold_ids_are_listed() {
        let err = evaluate(
            &[pred("a:0", Label::Epistemic, &[])],
            &[("a:9".to_string(), Label::Epistemic)],
        )
        .unwrap_err();
        assert!(matches!(&err, Error::UnknownGoldIds { ids } if ids == &["a:9"]));
    }

    #[test]
    fn gold_parsing() {
        let rows = parse_gold("# comment\npaper:0\tEPISTEMIC\npaper:1\tNON-MODAL\n", Path::new("g")).unwrap();
        assert_eq!(rows[1], ("paper:1".to_string(), Label::NonModal));
        assert!(parse_gold("x\tMAYBE\n", Path::new("g")).is_err());
        assert!(parse_gold("x\tDEONTIC\nx\tDEONTIC\n", Path::new("g")).is_err());
    }

    #[test]
    fn text_report_is_aligned() {
        let d = distribution("paper", [Label::Epistemic]);
        let report = Report {
            distributions: vec![d.clone()],
            overall: Distribution {
                set: "overall".into(),
                ..d
            },
            accuracy: None,
            attitude: vec![],
        };
        let text = report.to_text();
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(lines[0].len(), lines[1].len());
        assert!(text.contains("1 (100.0%)"));
    }

    fn label() -> impl Strategy<Value = Label> {
        prop::sample::select(BUCKETS.to_vec())
    }

    proptest! {
        #[test]
        fn rounded_percentages_sum_to_100(labels in prop::collection::vec(label(), 1..200)) {
            let d = distribution("s", labels.clone());
            let tenths: u64 = d.buckets.iter().map(|b| (b.rounded * 10.0).round() as u64).sum();
            prop_assert_eq!(tenths, 1000);
            let exact: f64 = d.buckets.iter().map(|b| b.percent).sum();
            prop_assert!((exact - 100.0).abs() < 1e-9);
            for b in &d.buckets {
                prop_assert!((b.rounded - b.percent).abs() < 0.1 + 1e-9);
            }
        }

        #[test]
        fn permutation_does_not_change_counts(mut labels in prop::collection::vec(label(), 0..50)) {
            let a = distribution("s", labels.clone());
            labels.reverse();
            prop_assert_eq!(a, distribution("s", labels));
        }
    }

    proptest! {
        #[test]
        fn evaluation_ignores_id_order(
            rows in prop::collection::vec((label(), label()), 1..40),
            seed in any::<u64>(),
        ) {
            let predictions: Vec<Prediction> = rows
                .iter()
                .enumerate()
                .map(|(i, (p, _))| Prediction { id: format!("s{}:{i}", i % 3), label: *p, lemmas: vec!["may".into()] })
                .collect();
            let gold: Vec<(String, Label)> =
                rows.iter().enumerate().map(|(i, (_, g))| (format!("s{}:{i}", i % 3), *g)).collect();
            let a = evaluate(&predictions, &gold).unwrap();
            let mut shuffled_p = predictions.clone();
            let mut shuffled_g = gold.clone();
            let n = rows.len() as u64;
            shuffled_p.rotate_left((seed % n) as usize);
            shuffled_g.reverse();
            let b = evaluate(&shuffled_p, &shuffled_g).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a, evaluate(&predictions, &gold).unwrap());
        }
    }
}
