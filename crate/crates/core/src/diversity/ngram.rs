use crate::error::{Error, Result};
use crate::similarity::GramBag;

use super::{check_p, DiversityParams, DiversityReport, Metric};

/// Distinct grams over all samples divided by the total gram count.
pub fn ngram_diversity(bag: &GramBag, p: f64) -> Result<DiversityReport> {
    check_p(p)?;
    let total = bag.total();
    if total == 0 {
        return Err(Error::NoGrams { m: bag.m() });
    }
    let raw = bag.distinct_count() as f64 / total as f64;
    Ok(DiversityReport::new(
        Metric::Ngram,
        raw,
        bag.len(),
        DiversityParams { p, m: bag.m() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::{extract_grams_from_texts, Tokenizer};

    fn score(texts: &[&str], m: usize, p: f64) -> Result<DiversityReport> {
        let bag = extract_grams_from_texts(texts.iter().copied(), m, Tokenizer::default())?;
        ngram_diversity(&bag, p)
    }

    #[test]
    fn examples() {
        assert_eq!(score(&["a b", "a b"], 2, 0.0).unwrap().raw, 0.5);
        assert_eq!(score(&["a b c"], 2, 0.0).unwrap().raw, 1.0);
        let r = score(&["x y", "y z"], 1, 0.5).unwrap();
        assert_eq!(r.raw, 0.75);
        assert!((r.adjusted - 2f64.sqrt() * 0.75).abs() < 1e-12);
        assert!((r.adjusted - 1.0607).abs() < 1e-4);
    }

    #[test]
    fn too_short_everywhere() {
        assert!(matches!(
            score(&["a", "b"], 2, 0.5),
            Err(Error::NoGrams { m: 2 })
        ));
    }
}
