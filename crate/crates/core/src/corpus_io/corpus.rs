use std::collections::HashSet;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// How JSON fields map onto sample ids and texts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMapping {
    /// Field holding the sample id. Lines without it get `row-<k>`.
    pub id_field: String,
    /// Candidate text fields, tried in order; the first one present wins.
    pub text_fields: Vec<String>,
}

impl Default for FieldMapping {
    fn default() -> Self {
        Self {
            id_field: "id".to_string(),
            text_fields: vec!["problem".to_string(), "text".to_string()],
        }
    }
}

impl FieldMapping {
    /// Mapping with a single text field.
    pub fn with_text_field(text_field: impl Into<String>) -> Self {
        Self {
            text_fields: vec![text_field.into()],
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: String,
    pub text: String,
    /// The source record, written back verbatim on save.
    pub payload: Map<String, Value>,
}

impl Sample {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let id = id.into();
        let text = text.into();
        let mut payload = Map::new();
        payload.insert("id".to_string(), Value::String(id.clone()));
        payload.insert("text".to_string(), Value::String(text.clone()));
        Self { id, text, payload }
    }
}

/// Non-empty, ordered collection of samples with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    samples: Vec<Sample>,
}

impl Corpus {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut seen = HashSet::with_capacity(samples.len());
        for (k, sample) in samples.iter().enumerate() {
            if sample.text.trim().is_empty() {
                return Err(Error::MalformedLine {
                    line: k + 1,
                    message: "text is empty".to_string(),
                });
            }
            if !seen.insert(sample.id.as_str()) {
                return Err(Error::DuplicateId {
                    id: sample.id.clone(),
                    line: k + 1,
                });
            }
        }
        Ok(Self { samples })
    }

    /// Builds a corpus with ids `row-<k>` from bare texts.
    pub fn from_texts<I, S>(texts: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let samples = texts
            .into_iter()
            .enumerate()
            .map(|(k, t)| Sample::new(format!("row-{k}"), t))
            .collect();
        Self::new(samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sample> {
        self.samples.iter()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.samples.iter().map(|s| s.text.as_str())
    }

    /// Sub-corpus made of the given positions, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut samples = Vec::with_capacity(indices.len());
        for &i in indices {
            let sample = self.samples.get(i).ok_or_else(|| {
                Error::out_of_range("index", format!("{i} >= corpus size {}", self.len()))
            })?;
            samples.push(sample.clone());
        }
        Self::new(samples)
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Sample;
    type IntoIter = std::slice::Iter<'a, Sample>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}

/// Parses JSON-Lines text. Blank lines are skipped but still counted.
pub fn parse_corpus(content: &str, mapping: &FieldMapping) -> Result<Corpus> {
    let mut samples = Vec::new();
    let mut seen = HashSet::new();
    for (k, line) in content.lines().enumerate() {
        let line_no = k + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line).map_err(|e| Error::MalformedLine {
            line: line_no,
            message: e.to_string(),
        })?;
        let Value::Object(payload) = value else {
            return Err(Error::MalformedLine {
                line: line_no,
                message: "expected a JSON object".to_string(),
            });
        };

        let text = mapping
            .text_fields
            .iter()
            .find_map(|f| payload.get(f))
            .ok_or_else(|| Error::MalformedLine {
                line: line_no,
                message: format!("no text field (looked for {:?})", mapping.text_fields),
            })?;
        let text = match text {
            Value::String(s) if !s.trim().is_empty() => s.clone(),
            Value::String(_) => {
                return Err(Error::MalformedLine {
                    line: line_no,
                    message: "text is empty".to_string(),
                })
            }
            _ => {
                return Err(Error::MalformedLine {
                    line: line_no,
                    message: "text field is not a string".to_string(),
                })
            }
        };

        let id = match payload.get(&mapping.id_field) {
            None => format!("row-{}", samples.len()),
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            Some(_) => {
                return Err(Error::MalformedLine {
                    line: line_no,
                    message: format!("field {:?} is not a string or number", mapping.id_field),
                })
            }
        };
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId { id, line: line_no });
        }
        samples.push(Sample { id, text, payload });
    }
    if samples.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(Corpus { samples })
}

pub fn load_corpus(path: impl AsRef<Path>, mapping: &FieldMapping) -> Result<Corpus> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&content, mapping)
}

/// One JSON object per line, in corpus order.
pub fn corpus_to_jsonl(corpus: &Corpus) -> Result<String> {
    let mut out = String::new();
    for sample in corpus {
        out.push_str(&serde_json::to_string(&sample.payload)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let content = corpus_to_jsonl(corpus)?;
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = BufWriter::new(file);
    writer
        .write_all(content.as_bytes())
        .and_then(|_| writer.flush())
        .map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_lines_keep_file_order() {
        let src = r#"{"id":"a","problem":"one"}
{"id":"b","problem":"two"}
{"id":"c","problem":"three"}
"#;
        let corpus = parse_corpus(src, &FieldMapping::default()).unwrap();
        assert_eq!(corpus.len(), 3);
        let ids: Vec<_> = corpus.iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
    }

    #[test]
    fn duplicate_id_names_id_and_line() {
        let src = r#"{"id":"a","problem":"1"}
{"id":"b","problem":"2"}
{"id":"c","problem":"3"}
{"id":"a","problem":"4"}"#;
        match parse_corpus(src, &FieldMapping::default()) {
            Err(Error::DuplicateId { id, line }) => {
                assert_eq!(id, "a");
                assert_eq!(line, 4);
            }
            other => panic!("expected duplicate id error, got {other:?}"),
        }
    }

    #[test]
    fn missing_text_field_cites_line() {
        let src = "{\"id\":\"a\",\"problem\":\"x\"}\n{\"id\":\"b\",\"question\":\"y\"}\n";
        let err = parse_corpus(src, &FieldMapping::with_text_field("problem")).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 2, .. }), "{err}");
    }

    #[test]
    fn malformed_json_cites_line() {
        let src = "{\"problem\":\"x\"}\n{not json\n";
        let err = parse_corpus(src, &FieldMapping::default()).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 2, .. }));
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(
            parse_corpus("", &FieldMapping::default()),
            Err(Error::EmptyCorpus)
        ));
        assert!(matches!(
            parse_corpus("\n\n", &FieldMapping::default()),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn synthetic_ids_and_text_fallback() {
        let src = "{\"text\":\"hello\"}\n{\"problem\":\"world\",\"answer\":4}\n";
        let corpus = parse_corpus(src, &FieldMapping::default()).unwrap();
        assert_eq!(corpus.samples()[0].id, "row-0");
        assert_eq!(corpus.samples()[1].id, "row-1");
        assert_eq!(corpus.samples()[0].text, "hello");
        assert_eq!(corpus.samples()[1].payload["answer"], 4);
    }

    #[test]
    fn whitespace_only_text_is_rejected() {
        let err = parse_corpus("{\"problem\":\"   \"}", &FieldMapping::default()).unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 1, .. }));
    }

    #[test]
    fn jsonl_round_trip_preserves_records() {
        let src = "{\"problem\":\"b\",\"id\":\"x\",\"extra\":[1,2.5]}\n{\"id\":\"y\",\"problem\":\"a\"}\n";
        let corpus = parse_corpus(src, &FieldMapping::default()).unwrap();
        let written = corpus_to_jsonl(&corpus).unwrap();
        assert_eq!(written, src);
        assert_eq!(
            parse_corpus(&written, &FieldMapping::default()).unwrap(),
            corpus
        );
    }
}
