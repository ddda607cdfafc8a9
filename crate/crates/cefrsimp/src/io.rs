//! JSONL datasets and output files.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use cefrsimp_core::{level_from_label, SimplificationTask};
use serde::Deserialize;
use thiserror::Error;

pub use cefrsimp_core::output::{completeness_check, fallback_text, sort_outputs, SimplifiedOutput};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("line {line}: duplicate text_id {id:?}")]
    DuplicateId { line: usize, id: String },
}

impl IoError {
    fn file(path: &Path, source: std::io::Error) -> Self {
        IoError::File {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Deserialize)]
struct TaskRecord {
    text_id: String,
    original: String,
    target_cefr: String,
    #[serde(default)]
    reference: Option<String>,
}

/// Reads one task per non-blank line, in file order.
pub fn read_tasks(path: impl AsRef<Path>) -> Result<Vec<SimplificationTask>, IoError> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| IoError::file(path, e))?;
    parse_tasks(file)
}

pub fn parse_tasks(reader: impl Read) -> Result<Vec<SimplificationTask>, IoError> {
    let mut seen = BTreeSet::new();
    let mut tasks = Vec::new();
    for (line, record) in records::<TaskRecord>(reader) {
        let record = record?;
        let target = level_from_label(&record.target_cefr).map_err(|e| IoError::Record {
            line,
            message: e.to_string(),
        })?;
        if !seen.insert(record.text_id.clone()) {
            return Err(IoError::DuplicateId {
                line,
                id: record.text_id,
            });
        }
        tasks.push(SimplificationTask {
            text_id: record.text_id,
            original: record.original,
            target,
            reference: record.reference,
        });
    }
    Ok(tasks)
}

/// Reads an output file written by [`write_outputs`] (or any file with the same two fields).
pub fn read_outputs(path: impl AsRef<Path>) -> Result<Vec<SimplifiedOutput>, IoError> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| IoError::file(path, e))?;
    parse_outputs(file)
}

pub fn parse_outputs(reader: impl Read) -> Result<Vec<SimplifiedOutput>, IoError> {
    let mut seen = BTreeSet::new();
    let mut outputs = Vec::new();
    for (line, record) in records::<SimplifiedOutput>(reader) {
        let record = record?;
        if !seen.insert(record.text_id.clone()) {
            return Err(IoError::DuplicateId {
                line,
                id: record.text_id,
            });
        }
        outputs.push(record);
    }
    Ok(outputs)
}

fn records<T: serde::de::DeserializeOwned>(reader: impl Read) -> impl Iterator<Item = (usize, Result<T, IoError>)> {
    BufReader::new(reader)
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line))
        .filter(|(_, line)| !matches!(line, Ok(l) if l.trim().is_empty()))
        .map(|(line, text)| {
            let parsed = text
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str::<T>(&t).map_err(|e| e.to_string()))
                .map_err(|message| IoError::Record { line, message });
            (line, parsed)
        })
}

/// One JSON object per line with exactly `text_id` and `simplified_sentence`.
/// Newlines inside the text become single spaces.
pub fn write_outputs(path: impl AsRef<Path>, outputs: &[SimplifiedOutput]) -> Result<(), IoError> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| IoError::file(path, e))?;
    let mut writer = BufWriter::new(file);
    render_outputs(&mut writer, outputs).map_err(|e| IoError::file(path, e))?;
    writer.flush().map_err(|e| IoError::file(path, e))
}

pub fn render_outputs(mut writer: impl Write, outputs: &[SimplifiedOutput]) -> std::io::Result<()> {
    for output in outputs {
        let record = SimplifiedOutput::new(output.text_id.clone(), single_line(&output.simplified_sentence));
        serde_json::to_writer(&mut writer, &record)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

fn single_line(text: &str) -> String {
    if !text.contains(['\n', '\r']) {
        return text.to_string();
    }
    text.split(['\n', '\r'])
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cefrsimp_core::CefrLevel;

    #[test]
    fn reads_tasks_in_order() {
        let data = r#"{"text_id":"02-b1","original":"Second.","target_cefr":"B1"}
{"text_id":"01-a2","original":"First.","target_cefr":"a2","reference":"Ref."}
"#;
        let tasks = parse_tasks(data.as_bytes()).unwrap();
        assert_eq!(tasks.len(), 2);
        assert_eq!(tasks[0].text_id, "02-b1");
        assert_eq!(tasks[1].target, CefrLevel::A2);
        assert_eq!(tasks[1].reference.as_deref(), Some("Ref."));
    }

    #[test]
    fn missing_field_names_the_line() {
        let err = parse_tasks(r#"{"text_id":"x","original":"y"}"#.as_bytes()).unwrap_err();
        assert!(matches!(err, IoError::Record { line: 1, .. }), "{err}");
        assert!(err.to_string().contains("target_cefr"));
    }

    #[test]
    fn bad_level_and_duplicates() {
        let bad = r#"{"text_id":"x","original":"y","target_cefr":"D1"}"#;
        assert!(matches!(parse_tasks(bad.as_bytes()), Err(IoError::Record { line: 1, .. })));
        let dup = "{\"text_id\":\"x\",\"original\":\"y\",\"target_cefr\":\"A1\"}\n\n{\"text_id\":\"x\",\"original\":\"z\",\"target_cefr\":\"A2\"}";
        assert!(matches!(parse_tasks(dup.as_bytes()), Err(IoError::DuplicateId { line: 3, .. })));
    }

    #[test]
    fn output_lines_have_two_fields() {
        let mut buf = Vec::new();
        render_outputs(&mut buf, &[SimplifiedOutput::new("01-a1", "One.\nTwo.")]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "{\"text_id\":\"01-a1\",\"simplified_sentence\":\"One. Two.\"}\n");
        let value: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(value.as_object().unwrap().len(), 2);
    }

    #[test]
    fn empty_outputs_give_empty_file() {
        let mut buf = Vec::new();
        render_outputs(&mut buf, &[]).unwrap();
        assert!(buf.is_empty());
    }

    #[test]
    fn outputs_round_trip() {
        let outputs = vec![
            SimplifiedOutput::new("01-a1", "A \"quoted\" word."),
            SimplifiedOutput::new("01-b1", "Ünïcode, «fine»."),
        ];
        let mut buf = Vec::new();
        render_outputs(&mut buf, &outputs).unwrap();
        assert_eq!(parse_outputs(buf.as_slice()).unwrap(), outputs);
    }

    #[test]
    fn extra_output_fields_are_rejected() {
        let line = r#"{"text_id":"a","simplified_sentence":"b","score":1}"#;
        assert!(parse_outputs(line.as_bytes()).is_err());
    }
}
