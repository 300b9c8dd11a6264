use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{AnnotationSet, CorpusError, Question};

pub const ANNOTATION_HEADER: [&str; 8] = [
    "worker_id",
    "article_id",
    "controversy",
    "actors",
    "polarity",
    "openness",
    "time",
    "emotion",
];

pub fn load_annotations(path: impl AsRef<Path>) -> Result<Vec<AnnotationSet>, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    let sets = read_annotations(file)?;
    log::info!("{}: loaded {} annotations", path.display(), sets.len());
    Ok(sets)
}

/// Parses annotation CSV. Row numbers in errors are file line numbers
/// (the header is line 1).
pub fn read_annotations<R: Read>(reader: R) -> Result<Vec<AnnotationSet>, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| CorpusError::Header(e.to_string()))?
        .clone();
    if header.iter().map(str::trim).ne(ANNOTATION_HEADER) {
        return Err(CorpusError::Header(format!(
            "expected header `{}`, found `{}`",
            ANNOTATION_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| CorpusError::Row {
            row: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(0, |p| p.line());
        let worker_id = record[0].trim().to_string();
        let article_id = record[1].trim().to_string();
        if worker_id.is_empty() || article_id.is_empty() {
            return Err(CorpusError::Row { row, message: "empty worker_id or article_id".into() });
        }
        let mut answers = [false; 6];
        for q in Question::ALL {
            answers[q.index()] = match record[q.index() + 2].trim() {
                "0" => false,
                "1" => true,
                other => {
                    return Err(CorpusError::Row {
                        row,
                        message: format!("column {q}: expected 0 or 1, found `{other}`"),
                    })
                }
            };
        }
        if !seen.insert((worker_id.clone(), article_id.clone())) {
            return Err(CorpusError::DuplicateAnnotation { row, worker_id, article_id });
        }
        out.push(AnnotationSet { worker_id, article_id, answers });
    }
    Ok(out)
}

pub fn write_annotations<W: Write>(w: W, sets: &[AnnotationSet]) -> Result<(), csv::Error> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    wtr.write_record(ANNOTATION_HEADER)?;
    for s in sets {
        let mut row = vec![s.worker_id.as_str(), s.article_id.as_str()];
        row.extend(s.answers.iter().map(|&a| if a { "1" } else { "0" }));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}
