//! JSONL layout files and JSON vocabulary files.
//!
//! Layout file: one object per line,
//! `{"id": "...", "elements": [{"bbox": [l, t, w, h], "category": 0}, ...]}`.
//! The first line may instead be a metadata header `{"meta": {...}}`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::Deserialize;

use super::{validate_layout, Element, Layout, LayoutCollection, Vocabulary, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};

pub fn load_vocabulary(path: impl AsRef<Path>) -> Result<Vocabulary> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Parse {
        path: path.to_owned(),
        line: e.line(),
        message: format!("vocabulary must be a JSON array of strings: {e}"),
    })
}

pub fn load_collection(path: impl AsRef<Path>, vocab_path: impl AsRef<Path>) -> Result<LayoutCollection> {
    let vocabulary = load_vocabulary(vocab_path)?;
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_collection(BufReader::new(file), path, vocabulary)
}

/// Loads a layout file without a vocabulary file. Categories get placeholder
/// names `"0"` up to the largest id in use.
pub fn load_collection_inferred(path: impl AsRef<Path>) -> Result<LayoutCollection> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_collection_inferred(BufReader::new(file), path)
}

/// Parses and validates a JSONL layout stream. `origin` only labels errors.
pub fn parse_collection(
    reader: impl BufRead,
    origin: impl AsRef<Path>,
    vocabulary: Vocabulary,
) -> Result<LayoutCollection> {
    parse_impl(reader, origin.as_ref(), Some(vocabulary))
}

/// [`parse_collection`] with a numbered vocabulary covering every category id
/// that occurs.
pub fn parse_collection_inferred(reader: impl BufRead, origin: impl AsRef<Path>) -> Result<LayoutCollection> {
    parse_impl(reader, origin.as_ref(), None)
}

fn parse_impl(reader: impl BufRead, origin: &Path, vocabulary: Option<Vocabulary>) -> Result<LayoutCollection> {
    let mut layouts = Vec::new();
    let mut first = true;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_owned(),
            line: line_no,
            message,
        };
        let value: serde_json::Value = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        let is_meta = value
            .as_object()
            .is_some_and(|o| o.contains_key("meta") && !o.contains_key("id"));
        match is_meta {
            true if first => {}
            true => return Err(parse_err("metadata header is only allowed on the first line".into())),
            false => {
                let layout: Layout = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
                if let Some(v) = &vocabulary {
                    validate_layout(&layout, v)?;
                }
                if layout.len() > DEFAULT_ELEMENT_CAP {
                    log::warn!(
                        "{}:{line_no}: layout {:?} has {} elements (more than {DEFAULT_ELEMENT_CAP})",
                        origin.display(),
                        layout.id,
                        layout.len()
                    );
                }
                layouts.push(layout);
            }
        }
        first = false;
    }
    let vocabulary = vocabulary.unwrap_or_else(|| {
        let size = layouts
            .iter()
            .flat_map(|l| l.elements.iter().map(|e| e.category.index() + 1))
            .max()
            .unwrap_or(0);
        Vocabulary::numbered(size)
    });
    LayoutCollection::new(layouts, vocabulary)
}

/// Writes the JSONL form of `collection`, preceded by a `{"meta": ...}` line
/// when `meta` is given.
pub fn write_collection(
    mut out: impl Write,
    collection: &LayoutCollection,
    meta: Option<&serde_json::Value>,
) -> std::io::Result<()> {
    if let Some(meta) = meta {
        serde_json::to_writer(&mut out, &serde_json::json!({ "meta": meta }))?;
        out.write_all(b"\n")?;
    }
    for layout in &collection.layouts {
        serde_json::to_writer(&mut out, layout)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn save_collection(
    collection: &LayoutCollection,
    path: impl AsRef<Path>,
    meta: Option<&serde_json::Value>,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_collection(BufWriter::new(file), collection, meta).map_err(|e| Error::io(path, e))
}

/// Two layouts to be compared, read from a pairs file.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutPair {
    pub id: String,
    pub a: Layout,
    pub b: Layout,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairLine {
    id: String,
    a: Vec<Element>,
    b: Vec<Element>,
}

/// Reads a pairs file: JSONL with one `{"id": ..., "a": [elements], "b": [elements]}`
/// object per line, elements written as in layout files. The two layouts of
/// pair `p` get ids `p/a` and `p/b`. Without a vocabulary, any category id is
/// accepted.
pub fn load_pairs(path: impl AsRef<Path>, vocabulary: Option<&Vocabulary>) -> Result<Vec<LayoutPair>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_pairs(BufReader::new(file), path, vocabulary)
}

pub fn parse_pairs(
    reader: impl BufRead,
    origin: impl AsRef<Path>,
    vocabulary: Option<&Vocabulary>,
) -> Result<Vec<LayoutPair>> {
    let origin = origin.as_ref();
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: PairLine = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: origin.to_owned(),
            line: idx + 1,
            message: e.to_string(),
        })?;
        pairs.push(LayoutPair {
            a: Layout::new(format!("{}/a", parsed.id), parsed.a),
            b: Layout::new(format!("{}/b", parsed.id), parsed.b),
            id: parsed.id,
        });
    }
    let inferred;
    let vocabulary = match vocabulary {
        Some(v) => v,
        None => {
            let size = pairs
                .iter()
                .flat_map(|p| p.a.elements.iter().chain(&p.b.elements))
                .map(|e| e.category.index() + 1)
                .max()
                .unwrap_or(0);
            inferred = Vocabulary::numbered(size);
            &inferred
        }
    };
    for p in &pairs {
        validate_layout(&p.a, vocabulary)?;
        validate_layout(&p.b, vocabulary)?;
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BBox, Category, Element};

    fn parse(text: &str, vocab: &[&str]) -> Result<LayoutCollection> {
        parse_collection(text.as_bytes(), "test.jsonl", Vocabulary::new(vocab.iter().copied()))
    }

    #[test]
    fn parses_documented_format() {
        let c = parse(
            r#"{"id":"a","elements":[{"bbox":[0.1,0.1,0.5,0.5],"category":0}]}"#,
            &["text"],
        )
        .unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.layouts[0].id, "a");
        assert_eq!(
            c.layouts[0].elements,
            vec![Element::new(BBox::new(0.1, 0.1, 0.5, 0.5), Category(0))]
        );
    }

    #[test]
    fn inferred_vocabulary_covers_used_ids() {
        let text = r#"{"id":"a","elements":[{"bbox":[0.1,0.1,0.5,0.5],"category":3}]}
{"id":"b","elements":[{"bbox":[0.1,0.1,0.5,0.5],"category":1}]}"#;
        let c = parse_collection_inferred(text.as_bytes(), "t.jsonl").unwrap();
        assert_eq!(c.vocabulary, Vocabulary::numbered(4));
        let bad = r#"{"id":"a","elements":[]}"#;
        assert!(matches!(
            parse_collection_inferred(bad.as_bytes(), "t"),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn pairs_file() {
        let text = r#"{"id":"p0","a":[{"bbox":[0,0,0.5,0.5],"category":0}],"b":[{"bbox":[0.1,0,0.5,0.5],"category":2}]}

{"id":"p1","a":[{"bbox":[0,0,0.5,0.5],"category":1}],"b":[{"bbox":[0,0,0.2,0.5],"category":1}]}"#;
        let pairs = parse_pairs(text.as_bytes(), "p.jsonl", None).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].b.id, "p0/b");
        assert_eq!(pairs[0].b.elements[0].category, Category(2));
        let small = Vocabulary::numbered(2);
        assert!(matches!(
            parse_pairs(text.as_bytes(), "p.jsonl", Some(&small)),
            Err(Error::Validation { layout, .. }) if layout == "p0/b"
        ));
        let broken = r#"{"id":"p0","a":[]}"#;
        assert!(matches!(
            parse_pairs(broken.as_bytes(), "p", None),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn integer_literals_are_accepted() {
        let c = parse(r#"{"id":"a","elements":[{"bbox":[0,0,1,1],"category":0}]}"#, &["text"]).unwrap();
        assert_eq!(c.layouts[0].elements[0].bbox, BBox::new(0.0, 0.0, 1.0, 1.0));
    }

    #[test]
    fn unknown_category_names_the_layout() {
        let err = parse(
            r#"{"id":"a","elements":[{"bbox":[0.1,0.1,0.5,0.5],"category":7}]}"#,
            &["text"],
        )
        .unwrap_err();
        match err {
            Error::Validation { layout, message } => {
                assert_eq!(layout, "a");
                assert!(message.contains("category"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_layout_is_rejected() {
        let err = parse(r#"{"id":"a","elements":[]}"#, &["text"]).unwrap_err();
        assert!(matches!(err, Error::Validation { ref message, .. } if message == "empty layout"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "{\"id\":\"a\",\"elements\":[{\"bbox\":[0,0,1,1],\"category\":0}]}\n\n{oops\n";
        match parse(text, &["text"]).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_canvas_box_is_rejected() {
        let err = parse(
            r#"{"id":"a","elements":[{"bbox":[0.6,0.1,0.5,0.5],"category":0}]}"#,
            &["text"],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn meta_header_only_on_first_line() {
        let ok = "{\"meta\":{\"seed\":1}}\n{\"id\":\"a\",\"elements\":[{\"bbox\":[0,0,1,1],\"category\":0}]}\n";
        assert_eq!(parse(ok, &["t"]).unwrap().len(), 1);
        let bad = "{\"id\":\"a\",\"elements\":[{\"bbox\":[0,0,1,1],\"category\":0}]}\n{\"meta\":{}}\n";
        assert!(matches!(parse(bad, &["t"]), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn write_then_parse_with_meta() {
        let c = parse(
            "{\"id\":\"a\",\"elements\":[{\"bbox\":[0.1,0.2,0.3,0.4],\"category\":1}]}",
            &["x", "y"],
        )
        .unwrap();
        let mut buf = Vec::new();
        write_collection(&mut buf, &c, Some(&serde_json::json!({"seed": 3}))).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("{\"meta\":{\"seed\":3}}\n"));
        let back = parse(&text, &["x", "y"]).unwrap();
        assert_eq!(back, c);
    }
}
