//! Instance files: one word per line, bytes 33..=126 (printable, no
//! whitespace), newline-terminated. A trailing `\r` is tolerated.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::strings::{reduce_substring_free, Instance, Reduction, Word};

const ALLOWED: std::ops::RangeInclusive<u8> = 33..=126;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses the file format; `path` is only used in error messages.
pub fn parse_instance(text: &[u8], path: &Path) -> Result<Reduction> {
    let mut words = Vec::new();
    let body = text.strip_suffix(b"\n").unwrap_or(text);
    if body.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, line) in body.split(|&b| b == b'\n').enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        let err = |reason: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            reason,
        };
        if line.is_empty() {
            return Err(err("empty line".into()));
        }
        if let Some(&b) = line.iter().find(|b| !ALLOWED.contains(b)) {
            return Err(err(format!("byte 0x{b:02x} is not printable non-space ASCII")));
        }
        words.push(Word::new(line)?);
    }
    reduce_substring_free(words)
}

pub fn load_instance(path: &Path) -> Result<Reduction> {
    let text = fs::read(path).map_err(io_err(path))?;
    parse_instance(&text, path)
}

pub fn format_instance(instance: &Instance) -> Vec<u8> {
    let mut out = Vec::with_capacity(instance.total_len() + instance.len());
    for w in instance.words() {
        out.extend_from_slice(w);
        out.push(b'\n');
    }
    out
}

pub fn save_instance(instance: &Instance, path: &Path) -> Result<()> {
    if let Some(w) = instance.words().iter().find(|w| !w.iter().all(|b| ALLOWED.contains(b))) {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            reason: format!(
                "word `{}` has bytes outside the file alphabet",
                String::from_utf8_lossy(w)
            ),
        });
    }
    fs::write(path, format_instance(instance)).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Reduction> {
        parse_instance(text.as_bytes(), Path::new("t.txt"))
    }

    #[test]
    fn reads_words() {
        let r = parse("ab\ncd\n").unwrap();
        assert_eq!(r.instance, Instance::from_strs(&["ab", "cd"]).unwrap());
        assert_eq!(parse("ab\r\ncd").unwrap().instance.len(), 2);
    }

    #[test]
    fn duplicates_are_reported() {
        let r = parse("ab\nab\nabc\n").unwrap();
        assert_eq!(r.instance.len(), 1);
        assert_eq!(r.dropped().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse("ab\n\ncd\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("a b\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse(""), Err(Error::EmptyInput)));
        assert!(matches!(
            parse_instance(b"ab\n\xff\n", Path::new("x")),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.txt");
        let i = Instance::from_strs(&["abbb", "bbbb", "bbba"]).unwrap();
        save_instance(&i, &path).unwrap();
        assert_eq!(load_instance(&path).unwrap().instance, i);
        assert!(matches!(
            load_instance(&dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
