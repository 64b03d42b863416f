//! Single-column data files: one value per line, `#` comments, optional
//! `x` header.

use std::path::Path;

use mmle::{SampleBatch, Support};

use crate::exit::{CliError, DEGENERATE, DOMAIN};

#[derive(Debug, Clone, PartialEq)]
pub struct DataPoint {
    pub line: usize,
    pub value: f64,
}

pub fn parse_values(text: &str) -> Result<Vec<DataPoint>, CliError> {
    let mut out = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let field = raw.trim().trim_end_matches(',').trim();
        if field.is_empty() || field.starts_with('#') {
            continue;
        }
        if !seen_data && field.eq_ignore_ascii_case("x") {
            seen_data = true;
            continue;
        }
        seen_data = true;
        let value: f64 = field
            .parse()
            .map_err(|_| CliError::usage(format!("line {line}: cannot parse {field:?} as a number")))?;
        out.push(DataPoint { line, value });
    }
    Ok(out)
}

/// Reads `path` and checks every value against `support`.
pub fn read_sample(path: &Path, support: Support) -> Result<SampleBatch<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let points = parse_values(&text)?;
    if let Some(bad) = points.iter().find(|p| !support.contains(p.value)) {
        return Err(CliError {
            code: DOMAIN,
            message: format!("line {}: value {} is outside the support {}", bad.line, bad.value, support.name()),
        });
    }
    if points.is_empty() {
        return Err(CliError { code: DEGENERATE, message: format!("{}: no data values", path.display()) });
    }
    Ok(SampleBatch::new(points.into_iter().map(|p| p.value).collect(), support)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_header_and_blank_lines() {
        let pts = parse_values("# data\nx\n1.5\n\n  2.0  \n# tail\n3e-1,\n").unwrap();
        assert_eq!(pts, vec![
            DataPoint { line: 3, value: 1.5 },
            DataPoint { line: 5, value: 2.0 },
            DataPoint { line: 7, value: 0.3 },
        ]);
    }

    #[test]
    fn header_only_at_the_top() {
        let err = parse_values("1.0\nx\n").unwrap_err();
        assert_eq!(err.code, crate::exit::USAGE);
        assert!(err.message.starts_with("line 2:"), "{}", err.message);
    }

    #[test]
    fn support_violation_names_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "1.0\n# c\n-2.0\n").unwrap();
        let err = read_sample(&path, Support::Positive).unwrap_err();
        assert_eq!(err.code, DOMAIN);
        assert!(err.message.contains("line 3"), "{}", err.message);
        std::fs::write(&path, "0.5\n1.0\n").unwrap();
        assert_eq!(read_sample(&path, Support::UnitInterval).unwrap_err().code, DOMAIN);
        std::fs::write(&path, "# nothing\n").unwrap();
        assert_eq!(read_sample(&path, Support::Positive).unwrap_err().code, DEGENERATE);
        std::fs::write(&path, "inf\n").unwrap();
        assert_eq!(read_sample(&path, Support::Positive).unwrap_err().code, DOMAIN);
    }
}
