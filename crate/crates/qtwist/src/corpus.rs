//! Curve corpus files: `label,a1,a2,a3,a4,a6[,conductor[,analytic_rank]]`,
//! one curve per line, `#` starting a comment line.

use std::collections::HashSet;
use std::path::Path;

use num_bigint::BigInt;
use qtwist_core::curves::WeierstrassModel;
use qtwist_core::localred::conductor;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: u64,
        message: String,
    },
    #[error("{source_name}:{line}: curve {label} is singular")]
    Singular {
        source_name: String,
        line: u64,
        label: String,
    },
    #[error("{source_name}:{line}: curve {label} has conductor {computed}, file says {stated}")]
    ConductorMismatch {
        source_name: String,
        line: u64,
        label: String,
        stated: BigInt,
        computed: BigInt,
    },
    #[error("{source_name}:{line}: duplicate label {label}")]
    Duplicate {
        source_name: String,
        line: u64,
        label: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub label: String,
    pub curve: WeierstrassModel,
    /// The computed conductor (equal to the stated one when given).
    pub conductor: BigInt,
    pub analytic_rank: Option<u32>,
    /// `file:line` the record came from.
    pub source: String,
}

/// Reads and validates a corpus file.
pub fn ingest_corpus(path: &Path) -> Result<Vec<CurveRecord>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text, &path.display().to_string())
}

/// Parses corpus text; `source_name` is used in diagnostics.
pub fn parse_corpus(text: &str, source_name: &str) -> Result<Vec<CurveRecord>, CorpusError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, raw) in (1u64..).zip(text.lines()) {
        if raw.trim_start().starts_with('#') || raw.trim().is_empty() {
            continue;
        }
        let row = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(raw.as_bytes())
            .records()
            .next()
            .unwrap_or_else(|| Ok(csv::StringRecord::new()))
            .map_err(|e| CorpusError::Parse {
                source_name: source_name.into(),
                line,
                message: e.to_string(),
            })?;
        let parse_err = |message: String| CorpusError::Parse {
            source_name: source_name.into(),
            line,
            message,
        };
        if row.iter().all(str::is_empty) {
            continue;
        }
        if !(6..=8).contains(&row.len()) {
            return Err(parse_err(format!(
                "expected 6 to 8 fields, found {}",
                row.len()
            )));
        }
        let label = row[0].to_string();
        if label.is_empty() {
            return Err(parse_err("empty label".into()));
        }
        let int = |i: usize| {
            row[i]
                .parse::<BigInt>()
                .map_err(|_| parse_err(format!("field {}: {:?} is not an integer", i + 1, &row[i])))
        };
        let a = [int(1)?, int(2)?, int(3)?, int(4)?, int(5)?];
        let curve = WeierstrassModel::from_array(a).map_err(|_| CorpusError::Singular {
            source_name: source_name.into(),
            line,
            label: label.clone(),
        })?;
        let computed = conductor(&curve).map_err(|e| parse_err(e.to_string()))?;
        if let Some(stated) = row.get(6).filter(|s| !s.is_empty()) {
            let stated = stated
                .parse::<BigInt>()
                .map_err(|_| parse_err(format!("bad conductor {stated:?}")))?;
            if stated != computed {
                return Err(CorpusError::ConductorMismatch {
                    source_name: source_name.into(),
                    line,
                    label,
                    stated,
                    computed,
                });
            }
        }
        let analytic_rank = match row.get(7).filter(|s| !s.is_empty()) {
            Some(r) => Some(
                r.parse::<u32>()
                    .map_err(|_| parse_err(format!("bad analytic rank {r:?}")))?,
            ),
            None => None,
        };
        if !seen.insert(label.clone()) {
            return Err(CorpusError::Duplicate {
                source_name: source_name.into(),
                line,
                label,
            });
        }
        out.push(CurveRecord {
            label,
            curve,
            conductor: computed,
            analytic_rank,
            source: format!("{source_name}:{line}"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_record() {
        let recs = parse_corpus("# comment\n\n11a1,0,-1,1,-10,-20,11,0\n", "t").unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].label, "11a1");
        assert_eq!(recs[0].conductor, BigInt::from(11));
        assert_eq!(recs[0].analytic_rank, Some(0));
        assert_eq!(recs[0].source, "t:3");
    }

    #[test]
    fn optional_columns() {
        let recs = parse_corpus("37a1,0,0,1,-1,0\n", "t").unwrap();
        assert_eq!(recs[0].conductor, BigInt::from(37));
        assert_eq!(recs[0].analytic_rank, None);
        assert!(parse_corpus("", "t").unwrap().is_empty());
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_corpus("x,0,0,0,0,0\n", "t"),
            Err(CorpusError::Singular { line: 1, .. })
        ));
        assert!(matches!(
            parse_corpus("11a1,0,-1,1,-10,-20,12\n", "t"),
            Err(CorpusError::ConductorMismatch { .. })
        ));
        assert!(matches!(
            parse_corpus("a,0,-1,1,-10,-20\na,0,0,1,-1,0\n", "t"),
            Err(CorpusError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            parse_corpus("a,0,1\n", "t"),
            Err(CorpusError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_corpus("a,0,x,1,-10,-20\n", "t"),
            Err(CorpusError::Parse { .. })
        ));
    }
}
