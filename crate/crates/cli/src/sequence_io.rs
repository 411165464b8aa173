//! Plain-text coin sequences: one line per step, `t q theta phi`.

use std::path::Path;

use qwalk_core::{CoinParams, CoinSequence};

use crate::error::{CliError, Result};
use crate::format::fmt_g17;

pub fn sequence_to_text(seq: &CoinSequence) -> String {
    seq.coins
        .iter()
        .enumerate()
        .map(|(i, c)| {
            format!(
                "{} {} {} {}\n",
                i + 1,
                fmt_g17(c.q),
                fmt_g17(c.theta),
                fmt_g17(c.phi)
            )
        })
        .collect()
}

/// Parses a sequence. Blank lines and `#` comments are skipped; steps must
/// be numbered `1, 2, 3, …` in order.
pub fn sequence_from_text(text: &str, origin: &Path) -> Result<CoinSequence> {
    let err = |line: usize, msg: String| CliError::Parse {
        path: origin.to_path_buf(),
        line,
        msg,
    };
    let mut coins = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(err(
                line_no,
                format!("expected 4 fields 't q theta phi', found {}", fields.len()),
            ));
        }
        let t: usize = fields[0]
            .parse()
            .map_err(|_| err(line_no, format!("invalid step index '{}'", fields[0])))?;
        if t != coins.len() + 1 {
            return Err(err(
                line_no,
                format!("expected step {}, found {t}", coins.len() + 1),
            ));
        }
        let mut vals = [0.0; 3];
        for (v, f) in vals.iter_mut().zip(&fields[1..]) {
            *v = f
                .parse()
                .map_err(|_| err(line_no, format!("invalid number '{f}'")))?;
        }
        let coin = CoinParams::new(vals[0], vals[1], vals[2]);
        coin.validate().map_err(|e| err(line_no, e.to_string()))?;
        coins.push(coin);
    }
    Ok(CoinSequence::from_coins(coins)?)
}

pub fn export_sequence(seq: &CoinSequence, path: &Path) -> Result<()> {
    std::fs::write(path, sequence_to_text(seq)).map_err(|e| CliError::io(path, e))
}

pub fn import_sequence(path: &Path) -> Result<CoinSequence> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    sequence_from_text(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::{generate_sequence, hadamard, CoinSchedule};

    #[test]
    fn hadamard_lines() {
        let seq = generate_sequence(&CoinSchedule::Ordered(hadamard()), 3, 0).unwrap();
        assert_eq!(sequence_to_text(&seq), "1 0.5 0 0\n2 0.5 0 0\n3 0.5 0 0\n");
    }

    #[test]
    fn su2_round_trip_bitwise() {
        let seq = generate_sequence(&CoinSchedule::SddInf, 1000, 42).unwrap();
        let back = sequence_from_text(&sequence_to_text(&seq), Path::new("mem")).unwrap();
        assert_eq!(back.coins.len(), 1000);
        for (a, b) in seq.coins.iter().zip(&back.coins) {
            assert_eq!(a.q.to_bits(), b.q.to_bits());
            assert_eq!(a.theta.to_bits(), b.theta.to_bits());
            assert_eq!(a.phi.to_bits(), b.phi.to_bits());
        }
    }

    #[test]
    fn malformed_lines_report_position() {
        let cases = [
            ("1 0.5 0 0\n2 0.5 0\n", 2),
            ("1 0.5 0 0\n\n# c\n3 0.5 0 0\n", 4),
            ("1 half 0 0\n", 1),
            ("1 1.5 0 0\n", 1),
        ];
        for (text, want) in cases {
            match sequence_from_text(text, Path::new("s.txt")) {
                Err(CliError::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("unexpected {other:?} for {text:?}"),
            }
        }
    }
}
