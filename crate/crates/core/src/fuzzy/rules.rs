//! Rule tables and their plain-text fixture format.
//!
//! ```text
//! [kp]
//! e/de  NL   NS   ZE   PS   PL
//! NL    PVL  PVL  PVL  PVL  PVL
//! ...
//! ```
//!
//! One section per gain (`kp`, `ki`, `kd`), each a header row followed by
//! five rows in NL..PL order. Blank lines and `#` comments are ignored.

use std::fmt;

use crate::error::{Error, Result};

use super::terms::{InputTerm, OutputTerm};

/// 5×5 grid indexed by (error term, error-change term).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleTable {
    cells: [[OutputTerm; 5]; 5],
}

impl RuleTable {
    pub fn new(cells: [[OutputTerm; 5]; 5]) -> Self {
        RuleTable { cells }
    }

    /// Every cell names the same term.
    pub fn constant(term: OutputTerm) -> Self {
        RuleTable {
            cells: [[term; 5]; 5],
        }
    }

    pub fn get(&self, e: InputTerm, de: InputTerm) -> OutputTerm {
        self.cells[e.index()][de.index()]
    }

    pub fn cells(&self) -> &[[OutputTerm; 5]; 5] {
        &self.cells
    }
}

/// The three tables driving Kp, Ki and Kd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleBase {
    pub kp: RuleTable,
    pub ki: RuleTable,
    pub kd: RuleTable,
}

/// Shipped rule fixture.
pub const DEFAULT_RULES: &str = include_str!("../../fixtures/rules.txt");

impl Default for RuleBase {
    fn default() -> Self {
        RuleBase::parse(DEFAULT_RULES).expect("shipped rule fixture is valid")
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::RuleParse {
        line,
        message: message.into(),
    }
}

impl RuleBase {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: [Option<RuleTable>; 3] = [None, None, None];
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let mut last_line = 0;
        while let Some((n, line)) = lines.next() {
            last_line = n;
            let name = line
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| parse_err(n, format!("expected a section header like [kp], got `{line}`")))?
                .trim();
            let slot = match name {
                "kp" => 0,
                "ki" => 1,
                "kd" => 2,
                other => return Err(parse_err(n, format!("unknown section `{other}`"))),
            };
            if sections[slot].is_some() {
                return Err(parse_err(n, format!("duplicate section `{name}`")));
            }

            let (hn, header) = lines
                .next()
                .ok_or_else(|| parse_err(n, format!("section `{name}` is missing its header row")))?;
            let cols: Vec<&str> = header.split_whitespace().collect();
            let expected: Vec<&str> = std::iter::once("e/de")
                .chain(InputTerm::ALL.iter().map(|t| t.label()))
                .collect();
            if cols != expected {
                return Err(parse_err(hn, format!("header must read `{}`", expected.join(" "))));
            }

            let mut cells = [[OutputTerm::VerySmall; 5]; 5];
            for (r, row_term) in InputTerm::ALL.iter().enumerate() {
                let (rn, row) = lines
                    .next()
                    .ok_or_else(|| parse_err(hn, format!("section `{name}` has fewer than 5 rows")))?;
                last_line = rn;
                let words: Vec<&str> = row.split_whitespace().collect();
                if words.len() != 6 {
                    return Err(parse_err(rn, format!("expected a row label and 5 terms, got {} fields", words.len())));
                }
                if words[0] != row_term.label() {
                    return Err(parse_err(rn, format!("expected row `{}`, got `{}`", row_term, words[0])));
                }
                for (c, w) in words[1..].iter().enumerate() {
                    cells[r][c] = w.parse().map_err(|e| parse_err(rn, format!("{e}")))?;
                }
            }
            sections[slot] = Some(RuleTable::new(cells));
        }

        match sections {
            [Some(kp), Some(ki), Some(kd)] => Ok(RuleBase { kp, ki, kd }),
            _ => Err(parse_err(last_line, "need exactly the sections [kp], [ki] and [kd]")),
        }
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, name: &str, table: &RuleTable) -> fmt::Result {
    writeln!(f, "[{name}]")?;
    write!(f, "{:<5}", "e/de")?;
    for t in InputTerm::ALL {
        write!(f, " {:<4}", t.label())?;
    }
    writeln!(f)?;
    for e in InputTerm::ALL {
        write!(f, "{:<5}", e.label())?;
        for de in InputTerm::ALL {
            write!(f, " {:<4}", table.get(e, de).label())?;
        }
        writeln!(f)?;
    }
    Ok(())
}

impl fmt::Display for RuleBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, "kp", &self.kp)?;
        writeln!(f)?;
        write_table(f, "ki", &self.ki)?;
        writeln!(f)?;
        write_table(f, "kd", &self.kd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use InputTerm::*;
    use OutputTerm::*;

    #[test]
    fn shipped_tables() {
        let rb = RuleBase::default();
        assert_eq!(rb.kp.get(Zero, Zero), Small);
        assert_eq!(rb.ki.get(Zero, Zero), VerySmall);
        assert_eq!(rb.kd.get(Zero, Zero), Large);
        assert_eq!(rb.kp.get(NegLarge, NegLarge), VeryLarge);
        assert_eq!(rb.kp.get(PosLarge, Zero), VeryLarge);
        assert_eq!(rb.kd.get(NegLarge, NegLarge), VerySmall);
        assert_eq!(rb.kd.get(PosSmall, NegLarge), MediumLarge);
        assert_eq!(rb.ki.get(PosLarge, PosSmall), Medium);
    }

    #[test]
    fn kp_ki_rows_mirror_and_kd_does_not() {
        let rb = RuleBase::default();
        for e in InputTerm::ALL {
            for de in InputTerm::ALL {
                assert_eq!(rb.kp.get(e, de), rb.kp.get(e.mirror(), de));
                assert_eq!(rb.ki.get(e, de), rb.ki.get(e.mirror(), de));
            }
        }
        assert_ne!(rb.kd.get(NegLarge, NegLarge), rb.kd.get(PosLarge, NegLarge));
    }

    #[test]
    fn display_parses_back() {
        let rb = RuleBase::default();
        assert_eq!(RuleBase::parse(&rb.to_string()).unwrap(), rb);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let broken = DEFAULT_RULES.replacen("PVL", "XXL", 1);
        match RuleBase::parse(&broken) {
            Err(Error::RuleParse { line, message }) => {
                assert!(message.contains("XXL"));
                assert_eq!(DEFAULT_RULES.lines().nth(line - 1).unwrap().contains("PVL"), true);
            }
            other => panic!("{other:?}"),
        }
        assert!(RuleBase::parse("").is_err());
        assert!(RuleBase::parse("[kp]\ne/de NL NS ZE PS PL\n").is_err());
        let swapped = DEFAULT_RULES.replacen("[kd]", "[kp]", 1);
        assert!(RuleBase::parse(&swapped).is_err());
    }
}
