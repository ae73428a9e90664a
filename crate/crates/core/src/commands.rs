//! Report-producing entry points shared by the command line and the browser demo.

use crate::cohomology::expected::expected;
use crate::cohomology::tate_table;
use crate::error::{Error, Result};
use crate::linalg::Zpn;
use crate::report::{Check, Config, LatticeInfo, ReportDocument, Row};
use crate::spec_lang::parse_spec;
use crate::verify::{run_suite, Settings};

impl Config {
    pub fn ring(&self) -> Result<Zpn> {
        Zpn::new(self.p, self.precision)
    }
}

impl Error {
    /// Process exit status: `2` for malformed input, `3` for exhausted precision, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Semantic(_) | Error::InvalidRing(_) | Error::NotHomogeneousPoint(_) => 2,
            Error::PrecisionExhausted { .. } => 3,
            _ => 1,
        }
    }
}

/// Tate cohomology of a described lattice over `from..=to`, with a
/// comparison against the closed form where one exists.
pub fn cohomology_report(config: Config, spec: &str, from: i64, to: i64) -> Result<ReportDocument> {
    if from > to {
        return Err(Error::Semantic(format!("empty degree range {from}..{to}")));
    }
    let ring = config.ring()?;
    let desc = parse_spec(config.p, spec)?;
    let lattice = desc.build(ring)?;
    let mut doc = ReportDocument::new(config);
    doc.lattice = Some(LatticeInfo { spec: desc.to_string(), vector_rank: lattice.vector_rank().to_string() });
    for (n, h) in tate_table(&lattice, from, to)? {
        doc.table.push(Row::new(n, &h));
        if let Ok(want) = expected(&desc, n) {
            doc.checks.push(Check::compare(format!("closed form H^{n}"), &want, &h));
        }
    }
    Ok(doc)
}

pub fn verify_report(config: Config, suite: &str) -> Result<ReportDocument> {
    let settings = Settings { ring: config.ring()?, window: config.window };
    let checks = run_suite(suite, &settings)?;
    let mut doc = ReportDocument::new(config);
    doc.checks = checks;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64) -> Config {
        Config { p, precision: 16, window: (-6, 6) }
    }

    #[test]
    fn a_table_at_three() {
        let doc = cohomology_report(cfg(3), "A", -4, 4).unwrap();
        let dims: Vec<usize> = doc.table.iter().map(|r| r.invariant().dim_mod_p()).collect();
        assert_eq!(dims, [4, 3, 2, 1, 1, 2, 3, 4, 5]);
        assert!(doc.all_passed());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cohomology_report(cfg(2), "B", 0, 1).unwrap_err().exit_code(), 2);
        assert_eq!(cohomology_report(cfg(2), "tube(f=t,n=1)", 0, 1).unwrap_err().exit_code(), 2);
        assert_eq!(Error::PrecisionExhausted { valuation: 13, precision: 16 }.exit_code(), 3);
    }
}
