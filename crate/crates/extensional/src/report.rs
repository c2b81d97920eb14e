//! CSV reports for censuses and verdicts.

use std::io::Write;

use nsp_term::proc_to_sexpr;

use crate::bounds::EnumBounds;
use crate::compare::ComparisonVerdict;

pub struct CensusRow {
    pub ty: String,
    pub bounds: EnumBounds,
    pub count: u128,
    pub note: String,
}

pub fn write_census<W: Write>(out: W, rows: &[CensusRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["type", "bounds", "count", "note"])?;
    for r in rows {
        w.write_record([r.ty.as_str(), &r.bounds.to_string(), &r.count.to_string(), r.note.as_str()])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per verdict: label, bounds, results and the witness arguments.
pub fn write_verdicts<W: Write>(out: W, rows: &[(String, ComparisonVerdict)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pair", "verdict", "bounds", "left", "right", "witness"])?;
    for (name, v) in rows {
        let (bounds, left, right, witness) = match v {
            ComparisonVerdict::Distinguished(x) | ComparisonVerdict::NotLeq(x) => (
                String::new(),
                x.left.to_string(),
                x.right.to_string(),
                x.args.iter().map(proc_to_sexpr).collect::<Vec<_>>().join(" "),
            ),
            ComparisonVerdict::IndistinguishableUpTo(b) | ComparisonVerdict::LeqUpTo(b) => {
                (b.to_string(), String::new(), String::new(), String::new())
            }
        };
        w.write_record([name.as_str(), v.label(), &bounds, &left, &right, &witness])?;
    }
    w.flush()?;
    Ok(())
}
