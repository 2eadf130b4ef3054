//! Recomputes the bundled design table from its calibration row.

use nvcavity::table::{builtin_table, cmd_table1, Tolerances, DEFAULT_REFERENCE};

fn main() -> nvcavity::Result<()> {
    let report = cmd_table1(&builtin_table(), DEFAULT_REFERENCE, Tolerances::default())?;
    print!("{}", report.to_text());
    Ok(())
}
