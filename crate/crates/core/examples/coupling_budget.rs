//! Coupling strength, cooperativity and regime of the bundled double-split
//! design, through both the SI and the table-calibrated pathway.

use nvcavity::parse_spec;
use nvcavity::report::{cmd_report, CouplingInputs};

const SPEC: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/specs/double_split.spec");

fn main() -> nvcavity::Result<()> {
    let inputs = CouplingInputs::from_spec(&parse_spec(SPEC)?)?;
    let out = cmd_report(&inputs)?;
    print!("{}", out.to_text());

    println!("\ndensity scan (exact-si)");
    println!("{:>12} {:>12} {:>12} {:>20}", "rho (m^-3)", "g_c/2pi MHz", "C", "regime");
    for rho in [1e21, 1e22, 1e23, 1e24] {
        let mut scaled = inputs.clone();
        scaled.ensemble.rho = rho;
        let r = cmd_report(&scaled)?.exact;
        println!("{:>12.1e} {:>12.4} {:>12.3} {:>20}", rho, r.g_c_mhz(), r.cooperativity, r.regime);
    }
    Ok(())
}
