//! Runs a check suite from code and prints the text report.

use busemann_lab::suite::{emit_report, run_suite, Format, ScenarioConfig};

fn main() -> busemann_lab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let cfg = ScenarioConfig::new(name.parse()?).with_seed(7);
    let result = run_suite(&cfg)?;
    print!("{}", emit_report(&result, Format::Text)?);
    println!("took {:.2?}", result.duration);
    Ok(())
}
