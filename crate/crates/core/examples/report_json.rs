//! Runs a CLI command in-process and reads fields back from its report.

use clap::Parser;
use squarepeg::cli::{run, Cli, CommandOutput};

fn main() {
    let cli = Cli::parse_from(["squarepeg", "analyze", "--shape", "ngon:5"]);
    let outcome = run(&cli).expect("analysis succeeds");
    if let CommandOutput::Analyze { result, .. } = &outcome.report.run {
        println!("obtuse = {}, s* = {:.6}, diameter = {:.6}", result.obtuse, result.s_star, result.diameter);
    }
    let json = outcome.report.to_json();
    println!("{} bytes of JSON; first lines:", json.len());
    for line in json.lines().take(12) {
        println!("  {line}");
    }
}
