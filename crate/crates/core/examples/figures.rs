//! Writes SVG figures through the CLI front end: a sector certificate, a
//! trivial square, a level square and an inscribed square.
//!
//! Usage: `cargo run --example figures -- [OUT_DIR]` (default `figures/`).

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    let runs: [(&str, &[&str]); 4] = [
        ("obtuse_sector", &["analyze", "--shape", "ngon:6"]),
        ("trivial_square", &["witness", "--shape", "ngon:3", "--auto", "--side", "0.8"]),
        ("level_square", &["table", "--shape", "ellipse:2,1", "--side", "1"]),
        ("inscribed_square", &["inscribe", "--shape", "ellipse:2,1", "--method", "both"]),
    ];
    for (name, args) in runs {
        let svg = dir.join(format!("{name}.svg"));
        let out = dir.join(format!("{name}.json"));
        let mut argv: Vec<String> = vec!["squarepeg".into()];
        argv.extend(args.iter().map(|s| s.to_string()));
        argv.extend(["--svg".into(), svg.display().to_string(), "--out".into(), out.display().to_string()]);
        let code = squarepeg::cli::main_with_args(argv);
        println!("{name}: exit {code}, wrote {}", svg.display());
    }
}
