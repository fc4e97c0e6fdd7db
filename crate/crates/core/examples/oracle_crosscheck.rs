//! Compares the tabletop pipeline against brute-force diagonal pairing.

use squarepeg::peg::{inscribe_via_table, oracle_inscribed_squares, square_set_distance, OracleConfig, PipelineConfig};
use squarepeg::ConvexBody;

fn main() -> squarepeg::Result<()> {
    let bodies = [
        ("ellipse 2x1", ConvexBody::ellipse(2.0, 1.0, 512)?),
        ("pentagon", ConvexBody::regular_ngon(5, 1.0)?),
        ("heptagon", ConvexBody::regular_ngon(7, 1.0)?),
        ("square", ConvexBody::regular_ngon(4, 1.0)?),
    ];
    for (name, body) in &bodies {
        let oracle = oracle_inscribed_squares(body, &OracleConfig::default())?;
        print!("{name:<12} oracle: {} squares, largest side {:.6}", oracle.len(), oracle.first().map_or(0.0, |s| s.side));
        match inscribe_via_table(body, &PipelineConfig::default()) {
            Ok(r) => {
                let gap = oracle
                    .iter()
                    .map(|o| square_set_distance(o, &r.square))
                    .fold(f64::INFINITY, f64::min);
                println!("; pipeline side {:.6}, nearest oracle square {:.1e} away", r.square.side, gap);
            }
            Err(e) => println!("; pipeline: {e}"),
        }
    }
    Ok(())
}
