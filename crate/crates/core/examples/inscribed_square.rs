//! Inscribed squares through the tabletop: solve for a level square below
//! the nontriviality threshold, then scale it out to the boundary.

use squarepeg::peg::{inscribe_via_table, verify_inscribed, PipelineConfig};
use squarepeg::ConvexBody;

fn main() -> squarepeg::Result<()> {
    let bodies = [
        ("unit disk", ConvexBody::disk(1.0, 512)?),
        ("ellipse 2x1", ConvexBody::ellipse(2.0, 1.0, 512)?),
        ("pentagon", ConvexBody::regular_ngon(5, 1.0)?),
        ("tilted hexagon", ConvexBody::regular_ngon(6, 1.0)?.rotated(0.2).translated(squarepeg::Point2::new(3.0, -1.0))),
    ];
    for (name, body) in &bodies {
        let r = inscribe_via_table(body, &PipelineConfig::default())?;
        let t = r.trace.expect("pipeline results carry a trace");
        let check = verify_inscribed(body, &r.square, 1e-6);
        println!(
            "{name:<14} s* = {:.5}, d = {:.5}, y = {:.5} → side {:.6}, max distance {:.1e}, verified {}",
            t.s_star_used, t.d_used, t.y, r.square.side, r.max_boundary_distance, check.pass
        );
    }
    Ok(())
}
