//! The threshold `s*`: below it every square centered in the body has a
//! vertex in the interior.

use std::time::Instant;

use squarepeg::obtuseness::{s_star_search, SStarConfig};
use squarepeg::ConvexBody;

fn main() -> squarepeg::Result<()> {
    let bodies = [
        ("pentagon", ConvexBody::regular_ngon(5, 1.0)?),
        ("heptagon", ConvexBody::regular_ngon(7, 1.0)?),
        ("unit disk", ConvexBody::disk(1.0, 512)?),
        ("ellipse 2x1", ConvexBody::ellipse(2.0, 1.0, 512)?),
        ("square", ConvexBody::regular_ngon(4, 1.0)?),
    ];
    for (name, body) in &bodies {
        let t = Instant::now();
        let r = s_star_search(body, &SStarConfig::default())?;
        println!(
            "{name:<12} s* = {:.6}  at ({:+.4}, {:+.4})  [{} evaluations, {:.0?}]",
            r.s_star,
            r.minimizer.x,
            r.minimizer.y,
            r.evaluations,
            t.elapsed()
        );
    }
    Ok(())
}
