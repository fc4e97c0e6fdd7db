//! Classifies regular polygons and a sampled ellipse as obtuse or not, by
//! sector radii along the boundary and by interior angles.

use squarepeg::obtuseness::{is_obtuse, ObtusenessConfig};
use squarepeg::ConvexBody;

fn main() -> squarepeg::Result<()> {
    let cfg = ObtusenessConfig::default();
    let mut bodies: Vec<(String, ConvexBody)> = (3..=12)
        .map(|n| Ok((format!("{n}-gon"), ConvexBody::regular_ngon(n, 1.0)?)))
        .collect::<squarepeg::Result<_>>()?;
    bodies.push(("ellipse 2x1".into(), ConvexBody::ellipse(2.0, 1.0, 512)?));

    println!("{:<12} {:>7} {:>7} {:>10} {:>12}", "body", "sampled", "angles", "min angle", "worst f");
    for (name, body) in &bodies {
        let r = is_obtuse(body, &cfg)?;
        println!(
            "{:<12} {:>7} {:>7} {:>9.2}° {:>12.6}",
            name,
            r.obtuse,
            r.angle_criterion_obtuse,
            r.min_interior_angle.to_degrees(),
            r.worst_value
        );
    }
    Ok(())
}
