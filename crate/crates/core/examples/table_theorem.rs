//! Level squares: four vertices at equal height on a ground function.

use squarepeg::table::{solve_table, tabletop, HeightField, TableSolverConfig};
use squarepeg::ConvexBody;

fn main() -> squarepeg::Result<()> {
    let disk = ConvexBody::disk(1.0, 512)?;
    let field = tabletop(&disk);
    let cfg = TableSolverConfig::default();
    println!("radial tabletop on the unit disk (expected y = 1 − s/√2 for s < √2)");
    for s in [0.25, 0.5, 1.0, 1.4, 10.0] {
        let ls = solve_table(&field, s, &cfg)?;
        println!(
            "  s = {s:>5}: y = {:.8} (1 − s/√2 = {:+.8}), residual {:.1e}, trivial {}",
            ls.y,
            1.0 - s / std::f64::consts::SQRT_2,
            ls.residual,
            ls.trivial
        );
    }

    let hexagon = ConvexBody::regular_ngon(6, 1.0)?;
    let bumpy = HeightField::from_fn(&hexagon, |p| 1.0 + 0.3 * (3.0 * p.x).sin() * (2.0 * p.y).cos() - p.norm_sq() * 0.5);
    let ls = solve_table(&bumpy, 0.7, &cfg)?;
    println!(
        "bumpy hexagon field, s = 0.7: heights {:.6?}, center ({:+.4}, {:+.4}), rotation {:.4}",
        ls.heights,
        ls.square.center.x,
        ls.square.center.y,
        ls.square.rotation.radians()
    );
    Ok(())
}
