//! OFF mesh export. Coordinates are written as decimals, and each vertex
//! line carries its exact value as a `# p/q p/q p/q` comment.

use simplex_cover_core::numeric::{rat_to_decimal, REPORT_DIGITS};
use simplex_cover_core::{Polytope, Vec3};

/// Facet cycles oriented counter-clockwise seen from outside.
fn outward_cycles(poly: &Polytope) -> Vec<Vec<usize>> {
    let vs = poly.vertices();
    poly.facets()
        .iter()
        .zip(poly.facet_vertices())
        .map(|(h, cycle)| {
            let mut cycle = cycle.clone();
            let (a, b, c) = (&vs[cycle[0]], &vs[cycle[1]], &vs[cycle[2]]);
            let n = (b - a).cross(&(c - a));
            if n.dot(h.normal()).is_negative() {
                cycle.reverse();
            }
            cycle
        })
        .collect()
}

fn coord(v: &Vec3) -> String {
    v.coords()
        .iter()
        .map(|c| rat_to_decimal(c, REPORT_DIGITS))
        .collect::<Vec<_>>()
        .join(" ")
}

/// The mesh text for a full-dimensional polytope.
pub fn to_off(poly: &Polytope, name: &str) -> String {
    let cycles = outward_cycles(poly);
    let mut out = String::from("OFF\n");
    out.push_str(&format!("# body {name}\n"));
    out.push_str(&format!(
        "{} {} {}\n",
        poly.vertices().len(),
        cycles.len(),
        poly.edge_count()
    ));
    for v in poly.vertices() {
        out.push_str(&format!("{}  # {} {} {}\n", coord(v), v.x, v.y, v.z));
    }
    for cycle in &cycles {
        let ids: Vec<String> = cycle.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", cycle.len(), ids.join(" ")));
    }
    out
}
