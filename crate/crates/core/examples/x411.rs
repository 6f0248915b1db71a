//! Relations of the Cox ring of X_411 from its plane model.

use coxsurf::relations::compute_relations;
use coxsurf::Catalog;
use coxsurf_algebra::{Budget, Rational};

fn main() {
    let catalog = Catalog::bundled().expect("bundled catalog");
    let s = catalog.get("X_411").expect("X_411");
    let r = compute_relations::<Rational>(s, Budget::default()).expect("relations");
    println!("kernel of the plane map:");
    for g in &r.kernel {
        println!("  {g}");
    }
    println!("relations, dim {}:", r.dimension);
    for g in &r.generators {
        println!("  {g}");
    }
    for (stage, t) in &r.timings {
        println!("{stage}: {t:?}");
    }
}
