use coxsurf::catalog::{validate_surface, Catalog, FiberType, Incidence};
use coxsurf::DivisorClass;

#[test]
fn every_surface_validates() {
    let cat = Catalog::bundled().unwrap();
    for s in cat.surfaces() {
        let r = validate_surface(s);
        assert!(r.passed(), "{}: {:?}", s.name, r.failures());
    }
}

#[test]
fn euler_numbers_sum_to_twelve() {
    let cat = Catalog::bundled().unwrap();
    for s in cat.surfaces() {
        let e: u32 = s.fibers.iter().map(FiberType::euler_number).sum();
        assert_eq!(e, 12, "{}", s.name);
    }
}

#[test]
fn curve_counts() {
    let cat = Catalog::bundled().unwrap();
    let x = cat.get("X_6321").unwrap();
    assert_eq!(x.components().count(), 11);
    assert_eq!(x.sections().count(), 6);
    let x = cat.get("X_411").unwrap();
    assert_eq!(x.curves.len(), 11);
}

#[test]
fn sections_are_minus_one_curves() {
    let cat = Catalog::bundled().unwrap();
    let k = DivisorClass::canonical();
    for s in cat.surfaces() {
        for p in s.sections() {
            assert_eq!(p.class.square(), -1);
            assert_eq!(p.class.dot(&k), -1);
        }
    }
}

#[test]
fn injected_intersection_is_caught() {
    let cat = Catalog::bundled().unwrap();
    let mut x = cat.get("X_411").unwrap().clone();
    let p0 = x.class_of("P0").unwrap();
    let idx = x.curves.iter().position(|c| c.label == "P1").unwrap();
    x.curves[idx].class = -p0;
    assert_eq!(x.class_of("P1").unwrap().dot(&p0), 1);
    let r = validate_surface(&x);
    assert!(!r.passed());
    let disjoint = r.checks.iter().find(|c| c.name == "sections-disjoint").unwrap();
    assert!(!disjoint.passed());

    let mut y = cat.get("X_411").unwrap().clone();
    y.table3.push(Incidence { section: "P0".into(), component: "Th8.1".into(), value: 1 });
    assert!(!validate_surface(&y).passed());
}

#[test]
fn corrupted_data_directory() {
    let dir = std::env::temp_dir().join(format!("coxsurf-corrupt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for e in std::fs::read_dir(&src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
    let path = dir.join("X_44.surf");
    let text = std::fs::read_to_string(&path).unwrap().replace("Th0.1 : [", "Th0.1 : [1,");
    std::fs::write(&path, text).unwrap();
    assert!(Catalog::from_dir(&dir).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}
