use coxsurf::relations::{compute_relations, reference_homogeneity, Certificate, SectionMap, COX_DIMENSION};
use coxsurf::Catalog;
use coxsurf_algebra::{Budget, Ideal, Poly, Rational};

#[test]
fn x411_pipeline() {
    let c = Catalog::bundled().unwrap();
    let s = c.get("X_411").unwrap();
    let r = compute_relations::<Rational>(s, Budget::default()).unwrap();
    eprintln!("{:?}", r.timings);
    // the kernel of the plane map
    let t = r.kernel[0].ring().clone();
    let want: Vec<Poly<Rational>> = ["T1*T2 + T3^2 - T4", "T1*T4 + T2^3 - T6", "T1*T3^2 + T2^3 - T5"]
        .iter()
        .map(|x| Poly::parse(&t, x).unwrap())
        .collect();
    let a = Ideal::new(&t, r.kernel.clone()).unwrap();
    let b = Ideal::new(&t, want).unwrap();
    assert!(a.equals(&b, Budget::default()).unwrap());
    assert_eq!(r.dimension, COX_DIMENSION);
    assert_eq!(r.certificate, Certificate::EqualsCoxIdeal);
    assert_eq!(r.generators.len(), 5);
    let rels = s.reference_relations::<Rational>(&r.ring).unwrap();
    let computed = Ideal::new(&r.ring, r.generators.clone()).unwrap();
    let reference = Ideal::new(&r.ring, rels).unwrap();
    assert!(computed.equals(&reference, Budget::default()).unwrap());
}

#[test]
fn reference_relations_are_homogeneous() {
    let c = Catalog::bundled().unwrap();
    for s in c.surfaces() {
        if s.name == "X_3333" {
            assert!(reference_homogeneity::<coxsurf_algebra::Cyclotomic3>(s).unwrap());
        } else {
            assert!(reference_homogeneity::<Rational>(s).unwrap(), "{}", s.name);
        }
    }
}

const COMPUTABLE: [&str; 12] =
    ["X_22", "X_211", "X_411", "X_33", "X_321", "X_44", "X_431", "X_222", "X_141", "X_6321", "X_11(a)", "X_5511"];

#[test]
fn computed_ideal_equals_reference() {
    let c = Catalog::bundled().unwrap();
    for name in COMPUTABLE {
        let s = c.get(name).unwrap();
        let r = compute_relations::<Rational>(s, Budget::default()).unwrap();
        assert_eq!(r.dimension, COX_DIMENSION, "{name}");
        let rels = s.reference_relations::<Rational>(&r.ring).unwrap();
        assert_eq!(r.generators.len(), rels.len(), "{name}");
        let computed = Ideal::new(&r.ring, r.generators.clone()).unwrap();
        let reference = Ideal::new(&r.ring, rels).unwrap();
        assert!(computed.equals(&reference, Budget::default()).unwrap(), "{name}");
    }
}

#[test]
fn plane_map_kills_kernel_and_dehomogenized_relations() {
    let c = Catalog::bundled().unwrap();
    for name in ["X_411", "X_222", "X_141", "X_5511"] {
        let s = c.get(name).unwrap();
        let map = SectionMap::<Rational>::from_surface(s).unwrap();
        let r = compute_relations::<Rational>(s, Budget::default()).unwrap();
        for g in &r.kernel {
            assert!(g.substitute(map.images[0].ring(), &map.images).unwrap().is_zero());
        }
        // T_i -> s_i and S_j -> 1
        let plane = map.images[0].ring().clone();
        let mut images = vec![Poly::one(&plane); r.ring.nvars()];
        for (k, &i) in map.vars.iter().enumerate() {
            images[i] = map.images[k].clone();
        }
        for g in &r.generators {
            assert!(g.substitute(&plane, &images).unwrap().is_zero(), "{name} {g}");
        }
        for g in &r.rehomogenized {
            assert!(g.is_homogeneous(&s.reference_degrees()), "{name}");
        }
    }
}
