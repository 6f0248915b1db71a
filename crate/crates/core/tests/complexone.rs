use coxsurf::complexone::{check_graph, complexity_one_presentation, hj_eval_ints, ow_graph, HjValue, COMPLEXITY_ONE};
use coxsurf::generators::{degree_matrix, match_reference_matrix, minimal_generators, reference_matrix, Basis};
use coxsurf::Catalog;
use coxsurf_algebra::{Budget, Rational};

#[test]
fn graphs_agree_with_catalog() {
    let c = Catalog::bundled().unwrap();
    for name in COMPLEXITY_ONE {
        let g = ow_graph(name).unwrap();
        let s = c.get(name).unwrap();
        let problems = check_graph(&g, s);
        assert!(problems.is_empty(), "{name}: {problems:?}");
        for arm in g.arm_fractions() {
            assert_eq!(hj_eval_ints(&arm), Some(HjValue::Value(Rational::from(0))));
        }
    }
}

#[test]
fn presentations() {
    let c = Catalog::bundled().unwrap();
    let expect = [("X_22", 13), ("X_33", 13), ("X_44", 13), ("X_11(a)", 14)];
    for (name, vars) in expect {
        let rels = ow_graph(name).unwrap().arms.len() - 2;
        let s = c.get(name).unwrap();
        let p = complexity_one_presentation::<Rational>(s).unwrap();
        assert_eq!(p.variables().len(), vars, "{name}");
        assert_eq!(p.relations.len(), rels, "{name}");
        assert!(p.is_homogeneous());
        assert_eq!(p.krull_dimension(Budget::default()).unwrap(), 12, "{name}");
        let gens = minimal_generators(s).unwrap();
        let m = degree_matrix(&gens, Basis::E).unwrap();
        assert!(match_reference_matrix(&m, &reference_matrix(s)).is_ok(), "{name}");
    }
    let p = complexity_one_presentation::<Rational>(c.get("X_11(a)").unwrap()).unwrap();
    let d = p.relation_degrees();
    assert!(d[0].is_some());
    assert_eq!(d[0], d[1]);
    assert!(complexity_one_presentation::<Rational>(c.get("X_411").unwrap()).is_err());
}
