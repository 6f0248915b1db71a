use coxsurf_algebra::poly::Exp;
use coxsurf_algebra::{
    groebner_basis, normal_form, Budget, Cyclotomic3, Field, Ideal, Monomial, MonomialOrder, Poly, PolyRing, Rational,
    RingRef,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic3> {
    (rational(), rational()).prop_map(|(a, b)| Cyclotomic3::new(a, b))
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&a.neg()), F::zero());
    assert_eq!(a.sub(b), a.add(&b.neg()));
    assert_eq!(a.mul(&F::one()), a.clone());
    if !a.is_zero() {
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(b.div(a).unwrap().mul(a), b.clone());
    } else {
        assert!(a.inv().is_err());
    }
}

const NAMES: [&str; 3] = ["x", "y", "z"];

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::GrevLex),
        Just(MonomialOrder::WeightedGrevLex(vec![1, 2, 3])),
        Just(MonomialOrder::Elimination { split: 1, weights: None }),
    ]
}

fn monomial(n: usize, max: Exp) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max, n).prop_map(|e| Monomial::from_exps(&e))
}

fn poly(ring: RingRef, max: Exp, terms: usize) -> impl Strategy<Value = Poly<Rational>> {
    let n = ring.nvars();
    proptest::collection::vec((monomial(n, max), rational()), 0..=terms)
        .prop_map(move |t| Poly::from_terms(&ring, t))
}

fn ring(order: MonomialOrder) -> RingRef {
    PolyRing::new(&NAMES, order)
}

fn s_polynomial(f: &Poly<Rational>, g: &Poly<Rational>) -> Poly<Rational> {
    let (a, b) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = a.lcm(b);
    let ca = f.leading_coefficient().unwrap().inv().unwrap();
    let cb = g.leading_coefficient().unwrap().inv().unwrap();
    f.mul_term(&l.div(a).unwrap(), &ca).sub(&g.mul_term(&l.div(b).unwrap(), &cb))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field(a in rational(), b in rational(), c in rational()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn cyclotomic_field(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        field_axioms(&a, &b, &c);
        let e = Cyclotomic3::e();
        prop_assert_eq!(e.mul(&e).add(&e).add(&Cyclotomic3::one()), Cyclotomic3::zero());
        prop_assert_eq!(a.mul(&b).norm(), a.norm().mul(&b.norm()));
    }

    #[test]
    fn order_is_multiplicative(order in orders(), a in monomial(3, 4), b in monomial(3, 4), c in monomial(3, 4)) {
        let r = ring(order);
        let one = Monomial::one(3);
        prop_assert_ne!(r.cmp(&a, &one), std::cmp::Ordering::Less);
        prop_assert_eq!(r.cmp(&a, &b), r.cmp(&a.mul(&c), &b.mul(&c)));
        prop_assert_eq!(r.cmp(&a, &b), r.cmp(&b, &a).reverse());
    }

    #[test]
    fn polynomial_ring(
        (a, b, c) in (poly(ring(MonomialOrder::GrevLex), 3, 4), poly(ring(MonomialOrder::GrevLex), 3, 4), poly(ring(MonomialOrder::GrevLex), 3, 4))
    ) {
        let r = ring(MonomialOrder::GrevLex);
        let (a, b, c) = (a.to_ring(&r), b.to_ring(&r), c.to_ring(&r));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if let (Some(x), Some(y)) = (a.total_degree(), b.total_degree()) {
            prop_assert_eq!(a.mul(&b).total_degree(), Some(x + y));
        }
        prop_assert_eq!(Poly::parse(&r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in poly(ring(MonomialOrder::GrevLex), 2, 3),
        b in poly(ring(MonomialOrder::GrevLex), 2, 3),
        images in proptest::collection::vec(poly(PolyRing::new(&["u", "v"], MonomialOrder::Lex), 2, 2), 3),
    ) {
        let dst = images[0].ring().clone();
        let src = ring(MonomialOrder::GrevLex);
        let (a, b) = (a.to_ring(&src), b.to_ring(&src));
        let images: Vec<_> = images.iter().map(|p| p.to_ring(&dst)).collect();
        let phi = |p: &Poly<Rational>| p.substitute(&dst, &images).unwrap();
        prop_assert_eq!(phi(&a.mul(&b)), phi(&a).mul(&phi(&b)));
        prop_assert_eq!(phi(&a.add(&b)), phi(&a).add(&phi(&b)));
        prop_assert_eq!(phi(&Poly::one(&src)), Poly::one(&dst));
    }

    #[test]
    fn groebner_bases_are_s_closed(
        order in orders(),
        gens in proptest::collection::vec(poly(ring(MonomialOrder::GrevLex), 2, 3), 1..=3),
    ) {
        let r = ring(order);
        let gens: Vec<_> = gens.iter().map(|g| g.to_ring(&r)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner_basis(&gens, Budget::default()).unwrap();
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let s = s_polynomial(&gb[i], &gb[j]);
                prop_assert!(normal_form(&s, &gb, Budget::default()).unwrap().is_zero());
            }
        }
        for g in &gens {
            prop_assert!(normal_form(g, &gb, Budget::default()).unwrap().is_zero());
        }
    }

    #[test]
    fn saturation_is_idempotent(gens in proptest::collection::vec(poly(ring(MonomialOrder::GrevLex), 2, 3), 1..=2), v in 0usize..3) {
        let r = ring(MonomialOrder::GrevLex);
        let gens: Vec<_> = gens.iter().map(|g| g.to_ring(&r)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let x = Poly::var(&r, v);
        let i = Ideal::new(&r, gens).unwrap();
        let once = i.saturate(&x, Budget::default()).unwrap();
        let twice = once.saturate(&x, Budget::default()).unwrap();
        prop_assert!(once.equals(&twice, Budget::default()).unwrap());
        prop_assert!(once.contains_ideal(&i, Budget::default()).unwrap());
    }
}
