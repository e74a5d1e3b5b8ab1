//! Structural invariants of subdivisions, transports and the intersection
//! pipelines, on deterministic instances.

use logchow::blowup::{
    common_refinement, resolve, star_subdivision, Subdivision, ToricMorphism,
};
use logchow::chow::{
    cup, divisor_cap, gysin_subdivision, is_rationally_equivalent, pushforward_subdivision,
    strict_gysin_orbit, weight_of_cycle, CycleRep, MinkowskiWeight, PLFunction,
};
use logchow::fan::{fan_a1_cone, fan_a2, fan_p1, fan_p1xp1, fan_p2, Cone, Fan};
use logchow::lattice::{int_vec, Int, IntMatrix};
use logchow::logchow::{
    act, equals, external_product, log_flat_pullback, log_pushforward, polytope_class, transport,
    LatticePolytope, LogCycleClass, PolytopeClass,
};
use num_traits::One;

fn ray_idx(f: &Fan, v: &[i64]) -> usize {
    f.find_cone(&Cone::from_generators(f.ambient_rank(), &[int_vec(v)]).unwrap())
        .unwrap()
}

#[test]
fn subdivisions_preserve_support_conewise() {
    // Each source cone is inside its carrier, and each maximal target cone
    // is covered (already enforced by construction, re-checked here).
    let fans = [fan_p2(), fan_p1xp1(), fan_a2()];
    for f in fans {
        let s = star_subdivision(&f, &int_vec(&[1, 1])).unwrap();
        for (i, &t) in s.cone_map().iter().enumerate() {
            assert!(s.target().cone(t).contains_cone(s.source().cone(i)));
        }
        let b = logchow::blowup::barycentric(&f).unwrap();
        assert_eq!(b.target(), &f);
        assert!(b.source().is_simplicial());
    }
}

#[test]
fn resolution_of_3d_cones() {
    // The quadric cone (multiplicity 2) and a non-simplicial cone over a
    // square both resolve to locally free fans.
    let quadric = Fan::from_cones(
        3,
        &[vec![int_vec(&[1, 1, 0]), int_vec(&[0, 1, 1]), int_vec(&[1, 0, 1])]],
    )
    .unwrap();
    let s = resolve(&quadric).unwrap();
    assert!(s.source().is_locally_free());
    assert!(resolve(s.source()).unwrap().is_identity());

    let over_square = Fan::from_cones(
        3,
        &[vec![
            int_vec(&[1, 0, 1]),
            int_vec(&[0, 1, 1]),
            int_vec(&[-1, 0, 1]),
            int_vec(&[0, -1, 1]),
        ]],
    )
    .unwrap();
    let s = resolve(&over_square).unwrap();
    assert!(s.source().is_locally_free());
    assert_eq!(s.target(), &over_square);
}

#[test]
fn common_refinement_commutative_and_universal() {
    let f = fan_p2();
    let s1 = star_subdivision(&f, &int_vec(&[1, 1])).unwrap();
    let s2 = star_subdivision(&f, &int_vec(&[-1, 0])).unwrap();
    let (cr12, _, _) = common_refinement(&s1, &s2).unwrap();
    let (cr21, _, _) = common_refinement(&s2, &s1).unwrap();
    assert_eq!(cr12, cr21);

    // Any further common refinement factors through it at the level of cone
    // containment.
    let s3 = star_subdivision(&cr12, &int_vec(&[2, 1])).unwrap();
    let finer = s3.source();
    for i in 0..finer.num_cones() {
        let c = finer.cone(i);
        assert!(
            (0..cr12.num_cones()).any(|j| cr12.cone(j).contains_cone(c)),
            "finer cone not contained in the common refinement"
        );
    }
}

#[test]
fn integralize_adds_the_minimal_ray() {
    // (a,b) -> a-b on the plane cone needs exactly the diagonal ray; the
    // unrefined source is not compatible.
    let m = ToricMorphism::new(
        IntMatrix::from_rows(2, &[int_vec(&[1, -1])]),
        fan_a2(),
        fan_p1(),
    )
    .unwrap();
    assert!(!m.is_compatible());
    let s = m.integralize().unwrap();
    let added: Vec<_> = s
        .source()
        .rays()
        .iter()
        .filter(|r| !fan_a2().rays().contains(r))
        .cloned()
        .collect();
    assert_eq!(added, vec![int_vec(&[1, 1])]);
    let refined = ToricMorphism::new(
        m.lattice_map.clone(),
        s.source().clone(),
        fan_p1(),
    )
    .unwrap();
    assert!(refined.is_compatible());
}

#[test]
fn equals_is_an_equivalence_relation() {
    let p2 = fan_p2();
    let a = LogCycleClass::new(
        Subdivision::identity(p2.clone()),
        CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[1, 0]), Int::one())]).unwrap(),
    )
    .unwrap();
    // b and c are transports of a to deeper levels.
    let s1 = star_subdivision(&p2, &int_vec(&[1, 1])).unwrap();
    let b = transport(&a, &s1).unwrap();
    let s2 = star_subdivision(s1.source(), &int_vec(&[1, 2])).unwrap();
    let c = transport(&b, &s2).unwrap();

    assert!(equals(&a, &a).unwrap());
    assert!(equals(&a, &b).unwrap() && equals(&b, &a).unwrap());
    assert!(equals(&b, &c).unwrap());
    assert!(equals(&a, &c).unwrap());
}

#[test]
fn strict_gysin_commutes_with_subdivision_gysin() {
    // Cartesian square of a subdivision against an orbit inclusion: pull
    // back then restrict, or restrict then pull back along the star-level
    // subdivision.
    for (base, blowpt, sigma_ray) in [
        (fan_p2(), vec![1i64, 1], vec![1i64, 0]),
        (fan_p2(), vec![-1, 0], vec![0, 1]),
        (fan_p1xp1(), vec![1, 1], vec![1, 0]),
        (fan_p1xp1(), vec![-1, 1], vec![0, -1]),
    ] {
        let s = star_subdivision(&base, &int_vec(&blowpt)).unwrap();
        let sigma = ray_idx(&base, &sigma_ray);
        let sigma_fine = ray_idx(s.source(), &sigma_ray);
        let star_coarse = base.star(sigma).unwrap();
        let star_fine = s.source().star(sigma_fine).unwrap();
        let star_sub = Subdivision::between(star_fine, star_coarse).unwrap();

        for class in [
            CycleRep::fundamental(base.clone()),
            CycleRep::new(base.clone(), 1, [(ray_idx(&base, &sigma_ray), Int::one())]).unwrap(),
            CycleRep::new(
                base.clone(),
                1,
                base.cones_of_dim(1).into_iter().map(|i| (i, Int::from(2))),
            )
            .unwrap(),
        ] {
            let route1 =
                strict_gysin_orbit(s.source(), sigma_fine, &gysin_subdivision(&s, &class).unwrap())
                    .unwrap();
            let route2 =
                gysin_subdivision(&star_sub, &strict_gysin_orbit(&base, sigma, &class).unwrap())
                    .unwrap();
            assert!(
                is_rationally_equivalent(&route1, &route2).unwrap(),
                "square does not commute for {:?}",
                class
            );
        }
    }
}

#[test]
fn pushforward_functorial_on_composable_morphisms() {
    // Project the product to one factor, then collapse to a point; the
    // composite pushforward of a point class matches.
    let pp = fan_p1xp1();
    let p1 = fan_p1();
    let pt_fan = Fan::zero(0);
    let m1 = ToricMorphism::new(
        IntMatrix::from_rows(2, &[int_vec(&[1, 0])]),
        pp.clone(),
        p1.clone(),
    )
    .unwrap();
    let m2 = ToricMorphism::new(IntMatrix::new(0, 1, vec![]), p1.clone(), pt_fan.clone())
        .unwrap();
    let m12 = ToricMorphism::new(IntMatrix::new(0, 2, vec![]), pp.clone(), pt_fan.clone())
        .unwrap();

    let corner = pp
        .find_cone(&Cone::from_generators(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap())
        .unwrap();
    let a = LogCycleClass::new(
        Subdivision::identity(pp.clone()),
        CycleRep::new(pp.clone(), 0, [(corner, Int::from(3))]).unwrap(),
    )
    .unwrap();
    let staged = log_pushforward(&m2, &log_pushforward(&m1, &a).unwrap()).unwrap();
    let direct = log_pushforward(&m12, &a).unwrap();
    assert!(equals(&staged, &direct).unwrap());
    assert_eq!(staged.cycle().to_vector(), vec![Int::from(3)]);
}

#[test]
fn pushforward_commutes_with_flat_pullback_in_squares() {
    // Cartesian square in lattices (a, b, c): W = P1^3 over Y = P1 through
    // X = P1_a x P1_b (proper projection f) and V = P1_c x P1_b (flat
    // projection g).
    let p1 = fan_p1();
    let x = fan_p1xp1(); // coordinates (a, b)
    let v = fan_p1xp1(); // coordinates (c, b)
    let w = p1.product(&p1).product(&p1); // coordinates (a, b, c)

    let f = ToricMorphism::new(IntMatrix::from_rows(2, &[int_vec(&[0, 1])]), x.clone(), p1.clone())
        .unwrap();
    let g = ToricMorphism::new(IntMatrix::from_rows(2, &[int_vec(&[0, 1])]), v.clone(), p1.clone())
        .unwrap();
    // g': W -> X drops c; f': W -> V maps (a,b,c) to (c,b).
    let g_prime =
        ToricMorphism::new(IntMatrix::from_rows(3, &[int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0])]), w.clone(), x.clone())
            .unwrap();
    let f_prime =
        ToricMorphism::new(IntMatrix::from_rows(3, &[int_vec(&[0, 0, 1]), int_vec(&[0, 1, 0])]), w.clone(), v.clone())
            .unwrap();

    for class in [
        LogCycleClass::fundamental(&x).unwrap(),
        LogCycleClass::new(
            Subdivision::identity(x.clone()),
            CycleRep::new(x.clone(), 1, [(ray_idx(&x, &[1, 0]), Int::one())]).unwrap(),
        )
        .unwrap(),
        LogCycleClass::new(
            Subdivision::identity(x.clone()),
            CycleRep::new(x.clone(), 1, [(ray_idx(&x, &[0, 1]), Int::from(2))]).unwrap(),
        )
        .unwrap(),
    ] {
        let lhs = log_flat_pullback(&g, &log_pushforward(&f, &class).unwrap()).unwrap();
        let rhs = log_pushforward(&f_prime, &log_flat_pullback(&g_prime, &class).unwrap())
            .unwrap();
        assert!(equals(&lhs, &rhs).unwrap(), "square fails");
    }
}

#[test]
fn act_is_associative_through_cup() {
    let p2 = fan_p2();
    let simplex =
        LatticePolytope::new(2, vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])])
            .unwrap();
    let h = polytope_class(&simplex, &p2).unwrap();
    let x = LogCycleClass::fundamental(&p2).unwrap();
    let staged = act(&h, &act(&h, &x).unwrap()).unwrap();
    let hh = cup(h.weight(), h.weight()).unwrap();
    let hh_class = PolytopeClass::from_weight(h.level().clone(), hh).unwrap();
    let direct = act(&hh_class, &x).unwrap();
    assert!(equals(&staged, &direct).unwrap());
}

#[test]
fn external_product_compatible_with_fundamentals_and_points() {
    let p1 = fan_p1();
    let pt = LogCycleClass::new(
        Subdivision::identity(p1.clone()),
        CycleRep::new(p1.clone(), 0, [(ray_idx(&p1, &[1]), Int::one())]).unwrap(),
    )
    .unwrap();
    let prod = external_product(&pt, &pt).unwrap();
    assert_eq!(prod.dim(), 0);
    let total: Int = prod.cycle().coeffs().values().cloned().sum();
    assert_eq!(total, Int::one());
}

#[test]
fn resolve_tower_keeps_divisor_degrees() {
    // Capping with a pulled-back divisor commutes with resolution: degrees
    // of top self-intersections match across levels.
    let a1 = fan_a1_cone();
    let s = resolve(&a1).unwrap();
    // The resolved fan supports the pullback of any function linear on the
    // singular cone; values at the new ray are forced.
    let vals: Vec<Int> = a1.rays().iter().map(|r| r[0].clone()).collect();
    let psi = PLFunction::new(a1.clone(), vals).unwrap();
    let pulled = psi.pull_to(s.source()).unwrap();
    let capped = divisor_cap(&pulled, &CycleRep::fundamental(s.source().clone())).unwrap();
    // A globally linear function has trivial divisor class.
    let zero = CycleRep::zero(s.source().clone(), 1);
    assert!(is_rationally_equivalent(&capped, &zero).unwrap());
}

#[test]
fn weight_of_cycle_respects_rational_equivalence() {
    let p2 = fan_p2();
    let a = CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[1, 0]), Int::one())]).unwrap();
    let b = CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[0, 1]), Int::one())]).unwrap();
    assert_eq!(weight_of_cycle(&a).unwrap(), weight_of_cycle(&b).unwrap());
}

#[test]
fn pushforward_of_weighted_sum_matches_linearity() {
    let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
    let bl = s.source().clone();
    let e = CycleRep::new(bl.clone(), 1, [(ray_idx(&bl, &[1, 1]), Int::from(5))]).unwrap();
    let l = CycleRep::new(bl.clone(), 1, [(ray_idx(&bl, &[1, 0]), Int::from(-2))]).unwrap();
    let sum = e.checked_add(&l).unwrap();
    let pushed_sum = pushforward_subdivision(&s, &sum).unwrap();
    let sum_pushed = pushforward_subdivision(&s, &e)
        .unwrap()
        .checked_add(&pushforward_subdivision(&s, &l).unwrap())
        .unwrap();
    assert_eq!(pushed_sum, sum_pushed);
}

#[test]
fn balanced_after_cup_and_pullback() {
    let p2 = fan_p2();
    let h = MinkowskiWeight::new(
        p2.clone(),
        1,
        p2.cones_of_dim(1).into_iter().map(|i| (i, Int::one())),
    )
    .unwrap();
    let hh = cup(&h, &h).unwrap();
    assert!(hh.is_balanced().unwrap());
    let s = star_subdivision(&p2, &int_vec(&[1, 1])).unwrap();
    let pulled = logchow::chow::weight_pullback(&s, &h).unwrap();
    assert!(pulled.is_balanced().unwrap());
}

#[test]
fn rank3_completion_of_affine_fans() {
    use logchow::chow::complete_fan;
    // The orthant.
    let a3 = Fan::from_cones(
        3,
        &[vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])]],
    )
    .unwrap();
    let c = complete_fan(&a3, None).unwrap();
    assert!(c.fan.is_complete() && c.fan.is_locally_free());
    assert!(c.embedding.len() == c.resolved.source().num_cones());

    // The singular quadric cone completes after resolution.
    let quadric = Fan::from_cones(
        3,
        &[vec![int_vec(&[1, 1, 0]), int_vec(&[0, 1, 1]), int_vec(&[1, 0, 1])]],
    )
    .unwrap();
    let c = complete_fan(&quadric, None).unwrap();
    assert!(c.fan.is_complete() && c.fan.is_locally_free());
    // The resolution is embedded untouched.
    for (i, &j) in c.embedding.iter().enumerate() {
        assert_eq!(c.fan.cone(j), c.resolved.source().cone(i));
    }

    // A user-supplied completion is validated and used.
    let p1cubed = fan_p1().product(&fan_p1()).product(&fan_p1());
    let sub = Fan::from_cones(
        3,
        &[vec![int_vec(&[1, 0, 0]), int_vec(&[0, 1, 0]), int_vec(&[0, 0, 1])]],
    )
    .unwrap();
    let c = complete_fan(&sub, Some(&p1cubed)).unwrap();
    assert_eq!(c.fan, p1cubed);
}

#[test]
fn anticanonical_self_intersections() {
    // deg((-K)^2) for smooth complete surfaces: 9 for the plane, 8 for the
    // product of lines and for the blown-up plane. The anticanonical weight
    // is the sum of the ray cocycles.
    use logchow::chow::{cup, ray_cocycle, MinkowskiWeight};
    for (fan, expected) in [
        (fan_p2(), 9i64),
        (fan_p1xp1(), 8),
        (logchow::fan::fan_bl0_p2(), 8),
    ] {
        let mut anti = MinkowskiWeight::zero(fan.clone(), 1);
        for i in 0..fan.rays().len() {
            anti = anti.checked_add(&ray_cocycle(&fan, i).unwrap()).unwrap();
        }
        let square = cup(&anti, &anti).unwrap();
        let deg = square.weight(fan.zero_cone_index());
        assert_eq!(deg, Int::from(expected), "on {:?}", fan);
    }
}
