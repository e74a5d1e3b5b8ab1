//! Named verification suites: each one checks a family of identities on
//! fixture fans and seeded random instances, and reports per-case results.
//! All randomness comes from a ChaCha stream seeded by `--seed`, so a run
//! is reproducible byte for byte.

use logchow::blowup::{resolve, star_subdivision, Subdivision};
use logchow::chow::{
    cup_seeded, gysin_subdivision,
    is_rationally_equivalent, kronecker_pairing_matrix, minkowski_weight_basis,
    pushforward_subdivision, weight_pullback, CycleRep, MinkowskiWeight,
};
use logchow::fan::{fan_a1_cone, fan_a2, fan_bl0_p2, fan_p1xp1, fan_p2, Cone, Fan};
use logchow::lattice::{dot, int_vec, Int};
use logchow::logchow::{
    act, excision_report, poincare_pair, polytope_class, transport,
    verify_noncommuting_square, verify_normal_cone_fixture, LatticePolytope, LogCycleClass,
};
use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

pub const SUITE_NAMES: &[&str] = &[
    "niziol",
    "point-multiplicity",
    "fundamental-class",
    "gysin-functoriality",
    "displacement",
    "projection-formula",
    "excision",
    "duality-pairing",
    "mcmullen",
    "noncommuting-square",
    "normal-cone",
    "determinism",
];

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub depth: usize,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AllReport {
    pub schema_version: u32,
    pub seed: u64,
    pub depth: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

pub struct SuiteCtx {
    pub seed: u64,
    pub depth: usize,
    pub fan: Option<Fan>,
}

fn finish(suite: &str, ctx: &SuiteCtx, cases: Vec<CaseResult>) -> SuiteReport {
    let passed = cases.iter().all(|c| c.pass);
    SuiteReport { suite: suite.into(), seed: ctx.seed, depth: ctx.depth, cases, passed }
}

fn case(name: impl Into<String>, pass: bool) -> CaseResult {
    CaseResult { name: name.into(), pass, details: None }
}

fn case_with(name: impl Into<String>, pass: bool, details: impl Into<String>) -> CaseResult {
    CaseResult { name: name.into(), pass, details: Some(details.into()) }
}

struct Rng(rand_chacha::ChaCha8Rng);

impl Rng {
    fn new(seed: u64, stream: u64) -> Rng {
        Rng(rand_chacha::ChaCha8Rng::seed_from_u64(
            seed ^ stream.wrapping_mul(0x9e3779b97f4a7c15),
        ))
    }

    fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> Int {
        let span = (hi - lo + 1) as u64;
        Int::from(lo + (self.0.next_u64() % span) as i64)
    }
}

/// A random smooth subdivision tower over `base`: each stage star
/// subdivides at a random interior lattice point of a random cone and
/// resolves the result, so the tower stays a composition of stellar
/// subdivisions with locally free stages.
fn random_tower(base: &Fan, depth: usize, rng: &mut Rng) -> Subdivision {
    let mut cur = base.clone();
    for _ in 0..depth {
        let candidates: Vec<usize> =
            (0..cur.num_cones()).filter(|&i| cur.cone(i).dim() >= 1).collect();
        let c = cur.cone(candidates[rng.below(candidates.len())]).clone();
        let mut p = vec![Int::zero(); cur.ambient_rank()];
        for r in c.rays() {
            let a = rng.int_in(1, 2);
            for (k, x) in p.iter_mut().enumerate() {
                *x += &a * &r[k];
            }
        }
        cur = star_subdivision(&cur, &p).expect("interior point").source().clone();
        cur = resolve(&cur).expect("resolvable").source().clone();
    }
    Subdivision::between(cur, base.clone()).expect("tower refines base")
}

/// A random integer combination of the Minkowski-weight basis.
fn random_weight(f: &Fan, p: usize, rng: &mut Rng) -> MinkowskiWeight {
    let basis = minkowski_weight_basis(f, p).expect("complete fan");
    let mut acc = MinkowskiWeight::zero(f.clone(), p);
    for b in &basis {
        let c = rng.int_in(-3, 3);
        acc = acc.checked_add(&b.scaled(&c)).expect("same fan");
    }
    acc
}

/// A random cycle of dimension `k`.
fn random_cycle(f: &Fan, k: usize, rng: &mut Rng) -> CycleRep {
    let keys = f.cones_of_dim(f.ambient_rank() - k);
    let entries: Vec<(usize, Int)> =
        keys.into_iter().map(|i| (i, rng.int_in(-3, 3))).collect();
    CycleRep::new(f.clone(), k, entries).expect("valid cycle")
}

/// Criterion: smoothness, characteristic-stalk freeness and multiplicity 1
/// coincide on random small cones.
pub fn suite_niziol(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 1);
    let mut cases = Vec::new();
    let mut produced = 0usize;
    let mut attempts = 0usize;
    while produced < 50 && attempts < 4000 {
        attempts += 1;
        let rank = 2 + rng.below(2);
        let ngens = 2 + rng.below(rank);
        let gens: Vec<Vec<Int>> = (0..ngens)
            .map(|_| (0..rank).map(|_| rng.int_in(-4, 4)).collect())
            .collect();
        let Ok(fan) = Fan::from_cones(rank, &[gens]) else { continue };
        let top = (0..fan.num_cones())
            .max_by_key(|&i| fan.cone(i).dim())
            .expect("nonempty fan");
        if fan.cone(top).dim() == 0 {
            continue;
        }
        produced += 1;
        let c = fan.cone(top);
        let smooth = c.is_smooth();
        let stalk = fan.char_stalk(top).expect("cone in fan");
        let mult_one = c.is_simplicial()
            && c.multiplicity().map(|m| m.is_one()).unwrap_or(false);
        let hilbert_ok = match stalk.hilbert_basis_size {
            Some(h) => (h == stalk.rank) == stalk.is_free,
            None => true,
        };
        let pass = smooth == stalk.is_free && stalk.is_free == mult_one && hilbert_ok;
        cases.push(case_with(
            format!("cone {produced} (rank {rank}, {} rays)", c.rays().len()),
            pass,
            format!("smooth={smooth} free={} mult1={mult_one}", stalk.is_free),
        ));
    }
    if produced < 50 {
        cases.push(case("generated at least 50 cones", false));
    }
    finish("niziol", ctx, cases)
}

/// Criterion: the Gysin pullback of the point class along the blow-up of
/// the plane cone has coefficient exactly 1 on the exceptional stratum.
pub fn suite_point_multiplicity(ctx: &SuiteCtx) -> SuiteReport {
    let mut cases = Vec::new();
    let a2 = fan_a2();
    let s = star_subdivision(&a2, &int_vec(&[1, 1])).expect("interior");
    let pt = CycleRep::new(a2.clone(), 0, [(a2.cones_of_dim(2)[0], Int::one())]).unwrap();
    match gysin_subdivision(&s, &pt) {
        Ok(pulled) => {
            let total: Int = pulled.coeffs().values().cloned().sum();
            cases.push(case_with(
                "total coefficient is 1",
                total.is_one(),
                format!("total = {total}"),
            ));
            let exceptional = pulled.coeffs().keys().all(|&i| {
                s.source().cone(i).rays().contains(&int_vec(&[1, 1]))
            });
            cases.push(case("supported on the exceptional stratum", exceptional));
        }
        Err(e) => cases.push(case_with("gysin pullback computes", false, format!("{e}"))),
    }
    finish("point-multiplicity", ctx, cases)
}

fn tower_bases(ctx: &SuiteCtx) -> Vec<Fan> {
    match &ctx.fan {
        Some(f) => vec![f.clone()],
        None => vec![fan_p2(), fan_p1xp1()],
    }
}

/// Criterion: for smooth subdivision towers, the Gysin pullback of the
/// fundamental class is the fundamental class, and pushes back down to it.
pub fn suite_fundamental_class(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 2);
    let mut cases = Vec::new();
    for base in tower_bases(ctx) {
        for t in 0..10 {
            let depth = 1 + rng.below(ctx.depth.max(1).min(3));
            let s = random_tower(&base, depth, &mut rng);
            let x = CycleRep::fundamental(base.clone());
            match gysin_subdivision(&s, &x) {
                Ok(pulled) => {
                    let up = pulled == CycleRep::fundamental(s.source().clone());
                    let down = pushforward_subdivision(&s, &pulled)
                        .map(|p| p == x)
                        .unwrap_or(false);
                    cases.push(case_with(
                        format!("tower {t} depth {depth} over rank-2 base"),
                        up && down,
                        format!("pullback={} pushdown={}", up, down),
                    ));
                }
                Err(e) => cases.push(case_with(format!("tower {t}"), false, format!("{e}"))),
            }
        }
    }
    finish("fundamental-class", ctx, cases)
}

/// Criterion: Gysin functoriality along composable towers.
pub fn suite_gysin_functoriality(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 3);
    let mut cases = Vec::new();
    for base in tower_bases(ctx) {
        for t in 0..10 {
            let s1 = random_tower(&base, 1, &mut rng);
            let s2 = random_tower(s1.source(), 1 + rng.below(ctx.depth.max(1)), &mut rng);
            let composite = Subdivision::compose(&s2, &s1).expect("composable");
            let k = rng.below(base.ambient_rank() + 1);
            let a = random_cycle(&base, k, &mut rng);
            let staged = gysin_subdivision(&s1, &a)
                .and_then(|mid| gysin_subdivision(&s2, &mid));
            let direct = gysin_subdivision(&composite, &a);
            let pass = match (staged, direct) {
                (Ok(x), Ok(y)) => is_rationally_equivalent(&x, &y).unwrap_or(false),
                _ => false,
            };
            cases.push(case(format!("tower {t} dim {k}"), pass));
        }
    }
    finish("gysin-functoriality", ctx, cases)
}

/// Criterion: displacement-rule soundness. Cup products agree across
/// independent generic vectors, are associative and commutative, and the
/// cohomology of the projective plane is the expected truncated polynomial
/// ring.
pub fn suite_displacement(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 4);
    let mut cases = Vec::new();
    let fans = match &ctx.fan {
        Some(f) => vec![f.clone()],
        None => vec![fan_p2(), fan_p1xp1(), fan_bl0_p2()],
    };
    let mut triple = 0usize;
    while triple < 51 {
        for f in &fans {
            let n = f.ambient_rank();
            let p1 = rng.below(n + 1);
            let p2 = rng.below(n + 1 - p1);
            let w1 = random_weight(f, p1, &mut rng);
            let w2 = random_weight(f, p2, &mut rng);
            // Three independent displacement vectors.
            let a = cup_seeded(&w1, &w2, 101);
            let b = cup_seeded(&w1, &w2, 202);
            let c = cup_seeded(&w1, &w2, 303);
            let agree = match (&a, &b, &c) {
                (Ok(x), Ok(y), Ok(z)) => x == y && y == z,
                _ => false,
            };
            cases.push(case(format!("triple {triple}: three displacements agree"), agree));
            // Commutativity.
            let comm = match (cup_seeded(&w2, &w1, 404), &a) {
                (Ok(yx), Ok(xy)) => &yx == xy,
                _ => false,
            };
            cases.push(case(format!("triple {triple}: commutative"), comm));
            // Associativity with a third weight.
            let p3 = rng.below(n + 1 - p1 - p2);
            let w3 = random_weight(f, p3, &mut rng);
            let left = a
                .as_ref()
                .ok()
                .map(|xy| cup_seeded(xy, &w3, 505))
                .and_then(Result::ok);
            let right = cup_seeded(&w2, &w3, 606)
                .ok()
                .map(|yz| cup_seeded(&w1, &yz, 707))
                .and_then(Result::ok);
            let assoc = matches!((left, right), (Some(l), Some(r)) if l == r);
            cases.push(case(format!("triple {triple}: associative"), assoc));
            triple += 1;
        }
    }
    // The projective plane ring: Z[H]/H^3 with graded ranks 1, 1, 1.
    let p2fan = fan_p2();
    let ranks: Vec<usize> = (0..=2)
        .map(|k| minkowski_weight_basis(&p2fan, k).map(|b| b.len()).unwrap_or(0))
        .collect();
    cases.push(case_with(
        "projective plane cohomology ranks are 1,1,1",
        ranks == vec![1, 1, 1],
        format!("{ranks:?}"),
    ));
    let h = MinkowskiWeight::new(
        p2fan.clone(),
        1,
        p2fan.cones_of_dim(1).into_iter().map(|i| (i, Int::one())),
    )
    .unwrap();
    let hh = cup_seeded(&h, &h, 0).expect("generic displacement");
    let pt_ok = hh.weight(p2fan.zero_cone_index()).is_one();
    cases.push(case("H cup H is the point cocycle", pt_ok));
    finish("displacement", ctx, cases)
}

/// Criterion: the projection formula for weight pullback against cycle
/// pushforward on random instances.
pub fn suite_projection_formula(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 5);
    let mut cases = Vec::new();
    let mut count = 0usize;
    while count < 50 {
        for base in tower_bases(ctx) {
            let depth = 1 + rng.below(ctx.depth.max(1));
            let s = random_tower(&base, depth, &mut rng);
            let n = base.ambient_rank();
            let p = rng.below(n + 1);
            let c = random_weight(&base, p, &mut rng);
            let a = random_cycle(s.source(), p, &mut rng);
            let lhs = weight_pullback(&s, &c)
                .map(|pc| dot(&pc.to_vector(), &a.to_vector()));
            let rhs = pushforward_subdivision(&s, &a)
                .map(|pa| dot(&c.to_vector(), &pa.to_vector()));
            let pass = matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r);
            cases.push(case(format!("instance {count} (codim {p})"), pass));
            count += 1;
        }
    }
    finish("projection-formula", ctx, cases)
}

/// Criterion: excision exactness on the fixture pairs.
pub fn suite_excision(ctx: &SuiteCtx) -> SuiteReport {
    let mut cases = Vec::new();
    let mut run = |name: &str, fan: &Fan, sigma: usize| {
        match excision_report(fan, sigma) {
            Ok(rep) => {
                for row in &rep.rows {
                    cases.push(case_with(
                        format!("{name}: k={} exact", row.k),
                        row.surjective && row.exact_at_middle,
                        format!(
                            "D rank {} / X rank {} / U rank {}",
                            row.closed.free_rank, row.total.free_rank, row.open.free_rank
                        ),
                    ));
                }
            }
            Err(e) => cases.push(case_with(format!("{name}: report"), false, format!("{e}"))),
        }
    };
    match &ctx.fan {
        Some(f) => {
            for i in f.cones_of_dim(1) {
                run("custom", f, i);
            }
        }
        None => {
            let p2 = fan_p2();
            let r = p2
                .find_cone(&Cone::from_generators(2, &[int_vec(&[1, 0])]).unwrap())
                .unwrap();
            run("projective plane, ray", &p2, r);

            let pp = fan_p1xp1();
            let r = pp
                .find_cone(&Cone::from_generators(2, &[int_vec(&[1, 0])]).unwrap())
                .unwrap();
            run("product of lines, ray", &pp, r);

            let bl = fan_bl0_p2();
            let r = bl
                .find_cone(&Cone::from_generators(2, &[int_vec(&[1, 1])]).unwrap())
                .unwrap();
            run("blown-up plane, exceptional ray", &bl, r);
        }
    }
    finish("excision", ctx, cases)
}

/// Criterion: the Kronecker pairing between the weight basis and the orbit
/// class basis is unimodular at every level tested, and the pairing is
/// invariant under transport.
pub fn suite_duality_pairing(ctx: &SuiteCtx) -> SuiteReport {
    let mut rng = Rng::new(ctx.seed, 6);
    let mut cases = Vec::new();
    for base in tower_bases(ctx) {
        let mut levels = vec![Subdivision::identity(base.clone())];
        levels.push(random_tower(&base, 1, &mut rng));
        levels.push(random_tower(&base, 2.min(ctx.depth.max(1)), &mut rng));
        for (li, level) in levels.iter().enumerate() {
            let f = level.source();
            for k in 0..=f.ambient_rank() {
                match kronecker_pairing_matrix(f, k) {
                    Ok((_, uni)) => {
                        cases.push(case(format!("level {li} k={k} unimodular"), uni))
                    }
                    Err(e) => {
                        cases.push(case_with(format!("level {li} k={k}"), false, format!("{e}")))
                    }
                }
            }
        }
        // Pairing invariance under transport.
        let simplex = LatticePolytope::new(
            2,
            vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])],
        )
        .unwrap();
        if let Ok(h) = polytope_class(&simplex, &base) {
            let keys = base.cones_of_dim(base.ambient_rank() - 1);
            let a = LogCycleClass::new(
                Subdivision::identity(base.clone()),
                CycleRep::new(base.clone(), 1, [(keys[0], Int::one())]).unwrap(),
            )
            .unwrap();
            let before = poincare_pair(&h, &a);
            let s = random_tower(&base, 1, &mut rng);
            let deep = transport(&a, &s).expect("transportable");
            let after = poincare_pair(&h, &deep);
            let pass = matches!((before, after), (Ok(x), Ok(y)) if x == y);
            cases.push(case("pairing invariant under transport", pass));
        }
    }
    finish("duality-pairing", ctx, cases)
}

/// Criterion: the McMullen degree law deg(D_P^2) = 2 area(P) for lattice
/// polygons.
pub fn suite_mcmullen(ctx: &SuiteCtx) -> SuiteReport {
    let mut cases = Vec::new();
    let polygons: Vec<(&str, Vec<Vec<Int>>, Fan)> = vec![
        ("unit simplex", vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])], fan_p2()),
        (
            "unit square",
            vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])],
            fan_p1xp1(),
        ),
        ("double simplex", vec![int_vec(&[0, 0]), int_vec(&[2, 0]), int_vec(&[0, 2])], fan_p2()),
        ("triple simplex", vec![int_vec(&[0, 0]), int_vec(&[3, 0]), int_vec(&[0, 3])], fan_p2()),
        (
            "1x2 rectangle",
            vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 2]), int_vec(&[1, 2])],
            fan_p1xp1(),
        ),
        (
            "2x2 square",
            vec![int_vec(&[0, 0]), int_vec(&[2, 0]), int_vec(&[0, 2]), int_vec(&[2, 2])],
            fan_p1xp1(),
        ),
        (
            "2x1 triangle",
            vec![int_vec(&[0, 0]), int_vec(&[2, 0]), int_vec(&[0, 1])],
            fan_p2(),
        ),
        (
            "trapezoid",
            vec![int_vec(&[0, 0]), int_vec(&[2, 0]), int_vec(&[1, 1]), int_vec(&[0, 1])],
            fan_p2(),
        ),
        (
            "skew triangle",
            vec![int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[1, 2])],
            fan_p2(),
        ),
        (
            "pentagon",
            vec![
                int_vec(&[0, 0]),
                int_vec(&[2, 0]),
                int_vec(&[2, 1]),
                int_vec(&[1, 2]),
                int_vec(&[0, 2]),
            ],
            fan_p1xp1(),
        ),
        (
            "translated simplex",
            vec![int_vec(&[5, -3]), int_vec(&[6, -3]), int_vec(&[5, -2])],
            fan_p2(),
        ),
    ];
    for (name, vertices, base) in polygons {
        let p = match LatticePolytope::new(2, vertices) {
            Ok(p) => p,
            Err(e) => {
                cases.push(case_with(name, false, format!("{e}")));
                continue;
            }
        };
        let expected = p.double_area().expect("rank 2");
        let result = polytope_class(&p, &base)
            .and_then(|cls| {
                let x = LogCycleClass::fundamental(&base)?;
                let dx = act(&cls, &x)?;
                poincare_pair(&cls, &dx)
            });
        match result {
            Ok(d) => cases.push(case_with(
                name,
                d == expected,
                format!("deg = {d}, 2 area = {expected}"),
            )),
            Err(e) => cases.push(case_with(name, false, format!("{e}"))),
        }
    }
    finish("mcmullen", ctx, cases)
}

/// Criterion: the non-commuting square fixture.
pub fn suite_noncommuting_square(ctx: &SuiteCtx) -> SuiteReport {
    let mut cases = Vec::new();
    match verify_noncommuting_square() {
        Ok(rep) => {
            cases.push(case("pushforward of the exceptional line is zero", rep.pushforward_is_zero));
            cases.push(case(
                "Gysin pullback of the pushforward is zero",
                rep.pullback_of_pushforward_is_zero,
            ));
            cases.push(case("identity route keeps the class", rep.identity_route_is_class));
            cases.push(case("the two composites differ", rep.composites_differ));
        }
        Err(e) => cases.push(case_with("fixture computes", false, format!("{e}"))),
    }
    finish("noncommuting-square", ctx, cases)
}

/// Criterion: the excess-bundle degree equals the Gysin multiplicity.
pub fn suite_normal_cone(ctx: &SuiteCtx) -> SuiteReport {
    let mut cases = Vec::new();
    match verify_normal_cone_fixture() {
        Ok(rep) => {
            cases.push(case_with(
                "excess c1 degree is 1",
                rep.excess_degree.is_one(),
                format!("{}", rep.excess_degree),
            ));
            cases.push(case_with(
                "Gysin multiplicity is 1",
                rep.gysin_multiplicity.is_one(),
                format!("{}", rep.gysin_multiplicity),
            ));
            cases.push(case("degrees agree", rep.consistent));
        }
        Err(e) => cases.push(case_with("fixture computes", false, format!("{e}"))),
    }
    finish("normal-cone", ctx, cases)
}

/// Criterion: rerunning every suite with the same seed yields the identical
/// report.
pub fn suite_determinism(ctx: &SuiteCtx) -> SuiteReport {
    let sub = SuiteCtx { seed: ctx.seed, depth: ctx.depth, fan: ctx.fan.clone() };
    let one = serde_json::to_string(&run_all_inner(&sub)).expect("serializable");
    let two = serde_json::to_string(&run_all_inner(&sub)).expect("serializable");
    let cases = vec![case("two runs are byte-identical", one == two)];
    finish("determinism", ctx, cases)
}

fn run_all_inner(ctx: &SuiteCtx) -> Vec<SuiteReport> {
    vec![
        suite_niziol(ctx),
        suite_point_multiplicity(ctx),
        suite_fundamental_class(ctx),
        suite_gysin_functoriality(ctx),
        suite_displacement(ctx),
        suite_projection_formula(ctx),
        suite_excision(ctx),
        suite_duality_pairing(ctx),
        suite_mcmullen(ctx),
        suite_noncommuting_square(ctx),
        suite_normal_cone(ctx),
    ]
}

pub fn run_suite(name: &str, ctx: &SuiteCtx) -> Option<SuiteReport> {
    match name {
        "niziol" => Some(suite_niziol(ctx)),
        "point-multiplicity" => Some(suite_point_multiplicity(ctx)),
        "fundamental-class" => Some(suite_fundamental_class(ctx)),
        "gysin-functoriality" => Some(suite_gysin_functoriality(ctx)),
        "displacement" => Some(suite_displacement(ctx)),
        "projection-formula" => Some(suite_projection_formula(ctx)),
        "excision" => Some(suite_excision(ctx)),
        "duality-pairing" => Some(suite_duality_pairing(ctx)),
        "mcmullen" => Some(suite_mcmullen(ctx)),
        "noncommuting-square" => Some(suite_noncommuting_square(ctx)),
        "normal-cone" => Some(suite_normal_cone(ctx)),
        "determinism" => Some(suite_determinism(ctx)),
        _ => None,
    }
}

pub fn run_all(ctx: &SuiteCtx) -> AllReport {
    let mut suites = run_all_inner(ctx);
    suites.push(suite_determinism(ctx));
    let passed = suites.iter().all(|s| s.passed);
    AllReport {
        schema_version: crate::schema::SCHEMA_VERSION,
        seed: ctx.seed,
        depth: ctx.depth,
        suites,
        passed,
    }
}

/// Fixture fans shipped with the tool, constructed programmatically.
pub fn fixture_fan(name: &str) -> Option<Fan> {
    match name {
        "a2" => Some(fan_a2()),
        "p1" => Some(logchow::fan::fan_p1()),
        "p2" => Some(fan_p2()),
        "p1xp1" => Some(fan_p1xp1()),
        "bl0p2" => Some(fan_bl0_p2()),
        "bl0a2" => Some(logchow::fan::fan_bl0_a2()),
        "a1cone" => Some(fan_a1_cone()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(seed: u64) -> SuiteCtx {
        SuiteCtx { seed, depth: 2, fan: None }
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["point-multiplicity", "noncommuting-square", "normal-cone", "excision"] {
            let rep = run_suite(name, &ctx(7)).unwrap();
            assert!(rep.passed, "{name} failed: {:?}", rep.cases);
        }
    }

    #[test]
    fn mcmullen_suite_passes() {
        let rep = suite_mcmullen(&ctx(7));
        assert!(rep.passed, "{:?}", rep.cases);
    }

    #[test]
    fn niziol_suite_passes() {
        let rep = suite_niziol(&ctx(7));
        assert!(rep.passed, "{:?}", rep.cases.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}
