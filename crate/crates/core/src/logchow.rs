//! Log Chow classes: cycles carried on representative smooth subdivisions
//! of a base fan, compared through common refinement and Gysin transport.
//!
//! The colimit groups are never materialised. A class is a triple
//! (base, level, cycle) with the level a smooth subdivision of the base;
//! equality transports both classes to a resolved common refinement and
//! decides rational equivalence there. Proper pushforward and log flat
//! pullback follow the integralize-resolve-transport pipelines; the
//! polytope algebra acts through support functions and duality.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::blowup::{
    common_refinement, resolve, star_subdivision, BlowupError, Subdivision, ToricMorphism,
};
use crate::chow::{
    cup, cycle_of_weight, degree, divisor_cap, gysin_subdivision, is_rationally_equivalent,
    pushforward_subdivision, relation_lattice, weight_of_cycle, weight_pullback, chow_presentation,
    ChowError, CycleRep, MinkowskiWeight, PLFunction,
};
use crate::dd::{feasible, AffEq, AffIneq};
use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{
    self, dot, solve_combination, vec_mat, Int, IntMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogChowError {
    /// Classes or operands over different base fans.
    BaseMismatch,
    /// The provided subdivision does not refine the class's level.
    NotRefinement,
    NotProper,
    NotLogFlat,
    /// Polytope and base fan supports are incompatible.
    IncompatibleSupports,
    NotComplete,
    DimensionMismatch,
    Chow(ChowError),
    Blowup(BlowupError),
    Fan(FanError),
}

impl fmt::Display for LogChowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogChowError::BaseMismatch => write!(f, "classes over different bases"),
            LogChowError::NotRefinement => write!(f, "not a refinement of the class level"),
            LogChowError::NotProper => write!(f, "morphism is not proper"),
            LogChowError::NotLogFlat => write!(f, "not log flat"),
            LogChowError::IncompatibleSupports => write!(f, "incompatible supports"),
            LogChowError::NotComplete => write!(f, "base fan is not complete"),
            LogChowError::DimensionMismatch => write!(f, "dimension mismatch"),
            LogChowError::Chow(e) => write!(f, "{e}"),
            LogChowError::Blowup(e) => write!(f, "{e}"),
            LogChowError::Fan(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LogChowError {}

impl From<ChowError> for LogChowError {
    fn from(e: ChowError) -> Self {
        LogChowError::Chow(e)
    }
}

impl From<BlowupError> for LogChowError {
    fn from(e: BlowupError) -> Self {
        LogChowError::Blowup(e)
    }
}

impl From<FanError> for LogChowError {
    fn from(e: FanError) -> Self {
        LogChowError::Fan(e)
    }
}

/// An element of the log Chow group of the base fan, represented at an
/// explicit locally free level.
#[derive(Clone, PartialEq, Eq)]
pub struct LogCycleClass {
    base: Fan,
    level: Subdivision,
    cycle: CycleRep,
}

impl fmt::Debug for LogCycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogCycle(dim {}, level {:?})", self.cycle.dim(), self.level)
    }
}

impl LogCycleClass {
    pub fn new(level: Subdivision, cycle: CycleRep) -> Result<LogCycleClass, LogChowError> {
        if !level.source().is_locally_free() {
            return Err(LogChowError::Chow(ChowError::NotSmooth));
        }
        if cycle.fan() != level.source() {
            return Err(LogChowError::BaseMismatch);
        }
        Ok(LogCycleClass { base: level.target().clone(), level, cycle })
    }

    /// The fundamental class of the base, represented on its resolution.
    pub fn fundamental(base: &Fan) -> Result<LogCycleClass, LogChowError> {
        let level = resolve(base)?;
        let cycle = CycleRep::fundamental(level.source().clone());
        LogCycleClass::new(level, cycle)
    }

    pub fn base(&self) -> &Fan {
        &self.base
    }

    pub fn level(&self) -> &Subdivision {
        &self.level
    }

    pub fn cycle(&self) -> &CycleRep {
        &self.cycle
    }

    pub fn dim(&self) -> usize {
        self.cycle.dim()
    }

    pub fn scaled(&self, s: &Int) -> LogCycleClass {
        LogCycleClass {
            base: self.base.clone(),
            level: self.level.clone(),
            cycle: self.cycle.scaled(s),
        }
    }
}

/// Move a class to a deeper level along a further subdivision of its level.
/// The transition maps of the colimit are Gysin pullbacks.
pub fn transport(a: &LogCycleClass, finer: &Subdivision) -> Result<LogCycleClass, LogChowError> {
    if finer.target() != a.level.source() {
        return Err(LogChowError::NotRefinement);
    }
    let level = Subdivision::compose(finer, &a.level)?;
    let cycle = gysin_subdivision(finer, &a.cycle)?;
    LogCycleClass::new(level, cycle)
}

/// A resolved common refinement of two levels over the same base, with the
/// refinements to both level sources.
pub(crate) fn common_smooth_level(
    a: &Subdivision,
    b: &Subdivision,
) -> Result<(Subdivision, Subdivision, Subdivision), LogChowError> {
    if a.target() != b.target() {
        return Err(LogChowError::BaseMismatch);
    }
    let (crfan, to_a, to_b) = common_refinement(a, b)?;
    let r = resolve(&crfan)?;
    let fine_to_a = Subdivision::compose(&r, &to_a)?;
    let fine_to_b = Subdivision::compose(&r, &to_b)?;
    let level = Subdivision::compose(&fine_to_a, a)?;
    Ok((level, fine_to_a, fine_to_b))
}

/// Re-represent a class at (at least) the given level: transport it to a
/// resolved common refinement of its own level and the supplied one.
pub fn deepen(a: &LogCycleClass, level: &Subdivision) -> Result<LogCycleClass, LogChowError> {
    let (_, to_a, _) = common_smooth_level(&a.level, level)?;
    transport(a, &to_a)
}

/// Equality in the colimit: transport both classes to a resolved common
/// refinement and decide rational equivalence there.
pub fn equals(a: &LogCycleClass, b: &LogCycleClass) -> Result<bool, LogChowError> {
    if a.base != b.base {
        return Err(LogChowError::BaseMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let (_, to_a, to_b) = common_smooth_level(&a.level, &b.level)?;
    let ta = transport(a, &to_a)?;
    let tb = transport(b, &to_b)?;
    Ok(is_rationally_equivalent(&ta.cycle, &tb.cycle)?)
}

fn image_cone(m: &ToricMorphism, c: &Cone) -> Result<Cone, FanError> {
    let images: Vec<Vec<Int>> = c.rays().iter().map(|r| m.apply(r)).collect();
    Cone::from_generators(m.target.ambient_rank(), &images)
}

/// Index of the image of the quotient lattice `N_src/N_σ` inside
/// `N_tgt/N_τ`; zero when the induced map is not of full rank.
fn orbit_degree(m: &ToricMorphism, sigma: &Cone, tau: &Cone) -> Int {
    let n_src = m.source.ambient_rank();
    let n_tgt = m.target.ambient_rank();
    let dv_src = n_src - sigma.dim();
    let dv_tgt = n_tgt - tau.dim();
    debug_assert_eq!(dv_src, dv_tgt);
    if dv_src == 0 {
        return Int::one();
    }
    let q = lattice::quotient_matrix(&tau.span_lattice());
    let full = lattice::complete_basis(&sigma.span_lattice());
    let rows: Vec<Vec<Int>> = (sigma.dim()..n_src)
        .map(|i| vec_mat(&m.apply(full.row(i)), &q))
        .collect();
    let mat = IntMatrix::from_rows(dv_tgt, &rows);
    let (d, _, _) = lattice::smith_normal_form(&mat);
    let diag = d.diagonal();
    if diag.iter().any(|x| x.is_zero()) {
        return Int::zero();
    }
    diag.into_iter().fold(Int::one(), |acc, x| acc * x)
}

/// Proper pushforward along a toric morphism: refine the target to a smooth
/// level, integralize, transport the class, and push orbit classes with
/// lattice-index degrees.
pub fn log_pushforward(
    m: &ToricMorphism,
    a: &LogCycleClass,
) -> Result<LogCycleClass, LogChowError> {
    if a.base != m.source {
        return Err(LogChowError::BaseMismatch);
    }
    if !m.is_proper() {
        return Err(LogChowError::NotProper);
    }
    let k = a.dim();
    let target_level = resolve(&m.target)?;
    let m_lifted = ToricMorphism::new(
        m.lattice_map.clone(),
        m.source.clone(),
        target_level.source().clone(),
    )?;
    let s_int = m_lifted.integralize()?;
    let (_, to_a, _) = common_smooth_level(&a.level, &s_int)?;
    let ta = transport(a, &to_a)?;

    let tgt_fan = target_level.source().clone();
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for (&i, coeff) in ta.cycle.coeffs().iter() {
        let sigma = ta.cycle.fan().cone(i);
        let p = m.apply(&sigma.interior_point());
        let tau_idx = tgt_fan
            .smallest_cone_containing(&p)
            .expect("integralized morphism maps into the target level");
        let tau = tgt_fan.cone(tau_idx);
        let dv_src = m.source.ambient_rank() - sigma.dim();
        let dv_tgt = m.target.ambient_rank() - tau.dim();
        if dv_src != dv_tgt {
            continue;
        }
        let lifted = ToricMorphism::new(
            m.lattice_map.clone(),
            ta.cycle.fan().clone(),
            tgt_fan.clone(),
        )?;
        let deg = orbit_degree(&lifted, sigma, tau);
        if !deg.is_zero() {
            entries.push((tau_idx, coeff * deg));
        }
    }
    let cycle = CycleRep::new(tgt_fan, k, entries)?;
    LogCycleClass::new(target_level, cycle)
}

/// Log flat pullback along a toric morphism, guarded by the flatness
/// certificate: after integralization every source cone must map *onto* a
/// target cone.
pub fn log_flat_pullback(
    m: &ToricMorphism,
    a: &LogCycleClass,
) -> Result<LogCycleClass, LogChowError> {
    if a.base != m.target {
        return Err(LogChowError::BaseMismatch);
    }
    let m_lifted = ToricMorphism::new(
        m.lattice_map.clone(),
        m.source.clone(),
        a.level.source().clone(),
    )?;
    let s_int = m_lifted.integralize().map_err(|e| match e {
        BlowupError::ImageEscapesSupport => LogChowError::NotLogFlat,
        other => LogChowError::Blowup(other),
    })?;
    let r = resolve(s_int.source())?;
    let level = Subdivision::compose(&r, &s_int)?;
    let src_fan = level.source().clone();
    let tgt_fan = a.cycle.fan().clone();
    let lifted =
        ToricMorphism::new(m.lattice_map.clone(), src_fan.clone(), tgt_fan.clone())?;

    // Flatness certificate: each source cone surjects onto its carrier.
    let mut carriers: Vec<usize> = Vec::with_capacity(src_fan.num_cones());
    for i in 0..src_fan.num_cones() {
        let img = image_cone(&lifted, src_fan.cone(i))?;
        let p = lifted.apply(&src_fan.cone(i).interior_point());
        let tau_idx = tgt_fan
            .smallest_cone_containing(&p)
            .ok_or(LogChowError::NotLogFlat)?;
        let tau = tgt_fan.cone(tau_idx);
        if !tau.rays().iter().all(|r| img.contains(r)) {
            return Err(LogChowError::NotLogFlat);
        }
        carriers.push(tau_idx);
    }

    let k = a.dim();
    let d = m.source.ambient_rank() - m.target.ambient_rank();
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for (&tau_idx, coeff) in a.cycle.coeffs().iter() {
        let tau = tgt_fan.cone(tau_idx);
        for i in 0..src_fan.num_cones() {
            let sigma = src_fan.cone(i);
            if sigma.dim() != tau.dim() || carriers[i] != tau_idx {
                continue;
            }
            // Index of A(N_sigma) inside N_tau.
            let tau_basis = tau.span_lattice().vectors;
            let rows: Vec<Vec<Int>> = sigma
                .span_lattice()
                .vectors
                .iter()
                .map(|v| {
                    solve_combination(&tau_basis, &lifted.apply(v))
                        .expect("width")
                        .expect("image lies in the saturated span of the carrier")
                })
                .collect();
            let mult = if rows.is_empty() {
                Int::one()
            } else {
                let mat = IntMatrix::from_rows(tau.dim(), &rows);
                let (dg, _, _) = lattice::smith_normal_form(&mat);
                let diag = dg.diagonal();
                if diag.iter().any(|x| x.is_zero()) {
                    Int::zero()
                } else {
                    diag.into_iter().fold(Int::one(), |acc, x| acc * x)
                }
            };
            if !mult.is_zero() {
                entries.push((i, coeff * mult));
            }
        }
    }
    let cycle = CycleRep::new(src_fan, k + d, entries)?;
    LogCycleClass::new(level, cycle)
}

/// A lattice polytope given by its vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    pub ambient_rank: usize,
    pub vertices: Vec<Vec<Int>>,
}

impl LatticePolytope {
    pub fn new(ambient_rank: usize, vertices: Vec<Vec<Int>>) -> Result<LatticePolytope, LogChowError> {
        if vertices.is_empty() || vertices.iter().any(|v| v.len() != ambient_rank) {
            return Err(LogChowError::DimensionMismatch);
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let p = LatticePolytope { ambient_rank, vertices };
        if !p.vertices_are_extreme() {
            return Err(LogChowError::IncompatibleSupports);
        }
        Ok(p)
    }

    /// Every listed point must be a vertex of the convex hull.
    fn vertices_are_extreme(&self) -> bool {
        if self.vertices.len() == 1 {
            return true;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let others: Vec<&Vec<Int>> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, u)| u)
                .collect();
            // Is v a convex combination of the others? Variables lambda_j.
            let nvars = others.len();
            let mut eqs: Vec<AffEq> = Vec::new();
            for coord in 0..self.ambient_rank {
                let a: Vec<Int> = others.iter().map(|u| u[coord].clone()).collect();
                eqs.push(AffEq { a, b: -v[coord].clone() });
            }
            eqs.push(AffEq { a: vec![Int::one(); nvars], b: -Int::one() });
            let ineqs: Vec<AffIneq> = (0..nvars)
                .map(|j| {
                    let mut a = vec![Int::zero(); nvars];
                    a[j] = Int::one();
                    AffIneq { a, b: Int::zero(), strict: false }
                })
                .collect();
            if feasible(nvars, &eqs, &ineqs) {
                return false;
            }
        }
        true
    }

    /// Twice the Euclidean area of a polygon (rank 2), by the shoelace
    /// formula over the cyclically ordered vertices.
    pub fn double_area(&self) -> Result<Int, LogChowError> {
        if self.ambient_rank != 2 {
            return Err(LogChowError::DimensionMismatch);
        }
        // Order vertices around the centroid by angle.
        let n = Int::from(self.vertices.len() as i64);
        let cx: Int = self.vertices.iter().map(|v| v[0].clone()).sum();
        let cy: Int = self.vertices.iter().map(|v| v[1].clone()).sum();
        let mut pts: Vec<(Vec<Int>, Vec<Int>)> = self
            .vertices
            .iter()
            .map(|v| {
                let rel = vec![&v[0] * &n - &cx, &v[1] * &n - &cy];
                (rel, v.clone())
            })
            .collect();
        let half = |p: &[Int]| -> u8 {
            if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
                0
            } else {
                1
            }
        };
        pts.sort_by(|(pa, _), (pb, _)| {
            half(pa)
                .cmp(&half(pb))
                .then_with(|| {
                    let cr = &pb[0] * &pa[1] - &pb[1] * &pa[0];
                    cr.cmp(&Int::zero())
                })
                .then_with(|| pa.cmp(pb))
        });
        let mut acc = Int::zero();
        let k = pts.len();
        for i in 0..k {
            let (_, a) = &pts[i];
            let (_, b) = &pts[(i + 1) % k];
            acc += &a[0] * &b[1] - &a[1] * &b[0];
        }
        Ok(acc.abs())
    }
}

/// A Chow cohomology class over a base fan: a Minkowski weight at a smooth
/// complete level. Produced from lattice polytopes or directly from
/// weights.
#[derive(Clone, PartialEq, Eq)]
pub struct PolytopeClass {
    base: Fan,
    level: Subdivision,
    weight: MinkowskiWeight,
}

impl fmt::Debug for PolytopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolytopeClass(codim {}, level {:?})", self.weight.codim(), self.level)
    }
}

impl PolytopeClass {
    pub fn from_weight(level: Subdivision, weight: MinkowskiWeight) -> Result<PolytopeClass, LogChowError> {
        if !level.source().is_locally_free() || !level.source().is_complete() {
            return Err(LogChowError::NotComplete);
        }
        if weight.fan() != level.source() {
            return Err(LogChowError::BaseMismatch);
        }
        Ok(PolytopeClass { base: level.target().clone(), level, weight })
    }

    pub fn base(&self) -> &Fan {
        &self.base
    }

    pub fn level(&self) -> &Subdivision {
        &self.level
    }

    pub fn weight(&self) -> &MinkowskiWeight {
        &self.weight
    }

    pub fn codim(&self) -> usize {
        self.weight.codim()
    }
}

/// The divisor class of a lattice polytope over a complete base fan: the
/// codimension-1 weight of the divisor of its support function, at a smooth
/// level where that function is conewise linear.
pub fn polytope_class(p: &LatticePolytope, base: &Fan) -> Result<PolytopeClass, LogChowError> {
    if p.ambient_rank != base.ambient_rank() {
        return Err(LogChowError::DimensionMismatch);
    }
    if !base.is_complete() {
        return Err(LogChowError::IncompatibleSupports);
    }
    let r0 = resolve(base)?;
    // Refine by the linearity domains of the support function.
    let l0 = r0.source().clone();
    let n = base.ambient_rank();
    let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
    for i in 0..l0.num_cones() {
        let sigma = l0.cone(i);
        for v in &p.vertices {
            let mut ineqs = sigma.facet_normals().to_vec();
            for m in &p.vertices {
                ineqs.push(lattice::sub(m, v));
            }
            let out = crate::dd::double_description(&crate::dd::System {
                dim: n,
                ineqs,
                eqs: sigma.span_equations().to_vec(),
            });
            let piece = Cone::from_generators(n, &out.rays)?;
            if piece.dim() == sigma.dim() {
                gens.push(piece.rays().to_vec());
            }
        }
    }
    let f1 = Fan::from_cones(n, &gens)?;
    let s1 = Subdivision::between(f1.clone(), l0)?;
    let r1 = resolve(&f1)?;
    let level = Subdivision::compose(&Subdivision::compose(&r1, &s1)?, &r0)?;
    let level_fan = level.source().clone();
    let psi = PLFunction::support_function(&level_fan, &p.vertices)
        .map_err(|_| LogChowError::IncompatibleSupports)?;
    // Weight of the divisor: intersection numbers with the invariant curves.
    let walls = level_fan.cones_of_dim(n - 1);
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for w in walls {
        let curve = CycleRep::new(level_fan.clone(), 1, [(w, Int::one())])?;
        let capped = divisor_cap(&psi, &curve)?;
        entries.push((w, degree(&capped)?));
    }
    let weight = MinkowskiWeight::new(level_fan, 1, entries)?;
    debug_assert!(weight.is_balanced()?);
    PolytopeClass::from_weight(level, weight)
}

/// Transport a cohomology class to a deeper level (weights pull back along
/// refinements).
fn weight_at_level(
    p: &PolytopeClass,
    to_level: &Subdivision,
) -> Result<MinkowskiWeight, LogChowError> {
    Ok(weight_pullback(to_level, &p.weight)?)
}

/// Module action of the polytope algebra on log cycle classes: transport
/// both to a common smooth level and cap through duality.
pub fn act(p: &PolytopeClass, a: &LogCycleClass) -> Result<LogCycleClass, LogChowError> {
    if p.base != a.base {
        return Err(LogChowError::BaseMismatch);
    }
    let (level, to_p, to_a) = common_smooth_level(&p.level, &a.level)?;
    let w = weight_at_level(p, &to_p)?;
    let ta = transport(a, &to_a)?;
    let pd = weight_of_cycle(&ta.cycle)?;
    let capped = cup(&w, &pd)?;
    let cycle = cycle_of_weight(&capped)?;
    LogCycleClass::new(level, cycle)
}

/// External product of classes over the product base.
pub fn external_product(
    a: &LogCycleClass,
    b: &LogCycleClass,
) -> Result<LogCycleClass, LogChowError> {
    let base = a.base.product(&b.base);
    let src = a.level.source().product(b.level.source());
    let level = Subdivision::between(src.clone(), base)?;
    let n1 = a.base.ambient_rank();
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for (&i, ci) in a.cycle.coeffs() {
        for (&j, cj) in b.cycle.coeffs() {
            let mut gens: Vec<Vec<Int>> = Vec::new();
            for r in a.level.source().cone(i).rays() {
                let mut v = r.clone();
                v.extend(vec![Int::zero(); b.base.ambient_rank()]);
                gens.push(v);
            }
            for r in b.level.source().cone(j).rays() {
                let mut v = vec![Int::zero(); n1];
                v.extend(r.iter().cloned());
                gens.push(v);
            }
            let c = Cone::from_generators(src.ambient_rank(), &gens)?;
            let idx = src.find_cone(&c).expect("product cone in product fan");
            entries.push((idx, ci * cj));
        }
    }
    let cycle = CycleRep::new(src, a.dim() + b.dim(), entries)?;
    LogCycleClass::new(level, cycle)
}

/// Duality pairing of a cohomology class with a cycle class of matching
/// degree: the Kronecker pairing at a common level, invariant under
/// transport of either argument.
pub fn poincare_pair(p: &PolytopeClass, a: &LogCycleClass) -> Result<Int, LogChowError> {
    if p.base != a.base {
        return Err(LogChowError::BaseMismatch);
    }
    if !p.base.is_complete() {
        return Err(LogChowError::NotComplete);
    }
    if p.codim() != a.dim() {
        return Err(LogChowError::DimensionMismatch);
    }
    let (_, to_p, to_a) = common_smooth_level(&p.level, &a.level)?;
    let w = weight_at_level(p, &to_p)?;
    let ta = transport(a, &to_a)?;
    Ok(dot(&w.to_vector(), &ta.cycle.to_vector()))
}

/// Presentation data of one Chow group in an excision report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub generators: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

fn group_summary(f: &Fan, k: usize) -> Result<GroupSummary, LogChowError> {
    if k > f.ambient_rank() {
        return Ok(GroupSummary { generators: 0, free_rank: 0, torsion: Vec::new() });
    }
    let (gens, _, factors) = chow_presentation(f, f.ambient_rank() - k)
        .map_err(LogChowError::Chow)?;
    Ok(GroupSummary {
        generators: gens.len(),
        free_rank: gens.len() - factors.len(),
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    })
}

/// Exactness data of `A_k(D) -> A_k(X) -> A_k(U) -> 0` at one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionRow {
    pub k: usize,
    pub closed: GroupSummary,
    pub total: GroupSummary,
    pub open: GroupSummary,
    /// Matrix of the pushforward from the closed stratum, rows indexed by
    /// its generators.
    pub pushforward: Vec<Vec<Int>>,
    /// Matrix of the restriction to the open complement.
    pub restriction: Vec<Vec<Int>>,
    pub surjective: bool,
    pub exact_at_middle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisionReport {
    pub rows: Vec<ExcisionRow>,
    pub exact: bool,
}

/// Verify the excision sequence for the orbit closure of a cone: star fan
/// into the total fan, restriction to the open complement, presentation
/// level exactness for every k.
pub fn excision_report(base: &Fan, sigma_idx: usize) -> Result<ExcisionReport, LogChowError> {
    if sigma_idx >= base.num_cones() {
        return Err(LogChowError::Fan(FanError::ConeNotInFan));
    }
    let n = base.ambient_rank();
    let sigma = base.cone(sigma_idx).clone();
    let star = base.star(sigma_idx)?;
    let span = sigma.span_lattice();
    let q = lattice::quotient_matrix(&span);
    // Open complement: the cones not containing sigma (face-closed).
    let open_gens: Vec<Vec<Vec<Int>>> = (0..base.num_cones())
        .filter(|&i| !crate::fan::is_subset(&base.cones()[sigma_idx], &base.cones()[i]))
        .map(|i| base.cone(i).rays().to_vec())
        .collect();
    let open_fan = if sigma.is_zero() { None } else { Some(Fan::from_cones(n, &open_gens)?) };

    let mut rows = Vec::new();
    for k in 0..=n {
        let closed = group_summary(&star, k)?;
        let total = group_summary(base, k)?;
        let open = match &open_fan {
            Some(u) => group_summary(u, k)?,
            None => GroupSummary { generators: 0, free_rank: 0, torsion: Vec::new() },
        };

        // Generator lists.
        let x_gens = base.cones_of_dim(n - k.min(n));
        let x_gens: Vec<usize> = if k > n { Vec::new() } else { x_gens };
        let d_gens: Vec<usize> =
            if k > star.ambient_rank() { Vec::new() } else { star.cones_of_dim(star.ambient_rank() - k) };
        let u_gens: Vec<usize> = match &open_fan {
            Some(u) if k <= n => u.cones_of_dim(n - k),
            _ => Vec::new(),
        };

        // i_*: star cone -> base cone containing sigma with matching image.
        let mut mi = IntMatrix::zero(d_gens.len(), x_gens.len());
        for (row, &dg) in d_gens.iter().enumerate() {
            // Find the base cone over sigma whose image is this star cone.
            let mut found = false;
            for (col, &xg) in x_gens.iter().enumerate() {
                if !crate::fan::is_subset(&base.cones()[sigma_idx], &base.cones()[xg]) {
                    continue;
                }
                let image: Vec<Vec<Int>> =
                    base.cone(xg).rays().iter().map(|r| vec_mat(r, &q)).collect();
                let img = Cone::from_generators(star.ambient_rank(), &image)?;
                if star.find_cone(&img) == Some(dg) {
                    *mi.at_mut(row, col) = Int::one();
                    found = true;
                }
            }
            debug_assert!(found, "star cone without a preimage");
        }

        // j^*: base cone -> itself in the open fan, or 0.
        let mut mj = IntMatrix::zero(x_gens.len(), u_gens.len());
        if let Some(u) = &open_fan {
            for (row, &xg) in x_gens.iter().enumerate() {
                if let Some(uc) = u.find_cone(base.cone(xg)) {
                    if let Some(col) = u_gens.iter().position(|&g| g == uc) {
                        *mj.at_mut(row, col) = Int::one();
                    }
                }
            }
        }

        // Relations.
        let rel_x = relation_lattice(base, k.min(n)).map_err(LogChowError::Chow)?;
        let rb: Vec<Vec<Int>> = if k > n { Vec::new() } else { rel_x.relation_vectors };
        let rc: Vec<Vec<Int>> = match &open_fan {
            Some(u) if k <= n => {
                relation_lattice(u, k).map_err(LogChowError::Chow)?.relation_vectors
            }
            _ => Vec::new(),
        };
        let ra: Vec<Vec<Int>> = if k <= star.ambient_rank() {
            relation_lattice(&star, k).map_err(LogChowError::Chow)?.relation_vectors
        } else {
            Vec::new()
        };

        // Surjectivity of j^*: image rows plus relations span Z^{u_gens}.
        let surjective = if u_gens.is_empty() {
            true
        } else {
            let mut rows_g: Vec<Vec<Int>> = mj.row_vecs();
            rows_g.extend(rc.iter().cloned());
            (0..u_gens.len()).all(|i| {
                let mut e = vec![Int::zero(); u_gens.len()];
                e[i] = Int::one();
                lattice::in_lattice(&rows_g, &e).unwrap_or(false)
            })
        };

        // Exactness in the middle: ker(j^*) = im(i_*) modulo relations.
        let exact_at_middle = if x_gens.is_empty() {
            true
        } else {
            // K = {x : x·Mj in rowspan(RC)}.
            let kernel_x: Vec<Vec<Int>> = if u_gens.is_empty() {
                IntMatrix::identity(x_gens.len()).row_vecs()
            } else {
                let mut w_rows = mj.row_vecs();
                w_rows.extend(rc.iter().cloned());
                let w = IntMatrix::from_rows(u_gens.len(), &w_rows);
                lattice::row_kernel(&w)
                    .into_iter()
                    .map(|y| y[..x_gens.len()].to_vec())
                    .collect()
            };
            let mut lhs: Vec<Vec<Int>> = kernel_x;
            lhs.extend(rb.iter().cloned());
            let mut rhs: Vec<Vec<Int>> = mi.row_vecs();
            rhs.extend(rb.iter().cloned());
            // Well-definedness of the pushforward: relations of the closed
            // stratum must land in the relation lattice.
            let well_defined = ra.iter().all(|r| {
                let image = vec_mat(r, &mi);
                lattice::is_zero_vec(&image)
                    || (!rb.is_empty() && lattice::in_lattice(&rb, &image).unwrap_or(false))
            });
            well_defined && lattice_equal(x_gens.len(), &lhs, &rhs)
        };

        rows.push(ExcisionRow {
            k,
            closed,
            total,
            open,
            pushforward: mi.row_vecs(),
            restriction: mj.row_vecs(),
            surjective,
            exact_at_middle,
        });
    }
    let exact = rows.iter().all(|r| r.surjective && r.exact_at_middle);
    Ok(ExcisionReport { rows, exact })
}

fn lattice_equal(cols: usize, a: &[Vec<Int>], b: &[Vec<Int>]) -> bool {
    if cols == 0 {
        return true;
    }
    let nonzero = |rows: &[Vec<Int>]| -> Vec<Vec<Int>> {
        let m = IntMatrix::from_rows(cols, rows);
        let (h, _) = lattice::hermite_normal_form(&m);
        (0..h.rows())
            .map(|r| h.row(r).to_vec())
            .filter(|r| !lattice::is_zero_vec(r))
            .collect()
    };
    if a.is_empty() && b.is_empty() {
        return true;
    }
    if a.is_empty() || b.is_empty() {
        return nonzero(a).is_empty() && nonzero(b).is_empty();
    }
    nonzero(a) == nonzero(b)
}

/// Report of the excess/normal-cone consistency check on the blow-up of the
/// affine plane at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalConeReport {
    /// Degree of c_1 of the excess line bundle capped with the exceptional
    /// curve's fundamental class.
    pub excess_degree: Int,
    /// Coefficient of the Gysin pullback of the point class on the
    /// exceptional stratum.
    pub gysin_multiplicity: Int,
    pub consistent: bool,
}

/// The divisor-calculus fixture: on the exceptional line of the blow-up of
/// the affine plane, the first Chern class of the excess bundle has degree
/// 1, matching the Gysin multiplicity of the point class.
pub fn verify_normal_cone_fixture() -> Result<NormalConeReport, LogChowError> {
    // Excess bundle degree: O(1) on the exceptional line, as the PL divisor
    // of the unit segment on the star fan.
    let bl = crate::fan::fan_bl0_a2();
    let eray = Cone::from_generators(2, &[lattice::int_vec(&[1, 1])])?;
    let eidx = bl.find_cone(&eray).ok_or(LogChowError::Fan(FanError::ConeNotInFan))?;
    let star = bl.star(eidx)?;
    let psi = PLFunction::support_function(
        &star,
        &[vec![Int::zero()], vec![Int::one()]],
    )
    .map_err(LogChowError::Chow)?;
    let capped = divisor_cap(&psi, &CycleRep::fundamental(star.clone()))?;
    let excess_degree = degree(&capped)?;

    // Gysin multiplicity of the point class through the star subdivision.
    let a2 = crate::fan::fan_a2();
    let s = star_subdivision(&a2, &lattice::int_vec(&[1, 1]))?;
    let pt = CycleRep::new(a2.clone(), 0, [(a2.cones_of_dim(2)[0], Int::one())])
        .map_err(LogChowError::Chow)?;
    let pulled = gysin_subdivision(&s, &pt)?;
    let gysin_multiplicity: Int = pulled.coeffs().values().cloned().sum();

    let consistent = excess_degree.is_one() && gysin_multiplicity.is_one();
    Ok(NormalConeReport { excess_degree, gysin_multiplicity, consistent })
}

/// Report of the non-commuting square fixture: pushing the exceptional line
/// down kills it, so the Gysin pullback of the pushforward vanishes while
/// the identity route keeps the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub pushforward_is_zero: bool,
    pub pullback_of_pushforward_is_zero: bool,
    pub identity_route_is_class: bool,
    pub composites_differ: bool,
}

pub fn verify_noncommuting_square() -> Result<SquareReport, LogChowError> {
    let a2 = crate::fan::fan_a2();
    let s = star_subdivision(&a2, &lattice::int_vec(&[1, 1]))?;
    let bl = s.source().clone();
    let eray = Cone::from_generators(2, &[lattice::int_vec(&[1, 1])])?;
    let eidx = bl.find_cone(&eray).ok_or(LogChowError::Fan(FanError::ConeNotInFan))?;
    let p1_class = LogCycleClass::new(
        s.clone(),
        CycleRep::new(bl.clone(), 1, [(eidx, Int::one())]).map_err(LogChowError::Chow)?,
    )?;

    // Route 1: identity then identity Gysin keeps the class.
    let id = Subdivision::identity(bl.clone());
    let route1 = transport(&p1_class, &id)?;
    let identity_route_is_class = equals(&route1, &p1_class)?;

    // Route 2: push down to the base level, then pull back.
    let pushed = pushforward_subdivision(&s, p1_class.cycle()).map_err(LogChowError::Chow)?;
    let pushforward_is_zero = pushed.is_zero();
    let pulled = gysin_subdivision(&s, &pushed).map_err(LogChowError::Chow)?;
    let pullback_of_pushforward_is_zero = pulled.is_zero();

    let route2 = LogCycleClass::new(s.clone(), pulled)?;
    let composites_differ = !equals(&route1, &route2)?;
    Ok(SquareReport {
        pushforward_is_zero,
        pullback_of_pushforward_is_zero,
        identity_route_is_class,
        composites_differ,
    })
}
