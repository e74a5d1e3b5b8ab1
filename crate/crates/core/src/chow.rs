//! Intersection theory on a fixed fan.
//!
//! Cycles are integer combinations of orbit closures `V(σ)`; rational
//! equivalence is presented by the divisors of characters on the orbit
//! closures one dimension up. Chow cohomology is modelled by Minkowski
//! weights (balanced integer weights on fixed-codimension cones) with the
//! cup product given by the fan displacement rule; the displacement vector
//! is drawn from a deterministic stream seeded by the fan and certified
//! exactly before use.
//!
//! On smooth complete fans, Poincaré duality is realised in both directions:
//! `weight_of_cycle` sends an orbit closure to the cup product of the
//! cocycles of its rays (divisor/curve intersection numbers), and
//! `cycle_of_weight` solves the resulting integer system. The Gysin map
//! along a subdivision pulls back the ray divisors as piecewise-linear
//! functions and caps them against the fundamental class of the refinement,
//! which agrees with the duality route on complete fans and needs no
//! completion otherwise.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::blowup::{resolve, BlowupError, Subdivision};
use crate::dd::{feasible, AffEq, AffIneq};
use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{
    self, add, dot, is_zero_vec, neg, primitivize, scale, solve_combination, sub, vec_mat, Int,
    IntMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChowError {
    /// Operands live on different fans.
    FanMismatch,
    /// Cycle or weight dimensions do not match the operation.
    DimensionMismatch,
    NotComplete,
    NotSmooth,
    /// No certified generic displacement vector within the retry budget.
    NoGenericDisplacement,
    /// Ray values do not extend to integral linear functionals conewise.
    NotIntegralLinear,
    /// A weight outside the image of the duality map (internal).
    NotInImage,
    /// Smooth completion unavailable at this rank without user input.
    CompletionUnavailable,
    Blowup(BlowupError),
    Fan(FanError),
}

impl fmt::Display for ChowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChowError::FanMismatch => write!(f, "operands on different fans"),
            ChowError::DimensionMismatch => write!(f, "dimension mismatch"),
            ChowError::NotComplete => write!(f, "fan is not complete"),
            ChowError::NotSmooth => write!(f, "fan is not smooth"),
            ChowError::NoGenericDisplacement => write!(f, "no generic displacement found"),
            ChowError::NotIntegralLinear => {
                write!(f, "values do not extend to an integral linear function")
            }
            ChowError::NotInImage => write!(f, "weight not in the image of the duality map"),
            ChowError::CompletionUnavailable => {
                write!(f, "smooth completion unavailable; supply one")
            }
            ChowError::Blowup(e) => write!(f, "{e}"),
            ChowError::Fan(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ChowError {}

impl From<FanError> for ChowError {
    fn from(e: FanError) -> Self {
        ChowError::Fan(e)
    }
}

impl From<BlowupError> for ChowError {
    fn from(e: BlowupError) -> Self {
        ChowError::Blowup(e)
    }
}

/// An integer cycle of dimension `dim`: coefficients on the cones of
/// dimension `rank - dim` (zero coefficients are not stored).
#[derive(Clone, PartialEq, Eq)]
pub struct CycleRep {
    fan: Fan,
    dim: usize,
    coeffs: BTreeMap<usize, Int>,
}

impl fmt::Debug for CycleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle(dim {}, {:?})", self.dim, self.coeffs)
    }
}

impl CycleRep {
    pub fn new(
        fan: Fan,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Int)>,
    ) -> Result<CycleRep, ChowError> {
        if dim > fan.ambient_rank() {
            // The cycle group vanishes above the ambient rank; only the
            // zero cycle lives there.
            if entries.into_iter().any(|(_, c)| !c.is_zero()) {
                return Err(ChowError::DimensionMismatch);
            }
            return Ok(CycleRep { fan, dim, coeffs: BTreeMap::new() });
        }
        let key_dim = fan.ambient_rank() - dim;
        let mut coeffs = BTreeMap::new();
        for (idx, c) in entries {
            if idx >= fan.num_cones() {
                return Err(ChowError::Fan(FanError::ConeNotInFan));
            }
            if fan.cone(idx).dim() != key_dim {
                return Err(ChowError::DimensionMismatch);
            }
            if !c.is_zero() {
                let e = coeffs.entry(idx).or_insert_with(Int::zero);
                *e += c;
                if e.is_zero() {
                    coeffs.remove(&idx);
                }
            }
        }
        Ok(CycleRep { fan, dim, coeffs })
    }

    pub fn zero(fan: Fan, dim: usize) -> CycleRep {
        CycleRep { fan, dim, coeffs: BTreeMap::new() }
    }

    /// The fundamental class `[X]`: coefficient 1 on the zero cone.
    pub fn fundamental(fan: Fan) -> CycleRep {
        let dim = fan.ambient_rank();
        let zc = fan.zero_cone_index();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(zc, Int::one());
        CycleRep { fan, dim, coeffs }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Int> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> Int {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn checked_add(&self, other: &CycleRep) -> Result<CycleRep, ChowError> {
        if self.fan != other.fan || self.dim != other.dim {
            return Err(ChowError::FanMismatch);
        }
        let entries = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|(&i, c)| (i, c.clone()));
        CycleRep::new(self.fan.clone(), self.dim, entries)
    }

    pub fn checked_sub(&self, other: &CycleRep) -> Result<CycleRep, ChowError> {
        self.checked_add(&other.scaled(&Int::from(-1)))
    }

    pub fn scaled(&self, s: &Int) -> CycleRep {
        let coeffs = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&i, c)| (i, c * s)).collect()
        };
        CycleRep { fan: self.fan.clone(), dim: self.dim, coeffs }
    }

    /// Coefficient vector over the canonical list of key cones.
    pub fn to_vector(&self) -> Vec<Int> {
        if self.dim > self.fan.ambient_rank() {
            return Vec::new();
        }
        let key_dim = self.fan.ambient_rank() - self.dim;
        self.fan
            .cones_of_dim(key_dim)
            .iter()
            .map(|&i| self.coeff(i))
            .collect()
    }
}

/// The relation lattice presenting rational equivalence in dimension `dim`:
/// one row per pair (τ, u) with τ of dimension rank-dim-1 and u a basis
/// covector of τ^⊥ ∩ M; the entry at σ ⊃ τ is <u, n_{σ,τ}>.
#[derive(Debug, Clone)]
pub struct RelationLattice {
    pub fan: Fan,
    pub dim: usize,
    /// Cone indices of the generators (codim-`dim` cones, canonical order).
    pub generators: Vec<usize>,
    pub relation_vectors: Vec<Vec<Int>>,
}

/// A lattice point of σ generating N_σ / N_τ on the positive (σ) side, for
/// τ a facet of σ.
pub(crate) fn connecting_point(f: &Fan, sigma_idx: usize, tau_idx: usize) -> Vec<Int> {
    let sigma = f.cone(sigma_idx);
    let tau = f.cone(tau_idx);
    debug_assert_eq!(sigma.dim(), tau.dim() + 1);
    let span = sigma.span_lattice();
    let coords = |v: &[Int]| -> Vec<Int> {
        solve_combination(&span.vectors, v)
            .expect("span width")
            .expect("vector lies in the span lattice")
    };
    // Primitive functional on the span coordinates vanishing on tau.
    let tau_rows: Vec<Vec<Int>> = tau.rays().iter().map(|r| coords(r)).collect();
    let m = IntMatrix::from_rows(span.rank(), &tau_rows);
    let kern = lattice::kernel(&m);
    debug_assert_eq!(kern.len(), 1);
    let mut w = kern.into_iter().next().unwrap();
    // Orient positively on sigma.
    let probe = sigma
        .rays()
        .iter()
        .map(|r| dot(&w, &coords(r)))
        .find(|v| !v.is_zero())
        .expect("sigma strictly larger than tau");
    if probe.is_negative() {
        w = neg(&w);
    }
    // Integer point with w-value 1 (w is primitive).
    let x0 = solve_dot_one(&w);
    let mut p = vec_mat(&x0, &IntMatrix::from_rows(span.ambient_rank, &span.vectors));
    // Translate along the interior of tau until inside sigma.
    let tint = tau.interior_point();
    let mut shift = Int::zero();
    for g in sigma.facet_normals() {
        let gt = dot(g, &tint);
        let gp = dot(g, &p);
        if gt.is_zero() {
            debug_assert!(gp.is_positive());
            continue;
        }
        debug_assert!(gt.is_positive());
        if gp.is_negative() {
            let need = (-gp).div_ceil(&gt);
            if need > shift {
                shift = need;
            }
        }
    }
    if !shift.is_zero() {
        p = add(&p, &scale(&tint, &shift));
    }
    debug_assert!(sigma.contains(&p));
    p
}

/// Solve `<w, x> = 1` for integer x; requires w primitive.
fn solve_dot_one(w: &[Int]) -> Vec<Int> {
    // Running extended gcd across the entries.
    let mut x = vec![Int::zero(); w.len()];
    let mut g = Int::zero();
    for (i, wi) in w.iter().enumerate() {
        if wi.is_zero() {
            continue;
        }
        if g.is_zero() {
            // x_i * w_i = |w_i| with sign
            g = wi.abs();
            x = vec![Int::zero(); w.len()];
            x[i] = if wi.is_negative() { -Int::one() } else { Int::one() };
            continue;
        }
        let e = g.extended_gcd(wi);
        // e.x * g + e.y * w_i = gcd
        for xe in x.iter_mut() {
            *xe *= &e.x;
        }
        x[i] += &e.y;
        g = e.gcd;
        if g.is_one() {
            break;
        }
    }
    debug_assert!(g.is_one(), "functional not primitive");
    debug_assert!(dot(w, &x).is_one());
    x
}

/// Relations among the codim-`dim` orbit closures.
pub fn relation_lattice(f: &Fan, dim: usize) -> Result<RelationLattice, ChowError> {
    let n = f.ambient_rank();
    if dim > n {
        return Err(ChowError::DimensionMismatch);
    }
    let generators = f.cones_of_dim(n - dim);
    let mut relation_vectors = Vec::new();
    if n - dim > 0 {
        for tau_idx in f.cones_of_dim(n - dim - 1) {
            let tau = f.cone(tau_idx);
            let rays = IntMatrix::from_rows(n, tau.rays());
            let perp = lattice::kernel(&rays);
            let above: Vec<usize> = f
                .cones_containing(tau_idx)
                .into_iter()
                .filter(|&j| f.cone(j).dim() == n - dim)
                .collect();
            let points: Vec<(usize, Vec<Int>)> = above
                .iter()
                .map(|&j| (j, connecting_point(f, j, tau_idx)))
                .collect();
            for u in &perp {
                let mut row = vec![Int::zero(); generators.len()];
                for (j, p) in &points {
                    let pos = generators.iter().position(|g| g == j).unwrap();
                    row[pos] = dot(u, p);
                }
                relation_vectors.push(row);
            }
        }
    }
    Ok(RelationLattice { fan: f.clone(), dim, generators, relation_vectors })
}

/// Presentation of the Chow group in codimension `k`: generators, relation
/// lattice and the invariant factors of the relation matrix.
pub fn chow_presentation(
    f: &Fan,
    k: usize,
) -> Result<(Vec<usize>, RelationLattice, Vec<Int>), ChowError> {
    let rel = relation_lattice(f, k)?;
    let gens = rel.generators.clone();
    let factors = if rel.relation_vectors.is_empty() {
        Vec::new()
    } else {
        let m = IntMatrix::from_rows(gens.len(), &rel.relation_vectors);
        let (d, _, _) = lattice::smith_normal_form(&m);
        d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    };
    Ok((gens, rel, factors))
}

/// Decide rational equivalence of two cycle representatives.
pub fn is_rationally_equivalent(a: &CycleRep, b: &CycleRep) -> Result<bool, ChowError> {
    if a.fan != b.fan || a.dim != b.dim {
        return Err(ChowError::FanMismatch);
    }
    if a.dim > a.fan.ambient_rank() {
        // Both sides are forced-zero cycles of a vanishing group.
        return Ok(true);
    }
    let rel = relation_lattice(&a.fan, a.dim)?;
    let diff = sub(&a.to_vector(), &b.to_vector());
    if is_zero_vec(&diff) {
        return Ok(true);
    }
    if rel.relation_vectors.is_empty() {
        return Ok(false);
    }
    lattice::in_lattice(&rel.relation_vectors, &diff).map_err(|_| ChowError::DimensionMismatch)
}

/// A balanced integer weight on the codim-`codim` cones of a complete fan.
#[derive(Clone, PartialEq, Eq)]
pub struct MinkowskiWeight {
    fan: Fan,
    codim: usize,
    weights: BTreeMap<usize, Int>,
}

impl fmt::Debug for MinkowskiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight(codim {}, {:?})", self.codim, self.weights)
    }
}

impl MinkowskiWeight {
    pub fn new(
        fan: Fan,
        codim: usize,
        entries: impl IntoIterator<Item = (usize, Int)>,
    ) -> Result<MinkowskiWeight, ChowError> {
        if codim > fan.ambient_rank() {
            return Err(ChowError::DimensionMismatch);
        }
        let key_dim = fan.ambient_rank() - codim;
        let mut weights = BTreeMap::new();
        for (idx, c) in entries {
            if idx >= fan.num_cones() {
                return Err(ChowError::Fan(FanError::ConeNotInFan));
            }
            if fan.cone(idx).dim() != key_dim {
                return Err(ChowError::DimensionMismatch);
            }
            if !c.is_zero() {
                let e = weights.entry(idx).or_insert_with(Int::zero);
                *e += c;
                if e.is_zero() {
                    weights.remove(&idx);
                }
            }
        }
        Ok(MinkowskiWeight { fan, codim, weights })
    }

    pub fn zero(fan: Fan, codim: usize) -> MinkowskiWeight {
        MinkowskiWeight { fan, codim, weights: BTreeMap::new() }
    }

    /// The identity of the cup product: the constant weight 1 in
    /// codimension 0.
    pub fn fundamental_cocycle(fan: Fan) -> MinkowskiWeight {
        let n = fan.ambient_rank();
        let weights =
            fan.cones_of_dim(n).into_iter().map(|i| (i, Int::one())).collect();
        MinkowskiWeight { fan, codim: 0, weights }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn weights(&self) -> &BTreeMap<usize, Int> {
        &self.weights
    }

    pub fn weight(&self, idx: usize) -> Int {
        self.weights.get(&idx).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn checked_add(&self, other: &MinkowskiWeight) -> Result<MinkowskiWeight, ChowError> {
        if self.fan != other.fan || self.codim != other.codim {
            return Err(ChowError::FanMismatch);
        }
        let entries = self
            .weights
            .iter()
            .chain(other.weights.iter())
            .map(|(&i, c)| (i, c.clone()));
        MinkowskiWeight::new(self.fan.clone(), self.codim, entries)
    }

    pub fn scaled(&self, s: &Int) -> MinkowskiWeight {
        let weights = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.weights.iter().map(|(&i, c)| (i, c * s)).collect()
        };
        MinkowskiWeight { fan: self.fan.clone(), codim: self.codim, weights }
    }

    pub fn to_vector(&self) -> Vec<Int> {
        let key_dim = self.fan.ambient_rank() - self.codim;
        self.fan
            .cones_of_dim(key_dim)
            .iter()
            .map(|&i| self.weight(i))
            .collect()
    }

    /// Exact balancing check: the defining condition of a Minkowski weight.
    pub fn is_balanced(&self) -> Result<bool, ChowError> {
        let rel = relation_lattice(&self.fan, self.codim)?;
        let v = self.to_vector();
        Ok(rel.relation_vectors.iter().all(|row| dot(row, &v).is_zero()))
    }
}

/// Basis of the group of Minkowski weights of codimension `p`: the integer
/// kernel of the balancing conditions.
pub fn minkowski_weight_basis(f: &Fan, p: usize) -> Result<Vec<MinkowskiWeight>, ChowError> {
    if !f.is_complete() {
        return Err(ChowError::NotComplete);
    }
    let rel = relation_lattice(f, p)?;
    let gens = rel.generators.clone();
    let kern = if rel.relation_vectors.is_empty() {
        IntMatrix::identity(gens.len()).row_vecs()
    } else {
        let m = IntMatrix::from_rows(gens.len(), &rel.relation_vectors);
        lattice::kernel(&m)
    };
    kern.into_iter()
        .map(|v| {
            MinkowskiWeight::new(
                f.clone(),
                p,
                gens.iter().enumerate().map(|(i, &g)| (g, v[i].clone())),
            )
        })
        .collect()
}

/// Kronecker pairing matrix between the Minkowski-weight basis in
/// codimension `k` and a basis of the free part of the cycle group in
/// dimension `k`, together with its unimodularity.
pub fn kronecker_pairing_matrix(f: &Fan, k: usize) -> Result<(IntMatrix, bool), ChowError> {
    let basis = minkowski_weight_basis(f, k)?;
    let rel = relation_lattice(f, k)?;
    let g = rel.generators.len();
    let free_basis: Vec<Vec<Int>> = if rel.relation_vectors.is_empty() {
        IntMatrix::identity(g).row_vecs()
    } else {
        let m = IntMatrix::from_rows(g, &rel.relation_vectors);
        let s = lattice::smith_with_inverse(&m);
        let r = s.d.diagonal().iter().filter(|x| !x.is_zero()).count();
        (r..g).map(|j| s.v_inv.row(j).to_vec()).collect()
    };
    let mut mat = IntMatrix::zero(basis.len(), free_basis.len());
    for (i, w) in basis.iter().enumerate() {
        let wv = w.to_vector();
        for (j, b) in free_basis.iter().enumerate() {
            *mat.at_mut(i, j) = dot(&wv, b);
        }
    }
    let unimodular = basis.len() == free_basis.len() && {
        let (d, _, _) = lattice::smith_normal_form(&mat);
        let diag = d.diagonal();
        diag.len() == basis.len() && diag.iter().all(|x| x.is_one())
    };
    Ok((mat, unimodular))
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Deterministic displacement-vector stream seeded by the fan's canonical
/// serialization (optionally salted).
pub(crate) struct DisplacementStream {
    rng: rand_chacha::ChaCha8Rng,
    dim: usize,
}

impl DisplacementStream {
    pub fn new(fan: &Fan, salt: u64) -> DisplacementStream {
        let seed =
            fnv64(&fan.canonical_bytes()) ^ salt.wrapping_mul(0x9e3779b97f4a7c15);
        DisplacementStream { rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed), dim: fan.ambient_rank() }
    }

    pub fn next_vector(&mut self, attempt: usize) -> Vec<Int> {
        let bound = 7 + 6 * attempt as i64;
        (0..self.dim)
            .map(|_| {
                let raw = self.rng.next_u64() % (2 * bound as u64 + 1);
                Int::from(raw as i64 - bound)
            })
            .collect()
    }
}

/// Does `a` meet the translate `b + v`? With `strict`, both relative
/// interiors are required to meet.
pub(crate) fn meets_translated(a: &Cone, b: &Cone, v: &[Int], strict: bool) -> bool {
    let dim = a.ambient_rank();
    let mut ineqs: Vec<AffIneq> = Vec::new();
    let mut eqs: Vec<AffEq> = Vec::new();
    for u in a.facet_normals() {
        ineqs.push(AffIneq { a: u.clone(), b: Int::zero(), strict });
    }
    for e in a.span_equations() {
        eqs.push(AffEq { a: e.clone(), b: Int::zero() });
    }
    for u in b.facet_normals() {
        ineqs.push(AffIneq { a: u.clone(), b: -dot(u, v), strict });
    }
    for e in b.span_equations() {
        eqs.push(AffEq { a: e.clone(), b: -dot(e, v) });
    }
    feasible(dim, &eqs, &ineqs)
}

/// Index `[N : N_σ + N_σ']`, or None when the spans do not sum to the whole
/// space.
fn span_sum_index(f: &Fan, i: usize, j: usize) -> Option<Int> {
    let n = f.ambient_rank();
    let mut rows = f.cone(i).span_lattice().vectors;
    rows.extend(f.cone(j).span_lattice().vectors);
    let m = IntMatrix::from_rows(n, &rows);
    let (d, _, _) = lattice::smith_normal_form(&m);
    let nz: Vec<Int> = d.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
    if nz.len() < n {
        return None;
    }
    let mut prod = Int::one();
    for x in nz {
        prod *= x;
    }
    Some(prod)
}

fn certified(f: &Fan, v: &[Int], deficient: &[(usize, usize)]) -> bool {
    deficient
        .iter()
        .all(|&(i, j)| !meets_translated(f.cone(i), f.cone(j), v, false))
}

fn deficient_pairs(f: &Fan) -> Vec<(usize, usize)> {
    let n = f.ambient_rank();
    let mut out = Vec::new();
    for i in 0..f.num_cones() {
        for j in 0..f.num_cones() {
            let mut rows = f.cone(i).span_lattice().vectors;
            rows.extend(f.cone(j).span_lattice().vectors);
            if lattice::rank(&IntMatrix::from_rows(n, &rows)) < n {
                out.push((i, j));
            }
        }
    }
    out
}

/// Cup product of Minkowski weights by the fan displacement rule, with a
/// salted deterministic displacement stream.
pub fn cup_seeded(
    c1: &MinkowskiWeight,
    c2: &MinkowskiWeight,
    salt: u64,
) -> Result<MinkowskiWeight, ChowError> {
    if c1.fan != c2.fan {
        return Err(ChowError::FanMismatch);
    }
    let f = &c1.fan;
    if !f.is_complete() {
        return Err(ChowError::NotComplete);
    }
    let n = f.ambient_rank();
    let p = c1.codim + c2.codim;
    if p > n {
        return Err(ChowError::DimensionMismatch);
    }
    let deficient = deficient_pairs(f);
    let mut stream = DisplacementStream::new(f, salt);
    for attempt in 0..32 {
        let v = stream.next_vector(attempt);
        if is_zero_vec(&v) || !certified(f, &v, &deficient) {
            continue;
        }
        let mut weights: BTreeMap<usize, Int> = BTreeMap::new();
        for gamma in f.cones_of_dim(n - p) {
            let mut total = Int::zero();
            let above = f.cones_containing(gamma);
            for &i in &above {
                if f.cone(i).dim() != n - c1.codim {
                    continue;
                }
                let w1 = c1.weight(i);
                if w1.is_zero() {
                    continue;
                }
                for &j in &above {
                    if f.cone(j).dim() != n - c2.codim {
                        continue;
                    }
                    let w2 = c2.weight(j);
                    if w2.is_zero() {
                        continue;
                    }
                    if !meets_translated(f.cone(i), f.cone(j), &v, true) {
                        continue;
                    }
                    let idx = span_sum_index(f, i, j)
                        .expect("certified pairs meet transversally");
                    total += idx * &w1 * &w2;
                }
            }
            if !total.is_zero() {
                weights.insert(gamma, total);
            }
        }
        let out = MinkowskiWeight { fan: f.clone(), codim: p, weights };
        // An unbalanced result means the displacement was not generic after
        // all; resample.
        if out.is_balanced()? {
            return Ok(out);
        }
    }
    Err(ChowError::NoGenericDisplacement)
}

/// Cup product with the default (fan-derived) displacement stream.
pub fn cup(c1: &MinkowskiWeight, c2: &MinkowskiWeight) -> Result<MinkowskiWeight, ChowError> {
    cup_seeded(c1, c2, 0)
}

/// Intersection number of the divisor of a ray with the invariant curve of
/// a wall on a smooth complete fan.
fn divisor_curve_degree(f: &Fan, ray: &[Int], wall_idx: usize) -> Int {
    let wall = f.cone(wall_idx);
    let n = f.ambient_rank();
    let cofaces: Vec<usize> = f
        .cones_containing(wall_idx)
        .into_iter()
        .filter(|&j| f.cone(j).dim() == n)
        .collect();
    debug_assert_eq!(cofaces.len(), 2);
    let extra = |max_idx: usize| -> Vec<Int> {
        f.cone(max_idx)
            .rays()
            .iter()
            .find(|r| !wall.rays().contains(r))
            .expect("maximal cone exceeds wall")
            .clone()
    };
    let u_plus = extra(cofaces[0]);
    let u_minus = extra(cofaces[1]);
    if ray == u_plus.as_slice() || ray == u_minus.as_slice() {
        return Int::one();
    }
    if let Some(pos) = wall.rays().iter().position(|r| r.as_slice() == ray) {
        // Wall relation u+ + u- = Σ c_ρ ρ over the wall's rays.
        let s = add(&u_plus, &u_minus);
        let c = solve_combination(wall.rays(), &s)
            .expect("ambient width")
            .expect("wall relation is integral on a smooth fan");
        return -c[pos].clone();
    }
    Int::zero()
}

/// The Poincaré-dual weight of the divisor `V(ρ)` on a smooth complete fan:
/// its intersection numbers with the invariant curves.
pub fn ray_cocycle(f: &Fan, ray_idx: usize) -> Result<MinkowskiWeight, ChowError> {
    if !f.is_complete() {
        return Err(ChowError::NotComplete);
    }
    if !f.is_locally_free() {
        return Err(ChowError::NotSmooth);
    }
    let n = f.ambient_rank();
    let ray = f.rays()[ray_idx].clone();
    let entries: Vec<(usize, Int)> = f
        .cones_of_dim(n - 1)
        .into_iter()
        .map(|w| (w, divisor_curve_degree(f, &ray, w)))
        .collect();
    let out = MinkowskiWeight::new(f.clone(), 1, entries)?;
    debug_assert!(out.is_balanced()?);
    Ok(out)
}

/// Poincaré duality, cycle to weight: `Σ a_τ · ∪_{ρ∈τ} ray_cocycle(ρ)`.
pub fn weight_of_cycle(a: &CycleRep) -> Result<MinkowskiWeight, ChowError> {
    let f = &a.fan;
    if !f.is_complete() {
        return Err(ChowError::NotComplete);
    }
    if !f.is_locally_free() {
        return Err(ChowError::NotSmooth);
    }
    let n = f.ambient_rank();
    let p = n - a.dim;
    let mut ray_classes: BTreeMap<usize, MinkowskiWeight> = BTreeMap::new();
    let mut acc = MinkowskiWeight::zero(f.clone(), p);
    for (&tau_idx, coeff) in &a.coeffs {
        let mut w = MinkowskiWeight::fundamental_cocycle(f.clone());
        for r in f.cone(tau_idx).rays() {
            let ri = f.ray_index(r).expect("fan ray");
            if let Entry::Vacant(e) = ray_classes.entry(ri) {
                e.insert(ray_cocycle(f, ri)?);
            }
            w = cup(&w, &ray_classes[&ri])?;
        }
        acc = acc.checked_add(&w.scaled(coeff))?;
    }
    debug_assert!(acc.is_balanced()?);
    Ok(acc)
}

/// Poincaré duality, weight to cycle: solve `weight_of_cycle(result) = c`
/// over the integers. Defined on smooth complete fans, where duality is an
/// isomorphism.
pub fn cycle_of_weight(c: &MinkowskiWeight) -> Result<CycleRep, ChowError> {
    let f = &c.fan;
    if !f.is_complete() {
        return Err(ChowError::NotComplete);
    }
    if !f.is_locally_free() {
        return Err(ChowError::NotSmooth);
    }
    let n = f.ambient_rank();
    let k = n - c.codim;
    let keys = f.cones_of_dim(c.codim);
    let mut rows = Vec::with_capacity(keys.len());
    for &tau in &keys {
        let mut one = CycleRep::zero(f.clone(), k);
        one.coeffs.insert(tau, Int::one());
        rows.push(weight_of_cycle(&one)?.to_vector());
    }
    let target = c.to_vector();
    let alpha = solve_combination(&rows, &target)
        .map_err(|_| ChowError::DimensionMismatch)?
        .ok_or(ChowError::NotInImage)?;
    CycleRep::new(
        f.clone(),
        k,
        keys.into_iter().zip(alpha),
    )
}

/// Pushforward of cycles along a subdivision: an orbit closure maps to the
/// orbit closure of its carrier when the dimensions agree (degree 1), and
/// dies otherwise.
pub fn pushforward_subdivision(s: &Subdivision, a: &CycleRep) -> Result<CycleRep, ChowError> {
    if a.fan != *s.source() {
        return Err(ChowError::FanMismatch);
    }
    let entries = a.coeffs.iter().filter_map(|(&i, c)| {
        let tgt = s.cone_map()[i];
        if s.target().cone(tgt).dim() == s.source().cone(i).dim() {
            Some((tgt, c.clone()))
        } else {
            None
        }
    });
    CycleRep::new(s.target().clone(), a.dim, entries)
}

/// Pullback of a Minkowski weight along a subdivision of complete fans: a
/// source cone inherits the weight of its carrier when the dimensions
/// agree. (Dual to `pushforward_subdivision` under the Kronecker pairing.)
pub fn weight_pullback(s: &Subdivision, c: &MinkowskiWeight) -> Result<MinkowskiWeight, ChowError> {
    if c.fan != *s.target() {
        return Err(ChowError::FanMismatch);
    }
    if !s.source().is_complete() || !s.target().is_complete() {
        return Err(ChowError::NotComplete);
    }
    let n = s.source().ambient_rank();
    let entries: Vec<(usize, Int)> = s
        .source()
        .cones_of_dim(n - c.codim)
        .into_iter()
        .filter_map(|i| {
            let tgt = s.cone_map()[i];
            if s.target().cone(tgt).dim() == s.source().cone(i).dim() {
                Some((i, c.weight(tgt)))
            } else {
                None
            }
        })
        .collect();
    let out = MinkowskiWeight::new(s.source().clone(), c.codim, entries)?;
    debug_assert!(out.is_balanced()?);
    Ok(out)
}

/// An integral piecewise-linear function on a fan: values on the rays that
/// extend to an integral linear functional on every cone.
#[derive(Clone, PartialEq, Eq)]
pub struct PLFunction {
    fan: Fan,
    ray_values: Vec<Int>,
    cone_functionals: Vec<Vec<Int>>,
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL({:?})", self.ray_values)
    }
}

impl PLFunction {
    pub fn new(fan: Fan, ray_values: Vec<Int>) -> Result<PLFunction, ChowError> {
        if ray_values.len() != fan.rays().len() {
            return Err(ChowError::DimensionMismatch);
        }
        let n = fan.ambient_rank();
        let mut cone_functionals = Vec::with_capacity(fan.num_cones());
        for i in 0..fan.num_cones() {
            let cone = fan.cone(i);
            // Solve g · R^T = values over the integers.
            let rt_rows: Vec<Vec<Int>> = (0..n)
                .map(|k| cone.rays().iter().map(|r| r[k].clone()).collect())
                .collect();
            let vals: Vec<Int> = fan.cones()[i]
                .iter()
                .map(|&ri| ray_values[ri].clone())
                .collect();
            let g = solve_combination(&rt_rows, &vals)
                .map_err(|_| ChowError::DimensionMismatch)?
                .ok_or(ChowError::NotIntegralLinear)?;
            cone_functionals.push(g);
        }
        Ok(PLFunction { fan, ray_values, cone_functionals })
    }

    /// The function cutting out `V(ρ)`: value -1 on the ray, 0 elsewhere.
    /// Requires a simplicial fan to be well defined.
    pub fn ray_divisor(fan: &Fan, ray_idx: usize) -> Result<PLFunction, ChowError> {
        let mut vals = vec![Int::zero(); fan.rays().len()];
        vals[ray_idx] = -Int::one();
        PLFunction::new(fan.clone(), vals)
    }

    /// Support function of a lattice polytope: `u -> min_m <m, u>` over the
    /// vertices. Errors when not conewise linear on this fan.
    pub fn support_function(fan: &Fan, vertices: &[Vec<Int>]) -> Result<PLFunction, ChowError> {
        if vertices.is_empty() {
            return Err(ChowError::DimensionMismatch);
        }
        let vals: Vec<Int> = fan
            .rays()
            .iter()
            .map(|u| vertices.iter().map(|m| dot(m, u)).min().unwrap())
            .collect();
        PLFunction::new(fan.clone(), vals)
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ray_values(&self) -> &[Int] {
        &self.ray_values
    }

    pub fn value_at(&self, v: &[Int]) -> Option<Int> {
        let carrier = self.fan.smallest_cone_containing(v)?;
        Some(dot(&self.cone_functionals[carrier], v))
    }

    /// Pull back along a refinement or a compatible toric morphism given by
    /// evaluation at the rays of the finer fan.
    pub fn pull_to(&self, finer: &Fan) -> Result<PLFunction, ChowError> {
        let vals: Vec<Int> = finer
            .rays()
            .iter()
            .map(|r| self.value_at(r).ok_or(ChowError::FanMismatch))
            .collect::<Result<_, _>>()?;
        PLFunction::new(finer.clone(), vals)
    }
}

/// Canonical linear extension of ψ from the span of τ, vanishing on the
/// deterministic complement of the span lattice.
fn canonical_extension(f: &Fan, psi: &PLFunction, tau_idx: usize) -> Vec<Int> {
    let n = f.ambient_rank();
    let tau_span = f.cone(tau_idx).span_lattice();
    let full = lattice::complete_basis(&tau_span);
    let g_tau = &psi.cone_functionals[tau_idx];
    let mut rhs: Vec<Int> = (0..tau_span.rank())
        .map(|i| dot(g_tau, full.row(i)))
        .collect();
    rhs.extend(vec![Int::zero(); n - tau_span.rank()]);
    let f_inv = lattice::invert_unimodular(&full);
    // e with F · e^T = rhs.
    lattice::mat_vec(&f_inv, &rhs)
}

/// Cap a cycle with the divisor of a piecewise-linear function:
/// `D_ψ · V(τ) = Σ_{σ ⊃ τ} <ψ_τ − ψ_σ, n_{σ,τ}> V(σ)`.
pub fn divisor_cap(psi: &PLFunction, a: &CycleRep) -> Result<CycleRep, ChowError> {
    if psi.fan != a.fan {
        return Err(ChowError::FanMismatch);
    }
    if a.dim == 0 {
        return Err(ChowError::DimensionMismatch);
    }
    let f = &a.fan;
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for (&tau_idx, coeff) in &a.coeffs {
        let ext = canonical_extension(f, psi, tau_idx);
        let tau_dim = f.cone(tau_idx).dim();
        for sigma_idx in f.cones_containing(tau_idx) {
            if f.cone(sigma_idx).dim() != tau_dim + 1 {
                continue;
            }
            let p = connecting_point(f, sigma_idx, tau_idx);
            let val = dot(&ext, &p) - dot(&psi.cone_functionals[sigma_idx], &p);
            if !val.is_zero() {
                entries.push((sigma_idx, coeff * val));
            }
        }
    }
    CycleRep::new(f.clone(), a.dim - 1, entries)
}

/// Degree of a zero-cycle on a complete fan.
pub fn degree(a: &CycleRep) -> Result<Int, ChowError> {
    if !a.fan.is_complete() {
        return Err(ChowError::NotComplete);
    }
    if a.dim != 0 {
        return Err(ChowError::DimensionMismatch);
    }
    Ok(a.coeffs.values().fold(Int::zero(), |acc, c| acc + c))
}

/// Gysin pullback along a subdivision with smooth source and target.
///
/// Each orbit closure `V(τ)` is the transverse intersection of the ray
/// divisors of τ, so its Gysin pullback is computed by capping the pulled
/// back piecewise-linear functions of those rays against the fundamental
/// class of the source. Degree preserving; needs no completion.
pub fn gysin_subdivision(s: &Subdivision, a: &CycleRep) -> Result<CycleRep, ChowError> {
    if a.fan != *s.target() {
        return Err(ChowError::FanMismatch);
    }
    if !s.source().is_locally_free() || !s.target().is_locally_free() {
        return Err(ChowError::NotSmooth);
    }
    let mut pulled: BTreeMap<usize, PLFunction> = BTreeMap::new();
    let mut out = CycleRep::zero(s.source().clone(), a.dim);
    for (&tau_idx, coeff) in &a.coeffs {
        let mut cur = CycleRep::fundamental(s.source().clone());
        for r in s.target().cone(tau_idx).rays() {
            let ri = s.target().ray_index(r).expect("fan ray");
            if let Entry::Vacant(e) = pulled.entry(ri) {
                let pl = PLFunction::ray_divisor(s.target(), ri)?;
                e.insert(pl.pull_to(s.source())?);
            }
            cur = divisor_cap(&pulled[&ri], &cur)?;
        }
        out = out.checked_add(&cur.scaled(coeff))?;
    }
    Ok(out)
}

/// Strict Gysin map to the orbit closure of a cone of a smooth fan:
/// iterated divisor cap over the rays of the cone followed by restriction
/// to the star fan.
pub fn strict_gysin_orbit(
    f: &Fan,
    sigma_idx: usize,
    a: &CycleRep,
) -> Result<CycleRep, ChowError> {
    if !f.is_locally_free() {
        return Err(ChowError::NotSmooth);
    }
    if a.fan != *f {
        return Err(ChowError::FanMismatch);
    }
    let sigma = f.cone(sigma_idx).clone();
    if a.dim < sigma.dim() {
        return Err(ChowError::DimensionMismatch);
    }
    let mut cur = a.clone();
    for r in sigma.rays() {
        let ri = f.ray_index(r).expect("fan ray");
        cur = divisor_cap(&PLFunction::ray_divisor(f, ri)?, &cur)?;
    }
    // Restrict to the star: keep cones containing sigma, mapped through the
    // quotient.
    let star = f.star(sigma_idx)?;
    let span = sigma.span_lattice();
    let q = lattice::quotient_matrix(&span);
    let mut entries: Vec<(usize, Int)> = Vec::new();
    for (&c_idx, coeff) in &cur.coeffs {
        if !crate::fan::is_subset(&f.cones()[sigma_idx], &f.cones()[c_idx]) {
            continue;
        }
        let image: Vec<Vec<Int>> =
            f.cone(c_idx).rays().iter().map(|r| vec_mat(r, &q)).collect();
        let img_cone = Cone::from_generators(star.ambient_rank(), &image)?;
        let star_idx = star.find_cone(&img_cone).ok_or(ChowError::Fan(FanError::ConeNotInFan))?;
        entries.push((star_idx, coeff.clone()));
    }
    CycleRep::new(star, a.dim - sigma.dim(), entries)
}

/// A smooth completion of a fan together with the resolution of the input
/// it contains and the embedding of its cones.
#[derive(Debug, Clone)]
pub struct Completion {
    pub fan: Fan,
    /// Smooth refinement of the input appearing as a subfan.
    pub resolved: Subdivision,
    /// For each cone of `resolved.source()`, its index in `fan`.
    pub embedding: Vec<usize>,
}

/// Extend a fan to a complete smooth fan containing a smooth resolution of
/// it as a subfan. Complete inputs are returned unchanged; rank <= 2 is
/// handled unconditionally and rank 3 for pure fans by coning off the
/// boundary; otherwise a user-supplied completion is validated and used.
pub fn complete_fan(f: &Fan, user: Option<&Fan>) -> Result<Completion, ChowError> {
    if f.is_complete() {
        let resolved = Subdivision::identity(f.clone());
        let embedding = (0..f.num_cones()).collect();
        return Ok(Completion { fan: f.clone(), resolved, embedding });
    }
    let resolved = resolve(f)?;
    let src = resolved.source().clone();
    if let Some(c) = user {
        if !c.is_complete() || !c.is_locally_free() {
            return Err(ChowError::CompletionUnavailable);
        }
        let embedding = embed_subfan(&src, c).ok_or(ChowError::CompletionUnavailable)?;
        return Ok(Completion { fan: c.clone(), resolved, embedding });
    }
    match f.ambient_rank() {
        0 => unreachable!("rank-0 fans are complete"),
        1 => {
            let mut gens: Vec<Vec<Vec<Int>>> =
                src.rays().iter().map(|r| vec![r.clone()]).collect();
            gens.push(vec![vec![Int::one()]]);
            gens.push(vec![vec![-Int::one()]]);
            let fan = Fan::from_cones(1, &gens)?;
            let embedding = embed_subfan(&src, &fan).expect("rays embed");
            Ok(Completion { fan, resolved, embedding })
        }
        2 => {
            let fan = complete_rank2(&src)?;
            let embedding = embed_subfan(&src, &fan).ok_or(ChowError::CompletionUnavailable)?;
            Ok(Completion { fan, resolved, embedding })
        }
        3 => {
            let fan = complete_rank3(&src)?;
            let embedding = embed_subfan(&src, &fan).ok_or(ChowError::CompletionUnavailable)?;
            Ok(Completion { fan, resolved, embedding })
        }
        _ => Err(ChowError::CompletionUnavailable),
    }
}

/// Rank-3 completion of a smooth fan: cone every boundary facet off to a
/// candidate apex ray, validate the result as a fan, then resolve. The
/// resolution never touches the smooth subfan, because lattice points of a
/// fundamental parallelepiped cannot lie on a smooth face.
fn complete_rank3(src: &Fan) -> Result<Fan, ChowError> {
    if src.rays().is_empty() {
        // Only the zero cone: the fan of projective 3-space.
        let e1 = vec![Int::one(), Int::zero(), Int::zero()];
        let e2 = vec![Int::zero(), Int::one(), Int::zero()];
        let e3 = vec![Int::zero(), Int::zero(), Int::one()];
        let m: Vec<Int> = vec![-Int::one(), -Int::one(), -Int::one()];
        let gens: Vec<Vec<Vec<Int>>> = vec![
            vec![e1.clone(), e2.clone(), e3.clone()],
            vec![e1.clone(), e2.clone(), m.clone()],
            vec![e1.clone(), e3.clone(), m.clone()],
            vec![e2, e3, m],
        ];
        return Ok(Fan::from_cones(3, &gens)?);
    }
    let maxes = src.maximal_cones();
    if maxes.iter().any(|&i| src.cone(i).dim() != 3) {
        // Coning off needs a pure boundary.
        return Err(ChowError::CompletionUnavailable);
    }
    // Facets of exactly one maximal cone bound the support.
    let boundary: Vec<usize> = src
        .cones_of_dim(2)
        .into_iter()
        .filter(|&w| {
            src.cones_containing(w)
                .into_iter()
                .filter(|&j| src.cone(j).dim() == 3)
                .count()
                == 1
        })
        .collect();
    let mut candidates: Vec<Vec<Int>> = Vec::new();
    let mut interior = vec![Int::zero(); 3];
    for r in src.rays() {
        candidates.push(neg(r));
        interior = add(&interior, r);
    }
    candidates.push(primitivize(&neg(&interior)));
    for i in 0..3 {
        for s in [1i64, -1] {
            let mut e = vec![Int::zero(); 3];
            e[i] = Int::from(s);
            candidates.push(e);
        }
    }
    candidates.dedup();
    for w in candidates {
        if is_zero_vec(&w) || src.supports(&w) {
            continue;
        }
        let mut gens: Vec<Vec<Vec<Int>>> =
            (0..src.num_cones()).map(|i| src.cone(i).rays().to_vec()).collect();
        for &b in &boundary {
            let mut g = src.cone(b).rays().to_vec();
            g.push(w.clone());
            gens.push(g);
        }
        let Ok(cand) = Fan::from_cones(3, &gens) else { continue };
        if !cand.is_complete() || embed_subfan(src, &cand).is_none() {
            continue;
        }
        let r = resolve(&cand)?;
        let fan = r.source().clone();
        if embed_subfan(src, &fan).is_some() {
            return Ok(fan);
        }
    }
    Err(ChowError::CompletionUnavailable)
}

fn embed_subfan(sub: &Fan, sup: &Fan) -> Option<Vec<usize>> {
    (0..sub.num_cones())
        .map(|i| sup.find_cone(sub.cone(i)))
        .collect()
}

/// Angular order on primitive vectors in the plane, counterclockwise from
/// the positive x-axis.
fn angle_class(v: &[Int]) -> (u8, Vec<Int>) {
    let upper = v[1].is_positive() || (v[1].is_zero() && v[0].is_positive());
    (if upper { 0 } else { 1 }, v.to_vec())
}

fn cross2(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn complete_rank2(src: &Fan) -> Result<Fan, ChowError> {
    if src.rays().is_empty() {
        // Only the zero cone: any smooth complete fan works.
        return Ok(crate::fan::fan_p2());
    }
    let mut rays: Vec<Vec<Int>> = src.rays().to_vec();
    // Insert antipodes until every cyclic gap has angle < pi.
    loop {
        rays.sort_by(|a, b| {
            let (ha, _) = angle_class(a);
            let (hb, _) = angle_class(b);
            ha.cmp(&hb).then_with(|| cross2(b, a).cmp(&Int::zero())).then_with(|| a.cmp(b))
        });
        let m = rays.len();
        if m == 1 {
            let opp = neg(&rays[0]);
            rays.push(opp);
            continue;
        }
        let mut inserted = false;
        for i in 0..m {
            let a = rays[i].clone();
            let b = rays[(i + 1) % m].clone();
            let cr = cross2(&a, &b);
            // Gap from a counterclockwise to b.
            if cr.is_positive() {
                continue;
            }
            let candidate = if b == neg(&a) {
                primitivize(&[-a[1].clone(), a[0].clone()])
            } else {
                neg(&a)
            };
            if !rays.contains(&candidate) {
                rays.push(candidate);
                inserted = true;
                break;
            }
            // Antipode already present but not adjacent: the sort order will
            // place it inside the gap next round.
            return Err(ChowError::CompletionUnavailable);
        }
        if !inserted {
            break;
        }
    }
    // Fill each gap that is not already a cone of the source with the
    // Hilbert walk, which yields unimodular consecutive pairs.
    let m = rays.len();
    let mut gens: Vec<Vec<Vec<Int>>> = (0..src.num_cones())
        .map(|i| src.cone(i).rays().to_vec())
        .collect();
    for i in 0..m {
        let a = rays[i].clone();
        let b = rays[(i + 1) % m].clone();
        let sector = Cone::from_generators(2, &[a.clone(), b.clone()])?;
        if src.find_cone(&sector).is_some() {
            continue;
        }
        let chain = crate::fan::hull_walk(a, b);
        for w in chain.windows(2) {
            gens.push(vec![w[0].clone(), w[1].clone()]);
        }
    }
    let fan = Fan::from_cones(2, &gens)?;
    if !fan.is_complete() || !fan.is_locally_free() {
        return Err(ChowError::CompletionUnavailable);
    }
    Ok(fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::star_subdivision;
    use crate::fan::{fan_a2, fan_bl0_p2, fan_p1, fan_p1xp1, fan_p2};
    use crate::lattice::int_vec;

    fn ray_idx(f: &Fan, v: &[i64]) -> usize {
        let ray = Cone::from_generators(f.ambient_rank(), &[int_vec(v)]).unwrap();
        f.find_cone(&ray).unwrap()
    }

    #[test]
    fn presentation_of_p2_divisors() {
        let p2 = fan_p2();
        let (gens, rel, factors) = chow_presentation(&p2, 1).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(rel.relation_vectors.len(), 2);
        assert_eq!(factors, int_vec(&[1, 1]));
        // Free rank 1, no torsion: A_1(P^2) = Z.
    }

    #[test]
    fn presentation_of_p1xp1_divisors() {
        let f = fan_p1xp1();
        let (gens, _, factors) = chow_presentation(&f, 1).unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(factors, int_vec(&[1, 1]));
        // rank 2.
    }

    #[test]
    fn presentation_top_dim() {
        let p2 = fan_p2();
        let (gens, rel, factors) = chow_presentation(&p2, 2).unwrap();
        assert_eq!(gens.len(), 1);
        assert!(rel.relation_vectors.is_empty());
        assert!(factors.is_empty());
    }

    #[test]
    fn rational_equivalence_on_p2() {
        let p2 = fan_p2();
        let r1 = ray_idx(&p2, &[1, 0]);
        let r2 = ray_idx(&p2, &[0, 1]);
        let a = CycleRep::new(p2.clone(), 1, [(r1, Int::one())]).unwrap();
        let b = CycleRep::new(p2.clone(), 1, [(r2, Int::one())]).unwrap();
        assert!(is_rationally_equivalent(&a, &b).unwrap());
        assert!(is_rationally_equivalent(&a, &a).unwrap());
    }

    #[test]
    fn rulings_not_equivalent_on_p1xp1() {
        let f = fan_p1xp1();
        let h = ray_idx(&f, &[1, 0]);
        let v = ray_idx(&f, &[0, 1]);
        let a = CycleRep::new(f.clone(), 1, [(h, Int::one())]).unwrap();
        let b = CycleRep::new(f.clone(), 1, [(v, Int::one())]).unwrap();
        assert!(!is_rationally_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn mw_basis_examples() {
        let p2 = fan_p2();
        let b1 = minkowski_weight_basis(&p2, 1).unwrap();
        assert_eq!(b1.len(), 1);
        // Balancing forces the constant weight on rays.
        let vals = b1[0].to_vector();
        assert!(vals.iter().all(|v| v == &vals[0]));
        assert_eq!(vals[0].abs(), Int::one());

        let b0 = minkowski_weight_basis(&p2, 0).unwrap();
        assert_eq!(b0.len(), 1);

        let f = fan_p1xp1();
        let b1 = minkowski_weight_basis(&f, 1).unwrap();
        assert_eq!(b1.len(), 2);

        assert_eq!(minkowski_weight_basis(&fan_a2(), 1).err(), Some(ChowError::NotComplete));
    }

    fn h_weight(p2: &Fan) -> MinkowskiWeight {
        let entries: Vec<(usize, Int)> =
            p2.cones_of_dim(1).into_iter().map(|i| (i, Int::one())).collect();
        MinkowskiWeight::new(p2.clone(), 1, entries).unwrap()
    }

    #[test]
    fn cup_on_p2_is_point() {
        let p2 = fan_p2();
        let h = h_weight(&p2);
        let hh = cup(&h, &h).unwrap();
        assert_eq!(hh.codim(), 2);
        let zc = p2.zero_cone_index();
        assert_eq!(hh.weight(zc), Int::one());
    }

    #[test]
    fn cup_with_fundamental_cocycle_is_identity() {
        let p2 = fan_p2();
        let h = h_weight(&p2);
        let one = MinkowskiWeight::fundamental_cocycle(p2.clone());
        assert_eq!(cup(&h, &one).unwrap(), h);
        assert_eq!(cup(&one, &h).unwrap(), h);
    }

    #[test]
    fn cup_ruling_squares_to_zero() {
        let f = fan_p1xp1();
        // H1: the class dual to a fiber of the first ruling.
        let basis = minkowski_weight_basis(&f, 1).unwrap();
        for w in &basis {
            let sq = cup(w, w).unwrap();
            // Each basis vector of MW^1(P1xP1) found by the kernel is a
            // ruling; ruling self-intersections vanish.
            if w.to_vector().iter().filter(|x| !x.is_zero()).count() == 2 {
                assert!(sq.is_zero());
            }
        }
    }

    #[test]
    fn cup_independent_of_displacement() {
        let p2 = fan_p2();
        let h = h_weight(&p2);
        let a = cup_seeded(&h, &h, 1).unwrap();
        let b = cup_seeded(&h, &h, 2).unwrap();
        let c = cup_seeded(&h, &h, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn ray_cocycle_intersection_numbers() {
        // On Bl_0 P^2: E^2 = -1, and the strict transform H~ = H - E has
        // self-intersection 0.
        let bl = fan_bl0_p2();
        let e = ray_cocycle(&bl, bl.ray_index(&int_vec(&[1, 1])).unwrap()).unwrap();
        let e_wall = ray_idx(&bl, &[1, 1]);
        assert_eq!(e.weight(e_wall), Int::from(-1));
        let h_res = ray_cocycle(&bl, bl.ray_index(&int_vec(&[1, 0])).unwrap()).unwrap();
        assert_eq!(h_res.weight(ray_idx(&bl, &[1, 0])), Int::zero());
        assert_eq!(h_res.weight(e_wall), Int::one());
    }

    #[test]
    fn duality_roundtrip_on_p2() {
        let p2 = fan_p2();
        let r1 = ray_idx(&p2, &[1, 0]);
        let line = CycleRep::new(p2.clone(), 1, [(r1, Int::one())]).unwrap();
        let w = weight_of_cycle(&line).unwrap();
        // PD of a line is the H-weight.
        assert_eq!(w, h_weight(&p2));
        let back = cycle_of_weight(&w).unwrap();
        assert!(is_rationally_equivalent(&back, &line).unwrap());

        // Fundamental class <-> fundamental cocycle.
        let x = CycleRep::fundamental(p2.clone());
        assert_eq!(weight_of_cycle(&x).unwrap(), MinkowskiWeight::fundamental_cocycle(p2.clone()));
        let back = cycle_of_weight(&MinkowskiWeight::fundamental_cocycle(p2.clone())).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn pushforward_examples() {
        let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
        let bl = s.source().clone();
        // Exceptional ray class dies.
        let e = CycleRep::new(bl.clone(), 1, [(ray_idx(&bl, &[1, 1]), Int::one())]).unwrap();
        assert!(pushforward_subdivision(&s, &e).unwrap().is_zero());
        // Strict transform of a boundary line maps to the line.
        let l = CycleRep::new(bl.clone(), 1, [(ray_idx(&bl, &[1, 0]), Int::one())]).unwrap();
        let pushed = pushforward_subdivision(&s, &l).unwrap();
        assert_eq!(pushed.coeff(ray_idx(s.target(), &[1, 0])), Int::one());
        // Fundamental class maps to fundamental class.
        let x = CycleRep::fundamental(bl);
        assert_eq!(pushforward_subdivision(&s, &x).unwrap(), CycleRep::fundamental(fan_p2()));
    }

    #[test]
    fn weight_pullback_examples() {
        let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
        let h = h_weight(s.target());
        let pulled = weight_pullback(&s, &h).unwrap();
        // Old rays keep weight 1, the exceptional ray gets 0.
        assert_eq!(pulled.weight(ray_idx(s.source(), &[1, 0])), Int::one());
        assert_eq!(pulled.weight(ray_idx(s.source(), &[1, 1])), Int::zero());
        // Pairing with the exceptional class is 0 = <H, push E>.
        let e = CycleRep::new(s.source().clone(), 1, [(ray_idx(s.source(), &[1, 1]), Int::one())])
            .unwrap();
        let pair: Int = dot(&pulled.to_vector(), &e.to_vector());
        assert_eq!(pair, Int::zero());

        let id = Subdivision::identity(fan_p2());
        assert_eq!(weight_pullback(&id, &h).unwrap(), h);

        let one = MinkowskiWeight::fundamental_cocycle(fan_p2());
        let pulled = weight_pullback(&s, &one).unwrap();
        assert_eq!(pulled, MinkowskiWeight::fundamental_cocycle(s.source().clone()));
    }

    #[test]
    fn divisor_cap_on_p1() {
        // psi = support function of [0,1] on the P^1 fan: caps to a point of
        // degree 1.
        let p1 = fan_p1();
        let psi =
            PLFunction::support_function(&p1, &[int_vec(&[0]), int_vec(&[1])]).unwrap();
        let capped = divisor_cap(&psi, &CycleRep::fundamental(p1.clone())).unwrap();
        assert_eq!(degree(&capped).unwrap(), Int::one());
    }

    #[test]
    fn divisor_cap_simplex_twice() {
        // Support function of the unit simplex on P^2 capped twice: degree 1.
        let p2 = fan_p2();
        let psi = PLFunction::support_function(
            &p2,
            &[int_vec(&[0, 0]), int_vec(&[1, 0]), int_vec(&[0, 1])],
        )
        .unwrap();
        let once = divisor_cap(&psi, &CycleRep::fundamental(p2.clone())).unwrap();
        let twice = divisor_cap(&psi, &once).unwrap();
        assert_eq!(degree(&twice).unwrap(), Int::one());
    }

    #[test]
    fn divisor_cap_linear_is_zero() {
        let p2 = fan_p2();
        // Globally linear function: the divisor of a character is trivial.
        let vals: Vec<Int> = p2.rays().iter().map(|r| r[0].clone()).collect();
        let psi = PLFunction::new(p2.clone(), vals).unwrap();
        let capped = divisor_cap(&psi, &CycleRep::fundamental(p2.clone())).unwrap();
        let zero = CycleRep::zero(p2.clone(), 1);
        assert!(is_rationally_equivalent(&capped, &zero).unwrap());
    }

    #[test]
    fn gysin_fundamental_class() {
        let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
        let x = CycleRep::fundamental(fan_p2());
        let pulled = gysin_subdivision(&s, &x).unwrap();
        assert_eq!(pulled, CycleRep::fundamental(s.source().clone()));
        // pi_* pi^! [X] = [X].
        assert_eq!(pushforward_subdivision(&s, &pulled).unwrap(), x);
    }

    #[test]
    fn gysin_point_multiplicity_one() {
        // Blow-up of the plane cone: the point class pulls back to the
        // exceptional stratum with coefficient exactly 1.
        let s = star_subdivision(&fan_a2(), &int_vec(&[1, 1])).unwrap();
        let a2 = fan_a2();
        let pt_idx = a2.cones_of_dim(2)[0];
        let pt = CycleRep::new(a2.clone(), 0, [(pt_idx, Int::one())]).unwrap();
        let pulled = gysin_subdivision(&s, &pt).unwrap();
        let total: Int = pulled.coeffs().values().cloned().sum();
        assert_eq!(total, Int::one());
        // Supported on the exceptional strata only.
        for &idx in pulled.coeffs().keys() {
            assert!(s
                .source()
                .cone(idx)
                .rays()
                .contains(&int_vec(&[1, 1])));
        }
    }

    #[test]
    fn gysin_line_is_total_transform() {
        let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
        let bl = s.source().clone();
        let p2 = fan_p2();
        let line = CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[1, 0]), Int::one())]).unwrap();
        let pulled = gysin_subdivision(&s, &line).unwrap();
        // Total transform: strict transform + exceptional curve.
        let expected = CycleRep::new(
            bl.clone(),
            1,
            [
                (ray_idx(&bl, &[1, 0]), Int::one()),
                (ray_idx(&bl, &[1, 1]), Int::one()),
            ],
        )
        .unwrap();
        assert!(is_rationally_equivalent(&pulled, &expected).unwrap());
    }

    #[test]
    fn gysin_agrees_with_duality_route_on_p2() {
        let s = star_subdivision(&fan_p2(), &int_vec(&[1, 1])).unwrap();
        let p2 = fan_p2();
        let line = CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[0, 1]), Int::one())]).unwrap();
        let via_divisors = gysin_subdivision(&s, &line).unwrap();
        let via_duality =
            cycle_of_weight(&weight_pullback(&s, &weight_of_cycle(&line).unwrap()).unwrap())
                .unwrap();
        assert!(is_rationally_equivalent(&via_divisors, &via_duality).unwrap());
    }

    #[test]
    fn strict_gysin_orbit_examples() {
        let p2 = fan_p2();
        let r = ray_idx(&p2, &[1, 0]);
        // i^! [P^2] = [V(rho)].
        let res = strict_gysin_orbit(&p2, r, &CycleRep::fundamental(p2.clone())).unwrap();
        assert_eq!(res.dim(), 1);
        assert_eq!(res, CycleRep::fundamental(res.fan().clone()));
        // i^! [line] = point of degree 1 on the line.
        let line = CycleRep::new(p2.clone(), 1, [(ray_idx(&p2, &[0, 1]), Int::one())]).unwrap();
        let res = strict_gysin_orbit(&p2, r, &line).unwrap();
        assert_eq!(degree(&res).unwrap(), Int::one());
        // The zero cone is the identity.
        let z = p2.zero_cone_index();
        let res = strict_gysin_orbit(&p2, z, &line).unwrap();
        assert_eq!(res.to_vector(), line.to_vector());
    }

    #[test]
    fn strict_gysin_order_independent() {
        let f = fan_p1xp1();
        let max = f.cones_of_dim(2)[0];
        let x = CycleRep::fundamental(f.clone());
        // Cap in both ray orders by hand.
        let rays: Vec<usize> = f.cones()[max].clone();
        let cap = |order: &[usize]| {
            let mut cur = x.clone();
            for &ri in order {
                cur = divisor_cap(&PLFunction::ray_divisor(&f, ri).unwrap(), &cur).unwrap();
            }
            cur
        };
        let a = cap(&rays);
        let rev: Vec<usize> = rays.iter().rev().cloned().collect();
        let b = cap(&rev);
        assert!(is_rationally_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn complete_fan_examples() {
        // A^2 completes to a smooth complete fan containing it.
        let c = complete_fan(&fan_a2(), None).unwrap();
        assert!(c.fan.is_complete());
        assert!(c.fan.is_locally_free());
        assert!(c.resolved.is_identity());
        let orthant = fan_a2().cones_of_dim(2)[0];
        assert!(c.fan.find_cone(fan_a2().cone(orthant)).is_some());

        // Complete input: identity.
        let c = complete_fan(&fan_p2(), None).unwrap();
        assert_eq!(c.fan, fan_p2());

        // Half plane fan.
        let half = Fan::from_cones(
            2,
            &[
                vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
                vec![int_vec(&[0, 1]), int_vec(&[-1, 0])],
            ],
        )
        .unwrap();
        let c = complete_fan(&half, None).unwrap();
        assert!(c.fan.is_complete() && c.fan.is_locally_free());

        // Singular cone: the resolution is embedded.
        let c = complete_fan(&crate::fan::fan_a1_cone(), None).unwrap();
        assert!(c.fan.is_complete() && c.fan.is_locally_free());
        assert!(!c.resolved.is_identity());
    }

    #[test]
    fn degree_examples() {
        let p2 = fan_p2();
        let pt = CycleRep::new(p2.clone(), 0, [(p2.cones_of_dim(2)[0], Int::one())]).unwrap();
        assert_eq!(degree(&pt).unwrap(), Int::one());
        assert_eq!(degree(&CycleRep::zero(p2.clone(), 0)).unwrap(), Int::zero());
        let a2 = fan_a2();
        let pt = CycleRep::new(a2.clone(), 0, [(a2.cones_of_dim(2)[0], Int::one())]).unwrap();
        assert_eq!(degree(&pt).err(), Some(ChowError::NotComplete));
    }
}

#[cfg(test)]
mod pairing_tests {
    use super::*;
    use crate::fan::{fan_p1xp1, fan_p2};

    #[test]
    fn kronecker_pairing_unimodular() {
        for f in [fan_p2(), fan_p1xp1(), crate::fan::fan_bl0_p2()] {
            for k in 0..=2usize {
                let (_, uni) = kronecker_pairing_matrix(&f, k).unwrap();
                assert!(uni, "pairing not unimodular at k={k}");
            }
        }
    }
}
