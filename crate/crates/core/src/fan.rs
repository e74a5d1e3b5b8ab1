//! Rational polyhedral cones and fans over an integer lattice.
//!
//! Cones are stored canonically: primitive extreme rays sorted
//! lexicographically, together with a dual description (facet normals plus
//! the equations cutting out the span). Fans keep the full face poset,
//! including the zero cone, and are validated on construction: closed under
//! faces, pairwise intersections are common faces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::dd::{double_description, System};
use crate::lattice::{
    self, dot, int_vec, is_zero_vec, primitivize, rank as mat_rank, saturate, vec_mat, Int,
    IntMatrix, LatticeBasis,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanError {
    /// The generating set contains a line.
    NotStronglyConvex,
    DimensionMismatch,
    ConeNotInFan,
    NonSimplicial,
    /// Structural fan violation (faces missing, bad intersection, ...).
    Invalid(&'static str),
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::NotStronglyConvex => write!(f, "not strongly convex"),
            FanError::DimensionMismatch => write!(f, "dimension mismatch"),
            FanError::ConeNotInFan => write!(f, "cone not in fan"),
            FanError::NonSimplicial => write!(f, "cone is not simplicial"),
            FanError::Invalid(s) => write!(f, "invalid fan: {s}"),
        }
    }
}

impl core::error::Error for FanError {}

/// A strongly convex rational polyhedral cone in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<Int>>,
    dim: usize,
    facet_normals: Vec<Vec<Int>>,
    span_equations: Vec<Vec<Int>>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

fn det_small(m: &IntMatrix) -> Int {
    let n = m.rows();
    assert_eq!(n, m.cols());
    match n {
        0 => Int::one(),
        1 => m.at(0, 0).clone(),
        _ => {
            let mut acc = Int::zero();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let mut sub = IntMatrix::zero(n - 1, n - 1);
                for r in 1..n {
                    let mut cc = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        *sub.at_mut(r - 1, cc) = m.at(r, c).clone();
                        cc += 1;
                    }
                }
                let term = m.at(0, j) * det_small(&sub);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut sub = IntMatrix::zero(n - 1, n - 1);
            let mut rr = 0;
            for r in 0..n {
                if r == j {
                    continue;
                }
                let mut cc = 0;
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    *sub.at_mut(rr, cc) = m.at(r, c).clone();
                    cc += 1;
                }
                rr += 1;
            }
            let minor = det_small(&sub);
            *adj.at_mut(i, j) = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

impl Cone {
    /// Canonicalize a generating set into a cone. Generators are
    /// primitivized and redundant ones dropped; errors if the generated cone
    /// contains a line.
    pub fn from_generators(ambient_rank: usize, generators: &[Vec<Int>]) -> Result<Cone, FanError> {
        if generators.iter().any(|g| g.len() != ambient_rank) {
            return Err(FanError::DimensionMismatch);
        }
        let mut gens: Vec<Vec<Int>> = generators
            .iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitivize(g))
            .collect();
        gens.sort();
        gens.dedup();

        // Dual side: the cone of covectors nonnegative on all generators.
        let sys = System { dim: ambient_rank, ineqs: gens.clone(), eqs: Vec::new() };
        let dual = double_description(&sys);

        // Lineality of the dual is the annihilator of the span.
        let span_equations = saturate(ambient_rank, &dual.lineality)
            .expect("kernel has ambient width")
            .vectors;
        let dim = ambient_rank - span_equations.len();

        // Pointedness: the dual must span the ambient space.
        let mut dual_all = dual.lineality.clone();
        dual_all.extend(dual.rays.iter().cloned());
        if mat_rank(&IntMatrix::from_rows(ambient_rank, &dual_all)) != ambient_rank {
            return Err(FanError::NotStronglyConvex);
        }

        // Facet normals: dual extreme rays, lifted canonically into the
        // rational row space of the span when the cone is not full
        // dimensional.
        let mut facet_normals: Vec<Vec<Int>> = if span_equations.is_empty() {
            dual.rays.clone()
        } else {
            let span = saturate(ambient_rank, &gens).expect("span");
            let s = IntMatrix::from_rows(ambient_rank, &span.vectors);
            let st = s.transpose();
            let g = s.mul(&st);
            let adj = adjugate(&g);
            dual.rays
                .iter()
                .map(|u| {
                    let w = vec_mat(u, &st);
                    let w2 = vec_mat(&w, &adj);
                    primitivize(&vec_mat(&w2, &s))
                })
                .collect()
        };
        facet_normals.sort();
        facet_normals.dedup();

        // Extreme rays among the generators: the tight normals together with
        // the span equations must cut out a 1-dimensional face.
        let mut rays: Vec<Vec<Int>> = gens
            .iter()
            .filter(|r| {
                let mut tight: Vec<Vec<Int>> = facet_normals
                    .iter()
                    .filter(|u| dot(u, r).is_zero())
                    .cloned()
                    .collect();
                tight.extend(span_equations.iter().cloned());
                mat_rank(&IntMatrix::from_rows(ambient_rank, &tight)) == ambient_rank - 1
            })
            .cloned()
            .collect();
        rays.sort();
        rays.dedup();

        Ok(Cone { ambient_rank, rays, dim, facet_normals, span_equations })
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone::from_generators(ambient_rank, &[]).expect("zero cone")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive covectors, one per facet, lifted into the span's row space.
    pub fn facet_normals(&self) -> &[Vec<Int>] {
        &self.facet_normals
    }

    /// Covectors cutting out the linear span of the cone.
    pub fn span_equations(&self) -> &[Vec<Int>] {
        &self.span_equations
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.span_equations.iter().all(|e| dot(e, v).is_zero())
            && self.facet_normals.iter().all(|u| !dot(u, v).is_negative())
    }

    pub fn contains_relint(&self, v: &[Int]) -> bool {
        self.span_equations.iter().all(|e| dot(e, v).is_zero())
            && self.facet_normals.iter().all(|u| dot(u, v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// A lattice point in the relative interior (the origin for the zero
    /// cone).
    pub fn interior_point(&self) -> Vec<Int> {
        let mut p = vec![Int::zero(); self.ambient_rank];
        for r in &self.rays {
            p = lattice::add(&p, r);
        }
        debug_assert!(self.is_zero() || self.contains_relint(&p));
        p
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineqs = self.facet_normals.clone();
        ineqs.extend(other.facet_normals.iter().cloned());
        let mut eqs = self.span_equations.clone();
        eqs.extend(other.span_equations.iter().cloned());
        let out = double_description(&System { dim: self.ambient_rank, ineqs, eqs });
        debug_assert!(out.lineality.is_empty());
        Cone::from_generators(self.ambient_rank, &out.rays).expect("intersection is pointed")
    }

    /// All faces, including the cone itself and the zero cone.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeMap<Vec<Vec<Int>>, Cone> = BTreeMap::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains_key(&c.rays) {
                continue;
            }
            for u in &c.facet_normals {
                let sub: Vec<Vec<Int>> =
                    c.rays.iter().filter(|r| dot(u, r).is_zero()).cloned().collect();
                let f = Cone::from_generators(self.ambient_rank, &sub).expect("face is pointed");
                stack.push(f);
            }
            seen.insert(c.rays.clone(), c);
        }
        let zero = Cone::zero(self.ambient_rank);
        seen.entry(zero.rays.clone()).or_insert(zero);
        seen.into_values().collect()
    }

    /// Is `other` a face of `self`?
    pub fn has_face(&self, other: &Cone) -> bool {
        if !other.rays.iter().all(|r| self.rays.contains(r)) {
            return false;
        }
        // Minimal face containing `other`: rays tight at every normal that is
        // tight on all of `other`.
        let tight: Vec<&Vec<Int>> = self
            .facet_normals
            .iter()
            .filter(|u| other.rays.iter().all(|r| dot(u, r).is_zero()))
            .collect();
        let minimal: Vec<Vec<Int>> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|u| dot(u, r).is_zero()))
            .cloned()
            .collect();
        minimal == other.rays
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Smooth iff the rays extend to a basis of the ambient lattice.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial()
            && lattice::lattice_index(&self.rays).map(|i| i.is_one()).unwrap_or(false)
    }

    /// Index of the span of the rays inside its saturation.
    pub fn multiplicity(&self) -> Result<Int, FanError> {
        if !self.is_simplicial() {
            return Err(FanError::NonSimplicial);
        }
        lattice::lattice_index(&self.rays).map_err(|_| FanError::NonSimplicial)
    }

    /// Saturated basis of the sublattice spanned by the cone.
    pub fn span_lattice(&self) -> LatticeBasis {
        saturate(self.ambient_rank, &self.rays).expect("rays have ambient width")
    }
}

/// The stalk of the characteristic sheaf at the orbit of a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharStalk {
    pub rank: usize,
    pub is_free: bool,
    /// Size of the Hilbert basis of the sharpened dual monoid; only computed
    /// in dimension <= 2.
    pub hilbert_basis_size: Option<usize>,
}

/// A fan: canonical ray list plus cones as sorted ray-index sets, closed
/// under faces (the zero cone is always present).
#[derive(Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    rays: Vec<Vec<Int>>,
    cones: Vec<Vec<usize>>,
    cone_objs: Vec<Cone>,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan(rank {}, rays {:?}, cones {:?})", self.ambient_rank, self.rays, self.cones)
    }
}

impl Fan {
    /// Build a fan from generating sets of its cones. Faces are completed
    /// automatically and the fan axioms are verified.
    pub fn from_cones(ambient_rank: usize, cones: &[Vec<Vec<Int>>]) -> Result<Fan, FanError> {
        let mut by_rays: BTreeMap<Vec<Vec<Int>>, Cone> = BTreeMap::new();
        for gens in cones {
            let c = Cone::from_generators(ambient_rank, gens)?;
            for f in c.faces() {
                by_rays.entry(f.rays.clone()).or_insert(f);
            }
            by_rays.entry(c.rays.clone()).or_insert(c);
        }
        let zero = Cone::zero(ambient_rank);
        by_rays.entry(zero.rays.clone()).or_insert(zero);

        let mut rays: Vec<Vec<Int>> = BTreeSet::from_iter(
            by_rays.values().flat_map(|c| c.rays.iter().cloned()),
        )
        .into_iter()
        .collect();
        rays.sort();

        let ray_index: BTreeMap<&Vec<Int>, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();

        let mut indexed: Vec<(Vec<usize>, Cone)> = by_rays
            .into_values()
            .map(|c| {
                let mut idx: Vec<usize> = c.rays.iter().map(|r| ray_index[r]).collect();
                idx.sort_unstable();
                (idx, c)
            })
            .collect();
        indexed.sort_by(|a, b| a.0.cmp(&b.0));

        let fan = Fan {
            ambient_rank,
            rays,
            cones: indexed.iter().map(|(i, _)| i.clone()).collect(),
            cone_objs: indexed.into_iter().map(|(_, c)| c).collect(),
        };
        fan.validate()?;
        Ok(fan)
    }

    /// The fan consisting of the zero cone only.
    pub fn zero(ambient_rank: usize) -> Fan {
        Fan::from_cones(ambient_rank, &[]).expect("zero fan")
    }

    fn validate(&self) -> Result<(), FanError> {
        for (idx, c) in self.cone_objs.iter().enumerate() {
            // Ray index set must match the cone's canonical rays.
            let back: Vec<Vec<Int>> =
                self.cones[idx].iter().map(|&i| self.rays[i].clone()).collect();
            if back != c.rays {
                return Err(FanError::Invalid("cone ray indices out of order"));
            }
        }
        for i in 0..self.cone_objs.len() {
            for j in (i + 1)..self.cone_objs.len() {
                let a = &self.cone_objs[i];
                let b = &self.cone_objs[j];
                let int = a.intersect(b);
                if self.find_cone(&int).is_none() {
                    return Err(FanError::Invalid("intersection of cones not in fan"));
                }
                if !(a.has_face(&int) && b.has_face(&int)) {
                    return Err(FanError::Invalid("intersection is not a common face"));
                }
            }
        }
        Ok(())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, idx: usize) -> &Cone {
        &self.cone_objs[idx]
    }

    pub fn num_cones(&self) -> usize {
        self.cone_objs.len()
    }

    pub fn find_cone(&self, c: &Cone) -> Option<usize> {
        self.cone_objs.iter().position(|x| x.rays == c.rays)
    }

    /// Index of the ray `r` (primitive) in the canonical ray list.
    pub fn ray_index(&self, r: &[Int]) -> Option<usize> {
        self.rays.iter().position(|x| x[..] == *r)
    }

    pub fn cones_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.num_cones()).filter(|&i| self.cone_objs[i].dim() == d).collect()
    }

    pub fn zero_cone_index(&self) -> usize {
        self.cones.iter().position(|c| c.is_empty()).expect("zero cone present")
    }

    /// Indices of the inclusion-maximal cones.
    pub fn maximal_cones(&self) -> Vec<usize> {
        (0..self.num_cones())
            .filter(|&i| {
                !(0..self.num_cones()).any(|j| {
                    j != i && is_subset(&self.cones[i], &self.cones[j])
                })
            })
            .collect()
    }

    /// Cone indices having the cone `idx` as a face.
    pub fn cones_containing(&self, idx: usize) -> Vec<usize> {
        (0..self.num_cones())
            .filter(|&j| is_subset(&self.cones[idx], &self.cones[j]))
            .collect()
    }

    pub fn is_locally_free(&self) -> bool {
        self.cone_objs.iter().all(|c| c.is_smooth())
    }

    pub fn is_simplicial(&self) -> bool {
        self.cone_objs.iter().all(|c| c.is_simplicial())
    }

    /// The unique cone whose relative interior contains `v`, if any.
    pub fn smallest_cone_containing(&self, v: &[Int]) -> Option<usize> {
        (0..self.num_cones()).find(|&i| self.cone_objs[i].contains_relint(v))
    }

    pub fn supports(&self, v: &[Int]) -> bool {
        self.smallest_cone_containing(v).is_some()
    }

    /// Completeness test for pure full-dimensional fans: every codimension-1
    /// cone is a face of exactly two maximal cones and the dual graph is
    /// connected. Fans that are not pure of maximal dimension report false.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_rank;
        if n == 0 {
            return true;
        }
        let maxes = self.maximal_cones();
        if maxes.is_empty() || maxes.iter().any(|&i| self.cone_objs[i].dim() != n) {
            return false;
        }
        // Every ridge bounds exactly two facets.
        for r in self.cones_of_dim(n - 1) {
            let above = self
                .cones_containing(r)
                .into_iter()
                .filter(|&j| self.cone_objs[j].dim() == n)
                .count();
            if above != 2 {
                return false;
            }
        }
        // Connectivity of the dual graph.
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut stack = vec![maxes[0]];
        while let Some(m) = stack.pop() {
            if !seen.insert(m) {
                continue;
            }
            for r in self.cones_of_dim(n - 1) {
                if !is_subset(&self.cones[r], &self.cones[m]) {
                    continue;
                }
                for &m2 in &maxes {
                    if m2 != m && is_subset(&self.cones[r], &self.cones[m2]) {
                        stack.push(m2);
                    }
                }
            }
        }
        seen.len() == maxes.len()
    }

    /// The star fan of a cone: the fan in the quotient lattice whose cones
    /// are the images of the cones containing it.
    pub fn star(&self, idx: usize) -> Result<Fan, FanError> {
        if idx >= self.num_cones() {
            return Err(FanError::ConeNotInFan);
        }
        let c = &self.cone_objs[idx];
        let span = c.span_lattice();
        let q = lattice::quotient_matrix(&span);
        let gens: Vec<Vec<Vec<Int>>> = self
            .cones_containing(idx)
            .into_iter()
            .map(|j| {
                self.cone_objs[j]
                    .rays
                    .iter()
                    .map(|r| vec_mat(r, &q))
                    .collect()
            })
            .collect();
        Fan::from_cones(self.ambient_rank - c.dim(), &gens)
    }

    /// Characteristic stalk at a cone of the fan.
    pub fn char_stalk(&self, idx: usize) -> Result<CharStalk, FanError> {
        if idx >= self.num_cones() {
            return Err(FanError::ConeNotInFan);
        }
        let c = &self.cone_objs[idx];
        let rank = c.dim();
        let simplicial = c.is_simplicial();
        let is_free = simplicial && {
            let m = IntMatrix::from_rows(self.ambient_rank, &c.rays);
            let (d, _, _) = lattice::smith_normal_form(&m);
            d.diagonal().iter().filter(|x| !x.is_zero()).all(|x| x.is_one())
        };
        let hilbert_basis_size = match rank {
            0 => Some(0),
            1 => Some(1),
            2 => Some(hilbert_size_dim2(c)),
            _ => None,
        };
        if let Some(h) = hilbert_basis_size {
            debug_assert!(!is_free || h == rank);
        }
        Ok(CharStalk { rank, is_free, hilbert_basis_size })
    }

    /// Product fan in the direct-sum lattice.
    pub fn product(&self, other: &Fan) -> Fan {
        let n1 = self.ambient_rank;
        let n2 = other.ambient_rank;
        let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
        for c1 in &self.cone_objs {
            for c2 in &other.cone_objs {
                let mut g: Vec<Vec<Int>> = Vec::new();
                for r in &c1.rays {
                    let mut v = r.clone();
                    v.extend(vec![Int::zero(); n2]);
                    g.push(v);
                }
                for r in &c2.rays {
                    let mut v = vec![Int::zero(); n1];
                    v.extend(r.iter().cloned());
                    g.push(v);
                }
                gens.push(g);
            }
        }
        Fan::from_cones(n1 + n2, &gens).expect("product of fans is a fan")
    }

    /// Deterministic canonical byte encoding (rays and cones in canonical
    /// order); used to seed displacement streams.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let push_usize = |out: &mut Vec<u8>, x: usize| out.extend((x as u64).to_le_bytes());
        push_usize(&mut out, self.ambient_rank);
        push_usize(&mut out, self.rays.len());
        for r in &self.rays {
            for x in r {
                let (sign, bytes) = x.to_bytes_le();
                out.push(match sign {
                    num_bigint::Sign::Minus => 0xff,
                    num_bigint::Sign::NoSign => 0,
                    num_bigint::Sign::Plus => 1,
                });
                push_usize(&mut out, bytes.len());
                out.extend(bytes);
            }
        }
        push_usize(&mut out, self.cones.len());
        for c in &self.cones {
            push_usize(&mut out, c.len());
            for &i in c {
                push_usize(&mut out, i);
            }
        }
        out
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Hilbert basis size of the sharpened dual monoid of a 2-dimensional cone,
/// by the continued-fraction walk along the hull boundary of the dual cone.
fn hilbert_size_dim2(c: &Cone) -> usize {
    // Work in coordinates on the span, where the cone is full dimensional.
    let span = c.span_lattice();
    let s_rows = span.vectors.clone();
    let r1 = lattice::solve_combination(&s_rows, &c.rays[0]).unwrap().unwrap();
    let r2 = lattice::solve_combination(&s_rows, &c.rays[1]).unwrap().unwrap();
    let det = |a: &[Int], b: &[Int]| -> Int { &a[0] * &b[1] - &a[1] * &b[0] };
    let (r1, r2) = if det(&r1, &r2).is_negative() { (r2, r1) } else { (r1, r2) };
    // Dual cone generators (inner normals of the primal rays).
    let n1 = primitivize(&[r2[1].clone(), -r2[0].clone()]);
    let n2 = primitivize(&[-r1[1].clone(), r1[0].clone()]);
    debug_assert!(det(&n1, &n2).is_positive());
    hull_walk_count(n1, n2)
}

/// Lattice points on the boundary of conv(cone(u,w) ∩ Z² \ 0) from u to w,
/// both primitive with det(u, w) > 0. Consecutive points span unimodular
/// cones.
pub(crate) fn hull_walk(u: Vec<Int>, w: Vec<Int>) -> Vec<Vec<Int>> {
    let mut points = vec![u];
    while points.last().unwrap() != &w {
        let next = next_hull_point(points.last().unwrap(), &w);
        points.push(next);
    }
    points
}

fn hull_walk_count(u: Vec<Int>, w: Vec<Int>) -> usize {
    hull_walk(u, w).len()
}

fn next_hull_point(u: &[Int], w: &[Int]) -> Vec<Int> {
    // Complete u to a unimodular basis (u, c) with det(u, c) = 1.
    let e = u[0].extended_gcd(&u[1]);
    debug_assert!(e.gcd.is_one());
    let c = [-e.y.clone(), e.x.clone()];
    debug_assert!((&u[0] * &c[1] - &u[1] * &c[0]).is_one());
    // Coordinates: x = alpha*u + beta*c with alpha = det(x,c), beta = det(u,x).
    let p = &w[0] * &c[1] - &w[1] * &c[0];
    let q = &u[0] * &w[1] - &u[1] * &w[0];
    debug_assert!(q.is_positive());
    let alpha = p.div_ceil(&q);
    vec![&alpha * &u[0] + &c[0], &alpha * &u[1] + &c[1]]
}

// Convenience constructors for common fixtures (used heavily in tests).

/// Fan of the affine plane: the single cone spanned by the standard basis.
pub fn fan_a2() -> Fan {
    Fan::from_cones(2, &[vec![int_vec(&[1, 0]), int_vec(&[0, 1])]]).unwrap()
}

/// Complete fan of the projective plane.
pub fn fan_p2() -> Fan {
    Fan::from_cones(
        2,
        &[
            vec![int_vec(&[1, 0]), int_vec(&[0, 1])],
            vec![int_vec(&[0, 1]), int_vec(&[-1, -1])],
            vec![int_vec(&[-1, -1]), int_vec(&[1, 0])],
        ],
    )
    .unwrap()
}

/// Complete fan of the projective line.
pub fn fan_p1() -> Fan {
    Fan::from_cones(1, &[vec![int_vec(&[1])], vec![int_vec(&[-1])]]).unwrap()
}

pub fn fan_p1xp1() -> Fan {
    fan_p1().product(&fan_p1())
}

/// Fan of the blow-up of the affine plane at the origin.
pub fn fan_bl0_a2() -> Fan {
    Fan::from_cones(
        2,
        &[
            vec![int_vec(&[1, 0]), int_vec(&[1, 1])],
            vec![int_vec(&[1, 1]), int_vec(&[0, 1])],
        ],
    )
    .unwrap()
}

/// Fan of the blow-up of the projective plane at a torus-fixed point.
pub fn fan_bl0_p2() -> Fan {
    Fan::from_cones(
        2,
        &[
            vec![int_vec(&[1, 0]), int_vec(&[1, 1])],
            vec![int_vec(&[1, 1]), int_vec(&[0, 1])],
            vec![int_vec(&[0, 1]), int_vec(&[-1, -1])],
            vec![int_vec(&[-1, -1]), int_vec(&[1, 0])],
        ],
    )
    .unwrap()
}

/// The A1 singularity cone fan: the single cone spanned by (1,0) and (1,2).
pub fn fan_a1_cone() -> Fan {
    Fan::from_cones(2, &[vec![int_vec(&[1, 0]), int_vec(&[1, 2])]]).unwrap()
}
