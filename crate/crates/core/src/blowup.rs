//! Subdivisions of fans: the combinatorial form of log blow-ups.
//!
//! A [`Subdivision`] records a refinement `source -> target` together with
//! the map sending each source cone to the smallest target cone containing
//! it. Stellar subdivision, blow-up of a monomial ideal, barycentric
//! refinement, common refinement and resolution all produce subdivisions;
//! toric morphisms can be tested for compatibility (integrality) and
//! integralized by refining the source.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::dd::{double_description, System};
use crate::fan::{Cone, Fan, FanError};
use crate::lattice::{
    self, dot, is_zero_vec, mat_vec, primitivize, sub, vec_mat, Int, IntMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowupError {
    /// A subdivision point (or image support) leaves the fan's support.
    OutsideSupport,
    /// Source/target fans of composed subdivisions do not match.
    TargetMismatch,
    /// A monoid ideal needs at least one generator.
    EmptyIdeal,
    /// Claimed refinement does not preserve the support.
    SupportMismatch,
    /// The image of the source support is not contained in the target
    /// support.
    ImageEscapesSupport,
    Fan(FanError),
}

impl fmt::Display for BlowupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupError::OutsideSupport => write!(f, "outside support"),
            BlowupError::TargetMismatch => write!(f, "subdivision target mismatch"),
            BlowupError::EmptyIdeal => write!(f, "empty generator list"),
            BlowupError::SupportMismatch => write!(f, "supports differ"),
            BlowupError::ImageEscapesSupport => write!(f, "image support escapes target support"),
            BlowupError::Fan(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BlowupError {}

impl From<FanError> for BlowupError {
    fn from(e: FanError) -> Self {
        BlowupError::Fan(e)
    }
}

/// A refinement of fans with its cone map.
#[derive(Clone, PartialEq, Eq)]
pub struct Subdivision {
    source: Fan,
    target: Fan,
    /// For each source cone index, the index of the smallest target cone
    /// containing it.
    cone_map: Vec<usize>,
}

impl fmt::Debug for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subdivision({} cones -> {} cones)",
            self.source.num_cones(),
            self.target.num_cones()
        )
    }
}

impl Subdivision {
    /// Build the subdivision from a refining fan to the fan it refines,
    /// checking containments and support equality.
    pub fn between(source: Fan, target: Fan) -> Result<Subdivision, BlowupError> {
        if source.ambient_rank() != target.ambient_rank() {
            return Err(BlowupError::Fan(FanError::DimensionMismatch));
        }
        let mut cone_map = Vec::with_capacity(source.num_cones());
        for i in 0..source.num_cones() {
            let c = source.cone(i);
            let p = c.interior_point();
            let carrier = target
                .smallest_cone_containing(&p)
                .ok_or(BlowupError::SupportMismatch)?;
            if !target.cone(carrier).contains_cone(c) {
                return Err(BlowupError::SupportMismatch);
            }
            cone_map.push(carrier);
        }
        // Reverse inclusion: every maximal target cone is covered by the
        // source cones it contains.
        for &m in &target.maximal_cones() {
            let container = target.cone(m);
            let pieces: Vec<Cone> = (0..source.num_cones())
                .filter(|&i| cone_map[i] == m || container.contains_cone(source.cone(i)))
                .map(|i| source.cone(i).clone())
                .collect();
            if !covers(container, &pieces) {
                return Err(BlowupError::SupportMismatch);
            }
        }
        Ok(Subdivision { source, target, cone_map })
    }

    pub fn identity(fan: Fan) -> Subdivision {
        let cone_map = (0..fan.num_cones()).collect();
        Subdivision { source: fan.clone(), target: fan, cone_map }
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    pub fn cone_map(&self) -> &[usize] {
        &self.cone_map
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Composite refinement: `finer` must refine the source of `coarser`.
    pub fn compose(finer: &Subdivision, coarser: &Subdivision) -> Result<Subdivision, BlowupError> {
        if finer.target != coarser.source {
            return Err(BlowupError::TargetMismatch);
        }
        Subdivision::between(finer.source.clone(), coarser.target.clone())
    }
}

/// Ridge-pairing coverage test: do the `pieces` (cones of the dimension of
/// `container`, pairwise intersecting in faces) cover `container`?
pub(crate) fn covers(container: &Cone, pieces: &[Cone]) -> bool {
    let d = container.dim();
    if d == 0 {
        return true;
    }
    let pieces: Vec<&Cone> = pieces.iter().filter(|p| p.dim() == d).collect();
    if pieces.is_empty() {
        return false;
    }
    let mut ridge_count: BTreeMap<Vec<Vec<Int>>, usize> = BTreeMap::new();
    for p in &pieces {
        for u in p.facet_normals() {
            let sub_rays: Vec<Vec<Int>> =
                p.rays().iter().filter(|r| dot(u, r).is_zero()).cloned().collect();
            let ridge = Cone::from_generators(container.ambient_rank(), &sub_rays)
                .expect("ridge is pointed");
            if ridge.dim() + 1 != d {
                continue;
            }
            let on_boundary = container
                .facet_normals()
                .iter()
                .any(|g| ridge.rays().iter().all(|r| dot(g, r).is_zero()));
            if !on_boundary {
                *ridge_count.entry(ridge.rays().to_vec()).or_insert(0) += 1;
            }
        }
    }
    ridge_count.values().all(|&c| c == 2)
}

/// Stellar subdivision of a fan at a primitive lattice vector in its
/// support.
pub fn star_subdivision(f: &Fan, v: &[Int]) -> Result<Subdivision, BlowupError> {
    let v = primitivize(v);
    if is_zero_vec(&v) {
        return Err(BlowupError::OutsideSupport);
    }
    let carrier = f.smallest_cone_containing(&v).ok_or(BlowupError::OutsideSupport)?;
    let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
    for i in 0..f.num_cones() {
        let ci = &f.cones()[i];
        if !crate::fan::is_subset(&f.cones()[carrier], ci) {
            gens.push(f.cone(i).rays().to_vec());
            continue;
        }
        // v lies in this cone: join v with the faces not containing v.
        for j in 0..f.num_cones() {
            let cj = &f.cones()[j];
            if crate::fan::is_subset(cj, ci) && !crate::fan::is_subset(&f.cones()[carrier], cj) {
                let mut g = f.cone(j).rays().to_vec();
                g.push(v.clone());
                gens.push(g);
            }
        }
    }
    let fine = Fan::from_cones(f.ambient_rank(), &gens)?;
    Subdivision::between(fine, f.clone())
}

/// A finitely generated monomial ideal in the dual monoid of a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidIdeal {
    pub cone: Cone,
    pub generators: Vec<Vec<Int>>,
}

impl MonoidIdeal {
    pub fn new(cone: Cone, generators: Vec<Vec<Int>>) -> Result<MonoidIdeal, FanError> {
        for g in &generators {
            if g.len() != cone.ambient_rank() {
                return Err(FanError::DimensionMismatch);
            }
            if cone.rays().iter().any(|r| dot(g, r).is_negative()) {
                return Err(FanError::Invalid("ideal generator not in the dual cone"));
            }
        }
        Ok(MonoidIdeal { cone, generators })
    }
}

/// Blow-up of a sheaf of monomial ideals: the cone carrying the ideal and
/// the cones incident to it are refined into the domains of linearity of
/// `u -> min_i <a_i, u>`; all other cones are untouched.
pub fn ideal_blowup(f: &Fan, ideal: &MonoidIdeal) -> Result<Subdivision, BlowupError> {
    let idx = f.find_cone(&ideal.cone).ok_or(FanError::ConeNotInFan)?;
    if ideal.generators.is_empty() {
        return Err(BlowupError::EmptyIdeal);
    }
    let incident = f.cones_containing(idx);
    let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
    for i in 0..f.num_cones() {
        if !incident.contains(&i) {
            gens.push(f.cone(i).rays().to_vec());
            continue;
        }
        let psi = f.cone(i);
        for a in &ideal.generators {
            // Linearity domain of a: <a' - a, u> >= 0 for all generators a'.
            let mut ineqs = psi.facet_normals().to_vec();
            for a2 in &ideal.generators {
                ineqs.push(sub(a2, a));
            }
            let out = double_description(&System {
                dim: f.ambient_rank(),
                ineqs,
                eqs: psi.span_equations().to_vec(),
            });
            let piece = Cone::from_generators(f.ambient_rank(), &out.rays)?;
            if piece.dim() == psi.dim() {
                gens.push(piece.rays().to_vec());
            }
        }
    }
    let fine = Fan::from_cones(f.ambient_rank(), &gens)?;
    Subdivision::between(fine, f.clone())
}

/// Barycentric refinement: iterated stellar subdivision at the primitive
/// barycenter of every original cone, in decreasing dimension. The result
/// is simplicial.
pub fn barycentric(f: &Fan) -> Result<Subdivision, BlowupError> {
    let max_dim = (0..f.num_cones()).map(|i| f.cone(i).dim()).max().unwrap_or(0);
    let mut cur = f.clone();
    for d in (2..=max_dim).rev() {
        for idx in f.cones_of_dim(d) {
            let v = primitivize(&f.cone(idx).interior_point());
            cur = star_subdivision(&cur, &v)?.source().clone();
        }
    }
    Subdivision::between(cur, f.clone())
}

/// Common refinement of two subdivisions of the same fan: all pairwise
/// intersections of their cones, with the projections to both sources.
pub fn common_refinement(
    s1: &Subdivision,
    s2: &Subdivision,
) -> Result<(Fan, Subdivision, Subdivision), BlowupError> {
    if s1.target() != s2.target() {
        return Err(BlowupError::TargetMismatch);
    }
    let rank = s1.source().ambient_rank();
    let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
    for i in 0..s1.source().num_cones() {
        for j in 0..s2.source().num_cones() {
            let int = s1.source().cone(i).intersect(s2.source().cone(j));
            gens.push(int.rays().to_vec());
        }
    }
    let fan = Fan::from_cones(rank, &gens)?;
    let to1 = Subdivision::between(fan.clone(), s1.source().clone())?;
    let to2 = Subdivision::between(fan.clone(), s2.source().clone())?;
    Ok((fan, to1, to2))
}

/// Nonzero lattice points of the half-open fundamental parallelepiped of a
/// simplicial cone.
pub(crate) fn parallelepiped_points(c: &Cone) -> Vec<Vec<Int>> {
    let d = c.dim();
    let n = c.ambient_rank();
    assert!(c.is_simplicial());
    if d == 0 {
        return Vec::new();
    }
    let b = IntMatrix::from_rows(n, c.rays());
    let s = lattice::smith_with_inverse(&b);
    let divisors = s.d.diagonal();
    let sat_rows: Vec<Vec<Int>> = (0..d).map(|i| s.v_inv.row(i).to_vec()).collect();
    let u_inv = lattice::invert_unimodular(&s.u);
    // Coordinates of the ray lattice inside the saturation.
    let mut l = IntMatrix::zero(d, d);
    for r in 0..d {
        for cidx in 0..d {
            *l.at_mut(r, cidx) = u_inv.at(r, cidx) * &divisors[cidx];
        }
    }
    let (h, _) = lattice::hermite_normal_form(&l);

    // Enumerate the box of residues.
    let mut reps: Vec<Vec<Int>> = vec![Vec::new()];
    for i in 0..d {
        let bound = h.at(i, i).clone();
        assert!(bound.is_positive(), "rays dependent");
        let mut next = Vec::new();
        for rep in reps {
            let mut k = Int::zero();
            while k < bound {
                let mut r2 = rep.clone();
                r2.push(k.clone());
                next.push(r2);
                k += 1;
            }
        }
        reps = next;
    }

    // Gram data for barycentric reduction into the parallelepiped.
    let bt = b.transpose();
    let gram = b.mul(&bt);
    let det = det_of(&gram);
    let adj = adjugate_of(&gram);

    let mut out = Vec::new();
    for rep in reps {
        if rep.iter().all(|x| x.is_zero()) {
            continue;
        }
        let sat = IntMatrix::from_rows(n, &sat_rows);
        let x0 = vec_mat(&rep, &sat);
        let numer = vec_mat(&vec_mat(&x0, &bt), &adj);
        let mut p = x0;
        for (i, num) in numer.iter().enumerate() {
            let fl = num.div_floor(&det);
            if fl.is_zero() {
                continue;
            }
            for (k, e) in p.iter_mut().enumerate() {
                *e -= &fl * c.rays()[i].get(k).unwrap();
            }
        }
        debug_assert!(!is_zero_vec(&p));
        debug_assert!(c.contains(&p));
        out.push(p);
    }
    out
}

fn det_of(m: &IntMatrix) -> Int {
    let n = m.rows();
    match n {
        0 => Int::one(),
        1 => m.at(0, 0).clone(),
        _ => {
            let mut acc = Int::zero();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let mut sc = IntMatrix::zero(n - 1, n - 1);
                for r in 1..n {
                    let mut cc = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        *sc.at_mut(r - 1, cc) = m.at(r, c).clone();
                        cc += 1;
                    }
                }
                let term = m.at(0, j) * det_of(&sc);
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

fn adjugate_of(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = IntMatrix::zero(n - 1, n - 1);
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
                    *s.at_mut(rr, cc) = m.at(r, c).clone();
                    cc += 1;
                }
                rr += 1;
            }
            let minor = det_of(&s);
            *adj.at_mut(i, j) = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// Resolve a fan: triangulate by pulling rays in lexicographic order, then
/// repeatedly star-subdivide a maximal-multiplicity cone at the minimal
/// lattice point of its fundamental parallelepiped (smallest coordinate
/// sum, then lexicographic). The source of the result is locally free.
pub fn resolve(f: &Fan) -> Result<Subdivision, BlowupError> {
    let mut cur = f.clone();
    let mut passes = 0;
    while !cur.is_simplicial() {
        for ray in cur.rays().to_vec() {
            cur = star_subdivision(&cur, &ray)?.source().clone();
        }
        passes += 1;
        assert!(passes <= f.ambient_rank() + 1, "triangulation did not terminate");
    }
    loop {
        let mut worst: Option<(usize, Int)> = None;
        for i in 0..cur.num_cones() {
            let m = cur.cone(i).multiplicity().expect("simplicial");
            if m.is_one() {
                continue;
            }
            worst = match worst {
                None => Some((i, m)),
                Some((wi, wm)) => {
                    if m > wm {
                        Some((i, m))
                    } else {
                        Some((wi, wm))
                    }
                }
            };
        }
        let Some((idx, _)) = worst else { break };
        let pts = parallelepiped_points(cur.cone(idx));
        let v = pts
            .into_iter()
            .min_by_key(|p| (p.iter().sum::<Int>(), p.clone()))
            .expect("singular cone has interior parallelepiped points");
        cur = star_subdivision(&cur, &primitivize(&v))?.source().clone();
    }
    debug_assert!(cur.is_locally_free());
    Subdivision::between(cur, f.clone())
}

/// A map of lattices together with source and target fans. Compatibility
/// (every source cone mapping into some target cone) is a queryable
/// property, not a construction invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricMorphism {
    /// Matrix of the cocharacter-lattice map, shape (target rank) x (source
    /// rank); applied to column vectors.
    pub lattice_map: IntMatrix,
    pub source: Fan,
    pub target: Fan,
}

impl ToricMorphism {
    pub fn new(lattice_map: IntMatrix, source: Fan, target: Fan) -> Result<ToricMorphism, FanError> {
        if lattice_map.rows() != target.ambient_rank()
            || lattice_map.cols() != source.ambient_rank()
        {
            return Err(FanError::DimensionMismatch);
        }
        Ok(ToricMorphism { lattice_map, source, target })
    }

    pub fn identity(fan: &Fan) -> ToricMorphism {
        ToricMorphism {
            lattice_map: IntMatrix::identity(fan.ambient_rank()),
            source: fan.clone(),
            target: fan.clone(),
        }
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        mat_vec(&self.lattice_map, v)
    }

    /// Pull a covector on the target back to the source.
    pub fn pull_covector(&self, u: &[Int]) -> Vec<Int> {
        vec_mat(u, &self.lattice_map)
    }

    /// Every source cone maps into some target cone.
    pub fn is_compatible(&self) -> bool {
        (0..self.source.num_cones()).all(|i| {
            let images: Vec<Vec<Int>> =
                self.source.cone(i).rays().iter().map(|r| self.apply(r)).collect();
            (0..self.target.num_cones())
                .any(|j| images.iter().all(|v| self.target.cone(j).contains(v)))
        })
    }

    /// Pieces of a source cone cut by the preimages of the maximal target
    /// cones.
    fn preimage_pieces(&self, sigma: &Cone) -> Vec<Cone> {
        let mut pieces: Vec<Cone> = Vec::new();
        for &j in &self.target.maximal_cones() {
            let tau = self.target.cone(j);
            let mut ineqs = sigma.facet_normals().to_vec();
            for u in tau.facet_normals() {
                ineqs.push(self.pull_covector(u));
            }
            let mut eqs = sigma.span_equations().to_vec();
            for e in tau.span_equations() {
                eqs.push(self.pull_covector(e));
            }
            let out =
                double_description(&System { dim: self.source.ambient_rank(), ineqs, eqs });
            let piece = Cone::from_generators(self.source.ambient_rank(), &out.rays)
                .expect("piece of a pointed cone");
            if piece.dim() == sigma.dim() && !pieces.contains(&piece) {
                pieces.push(piece);
            }
        }
        pieces
    }

    /// Minimal refinement of the source making the morphism compatible.
    /// Errors when the image support is not contained in the target
    /// support.
    pub fn integralize(&self) -> Result<Subdivision, BlowupError> {
        let mut gens: Vec<Vec<Vec<Int>>> = Vec::new();
        for i in 0..self.source.num_cones() {
            let sigma = self.source.cone(i);
            let pieces = self.preimage_pieces(sigma);
            if sigma.dim() > 0 && !covers(sigma, &pieces) {
                return Err(BlowupError::ImageEscapesSupport);
            }
            for p in pieces {
                gens.push(p.rays().to_vec());
            }
        }
        let fine = Fan::from_cones(self.source.ambient_rank(), &gens)?;
        Subdivision::between(fine, self.source.clone())
    }

    /// Toric properness: the source support equals the preimage of the
    /// target support.
    pub fn is_proper(&self) -> bool {
        // Source support inside the preimage.
        for i in 0..self.source.num_cones() {
            let sigma = self.source.cone(i);
            if sigma.dim() > 0 && !covers(sigma, &self.preimage_pieces(sigma)) {
                return false;
            }
        }
        // Preimage of each maximal target cone covered by source cones.
        for &j in &self.target.maximal_cones() {
            if !self.preimage_covered(self.target.cone(j)) {
                return false;
            }
        }
        true
    }

    fn preimage_covered(&self, tau: &Cone) -> bool {
        let dim = self.source.ambient_rank();
        let p_ineqs: Vec<Vec<Int>> =
            tau.facet_normals().iter().map(|u| self.pull_covector(u)).collect();
        let p_eqs: Vec<Vec<Int>> =
            tau.span_equations().iter().map(|e| self.pull_covector(e)).collect();
        let p = double_description(&System { dim, ineqs: p_ineqs.clone(), eqs: p_eqs.clone() });
        let mut span = p.lineality.clone();
        span.extend(p.rays.iter().cloned());
        let p_dim = lattice::rank(&IntMatrix::from_rows(dim, &span));
        if p_dim == 0 {
            return true;
        }
        // Pieces: intersections with the source cones, of full dimension.
        let mut pieces: Vec<Cone> = Vec::new();
        for i in 0..self.source.num_cones() {
            let sigma = self.source.cone(i);
            let mut ineqs = sigma.facet_normals().to_vec();
            ineqs.extend(p_ineqs.iter().cloned());
            let mut eqs = sigma.span_equations().to_vec();
            eqs.extend(p_eqs.iter().cloned());
            let out = double_description(&System { dim, ineqs, eqs });
            let piece =
                Cone::from_generators(dim, &out.rays).expect("piece of a pointed cone");
            if piece.dim() == p_dim && !pieces.contains(&piece) {
                pieces.push(piece);
            }
        }
        if pieces.is_empty() {
            return false;
        }
        // Implicit equalities of the preimage region.
        let implicit: Vec<bool> = p_ineqs
            .iter()
            .map(|row| {
                p.lineality.iter().all(|l| dot(row, l).is_zero())
                    && p.rays.iter().all(|r| dot(row, r).is_zero())
            })
            .collect();
        let mut ridge_count: BTreeMap<Vec<Vec<Int>>, usize> = BTreeMap::new();
        for piece in &pieces {
            for u in piece.facet_normals() {
                let sub_rays: Vec<Vec<Int>> =
                    piece.rays().iter().filter(|r| dot(u, r).is_zero()).cloned().collect();
                let ridge = Cone::from_generators(dim, &sub_rays).expect("ridge");
                if ridge.dim() + 1 != p_dim {
                    continue;
                }
                let on_boundary = p_ineqs.iter().zip(implicit.iter()).any(|(row, &imp)| {
                    !imp && ridge.rays().iter().all(|r| dot(row, r).is_zero())
                });
                if !on_boundary {
                    *ridge_count.entry(ridge.rays().to_vec()).or_insert(0) += 1;
                }
            }
        }
        ridge_count.values().all(|&c| c == 2)
    }
}
