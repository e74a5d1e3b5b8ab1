//! Exact polyhedral cone computations: the double description method for
//! extreme-ray enumeration and Fourier–Motzkin elimination for feasibility
//! of small affine systems. All arithmetic is integer-exact.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::lattice::{dot, primitivize, rank, Int, IntMatrix};

/// Homogeneous constraint system `{ x : <a,x> >= 0, <e,x> = 0 }`.
pub(crate) struct System {
    pub dim: usize,
    pub ineqs: Vec<Vec<Int>>,
    pub eqs: Vec<Vec<Int>>,
}

/// Generators of a polyhedral cone: a lineality basis plus extreme rays
/// (primitive, deduplicated, unsorted).
pub(crate) struct DdOutput {
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

enum Step<'a> {
    Ineq(&'a [Int]),
    Eq(&'a [Int]),
}

/// Double description with on-the-fly lineality handling. Constraints are
/// processed one at a time; adjacency of ray pairs is decided by the exact
/// rank of the common tight set.
pub(crate) fn double_description(sys: &System) -> DdOutput {
    let dim = sys.dim;
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    // Processed constraint vectors, in order (equations included).
    let mut processed: Vec<Vec<Int>> = Vec::new();

    let steps = sys
        .eqs
        .iter()
        .map(|e| Step::Eq(e))
        .chain(sys.ineqs.iter().map(|a| Step::Ineq(a)));

    for step in steps {
        let (a, is_eq) = match step {
            Step::Eq(e) => (e, true),
            Step::Ineq(a) => (a, false),
        };
        if a.iter().all(|x| x.is_zero()) {
            processed.push(a.to_vec());
            continue;
        }
        // Lineality phase: pivot out one lineality vector if any is not on
        // the hyperplane.
        let pivot = lineality.iter().position(|l| !dot(a, l).is_zero());
        if let Some(p) = pivot {
            let mut l0 = lineality.remove(p);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let va = dot(a, &l0);
            for l in lineality.iter_mut() {
                let vl = dot(a, l);
                if !vl.is_zero() {
                    let combined: Vec<Int> = l
                        .iter()
                        .zip(l0.iter())
                        .map(|(x, y)| x * &va - y * &vl)
                        .collect();
                    *l = primitivize(&combined);
                }
            }
            for r in rays.iter_mut() {
                let vr = dot(a, r);
                if !vr.is_zero() {
                    let combined: Vec<Int> = r
                        .iter()
                        .zip(l0.iter())
                        .map(|(x, y)| x * &va - y * &vr)
                        .collect();
                    *r = primitivize(&combined);
                }
            }
            if !is_eq {
                rays.push(primitivize(&l0));
            }
            dedupe(&mut rays);
            processed.push(a.to_vec());
            continue;
        }
        // Ray phase.
        let vals: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
        let mut pos = Vec::new();
        let mut zero = Vec::new();
        let mut negv = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                zero.push(i);
            } else if v.is_positive() {
                pos.push(i);
            } else {
                negv.push(i);
            }
        }
        let mut new_rays: Vec<Vec<Int>> = Vec::new();
        for &p in &pos {
            for &m in &negv {
                if !adjacent(&rays[p], &rays[m], &processed, dim, lineality.len()) {
                    continue;
                }
                let vp = &vals[p];
                let vm = &vals[m];
                // alpha = -vm > 0, beta = vp > 0
                let w: Vec<Int> = rays[p]
                    .iter()
                    .zip(rays[m].iter())
                    .map(|(x, y)| x * &(-vm.clone()) + y * vp)
                    .collect();
                let w = primitivize(&w);
                if !w.iter().all(|x| x.is_zero()) {
                    new_rays.push(w);
                }
            }
        }
        let mut kept: Vec<Vec<Int>> = Vec::new();
        for &i in &zero {
            kept.push(rays[i].clone());
        }
        if !is_eq {
            for &i in &pos {
                kept.push(rays[i].clone());
            }
        }
        kept.extend(new_rays);
        rays = kept;
        dedupe(&mut rays);
        processed.push(a.to_vec());
    }

    DdOutput { lineality, rays }
}

fn dedupe(rays: &mut Vec<Vec<Int>>) {
    rays.sort();
    rays.dedup();
}

/// Rays `p`, `m` are adjacent iff the constraints tight at both span a space
/// of dimension exactly `dim - lineality - 2`.
fn adjacent(
    p: &[Int],
    m: &[Int],
    processed: &[Vec<Int>],
    dim: usize,
    lineality: usize,
) -> bool {
    let target = match (dim - lineality).checked_sub(2) {
        Some(t) => t,
        None => return false,
    };
    let common: Vec<Vec<Int>> = processed
        .iter()
        .filter(|c| dot(c, p).is_zero() && dot(c, m).is_zero())
        .cloned()
        .collect();
    if common.len() < target {
        return false;
    }
    rank(&IntMatrix::from_rows(dim, &common)) == target
}

/// One affine constraint `<a,x> + b (>|>=) 0`.
#[derive(Clone, Debug)]
pub(crate) struct AffIneq {
    pub a: Vec<Int>,
    pub b: Int,
    pub strict: bool,
}

/// One affine equation `<a,x> + b = 0`.
#[derive(Clone, Debug)]
pub(crate) struct AffEq {
    pub a: Vec<Int>,
    pub b: Int,
}

fn reduce_ineq(c: &mut AffIneq) {
    let mut g = c.b.abs();
    for x in &c.a {
        g = num_integer::Integer::gcd(&g, x);
    }
    if g.is_zero() || g == Int::from(1) {
        return;
    }
    for x in c.a.iter_mut() {
        *x = &*x / &g;
    }
    c.b = &c.b / &g;
}

/// Exact feasibility of a mixed strict/non-strict affine system by
/// Fourier–Motzkin elimination.
pub(crate) fn feasible(dim: usize, eqs: &[AffEq], ineqs: &[AffIneq]) -> bool {
    let mut eqs: Vec<AffEq> = eqs.to_vec();
    let mut ineqs: Vec<AffIneq> = ineqs.to_vec();
    let mut alive: Vec<bool> = vec![true; dim];

    // Substitute out equations.
    while let Some(pos) = eqs.iter().position(|e| e.a.iter().any(|x| !x.is_zero())) {
        let e = eqs.remove(pos);
        let i = e.a.iter().position(|x| !x.is_zero()).unwrap();
        let ei = e.a[i].clone();
        let elim = |a: &mut Vec<Int>, b: &mut Int| {
            let fi = a[i].clone();
            if fi.is_zero() {
                return;
            }
            for (k, x) in a.iter_mut().enumerate() {
                *x = &*x * &ei - &e.a[k] * &fi;
            }
            *b = &*b * &ei - &e.b * &fi;
            if ei.is_negative() {
                for x in a.iter_mut() {
                    *x = -x.clone();
                }
                *b = -b.clone();
            }
        };
        for f in eqs.iter_mut() {
            elim(&mut f.a, &mut f.b);
        }
        for f in ineqs.iter_mut() {
            elim(&mut f.a, &mut f.b);
            reduce_ineq(f);
        }
        alive[i] = false;
    }
    // Degenerate equations must have zero constant.
    if eqs.iter().any(|e| !e.b.is_zero()) {
        return false;
    }

    // Eliminate remaining variables.
    loop {
        let var = (0..dim)
            .find(|&i| alive[i] && ineqs.iter().any(|c| !c.a[i].is_zero()));
        let Some(i) = var else { break };
        let mut pos: Vec<AffIneq> = Vec::new();
        let mut negc: Vec<AffIneq> = Vec::new();
        let mut zero: Vec<AffIneq> = Vec::new();
        for c in ineqs.drain(..) {
            if c.a[i].is_zero() {
                zero.push(c);
            } else if c.a[i].is_positive() {
                pos.push(c);
            } else {
                negc.push(c);
            }
        }
        for p in &pos {
            for m in &negc {
                let alpha = -m.a[i].clone();
                let beta = p.a[i].clone();
                let a: Vec<Int> = p
                    .a
                    .iter()
                    .zip(m.a.iter())
                    .map(|(x, y)| x * &alpha + y * &beta)
                    .collect();
                let b = &p.b * &alpha + &m.b * &beta;
                let mut c = AffIneq { a, b, strict: p.strict || m.strict };
                reduce_ineq(&mut c);
                zero.push(c);
            }
        }
        zero.sort_by(|x, y| (&x.a, &x.b, x.strict).cmp(&(&y.a, &y.b, y.strict)));
        zero.dedup_by(|x, y| x.a == y.a && x.b == y.b && x.strict == y.strict);
        ineqs = zero;
        alive[i] = false;
    }

    // Only constants remain.
    ineqs.iter().all(|c| {
        debug_assert!(c.a.iter().all(|x| x.is_zero()));
        if c.strict {
            c.b.is_positive()
        } else {
            !c.b.is_negative()
        }
    })
}
