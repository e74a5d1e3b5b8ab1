//! Property tests for the exact linear algebra and cone canonicalization.

use logchow::fan::Cone;
use logchow::lattice::{
    self, hermite_normal_form, in_lattice, lattice_index, saturate, smith_normal_form,
    solve_combination, vec_mat, Int, IntMatrix,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, rows * cols)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    entries(rows, cols).prop_map(move |e| {
        IntMatrix::new(rows, cols, e.into_iter().map(Int::from).collect())
    })
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let (d, _, _) = smith_normal_form(m);
    d.diagonal().iter().all(|x| x.is_one())
}

fn row_echelon_ok(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    for r in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&c| !h.at(r, c).is_zero());
        match (pivot, last_pivot) {
            (Some(p), Some(lp)) if p <= lp => return false,
            _ => {}
        }
        if let Some(p) = pivot {
            if h.at(r, p).is_negative() {
                return false;
            }
            for above in 0..r {
                let v = h.at(above, p);
                if v.is_negative() || v >= h.at(r, p) {
                    return false;
                }
            }
            last_pivot = Some(p);
        } else {
            // Zero rows must sink to the bottom: no pivot below allowed.
            for below in r..h.rows() {
                if (0..h.cols()).any(|c| !h.at(below, c).is_zero()) {
                    return false;
                }
            }
            break;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_contract(m in matrix(3, 3)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(is_unimodular(&u));
        prop_assert!(row_echelon_ok(&h));
    }

    #[test]
    fn hnf_unique_under_row_permutation(m in matrix(3, 4)) {
        let (h, _) = hermite_normal_form(&m);
        let mut rows = m.row_vecs();
        rows.rotate_left(1);
        rows.swap(0, 1);
        let (h2, _) = hermite_normal_form(&IntMatrix::from_rows(4, &rows));
        prop_assert_eq!(h, h2);
    }

    #[test]
    fn snf_contract(m in matrix(3, 3)) {
        let (d, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        prop_assert!(is_unimodular(&u));
        prop_assert!(is_unimodular(&v));
        prop_assert!(d.is_diagonal());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[1].is_zero() {
                prop_assert!(!w[0].is_zero());
                prop_assert!((w[1].clone() % w[0].clone()).is_zero());
            }
        }
    }

    #[test]
    fn saturate_idempotent(vs in proptest::collection::vec(entries(1, 3), 1..4)) {
        let vs: Vec<Vec<Int>> = vs
            .into_iter()
            .map(|v| v.into_iter().map(Int::from).collect())
            .collect();
        let b1 = saturate(3, &vs).unwrap();
        let b2 = saturate(3, &b1.vectors).unwrap();
        prop_assert_eq!(&b1, &b2);
        if !b1.vectors.is_empty() {
            prop_assert_eq!(lattice_index(&b1.vectors).unwrap(), Int::one());
        }
    }

    #[test]
    fn membership_matches_solution(gens in proptest::collection::vec(entries(1, 3), 1..4),
                                   coeffs in proptest::collection::vec(-4i64..=4, 1..4)) {
        let gens: Vec<Vec<Int>> = gens
            .into_iter()
            .map(|v| v.into_iter().map(Int::from).collect())
            .collect();
        // A genuine integer combination must always be recognized.
        let m = IntMatrix::from_rows(3, &gens);
        let c: Vec<Int> = coeffs.iter().take(gens.len()).map(|&x| Int::from(x)).collect();
        let mut c = c;
        c.resize(gens.len(), Int::zero());
        let target = vec_mat(&c, &m);
        prop_assert!(in_lattice(&gens, &target).unwrap());
        let x = solve_combination(&gens, &target).unwrap().unwrap();
        prop_assert_eq!(vec_mat(&x, &m), target);
    }

    #[test]
    fn cone_canonical_under_scaling_and_order(raw in proptest::collection::vec(entries(1, 2), 1..4),
                                              scales in proptest::collection::vec(1i64..=3, 4)) {
        let gens: Vec<Vec<Int>> = raw
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let Ok(c1) = Cone::from_generators(2, &gens) else {
            return Ok(());
        };
        let mut scaled: Vec<Vec<Int>> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| lattice::scale(g, &Int::from(scales[i % scales.len()])))
            .collect();
        scaled.reverse();
        let c2 = Cone::from_generators(2, &scaled).unwrap();
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn cone_membership_against_rays(raw in proptest::collection::vec(entries(1, 3), 2..4),
                                    lambda in proptest::collection::vec(0i64..=3, 4)) {
        let gens: Vec<Vec<Int>> = raw
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let Ok(c) = Cone::from_generators(3, &gens) else {
            return Ok(());
        };
        // Nonnegative combinations of rays lie in the cone.
        let mut p = vec![Int::zero(); 3];
        for (i, r) in c.rays().iter().enumerate() {
            let l = Int::from(lambda[i % lambda.len()]);
            p = lattice::add(&p, &lattice::scale(r, &l));
        }
        prop_assert!(c.contains(&p));
    }

    #[test]
    fn smoothness_equivalences(raw in proptest::collection::vec(entries(1, 3), 2..5)) {
        let gens: Vec<Vec<Int>> = raw
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let Ok(c) = Cone::from_generators(3, &gens) else {
            return Ok(());
        };
        let mult_one =
            c.is_simplicial() && c.multiplicity().map(|m| m.is_one()).unwrap_or(false);
        prop_assert_eq!(c.is_smooth(), mult_one);
    }
}

#[test]
fn cone_dual_description_roundtrip() {
    // Rebuild cones from their facet descriptions across a deterministic
    // sample (the proptest version would recompute the same duals).
    let samples: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![1, 0], vec![1, 2]],
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![2, 1], vec![1, 3]],
        vec![vec![1, 0, 0], vec![1, 2, 0], vec![0, 0, 1]],
        vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
    ];
    for gens in samples {
        let gens: Vec<Vec<Int>> =
            gens.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect();
        let n = gens[0].len();
        let c = Cone::from_generators(n, &gens).unwrap();
        // Membership of each ray and of an interior point, straight from the
        // dual description.
        for r in c.rays() {
            assert!(c.contains(r));
        }
        assert!(c.is_zero() || c.contains_relint(&c.interior_point()));
    }
}
