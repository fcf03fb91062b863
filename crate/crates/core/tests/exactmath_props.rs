use gradfrob::exactmath::{
    common_nonzero_point, int, is_generically_invertible, structural_rank, Invertibility, LinearForm,
    LinearFormMatrix, Matrix, MultiPoly, PitConfig, Rational, Strategy as Pit,
};
use num_traits::Zero;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(rat(), c), r).prop_map(move |rows| Matrix::from_rows(rows, c).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(rat(), n), n).prop_map(move |rows| Matrix::from_rows(rows, n).unwrap())
    })
}

/// Square matrix of linear forms; `fill` is the percentage of nonzero cells.
fn form_matrix(max: usize, nvars: usize) -> impl Strategy<Value = LinearFormMatrix> {
    (1..=max, 10u32..=100).prop_flat_map(move |(n, fill)| {
        let cell = (0u32..100, prop::collection::vec(-3i64..=3, nvars))
            .prop_map(move |(roll, cs)| {
                if roll >= fill {
                    return LinearForm::zero();
                }
                cs.into_iter().enumerate().fold(LinearForm::zero(), |f, (k, c)| f.with_term(k, int(c)))
            });
        prop::collection::vec(prop::collection::vec(cell, n), n)
            .prop_map(move |grid| LinearFormMatrix::from_grid(grid, nvars).unwrap())
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat(), nvars)
}

/// Leibniz formula: sum over permutations with signs.
fn leibniz(m: &Matrix) -> Rational {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.rows();
    let mut total = Rational::zero();
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term: Rational = if inversions % 2 == 0 { int(1) } else { int(-1) };
        for (r, &c) in p.iter().enumerate() {
            term *= m.get(r, c);
        }
        total += term;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_leibniz(m in square(4)) {
        prop_assert_eq!(m.determinant().unwrap(), leibniz(&m));
    }

    #[test]
    fn rank_of_transpose(m in matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.is_square() && m.rank() == m.rows(), m.is_square() && m.is_invertible());
    }

    #[test]
    fn nullspace_is_kernel(m in matrix(5)) {
        let basis = m.nullspace_basis();
        prop_assert_eq!(basis.len() + m.rank(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            prop_assert_eq!(Matrix::from_rows(basis.clone(), m.cols()).unwrap().rank(), basis.len());
        }
    }

    #[test]
    fn symbolic_det_commutes_with_eval(m in form_matrix(5, 3), x in point(3)) {
        let det = m.symbolic_det().unwrap();
        prop_assert_eq!(det.eval(&x).unwrap(), m.eval_at(&x).unwrap().determinant().unwrap());
    }

    #[test]
    fn structural_rank_bounds_generic_rank(m in form_matrix(5, 2)) {
        let det = m.symbolic_det().unwrap();
        if structural_rank(&m) < m.rows() {
            prop_assert!(det.is_zero());
        }
    }

    #[test]
    fn strategies_agree_with_symbolic_det(m in form_matrix(5, 2), seed in 0u64..1000) {
        let generic = !m.symbolic_det().unwrap().is_zero();
        for strategy in [Pit::Auto, Pit::Randomized, Pit::Symbolic] {
            let cfg = PitConfig::default().with_strategy(strategy).with_seed(seed);
            match is_generically_invertible(&m, &cfg).unwrap() {
                Invertibility::Yes { witness, det } => {
                    prop_assert!(generic);
                    prop_assert!(!det.is_zero());
                    prop_assert_eq!(m.eval_at(&witness).unwrap().determinant().unwrap(), det);
                }
                Invertibility::No => prop_assert!(!generic),
            }
        }
    }

    #[test]
    fn exact_division_inverts_product(a in form_matrix(3, 2), b in form_matrix(2, 2)) {
        let p = a.symbolic_det().unwrap();
        let q = b.symbolic_det().unwrap();
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p));
    }

    #[test]
    fn common_point_avoids_all_zero_sets(ms in prop::collection::vec(form_matrix(3, 3), 1..4)) {
        let polys: Vec<MultiPoly> = ms.iter().map(|m| m.symbolic_det().unwrap()).filter(|p| !p.is_zero()).collect();
        let x = common_nonzero_point(&polys);
        for p in &polys {
            prop_assert!(!p.eval(&x).unwrap().is_zero());
        }
    }
}

#[test]
fn sampling_is_seeded_and_starts_at_ones() {
    let cfg = PitConfig::default().with_seed(42);
    let a: Vec<Vec<Rational>> = cfg.points(3).take(5).collect();
    let b: Vec<Vec<Rational>> = cfg.points(3).take(5).collect();
    assert_eq!(a, b);
    assert_eq!(a[0], vec![int(1); 3]);
    let other: Vec<Vec<Rational>> = PitConfig::default().with_seed(43).points(3).take(5).collect();
    assert_ne!(a[1..], other[1..]);
    let bound = int(cfg.sample_bound as i64);
    assert!(a.iter().flatten().all(|x| *x >= int(1) && *x <= bound));
}

#[test]
fn singular_at_ones_is_still_found() {
    // det = x0^2 - x1^2 vanishes at the first sample point
    let (x, y) = (LinearForm::var(0), LinearForm::var(1));
    let m = LinearFormMatrix::from_grid(vec![vec![x.clone(), y.clone()], vec![y, x]], 2).unwrap();
    match is_generically_invertible(&m, &PitConfig::default()).unwrap() {
        Invertibility::Yes { witness, det } => {
            assert_ne!(witness, vec![int(1), int(1)]);
            assert_eq!(det, &witness[0] * &witness[0] - &witness[1] * &witness[1]);
        }
        Invertibility::No => panic!("x0^2 - x1^2 is not identically zero"),
    }
}
