#![allow(dead_code)]

use pot_core::numeric::{int, ratio, LinearSolution, Rational};
use pot_core::{CommGame, Matrix};
use proptest::prelude::*;
use rand::Rng;

/// Numerator 0..=9 over denominator 1..=3.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (0i64..=9, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

pub fn signed_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

pub fn matrix(rows: usize, cols: usize, entry: BoxedStrategy<Rational>) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry, rows * cols).prop_map(move |v| {
        Matrix::from_rows(v.chunks(cols).map(|c| c.to_vec()).collect()).unwrap()
    })
}

pub fn positive_prior(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(1i64..=9, len).prop_map(|w| {
        let total: i64 = w.iter().sum();
        w.into_iter().map(|x| ratio(x, total)).collect()
    })
}

/// Games with `1 <= M, K <= 3` and nonnegative single-digit rational payoffs.
pub fn small_game() -> impl Strategy<Value = CommGame> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, k)| {
        (
            positive_prior(m),
            matrix(k, m, small_rational().boxed()),
            matrix(k, m, small_rational().boxed()),
        )
            .prop_map(|(p, u, v)| CommGame::unlabeled(p, u, v).unwrap())
    })
}

pub fn binary_game() -> impl Strategy<Value = CommGame> {
    (1usize..=4).prop_flat_map(|k| {
        (
            positive_prior(2),
            matrix(k, 2, small_rational().boxed()),
            matrix(k, 2, small_rational().boxed()),
        )
            .prop_map(|(p, u, v)| CommGame::unlabeled(p, u, v).unwrap())
    })
}

pub fn row_stochastic(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(0i64..=5, cols), rows).prop_map(move |w| {
        let rows: Vec<Vec<Rational>> = w
            .into_iter()
            .map(|mut r| {
                if r.iter().all(|x| *x == 0) {
                    r[0] = 1;
                }
                let t: i64 = r.iter().sum();
                r.into_iter().map(|x| ratio(x, t)).collect()
            })
            .collect();
        Matrix::from_rows(rows).unwrap()
    })
}

// Seeded generators for the acceptance harness.

pub fn rand_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(0..=9), rng.gen_range(1..=3))
}

pub fn rand_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rand_rational(rng))
}

pub fn rand_prior<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| ratio(x, total)).collect()
}

pub fn rand_game<R: Rng>(rng: &mut R, m: usize, k: usize) -> CommGame {
    let p = rand_prior(rng, m);
    let u = rand_matrix(rng, k, m);
    let v = rand_matrix(rng, k, m);
    CommGame::unlabeled(p, u, v).unwrap()
}

/// Independent oracle: classic support enumeration. Returns every `(a, λ)`
/// whose support pair yields unique indifference solutions that survive the
/// nonnegativity and best-response checks. In degenerate games this misses
/// equilibria, so it can only certify a subset of the full enumeration.
pub fn support_enumeration(u: &Matrix, v: &Matrix) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    use pot_core::numeric::solve_linear_system;
    let (k, m) = u.shape();
    let mut out = Vec::new();
    for a_mask in 1u32..(1 << k) {
        for l_mask in 1u32..(1 << m) {
            let sa: Vec<usize> = (0..k).filter(|i| a_mask >> i & 1 == 1).collect();
            let sl: Vec<usize> = (0..m).filter(|i| l_mask >> i & 1 == 1).collect();
            // λ on sl and y: (Vλ)_k = y for k in sa, Σλ = 1.
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for &kk in &sa {
                let mut r: Vec<Rational> = sl.iter().map(|&mm| v[(kk, mm)].clone()).collect();
                r.push(int(-1));
                rows.push(r);
                rhs.push(int(0));
            }
            let mut r = vec![int(1); sl.len()];
            r.push(int(0));
            rows.push(r);
            rhs.push(int(1));
            let Ok(LinearSolution::Unique(lsol)) =
                solve_linear_system(&Matrix::from_rows(rows).unwrap(), &rhs)
            else {
                continue;
            };
            // a on sa and x: (Uᵀa)_m = x for m in sl, Σa = 1.
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for &mm in &sl {
                let mut r: Vec<Rational> = sa.iter().map(|&kk| u[(kk, mm)].clone()).collect();
                r.push(int(-1));
                rows.push(r);
                rhs.push(int(0));
            }
            let mut r = vec![int(1); sa.len()];
            r.push(int(0));
            rows.push(r);
            rhs.push(int(1));
            let Ok(LinearSolution::Unique(asol)) =
                solve_linear_system(&Matrix::from_rows(rows).unwrap(), &rhs)
            else {
                continue;
            };
            let mut lambda = vec![int(0); m];
            for (i, &mm) in sl.iter().enumerate() {
                lambda[mm] = lsol[i].clone();
            }
            let mut a = vec![int(0); k];
            for (i, &kk) in sa.iter().enumerate() {
                a[kk] = asol[i].clone();
            }
            if lambda.iter().chain(&a).any(|x| *x < int(0)) {
                continue;
            }
            let y = &lsol[sl.len()];
            let x = &asol[sa.len()];
            let receiver_ok = (0..k).all(|kk| {
                let val = (0..m).fold(int(0), |acc, mm| acc + &v[(kk, mm)] * &lambda[mm]);
                val <= *y
            });
            let belief_ok = (0..m).all(|mm| {
                let val = (0..k).fold(int(0), |acc, kk| acc + &u[(kk, mm)] * &a[kk]);
                val <= *x
            });
            if receiver_ok && belief_ok && !out.contains(&(a.clone(), lambda.clone())) {
                out.push((a, lambda));
            }
        }
    }
    out
}
