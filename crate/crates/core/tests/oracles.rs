mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::binom_poly;
use toric_ccc::cohside;
use toric_ccc::fans::{self, StandardFan};
use toric_ccc::skeleton;
use toric_ccc::verify::DEFAULT_SEED;
use toric_ccc::zlin::{self, IntMatrix};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Bott: `H^0(O(d)) = C(n+d, n)`, `H^n(O(d)) = C(-d-1, n)`, nothing between.
#[test]
fn projective_space_cohomology() {
    for n in 1..=3usize {
        for d in -7i64..=5 {
            let h = cohside::pn_line_bundle_cohomology(n, d, 8).unwrap();
            let mut want = vec![0u64; n + 1];
            if d >= 0 {
                want[0] = binom_poly(d + n as i64, n as i64) as u64;
            }
            if d < -(n as i64) {
                want[n] = binom_poly(-d - 1, n as i64) as u64;
            }
            assert_eq!(h, want, "P^{n}, O({d})");
        }
    }
    assert!(cohside::pn_line_bundle_cohomology(2, 9, 8).is_err());
}

#[test]
fn diagonal_cokernels() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1i64..=40), rng.gen_range(1i64..=40));
        let g = zlin::cokernel(&IntMatrix::from_rows(&[vec![a, 0], vec![0, b]]));
        let (lo, hi) = (gcd(a, b), a * b / gcd(a, b));
        let want: Vec<BigInt> = [lo, hi].into_iter().filter(|&x| x > 1).map(BigInt::from).collect();
        assert_eq!(g.invariant_factors, want, "diag({a}, {b})");
        assert_eq!(g.order(), Some(BigInt::from(a * b)));
    }
    let g = zlin::cokernel(&IntMatrix::from_rows(&[vec![2, 4]]));
    assert_eq!((g.invariant_factors, g.free_rank), (vec![BigInt::from(2)], 0));
    let g = zlin::cokernel(&IntMatrix::from_rows(&[vec![2], vec![4]]));
    assert_eq!((g.invariant_factors, g.free_rank), (vec![BigInt::from(2)], 1));
}

/// Every family of maximal cones of the projective fan meets (at least in
/// the origin), so the nerve is the full simplex on `n + 1` vertices.
#[test]
fn projective_nerve_is_a_simplex() {
    for n in 1..=4usize {
        let nerve = fans::cech_nerve(&fans::standard_fan(StandardFan::Pn(n)));
        for k in 1..=n + 1 {
            let count = nerve.simplices.iter().filter(|(s, _)| s.len() == k).count() as i128;
            assert_eq!(count, common::binom(n as i64 + 1, k as i64), "P^{n}, {k} vertices");
        }
    }
}

#[test]
fn chamber_counts_match_closed_form() {
    for n in 1..=5usize {
        assert_eq!(skeleton::chamber_step_counts(n), common::chamber_formula(n), "n={n}");
    }
    let total: Vec<usize> = (1..=4).map(|n| common::chamber_formula(n).iter().sum()).collect();
    assert_eq!(total, vec![2, 7, 19, 47]);
}

#[test]
fn unit_circle_chambers_by_sampling() {
    for n in 1..=2usize {
        let den = 2 * n as i64 + 2;
        let found: std::collections::BTreeSet<(String, usize)> =
            skeleton::enumerate_chambers(n).iter().map(|c| (c.flag_string(), c.slant)).collect();
        assert_eq!(found, common::grid_chambers(n, den));
    }
}

#[test]
fn yoneda_and_euler_on_every_five_point_poset() {
    let ps = common::all_posets(5);
    assert_eq!(ps.len(), 357);
    for p in &ps {
        common::check_poset(p, 3).unwrap();
    }
}
