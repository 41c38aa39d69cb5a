//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use toric_ccc::conside::{self, FinitePoset, Rep};

pub fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// `m (m-1) … (m-k+1) / k!` for any integer `m`.
pub fn binom_poly(m: i64, k: i64) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (m - i) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}

/// Chambers of the open unit cube found by sampling a grid of spacing
/// `eps / 4` (shifted by half a step), with `eps = 1 / eps_den`.
/// Returns `(flags, slant)` with flags written as in `Chamber::flag_string`.
pub fn grid_chambers(n: usize, eps_den: i64) -> BTreeSet<(String, usize)> {
    let m = 4 * eps_den;
    let unit = 2 * m; // coordinates are X / unit with X odd
    let eps_units = unit / eps_den;
    let mut seen = BTreeSet::new();
    let mut hits = std::collections::HashSet::new();
    let mut j = vec![0i64; n];
    loop {
        let xs: Vec<i64> = j.iter().map(|&v| 2 * v + 1).collect();
        let sum: i64 = xs.iter().sum();
        if sum % unit != 0 {
            let mask: u32 = xs.iter().enumerate().map(|(i, &x)| u32::from(x < eps_units) << i).sum();
            let slant = (sum / unit) as usize;
            if hits.insert((mask, slant)) {
                let flags: String = (0..n).map(|i| if mask >> i & 1 == 1 { 'S' } else { 'L' }).collect();
                seen.insert((flags, slant));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return seen;
            }
            j[i] += 1;
            if j[i] < m {
                break;
            }
            j[i] = 0;
            i += 1;
        }
    }
}

/// `1` for step 0, `C(n,k)+…+C(n,0)` for `0 < k < n`, `C(n,n)+…+C(n,1)`
/// for `k = n`.
pub fn chamber_formula(n: usize) -> Vec<usize> {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            let s: i128 = if k == 0 {
                1
            } else if k < n {
                (0..=k).map(|j| binom(n, j)).sum()
            } else {
                (1..=n).map(|j| binom(n, j)).sum()
            };
            s as usize
        })
        .collect()
}

/// Every poset on `n` labelled points with `0..n` a linear extension: up to
/// isomorphism this is every poset on `n` points.
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let rel: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let p = FinitePoset::from_relations(n, &rel).expect("closure of a DAG is a poset");
        if seen.insert(p.leq.clone()) {
            out.push(p);
        }
    }
    out
}

/// Interval `[a, b]` of a poset as a support mask.
pub fn interval(p: &FinitePoset, a: usize, b: usize) -> Vec<bool> {
    (0..p.len()).map(|c| p.leq[a][c] && p.leq[c][b]).collect()
}

/// Yoneda: `Ext^*(k[Hom(v,-)], N) = N(v)` in degree 0; Euler form equals the
/// alternating sum of Ext dimensions. `extra` interval modules are added to
/// the corepresentables.
pub fn check_poset(p: &FinitePoset, extra: usize) -> Result<(), String> {
    let cat = p.to_category();
    let n = p.len();
    let mut reps: Vec<(Option<usize>, Rep)> = (0..n).map(|v| (Some(v), conside::corepresentable(&cat, v))).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p.leq[a][b]).collect();
    pairs.sort_by_key(|&(a, b)| (b + n - a) % n);
    for &(a, b) in pairs.iter().rev().take(extra) {
        reps.push((None, Rep::interval(&cat, &interval(p, a, b)).map_err(|e| e.to_string())?));
    }
    for (mv, m) in &reps {
        for (_, nn) in &reps {
            let ext = conside::rep_hom(&cat, m, nn).map_err(|e| e.to_string())?;
            let alt: i64 = ext.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            let euler = conside::euler_form(&cat, &m.dim_vector(), &nn.dim_vector());
            if num_bigint::BigInt::from(alt) != euler {
                return Err(format!("{:?}: Euler form {euler} but Ext {ext:?} for {:?} vs {:?}", p.leq, m.dims, nn.dims));
            }
            if let Some(v) = mv {
                let mut want = vec![0usize; ext.len()];
                want[0] = nn.dims[*v];
                if ext != want {
                    return Err(format!("{:?}: Yoneda fails at {v}: {ext:?} vs {want:?}", p.leq));
                }
            }
        }
    }
    Ok(())
}

/// Random poset on `n` points: each pair `a < b` related with chance 1/3.
pub fn random_poset(n: usize, rng: &mut impl rand::Rng) -> FinitePoset {
    let rel: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_ratio(1, 3)).collect::<Vec<_>>();
    FinitePoset::from_relations(n, &rel).expect("poset")
}

fn det(m: &[Vec<i128>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if m < k {
        return vec![];
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// `u` is a nonnegative combination of `gens`, by Carathéodory: some
/// linearly independent subset carries it, found with Cramer's rule.
pub fn in_cone(gens: &[Vec<i64>], u: &[i64]) -> bool {
    let r = u.len();
    if u.iter().all(|&x| x == 0) {
        return true;
    }
    for k in 1..=r.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            for rows in subsets(r, k) {
                let a: Vec<Vec<i128>> = rows.iter().map(|&i| s.iter().map(|&g| gens[g][i] as i128).collect()).collect();
                let d = det(&a);
                if d == 0 {
                    continue;
                }
                let lam: Vec<i128> = (0..k)
                    .map(|c| {
                        let mut b = a.clone();
                        for (ri, &i) in rows.iter().enumerate() {
                            b[ri][c] = u[i] as i128;
                        }
                        det(&b)
                    })
                    .collect();
                let ok_sign = lam.iter().all(|&l| l == 0 || (l > 0) == (d > 0));
                let ok_eq = (0..r).all(|i| s.iter().zip(&lam).map(|(&g, &l)| gens[g][i] as i128 * l).sum::<i128>() == d * u[i] as i128);
                if ok_sign && ok_eq {
                    return true;
                }
                break;
            }
        }
    }
    false
}

/// Checks `dual_cone` against half-space membership on a box of integer
/// points, and that dualizing twice returns the cone. `Err` describes the
/// first failure.
pub fn check_dual(r: usize, raw: &[Vec<i64>], radius: i64) -> Result<(), String> {
    use toric_ccc::fans::{self, Cone};
    let Ok(c) = Cone::new(r, raw) else { return Ok(()) };
    let d = fans::dual_cone(&c);
    let side = (2 * radius + 1) as usize;
    for idx in 0..side.pow(r as u32) {
        let mut rest = idx;
        let u: Vec<i64> = (0..r)
            .map(|_| {
                let x = (rest % side) as i64 - radius;
                rest /= side;
                x
            })
            .collect();
        let in_dual = raw.iter().all(|g| g.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>() >= 0);
        if in_dual != in_cone(&d.generators, &u) {
            return Err(format!("dual of {raw:?} = {:?} wrong at {u:?}", d.generators));
        }
        let in_c = in_cone(raw, &u);
        if in_c != in_cone(&c.generators, &u) {
            return Err(format!("canonical form of {raw:?} = {:?} wrong at {u:?}", c.generators));
        }
    }
    if fans::dual_cone(&d) != c {
        return Err(format!("dual twice of {raw:?} gives {:?}", fans::dual_cone(&d).generators));
    }
    Ok(())
}
