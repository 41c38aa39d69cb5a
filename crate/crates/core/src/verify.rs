//! Decategorified comparisons between the two sides, each returning a
//! pass/fail report that lists every mismatch.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohside::{self, CohError};
use crate::conside;
use crate::fans::{self, Cone, StackyFan};
use crate::picsym::{self, PicMonomial};
use crate::skeleton;
use crate::zlin::IntMatrix;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub checked: usize,
    pub diffs: Vec<String>,
}

impl Report {
    fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), passed: true, checked: 0, diffs: vec![] }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, got: T, want: T) {
        self.checked += 1;
        if got != want {
            self.passed = false;
            self.diffs.push(format!("{}: got {:?}, expected {:?}", what(), got, want));
        }
    }

    fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.passed = false;
        self.diffs.push(msg);
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.passed &= other.passed;
        self.checked += other.checked;
        self.diffs.extend(other.diffs);
        self
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} ({} checks)", if self.passed { "PASS" } else { "FAIL" }, self.check, self.checked)?;
        for d in &self.diffs {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

/// `[A^1/μ_n]` as a stacky fan.
pub fn stacky_line(n: i64) -> StackyFan {
    let line = fans::fan_from_max_cones(1, &[Cone::orthant(1, 1)]).expect("ray");
    StackyFan::new(line, IntMatrix::from_rows(&[vec![n]])).expect("rank one")
}

/// Graded homs of `Γ` for `[A^1/μ_n]` against path counts in the cyclic
/// quiver, degree = path length.
pub fn cyclic(n: usize, bound: usize) -> Report {
    let mut r = Report::new(format!("cyclic n={n}"));
    let g = match cohside::gamma_category(&stacky_line(n as i64)) {
        Ok(g) => g,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let objs = g.objects();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&objs[i], &objs[j]);
            match cohside::hom_graded(&g, a, b, bound) {
                Ok(h) => r.expect(|| format!("hom({i},{j})"), h.dims, cohside::cyclic_quiver_paths(n, i, j, bound)),
                Err(e) => r.fail(e.to_string()),
            }
        }
    }
    r
}

/// Line bundle cohomology of `P^n` against binomials, then the chamber
/// side against the coherent side.
pub fn ccc(n: usize) -> Report {
    let mut r = Report::new(format!("ccc n={n}"));
    let ni = n as i64;
    let coh = |d: i64| cohside::pn_line_bundle_cohomology(n, d, d.abs());
    for d in 0..=4 {
        match coh(d) {
            Ok(h) => {
                let mut want = vec![0u64; n + 1];
                want[0] = binom_u64(ni + d, ni);
                r.expect(|| format!("H^*(O({d}))"), h, want);
            }
            Err(e) => r.fail(e.to_string()),
        }
    }
    for d in (-ni - 5)..=(-ni - 1) {
        match coh(d) {
            Ok(h) => {
                let mut want = vec![0u64; n + 1];
                want[n] = binom_u64(-d - 1, ni);
                r.expect(|| format!("H^*(O({d}))"), h, want);
            }
            Err(e) => r.fail(e.to_string()),
        }
    }
    for a in 0..=2i64 {
        for b in -4..=4i64 {
            match cohside::euler_pairing_coherent(n, a, b) {
                Ok(chi) => r.expect(|| format!("chi(O({a}),O({b}))"), chi, picsym::binomial_signed(ni + b - a, ni)),
                Err(e) => r.fail(e.to_string()),
            }
        }
    }
    r.merge(two_sided(n))
}

fn binom_u64(m: i64, k: i64) -> u64 {
    u64::try_from(picsym::binomial(m, k)).expect("small binomial")
}

/// Homs and Euler forms between chamber generators against `O(0..n)`.
pub fn two_sided(n: usize) -> Report {
    let mut r = Report::new(format!("two-sided n={n}"));
    let cat = conside::chamber_category(n);
    let gens: Vec<conside::Rep> = (0..=n).map(|v| conside::corepresentable(&cat, v)).collect();
    for i in 0..=n {
        for j in 0..=n {
            let d = j as i64 - i as i64;
            let coh = match cohside::pn_line_bundle_cohomology(n, d, d.abs()) {
                Ok(h) => h,
                Err(e) => {
                    r.fail(e.to_string());
                    continue;
                }
            };
            match conside::rep_hom(&cat, &gens[i], &gens[j]) {
                Ok(ext) => {
                    let mut want = coh.iter().map(|&x| x as usize).collect::<Vec<_>>();
                    want.resize(ext.len().max(want.len()), 0);
                    let mut got = ext.clone();
                    got.resize(want.len(), 0);
                    r.expect(|| format!("Ext(G{},G{}) vs H(O({d}))", i + 1, j + 1), got, want);
                }
                Err(e) => r.fail(e.to_string()),
            }
            let ei = euler_form_generators(&cat, &gens, i, j);
            match cohside::euler_pairing_coherent(n, i as i64, j as i64) {
                Ok(chi) => r.expect(|| format!("euler(G{},G{})", i + 1, j + 1), ei, chi),
                Err(e) => r.fail(e.to_string()),
            }
        }
    }
    r
}

fn euler_form_generators(cat: &conside::FiniteCategory, gens: &[conside::Rep], i: usize, j: usize) -> BigInt {
    conside::euler_form(cat, &gens[i].dim_vector(), &gens[j].dim_vector())
}

/// Gram matrix `Hom(G_i, G_j)` of the chamber generators.
pub fn beilinson_gram(n: usize) -> Vec<Vec<i64>> {
    let cat = conside::chamber_category(n);
    let gens: Vec<conside::Rep> = (0..=n).map(|v| conside::corepresentable(&cat, v)).collect();
    (0..=n)
        .map(|i| (0..=n).map(|j| i64::try_from(euler_form_generators(&cat, &gens, i, j)).expect("small")).collect())
        .collect()
}

/// Geometric chamber counts against the closed formula, at two values of
/// the perturbation.
pub fn chambers(n: usize) -> Report {
    let mut r = Report::new(format!("chambers n={n}"));
    let formula = skeleton::chamber_step_counts(n);
    for (name, eps) in [("eps", skeleton::default_eps(n)), ("eps'", skeleton::alternate_eps(n))] {
        let cs = skeleton::enumerate_chambers_with(n, &eps);
        r.expect(|| format!("step counts at {name}={eps}"), skeleton::step_histogram(n, &cs), formula.clone());
    }
    let a = skeleton::chamber_set(&skeleton::enumerate_chambers_with(n, &skeleton::default_eps(n)));
    let b = skeleton::chamber_set(&skeleton::enumerate_chambers_with(n, &skeleton::alternate_eps(n)));
    r.expect(|| "chamber sets agree".into(), a, b);
    r
}

/// Stalks of costandard sheaves against isotypic components on
/// `[A^1/μ_n]`, every character.
pub fn kappa_line(n: usize, bound: usize) -> Report {
    let mut r = Report::new(format!("kappa mu_{n}"));
    let sf = stacky_line(n as i64);
    let sigma = Cone::orthant(1, 1);
    let (monoid, quot) = match cohside::chart_monoid(&sf, &sigma) {
        Ok(x) => x,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let w = monoid.default_weight();
    let dual = fans::dual_cone(&sigma);
    for chi in quot.group.elements() {
        let iso = cohside::isotypic_component(&monoid, &quot, &chi, bound);
        let stalk = cohside::costandard_stalk(&dual, quot.representative(&chi), &w, bound);
        compare(&mut r, &format!("chi={chi}"), iso, stalk);
    }
    r
}

/// The same comparison on the cone of the first `k` coordinate vectors in
/// `Z^n`.
pub fn kappa_orthant(k: usize, n: usize, bound: usize) -> Report {
    let mut r = Report::new(format!("kappa cone(e1..e{k}) in Z^{n}"));
    let sigma = Cone::orthant(n, k);
    let (monoid, quot) = match cohside::quotient_monoid(&sigma) {
        Ok(x) => x,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let (dual, basis) = cohside::quotient_dual_cone(&sigma);
    let w = monoid.default_weight();
    for chi in quot.group.elements() {
        let rep = cohside::restrict_character(quot.representative(&chi), &basis);
        let iso = cohside::isotypic_component(&monoid, &quot, &chi, bound);
        let stalk = cohside::costandard_stalk(&dual, &rep, &w, bound);
        compare(&mut r, &format!("chi={chi}"), iso, stalk);
    }
    r
}

fn compare(r: &mut Report, what: &str, a: Result<cohside::GradedDims, CohError>, b: Result<cohside::GradedDims, CohError>) {
    match (a, b) {
        (Ok(a), Ok(b)) => r.expect(|| what.to_string(), a.dims, b.dims),
        (Err(e), _) | (_, Err(e)) => r.fail(format!("{what}: {e}")),
    }
}

/// Generic generators `L1..Ln` of `Pic`.
pub fn generic_pic(n: usize) -> Vec<PicMonomial> {
    (0..n).map(|i| PicMonomial::generator(n, i)).collect()
}

/// Labels from the deck action against labels transported across the
/// walls of the fundamental cube.
pub fn monodromy(n: usize) -> Report {
    let mut r = Report::new(format!("monodromy n={n}"));
    let pic = generic_pic(n);
    let q = skeleton::chamber_quiver(n, &pic);
    let chambers = skeleton::enumerate_chambers(n);
    match skeleton::transport_labels(n, &pic) {
        Ok(labels) => {
            for (c, l) in chambers.iter().zip(&labels) {
                let v = q.vertices.iter().position(|v| &v.chamber == c && !v.duplicate).expect("vertex");
                r.expect(|| format!("label of {c}"), l.clone(), q.vertex_labels[v].clone());
            }
        }
        Err(e) => r.fail(e.to_string()),
    }
    if n == 1 {
        r.expect(|| "circle quiver".into(), skeleton::render_circle_quiver(&q, &["L"]), "b ← a → b⊗L".to_string());
    }
    r
}

/// Random chamber vectors that are constant on torus chambers reduce to
/// zero in `n + 1` steps; the generator Gram matrix is unimodular and
/// upper triangular.
pub fn generation(n: usize, seed: u64, samples: usize) -> Report {
    let mut r = Report::new(format!("generation n={n}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reducer = conside::Reducer::new(n);
    for s in 0..samples {
        let per_class: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
        let d = reducer.lift(&per_class);
        match reducer.reduce(&d) {
            Ok(trace) => {
                r.expect(|| format!("sample {s} steps"), trace.len() <= n + 1, true);
                r.expect(|| format!("sample {s} remainder"), trace.last().map(|t| t.remainder.iter().all(|&x| x == 0)), Some(true));
            }
            Err(e) => r.fail(format!("sample {s} {per_class:?}: {e}")),
        }
    }
    let gram = beilinson_gram(n);
    let m = IntMatrix::from_rows(&gram);
    r.expect(|| "gram determinant".into(), m.determinant(), BigInt::one());
    let lower_zero = (0..=n).all(|i| (0..i).all(|j| gram[i][j] == 0));
    let unit_diag = (0..=n).all(|i| gram[i][i] == 1);
    r.expect(|| format!("gram {gram:?} unitriangular"), lower_zero && unit_diag, true);
    r
}

/// Every check for a given `n`.
pub fn all(n: usize, seed: u64) -> Report {
    let mut r = Report::new(format!("all n={n}"));
    if n >= 2 {
        r = r.merge(cyclic(n, 12)).merge(kappa_line(n, 10));
    }
    r = r.merge(chambers(n)).merge(monodromy(n)).merge(generation(n, seed, 100)).merge(ccc(n));
    for k in 0..=n.min(3) {
        r = r.merge(kappa_orthant(k, n.min(3), 10));
    }
    r
}

/// κ on the single maximal cone of a stacky fan.
pub fn kappa_fan(sf: &StackyFan, bound: usize) -> Report {
    let mut r = Report::new("kappa fan");
    let g = match cohside::gamma_category(sf) {
        Ok(g) => g,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let sigma = sf.fan.maximal_cones().remove(0);
    let dual = fans::dual_cone(&sigma);
    let w = g.monoid.default_weight();
    for chi in g.objects() {
        let iso = cohside::isotypic_component(&g.monoid, &g.quotient, &chi, bound);
        let stalk = cohside::costandard_stalk(&dual, g.quotient.representative(&chi), &w, bound);
        compare(&mut r, &format!("chi={chi}"), iso, stalk);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for rep in [cyclic(3, 9), ccc(1), chambers(2), kappa_line(4, 8), kappa_orthant(1, 2, 6), monodromy(1), monodromy(2), generation(2, DEFAULT_SEED, 10)] {
            assert!(rep.passed, "{rep}");
        }
    }
}
