//! The coherent side by lattice-point counting: the category `Γ_{Λ,H}`,
//! isotypic components of monoid algebras, costandard stalks and toric
//! Čech cohomology of line bundles on `P^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fans::{self, Cone, IVec, StackyFan, StandardFan};
use crate::linalg::{self, q, QMatrix, QVector};
use crate::zlin::{self, Character, FiniteAbelianGroup, LatticeError, LatticeQuotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("weight {0:?} is not positive on the ray {1:?}")]
    Weight(Vec<i64>, IVec),
    #[error("box bound {bound} is too small for twist {twist}")]
    Truncated { bound: i64, twist: i64 },
    #[error("character {0:?} is not compatible with the lattice")]
    Incompatible(Vec<String>),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `w(x) = scale * Σ coeffs_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub coeffs: Vec<i64>,
    pub scale: i64,
}

impl Weight {
    pub fn coordinate_sum(rank: usize, scale: i64) -> Self {
        Weight { coeffs: vec![1; rank], scale }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let s: BigRational = self.coeffs.iter().zip(x).map(|(c, v)| q(*c) * v).sum();
        s * q(self.scale)
    }

    fn check_positive(&self, c: &Cone) -> Result<(), CohError> {
        for g in &c.generators {
            let v: i64 = self.coeffs.iter().zip(g).map(|(a, b)| a * b).sum();
            if v <= 0 {
                return Err(CohError::Weight(self.coeffs.clone(), g.clone()));
            }
        }
        Ok(())
    }
}

/// Dimension per degree `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub weight: Weight,
}

impl GradedDims {
    pub fn zero(bound: usize, weight: Weight) -> Self {
        GradedDims { dims: vec![0; bound + 1], weight }
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    pub fn bound(&self) -> usize {
        self.dims.len() - 1
    }
}

/// `cone ∩ lattice`, where the lattice is given by basis columns in
/// rational coordinates and the cone is pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    pub rank: usize,
    pub cone: Cone,
    pub lattice: QMatrix,
    pub denominator: i64,
    lattice_inv: QMatrix,
}

impl AffineMonoid {
    pub fn new(cone: Cone, lattice: QMatrix) -> Result<Self, CohError> {
        let rank = cone.ambient_rank;
        let lattice_inv = lattice
            .inverse()
            .ok_or_else(|| CohError::Unsupported("lattice basis is singular".into()))?;
        let mut d = BigInt::one();
        for i in 0..rank {
            for j in 0..rank {
                d = d.lcm(lattice[(i, j)].denom());
            }
        }
        Ok(AffineMonoid { rank, cone, lattice, denominator: d.to_i64().expect("denominator"), lattice_inv })
    }

    /// The standard monoid `cone ∩ Z^r`.
    pub fn integral(cone: Cone) -> Self {
        let r = cone.ambient_rank;
        AffineMonoid::new(cone, QMatrix::identity(r)).expect("identity basis")
    }

    pub fn default_weight(&self) -> Weight {
        Weight::coordinate_sum(self.rank, self.denominator)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        linalg::as_integers(&self.lattice_inv.mul_vec(v)).is_some() && self.cone.contains_q(v)
    }

    /// Every element of weight at most `bound`, with its weight.
    pub fn elements(&self, weight: &Weight, bound: usize) -> Result<Vec<(QVector, usize)>, CohError> {
        let pts = coset_points(&self.cone, &vec![BigRational::zero(); self.rank], self.denominator, weight, bound)?;
        Ok(pts.into_iter().filter(|(v, _)| linalg::as_integers(&self.lattice_inv.mul_vec(v)).is_some()).collect())
    }
}

/// Points of `offset + (1/d) Z^r` in the closed cone with weight in
/// `0..=bound`. The search box comes from writing a point as a nonnegative
/// combination of the extreme rays.
fn coset_points(
    cone: &Cone,
    offset: &[BigRational],
    d: i64,
    weight: &Weight,
    bound: usize,
) -> Result<Vec<(QVector, usize)>, CohError> {
    let r = cone.ambient_rank;
    weight.check_positive(cone)?;
    if r == 0 {
        return Ok(vec![(vec![], 0)]);
    }
    // |x_i| <= Σ_j bound |ρ_j,i| / w(ρ_j)
    let mut reach = vec![BigRational::zero(); r];
    for g in &cone.generators {
        let wg = weight.eval(&g.iter().map(|&x| q(x)).collect::<Vec<_>>());
        for i in 0..r {
            reach[i] += q(bound as i64) * q(g[i].abs()) / &wg;
        }
    }
    // work in y = D x with D a common denominator of offset and 1/d
    let mut den = BigInt::from(d);
    for o in offset {
        den = den.lcm(o.denom());
    }
    let den = den.to_i64().expect("denominator fits in i64");
    let step = den / d;
    let base: Vec<i64> = offset.iter().map(|o| (o * q(den)).to_integer().to_i64().expect("offset fits")).collect();
    let normals = fans::dual_cone(cone).generators;
    let wsum: Vec<i64> = weight.coeffs.iter().map(|c| c * weight.scale).collect();
    let lo: Vec<i64> = reach.iter().map(|x| (-x * q(d)).floor().to_integer().to_i64().unwrap() - 1).collect();
    let hi: Vec<i64> = reach.iter().map(|x| (x * q(d)).ceil().to_integer().to_i64().unwrap() + 1).collect();
    let limit = bound as i64 * den;
    let mut out = Vec::new();
    let mut cur = lo.clone();
    let mut y = vec![0i64; r];
    loop {
        for i in 0..r {
            y[i] = base[i] + step * cur[i];
        }
        if normals.iter().all(|nv| nv.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() >= 0) {
            let w: i64 = wsum.iter().zip(&y).map(|(a, b)| a * b).sum();
            if w >= 0 && w <= limit && w % den == 0 {
                let x: QVector = y.iter().map(|&v| BigRational::new(v.into(), den.into())).collect();
                out.push((x, (w / den) as usize));
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// `Γ_{Λ,H}` for an affine stacky chart.
#[derive(Clone, Debug)]
pub struct GammaCategory {
    pub group: FiniteAbelianGroup,
    pub monoid: AffineMonoid,
    pub quotient: LatticeQuotient,
}

impl GammaCategory {
    pub fn projection(&self, m: &[BigRational]) -> Character {
        self.quotient.classify(m).expect("monoid element outside the character lattice")
    }

    pub fn objects(&self) -> Vec<Character> {
        self.group.elements()
    }
}

/// Monoid `σ^∨ ∩ M_{σ,β}` of a full-dimensional cone, with the quotient
/// `M_{σ,β} / M`.
pub fn chart_monoid(sf: &StackyFan, sigma: &Cone) -> Result<(AffineMonoid, LatticeQuotient), CohError> {
    let r = sf.fan.ambient_rank;
    if !sigma.is_full_dimensional() {
        return Err(CohError::Unsupported(format!("{sigma} is not full dimensional")));
    }
    let lattice = sf
        .character_lattice(sigma)
        .ok_or_else(|| CohError::Unsupported(format!("{sigma} has no preimage in the stacky fan")))?;
    let quotient = zlin::character_quotient(&lattice, &QMatrix::identity(r))?;
    Ok((AffineMonoid::new(fans::dual_cone(sigma), lattice)?, quotient))
}

pub fn gamma_category(sf: &StackyFan) -> Result<GammaCategory, CohError> {
    let maxes = sf.fan.maximal_cones();
    let [sigma] = maxes.as_slice() else {
        return Err(CohError::Unsupported(format!("expected one maximal cone, found {}", maxes.len())));
    };
    if !fans::validate_stacky(sf) {
        return Err(CohError::Unsupported("stacky fan does not validate".into()));
    }
    let (monoid, quotient) = chart_monoid(sf, sigma)?;
    Ok(GammaCategory { group: quotient.group.clone(), monoid, quotient })
}

/// Degree-wise size of `π^{-1}(χ' - χ)`.
pub fn hom_graded(g: &GammaCategory, chi: &Character, chi2: &Character, bound: usize) -> Result<GradedDims, CohError> {
    let target = g.group.sub(chi2, chi);
    let weight = g.monoid.default_weight();
    let mut out = GradedDims::zero(bound, weight.clone());
    for (m, w) in g.monoid.elements(&weight, bound)? {
        if g.projection(&m) == target {
            out.dims[w] += 1;
        }
    }
    Ok(out)
}

/// Number of paths `i -> j` of each length in the cyclic quiver
/// `0 -> 1 -> ... -> n-1 -> 0`, by dynamic programming over walks.
pub fn cyclic_quiver_paths(n: usize, i: usize, j: usize, bound: usize) -> Vec<u64> {
    assert!(i < n && j < n, "vertex out of range");
    let mut at = vec![0u64; n];
    at[i] = 1;
    let mut out = Vec::with_capacity(bound + 1);
    for _ in 0..=bound {
        out.push(at[j]);
        let mut next = vec![0u64; n];
        for v in 0..n {
            next[(v + 1) % n] += at[v];
        }
        at = next;
    }
    out
}

/// `χ`-isotypic part of `k[monoid]`: elements whose class in the
/// character group is `χ`.
pub fn isotypic_component(
    monoid: &AffineMonoid,
    quotient: &LatticeQuotient,
    chi: &Character,
    bound: usize,
) -> Result<GradedDims, CohError> {
    let weight = monoid.default_weight();
    let mut out = GradedDims::zero(bound, weight.clone());
    for (m, w) in monoid.elements(&weight, bound)? {
        if quotient.classify(&m).as_ref() == Some(chi) {
            out.dims[w] += 1;
        }
    }
    Ok(out)
}

/// Stalk dimensions of the costandard sheaf at a torsion point: points of
/// `(χ + Z^r)` in the closed cone, graded by `weight`. Points whose weight
/// is not an integer make the character incompatible.
pub fn costandard_stalk(cone: &Cone, chi: &[BigRational], weight: &Weight, bound: usize) -> Result<GradedDims, CohError> {
    let reduced: QVector = chi.iter().map(|x| x - x.floor()).collect();
    let pts = coset_points(cone, &reduced, 1, weight, bound)?;
    let w0 = weight.eval(&reduced);
    if !w0.is_integer() {
        return Err(CohError::Incompatible(chi.iter().map(|x| x.to_string()).collect()));
    }
    let mut out = GradedDims::zero(bound, weight.clone());
    for (_, w) in pts {
        out.dims[w] += 1;
    }
    Ok(out)
}

/// The quotient cone `σ^∨ / σ^⊥` written in the dual of `N_σ = span σ ∩ N`,
/// together with the basis of `N_σ` used for coordinates.
pub fn quotient_dual_cone(sigma: &Cone) -> (Cone, Vec<IVec>) {
    let basis = fans::saturated_span(&sigma.generators, sigma.ambient_rank);
    let k = basis.len();
    if k == 0 {
        return (Cone::zero(0), basis);
    }
    let b = QMatrix::from_columns(&basis.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>(), sigma.ambient_rank);
    // coordinates of the generators in the basis: solve via normal equations
    let bt = b.transpose();
    let gram_inv = bt.mul(&b).inverse().expect("independent basis");
    let coords: Vec<IVec> = sigma
        .generators
        .iter()
        .map(|g| {
            let y = gram_inv.mul_vec(&bt.mul_vec(&g.iter().map(|&x| q(x)).collect::<Vec<_>>()));
            linalg::as_integers(&y).expect("generator in saturated span").iter().map(|x| x.to_i64().unwrap()).collect()
        })
        .collect();
    let local = Cone::from_generators_unchecked(k, &coords).expect("arity");
    (fans::dual_cone(&local), basis)
}

/// Restricts a character of `M` to `N_σ`: coordinates `<χ, b_j>`.
pub fn restrict_character(chi: &[BigRational], basis: &[IVec]) -> QVector {
    basis.iter().map(|b| linalg::dot(chi, &b.iter().map(|&x| q(x)).collect::<Vec<_>>())).collect()
}

/// Both sides of the κ comparison on a cone of an identity stacky fan:
/// the monoid `σ^∨/σ^⊥ ∩ M` and its (trivial) character quotient.
pub fn quotient_monoid(sigma: &Cone) -> Result<(AffineMonoid, LatticeQuotient), CohError> {
    let (dual, _) = quotient_dual_cone(sigma);
    let k = dual.ambient_rank;
    let quotient = zlin::character_quotient(&QMatrix::identity(k), &QMatrix::identity(k))?;
    Ok((AffineMonoid::integral(dual), quotient))
}

/// `dim H^i(P^n, O(d))` for `i = 0..=n` by the Čech complex of the cover by
/// maximal cones, summed over characters in `[-box_bound, box_bound]^n`.
pub fn pn_line_bundle_cohomology(n: usize, d: i64, box_bound: i64) -> Result<Vec<u64>, CohError> {
    if box_bound < d.abs() {
        return Err(CohError::Truncated { bound: box_bound, twist: d });
    }
    let fan = fans::standard_fan(StandardFan::Pn(n));
    let nerve = fans::cech_nerve(&fan);
    let anti = vec![-1i64; n];
    let support = |rays: &[IVec], m: &[i64]| {
        rays.iter().all(|rho| {
            let a = if *rho == anti { d } else { 0 };
            rho.iter().zip(m).map(|(x, y)| x * y).sum::<i64>() >= -a
        })
    };
    let by_size: Vec<Vec<usize>> = (1..=n + 1)
        .map(|k| (0..nerve.simplices.len()).filter(|&i| nerve.simplices[i].0.len() == k).collect())
        .collect();
    let mut h = vec![0u64; n + 1];
    let side = (2 * box_bound + 1) as usize;
    let total = side.pow(n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let m: Vec<i64> = (0..n)
            .map(|_| {
                let c = (rest % side) as i64 - box_bound;
                rest /= side;
                c
            })
            .collect();
        let active: Vec<Vec<usize>> = by_size
            .iter()
            .map(|ids| ids.iter().copied().filter(|&i| support(&nerve.simplices[i].1.generators, &m)).collect())
            .collect();
        if active.iter().all(|a| a.is_empty()) {
            continue;
        }
        // ranks of the coboundaries C^p -> C^{p+1}
        let mut ranks = vec![0usize; n + 2];
        for p in 0..n {
            let rows: Vec<Vec<BigInt>> = active[p + 1]
                .iter()
                .map(|&t| {
                    let ts = &nerve.simplices[t].0;
                    active[p]
                        .iter()
                        .map(|&s| {
                            let ss = &nerve.simplices[s].0;
                            if ss.iter().all(|x| ts.contains(x)) {
                                let missing = ts.iter().position(|x| !ss.contains(x)).unwrap();
                                BigInt::from(if missing % 2 == 0 { 1 } else { -1 })
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            ranks[p + 1] = linalg::integer_rank(&rows);
        }
        for p in 0..=n {
            let dim = active[p].len();
            h[p] += (dim - ranks[p + 1] - ranks[p]) as u64;
        }
    }
    Ok(h)
}

/// `χ(O(a), O(b)) = Σ (-1)^i dim H^i(O(b - a))`.
pub fn euler_pairing_coherent(n: usize, a: i64, b: i64) -> Result<BigInt, CohError> {
    let h = pn_line_bundle_cohomology(n, b - a, (b - a).abs())?;
    Ok(h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { BigInt::from(x) } else { -BigInt::from(x) }).sum())
}
