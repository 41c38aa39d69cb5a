//! Rational polyhedral cones, fans, stacky fans and the Čech nerve of a
//! fan's maximal cones.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, QMatrix, QVector};
use crate::zlin::{self, IntMatrix};

pub type IVec = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("generator {0:?} has length {1}, expected {2}")]
    Arity(IVec, usize, usize),
    #[error("cone {0} contains a line")]
    NotStrictlyConvex(String),
    #[error("cones {0} and {1} meet in {2}, which is not a face of both")]
    Overlap(String, String, String),
    #[error("beta has shape {0}x{1}, expected a map from Z^{2}")]
    BetaShape(usize, usize, usize),
    #[error("invalid fan json: {0}")]
    Json(String),
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_q(v: &[i64]) -> QVector {
    v.iter().map(|&x| linalg::q(x)).collect()
}

fn from_big(v: &[BigInt]) -> IVec {
    v.iter().map(|x| x.to_i64().expect("coordinate exceeds i64")).collect()
}

fn primitive_i64(v: &[i64]) -> IVec {
    from_big(&zlin::primitive(&to_big(v)))
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of a list of integer vectors.
pub fn vector_rank(vs: &[IVec]) -> usize {
    linalg::integer_rank(&vs.iter().map(|v| to_big(v)).collect::<Vec<_>>())
}

/// A rational polyhedral cone given by primitive generators.
///
/// Cones built by [`Cone::new`] are strictly convex and keep only their
/// extreme rays. [`Cone::from_generators_unchecked`] allows cones with
/// lineality, which is what duals of lower-dimensional cones look like.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone {
    pub ambient_rank: usize,
    pub generators: Vec<IVec>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "cone[{}]", gens.join(" "))
    }
}

impl Cone {
    pub fn zero(ambient_rank: usize) -> Self {
        Cone { ambient_rank, generators: vec![] }
    }

    /// Strictly convex cone spanned by `gens`, reduced to its extreme rays.
    pub fn new(ambient_rank: usize, gens: &[IVec]) -> Result<Self, FanError> {
        let raw = Self::from_generators_unchecked(ambient_rank, gens)?;
        if !raw.is_strictly_convex() {
            return Err(FanError::NotStrictlyConvex(raw.to_string()));
        }
        Ok(raw.canonical())
    }

    /// Primitive, sorted, deduplicated generators with no convexity check.
    pub fn from_generators_unchecked(ambient_rank: usize, gens: &[IVec]) -> Result<Self, FanError> {
        let mut set = BTreeSet::new();
        for g in gens {
            if g.len() != ambient_rank {
                return Err(FanError::Arity(g.clone(), g.len(), ambient_rank));
            }
            if g.iter().all(|&x| x == 0) {
                continue;
            }
            set.insert(primitive_i64(g));
        }
        Ok(Cone { ambient_rank, generators: set.into_iter().collect() })
    }

    pub fn orthant(ambient_rank: usize, k: usize) -> Self {
        let gens: Vec<IVec> = (0..k).map(|i| unit(ambient_rank, i)).collect();
        Cone::new(ambient_rank, &gens).expect("orthant")
    }

    pub fn dim(&self) -> usize {
        vector_rank(&self.generators)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_rank
    }

    /// Basis of the subspace `{v : v.g = 0 for all generators g}`.
    pub fn orthogonal_complement(&self) -> Vec<IVec> {
        let rows: Vec<QVector> = self.generators.iter().map(|g| to_q(g)).collect();
        linalg::rational_kernel(&rows, self.ambient_rank)
            .iter()
            .map(|v| from_big(&linalg::primitive_integer(v)))
            .collect()
    }

    /// Whether the cone contains no line.
    pub fn is_strictly_convex(&self) -> bool {
        // Contains a line iff some nonzero nonnegative combination of the
        // generators vanishes, iff the dual cone is not full dimensional.
        dual_cone(self).dim() == self.ambient_rank
    }

    /// Rays together with a basis of the lineality space, both halves of
    /// each line listed.
    pub fn canonical(&self) -> Cone {
        dual_cone(&dual_cone(self))
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        dual_cone(self).generators.iter().all(|d| idot(d, v) >= 0)
    }

    pub fn contains_q(&self, v: &[BigRational]) -> bool {
        dual_cone(self).generators.iter().all(|d| !linalg::dot(&to_q(d), v).is_negative())
    }

    /// Whether `v` lies in the relative interior.
    pub fn contains_in_interior(&self, v: &[BigRational]) -> bool {
        let dual = dual_cone(self);
        let lin: BTreeSet<IVec> = dual
            .generators
            .iter()
            .filter(|g| dual.generators.contains(&g.iter().map(|x| -x).collect::<IVec>()))
            .cloned()
            .collect();
        if lin.iter().any(|d| !linalg::dot(&to_q(d), v).is_zero()) {
            return false;
        }
        dual.generators
            .iter()
            .filter(|d| !lin.contains(*d))
            .all(|d| linalg::dot(&to_q(d), v).is_positive())
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        faces(other).contains(self)
    }

    /// Image under an integer matrix acting on column vectors.
    pub fn image(&self, m: &IntMatrix) -> Cone {
        let gens: Vec<IVec> = self.generators.iter().map(|g| from_big(&m.mul_vec(&to_big(g)))).collect();
        Cone::from_generators_unchecked(m.rows(), &gens).expect("image arity").canonical()
    }
}

pub fn unit(n: usize, i: usize) -> IVec {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `{y : y.x >= 0 for all x in c}` in the dual lattice.
pub fn dual_cone(c: &Cone) -> Cone {
    let n = c.ambient_rank;
    let g: Vec<QVector> = c.generators.iter().map(|x| to_q(x)).collect();
    let lineality = linalg::rational_kernel(&g, n);
    let lin_rows: Vec<QVector> = lineality.clone();
    let r = n - lineality.len();
    let mut gens: Vec<IVec> = Vec::new();
    for v in &lineality {
        let p = from_big(&linalg::primitive_integer(v));
        gens.push(p.iter().map(|x| -x).collect());
        gens.push(p);
    }
    if r > 0 {
        for subset in combinations(c.generators.len(), r - 1) {
            let mut rows: Vec<QVector> = subset.iter().map(|&i| g[i].clone()).collect();
            rows.extend(lin_rows.iter().cloned());
            if linalg::rational_rank(&rows) != n - 1 {
                continue;
            }
            let k = linalg::rational_kernel(&rows, n);
            debug_assert_eq!(k.len(), 1);
            let y = from_big(&linalg::primitive_integer(&k[0]));
            let signs: Vec<i64> = c.generators.iter().map(|x| idot(x, &y).signum()).collect();
            if signs.iter().all(|&s| s >= 0) {
                gens.push(y);
            } else if signs.iter().all(|&s| s <= 0) {
                gens.push(y.iter().map(|x| -x).collect());
            }
        }
    }
    Cone::from_generators_unchecked(n, &gens).expect("dual arity")
}

/// All `k`-subsets of `0..m`, lexicographic.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// Every face of `c`, including `{0}` (or the lineality space) and `c`
/// itself, ordered by dimension and then generators.
pub fn faces(c: &Cone) -> Vec<Cone> {
    let dual = dual_cone(c);
    let m = dual.generators.len();
    let mut set = BTreeSet::new();
    for mask in 0u64..(1u64 << m) {
        let mut y = vec![0i64; c.ambient_rank];
        for (j, d) in dual.generators.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (a, b) in y.iter_mut().zip(d) {
                    *a += b;
                }
            }
        }
        let gens: Vec<IVec> = c.generators.iter().filter(|g| idot(g, &y) == 0).cloned().collect();
        set.insert(Cone::from_generators_unchecked(c.ambient_rank, &gens).expect("face"));
    }
    let mut out: Vec<Cone> = set.into_iter().collect();
    out.sort_by_key(|f| (f.dim(), f.generators.clone()));
    out
}

/// Whether the generators extend to a basis of the ambient lattice.
pub fn is_smooth_cone(c: &Cone) -> bool {
    if c.generators.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows_with_cols(&c.generators.iter().map(|g| to_big(g)).collect::<Vec<_>>(), c.ambient_rank);
    let snf = zlin::smith_normal_form(&m);
    snf.rank() == c.generators.len() && snf.invariants().iter().all(|d| d == &BigInt::from(1))
}

pub fn intersect(a: &Cone, b: &Cone) -> Cone {
    let da = dual_cone(a);
    let db = dual_cone(b);
    let mut gens = da.generators.clone();
    gens.extend(db.generators.iter().cloned());
    dual_cone(&Cone::from_generators_unchecked(a.ambient_rank, &gens).expect("arity"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub ambient_rank: usize,
    /// All cones, sorted by dimension then generators.
    pub cones: Vec<Cone>,
}

impl Fan {
    pub fn maximal_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && c.is_face_of(d)))
            .cloned()
            .collect()
    }

    pub fn rays(&self) -> Vec<IVec> {
        self.cones.iter().filter(|c| c.dim() == 1).map(|c| c.generators[0].clone()).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(is_smooth_cone)
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }
}

pub fn fan_from_max_cones(ambient_rank: usize, maximal: &[Cone]) -> Result<Fan, FanError> {
    for c in maximal {
        if c.ambient_rank != ambient_rank {
            return Err(FanError::Arity(vec![], c.ambient_rank, ambient_rank));
        }
        if !c.is_strictly_convex() {
            return Err(FanError::NotStrictlyConvex(c.to_string()));
        }
    }
    let maximal: Vec<Cone> = maximal.iter().map(|c| c.canonical()).collect();
    for (i, a) in maximal.iter().enumerate() {
        for b in &maximal[i + 1..] {
            let m = intersect(a, b);
            if !m.is_face_of(a) || !m.is_face_of(b) {
                return Err(FanError::Overlap(a.to_string(), b.to_string(), m.to_string()));
            }
        }
    }
    let mut set = BTreeSet::new();
    set.insert(Cone::zero(ambient_rank));
    for c in &maximal {
        set.extend(faces(c));
    }
    let mut cones: Vec<Cone> = set.into_iter().collect();
    cones.sort_by_key(|f| (f.dim(), f.generators.clone()));
    Ok(Fan { ambient_rank, cones })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardFan {
    Pn(usize),
    /// Faces of `cone(e_1..e_k)` in `Z^n`.
    AkGm(usize, usize),
    Point,
}

pub fn standard_fan(kind: StandardFan) -> Fan {
    match kind {
        StandardFan::Pn(n) => fan_from_max_cones(n, &pn_max_cones(n)).expect("P^n fan"),
        StandardFan::AkGm(k, n) => fan_from_max_cones(n, &[Cone::orthant(n, k)]).expect("orthant fan"),
        StandardFan::Point => fan_from_max_cones(0, &[]).expect("point"),
    }
}

/// Rays `e_1..e_n, -e_1-..-e_n`; the maximal cones omit one ray each,
/// ordered by the omitted ray.
pub fn pn_rays(n: usize) -> Vec<IVec> {
    let mut rays: Vec<IVec> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-1; n]);
    rays
}

pub fn pn_max_cones(n: usize) -> Vec<Cone> {
    let rays = pn_rays(n);
    (0..=n)
        .map(|skip| {
            let gens: Vec<IVec> = rays.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, r)| r.clone()).collect();
            Cone::new(n, &gens).expect("P^n cone")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechNerve {
    pub vertices: Vec<Cone>,
    /// Nonempty subsets of vertex indices with their intersection cone.
    pub simplices: Vec<(Vec<usize>, Cone)>,
}

impl CechNerve {
    /// Number of simplices with `k + 1` vertices, for `k = 0, 1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
        (1..=top).map(|k| self.simplices.iter().filter(|(s, _)| s.len() == k).count()).collect()
    }
}

pub fn cech_nerve(f: &Fan) -> CechNerve {
    let vertices = f.maximal_cones();
    let mut simplices = Vec::new();
    for k in 1..=vertices.len() {
        for s in combinations(vertices.len(), k) {
            let mut c = vertices[s[0]].clone();
            for &i in &s[1..] {
                c = intersect(&c, &vertices[i]);
            }
            simplices.push((s, c));
        }
    }
    CechNerve { vertices, simplices }
}

/// A fan `fan_hat` in `Z^l`, a map `beta: Z^l -> Z^r` given by an `r x l`
/// matrix, and the image fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    pub beta: IntMatrix,
    pub fan_hat: Fan,
    pub fan: Fan,
}

impl StackyFan {
    pub fn new(fan_hat: Fan, beta: IntMatrix) -> Result<Self, FanError> {
        if beta.cols() != fan_hat.ambient_rank {
            return Err(FanError::BetaShape(beta.rows(), beta.cols(), fan_hat.ambient_rank));
        }
        let image: Vec<Cone> = fan_hat.maximal_cones().iter().map(|c| c.image(&beta)).collect();
        let mut set = BTreeSet::new();
        set.insert(Cone::zero(beta.rows()));
        for c in &image {
            if c.is_strictly_convex() {
                set.extend(faces(c));
            } else {
                set.insert(c.clone());
            }
        }
        let mut cones: Vec<Cone> = set.into_iter().collect();
        cones.sort_by_key(|f| (f.dim(), f.generators.clone()));
        Ok(StackyFan { fan: Fan { ambient_rank: beta.rows(), cones }, beta, fan_hat })
    }

    pub fn identity(fan: Fan) -> Self {
        let n = fan.ambient_rank;
        StackyFan { beta: IntMatrix::identity(n), fan_hat: fan.clone(), fan }
    }

    pub fn is_identity(&self) -> bool {
        self.beta.rows() == self.beta.cols() && self.beta == IntMatrix::identity(self.beta.rows())
    }

    /// Cone of `fan_hat` mapping onto `sigma`, if any.
    pub fn preimage(&self, sigma: &Cone) -> Option<Cone> {
        self.fan_hat.cones.iter().find(|c| &c.image(&self.beta) == sigma).cloned()
    }

    /// Basis (columns, rational coordinates in `M`) of `M_{sigma,beta}`,
    /// the lattice dual to the image under beta of the saturated lattice
    /// spanned by the preimage cone. Only defined for full-dimensional
    /// `sigma`.
    pub fn character_lattice(&self, sigma: &Cone) -> Option<QMatrix> {
        if !sigma.is_full_dimensional() {
            return None;
        }
        let hat = self.preimage(sigma)?;
        let basis = saturated_span(&hat.generators, self.fan_hat.ambient_rank);
        let images: Vec<QVector> =
            basis.iter().map(|b| self.beta.mul_vec(&to_big(b)).into_iter().map(BigRational::from_integer).collect()).collect();
        let r = self.beta.rows();
        if images.len() != r {
            return None;
        }
        let b = QMatrix::from_columns(&images, r);
        b.transpose().inverse()
    }
}

/// Integer basis of `span(vs) ∩ Z^n`.
pub fn saturated_span(vs: &[IVec], n: usize) -> Vec<IVec> {
    if vs.is_empty() {
        return vec![];
    }
    let a = IntMatrix::from_rows_with_cols(&vs.iter().map(|v| to_big(v)).collect::<Vec<_>>(), n);
    // span(vs) ∩ Z^n = ker(ker(a)^T) where ker(a) is the integer kernel
    let k = zlin::integer_kernel(&a);
    if k.cols() == 0 {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let kt = k.transpose();
    let s = zlin::integer_kernel(&kt);
    (0..s.cols()).map(|j| from_big(&s.column(j))).collect()
}

pub fn validate_stacky(sf: &StackyFan) -> bool {
    if zlin::cokernel(&sf.beta).free_rank != 0 {
        return false;
    }
    let mut images = BTreeSet::new();
    for c in &sf.fan_hat.cones {
        let img = c.image(&sf.beta);
        if img.dim() != c.dim() || img.generators.len() != c.generators.len() {
            return false;
        }
        if !sf.fan.cones.contains(&img) || !images.insert(img) {
            return false;
        }
    }
    images.len() == sf.fan.cones.len()
}

/// `{"rank": n, "max_cones": [[[..]..]..], "beta": [[..]..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rank: usize,
    pub max_cones: Vec<Vec<IVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<IVec>>,
}

impl FanJson {
    pub fn parse(text: &str) -> Result<Self, FanError> {
        serde_json::from_str(text)
            .map_err(|e| FanError::Json(e.to_string()))
    }

    pub fn from_stacky(sf: &StackyFan) -> Self {
        FanJson {
            rank: sf.fan_hat.ambient_rank,
            max_cones: sf.fan_hat.maximal_cones().into_iter().map(|c| c.generators).collect(),
            beta: (!sf.is_identity()).then(|| {
                sf.beta.to_rows().iter().map(|r| from_big(r)).collect()
            }),
        }
    }

    pub fn to_stacky(&self) -> Result<StackyFan, FanError> {
        let cones = self
            .max_cones
            .iter()
            .map(|gens| {
                let c = Cone::from_generators_unchecked(self.rank, gens)?;
                if !c.is_strictly_convex() {
                    return Err(FanError::NotStrictlyConvex(c.to_string()));
                }
                Ok(c)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fan_hat = fan_from_max_cones(self.rank, &cones)?;
        match &self.beta {
            None => Ok(StackyFan::identity(fan_hat)),
            Some(rows) => {
                if rows.iter().any(|r| r.len() != self.rank) {
                    return Err(FanError::BetaShape(rows.len(), rows.first().map_or(0, |r| r.len()), self.rank));
                }
                StackyFan::new(fan_hat, IntMatrix::from_rows_with_cols(rows, self.rank))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(n: usize, gens: &[&[i64]]) -> Cone {
        Cone::new(n, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let d = dual_cone(&cone(2, &[&[1, 0]]));
        assert_eq!(d.generators, vec![vec![0, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(dual_cone(&cone(2, &[&[1, 0], &[0, 1]])).generators, vec![vec![0, 1], vec![1, 0]]);
        let d = dual_cone(&cone(2, &[&[1, 0], &[1, 2]]));
        assert_eq!(d.generators, vec![vec![0, 1], vec![2, -1]]);
        assert!(!d.is_full_dimensional() || d.is_strictly_convex());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(2, &[&[1, 0], &[1, 1], &[0, 1], &[2, 2]]);
        assert_eq!(c.generators, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn face_counts() {
        assert_eq!(faces(&Cone::orthant(2, 2)).len(), 4);
        assert_eq!(faces(&Cone::zero(2)).len(), 1);
        assert_eq!(faces(&Cone::orthant(3, 3)).len(), 8);
        assert_eq!(faces(&Cone::orthant(3, 1)).len(), 2);
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth_cone(&Cone::orthant(2, 2)));
        assert!(!is_smooth_cone(&cone(2, &[&[0, 1], &[2, -1]])));
        assert!(is_smooth_cone(&Cone::zero(3)));
    }

    #[test]
    fn standard_fans() {
        assert_eq!(standard_fan(StandardFan::Pn(1)).cones.len(), 3);
        assert_eq!(standard_fan(StandardFan::Pn(2)).cones.len(), 7);
        assert_eq!(standard_fan(StandardFan::AkGm(2, 3)).cones.len(), 4);
        assert_eq!(standard_fan(StandardFan::Point).cones, vec![Cone::zero(0)]);
        assert_eq!(fan_from_max_cones(2, &[]).unwrap().cones.len(), 1);
    }

    #[test]
    fn overlapping_cones_rejected() {
        let a = cone(2, &[&[1, 0], &[0, 1]]);
        let b = cone(2, &[&[1, 1], &[-1, 1]]);
        assert!(matches!(fan_from_max_cones(2, &[a, b]), Err(FanError::Overlap(..))));
    }

    #[test]
    fn nerve_of_p2() {
        let nerve = cech_nerve(&standard_fan(StandardFan::Pn(2)));
        assert_eq!(nerve.f_vector(), vec![3, 3, 1]);
        let top = &nerve.simplices.last().unwrap().1;
        assert_eq!(top, &Cone::zero(2));
        for (s, c) in &nerve.simplices {
            assert_eq!(c.dim(), 2 + 1 - s.len());
        }
    }

    #[test]
    fn stacky_validation() {
        let line = fan_from_max_cones(1, &[Cone::orthant(1, 1)]).unwrap();
        let sf = StackyFan::new(line.clone(), IntMatrix::from_rows(&[vec![3]])).unwrap();
        assert!(validate_stacky(&sf));
        assert!(validate_stacky(&StackyFan::identity(standard_fan(StandardFan::Pn(2)))));
        let sq = standard_fan(StandardFan::AkGm(2, 2));
        let bad = StackyFan::new(sq, IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]])).unwrap();
        assert!(!validate_stacky(&bad));
        let m = sf.character_lattice(&Cone::orthant(1, 1)).unwrap();
        assert_eq!(m[(0, 0)], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"rank":1,"max_cones":[[[1]]],"beta":[[4]]}"#;
        let parsed = FanJson::parse(text).unwrap();
        let sf = parsed.to_stacky().unwrap();
        assert_eq!(FanJson::from_stacky(&sf), parsed);
        assert!(FanJson::parse("{\n\"rank\": }").unwrap_err().to_string().contains("line 2"));
    }
}
