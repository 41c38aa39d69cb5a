//! Combinatorics of FLTZ skeleta: components `(-τ) × (τ^⊥ + χ)`, affine
//! strata posets, and the chambers of the perturbed skeleton of `P^n`.
//!
//! Chambers live on the torus `R^n / Z^n`. In the universal cover the walls
//! are `x_i ∈ ε + Z` and `Σx ∈ Z`; a cell is `(k, s)` with
//! `x_i ∈ (ε + k_i, ε + k_i + 1)` and `Σx ∈ (s, s + 1)`. Its class
//! `s - Σk` is the step of the torus chamber it covers. Chambers on the
//! fundamental domain `[0,1)^n` are the cells with `k ∈ {-1, 0}^n` cut by
//! the cube.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fans::{self, Cone, FanError, IVec, StackyFan};
use crate::linalg::{q, QVector};
use crate::picsym::{self, Ikari, PicMonomial};
use crate::polyhedra::{feasible, Constraint, Relation};
use crate::zlin::{self, IntMatrix, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("monodromy transport is inconsistent at chamber {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flag {
    /// `x_i < ε`
    S,
    /// `x_i > ε`
    L,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chamber {
    pub flags: Vec<Flag>,
    pub slant: usize,
}

impl Chamber {
    pub fn n(&self) -> usize {
        self.flags.len()
    }

    pub fn step(&self) -> usize {
        self.flags.iter().filter(|f| **f == Flag::S).count() + self.slant
    }

    pub fn flag_string(&self) -> String {
        self.flags.iter().map(|f| if *f == Flag::S { 'S' } else { 'L' }).collect()
    }

    pub fn parse(flags: &str, slant: usize) -> Option<Chamber> {
        let flags = flags
            .chars()
            .map(|c| match c {
                'S' => Some(Flag::S),
                'L' => Some(Flag::L),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Chamber { flags, slant })
    }

    pub fn center(n: usize) -> Chamber {
        Chamber { flags: vec![Flag::L; n], slant: 0 }
    }

    pub fn cell(&self) -> Cell {
        Cell { k: self.flags.iter().map(|f| if *f == Flag::S { -1 } else { 0 }).collect(), s: self.slant as i64 }
    }

    pub fn small_set(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.flags[i] == Flag::S).collect()
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.flag_string(), self.slant)
    }
}

/// A cell of the wall arrangement in the universal cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub k: Vec<i64>,
    pub s: i64,
}

/// A wall crossing that lowers the class by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    /// `k_i -> k_i + 1` across `x_i = ε + k_i + 1`
    Raise(usize),
    /// `s -> s - 1` across `Σx = s`
    Slide,
}

impl Cell {
    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn class(&self) -> i64 {
        self.s - self.k.iter().sum::<i64>()
    }

    /// Reference lift of class `c`: the chamber `(L^{n-c} S^c, 0)`.
    pub fn base(n: usize, c: usize) -> Cell {
        Cell { k: (0..n).map(|i| if i + c >= n { -1 } else { 0 }).collect(), s: 0 }
    }

    /// Deck translation carrying the base lift of this class onto `self`.
    pub fn translation(&self) -> Vec<i64> {
        let c = self.class();
        assert!(c >= 0 && c as usize <= self.n(), "cell class out of range");
        let b = Cell::base(self.n(), c as usize);
        self.k.iter().zip(&b.k).map(|(x, y)| x - y).collect()
    }

    pub fn translate(&self, t: &[i64]) -> Cell {
        Cell { k: self.k.iter().zip(t).map(|(x, y)| x + y).collect(), s: self.s + t.iter().sum::<i64>() }
    }

    pub fn apply(&self, m: Move) -> Cell {
        let mut c = self.clone();
        match m {
            Move::Raise(i) => c.k[i] += 1,
            Move::Slide => c.s -= 1,
        }
        c
    }

    fn constraints(&self, eps: &BigRational) -> Vec<Constraint> {
        let n = self.n();
        let mut cs = Vec::new();
        for i in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            cs.push(Constraint::new(e.clone(), Relation::Gt, eps + q(self.k[i])));
            cs.push(Constraint::lt(e, eps + q(self.k[i] + 1)));
        }
        let ones = vec![BigRational::one(); n];
        cs.push(Constraint::new(ones.clone(), Relation::Gt, q(self.s)));
        cs.push(Constraint::lt(ones, q(self.s + 1)));
        cs
    }

    /// The facet crossed by `m`, as constraints.
    fn facet_constraints(&self, m: Move, eps: &BigRational) -> Vec<Constraint> {
        let mut cs = self.constraints(eps);
        let n = self.n();
        match m {
            Move::Raise(i) => {
                let mut e = vec![BigRational::zero(); n];
                e[i] = BigRational::one();
                cs[2 * i + 1] = Constraint::new(e, Relation::Eq, eps + q(self.k[i] + 1));
            }
            Move::Slide => {
                cs[2 * n] = Constraint::new(vec![BigRational::one(); n], Relation::Eq, q(self.s));
            }
        }
        cs
    }

    pub fn is_nonempty(&self, eps: &BigRational) -> bool {
        feasible(&self.constraints(eps), self.n())
    }

    /// Whether the cell meets the open unit cube.
    pub fn meets_cube(&self, eps: &BigRational) -> bool {
        let mut cs = self.constraints(eps);
        cs.extend(open_cube(self.n()));
        feasible(&cs, self.n())
    }

    /// Class-lowering neighbours in the cover, each across a nonempty facet.
    pub fn successors(&self, eps: &BigRational) -> Vec<(Move, Cell)> {
        let mut moves: Vec<Move> = (0..self.n()).map(Move::Raise).collect();
        moves.push(Move::Slide);
        moves
            .into_iter()
            .filter(|&m| feasible(&self.facet_constraints(m, eps), self.n()))
            .map(|m| (m, self.apply(m)))
            .collect()
    }
}

fn open_cube(n: usize) -> Vec<Constraint> {
    (0..n).flat_map(|i| crate::polyhedra::open_interval(n, i, q(0), q(1))).collect()
}

/// `1 / (2n + 2)`.
pub fn default_eps(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2 * n + 2))
}

/// `1 / (4n + 4)`, the second value used for the stability check.
pub fn alternate_eps(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4 * n + 4))
}

pub fn enumerate_chambers(n: usize) -> Vec<Chamber> {
    enumerate_chambers_with(n, &default_eps(n))
}

/// Every `(flags, slant)` whose region in the open cube is nonempty, by
/// exact feasibility. Sorted by step, then flags, then slant.
pub fn enumerate_chambers_with(n: usize, eps: &BigRational) -> Vec<Chamber> {
    assert!(n >= 1, "chambers need n >= 1");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let flags: Vec<Flag> = (0..n).map(|i| if mask >> i & 1 == 1 { Flag::S } else { Flag::L }).collect();
        for slant in 0..n {
            let c = Chamber { flags: flags.clone(), slant };
            if c.cell().meets_cube(eps) {
                out.push(c);
            }
        }
    }
    sort_chambers(&mut out);
    out
}

pub fn sort_chambers(cs: &mut [Chamber]) {
    cs.sort_by_key(|c| (c.step(), c.flag_string(), c.slant));
}

/// Closed formula: `1` for step 0, `C(n,k)+..+C(n,0)` for `1 <= k <= n-1`,
/// `C(n,n)+..+C(n,1)` for step `n`.
pub fn chamber_step_counts(n: usize) -> Vec<usize> {
    let b = |k: usize| picsym::binomial(n as i64, k as i64).to_usize().expect("count");
    (0..=n)
        .map(|k| {
            if k == 0 {
                1
            } else if k < n {
                (0..=k).map(b).sum()
            } else {
                (1..=n).map(b).sum()
            }
        })
        .collect()
}

pub fn step_histogram(n: usize, chambers: &[Chamber]) -> Vec<usize> {
    let mut h = vec![0; n + 1];
    for c in chambers {
        h[c.step()] += 1;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverVertex {
    pub chamber: Chamber,
    /// Which lift of the torus chamber this vertex shows.
    pub cell: Cell,
    /// Extra copy of a chamber drawn outside the fundamental domain.
    pub duplicate: bool,
}

impl QuiverVertex {
    pub fn class(&self) -> usize {
        self.cell.class() as usize
    }

    pub fn translation(&self) -> Vec<i64> {
        self.cell.translation()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverEdge {
    pub source: usize,
    pub target: usize,
    pub mv: Move,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberQuiver {
    pub n: usize,
    pub vertices: Vec<QuiverVertex>,
    /// Oriented from higher step to lower step.
    pub edges: Vec<QuiverEdge>,
    pub vertex_labels: Vec<PicMonomial>,
    pub edge_labels: Vec<Option<PicMonomial>>,
}

impl ChamberQuiver {
    pub fn index_of(&self, flags: &str, slant: usize) -> Option<usize> {
        let c = Chamber::parse(flags, slant)?;
        self.vertices.iter().position(|v| v.chamber == c && !v.duplicate)
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }

    /// Length of the longest directed path.
    pub fn longest_path(&self) -> usize {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.vertices[v].class()));
        let mut best = vec![0usize; self.vertices.len()];
        for &v in &order {
            for e in self.edges.iter().filter(|e| e.source == v) {
                best[e.target] = best[e.target].max(best[v] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// The chamber quiver with the lift `C + t` labelled `Π pic_i^{t_i}`.
///
/// `pic` holds the images of the basis loops of the torus; unit monomials
/// give the untwisted quiver. Edges are grouped into deck orbits, and each
/// edge is decorated by the translation of its source relative to a
/// reference edge of its orbit.
pub fn chamber_quiver(n: usize, pic: &[PicMonomial]) -> ChamberQuiver {
    assert_eq!(pic.len(), n, "one monomial per torus direction");
    let g = pic.first().map_or(0, |p| p.n());
    let eps = default_eps(n);
    let chambers = enumerate_chambers_with(n, &eps);
    let mut vertices: Vec<QuiverVertex> =
        chambers.iter().map(|c| QuiverVertex { chamber: c.clone(), cell: c.cell(), duplicate: false }).collect();
    let mut edges = Vec::new();
    let index: BTreeMap<Cell, usize> = vertices.iter().enumerate().map(|(i, v)| (v.cell.clone(), i)).collect();
    for (i, v) in vertices.clone().iter().enumerate() {
        for (m, target) in v.cell.successors(&eps) {
            if let Some(&j) = index.get(&target) {
                let mut cs = v.cell.facet_constraints(m, &eps);
                cs.extend(open_cube(n));
                if feasible(&cs, n) {
                    edges.push(QuiverEdge { source: i, target: j, mv: m });
                }
            } else if n == 1 && m == Move::Slide {
                // On the circle the wall Σx = 0 is the boundary point of the
                // fundamental domain, so the neighbour across it is a second
                // lift of the center.
                vertices.push(QuiverVertex { chamber: Chamber::center(1), cell: target, duplicate: true });
                edges.push(QuiverEdge { source: i, target: vertices.len() - 1, mv: m });
            }
        }
    }
    edges.sort_by_key(|e| (e.source, e.target));
    let vertex_labels: Vec<PicMonomial> =
        vertices.iter().map(|v| picsym::pic_power_product(pic, &v.translation(), g)).collect();
    let edge_labels = edge_decorations(&vertices, &edges, pic, g);
    ChamberQuiver { n, vertices, edges, vertex_labels, edge_labels }
}

fn edge_decorations(vertices: &[QuiverVertex], edges: &[QuiverEdge], pic: &[PicMonomial], g: usize) -> Vec<Option<PicMonomial>> {
    let mut orbits: BTreeMap<(usize, Move), Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        orbits.entry((vertices[e.source].class(), e.mv)).or_default().push(i);
    }
    let mut out = vec![None; edges.len()];
    for members in orbits.values() {
        let ts = |i: usize| vertices[edges[i].source].translation();
        let tt = |i: usize| vertices[edges[i].target].translation();
        let zero = |t: Vec<i64>| t.iter().all(|&x| x == 0);
        let reference = members
            .iter()
            .copied()
            .find(|&i| zero(ts(i)))
            .or_else(|| members.iter().copied().find(|&i| zero(tt(i))))
            .unwrap_or_else(|| *members.iter().min_by_key(|&&i| ts(i)).expect("nonempty orbit"));
        let r = ts(reference);
        for &i in members {
            let d: Vec<i64> = ts(i).iter().zip(&r).map(|(a, b)| a - b).collect();
            out[i] = Some(picsym::pic_power_product(pic, &d, g));
        }
    }
    out
}

/// Labels obtained by carrying the unit label of each reference chamber
/// across the faces of the fundamental domain, multiplying by `pic_i` when
/// a chamber continues through `x_i = 0`. Fails if two routes disagree.
pub fn transport_labels(n: usize, pic: &[PicMonomial]) -> Result<Vec<PicMonomial>, SkeletonError> {
    let g = pic.first().map_or(0, |p| p.n());
    let eps = default_eps(n);
    let chambers = enumerate_chambers_with(n, &eps);
    let pos: BTreeMap<Chamber, usize> = chambers.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    // gluings (from, to, direction): chamber `from` runs through x_i = 0
    // and continues as chamber `to` on the far side of the cube
    let mut glue: Vec<(usize, usize, usize)> = Vec::new();
    for (a, c) in chambers.iter().enumerate() {
        for i in c.small_set() {
            let mut flags = c.flags.clone();
            flags[i] = Flag::L;
            let other = Chamber { flags, slant: c.slant + 1 };
            let Some(&b) = pos.get(&other) else { continue };
            let mut cs = c.cell().constraints(&eps);
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            cs.push(Constraint::new(e, Relation::Eq, q(0)));
            for j in (0..n).filter(|&j| j != i) {
                cs.extend(crate::polyhedra::open_interval(n, j, q(0), q(1)));
            }
            if feasible(&cs, n) {
                glue.push((a, b, i));
            }
        }
    }
    let mut labels: Vec<Option<PicMonomial>> = vec![None; chambers.len()];
    for c in 0..=n {
        let base = Cell::base(n, c);
        let Some(start) = chambers.iter().position(|ch| ch.cell() == base) else { continue };
        labels[start] = Some(PicMonomial::unit(g));
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let lv = labels[v].clone().expect("visited");
            for &(a, b, i) in &glue {
                let (w, lw) = if a == v {
                    (b, picsym::pic_mul(&lv, &pic[i]).expect("arity"))
                } else if b == v {
                    (a, picsym::pic_mul(&lv, &picsym::pic_inv(&pic[i])).expect("arity"))
                } else {
                    continue;
                };
                match &labels[w] {
                    None => {
                        labels[w] = Some(lw);
                        queue.push_back(w);
                    }
                    Some(old) if *old != lw => return Err(SkeletonError::Inconsistent(chambers[w].to_string())),
                    Some(_) => {}
                }
            }
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| SkeletonError::Inconsistent(chambers[i].to_string())))
        .collect()
}

/// Ikari used for the twisted representation template: the coordinate ray
/// `e_n` goes to `O`, the ray `-Σe_i` to the last generator, and `e_i` to
/// the `i`-th generator otherwise. Returns the loop images.
pub fn template_monodromy(n: usize, pic: &[PicMonomial]) -> Vec<PicMonomial> {
    let g = pic.first().map_or(0, |p| p.n());
    let rays = fans::pn_rays(n);
    let beta_rows: Vec<Vec<i64>> = (0..n).map(|i| rays.iter().map(|r| r[i]).collect()).collect();
    let beta = IntMatrix::from_rows_with_cols(&beta_rows, n + 1);
    let mut bundles: Vec<PicMonomial> = (0..n).map(|i| if i + 1 < n { pic[i].clone() } else { PicMonomial::unit(g) }).collect();
    bundles.push(pic[n - 1].clone());
    let ikari = Ikari::from_bundles(&bundles, g);
    picsym::monodromy(&beta, &ikari).expect("shapes agree").loop_images()
}

/// The n = 1 quiver written as `left ← middle → right` with the labels of
/// the outer lifts expressed relative to the leftmost one.
pub fn render_circle_quiver(q: &ChamberQuiver, names: &[&str]) -> String {
    assert_eq!(q.n, 1);
    let center: Vec<usize> = (0..q.vertices.len()).filter(|&v| q.vertices[v].class() == 0).collect();
    let mut ordered = center.clone();
    ordered.sort_by_key(|&v| q.vertices[v].cell.k[0]);
    let left = ordered[0];
    let right = ordered[ordered.len() - 1];
    let rel = picsym::pic_mul(&q.vertex_labels[right], &picsym::pic_inv(&q.vertex_labels[left])).expect("arity");
    let right_label = if rel.is_unit() { "b".to_string() } else { format!("b⊗{}", rel.render(names)) };
    format!("b ← a → {right_label}")
}

/// A piece `(-τ) × (τ^⊥ + χ)` of the skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonComponent {
    /// `-τ`
    pub cone: Cone,
    /// representative in `[0,1)^n`
    pub character: Vec<String>,
    pub base_subspace: Vec<IVec>,
}

impl SkeletonComponent {
    pub fn character_q(&self) -> QVector {
        self.character.iter().map(|s| s.parse().expect("rational character")).collect()
    }
}

pub fn fltz_components(sf: &StackyFan) -> Result<Vec<SkeletonComponent>, SkeletonError> {
    let r = sf.fan.ambient_rank;
    let trivial = zlin::cokernel(&sf.beta).is_trivial();
    let mut out = Vec::new();
    for tau in &sf.fan.cones {
        let neg: Vec<IVec> = tau.generators.iter().map(|g| g.iter().map(|x| -x).collect()).collect();
        let cone = Cone::from_generators_unchecked(r, &neg)?;
        let perp = tau.orthogonal_complement();
        let chars: Vec<QVector> = if trivial || tau.generators.is_empty() {
            vec![vec![BigRational::zero(); r]]
        } else if tau.is_full_dimensional() {
            let m = sf
                .character_lattice(tau)
                .ok_or_else(|| SkeletonError::Unsupported(format!("no preimage cone for {tau}")))?;
            zlin::character_quotient(&m, &crate::linalg::QMatrix::identity(r))?.representatives
        } else {
            return Err(SkeletonError::Unsupported(format!(
                "torsion characters of the non-full-dimensional cone {tau}"
            )));
        };
        for chi in &chars {
            out.push(SkeletonComponent {
                cone: cone.clone(),
                character: chi.iter().map(|x| x.to_string()).collect(),
                base_subspace: perp.clone(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stratum {
    L,
    C,
    R,
}

/// `{l, c, r}^rays` with `c < l` and `c < r` in each factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineStrataPoset {
    pub rays: Vec<IVec>,
    pub strata: Vec<Vec<Stratum>>,
}

impl AffineStrataPoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.strata[a].iter().zip(&self.strata[b]).all(|(x, y)| x == y || *x == Stratum::C)
    }

    /// Collapse to `(• → •)^rays`: `c` goes to 0 (source), `l` and `r` to 1.
    pub fn collapse(&self, a: usize) -> Vec<u8> {
        self.strata[a].iter().map(|s| u8::from(*s != Stratum::C)).collect()
    }
}

/// Vertices `{0,1}^k` of `(• → •)^k` and its arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeQuiver {
    pub vertices: Vec<Vec<u8>>,
    pub arrows: Vec<(usize, usize)>,
}

pub fn strata_poset_affine(c: &Cone) -> Result<(AffineStrataPoset, CubeQuiver), SkeletonError> {
    if !fans::is_smooth_cone(c) {
        return Err(SkeletonError::Unsupported(format!("{c} is not smooth")));
    }
    let k = c.generators.len();
    let mut strata: Vec<Vec<Stratum>> = vec![vec![]];
    for _ in 0..k {
        strata = strata
            .into_iter()
            .flat_map(|s| {
                [Stratum::L, Stratum::C, Stratum::R].into_iter().map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    let vertices: Vec<Vec<u8>> = (0..1u32 << k).map(|m| (0..k).map(|i| (m >> i & 1) as u8).collect()).collect();
    let mut arrows = Vec::new();
    for (a, va) in vertices.iter().enumerate() {
        for i in 0..k {
            if va[i] == 0 {
                let mut w = va.clone();
                w[i] = 1;
                arrows.push((a, vertices.iter().position(|x| *x == w).expect("cube vertex")));
            }
        }
    }
    Ok((AffineStrataPoset { rays: c.generators.clone(), strata }, CubeQuiver { vertices, arrows }))
}

/// JSON chamber dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberDump {
    pub n: usize,
    pub chambers: Vec<ChamberEntry>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberEntry {
    pub flags: String,
    pub slant: usize,
    pub step: usize,
    pub label: String,
}

impl ChamberDump {
    pub fn from_quiver(q: &ChamberQuiver) -> Self {
        ChamberDump {
            n: q.n,
            chambers: q
                .vertices
                .iter()
                .zip(&q.vertex_labels)
                .map(|(v, l)| ChamberEntry {
                    flags: v.chamber.flag_string(),
                    slant: v.chamber.slant,
                    step: v.class(),
                    label: l.to_string(),
                })
                .collect(),
            edges: q.edges.iter().map(|e| [e.source, e.target]).collect(),
        }
    }
}

const SCALE: f64 = 400.0;
const PAD: f64 = 20.0;

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn svg_open(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
}

/// Point of the unit square in SVG coordinates (y axis up).
fn px(x: f64, y: f64) -> (f64, f64) {
    (PAD + x * SCALE, PAD + (1.0 - y) * SCALE)
}

/// Exact polygon of a chamber of `P^2` clipped to the closed square.
fn chamber_polygon(c: &Chamber, eps: &BigRational) -> Vec<(BigRational, BigRational)> {
    let cell = c.cell();
    let mut poly = vec![(q(0), q(0)), (q(1), q(0)), (q(1), q(1)), (q(0), q(1))];
    // half-planes a.x >= b
    let mut hs: Vec<([BigRational; 2], BigRational)> = Vec::new();
    for i in 0..2 {
        let mut a = [q(0), q(0)];
        a[i] = q(1);
        hs.push((a.clone(), eps + q(cell.k[i])));
        hs.push(([-a[0].clone(), -a[1].clone()], -(eps + q(cell.k[i] + 1))));
    }
    hs.push(([q(1), q(1)], q(cell.s)));
    hs.push(([q(-1), q(-1)], q(-cell.s - 1)));
    for (a, b) in hs {
        let val = |p: &(BigRational, BigRational)| &a[0] * &p.0 + &a[1] * &p.1 - &b;
        let mut next = Vec::new();
        for i in 0..poly.len() {
            let p = &poly[i];
            let qn = &poly[(i + 1) % poly.len()];
            let (vp, vq) = (val(p), val(qn));
            if vp >= BigRational::zero() {
                next.push(p.clone());
            }
            if (vp < BigRational::zero()) != (vq < BigRational::zero()) {
                let t = &vp / (&vp - &vq);
                next.push((&p.0 + &t * (&qn.0 - &p.0), &p.1 + &t * (&qn.1 - &p.1)));
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// SVG of the chamber decomposition for `n ∈ {1, 2}`, one labelled region
/// per vertex of the quiver that lies in the fundamental domain.
pub fn chambers_svg(q: &ChamberQuiver) -> Result<String, SkeletonError> {
    let n = q.n;
    if !(1..=2).contains(&n) {
        return Err(SkeletonError::Unsupported(format!("SVG output for n = {n}")));
    }
    let eps = default_eps(n);
    let mut out = String::new();
    if n == 2 {
        svg_open(&mut out, SCALE + 2.0 * PAD, SCALE + 2.0 * PAD);
        let (x0, y0) = px(0.0, 1.0);
        let _ = writeln!(out, r#"<rect x="{x0:.1}" y="{y0:.1}" width="{SCALE:.1}" height="{SCALE:.1}" fill="none" stroke="black"/>"#);
        let e = f(&eps);
        let walls = [((e, 0.0), (e, 1.0)), ((0.0, e), (1.0, e)), ((0.0, 1.0), (1.0, 0.0))];
        for ((ax, ay), (bx, by)) in walls {
            let (x1, y1) = px(ax, ay);
            let (x2, y2) = px(bx, by);
            let _ = writeln!(out, r#"<line class="wall" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="red"/>"#);
        }
        for (v, label) in q.vertices.iter().zip(&q.vertex_labels) {
            let poly = chamber_polygon(&v.chamber, &eps);
            let k = poly.len() as f64;
            let cx = poly.iter().map(|p| f(&p.0)).sum::<f64>() / k;
            let cy = poly.iter().map(|p| f(&p.1)).sum::<f64>() / k;
            let pts: Vec<String> = poly.iter().map(|p| {
                let (a, b) = px(f(&p.0), f(&p.1));
                format!("{a:.1},{b:.1}")
            }).collect();
            let _ = writeln!(out, r#"<polygon class="chamber" points="{}" fill="none"/>"#, pts.join(" "));
            let (tx, ty) = px(cx, cy);
            let _ = writeln!(
                out,
                r#"<text x="{tx:.1}" y="{ty:.1}" font-size="10" text-anchor="middle">{} {}</text>"#,
                v.chamber, label
            );
        }
    } else {
        svg_open(&mut out, SCALE + 2.0 * PAD, 2.0 * PAD + 60.0);
        let y = PAD + 30.0;
        let _ = writeln!(out, r#"<line x1="{PAD:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="black"/>"#, PAD + SCALE);
        let e = PAD + f(&eps) * SCALE;
        let _ = writeln!(out, r#"<line class="wall" x1="{e:.1}" y1="{:.1}" x2="{e:.1}" y2="{:.1}" stroke="red"/>"#, y - 10.0, y + 10.0);
        let _ = writeln!(out, r#"<line class="wall" x1="{PAD:.1}" y1="{:.1}" x2="{PAD:.1}" y2="{:.1}" stroke="red"/>"#, y - 10.0, y + 10.0);
        for (v, label) in q.vertices.iter().zip(&q.vertex_labels).filter(|(v, _)| !v.duplicate) {
            let lo = if v.chamber.flags[0] == Flag::S { 0.0 } else { f(&eps) };
            let hi = if v.chamber.flags[0] == Flag::S { f(&eps) } else { 1.0 };
            let _ = writeln!(
                out,
                r#"<text class="chamber" x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{} {}</text>"#,
                PAD + (lo + hi) / 2.0 * SCALE,
                y - 14.0,
                v.chamber,
                label
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// SVG of skeleton components for torus rank 1 (circle with hairs) or 2
/// (square with wrapped lines and hairs).
pub fn components_svg(rank: usize, comps: &[SkeletonComponent]) -> Result<String, SkeletonError> {
    let mut out = String::new();
    match rank {
        1 => {
            let (cx, cy, r) = (PAD + 150.0, PAD + 150.0, 100.0);
            svg_open(&mut out, 300.0 + 2.0 * PAD, 300.0 + 2.0 * PAD);
            let _ = writeln!(out, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{r:.1}" fill="none" stroke="black"/>"#);
            for c in comps.iter().filter(|c| !c.cone.generators.is_empty()) {
                let chi = f(&c.character_q()[0]);
                let ang = 2.0 * std::f64::consts::PI * chi;
                let (ux, uy) = (ang.cos(), -ang.sin());
                let dir = c.cone.generators[0][0] as f64;
                let (x1, y1) = (cx + r * ux, cy + r * uy);
                let (x2, y2) = (cx + (r + 30.0 * dir) * ux, cy + (r + 30.0 * dir) * uy);
                let _ = writeln!(out, r#"<circle class="character" cx="{x1:.1}" cy="{y1:.1}" r="3"/>"#);
                let _ = writeln!(out, r#"<line class="hair" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="blue"/>"#);
            }
        }
        2 => {
            svg_open(&mut out, SCALE + 2.0 * PAD, SCALE + 2.0 * PAD);
            let (x0, y0) = px(0.0, 1.0);
            let _ = writeln!(out, r#"<rect x="{x0:.1}" y="{y0:.1}" width="{SCALE:.1}" height="{SCALE:.1}" fill="none" stroke="black"/>"#);
            for c in comps {
                let chi: Vec<f64> = c.character_q().iter().map(f).collect();
                match c.cone.generators.len() {
                    1 => {
                        let rho = &c.cone.generators[0];
                        let d = (-(rho[1] as f64), rho[0] as f64);
                        for (a, b) in wrapped_segments(&chi, d) {
                            let (x1, y1) = px(a.0, a.1);
                            let (x2, y2) = px(b.0, b.1);
                            let _ = writeln!(out, r#"<line class="component" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black"/>"#);
                        }
                    }
                    k if k >= 2 => {
                        let (x, y) = px(chi[0], chi[1]);
                        let _ = writeln!(out, r#"<circle class="component" cx="{x:.1}" cy="{y:.1}" r="3"/>"#);
                        for g in &c.cone.generators {
                            let norm = ((g[0] * g[0] + g[1] * g[1]) as f64).sqrt();
                            let (x2, y2) = (x + 20.0 * g[0] as f64 / norm, y - 20.0 * g[1] as f64 / norm);
                            let _ = writeln!(out, r#"<line class="hair" x1="{x:.1}" y1="{y:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="blue"/>"#);
                        }
                    }
                    _ => {}
                }
            }
        }
        _ => return Err(SkeletonError::Unsupported(format!("SVG output for torus rank {rank}"))),
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The closed geodesic through `p` in direction `d` (a primitive integer
/// vector), cut into straight pieces inside the unit square.
fn wrapped_segments(p: &[f64], d: (f64, f64)) -> Vec<((f64, f64), (f64, f64))> {
    let steps = 400;
    let mut segs = Vec::new();
    let wrap = |x: f64| x - x.floor();
    let point = |t: f64| (wrap(p[0] + t * d.0), wrap(p[1] + t * d.1));
    let mut start = point(0.0);
    let mut prev = start;
    for i in 1..=steps {
        let cur = point(i as f64 / steps as f64);
        if (cur.0 - prev.0).abs() > 0.5 || (cur.1 - prev.1).abs() > 0.5 {
            segs.push((start, prev));
            start = cur;
        }
        prev = cur;
    }
    segs.push((start, prev));
    segs.retain(|(a, b)| (a.0 - b.0).abs() + (a.1 - b.1).abs() > 1e-9);
    segs
}

/// Chamber counts keyed by step for a set of chambers, as a map for
/// diagnostics.
pub fn chamber_set(chambers: &[Chamber]) -> BTreeSet<Chamber> {
    chambers.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fans::{standard_fan, StandardFan};

    #[test]
    fn counts_small() {
        assert_eq!(step_histogram(1, &enumerate_chambers(1)), vec![1, 1]);
        assert_eq!(step_histogram(2, &enumerate_chambers(2)), vec![1, 3, 3]);
        assert_eq!(chamber_step_counts(2), vec![1, 3, 3]);
        assert_eq!(chamber_step_counts(4)[2], 11);
        assert_eq!(chamber_step_counts(3).iter().sum::<usize>(), 19);
    }

    #[test]
    fn p2_quiver_shape() {
        let q = chamber_quiver(2, &[PicMonomial::unit(0), PicMonomial::unit(0)]);
        assert_eq!(q.vertices.len(), 7);
        assert_eq!(q.edges.len(), 9);
        for e in &q.edges {
            assert_eq!(q.vertices[e.source].class(), q.vertices[e.target].class() + 1);
        }
        assert_eq!(q.longest_path(), 2);
    }

    #[test]
    fn comparison_labels() {
        let pic = [PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)];
        let q = chamber_quiver(2, &pic);
        let lab = |f: &str, s: usize| q.vertex_labels[q.index_of(f, s).unwrap()].render(&["L", "M"]);
        assert_eq!(lab("SS", 0), "1");
        assert_eq!(lab("LS", 1), "L");
        assert_eq!(lab("SL", 1), "M");
        assert_eq!(lab("LS", 0), "1");
        assert_eq!(lab("LL", 1), "M");
        assert_eq!(lab("SL", 0), "L^-1 M");
        assert_eq!(lab("LL", 0), "1");
    }

    #[test]
    fn circle_quiver() {
        let q = chamber_quiver(1, &[PicMonomial::generator(1, 0)]);
        assert_eq!(q.vertices.len(), 3);
        assert_eq!(q.edges.len(), 2);
        assert_eq!(render_circle_quiver(&q, &["L"]), "b ← a → b⊗L");
    }

    #[test]
    fn transport_agrees() {
        let pic = [PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)];
        let q = chamber_quiver(2, &pic);
        assert_eq!(transport_labels(2, &pic).unwrap(), q.vertex_labels);
    }

    #[test]
    fn components() {
        let p1 = StackyFan::identity(standard_fan(StandardFan::Pn(1)));
        assert_eq!(fltz_components(&p1).unwrap().len(), 3);
        let p2 = StackyFan::identity(standard_fan(StandardFan::Pn(2)));
        assert_eq!(fltz_components(&p2).unwrap().len(), 7);
        let line = fans::fan_from_max_cones(1, &[Cone::orthant(1, 1)]).unwrap();
        let mu3 = StackyFan::new(line, IntMatrix::from_rows(&[vec![3]])).unwrap();
        let comps = fltz_components(&mu3).unwrap();
        let chars: Vec<String> = comps.iter().filter(|c| c.cone.dim() == 1).map(|c| c.character[0].clone()).collect();
        assert_eq!(chars, vec!["0", "1/3", "2/3"]);
    }

    #[test]
    fn strata() {
        let (p, quiver) = strata_poset_affine(&Cone::orthant(2, 2)).unwrap();
        assert_eq!(p.strata.len(), 9);
        assert_eq!(quiver.vertices.len(), 4);
        assert_eq!(quiver.arrows.len(), 4);
        let (p0, q0) = strata_poset_affine(&Cone::zero(2)).unwrap();
        assert_eq!((p0.strata.len(), q0.vertices.len()), (1, 1));
        let bad = Cone::new(2, &[vec![0, 1], vec![2, -1]]).unwrap();
        assert!(strata_poset_affine(&bad).is_err());
    }
}
