//! The constructible side: representations of finite acyclic categories
//! (finite posets in particular), Ext groups through the nerve complex,
//! Cartan and Euler forms, and the Beilinson generators over the chamber
//! category of `P^n`.
//!
//! Representations are covariant. On the chamber category arrows point
//! from higher step to lower step, so the center is the maximum and
//! `corepresentable(v)` is supported on `{w >= v}`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, QMatrix};
use crate::picsym::{self, PicMonomial, SodLabel};
use crate::skeleton::{self, Cell, ChamberQuiver};
use crate::zlin::IntMatrix;

pub type DimVector = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConError {
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("squares do not commute between {0} and {1}")]
    NotCommutative(String, String),
    #[error("category has a cycle through {0}")]
    Cyclic(String),
    #[error("generation failed, remainder {0:?}")]
    Generation(DimVector),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A finite category whose only endomorphisms are identities and whose
/// non-identity morphisms form no cycles.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// `compose` maps `(g, f)` to `g ∘ f` for every composable pair of
    /// non-identity morphisms.
    pub fn new(
        objects: Vec<String>,
        extra: Vec<Morphism>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self, ConError> {
        let mut morphisms: Vec<Morphism> = (0..objects.len())
            .map(|i| Morphism { source: i, target: i, name: format!("id_{}", objects[i]) })
            .collect();
        let identities: Vec<usize> = (0..objects.len()).collect();
        let shift = morphisms.len();
        morphisms.extend(extra);
        let compose: HashMap<(usize, usize), usize> =
            compose.into_iter().map(|((g, f), h)| ((g + shift, f + shift), h + shift)).collect();
        let cat = FiniteCategory { objects, morphisms, identities, compose };
        cat.check_acyclic()?;
        Ok(cat)
    }

    fn check_acyclic(&self) -> Result<(), ConError> {
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![vec![]; n];
        for m in self.non_identity() {
            let mm = &self.morphisms[m];
            if mm.source == mm.target {
                return Err(ConError::Cyclic(self.objects[mm.source].clone()));
            }
            succ[mm.source].push(mm.target);
            indeg[mm.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if seen != n {
            return Err(ConError::Cyclic("some object".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        m < self.objects.len()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        self.objects.len()..self.morphisms.len()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].source == a && self.morphisms[m].target == b)
            .collect()
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.morphisms[f].target, self.morphisms[g].source, "not composable");
        if self.is_identity(f) {
            return g;
        }
        if self.is_identity(g) {
            return f;
        }
        *self.compose.get(&(g, f)).expect("composition table incomplete")
    }

    /// Checks associativity over all composable triples.
    pub fn check_associative(&self) -> bool {
        let ms: Vec<usize> = (0..self.morphisms.len()).collect();
        for &f in &ms {
            for &g in ms.iter().filter(|&&g| self.morphisms[g].source == self.morphisms[f].target) {
                for &h in ms.iter().filter(|&&h| self.morphisms[h].source == self.morphisms[g].target) {
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Chains `c_0 -f1-> c_1 -> ... -fk-> c_k` of non-identity morphisms,
    /// grouped by length `k`.
    pub fn nerve_chains(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![(0..self.len()).map(|c| vec![self.identities[c]]).collect()];
        let mut frontier: Vec<Vec<usize>> = self.non_identity().map(|m| vec![m]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for ch in &frontier {
                let end = self.morphisms[*ch.last().unwrap()].target;
                for m in self.non_identity().filter(|&m| self.morphisms[m].source == end) {
                    let mut c = ch.clone();
                    c.push(m);
                    next.push(c);
                }
            }
            out.push(std::mem::replace(&mut frontier, next));
        }
        out
    }

    /// Longest chain of non-identity morphisms.
    pub fn height(&self) -> usize {
        self.nerve_chains().len() - 1
    }
}

/// A finite poset given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitePoset {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, ConError> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(ConError::NotPartialOrder("relation has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(ConError::NotPartialOrder(format!("{} is not reflexive", elements[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(ConError::NotPartialOrder(format!("{} and {} are equivalent", elements[a], elements[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(ConError::NotPartialOrder(format!(
                            "{} <= {} <= {} fails transitivity",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// Transitive closure of the given relations.
    pub fn from_relations(n: usize, rel: &[(usize, usize)]) -> Result<Self, ConError> {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rel {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        FinitePoset::new((0..n).map(|i| format!("p{i}")).collect(), leq)
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &rel).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Covering pairs `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_category(&self) -> FiniteCategory {
        let n = self.len();
        let mut extra = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    index.insert((a, b), extra.len());
                    extra.push(Morphism { source: a, target: b, name: format!("{}<{}", self.elements[a], self.elements[b]) });
                }
            }
        }
        let mut compose = HashMap::new();
        for (&(a, b), &f) in &index {
            for (&(b2, c), &g) in &index {
                if b == b2 {
                    compose.insert((g, f), index[&(a, c)]);
                }
            }
        }
        FiniteCategory::new(self.elements.clone(), extra, compose).expect("posets are acyclic")
    }
}

/// A functor to finite-dimensional vector spaces: a dimension per object
/// and a matrix per morphism (`dim target x dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<QMatrix>,
}

pub type PosetRep = Rep;

impl Rep {
    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn validate(&self, cat: &FiniteCategory) -> Result<(), ConError> {
        if self.dims.len() != cat.len() || self.maps.len() != cat.morphisms.len() {
            return Err(ConError::Dimension("representation does not match the category".into()));
        }
        for (i, m) in cat.morphisms.iter().enumerate() {
            let a = &self.maps[i];
            if a.rows() != self.dims[m.target] || a.cols() != self.dims[m.source] {
                return Err(ConError::Dimension(format!("map {} has shape {}x{}", m.name, a.rows(), a.cols())));
            }
        }
        for &id in &cat.identities {
            if self.maps[id] != QMatrix::identity(self.dims[cat.morphisms[id].source]) {
                return Err(ConError::Dimension(format!("{} is not sent to the identity", cat.morphisms[id].name)));
            }
        }
        for f in cat.non_identity() {
            for g in cat.non_identity().filter(|&g| cat.morphisms[g].source == cat.morphisms[f].target) {
                let h = cat.compose(g, f);
                if self.maps[h] != self.maps[g].mul(&self.maps[f]) {
                    return Err(ConError::NotCommutative(cat.morphisms[f].name.clone(), cat.morphisms[g].name.clone()));
                }
            }
        }
        Ok(())
    }

    /// A poset representation from matrices on covering pairs; every square
    /// must commute.
    pub fn from_covers(
        poset: &FinitePoset,
        dims: Vec<usize>,
        covers: &BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Rep, ConError> {
        let cat = poset.to_category();
        let n = poset.len();
        let mut full: HashMap<(usize, usize), QMatrix> = HashMap::new();
        for (a, &d) in dims.iter().enumerate().take(n) {
            full.insert((a, a), QMatrix::identity(d));
        }
        // process pairs by the length of the longest chain between them
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| poset.lt(a, b)).collect();
        let depth = |a: usize, b: usize| (0..n).filter(|&c| poset.leq[a][c] && poset.leq[c][b]).count();
        pairs.sort_by_key(|&(a, b)| depth(a, b));
        for (a, b) in pairs {
            let mut value: Option<QMatrix> = None;
            for c in (0..n).filter(|&c| poset.lt(a, c) && poset.leq[c][b] && covers.contains_key(&(a, c))) {
                let step = &covers[&(a, c)];
                if step.rows() != dims[c] || step.cols() != dims[a] {
                    return Err(ConError::Dimension(format!("cover {a}<{c}")));
                }
                let m = full[&(c, b)].mul(step);
                match &value {
                    None => value = Some(m),
                    Some(v) if *v != m => return Err(ConError::NotCommutative(poset.elements[a].clone(), poset.elements[b].clone())),
                    Some(_) => {}
                }
            }
            full.insert((a, b), value.ok_or_else(|| ConError::Dimension(format!("no cover below {a}<{b}")))?);
        }
        let maps = cat.morphisms.iter().map(|m| full[&(m.source, m.target)].clone()).collect();
        let rep = Rep { dims, maps };
        rep.validate(&cat)?;
        Ok(rep)
    }

    /// Constant one-dimensional representation on a convex subset.
    pub fn interval(cat: &FiniteCategory, support: &[bool]) -> Result<Rep, ConError> {
        let dims: Vec<usize> = support.iter().map(|&s| usize::from(s)).collect();
        let maps = cat
            .morphisms
            .iter()
            .map(|m| {
                let v = if support[m.source] && support[m.target] { BigRational::one() } else { BigRational::zero() };
                QMatrix::from_fn(dims[m.target], dims[m.source], |_, _| v.clone())
            })
            .collect();
        let rep = Rep { dims, maps };
        rep.validate(cat)?;
        Ok(rep)
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                QMatrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
                    if i < a.rows() && j < a.cols() {
                        a[(i, j)].clone()
                    } else if i >= a.rows() && j >= a.cols() {
                        b[(i - a.rows(), j - a.cols())].clone()
                    } else {
                        BigRational::zero()
                    }
                })
            })
            .collect();
        Rep { dims, maps }
    }
}

/// `k[Hom(v, -)]`: basis of the value at `w` is `Hom(v, w)`, and a
/// morphism acts by composition.
pub fn corepresentable(cat: &FiniteCategory, v: usize) -> Rep {
    let bases: Vec<Vec<usize>> = (0..cat.len()).map(|w| cat.hom(v, w)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let maps = cat
        .morphisms
        .iter()
        .enumerate()
        .map(|(mi, m)| {
            let src = &bases[m.source];
            let tgt = &bases[m.target];
            let mut a = QMatrix::zeros(tgt.len(), src.len());
            for (j, &h) in src.iter().enumerate() {
                let c = cat.compose(mi, h);
                let i = tgt.iter().position(|&x| x == c).expect("composite lies in the hom set");
                a[(i, j)] = BigRational::one();
            }
            a
        })
        .collect();
    Rep { dims, maps }
}

/// `dim Ext^i(M, N)` for `i = 0..=height`, from the normalized nerve
/// complex `C^k = ⊕_{c_0 → … → c_k} Hom(M(c_0), N(c_k))`.
pub fn rep_hom(cat: &FiniteCategory, m: &Rep, n: &Rep) -> Result<Vec<usize>, ConError> {
    let (sizes, ds) = coboundaries(cat, m, n)?;
    let mut ranks = vec![0usize; sizes.len() + 1];
    for (k, d) in ds.into_iter().enumerate() {
        ranks[k + 1] = linalg::sparse_rank(d);
    }
    Ok((0..sizes.len()).map(|k| sizes[k] - ranks[k + 1] - ranks[k]).collect())
}

/// Dimensions of `C^k` and the sparse matrices of `d: C^k -> C^{k+1}`.
pub fn coboundaries(cat: &FiniteCategory, m: &Rep, n: &Rep) -> Result<(Vec<usize>, Vec<Vec<linalg::SparseRow>>), ConError> {
    m.validate(cat)?;
    n.validate(cat)?;
    let chains = cat.nerve_chains();
    let ends = |ch: &[usize]| (cat.morphisms[ch[0]].source, cat.morphisms[*ch.last().unwrap()].target);
    // offsets of each chain's block in C^k
    let mut offsets: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    let mut sizes = Vec::new();
    for level in &chains {
        let mut off = HashMap::new();
        let mut total = 0;
        for ch in level {
            let (c0, ck) = ends(ch);
            off.insert(ch.clone(), total);
            total += n.dims[ck] * m.dims[c0];
        }
        offsets.push(off);
        sizes.push(total);
    }
    let key = |k: usize, ch: &[usize]| -> Vec<usize> {
        if k == 0 {
            vec![cat.identities[cat.morphisms[ch[0]].source]]
        } else {
            ch.to_vec()
        }
    };
    let mut ds = Vec::new();
    for k in 0..chains.len().saturating_sub(1) {
        let rows_n = sizes[k + 1];
        let mut d: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); rows_n];
        for tau in &chains[k + 1] {
            let (t0, tk) = ends(tau);
            let row0 = offsets[k + 1][tau];
            let (p, qd) = (n.dims[tk], m.dims[t0]);
            let mut add = |src: Vec<usize>, left: Option<&QMatrix>, right: Option<&QMatrix>, sign: i64| {
                let (s0, sk) = ends(&src);
                let col0 = offsets[k][&key(k, &src)];
                let (sp, sq) = (n.dims[sk], m.dims[s0]);
                // output (a, b) += sign * Σ L[a][c] φ[c][e] R[e][b]
                for a in 0..p {
                    for b in 0..qd {
                        for c in 0..sp {
                            let l = match left {
                                Some(lm) => lm[(a, c)].clone(),
                                None => if a == c { BigRational::one() } else { BigRational::zero() },
                            };
                            if l.is_zero() {
                                continue;
                            }
                            for e in 0..sq {
                                let r = match right {
                                    Some(rm) => rm[(e, b)].clone(),
                                    None => if e == b { BigRational::one() } else { BigRational::zero() },
                                };
                                if r.is_zero() {
                                    continue;
                                }
                                *d[row0 + a * qd + b].entry(col0 + c * sq + e).or_insert_with(BigRational::zero) +=
                                    &l * &r * linalg::q(sign);
                            }
                        }
                    }
                }
            };
            let len = tau.len();
            // (-1)^{k+1} N(f_{k+1}) ∘ φ(f_1..f_k)
            let head: Vec<usize> = if k == 0 { vec![cat.identities[t0]] } else { tau[..len - 1].to_vec() };
            add(head, Some(&n.maps[tau[len - 1]]), None, if (k + 1) % 2 == 0 { 1 } else { -1 });
            for i in 1..=k {
                let mut inner: Vec<usize> = tau[..i - 1].to_vec();
                inner.push(cat.compose(tau[i], tau[i - 1]));
                inner.extend_from_slice(&tau[i + 1..]);
                add(inner, None, None, if i % 2 == 0 { 1 } else { -1 });
            }
            // φ(f_2..f_{k+1}) ∘ M(f_1)
            let tail: Vec<usize> = if k == 0 { vec![cat.identities[cat.morphisms[tau[0]].target]] } else { tau[1..].to_vec() };
            add(tail, None, Some(&m.maps[tau[0]]), 1);
        }
        ds.push(d.into_iter().map(|row| row.into_iter().filter(|(_, x)| !x.is_zero()).collect()).collect());
    }
    Ok((sizes, ds))
}

/// `C[v][u] = |Hom(v, u)|`.
pub fn cartan_matrix(cat: &FiniteCategory) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..cat.len()).map(|v| (0..cat.len()).map(|u| cat.hom(v, u).len() as i64).collect()).collect();
    IntMatrix::from_rows_with_cols(&rows, cat.len())
}

/// `d^T C^{-1} e`; on dimension vectors this is `Σ (-1)^i dim Ext^i`.
pub fn euler_form(cat: &FiniteCategory, d: &[i64], e: &[i64]) -> BigInt {
    let c = cartan_matrix(cat).to_rational();
    let inv = c.inverse().expect("Cartan matrix of an acyclic category is invertible");
    let ev: Vec<BigRational> = e.iter().map(|&x| linalg::q(x)).collect();
    let dv: Vec<BigRational> = d.iter().map(|&x| linalg::q(x)).collect();
    let val = linalg::dot(&dv, &inv.mul_vec(&ev));
    assert!(val.is_integer(), "Euler form is integral");
    val.to_integer()
}

/// The chamber category of `P^n`: one object per torus chamber (indexed by
/// step), `Hom(u, w)` the lifts of `w` reachable from the reference lift of
/// `u` by class-lowering wall crossings, composition by adding deck
/// translations.
pub fn chamber_category(n: usize) -> FiniteCategory {
    let eps = skeleton::default_eps(n);
    let mut homs: Vec<(usize, usize, Vec<i64>)> = Vec::new();
    for u in 0..=n {
        let start = Cell::base(n, u);
        let mut seen = std::collections::BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for (_, next) in c.successors(&eps) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        for c in seen {
            let w = c.class() as usize;
            if w != u {
                homs.push((u, w, c.translation()));
            }
        }
    }
    homs.sort();
    let index: HashMap<(usize, usize, Vec<i64>), usize> = homs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
    let extra: Vec<Morphism> = homs
        .iter()
        .map(|(u, w, t)| Morphism { source: *u, target: *w, name: format!("{u}->{w}@{t:?}") })
        .collect();
    let mut compose = HashMap::new();
    for (fi, (u, w, tf)) in homs.iter().enumerate() {
        for (gi, (w2, x, tg)) in homs.iter().enumerate() {
            if w == w2 {
                let t: Vec<i64> = tf.iter().zip(tg).map(|(a, b)| a + b).collect();
                let h = index.get(&(*u, *x, t)).expect("composite lift is reachable");
                compose.insert((gi, fi), *h);
            }
        }
    }
    let objects = (0..=n).map(|c| format!("step{c}")).collect();
    FiniteCategory::new(objects, extra, compose).expect("chamber category is acyclic")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeilinsonGenerator {
    pub k: usize,
    /// indexed by torus chamber (step)
    pub class_dims: DimVector,
    /// indexed by the chambers of `enumerate_chambers(n)`
    pub chamber_dims: DimVector,
    pub labels: Vec<SodLabel>,
}

/// Generators `G_k = k[Hom(step k-1, -)]` for `k = 1..=n+1`, with the
/// component-table decorations on each chamber.
pub fn beilinson_generators(n: usize) -> Vec<BeilinsonGenerator> {
    let cat = chamber_category(n);
    let chambers = skeleton::enumerate_chambers(n);
    (1..=n + 1)
        .map(|k| {
            let rep = corepresentable(&cat, k - 1);
            let class_dims = rep.dim_vector();
            BeilinsonGenerator {
                k,
                chamber_dims: chambers.iter().map(|c| class_dims[c.step()]).collect(),
                labels: chambers.iter().map(|c| picsym::sod_label(n, k, c)).collect(),
                class_dims,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub k: usize,
    pub coefficient: i64,
    pub remainder: DimVector,
}

/// Peels generators `G_{n+1}, …, G_1` off a chamber dimension vector, each
/// time with the multiple that clears the deepest step it reaches.
pub fn reduce_dimension_vector(n: usize, d: &[i64]) -> Result<Vec<ReductionStep>, ConError> {
    Reducer::new(n).reduce(d)
}

/// Generators and chamber order computed once, for repeated reductions.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub generators: Vec<BeilinsonGenerator>,
    steps: Vec<usize>,
}

impl Reducer {
    pub fn new(n: usize) -> Self {
        Reducer {
            generators: beilinson_generators(n),
            steps: skeleton::enumerate_chambers(n).iter().map(|c| c.step()).collect(),
        }
    }

    /// A chamber vector constant on each torus chamber.
    pub fn lift(&self, per_class: &[i64]) -> DimVector {
        self.steps.iter().map(|&s| per_class[s]).collect()
    }

    pub fn reduce(&self, d: &[i64]) -> Result<Vec<ReductionStep>, ConError> {
        if d.len() != self.steps.len() {
            return Err(ConError::Dimension(format!("expected {} entries, got {}", self.steps.len(), d.len())));
        }
        let mut cur = d.to_vec();
        let mut trace = Vec::new();
        for g in self.generators.iter().rev() {
            let pivot = self.steps.iter().position(|&s| s == g.k - 1).expect("every step has a chamber");
            let lead = g.chamber_dims[pivot];
            debug_assert_eq!(lead, 1);
            let coefficient = cur[pivot] / lead;
            for (x, y) in cur.iter_mut().zip(&g.chamber_dims) {
                *x -= coefficient * y;
            }
            trace.push(ReductionStep { k: g.k, coefficient, remainder: cur.clone() });
        }
        if cur.iter().any(|&x| x != 0) {
            return Err(ConError::Generation(cur));
        }
        Ok(trace)
    }
}

/// A vector on chambers that is constant on each torus chamber.
pub fn lift_class_vector(n: usize, per_class: &[i64]) -> DimVector {
    skeleton::enumerate_chambers(n).iter().map(|c| per_class[c.step()]).collect()
}

/// Symbols for the objects sitting on the torus chambers, indexed by step.
pub fn default_symbols(n: usize) -> Vec<String> {
    match n {
        1 => vec!["b".into(), "a".into()],
        2 => vec!["z".into(), "y".into(), "x".into()],
        _ => (0..=n).map(|c| format!("a{c}")).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedTemplate {
    pub quiver: ChamberQuiver,
    pub symbols: Vec<String>,
}

impl TwistedTemplate {
    /// `symbol·monomial` for a vertex, e.g. `x M` or `y L^-1`.
    pub fn vertex_text(&self, v: usize, names: &[&str]) -> String {
        let sym = &self.symbols[self.quiver.vertices[v].class()];
        let l = &self.quiver.vertex_labels[v];
        if l.is_unit() {
            sym.clone()
        } else {
            format!("{sym}{}", l.render(names).replace(' ', ""))
        }
    }
}

/// Vertex and edge decorations of a representation of the twisted chamber
/// quiver with coefficients twisted by `pic`.
pub fn twisted_rep_template(n: usize, pic: &[PicMonomial]) -> TwistedTemplate {
    let loops = skeleton::template_monodromy(n, pic);
    TwistedTemplate { quiver: skeleton::chamber_quiver(n, &loops), symbols: default_symbols(n) }
}

/// DOT rendering with monomial labels on vertices and edges.
pub fn quiver_dot(q: &ChamberQuiver, names: &[&str]) -> String {
    let mut out = String::from("digraph chambers {\n");
    for (i, (v, l)) in q.vertices.iter().zip(&q.vertex_labels).enumerate() {
        let pic = l.render(names);
        let _ = writeln!(
            out,
            "  v{i} [label=\"{}{}\\n{pic}\", step={}, pic=\"{pic}\"];",
            v.chamber,
            if v.duplicate { "'" } else { "" },
            v.class(),
        );
    }
    for (e, l) in q.edges.iter().zip(&q.edge_labels) {
        let lab = l.as_ref().map(|m| m.render(names)).unwrap_or_else(|| "1".into());
        let _ = writeln!(out, "  v{} -> v{} [label=\"{lab}\", pic=\"{lab}\"];", e.source, e.target);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_yoneda() {
        let p = FinitePoset::chain(2);
        let cat = p.to_category();
        let pa = corepresentable(&cat, 0);
        let pb = corepresentable(&cat, 1);
        assert_eq!(pa.dims, vec![1, 1]);
        assert_eq!(pb.dims, vec![0, 1]);
        assert_eq!(rep_hom(&cat, &pa, &pa).unwrap(), vec![1, 0]);
        assert_eq!(rep_hom(&cat, &pb, &pa).unwrap(), vec![1, 0]);
        assert_eq!(rep_hom(&cat, &pa, &pb).unwrap(), vec![0, 0]);
    }

    fn square_is_zero(cat: &FiniteCategory, m: &Rep, n: &Rep) {
        let (sizes, ds) = coboundaries(cat, m, n).unwrap();
        for k in 0..ds.len().saturating_sub(1) {
            // (d_{k+1} d_k)[i][j] = Σ_l d_{k+1}[i][l] d_k[l][j]
            for (i, row) in ds[k + 1].iter().enumerate() {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (l, x) in row {
                    for (j, y) in &ds[k][*l] {
                        *acc.entry(*j).or_insert_with(BigRational::zero) += x * y;
                    }
                }
                assert!(acc.values().all(|v| v.is_zero()), "d^2 != 0 at level {k} row {i}, sizes {sizes:?}");
            }
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for len in 2..=5 {
            let cat = FinitePoset::chain(len).to_category();
            let m = corepresentable(&cat, 0);
            square_is_zero(&cat, &m, &m);
        }
        let cat = chamber_category(2);
        let g = corepresentable(&cat, 2);
        square_is_zero(&cat, &g, &g);
    }

    #[test]
    fn simple_modules_have_ext1() {
        let cat = FinitePoset::chain(2).to_category();
        let sa = Rep::interval(&cat, &[true, false]).unwrap();
        let sb = Rep::interval(&cat, &[false, true]).unwrap();
        assert_eq!(rep_hom(&cat, &sa, &sb).unwrap(), vec![0, 1]);
        assert_eq!(euler_form(&cat, &sa.dim_vector(), &sb.dim_vector()), BigInt::from(-1));
    }

    #[test]
    fn antichain_cartan() {
        let cat = FinitePoset::antichain(2).to_category();
        assert_eq!(cartan_matrix(&cat), IntMatrix::identity(2));
        assert_eq!(euler_form(&cat, &[2, 3], &[5, 7]), BigInt::from(31));
    }

    #[test]
    fn chamber_category_homs() {
        for n in 1..=3 {
            let cat = chamber_category(n);
            assert!(cat.check_associative());
            for c in 0..=n {
                for c2 in 0..=n {
                    let expect = if c >= c2 { picsym::binomial((n + c - c2) as i64, n as i64) } else { BigInt::zero() };
                    assert_eq!(BigInt::from(cat.hom(c, c2).len()), expect, "n={n} {c}->{c2}");
                }
            }
        }
    }

    #[test]
    fn p2_gram() {
        let cat = chamber_category(2);
        let gens: Vec<Rep> = (0..3).map(|v| corepresentable(&cat, v)).collect();
        let gram: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| rep_hom(&cat, &gens[i], &gens[j]).unwrap()[0]).collect()).collect();
        assert_eq!(gram, vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
    }

    #[test]
    fn generator_ranks() {
        let g = beilinson_generators(2);
        assert_eq!(g[0].class_dims, vec![1, 0, 0]);
        assert_eq!(g[1].class_dims, vec![3, 1, 0]);
        assert_eq!(g[2].class_dims, vec![6, 3, 1]);
        for gen in &g {
            for (d, l) in gen.chamber_dims.iter().zip(&gen.labels) {
                assert_eq!(*d as usize, l.rank(2));
            }
        }
    }

    #[test]
    fn reduction() {
        let total: Vec<i64> = (0..7).map(|i| beilinson_generators(2).iter().map(|g| g.chamber_dims[i]).sum()).collect();
        let trace = reduce_dimension_vector(2, &total).unwrap();
        assert_eq!(trace.len(), 3);
        assert!(trace.iter().all(|s| s.coefficient == 1));
        assert!(reduce_dimension_vector(2, &[0, 1, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn typical_figure() {
        let pic = [PicMonomial::generator(2, 0), PicMonomial::generator(2, 1)];
        let t = twisted_rep_template(2, &pic);
        let names = ["L", "M"];
        let text = |f: &str, s: usize| t.vertex_text(t.quiver.index_of(f, s).unwrap(), &names);
        assert_eq!(text("SL", 1), "xM");
        assert_eq!(text("SS", 0), "x");
        assert_eq!(text("LS", 1), "xL^-1M");
        assert_eq!(text("LL", 1), "yM");
        assert_eq!(text("LS", 0), "y");
        assert_eq!(text("SL", 0), "yL");
        assert_eq!(text("LL", 0), "z");
    }
}
