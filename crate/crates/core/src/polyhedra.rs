//! Exact feasibility of small systems of linear constraints by
//! Fourier-Motzkin elimination.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::QVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a.x >= b`
    Ge,
    /// `a.x > b`
    Gt,
    /// `a.x = b`
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: QVector,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: QVector, rel: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, rel, rhs }
    }

    /// `a.x < b` as `-a.x > -b`.
    pub fn lt(coeffs: QVector, rhs: BigRational) -> Self {
        Constraint { coeffs: coeffs.into_iter().map(|x| -x).collect(), rel: Relation::Gt, rhs: -rhs }
    }

    pub fn le(coeffs: QVector, rhs: BigRational) -> Self {
        Constraint { coeffs: coeffs.into_iter().map(|x| -x).collect(), rel: Relation::Ge, rhs: -rhs }
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs = crate::linalg::dot(&self.coeffs, x);
        match self.rel {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = p.abs();
            for c in self.coeffs.iter_mut() {
                *c = &*c / &s;
            }
            self.rhs = &self.rhs / &s;
        }
        self
    }
}

/// Whether some real point satisfies every constraint.
pub fn feasible(constraints: &[Constraint], nvars: usize) -> bool {
    let mut system: Vec<Constraint> = Vec::new();
    let mut equalities: Vec<Constraint> = Vec::new();
    for c in constraints {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity");
        match c.rel {
            Relation::Eq => equalities.push(c.clone()),
            _ => system.push(c.clone()),
        }
    }
    // Substitute equalities away one pivot variable at a time.
    while let Some(eq) = equalities.pop() {
        let Some(j) = eq.coeffs.iter().position(|c| !c.is_zero()) else {
            if !eq.rhs.is_zero() {
                return false;
            }
            continue;
        };
        let substitute = |c: &Constraint| -> Constraint {
            if c.coeffs[j].is_zero() {
                return c.clone();
            }
            let f = &c.coeffs[j] / &eq.coeffs[j];
            let coeffs = c.coeffs.iter().zip(&eq.coeffs).map(|(a, b)| a - &f * b).collect();
            Constraint { coeffs, rel: c.rel, rhs: &c.rhs - &f * &eq.rhs }
        };
        system = system.iter().map(substitute).collect();
        equalities = equalities.iter().map(substitute).collect();
    }

    for j in 0..nvars {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for c in system.drain(..) {
            let c = c.normalized();
            if c.coeffs[j].is_positive() {
                lower.push(c);
            } else if c.coeffs[j].is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                // lo: p x_j + r.x >= b (p > 0), up: -q x_j + s.x >= d (q > 0)
                let p = lo.coeffs[j].clone();
                let qn = -up.coeffs[j].clone();
                let coeffs: QVector =
                    lo.coeffs.iter().zip(&up.coeffs).map(|(a, b)| a * &qn + b * &p).collect();
                let rhs = &lo.rhs * &qn + &up.rhs * &p;
                let rel = if lo.rel == Relation::Gt || up.rel == Relation::Gt { Relation::Gt } else { Relation::Ge };
                rest.push(Constraint { coeffs, rel, rhs }.normalized());
            }
        }
        rest.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        rest.dedup();
        system = rest;
    }
    system.iter().all(|c| match c.rel {
        Relation::Ge => BigRational::zero() >= c.rhs,
        Relation::Gt => BigRational::zero() > c.rhs,
        Relation::Eq => c.rhs.is_zero(),
    })
}

/// Strict-interior test helper: `lo < x_i < hi` as two constraints.
pub fn open_interval(nvars: usize, i: usize, lo: BigRational, hi: BigRational) -> [Constraint; 2] {
    let mut e = vec![BigRational::zero(); nvars];
    e[i] = BigRational::one();
    [Constraint::new(e.clone(), Relation::Gt, lo), Constraint::lt(e, hi)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qv};

    #[test]
    fn open_box_is_feasible() {
        let mut cs = Vec::new();
        cs.extend(open_interval(2, 0, q(0), q(1)));
        cs.extend(open_interval(2, 1, q(0), q(1)));
        assert!(feasible(&cs, 2));
        cs.push(Constraint::new(qv(&[1, 1]), Relation::Gt, q(2)));
        assert!(!feasible(&cs, 2));
    }

    #[test]
    fn strictness_matters() {
        // x >= 1 and x <= 1 is a point, x > 1 and x <= 1 is empty
        let a = [Constraint::new(qv(&[1]), Relation::Ge, q(1)), Constraint::le(qv(&[1]), q(1))];
        assert!(feasible(&a, 1));
        let b = [Constraint::new(qv(&[1]), Relation::Gt, q(1)), Constraint::le(qv(&[1]), q(1))];
        assert!(!feasible(&b, 1));
    }

    #[test]
    fn equalities_substitute() {
        let cs = [
            Constraint::new(qv(&[1, 1]), Relation::Eq, q(1)),
            Constraint::new(qv(&[1, 0]), Relation::Gt, q(0)),
            Constraint::new(qv(&[0, 1]), Relation::Gt, q(0)),
        ];
        assert!(feasible(&cs, 2));
        let cs2 = [
            Constraint::new(qv(&[1, 1]), Relation::Eq, q(0)),
            Constraint::new(qv(&[1, 0]), Relation::Gt, q(0)),
            Constraint::new(qv(&[0, 1]), Relation::Gt, q(0)),
        ];
        assert!(!feasible(&cs2, 2));
    }
}
