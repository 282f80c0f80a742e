use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::{Form, Poly};
use super::point::ProjPoint;
use crate::arith::{determinant, rank};
use crate::error::{Error, Result};

/// A projective variety in `P^n` cut out by a list of forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteIntersection {
    n: usize,
    forms: Vec<Form>,
}

impl CompleteIntersection {
    pub fn new(n: usize, forms: Vec<Form>) -> Result<Self> {
        for f in &forms {
            if f.num_vars() != n + 1 {
                return Err(Error::DimensionError { expected: n + 1, got: f.num_vars() });
            }
        }
        Ok(CompleteIntersection { n, forms })
    }

    /// All of `P^n`.
    pub fn projective_space(n: usize) -> Self {
        CompleteIntersection { n, forms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.n + 1
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.forms.iter().map(Form::degree).sum()
    }

    /// `n + 1 - d`, the exponent making the sup-norm height anticanonical.
    pub fn anticanonical_exponent(&self) -> Result<u32> {
        let d = self.total_degree();
        if d as usize > self.n {
            return Err(Error::NotFano { degree: d, bound: self.n + 1 });
        }
        Ok((self.n + 1) as u32 - d)
    }

    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        if p.len() != self.n + 1 {
            return Err(Error::DimensionError { expected: self.n + 1, got: p.len() });
        }
        Ok(self.forms.iter().all(|f| f.evaluate_slice(p.coords()).is_zero()))
    }
}

/// An `r`-plane in `P^n`, given by `r + 1` integer row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSubspace {
    basis: Vec<Vec<i64>>,
}

impl LinearSubspace {
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::DegenerateSubspace("empty basis".into()));
        };
        let cols = first.len();
        if let Some(row) = basis.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionError { expected: cols, got: row.len() });
        }
        if rank(&to_big(&basis)) != basis.len() {
            return Err(Error::DegenerateSubspace(format!(
                "basis of {} rows is rank deficient",
                basis.len()
            )));
        }
        Ok(LinearSubspace { basis })
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Projective dimension `r`.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn ambient_vars(&self) -> usize {
        self.basis[0].len()
    }

    /// Coordinates `x_i` as linear forms in the parameters `t_0..t_r`.
    pub fn parametrization(&self) -> Vec<Poly> {
        (0..self.ambient_vars())
            .map(|i| Poly::linear(&self.basis.iter().map(|row| row[i]).collect::<Vec<_>>()))
            .collect()
    }

    /// Symbolic containment: every form composed with the parametrization
    /// vanishes identically.
    pub fn is_contained_in(&self, x: &CompleteIntersection) -> Result<bool> {
        if self.ambient_vars() != x.num_vars() {
            return Err(Error::DimensionError { expected: x.num_vars(), got: self.ambient_vars() });
        }
        let subs = self.parametrization();
        for f in x.forms() {
            if !f.compose(&subs)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        if p.len() != self.ambient_vars() {
            return false;
        }
        let mut rows = to_big(&self.basis);
        rows.push(p.coords().iter().map(|&c| BigInt::from(c)).collect());
        rank(&rows) == self.basis.len()
    }

    /// Column indices of a nonsingular maximal minor together with its
    /// adjugate and determinant.
    pub(crate) fn invertible_minor(&self) -> (Vec<usize>, Vec<Vec<BigInt>>, BigInt) {
        let k = self.basis.len();
        let cols = self.ambient_vars();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let minor: Vec<Vec<BigInt>> = self
                .basis
                .iter()
                .map(|row| idx.iter().map(|&c| BigInt::from(row[c])).collect())
                .collect();
            let det = determinant(&minor);
            if !det.is_zero() {
                return (idx.clone(), adjugate(&minor), det);
            }
            if !next_combination(&mut idx, cols) {
                unreachable!("full-rank basis has a nonsingular maximal minor");
            }
        }
    }
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `adj(M)` with `M * adj(M) = det(M) * I`.
fn adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let k = m.len();
    if k == 1 {
        return vec![vec![BigInt::from(1)]];
    }
    let mut adj = vec![vec![BigInt::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let sub: Vec<Vec<BigInt>> = (0..k)
                .filter(|&r| r != i)
                .map(|r| (0..k).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = determinant(&sub);
            adj[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2() -> CompleteIntersection {
        CompleteIntersection::new(4, vec![Form::diagonal(3, &[1, 1, 1, -1, -1]).unwrap()]).unwrap()
    }

    #[test]
    fn containment_examples() {
        let quadric =
            CompleteIntersection::new(3, vec![Form::diagonal(2, &[1, 1, -1, -1]).unwrap()]).unwrap();
        assert!(quadric.contains(&ProjPoint::normalize(&[1, 0, 1, 0]).unwrap()).unwrap());
        assert!(x2().contains(&ProjPoint::normalize(&[1, 0, 0, 1, 0]).unwrap()).unwrap());
        assert!(!x2().contains(&ProjPoint::normalize(&[1, 1, 1, 1, 1]).unwrap()).unwrap());
        assert!(x2().contains(&ProjPoint::normalize(&[1, 1]).unwrap()).is_err());
    }

    #[test]
    fn anticanonical_exponents() {
        assert_eq!(x2().anticanonical_exponent().unwrap(), 2);
        let q = |k| Form::diagonal(2, &vec![1; k]).unwrap();
        let two_quadrics = CompleteIntersection::new(5, vec![q(6), q(6)]).unwrap();
        assert_eq!(two_quadrics.anticanonical_exponent().unwrap(), 2);
        let quadric = CompleteIntersection::new(4, vec![q(5)]).unwrap();
        assert_eq!(quadric.anticanonical_exponent().unwrap(), 3);
        let quintic = CompleteIntersection::new(4, vec![Form::diagonal(5, &[1; 5]).unwrap()]).unwrap();
        assert!(matches!(quintic.anticanonical_exponent(), Err(Error::NotFano { .. })));
    }

    #[test]
    fn subspace_membership_and_rank() {
        let line = LinearSubspace::new(vec![vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]).unwrap();
        assert!(line.is_contained_in(&x2()).unwrap());
        assert!(line.contains_point(&ProjPoint::normalize(&[0, 2, 3, 2, 3]).unwrap()));
        assert!(!line.contains_point(&ProjPoint::normalize(&[1, 2, 3, 2, 3]).unwrap()));
        assert!(matches!(
            LinearSubspace::new(vec![vec![1, 2, 3], vec![2, 4, 6]]),
            Err(Error::DegenerateSubspace(_))
        ));
    }

    #[test]
    fn adjugate_inverts() {
        let s = LinearSubspace::new(vec![vec![0, 2, 1], vec![0, 1, 1]]).unwrap();
        let (cols, adj, det) = s.invertible_minor();
        assert_eq!(cols, vec![1, 2]);
        assert_eq!(det, BigInt::from(1));
        assert_eq!(adj, vec![vec![BigInt::from(1), BigInt::from(-1)], vec![BigInt::from(-1), BigInt::from(2)]]);
    }
}
