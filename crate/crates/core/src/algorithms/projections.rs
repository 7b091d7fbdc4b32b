use crate::algorithms::{common_dim, join_names, Operator};
use crate::error::{check_dim, Result};
use crate::scalar::Real;
use crate::sets::SetRef;
use crate::vector::Vector;

/// `P_{C_r} ... P_{C_1}`: the first listed set is projected onto first.
#[derive(Clone, Debug)]
pub struct CyclicProjections<T: Real> {
    sets: Vec<SetRef<T>>,
    dim: usize,
}

impl<T: Real> CyclicProjections<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        let dim = common_dim(&sets, 1)?;
        Ok(Self { sets, dim })
    }
}

impl<T: Real> Operator<T> for CyclicProjections<T> {
    fn label(&self) -> String {
        format!("cyclic-projections[{}]", join_names(&self.sets))
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let mut cur = x.clone().into_inner();
        let mut next = vec![T::zero(); self.dim];
        for set in &self.sets {
            set.project_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur.into())
    }
}

/// `(P_{C_1} + ... + P_{C_r}) / r`.
#[derive(Clone, Debug)]
pub struct AveragedProjections<T: Real> {
    sets: Vec<SetRef<T>>,
    dim: usize,
}

impl<T: Real> AveragedProjections<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        let dim = common_dim(&sets, 1)?;
        Ok(Self { sets, dim })
    }
}

impl<T: Real> Operator<T> for AveragedProjections<T> {
    fn label(&self) -> String {
        format!("averaged-projections[{}]", join_names(&self.sets))
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let mut acc = vec![T::zero(); self.dim];
        let mut p = vec![T::zero(); self.dim];
        for set in &self.sets {
            set.project_into(x.as_slice(), &mut p);
            for (a, &pi) in acc.iter_mut().zip(&p) {
                *a += pi;
            }
        }
        let r = T::from_count(self.sets.len());
        Ok(acc.into_iter().map(|a| a / r).collect())
    }
}
