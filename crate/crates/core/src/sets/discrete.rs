//! Sum-constrained slices: the hyperplane/halfspace `sum x = m`, `sum x <= m`
//! (Euclidean, equal-shift formulas) and their binary counterparts.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sets::ProjectableSet;

fn check_pm(p: usize, m: usize) -> Result<()> {
    if p == 0 || m == 0 {
        return Err(Error::InvalidSet(format!(
            "need p >= 1 and m >= 1, got p={p}, m={m}"
        )));
    }
    Ok(())
}

/// `{x in R^p : sum x = m}` with unit weights.
#[derive(Clone, Copy, Debug)]
pub struct SumEquals {
    p: usize,
    m: usize,
}

impl SumEquals {
    pub fn new(p: usize, m: usize) -> Result<Self> {
        check_pm(p, m)?;
        Ok(Self { p, m })
    }
}

impl<T: Real> ProjectableSet<T> for SumEquals {
    fn name(&self) -> String {
        format!("sum=={}", self.m)
    }

    fn dim(&self) -> usize {
        self.p
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let sum: T = x.iter().copied().sum();
        let shift = (T::from_count(self.m) - sum) / T::from_count(self.p);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = xi + shift;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        (x.iter().copied().sum::<T>() - T::from_count(self.m)).abs() <= tol
    }
}

/// `{x in R^p : sum x <= m}` with unit weights.
#[derive(Clone, Copy, Debug)]
pub struct SumAtMost {
    p: usize,
    m: usize,
}

impl SumAtMost {
    pub fn new(p: usize, m: usize) -> Result<Self> {
        check_pm(p, m)?;
        Ok(Self { p, m })
    }
}

impl<T: Real> ProjectableSet<T> for SumAtMost {
    fn name(&self) -> String {
        format!("sum<={}", self.m)
    }

    fn dim(&self) -> usize {
        self.p
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let sum: T = x.iter().copied().sum();
        let shift = (T::from_count(self.m) - sum).min(T::zero()) / T::from_count(self.p);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = xi + shift;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        x.iter().copied().sum::<T>() <= T::from_count(self.m) + tol
    }
}

/// Indices of the `m` largest entries; among equal values the larger index wins.
fn top_indices<T: Real>(x: &[T], m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    let by_rank = |&a: &usize, &b: &usize| {
        x[b].partial_cmp(&x[a])
            .unwrap_or(Ordering::Equal)
            .then(b.cmp(&a))
    };
    let m = m.min(x.len());
    if m < idx.len() {
        idx.select_nth_unstable_by(m, by_rank);
        idx.truncate(m);
    }
    idx
}

fn is_binary<T: Real>(x: &[T], tol: T) -> bool {
    x.iter()
        .all(|&xi| xi.abs() <= tol || (xi - T::one()).abs() <= tol)
}

/// `{0,1}^p` vectors with exactly `m` ones. The projection puts the ones on
/// the `m` largest entries, ties going to the largest index.
#[derive(Clone, Copy, Debug)]
pub struct BinarySumEquals {
    p: usize,
    m: usize,
}

impl BinarySumEquals {
    pub fn new(p: usize, m: usize) -> Result<Self> {
        check_pm(p, m)?;
        if m > p {
            return Err(Error::InvalidSet(format!(
                "cannot place {m} ones in {p} slots"
            )));
        }
        Ok(Self { p, m })
    }
}

impl<T: Real> ProjectableSet<T> for BinarySumEquals {
    fn name(&self) -> String {
        format!("binary-sum=={}", self.m)
    }

    fn dim(&self) -> usize {
        self.p
    }

    fn is_convex(&self) -> bool {
        false
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        out.fill(T::zero());
        for i in top_indices(x, self.m) {
            out[i] = T::one();
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        is_binary(x, tol) && (x.iter().copied().sum::<T>() - T::from_count(self.m)).abs() <= tol
    }
}

/// `{0,1}^p` vectors with at most `m` ones. The projection keeps the entries
/// that are among the `m` largest (largest index on ties) and exceed 1/2.
#[derive(Clone, Copy, Debug)]
pub struct BinarySumAtMost {
    p: usize,
    m: usize,
}

impl BinarySumAtMost {
    pub fn new(p: usize, m: usize) -> Result<Self> {
        check_pm(p, m)?;
        Ok(Self { p, m })
    }
}

impl<T: Real> ProjectableSet<T> for BinarySumAtMost {
    fn name(&self) -> String {
        format!("binary-sum<={}", self.m)
    }

    fn dim(&self) -> usize {
        self.p
    }

    fn is_convex(&self) -> bool {
        false
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        out.fill(T::zero());
        let half = T::lit(0.5);
        for i in top_indices(x, self.m) {
            if x[i] > half {
                out[i] = T::one();
            }
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        is_binary(x, tol) && x.iter().copied().sum::<T>() <= T::from_count(self.m) + tol
    }
}

/// `{0,1}^d`; entries strictly above 1/2 round to one, everything else to zero.
#[derive(Clone, Copy, Debug)]
pub struct BinaryBox {
    dim: usize,
}

impl BinaryBox {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl<T: Real> ProjectableSet<T> for BinaryBox {
    fn name(&self) -> String {
        "binary".into()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        false
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let half = T::lit(0.5);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = if xi > half { T::one() } else { T::zero() };
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        is_binary(x, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::Hyperplane;
    use crate::vector::Vector;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c)
    }

    /// All 0/1 vectors of length p with exactly (or at most) m ones.
    fn enumerate(p: usize, m: usize, at_most: bool) -> Vec<Vec<f64>> {
        (0u32..(1 << p))
            .filter(|mask| {
                let c = mask.count_ones() as usize;
                if at_most {
                    c <= m
                } else {
                    c == m
                }
            })
            .map(|mask| (0..p).map(|i| f64::from((mask >> i) & 1)).collect())
            .collect()
    }

    fn brute_min(x: &[f64], cands: &[Vec<f64>]) -> f64 {
        cands
            .iter()
            .map(|c| c.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    fn sqdist(a: &Vector<f64>, b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
    }

    #[test]
    fn sum_examples() {
        let s = SumEquals::new(3, 2).unwrap();
        let p = s.project(&v(&[0.0, 0.0, 0.0])).unwrap();
        let h = Hyperplane::new(v(&[1.0, 1.0, 1.0]), 2.0).unwrap();
        assert!(p.max_abs_diff(&v(&[2.0 / 3.0; 3])) < 1e-15);
        assert!(p.max_abs_diff(&h.project(&v(&[0.0, 0.0, 0.0])).unwrap()) < 1e-15);

        let le = SumAtMost::new(3, 2).unwrap();
        assert_eq!(
            le.project(&v(&[0.0, 1.0, 0.0])).unwrap(),
            v(&[0.0, 1.0, 0.0])
        );
        let p = le.project(&v(&[1.0, 1.0, 1.0])).unwrap();
        assert!(p.max_abs_diff(&v(&[2.0 / 3.0; 3])) < 1e-15);
    }

    #[test]
    fn binary_sum_examples() {
        let s = BinarySumEquals::new(3, 2).unwrap();
        assert_eq!(
            s.project(&v(&[0.9, 0.1, 0.8])).unwrap(),
            v(&[1.0, 0.0, 1.0])
        );
        assert_eq!(
            s.project(&v(&[0.5, 0.5, 0.5])).unwrap(),
            v(&[0.0, 1.0, 1.0])
        );
        assert_eq!(
            s.project(&v(&[1.0, 1.0, 0.0])).unwrap(),
            v(&[1.0, 1.0, 0.0])
        );

        let cands = enumerate(3, 2, false);
        for x in [[0.9, 0.1, 0.8], [0.5, 0.5, 0.5]] {
            let p = s.project(&v(&x)).unwrap();
            assert_eq!(sqdist(&p, &x), brute_min(&x, &cands));
        }
    }

    #[test]
    fn binary_sum_le_examples() {
        let h = BinarySumAtMost::new(3, 2).unwrap();
        let cands = enumerate(3, 2, true);
        let cases = [
            ([0.2, 0.3, 0.1], [0.0, 0.0, 0.0]),
            ([0.9, 0.6, 0.7], [1.0, 0.0, 1.0]),
            ([0.9, 0.2, 0.3], [1.0, 0.0, 0.0]),
        ];
        for (x, expect) in cases {
            let p = h.project(&v(&x)).unwrap();
            assert_eq!(p, v(&expect));
            assert_eq!(sqdist(&p, &x), brute_min(&x, &cands));
        }
    }

    #[test]
    fn binary_box_examples() {
        let b = BinaryBox::new(3);
        assert_eq!(
            b.project(&v(&[0.51, 0.5, -2.0])).unwrap(),
            v(&[1.0, 0.0, 0.0])
        );
        let b = BinaryBox::new(2);
        assert_eq!(b.project(&v(&[1.0, 0.0])).unwrap(), v(&[1.0, 0.0]));
        assert_eq!(b.project(&v(&[0.7, 0.7])).unwrap(), v(&[1.0, 1.0]));
    }

    #[test]
    fn invalid_parameters() {
        assert!(SumEquals::new(0, 2).is_err());
        assert!(SumAtMost::new(3, 0).is_err());
        assert!(BinarySumEquals::new(2, 3).is_err());
    }

    #[test]
    fn top_indices_tie_rule() {
        assert_eq!(
            top_indices(&[1.0, 1.0, 1.0, 1.0], 2)
                .iter()
                .copied()
                .collect::<std::collections::BTreeSet<_>>(),
            [2, 3].into_iter().collect()
        );
        let mut t = top_indices(&[0.0, 5.0, 0.0, 0.0], 2);
        t.sort();
        assert_eq!(t, vec![1, 3]);
    }
}
