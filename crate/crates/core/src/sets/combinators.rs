//! Sets derived from other sets: translation, dilation, Cartesian product,
//! the diagonal of a product space, and disjoint coordinate groups.

use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::{ProjectableSet, SetRef};
use crate::vector::Vector;

/// `y + C`, with `P_{y+C}(x) = y + P_C(x - y)`.
#[derive(Clone, Debug)]
pub struct Translated<T: Real> {
    base: SetRef<T>,
    shift: Vector<T>,
}

impl<T: Real> Translated<T> {
    pub fn new(base: SetRef<T>, shift: Vector<T>) -> Result<Self> {
        check_dim(base.dim(), shift.dim())?;
        Ok(Self { base, shift })
    }
}

impl<T: Real> ProjectableSet<T> for Translated<T> {
    fn name(&self) -> String {
        format!("translate({})", self.base.name())
    }

    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn is_convex(&self) -> bool {
        self.base.is_convex()
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let shifted: Vec<T> = x
            .iter()
            .zip(self.shift.iter())
            .map(|(&a, &s)| a - s)
            .collect();
        self.base.project_into(&shifted, out);
        for (o, &s) in out.iter_mut().zip(self.shift.iter()) {
            *o += s;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        let shifted: Vec<T> = x
            .iter()
            .zip(self.shift.iter())
            .map(|(&a, &s)| a - s)
            .collect();
        self.base.contains_within(&shifted, tol)
    }
}

/// `alpha C`, with `P_{alpha C}(x) = alpha P_C(x / alpha)`.
#[derive(Clone, Debug)]
pub struct Dilated<T: Real> {
    base: SetRef<T>,
    factor: T,
}

impl<T: Real> Dilated<T> {
    pub fn new(base: SetRef<T>, factor: T) -> Result<Self> {
        if factor == T::zero() || !factor.is_finite() {
            return Err(Error::InvalidSet(format!(
                "dilation factor must be nonzero, got {factor}"
            )));
        }
        Ok(Self { base, factor })
    }
}

impl<T: Real> ProjectableSet<T> for Dilated<T> {
    fn name(&self) -> String {
        format!("dilate({}, {})", self.base.name(), self.factor)
    }

    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn is_convex(&self) -> bool {
        self.base.is_convex()
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let scaled: Vec<T> = x.iter().map(|&a| a / self.factor).collect();
        self.base.project_into(&scaled, out);
        for o in out.iter_mut() {
            *o *= self.factor;
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        let scaled: Vec<T> = x.iter().map(|&a| a / self.factor).collect();
        self.base.contains_within(&scaled, tol / self.factor.abs())
    }
}

pub fn translate<T: Real>(base: SetRef<T>, shift: Vector<T>) -> Result<SetRef<T>> {
    Ok(Arc::new(Translated::new(base, shift)?))
}

pub fn dilate<T: Real>(base: SetRef<T>, factor: T) -> Result<SetRef<T>> {
    Ok(Arc::new(Dilated::new(base, factor)?))
}

/// `C_1 x ... x C_r` over concatenated coordinates; projects blockwise.
#[derive(Clone, Debug)]
pub struct Product<T: Real> {
    parts: Vec<SetRef<T>>,
    offsets: Vec<usize>,
    dim: usize,
}

impl<T: Real> Product<T> {
    pub fn new(parts: Vec<SetRef<T>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidProblem("product of zero sets".into()));
        }
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut dim = 0;
        for p in &parts {
            offsets.push(dim);
            dim += p.dim();
        }
        offsets.push(dim);
        Ok(Self {
            parts,
            offsets,
            dim,
        })
    }

    pub fn parts(&self) -> &[SetRef<T>] {
        &self.parts
    }

    fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }
}

impl<T: Real> ProjectableSet<T> for Product<T> {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.name()).collect();
        format!("product[{}]", names.join(", "))
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        self.parts.iter().all(|p| p.is_convex())
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        for (i, part) in self.parts.iter().enumerate() {
            let r = self.block(i);
            part.project_into(&x[r.clone()], &mut out[r]);
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, part)| part.contains_within(&x[self.block(i)], tol))
    }
}

/// `{(x, ..., x)}` in the `copies`-fold product of a `base_dim` space.
/// Its projector replaces every block with the blockwise mean, which is the
/// projection for any weights repeated identically across blocks.
#[derive(Clone, Copy, Debug)]
pub struct Diagonal {
    copies: usize,
    base_dim: usize,
}

impl Diagonal {
    pub fn new(copies: usize, base_dim: usize) -> Result<Self> {
        if copies == 0 || base_dim == 0 {
            return Err(Error::InvalidSet(
                "diagonal needs copies >= 1 and base_dim >= 1".into(),
            ));
        }
        Ok(Self { copies, base_dim })
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Blockwise mean of a product-space vector.
    pub fn mean<T: Real>(&self, x: &[T]) -> Vec<T> {
        let mut mean = vec![T::zero(); self.base_dim];
        for block in x.chunks_exact(self.base_dim) {
            for (m, &b) in mean.iter_mut().zip(block) {
                *m += b;
            }
        }
        let r = T::from_count(self.copies);
        for m in &mut mean {
            *m /= r;
        }
        mean
    }
}

impl<T: Real> ProjectableSet<T> for Diagonal {
    fn name(&self) -> String {
        format!("diagonal({}x{})", self.copies, self.base_dim)
    }

    fn dim(&self) -> usize {
        self.copies * self.base_dim
    }

    fn is_convex(&self) -> bool {
        true
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        let mean = self.mean(x);
        for block in out.chunks_exact_mut(self.base_dim) {
            block.copy_from_slice(&mean);
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        let first = &x[..self.base_dim];
        x.chunks_exact(self.base_dim)
            .all(|b| b.iter().zip(first).all(|(&a, &f)| (a - f).abs() <= tol))
    }
}

/// Constraint acting on disjoint coordinate groups: each group of indices is
/// gathered, projected with its own set and scattered back. Coordinates not
/// in any group are unconstrained.
#[derive(Clone, Debug)]
pub struct Grouped<T: Real> {
    label: String,
    dim: usize,
    groups: Vec<(Vec<usize>, SetRef<T>)>,
}

impl<T: Real> Grouped<T> {
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        groups: Vec<(Vec<usize>, SetRef<T>)>,
    ) -> Result<Self> {
        let mut seen = vec![false; dim];
        for (idx, set) in &groups {
            check_dim(set.dim(), idx.len())?;
            for &i in idx {
                if i >= dim {
                    return Err(Error::InvalidSet(format!(
                        "group index {i} outside dimension {dim}"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidSet(format!(
                        "coordinate {i} appears in two groups"
                    )));
                }
            }
        }
        Ok(Self {
            label: label.into(),
            dim,
            groups,
        })
    }

    pub fn groups(&self) -> &[(Vec<usize>, SetRef<T>)] {
        &self.groups
    }
}

impl<T: Real> ProjectableSet<T> for Grouped<T> {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_convex(&self) -> bool {
        self.groups.iter().all(|(_, s)| s.is_convex())
    }

    fn project_into(&self, x: &[T], out: &mut [T]) {
        out.copy_from_slice(x);
        let mut gathered = Vec::new();
        let mut projected = Vec::new();
        for (idx, set) in &self.groups {
            gathered.clear();
            gathered.extend(idx.iter().map(|&i| x[i]));
            projected.resize(idx.len(), T::zero());
            set.project_into(&gathered, &mut projected);
            for (&i, &p) in idx.iter().zip(&projected) {
                out[i] = p;
            }
        }
    }

    fn contains_within(&self, x: &[T], tol: T) -> bool {
        let mut gathered = Vec::new();
        self.groups.iter().all(|(idx, set)| {
            gathered.clear();
            gathered.extend(idx.iter().map(|&i| x[i]));
            set.contains_within(&gathered, tol)
        })
    }
}
