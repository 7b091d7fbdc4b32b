//! Product-space reformulation: an r-set problem in `E` becomes the two-set
//! problem `C_1 x ... x C_r` versus the diagonal in `E^r`.

use std::sync::Arc;

use crate::algorithms::{common_dim, join_names, Aamr, GeneralizedDr, Operator};
use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::{Diagonal, Product, SetRef};
use crate::vector::Vector;

/// Replicates `x` into `copies` consecutive blocks.
pub fn lift<T: Real>(x: &Vector<T>, copies: usize) -> Vector<T> {
    let mut out = Vec::with_capacity(x.dim() * copies);
    for _ in 0..copies {
        out.extend_from_slice(x.as_slice());
    }
    out.into()
}

/// Blockwise mean of a product-space vector made of `copies` blocks.
pub fn unlift_shadow<T: Real>(x: &Vector<T>, copies: usize) -> Result<Vector<T>> {
    if copies == 0 || !x.dim().is_multiple_of(copies) || x.dim() == 0 {
        return Err(Error::Dimension {
            expected: copies,
            found: x.dim(),
        });
    }
    Ok(Diagonal::new(copies, x.dim() / copies)?
        .mean(x.as_slice())
        .into())
}

/// The sets `C_i`, their product and the diagonal.
#[derive(Clone, Debug)]
pub struct ProductSpace<T: Real> {
    sets: Vec<SetRef<T>>,
    base_dim: usize,
    diagonal: Diagonal,
    product: Arc<Product<T>>,
}

impl<T: Real> ProductSpace<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        let base_dim = common_dim(&sets, 2)?;
        let diagonal = Diagonal::new(sets.len(), base_dim)?;
        let product = Arc::new(Product::new(sets.clone())?);
        Ok(Self {
            sets,
            base_dim,
            diagonal,
            product,
        })
    }

    pub fn copies(&self) -> usize {
        self.sets.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn dim(&self) -> usize {
        self.base_dim * self.sets.len()
    }

    pub fn sets(&self) -> &[SetRef<T>] {
        &self.sets
    }

    pub fn diagonal(&self) -> SetRef<T> {
        Arc::new(self.diagonal)
    }

    pub fn product(&self) -> SetRef<T> {
        self.product.clone()
    }

    pub fn lift(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.base_dim, x.dim())?;
        Ok(lift(x, self.copies()))
    }

    pub fn unlift(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        Ok(self.diagonal.mean(x.as_slice()).into())
    }

    /// DR with the diagonal reflected first.
    pub fn dr(&self) -> ProductDr<T> {
        ProductDr {
            space: self.clone(),
        }
    }

    /// Generalized DR on `(D, C)`, shadow mapped back to the base space.
    pub fn gdr(&self, alpha: T) -> Result<ProductShadow<T, GeneralizedDr<T>>> {
        let op = GeneralizedDr::new(self.diagonal(), self.product(), alpha)?;
        Ok(ProductShadow {
            op,
            diagonal: self.diagonal,
            anchor: None,
        })
    }

    /// AAMR on `(D, C)` with a product-space anchor `q`; the shadow is the
    /// blockwise mean of `x + q`.
    pub fn aamr(&self, alpha: T, beta: T, anchor: Vector<T>) -> Result<ProductShadow<T, Aamr<T>>> {
        let op = Aamr::new(self.diagonal(), self.product(), alpha, beta, anchor.clone())?;
        Ok(ProductShadow {
            op,
            diagonal: self.diagonal,
            anchor: Some(anchor),
        })
    }
}

/// Product-space Douglas-Rachford, evaluated blockwise:
///
/// `p = mean_i x_i`, `x_i <- x_i / 2 + R_{C_i}(2p - x_i) / 2`.
///
/// The shadow is `p`, a point of the base space.
#[derive(Clone, Debug)]
pub struct ProductDr<T: Real> {
    space: ProductSpace<T>,
}

impl<T: Real> ProductDr<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        Ok(ProductSpace::new(sets)?.dr())
    }

    pub fn space(&self) -> &ProductSpace<T> {
        &self.space
    }
}

impl<T: Real> Operator<T> for ProductDr<T> {
    fn label(&self) -> String {
        format!("product-dr[{}]", join_names(&self.space.sets))
    }

    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let d = self.space.base_dim;
        let p = self.space.diagonal.mean(x.as_slice());
        let two = T::lit(2.0);
        let mut out = vec![T::zero(); x.dim()];
        let mut reflected = vec![T::zero(); d];
        for ((set, xi), oi) in self
            .space
            .sets
            .iter()
            .zip(x.as_slice().chunks_exact(d))
            .zip(out.chunks_exact_mut(d))
        {
            // x_i + P_{C_i}(2p - x_i) - p
            for ((r, &pj), &xj) in reflected.iter_mut().zip(&p).zip(xi) {
                *r = two * pj - xj;
            }
            set.project_into(&reflected, oi);
            for ((o, &xj), &pj) in oi.iter_mut().zip(xi).zip(&p) {
                *o += xj - pj;
            }
        }
        Ok(out.into())
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.space.unlift(x)
    }
}

/// A two-set operator on `(D, C)` whose shadow is reported in the base space.
#[derive(Clone, Debug)]
pub struct ProductShadow<T: Real, O> {
    op: O,
    diagonal: Diagonal,
    anchor: Option<Vector<T>>,
}

impl<T: Real, O> ProductShadow<T, O> {
    pub fn inner(&self) -> &O {
        &self.op
    }
}

impl<T: Real, O: Operator<T>> Operator<T> for ProductShadow<T, O> {
    fn label(&self) -> String {
        format!("product-{}", self.op.label())
    }

    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.op.apply(x)
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.op.dim(), x.dim())?;
        let mean = match &self.anchor {
            Some(q) => self.diagonal.mean((x + q).as_slice()),
            None => self.diagonal.mean(x.as_slice()),
        };
        Ok(mean.into())
    }
}
