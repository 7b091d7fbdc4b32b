use crate::algorithms::{common_dim, join_names, open_unit, Operator};
use crate::driver::SolveReport;
use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;
use crate::sets::{reflect_into, ProjectableSet, SetRef};
use crate::vector::Vector;

/// Writes `T_{A,B}(x) = x + P_B(2 P_A x - x) - P_A x` into `out` and returns `P_A x`.
pub(crate) fn dr_into<T: Real>(
    a: &dyn ProjectableSet<T>,
    b: &dyn ProjectableSet<T>,
    x: &[T],
    out: &mut [T],
) -> Vec<T> {
    let mut pa = vec![T::zero(); x.len()];
    a.project_into(x, &mut pa);
    let two = T::lit(2.0);
    let ra: Vec<T> = pa.iter().zip(x).map(|(&p, &xi)| two * p - xi).collect();
    b.project_into(&ra, out);
    for ((o, &xi), &p) in out.iter_mut().zip(x).zip(&pa) {
        *o += xi - p;
    }
    pa
}

/// `R_B R_A x`.
fn double_reflect<T: Real>(
    a: &dyn ProjectableSet<T>,
    b: &dyn ProjectableSet<T>,
    x: &[T],
) -> Vec<T> {
    let mut ra = vec![T::zero(); x.len()];
    reflect_into(a, x, &mut ra);
    let mut rba = vec![T::zero(); x.len()];
    reflect_into(b, &ra, &mut rba);
    rba
}

fn pair_dim<T: Real>(a: &SetRef<T>, b: &SetRef<T>) -> Result<usize> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.dim())
}

/// Douglas-Rachford operator `T_{A,B} = (Id + R_B R_A) / 2`, shadow `P_A`.
#[derive(Clone, Debug)]
pub struct DouglasRachford<T: Real> {
    a: SetRef<T>,
    b: SetRef<T>,
}

impl<T: Real> DouglasRachford<T> {
    pub fn new(a: SetRef<T>, b: SetRef<T>) -> Result<Self> {
        pair_dim(&a, &b)?;
        Ok(Self { a, b })
    }
}

impl<T: Real> Operator<T> for DouglasRachford<T> {
    fn label(&self) -> String {
        format!("dr[A={}, B={}]", self.a.name(), self.b.name())
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let mut out = vec![T::zero(); x.dim()];
        dr_into(self.a.as_ref(), self.b.as_ref(), x.as_slice(), &mut out);
        Ok(out.into())
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.a.project(x)
    }
}

/// `(1 - alpha) x + alpha R_B R_A x` with `alpha` in `]0,1[`; shadow `P_A`.
#[derive(Clone, Debug)]
pub struct GeneralizedDr<T: Real> {
    a: SetRef<T>,
    b: SetRef<T>,
    alpha: T,
}

impl<T: Real> GeneralizedDr<T> {
    pub fn new(a: SetRef<T>, b: SetRef<T>, alpha: T) -> Result<Self> {
        open_unit("alpha", alpha.to_f64().unwrap_or(f64::NAN))?;
        pair_dim(&a, &b)?;
        Ok(Self { a, b, alpha })
    }
}

impl<T: Real> Operator<T> for GeneralizedDr<T> {
    fn label(&self) -> String {
        format!(
            "gdr(alpha={})[A={}, B={}]",
            self.alpha,
            self.a.name(),
            self.b.name()
        )
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let rba: Vector<T> = double_reflect(self.a.as_ref(), self.b.as_ref(), x.as_slice()).into();
        Ok(Vector::combine(T::one() - self.alpha, x, self.alpha, &rba))
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.a.project(x)
    }
}

/// `(1 - beta) P_A x + beta T_{A,B} x` with `beta` in `]0,1[`; shadow `P_A`.
#[derive(Clone, Debug)]
pub struct Raar<T: Real> {
    a: SetRef<T>,
    b: SetRef<T>,
    beta: T,
}

impl<T: Real> Raar<T> {
    pub fn new(a: SetRef<T>, b: SetRef<T>, beta: T) -> Result<Self> {
        open_unit("beta", beta.to_f64().unwrap_or(f64::NAN))?;
        pair_dim(&a, &b)?;
        Ok(Self { a, b, beta })
    }
}

impl<T: Real> Operator<T> for Raar<T> {
    fn label(&self) -> String {
        format!(
            "raar(beta={})[A={}, B={}]",
            self.beta,
            self.a.name(),
            self.b.name()
        )
    }

    fn dim(&self) -> usize {
        self.a.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let mut t = vec![T::zero(); x.dim()];
        let pa = dr_into(self.a.as_ref(), self.b.as_ref(), x.as_slice(), &mut t);
        Ok(Vector::combine(
            T::one() - self.beta,
            &pa.into(),
            self.beta,
            &t.into(),
        ))
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.a.project(x)
    }
}

/// `(Id + R_{C_r} ... R_{C_1}) / 2`. Its fixed points need not project onto
/// the intersection once three or more sets are involved.
#[derive(Clone, Debug)]
pub struct NaiveMultisetDr<T: Real> {
    sets: Vec<SetRef<T>>,
    dim: usize,
}

impl<T: Real> NaiveMultisetDr<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        let dim = common_dim(&sets, 2)?;
        Ok(Self { sets, dim })
    }
}

impl<T: Real> Operator<T> for NaiveMultisetDr<T> {
    fn label(&self) -> String {
        format!("naive-dr[{}]", join_names(&self.sets))
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let mut cur = x.as_slice().to_vec();
        let mut next = vec![T::zero(); self.dim];
        for set in &self.sets {
            reflect_into(set.as_ref(), &cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        let half = T::lit(0.5);
        Ok(Vector::combine(half, x, half, &cur.into()))
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.sets[0].project(x)
    }
}

/// Cyclic DR `T_{C_r,C_1} T_{C_{r-1},C_r} ... T_{C_1,C_2}`; shadow `P_{C_1}`.
#[derive(Clone, Debug)]
pub struct CyclicDr<T: Real> {
    sets: Vec<SetRef<T>>,
    dim: usize,
}

impl<T: Real> CyclicDr<T> {
    pub fn new(sets: Vec<SetRef<T>>) -> Result<Self> {
        let dim = common_dim(&sets, 2)?;
        Ok(Self { sets, dim })
    }
}

impl<T: Real> Operator<T> for CyclicDr<T> {
    fn label(&self) -> String {
        format!("cyclic-dr[{}]", join_names(&self.sets))
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim, x.dim())?;
        let r = self.sets.len();
        let mut cur = x.as_slice().to_vec();
        let mut next = vec![T::zero(); self.dim];
        for i in 0..r {
            let a = &self.sets[i];
            let b = &self.sets[(i + 1) % r];
            dr_into(a.as_ref(), b.as_ref(), &cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur.into())
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.sets[0].project(x)
    }
}

/// Cyclically anchored DR `T_{C_1,C_r} ... T_{C_1,C_2}` with anchor `C_1`;
/// shadow `P_{C_1}`.
#[derive(Clone, Debug)]
pub struct AnchoredDr<T: Real> {
    anchor: SetRef<T>,
    others: Vec<SetRef<T>>,
}

impl<T: Real> AnchoredDr<T> {
    pub fn new(anchor: SetRef<T>, others: Vec<SetRef<T>>) -> Result<Self> {
        common_dim(&others, 1)?;
        check_dim(anchor.dim(), others[0].dim())?;
        Ok(Self { anchor, others })
    }
}

impl<T: Real> Operator<T> for AnchoredDr<T> {
    fn label(&self) -> String {
        format!(
            "anchored-dr[anchor={}; {}]",
            self.anchor.name(),
            join_names(&self.others)
        )
    }

    fn dim(&self) -> usize {
        self.anchor.dim()
    }

    fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        check_dim(self.dim(), x.dim())?;
        let mut cur = x.as_slice().to_vec();
        let mut next = vec![T::zero(); x.dim()];
        for other in &self.others {
            dr_into(self.anchor.as_ref(), other.as_ref(), &cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur.into())
    }

    fn shadow(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.anchor.project(x)
    }
}

/// `(a, P_B(a))` where `a` is the reported shadow of a DR run on `(A, B)`.
/// When the gap between the sets is attained this approximates a best
/// approximation pair.
pub fn best_approximation_pair<T: Real>(
    report: &SolveReport<T>,
    _a: &dyn ProjectableSet<T>,
    b: &dyn ProjectableSet<T>,
) -> Result<(Vector<T>, Vector<T>)> {
    let a_point = report.shadow.clone().ok_or(Error::MissingShadow)?;
    let b_point = b.project(&a_point)?;
    Ok((a_point, b_point))
}
