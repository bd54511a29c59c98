use super::calculus::WordContext;
use super::unipotent::exp_nilpotent;
use crate::error::{Error, Result};
use crate::linalg::rational::{qi, QVector};
use crate::linalg::QMatrix;
use crate::roots::Functional;

/// `w = exp(X) exp(-Y) exp(X)` for an `sl2`-triple `(X, H, Y)` through a root vector `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub root: Functional,
    pub matrix: QMatrix,
    /// `M` with `w^-1 S_i w = sum_j M_ij S_j` on the split generators; functionals map by `M`.
    pub induced: QMatrix,
}

impl WeylElement {
    /// Functional `chi'` with `Ad(w) g_chi = g_chi'`.
    pub fn apply(&self, f: &Functional) -> Functional {
        Functional::new(self.induced.mul_vec(f.coords()))
    }

    pub fn inverse_matrix(&self) -> QMatrix {
        self.matrix.inverse().expect("Weyl elements are invertible")
    }
}

pub fn weyl_element_from_root(ctx: &WordContext<'_>, x: &QMatrix) -> Result<WeylElement> {
    let alg = ctx.algebra();
    let sys = ctx.system();
    let xc = alg.coordinates_of(x)?;
    if xc.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::NotARoot);
    }
    let mu = sys
        .roots()
        .iter()
        .find(|(_, s)| s.contains(&xc))
        .map(|(f, _)| f.clone())
        .ok_or(Error::NotARoot)?;
    let neg = sys.root_space(&mu.neg()).ok_or(Error::NoRationalTriple)?;
    let d = alg.dim();

    // Y0 in g_{-mu} with ad(X)^2 Y0 = -2X, then H = [X, Y0] satisfies [H, X] = 2X.
    let ad_x = alg.ad(&xc);
    let ad2 = &ad_x * &ad_x;
    let cols: Vec<QVector> = neg.basis().iter().map(|v| ad2.mul_vec(v)).collect();
    let rhs: QVector = xc.iter().map(|c| c * qi(-2)).collect();
    let c = QMatrix::from_columns(&cols, d).solve(&rhs).ok_or(Error::NoRationalTriple)?;
    let y0 = neg.combine(&c);
    let h = alg.bracket(&xc, &y0);

    // Y with [X, Y] = H and [H, Y] = -2Y.
    let shifted = &alg.ad(&h) + &QMatrix::identity(d).scale(&qi(2));
    let system = QMatrix::vstack(&[ad_x, shifted])?;
    let mut target = h.clone();
    target.extend(std::iter::repeat_n(qi(0), d));
    let yc = system.solve(&target).ok_or(Error::NoRationalTriple)?;

    let ex = exp_nilpotent(x)?;
    let ey = exp_nilpotent(&alg.matrix_of(&yc)?.scale(&qi(-1)))?;
    let w = &(&ex * &ey) * &ex;
    let w_inv = w.inverse()?;

    let split: Vec<QMatrix> = sys
        .subalgebra()
        .split_parts(alg)?
        .iter()
        .map(|s| alg.matrix_of(s))
        .collect::<Result<_>>()?;
    let vecs: Vec<QVector> = split.iter().map(QMatrix::vectorize).collect();
    let frame = QMatrix::from_columns(&vecs, x.rows() * x.rows());
    let rows = split
        .iter()
        .map(|s| frame.solve(&(&(&w_inv * s) * &w).vectorize()).ok_or(Error::NotNormalizing))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeylElement { root: mu, matrix: w, induced: QMatrix::from_rows(rows)? })
}
