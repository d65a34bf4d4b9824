//! Dense solves with one round of iterative refinement and a residual check.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest accepted max-norm residual.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

pub fn solve_refined(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    let lu = a.clone().lu();
    let mut x = lu
        .solve(b)
        .ok_or_else(|| Error::Numerical("singular system in LU solve".into()))?;
    let r = b - a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    let residual = (b - a * &x).amax();
    if !residual.is_finite() || residual > RESIDUAL_TOLERANCE {
        return Err(Error::Numerical(format!(
            "solve residual {residual:e} exceeds {RESIDUAL_TOLERANCE:e}"
        )));
    }
    Ok(x)
}

pub fn inverse_refined(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let lu = a.clone().lu();
    let mut z = lu
        .try_inverse()
        .ok_or_else(|| Error::Numerical("singular matrix in LU inversion".into()))?;
    let identity = DMatrix::<f64>::identity(n, n);
    // Z <- Z + Z (I - A Z)
    let r = &identity - a * &z;
    z += &z * r;
    let residual = (a * &z - &identity).amax();
    if !residual.is_finite() || residual > RESIDUAL_TOLERANCE {
        return Err(Error::Numerical(format!(
            "inverse residual {residual:e} exceeds {RESIDUAL_TOLERANCE:e}"
        )));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let b = DVector::from_vec(vec![3.0, 5.0]);
        let x = solve_refined(&a, &b).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(inverse_refined(&a), Err(Error::Numerical(_))));
        let b = DVector::from_vec(vec![1.0, 1.0]);
        assert!(matches!(solve_refined(&a, &b), Err(Error::Numerical(_))));
    }
}
