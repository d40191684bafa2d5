use super::DenseMatrix;
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a symmetric matrix, descending, by cyclic Jacobi
/// rotations. Stops once the off-diagonal Frobenius norm is at most
/// `1e-10 * ‖A‖_F`.
pub fn symmetric_spectrum(matrix: &DenseMatrix) -> Result<Vec<f64>> {
    let n = matrix.n();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (matrix.get(i, j) - matrix.get(j, i)).abs();
            if gap > SYMMETRY_TOL {
                return Err(Error::Asymmetric {
                    row: i,
                    col: j,
                    gap,
                });
            }
        }
    }

    let mut a = matrix.clone();
    let target = OFF_DIAGONAL_TOL * matrix.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        sweep(&mut a);
    }
    if off_diagonal_norm(&a) > target {
        return Err(Error::NotConverged {
            iterations: MAX_SWEEPS,
            residual: off_diagonal_norm(&a),
            estimate: (0..n)
                .map(|i| a.get(i, i))
                .fold(f64::NEG_INFINITY, f64::max),
        });
    }

    let mut values: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.n();
    let mut sum = 0.0;
    for i in 0..n {
        for (j, v) in a.row(i).iter().enumerate() {
            if i != j {
                sum += v * v;
            }
        }
    }
    sum.sqrt()
}

fn sweep(a: &mut DenseMatrix) {
    let n = a.n();
    for p in 0..n {
        for q in p + 1..n {
            let apq = a.get(p, q);
            if apq == 0.0 {
                continue;
            }
            let app = a.get(p, p);
            let aqq = a.get(q, q);
            let theta = (aqq - app) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let tau = s / (1.0 + c);

            let data = a.data_mut();
            data[p * n + p] = app - t * apq;
            data[q * n + q] = aqq + t * apq;
            data[p * n + q] = 0.0;
            data[q * n + p] = 0.0;
            for r in 0..n {
                if r == p || r == q {
                    continue;
                }
                let arp = data[r * n + p];
                let arq = data[r * n + q];
                let new_rp = arp - s * (arq + tau * arp);
                let new_rq = arq + s * (arp - tau * arq);
                data[r * n + p] = new_rp;
                data[p * n + r] = new_rp;
                data[r * n + q] = new_rq;
                data[q * n + r] = new_rq;
            }
        }
    }
}
