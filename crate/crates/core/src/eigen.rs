//! Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.

use alloc::vec::Vec;

use crate::math::sqrt;

/// Eigenvalues of the symmetric row-major `m×m` matrix `a`, ascending.
pub(crate) fn symmetric_eigenvalues(a: &[f64], m: usize) -> Vec<f64> {
    let mut a = a.to_vec();
    let frob = a.iter().map(|x| x * x).sum::<f64>();
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum();
        if off <= 1e-30 * frob || off == 0.0 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                // Exact zeroing keeps the off-diagonal mass monotone.
                a[p * m + q] = 0.0;
                a[q * m + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn diagonal_and_two_by_two() {
        assert_eq!(symmetric_eigenvalues(&[3.0, 0.0, 0.0, -1.0], 2), vec![-1.0, 3.0]);
        let e = symmetric_eigenvalues(&[2.0, 1.0, 1.0, 2.0], 2);
        assert!((e[0] - 1.0).abs() < 1e-15 && (e[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn trace_and_frobenius_preserved() {
        let m = 7;
        let mut a = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let v = ((i * 31 + j * 17) % 13) as f64 - 6.0;
                a[i * m + j] = v;
                a[j * m + i] = v;
            }
        }
        let e = symmetric_eigenvalues(&a, m);
        let trace: f64 = (0..m).map(|i| a[i * m + i]).sum();
        let frob: f64 = a.iter().map(|x| x * x).sum();
        assert!((e.iter().sum::<f64>() - trace).abs() < 1e-12);
        assert!((e.iter().map(|x| x * x).sum::<f64>() - frob).abs() < 1e-10);
    }
}
