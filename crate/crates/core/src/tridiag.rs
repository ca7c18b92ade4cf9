//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, eigenvectors
//! by inverse iteration.

#[derive(Debug, Clone)]
pub(crate) struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        debug_assert_eq!(off.len() + 1, diag.len());
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut pivot = self.diag[0] - x;
        if pivot < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let p = if pivot == 0.0 { f64::EPSILON * self.off[i - 1].abs().max(f64::MIN_POSITIVE) } else { pivot };
            pivot = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / p;
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (zero-based).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len());
        let (mut lo, mut hi) = self.gershgorin();
        let pad = (hi - lo).abs().max(1.0) * 1e-12;
        lo -= pad;
        hi += pad;
        loop {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + 0.5 * (hi - lo)
    }

    /// Eigenvector for an eigenvalue approximation `lambda`, unit 2-norm.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let scale = self.diag.iter().fold(1.0f64, |acc, d| acc.max(d.abs()));
        let shift = lambda + scale * 1e-13;
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..3 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// Solve `(T - shift I) x = b` by Gaussian elimination with partial
    /// pivoting.
    fn solve_shifted(&self, shift: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        // row i holds (sub, main, sup, sup2) after pivoting
        let mut sub: Vec<f64> = (0..n).map(|i| if i > 0 { self.off[i - 1] } else { 0.0 }).collect();
        let mut main: Vec<f64> = self.diag.iter().map(|d| d - shift).collect();
        let mut sup: Vec<f64> = (0..n).map(|i| if i + 1 < n { self.off[i] } else { 0.0 }).collect();
        let mut sup2 = vec![0.0; n];
        let mut rhs = b.to_vec();
        let tiny = f64::EPSILON * main.iter().fold(1.0f64, |a, x| a.max(x.abs()));

        for i in 0..n - 1 {
            if sub[i + 1].abs() > main[i].abs() {
                // swap rows i and i + 1
                let (m0, s0, t0, r0) = (main[i], sup[i], sup2[i], rhs[i]);
                main[i] = sub[i + 1];
                sup[i] = main[i + 1];
                sup2[i] = sup[i + 1];
                rhs[i] = rhs[i + 1];
                sub[i + 1] = m0;
                main[i + 1] = s0;
                sup[i + 1] = t0;
                rhs[i + 1] = r0;
            }
            if main[i] == 0.0 {
                main[i] = tiny;
            }
            let f = sub[i + 1] / main[i];
            main[i + 1] -= f * sup[i];
            sup[i + 1] -= f * sup2[i];
            rhs[i + 1] -= f * rhs[i];
        }
        if main[n - 1] == 0.0 {
            main[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            if i + 1 < n {
                acc -= sup[i] * x[i + 1];
            }
            if i + 2 < n {
                acc -= sup2[i] * x[i + 2];
            }
            x[i] = acc / main[i];
        }
        x
    }
}

/// Sign changes of `v`, ignoring entries below `1e-10 * max|v|`.
pub(crate) fn sign_changes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let floor = 1e-10 * peak;
    let mut count = 0;
    let mut prev = 0.0f64;
    for &x in v {
        if x.abs() > floor {
            if prev != 0.0 && (x < 0.0) != (prev < 0.0) {
                count += 1;
            }
            prev = x;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Second-difference matrix tridiag(-1, 2, -1): eigenvalues
    /// 2 - 2 cos(k pi / (n + 1)).
    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        for k in 0..n {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((t.eigenvalue(k) - want).abs() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn eigenvectors_have_k_nodes() {
        let t = laplacian(200);
        for k in 0..6 {
            let lambda = t.eigenvalue(k);
            let v = t.eigenvector(lambda);
            assert_eq!(sign_changes(&v), k);
            // residual |T v - lambda v|
            let n = t.len();
            let res = (0..n)
                .map(|i| {
                    let mut tv = t.diag[i] * v[i];
                    if i > 0 {
                        tv += t.off[i - 1] * v[i - 1];
                    }
                    if i + 1 < n {
                        tv += t.off[i] * v[i + 1];
                    }
                    (tv - lambda * v[i]).abs()
                })
                .fold(0.0f64, f64::max);
            assert!(res < 1e-10);
        }
    }

    #[test]
    fn count_below_brackets() {
        let t = SymTridiagonal::new(vec![1.0, 2.0, 3.0], vec![0.0, 0.0]);
        assert_eq!(t.count_below(0.5), 0);
        assert_eq!(t.count_below(1.5), 1);
        assert_eq!(t.count_below(10.0), 3);
    }
}
