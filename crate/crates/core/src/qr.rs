//! Householder QR with column-norm pivoting for small dense complex matrices.
//!
//! Factors a tall matrix `B` (`rows ≥ cols`) as `B·P = Q·U`. It backs the
//! minimum-norm solution of the wide system `Bᴴ·x = t` and the orthogonal
//! projection onto `range(B)ᗮ = null(Bᴴ)`.

use num_complex::Complex64;

use crate::rank::RANK_EPS;

struct Reflector {
    v: Vec<Complex64>,
    beta: f64,
}

impl Reflector {
    /// Applies `I − β·v·vᴴ` to `y` (the trailing part starting at the pivot row).
    fn apply(&self, y: &mut [Complex64]) {
        if self.beta == 0.0 {
            return;
        }
        let s: Complex64 = self.v.iter().zip(y.iter()).map(|(v, y)| v.conj() * y).sum();
        let k = s * self.beta;
        for (y, v) in y.iter_mut().zip(&self.v) {
            *y -= k * v;
        }
    }
}

pub(crate) struct PivotedQr {
    rows: usize,
    /// Columns of `B·P` after reduction; the upper triangle holds `U`.
    columns: Vec<Vec<Complex64>>,
    reflectors: Vec<Reflector>,
    perm: Vec<usize>,
    rank: usize,
}

impl PivotedQr {
    /// `columns[c]` is column `c` of `B`; all columns share one length.
    pub(crate) fn new(mut columns: Vec<Vec<Complex64>>) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        debug_assert!(rows >= cols);
        let mut perm: Vec<usize> = (0..cols).collect();
        let mut reflectors = Vec::with_capacity(cols);

        for j in 0..cols {
            let tail_norm = |c: &Vec<Complex64>| c[j..].iter().map(|z| z.norm_sqr()).sum::<f64>();
            let pivot = (j..cols)
                .max_by(|&x, &y| tail_norm(&columns[x]).total_cmp(&tail_norm(&columns[y])))
                .unwrap_or(j);
            columns.swap(j, pivot);
            perm.swap(j, pivot);

            let x = &columns[j][j..];
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let reflector = if norm == 0.0 {
                Reflector {
                    v: vec![],
                    beta: 0.0,
                }
            } else {
                let head = x[0];
                let phase = if head.norm() == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    head / head.norm()
                };
                let alpha = -phase * norm;
                let mut v = x.to_vec();
                v[0] -= alpha;
                let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                Reflector { v, beta: 2.0 / vv }
            };
            for c in columns.iter_mut().skip(j) {
                reflector.apply(&mut c[j..]);
            }
            reflectors.push(reflector);
        }

        let mut qr = Self {
            rows,
            columns,
            reflectors,
            perm,
            rank: 0,
        };
        qr.rank = qr.detect_rank();
        qr
    }

    fn diag(&self, j: usize) -> Complex64 {
        self.columns[j][j]
    }

    fn detect_rank(&self) -> usize {
        let cols = self.columns.len();
        if cols == 0 {
            return 0;
        }
        let cutoff = RANK_EPS * self.diag(0).norm() * self.rows.max(cols) as f64;
        (0..cols)
            .take_while(|&j| self.diag(j).norm() > cutoff)
            .count()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn is_full_rank(&self) -> bool {
        self.rank == self.columns.len() && self.rank > 0
    }

    /// `Q·z` for a full-length vector `z`.
    fn apply_q(&self, z: &mut [Complex64]) {
        for (j, h) in self.reflectors.iter().enumerate().rev() {
            h.apply(&mut z[j..]);
        }
    }

    /// `Qᴴ·z` for a full-length vector `z`.
    fn apply_q_adjoint(&self, z: &mut [Complex64]) {
        for (j, h) in self.reflectors.iter().enumerate() {
            h.apply(&mut z[j..]);
        }
    }

    /// Least-norm `x` with `Bᴴ·x = t`. Requires full column rank of `B`.
    pub(crate) fn min_norm_solve(&self, t: &[Complex64]) -> Vec<Complex64> {
        let k = self.columns.len();
        debug_assert_eq!(t.len(), k);
        // (B·P)ᴴ = Uᴴ·Qᴴ, so Uᴴ·(Qᴴ·x) = Pᵀ·t; forward-substitute the lower-triangular Uᴴ.
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..k {
            let acc: Complex64 = t[self.perm[i]]
                - self.columns[i][..i]
                    .iter()
                    .zip(&y[..i])
                    .map(|(u, v)| u.conj() * v)
                    .sum::<Complex64>();
            y[i] = acc / self.diag(i).conj();
        }
        self.apply_q(&mut y);
        y
    }

    /// Orthogonal projection of `x` onto `null(Bᴴ)`.
    pub(crate) fn project_null(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut w = x.to_vec();
        self.apply_q_adjoint(&mut w);
        w.iter_mut()
            .take(self.columns.len())
            .for_each(|z| *z = Complex64::new(0.0, 0.0));
        self.apply_q(&mut w);
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn columns() -> Vec<Vec<Complex64>> {
        vec![
            vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(0.5, -0.5)],
            vec![c(0.0, 0.0), c(3.0, 0.0), c(1.0, 1.0), c(-1.0, 0.0)],
        ]
    }

    fn apply_bh(cols: &[Vec<Complex64>], x: &[Complex64]) -> Vec<Complex64> {
        cols.iter()
            .map(|col| col.iter().zip(x).map(|(b, x)| b.conj() * x).sum())
            .collect()
    }

    #[test]
    fn min_norm_solution_solves_and_lies_in_range() {
        let cols = columns();
        let qr = PivotedQr::new(cols.clone());
        assert_eq!(qr.rank(), 2);
        let t = [c(1.0, 0.0), c(-2.0, 0.5)];
        let x = qr.min_norm_solve(&t);
        for (got, want) in apply_bh(&cols, &x).iter().zip(t) {
            assert!((got - want).norm() < 1e-12);
        }
        // Minimum norm: no component in null(Bᴴ).
        let leftover = qr.project_null(&x);
        assert!(leftover.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn null_projection_is_idempotent_and_annihilated() {
        let cols = columns();
        let qr = PivotedQr::new(cols.clone());
        let x = vec![c(1.0, 2.0), c(-1.0, 0.0), c(0.3, 0.1), c(4.0, -2.0)];
        let p = qr.project_null(&x);
        assert!(apply_bh(&cols, &p).iter().all(|z| z.norm() < 1e-12));
        let pp = qr.project_null(&p);
        for (a, b) in p.iter().zip(&pp) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_deficiency_detected() {
        let mut cols = columns();
        let dup: Vec<_> = cols[0].iter().map(|z| z * 2.0).collect();
        cols.push(dup);
        assert_eq!(PivotedQr::new(cols).rank(), 2);
        let zero = vec![vec![c(0.0, 0.0); 3]; 2];
        let qr = PivotedQr::new(zero);
        assert_eq!(qr.rank(), 0);
        assert!(!qr.is_full_rank());
    }
}
