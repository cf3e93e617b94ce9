//! Real symmetric 3x3 matrices indexed by spatial axes, and their top
//! eigenpair via the same Jacobi kernel used for the complex solver.

use super::{eigh, Complex64, HermitianMatrix, Matrix};

/// Spatial axis label for Pauli operators and 3x3 matrix indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn unit(self) -> [f64; 3] {
        let mut n = [0.0; 3];
        n[self.index()] = 1.0;
        n
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// Exactly symmetric 3x3 real matrix stored as its six independent entries.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymmetricMatrix3 {
    xx: f64,
    yy: f64,
    zz: f64,
    xy: f64,
    xz: f64,
    yz: f64,
}

impl SymmetricMatrix3 {
    pub fn new(xx: f64, yy: f64, zz: f64, xy: f64, xz: f64, yz: f64) -> Self {
        Self {
            xx,
            yy,
            zz,
            xy,
            xz,
            yz,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, row: Axis, col: Axis) -> f64 {
        match (row.index(), col.index()) {
            (0, 0) => self.xx,
            (1, 1) => self.yy,
            (2, 2) => self.zz,
            (0, 1) | (1, 0) => self.xy,
            (0, 2) | (2, 0) => self.xz,
            _ => self.yz,
        }
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        [
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ]
    }

    /// C·n for a real 3-vector.
    pub fn apply(&self, n: [f64; 3]) -> [f64; 3] {
        let r = self.rows();
        [
            r[0][0] * n[0] + r[0][1] * n[1] + r[0][2] * n[2],
            r[1][0] * n[0] + r[1][1] * n[1] + r[1][2] * n[2],
            r[2][0] * n[0] + r[2][1] * n[1] + r[2][2] * n[2],
        ]
    }

    /// Rayleigh quotient n·C·n (n is assumed unit).
    pub fn quadratic_form(&self, n: [f64; 3]) -> f64 {
        let cn = self.apply(n);
        n[0] * cn[0] + n[1] * cn[1] + n[2] * cn[2]
    }

    pub fn frobenius_norm(&self) -> f64 {
        let r = self.rows();
        r.iter()
            .flatten()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }
}

/// Largest eigenvalue of a symmetric 3x3 matrix together with a unit vector
/// attaining it. Degenerate top eigenvalues are fine; the returned direction
/// is the deterministic choice made by the shared Jacobi kernel.
pub fn max_eig_sym3(c: &SymmetricMatrix3) -> (f64, [f64; 3]) {
    let rows = c.rows();
    let mut m = Matrix::zeros(3);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, Complex64::new(x, 0.0));
        }
    }
    // real input stays real through the rotations
    let eig = eigh(&HermitianMatrix::from_exact(m))
        .expect("3x3 symmetric Jacobi always converges");
    let top = eig.vector(2);
    let mut n = [top[0].re, top[1].re, top[2].re];
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    for x in n.iter_mut() {
        *x /= norm;
    }
    (eig.values()[2], n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_diagonal() {
        let c = SymmetricMatrix3::new(4.0, 4.0, 0.0, 0.0, 0.0, 0.0);
        let (cmax, n) = max_eig_sym3(&c);
        assert_eq!(cmax, 4.0);
        assert!((c.quadratic_form(n) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let (cmax, n) = max_eig_sym3(&SymmetricMatrix3::zero());
        assert_eq!(cmax, 0.0);
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dominates_random_rayleigh_quotients() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for _ in 0..50 {
            let c = SymmetricMatrix3::new(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let (cmax, n_opt) = max_eig_sym3(&c);
            assert!((c.quadratic_form(n_opt) - cmax).abs() < 1e-10);
            let mut best = f64::NEG_INFINITY;
            for _ in 0..10_000 {
                let v = [
                    rng.random_range(-1.0..1.0f64),
                    rng.random_range(-1.0..1.0f64),
                    rng.random_range(-1.0..1.0f64),
                ];
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if norm < 1e-3 {
                    continue;
                }
                let u = [v[0] / norm, v[1] / norm, v[2] / norm];
                let q = c.quadratic_form(u);
                assert!(q <= cmax + 1e-10);
                best = best.max(q);
            }
            // sampled maximum approaches the eigenvalue
            assert!(best > cmax - 1e-2 * c.frobenius_norm().max(1.0));
        }
    }
}
