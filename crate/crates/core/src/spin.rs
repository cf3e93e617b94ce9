//! Spin operators and the XX-chain Hamiltonian with Dzyaloshinskii-Moriya
//! interaction under homogeneous and staggered z-fields:
//!
//! ```text
//! H = 1/2 [ sum_i J (sx_i sx_{i+1} + sy_i sy_{i+1} + D (sx_i sy_{i+1} - sy_i sx_{i+1}))
//!         + sum_i f_i sz_i ],   f_i = B + b on odd sites, B - b on even sites
//! ```
//!
//! Basis convention: computational basis |00>, |01>, |10>, |11> with spin 1
//! as the most significant bit and sz|0> = +|0>. Chains with more than two
//! sites are open (no periodic wrap term); the DM vector points along z.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Axis, HermitianMatrix, Matrix};

/// Largest supported chain length (dense 2^N storage).
pub const MAX_SITES: usize = 12;

/// Physical knobs of a scenario; dimensionless energy units with k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Exchange coupling J; negative is the ferromagnetic convention.
    #[serde(rename = "J")]
    pub coupling: f64,
    /// Homogeneous z-field B.
    #[serde(rename = "B")]
    pub homogeneous_field: f64,
    /// Staggered z-field b: +b on odd sites, -b on even sites.
    #[serde(rename = "b")]
    pub staggered_field: f64,
    /// Dzyaloshinskii-Moriya strength D.
    #[serde(rename = "D")]
    pub dm_coupling: f64,
    /// Temperature T; must be positive for thermal operations.
    #[serde(rename = "T")]
    pub temperature: f64,
    /// Number of spins in the chain.
    #[serde(rename = "N")]
    pub sites: usize,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            coupling: -1.0,
            homogeneous_field: 0.0,
            staggered_field: 0.0,
            dm_coupling: 0.0,
            temperature: 0.7,
            sites: 2,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.coupling,
            self.homogeneous_field,
            self.staggered_field,
            self.dm_coupling,
            self.temperature,
        ];
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteParams);
        }
        if self.sites < 2 || self.sites > MAX_SITES {
            return Err(Error::SitesOutOfRange {
                sites: self.sites,
                max: MAX_SITES,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    /// Energy scale of the single-excitation doublet,
    /// gamma = sqrt(b^2 + J^2 (1 + D^2)).
    pub fn gamma(&self) -> f64 {
        let j2 = self.coupling * self.coupling;
        let d2 = self.dm_coupling * self.dm_coupling;
        (self.staggered_field * self.staggered_field + j2 * (1.0 + d2)).sqrt()
    }
}

/// Unit vector on the Bloch sphere selecting a rotation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction([f64; 3]);

impl Direction {
    pub const X: Direction = Direction([1.0, 0.0, 0.0]);
    pub const Y: Direction = Direction([0.0, 1.0, 0.0]);
    pub const Z: Direction = Direction([0.0, 0.0, 1.0]);

    /// Normalizes the given components; rejects near-zero input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self([x / norm, y / norm, z / norm]))
    }

    pub fn from_axis(axis: Axis) -> Self {
        Self(axis.unit())
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }
}

fn pauli_block(axis: Axis) -> Matrix {
    let c = Complex64::new;
    let mut m = Matrix::zeros(2);
    match axis {
        Axis::X => {
            m.set(0, 1, c(1.0, 0.0));
            m.set(1, 0, c(1.0, 0.0));
        }
        Axis::Y => {
            m.set(0, 1, c(0.0, -1.0));
            m.set(1, 0, c(0.0, 1.0));
        }
        Axis::Z => {
            m.set(0, 0, c(1.0, 0.0));
            m.set(1, 1, c(-1.0, 0.0));
        }
    }
    m
}

/// Embeds a single-site block at `site` (1-based) into the 2^sites space.
fn embed_single(block: &Matrix, site: usize, sites: usize) -> Matrix {
    let left = Matrix::identity(1 << (site - 1));
    let right = Matrix::identity(1 << (sites - site));
    left.kron(block).kron(&right)
}

/// Embeds a two-site block acting on (site, site + 1).
fn embed_pair(block: &Matrix, site: usize, sites: usize) -> Matrix {
    let left = Matrix::identity(1 << (site - 1));
    let right = Matrix::identity(1 << (sites - site - 1));
    left.kron(block).kron(&right)
}

/// Pauli operator on one site of the chain: I ⊗ ... ⊗ σ_axis ⊗ ... ⊗ I.
pub fn pauli_site(axis: Axis, site: usize, sites: usize) -> Result<HermitianMatrix> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::SitesOutOfRange {
            sites,
            max: MAX_SITES,
        });
    }
    if site == 0 || site > sites {
        return Err(Error::SiteOutOfRange { site, sites });
    }
    Ok(HermitianMatrix::from_exact(embed_single(
        &pauli_block(axis),
        site,
        sites,
    )))
}

/// Exchange-plus-DM block acting on two neighbouring sites:
/// J (sx⊗sx + sy⊗sy) + J D (sx⊗sy − sy⊗sx).
fn coupling_block(coupling: f64, dm: f64) -> Matrix {
    let sx = pauli_block(Axis::X);
    let sy = pauli_block(Axis::Y);
    let xx = sx.kron(&sx);
    let yy = sy.kron(&sy);
    let xy = sx.kron(&sy);
    let yx = sy.kron(&sx);
    let sym = xx.add(&yy).scaled(Complex64::new(coupling, 0.0));
    let anti = xy.sub(&yx).scaled(Complex64::new(coupling * dm, 0.0));
    sym.add(&anti)
}

/// Chain Hamiltonian for the given parameters (open boundary).
pub fn build_hamiltonian(params: &ModelParams) -> Result<HermitianMatrix> {
    params.validate()?;
    let n = params.sites;
    let dim = params.dim();
    let block = coupling_block(params.coupling, params.dm_coupling);
    let sz = pauli_block(Axis::Z);

    let mut h = Matrix::zeros(dim);
    for site in 1..n {
        h = h.add(&embed_pair(&block, site, n));
    }
    for site in 1..=n {
        let field = if site % 2 == 1 {
            params.homogeneous_field + params.staggered_field
        } else {
            params.homogeneous_field - params.staggered_field
        };
        if field != 0.0 {
            h = h.add(&embed_single(&sz, site, n).scaled(Complex64::new(field, 0.0)));
        }
    }
    Ok(HermitianMatrix::from_exact(h.scaled(Complex64::new(0.5, 0.0))))
}

/// Collective spin operator along a unit direction:
/// 1/2 sum_i (n_x sx_i + n_y sy_i + n_z sz_i).
pub fn collective_operator(direction: &Direction, sites: usize) -> Result<HermitianMatrix> {
    if sites == 0 || sites > MAX_SITES {
        return Err(Error::SitesOutOfRange {
            sites,
            max: MAX_SITES,
        });
    }
    let [nx, ny, nz] = direction.components();
    let mut single = Matrix::zeros(2);
    for (weight, axis) in [(nx, Axis::X), (ny, Axis::Y), (nz, Axis::Z)] {
        if weight != 0.0 {
            single = single.add(&pauli_block(axis).scaled(Complex64::new(weight, 0.0)));
        }
    }
    let dim = 1 << sites;
    let mut total = Matrix::zeros(dim);
    for site in 1..=sites {
        total = total.add(&embed_single(&single, site, sites));
    }
    Ok(HermitianMatrix::from_exact(
        total.scaled(Complex64::new(0.5, 0.0)),
    ))
}

/// Closed-form spectrum of the two-spin Hamiltonian.
///
/// Energies are ordered (-B, B, -gamma, gamma) and pair with the vectors
/// |11>, |00>, and the two normalized middle-block states. When J = 0 the
/// middle block is diagonal and the basis vectors |01>, |10> are returned
/// with norms 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSpectrum {
    pub gamma: f64,
    pub energies: [f64; 4],
    pub vectors: [[Complex64; 4]; 4],
    pub norm1: f64,
    pub norm2: f64,
}

impl AnalyticSpectrum {
    /// Energy/vector pairs in the stored order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, &[Complex64; 4])> {
        self.energies.iter().copied().zip(self.vectors.iter())
    }
}

/// Diagonalizes the two-spin Hamiltonian in closed form.
pub fn analytic_spectrum(params: &ModelParams) -> Result<AnalyticSpectrum> {
    params.validate()?;
    if params.sites != 2 {
        return Err(Error::TwoSpinsOnly {
            sites: params.sites,
        });
    }
    let c = Complex64::new;
    let gamma = params.gamma();
    let field = params.homogeneous_field;
    let stagger = params.staggered_field;
    let energies = [-field, field, -gamma, gamma];

    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let mut vectors = [[zero; 4]; 4];
    vectors[0][3] = one; // |11> at energy -B
    vectors[1][0] = one; // |00> at energy +B

    let (norm1, norm2);
    if params.coupling == 0.0 {
        // middle block is diagonal with energies (b, -b) on (|01>, |10>)
        norm1 = 1.0;
        norm2 = 1.0;
        if stagger >= 0.0 {
            vectors[2][2] = one; // energy -gamma = -b at |10>
            vectors[3][1] = one; // energy +gamma = +b at |01>
        } else {
            vectors[2][1] = one;
            vectors[3][2] = one;
        }
    } else {
        // denominator J (i + D) as a complex number
        let denom = c(params.coupling * params.dm_coupling, params.coupling);
        norm1 = (1.0 + ((gamma - stagger) / denom.norm()).powi(2)).sqrt();
        norm2 = (1.0 + ((gamma + stagger) / denom.norm()).powi(2)).sqrt();
        // -i (gamma - b) / (J (i + D)) on |01>, 1 on |10>
        let low = c(0.0, -(gamma - stagger)) / denom;
        vectors[2][1] = low / norm1;
        vectors[2][2] = one / norm1;
        // +i (gamma + b) / (J (i + D)) on |01>, 1 on |10>
        let high = c(0.0, gamma + stagger) / denom;
        vectors[3][1] = high / norm2;
        vectors[3][2] = one / norm2;
    }

    Ok(AnalyticSpectrum {
        gamma,
        energies,
        vectors,
        norm1,
        norm2,
    })
}
