use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid, Error, Result};
use crate::transforms::dct::DctPlan;
use crate::transforms::wavelet::{self, WaveletFamily};

/// Which orthonormal transform a [`SparsifyingBasis`] applies.
///
/// Matrix-shaped kinds (`DctSpatial`, `DctTemporal`, `KroneckerDct`) read their
/// length-`rows·cols` input as a column-major matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `D1·X`: n-point DCT down every column.
    DctSpatial { rows: usize, cols: usize },
    /// `X·D2ᵀ`: t-point DCT along every row.
    DctTemporal { rows: usize, cols: usize },
    /// N-point DCT of the whole vector.
    DctFull(usize),
    /// `D1·X·D2ᵀ`, i.e. `(D2 ⊗ D1)·vec(X)`.
    KroneckerDct { rows: usize, cols: usize },
    /// Unitary N-point DFT. Complex-valued.
    Fourier(usize),
    Wavelet(WaveletFamily, usize),
}

impl BasisKind {
    pub fn len(&self) -> usize {
        match *self {
            BasisKind::DctSpatial { rows, cols }
            | BasisKind::DctTemporal { rows, cols }
            | BasisKind::KroneckerDct { rows, cols } => rows * cols,
            BasisKind::DctFull(n) | BasisKind::Fourier(n) | BasisKind::Wavelet(_, n) => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_matrix_shaped(&self) -> bool {
        matches!(
            self,
            BasisKind::DctSpatial { .. } | BasisKind::DctTemporal { .. } | BasisKind::KroneckerDct { .. }
        )
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::DctSpatial { rows, cols } => write!(f, "dct-spatial({rows}x{cols})"),
            BasisKind::DctTemporal { rows, cols } => write!(f, "dct-temporal({rows}x{cols})"),
            BasisKind::DctFull(n) => write!(f, "dct({n})"),
            BasisKind::KroneckerDct { rows, cols } => write!(f, "dct-kron({rows}x{cols})"),
            BasisKind::Fourier(n) => write!(f, "fourier({n})"),
            BasisKind::Wavelet(w, n) => write!(f, "{w}({n})"),
        }
    }
}

/// An orthonormal transform Ψ with analysis `s = Ψx` ([`forward`](Self::forward))
/// and synthesis `x = Ψ⁻¹s = Ψᵀs` ([`inverse`](Self::inverse)).
#[derive(Clone, Debug)]
pub struct SparsifyingBasis {
    kind: BasisKind,
    row_plan: Option<DctPlan>,
    col_plan: Option<DctPlan>,
}

impl SparsifyingBasis {
    pub fn new(kind: BasisKind) -> Result<Self> {
        if kind.is_empty() {
            return Err(invalid("basis", "transform length must be positive"));
        }
        let (mut row_plan, mut col_plan) = (None, None);
        match kind {
            BasisKind::DctSpatial { rows, .. } => col_plan = Some(DctPlan::new(rows)),
            BasisKind::DctTemporal { cols, .. } => row_plan = Some(DctPlan::new(cols)),
            BasisKind::KroneckerDct { rows, cols } => {
                col_plan = Some(DctPlan::new(rows));
                row_plan = Some(DctPlan::new(cols));
            }
            BasisKind::DctFull(n) => col_plan = Some(DctPlan::new(n)),
            BasisKind::Wavelet(family, n) => wavelet::check_size(family, n)?,
            BasisKind::Fourier(_) => {}
        }
        Ok(Self {
            kind,
            row_plan,
            col_plan,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.kind.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kind.is_empty()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut v = x.to_vec();
        self.forward_in_place(&mut v)?;
        Ok(v)
    }

    pub fn inverse(&self, s: &[f64]) -> Result<Vec<f64>> {
        let mut v = s.to_vec();
        self.inverse_in_place(&mut v)?;
        Ok(v)
    }

    pub fn forward_in_place(&self, x: &mut [f64]) -> Result<()> {
        self.apply(x, true)
    }

    pub fn inverse_in_place(&self, s: &mut [f64]) -> Result<()> {
        self.apply(s, false)
    }

    fn apply(&self, v: &mut [f64], forward: bool) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                actual: v.len(),
            });
        }
        match self.kind {
            BasisKind::DctFull(_) => {
                let plan = self.col_plan.as_ref().expect("plan built in new");
                if forward {
                    plan.forward(v)
                } else {
                    plan.inverse(v)
                }
            }
            BasisKind::Wavelet(family, _) => {
                if forward {
                    wavelet::wavelet_forward(family, v)?
                } else {
                    wavelet::wavelet_inverse(family, v)?
                }
            }
            BasisKind::DctSpatial { rows, cols }
            | BasisKind::DctTemporal { rows, cols }
            | BasisKind::KroneckerDct { rows, cols } => {
                let mut m = DMatrix::from_column_slice(rows, cols, v);
                if let Some(p) = &self.col_plan {
                    if forward {
                        p.forward_columns(&mut m)
                    } else {
                        p.inverse_columns(&mut m)
                    }
                }
                if let Some(p) = &self.row_plan {
                    if forward {
                        p.forward_rows(&mut m)
                    } else {
                        p.inverse_rows(&mut m)
                    }
                }
                v.copy_from_slice(m.as_slice());
            }
            BasisKind::Fourier(_) => return Err(Error::ComplexBasis(self.kind.to_string())),
        }
        Ok(())
    }

    /// Unitary DFT analysis `s = Fx`, `F(k,j) = e^{-2πi jk/N}/√N`. Valid for every kind.
    pub fn forward_complex(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply_complex(x, true)
    }

    pub fn inverse_complex(&self, s: &[Complex64]) -> Result<Vec<Complex64>> {
        self.apply_complex(s, false)
    }

    fn apply_complex(&self, x: &[Complex64], forward: bool) -> Result<Vec<Complex64>> {
        let BasisKind::Fourier(n) = self.kind else {
            let re: Vec<f64> = x.iter().map(|c| c.re).collect();
            let im: Vec<f64> = x.iter().map(|c| c.im).collect();
            let (re, im) = if forward {
                (self.forward(&re)?, self.forward(&im)?)
            } else {
                (self.inverse(&re)?, self.inverse(&im)?)
            };
            return Ok(re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect());
        };
        if x.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: x.len(),
            });
        }
        let mut planner = FftPlanner::new();
        let fft = if forward {
            planner.plan_fft_forward(n)
        } else {
            planner.plan_fft_inverse(n)
        };
        let mut buf = x.to_vec();
        fft.process(&mut buf);
        let scale = 1.0 / (n as f64).sqrt();
        buf.iter_mut().for_each(|c| *c *= scale);
        Ok(buf)
    }

    /// Dense Ψ⁻¹ (synthesis matrix; columns are basis vectors) for real kinds.
    pub fn synthesis_matrix(&self) -> Result<DMatrix<f64>> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            self.inverse_in_place(&mut e)?;
            m.column_mut(j).copy_from_slice(&e);
        }
        Ok(m)
    }

    /// Dense complex Ψ⁻¹; for real kinds this is the real synthesis matrix.
    pub fn synthesis_matrix_complex(&self) -> Result<DMatrix<Complex64>> {
        match self.kind {
            BasisKind::Fourier(n) => Ok(inverse_fourier_matrix(n)),
            _ => Ok(self.synthesis_matrix()?.map(|v| Complex64::new(v, 0.0))),
        }
    }
}

/// Unitary inverse DFT matrix, `F⁻¹(j,k) = e^{2πi jk/N}/√N`.
pub fn inverse_fourier_matrix(n: usize) -> DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |j, k| {
        let phase = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
        Complex64::from_polar(scale, phase)
    })
}
