//! Orthonormal DCT-II, as an explicit matrix and as an FFT-backed plan.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// k×k orthonormal DCT-II matrix. Row 0 is `1/√k`; row `i ≥ 1` is
/// `√(2/k)·cos(π(2j+1)i/(2k))`.
pub fn dct_matrix(k: usize) -> DMatrix<f64> {
    assert!(k >= 1, "DCT size must be positive");
    let kf = k as f64;
    let c0 = (1.0 / kf).sqrt();
    let c = (2.0 / kf).sqrt();
    DMatrix::from_fn(k, k, |i, j| {
        if i == 0 {
            c0
        } else {
            c * (PI * (2 * j + 1) as f64 * i as f64 / (2.0 * kf)).cos()
        }
    })
}

/// Length-`len` orthonormal DCT-II / DCT-III pair computed through one complex FFT
/// of the same length (even/odd reordering).
#[derive(Clone)]
pub struct DctPlan {
    len: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    // e^{-iπk/(2N)}
    twiddle: Vec<Complex64>,
    // orthonormal scale for coefficient k
    scale: Vec<f64>,
}

impl fmt::Debug for DctPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DctPlan").field("len", &self.len).finish()
    }
}

impl DctPlan {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1, "DCT size must be positive");
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(len);
        let ifft = planner.plan_fft_inverse(len);
        let n = len as f64;
        let twiddle = (0..len)
            .map(|k| Complex64::from_polar(1.0, -PI * k as f64 / (2.0 * n)))
            .collect();
        let scale = (0..len)
            .map(|k| if k == 0 { (1.0 / n).sqrt() } else { (2.0 / n).sqrt() })
            .collect();
        Self {
            len,
            fft,
            ifft,
            twiddle,
            scale,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place forward transform (multiplication by [`dct_matrix`]).
    pub fn forward(&self, x: &mut [f64]) {
        self.forward_with(x, &mut Workspace::default());
    }

    /// In-place inverse transform (multiplication by the transpose of [`dct_matrix`]).
    pub fn inverse(&self, c: &mut [f64]) {
        self.inverse_with(c, &mut Workspace::default());
    }

    fn forward_with(&self, x: &mut [f64], ws: &mut Workspace) {
        let n = self.len;
        assert_eq!(x.len(), n);
        if n == 1 {
            return;
        }
        ws.prepare(n, self.fft.get_inplace_scratch_len());
        let buf = &mut ws.buf;
        let half = n.div_ceil(2);
        for k in 0..half {
            buf[k] = Complex64::new(x[2 * k], 0.0);
        }
        for k in 0..n / 2 {
            buf[n - 1 - k] = Complex64::new(x[2 * k + 1], 0.0);
        }
        self.fft.process_with_scratch(buf.as_mut_slice(), &mut ws.scratch);
        let buf = &ws.buf;
        for k in 0..n {
            x[k] = self.scale[k] * (self.twiddle[k] * buf[k]).re;
        }
    }

    fn inverse_with(&self, c: &mut [f64], ws: &mut Workspace) {
        let n = self.len;
        assert_eq!(c.len(), n);
        if n == 1 {
            return;
        }
        ws.prepare(n, self.ifft.get_inplace_scratch_len());
        let buf = &mut ws.buf;
        // Undo the orthonormal scale, then rebuild the half-spectrum:
        // W^k V[k] = c'[k] - i c'[n-k].
        let unscaled = |k: usize| c[k] / self.scale[k];
        buf[0] = Complex64::new(unscaled(0), 0.0);
        for k in 1..n {
            let z = Complex64::new(unscaled(k), -unscaled(n - k));
            buf[k] = z * self.twiddle[k].conj();
        }
        self.ifft.process_with_scratch(buf.as_mut_slice(), &mut ws.scratch);
        let buf = &ws.buf;
        let inv_n = 1.0 / n as f64;
        let half = n.div_ceil(2);
        for k in 0..half {
            c[2 * k] = buf[k].re * inv_n;
        }
        for k in 0..n / 2 {
            c[2 * k + 1] = buf[n - 1 - k].re * inv_n;
        }
    }

    /// Applies the forward transform to every column of `m` (left-multiplication by D).
    pub fn forward_columns(&self, m: &mut DMatrix<f64>) {
        assert_eq!(m.nrows(), self.len);
        let mut ws = Workspace::default();
        for mut col in m.column_iter_mut() {
            self.forward_with(col.as_mut_slice(), &mut ws);
        }
    }

    pub fn inverse_columns(&self, m: &mut DMatrix<f64>) {
        assert_eq!(m.nrows(), self.len);
        let mut ws = Workspace::default();
        for mut col in m.column_iter_mut() {
            self.inverse_with(col.as_mut_slice(), &mut ws);
        }
    }

    /// Applies the forward transform to every row of `m` (right-multiplication by Dᵀ).
    pub fn forward_rows(&self, m: &mut DMatrix<f64>) {
        self.along_rows(m, Self::forward_with);
    }

    pub fn inverse_rows(&self, m: &mut DMatrix<f64>) {
        self.along_rows(m, Self::inverse_with);
    }

    fn along_rows(&self, m: &mut DMatrix<f64>, op: impl Fn(&Self, &mut [f64], &mut Workspace)) {
        assert_eq!(m.ncols(), self.len);
        let mut t = m.transpose();
        let mut ws = Workspace::default();
        for mut col in t.column_iter_mut() {
            op(self, col.as_mut_slice(), &mut ws);
        }
        m.tr_copy_from(&t);
    }
}

#[derive(Default)]
struct Workspace {
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Workspace {
    fn prepare(&mut self, n: usize, scratch: usize) {
        self.buf.resize(n, Complex64::default());
        self.scratch.resize(scratch, Complex64::default());
    }
}
