//! Periodized orthogonal wavelet transforms with a full dyadic decomposition.
//!
//! Coefficient layout for length `N = 2^J` is
//! `[a_J, d_J, d_{J-1}, …, d_1]`, coarsest first, where the finest detail band
//! `d_1` occupies the last `N/2` slots. Analysis at one level is
//! `a[k] = Σ h[m]·x[(2k+m) mod L]`, `d[k] = Σ g[m]·x[(2k+m) mod L]` with
//! `g[m] = (-1)^m h[len-1-m]`, so the finest rows of the matrix carry the raw taps.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};

const HAAR: [f64; 2] = [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2];

const DB2: [f64; 4] = [
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
];

const DB3: [f64; 6] = [
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
];

const DB4: [f64; 8] = [
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

const COIF2: [f64; 12] = [
    0.01638733646320364,
    -0.04146493678687178,
    -0.0673725547237256,
    0.3861100668227629,
    0.8127236354494135,
    0.4170051844232391,
    -0.07648859907828076,
    -0.05943441864643109,
    0.02368017194684777,
    0.005611434819368834,
    -0.0018232088709110323,
    -0.000720549445520347,
];

const COIF4: [f64; 24] = [
    0.000892313902537003,
    -0.001629492425226786,
    -0.007346167936268051,
    0.01606894713157503,
    0.02668230466960483,
    -0.08126671024919373,
    -0.05607731960356926,
    0.41530842700068227,
    0.7822389344242826,
    0.43438603311435653,
    -0.06662747236681717,
    -0.09622042453595264,
    0.03933442260558915,
    0.02508225333794961,
    -0.015211728187697211,
    -0.0056582838001308835,
    0.0037514346971460866,
    0.0012665610789256603,
    -0.0005890202246332165,
    -0.0002599743371222568,
    6.233885431278719e-05,
    3.1229861599195265e-05,
    -3.259647940030751e-06,
    -1.7849909144933469e-06,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WaveletFamily {
    Haar,
    Db2,
    Db3,
    Db4,
    Coif2,
    Coif4,
}

impl WaveletFamily {
    pub const ALL: [WaveletFamily; 6] = [
        WaveletFamily::Haar,
        WaveletFamily::Db2,
        WaveletFamily::Db3,
        WaveletFamily::Db4,
        WaveletFamily::Coif2,
        WaveletFamily::Coif4,
    ];

    /// Scaling (low-pass) filter taps.
    pub fn scaling_filter(self) -> &'static [f64] {
        match self {
            WaveletFamily::Haar => &HAAR,
            WaveletFamily::Db2 => &DB2,
            WaveletFamily::Db3 => &DB3,
            WaveletFamily::Db4 => &DB4,
            WaveletFamily::Coif2 => &COIF2,
            WaveletFamily::Coif4 => &COIF4,
        }
    }

    /// Wavelet (high-pass) filter taps, the alternating flip of the scaling filter.
    pub fn wavelet_filter(self) -> Vec<f64> {
        let h = self.scaling_filter();
        let len = h.len();
        (0..len)
            .map(|m| {
                let s = if m % 2 == 0 { 1.0 } else { -1.0 };
                s * h[len - 1 - m]
            })
            .collect()
    }

    pub fn filter_len(self) -> usize {
        self.scaling_filter().len()
    }

    pub fn name(self) -> &'static str {
        match self {
            WaveletFamily::Haar => "haar",
            WaveletFamily::Db2 => "db2",
            WaveletFamily::Db3 => "db3",
            WaveletFamily::Db4 => "db4",
            WaveletFamily::Coif2 => "coif2",
            WaveletFamily::Coif4 => "coif4",
        }
    }
}

impl fmt::Display for WaveletFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaveletFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WaveletFamily::ALL
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid("wavelet", format!("unknown wavelet family `{s}`")))
    }
}

pub(crate) fn check_size(family: WaveletFamily, n: usize) -> Result<()> {
    if !n.is_power_of_two() {
        return Err(Error::UnsupportedSize {
            size: n,
            reason: "wavelet transforms need a power-of-two length".into(),
        });
    }
    if n < family.filter_len() {
        return Err(Error::UnsupportedSize {
            size: n,
            reason: format!("{family} has {} taps", family.filter_len()),
        });
    }
    Ok(())
}

/// Full dyadic analysis in place.
pub fn wavelet_forward(family: WaveletFamily, x: &mut [f64]) -> Result<()> {
    check_size(family, x.len())?;
    let h = family.scaling_filter();
    let g = family.wavelet_filter();
    let mut scratch = vec![0.0; x.len()];
    let mut len = x.len();
    while len >= 2 {
        let half = len / 2;
        for k in 0..half {
            let (mut a, mut d) = (0.0, 0.0);
            for (m, (&hm, &gm)) in h.iter().zip(&g).enumerate() {
                let v = x[(2 * k + m) % len];
                a += hm * v;
                d += gm * v;
            }
            scratch[k] = a;
            scratch[half + k] = d;
        }
        x[..len].copy_from_slice(&scratch[..len]);
        len = half;
    }
    Ok(())
}

/// Full dyadic synthesis in place; the transpose of [`wavelet_forward`].
pub fn wavelet_inverse(family: WaveletFamily, c: &mut [f64]) -> Result<()> {
    check_size(family, c.len())?;
    let h = family.scaling_filter();
    let g = family.wavelet_filter();
    let mut scratch = vec![0.0; c.len()];
    let mut len = 2;
    while len <= c.len() {
        let half = len / 2;
        scratch[..len].iter_mut().for_each(|s| *s = 0.0);
        for k in 0..half {
            let (a, d) = (c[k], c[half + k]);
            for (m, (&hm, &gm)) in h.iter().zip(&g).enumerate() {
                scratch[(2 * k + m) % len] += hm * a + gm * d;
            }
        }
        c[..len].copy_from_slice(&scratch[..len]);
        len *= 2;
    }
    Ok(())
}

/// N×N orthonormal analysis matrix; rows are the wavelet basis functions.
pub fn wavelet_matrix(family: WaveletFamily, n: usize) -> Result<DMatrix<f64>> {
    check_size(family, n)?;
    let mut w = DMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        wavelet_forward(family, &mut e)?;
        w.column_mut(j).copy_from_slice(&e);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_two() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let w = wavelet_matrix(WaveletFamily::Haar, 2).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[r, r, r, -r]);
        assert!((w - want).amax() < 1e-15);
    }

    #[test]
    fn db2_eight_max_entry() {
        let w = wavelet_matrix(WaveletFamily::Db2, 8).unwrap();
        assert!((w.amax() - 0.8365).abs() < 1e-4);
    }

    #[test]
    fn orthonormal_all_families() {
        for fam in WaveletFamily::ALL {
            for n in [8usize, 32, 64] {
                if n < fam.filter_len() {
                    continue;
                }
                let w = wavelet_matrix(fam, n).unwrap();
                let err = (&w * w.transpose() - DMatrix::identity(n, n)).amax();
                assert!(err < 1e-10, "{fam} n={n} err={err}");
            }
        }
    }

    #[test]
    fn inverse_is_transpose() {
        let fam = WaveletFamily::Coif2;
        let w = wavelet_matrix(fam, 32).unwrap();
        let c: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).cos()).collect();
        let mut x = c.clone();
        wavelet_inverse(fam, &mut x).unwrap();
        let want = w.transpose() * nalgebra::DVector::from_column_slice(&c);
        for i in 0..32 {
            assert!((x[i] - want[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(wavelet_matrix(WaveletFamily::Haar, 12).is_err());
        assert!(wavelet_matrix(WaveletFamily::Coif4, 16).is_err());
        assert!("sym5".parse::<WaveletFamily>().is_err());
        assert_eq!("DB3".parse::<WaveletFamily>().unwrap(), WaveletFamily::Db3);
    }
}
