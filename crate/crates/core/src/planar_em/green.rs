use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use super::{fresnel_rp, fresnel_rs, Material, ModeCoordinates};
use crate::constants::C;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A 3×3 complex tensor indexed by Cartesian pairs, `t[(i, j)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTensor3(pub [[Complex64; 3]; 3]);

impl ComplexTensor3 {
    pub const fn zero() -> Self {
        Self([[ZERO; 3]; 3])
    }

    /// Dyadic product `a ⊗ b` (no conjugation).
    pub fn outer(a: &[Complex64; 3], b: &[Complex64; 3]) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = a[i] * b[j];
            }
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    /// Bilinear contraction `a · T · b`.
    pub fn contract(&self, a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..3 {
            for j in 0..3 {
                acc += a[i] * self.0[i][j] * b[j];
            }
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut t = *self;
        t.0.iter_mut().flatten().for_each(|x| *x *= s);
        t
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| *x == ZERO)
    }
}

impl Default for ComplexTensor3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Index<(usize, usize)> for ComplexTensor3 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexTensor3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for ComplexTensor3 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for ComplexTensor3 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl Mul<f64> for ComplexTensor3 {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        self.0.iter_mut().flatten().for_each(|x| *x *= rhs);
        self
    }
}

/// Direction label of the polarisation vectors: `Plus` for the wave
/// travelling towards `+z` (reflected), `Minus` towards `−z` (incident).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `(e_s±, e_p±)` with `e_s = (sin φ, −cos φ, 0)` and
/// `e_p± = (c/ω)(∓kz cos φ, ∓kz sin φ, k_par)`.
///
/// `e_p` is left unnormalised for evanescent modes, where `kz` is imaginary.
pub fn polarization_vectors(mode: &ModeCoordinates, sign: Sign) -> ([Complex64; 3], [Complex64; 3]) {
    let (sin_phi, cos_phi) = mode.phi.sin_cos();
    let e_s = [
        Complex64::new(sin_phi, 0.0),
        Complex64::new(-cos_phi, 0.0),
        ZERO,
    ];
    let c_over_omega = C / mode.omega;
    let s = match sign {
        Sign::Plus => -1.0,
        Sign::Minus => 1.0,
    };
    let e_p = [
        mode.kz_vac * (s * cos_phi * c_over_omega),
        mode.kz_vac * (s * sin_phi * c_over_omega),
        Complex64::new(mode.k_par * c_over_omega, 0.0),
    ];
    (e_s, e_p)
}

/// Reflected Green tensor of a single mode at coincidence `r = r' = z ẑ`:
/// `(i / 8π² kz) exp(2i kz z) Σ_σ r_σ e_σ+ ⊗ e_σ−`.
///
/// Integrating `k_par dk_par dφ` over the result gives the scattering Green
/// tensor `G⁽¹⁾(r, r, ω)` in 1/m; the per-mode density itself is in m.
/// Refuses modes inside the branch-point window, where `1/kz` diverges.
pub fn green_mode(z: f64, mode: &ModeCoordinates, mat: &Material) -> Result<ComplexTensor3> {
    if !(z > 0.0) {
        return Err(Error::InvalidDomain(format!("z must be > 0, got {z}")));
    }
    if mode.near_branch_point() || mode.kz_vac == ZERO {
        return Err(Error::BranchPoint { k_par: mode.k_par });
    }
    let rs = fresnel_rs(mode, mat)?;
    let rp = fresnel_rp(mode, mat)?;
    if rs == ZERO && rp == ZERO {
        return Ok(ComplexTensor3::zero());
    }
    let (es_plus, ep_plus) = polarization_vectors(mode, Sign::Plus);
    let (es_minus, ep_minus) = polarization_vectors(mode, Sign::Minus);
    let dyads = ComplexTensor3::outer(&es_plus, &es_minus).scale(rs)
        + ComplexTensor3::outer(&ep_plus, &ep_minus).scale(rp);
    let prefactor = I / (8.0 * PI * PI * mode.kz_vac) * (2.0 * I * mode.kz_vac * z).exp();
    Ok(dyads.scale(prefactor))
}

/// `∂_x` of the mode tensor with respect to its first argument, taken at
/// coincidence: `i k_par cos φ · green_mode`.
pub fn green_mode_dx(z: f64, mode: &ModeCoordinates, mat: &Material) -> Result<ComplexTensor3> {
    let g = green_mode(z, mode, mat)?;
    Ok(g.scale(I * (mode.k_par * mode.phi.cos())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const OMEGA: f64 = 2.0 * PI * C / 852e-9;
    const K0: f64 = OMEGA / C;
    const Z: f64 = 264e-9;

    fn mode(k_par: f64, phi: f64, mat: &Material) -> ModeCoordinates {
        ModeCoordinates::new(k_par, phi, OMEGA, mat.medium_epsilon()).unwrap()
    }

    fn bilinear(a: &[Complex64; 3]) -> Complex64 {
        a.iter().map(|x| x * x).sum()
    }

    #[test]
    fn s_vector_at_zero_azimuth() {
        let m = mode(0.4 * K0, 0.0, &Material::gold());
        let (e_s, _) = polarization_vectors(&m, Sign::Plus);
        assert_eq!(e_s, [ZERO, Complex64::new(-1.0, 0.0), ZERO]);
    }

    #[test]
    fn p_vector_at_normal_incidence_is_transverse() {
        let m = mode(0.0, 0.7, &Material::gold());
        for sign in [Sign::Plus, Sign::Minus] {
            let (_, e_p) = polarization_vectors(&m, sign);
            assert_eq!(e_p[2], ZERO);
            let s = if sign == Sign::Plus { -1.0 } else { 1.0 };
            assert!((e_p[0].re - s * 0.7f64.cos()).abs() < 1e-15);
            assert!((e_p[1].re - s * 0.7f64.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn vacuum_mode_tensor_vanishes() {
        let vac = Material::vacuum();
        for x in [0.1, 0.7, 1.3, 4.0] {
            let m = mode(x * K0, 1.1, &vac);
            assert!(green_mode(Z, &m, &vac).unwrap().is_zero());
            assert!(green_mode_dx(Z, &m, &vac).unwrap().is_zero());
        }
    }

    #[test]
    fn dx_vanishes_perpendicular_to_x() {
        let gold = Material::gold();
        let m = mode(0.6 * K0, PI / 2.0, &gold);
        let t = green_mode_dx(Z, &m, &gold).unwrap();
        assert!(t.max_norm() <= 1e-16 * green_mode(Z, &m, &gold).unwrap().max_norm() * K0);
    }

    #[test]
    fn branch_point_refused() {
        let gold = Material::gold();
        let m = mode(K0 * (1.0 + 1e-13), 0.0, &gold);
        assert!(matches!(green_mode(Z, &m, &gold), Err(Error::BranchPoint { .. })));
        let m = mode(K0 * (1.0 + 1e-9), 0.0, &gold);
        assert!(green_mode(Z, &m, &gold).is_ok());
        assert!(green_mode(0.0, &m, &gold).is_err());
    }

    #[test]
    fn propagating_modes_keep_constant_modulus_with_distance() {
        let gold = Material::gold();
        let m = mode(0.5 * K0, 0.2, &gold);
        let a = green_mode(1e-6, &m, &gold).unwrap().max_norm();
        let b = green_mode(1e-3, &m, &gold).unwrap().max_norm();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn azimuthal_cross_terms_cancel() {
        // φ ↦ −φ maps the xy entry to its negative, so the φ-integral of xy vanishes
        let gold = Material::gold();
        for x in [0.3, 0.8, 1.7] {
            for phi in [0.2, 1.0, 2.5] {
                let a = green_mode(Z, &mode(x * K0, phi, &gold), &gold).unwrap();
                let b = green_mode(Z, &mode(x * K0, -phi, &gold), &gold).unwrap();
                assert!((a[(0, 1)] + b[(0, 1)]).norm() <= 1e-15 * a.max_norm());
                assert!((a[(1, 0)] + b[(1, 0)]).norm() <= 1e-15 * a.max_norm());
            }
        }
    }

    proptest! {
        #[test]
        fn propagating_p_vector_has_unit_bilinear_norm(x in 0.0f64..0.9999, phi in 0.0f64..(2.0 * PI)) {
            let m = mode(x * K0, phi, &Material::silica());
            for sign in [Sign::Plus, Sign::Minus] {
                let (e_s, e_p) = polarization_vectors(&m, sign);
                prop_assert!((bilinear(&e_p) - 1.0).norm() < 1e-14);
                prop_assert!((bilinear(&e_s) - 1.0).norm() < 1e-15);
            }
        }
    }
}
