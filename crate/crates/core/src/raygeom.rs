//! Cube roots of unity, rays, sectors and triangles of the complex plane.
//!
//! Angular membership is decided by half-plane tests on `Im(conj(n) * λ)`
//! rather than by comparing arguments, so points lying exactly on a ray are
//! classified without branch-cut surprises.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `√3 / 2`.
pub const SQRT3_2: f64 = 0.866_025_403_784_438_6;
/// `√3`.
pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `ζ₁ = 1`.
pub const Z1: Complex64 = Complex64::new(1.0, 0.0);
/// `ζ₂ = (−1 + i√3)/2`.
pub const Z2: Complex64 = Complex64::new(-0.5, SQRT3_2);
/// `ζ₃ = (−1 − i√3)/2`.
pub const Z3: Complex64 = Complex64::new(-0.5, -SQRT3_2);
/// The imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// The three cube roots of unity indexed `1..=3`.
pub const ZETA: [Complex64; 3] = [Z1, Z2, Z3];

/// Relative tolerance used to decide that a point lies on a ray.
pub const ON_RAY_TOL: f64 = 1e-12;

/// A cube root of unity together with its index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeRoot {
    pub k: usize,
    pub value: Complex64,
}

impl CubeRoot {
    pub fn new(k: usize) -> Result<Self> {
        Ok(Self { k, value: zeta(k)? })
    }
}

/// Returns `ζ_k` for `k ∈ {1, 2, 3}`.
pub fn zeta(k: usize) -> Result<Complex64> {
    match k {
        1..=3 => Ok(ZETA[k - 1]),
        _ => Err(Error::IndexOutOfRange { name: "k", value: k as i64, lo: 1, hi: 3 }),
    }
}

/// `ζ_k` for an index taken modulo 3, with `k = 0` meaning `ζ₃`.
pub fn zeta_mod(k: usize) -> Complex64 {
    ZETA[(k + 2) % 3]
}

/// Cyclic successor of a Jost index: `1 → 2 → 3 → 1`.
pub fn next_index(p: usize) -> usize {
    p % 3 + 1
}

/// `e^{iθ}` for an angle given in degrees.
pub fn unit(deg: f64) -> Complex64 {
    Complex64::from_polar(1.0, deg.to_radians())
}

/// Signed distance of `λ` from the line spanned by `n`, positive to the left.
fn cross(n: Complex64, lambda: Complex64) -> f64 {
    (n.conj() * lambda).im
}

fn along(n: Complex64, lambda: Complex64) -> f64 {
    (n.conj() * lambda).re
}

/// Orientation of a ray through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `l_ζ = {xζ : x ≥ 0}`.
    Outgoing,
    /// `l̂_ζ = {xζ : x < 0}`.
    Incoming,
}

/// A half-line from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub direction: Complex64,
    pub orientation: Orientation,
}

impl Ray {
    pub fn outgoing(direction: Complex64) -> Self {
        Self { direction: direction / direction.norm(), orientation: Orientation::Outgoing }
    }

    pub fn incoming(direction: Complex64) -> Self {
        Self { direction: direction / direction.norm(), orientation: Orientation::Incoming }
    }

    /// Rotates the ray by the unit factor `u`.
    pub fn rotate(&self, u: Complex64) -> Self {
        Self { direction: self.direction * u / u.norm(), orientation: self.orientation }
    }

    /// Unit vector pointing from the origin into the set.
    pub fn pointing(&self) -> Complex64 {
        match self.orientation {
            Orientation::Outgoing => self.direction,
            Orientation::Incoming => -self.direction,
        }
    }

    /// Point of the ray at distance `t ≥ 0` from the origin.
    pub fn at(&self, t: f64) -> Complex64 {
        self.pointing() * t
    }

    /// True when `λ ≠ 0` lies on the ray up to [`ON_RAY_TOL`].
    pub fn contains(&self, lambda: Complex64) -> bool {
        let r = lambda.norm();
        if r == 0.0 {
            return false;
        }
        let d = self.pointing();
        cross(d, lambda).abs() <= ON_RAY_TOL * r && along(d, lambda) > 0.0
    }
}

/// An open cone `{λ : start < arg λ < end}` of opening at most π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wedge {
    /// Unit vector along the clockwise edge.
    pub start: Complex64,
    /// Unit vector along the counter-clockwise edge.
    pub end: Complex64,
}

impl Wedge {
    /// Wedge between two angles in degrees, `end − start ∈ (0, 180]`.
    pub fn degrees(start: f64, end: f64) -> Self {
        debug_assert!(end > start && end - start <= 180.0);
        Self { start: unit(start), end: unit(end) }
    }

    /// Half-plane data `(normal, offset)`: `λ` is inside when
    /// `Im(conj(normal)·λ) > offset` for both entries.
    pub fn half_planes(&self) -> [(Complex64, f64); 2] {
        [(self.start, 0.0), (-self.end, 0.0)]
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        let r = lambda.norm();
        if r == 0.0 {
            return false;
        }
        let eps = ON_RAY_TOL * r;
        let inside_start = cross(self.start, lambda) > eps;
        let inside_end = cross(self.end, lambda) < -eps;
        if cross(self.start, self.end) > 0.0 {
            inside_start && inside_end
        } else {
            // Opening exactly π: the two half-planes coincide.
            inside_start
        }
    }

    fn rotate(&self, u: Complex64) -> Self {
        Self { start: self.start * u, end: self.end * u }
    }
}

/// Which named region a [`Sector`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorKind {
    /// `S_p`, `2π(p−1)/6 < arg z < 2πp/6`.
    S(usize),
    /// `S_p(i) = (−i)·S_p`.
    SRotated(usize),
    /// `Ω_p` with boundary rays exactly as in the defining unions.
    Omega(usize),
    /// `Ω_p` with every glued ray taken incoming, which makes the family
    /// closed under `λ → λζ₂`.
    OmegaIncoming(usize),
    /// `Ω_p⁻ = −Ω_p`.
    OmegaMinus(usize),
}

/// A union of open wedges and explicitly included rays.
#[derive(Debug, Clone, PartialEq)]
pub struct Sector {
    pub kind: SectorKind,
    pub wedges: Vec<Wedge>,
    pub rays: Vec<Ray>,
}

fn check_p(p: usize, hi: usize) -> Result<()> {
    if (1..=hi).contains(&p) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { name: "p", value: p as i64, lo: 1, hi: hi as i64 })
    }
}

impl Sector {
    /// Open sector `S_p`, `p = 1..=6`.
    pub fn s(p: usize) -> Result<Self> {
        check_p(p, 6)?;
        let a = 60.0 * (p as f64 - 1.0);
        Ok(Self { kind: SectorKind::S(p), wedges: vec![Wedge::degrees(a, a + 60.0)], rays: vec![] })
    }

    /// Rotated sector `S_p(i) = (−i)S_p`.
    pub fn s_rotated(p: usize) -> Result<Self> {
        let mut s = Self::s(p)?;
        s.wedges = s.wedges.iter().map(|w| w.rotate(-I)).collect();
        s.kind = SectorKind::SRotated(p);
        Ok(s)
    }

    fn omega_from(p: usize, ray: Ray, kind: SectorKind) -> Result<Self> {
        let a = Self::s_rotated(2 * p - 1)?;
        let b = Self::s_rotated(2 * p)?;
        Ok(Self { kind, wedges: vec![a.wedges[0], b.wedges[0]], rays: vec![ray.rotate(-I)] })
    }

    /// `Ω₁ = S₁(i) ∪ S₂(i) ∪ (−i l̂_{ζ₃})`, `Ω₂ = S₃(i) ∪ S₄(i) ∪ (−i l̂_{ζ₁})`,
    /// `Ω₃ = S₅(i) ∪ S₆(i) ∪ (−i l_{ζ₂})`.
    ///
    /// The third union glues an outgoing ray, which lies on the boundary of
    /// `Ω₂` rather than between `S₅(i)` and `S₆(i)`; [`Sector::omega_incoming`]
    /// gives the rotation-consistent variant.
    pub fn omega(p: usize) -> Result<Self> {
        check_p(p, 3)?;
        let ray = match p {
            1 => Ray::incoming(Z3),
            2 => Ray::incoming(Z1),
            _ => Ray::outgoing(Z2),
        };
        Self::omega_from(p, ray, SectorKind::Omega(p))
    }

    /// `Ω_p` with the incoming ray `−i l̂` glued in for every `p`.
    pub fn omega_incoming(p: usize) -> Result<Self> {
        check_p(p, 3)?;
        let ray = Ray::incoming([Z3, Z1, Z2][p - 1]);
        Self::omega_from(p, ray, SectorKind::OmegaIncoming(p))
    }

    /// `Ω_p⁻ = −Ω_p` (built from the incoming convention).
    pub fn omega_minus(p: usize) -> Result<Self> {
        let s = Self::omega_incoming(p)?;
        Ok(Self {
            kind: SectorKind::OmegaMinus(p),
            wedges: s.wedges.iter().map(|w| w.rotate(-Z1)).collect(),
            rays: s.rays.iter().map(|r| r.rotate(-Z1)).collect(),
        })
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        self.wedges.iter().any(|w| w.contains(lambda)) || self.rays.iter().any(|r| r.contains(lambda))
    }
}

/// Membership test `λ ∈ s`; the origin never belongs to a sector.
pub fn in_sector(lambda: Complex64, s: &Sector) -> bool {
    s.contains(lambda)
}

/// Which of the two triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triangle {
    /// `T_a = {ν ≤ a, ν ≥ √3μ − 2a, ν ≥ −√3μ − 2a}`.
    Ta,
    /// `T_a* = conj(T_a)`.
    TaStar,
}

/// Closed equilateral triangle attached to the decay parameter `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleRegion {
    pub a: f64,
    pub which: Triangle,
}

impl TriangleRegion {
    pub fn new(a: f64, which: Triangle) -> Result<Self> {
        if !(a >= 0.0) {
            return Err(Error::InvalidParameter(format!("decay parameter a = {a} must be ≥ 0")));
        }
        Ok(Self { a, which })
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        let z = match self.which {
            Triangle::Ta => lambda,
            Triangle::TaStar => lambda.conj(),
        };
        let (mu, nu, a) = (z.re, z.im, self.a);
        let slack = 1e-12 * (1.0 + a);
        nu <= a + slack && nu >= SQRT3 * mu - 2.0 * a - slack && nu >= -SQRT3 * mu - 2.0 * a - slack
    }

    /// Vertices of the hexagon `T_a ∩ T_a*`.
    pub fn hexagon_vertices(a: f64) -> [Complex64; 6] {
        let r = 2.0 * a / SQRT3;
        std::array::from_fn(|k| Complex64::from_polar(r, k as f64 * std::f64::consts::FRAC_PI_3))
    }
}

/// Membership test `λ ∈ t`.
pub fn in_triangle(lambda: Complex64, t: &TriangleRegion) -> bool {
    t.contains(lambda)
}
