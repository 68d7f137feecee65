//! The complex quaternion algebra: `a = a0 + a1 e1 + a2 e2 + a3 e3` with complex
//! components, `e1² = e2² = e3² = -1` and `e1 e2 = e3 = -e2 e1` (cyclically).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::complex_linalg::{cm_pinv, CMatrix, C64, DEFAULT_RANK_TOL};
use crate::error::{Error, Result};

const I: C64 = C64::new(0.0, 1.0);
const HALF: f64 = 0.5;

/// Relative weak-norm threshold below which an element is treated as a zero divisor.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;
/// Componentwise tolerance for structural predicates.
pub const COMPONENT_TOL: f64 = 1e-12;

/// A complex quaternion.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Biquaternion {
    pub a0: C64,
    pub a1: C64,
    pub a2: C64,
    pub a3: C64,
}

impl Biquaternion {
    pub const ZERO: Biquaternion = Biquaternion::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ZERO);
    pub const ONE: Biquaternion = Biquaternion::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO);
    pub const E1: Biquaternion = Biquaternion::new(C64::ZERO, C64::ONE, C64::ZERO, C64::ZERO);
    pub const E2: Biquaternion = Biquaternion::new(C64::ZERO, C64::ZERO, C64::ONE, C64::ZERO);
    pub const E3: Biquaternion = Biquaternion::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ONE);

    pub const fn new(a0: C64, a1: C64, a2: C64, a3: C64) -> Self {
        Biquaternion { a0, a1, a2, a3 }
    }

    /// Checked constructor: all components must be finite.
    pub fn try_new(a0: C64, a1: C64, a2: C64, a3: C64) -> Result<Self> {
        let q = Self::new(a0, a1, a2, a3);
        if q.components()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            Ok(q)
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Embeds a complex number as `c + 0 e1 + 0 e2 + 0 e3`.
    pub const fn complex(c: C64) -> Self {
        Self::new(c, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub const fn real(x: f64) -> Self {
        Self::complex(C64::new(x, 0.0))
    }

    /// Builds from `[re, im]` pairs of the four components.
    pub fn from_parts(parts: [[f64; 2]; 4]) -> Self {
        let c = |p: [f64; 2]| C64::new(p[0], p[1]);
        Self::new(c(parts[0]), c(parts[1]), c(parts[2]), c(parts[3]))
    }

    pub fn components(&self) -> [C64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn from_components(c: [C64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// Scalar multiple by a complex number (complex scalars are central).
    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }

    /// `a0 - a1 e1 - a2 e2 - a3 e3`.
    pub fn dual(&self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Conjugates every complex component.
    pub fn cconj(&self) -> Self {
        Self::new(
            self.a0.conj(),
            self.a1.conj(),
            self.a2.conj(),
            self.a3.conj(),
        )
    }

    /// Hermitian conjugate: dual of the complex conjugate.
    pub fn hconj(&self) -> Self {
        self.cconj().dual()
    }

    /// Weak norm `a0² + a1² + a2² + a3²`, a complex number.
    pub fn weak_norm(&self) -> C64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Euclidean size of the component vector, `sqrt(Σ|a_k|²)`.
    pub fn magnitude(&self) -> f64 {
        self.components()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// True when `n(a)` is zero relative to the size of `a`.
    pub fn is_zero_divisor(&self) -> bool {
        let m = self.magnitude();
        self.weak_norm().norm() <= ZERO_DIVISOR_TOL * (1.0 + m * m)
    }

    /// `n(a)⁻¹ · dual(a)`; fails for zero divisors.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero_divisor() {
            return Err(Error::NotInvertible { op: "bq_inverse" });
        }
        Ok(self.dual().scale(self.weak_norm().inv()))
    }

    /// True when the e-part vanishes within `tol`.
    pub fn is_complex(&self, tol: f64) -> bool {
        self.a1.norm() <= tol && self.a2.norm() <= tol && self.a3.norm() <= tol
    }

    /// The faithful 2x2 complex representation.
    pub fn psi(&self) -> CMatrix {
        let Biquaternion { a0, a1, a2, a3 } = *self;
        CMatrix::new(
            2,
            2,
            vec![a0 + a1 * I, -(a2 + a3 * I), a2 - a3 * I, a0 - a1 * I],
        )
        .expect("finite components")
    }

    /// Inverse of [`Biquaternion::psi`] for any 2x2 complex matrix.
    pub fn from_psi(m: &CMatrix) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::dims("bq_from_psi", (2, 2), m.shape()));
        }
        let (m11, m12, m21, m22) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        Ok(Self::new(
            (m11 + m22) * HALF,
            (m22 - m11) * HALF * I,
            (m21 - m12) * HALF,
            (m12 + m21) * HALF * I,
        ))
    }

    /// Moore-Penrose inverse through the representation; `pinv(0) = 0`.
    pub fn pinv(&self) -> Self {
        self.pinv_with_tol(DEFAULT_RANK_TOL)
    }

    pub fn pinv_with_tol(&self, tol: f64) -> Self {
        Self::from_psi(&cm_pinv(&self.psi(), tol)).expect("2x2 pseudoinverse")
    }

    /// Principal square root of `a1² + a2² + a3²`.
    pub fn tau(&self) -> C64 {
        self.tau_squared().sqrt()
    }

    pub fn tau_squared(&self) -> C64 {
        self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Largest componentwise distance.
    pub fn max_abs_diff(&self, other: &Biquaternion) -> f64 {
        let a = self.components();
        let b = other.components();
        (0..4).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Biquaternion, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }
}

impl Mul for Biquaternion {
    type Output = Biquaternion;

    fn mul(self, b: Biquaternion) -> Biquaternion {
        let a = self;
        Biquaternion::new(
            a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
            a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
            a.a0 * b.a2 + a.a2 * b.a0 + a.a3 * b.a1 - a.a1 * b.a3,
            a.a0 * b.a3 + a.a3 * b.a0 + a.a1 * b.a2 - a.a2 * b.a1,
        )
    }
}

impl Add for Biquaternion {
    type Output = Biquaternion;

    fn add(self, b: Biquaternion) -> Biquaternion {
        Biquaternion::new(
            self.a0 + b.a0,
            self.a1 + b.a1,
            self.a2 + b.a2,
            self.a3 + b.a3,
        )
    }
}

impl Sub for Biquaternion {
    type Output = Biquaternion;

    fn sub(self, b: Biquaternion) -> Biquaternion {
        Biquaternion::new(
            self.a0 - b.a0,
            self.a1 - b.a1,
            self.a2 - b.a2,
            self.a3 - b.a3,
        )
    }
}

impl Neg for Biquaternion {
    type Output = Biquaternion;

    fn neg(self) -> Biquaternion {
        Biquaternion::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl std::iter::Sum for Biquaternion {
    fn sum<It: Iterator<Item = Biquaternion>>(iter: It) -> Biquaternion {
        iter.fold(Biquaternion::ZERO, |acc, x| acc + x)
    }
}

impl From<C64> for Biquaternion {
    fn from(c: C64) -> Self {
        Biquaternion::complex(c)
    }
}

impl From<f64> for Biquaternion {
    fn from(x: f64) -> Self {
        Biquaternion::real(x)
    }
}

/// Which canonical similarity class a biquaternion falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalCase {
    /// `τ²(a) ≠ 0`: similar to `a0 + τ(a) e1`.
    Generic,
    /// `τ²(a) = 0` and `a ∉ ℂ`: similar to `a0 - ½e2 + ½i e3`.
    Null,
    /// `a` is already a complex number.
    Complex,
}

impl fmt::Display for CanonicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalCase::Generic => "generic",
            CanonicalCase::Null => "null",
            CanonicalCase::Complex => "complex",
        })
    }
}

impl Biquaternion {
    fn tau_is_null(&self) -> bool {
        let m = self.magnitude();
        self.tau_squared().norm() <= ZERO_DIVISOR_TOL * (1.0 + m * m)
    }

    /// The similarity canonical form of `a` and its case.
    pub fn canonical_form(&self) -> (Biquaternion, CanonicalCase) {
        if self.is_complex(COMPONENT_TOL * (1.0 + self.magnitude())) {
            return (*self, CanonicalCase::Complex);
        }
        if self.tau_is_null() {
            (null_form(self.a0), CanonicalCase::Null)
        } else {
            (
                Biquaternion::new(self.a0, self.tau(), C64::ZERO, C64::ZERO),
                CanonicalCase::Generic,
            )
        }
    }

    /// An invertible `p` with `p⁻¹ a p` equal to the canonical form (so that
    /// `a = p · form · p⁻¹`).
    ///
    /// The witness is read off a similarity `S` that brings `ψ(a)` to `ψ(form)`:
    /// eigenvectors in the generic case, a Jordan chain in the null case.
    pub fn similarity_witness(&self) -> Result<Biquaternion> {
        let (form, case) = self.canonical_form();
        let m = self.psi();
        let s = match case {
            CanonicalCase::Complex => return Ok(Biquaternion::ONE),
            CanonicalCase::Generic => {
                let tau = self.tau();
                let mu1 = self.a0 + tau * I;
                let mu2 = self.a0 - tau * I;
                let y1 = null_vector_2x2(&m, mu1);
                let y2 = null_vector_2x2(&m, mu2);
                CMatrix::from_columns(2, &[y1, y2])?
            }
            CanonicalCase::Null => {
                // N = ψ(a) - a0 I is nilpotent and nonzero; [N y, y] is a Jordan chain.
                let n = m.shifted(self.a0);
                let j = if n.column(0).iter().map(|z| z.norm()).sum::<f64>()
                    >= n.column(1).iter().map(|z| z.norm()).sum::<f64>()
                {
                    0
                } else {
                    1
                };
                let y2 = if j == 0 {
                    vec![C64::ONE, C64::ZERO]
                } else {
                    vec![C64::ZERO, C64::ONE]
                };
                let y1 = n.column(j);
                CMatrix::from_columns(2, &[y1, y2])?
            }
        };
        let p = Biquaternion::from_psi(&s)?;
        if p.is_zero_divisor() {
            return Err(Error::DegenerateWitness {
                norm: p.weak_norm().norm(),
            });
        }
        let check = p.inverse()? * *self * p;
        let tol = 1e-8 * (1.0 + self.magnitude());
        if !check.approx_eq(&form, tol) {
            return Err(Error::DegenerateWitness {
                norm: p.weak_norm().norm(),
            });
        }
        Ok(p)
    }

    /// Structural flags, each checked componentwise within [`COMPONENT_TOL`].
    pub fn classify(&self) -> Classification {
        let tol = COMPONENT_TOL * (1.0 + self.magnitude());
        Classification {
            real: self.cconj().approx_eq(self, tol),
            pure_imaginary: self.cconj().approx_eq(&-*self, tol),
            scalar: self.dual().approx_eq(self, tol),
            hermitian: self.hconj().approx_eq(self, tol),
        }
    }
}

/// `a0 - ½e2 + ½i e3`, whose representation is the Jordan cell `[[a0, 1], [0, a0]]`.
pub fn null_form(a0: C64) -> Biquaternion {
    Biquaternion::new(a0, C64::ZERO, C64::new(-HALF, 0.0), C64::new(0.0, HALF))
}

// Kernel vector of the singular 2x2 matrix m - mu I, picked from its larger row.
fn null_vector_2x2(m: &CMatrix, mu: C64) -> Vec<C64> {
    let (a, b, c, d) = (m[(0, 0)] - mu, m[(0, 1)], m[(1, 0)], m[(1, 1)] - mu);
    let r1 = a.norm() + b.norm();
    let r2 = c.norm() + d.norm();
    let mut v = if r1 == 0.0 && r2 == 0.0 {
        vec![C64::ONE, C64::ZERO]
    } else if r1 >= r2 {
        vec![b, -a]
    } else {
        vec![d, -c]
    };
    crate::complex_linalg::normalize_vector(&mut v);
    v
}

/// Results of [`Biquaternion::classify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// `a* = a`
    pub real: bool,
    /// `a* = -a`
    pub pure_imaginary: bool,
    /// `dual(a) = a`
    pub scalar: bool,
    /// `a† = a`
    pub hermitian: bool,
}

/// Formats a complex number as `re+imi` (or `re-imi`) with 17 significant digits.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}

/// Parses `re+imi`, `re-imi`, `re`, or `imi`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse(format!("invalid complex number '{s}'"));
    if t.is_empty() {
        return Err(err());
    }
    if let Some(body) = t.strip_suffix('i') {
        // find the sign separating real and imaginary parts (not part of an exponent)
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let re: f64 = re.parse().map_err(|_| err())?;
        let im: f64 = im.parse().map_err(|_| err())?;
        if !re.is_finite() || !im.is_finite() {
            return Err(err());
        }
        Ok(C64::new(re, im))
    } else {
        let re: f64 = t.parse().map_err(|_| err())?;
        if !re.is_finite() {
            return Err(err());
        }
        Ok(C64::new(re, 0.0))
    }
}

impl fmt::Display for Biquaternion {
    /// `(a0) + (a1)e1 + (a2)e2 + (a3)e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) + ({})e1 + ({})e2 + ({})e3",
            format_complex(self.a0),
            format_complex(self.a1),
            format_complex(self.a2),
            format_complex(self.a3)
        )
    }
}

impl FromStr for Biquaternion {
    type Err = Error;

    /// Parses the `(a0) + (a1)e1 + (a2)e2 + (a3)e3` rendering.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("invalid biquaternion '{s}'"));
        let mut parts = [C64::ZERO; 4];
        let mut rest = s.trim();
        for (k, part) in parts.iter_mut().enumerate() {
            rest = rest.strip_prefix('(').ok_or_else(err)?;
            let close = rest.find(')').ok_or_else(err)?;
            *part = parse_complex(&rest[..close])?;
            rest = rest[close + 1..].trim_start();
            if k > 0 {
                let tag = ["", "e1", "e2", "e3"][k];
                rest = rest.strip_prefix(tag).ok_or_else(err)?.trim_start();
            }
            if k < 3 {
                rest = rest.strip_prefix('+').ok_or_else(err)?.trim_start();
            }
        }
        if !rest.is_empty() {
            return Err(err());
        }
        Ok(Biquaternion::from_components(parts))
    }
}
