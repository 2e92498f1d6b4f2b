use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LensError {
    #[error("p must be positive")]
    ZeroOrder,
    #[error("q = {q} must satisfy 0 <= q < p = {p}")]
    OutOfRange { p: u32, q: u32 },
    #[error("gcd(p, q) = gcd({p}, {q}) != 1")]
    NotCoprime { p: u32, q: u32 },
}

/// The lens space L(p, q) with `gcd(p, q) = 1` and `0 <= q < p`.
///
/// `L(1, 0)` is the 3-sphere; it is the ambient space of every lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: u32,
    q: u32,
}

impl LensSpace {
    pub fn new(p: u32, q: u32) -> Result<Self, LensError> {
        if p == 0 {
            return Err(LensError::ZeroOrder);
        }
        if q >= p {
            return Err(LensError::OutOfRange { p, q });
        }
        if gcd(p as i64, q as i64) != 1 {
            return Err(LensError::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    /// L(1, 0).
    pub fn sphere() -> Self {
        Self { p: 1, q: 0 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    /// Inverse of q modulo p (0 when p = 1).
    pub fn q_inverse(&self) -> u32 {
        if self.p == 1 {
            return 0;
        }
        mod_inverse(self.q as i64, self.p as i64).expect("q is a unit mod p") as u32
    }

    /// Reduces an integer into `[0, p)`.
    pub fn residue(&self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    /// `q^2 ≡ +1 (mod p)`.
    pub fn q_squared_is_plus_one(&self) -> bool {
        self.residue(self.q as i64 * self.q as i64 - 1) == 0
    }

    /// `q^2 ≡ -1 (mod p)`.
    pub fn q_squared_is_minus_one(&self) -> bool {
        self.residue(self.q as i64 * self.q as i64 + 1) == 0
    }

    /// `q ≡ ±1 (mod p)`.
    pub fn q_is_plus_minus_one(&self) -> bool {
        self.residue(self.q as i64 - 1) == 0 || self.residue(self.q as i64 + 1) == 0
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}
