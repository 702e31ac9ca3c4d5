//! Arithmetic in Z[i] and Z[zeta3], prime splitting, and the residue-field
//! reductions used by the power-residue certification tests.

use crate::arith::{self, PowerTestMode};
use crate::{Error, Result};
use serde::Serialize;
use std::fmt;

/// The two imaginary quadratic rings in play: Z[i] (omega = i, omega^2 = -1)
/// and Z[zeta3] (omega = zeta3, omega^2 = -omega - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Gaussian,
    Eisenstein,
}

impl Ring {
    /// The rational prime that ramifies: 2 in Z[i], 3 in Z[zeta3].
    pub fn ramified_prime(self) -> u64 {
        match self {
            Ring::Gaussian => 2,
            Ring::Eisenstein => 3,
        }
    }

    /// Residue class an odd unramified prime must lie in to split.
    fn splits(self, p: u64) -> bool {
        match self {
            Ring::Gaussian => p % 4 == 1,
            Ring::Eisenstein => p % 3 == 1,
        }
    }
}

/// Element a + b*omega of the chosen ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    pub ring: Ring,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, ring: Ring) -> Self {
        QuadInt { a, b, ring }
    }

    pub fn zero(ring: Ring) -> Self {
        QuadInt::new(0, 0, ring)
    }

    pub fn one(ring: Ring) -> Self {
        QuadInt::new(1, 0, ring)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// a^2 + b^2 (Gaussian) or a^2 - ab + b^2 (Eisenstein).
    pub fn norm(self) -> i64 {
        let (a, b) = (self.a as i128, self.b as i128);
        let n = match self.ring {
            Ring::Gaussian => a * a + b * b,
            Ring::Eisenstein => a * a - a * b + b * b,
        };
        i64::try_from(n).expect("norm overflows i64")
    }

    /// Complex conjugation; an involutive ring map with x * conj(x) = norm(x).
    pub fn conj(self) -> Self {
        match self.ring {
            Ring::Gaussian => QuadInt::new(self.a, -self.b, self.ring),
            // conj(zeta3) = zeta3^2 = -1 - zeta3
            Ring::Eisenstein => QuadInt::new(self.a - self.b, -self.b, self.ring),
        }
    }

    pub fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.ring, rhs.ring);
        QuadInt::new(self.a + rhs.a, self.b + rhs.b, self.ring)
    }

    pub fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.ring, rhs.ring);
        QuadInt::new(self.a - rhs.a, self.b - rhs.b, self.ring)
    }

    pub fn neg(self) -> Self {
        QuadInt::new(-self.a, -self.b, self.ring)
    }

    pub fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.ring, rhs.ring);
        let (a, b) = (self.a as i128, self.b as i128);
        let (c, d) = (rhs.a as i128, rhs.b as i128);
        let (x, y) = match self.ring {
            // (a+bi)(c+di) = ac - bd + (ad + bc)i
            Ring::Gaussian => (a * c - b * d, a * d + b * c),
            // omega^2 = -1 - omega
            Ring::Eisenstein => (a * c - b * d, a * d + b * c - b * d),
        };
        QuadInt::new(
            i64::try_from(x).expect("product overflows i64"),
            i64::try_from(y).expect("product overflows i64"),
            self.ring,
        )
    }

    /// Complex value of a + b*omega.
    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let omega = match self.ring {
            Ring::Gaussian => Complex64::new(0.0, 1.0),
            Ring::Eisenstein => Complex64::new(-0.5, 0.75f64.sqrt()),
        };
        Complex64::new(self.a as f64, 0.0) + omega * self.b as f64
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.ring {
            Ring::Gaussian => "i",
            Ring::Eisenstein => "w",
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{sym}"),
            (0, -1) => write!(f, "-{sym}"),
            (0, b) => write!(f, "{b}{sym}"),
            (a, 1) => write!(f, "{a}+{sym}"),
            (a, -1) => write!(f, "{a}-{sym}"),
            (a, b) if b < 0 => write!(f, "{a}-{}{sym}", -b),
            (a, b) => write!(f, "{a}+{b}{sym}"),
        }
    }
}

/// Splitting behaviour of an odd unramified prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitResult {
    /// p = norm(a + b*omega) with a, b > 0 and a minimal.
    Split { a: u64, b: u64 },
    Inert,
}

/// Splits an odd rational prime in the ring.
pub fn split_prime(p: u64, ring: Ring) -> Result<SplitResult> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == ring.ramified_prime() {
        return Err(Error::RamifiedPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument(
            "split_prime requires an odd prime".into(),
        ));
    }
    if !ring.splits(p) {
        return Ok(SplitResult::Inert);
    }
    // The minimal-a solution always has b > a, so scanning a ascending and
    // solving for b gives the normalized representative directly.
    match ring {
        Ring::Gaussian => {
            for a in 1.. {
                if a * a >= p {
                    break;
                }
                let r = p - a * a;
                let b = r.isqrt();
                if b * b == r {
                    return Ok(SplitResult::Split { a, b });
                }
            }
        }
        Ring::Eisenstein => {
            // b^2 - ab + (a^2 - p) = 0, so b = (a + sqrt(4p - 3a^2)) / 2.
            for a in 1.. {
                if 3 * a * a > 4 * p {
                    break;
                }
                let d = 4 * p - 3 * a * a;
                let s = d.isqrt();
                if s * s == d && (a + s) % 2 == 0 {
                    let b = (a + s) / 2;
                    if a * a + b * b - a * b == p {
                        return Ok(SplitResult::Split { a, b });
                    }
                }
            }
        }
    }
    Err(Error::InternalConsistency(format!(
        "no norm representation found for split prime {p}"
    )))
}

/// Which of the two conjugate degree-1 primes above a split p to reduce by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingChoice {
    /// omega maps to the smaller of the two roots mod p.
    First,
    Second,
}

/// Residue field of a prime above an odd unramified p: either F_p (split,
/// with omega identified with a root of its minimal polynomial mod p) or
/// F_p^2 (inert, pairs modulo x^2+1 resp. x^2+x+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueField {
    pub p: u64,
    pub ring: Ring,
    /// Image of omega for degree-1 fields; None marks the degree-2 field.
    pub omega_image: Option<u64>,
}

impl ResidueField {
    pub fn degree(&self) -> u32 {
        if self.omega_image.is_some() {
            1
        } else {
            2
        }
    }

    /// Number of elements p^f.
    pub fn order(&self) -> u64 {
        match self.omega_image {
            Some(_) => self.p,
            None => self.p * self.p,
        }
    }
}

/// The two roots of omega's minimal polynomial mod a split prime, ascending.
fn omega_roots(p: u64, ring: Ring) -> Result<(u64, u64)> {
    let SplitResult::Split { a, b } = split_prime(p, ring)? else {
        return Err(Error::InternalConsistency(format!(
            "omega_roots called for inert prime {p}"
        )));
    };
    // a + b*omega = 0 mod p for one prime above p, so omega = -a * b^{-1}.
    let b_inv = arith::mod_pow(b, p - 2, p)?;
    let r = (p - a % p) % p * b_inv % p;
    let other = match ring {
        Ring::Gaussian => p - r,             // roots of x^2 + 1 sum to 0
        Ring::Eisenstein => (p - 1 - r) % p, // roots of x^2 + x + 1 sum to -1
    };
    let (lo, hi) = if r < other { (r, other) } else { (other, r) };
    debug_assert!(match ring {
        Ring::Gaussian => (lo * lo + 1) % p == 0,
        Ring::Eisenstein => (lo * lo + lo + 1) % p == 0,
    });
    Ok((lo, hi))
}

/// Residue field of a chosen prime above p.
pub fn residue_field(p: u64, ring: Ring, choice: EmbeddingChoice) -> Result<ResidueField> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == ring.ramified_prime() {
        return Err(Error::RamifiedPrime(p));
    }
    if ring.splits(p) {
        let (lo, hi) = omega_roots(p, ring)?;
        let omega = match choice {
            EmbeddingChoice::First => lo,
            EmbeddingChoice::Second => hi,
        };
        Ok(ResidueField {
            p,
            ring,
            omega_image: Some(omega),
        })
    } else {
        Ok(ResidueField {
            p,
            ring,
            omega_image: None,
        })
    }
}

/// Element of a residue field: a single residue for F_p, a pair c0 + c1*x
/// for F_p^2 (x the image of omega).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FieldElt {
    Prime(u64),
    Ext(u64, u64),
}

impl FieldElt {
    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElt::Prime(0) | FieldElt::Ext(0, 0))
    }
}

/// Ring map a + b*omega -> field element; rejects arguments whose norm is
/// divisible by p (they lie in a prime above p).
pub fn reduce(x: QuadInt, field: &ResidueField) -> Result<FieldElt> {
    if x.ring != field.ring {
        return Err(Error::InvalidArgument("ring mismatch".into()));
    }
    let p = field.p as i64;
    if x.norm().rem_euclid(p) == 0 {
        return Err(Error::InvalidArgument(format!(
            "{x} has norm divisible by {p}; it lies in a prime above {p}"
        )));
    }
    let a = x.a.rem_euclid(p) as u64;
    let b = x.b.rem_euclid(p) as u64;
    match field.omega_image {
        Some(t) => Ok(FieldElt::Prime((a + b % field.p * t) % field.p)),
        None => Ok(FieldElt::Ext(a, b)),
    }
}

fn ext_mul(x: (u64, u64), y: (u64, u64), p: u64, ring: Ring) -> (u64, u64) {
    let (a, b) = (x.0 as u128, x.1 as u128);
    let (c, d) = (y.0 as u128, y.1 as u128);
    let p128 = p as u128;
    let bd = b * d % p128;
    match ring {
        // x^2 = -1
        Ring::Gaussian => (
            ((a * c % p128 + p128 - bd) % p128) as u64,
            ((a * d + b * c) % p128) as u64,
        ),
        // x^2 = -x - 1
        Ring::Eisenstein => (
            ((a * c % p128 + p128 - bd) % p128) as u64,
            ((a * d % p128 + b * c % p128 + 2 * p128 - 2 * bd % p128... ) % p128) as u64,
        ),
    }
}

fn ext_pow(mut x: (u64, u64), mut e: u64, p: u64, ring: Ring) -> (u64, u64) {
    let mut acc = (1u64, 0u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = ext_mul(acc, x, p, ring);
        }
        x = ext_mul(x, x, p, ring);
        e >>= 1;
    }
    acc
}

/// Is alpha a q-th power in the residue field?
pub fn ff_is_qth_power(
    alpha: FieldElt,
    q: u64,
    field: &ResidueField,
    mode: PowerTestMode,
) -> Result<bool> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument(
            "q-th power test requires a nonzero element".into(),
        ));
    }
    if !arith::is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let order = field.order() - 1; // |K*|
    match mode {
        PowerTestMode::Exponent => {
            let e = order / arith::gcd(q, order);
            match alpha {
                FieldElt::Prime(a) => Ok(arith::mod_pow(a, e, field.p)? == 1),
                FieldElt::Ext(a, b) => Ok(ext_pow((a, b), e, field.p, field.ring) == (1, 0)),
            }
        }
        PowerTestMode::BruteForce => {
            if field.order() >= 1_000_000 {
                return Err(Error::InvalidArgument(format!(
                    "brute-force power test limited to fields below 10^6 elements, got {}",
                    field.order()
                )));
            }
            match alpha {
                FieldElt::Prime(a) => {
                    arith::qth_power_residue_test(a, q, field.p, PowerTestMode::BruteForce)
                }
                FieldElt::Ext(a, b) => {
                    let p = field.p;
                    let mut seen = vec![false; (p * p) as usize];
                    for c0 in 0..p {
                        for c1 in 0..p {
                            if c0 == 0 && c1 == 0 {
                                continue;
                            }
                            let y = ext_pow((c0, c1), q, p, field.ring);
                            seen[(y.0 * p + y.1) as usize] = true;
                        }
                    }
                    Ok(seen[(a * p + b) as usize])
                }
            }
        }
    }
}
