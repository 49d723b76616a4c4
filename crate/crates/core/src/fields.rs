//! Abelian number fields as subfields of cyclotomic fields.
//!
//! A field is the pair `(m, H)` where `m` is its conductor and `H ≤ (Z/m)^×`
//! is the subgroup fixing it inside `Q(ζ_m)`. Construction always normalizes
//! to the minimal conductor, so two values are equal exactly when they
//! describe the same field.

use std::fmt;

use num_integer::Integer;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::groups::{self, GroupError, Quotient, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("Q(sqrt({0})) is not a quadratic field")]
    NotQuadratic(i64),
    #[error("{sub} is not a subfield of {field}")]
    NotASubfield { sub: String, field: String },
}

pub type Result<T> = std::result::Result<T, FieldError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianField {
    conductor: u64,
    fixed: Subgroup,
}

impl Serialize for AbelianField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianField", 5)?;
        st.serialize_field("name", &self.to_string())?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("fixed_group", self.fixed.elements())?;
        st.serialize_field("is_cm", &self.is_cm())?;
        st.end()
    }
}

impl AbelianField {
    /// The fixed field of `h` inside `Q(ζ_m)`, normalized to its conductor.
    pub fn from_fixed_group(h: Subgroup) -> Self {
        let m = h.modulus();
        for d in groups::divisors(m) {
            let kernel = Subgroup::reduction_kernel(m, d).expect("d divides m");
            if kernel.is_subgroup_of(&h) {
                let fixed = h.reduce_to(d).expect("d divides m");
                return Self { conductor: fixed.modulus(), fixed };
            }
        }
        unreachable!("m itself always qualifies")
    }

    pub fn rational() -> Self {
        Self::from_fixed_group(Subgroup::trivial(1).expect("m = 1"))
    }

    pub fn cyclotomic(m: u64) -> Result<Self> {
        Ok(Self::from_fixed_group(Subgroup::trivial(m)?))
    }

    /// `Q(√d)` for squarefree `d ∉ {0, 1}`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(FieldError::NotQuadratic(d));
        }
        if !is_squarefree(d.unsigned_abs()) {
            return Err(FieldError::NotSquarefree(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let m = disc.unsigned_abs();
        let kernel: Vec<u64> = groups::units(m)
            .into_iter()
            .filter(|&r| kronecker(disc, r, m) == 1)
            .collect();
        let h = Subgroup::from_elements(m, &kernel)?;
        Ok(Self::from_fixed_group(h))
    }

    /// Maximal totally real subfield of `Q(ζ_m)`.
    pub fn real_subfield_of(m: u64) -> Result<Self> {
        Ok(Self::cyclotomic(m)?.maximal_real_subfield())
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `H ≤ (Z/conductor)^×`, the Galois group of `Q(ζ_conductor)` over the field.
    pub fn fixed_group(&self) -> &Subgroup {
        &self.fixed
    }

    pub fn degree(&self) -> u64 {
        let phi = if self.conductor == 1 { 1 } else { groups::euler_phi(self.conductor) };
        phi / self.fixed.order()
    }

    pub fn galois_group(&self) -> Quotient {
        Quotient::new(&self.fixed)
    }

    fn minus_one(&self) -> u64 {
        (self.conductor - 1) % self.conductor
    }

    pub fn is_totally_real(&self) -> bool {
        self.fixed.contains(self.minus_one())
    }

    pub fn is_cm(&self) -> bool {
        self.degree() > 1 && !self.is_totally_real()
    }

    /// Complex conjugation as the canonical representative of its coset.
    pub fn complex_conjugation(&self) -> u64 {
        let q = self.galois_group();
        q.rep(q.coset_of(self.minus_one()).expect("-1 is a unit"))
    }

    pub fn maximal_real_subfield(&self) -> Self {
        let h = self.fixed.join(&Subgroup::generated(self.conductor, &[self.minus_one()]).expect("unit"));
        Self::from_fixed_group(h)
    }

    /// Fixed group lifted to `(Z/big)^×`; `big` must be a multiple of the conductor.
    pub fn lift_fixed_group(&self, big: u64) -> Result<Subgroup> {
        Ok(self.fixed.lift_to(big)?)
    }

    pub fn compositum(&self, other: &Self) -> Self {
        let big = self.conductor.lcm(&other.conductor);
        let a = self.lift_fixed_group(big).expect("multiple");
        let b = other.lift_fixed_group(big).expect("multiple");
        Self::from_fixed_group(a.intersection(&b))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let big = self.conductor.lcm(&other.conductor);
        let a = self.lift_fixed_group(big).expect("multiple");
        let b = other.lift_fixed_group(big).expect("multiple");
        Self::from_fixed_group(a.join(&b))
    }

    /// `self ⊆ other`.
    pub fn is_subfield_of(&self, other: &Self) -> bool {
        let big = self.conductor.lcm(&other.conductor);
        let a = self.lift_fixed_group(big).expect("multiple");
        let b = other.lift_fixed_group(big).expect("multiple");
        b.is_subgroup_of(&a)
    }

    /// Number of roots of unity in the field: the largest `N` with `Q(ζ_N)` inside.
    pub fn roots_of_unity_order(&self) -> u64 {
        groups::divisors(2 * self.conductor)
            .into_iter()
            .rev()
            .find(|&n| Self::cyclotomic(n).expect("n > 0").is_subfield_of(self))
            .expect("Q(ζ_2) = Q lies in every field")
    }

    /// Restriction `Gal(self/Q) → Gal(sub/Q)` as a table over coset indices.
    pub fn restriction_to(&self, sub: &Self) -> Result<Vec<usize>> {
        if !sub.is_subfield_of(self) {
            return Err(FieldError::NotASubfield { sub: sub.to_string(), field: self.to_string() });
        }
        let big = self.galois_group();
        let small = sub.galois_group();
        Ok(big
            .reps()
            .iter()
            .map(|&r| small.coset_of(r % sub.conductor).expect("units reduce to units"))
            .collect())
    }

    /// `d` with `self = Q(√d)`, when the field is quadratic.
    pub fn quadratic_radicand(&self) -> Option<i64> {
        if self.degree() != 2 {
            return None;
        }
        groups::divisors(self.conductor)
            .into_iter()
            .flat_map(|a| [a as i64, -(a as i64)])
            .filter(|&d| d != 1 && is_squarefree(d.unsigned_abs()))
            .find(|&d| Self::quadratic(d).map(|f| &f == self).unwrap_or(false))
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            return write!(f, "Q");
        }
        if self.fixed.is_trivial() {
            return write!(f, "Q(zeta_{})", self.conductor);
        }
        if let Some(d) = self.quadratic_radicand() {
            return write!(f, "Q(sqrt({d}))");
        }
        if *self == Self::real_subfield_of(self.conductor).expect("m > 0") {
            return write!(f, "Q(zeta_{})^+", self.conductor);
        }
        write!(f, "Q(zeta_{})^{:?}", self.conductor, self.fixed.elements())
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && groups::factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(disc/r)` for a fundamental discriminant and a unit
/// residue `r` modulo `|disc|`; evaluated at an odd representative.
fn kronecker(disc: i64, r: u64, m: u64) -> i32 {
    let n = if r.is_multiple_of(2) { r + m } else { r };
    jacobi(disc, n)
}
