//! Unit groups `(Z/m)^×`, their subgroups, quotients and invariant-factor
//! decompositions.
//!
//! Everything here is explicit: a subgroup is its sorted list of residues and a
//! quotient is its list of cosets. The moduli that occur in practice are tiny
//! (a few hundred at most), so exhaustive enumeration is both the simplest and
//! the most easily audited representation.
//!
//! Residues are always stored reduced modulo `m`. For `m = 1` the single unit
//! is the residue `0` (the class of `1`); moduli `1` and `2` both describe the
//! trivial group and are normalized to `1` by every constructor.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus must be a positive integer")]
    ZeroModulus,
    #[error("{residue} is not a unit modulo {modulus}")]
    NotAUnit { residue: u64, modulus: u64 },
    #[error("not a subgroup of (Z/{modulus})^x: {reason}")]
    NotASubgroup { modulus: u64, reason: String },
    #[error("{target} is not a multiple of {modulus}")]
    NotAMultiple { modulus: u64, target: u64 },
    #[error("{target} does not divide {modulus}")]
    NotADivisor { modulus: u64, target: u64 },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("coordinates {coords:?} do not match invariant factors {factors:?}")]
    BadCoordinates { coords: Vec<u64>, factors: Vec<u64> },
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// `1` and `2` both give the trivial unit group.
pub fn normalize_modulus(m: u64) -> u64 {
    if m == 2 {
        1
    } else {
        m
    }
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(p, e)` pairs with `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An element of `(Z/m)^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElt {
    pub residue: u64,
    pub modulus: u64,
}

impl GroupElt {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let r = residue % modulus;
        if r.gcd(&modulus) != 1 && modulus != 1 {
            return Err(GroupError::NotAUnit { residue, modulus });
        }
        Ok(Self { residue: r, modulus })
    }
}

/// All residues in `[1, m)` coprime to `m`.
///
/// `m = 1` yields the empty list; the trivial group still has order one.
pub fn unit_group(m: u64) -> Result<Vec<GroupElt>> {
    if m == 0 {
        return Err(GroupError::ZeroModulus);
    }
    Ok((1..m)
        .filter(|r| r.gcd(&m) == 1)
        .map(|residue| GroupElt { residue, modulus: m })
        .collect())
}

/// Units modulo `m` including the identity class, which is `0` when `m = 1`.
pub(crate) fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        vec![0]
    } else {
        (1..m).filter(|r| r.gcd(&m) == 1).collect()
    }
}

fn check_unit(r: u64, m: u64) -> Result<u64> {
    let red = r % m;
    if m != 1 && red.gcd(&m) != 1 {
        return Err(GroupError::NotAUnit { residue: r, modulus: m });
    }
    Ok(red)
}

/// A subgroup of `(Z/m)^×`, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl Subgroup {
    pub fn trivial(m: u64) -> Result<Self> {
        Self::generated(m, &[])
    }

    pub fn whole(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let m = normalize_modulus(m);
        Ok(Self { modulus: m, elements: units(m) })
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(m: u64, gens: &[u64]) -> Result<Self> {
        if m == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let m = normalize_modulus(m);
        let gens = gens
            .iter()
            .map(|&g| check_unit(g, m))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = BTreeSet::new();
        let one = 1 % m;
        seen.insert(one);
        let mut frontier = vec![one];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = mul_mod(x, g, m);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self { modulus: m, elements: seen.into_iter().collect() })
    }

    /// Validates an explicit element set.
    pub fn from_elements(m: u64, elements: &[u64]) -> Result<Self> {
        if m == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let m = normalize_modulus(m);
        let set = elements
            .iter()
            .map(|&e| check_unit(e, m))
            .collect::<Result<BTreeSet<_>>>()?;
        if !set.contains(&(1 % m)) {
            return Err(GroupError::NotASubgroup { modulus: m, reason: "does not contain 1".into() });
        }
        for &a in &set {
            for &b in &set {
                let c = mul_mod(a, b, m);
                if !set.contains(&c) {
                    return Err(GroupError::NotASubgroup {
                        modulus: m,
                        reason: format!("{a}*{b} = {c} is missing"),
                    });
                }
            }
        }
        Ok(Self { modulus: m, elements: set.into_iter().collect() })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, r: u64) -> bool {
        self.elements.binary_search(&(r % self.modulus)).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.modulus, other.modulus, "subgroups of different unit groups");
        let elements = self.elements.iter().copied().filter(|&e| other.contains(e)).collect();
        Subgroup { modulus: self.modulus, elements }
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.modulus, other.modulus, "subgroups of different unit groups");
        let gens: Vec<u64> = self.elements.iter().chain(&other.elements).copied().collect();
        Subgroup::generated(self.modulus, &gens).expect("elements are units")
    }

    /// Image under reduction `(Z/m)^× → (Z/d)^×` for `d | m`.
    pub fn reduce_to(&self, d: u64) -> Result<Subgroup> {
        if d == 0 || !self.modulus.is_multiple_of(d) {
            return Err(GroupError::NotADivisor { modulus: self.modulus, target: d });
        }
        let d = normalize_modulus(d);
        let set: BTreeSet<u64> = self.elements.iter().map(|&e| e % d).collect();
        Ok(Subgroup { modulus: d, elements: set.into_iter().collect() })
    }

    /// Preimage under reduction `(Z/big)^× → (Z/m)^×` for `m | big`.
    pub fn lift_to(&self, big: u64) -> Result<Subgroup> {
        let big = normalize_modulus(big);
        if big == 0 || !big.is_multiple_of(self.modulus) {
            return Err(GroupError::NotAMultiple { modulus: self.modulus, target: big });
        }
        let elements = units(big).into_iter().filter(|&u| self.contains(u)).collect();
        Ok(Subgroup { modulus: big, elements })
    }

    /// Kernel of reduction `(Z/m)^× → (Z/d)^×`.
    pub fn reduction_kernel(m: u64, d: u64) -> Result<Subgroup> {
        Subgroup::trivial(d)?.lift_to(m)
    }
}

/// All subgroups of `(Z/m)^×`, sorted by (order, elements).
pub fn all_subgroups(m: u64) -> Result<Vec<Subgroup>> {
    let whole = Subgroup::whole(m)?;
    let m = whole.modulus;
    let cyclic: BTreeSet<Subgroup> = whole
        .elements
        .iter()
        .map(|&g| Subgroup::generated(m, &[g]).expect("unit"))
        .collect();
    let mut all: BTreeSet<Subgroup> = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = all.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}

/// Invariant factors `d_1 | d_2 | … | d_r`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantFactors(pub Vec<u64>);

impl InvariantFactors {
    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// The quotient `(Z/m)^× / H`, with cosets indexed by their smallest residue.
#[derive(Debug, Clone)]
pub struct Quotient {
    modulus: u64,
    subgroup: Subgroup,
    reps: Vec<u64>,
    index: Vec<u32>,
}

const NOT_A_UNIT: u32 = u32::MAX;

impl Quotient {
    pub fn new(h: &Subgroup) -> Self {
        let m = h.modulus;
        let mut index = vec![NOT_A_UNIT; m as usize];
        let mut reps = Vec::new();
        for u in units(m) {
            if index[u as usize] != NOT_A_UNIT {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(u);
            for &e in &h.elements {
                index[mul_mod(u, e, m) as usize] = id;
            }
        }
        Self { modulus: m, subgroup: h.clone(), reps, index }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives, ascending.
    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> u64 {
        self.reps[i]
    }

    pub fn identity(&self) -> usize {
        self.index[(1 % self.modulus) as usize] as usize
    }

    pub fn coset_of(&self, residue: u64) -> Result<usize> {
        let r = residue % self.modulus;
        match self.index[r as usize] {
            NOT_A_UNIT => Err(GroupError::NotAUnit { residue, modulus: self.modulus }),
            i => Ok(i as usize),
        }
    }

    pub fn coset_elements(&self, i: usize) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .subgroup
            .elements
            .iter()
            .map(|&e| mul_mod(self.reps[i], e, self.modulus))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn cosets(&self) -> Vec<Vec<u64>> {
        (0..self.order()).map(|i| self.coset_elements(i)).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[mul_mod(self.reps[a], self.reps[b], self.modulus) as usize] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        self.index[pow_mod(self.reps[a], e, self.modulus) as usize] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        // x^(φ(m)-1) is the inverse of every unit; m = 1 is its own case.
        if self.modulus == 1 {
            return 0;
        }
        self.pow(a, euler_phi(self.modulus) - 1)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let id = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup of the quotient generated by `gens`, as sorted coset indices.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Preimage in `(Z/m)^×` of a set of cosets.
    pub fn preimage(&self, cosets: &[usize]) -> Vec<u64> {
        let mut v: Vec<u64> = cosets.iter().flat_map(|&c| self.coset_elements(c)).collect();
        v.sort_unstable();
        v
    }

    /// Invariant factors from the sizes of the `p^k`-torsion subgroups.
    ///
    /// For a `p`-group of type `λ`, `#G[p^k] = p^(Σ min(λ_i, k))`, so the
    /// successive differences of the exponents count the parts `λ_i ≥ k`.
    pub fn invariant_factors(&self) -> InvariantFactors {
        let n = self.order() as u64;
        let mut columns: Vec<Vec<u64>> = Vec::new();
        for (p, e) in factorize(n) {
            let mut parts_at_least: Vec<u32> = Vec::new();
            let mut prev = 0u32;
            let mut pk = p;
            loop {
                let count = (0..self.order()).filter(|&a| self.pow(a, pk) == self.identity()).count() as u64;
                let s = log_exact(count, p);
                parts_at_least.push(s - prev);
                prev = s;
                if s == e {
                    break;
                }
                pk *= p;
            }
            // parts_at_least[j] = #{i : λ_i ≥ j+1}; rebuild λ descending.
            let rank = parts_at_least[0] as usize;
            let mut lambda = vec![0u32; rank];
            for cnt in &parts_at_least {
                for l in lambda.iter_mut().take(*cnt as usize) {
                    *l += 1;
                }
            }
            columns.push(lambda.iter().map(|&l| p.pow(l)).collect());
        }
        let rank = columns.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for col in columns {
            // col is descending; align to the largest factor.
            for (j, q) in col.into_iter().enumerate() {
                factors[rank - 1 - j] *= q;
            }
        }
        InvariantFactors(factors)
    }

    /// Deterministic basis adapted to the invariant factors: `gens[i]` has
    /// order `factors[i]` and the map from `Π Z/factors[i]` is bijective.
    ///
    /// Generators are chosen from the largest factor down, trying coset
    /// representatives in ascending order, with backtracking.
    pub fn auto_basis(&self) -> Basis {
        let factors = self.invariant_factors();
        let mut chosen: Vec<usize> = Vec::new();
        let found = self.search_basis(factors.as_slice(), &mut chosen);
        assert!(found, "every finite abelian group has a basis");
        chosen.reverse();
        let gens: Vec<u64> = chosen.iter().map(|&i| self.reps[i]).collect();
        self.basis(&gens).expect("search produced a basis")
    }

    fn search_basis(&self, factors: &[u64], chosen: &mut Vec<usize>) -> bool {
        let depth = chosen.len();
        if depth == factors.len() {
            return true;
        }
        let want = factors[factors.len() - 1 - depth];
        let target: u64 = factors[factors.len() - 1 - depth..].iter().product();
        for a in 0..self.order() {
            if self.element_order(a) != want {
                continue;
            }
            chosen.push(a);
            if self.generated(chosen).len() as u64 == target && self.search_basis(factors, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Validates a declared basis given by residues (any coset member).
    pub fn basis(&self, gens: &[u64]) -> Result<Basis> {
        let factors = self.invariant_factors();
        if gens.len() != factors.rank() {
            return Err(GroupError::InvalidBasis(format!(
                "expected {} generators for invariant factors {:?}, got {}",
                factors.rank(),
                factors.0,
                gens.len()
            )));
        }
        let idx = gens.iter().map(|&g| self.coset_of(g)).collect::<Result<Vec<_>>>()?;
        for (i, (&g, &d)) in idx.iter().zip(factors.as_slice()).enumerate() {
            let ord = self.element_order(g);
            if ord != d {
                return Err(GroupError::InvalidBasis(format!(
                    "generator {} has order {ord}, expected {d}",
                    gens[i]
                )));
            }
        }
        if self.generated(&idx).len() != self.order() {
            return Err(GroupError::InvalidBasis("generators do not span the group".into()));
        }
        let mut coords = vec![Vec::new(); self.order()];
        let mut tuple = vec![0u64; factors.rank()];
        loop {
            let mut x = self.identity();
            for (k, &t) in tuple.iter().enumerate() {
                x = self.mul(x, self.pow(idx[k], t));
            }
            coords[x] = tuple.clone();
            // odometer
            let mut k = tuple.len();
            loop {
                if k == 0 {
                    let canonical: Vec<u64> = idx.iter().map(|&i| self.reps[i]).collect();
                    let by_coords = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
                    return Ok(Basis { factors, generators: canonical, coords, by_coords });
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < factors.0[k] {
                    break;
                }
                tuple[k] = 0;
            }
        }
    }
}

fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}

/// Coordinates of a quotient group relative to chosen generators.
#[derive(Debug, Clone)]
pub struct Basis {
    factors: InvariantFactors,
    generators: Vec<u64>,
    coords: Vec<Vec<u64>>,
    by_coords: BTreeMap<Vec<u64>, usize>,
}

impl Basis {
    pub fn factors(&self) -> &InvariantFactors {
        &self.factors
    }

    /// Generators as canonical coset representatives.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn coordinates(&self, coset: usize) -> &[u64] {
        &self.coords[coset]
    }

    pub fn coset_at(&self, coords: &[u64]) -> Result<usize> {
        self.by_coords.get(coords).copied().ok_or_else(|| GroupError::BadCoordinates {
            coords: coords.to_vec(),
            factors: self.factors.0.clone(),
        })
    }
}

pub fn subgroup_generated(m: u64, gens: &[u64]) -> Result<Subgroup> {
    Subgroup::generated(m, gens)
}

/// Invariant factors of `(Z/m)^× / H`.
pub fn invariant_factors(m: u64, h: &Subgroup) -> Result<InvariantFactors> {
    Ok(quotient_cosets(m, h)?.invariant_factors())
}

pub fn quotient_cosets(m: u64, h: &Subgroup) -> Result<Quotient> {
    if m == 0 {
        return Err(GroupError::ZeroModulus);
    }
    if normalize_modulus(m) != h.modulus {
        return Err(GroupError::NotASubgroup {
            modulus: m,
            reason: format!("subgroup lives modulo {}", h.modulus),
        });
    }
    Ok(Quotient::new(h))
}

/// Histogram `order → count` of element orders, a complete isomorphism
/// invariant for finite abelian groups.
pub fn order_histogram(q: &Quotient) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for a in 0..q.order() {
        *h.entry(q.element_order(a)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residues(v: Vec<GroupElt>) -> Vec<u64> {
        v.into_iter().map(|e| e.residue).collect()
    }

    #[test]
    fn unit_group_small_cases() {
        assert_eq!(residues(unit_group(7).unwrap()), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(unit_group(51).unwrap().len(), 32);
        assert!(unit_group(1).unwrap().is_empty());
        assert_eq!(unit_group(0), Err(GroupError::ZeroModulus));
    }

    #[test]
    fn phi_matches_enumeration() {
        for m in 2..300 {
            assert_eq!(euler_phi(m), unit_group(m).unwrap().len() as u64, "m = {m}");
        }
    }

    #[test]
    fn generated_subgroups() {
        assert_eq!(Subgroup::generated(7, &[2]).unwrap().elements(), &[1, 2, 4]);
        assert_eq!(Subgroup::generated(51, &[16]).unwrap().elements(), &[1, 16]);
        assert_eq!(Subgroup::generated(7, &[]).unwrap().elements(), &[1]);
        assert!(matches!(Subgroup::generated(51, &[3]), Err(GroupError::NotAUnit { .. })));
    }

    #[test]
    fn from_elements_rejects_non_closed() {
        assert!(Subgroup::from_elements(7, &[1, 2]).is_err());
        assert!(Subgroup::from_elements(7, &[2, 4]).is_err());
        assert!(Subgroup::from_elements(7, &[1, 2, 4]).is_ok());
    }

    #[test]
    fn modulus_two_is_trivial() {
        let h = Subgroup::whole(2).unwrap();
        assert_eq!(h.modulus(), 1);
        assert_eq!(h.order(), 1);
    }

    #[test]
    fn invariant_factor_examples() {
        let h = Subgroup::generated(51, &[16]).unwrap();
        assert_eq!(invariant_factors(51, &h).unwrap().0, vec![2, 8]);
        assert_eq!(invariant_factors(7, &Subgroup::trivial(7).unwrap()).unwrap().0, vec![6]);
        assert_eq!(invariant_factors(8, &Subgroup::trivial(8).unwrap()).unwrap().0, vec![2, 2]);
        assert_eq!(invariant_factors(1, &Subgroup::trivial(1).unwrap()).unwrap().0, Vec::<u64>::new());
    }

    #[test]
    fn cosets_mod_seven() {
        let h = Subgroup::generated(7, &[2]).unwrap();
        let q = quotient_cosets(7, &h).unwrap();
        assert_eq!(q.cosets(), vec![vec![1, 2, 4], vec![3, 5, 6]]);
        let c = q.coset_of(3).unwrap();
        assert_eq!(q.coset_elements(q.mul(c, c)), vec![1, 2, 4]);
        assert_eq!(q.inv(q.identity()), q.identity());
    }

    #[test]
    fn declared_basis_rejects_wrong_orders() {
        let h = Subgroup::generated(51, &[16]).unwrap();
        let q = Quotient::new(&h);
        assert!(q.basis(&[35, 37]).is_ok());
        assert!(q.basis(&[37, 35]).is_err());
        assert!(q.basis(&[35]).is_err());
    }

    #[test]
    fn all_subgroups_of_z8_units() {
        // (Z/8)^× ≅ (Z/2)^2 has five subgroups.
        assert_eq!(all_subgroups(8).unwrap().len(), 5);
        // (Z/7)^× cyclic of order 6: one subgroup per divisor.
        assert_eq!(all_subgroups(7).unwrap().len(), 4);
    }
}
