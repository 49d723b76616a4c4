//! CM-types on abelian CM fields, their reflex data, and restriction
//! multiplicities for products of CM abelian varieties.
//!
//! Embeddings `K → C` of an abelian field are identified with elements of
//! `Gal(K/Q)`, i.e. with cosets of the fixed group `H` in `(Z/m)^×`. A CM-type
//! is a set of cosets containing exactly one of each pair `{g, c·g}` where `c`
//! is complex conjugation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{AbelianField, FieldError};
use crate::groups::{GroupError, Quotient, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not a CM field")]
    NotCm(String),
    #[error("not a CM-type: {element} and its complex conjugate {conjugate} are both present")]
    ConjugatePair { element: u64, conjugate: u64 },
    #[error("not a CM-type: {element} is listed twice")]
    Repeated { element: u64 },
    #[error("not a CM-type: expected {expected} elements, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("{base} is not contained in component field {component}")]
    NotContained { base: String, component: String },
    #[error("r = 2*dim/[k:Q] = {numerator}/{denominator} is not an integer")]
    NonIntegralR { numerator: u64, denominator: u64 },
    #[error("no CM-type on {0} balances the multiplicities")]
    CannotBalance(String),
}

pub type Result<T> = std::result::Result<T, CmError>;

/// A CM field together with a half-system of its Galois group.
#[derive(Debug, Clone)]
pub struct CmType {
    field: AbelianField,
    group: Quotient,
    psi: Vec<usize>,
}

impl PartialEq for CmType {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.psi == other.psi
    }
}

impl Eq for CmType {}

impl CmType {
    /// Validates `labels` (residues modulo the conductor) as a CM-type on `field`.
    pub fn new(field: &AbelianField, labels: &[u64]) -> Result<Self> {
        if !field.is_cm() {
            return Err(CmError::NotCm(field.to_string()));
        }
        let group = field.galois_group();
        let mut psi = Vec::with_capacity(labels.len());
        for &l in labels {
            let i = group.coset_of(l)?;
            if psi.contains(&i) {
                return Err(CmError::Repeated { element: group.rep(i) });
            }
            psi.push(i);
        }
        Self::from_cosets(field.clone(), group, psi)
    }

    pub(crate) fn from_cosets(field: AbelianField, group: Quotient, mut psi: Vec<usize>) -> Result<Self> {
        let conj = group.coset_of(field.complex_conjugation())?;
        for &i in &psi {
            let j = group.mul(conj, i);
            if psi.contains(&j) {
                return Err(CmError::ConjugatePair { element: group.rep(i), conjugate: group.rep(j) });
            }
        }
        let expected = group.order() / 2;
        if psi.len() != expected {
            return Err(CmError::WrongSize { expected, got: psi.len() });
        }
        psi.sort_unstable();
        Ok(Self { field, group, psi })
    }

    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    pub fn galois_group(&self) -> &Quotient {
        &self.group
    }

    /// Coset indices of the elements of the type, ascending.
    pub fn psi_indices(&self) -> &[usize] {
        &self.psi
    }

    /// Canonical residues of the elements of the type, ascending.
    pub fn psi(&self) -> Vec<u64> {
        self.psi.iter().map(|&i| self.group.rep(i)).collect()
    }

    pub fn dimension(&self) -> u64 {
        self.psi.len() as u64
    }

    fn conjugation(&self) -> usize {
        self.group.coset_of(self.field.complex_conjugation()).expect("unit")
    }

    /// `g·Ψ` for a Galois element given by residue.
    pub fn translate(&self, g: u64) -> Result<Self> {
        let gi = self.group.coset_of(g)?;
        let psi = self.psi.iter().map(|&i| self.group.mul(gi, i)).collect();
        Self::from_cosets(self.field.clone(), self.group.clone(), psi)
    }

    /// The conjugate type `c·Ψ`.
    pub fn conjugate(&self) -> Self {
        let c = self.conjugation();
        let psi = self.psi.iter().map(|&i| self.group.mul(c, i)).collect();
        Self::from_cosets(self.field.clone(), self.group.clone(), psi).expect("conjugate of a CM-type")
    }

    /// `{g : g·Ψ = Ψ}` as coset indices.
    pub fn stabilizer(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| {
                let mut moved: Vec<usize> = self.psi.iter().map(|&i| self.group.mul(g, i)).collect();
                moved.sort_unstable();
                moved == self.psi
            })
            .collect()
    }

    pub fn stabilizer_reps(&self) -> Vec<u64> {
        self.stabilizer().into_iter().map(|i| self.group.rep(i)).collect()
    }

    /// Preimage of the stabilizer in `(Z/m)^×`.
    pub fn stabilizer_lift(&self) -> Subgroup {
        let elems = self.group.preimage(&self.stabilizer());
        Subgroup::from_elements(self.group.modulus(), &elems).expect("preimage of a subgroup")
    }

    /// Trivial stabilizer; equivalently the type is not induced from a proper
    /// CM subfield and the associated CM abelian variety is absolutely simple.
    pub fn is_primitive(&self) -> bool {
        self.stabilizer().len() == 1
    }

    /// Fixed field of the stabilizer.
    pub fn reflex_field(&self) -> AbelianField {
        AbelianField::from_fixed_group(self.stabilizer_lift())
    }

    /// Reflex type on the reflex field under the chosen convention.
    pub fn reflex_type(&self, convention: ReflexConvention) -> ReflexType {
        let reflex = self.reflex_field();
        let moved: Vec<usize> = match convention {
            ReflexConvention::Inverse => self.psi.iter().map(|&i| self.group.inv(i)).collect(),
            ReflexConvention::Conjugate => {
                let c = self.conjugation();
                self.psi.iter().map(|&i| self.group.mul(c, i)).collect()
            }
        };
        let small = reflex.galois_group();
        let mut image: Vec<usize> = moved
            .iter()
            .map(|&i| small.coset_of(self.group.rep(i) % reflex.conductor()).expect("unit"))
            .collect();
        image.sort_unstable();
        image.dedup();
        let cm_type = Self::from_cosets(reflex, small, image).expect("reflex of a CM-type is a CM-type");
        ReflexType { convention, cm_type }
    }

    /// Every CM-type on `field`, in a fixed order: pairs `{g, c·g}` are listed
    /// by their smaller coset index and bit `i` of the counter selects the
    /// larger member of pair `i`.
    pub fn all_on(field: &AbelianField) -> Result<Vec<Self>> {
        let (group, pairs) = Self::conjugate_pairs(field)?;
        Ok((0u64..1 << pairs.len()).map(|mask| Self::select(field, &group, &pairs, mask)).collect())
    }

    /// The first entry of [`CmType::all_on`], without enumerating the rest.
    pub fn first_on(field: &AbelianField) -> Result<Self> {
        let (group, pairs) = Self::conjugate_pairs(field)?;
        Ok(Self::select(field, &group, &pairs, 0))
    }

    fn conjugate_pairs(field: &AbelianField) -> Result<(Quotient, Vec<(usize, usize)>)> {
        if !field.is_cm() {
            return Err(CmError::NotCm(field.to_string()));
        }
        let group = field.galois_group();
        let c = group.coset_of(field.complex_conjugation())?;
        let pairs = (0..group.order())
            .filter_map(|i| {
                let j = group.mul(c, i);
                (i < j).then_some((i, j))
            })
            .collect();
        Ok((group, pairs))
    }

    fn select(field: &AbelianField, group: &Quotient, pairs: &[(usize, usize)], mask: u64) -> Self {
        let psi = pairs
            .iter()
            .enumerate()
            .map(|(b, &(lo, hi))| if mask >> b & 1 == 1 { hi } else { lo })
            .collect();
        Self::from_cosets(field.clone(), group.clone(), psi).expect("half-system by construction")
    }
}

impl Serialize for CmType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CmType", 2)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("psi", &self.psi())?;
        st.end()
    }
}

impl fmt::Display for CmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.field, self.psi())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReflexConvention {
    /// `{ψ⁻¹ : ψ ∈ Ψ}` restricted to the reflex field.
    #[default]
    Inverse,
    /// `{c·ψ : ψ ∈ Ψ}` restricted to the reflex field.
    Conjugate,
}

impl fmt::Display for ReflexConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReflexConvention::Inverse => "inverse",
            ReflexConvention::Conjugate => "conjugate",
        })
    }
}

/// A reflex CM-type tagged with the convention that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflexType {
    pub convention: ReflexConvention,
    pub cm_type: CmType,
}

/// `n_σ` for each `σ ∈ Gal(k/Q)`, keyed by canonical residue.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityMap(pub BTreeMap<u64, u64>);

impl MultiplicityMap {
    pub fn get(&self, sigma: u64) -> u64 {
        self.0.get(&sigma).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

/// A base CM field `k` acting on a product of CM abelian varieties of types
/// `(K_i, Ψ_i)` with `k ⊆ K_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilDatum {
    base: AbelianField,
    components: Vec<CmType>,
}

impl WeilDatum {
    pub fn new(base: AbelianField, components: Vec<CmType>) -> Result<Self> {
        if !base.is_cm() {
            return Err(CmError::NotCm(base.to_string()));
        }
        for c in &components {
            if !base.is_subfield_of(c.field()) {
                return Err(CmError::NotContained { base: base.to_string(), component: c.field().to_string() });
            }
        }
        Ok(Self { base, components })
    }

    pub fn base(&self) -> &AbelianField {
        &self.base
    }

    pub fn components(&self) -> &[CmType] {
        &self.components
    }

    pub fn with_component(&self, c: CmType) -> Result<Self> {
        let mut components = self.components.clone();
        components.push(c);
        Self::new(self.base.clone(), components)
    }

    pub fn dimension(&self) -> u64 {
        self.components.iter().map(CmType::dimension).sum()
    }

    /// `r = 2·dim / [k:Q]`.
    ///
    /// Always integral for a valid datum, since each `[K_i:Q]/2` is a multiple
    /// of `[k:Q]/2`.
    pub fn weil_r(&self) -> Result<u64> {
        weil_r_for(self.dimension(), self.base.degree())
    }

    /// `n_σ = Σ_i #{ψ ∈ Ψ_i : ψ|_k = σ}`.
    pub fn restriction_multiplicities(&self) -> MultiplicityMap {
        let small = self.base.galois_group();
        let mut map: BTreeMap<u64, u64> = small.reps().iter().map(|&r| (r, 0)).collect();
        for c in &self.components {
            let table = c.field().restriction_to(&self.base).expect("checked at construction");
            for &i in c.psi_indices() {
                *map.get_mut(&small.rep(table[i])).expect("all cosets present") += 1;
            }
        }
        MultiplicityMap(map)
    }

    /// `n_σ = n_σ̄` for every `σ`. Equivalently, the tangent space is a free
    /// `k ⊗ C`-module.
    pub fn is_weil_type(&self) -> bool {
        let n = self.restriction_multiplicities();
        let small = self.base.galois_group();
        let c = small.coset_of(self.base.complex_conjugation()).expect("unit");
        (0..small.order()).all(|s| n.get(small.rep(s)) == n.get(small.rep(small.mul(c, s))))
    }

    /// `[k:Q]` divides `dim` whenever the datum is of Weil type.
    pub fn divisibility_check(&self) -> bool {
        !self.is_weil_type() || self.dimension().is_multiple_of(self.base.degree())
    }

    /// Appends a factor with CM by `k` itself, choosing the first CM-type on
    /// `k` that makes the product of Weil type.
    pub fn balance_product(&self) -> Result<(CmType, WeilDatum)> {
        for t in CmType::all_on(&self.base)? {
            let d = self.with_component(t.clone())?;
            if d.is_weil_type() {
                return Ok((t, d));
            }
        }
        Err(CmError::CannotBalance(self.base.to_string()))
    }
}

/// `r = 2·dim / deg_k`, rejecting non-integral values.
pub fn weil_r_for(dim: u64, deg_k: u64) -> Result<u64> {
    let num = 2 * dim;
    if deg_k == 0 || !num.is_multiple_of(deg_k) {
        return Err(CmError::NonIntegralR { numerator: num, denominator: deg_k });
    }
    Ok(num / deg_k)
}
