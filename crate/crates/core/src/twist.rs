//! Degree calculus for connectedness extensions of character twists.
//!
//! Nothing here computes an ℓ-adic image. Every report states exactly what the
//! twisting theorems force from the discrete data (the order `n` of the
//! character, `r = 2·dim/[k:Q]`, the roots of unity in `k`) together with the
//! hypotheses that cannot be checked at this level, which are carried as
//! explicit assumption flags and echoed back.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::cm::{CmError, WeilDatum};
use crate::fields::AbelianField;
use crate::groups;

pub const HYP_R_EVEN: &str = "r is even";
pub const HYP_N_NOT_DIVIDING_R: &str = "n does not divide r";
pub const HYP_WEIL_TYPE: &str = "(A, k, iota) is of Weil type";
pub const HYP_F_END_A: &str = "F = F(End(A))";
pub const HYP_IOTA_C_AUT: &str = "iota o c takes values in Aut(A)";
pub const HYP_K_CENTRAL: &str = "iota embeds k in the center of End^0(A)";
pub const HYP_F_PHI_A: &str = "F_Phi(A) = F";
pub const HYP_HOM_XY: &str = "Hom(X, Y) = 0";
pub const HYP_F_END_XY: &str = "F = F(End(X)) = F(End(Y))";
pub const HYP_T_ODD: &str = "dim(X) = t dim(Y) for some odd positive integer t";
pub const HYP_DEG_K: &str = "[k:Q] = 2 dim(Y)";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error("character order must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("character with image mu_{n}(k) impossible in this field: {field} has only {w} roots of unity")]
    ImpossibleCharacter { n: u64, w: u64, field: String },
    #[error("character takes values in {character}, but the datum is over {base}")]
    FieldMismatch { character: String, base: String },
    #[error("hypothesis failed: {name} ({detail})")]
    Hypothesis { name: &'static str, detail: String },
    #[error("hypothesis not assumed: {0}")]
    NotAssumed(&'static str),
    #[error("d = {d} does not divide n = {n}")]
    NotADivisor { n: u64, d: u64 },
}

impl TwistError {
    fn failed(name: &'static str, detail: impl Into<String>) -> Self {
        TwistError::Hypothesis { name, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, TwistError>;

/// A finite-order character with image `μ_n(k)`, cutting out a cyclic
/// extension `M` of degree `n` over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpec {
    pub value_field: AbelianField,
    pub order: u64,
    pub extension_label: String,
    pub extension_degree: u64,
}

/// Requires `n | w(k)` so that `μ_n(k)` is cyclic of order `n`.
pub fn make_character(k: &AbelianField, n: u64, label: &str) -> Result<CharacterSpec> {
    if n < 2 {
        return Err(TwistError::OrderTooSmall(n));
    }
    let w = k.roots_of_unity_order();
    if w.gcd(&n) != n {
        return Err(TwistError::ImpossibleCharacter { n, w, field: k.to_string() });
    }
    Ok(CharacterSpec { value_field: k.clone(), order: n, extension_label: label.to_string(), extension_degree: n })
}

/// A conclusion with the result it instantiates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Anchored<T> {
    pub value: T,
    pub paper_anchor: &'static str,
}

fn anchored<T>(value: T, paper_anchor: &'static str) -> Anchored<T> {
    Anchored { value, paper_anchor }
}

/// Outcome of transferring `End_F` along a twist by a cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Transfer {
    /// `End_F(A) ≅ End_F(B)`. When additionally `F = F(End(A)) = F(End(B))`,
    /// the cocycle is a homomorphism with values in the units of the center.
    Isomorphic { cocycle_is_character: bool },
    Indeterminate,
}

/// Central-cocycle transfer of `End_F`.
pub fn central_twist_transfer(values_central: bool, end_a_over_f: bool) -> Transfer {
    if values_central {
        Transfer::Isomorphic { cocycle_is_character: end_a_over_f }
    } else {
        Transfer::Indeterminate
    }
}

/// A cyclic group, serialized as `Z/nZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclic(pub u64);

impl fmt::Display for Cyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.0)
    }
}

impl Serialize for Cyclic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Gal(F_Φ(B)/F) ≅ Im(c)/(Im(c) ∩ 𝔊)` and `Gal(M/F_Φ(B)) ≅ Im(c) ∩ 𝔊` for
/// `#Im(c) = n` and a supplied intersection order `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscondResult {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "gal_phiB_over_F")]
    pub gal_phib_over_f: Anchored<Cyclic>,
    #[serde(rename = "gal_M_over_phiB")]
    pub gal_m_over_phib: Anchored<Cyclic>,
    #[serde(rename = "phiB_equals_M")]
    pub phib_equals_m: bool,
}

pub fn discond_groups(n: u64, d: u64) -> Result<DiscondResult> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) {
        return Err(TwistError::NotADivisor { n, d });
    }
    Ok(DiscondResult {
        n,
        d,
        gal_phib_over_f: anchored(Cyclic(n / d), "discond(i)"),
        gal_m_over_phib: anchored(Cyclic(d), "discond(iii)"),
        phib_equals_m: d == 1,
    })
}

/// Orders of elements `α ∈ Im(c) ∩ 𝔊` allowed by `α^n = 1` and `α^{2r} = 1`:
/// the divisors of `gcd(n, 2r)`.
pub fn hodge_exponent_constraint(n: u64, r: u64) -> Result<Vec<u64>> {
    if !r.is_multiple_of(2) {
        return Err(TwistError::failed(HYP_R_EVEN, format!("r = {r}")));
    }
    Ok(groups::divisors(n.gcd(&(2 * r))))
}

fn default_true() -> bool {
    true
}

/// Hypotheses of the cyclic-twist theorem that are not decidable from the
/// discrete data. All default to `true` when omitted from input documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistXAssumptions {
    #[serde(default = "default_true")]
    pub f_equals_f_end_a: bool,
    #[serde(default = "default_true")]
    pub iota_c_in_aut_a: bool,
    #[serde(default = "default_true")]
    pub k_in_center: bool,
    #[serde(default = "default_true")]
    pub f_phi_a_equals_f: bool,
}

impl Default for TwistXAssumptions {
    fn default() -> Self {
        Self { f_equals_f_end_a: true, iota_c_in_aut_a: true, k_in_center: true, f_phi_a_equals_f: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistXReport {
    pub n: u64,
    pub r: u64,
    pub t: u64,
    pub w_k: u64,
    pub mu_bound: u64,
    pub extension_label: String,
    pub hypotheses: BTreeMap<&'static str, bool>,
    pub assumed: Vec<&'static str>,
    #[serde(rename = "endB_over_F")]
    pub end_b_over_f: Anchored<bool>,
    pub disconnection: Anchored<bool>,
    #[serde(rename = "phiB_contained_in_M")]
    pub phib_in_m: Option<Anchored<bool>>,
    #[serde(rename = "m_over_phiB_divisor")]
    pub m_over_phib_divisor: Option<Anchored<u64>>,
    #[serde(rename = "exact_m_over_phiB")]
    pub exact_m_over_phib: Option<Anchored<u64>>,
    #[serde(rename = "phiB_over_F_exact")]
    pub phib_over_f_exact: Option<Anchored<u64>>,
    #[serde(rename = "phiB_equals_M")]
    pub phib_equals_m: Anchored<bool>,
}

/// Twist of a Weil-type variety by a character of order `n` valued in `k`.
pub fn twist_x(datum: &WeilDatum, c: &CharacterSpec, assumed: TwistXAssumptions) -> Result<TwistXReport> {
    if &c.value_field != datum.base() {
        return Err(TwistError::FieldMismatch {
            character: c.value_field.to_string(),
            base: datum.base().to_string(),
        });
    }
    for (flag, name) in [
        (assumed.f_equals_f_end_a, HYP_F_END_A),
        (assumed.iota_c_in_aut_a, HYP_IOTA_C_AUT),
        (assumed.k_in_center, HYP_K_CENTRAL),
    ] {
        if !flag {
            return Err(TwistError::NotAssumed(name));
        }
    }
    let n = c.order;
    let r = datum.weil_r()?;
    if r % 2 != 0 {
        return Err(TwistError::failed(HYP_R_EVEN, format!("r = {r}")));
    }
    if r % n == 0 {
        return Err(TwistError::failed(HYP_N_NOT_DIVIDING_R, format!("n = {n} divides r = {r}")));
    }
    if !datum.is_weil_type() {
        return Err(TwistError::failed(
            HYP_WEIL_TYPE,
            format!("multiplicities {:?}", datum.restriction_multiplicities().0),
        ));
    }
    let t = n.gcd(&(2 * r));
    let w_k = datum.base().roots_of_unity_order();
    let mu_bound = t.gcd(&w_k);

    let end_b = matches!(central_twist_transfer(assumed.k_in_center, assumed.f_equals_f_end_a), Transfer::Isomorphic { .. });

    let mut report = TwistXReport {
        n,
        r,
        t,
        w_k,
        mu_bound,
        extension_label: c.extension_label.clone(),
        hypotheses: BTreeMap::from([
            (HYP_R_EVEN, true),
            (HYP_N_NOT_DIVIDING_R, true),
            (HYP_WEIL_TYPE, true),
            (HYP_F_END_A, assumed.f_equals_f_end_a),
            (HYP_IOTA_C_AUT, assumed.iota_c_in_aut_a),
            (HYP_K_CENTRAL, assumed.k_in_center),
            (HYP_F_PHI_A, assumed.f_phi_a_equals_f),
        ]),
        assumed: vec![HYP_F_END_A, HYP_IOTA_C_AUT, HYP_K_CENTRAL],
        end_b_over_f: anchored(end_b, "twistX(i)"),
        disconnection: anchored(true, "twistX(ii)"),
        phib_in_m: None,
        m_over_phib_divisor: None,
        exact_m_over_phib: None,
        phib_over_f_exact: None,
        phib_equals_m: anchored(false, "twistX(iii)"),
    };
    if assumed.f_phi_a_equals_f {
        report.assumed.push(HYP_F_PHI_A);
        report.phib_in_m = Some(anchored(true, "twistX(iii)"));
        report.m_over_phib_divisor = Some(anchored(mu_bound, "twistX(iii)"));
        if mu_bound == 1 {
            report.exact_m_over_phib = Some(anchored(1, "twistX(iii)"));
            report.phib_over_f_exact = Some(anchored(n, "twistX(iii)"));
            report.phib_equals_m = anchored(true, "twistX(iii)");
        } else if t == 2 {
            report.exact_m_over_phib = Some(anchored(2, "twistX(iv)"));
            report.phib_over_f_exact = Some(anchored(n / 2, "twistX(iv)"));
        }
    }
    Ok(report)
}

/// Hypotheses of the quadratic product-twist theorem that are assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistEAssumptions {
    #[serde(default = "default_true")]
    pub hom_xy_zero: bool,
    #[serde(default = "default_true")]
    pub f_equals_f_end_xy: bool,
    #[serde(default = "default_true")]
    pub f_phi_a_equals_f: bool,
}

impl Default for TwistEAssumptions {
    fn default() -> Self {
        Self { hom_xy_zero: true, f_equals_f_end_xy: true, f_phi_a_equals_f: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistEReport {
    #[serde(rename = "dimX")]
    pub dim_x: u64,
    #[serde(rename = "dimY")]
    pub dim_y: u64,
    pub t: u64,
    pub deg_k: u64,
    pub extension_label: String,
    pub hypotheses: BTreeMap<&'static str, bool>,
    pub assumed: Vec<&'static str>,
    #[serde(rename = "endB_over_F")]
    pub end_b_over_f: Anchored<bool>,
    pub disconnection: Anchored<bool>,
    #[serde(rename = "phiB_equals_M")]
    pub phib_equals_m: Anchored<bool>,
    #[serde(rename = "phiB_over_F_exact")]
    pub phib_over_f_exact: Option<Anchored<u64>>,
}

/// Twist of the `Y` factor of `A = X × Y` by a non-trivial quadratic
/// character cutting out `M`.
pub fn twist_e(
    dim_x: u64,
    dim_y: u64,
    k: &AbelianField,
    weil: &WeilDatum,
    assumed: TwistEAssumptions,
    extension_label: &str,
) -> Result<TwistEReport> {
    if dim_y == 0 || !dim_x.is_multiple_of(dim_y) || (dim_x / dim_y).is_multiple_of(2) {
        return Err(TwistError::failed(HYP_T_ODD, format!("dim(X) = {dim_x}, dim(Y) = {dim_y}")));
    }
    let t = dim_x / dim_y;
    if k.degree() != 2 * dim_y {
        return Err(TwistError::failed(HYP_DEG_K, format!("[k:Q] = {}, dim(Y) = {dim_y}", k.degree())));
    }
    if weil.base() != k {
        return Err(TwistError::FieldMismatch { character: k.to_string(), base: weil.base().to_string() });
    }
    if weil.dimension() != dim_x + dim_y {
        return Err(TwistError::failed(
            HYP_WEIL_TYPE,
            format!("datum has dimension {}, expected {}", weil.dimension(), dim_x + dim_y),
        ));
    }
    if !weil.is_weil_type() {
        return Err(TwistError::failed(
            HYP_WEIL_TYPE,
            format!("multiplicities {:?}", weil.restriction_multiplicities().0),
        ));
    }
    for (flag, name) in [(assumed.hom_xy_zero, HYP_HOM_XY), (assumed.f_equals_f_end_xy, HYP_F_END_XY)] {
        if !flag {
            return Err(TwistError::NotAssumed(name));
        }
    }
    // The cocycle (1, c) has values (1, ±1), central in End^0(X) ⊕ End^0(Y).
    let end_b = matches!(central_twist_transfer(true, assumed.f_equals_f_end_xy), Transfer::Isomorphic { .. });
    let mut report = TwistEReport {
        dim_x,
        dim_y,
        t,
        deg_k: k.degree(),
        extension_label: extension_label.to_string(),
        hypotheses: BTreeMap::from([
            (HYP_T_ODD, true),
            (HYP_DEG_K, true),
            (HYP_WEIL_TYPE, true),
            (HYP_HOM_XY, assumed.hom_xy_zero),
            (HYP_F_END_XY, assumed.f_equals_f_end_xy),
            (HYP_F_PHI_A, assumed.f_phi_a_equals_f),
        ]),
        assumed: vec![HYP_HOM_XY, HYP_F_END_XY],
        end_b_over_f: anchored(end_b, "twistE(i)"),
        disconnection: anchored(true, "twistE(ii)"),
        phib_equals_m: anchored(false, "twistE(iii)"),
        phib_over_f_exact: None,
    };
    if assumed.f_phi_a_equals_f {
        report.assumed.push(HYP_F_PHI_A);
        report.phib_equals_m = anchored(true, "twistE(iii)");
        report.phib_over_f_exact = Some(anchored(2, "twistE(iii)"));
    }
    Ok(report)
}
