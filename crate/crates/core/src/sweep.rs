//! Batch computations over many independent inputs.
//!
//! Every sweep takes an [`Execution`] mode. With the `parallel` feature the
//! parallel mode runs on rayon; without it both modes run sequentially. Output
//! order is the input order in either case, so results are identical.

use serde::Serialize;

use crate::cm::{CmType, WeilDatum};
use crate::fields::AbelianField;
use crate::groups::{all_subgroups, euler_phi};
use crate::inertia::{self, FrobeniusAgreement, InertiaCertificate};
use crate::twist::{self, TwistXAssumptions, TwistXReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map over `items`.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Primes `p ≡ 3 (mod 7)` below `bound`.
pub fn primes_3_mod_7(bound: u64) -> Vec<u64> {
    (3..bound).filter(|&p| p % 7 == 3 && inertia::is_prime(p)).collect()
}

pub fn certify_primes(primes: &[u64], exec: Execution) -> Vec<inertia::Result<InertiaCertificate>> {
    map(exec, primes, |&p| inertia::kitself_certificate(p))
}

/// `galois_vs_frobenius(p, i, trials)` for every `i ∈ 1..=6` and every prime given.
pub fn frobenius_sweep(primes: &[u64], trials: usize, exec: Execution) -> Vec<inertia::Result<FrobeniusAgreement>> {
    let jobs: Vec<(u64, u64)> = primes.iter().flat_map(|&p| (1..=6).map(move |i| (p, i))).collect();
    map(exec, &jobs, |&(p, i)| inertia::galois_vs_frobenius(p, i, trials))
}

/// Every CM abelian field with conductor `≤ max_conductor` and degree `≤ max_degree`,
/// sorted by conductor and then by fixed group.
pub fn cm_fields(max_conductor: u64, max_degree: u64) -> Vec<AbelianField> {
    let mut out = Vec::new();
    for m in 1..=max_conductor {
        if m % 4 == 2 {
            continue;
        }
        for h in all_subgroups(m).expect("m >= 1") {
            if euler_phi(m) / h.order() > max_degree {
                continue;
            }
            let k = AbelianField::from_fixed_group(h);
            if k.conductor() == m && k.is_cm() {
                out.push(k);
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub cm_type: CmType,
    pub stabilizer: Vec<u64>,
    pub primitive: bool,
    pub reflex_field: AbelianField,
}

/// Stabilizer, primitivity and reflex field of every CM-type on the given fields.
pub fn cm_census(fields: &[AbelianField], exec: Execution) -> Vec<CensusRow> {
    map(exec, fields, |k| {
        CmType::all_on(k)
            .expect("CM field")
            .into_iter()
            .map(|t| CensusRow {
                stabilizer: t.stabilizer_reps(),
                primitive: t.is_primitive(),
                reflex_field: t.reflex_field(),
                cm_type: t,
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Smallest cyclotomic CM field containing `μ_n`.
pub fn cm_field_with_roots(n: u64) -> AbelianField {
    let m = match n {
        1 | 2 => 4,
        _ => n,
    };
    AbelianField::cyclotomic(m).expect("m >= 1")
}

/// `r` factors with CM by `k`, alternating `Ψ` and `cΨ`; of Weil type whenever `r` is even.
pub fn balanced_datum(k: &AbelianField, r: u64) -> WeilDatum {
    let t = CmType::first_on(k).expect("CM field");
    let comps = (0..r).map(|i| if i % 2 == 0 { t.clone() } else { t.conjugate() }).collect();
    WeilDatum::new(k.clone(), comps).expect("components contain k")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistRow {
    pub n: u64,
    pub r: u64,
    pub report: twist::Result<TwistXReport>,
}

/// `twist_x` over `2 ≤ n ≤ n_max` and even `2 ≤ r ≤ r_max`, on balanced data over
/// the smallest cyclotomic field with `n | w(k)`.
pub fn twist_sweep(n_max: u64, r_max: u64, exec: Execution) -> Vec<TwistRow> {
    let jobs: Vec<(u64, u64)> =
        (2..=n_max).flat_map(|n| (2..=r_max).filter(|r| r % 2 == 0).map(move |r| (n, r))).collect();
    map(exec, &jobs, |&(n, r)| {
        let k = cm_field_with_roots(n);
        let report = twist::make_character(&k, n, "M")
            .and_then(|c| twist::twist_x(&balanced_datum(&k, r), &c, TwistXAssumptions::default()));
        TwistRow { n, r, report }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let primes = primes_3_mod_7(200);
        assert_eq!(primes[..4], [3, 17, 31, 59]);
        assert_eq!(certify_primes(&primes, Execution::Sequential), certify_primes(&primes, Execution::Parallel));
        assert_eq!(frobenius_sweep(&primes, 2, Execution::Sequential), frobenius_sweep(&primes, 2, Execution::Parallel));
        let fields = cm_fields(20, 4);
        assert_eq!(cm_census(&fields, Execution::Sequential), cm_census(&fields, Execution::Parallel));
        assert_eq!(twist_sweep(12, 12, Execution::Sequential), twist_sweep(12, 12, Execution::Parallel));
    }

    #[test]
    fn small_cm_fields() {
        let names: Vec<String> = cm_fields(12, 2).iter().map(|k| k.to_string()).collect();
        assert_eq!(names, ["Q(zeta_3)", "Q(zeta_4)", "Q(sqrt(-7))", "Q(sqrt(-2))", "Q(sqrt(-11))"]);
    }

    #[test]
    fn twist_rows_match_direct_calls() {
        let rows = twist_sweep(6, 8, Execution::Sequential);
        let row = rows.iter().find(|r| r.n == 3 && r.r == 8).unwrap();
        let rep = row.report.as_ref().unwrap();
        assert_eq!(rep.t, 1);
        assert!(rep.phib_equals_m.value);
        let row = rows.iter().find(|r| r.n == 2 && r.r == 8).unwrap();
        assert!(row.report.is_err());
    }
}
