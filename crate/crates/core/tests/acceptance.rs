//! Acceptance checks, one line per criterion. All comparisons are exact
//! (tolerance 0); every expected value comes either from the source text or
//! from a small oracle written here with plain integer arithmetic.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use cmtwist::cm::{CmType, ReflexConvention, WeilDatum};
use cmtwist::fields::AbelianField;
use cmtwist::groups::{Subgroup, invariant_factors};
use cmtwist::inertia;
use cmtwist::report::{self, Example42Payload, Job, JobSpec};
use cmtwist::sweep::{self, Execution};
use cmtwist::twist::{self, TwistXAssumptions};

/// Exact comparisons only.
const TOLERANCE: u64 = 0;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

fn units(m: u64) -> Vec<u64> {
    (1..m.max(2)).filter(|&a| gcd(a, m) == 1).collect()
}

/// Orders of the elements of `(Z/m)^× / H`, counted by brute force.
fn order_histogram(m: u64, h: &BTreeSet<u64>) -> BTreeMap<u64, usize> {
    let mut seen = BTreeSet::new();
    let mut hist = BTreeMap::new();
    for a in units(m) {
        let coset: BTreeSet<u64> = h.iter().map(|&x| x * a % m).collect();
        if !seen.insert(coset.iter().next().copied().unwrap()) {
            continue;
        }
        let mut k = 1;
        let mut x = a;
        while !h.contains(&x) {
            x = x * a % m;
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    hist
}

/// Histogram of element orders in `Z/a × Z/b × …`.
fn product_histogram(factors: &[u64]) -> BTreeMap<u64, usize> {
    let mut hist = BTreeMap::new();
    let mut tuple = vec![0u64; factors.len()];
    loop {
        let ord = tuple.iter().zip(factors).fold(1, |acc, (&x, &n)| {
            let o = n / gcd(x, n);
            acc / gcd(acc, o) * o
        });
        *hist.entry(ord).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == factors.len() {
                return hist;
            }
            tuple[i] += 1;
            if tuple[i] < factors[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

type Check = Result<(), String>;

fn expect(cond: bool, what: impl Into<String>) -> Check {
    if cond { Ok(()) } else { Err(what.into()) }
}

fn k3() -> AbelianField {
    AbelianField::quadratic(-3).unwrap()
}

fn big_k() -> AbelianField {
    k3().compositum(&AbelianField::real_subfield_of(17).unwrap())
}

/// `Ψ` as residues mod 51, computed directly as `35^a · 37^b`.
fn psi_residues() -> Vec<u64> {
    report::EXAMPLE_41_PSI.iter().map(|[a, b]| pow_mod(35, *a, 51) * pow_mod(37, *b, 51) % 51).collect()
}

fn criterion_1() -> Check {
    let h = Subgroup::from_elements(51, &[1, 16]).map_err(|e| e.to_string())?;
    let inv = invariant_factors(51, &h).map_err(|e| e.to_string())?;
    expect(inv.as_slice() == [2, 8], format!("invariant factors {:?}", inv.0))?;
    let oracle = order_histogram(51, &BTreeSet::from([1, 16]));
    expect(oracle == product_histogram(&[2, 8]), format!("order histogram {oracle:?}"))?;
    expect(big_k().fixed_group().elements() == [1, 16], "K is the fixed field of {1, 16} mod 51")
}

fn criterion_2() -> Check {
    let k = big_k();
    let psi = psi_residues();
    let t = CmType::new(&k, &psi).map_err(|e| e.to_string())?;
    // oracle: g·Ψ = Ψ modulo {1, 16} only for g ∈ {1, 16}
    let h = [1u64, 16];
    let classes = |s: &[u64]| -> BTreeSet<BTreeSet<u64>> {
        s.iter().map(|&x| h.iter().map(|&y| x * y % 51).collect()).collect()
    };
    let base = classes(&psi);
    let stab: Vec<u64> = units(51)
        .into_iter()
        .filter(|&g| classes(&psi.iter().map(|&x| x * g % 51).collect::<Vec<_>>()) == base)
        .collect();
    expect(stab == [1, 16], format!("brute stabilizer {stab:?}"))?;
    expect(t.stabilizer_reps() == [1], format!("stabilizer {:?}", t.stabilizer_reps()))?;
    expect(t.is_primitive(), "primitive")?;
    expect(t.reflex_field() == k, "reflex field is K")?;
    // n_σ: restriction to Q(√−3) is reduction mod 3
    let oracle = [1u64, 2].map(|s| psi.iter().filter(|&&x| x % 3 == s).count() as u64);
    let d = WeilDatum::new(k3(), vec![t]).map_err(|e| e.to_string())?;
    let n = d.restriction_multiplicities();
    expect(oracle == [4, 4] && n.get(1) == 4 && n.get(2) == 4, format!("n_sigma {:?} oracle {oracle:?}", n.0))?;
    expect(d.is_weil_type(), "Weil type")
}

fn criterion_3() -> Check {
    let t = CmType::new(&big_k(), &psi_residues()).map_err(|e| e.to_string())?;
    let d = WeilDatum::new(k3(), vec![t]).map_err(|e| e.to_string())?;
    let r = d.weil_r().map_err(|e| e.to_string())?;
    expect(r == 8, format!("r = {r}"))?;
    let c = twist::make_character(&k3(), 3, "M").map_err(|e| e.to_string())?;
    let rep = twist::twist_x(&d, &c, TwistXAssumptions::default()).map_err(|e| e.to_string())?;
    expect(rep.t == gcd(3, 2 * 8) && rep.t == 1, format!("t = {}", rep.t))?;
    expect(rep.phib_equals_m.value, "phiB_equals_M")?;
    let exact = rep.phib_over_f_exact.as_ref().map(|a| a.value);
    expect(exact == Some(3), format!("[F_Phi(B):F] = {exact:?}"))?;
    let r41 = report::run(&JobSpec::new(Job::Example41(Default::default()))).map_err(|e| e.to_string())?;
    expect(r41.complete, "example-41 complete")?;
    expect(r41.results["conclusions"][1] == "F_Phi(B) = M, [F_Phi(B):F] = 3", "example-41 conclusion")
}

fn criterion_4() -> Check {
    let q7 = AbelianField::cyclotomic(7).unwrap();
    let j = CmType::new(&q7, &[1, 2, 3]).map_err(|e| e.to_string())?;
    expect(j.reflex_field() == q7, "reflex field Q(zeta_7)")?;
    let inverse: BTreeSet<u64> = [1u64, 2, 3].iter().map(|&a| (1..7).find(|&b| a * b % 7 == 1).unwrap()).collect();
    let conjugate: BTreeSet<u64> = [1u64, 2, 3].iter().map(|&a| 7 - a).collect();
    let got_c = j.reflex_type(ReflexConvention::Conjugate);
    let got_i = j.reflex_type(ReflexConvention::Inverse);
    expect(got_c.cm_type.psi() == [4, 5, 6] && conjugate == BTreeSet::from([4, 5, 6]), "conjugate {4,5,6}")?;
    expect(got_i.cm_type.psi() == [1, 4, 5] && inverse == BTreeSet::from([1, 4, 5]), "inverse {1,4,5}")?;
    expect(got_c.convention == ReflexConvention::Conjugate && got_i.convention == ReflexConvention::Inverse, "tags")
}

fn criterion_5() -> Check {
    let io = inertia::inertia_order(3).map_err(|e| e.to_string())?;
    let (p6, h) = (3u64.pow(6) - 1, 3 * 3 + 3 + 1);
    expect(p6.is_multiple_of(h) && io.order == (p6 / h).into(), format!("inertia order {}", io.order))?;
    expect(gcd(728, 27 * 13) == 13 && io.gcd == 13u64.into() && io.gcd_identity, "gcd(728, 351) = 13")?;
    let fe = inertia::frobenius_exponents(3).map_err(|e| e.to_string())?;
    let oracle = (pow_mod(3, 3, 7), pow_mod(3, 4, 7), pow_mod(3, 5, 7));
    expect(oracle == (6, 4, 5) && (fe.p3, fe.p4, fe.p5) == oracle, format!("exponents {fe:?}"))?;
    let sd = inertia::seven_divisibility(3).map_err(|e| e.to_string())?;
    expect(sd.p2_p_1 == 13 && !sd.seven_divides_p2_p_1, "7 does not divide 13")?;
    expect(sd.p2_minus_1 == 8 && !sd.seven_divides_p2_minus_1, "7 does not divide 8")?;
    let ug = inertia::unit_generator_check();
    let order = (1..=6).find(|&k| pow_mod(5, k, 7) == 1).unwrap();
    expect((-2i64).rem_euclid(7) == 5 && ug.reduction_value == 5, "-1 - zeta_7 reduces to 5")?;
    expect(order == 6 && ug.order_mod_7 == 6 && ug.passes(), "order 6 and unit identity")
}

fn criterion_6() -> Check {
    let b = inertia::base_certificate(3, 17).map_err(|e| e.to_string())?;
    expect(b.passed() && b.conclusion == Some(inertia::BASE_CONCLUSION), "base certificate (3, 17)")?;
    let r = report::run(&JobSpec::new(Job::Example42(Example42Payload::default()))).map_err(|e| e.to_string())?;
    expect(r.complete, "example-42 complete")?;
    let concl: Vec<&str> = r.results["conclusions"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
    expect(concl.contains(&"K_Phi(A) = K") && concl.contains(&"Q_Phi(A^(d)) = L_d"), format!("{concl:?}"))?;
    let assumed: BTreeSet<&str> = r.hypotheses_assumed.iter().map(String::as_str).collect();
    let want = BTreeSet::from([
        "class number of Q(zeta_7) is 1",
        "A has good reduction outside 7",
        "Hom(J, E^(d)) = 0",
        "K = K(End(J)) = K(End(E^(d)))",
    ]);
    expect(assumed == want && r.hypotheses_assumed.len() == 4, format!("hypotheses_assumed {assumed:?}"))
}

/// Residues of `(Z/m)^×` fixing the preimage of `Ψ`, by brute force.
fn brute_stabilizer(m: u64, preimage: &BTreeSet<u64>) -> Vec<u64> {
    units(m).into_iter().filter(|&g| preimage.iter().all(|&x| preimage.contains(&(x * g % m)))).collect()
}

/// Every subgroup of `(Z/m)^×` containing `h`, as residue sets.
fn brute_overgroups(m: u64, h: &BTreeSet<u64>) -> Vec<BTreeSet<u64>> {
    let close = |gens: &BTreeSet<u64>| {
        let mut s = gens.clone();
        loop {
            let next: BTreeSet<u64> = s.iter().flat_map(|&a| s.iter().map(move |&b| a * b % m)).collect();
            if next.is_subset(&s) {
                return s;
            }
            s.extend(next);
        }
    };
    let mut out = BTreeSet::new();
    out.insert(h.clone());
    let mut frontier = vec![h.clone()];
    while let Some(g) = frontier.pop() {
        for u in units(m) {
            if !g.contains(&u) {
                let mut gens = g.clone();
                gens.insert(u);
                let c = close(&gens);
                if out.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn criterion_7() -> Check {
    let fields = sweep::cm_fields(40, 8);
    let rows = sweep::cm_census(&fields, Execution::Parallel);
    expect(rows == sweep::cm_census(&fields, Execution::Sequential), "parallel and sequential census agree")?;
    let expected_rows: u64 = fields.iter().map(|k| 1u64 << (k.degree() / 2)).sum();
    expect(rows.len() as u64 == expected_rows, format!("{} CM-types, expected {expected_rows}", rows.len()))?;
    let mut disagreements = Vec::new();
    for row in &rows {
        let k = row.cm_type.field();
        let m = k.conductor();
        let h: BTreeSet<u64> = k.fixed_group().elements().iter().copied().collect();
        let g = k.galois_group();
        let preimage: BTreeSet<u64> = row.cm_type.psi_indices().iter().flat_map(|&i| g.coset_elements(i)).collect();
        // Ψ is a union of cosets of some H' ⊋ H exactly when it is imprimitive.
        let imprimitive = brute_overgroups(m, &h)
            .iter()
            .any(|h2| h2.len() > h.len() && preimage.iter().all(|&x| h2.iter().all(|&y| preimage.contains(&(x * y % m)))));
        let stab = brute_stabilizer(m, &preimage);
        let reflex = AbelianField::from_fixed_group(Subgroup::from_elements(m, &stab).unwrap());
        if row.primitive == imprimitive || row.reflex_field != reflex || (units(m).len() / stab.len()) as u64 != reflex.degree() {
            disagreements.push(row.cm_type.to_string());
        }
    }
    expect(disagreements.is_empty(), format!("{} of {} disagree: {disagreements:?}", disagreements.len(), rows.len()))?;
    let worked = [CmType::new(&big_k(), &psi_residues()).unwrap(), CmType::new(&AbelianField::cyclotomic(7).unwrap(), &[1, 2, 3]).unwrap()];
    expect(worked.iter().all(|t| t.is_primitive() && &t.reflex_field() == t.field()), "both source CM-types")
}

fn criterion_8() -> Check {
    let primes = sweep::primes_3_mod_7(500);
    let results = sweep::frobenius_sweep(&primes, 4, Execution::Parallel);
    expect(results.len() == primes.len() * 6, "six indices per prime")?;
    let mut failures = Vec::new();
    for r in &results {
        match r {
            Ok(a) if a.basis_agrees && a.sampled_agrees && pow_mod(a.p, a.d as u64, 7) == a.i => {}
            other => failures.push(format!("{other:?}")),
        }
    }
    expect(failures.is_empty(), format!("{} of {} fail: {failures:?}", failures.len(), results.len()))?;
    expect(results == sweep::frobenius_sweep(&primes, 4, Execution::Sequential), "modes agree")
}

fn criterion_9() -> Check {
    let rows = sweep::twist_sweep(50, 50, Execution::Parallel);
    let mut checked = 0;
    let mut failures = Vec::new();
    for row in &rows {
        let (n, r) = (row.n, row.r);
        if r % n == 0 {
            match &row.report {
                Err(twist::TwistError::Hypothesis { name, .. }) if *name == twist::HYP_N_NOT_DIVIDING_R => {}
                other => failures.push(format!("n={n} r={r}: expected n | r failure, got {other:?}")),
            }
            continue;
        }
        let Ok(rep) = &row.report else {
            failures.push(format!("n={n} r={r}: {:?}", row.report));
            continue;
        };
        checked += 1;
        let t = gcd(n, 2 * r);
        let divisor = rep.m_over_phib_divisor.as_ref().map(|a| a.value);
        let exact_m = rep.exact_m_over_phib.as_ref().map(|a| a.value);
        let exact_phi = rep.phib_over_f_exact.as_ref().map(|a| a.value);
        let ok = rep.t == t
            && n % rep.t == 0
            && (2 * r) % rep.t == 0
            && rep.t % rep.mu_bound == 0
            && divisor == Some(rep.mu_bound)
            && exact_m.is_none_or(|e| divisor.is_some_and(|d| d % e == 0))
            && match (exact_m, exact_phi) {
                (Some(a), Some(b)) => a * b == n,
                (None, None) => true,
                _ => false,
            }
            && !(rep.phib_equals_m.value && exact_m.is_some_and(|e| e > 1))
            && (t != 2 || exact_m == Some(2))
            && (n % 2 == 0 || gcd(n, r) != 1 || rep.phib_equals_m.value);
        if !ok {
            failures.push(format!("n={n} r={r}: {rep:?}"));
        }
    }
    expect(checked > 0 && failures.is_empty(), format!("{} failures over {checked} reports: {failures:?}", failures.len()))?;
    expect(rows == sweep::twist_sweep(50, 50, Execution::Sequential), "modes agree")
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Galois group of the degree-16 field is Z/2 x Z/8", criterion_1),
        ("2 CM-type on K: valid, primitive, reflex K, n_sigma = 4", criterion_2),
        ("3 cubic twist: t = 1, F_Phi(B) = M of degree 3", criterion_3),
        ("4 reflex of (Q(zeta_7), {1,2,3}) under both conventions", criterion_4),
        ("5 inertia arithmetic at p = 3", criterion_5),
        ("6 base certificate (3, 17) and example-42 conclusions", criterion_6),
        ("7 primitivity and reflex oracle, conductor <= 40, degree <= 8", criterion_7),
        ("8 Galois versus Frobenius, p = 3 mod 7 below 500", criterion_8),
        ("9 twist divisor-chain invariants, 2 <= n, r <= 50", criterion_9),
    ];
    println!("acceptance (tolerance {TOLERANCE}, exact)");
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
