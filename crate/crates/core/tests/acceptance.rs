//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any of them fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use ntl_core::enumerate::{realize, EnumerationBudget};
use ntl_core::group::abelian::{abelianization_invariants, invariants_of_abelian_group};
use ntl_core::group::closure;
use ntl_core::homotopy::{
    bound_pushout_pi3, bound_theorem_a, bound_theorem_b, pushout_em, schur_multiplier,
    stable_pi2_k, theorem_c_report, three_connected_check, triad_group, wedge_pi3, NuData,
    PushoutInput, TriadInput,
};
use ntl_core::homotopy::reports::Status;
use ntl_core::io::catalog::{catalog_lookup, EXTENDED_CORPUS, SMALL_CORPUS};
use ntl_core::suite::{nu_options, verify_suite, Scope, SuiteOptions};
use ntl_core::tensor::{build_eta, build_nu, tensor_direct, tensor_set, CompatibleActionPair, EtaOptions};
use ntl_core::{AbelianInvariants, RealizedGroup};

type Check = std::result::Result<String, String>;

fn criterion(n: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let r = match (r, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
        (r, _) => r,
    };
    let ms = elapsed.as_millis();
    match &r {
        Ok(d) => println!("criterion {n:>2}: PASS  {title} [{ms} ms] {d}"),
        Err(d) => println!("criterion {n:>2}: FAIL  {title} [{ms} ms] {d}"),
    }
    r.is_ok()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: ntl_core::Error) -> String {
    format!("{}: {e}", e.code())
}

fn group(name: &str) -> Arc<RealizedGroup> {
    let p = catalog_lookup(name).expect("catalog name").presentation;
    Arc::new(realize(&p, EnumerationBudget::default()).expect("finite catalog group").0)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn inv(cyclic: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_factors(cyclic).unwrap()
}

/// `Λ²(⊕ C_{d_i}) = ⊕_{i<j} C_{gcd(d_i, d_j)}`.
fn exterior_square(d: &[u64]) -> AbelianInvariants {
    let mut out = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            out.push(gcd(d[i], d[j]));
        }
    }
    inv(&out)
}

fn order_of(name: &str) -> u64 {
    catalog_lookup(name).unwrap().known_facts.unwrap().order.unwrap()
}

/// Unordered catalog pairs with `|G|·|H| <= 36`.
fn small_pairs() -> Vec<(&'static str, &'static str)> {
    let mut out = Vec::new();
    for (i, &a) in SMALL_CORPUS.iter().enumerate() {
        for &b in &SMALL_CORPUS[i..] {
            if order_of(a) * order_of(b) <= 36 {
                out.push((a, b));
            }
        }
    }
    out
}

fn finite_corpus() -> impl Iterator<Item = &'static str> {
    SMALL_CORPUS.iter().chain(EXTENDED_CORPUS).copied()
}

/// S3 as permutations of {0,1,2}, independent of any presentation.
fn s3_permutations() -> Arc<RealizedGroup> {
    Arc::new(
        RealizedGroup::from_permutations("S3perm", vec!["r".into(), "t".into()], &[vec![1, 2, 0], vec![1, 0, 2]], 10)
            .unwrap(),
    )
}

fn decomposition() -> Check {
    let pairs = small_pairs();
    for &(a, b) in &pairs {
        let p = CompatibleActionPair::trivial(group(a), group(b)).map_err(err)?;
        let e = build_eta(&p, &EtaOptions::default()).map_err(err)?;
        let want = e.tensor().order() * p.g().order() * p.h().order();
        ensure(e.eta().order() == want, || format!("{a} x {b}: |eta| = {} != {want}", e.eta().order()))?;
    }
    for &name in SMALL_CORPUS {
        let g = group(name);
        let e = build_nu(&g, &nu_options(g.order(), EnumerationBudget::default())).map_err(err)?;
        let want = e.tensor().order() * g.order() * g.order();
        ensure(e.eta().order() == want, || format!("nu({name}): |nu| = {} != {want}", e.eta().order()))?;
    }
    let s3 = s3_permutations();
    let e = build_nu(&s3, &EtaOptions::default()).map_err(err)?;
    ensure(e.eta().order() == 216 && e.tensor().order() == 6, || {
        format!("nu(S3) from permutations: {} / {}", e.eta().order(), e.tensor().order())
    })?;
    Ok(format!("{} trivial pairs, {} nu(G), S3 permutation check", pairs.len(), SMALL_CORPUS.len()))
}

fn same_route(label: &str, p: &CompatibleActionPair, opts: &EtaOptions) -> Result<(), String> {
    let e = build_eta(p, opts).map_err(err)?;
    let (direct, _) = tensor_direct(p, &EnumerationBudget::default()).map_err(err)?;
    let a = abelianization_invariants(&Arc::new(direct.clone())).map_err(err)?;
    let b = abelianization_invariants(e.tensor_group()).map_err(err)?;
    ensure(direct.order() == e.tensor().order() && a == b, || {
        format!("{label}: direct {} / {a}, via eta {} / {b}", direct.order(), e.tensor().order())
    })
}

fn route_equivalence() -> Check {
    let pairs = small_pairs();
    for &(a, b) in &pairs {
        let p = CompatibleActionPair::trivial(group(a), group(b)).map_err(err)?;
        same_route(&format!("{a} x {b}"), &p, &EtaOptions::default())?;
    }
    for &name in SMALL_CORPUS {
        let g = group(name);
        let opts = nu_options(g.order(), EnumerationBudget::default());
        same_route(&format!("{name} (x) {name}"), &CompatibleActionPair::conjugation(g).map_err(err)?, &opts)?;
    }
    Ok(format!("{} trivial pairs, {} tensor squares", pairs.len(), SMALL_CORPUS.len()))
}

fn abelian_reduction() -> Check {
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let p = CompatibleActionPair::trivial(
                Arc::new(RealizedGroup::cyclic(m as usize)),
                Arc::new(RealizedGroup::cyclic(n as usize)),
            )
            .map_err(err)?;
            let e = build_eta(&p, &EtaOptions::default()).map_err(err)?;
            let t = e.tensor_group();
            let d = gcd(m, n);
            let got = invariants_of_abelian_group(t).map_err(err)?;
            let want: Vec<u64> = if d == 1 { vec![] } else { vec![d] };
            ensure(t.is_abelian() && got.factors() == want, || format!("C{m} (x) C{n} = {got}, want C{d}"))?;
        }
    }
    Ok("144 pairs".into())
}

fn tensor_counts() -> Check {
    for n in 1..=12usize {
        let e = build_nu(&Arc::new(RealizedGroup::cyclic(n)), &EtaOptions::default()).map_err(err)?;
        // a^i (x) a^j = (a (x) a)^{ij}
        let image: BTreeSet<usize> = (0..n).flat_map(|i| (0..n).map(move |j| (i * j) % n)).collect();
        let m = tensor_set(&e).count();
        ensure(m == image.len() && m == n, || format!("C{n}: m = {m}, oracle {}", image.len()))?;
    }
    Ok("n = 1..12".into())
}

fn exact_sequences() -> Check {
    let mut count = 0;
    for name in finite_corpus() {
        let g = group(name);
        let d = NuData::compute(&g, &nu_options(g.order(), EnumerationBudget::default())).map_err(err)?;
        let x = d.exactness().map_err(err)?;
        let t = d.tensor_order();
        let (j2, derived) = (d.j2.order(), d.derived.order());
        let h2 = d.schur_multiplier().map_err(err)?.quotient.order();
        let s = d.stable_pi2().map_err(err)?.quotient.order();
        ensure(j2 * derived == t, || format!("{name}: |J2|·|G'| = {j2}·{derived} != {t}"))?;
        ensure(d.delta.order() * h2 == j2, || format!("{name}: |Delta|·|H2| != |J2|"))?;
        ensure(d.delta_tilde.order() * s == j2, || format!("{name}: |Delta~|·|J2/Delta~| != |J2|"))?;
        for seq in x.all() {
            ensure(seq.exact, || format!("{name}: {} not exact", seq.name))?;
        }
        count += 1;
    }
    Ok(format!("{count} groups of order <= 24"))
}

fn schur_multipliers() -> Check {
    let mut cases: Vec<(String, Vec<u64>)> = (1..=12).map(|n| (format!("C{n}"), vec![n])).collect();
    for (name, d) in [("C2x2", vec![2, 2]), ("C2x4", vec![2, 4]), ("C2x2x2", vec![2, 2, 2]), ("C3x3", vec![3, 3]), ("C2x6", vec![2, 6])] {
        cases.push((name.into(), d));
    }
    for (name, d) in &cases {
        let h2 = schur_multiplier(&group(name), &EtaOptions::default()).map_err(err)?;
        let got = invariants_of_abelian_group(&h2).map_err(err)?;
        let want = exterior_square(d);
        ensure(got == want, || format!("H2({name}) = {got}, oracle {want}"))?;
    }
    Ok(format!("{} abelian groups; H2(C2x2) = C2, H2(C2x4) = C2", cases.len()))
}

fn stable_pi2() -> Check {
    let c2 = stable_pi2_k(&group("C2"), &EtaOptions::default()).map_err(err)?;
    let c3 = stable_pi2_k(&group("C3"), &EtaOptions::default()).map_err(err)?;
    let a = invariants_of_abelian_group(&c2).map_err(err)?;
    let b = invariants_of_abelian_group(&c3).map_err(err)?;
    ensure(a.factors() == [2] && b.is_trivial(), || format!("C2: {a}, C3: {b}"))?;
    Ok(format!("pi2S(K(C2,1)) = {a}, pi2S(K(C3,1)) = {b}"))
}

fn finiteness_agreement() -> Check {
    let mut count = 0;
    for name in finite_corpus() {
        let p = catalog_lookup(name).unwrap().presentation;
        let opts = nu_options(order_of(name) as usize, EnumerationBudget::default());
        let r = theorem_c_report(&p, &opts).map_err(err)?;
        ensure(r.unanimous && r.properties.len() == 7 && r.properties.iter().all(|x| x.value), || {
            format!("{name}: {:?}", r.properties)
        })?;
        count += 1;
    }
    let z = catalog_lookup("Z").unwrap().presentation;
    let start = Instant::now();
    let r = theorem_c_report(&z, &EtaOptions::default()).map_err(err)?;
    let witness = r.witness.clone().unwrap_or_default();
    ensure(
        r.regime == Status::Infinite && r.unanimous && r.properties.iter().all(|x| !x.value),
        || format!("Z: {:?}", r.properties),
    )?;
    ensure(witness.contains("(x)") && witness.contains("infinite order"), || format!("Z witness: {witness}"))?;
    // The fast path never enumerates.
    ensure(start.elapsed() < Duration::from_secs(1), || "Z took the slow path".into())?;
    Ok(format!("{count} finite groups all true; Z all false, witness `{}`", witness.split(':').next().unwrap()))
}

fn pushout() -> Check {
    let c6 = group("C6");
    let a = c6.generators()[0];
    let input = PushoutInput {
        m: closure(&c6, &[c6.pow(a, 3)]),
        n: closure(&c6, &[c6.pow(a, 2)]),
        g: c6,
    };
    let r = pushout_em(&input, &EtaOptions::default()).map_err(err)?;
    let verdict = three_connected_check(&input, &EtaOptions::default()).map_err(err)?;
    ensure(r.pi2.order() == 1 && r.pi3.order() == 1 && verdict.three_connected, || {
        format!("C6: |pi2| = {}, |pi3| = {}, {}", r.pi2.order(), r.pi3.order(), verdict.verdict())
    })?;
    let v = group("C2x2");
    let whole = closure(&v, v.generators());
    let input = PushoutInput {
        m: whole.clone(),
        n: whole,
        g: v,
    };
    let r = pushout_em(&input, &EtaOptions::default()).map_err(err)?;
    ensure(r.pi2.order() == 4 && r.pi3.order() == 16, || {
        format!("C2xC2: |pi2| = {}, |pi3| = {}", r.pi2.order(), r.pi3.order())
    })?;
    Ok("C6: 1, 1, 3-connected; C2xC2: 4, 16".into())
}

fn wedge() -> Check {
    let mut via_eta = 0;
    for k in 1..=5u32 {
        for j in 1..=5u32 {
            let (a, b) = (2u64.pow(k), 3u64.pow(j));
            let w = wedge_pi3(&inv(&[a]), &inv(&[b]));
            ensure(w.is_trivial() && gcd(a, b) == 1, || format!("C{a}, C{b}: {w}"))?;
            if a * b <= 144 {
                let pair = CompatibleActionPair::trivial(
                    Arc::new(RealizedGroup::cyclic(a as usize)),
                    Arc::new(RealizedGroup::cyclic(b as usize)),
                )
                .map_err(err)?;
                let t = triad_group(&TriadInput { actions: pair, p: 1, q: 1 }, &EtaOptions::default()).map_err(err)?;
                ensure(t.group.order() == 1, || format!("C{a} (x) C{b} via eta has order {}", t.group.order()))?;
                via_eta += 1;
            }
        }
    }
    Ok(format!("25 pairs trivial, {via_eta} also via eta"))
}

fn bounds() -> Check {
    let a = bound_theorem_a(2, 3, 4, 5).map_err(err)?;
    let b = bound_theorem_b(2, 2).map_err(err)?;
    let p = bound_pushout_pi3(2, 3, 4).map_err(err)?;
    ensure(a.bound == 120 && b.bound == 4 && p.bound == 24, || format!("{} {} {}", a.bound, b.bound, p.bound))?;
    // Each chain ends at the bound and passes through the partial products.
    for (r, partial) in [(&a, vec!["12", "60", "120"]), (&b, vec!["2", "2", "4"]), (&p, vec!["4", "8", "24"])] {
        ensure(r.chain.len() == 3, || format!("chain {:?}", r.chain))?;
        for (step, want) in r.chain.iter().zip(&partial) {
            ensure(step.ends_with(&format!("= {want}")), || format!("step `{step}`, want {want}"))?;
        }
    }
    Ok("120, 4, 24".into())
}

fn performance() -> Check {
    let mut slowest = (Duration::ZERO, "");
    let mut cosets = 0;
    for &name in SMALL_CORPUS {
        let g = group(name);
        let start = Instant::now();
        let e = build_nu(&g, &nu_options(g.order(), EnumerationBudget::default())).map_err(err)?;
        let t = start.elapsed();
        ensure(t < Duration::from_secs(10), || format!("nu({name}) took {t:?}"))?;
        ensure(e.stats().cosets_defined > 0 || g.order() == 1, || format!("nu({name}): no stats"))?;
        cosets += e.stats().cosets_defined;
        if t > slowest.0 {
            slowest = (t, name);
        }
    }
    Ok(format!(
        "{} groups, slowest nu({}) in {} ms, {cosets} cosets defined in total",
        SMALL_CORPUS.len(),
        slowest.1,
        slowest.0.as_millis()
    ))
}

fn negative_control() -> Check {
    let budget = EnumerationBudget::with_max_cosets(20_000);
    let mut broken = Vec::new();
    for name in ["C2", "C3", "S3", "C2x2"] {
        let g = group(name);
        let mut opts = EtaOptions::with_budget(budget);
        opts.skip_eta_relators = true;
        match build_nu(&g, &opts) {
            Ok(e) if e.eta().order() == e.tensor().order() * g.order() * g.order() => {
                return Err(format!("nu({name}) still decomposes without eta relators"))
            }
            Ok(_) => broken.push(format!("{name}: identity fails")),
            Err(e) => broken.push(format!("{name}: {}", e.code())),
        }
    }
    let mut opts = SuiteOptions::new(Scope::Groups(vec![catalog_lookup("C2").unwrap().presentation]));
    opts.budget = budget;
    opts.skip_eta_relators = true;
    let s = verify_suite(&opts);
    ensure(!s.all_passed(), || "suite passes with the fault injected".into())?;
    Ok(format!("{}; suite fails", broken.join(", ")))
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        criterion(1, "decomposition |eta| = |[G,H^phi]|·|G|·|H|", secs(60), decomposition),
        criterion(2, "route equivalence", secs(60), route_equivalence),
        criterion(3, "C_m (x) C_n = C_gcd(m,n)", secs(30), abelian_reduction),
        criterion(4, "|T(C_n)| = n", None, tensor_counts),
        criterion(5, "exact-sequence orders, order <= 24", None, exact_sequences),
        criterion(6, "Schur multipliers against the exterior square", None, schur_multipliers),
        criterion(7, "stable pi2 of K(C2,1) and K(C3,1)", None, stable_pi2),
        criterion(8, "finiteness properties agree", None, finiteness_agreement),
        criterion(9, "pushouts of C6 and C2xC2", None, pushout),
        criterion(10, "pi3 of K(C_2^k,2) v K(C_3^j,2)", None, wedge),
        criterion(11, "bound arithmetic", None, bounds),
        criterion(12, "nu(G) within 10 s for |G| <= 12", None, performance),
        criterion(13, "negative control", None, negative_control),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
