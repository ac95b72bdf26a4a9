//! Self-checks over a corpus of groups: decomposition, route equivalence,
//! exact sequences, finiteness reports.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::enumerate::{realize, EnumerationBudget};
use crate::error::{Error, Result};
use crate::group::{abelian, closure, RealizedGroup};
use crate::homotopy::{finiteness_report, theorem_c_report, NuData};
use crate::io::catalog::{catalog_lookup, KnownFacts, SMALL_CORPUS};
use crate::tensor::{
    abelian_tensor_oracle, build_eta, tensor_direct, tensor_set, CompatibleActionPair, EtaOptions,
    DEFAULT_ETA_CAP,
};
use crate::word::Presentation;

/// Options for an η build with `|G|·|H| = product`: the full build up to
/// the default cap, the generator-only build beyond it.
pub fn eta_options(product: usize, budget: EnumerationBudget) -> EtaOptions {
    let mut opts = EtaOptions::with_budget(budget);
    if product > DEFAULT_ETA_CAP {
        opts.generator_only = true;
        opts.cap = 576;
    }
    opts
}

/// [`eta_options`] for `ν(G)`.
pub fn nu_options(order: usize, budget: EnumerationBudget) -> EtaOptions {
    eta_options(order * order, budget)
}

#[derive(Debug, Clone)]
pub enum Scope {
    /// The built-in corpus, trivial-action pairs and the infinite control.
    Catalog,
    /// Just these groups.
    Groups(Vec<Presentation>),
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub scope: Scope,
    pub budget: EnumerationBudget,
    /// Fault injection: build every η without its relator families.
    pub skip_eta_relators: bool,
}

impl SuiteOptions {
    pub fn new(scope: Scope) -> Self {
        SuiteOptions {
            scope,
            budget: EnumerationBudget::default(),
            skip_eta_relators: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteSummary {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteSummary {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Runner {
    prefix: String,
    out: Vec<CheckOutcome>,
}

impl Runner {
    fn new(prefix: impl Into<String>) -> Self {
        Runner {
            prefix: prefix.into(),
            out: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> bool {
        let start = Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("{}: {e}", e.code())),
        };
        self.out.push(CheckOutcome {
            name: format!("{}: {name}", self.prefix),
            passed,
            detail,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
        passed
    }
}

fn group_checks(p: &Presentation, facts: Option<KnownFacts>, opts: &SuiteOptions) -> Vec<CheckOutcome> {
    let mut r = Runner::new(p.name.clone());
    let mut realized: Option<Arc<RealizedGroup>> = None;
    let ok = r.check("realize", || {
        let (g, _) = realize(p, opts.budget)?;
        let matches = facts.and_then(|f| f.order).is_none_or(|n| n == g.order() as u64);
        let detail = format!("order {}", g.order());
        realized = Some(Arc::new(g));
        Ok((matches, detail))
    });
    let Some(g) = realized.filter(|_| ok) else {
        return r.out;
    };
    let mut eta_opts = nu_options(g.order(), opts.budget);
    eta_opts.skip_eta_relators = opts.skip_eta_relators;

    let mut data: Option<NuData> = None;
    r.check("decomposition |nu| = |[G,G^phi]|·|G|^2", || {
        let d = NuData::compute(&g, &eta_opts)?;
        let e = &d.nu;
        let detail = format!(
            "{} = {}·{}² ({} cosets defined)",
            e.eta().order(),
            e.tensor().order(),
            g.order(),
            e.stats().cosets_defined
        );
        let holds = e.decomposition_holds();
        data = Some(d);
        Ok((holds, detail))
    });
    let Some(d) = data else {
        return r.out;
    };
    r.check("exact sequences", || {
        let x = d.exactness()?;
        let detail = x
            .all()
            .iter()
            .map(|s| format!("{}·{}={}", s.left, s.right, s.middle))
            .collect::<Vec<_>>()
            .join(", ");
        Ok((x.holds(), detail))
    });
    r.check("tensor set generates [G,G^phi]", || {
        let ts = tensor_set(&d.nu);
        let span = closure(d.nu.eta(), &ts.elements);
        Ok((
            span.same_members(d.nu.tensor()) && ts.count() <= d.tensor_order(),
            format!("m = {}", ts.count()),
        ))
    });
    if g.order() * g.order() <= 36 {
        r.check("route equivalence", || {
            let (direct, _) = tensor_direct(d.nu.pair(), &opts.budget)?;
            route_detail(&direct, d.tensor_group())
        });
    }
    r.check("finiteness properties agree", || {
        let t = theorem_c_report(p, &eta_opts)?;
        Ok((t.unanimous && t.properties.iter().all(|x| x.value), "7 of 7 true".to_string()))
    });
    r.check("G^ab embeds in Delta(G)", || {
        let f = finiteness_report(p, &eta_opts)?;
        let delta = f.delta.as_ref().map_or("?".to_string(), |d| d.to_string());
        Ok((f.embeds_in_delta == Some(true), format!("{} in {delta}", f.abelianization)))
    });
    r.out
}

fn route_detail(direct: &RealizedGroup, via_eta: &Arc<RealizedGroup>) -> Result<(bool, String)> {
    let a = abelian::abelianization_invariants(&Arc::new(direct.clone()))?;
    let b = abelian::abelianization_invariants(via_eta)?;
    Ok((
        direct.order() == via_eta.order() && a == b,
        format!("{} / {} vs {} / {}", direct.order(), a, via_eta.order(), b),
    ))
}

fn pair_checks(a: &Presentation, b: &Presentation, opts: &SuiteOptions) -> Vec<CheckOutcome> {
    let mut r = Runner::new(format!("{} x {} trivial", a.name, b.name));
    let mut pair = None;
    r.check("eta decomposition", || {
        let g = Arc::new(realize(a, opts.budget)?.0);
        let h = Arc::new(realize(b, opts.budget)?.0);
        let p = CompatibleActionPair::trivial(g, h)?;
        let mut eta_opts = EtaOptions::with_budget(opts.budget);
        eta_opts.skip_eta_relators = opts.skip_eta_relators;
        let e = build_eta(&p, &eta_opts)?;
        let detail = format!("{} = {}·{}·{}", e.eta().order(), e.tensor().order(), p.g().order(), p.h().order());
        let holds = e.decomposition_holds();
        pair = Some((p, e));
        Ok((holds, detail))
    });
    let Some((p, e)) = pair else {
        return r.out;
    };
    r.check("route equivalence", || {
        let (direct, _) = tensor_direct(&p, &opts.budget)?;
        route_detail(&direct, e.tensor_group())
    });
    if p.g().is_abelian() && p.h().is_abelian() {
        r.check("abelian oracle", || {
            let ia = abelian::invariants_of_abelian_group(p.g())?;
            let ib = abelian::invariants_of_abelian_group(p.h())?;
            let want = abelian_tensor_oracle(&ia, &ib);
            let got = abelian::abelianization_invariants(e.tensor_group())?;
            Ok((e.tensor_group().is_abelian() && got == want, format!("{got} vs {want}")))
        });
    }
    r.out
}

fn catalog(name: &str) -> (Presentation, Option<KnownFacts>) {
    let e = catalog_lookup(name).expect("corpus names are in the catalog");
    (e.presentation, e.known_facts)
}

/// Runs every check in scope. Groups are processed concurrently; the
/// outcome order is fixed by the scope.
pub fn verify_suite(opts: &SuiteOptions) -> SuiteSummary {
    type Job<'a> = Box<dyn FnOnce() -> Vec<CheckOutcome> + Send + 'a>;
    let mut jobs: Vec<Job> = Vec::new();
    match &opts.scope {
        Scope::Groups(groups) => {
            for p in groups {
                jobs.push(Box::new(move || group_checks(p, None, opts)));
            }
        }
        Scope::Catalog => {
            for &name in SMALL_CORPUS {
                jobs.push(Box::new(move || {
                    let (p, facts) = catalog(name);
                    group_checks(&p, facts, opts)
                }));
            }
            for (i, &a) in SMALL_CORPUS.iter().enumerate() {
                for &b in &SMALL_CORPUS[i..] {
                    let (pa, fa) = catalog(a);
                    let (pb, fb) = catalog(b);
                    let size = fa.and_then(|f| f.order).unwrap_or(u64::MAX)
                        * fb.and_then(|f| f.order).unwrap_or(u64::MAX);
                    if size <= 36 {
                        jobs.push(Box::new(move || pair_checks(&pa, &pb, opts)));
                    }
                }
            }
            jobs.push(Box::new(move || {
                let mut r = Runner::new("Z");
                r.check("finiteness properties agree (infinite)", || {
                    let (p, _) = catalog("Z");
                    let t = theorem_c_report(&p, &EtaOptions::with_budget(opts.budget))?;
                    Ok((
                        t.unanimous && t.properties.iter().all(|x| !x.value) && t.witness.is_some(),
                        t.witness.unwrap_or_default(),
                    ))
                });
                r.out
            }));
        }
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let mut results: Vec<Option<Vec<CheckOutcome>>> = Vec::new();
    results.resize_with(jobs.len(), || None);
    let queue = std::sync::Mutex::new(jobs.into_iter().enumerate().collect::<Vec<_>>());
    let done = std::sync::Mutex::new(&mut results);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let next = queue.lock().expect("queue lock").pop();
                let Some((i, job)) = next else { break };
                let out = job();
                done.lock().expect("results lock")[i] = Some(out);
            });
        }
    });
    SuiteSummary {
        checks: results.into_iter().flatten().flatten().collect(),
    }
}

/// Parses a scope file's groups; a file without groups is an error.
pub fn file_scope(text: &str) -> Result<Scope> {
    let f = crate::io::parse_file(text)?;
    if f.groups.is_empty() {
        return Err(Error::Usage("file contains no group blocks".into()));
    }
    Ok(Scope::Groups(f.groups))
}
