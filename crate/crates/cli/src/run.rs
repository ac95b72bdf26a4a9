use std::path::Path;
use std::sync::Arc;

use ntl_core::enumerate::{realize, EnumerationBudget};
use ntl_core::group::abelian::abelian_invariants;
use ntl_core::group::closure;
use ntl_core::homotopy::{
    bound_pushout_pi3, bound_theorem_a, bound_theorem_b, burnside_exponent_check, finiteness_report,
    pushout_em, theorem_c_report, three_connected_check, triad_group, wedge_pi3, BoundReport,
    NuData, PushoutInput, TriadInput,
};
use ntl_core::homotopy::reports::Status;
use ntl_core::io::{catalog_lookup, parse_file, parse_word_list, resolve_action, GroupSummary, OrderValue, ParsedFile};
use ntl_core::suite::{eta_options, file_scope, nu_options, verify_suite, Scope, SuiteOptions};
use ntl_core::tensor::{
    abelian_tensor_oracle, build_eta, tensor_set, validate_compatibility, CompatibleActionPair,
    EtaOptions, EtaRealization,
};
use ntl_core::{AbelianInvariants, Error, Presentation, RealizedGroup, Result};
use serde_json::{json, Value};

use crate::{Bound, Command, Invariant, PairArgs, PushoutArgs};

pub enum Body {
    Report {
        result: GroupSummary,
        chain: Option<Vec<String>>,
        details: Value,
    },
    /// Output that is not about one group.
    Raw(Value),
}

pub struct Outcome {
    pub query: Value,
    pub body: Body,
    pub text: Vec<String>,
    pub cosets_defined: usize,
    /// Exit nonzero even though the command itself ran.
    pub failed: bool,
}

impl Outcome {
    fn report(query: Value, result: GroupSummary, details: Value, text: Vec<String>, cosets: usize) -> Self {
        Outcome {
            query,
            body: Body::Report {
                result,
                chain: None,
                details,
            },
            text,
            cosets_defined: cosets,
            failed: false,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Looks `name` up in `file`, then in the catalog, then reads it as a path.
fn resolve_group(name: &str, file: Option<&ParsedFile>) -> Result<Presentation> {
    if let Some(p) = file.and_then(|f| f.group(name)) {
        return Ok(p.clone());
    }
    match catalog_lookup(name) {
        Ok(e) => Ok(e.presentation),
        Err(e) => {
            let path = Path::new(name);
            if !path.is_file() {
                return Err(e);
            }
            let parsed = parse_file(&read(path)?)?;
            parsed
                .groups
                .into_iter()
                .next()
                .ok_or_else(|| Error::Usage(format!("{name} contains no group block")))
        }
    }
}

struct Realized {
    p: Presentation,
    g: Arc<RealizedGroup>,
    cosets: usize,
}

fn realize_named(name: &str, file: Option<&ParsedFile>, budget: EnumerationBudget) -> Result<Realized> {
    let p = resolve_group(name, file)?;
    let (g, stats) = realize(&p, budget)?;
    Ok(Realized {
        p,
        g: Arc::new(g),
        cosets: stats.cosets_defined,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Trivial,
    Conjugation,
    File,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Trivial => "trivial",
            Mode::Conjugation => "conjugation",
            Mode::File => "file",
        }
    }
}

fn pair_mode(a: &PairArgs) -> Result<Mode> {
    let same = a.other.as_ref().is_none_or(|o| *o == a.group);
    if a.action.is_some() {
        Ok(Mode::File)
    } else if a.trivial_actions {
        Ok(Mode::Trivial)
    } else if a.conjugation || same {
        if !same {
            return Err(Error::Usage("--conjugation needs --other to be the same group as --group".into()));
        }
        Ok(Mode::Conjugation)
    } else {
        Err(Error::Usage(
            "two different groups need --trivial-actions or --action FILE".into(),
        ))
    }
}

fn pair_query(command: &str, a: &PairArgs, mode: Mode) -> Value {
    json!({
        "command": command,
        "group": a.group,
        "other": a.other.as_deref().unwrap_or(&a.group),
        "actions": a.action.as_ref().map_or(mode.name().to_string(), |p| p.display().to_string()),
    })
}

struct Pair {
    pair: CompatibleActionPair,
    cosets: usize,
}

fn build_pair(a: &PairArgs, mode: Mode, budget: EnumerationBudget) -> Result<Pair> {
    let file = a.action.as_deref().map(|p| read(p).and_then(|t| parse_file(&t))).transpose()?;
    let other = a.other.as_deref().unwrap_or(&a.group);
    let g = realize_named(&a.group, file.as_ref(), budget)?;
    if mode == Mode::Conjugation {
        let cosets = g.cosets;
        return Ok(Pair {
            pair: CompatibleActionPair::conjugation(g.g)?,
            cosets,
        });
    }
    let h = realize_named(other, file.as_ref(), budget)?;
    let cosets = g.cosets + h.cosets;
    let pair = match file {
        None => CompatibleActionPair::trivial(g.g, h.g)?,
        Some(f) => {
            let from_to = |x: &str, y: &str, skip: usize| {
                f.actions
                    .iter()
                    .filter(|r| r.from == x && r.to == y)
                    .nth(skip)
                    .ok_or_else(|| Error::Usage(format!("action file has no action from {x} to {y}")))
            };
            let same = g.p.name == h.p.name;
            let g_on_h = resolve_action(from_to(&g.p.name, &h.p.name, 0)?, &g.p, &h.p)?;
            let h_on_g = resolve_action(from_to(&h.p.name, &g.p.name, usize::from(same))?, &h.p, &g.p)?;
            validate_compatibility(g.g, h.g, &g_on_h, &h_on_g)?
        }
    };
    Ok(Pair { pair, cosets })
}

fn pair_options(p: &CompatibleActionPair, budget: EnumerationBudget) -> EtaOptions {
    eta_options(p.g().order() * p.h().order(), budget)
}

fn eta_for(a: &PairArgs, budget: EnumerationBudget) -> Result<(Mode, EtaRealization, usize)> {
    let mode = pair_mode(a)?;
    let p = build_pair(a, mode, budget)?;
    let e = build_eta(&p.pair, &pair_options(&p.pair, budget))?;
    let cosets = p.cosets + e.stats().cosets_defined;
    Ok((mode, e, cosets))
}

fn summary_lines(label: &str, s: &GroupSummary) -> Vec<String> {
    let order = match s.order {
        OrderValue::Finite(n) => n.to_string(),
        OrderValue::Infinite => "infinite".into(),
        OrderValue::Undetermined => "undetermined".into(),
    };
    let mut out = vec![format!("{label}: order {order}")];
    if let Some(a) = s.abelian {
        out.push(format!("  abelian: {a}"));
    }
    if let Some(inv) = &s.abelian_invariants {
        let inv = AbelianInvariants::from_cyclic_factors(inv).map(|i| i.to_string()).unwrap_or_default();
        out.push(format!("  abelian invariants: {inv}"));
    }
    if let Some(e) = s.exponent {
        out.push(format!("  exponent: {e}"));
    }
    if let Some(m) = s.tensor_count_m {
        out.push(format!("  tensors m: {m}"));
    }
    out
}

/// Summary of a realized η, with `η^ab` read off its presentation.
fn eta_summary(e: &EtaRealization) -> Result<GroupSummary> {
    let p = e.presentation();
    let ab = abelian_invariants(&p.relation_matrix(), p.rank())?;
    let g = e.eta();
    Ok(GroupSummary {
        order: OrderValue::Finite(g.order() as u64),
        abelian: Some(g.is_abelian()),
        abelian_invariants: Some(ab.factors().to_vec()),
        exponent: Some(g.exponent() as u64),
        tensor_count_m: None,
    })
}

fn invariant_summary(inv: &AbelianInvariants) -> GroupSummary {
    GroupSummary {
        order: inv.order().map_or(OrderValue::Infinite, OrderValue::Finite),
        abelian: Some(true),
        abelian_invariants: Some(inv.factors().to_vec()),
        exponent: inv.is_finite().then(|| inv.exponent()),
        tensor_count_m: None,
    }
}

/// Invariants of a presentation known to be abelian without realizing it.
fn presented_abelian(name: &str) -> Result<Option<AbelianInvariants>> {
    let p = resolve_group(name, None)?;
    let known = catalog_lookup(name).ok().and_then(|e| e.known_facts).is_some_and(|f| f.abelian);
    if !(known || p.is_visibly_abelian()) {
        return Ok(None);
    }
    Ok(Some(abelian_invariants(&p.relation_matrix(), p.rank())?))
}

fn tensor(a: &PairArgs, budget: EnumerationBudget) -> Result<Outcome> {
    let mode = pair_mode(a)?;
    let query = pair_query("tensor", a, mode);
    let other = a.other.as_deref().unwrap_or(&a.group);
    // Infinite abelian factors with trivial actions: A (x) B over Z.
    if mode != Mode::File && (mode == Mode::Trivial || other == a.group) {
        if let (Some(x), Some(y)) = (presented_abelian(&a.group)?, presented_abelian(other)?) {
            if !x.is_finite() || !y.is_finite() {
                let t = abelian_tensor_oracle(&x, &y);
                let s = invariant_summary(&t);
                let text = summary_lines(&format!("{} (x) {}", a.group, other), &s);
                return Ok(Outcome::report(query, s, json!({"route": "abelian"}), text, 0));
            }
        }
    }
    let (_, e, cosets) = eta_for(a, budget)?;
    let mut s = GroupSummary::of(e.tensor_group());
    s.tensor_count_m = Some(tensor_set(&e).count() as u64);
    let text = summary_lines(&format!("{} (x) {}", a.group, other), &s);
    Ok(Outcome::report(query, s, Value::Null, text, cosets))
}

fn eta(a: &PairArgs, budget: EnumerationBudget) -> Result<Outcome> {
    let (mode, e, cosets) = eta_for(a, budget)?;
    let s = eta_summary(&e)?;
    let mut text = summary_lines(&format!("eta({}, {})", a.group, a.other.as_deref().unwrap_or(&a.group)), &s);
    text.push(format!(
        "  |eta| = |[G,H^phi]|*|G|*|H| = {}*{}*{}: {}",
        e.tensor().order(),
        e.pair().g().order(),
        e.pair().h().order(),
        e.decomposition_holds()
    ));
    let details = json!({
        "tensor_order": e.tensor().order(),
        "decomposition_holds": e.decomposition_holds(),
    });
    Ok(Outcome::report(pair_query("eta", a, mode), s, details, text, cosets))
}

fn tensors(a: &PairArgs, budget: EnumerationBudget) -> Result<Outcome> {
    let (mode, e, cosets) = eta_for(a, budget)?;
    let ts = tensor_set(&e);
    let (g, h) = (e.pair().g(), e.pair().h());
    let labels: Vec<String> = ts
        .witness
        .iter()
        .map(|&(x, y)| format!("{} (x) {}", g.element_label(x), h.element_label(y)))
        .collect();
    let mut s = GroupSummary::of(e.tensor_group());
    s.tensor_count_m = Some(ts.count() as u64);
    let mut text = vec![format!("m = {} distinct tensors", ts.count())];
    text.extend(labels.iter().map(|l| format!("  {l}")));
    Ok(Outcome::report(pair_query("tensors", a, mode), s, json!({"tensors": labels}), text, cosets))
}

fn nu_data(name: &str, budget: EnumerationBudget) -> Result<(NuData, usize)> {
    let r = realize_named(name, None, budget)?;
    let d = NuData::compute(&r.g, &nu_options(r.g.order(), budget))?;
    let cosets = r.cosets + d.nu.stats().cosets_defined;
    Ok((d, cosets))
}

fn nu(name: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let r = realize_named(name, None, budget)?;
    let e = ntl_core::tensor::build_nu(&r.g, &nu_options(r.g.order(), budget))?;
    let s = eta_summary(&e)?;
    let mut text = summary_lines(&format!("nu({name})"), &s);
    text.push(format!("  |[G,G^phi]| = {}", e.tensor().order()));
    let details = json!({
        "tensor_order": e.tensor().order(),
        "decomposition_holds": e.decomposition_holds(),
    });
    let cosets = r.cosets + e.stats().cosets_defined;
    Ok(Outcome::report(json!({"command": "nu", "group": name}), s, details, text, cosets))
}

fn invariant(which: Invariant, name: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let (d, cosets) = nu_data(name, budget)?;
    let (key, label, group) = match which {
        Invariant::J2 => ("j2", format!("J2({name}) = pi3(SK({name},1))"), Arc::new(d.pi3_suspension()?)),
        Invariant::Delta => ("delta", format!("Delta({name})"), Arc::new(d.delta.to_group("Delta")?.0)),
        Invariant::DeltaTilde => (
            "delta-tilde",
            format!("Delta~({name})"),
            Arc::new(d.delta_tilde.to_group("Delta~")?.0),
        ),
        Invariant::Schur => ("schur", format!("H2({name}) = J2/Delta"), d.schur_multiplier()?.quotient),
        Invariant::StablePi2 => (
            "stable-pi2",
            format!("pi2S(K({name},1)) = J2/Delta~"),
            d.stable_pi2()?.quotient,
        ),
        Invariant::Pi4S2 => (
            "pi4-s2",
            format!("pi4(S2 K({name},1)) = J2/Delta~"),
            d.stable_pi2()?.quotient,
        ),
    };
    let s = GroupSummary::of(&group);
    let text = summary_lines(&label, &s);
    let query = json!({"command": "invariant", "invariant": key, "group": name});
    Ok(Outcome::report(query, s, Value::Null, text, cosets))
}

fn triad(a: &PairArgs, p: u32, q: u32, budget: EnumerationBudget) -> Result<Outcome> {
    let mode = pair_mode(a)?;
    let pair = build_pair(a, mode, budget)?;
    let opts = pair_options(&pair.pair, budget);
    let t = triad_group(
        &TriadInput {
            actions: pair.pair,
            p,
            q,
        },
        &opts,
    )?;
    let s = GroupSummary::of(&t.group);
    let text = summary_lines(&format!("pi_{}(X;A,B)", t.dimension), &s);
    let mut query = pair_query("triad", a, mode);
    query["p"] = json!(p);
    query["q"] = json!(q);
    let cosets = pair.cosets + t.eta.stats().cosets_defined;
    Ok(Outcome::report(query, s, json!({"dimension": t.dimension}), text, cosets))
}

fn wedge(a: &str, b: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let inv = |name: &str| -> Result<(AbelianInvariants, usize)> {
        if let Some(i) = presented_abelian(name)? {
            return Ok((i, 0));
        }
        let r = realize_named(name, None, budget)?;
        if !r.g.is_abelian() {
            return Err(Error::Usage(format!("{name} is not abelian")));
        }
        Ok((ntl_core::group::abelian::invariants_of_abelian_group(&r.g)?, r.cosets))
    };
    let (x, cx) = inv(a)?;
    let (y, cy) = inv(b)?;
    let w = wedge_pi3(&x, &y);
    let s = invariant_summary(&w);
    let text = summary_lines(&format!("pi3(K({a},2) v K({b},2))"), &s);
    let query = json!({"command": "wedge", "group": a, "other": b});
    Ok(Outcome::report(query, s, Value::Null, text, cx + cy))
}

fn pushout_input(a: &PushoutArgs, budget: EnumerationBudget) -> Result<(PushoutInput, usize)> {
    let r = realize_named(&a.group, None, budget)?;
    let sub = |text: &str| -> Result<ntl_core::Subgroup> {
        let words = parse_word_list(text, &r.p.generators)?;
        let elems: Vec<_> = words.iter().map(|w| r.g.eval(w)).collect();
        Ok(closure(&r.g, &elems))
    };
    let (m, n) = (sub(&a.m)?, sub(&a.n)?);
    Ok((PushoutInput { g: r.g, m, n }, r.cosets))
}

fn pushout_query(command: &str, a: &PushoutArgs) -> Value {
    json!({"command": command, "group": a.group, "m": a.m, "n": a.n})
}

fn pushout(a: &PushoutArgs, budget: EnumerationBudget) -> Result<Outcome> {
    let (input, cosets) = pushout_input(a, budget)?;
    let opts = eta_options(input.m.order() * input.n.order(), budget);
    let r = pushout_em(&input, &opts)?;
    let s = GroupSummary::of(&r.pi3);
    let pi2 = GroupSummary::of(&r.pi2);
    let mut text = summary_lines("pi3", &s);
    text.extend(summary_lines("pi2", &pi2));
    text.push(format!("|[M,N^phi]| = {}", r.tensor_order));
    let details = json!({"pi2": pi2, "tensor_order": r.tensor_order});
    Ok(Outcome::report(pushout_query("pushout", a), s, details, text, cosets))
}

fn three_connected(a: &PushoutArgs, budget: EnumerationBudget) -> Result<Outcome> {
    let (input, cosets) = pushout_input(a, budget)?;
    let opts = eta_options(input.m.order() * input.n.order(), budget);
    let r = three_connected_check(&input, &opts)?;
    let text = vec![
        format!("pi1 trivial: {}", r.pi1_trivial),
        format!("|pi2| = {}", r.pi2_order),
        format!("|pi3| = {}", r.pi3_order),
        r.verdict().to_string(),
    ];
    let mut details = serde_json::to_value(&r).expect("report is serializable");
    details["verdict"] = json!(r.verdict());
    let s = GroupSummary::unknown(OrderValue::Undetermined);
    Ok(Outcome::report(pushout_query("three-connected", a), s, details, text, cosets))
}

/// Summary of `G` for reports that only know its finiteness status.
fn status_summary(p: &Presentation, status: &Status, budget: EnumerationBudget) -> Result<(GroupSummary, usize)> {
    Ok(match status {
        Status::Finite => {
            let (g, stats) = realize(p, budget)?;
            (GroupSummary::of(&g), stats.cosets_defined)
        }
        Status::Infinite => (GroupSummary::unknown(OrderValue::Infinite), 0),
        Status::Undetermined => (GroupSummary::unknown(OrderValue::Undetermined), 0),
    })
}

fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Finite => "finite",
        Status::Infinite => "infinite",
        Status::Undetermined => "undetermined",
    }
}

fn report_options(p: &Presentation, budget: EnumerationBudget) -> Result<EtaOptions> {
    let ab = abelian_invariants(&p.relation_matrix(), p.rank())?;
    if !ab.is_finite() {
        return Ok(EtaOptions::with_budget(budget));
    }
    Ok(match realize(p, budget) {
        Ok((g, _)) => nu_options(g.order(), budget),
        Err(_) => EtaOptions::with_budget(budget),
    })
}

fn thmc(name: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let p = resolve_group(name, None)?;
    let opts = report_options(&p, budget)?;
    let r = theorem_c_report(&p, &opts)?;
    let (s, cosets) = status_summary(&p, &r.regime, budget)?;
    let mut text = vec![format!("{name}: {} regime", status_name(&r.regime))];
    for prop in &r.properties {
        text.push(format!("  ({}) {:<36} {:<5}  {}", prop.key, prop.statement, prop.value, prop.evidence));
    }
    text.push(format!("unanimous: {}", r.unanimous));
    if let Some(w) = &r.witness {
        text.push(format!("witness: {w}"));
    }
    let details = serde_json::to_value(&r).expect("report is serializable");
    let mut out = Outcome::report(json!({"command": "thmc", "group": name}), s, details, text, cosets);
    out.failed = !r.unanimous;
    Ok(out)
}

fn finiteness(name: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let p = resolve_group(name, None)?;
    let opts = report_options(&p, budget)?;
    let r = finiteness_report(&p, &opts)?;
    let (mut s, cosets) = status_summary(&p, &r.status, budget)?;
    s.tensor_count_m = r.tensor_count_m.map(|m| m as u64);
    let mut text = vec![format!("{name}: {}", status_name(&r.status))];
    text.push(format!("  G^ab = {}", r.abelianization));
    if let Some(d) = r.derived_order {
        text.push(format!("  |G'| = {d}"));
    }
    if let Some(m) = r.tensor_count_m {
        text.push(format!("  m = {m}"));
    }
    if let Some(t) = r.tensor_order {
        text.push(format!("  |[G,G^phi]| = {t}"));
    }
    if let Some(d) = &r.delta {
        text.push(format!("  Delta(G) = {d}"));
    }
    if let Some(e) = r.embeds_in_delta {
        text.push(format!("  G^ab embeds in Delta(G): {e}"));
    }
    if let Some(n) = &r.note {
        text.push(format!("  {n}"));
    }
    let details = serde_json::to_value(&r).expect("report is serializable");
    Ok(Outcome::report(json!({"command": "finiteness", "group": name}), s, details, text, cosets))
}

fn bound(which: &Bound) -> Result<Outcome> {
    let (query, r): (Value, BoundReport) = match *which {
        Bound::Thma { a, b, c, t } => (json!({"command": "bound", "kind": "thma", "a": a, "b": b, "c": c, "t": t}), bound_theorem_a(a, b, c, t)?),
        Bound::Thmb { a, t } => (json!({"command": "bound", "kind": "thmb", "a": a, "t": t}), bound_theorem_b(a, t)?),
        Bound::Pushout { na, nb, t } => (
            json!({"command": "bound", "kind": "pushout", "na": na, "nb": nb, "t": t}),
            bound_pushout_pi3(na, nb, t)?,
        ),
    };
    let mut text = vec![format!("bound: {}", r.bound)];
    text.extend(r.chain.iter().map(|c| format!("  {c}")));
    Ok(Outcome {
        query,
        body: Body::Report {
            result: GroupSummary::unknown(OrderValue::Undetermined),
            chain: Some(r.chain.clone()),
            details: json!({"bound": r.bound, "exact_orders": r.exact_orders}),
        },
        text,
        cosets_defined: 0,
        failed: false,
    })
}

fn exponent_check(name: &str, budget: EnumerationBudget) -> Result<Outcome> {
    let r = realize_named(name, None, budget)?;
    let b = burnside_exponent_check(&r.g, &nu_options(r.g.order(), budget))?;
    let s = GroupSummary::of(&r.g);
    let text = vec![
        format!("exp [G,G^phi] = {}", b.tensor_exponent),
        format!("bounded-exponent case: {}", b.applicable),
        format!("G finite: {}, consistent: {}", b.group_finite, b.consistent),
    ];
    let details = serde_json::to_value(&b).expect("report is serializable");
    Ok(Outcome::report(json!({"command": "exponent-check", "group": name}), s, details, text, r.cosets))
}

fn verify(groups: &[String], file: Option<&Path>, skip: bool, budget: EnumerationBudget) -> Result<Outcome> {
    let (scope, label) = match (file, groups.is_empty()) {
        (Some(f), _) => (file_scope(&read(f)?)?, f.display().to_string()),
        (None, true) => (Scope::Catalog, "catalog".to_string()),
        (None, false) => {
            let ps = groups.iter().map(|g| resolve_group(g, None)).collect::<Result<Vec<_>>>()?;
            (Scope::Groups(ps), groups.join(","))
        }
    };
    let mut opts = SuiteOptions::new(scope);
    opts.budget = budget;
    opts.skip_eta_relators = skip;
    let summary = verify_suite(&opts);
    let mut text: Vec<String> = summary
        .checks
        .iter()
        .map(|c| {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            format!("{mark} {} [{} ms] {}", c.name, c.elapsed_ms, c.detail)
        })
        .collect();
    text.push(format!("{}/{} checks passed", summary.passed(), summary.checks.len()));
    let v = json!({
        "checks": summary.checks,
        "passed": summary.passed(),
        "total": summary.checks.len(),
    });
    Ok(Outcome {
        query: json!({"command": "verify", "scope": label, "skip_eta_relators": skip}),
        body: Body::Raw(v),
        text,
        cosets_defined: 0,
        failed: !summary.all_passed(),
    })
}

pub fn dispatch(command: &Command, budget: EnumerationBudget) -> Result<Outcome> {
    match command {
        Command::Tensor(a) => tensor(a, budget),
        Command::Nu(g) => nu(&g.group, budget),
        Command::Eta(a) => eta(a, budget),
        Command::Tensors(a) => tensors(a, budget),
        Command::Invariant { which, group } => invariant(*which, &group.group, budget),
        Command::Triad { pair, p, q } => triad(pair, *p, *q, budget),
        Command::Wedge { group, other } => wedge(group, other, budget),
        Command::Pushout(a) => pushout(a, budget),
        Command::ThreeConnected(a) => three_connected(a, budget),
        Command::Thmc(g) => thmc(&g.group, budget),
        Command::Finiteness(g) => finiteness(&g.group, budget),
        Command::Bound { which } => bound(which),
        Command::ExponentCheck(g) => exponent_check(&g.group, budget),
        Command::Verify {
            group,
            file,
            skip_eta_relators,
        } => verify(group, file.as_deref(), *skip_eta_relators, budget),
    }
}
