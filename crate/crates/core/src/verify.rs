//! The check suite run by `moufang verify`, plus the `analyze` summary.
//!
//! Each check is named after the claim it exercises (`lemma1.bruck-slaby`,
//! `eq2.associator-expansion`, ...). Reports are returned sorted by name.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loops::{check_identity2, check_identity3, generate, Cml, FiniteLoop, Subloop};
use crate::mult_group::{
    inner_mapping_cross_check, inner_mapping_group, inner_mappings_are_automorphisms_check,
    multiplication_group,
};
use crate::perm::{
    center, check_identity1, is_p_group, nilpotency_class_group, quotient_is_p_group_check,
};
use crate::report::{CheckConfig, CheckReport, ReportBuilder, Status, Witness};
use crate::structure::{
    associator_hom_check, bruck_slaby_check, centralizer, loop_center, maximal_subloops,
    min_generators, nilpotency_class_loop, omega_report, order3_normal_central_check,
    quotient_by_center, remak_check, special_rank, upper_central_series_loop,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub cfg: CheckConfig,
    /// Include the checks that need the full subloop lattice.
    pub rank: bool,
    pub bruck_slaby_gens: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            cfg: CheckConfig::default(),
            rank: false,
            bruck_slaby_gens: 3,
        }
    }
}

macro_rules! timed {
    ($e:expr) => {{
        let started = std::time::Instant::now();
        let mut report: CheckReport = $e;
        report.timing_ms = started.elapsed().as_millis() as u64;
        report
    }};
}

const BUDGET_PREFIX: &str = "budget: ";

fn settle(name: &str, r: Result<CheckReport>) -> CheckReport {
    match r {
        Ok(mut report) => {
            report.name = name.to_string();
            report
        }
        Err(e) if e.is_budget() => CheckReport::skipped(name, format!("{BUDGET_PREFIX}{e}")),
        Err(Error::HypothesisFailed(msg)) => {
            CheckReport::skipped(name, format!("hypothesis failed: {msg}"))
        }
        Err(Error::ClosureViolation { witness }) | Err(Error::NormalityViolation { witness }) => {
            let mut r = ReportBuilder::new(name).elements(0, Some(witness));
            r.note = Some(e_note(&r));
            r
        }
        Err(e) => {
            let mut r = ReportBuilder::new(name).finish(0, Some(Witness::Elements(Vec::new())));
            r.note = Some(e.to_string());
            r
        }
    }
}

fn e_note(r: &CheckReport) -> String {
    format!(
        "violation at {:?}",
        r.elements_witness().unwrap_or_default()
    )
}

fn pass(name: &str, checked: u64, note: String) -> CheckReport {
    ReportBuilder::new(name)
        .elements(checked, None)
        .with_note(note)
}

fn fail(name: &str, checked: u64, witness: Vec<usize>, note: String) -> CheckReport {
    ReportBuilder::new(name)
        .elements(checked, Some(witness))
        .with_note(note)
}

/// Runs every check that applies to `l`.
pub fn run_suite(l: &FiniteLoop, opts: &SuiteOptions) -> Vec<CheckReport> {
    let cfg = &opts.cfg;
    let mut reports = Vec::new();

    let cml_report = l.is_cml();
    let cml = cml_report.passed().then(|| Cml::assume(l.clone()));
    reports.push(cml_report);

    let mg = multiplication_group(l);
    reports.push(timed!(settle(
        "eq1.commutator-expansion",
        check_identity1(&mg, cfg)
    )));
    reports.push(timed!(settle(
        "mult.inner-mapping-cross-check",
        Ok(inner_mapping_cross_check(l))
    )));
    reports.push(timed!({
        let name = "mult.orbit-stabilizer";
        let inner = inner_mapping_group(l);
        let transitive = mg.is_transitive();
        let product = mg.order() == inner.order() * l.order();
        let note = format!(
            "|M| = {}, |I| = {}, degree {}",
            mg.order(),
            inner.order(),
            l.order()
        );
        if transitive && product {
            pass(name, l.order() as u64, note)
        } else {
            fail(name, l.order() as u64, vec![l.identity()], note)
        }
    }));

    let cml_names = [
        "def.centralizer-subloop",
        "eq2.associator-expansion",
        "eq3.associator-symmetries",
        "lemma1.bruck-slaby",
        "lemma1-0.mult-group-nilpotent",
        "lemma2.quotient-exponent-3",
        "lemma2-0.mult-group-quotient-3-group",
        "lemma3.associator-homomorphism",
        "lemma3.remak-embedding",
        "lemma4.inner-mappings-automorphisms",
        "lemma4.maximal-subloops-normal",
        "lemma4.order3-normal-central",
        "lemma5.center-nontrivial",
        "lemma5-0.mult-group-center-nontrivial",
        "rank.special-rank",
        "theorem.omega-equivalence",
    ];
    let Some(cml) = cml else {
        reports.extend(
            cml_names
                .iter()
                .map(|n| CheckReport::skipped(*n, "not a commutative Moufang loop")),
        );
        reports.sort_by(|a, b| a.name.cmp(&b.name));
        return reports;
    };

    let whole = Subloop::whole(&cml);
    let gens = min_generators(&cml, &whole).generators;

    reports.push(timed!(centralizer_subloop_check(&cml, &gens)));
    reports.push(timed!(check_identity2(&cml, cfg)));
    reports.push(timed!(check_identity3(&cml)));
    reports.push(timed!(settle(
        "lemma1.bruck-slaby",
        Ok(bruck_slaby_check(&cml, opts.bruck_slaby_gens))
    )));

    reports.push(timed!({
        let name = "lemma1-0.mult-group-nilpotent";
        match nilpotency_class_group(&mg, cfg.enumeration_limit) {
            Ok(c) => pass(name, 1, format!("class {c}")),
            Err(Error::NotNilpotent) => fail(
                name,
                1,
                vec![l.identity()],
                "upper central series stalls".into(),
            ),
            Err(e) => settle(name, Err(e)),
        }
    }));
    reports.push(timed!({
        let name = "lemma2.quotient-exponent-3";
        let z = loop_center(&cml);
        let (q, proj) = cml
            .quotient_by_congruence(&z)
            .expect("the center is normal");
        let bad = l
            .elements()
            .find(|&x| 3 % q.element_order(proj.image(x)) != 0);
        let note = format!("|L/Z| = {}, exponent {}", q.order(), q.exponent());
        match bad {
            Some(x) => fail(name, l.order() as u64, vec![x], note),
            None => pass(name, l.order() as u64, note),
        }
    }));
    reports.push(timed!({
        let name = "lemma2-0.mult-group-quotient-3-group";
        let r = center(&mg, cfg.enumeration_limit)
            .and_then(|z| quotient_is_p_group_check(&mg, &z, 3, cfg.enumeration_limit));
        settle(name, r)
    }));
    reports.push(timed!(associator_hom_suite(&cml, &gens)));
    reports.push(timed!(settle(
        "lemma3.remak-embedding",
        remak_check(&cml, &gens)
    )));
    reports.push(timed!(inner_mappings_are_automorphisms_check(&cml)));
    reports.push(if opts.rank {
        timed!(settle(
            "lemma4.maximal-subloops-normal",
            maximal_subloops_check(&cml)
        ))
    } else {
        CheckReport::skipped("lemma4.maximal-subloops-normal", "requires --rank")
    });
    reports.push(timed!(order3_normal_central_check(&cml)));
    reports.push(timed!({
        let name = "lemma5.center-nontrivial";
        let z = loop_center(&cml);
        let note = format!("|Z(L)| = {}", z.order());
        if l.order() == 1 || z.order() > 1 {
            pass(name, 1, note)
        } else {
            fail(name, 1, vec![l.identity()], note)
        }
    }));
    reports.push(timed!({
        let name = "lemma5-0.mult-group-center-nontrivial";
        match center(&mg, cfg.enumeration_limit) {
            Ok(z) => {
                let note = format!("|C(M)| = {}", z.order());
                if mg.is_trivial() || !z.is_trivial() {
                    pass(name, 1, note)
                } else {
                    fail(name, 1, vec![l.identity()], note)
                }
            }
            Err(e) => settle(name, Err(e)),
        }
    }));
    reports.push(if opts.rank {
        timed!(settle("rank.special-rank", special_rank_check(&cml)))
    } else {
        CheckReport::skipped("rank.special-rank", "requires --rank")
    });
    reports.push(timed!({
        let name = "theorem.omega-equivalence";
        let r = omega_report(&cml, &[], opts.rank, cfg).map(|o| {
            let note = format!(
                "d = {}, rank {}, statements {:?}",
                o.min_generators,
                o.special_rank
                    .map_or("not computed".to_string(), |r| r.to_string()),
                o.statements
            );
            if o.equivalent && o.statements.iter().all(|&s| s) {
                pass(name, 4, note)
            } else {
                fail(name, 4, o.generators.clone(), note)
            }
        });
        settle(name, r)
    }));

    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

/// Centralizers of every pair of generators and of the whole generating set
/// are subloops.
fn centralizer_subloop_check(l: &Cml, gens: &[usize]) -> CheckReport {
    let name = "def.centralizer-subloop";
    let whole = Subloop::whole(l);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            sets.push(vec![a, b]);
        }
    }
    sets.push(gens.to_vec());
    let mut orders = Vec::new();
    for m in &sets {
        match centralizer(l, &whole, m) {
            Ok(c) => orders.push(c.order()),
            Err(e) => return settle(name, Err(e)),
        }
    }
    pass(
        name,
        sets.len() as u64,
        format!("centralizer orders {orders:?}"),
    )
}

fn associator_hom_suite(l: &Cml, gens: &[usize]) -> CheckReport {
    let name = "lemma3.associator-homomorphism";
    let mut checked = 0;
    let mut notes = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            match associator_hom_check(l, a, b) {
                Ok(r) if r.passed() => {
                    checked += r.checked;
                    notes.push(format!("({a},{b}): {}", r.note.unwrap_or_default()));
                }
                other => return settle(name, other),
            }
        }
    }
    pass(name, checked, notes.join("; "))
}

fn maximal_subloops_check(l: &Cml) -> Result<CheckReport> {
    let name = "lemma4.maximal-subloops-normal";
    let maximal = maximal_subloops(l)?;
    let three_loop = is_power_of(l.order(), 3);
    if three_loop {
        if let Some(m) = maximal.iter().find(|m| m.order() * 3 != l.order()) {
            return Ok(fail(
                name,
                maximal.len() as u64,
                m.members().to_vec(),
                "maximal subloop of index other than 3".into(),
            ));
        }
    }
    Ok(pass(
        name,
        maximal.len() as u64,
        format!("{} maximal subloops, all normal", maximal.len()),
    ))
}

fn special_rank_check(l: &Cml) -> Result<CheckReport> {
    let name = "rank.special-rank";
    let r = special_rank(l)?;
    let generated = generate(l, &r.witness_generators);
    let note = format!(
        "special rank {} over {} subloops, witness of order {}",
        r.special_rank,
        r.subloop_count,
        r.witness_subloop.order()
    );
    Ok(if generated == r.witness_subloop {
        pass(name, r.subloop_count as u64, note)
    } else {
        fail(
            name,
            r.subloop_count as u64,
            r.witness_generators.clone(),
            note,
        )
    })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Process exit status for a finished suite: 1 on any failure, 3 when a
/// check was skipped for budget reasons, else 0.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(CheckReport::failed) {
        1
    } else if reports
        .iter()
        .any(|r| matches!(&r.status, Status::Skipped(reason) if reason.starts_with(BUDGET_PREFIX)))
    {
        3
    } else {
        0
    }
}

/// One JSON object per line, in suite order.
pub fn to_json_lines(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports serialize") + "\n")
        .collect()
}

/// Summary printed by `moufang analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub identity: usize,
    pub commutative: bool,
    pub associative: bool,
    pub cml: bool,
    pub exponent: u64,
    pub center_order: Option<usize>,
    pub central_series_orders: Option<Vec<usize>>,
    pub nilpotency_class: Option<usize>,
    pub quotient_by_center: Option<(usize, u64)>,
    pub min_generators: Option<usize>,
    pub special_rank: Option<usize>,
    pub subloop_count: Option<usize>,
    pub mult_group_order: String,
    pub inner_mapping_group_order: String,
    pub mult_group_is_3_group: bool,
}

pub fn analyze(l: &FiniteLoop, with_rank: bool) -> Result<AnalysisReport> {
    let cml = Cml::certify(l.clone()).ok();
    let mg = multiplication_group(l);
    let inner = inner_mapping_group(l);
    let mut report = AnalysisReport {
        order: l.order(),
        identity: l.identity(),
        commutative: l.is_commutative().passed(),
        associative: l.is_associative().passed(),
        cml: cml.is_some(),
        exponent: l.exponent(),
        center_order: None,
        central_series_orders: None,
        nilpotency_class: None,
        quotient_by_center: None,
        min_generators: None,
        special_rank: None,
        subloop_count: None,
        mult_group_order: mg.order().to_string(),
        inner_mapping_group_order: inner.order().to_string(),
        mult_group_is_3_group: is_p_group(&mg, 3),
    };
    let Some(cml) = cml else { return Ok(report) };
    report.center_order = Some(loop_center(&cml).order());
    let series = upper_central_series_loop(&cml);
    report.central_series_orders = Some(series.chain.iter().map(Subloop::order).collect());
    report.nilpotency_class = nilpotency_class_loop(&cml).ok();
    let (q, exp) = quotient_by_center(&cml);
    report.quotient_by_center = Some((q.order(), exp));
    report.min_generators = Some(min_generators(l, &Subloop::whole(l)).count);
    if with_rank {
        let r = special_rank(l)?;
        report.special_rank = Some(r.special_rank);
        report.subloop_count = Some(r.subloop_count);
    }
    Ok(report)
}
