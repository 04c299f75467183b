//! The proof pipelines: each step is a certificate, and a report passes
//! only if every step does.

use std::time::Instant;

use serde_json::json;

use crate::affine::grid::{
    collinear_triple_check, ll_ur_balance_check, parallel_distribution_check, propagate_parallelogram_rule,
    triangle_side_check,
};
use crate::affine::{ag2, bruck_ryser};
use crate::case2222::case2222_certificate;
use crate::designs::{LineId, Net};
use crate::gf2::Gf2Matrix;
use crate::mols_search::{officers_oracle, OracleOptions, SearchError};
use crate::netcode::{
    build_code, class_dependencies, class_gram, dimension_if_only_class_relations, lemma_bound,
    predicted_class_gram,
};
use crate::parallax::{
    enumeration_certificate, exclusion_certificate_with, formula_replay_certificate, standard_base, BaseWeight,
    Parallax,
};
use crate::report::{Certificate, ProofReport};

pub const DEFAULT_SEED: u64 = 36;

/// Deliberate defects for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 2 to the base term of the weight formula.
    WeightFormula,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random line sets per net in the formula replay.
    pub samples: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: 1000,
            fault: None,
        }
    }
}

fn corrupted_base(n: usize, p: &Parallax) -> i64 {
    standard_base(n, p) + 2
}

fn base_for(opts: &VerifyOptions) -> BaseWeight {
    match opts.fault {
        Some(Fault::WeightFormula) => corrupted_base,
        None => standard_base,
    }
}

/// Four classes of AG(2, q).
fn small_net(q: u32) -> Net {
    ag2(q)
        .expect("supported order")
        .to_net(&[0, 1, 2, 3])
        .expect("classes of a plane form a net")
}

fn lemma_step() -> Certificate {
    let gram = predicted_class_gram(6, 4);
    let j_minus_i = Gf2Matrix::parse_rows(&["0111", "1011", "1101", "1110"]).expect("literal");
    let bound = lemma_bound(6, 4);
    let mut cert = Certificate::new("officers.1-lemma", "a (6,4) net has dim C ≤ 20").inputs(&(6, 4));
    cert.check("Gram matrix of one line per class is J − I", gram == j_minus_i);
    cert.check(format!("it has rank {} over GF(2)", gram.rank()), gram.rank() == 4);
    cert.check(
        "so C = span(λ1..λ4) ⊥ H and dim C − 4 = dim H ≤ dim C⊥ = 36 − dim C",
        lemma_bound(6, 4).is_ok(),
    );
    cert.check(
        format!("dim C ≤ (36 + 4)/2 = {}", bound.as_ref().map_or(0, |b| *b)),
        bound == Ok(20),
    );
    // the same decomposition on a real net of even order
    let net = small_net(4);
    let code = build_code(&net);
    let reps: Vec<LineId> = (0..4).map(|c| LineId::new(c, 0)).collect();
    let real_gram = class_gram(&net, &reps).expect("one line per class");
    cert.check("order-4 net: Gram matrix of representatives is J − I", real_gram == j_minus_i);
    cert.check(
        format!(
            "order-4 net: dim C = {} = dim H + 4 = {} + 4, and ≤ {}",
            code.code_dim(),
            code.hull_dim(),
            lemma_bound(4, 4).unwrap_or(0)
        ),
        code.code_dim() == code.hull_dim() + 4 && code.code_dim() <= 10,
    );
    cert.payload(json!({"bound": 20, "order4": code.report()}))
}

fn dependency_step() -> Certificate {
    let only_classes = dimension_if_only_class_relations(6, 4);
    let mut cert = Certificate::new(
        "officers.2-extra-dependency",
        "a (6,4) net needs a dependency beyond the class relations",
    )
    .inputs(&(6, 4));
    cert.check(
        format!("24 generators with only the 3 class relations give dim C = {only_classes}"),
        only_classes == 21,
    );
    cert.check(format!("{only_classes} > 20 contradicts the bound"), only_classes > 20);
    cert.check(
        "so some line set Λ, not a union of whole classes, has c(Λ) = 0",
        only_classes > lemma_bound(6, 4).unwrap_or(usize::MAX),
    );
    let net = small_net(4);
    let deps = class_dependencies(&net);
    let code = build_code(&net);
    let combine_ok = deps
        .iter()
        .all(|d| code.generators().combine(d).map(|v| v.is_zero()).unwrap_or(false));
    cert.check(
        format!("order-4 net: {} class relations, each combining the lines to 0", deps.len()),
        deps.len() == 3 && combine_ok,
    );
    cert.payload(json!({"dim_if_only_class_relations": only_classes, "bound": 20}))
}

fn exclusion_step(opts: &VerifyOptions) -> Certificate {
    let base = base_for(opts);
    let mut cert = Certificate::new(
        "officers.4-exclusions",
        "parallaxes 2226, 3330 and 3332 admit no dependency",
    );
    for s in ["2226", "3330", "3332"] {
        let p = Parallax::parse(s).expect("literal");
        cert.child(exclusion_certificate_with(&p, base).expect("excludable parallax"));
    }
    let nets = [small_net(3), small_net(4), small_net(5)];
    cert.child(formula_replay_certificate(&nets, base, opts.samples, opts.seed));
    cert
}

fn timed(command: &str, steps: impl FnOnce() -> Vec<Certificate>) -> ProofReport {
    let start = Instant::now();
    let steps = steps();
    let mut report = ProofReport::new(command, steps);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    report
}

pub fn officers_steps(opts: &VerifyOptions) -> Vec<Certificate> {
    let enumerate = Certificate::new("officers.3-parallaxes", "a dependency has parallax 2222, 2226, 3330 or 3332")
        .with_child(enumeration_certificate());
    let last = Certificate::new("officers.5-case2222", "parallax 2222 leads to an uncompletable square")
        .with_child(case2222_certificate());
    vec![
        lemma_step(),
        dependency_step(),
        enumerate,
        exclusion_step(opts),
        last,
    ]
}

/// No (6,4) net exists, so there is no pair of orthogonal Latin squares of
/// order 6.
pub fn verify_officers(opts: &VerifyOptions) -> ProofReport {
    timed("verify officers", || officers_steps(opts))
}

fn net_implication_step() -> Certificate {
    let mut cert = Certificate::new(
        "affine.net-implication",
        "four parallel classes of an affine plane form a net, so order 6 needs a (6,4) net",
    );
    for q in [3u32, 4, 5] {
        let plane = ag2(q).expect("supported order");
        let k = plane.num_classes();
        let mut subsets = 0;
        let mut nets = 0;
        for mask in 0u32..1 << k {
            if mask.count_ones() != 4 {
                continue;
            }
            subsets += 1;
            let classes: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            if plane.to_net(&classes).is_ok_and(|n| n.num_classes() == 4) {
                nets += 1;
            }
        }
        cert.check(
            format!("AG(2,{q}): {nets} of the {subsets} choices of 4 classes form a ({q},4) net"),
            nets == subsets,
        );
    }
    cert.note("a (6,4) net is what verify officers rules out");
    cert
}

fn bruck_ryser_step() -> Certificate {
    let br = bruck_ryser(6);
    let mut cert = Certificate::new("affine.bruck-ryser", "the Bruck-Ryser test also excludes order 6")
        .informational()
        .payload(json!(br));
    cert.check(
        format!("6 ≡ {} (mod 4) and is not a sum of two squares", br.residue_mod_4),
        br.excluded,
    );
    cert.note("Gleason's theorem (Fano configurations force Desarguesian planes) is not computed here.");
    cert
}

pub fn affine_steps() -> Vec<Certificate> {
    vec![
        ll_ur_balance_check(),
        parallel_distribution_check(),
        collinear_triple_check(),
        triangle_side_check(),
        propagate_parallelogram_rule(),
        net_implication_step(),
        bruck_ryser_step(),
    ]
}

/// No affine plane of order 6 exists.
pub fn verify_affine() -> ProofReport {
    timed("verify affine", affine_steps)
}

/// Exhaustive mate search over reduced squares of one order.
pub fn oracle_certificate(order: usize, opts: &OracleOptions<'_>) -> Result<(Certificate, u64), SearchError> {
    let summary = officers_oracle(order, opts)?;
    let mut cert = Certificate::new(
        format!("oracle.order-{order}"),
        format!("exhaustive orthogonal-mate search over reduced squares of order {order}"),
    )
    .inputs(&order);
    cert.check(
        format!(
            "{} of {} mates pass the orthogonality check",
            summary.mates_verified, summary.mates_found
        ),
        summary.mates_verified == summary.mates_found,
    );
    if order == 6 {
        cert.check(
            format!("{} reduced squares", summary.reduced_count),
            summary.reduced_count == 9408,
        );
        cert.check(format!("{} mates found", summary.mates_found), summary.mates_found == 0);
    } else {
        cert.note(format!(
            "{} of {} reduced squares have a mate",
            summary.mates_found, summary.reduced_count
        ));
    }
    if let Some(m) = summary.sample_mates.first() {
        let render = |s: &crate::designs::LatinSquare| {
            s.rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n")
        };
        cert.note(format!("square #{}:\n{}\nmate:\n{}", m.index, render(&m.square), render(&m.mate)));
    }
    let elapsed = summary.elapsed_ms;
    let payload = json!({
        "order": summary.order,
        "reduced_count": summary.reduced_count,
        "mates_found": summary.mates_found,
        "mates_verified": summary.mates_verified,
        "without_transversal": summary.without_transversal,
        "with_uncovered_cell": summary.with_uncovered_cell,
        "tasks": summary.tasks,
        "sample_mates": summary.sample_mates,
    });
    Ok((cert.payload(payload), elapsed))
}

pub fn run_oracle(order: usize, opts: &OracleOptions<'_>) -> Result<ProofReport, SearchError> {
    let (cert, elapsed) = oracle_certificate(order, opts)?;
    let mut report = ProofReport::new(format!("oracle --order {order}"), vec![cert]);
    report.elapsed_ms = Some(elapsed);
    Ok(report)
}

/// Both proofs and the order-6 search.
pub fn verify_all(opts: &VerifyOptions, oracle: &OracleOptions<'_>) -> ProofReport {
    let start = Instant::now();
    let group = |id: &str, claim: &str, steps: Vec<Certificate>| {
        steps
            .into_iter()
            .fold(Certificate::new(id, claim), |c, s| c.with_child(s))
    };
    let officers = group("officers", "there is no (6,4) net", officers_steps(opts));
    let affine = group("affine", "there is no affine plane of order 6", affine_steps());
    let (search, _) = oracle_certificate(6, oracle).expect("order 6 is supported");
    let mut report = ProofReport::new("verify all", vec![officers, affine, search]);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    report
}
