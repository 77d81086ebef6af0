//! Command dispatch: build a report for one command of a specification
//! document. Every error path still produces a report entry; exit codes are
//! 0 success, 1 verdict failure, 2 input error, 3 budget or precision
//! exhaustion.

use std::time::Instant;

use crate::clifford;
use crate::cubic_jordan::{self, Provenance};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::homogeneity::{self, Homogeneity};
use crate::linalg;
use crate::literal;
use crate::quadforms;
use crate::report::{EntryClass, Report};
use crate::rng::subseed;
use crate::specdoc::{canonical_text, SpecDocument};
use crate::valuation;

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded(_)
        | Error::PrecisionExhausted(_)
        | Error::PrecisionTooSmall(_) => 3,
        _ => 2,
    }
}

/// Run every command of the document; the report is shared so the digest
/// covers the full run.
pub fn run_document(doc: &SpecDocument) -> (Report, i32) {
    let canon = canonical_text(doc);
    let mut report = Report::new(&canon);
    report.info("seed", doc.seed);
    let mut exit = 0i32;
    for command in &doc.commands {
        let started = Instant::now();
        match run_command(doc, command, &mut report) {
            Ok(()) => {}
            Err(e) => {
                report.put(format!("{command}.error"), &e, EntryClass::Failed);
                exit = exit.max(exit_code_for(&e));
            }
        }
        report.timing(command.clone(), started.elapsed().as_millis());
    }
    if exit == 0 && !report.all_ok() {
        exit = 1;
    }
    (report, exit)
}

fn run_command(doc: &SpecDocument, command: &str, report: &mut Report) -> Result<()> {
    let field = Field::parse(&doc.field)?;
    match command {
        "build" => {
            let j = build_algebra(doc, &field)?;
            report.info("build.dim", j.dim());
            report.info("build.provenance", j.provenance().label());
            report.check("build.unit_ok", j.validate(4).is_ok());
        }
        "verify" => {
            let j = build_algebra(doc, &field)?;
            report.info("verify.dim", j.dim());
            let samples = doc.budget_samples;
            report.check("verify.axioms", j.validate(samples).is_ok());
            let mut rng = subseed(doc.seed, "cli-verify-fundamental");
            report.check(
                "verify.fundamental_formula",
                j.check_fundamental_formula(20, &mut rng).is_ok(),
            );
            // the V-operator identity U_x V_{y,x} = V_{x,y} U_x, with
            // V_{x,y} z = (U_{x+z} - U_x - U_z) y
            let mut rng = subseed(doc.seed, "cli-verify-voperator");
            report.check("verify.v_identity", check_v_identity(&j, 10, &mut rng)?);
        }
        "invariants" => {
            let j = build_algebra(doc, &field)?;
            let rec = homogeneity::invariants_of(&j)?;
            report.info("invariants.r", rec.r);
            report.info("invariants.f_r", rec.f_r.describe());
            report.info("invariants.f_r2_dim", rec.f_r2.dim());
            report.info("invariants.f_r2", rec.f_r2.describe());
            report.info("invariants.q_j", rec.q_j.describe());
            report.info(
                "invariants.gamma_class",
                format!(
                    "({}, {}, {})",
                    field.format(&rec.gamma_class[0]),
                    field.format(&rec.gamma_class[1]),
                    field.format(&rec.gamma_class[2])
                ),
            );
        }
        "homogeneity" => {
            let j = build_algebra(doc, &field)?;
            if matches!(j.provenance(), Provenance::Her3 { .. }) {
                let v = homogeneity::homogeneous_reduced(&j, doc.budget_enumeration)?;
                report.put(
                    "homogeneity.verdict",
                    format!("{:?}", v.value),
                    if v.value == Homogeneity::Unknown {
                        EntryClass::Info
                    } else {
                        EntryClass::Ok
                    },
                );
                report.info("homogeneity.rationale", &v.rationale);
                for (label, fv) in v.certificates.iter().take(24) {
                    report.certificate(format!("{label}: {:?} ({})", fv.value, fv.evidence));
                }
            }
            let (sv, why) = homogeneity::strictly_homogeneous_classify(&j)?;
            report.info("homogeneity.strict", format!("{sv:?}"));
            report.info("homogeneity.strict_rationale", why);
        }
        "cascade" => {
            let rep = homogeneity::homogeneity_cascade(&field, doc.budget_enumeration)?;
            report.info("cascade.field", &rep.field);
            report.check("cascade.consistent", rep.consistent);
            for entry in &rep.entries {
                report.info(
                    format!("cascade.{}", entry.key),
                    format!("{:?}", entry.verdict.value),
                );
                report.certificate(format!("{}: {}", entry.key, entry.verdict.rationale));
            }
        }
        "clifford" => {
            let q_text = doc
                .form
                .as_ref()
                .ok_or_else(|| Error::parse("clifford needs `q = <form>`"))?;
            let q = literal::parse_form(&field, q_text)?;
            let e_text = doc
                .base_point
                .as_ref()
                .ok_or_else(|| Error::parse("clifford needs `e = <vector>`"))?;
            let e = literal::parse_vector(&field, e_text, q.dim())?;
            let rep = clifford::roundness_theorem_check(&q, &e, doc.budget_enumeration)?;
            report.info(
                "clifford.d_set",
                rep.d_set.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(","),
            );
            report.info(
                "clifford.g_set",
                rep.g_set.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(","),
            );
            report.info("clifford.round", rep.round);
            report.info("clifford.regular", rep.regular);
            report.info("clifford.homogeneous", format!("{:?}", rep.homogeneous));
            report.check("clifford.forward_ok", rep.forward_ok);
            if let Some(c) = rep.converse_ok {
                report.check("clifford.converse_ok", c);
            }
        }
        "valuation" => {
            let j = build_algebra(doc, &field)?;
            let mut rng = subseed(doc.seed, "cli-valuation");
            let rep = valuation::analyze(&j, 50, &mut rng)?;
            report.info("valuation.e", rep.e);
            report.info("valuation.f", rep.f);
            report.info("valuation.dim", rep.dim);
            report.check("valuation.fundeq_ok", rep.fundeq_ok);
            if let Some(l) = &rep.residue_label {
                report.info("valuation.residue_algebra", l);
            }
            match &rep.trichotomy.tag {
                Some(tag) => report.info("valuation.trichotomy", format!("{tag:?}")),
                None => report.info(
                    "valuation.trichotomy",
                    format!(
                        "rejected: {}",
                        rep.trichotomy.rejection.as_deref().unwrap_or("unknown")
                    ),
                ),
            }
            if let Some((kind, pi)) = &rep.trichotomy.presentation {
                report.info(
                    "valuation.presentation",
                    format!("J({kind}, {})", field.format(pi)),
                );
            }
            report.certificate(format!(
                "division sampling: {} nonzero samples with nonzero norm",
                rep.trichotomy.division_samples
            ));
            for (key, val) in [
                ("valuation.lamsha_ok", rep.lamsha_ok),
                ("valuation.u_composition_ok", rep.u_composition_ok),
                ("valuation.ultrametric_ok", rep.ultrametric_ok),
                ("valuation.unit_group_ok", rep.unit_group_ok),
            ] {
                match val {
                    Some(ok) => report.check(key, ok),
                    None => report.info(key, "not applicable (not a division algebra)"),
                }
            }
            // regularity / unramifiedness correspondence
            let mut rng = subseed(doc.seed, "cli-valuation-regularity");
            let reg = valuation::regularity_unramified_check(&j, 20, &mut rng)?;
            report.info(
                "valuation.gram_det_val",
                reg.gram_det_val.map(|v| v.to_string()).unwrap_or_else(|| "infinity".into()),
            );
            report.check("valuation.gram_matches_e", reg.equivalence_holds);
            report.check("valuation.nilpotence_ok", reg.nilpotence_ok);
        }
        other => return Err(Error::UnknownConstruction(other.to_string())),
    }
    Ok(())
}

fn build_algebra(doc: &SpecDocument, field: &Field) -> Result<cubic_jordan::CubicJordan> {
    let text = doc
        .construction
        .as_ref()
        .ok_or_else(|| Error::parse("document is missing `construction =`"))?;
    literal::parse_algebra(field, text)
}

/// U_x V_{y,x} = V_{x,y} U_x with V_{x,y} z := U_{x,z} y and
/// U_{x,z} := U_{x+z} - U_x - U_z.
fn check_v_identity(
    j: &cubic_jordan::CubicJordan,
    pairs: usize,
    rng: &mut rand_chacha::ChaCha20Rng,
) -> Result<bool> {
    let f = j.field().clone();
    let sample = |rng: &mut rand_chacha::ChaCha20Rng| {
        if f.laurent_precision().is_some() {
            j.random_lattice_vec(rng)
        } else {
            j.random_vec(rng)
        }
    };
    let u_bilin = |x: &[crate::fields::Scalar],
                   z: &[crate::fields::Scalar],
                   y: &[crate::fields::Scalar]|
     -> Result<Vec<crate::fields::Scalar>> {
        let xz = linalg::add_vec(&f, x, z)?;
        let a = j.u_apply(&xz, y)?;
        let b = j.u_apply(x, y)?;
        let c = j.u_apply(z, y)?;
        linalg::sub_vec(&f, &linalg::sub_vec(&f, &a, &b)?, &c)
    };
    for _ in 0..pairs {
        let x = sample(rng);
        let y = sample(rng);
        let z = sample(rng);
        // V_{y,x} z = U_{y,z} x
        let vyx_z = u_bilin(&y, &z, &x)?;
        let lhs = j.u_apply(&x, &vyx_z)?;
        // V_{x,y} (U_x z) = U_{x, U_x z} y
        let uxz = j.u_apply(&x, &z)?;
        let rhs = u_bilin(&x, &uxz, &y)?;
        if !cubic_jordan::eq_vec(&f, &lhs, &rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience used by the binary and tests: parse, run, render.
pub fn run_text(doc_text: &str, format_json: bool) -> (String, i32) {
    match crate::specdoc::parse_spec(doc_text) {
        Ok(doc) => {
            let (report, exit) = run_document(&doc);
            let rendered = if format_json { report.to_json() } else { report.to_text() };
            (rendered, exit)
        }
        Err(e) => {
            let mut report = Report::new(doc_text);
            report.put("parse.error", &e, EntryClass::Failed);
            let rendered = if format_json { report.to_json() } else { report.to_text() };
            (rendered, exit_code_for(&e))
        }
    }
}

/// Run the old-fashioned way: used by the quadratic-form CLI surface.
pub fn form_report(field_desc: &str, form_text: &str, budget: u64) -> Result<Report> {
    let field = Field::parse(field_desc)?;
    let q = literal::parse_form(&field, form_text)?;
    let mut report = Report::new(&format!("{field_desc}|{form_text}"));
    report.info("form.dim", q.dim());
    report.info("form.regular", q.is_regular()?);
    let iso = quadforms::isotropic(&q, budget)?;
    report.info("form.isotropic", format!("{:?}", iso.value));
    report.certificate(format!("isotropy: {}", iso.evidence));
    let hyp = quadforms::hyperbolic(&q, budget)?;
    report.info("form.hyperbolic", format!("{:?}", hyp.value));
    let uni = quadforms::universal(&q, budget)?;
    report.info("form.universal", format!("{:?}", uni.value));
    Ok(report)
}
