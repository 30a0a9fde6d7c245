//! Subcommand implementations. Each returns a [`Report`]; all printing
//! happens in `main`.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::json;

use polyu::forms::{
    congruence_classes, format_vec, good_partition, pme_check, pme_conclusion_check, prec_check,
    rep_count, represented_set, siegel_identity_check, transformation_set,
};
use polyu::tables;
use polyu::verify::VerifyOptions;
use polyu::{
    catalogue_through, escalate, exceptional_set, full_catalogue, truant, witness, Catalogue,
    EscalationNode, Form, Matrix, MixedSum, Vector,
};

use crate::config::RunConfig;
use crate::output::Report;
use crate::{Command, FormsCommand};

type Res<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_sum(s: &str) -> Res<MixedSum> {
    s.parse().map_err(err)
}

fn parse_form(s: &str) -> Res<Form> {
    s.parse().map_err(err)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn vec_list(vs: &[Vector]) -> String {
    join(vs.iter().map(format_vec), " ")
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Res<Report> {
    match cmd {
        Command::Check { sum, n } => check(&parse_sum(sum)?, *n),
        Command::Truant { sum } => truant_cmd(&parse_sum(sum)?, cfg.bound, false),
        Command::Universal { sum } => truant_cmd(&parse_sum(sum)?, cfg.bound, true),
        Command::Exceptional { sum } => exceptional(&parse_sum(sum)?, cfg.bound),
        Command::Escalate { arity } => escalate_cmd(*arity as usize, cfg.bound),
        Command::Catalogue { arity, out_dir } => {
            catalogue(arity.map(|a| a as usize), out_dir.as_deref(), cfg.bound)
        }
        Command::Forms(f) => forms(f, cfg),
        Command::VerifyTables {
            tables,
            siegel_bound,
        } => verify_tables(tables, *siegel_bound, cfg.bound),
    }
}

fn check(phi: &MixedSum, n: u64) -> Res<Report> {
    let w = witness(phi, n);
    let text = match &w {
        Some(w) => format!("represented {w}"),
        None => "not represented".to_string(),
    };
    let js = json!({ "sum": phi.notation(), "n": n, "represented": w.is_some(), "witness": w });
    let row = vec![
        phi.notation(),
        n.to_string(),
        w.is_some().to_string(),
        w.as_ref().map(|w| join(&w.squares, ",")).unwrap_or_default(),
        w.as_ref().map(|w| join(&w.octagonals, ",")).unwrap_or_default(),
    ];
    let ok = w.is_some();
    Ok(Report::new(text, js, vec!["sum", "n", "represented", "x", "y"], vec![row]).with_status(ok))
}

fn truant_cmd(phi: &MixedSum, bound: u64, require_universal: bool) -> Res<Report> {
    let r = truant(phi, bound).map_err(err)?;
    let text = match (r.truant, require_universal) {
        (Some(t), false) => format!("truant {t}"),
        (Some(t), true) => format!("not universal (truant {t})"),
        (None, _) => format!("universal (criterion passed, no truant up to {bound})"),
    };
    let js = json!({ "sum": phi.notation(), "report": r });
    let row = vec![
        phi.notation(),
        r.verdict.to_string(),
        r.truant.map(|t| t.to_string()).unwrap_or_default(),
        r.searched_bound.to_string(),
        r.criterion_passed.to_string(),
    ];
    let ok = !require_universal || r.is_universal();
    Ok(Report::new(
        text,
        js,
        vec!["sum", "verdict", "truant", "searched_bound", "criterion_passed"],
        vec![row],
    )
    .with_status(ok))
}

fn exceptional(phi: &MixedSum, bound: u64) -> Res<Report> {
    let e = exceptional_set(phi, bound);
    let text = if e.is_empty() {
        format!("none up to {bound}")
    } else {
        join(&e, " ")
    };
    let js = json!({ "sum": phi.notation(), "bound": bound, "exceptional": e });
    let rows = e.iter().map(|n| vec![n.to_string()]).collect();
    Ok(Report::new(text, js, vec!["n"], rows))
}

fn escalate_cmd(arity: usize, bound: u64) -> Res<Report> {
    let parents = if arity == 1 {
        vec![EscalationNode::root()]
    } else {
        let cat = catalogue_through(arity - 1, bound).map_err(err)?;
        match cat.run(arity - 1) {
            Some(run) => run.non_universal_nodes(),
            None => Vec::new(),
        }
    };
    let cands = if parents.is_empty() {
        Vec::new()
    } else {
        escalate(&parents).map_err(err)?
    };
    let mut text = String::new();
    for c in &cands {
        text.push_str(&format!("{} <- {}\n", c.sum, c.parent));
    }
    text.push_str(&format!("{} candidates of arity {arity}", cands.len()));
    let rows: Vec<Vec<String>> = cands
        .iter()
        .map(|c| vec![c.sum.notation(), c.parent.notation()])
        .collect();
    let js = json!({
        "arity": arity,
        "count": cands.len(),
        "candidates": cands.iter().map(|c| json!({"sum": c.sum.notation(), "parent": c.parent.notation()})).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, js, vec!["notation", "parent"], rows))
}

fn write_runs(cat: &Catalogue, dir: &Path) -> Res<()> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    for run in &cat.runs {
        let base = dir.join(format!("arity-{}", run.arity));
        let csv = run.to_csv().map_err(err)?;
        std::fs::write(base.with_extension("csv"), csv).map_err(err)?;
        std::fs::write(base.with_extension("json"), run.to_json() + "\n").map_err(err)?;
    }
    Ok(())
}

fn catalogue(arity: Option<usize>, out_dir: Option<&Path>, bound: u64) -> Res<Report> {
    let cat = match arity {
        Some(k) => catalogue_through(k, bound),
        None => full_catalogue(bound),
    }
    .map_err(err)?;
    if let Some(dir) = out_dir {
        write_runs(&cat, dir)?;
    }
    let published = tables::counts().map_err(err)?;
    let mut mismatches = Vec::new();
    let arities: Vec<usize> = match arity {
        Some(k) => vec![k],
        None => cat.runs.iter().map(|r| r.arity).collect(),
    };
    let mut counts = BTreeMap::new();
    for &k in &arities {
        let got = cat.run(k).map_or(0, |r| r.proper_universal.len());
        counts.insert(k.to_string(), got);
        let want = published.proper_at(k).unwrap_or(0);
        if got != want {
            mismatches.push(format!("arity {k}: expected {want} proper universal sums, got {got}"));
        }
    }
    if arity.is_none() && cat.total_proper() != published.total_proper_universal {
        mismatches.push(format!(
            "total: expected {}, got {}",
            published.total_proper_universal,
            cat.total_proper()
        ));
    }
    for m in &mismatches {
        eprintln!("mismatch: {m}");
    }

    let (text, sums): (String, Vec<MixedSum>) = match arity {
        Some(k) => {
            let sums: Vec<MixedSum> = cat
                .run(k)
                .map(|r| r.proper_universal.iter().cloned().collect())
                .unwrap_or_default();
            let mut text = join(sums.iter().map(MixedSum::notation), "\n");
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(&format!("{k}:{}", sums.len()));
            (text, sums)
        }
        None => {
            let sums = cat
                .runs
                .iter()
                .flat_map(|r| r.proper_universal.iter().cloned())
                .collect();
            (cat.summary_line(), sums)
        }
    };
    let rows = sums
        .iter()
        .map(|s| vec![s.notation(), s.arity().to_string()])
        .collect();
    let js = json!({
        "bound": bound,
        "counts": counts,
        "total": arity.is_none().then(|| cat.total_proper()),
        "summary": cat.summary_line(),
        "proper_universal": sums.iter().map(MixedSum::notation).collect::<Vec<_>>(),
        "mismatches": mismatches,
    });
    Ok(Report::new(text, js, vec!["notation", "arity"], rows).with_status(mismatches.is_empty()))
}

fn forms(cmd: &FormsCommand, cfg: &RunConfig) -> Res<Report> {
    match cmd {
        FormsCommand::Count { form, n } => {
            let f = parse_form(form)?;
            let c = rep_count(*n, &f);
            Ok(Report::new(
                c.to_string(),
                json!({"form": f.to_string(), "n": n, "count": c}),
                vec!["form", "n", "count"],
                vec![vec![f.to_string(), n.to_string(), c.to_string()]],
            ))
        }
        FormsCommand::Represented { form, complement } => {
            let f = parse_form(form)?;
            let rep = represented_set(&f, cfg.bound);
            let values: Vec<u64> = if *complement {
                let mut it = rep.iter().peekable();
                (1..=cfg.bound)
                    .filter(|n| {
                        while it.peek().is_some_and(|&&r| r < *n) {
                            it.next();
                        }
                        it.peek() != Some(&n)
                    })
                    .collect()
            } else {
                rep
            };
            let key = if *complement { "missing" } else { "represented" };
            Ok(Report::new(
                join(&values, " "),
                json!({"form": f.to_string(), "bound": cfg.bound, key: values}),
                vec!["n"],
                values.iter().map(|n| vec![n.to_string()]).collect(),
            ))
        }
        FormsCommand::Classes { g, d, a } => {
            let g = parse_form(g)?;
            let vs = congruence_classes(&g, *d, *a).map_err(err)?;
            Ok(Report::new(
                vec_list(&vs),
                json!({"g": g.to_string(), "d": d, "a": a, "classes": vs}),
                vec!["x", "y", "z"],
                vs.iter().map(|v| v.iter().map(i64::to_string).collect()).collect(),
            ))
        }
        FormsCommand::Transforms { f, g, d } => {
            let (f, g) = (parse_form(f)?, parse_form(g)?);
            let ts = transformation_set(&f, &g, *d).map_err(err)?;
            let names: Vec<String> = ts.iter().map(Matrix::to_string).collect();
            Ok(Report::new(
                format!("{}\n{} transformations", names.join("\n"), ts.len()),
                json!({"f": f.to_string(), "g": g.to_string(), "d": d, "transformations": names}),
                vec!["matrix"],
                names.iter().map(|m| vec![m.clone()]).collect(),
            ))
        }
        FormsCommand::Bad { f, g, d, a } => {
            let (f, g) = (parse_form(f)?, parse_form(g)?);
            let cert = good_partition(&f, &g, *d, *a).map_err(err)?;
            let text = format!(
                "residues {} good {} bad {}: {}{}",
                cert.residues.len(),
                cert.good.len(),
                cert.bad.len(),
                if cert.bad.is_empty() { "empty" } else { "" },
                vec_list(&cert.bad),
            );
            let js: serde_json::Value = serde_json::from_str(&cert.to_json()).map_err(err)?;
            Ok(Report::new(
                text,
                js,
                vec!["x", "y", "z"],
                cert.bad.iter().map(|v| v.iter().map(i64::to_string).collect()).collect(),
            ))
        }
        FormsCommand::Pme {
            f,
            g,
            d,
            a,
            t,
            conclusion_bound,
        } => {
            let (f, g) = (parse_form(f)?, parse_form(g)?);
            let t: Matrix = t.parse().map_err(err)?;
            let report = pme_check(&f, &g, *d, *a, &t).map_err(err)?;
            let mut ok = report.verdict();
            let mut text = format!(
                "(i) infinite order: {}\n(ii) preserves g: {}\n(iii) transports every bad vector: {}\nbad: {}\neigenvectors: {}",
                report.infinite_order,
                report.preserves_g,
                report.untransported.is_empty(),
                vec_list(&report.bad),
                vec_list(&report.eigenvectors),
            );
            if report.has_flagged_eigenspace() {
                text.push_str("\nwarning: an eigenspace of dimension above 1 was not enumerated");
            }
            let conclusion = match conclusion_bound {
                Some(b) if ok => {
                    let c = pme_conclusion_check(&f, &g, *d, *a, &t, *b).map_err(err)?;
                    text.push_str(&format!(
                        "\nconclusion up to {b}: {}",
                        match c.counterexample {
                            None => "holds".to_string(),
                            Some(n) => format!("fails at {n}"),
                        }
                    ));
                    ok &= c.holds();
                    Some(c)
                }
                _ => None,
            };
            text.push_str(&format!("\nverdict: {}", if ok { "pass" } else { "fail" }));
            let rows = vec![vec![
                report.infinite_order.to_string(),
                report.preserves_g.to_string(),
                report.untransported.is_empty().to_string(),
                vec_list(&report.eigenvectors),
            ]];
            Ok(Report::new(
                text,
                json!({"report": report, "conclusion": conclusion, "verdict": ok}),
                vec!["infinite_order", "preserves_g", "transports_bad", "eigenvectors"],
                rows,
            )
            .with_status(ok))
        }
        FormsCommand::Prec {
            f,
            g,
            d,
            a,
            spot_bound,
        } => {
            let (f, g) = (parse_form(f)?, parse_form(g)?);
            let out = prec_check(&f, &g, *d, *a, *spot_bound).map_err(err)?;
            let text = if out.related {
                match out.counterexample {
                    None => format!("g precedes f; inclusion holds up to {spot_bound}"),
                    Some(n) => format!("g precedes f but {n} is missed by f"),
                }
            } else {
                format!("g does not precede f; bad: {}", vec_list(&out.bad))
            };
            let row = vec![
                out.related.to_string(),
                out.bad.len().to_string(),
                out.counterexample.map(|n| n.to_string()).unwrap_or_default(),
            ];
            Ok(Report::new(
                text,
                json!(out),
                vec!["related", "bad", "counterexample"],
                vec![row],
            )
            .with_status(out.holds()))
        }
        FormsCommand::Siegel { limit } => {
            let out = siegel_identity_check(*limit);
            let text = match &out.first_failure {
                None => format!("identity holds for {} values up to {limit}", out.checked),
                Some(f) => format!("identity fails at n={}: {} != {}", f.n, f.lhs, f.rhs),
            };
            let row = vec![
                out.bound.to_string(),
                out.checked.to_string(),
                out.holds().to_string(),
            ];
            let ok = out.holds();
            Ok(Report::new(text, json!(out), vec!["bound", "checked", "holds"], vec![row]).with_status(ok))
        }
    }
}

fn verify_tables(ids: &[String], siegel_bound: u64, bound: u64) -> Res<Report> {
    let opts = VerifyOptions {
        bound,
        siegel_bound,
        tables: ids.to_vec(),
    };
    let report = polyu::verify_tables(opts).map_err(err)?;
    let failed = report.failures().count();
    let mut text = join(report.checks.iter(), "\n");
    text.push_str(&format!("\n{} checks, {failed} failed", report.checks.len()));
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.table.clone(),
                c.row.clone(),
                c.check.clone(),
                c.passed.to_string(),
                c.expected.clone(),
                c.actual.clone(),
            ]
        })
        .collect();
    let ok = report.passed();
    Ok(Report::new(
        text,
        json!(report),
        vec!["table", "row", "check", "passed", "expected", "actual"],
        rows,
    )
    .with_status(ok))
}
