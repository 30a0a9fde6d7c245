//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use polyu::forms::{represented_set, siegel_identity_check};
use polyu::tables;
use polyu::verify::{Verifier, VerifyOptions};
use polyu::{
    criterion_universal, exceptional_set, full_catalogue, reduction_check, truant, Catalogue,
    Form, MixedSum,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn sum(s: &str) -> MixedSum {
    s.parse().expect("valid notation")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Independent oracle: does the sum represent every integer in `1..=61`
/// listed as critical? Computed by a subset-sum sweep over polygonal values.
fn oracle_critical(squares: &[u64], octagonals: &[u64]) -> bool {
    const LIMIT: usize = 61;
    let sq: Vec<usize> = (0..).map(|x: usize| x * x).take_while(|&v| v <= LIMIT).collect();
    let mut oct: Vec<usize> = Vec::new();
    for x in -10i64..=10 {
        let v = 3 * x * x - 2 * x;
        if v >= 0 && v as usize <= LIMIT {
            oct.push(v as usize);
        }
    }
    let mut reach = vec![false; LIMIT + 1];
    reach[0] = true;
    let terms = squares
        .iter()
        .map(|&c| (c as usize, &sq))
        .chain(octagonals.iter().map(|&c| (c as usize, &oct)));
    for (c, values) in terms {
        let mut next = vec![false; LIMIT + 1];
        for (n, &r) in reach.iter().enumerate() {
            if !r {
                continue;
            }
            for &v in values.iter() {
                if n + c * v <= LIMIT {
                    next[n + c * v] = true;
                }
            }
        }
        reach = next;
    }
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 15, 18, 20, 30, 60, 61]
        .iter()
        .all(|&n| reach[n])
}

fn criterion_1(cat: &Catalogue) -> Outcome {
    let counts: Vec<usize> = (3..=6)
        .map(|k| cat.run(k).map_or(0, |r| r.proper_universal.len()))
        .collect();
    ensure(counts == [6, 547, 707, 11], format!("proper counts {counts:?}"))?;
    ensure(cat.total_proper() == 1271, format!("total {}", cat.total_proper()))?;
    ensure(
        cat.runs.iter().all(|r| r.arity < 3 || r.arity > 6 || r.bound == 100_000),
        "bound",
    )?;
    Ok(cat.summary_line())
}

fn criterion_2(cat: &Catalogue) -> Outcome {
    let counts: Vec<usize> = (3..=5)
        .map(|k| cat.run(k).map_or(0, |r| r.candidates.len()))
        .collect();
    ensure(counts == [42, 564, 708], format!("candidate counts {counts:?}"))?;
    Ok(format!("candidates 3:{} 4:{} 5:{}", counts[0], counts[1], counts[2]))
}

fn criterion_3(cat: &Catalogue) -> Outcome {
    let expected: BTreeSet<MixedSum> = ["1,1|1", "1,1|2", "1,3|1", "1|1,1", "2,3|1", "2|1,1"]
        .into_iter()
        .map(sum)
        .collect();
    let fixture: BTreeSet<MixedSum> = tables::ternary_list().map_err(e)?.sums.into_iter().collect();
    ensure(fixture == expected, "fixture differs from the listed sums")?;
    let actual = cat.run(3).map(|r| r.proper_universal.clone()).unwrap_or_default();
    ensure(actual == expected, format!("got {actual:?}"))?;
    Ok("6 ternary sums match".into())
}

fn criterion_4() -> Outcome {
    for (s, t) in [("1,2|3,3", 13), ("7|1,1,3", 14), ("1,2|1,14", 61)] {
        let got = truant(&sum(s), 10_000).map_err(e)?.truant;
        ensure(got == Some(t), format!("t({s}) = {got:?}, expected {t}"))?;
    }
    let mut n = 0;
    for id in ["3.1", "4.1", "5.1"] {
        for row in tables::escalation_table(id).map_err(e)?.rows {
            let got = truant(&row.parent, 10_000).map_err(e)?.truant;
            ensure(
                got == Some(row.truant),
                format!("{id} {}: t({}) = {got:?}, expected {}", row.case, row.parent, row.truant),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} table truants recomputed"))
}

fn criterion_5() -> Outcome {
    let bound = 10_000;
    let table = tables::exceptional_table().map_err(e)?;
    let mut closed = BTreeSet::new();
    for r in 1..=4u64 {
        let mut p = 25u64;
        while r * p - 5 <= bound {
            closed.insert(r * p - 5);
            p *= 25;
        }
    }
    for row in &table.rows {
        let actual: BTreeSet<u64> = exceptional_set(&row.sum, bound).into_iter().collect();
        let expected = row.expected(bound);
        ensure(actual == expected, format!("{}: {actual:?} vs {expected:?}", row.case))?;
        if row.closed_form.is_some() {
            ensure(actual == closed, format!("{}: closed form mismatch", row.case))?;
        }
    }
    let five_ten = exceptional_set(&sum("1,2|5,10"), bound);
    ensure(
        five_ten.into_iter().collect::<BTreeSet<_>>() == closed,
        "1,2|5,10 closed form",
    )?;
    Ok(format!("{} rows; closed form has {} members", table.rows.len(), closed.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x61);
    let mut universal = 0;
    for i in 0..10_000 {
        let arity = rng.gen_range(1..=6);
        let mut sq = Vec::new();
        let mut oc = Vec::new();
        for _ in 0..arity {
            let c = rng.gen_range(1..=20u64);
            if rng.gen_bool(0.5) {
                sq.push(c);
            } else {
                oc.push(c);
            }
        }
        let phi = MixedSum::new(sq.clone(), oc.clone()).map_err(e)?;
        let crit = criterion_universal(&phi);
        ensure(
            crit == oracle_critical(&sq, &oc),
            format!("sample {i}: criterion disagrees with the oracle on {phi}"),
        )?;
        let missed = exceptional_set(&phi, 10_000);
        if crit {
            universal += 1;
            ensure(missed.is_empty(), format!("{phi}: passes the criterion but misses {:?}", missed.first()))?;
        } else {
            ensure(
                missed.first().is_some_and(|&t| t <= 61),
                format!("{phi}: fails the criterion but truant is {:?}", missed.first()),
            )?;
        }
    }
    Ok(format!("10000 samples, {universal} pass the criterion, 0 violations"))
}

fn criterion_7(v: &Verifier) -> Outcome {
    let mut n = 0;
    let mut eigen = 0;
    for id in ["4.3", "text-certificates"] {
        for c in v.verify(id).map_err(e)? {
            if c.check.starts_with("conclusion") {
                continue;
            }
            ensure(c.passed, c.to_string())?;
            n += 1;
            if c.check == "primitive eigenvectors" {
                eigen += 1;
            }
        }
    }
    ensure(eigen >= 4, format!("only {eigen} eigenvector checks"))?;
    Ok(format!("{n} checks, {eigen} eigenvector sets"))
}

fn criterion_8(v: &Verifier) -> Outcome {
    let mut n = 0;
    for c in v.verify("text-certificates").map_err(e)? {
        if c.check.starts_with("conclusion") {
            ensure(c.passed, c.to_string())?;
            ensure(c.check.ends_with("5000"), "bound")?;
            n += 1;
        }
    }
    ensure(n == 3, format!("{n} conclusion checks"))?;
    Ok(format!("{n} conclusions hold up to 5000"))
}

fn criterion_9() -> Outcome {
    let out = siegel_identity_check(10_000);
    ensure(out.holds(), format!("{:?}", out.first_failure))?;
    ensure(out.checked == 3334, format!("checked {}", out.checked))?;
    Ok(format!("{} values n = 1 mod 3", out.checked))
}

fn complement(f: &str, bound: u64) -> Result<BTreeSet<u64>, String> {
    let f: Form = f.parse().map_err(e)?;
    let rep: BTreeSet<u64> = represented_set(&f, bound).into_iter().collect();
    Ok((1..=bound).filter(|n| !rep.contains(n)).collect())
}

/// Strips factors of `p^2`.
fn strip_square(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p * p) {
        n /= p * p;
    }
    n
}

fn criterion_10() -> Outcome {
    let bound = 10_000;
    let shape_111: BTreeSet<u64> = (1..=bound).filter(|&n| strip_square(n, 2) % 8 == 7).collect();
    let shape_112: BTreeSet<u64> = (1..=bound)
        .filter(|&n| {
            let m = strip_square(n, 2);
            m.is_multiple_of(2) && (m / 2) % 8 == 7
        })
        .collect();
    let shape_125: BTreeSet<u64> = (1..=bound)
        .filter(|&n| {
            let m = strip_square(n, 5);
            m.is_multiple_of(5) && matches!((m / 5) % 5, 2 | 3)
        })
        .collect();
    for (f, shape) in [("diag:1,1,1", &shape_111), ("diag:1,1,2", &shape_112), ("diag:1,2,5", &shape_125)] {
        let c = complement(f, bound)?;
        ensure(&c == shape, format!("{f}: {} vs {} values", c.len(), shape.len()))?;
    }
    Ok(format!(
        "complements of sizes {}, {}, {}",
        shape_111.len(),
        shape_112.len(),
        shape_125.len()
    ))
}

fn criterion_11() -> Outcome {
    let mut sums = Vec::new();
    for b in 3..=7 {
        sums.push(format!("1,1,1|{b}"));
    }
    for a in 4..=6 {
        sums.push(format!("1,1,{a}|3"));
    }
    for b in 3..=6 {
        sums.push(format!("1,1|3,{b}"));
    }
    for a in 5..=12 {
        sums.push(format!("1,5,{a}|2"));
    }
    for b in 2..=12 {
        sums.push(format!("1,5|2,{b}"));
    }
    for a in 5..=9 {
        sums.push(format!("{a}|1,2,3"));
    }
    for s in &sums {
        let out = reduction_check(&sum(s)).map_err(e)?;
        ensure(out.passed(), format!("{s}: unreached members {:?}", out.failing))?;
    }
    Ok(format!("{} sums", sums.len()))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, start: Instant, out: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS criterion {n:>2} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {n:>2} {name}: {why} ({secs:.1}s)");
            }
        }
    };

    let t = Instant::now();
    let cat = full_catalogue(100_000);
    match &cat {
        Ok(cat) => {
            report(1, "catalogue counts", t, criterion_1(cat));
            report(2, "candidate counts", t, criterion_2(cat));
            report(3, "ternary list", t, criterion_3(cat));
        }
        Err(err) => {
            for (n, name) in [(1, "catalogue counts"), (2, "candidate counts"), (3, "ternary list")] {
                report(n, name, t, Err(format!("catalogue failed: {err}")));
            }
        }
    }
    let t = Instant::now();
    report(4, "truant regressions", t, criterion_4());
    let t = Instant::now();
    report(5, "exceptional sets", t, criterion_5());
    let t = Instant::now();
    report(6, "criterion equivalence", t, criterion_6());
    let verifier = Verifier::new(VerifyOptions::default());
    let t = Instant::now();
    report(7, "congruence regressions", t, criterion_7(&verifier));
    let t = Instant::now();
    report(8, "witness conclusion", t, criterion_8(&verifier));
    let t = Instant::now();
    report(9, "count identity", t, criterion_9());
    let t = Instant::now();
    report(10, "represented-set shapes", t, criterion_10());
    let t = Instant::now();
    report(11, "reduction gate", t, criterion_11());

    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
