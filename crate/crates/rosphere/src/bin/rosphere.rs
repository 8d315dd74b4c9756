//! Command line front end: range computations, table or JSON output,
//! fixture verification, and a persistent result cache.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use rosphere::green::Engine;
use rosphere::group::Group;
use rosphere::massey::massey3;
use rosphere::names::eval_expr;
use rosphere::query::{render_json, render_table, run, RangeQuery, Task};
use std::collections::BTreeSet;
use std::process::ExitCode;

const USAGE: &str = "rosphere: RO(C_p^n)-graded homology of representation spheres

USAGE:
    rosphere [OPTIONS]

OPTIONS:
    --group p,n          ambient group C_{p^n} (default 2,2 = C_4)
    --coefficients C     Z or Z/q (default Z)
    --sphere EXPR        one grading point, e.g. \"3*sigma-2*lambda\"
    --box \"n<=A,m<=B\"    all gradings a*sigma+b*lambda, |a|<=A, |b|<=B
    --tasks LIST         comma list of additive,names,products,relations,massey
    --format FMT         table (default) or json
    --fixtures PATH      verify computed results against a fixture file
    --cache DIR          result cache directory (or ROSPHERE_CACHE_DIR)
    --jobs N             worker threads for range queries (default 1)
    --help               this text
";

fn fail_usage(msg: &str) -> ExitCode {
    eprintln!("error: {}", msg);
    eprintln!("{}", USAGE);
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut group = (2u32, 2u32);
    let mut modulus = 0u32;
    let mut sphere: Option<String> = None;
    let mut box_spec: Option<String> = None;
    let mut tasks: BTreeSet<Task> = [Task::Additive].into_iter().collect();
    let mut format = "table".to_string();
    let mut fixtures_path: Option<String> = None;
    let mut cache_dir: Option<String> = std::env::var("ROSPHERE_CACHE_DIR").ok();
    let mut jobs = 1usize;

    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, String> {
            it.next().cloned().ok_or(format!("{} needs a value", name))
        };
        match arg.as_str() {
            "--help" | "-h" => {
                println!("{}", USAGE);
                return ExitCode::SUCCESS;
            }
            "--group" => match take("--group") {
                Ok(v) => {
                    let parts: Vec<&str> = v.split(',').collect();
                    if parts.len() != 2 {
                        return fail_usage("--group wants p,n");
                    }
                    match (parts[0].trim().parse(), parts[1].trim().parse()) {
                        (Ok(p), Ok(n)) => group = (p, n),
                        _ => return fail_usage("--group wants integers p,n"),
                    }
                }
                Err(e) => return fail_usage(&e),
            },
            "--coefficients" => match take("--coefficients") {
                Ok(v) => {
                    let v = v.trim();
                    if v == "Z" {
                        modulus = 0;
                    } else if let Some(q) = v.strip_prefix("Z/") {
                        match q.parse() {
                            Ok(q) => modulus = q,
                            Err(_) => return fail_usage("--coefficients wants Z or Z/q"),
                        }
                    } else {
                        return fail_usage("--coefficients wants Z or Z/q");
                    }
                }
                Err(e) => return fail_usage(&e),
            },
            "--sphere" => match take("--sphere") {
                Ok(v) => sphere = Some(v),
                Err(e) => return fail_usage(&e),
            },
            "--box" => match take("--box") {
                Ok(v) => box_spec = Some(v),
                Err(e) => return fail_usage(&e),
            },
            "--tasks" => match take("--tasks") {
                Ok(v) => {
                    tasks.clear();
                    for t in v.split(',') {
                        match Task::parse(t) {
                            Ok(t) => {
                                tasks.insert(t);
                            }
                            Err(e) => return fail_usage(&e.to_string()),
                        }
                    }
                    if tasks.is_empty() {
                        return fail_usage("--tasks needs at least one task");
                    }
                }
                Err(e) => return fail_usage(&e),
            },
            "--format" => match take("--format") {
                Ok(v) => format = v,
                Err(e) => return fail_usage(&e),
            },
            "--fixtures" => match take("--fixtures") {
                Ok(v) => fixtures_path = Some(v),
                Err(e) => return fail_usage(&e),
            },
            "--cache" => match take("--cache") {
                Ok(v) => cache_dir = Some(v),
                Err(e) => return fail_usage(&e),
            },
            "--jobs" => match take("--jobs") {
                Ok(v) => match v.parse() {
                    Ok(n) => jobs = n,
                    Err(_) => return fail_usage("--jobs wants a number"),
                },
                Err(e) => return fail_usage(&e),
            },
            other => return fail_usage(&format!("unknown flag '{}'", other)),
        }
    }

    let group = match Group::new(group.0, group.1) {
        Ok(g) => g,
        Err(e) => return fail_usage(&e.to_string()),
    };

    // fixture verification short-circuits the rest
    if let Some(path) = fixtures_path {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {}", path, e);
                return ExitCode::from(2);
            }
        };
        let rows = match rosphere::fixtures::parse_fixtures(&text) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        };
        let mut engine = Engine::new(group, modulus);
        let report = rosphere::fixtures::verify(&mut engine, &rows);
        println!("{} fixture rows passed", report.passed);
        for f in &report.failures {
            println!("FAIL: {}", f);
        }
        return if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }

    let mut query = match (&sphere, &box_spec) {
        (Some(s), None) => match RangeQuery::sphere(group, s) {
            Ok(q) => q,
            Err(e) => return fail_usage(&e.to_string()),
        },
        (None, Some(b)) => match RangeQuery::boxed(group, b) {
            Ok(q) => q,
            Err(e) => return fail_usage(&e.to_string()),
        },
        (None, None) => return fail_usage("one of --sphere or --box is required"),
        (Some(_), Some(_)) => return fail_usage("--sphere and --box are exclusive"),
    };
    query.modulus = modulus;
    query.tasks = tasks.clone();
    query.cache_dir = cache_dir.map(Into::into);
    query.jobs = jobs;

    let records = match run(&query) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };

    match format.as_str() {
        "json" => match render_json(&records) {
            Ok(s) => println!("{}", s),
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(1);
            }
        },
        "table" => print!("{}", render_table(&records)),
        other => return fail_usage(&format!("unknown format '{}'", other)),
    }

    // extra tasks beyond additive/names print their own sections
    if tasks.contains(&Task::Products) && group == Group::c4() && modulus == 0 {
        println!("\nproducts of the named classes:");
        let mut e = Engine::new(group, modulus);
        let names = ["as", "al", "u2s", "ul"];
        for x in names {
            for y in names {
                let a = eval_expr(&mut e, x, 2).expect("named class");
                let b = eval_expr(&mut e, y, 2).expect("named class");
                let p = e.multiply(&a, &b);
                let desc = if p.is_zero() {
                    "0".to_string()
                } else {
                    format!(
                        "{:?} in H_{}(S^({}))",
                        p.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        p.degree,
                        p.grading
                    )
                };
                println!("  {} * {} = {}", x, y, desc);
            }
        }
    }
    if tasks.contains(&Task::Relations) && group == Group::c4() && modulus == 0 {
        println!("\nbuilt-in relation checks:");
        let mut e = Engine::new(group, modulus);
        let mut all_ok = true;
        let mut check = |name: &str, ok: bool| {
            println!("  {}: {}", name, if ok { "ok" } else { "FAILED" });
            all_ok &= ok;
        };
        {
            let a = e.a_sigma();
            let a2 = e.multiply(&a, &a);
            let ul = e.u_lambda();
            let lhs = e.multiply(&a2, &ul);
            let u2s = e.u_2sigma();
            let al = e.a_lambda();
            let r = e.multiply(&u2s, &al);
            let rhs = e.scale(2, &r);
            check("gold relation", lhs == rhs && !lhs.is_zero());
        }
        {
            let s3 = e.s3();
            let two_s3 = e.scale(2, &s3);
            let w3 = e.w(3);
            let frac = eval_expr(&mut e, "as^3/al^2", 2).expect("as^3/al^2");
            let rhs = e.multiply(&w3, &frac);
            check("2 s3 = w3 (as^3/al^2)", two_s3 == rhs && !rhs.is_zero());
        }
        {
            let u2s = e.u_2sigma();
            let one = e.unit(2);
            let two = e.scale(2, &one);
            check("2/u2s exists", e.divide(&two, &u2s).is_some());
            check("1/u2s does not exist", e.divide(&one, &u2s).is_none());
        }
        if !all_ok {
            return ExitCode::from(1);
        }
    }
    if tasks.contains(&Task::Massey) && group == Group::c4() {
        println!("\nexploratory massey products (not asserted):");
        let mut e = Engine::new(group, modulus);
        let a = e.a_sigma();
        let al = e.a_lambda();
        let y = e.scale(2, &al);
        let r = massey3(&mut e, &a, &y, &a);
        if r.defined {
            let rep = r.representative.unwrap();
            println!(
                "  <as, 2al, as> = {:?} in H_{}(S^({})), indeterminacy rank {}",
                rep.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                rep.degree,
                rep.grading,
                r.indeterminacy.len()
            );
        } else {
            println!("  <as, 2al, as> undefined");
        }
    }

    ExitCode::SUCCESS
}
