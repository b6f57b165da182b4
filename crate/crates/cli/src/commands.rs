use std::collections::BTreeMap;
use std::fmt::Write as _;

use narayana_core::dyck::{enumerate, joint_q, random_path, CoStatistic, DyckPath, RankSubset, Statistic};
use narayana_core::posets::{j2xn, verify_theorem_main_with, FlagVectors, MAIN_THEOREM_LIMIT};
use narayana_core::qpoly::{catalan, narayana, q_narayana_closed};
use narayana_core::shelling::{
    check_preshelling, flag_h_from_partition, omega_n, partition_intervals, verify_partitioning, DyckComplex,
    OMEGA_LIMIT,
};
use narayana_core::tableaux::{dyck_to_ssyt, for_each_ssyt, q_narayana_schur_with, ssyt_to_dyck, Partition, SchurRoute};
use narayana_core::QPoly;
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::report::{big, poly_from_json, poly_to_json, Output, Report};
use crate::{CliError, Route, StatName, Check};

pub const NARAYANA_LIMIT: usize = 60;
pub const ENUMERATION_LIMIT: usize = 12;
pub const PRESHELLING_LIMIT: usize = 5;
/// Face enumeration of Δ(J(2 × 7)) exceeds the face guard.
pub const PARTH_LIMIT: usize = 6;
pub const VERIFY_LIMIT: usize = 8;
const MAX_WITNESSES: usize = 20;

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_n(n: usize, limit: usize, what: &str) -> Result<()> {
    if n == 0 || n > limit {
        return Err(usage(format!("{what} needs 1 <= n <= {limit}, got {n}")));
    }
    Ok(())
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn subset_json(s: &RankSubset) -> Value {
    json!(s.members())
}

fn row(cells: &[&dyn ToString]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

fn row_of(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

fn parse_path(s: &str, n: usize) -> Result<DyckPath> {
    let w: DyckPath = s.parse().map_err(|e| usage(format!("{e}")))?;
    if w.semilength() != n {
        return Err(usage(format!("path {w} has semilength {}, expected {n}", w.semilength())));
    }
    Ok(w)
}

pub fn narayana_row(n: usize) -> Result<Output> {
    check_n(n, NARAYANA_LIMIT, "narayana")?;
    let counts = (0..n).map(|k| narayana(n, k)).collect::<std::result::Result<Vec<_>, _>>()?;
    let sum = catalan(n);
    let report = Report::value(
        "narayana",
        params(&[("n", json!(n))]),
        json!({ "row": counts.iter().map(big).collect::<Vec<_>>(), "catalan": big(&sum) }),
    );
    let text = format!(
        "{}\nsum {sum}\n",
        counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    );
    let mut table = vec![row_of(&["k", "narayana"])];
    table.extend(counts.iter().enumerate().map(|(k, v)| row(&[&k, v as &dyn ToString])));
    table.push(row(&[&"sum", &sum as &dyn ToString]));
    Ok(Output { report, text, table, dot: None })
}

fn route_poly(n: usize, k: usize, route: Route) -> Result<QPoly> {
    Ok(match route {
        Route::Closed => q_narayana_closed(n, k)?,
        Route::SchurSsyt => q_narayana_schur_with(n, k, SchurRoute::Ssyt)?,
        Route::SchurHook => q_narayana_schur_with(n, k, SchurRoute::Hook)?,
        Route::Enumerate => joint_q(n, &Statistic::Des, &CoStatistic::Maj)?
            .remove(&k)
            .unwrap_or_else(QPoly::zero),
        Route::All => unreachable!("expanded by the caller"),
    })
}

fn route_limit(route: Route) -> usize {
    match route {
        Route::Enumerate | Route::SchurSsyt => ENUMERATION_LIMIT,
        _ => NARAYANA_LIMIT,
    }
}

pub fn qnarayana(n: usize, k: usize, route: Route) -> Result<Output> {
    let parameters = params(&[("n", json!(n)), ("k", json!(k)), ("route", json!(route.name()))]);
    let single = route != Route::All;
    let candidates = if single {
        vec![route]
    } else {
        vec![Route::Closed, Route::SchurSsyt, Route::SchurHook, Route::Enumerate]
    };
    if single {
        check_n(n, route_limit(route), route.name())?;
    } else {
        check_n(n, NARAYANA_LIMIT, "qnarayana")?;
    }
    let mut polys = Vec::new();
    let mut skipped = Vec::new();
    for r in candidates {
        if n <= route_limit(r) {
            polys.push((r, route_poly(n, k, r)?));
        } else {
            skipped.push(r.name());
        }
    }
    let routes: Map<String, Value> = polys.iter().map(|(r, p)| (r.name().to_string(), poly_to_json(p))).collect();
    let mut text = String::new();
    let mut table = vec![row_of(&["route", "polynomial", "coefficients"])];
    for (r, p) in &polys {
        writeln!(text, "{}: {p}", r.name()).unwrap();
        let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        table.push(row(&[&r.name(), p, &coeffs.join(" ")]));
    }
    let report = if single {
        Report::value("qnarayana", parameters, json!({ "routes": routes }))
    } else {
        let first = &polys[0].1;
        let witnesses: Vec<Value> = polys
            .iter()
            .filter(|(_, p)| p != first)
            .map(|(r, p)| json!({ "route": r.name(), "poly": poly_to_json(p), "expected": poly_to_json(first) }))
            .collect();
        let report = Report::check("qnarayana", parameters, json!({ "routes": routes, "skipped": skipped }), witnesses);
        writeln!(text, "verdict: {}", verdict_name(&report)).unwrap();
        report
    };
    Ok(Output { report, text, table, dot: None })
}

fn verdict_name(r: &Report) -> &'static str {
    match r.verdict {
        crate::report::Verdict::Pass => "pass",
        crate::report::Verdict::Fail => "fail",
        crate::report::Verdict::Value => "value",
    }
}

pub fn dist(n: usize, stat: StatName, q: bool, ref_path: Option<&str>, cache: Option<&Cache>) -> Result<Output> {
    check_n(n, ENUMERATION_LIMIT, "dist")?;
    let statistic = match (stat, ref_path) {
        (StatName::Des, Some(w)) => Statistic::DesW(parse_path(w, n)?),
        (_, Some(_)) => return Err(usage("--ref-path only applies to --stat des")),
        (s, None) => s.statistic(),
    };
    let key_name = match &statistic {
        Statistic::DesW(w) => format!("des-w{w}"),
        s => s.name().to_string(),
    };
    let mut parameters = params(&[("n", json!(n)), ("stat", json!(stat.name())), ("q", json!(q))]);
    if let Some(w) = ref_path {
        parameters.insert("ref_path".into(), json!(w.to_ascii_lowercase()));
    }
    let costat = if q {
        Some(
            statistic
                .paired_costatistic()
                .ok_or_else(|| usage(format!("--q is not available for {}: it has no paired co-statistic", stat.name())))?,
        )
    } else {
        None
    };

    let key = Cache::dist_key(n, &key_name, q);
    let cached = cache.and_then(|c| c.load(&key)).filter(|v| table_is_valid(v, q));
    let table_json = match cached {
        Some(v) => v,
        None => {
            let v = match &costat {
                Some(c) => Value::Array(
                    joint_q(n, &statistic, c)?
                        .iter()
                        .map(|(k, p)| json!({ "value": k, "poly": poly_to_json(p) }))
                        .collect(),
                ),
                None => Value::Array(
                    narayana_core::dyck::distribution(n, &statistic)?
                        .iter()
                        .map(|(k, c)| json!({ "value": k, "count": c }))
                        .collect(),
                ),
            };
            if let Some(c) = cache {
                c.store(&key, &v)?;
            }
            v
        }
    };

    let mut text = String::new();
    let mut table = if q {
        vec![row_of(&["value", "polynomial", "coefficients"])]
    } else {
        vec![row_of(&["value", "count"])]
    };
    for entry in table_json.as_array().expect("validated") {
        let value = &entry["value"];
        if q {
            let p = poly_from_json(&entry["poly"]).expect("validated");
            writeln!(text, "{value}: {p}").unwrap();
            let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
            table.push(row(&[value, &p, &coeffs.join(" ")]));
        } else {
            writeln!(text, "{value}: {}", entry["count"]).unwrap();
            table.push(row(&[value, &entry["count"]]));
        }
    }
    let report = Report::value(
        "dist",
        parameters,
        json!({ "statistic": statistic.name(), "table": table_json }),
    );
    Ok(Output { report, text, table, dot: None })
}

fn table_is_valid(v: &Value, q: bool) -> bool {
    v.as_array().is_some_and(|rows| {
        rows.iter().all(|r| {
            r["value"].is_u64()
                && if q {
                    poly_from_json(&r["poly"]).is_some()
                } else {
                    r["count"].is_u64()
                }
        })
    })
}

fn references(n: usize, ref_path: &str, seed: u64, samples: usize) -> Result<Vec<DyckPath>> {
    match ref_path {
        "all" => Ok(enumerate(n)),
        "random" => {
            if samples == 0 {
                return Err(usage("--samples must be positive"));
            }
            Ok((0..samples as u64).map(|i| random_path(n, seed.wrapping_add(i))).collect())
        }
        w => Ok(vec![parse_path(w, n)?]),
    }
}

pub struct VerifyArgs<'a> {
    pub check: Check,
    pub n: usize,
    pub ref_path: Option<&'a str>,
    pub seed: u64,
    pub samples: usize,
}

pub fn verify(args: &VerifyArgs) -> Result<Output> {
    let n = args.n;
    let mut parameters = params(&[("check", json!(args.check.name())), ("n", json!(n))]);
    let (value, mut witnesses) = match args.check {
        Check::MainTheorem => {
            check_n(n, MAIN_THEOREM_LIMIT, "main-theorem")?;
            let ref_path = args.ref_path.unwrap_or("all");
            parameters.insert("ref_path".into(), json!(ref_path));
            if ref_path == "random" {
                parameters.insert("seed".into(), json!(args.seed));
                parameters.insert("samples".into(), json!(args.samples));
            }
            verify_main(n, &references(n, ref_path, args.seed, args.samples)?)?
        }
        Check::Ssyt => {
            check_n(n, VERIFY_LIMIT, "ssyt")?;
            verify_ssyt(n)?
        }
        Check::Preshelling => {
            check_n(n, PRESHELLING_LIMIT, "preshelling")?;
            verify_preshelling(n)?
        }
        Check::QIdentity => {
            check_n(n, VERIFY_LIMIT, "q-identity")?;
            verify_q_identity(n)?
        }
        Check::Parth => {
            check_n(n, PARTH_LIMIT, "parth")?;
            verify_parth(n)?
        }
    };
    witnesses.truncate(MAX_WITNESSES);
    let report = Report::check("verify", parameters, value, witnesses);
    let mut text = format!("{} n={n}: {}\n", args.check.name(), verdict_name(&report));
    if let Value::Object(fields) = &report.value {
        for (k, v) in fields {
            writeln!(text, "  {k}: {v}").unwrap();
        }
    }
    for w in &report.witnesses {
        writeln!(text, "  witness: {w}").unwrap();
    }
    let table = vec![
        row_of(&["check", "n", "verdict", "witnesses"]),
        row(&[&args.check.name(), &n, &verdict_name(&report), &report.witnesses.len()]),
    ];
    Ok(Output { report, text, table, dot: None })
}

fn flag_vectors(n: usize) -> Result<FlagVectors> {
    Ok(FlagVectors::compute(j2xn(n)?.lattice())?)
}

fn verify_main(n: usize, refs: &[DyckPath]) -> Result<(Value, Vec<Value>)> {
    let flags = flag_vectors(n)?;
    let paths = enumerate(n);
    let mut witnesses = Vec::new();
    for w in refs {
        let rep = verify_theorem_main_with(n, w, &flags, &paths)?;
        witnesses.extend(rep.mismatches().map(|m| {
            json!({ "reference": w, "subset": subset_json(&m.subset), "flag_h": big(m.flag_h), "paths": m.paths })
        }));
    }
    let value = json!({ "references": refs.len(), "subsets": 1u64 << (2 * n - 1) });
    Ok((value, witnesses))
}

fn verify_ssyt(n: usize) -> Result<(Value, Vec<Value>)> {
    let flags = flag_vectors(n)?;
    let mut counts: BTreeMap<u64, i128> = BTreeMap::new();
    let mut tableaux = 0u64;
    for k in 0..n {
        for_each_ssyt(&Partition::two_column(k), n - 1, |rows| {
            let bits = rows.iter().map(|r| r.iter().sum::<usize>()).fold(0u64, |m, s| m | 1 << s);
            *counts.entry(bits).or_default() += 1;
            tableaux += 1;
        });
    }
    let mut witnesses: Vec<Value> = flags
        .beta_entries()
        .filter_map(|(s, beta)| {
            let got = counts.get(&s.bits()).copied().unwrap_or(0);
            (got != beta).then(|| json!({ "subset": subset_json(&s), "flag_h": big(beta), "tableaux": big(got) }))
        })
        .collect();
    for w in enumerate(n) {
        let t = dyck_to_ssyt(&w);
        let back = ssyt_to_dyck(&t, n)?;
        if back != w {
            witnesses.push(json!({ "path": w, "tableau": t, "back": back }));
        }
    }
    Ok((json!({ "subsets": 1u64 << (2 * n - 1), "tableaux": tableaux }), witnesses))
}

fn verify_preshelling(n: usize) -> Result<(Value, Vec<Value>)> {
    let dc = DyckComplex::new(n)?;
    let rep = check_preshelling(dc.complex(), &omega_n(n)?)?;
    let conditions = [
        ("mutual_restriction", &rep.mutual_restriction),
        ("disjoint_intervals", &rep.disjoint_intervals),
        ("restriction_implies_order", &rep.restriction_implies_order),
        ("shelling_step", &rep.shelling_step),
    ];
    let mut witnesses = Vec::new();
    let mut verdicts = Map::new();
    for (name, c) in conditions {
        verdicts.insert(name.into(), json!(c.holds));
        if !c.holds {
            witnesses.push(json!({ "condition": name, "witness": c.witness }));
        }
    }
    if !rep.consistent() {
        witnesses.push(json!({ "condition": "equivalence", "verdicts": rep.verdicts() }));
    }
    Ok((json!({ "facets": dc.complex().num_facets(), "conditions": verdicts }), witnesses))
}

fn verify_q_identity(n: usize) -> Result<(Value, Vec<Value>)> {
    let des = joint_q(n, &Statistic::Des, &CoStatistic::Maj)?;
    let lnfs = joint_q(n, &Statistic::Lnfs, &CoStatistic::MajL)?;
    let mut witnesses = Vec::new();
    let mut closed_polys = Vec::new();
    for k in 0..n {
        let closed = q_narayana_closed(n, k)?;
        let others = [
            ("des-maj", des.get(&k).cloned().unwrap_or_else(QPoly::zero)),
            ("lnfs-maj-l", lnfs.get(&k).cloned().unwrap_or_else(QPoly::zero)),
            ("schur-ssyt", q_narayana_schur_with(n, k, SchurRoute::Ssyt)?),
            ("schur-hook", q_narayana_schur_with(n, k, SchurRoute::Hook)?),
        ];
        for (name, p) in others {
            if p != closed {
                witnesses.push(json!({ "k": k, "route": name, "poly": poly_to_json(&p), "closed": poly_to_json(&closed) }));
            }
        }
        closed_polys.push(poly_to_json(&closed));
    }
    Ok((json!({ "closed": closed_polys }), witnesses))
}

fn verify_parth(n: usize) -> Result<(Value, Vec<Value>)> {
    let dc = DyckComplex::new(n)?;
    let p = partition_intervals(dc.complex(), &omega_n(n)?);
    let mut witnesses = Vec::new();
    let check = verify_partitioning(dc.complex(), &p)?;
    if let Some(w) = check.witness {
        witnesses.push(json!({ "uncovered_or_double": w }));
    }
    let from_partition = flag_h_from_partition(dc.order_complex(), &p);
    let mut ls: BTreeMap<RankSubset, i128> = BTreeMap::new();
    for w in dc.paths() {
        *ls.entry(w.ls_set()).or_default() += 1;
    }
    let flags = flag_vectors(n)?;
    for (s, beta) in flags.beta_entries() {
        let part = from_partition.get(&s).copied().unwrap_or(0) as i128;
        let by_ls = ls.get(&s).copied().unwrap_or(0);
        if part != beta || by_ls != beta {
            witnesses.push(json!({ "subset": subset_json(&s), "flag_h": big(beta), "partition": big(part), "ls": big(by_ls) }));
        }
    }
    Ok((json!({ "facets": dc.complex().num_facets(), "subsets": 1u64 << (2 * n - 1) }), witnesses))
}

pub fn omega(n: usize) -> Result<Output> {
    check_n(n, OMEGA_LIMIT, "omega")?;
    let order = omega_n(n)?;
    let paths = enumerate(n);
    let covers = order.covers();
    let nodes: Vec<Value> = paths
        .iter()
        .map(|w| json!({ "path": w, "ls": subset_json(&w.ls_set()) }))
        .collect();
    let edges: Vec<Value> = covers
        .iter()
        .map(|&(a, b)| json!({ "lower": paths[a], "upper": paths[b] }))
        .collect();
    let mut dot = format!("digraph omega_{n} {{\n  rankdir=BT;\n");
    for w in &paths {
        writeln!(dot, "  \"{w}\" [label=\"{w}\\nLS {}\"];", w.ls_set()).unwrap();
    }
    for &(a, b) in &covers {
        writeln!(dot, "  \"{}\" -> \"{}\";", paths[a], paths[b]).unwrap();
    }
    dot.push_str("}\n");
    let mut text = format!("{} elements, {} covers\n", paths.len(), covers.len());
    for &(a, b) in &covers {
        writeln!(text, "{} < {}", paths[a], paths[b]).unwrap();
    }
    let mut table = vec![row_of(&["lower", "upper"])];
    table.extend(covers.iter().map(|&(a, b)| row(&[&paths[a], &paths[b]])));
    let report = Report::value("omega", params(&[("n", json!(n))]), json!({ "nodes": nodes, "edges": edges }));
    Ok(Output { report, text, table, dot: Some(dot) })
}
