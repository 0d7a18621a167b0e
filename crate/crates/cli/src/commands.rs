use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rackcode::code::{validate_spec, CodeSpecDoc};
use rackcode::enumerator::{
    certify as certify_code, macwilliams_dual, rate_from_enumerator, support_enumerator, CodeClassParams,
};
use rackcode::lp::bound::{rate_upper_bound, Program};
use rackcode::lp::delta::{delta1, delta2, delta3, Triple};
use rackcode::lp::lp1::build_lp1;
use rackcode::lp::lp2::{build_lp2, D8Start};
use rackcode::repair::{
    cost_bounds, execute_schedule, min_distance, repair_all, repair_groups, NodeSet, ObservedCodeword, RepairPlan,
    ScenarioDoc,
};
use rackcode::{CodeSpec, Error, TwoRackCode};
use serde_json::{json, Value};

use crate::render;
use crate::{BoundArgs, DeltaKind};

pub const DEFAULT_SEED: u64 = 0x5eed;

pub struct Output {
    pub json: Value,
    pub text: String,
}

pub enum CliError {
    /// Unreadable or unparsable input (exit 2).
    Input(String),
    /// The input is well formed but the request fails (exit 1). A report,
    /// when present, is still printed.
    Domain { message: String, report: Option<Output> },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Input(e.to_string()),
            other => CliError::Domain { message: other.to_string(), report: None },
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<CodeSpec, CliError> {
    Ok(CodeSpecDoc::from_json(&read(path)?)?.build()?)
}

fn two_rack(path: &Path) -> Result<TwoRackCode, CliError> {
    Ok(TwoRackCode::from_spec(&load_spec(path)?)?)
}

pub fn validate(path: &Path, groups: Option<usize>) -> Result<Output, CliError> {
    let doc = CodeSpecDoc::from_json(&read(path)?)?;
    let report = validate_spec(&doc);
    let mut json = json!({
        "command": "validate",
        "spec": path.display().to_string(),
        "valid": report.valid,
        "errors": report.errors,
        "warnings": report.warnings,
        "ranks": {"H": report.rank_h, "K": report.rank_k, "HK": report.rank_hk, "G": report.rank_g},
    });
    if !report.valid {
        let text = format!("invalid\n{}\n", report.errors.join("\n"));
        return Err(CliError::Domain { message: report.errors.join("; "), report: Some(Output { json, text }) });
    }
    let spec = doc.build()?;
    let dist = min_distance(spec.h())?;
    let rate = spec.rate();
    let length = spec.racks() * spec.nodes();
    let obj = json.as_object_mut().expect("object");
    obj.insert("q".into(), json!(spec.field().q()));
    obj.insert("M".into(), json!(spec.racks()));
    obj.insert("N".into(), json!(spec.nodes()));
    obj.insert("dist_h".into(), json!(dist));
    obj.insert(
        "rate".into(),
        json!({
            "dimension": spec.dimension(),
            "length": length,
            "exact": render::ratio(&rate.exact),
            "lower_bound": render::ratio(&rate.lower_bound),
        }),
    );
    let mut text = format!(
        "valid; Dist(H)={}; rate {}/{}\n",
        dist.map_or("none".to_string(), |d| d.to_string()),
        spec.dimension(),
        length
    );
    let _ = writeln!(text, "lower bound {}", render::ratio(&rate.lower_bound));
    for w in &report.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    if let Some(j) = groups {
        if j == 0 || j > spec.nodes() {
            return Err(Error::InvalidIndex(format!("node {j} is outside 1..={}", spec.nodes())).into());
        }
        let found = repair_groups(spec.h(), None, j - 1)?;
        let _ = writeln!(text, "repair groups of node {j}:");
        for g in &found {
            let _ = writeln!(text, "  {g}");
        }
        json.as_object_mut().expect("object").insert("repair_groups".into(), json!({"node": j, "groups": found}));
    }
    Ok(Output { json, text })
}

pub fn repair(spec_path: &Path, scenario_path: &Path, seed: Option<u64>, trials: usize) -> Result<Output, CliError> {
    let spec = load_spec(spec_path)?;
    let scenario = ScenarioDoc::from_json(&read(scenario_path)?)?;
    let (failure, policy) = scenario.resolve(&spec)?;
    let schedule = repair_all(&spec, failure, &policy)
        .map_err(|e| CliError::Domain { message: format!("unrepairable: {e}"), report: None })?;

    let node_costs: Vec<Value> = schedule
        .plans
        .iter()
        .filter_map(|p| match p {
            RepairPlan::Inter(_) => {
                let c = cost_bounds(std::slice::from_ref(p), NodeSet::single(p.j()), NodeSet::EMPTY);
                Some(json!({"node": p.j() + 1, "cost": c}))
            }
            RepairPlan::Intra(_) => None,
        })
        .collect();

    let seed = seed.or(scenario.seed).unwrap_or(DEFAULT_SEED);
    let mut sampler = spec.sampler(seed);
    let mut recovered = 0;
    for _ in 0..trials {
        let x = sampler.sample();
        let observed = ObservedCodeword::erase(&x, failure.rack, failure.failed);
        let done = execute_schedule(&observed, &schedule.plans)?;
        if done.symbols() == &x {
            recovered += 1;
        }
    }
    let verified = recovered == trials;
    let json = json!({
        "command": "repair",
        "spec": spec_path.display().to_string(),
        "scenario": scenario_path.display().to_string(),
        "schedule": schedule,
        "node_costs": node_costs,
        "verification": {"seed": seed, "trials": trials, "recovered": recovered, "verified": verified},
    });
    let text = render::schedule(&schedule, &node_costs, recovered, trials);
    let out = Output { json, text };
    if !verified {
        return Err(CliError::Domain {
            message: format!("plans recovered {recovered} of {trials} codewords"),
            report: Some(out),
        });
    }
    Ok(out)
}

pub fn certify(path: &Path, params: CodeClassParams) -> Result<Output, CliError> {
    let code = two_rack(path)?;
    let report = certify_code(&code, &params)?;
    let text = render::certification(&report);
    let json = json!({
        "command": "certify",
        "spec": path.display().to_string(),
        "report": report,
    });
    Ok(Output { json, text })
}

pub fn enumerate(path: &Path, dual: bool) -> Result<Output, CliError> {
    let code = two_rack(path)?;
    let table = support_enumerator(&code);
    let mut text = render::enumerator("code", &table);
    let mut json = json!({
        "command": "enumerate",
        "spec": path.display().to_string(),
        "enumerator": table,
    });
    if dual {
        let d = macwilliams_dual(&table)?;
        text.push_str(&render::enumerator("dual", &d));
        json.as_object_mut().expect("object").insert("dual".into(), json!(d));
    }
    Ok(Output { json, text })
}

pub fn bound(args: &BoundArgs) -> Result<Output, CliError> {
    let start = if args.d8_start == 2 { D8Start::Two } else { D8Start::One };
    let program = if args.both {
        Program::Both(start)
    } else if args.lp1 {
        Program::Lp1
    } else {
        Program::Lp2(start)
    };
    let params: CodeClassParams = args.params.into();
    if let Some(dir) = &args.export_lp {
        export_programs(dir, args, &params, start)?;
    }
    let result = rate_upper_bound(args.n, args.m, args.l, args.q, &params, program)?;
    let program_name = match program {
        Program::Lp1 => "lp1",
        Program::Lp2(_) => "lp2",
        Program::Both(_) => "both",
    };
    let json = json!({
        "command": "bound",
        "program": program_name,
        "d8_start": args.d8_start,
        "result": result,
    });
    let text = render::bound(&result);
    let disagree: Vec<usize> = result.rows.iter().filter(|r| r.agree == Some(false)).map(|r| r.i).collect();
    let out = Output { json, text };
    if !disagree.is_empty() {
        return Err(CliError::Domain {
            message: format!("LP1 and LP2 optima differ at i = {disagree:?}"),
            report: Some(out),
        });
    }
    Ok(out)
}

fn export_programs(dir: &Path, args: &BoundArgs, params: &CodeClassParams, start: D8Start) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let write = |name: String, text: String| {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    };
    for i in 0..=args.n {
        let o1 = num_pow(args.q, i);
        if args.lp1 || args.both {
            write(format!("lp1_i{i}.lp"), build_lp1(args.n, args.q, params, &o1)?.to_lp_format())?;
        }
        if !args.lp1 || args.both {
            let p = build_lp2(args.n, args.q, params, &o1, start)?;
            write(format!("lp2_i{i}.lp"), p.problem.to_lp_format())?;
        }
    }
    Ok(())
}

fn num_pow(q: u32, i: usize) -> num_bigint::BigInt {
    num_bigint::BigInt::from(q).pow(i as u32)
}

pub fn delta(kind: &DeltaKind) -> Result<Output, CliError> {
    let (json, value) = match *kind {
        DeltaKind::Delta1 { n, q, d, e, f, dp, ep, fp } => {
            let v = delta1(Triple::new(d, e, f), Triple::new(dp, ep, fp), n, q);
            (json!({"kind": "delta1", "N": n, "q": q, "d": d, "e": e, "f": f, "dp": dp, "ep": ep, "fp": fp}), v)
        }
        DeltaKind::Delta2 { n, gamma1, d } => {
            if d == 0 || d > n {
                return Err(CliError::Domain { message: format!("d must lie in 1..={n}"), report: None });
            }
            (json!({"kind": "delta2", "N": n, "Gamma1": gamma1, "d": d}), delta2(d, n, gamma1))
        }
        DeltaKind::Delta3 { n, gamma2, d, e, f } => (
            json!({"kind": "delta3", "N": n, "Gamma2": gamma2, "d": d, "e": e, "f": f}),
            delta3(Triple::new(d, e, f), n, gamma2),
        ),
    };
    let mut json = json;
    let obj = json.as_object_mut().expect("object");
    obj.insert("command".into(), json!("delta"));
    obj.insert("value".into(), render::big_json(&value));
    Ok(Output { json, text: format!("{value}\n") })
}

pub fn rate(path: &Path) -> Result<Output, CliError> {
    let spec = load_spec(path)?;
    let r = spec.rate();
    let length = spec.racks() * spec.nodes();
    let mut json = json!({
        "command": "rate",
        "spec": path.display().to_string(),
        "dimension": spec.dimension(),
        "length": length,
        "exact": render::ratio(&r.exact),
        "lower_bound": render::ratio(&r.lower_bound),
    });
    let mut text = format!(
        "rate {}/{} = {}\nlower bound {}\n",
        spec.dimension(),
        length,
        render::ratio(&r.exact),
        render::ratio(&r.lower_bound)
    );
    // a two-rack code also gets the rate recomputed from its enumerator
    if let Ok(code) = TwoRackCode::from_spec(&spec) {
        let table = support_enumerator(&code);
        let from_table = rate_from_enumerator(&table, spec.racks(), spec.g().rank());
        let s = from_table.map(|v| render::ratio(&v));
        if let Some(s) = &s {
            let _ = writeln!(text, "from enumerator {s}");
        }
        json.as_object_mut().expect("object").insert("from_enumerator".into(), json!(s));
    }
    Ok(Output { json, text })
}
