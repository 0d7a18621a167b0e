//! Text renderings for `--table`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rackcode::enumerator::{CertificationReport, EnumeratorTable};
use rackcode::lp::bound::RateBound;
use rackcode::lp::problem::ratio_string;
use rackcode::repair::{RepairPlan, RepairSchedule};
use serde_json::{json, Value};

pub fn ratio(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A JSON number when it fits, a decimal string otherwise.
pub fn big_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn vector(v: &[u16]) -> String {
    let parts: Vec<String> = v.iter().map(u16::to_string).collect();
    format!("[{}]", parts.join(" "))
}

pub fn schedule(s: &RepairSchedule, node_costs: &[Value], recovered: usize, trials: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "rack {} failed {}  Dist(H)={}  intra set {}",
        s.failure.rack + 1,
        s.failure.failed,
        s.dist.map_or("none".to_string(), |d| d.to_string()),
        s.alpha
    );
    for plan in &s.plans {
        match plan {
            RepairPlan::Intra(p) => {
                let _ = writeln!(out, "node {:>2}  intra  beta={}  c={}", p.j + 1, p.beta, vector(&p.c));
            }
            RepairPlan::Inter(p) => {
                let _ = writeln!(
                    out,
                    "node {:>2}  inter  r={}  mu={}  beta={}  tau={}  c={}",
                    p.j + 1,
                    vector(&p.r),
                    p.mu,
                    p.beta,
                    p.tau,
                    vector(&p.c)
                );
                if let Some(h) = &p.helper {
                    let _ = writeln!(out, "          helper racks read {}", vector(h));
                }
                for m in 0..p.d.rows() {
                    let _ = writeln!(out, "          d[{}] = {}", m + 1, vector(p.d.row(m)));
                }
            }
        }
    }
    for c in node_costs {
        let _ = writeln!(
            out,
            "node {:>2}  theta_intra={} (bound {})  theta_inter={} (bound {})",
            c["node"],
            c["cost"]["theta_intra"],
            c["cost"]["bound_intra"],
            c["cost"]["theta_inter"],
            c["cost"]["bound_inter"]
        );
    }
    let _ = writeln!(
        out,
        "total     theta_intra={} (bound {})  theta_inter={} (bound {})",
        s.cost.theta_intra, s.cost.bound_intra, s.cost.theta_inter, s.cost.bound_inter
    );
    let _ = writeln!(out, "verified on {recovered}/{trials} codewords");
    out
}

pub fn certification(r: &CertificationReport) -> String {
    let mut out = String::new();
    for p in &r.properties {
        let verdict = match (p.active, p.passed) {
            (false, _) => "inactive",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        let _ = write!(out, "property {}  {:<24} {verdict}", p.property, p.name);
        if let Some(w) = &p.witness {
            let _ = write!(out, "  witness {}", serde_json::to_string(w).unwrap_or_default());
        }
        out.push('\n');
    }
    let _ = writeln!(out, "overall {}", if r.passed { "pass" } else { "FAIL" });
    out
}

pub fn enumerator(label: &str, t: &EnumeratorTable) -> String {
    let mut out = format!("{label}: N={} q={} total={}\n", t.n(), t.q(), t.total());
    let n = t.n();
    let bits = |m: u32| -> String { (0..n).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect() };
    for (w, s, c) in t.nonzero() {
        let _ = writeln!(out, "  {}  {}  {c}", bits(w), bits(s));
    }
    out
}

pub fn bound(b: &RateBound) -> String {
    let mut out = format!("N={} M={} L={} q={}\n", b.n, b.m, b.l, b.q);
    let _ = writeln!(out, "{:>3}  {:<12} {:<24} bound", "i", "status", "O*");
    for r in &b.rows {
        let status = format!("{:?}", r.status).to_lowercase();
        let o = r.o_star.as_ref().map_or("-".to_string(), ratio_string);
        let v = r.bound.map_or("-".to_string(), |v| format!("{v:.12}"));
        let agree = match r.agree {
            Some(false) => "  LP1/LP2 DIFFER",
            _ => "",
        };
        let _ = writeln!(out, "{:>3}  {:<12} {:<24} {v}{agree}", r.i, status, o);
    }
    match (b.best, b.best_i) {
        (Some(v), Some(i)) => {
            let _ = writeln!(out, "rate <= {v:.12} (at i={i})");
        }
        _ => out.push_str("no feasible i\n"),
    }
    out
}
