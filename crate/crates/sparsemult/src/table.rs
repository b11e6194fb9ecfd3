//! Plain-text rendering of an output document.

use std::fmt::Write;

use crate::document::OutputDocument;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn routes_cell(routes: &std::collections::BTreeMap<String, String>) -> String {
    if routes.is_empty() {
        return "-".into();
    }
    routes.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn render(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "sparsemult {} {}", doc.version, doc.command.name);
    if let Some(c) = &doc.conditions {
        let _ = write!(w, "H1 {}  H2 {}  H3 {}", yes_no(c.h1), yes_no(c.h2), yes_no(c.h3));
        if let Some(i) = &c.failing_i {
            let _ = write!(w, "  (H2 fails at I = {i})");
        }
        let _ = writeln!(w);
    }
    if let Some(m) = &doc.mult0 {
        let _ = writeln!(w, "mult0 = {}  M = {}  routes: {}", m.value, m.m, routes_cell(&m.routes));
    }
    if let Some(strata) = &doc.strata {
        let _ = writeln!(w, "{:<14} {:<14} {:>6} {:>6}  routes", "I", "J_I", "count", "mult");
        for r in strata {
            let _ = writeln!(
                w,
                "{:<14} {:<14} {:>6} {:>6}  {}",
                r.i,
                r.j,
                opt(r.count),
                opt(r.multiplicity),
                routes_cell(&r.routes)
            );
        }
    }
    if let Some(t) = &doc.totals {
        let _ = writeln!(
            w,
            "MV = {}  SM = {}  MV(A0) = {}  total with multiplicity = {}",
            t.mv, t.sm, t.mv_a0, t.total_with_multiplicity
        );
    }
    if let Some(o) = &doc.oracle {
        let _ = writeln!(w, "oracle: seed {}  bound {}  kmax {}  trials {}", o.seed, o.bound, o.kmax, o.trials);
        let _ = writeln!(w, "{:<14} {:>5} {:>20} {:>9}  verdict", "stratum", "trial", "seed", "resamples");
        for c in &o.checks {
            let _ = writeln!(w, "{:<14} {:>5} {:>20} {:>9}  {}", c.stratum, c.trial, c.seed, c.resamples, c.verdict);
        }
        let _ = writeln!(w, "{} matched, {} mismatched", o.matches, o.mismatches);
    }
    if let Some(e) = &doc.error {
        let _ = writeln!(w, "error: {e}");
    }
    let _ = writeln!(w, "exit status {}", doc.exit_status);
    out
}
