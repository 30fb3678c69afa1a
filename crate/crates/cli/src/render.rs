//! Human-readable tables for standard output.

use std::fmt::Write;

use crate::report::{
    LValueRow, LemmaVerdict, PolyRecord, RatioRow, SquarePlusOneReport, Verdict, VerificationReport,
};

fn poly_label(p: &PolyRecord) -> String {
    let mut s = String::from("n^2");
    if p.b != 0 {
        let _ = write!(s, "{:+}n", 2 * p.b);
    }
    if p.c != 0 {
        let _ = write!(s, "{:+}", p.c);
    }
    s
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "VIOLATED",
    }
}

pub fn bound(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "{}  (delta = {}, L(1,chi) = {:.10} +/- {:.1e})  {}",
            poly_label(&r.poly),
            r.poly.delta,
            r.l_value.value,
            r.l_value.error_radius,
            verdict(r.verdict)
        );
        let _ = writeln!(
            out,
            "  {:>10} {:>14} {:>18} {:>18} {:>8} {:>6}",
            "N", "exact", "bound", "margin", "ratio", "naive"
        );
        for p in &r.points {
            let _ = writeln!(
                out,
                "  {:>10} {:>14} {:>18.2} {:>18.2} {:>8.4} {:>6}",
                p.n,
                p.exact_sum,
                p.bound.total,
                p.margin,
                p.ratio_to_main_term,
                if p.cross_checked { "yes" } else { "-" }
            );
        }
    }
    out
}

pub fn square_plus_one(r: &SquarePlusOneReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sum tau(n^2+1) <= (3/pi) N log N + 3.0475 N + 1.3586 sqrt N   {}",
        verdict(r.verdict)
    );
    let _ = writeln!(
        out,
        "  exhaustive 1 <= N <= {}: min margin {:.4} at N = {}",
        r.exhaustive_limit, r.exhaustive_min_margin, r.exhaustive_min_margin_at
    );
    let _ = writeln!(
        out,
        "  {:>12} {:>16} {:>20} {:>18}",
        "N", "exact", "bound", "margin"
    );
    for p in &r.points {
        let _ = writeln!(
            out,
            "  {:>12} {:>16} {:>20.2} {:>18.2}",
            p.n, p.exact_sum, p.bound, p.margin
        );
    }
    out
}

pub fn lvalues(rows: &[LValueRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>6} {:>8} {:>14} {:>9} {:>9} {:>10}  match",
        "f(n)", "delta", "modulus", "L(1,chi)", "radius", "table", "deviation"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:>6} {:>8} {:>14.10} {:>9.1e} {:>9.4} {:>10.2e}  {}",
            poly_label(&r.poly),
            r.poly.delta,
            r.modulus,
            r.l_value.value,
            r.l_value.error_radius,
            r.reference,
            r.deviation,
            if r.matches { "yes" } else { "NO" }
        );
    }
    out
}

pub fn lemmas(verdicts: &[LemmaVerdict]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let _ = writeln!(
            out,
            "{:<8} {:<34} {} ({} cases): {}",
            verdict(v.verdict),
            v.lemma,
            v.scope,
            v.checked,
            v.detail
        );
    }
    out
}

pub fn ratios(rows: &[RatioRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>10} {:>14} {:>12} {:>10} {:>10}  in envelope",
        "f(n)", "N", "exact", "constant", "ratio", "envelope"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:>10} {:>14} {:>12.8} {:>10.6} {:>10.6}  {}",
            poly_label(&r.poly),
            r.n,
            r.exact_sum,
            r.asymptotic_constant.value,
            r.ratio,
            r.envelope,
            if r.within_envelope { "yes" } else { "no" }
        );
    }
    out
}
