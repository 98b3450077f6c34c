//! Human-readable rendering: character tables in lifted cyclotomic form,
//! classification reports, structural profiles, and verification summaries.

use crate::harness::{Outcome, VerificationReport};
use crate::monomial::{MonomialityReport, SuperMonomial};
use crate::structure::StructureProfile;
use crate::table::CharacterTable;
use crate::util::gcd;
use std::fmt::Write;

/// Renders `Σ m_k·ζ_e^k` with each power reduced to its minimal root order,
/// e.g. `[(0,1),(4,2)]` over `e = 12` as `1 + 2*z3`.
pub fn format_cyclotomic(entries: &[(u32, u64)], exponent: u64) -> String {
    if entries.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = entries
        .iter()
        .map(|&(k, m)| {
            if k == 0 {
                return m.to_string();
            }
            let g = gcd(k as u64, exponent);
            let base = exponent / g;
            let pow = k as u64 / g;
            let root = if pow == 1 {
                format!("z{base}")
            } else {
                format!("z{base}^{pow}")
            };
            if m == 1 {
                root
            } else {
                format!("{m}*{root}")
            }
        })
        .collect();
    terms.join(" + ")
}

pub fn format_table(table: &CharacterTable) -> String {
    let g = &table.group;
    let e = g.ctx.exponent;
    let r = g.num_classes();
    let mut columns: Vec<Vec<String>> = Vec::with_capacity(r + 1);
    let mut head = vec!["class".to_string(), "size".to_string(), "order".to_string()];
    head.extend(
        (0..table.irreducibles.len()).map(|i| format!("X.{}", i + 1)),
    );
    columns.push(head);
    for j in 0..r {
        let mut col = vec![
            format!("{}", j + 1),
            format!("{}", g.class_size(j)),
            format!("{}", g.element_orders[g.class_rep(j) as usize]),
        ];
        col.extend(
            table
                .irreducibles
                .iter()
                .map(|c| format_cyclotomic(&c.lifted[j], e)),
        );
        columns.push(col);
    }
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| c.iter().map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = format!("group of order {}, {} conjugacy classes\n", g.order, r);
    for row in 0..columns[0].len() {
        for (c, col) in columns.iter().enumerate() {
            let _ = write!(out, "{:>width$}  ", col[row], width = widths[c]);
        }
        out.pop();
        out.pop();
        out.push('\n');
        if row == 2 {
            let total: usize = widths.iter().map(|w| w + 2).sum();
            out.push_str(&"-".repeat(total.saturating_sub(2)));
            out.push('\n');
        }
    }
    out
}

pub fn format_monomiality(report: &MonomialityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", report.group.order);
    let _ = writeln!(out, "cd:  {:?}", report.cd);
    let _ = writeln!(out, "mcd: {:?}", report.mcd);
    let _ = writeln!(out, "M-group: {}", report.m_group);
    let _ = writeln!(out, "super M-group: {}", report.super_m_group);
    for (i, cr) in report.per_char.iter().enumerate() {
        let mono = match &cr.monomial {
            Some(w) => format!(
                "monomial (from subgroup of order {})",
                w.subgroup.order()
            ),
            None => "non-monomial".to_string(),
        };
        let sup = match &cr.super_monomial {
            SuperMonomial::Yes => "super-monomial".to_string(),
            SuperMonomial::No { subgroup, .. } => format!(
                "not super-monomial (non-monomial inducer on subgroup of order {})",
                subgroup.order()
            ),
        };
        let prim = if cr.primitive { "primitive" } else { "imprimitive" };
        let _ = writeln!(
            out,
            "X.{}: degree {}, {mono}, {prim}, {sup}",
            i + 1,
            cr.degree
        );
    }
    out
}

pub fn format_profile(p: &StructureProfile) -> String {
    let mut out = String::new();
    let fmt_opt = |v: Option<u32>| match v {
        Some(x) => x.to_string(),
        None => "none (not solvable)".to_string(),
    };
    let _ = writeln!(out, "derived length: {}", fmt_opt(p.derived_length));
    let _ = writeln!(out, "Fitting height: {}", fmt_opt(p.fitting_height));
    let _ = writeln!(
        out,
        "nilpotent: {}, supersolvable: {}, metabelian: {}",
        p.is_nilpotent, p.is_supersolvable, p.is_metabelian
    );
    for &(q, ok) in &p.normal_sylow {
        let comp = p
            .normal_p_complement
            .iter()
            .find(|&&(r, _)| r == q)
            .map(|&(_, c)| c)
            .unwrap_or(false);
        let _ = writeln!(
            out,
            "p = {q}: normal Sylow: {ok}, normal p-complement: {comp}"
        );
    }
    out
}

pub fn format_verification(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let fails = r.failures();
        let total = r.outcomes.len();
        let applicable = r.applicable();
        let _ = writeln!(out, "{}  {}", r.theorem.name(), r.statement);
        let _ = writeln!(
            out,
            "  pass {}, fail {}, not applicable {} (of {total} groups)",
            r.passes(),
            fails.len(),
            total - applicable
        );
        if applicable == 0 {
            let _ = writeln!(out, "  note: no group in this catalog satisfies the hypothesis");
        }
        for f in fails {
            if let Outcome::Fail(witness) = &f.outcome {
                let _ = writeln!(out, "  FAIL {}: {witness}", f.group);
            }
        }
    }
    let any_fail = reports.iter().any(|r| !r.failures().is_empty());
    let _ = writeln!(
        out,
        "overall: {}",
        if any_fail { "FAIL" } else { "all checks passed" }
    );
    out
}
