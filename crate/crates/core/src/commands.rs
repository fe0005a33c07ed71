//! The operations behind each command-line subcommand. Each returns a
//! [`Report`] and an exit code: 0 when everything checked holds, 1 when
//! something fails, 2 on bad input.

use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::autotopy::{enumerate_triples, triple_group_axioms, GroupAxioms, TripleKind};
use crate::enumerate::{
    canonical_key, enumerate_loops, enumerate_special, search_order, Sampling,
    EXHAUSTIVE_ORDER_CAP,
};
use crate::error::{Error, Result};
use crate::harness::{sweep, verify_many, Bounds, SweepReport, TheoremId};
use crate::identities::{check, PropertyId};
use crate::io::{key_string, parse_table_file, serialize_table, Report};
use crate::magma::Loop;
use crate::subloop::SpecialLoop;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Parses a table file into a special loop. `subloop` overrides the file's
/// subloop line; with neither, `H = G`.
pub fn load_special(text: &str, subloop: Option<&[usize]>) -> Result<SpecialLoop> {
    let file = parse_table_file(text)?;
    let l = Loop::new(file.table)?;
    match subloop.map(<[usize]>::to_vec).or(file.subloop) {
        Some(h) => SpecialLoop::new(l, &h),
        None => SpecialLoop::whole(l),
    }
}

fn join(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe(report: &mut Report, gh: &SpecialLoop) {
    report.push("order", gh.order());
    report.push("subloop", join(gh.subloop()));
    if let Ok(key) = canonical_key(gh.carrier()) {
        report.push("canonical_key", key_string(&key));
    }
}

struct Run {
    report: Report,
    start: Instant,
}

impl Run {
    fn new() -> Self {
        Run {
            report: Report::new(),
            start: Instant::now(),
        }
    }

    fn finish(mut self, exit_code: i32) -> Outcome {
        self.report
            .push(Report::TIMING_KEY, self.start.elapsed().as_millis());
        Outcome {
            report: self.report,
            exit_code,
        }
    }

    fn input_error(mut self, e: &Error) -> Outcome {
        self.report.push("error", e);
        self.finish(EXIT_INPUT)
    }
}

/// Checks `properties` (all of them when empty).
pub fn cmd_check(text: &str, subloop: Option<&[usize]>, properties: &[PropertyId]) -> Outcome {
    let mut run = Run::new();
    let gh = match load_special(text, subloop) {
        Ok(gh) => gh,
        Err(e) => return run.input_error(&e),
    };
    describe(&mut run.report, &gh);
    let selected = if properties.is_empty() {
        PropertyId::all()
    } else {
        properties.to_vec()
    };
    let mut all_hold = true;
    for p in selected {
        let r = check(&gh, p);
        let tag = p.tag();
        run.report
            .push(format!("property.{tag}"), if r.holds { "holds" } else { "fails" });
        if let Some(w) = r.witness {
            all_hold = false;
            run.report.push(format!("witness.{tag}"), w);
        }
    }
    run.finish(if all_hold { EXIT_OK } else { EXIT_FAILED })
}

fn describe_axioms(g: &GroupAxioms) -> String {
    if g.is_group() {
        return "group".to_string();
    }
    let mut missing = Vec::new();
    if !g.contains_identity {
        missing.push("identity");
    }
    if !g.closed_under_composition() {
        missing.push("composition");
    }
    if !g.closed_under_inverse() {
        missing.push("inverse");
    }
    format!("fails {}", missing.join(" "))
}

/// Enumerates the triples of each kind, with counts and group axioms.
pub fn cmd_autotopisms(
    text: &str,
    subloop: Option<&[usize]>,
    kinds: &[TripleKind],
    list: bool,
) -> Outcome {
    let mut run = Run::new();
    let gh = match load_special(text, subloop) {
        Ok(gh) => gh,
        Err(e) => return run.input_error(&e),
    };
    describe(&mut run.report, &gh);
    let mut all_groups = true;
    for &kind in kinds {
        let set = match enumerate_triples(&gh, kind) {
            Ok(set) => set,
            Err(e) => return run.input_error(&e),
        };
        let axioms = triple_group_axioms(&set);
        all_groups &= axioms.is_group();
        run.report.push(format!("count.{kind}"), set.len());
        run.report.push(format!("group.{kind}"), describe_axioms(&axioms));
        if list {
            for (i, t) in set.iter().enumerate() {
                run.report
                    .push(format!("triple.{kind}.{}", i + 1), format!("{} {} {}", t.u, t.v, t.w));
            }
        }
    }
    run.finish(if all_groups { EXIT_OK } else { EXIT_FAILED })
}

/// Verifies `tags` (all of them when empty).
pub fn cmd_verify(
    text: &str,
    subloop: Option<&[usize]>,
    tags: &[TheoremId],
    bounds: Bounds,
) -> Outcome {
    let mut run = Run::new();
    let gh = match load_special(text, subloop) {
        Ok(gh) => gh,
        Err(e) => return run.input_error(&e),
    };
    describe(&mut run.report, &gh);
    let tags = if tags.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        tags.to_vec()
    };
    let verdicts = match verify_many(&gh, &tags, bounds) {
        Ok(v) => v,
        Err(e) => return run.input_error(&e),
    };
    let mut failed = false;
    for v in verdicts {
        let tag = v.theorem.tag();
        run.report.push(format!("theorem.{tag}"), v.outcome());
        if let Some(cx) = &v.counterexample {
            failed = true;
            run.report.push(format!("witness.{tag}"), cx);
        }
        if let Some(t) = &v.exhibit {
            run.report.push(format!("exhibit.{tag}"), t);
        }
        if let Some(o) = &v.observation {
            run.report.push(format!("observation.{tag}"), o);
        }
        for (k, n) in &v.stats {
            run.report.push(format!("stats.{tag}.{k}"), n);
        }
    }
    run.finish(if failed { EXIT_FAILED } else { EXIT_OK })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerateFilter {
    All,
    S2blNotBol,
}

impl std::str::FromStr for EnumerateFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(EnumerateFilter::All),
            "s2bl-not-bol" => Ok(EnumerateFilter::S2blNotBol),
            _ => Err(Error::UnsupportedProperty(s.to_string())),
        }
    }
}

fn write_numbered(dir: &Path, prefix: &str, seq: usize, contents: &str) -> Result<()> {
    let path = dir.join(format!("{prefix}-{seq:06}.txt"));
    fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Enumerates loops of `order`, or searches them for non-Bol findings, and
/// writes one table file per result into `out` when given.
pub fn cmd_enumerate(
    order: usize,
    filter: EnumerateFilter,
    out: Option<&Path>,
    sampling: Sampling,
) -> Outcome {
    let mut run = Run::new();
    if let Some(dir) = out {
        if let Err(e) = fs::create_dir_all(dir) {
            return run.input_error(&Error::Io(format!("{}: {e}", dir.display())));
        }
    }
    run.report.push("order", order);
    match filter {
        EnumerateFilter::All => {
            run.report.push("filter", "all");
            let cursor = match enumerate_loops(order) {
                Ok(c) => c,
                Err(e) => return run.input_error(&e),
            };
            let mut count = 0;
            for l in cursor {
                count += 1;
                if let Some(dir) = out {
                    let text = serialize_table(l.table(), None, &[]);
                    if let Err(e) = write_numbered(dir, "loop", count, &text) {
                        return run.input_error(&e);
                    }
                }
            }
            run.report.push("count.loops", count);
        }
        EnumerateFilter::S2blNotBol => {
            run.report.push("filter", "s2bl-not-bol");
            if order == 0 {
                return run.input_error(&Error::ZeroOrder);
            }
            let outcome = search_order(order, sampling);
            run.report.push("exhaustive", outcome.exhaustive);
            if !outcome.exhaustive {
                run.report.push("seed", sampling.seed);
            }
            run.report.push("count.loops", outcome.loops_examined);
            run.report.push("count.pairs", outcome.pairs_examined);
            run.report.push("count.findings", outcome.findings.len());
            for (i, f) in outcome.findings.iter().enumerate() {
                let seq = i + 1;
                let flags = join(
                    f.flags
                        .iter()
                        .map(|(p, b)| format!("{}={}", p.tag(), *b as u8)),
                );
                run.report.push(
                    format!("finding.{seq}"),
                    format!(
                        "{} subloop {}",
                        key_string(f.special.carrier().table().entries()),
                        join(f.special.subloop())
                    ),
                );
                if let Some(dir) = out {
                    let comments = vec![
                        format!("finding {seq} of order {order}"),
                        format!("flags {flags}"),
                    ];
                    let text = serialize_table(
                        f.special.carrier().table(),
                        Some(f.special.subloop()),
                        &comments,
                    );
                    if let Err(e) = write_numbered(dir, "finding", seq, &text) {
                        return run.input_error(&e);
                    }
                }
            }
        }
    }
    run.finish(EXIT_OK)
}

/// All special loops of orders `1..=max_order` with `|H| ≥ 2`, in
/// enumeration order.
pub fn special_corpus(max_order: usize) -> Result<Vec<SpecialLoop>> {
    if max_order > EXHAUSTIVE_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            order: max_order,
            limit: EXHAUSTIVE_ORDER_CAP,
        });
    }
    let mut corpus = Vec::new();
    for n in 1..=max_order {
        corpus.extend(enumerate_special(n, 2)?);
    }
    Ok(corpus)
}

/// Renders a sweep as report lines.
pub fn sweep_lines(report: &mut Report, corpus: &[SpecialLoop], r: &SweepReport) {
    report.push("corpus", r.corpus_size);
    for (tag, t) in &r.tallies {
        if tag.is_observation() {
            report.push(format!("tally.{tag}"), format!("observed {}", t.observed));
        } else {
            report.push(
                format!("tally.{tag}"),
                format!(
                    "applicable {} held {} failed {} not-applicable {}",
                    t.applicable, t.held, t.failed, t.not_applicable
                ),
            );
        }
    }
    for (k, n) in &r.observations {
        report.push(format!("observation.{k}"), n);
    }
    for (i, (index, v)) in r.failures.iter().enumerate() {
        let gh = &corpus[*index];
        let cx = v.counterexample.as_ref().map(ToString::to_string);
        report.push(
            format!("failure.{}", i + 1),
            format!(
                "{} at {} ({} subloop {}): {}",
                v.theorem,
                index,
                key_string(gh.carrier().table().entries()),
                join(gh.subloop()),
                cx.unwrap_or_default()
            ),
        );
    }
    if let Some(found) = &r.non_containment {
        let line = match found {
            Some(nc) => {
                let gh = &corpus[nc.index];
                format!(
                    "found at {} ({} subloop {}): {}",
                    nc.index,
                    key_string(gh.carrier().table().entries()),
                    join(gh.subloop()),
                    nc.triple
                )
            }
            None => "none".to_string(),
        };
        report.push("non_containment", line);
    }
    if r.tags.contains(&TheoremId::NonBolWitness) {
        report.push("count.non_bol", r.non_bol.len());
    }
}

/// Verifies `tags` (all when empty) on every special loop of order at most
/// `max_order`.
pub fn cmd_sweep(max_order: usize, tags: &[TheoremId], bounds: Bounds) -> Outcome {
    let mut run = Run::new();
    let corpus = match special_corpus(max_order) {
        Ok(c) => c,
        Err(e) => return run.input_error(&e),
    };
    let tags = if tags.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        tags.to_vec()
    };
    run.report.push("max_order", max_order);
    let r = match sweep(&corpus, &tags, bounds) {
        Ok(r) => r,
        Err(e) => return run.input_error(&e),
    };
    sweep_lines(&mut run.report, &corpus, &r);
    let code = if r.total_failures() == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    run.finish(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: &str = "order 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\nsubloop 0 2\n";
    const ORDER5: &str = "order 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";

    #[test]
    fn check_group_holds() {
        let o = cmd_check(Z4, None, &[]);
        assert_eq!(o.exit_code, EXIT_OK);
        assert_eq!(o.report.get("subloop"), Some("0 2"));
        assert_eq!(o.report.get("property.S2_BOL"), Some("holds"));
    }

    #[test]
    fn check_non_bol_fails_with_witness() {
        let o = cmd_check(ORDER5, None, &[PropertyId::Bol]);
        assert_eq!(o.exit_code, EXIT_FAILED);
        assert!(o.report.get("witness.BOL").unwrap().starts_with("RightBol"));
    }

    #[test]
    fn malformed_input() {
        let o = cmd_check("order 2\n0 1\n", None, &[]);
        assert_eq!(o.exit_code, EXIT_INPUT);
        assert_eq!(o.report.get("error"), Some("line 3: expected 2 rows"));
        let o = cmd_check("order 2\n0 1\n0 1\n", None, &[]);
        assert_eq!(o.exit_code, EXIT_INPUT);
        let o = cmd_check(Z4, Some(&[0, 1]), &[]);
        assert_eq!(o.exit_code, EXIT_INPUT);
    }

    #[test]
    fn subloop_override_and_default() {
        let o = cmd_check(Z4, Some(&[0, 1, 2, 3]), &[]);
        assert_eq!(o.report.get("subloop"), Some("0 1 2 3"));
        let o = cmd_check(ORDER5, None, &[]);
        assert_eq!(o.report.get("subloop"), Some("0 1 2 3 4"));
    }

    #[test]
    fn autotopism_counts() {
        let o = cmd_autotopisms(Z4, None, &[TripleKind::Full, TripleKind::Right], true);
        assert_eq!(o.exit_code, EXIT_OK);
        let full: usize = o.report.get("count.full").unwrap().parse().unwrap();
        let right: usize = o.report.get("count.right").unwrap().parse().unwrap();
        assert!(right > full);
        assert_eq!(o.report.get("group.full"), Some("group"));
        assert_eq!(o.report.with_prefix("triple.full.").count(), full);
    }

    #[test]
    fn verify_group() {
        let o = cmd_verify(Z4, None, &[], Bounds::default());
        assert_eq!(o.exit_code, EXIT_OK);
        assert_eq!(o.report.get("theorem.T1_4"), Some("holds"));
        assert_eq!(o.report.get("theorem.Q1"), Some("observed"));
        let o = cmd_verify(ORDER5, None, &[TheoremId::InverseAndAlternative], Bounds::default());
        assert_eq!(o.report.get("theorem.T1_4"), Some("not-applicable"));
        assert_eq!(o.exit_code, EXIT_OK);
    }

    #[test]
    fn enumerate_counts() {
        let o = cmd_enumerate(3, EnumerateFilter::All, None, Sampling::default());
        assert_eq!(o.report.get("count.loops"), Some("1"));
        let o = cmd_enumerate(4, EnumerateFilter::S2blNotBol, None, Sampling::default());
        assert_eq!(o.report.get("count.findings"), Some("0"));
        assert_eq!(o.report.get("exhaustive"), Some("true"));
        let o = cmd_enumerate(8, EnumerateFilter::All, None, Sampling::default());
        assert_eq!(o.exit_code, EXIT_INPUT);
    }

    #[test]
    fn small_sweep() {
        let o = cmd_sweep(4, &[], Bounds::default());
        assert_eq!(o.exit_code, EXIT_OK);
        assert!(o.report.get("non_containment").unwrap().starts_with("found"));
        assert_eq!(o.report.get("count.non_bol"), Some("0"));
    }
}
