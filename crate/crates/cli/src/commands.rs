use std::fs;

use functidom::constructions::{
    avg_degree_dominating_set, class_degree_sum, consecutive5_dominating_set,
    distance_3k2_dominating_set, ex2_map, find_distance_violation, identity_dominating_set,
    max_degree_dominating_set, mod1_dominating_set, nonperm_3k2_dominating_set,
    realization_instance,
};
use functidom::domsolve::gamma_exact;
use functidom::functigraph::{build_functigraph, functigraph_label, ThreeTranslate, VertexMap};
use functidom::graphcore::{build_cycle, Graph, VertexSet};
use functidom::registry::TheoremId;
use functidom::suite::{run_criterion, CRITERIA_COUNT};
use functidom::theorems::{
    check_c3_constant, check_c4_permutation, check_cycle_identity, check_ex2, check_lemma_ui,
    check_lemma_ui_exhaustive, check_p5_remark, check_realization, check_remark_translate_bounds,
    check_three_translate_nonperm, check_three_translate_perm, enumerate_maps, gamma_cycle,
    map_at_index, map_descr, permutation_at_index, summary_verdict, MapFamily, TheoremVerdict,
    VerdictRecord,
};
use functidom::Error;
use serde::Serialize;

use crate::instance::parse_range;
use crate::output::{render_records, render_single, render_verdicts, Format};
use crate::{CliError, ConstructArgs, GammaArgs, Mode, ReportArgs, RunConfig, VerifyArgs};

fn labels(base_order: Option<usize>, set: &VertexSet) -> Vec<String> {
    match base_order {
        Some(n) => set.iter().map(|v| functigraph_label(n, v)).collect(),
        None => set.iter().map(|v| (v + 1).to_string()).collect(),
    }
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

#[derive(Serialize)]
struct GammaReport {
    instance: String,
    order: usize,
    gamma: usize,
    witness: Vec<String>,
    witness_indices: Vec<usize>,
    nodes_explored: u64,
}

pub fn cmd_gamma(args: &GammaArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let fallback = match (&args.map.tilde, args.k) {
        (Some(_), Some(k)) => Some(3 * k),
        _ => None,
    };
    let base = args.graph.build(fallback)?;
    let map = args.map.build(Some(base.order()), args.k, cfg.seed)?;
    let (graph, base_order, instance): (Graph, Option<usize>, String) = match &map {
        Some(f) => {
            let fg = build_functigraph(&base, f)?;
            (
                fg.graph().clone(),
                Some(base.order()),
                format!("order {} {}", base.order(), map_descr(f)),
            )
        }
        None => (base.clone(), None, format!("order {}", base.order())),
    };
    let r = gamma_exact(&graph, &cfg.budget)?;
    let report = GammaReport {
        instance,
        order: graph.order(),
        gamma: r.gamma,
        witness: labels(base_order, &r.witness),
        witness_indices: r.witness.to_vec(),
        nodes_explored: r.nodes_explored,
    };
    let fields = [
        ("instance", report.instance.clone()),
        ("gamma", report.gamma.to_string()),
        ("witness", braces(&report.witness)),
        ("nodes", report.nodes_explored.to_string()),
    ];
    print!("{}", render_single(&report, &fields, cfg.output_format));
    Ok(())
}

fn parse_id(s: &str) -> Result<TheoremId, CliError> {
    s.parse::<TheoremId>().map_err(|_| {
        let known: Vec<&str> = TheoremId::ALL.iter().map(|id| id.as_str()).collect();
        CliError::usage(format!("unknown id {s:?}; known: {}", known.join(", ")))
    })
}

fn range(flag: &Option<String>, default: &[usize]) -> Result<Vec<usize>, CliError> {
    match flag {
        Some(s) => parse_range(s).map_err(CliError::Usage),
        None => Ok(default.to_vec()),
    }
}

fn family(args: &VerifyArgs, cfg: &RunConfig, n: usize, default: Option<MapFamily>) -> MapFamily {
    match args.mode {
        Some(Mode::All) => MapFamily::All,
        Some(Mode::Permutations) => MapFamily::Permutations,
        Some(Mode::Sample) => MapFamily::Sample {
            seed: cfg.seed,
            count: args.count,
        },
        None => default.unwrap_or(if n <= 7 {
            MapFamily::All
        } else {
            MapFamily::Sample {
                seed: cfg.seed,
                count: args.count,
            }
        }),
    }
}

fn per_map(
    id: TheoremId,
    ns: &[usize],
    args: &VerifyArgs,
    cfg: &RunConfig,
    default: Option<MapFamily>,
    claim: impl Fn(usize) -> Option<usize>,
) -> Result<Vec<TheoremVerdict>, CliError> {
    ns.iter()
        .map(|&n| {
            let s = enumerate_maps(n, family(args, cfg, n, default), id, &cfg.budget)?;
            let mut v = summary_verdict(id, &s, claim(n));
            if let (Some(c), Some(max)) = (claim(n), s.max_gamma) {
                if matches!(
                    id,
                    TheoremId::Bounds | TheoremId::Mod1 | TheoremId::C5Exhaustive
                ) {
                    v.passed &= max <= c;
                }
            }
            Ok(v)
        })
        .collect()
}

fn verdicts_for(
    id: TheoremId,
    args: &VerifyArgs,
    cfg: &RunConfig,
) -> Result<Vec<TheoremVerdict>, CliError> {
    let budget = &cfg.budget;
    let n_or = |d: &[usize]| range(&args.n, d);
    let k_or = |d: &[usize]| range(&args.k, d);
    let collect =
        |it: Vec<functidom::Result<TheoremVerdict>>| -> Result<Vec<TheoremVerdict>, CliError> {
            it.into_iter().map(|r| r.map_err(CliError::from)).collect()
        };
    match id {
        TheoremId::Bounds => per_map(id, &n_or(&[3, 4, 5, 6])?, args, cfg, None, |n| {
            Some(2 * gamma_cycle(n))
        }),
        TheoremId::Gen => per_map(id, &n_or(&[3, 4, 5])?, args, cfg, None, |n| {
            Some(gamma_cycle(n))
        }),
        TheoremId::LbCycle => per_map(id, &n_or(&[3, 4, 5, 6])?, args, cfg, None, |n| {
            Some(gamma_cycle(n))
        }),
        TheoremId::Mod1 => per_map(id, &n_or(&[4, 7])?, args, cfg, None, |n| {
            Some(2 * (n / 3) + 1)
        }),
        TheoremId::C5Exhaustive => per_map(id, &n_or(&[5])?, args, cfg, None, |n| {
            Some(2 * gamma_cycle(n) - 1)
        }),
        TheoremId::NonPerm3k2 | TheoremId::Distance3k2 | TheoremId::Consecutive5 => {
            per_map(id, &n_or(&[5, 8])?, args, cfg, None, |n| {
                Some(2 * (n / 3) + 1)
            })
        }
        TheoremId::MaxDegree | TheoremId::AvgDegree => {
            per_map(id, &n_or(&[6, 9])?, args, cfg, None, |n| {
                Some(2 * (n / 3) - 1)
            })
        }
        TheoremId::PermStructure3k2 => per_map(
            id,
            &n_or(&[5, 8])?,
            args,
            cfg,
            Some(MapFamily::Permutations),
            |_| None,
        ),
        TheoremId::C3 => collect(
            (0..27)
                .map(|i| check_c3_constant(&map_at_index(3, i)))
                .collect(),
        ),
        TheoremId::C4Perm => collect(
            (0..24)
                .map(|i| check_c4_permutation(&permutation_at_index(4, i)))
                .collect(),
        ),
        TheoremId::CnId => collect(
            n_or(&(3..=20).collect::<Vec<_>>())?
                .into_iter()
                .map(|n| check_cycle_identity(n, budget))
                .collect(),
        ),
        TheoremId::Realization => {
            let mut out = Vec::new();
            for a in range(&args.a, &[1, 2, 3, 4])? {
                for i in 0..=a {
                    out.push(check_realization(a, i, budget)?);
                }
            }
            Ok(out)
        }
        TheoremId::LemmaUi => match &args.values {
            Some(list) => {
                let values = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|_| CliError::usage(format!("bad value {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(vec![check_lemma_ui(&values)?])
            }
            None => Ok(vec![check_lemma_ui_exhaustive(6, 16)?]),
        },
        TheoremId::TtPerm | TheoremId::TtNonPerm => {
            let mut out = Vec::new();
            for k in k_or(&[3, 4])? {
                for t in ThreeTranslate::all() {
                    match (id, t.is_permutation()) {
                        (TheoremId::TtPerm, true) => {
                            out.push(check_three_translate_perm(t, k, budget)?)
                        }
                        (TheoremId::TtNonPerm, false) => {
                            out.push(check_three_translate_nonperm(t, k, budget)?)
                        }
                        _ => {}
                    }
                }
            }
            Ok(out)
        }
        TheoremId::TtRemark => {
            let mut out = Vec::new();
            for k in k_or(&[1])? {
                for tilde in ["2,3,1", "3,1,2", "3,2,1"] {
                    out.push(check_remark_translate_bounds(
                        ThreeTranslate::parse(tilde)?,
                        k,
                        budget,
                    )?);
                }
            }
            Ok(out)
        }
        TheoremId::Ex2 => collect(
            k_or(&[1, 2, 3, 4, 5])?
                .into_iter()
                .map(|k| check_ex2(k, budget))
                .collect(),
        ),
        TheoremId::P5Remark => Ok(vec![check_p5_remark()?]),
    }
}

pub fn cmd_verify(args: &VerifyArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let id = parse_id(&args.id)?;
    let verdicts = verdicts_for(id, args, cfg)?;
    print!("{}", render_verdicts(&verdicts, cfg.output_format));
    if verdicts.iter().all(|v| v.passed) {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[derive(Serialize)]
struct ConstructReport {
    theorem_id: String,
    instance: String,
    witness: Vec<String>,
    witness_indices: Vec<usize>,
    size: usize,
    claimed_size: usize,
    dominating: bool,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::usage(format!("this construction needs {flag}")))
}

pub fn cmd_construct(args: &ConstructArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let id = parse_id(&args.id)?;
    let n = args.n.or(match (&args.map.tilde, args.k) {
        (Some(_), Some(k)) => Some(3 * k),
        _ => None,
    });
    let map = || -> Result<VertexMap, CliError> {
        args.map
            .build(n, args.k, cfg.seed)?
            .ok_or_else(|| CliError::usage("this construction needs a map (--map, --id, --const, --perm, --tilde, --map-random)"))
    };
    let (base, f, witness, instance) = match id {
        TheoremId::Realization => {
            let (a, i) = (need(args.a, "--a")?, need(args.i, "--i")?);
            let (g, f, w) = realization_instance(a, i)?;
            (g, f, w, format!("star chain a={a} i={i}"))
        }
        TheoremId::CnId => {
            let n = need(args.n, "--n")?;
            let f = functidom::functigraph::identity_map(n)?;
            (
                build_cycle(n)?,
                f,
                identity_dominating_set(n)?,
                format!("C{n} identity"),
            )
        }
        TheoremId::Ex2 => {
            let k = need(args.k, "--k")?;
            let f = ex2_map(k)?;
            let base = build_cycle(3 * k)?;
            let fg = build_functigraph(&base, &f)?;
            let r = gamma_exact(fg.graph(), &cfg.budget)?;
            let w = functidom::constructions::Witness {
                set: r.witness,
                claimed_size: 2 * k,
                theorem_id: id,
            };
            (base, f.clone(), w, format!("C{} {}", 3 * k, map_descr(&f)))
        }
        TheoremId::Mod1
        | TheoremId::NonPerm3k2
        | TheoremId::Consecutive5
        | TheoremId::MaxDegree
        | TheoremId::Distance3k2
        | TheoremId::AvgDegree => {
            let f = map()?;
            let w = match id {
                TheoremId::Mod1 => mod1_dominating_set(&f)?,
                TheoremId::NonPerm3k2 => nonperm_3k2_dominating_set(&f)?,
                TheoremId::Consecutive5 => consecutive5_dominating_set(&f)?,
                TheoremId::MaxDegree => max_degree_dominating_set(&f)?,
                TheoremId::Distance3k2 => {
                    let (x, y) = match (args.x, args.y) {
                        (Some(x), Some(y)) if x >= 1 && y >= 1 => (x - 1, y - 1),
                        (None, None) => find_distance_violation(&f).ok_or_else(|| {
                            Error::Precondition(
                                "no pair with distance 1 mod 3 maps off residue 1".into(),
                            )
                        })?,
                        _ => return Err(CliError::usage("give both --x and --y (1-based)")),
                    };
                    distance_3k2_dominating_set(&f, x, y, &cfg.budget)?
                }
                _ => {
                    let n = f.domain_size();
                    let class = match args.class {
                        Some(c) => c,
                        None => (1..=3)
                            .find(|&c| class_degree_sum(&f, c).is_ok_and(|s| s > 4 * (n / 3)))
                            .ok_or_else(|| {
                                Error::Precondition(
                                    "no residue class has average degree above 4".into(),
                                )
                            })?,
                    };
                    avg_degree_dominating_set(&f, class)?
                }
            };
            let base = build_cycle(f.domain_size())?;
            let instance = format!("C{} {}", f.domain_size(), map_descr(&f));
            (base, f, w, instance)
        }
        other => {
            return Err(CliError::usage(format!(
                "{other} has no explicit construction"
            )))
        }
    };
    let fg = build_functigraph(&base, &f)?;
    let dominating = fg.graph().is_dominating(&witness.set)?;
    let report = ConstructReport {
        theorem_id: id.to_string(),
        instance,
        witness: labels(Some(base.order()), &witness.set),
        witness_indices: witness.set.to_vec(),
        size: witness.set.len(),
        claimed_size: witness.claimed_size,
        dominating,
    };
    let fields = [
        ("construction", report.theorem_id.clone()),
        ("instance", report.instance.clone()),
        ("witness", braces(&report.witness)),
        ("size", report.size.to_string()),
        ("claimed", report.claimed_size.to_string()),
        (
            "dominating",
            if dominating { "yes" } else { "no" }.to_string(),
        ),
    ];
    print!("{}", render_single(&report, &fields, cfg.output_format));
    if dominating {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

pub fn cmd_report(args: &ReportArgs, cfg: &RunConfig) -> Result<(), CliError> {
    let format = match cfg.output_format {
        Format::Text => Format::Csv,
        f => f,
    };
    let numbers = parse_range(&args.criteria).map_err(CliError::Usage)?;
    if let Some(bad) = numbers.iter().find(|&&c| c == 0 || c > CRITERIA_COUNT) {
        return Err(CliError::usage(format!(
            "no criterion {bad}; criteria are 1..{CRITERIA_COUNT}"
        )));
    }
    let mut rows: Vec<VerdictRecord> = Vec::new();
    let mut criteria_passed = 0;
    let mut interrupted = None;
    for &c in &numbers {
        match run_criterion(c, &cfg.budget) {
            Ok(report) => {
                eprintln!("{}", report.line());
                criteria_passed += usize::from(report.passed());
                for v in &report.verdicts {
                    let mut r = v.to_record();
                    r.instance = format!("criterion {c}: {}", r.instance);
                    rows.push(r);
                }
            }
            Err(e) => {
                eprintln!("criterion {c:>2} interrupted: {e}");
                interrupted = Some((c, e));
                break;
            }
        }
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    let summary_instance = match &interrupted {
        Some((c, e)) => format!("interrupted at criterion {c}: {e}"),
        None => format!("{criteria_passed} of {} criteria passed", numbers.len()),
    };
    rows.push(VerdictRecord {
        theorem_id: "summary".into(),
        instance: summary_instance,
        claim: Some(rows.len()),
        observed: Some(failed),
        passed: interrupted.is_none() && failed == 0 && criteria_passed == numbers.len(),
        witness: Vec::new(),
    });
    let all_passed = rows.last().is_some_and(|r| r.passed);
    fs::write(&args.out, render_records(&rows, format)).map_err(|e| CliError::io(&args.out, e))?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    if let Some((_, e)) = interrupted {
        return Err(e.into());
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
