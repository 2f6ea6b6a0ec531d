//! Command-line driver for the verification toolkit.
//!
//! Exit codes: 0 every computed row agrees with its prediction, 1 at least
//! one disagreement, 2 no disagreement but some rows were skipped by the
//! size caps, 3 usage or internal errors.

mod cache;
mod emit;
mod record;
mod runner;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use std::path::PathBuf;

use cache::Cache;
use emit::{Format, Sink};
use record::*;
use runner::{timed, Xorshift64};

use gelfand_core::dn_model::{verify_dn_theorem, DN_MODEL_MAX_RANK};
use gelfand_core::hypothesis::{
    analyze_node, cross_check_config, skipped_row, sweep_config, verify_subgroup,
    predicted_h_multiplicity_free, SubgroupKind, VerdictRow,
};
use gelfand_core::rootsys::{build_root_system, reference_highest_root, RootType};
use gelfand_core::weyl_affine::{known_weyl_order, NodeData, WeylGroup};
use gelfand_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "gelfand",
    version,
    about = "Builds subgroup lattices in finite quotients of affine Weyl groups \
             and checks multiplicity-freeness verdicts against the classified tables."
)]
struct Cli {
    /// Output format for stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,

    /// Also write every result of the run to this file as JSON lines.
    #[arg(long, global = true)]
    records: Option<PathBuf>,

    /// Cache directory; overrides the GELFAND_CACHE_DIR environment variable.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Print per-row wall-clock timings to stderr.
    #[arg(long, global = true)]
    timings: bool,

    /// Seed for sampled cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print highest-root coefficients and compare with the reference table.
    Roots {
        /// Types like "A3" or "A 3"; all tabulated types when omitted.
        spec: Vec<String>,
    },
    /// Run the full pipeline for a single (type, node, modulus, subgroup).
    Verify {
        /// Type, node and modulus: e.g. "A 3 2 3" or "A3 2 3".
        spec: Vec<String>,
        /// Which subgroup's induced character to test: H, K, P or Q.
        #[arg(long, default_value = "K")]
        subgroup: String,
    },
    /// Sweep every node of a type across moduli and compare with the tables.
    Classify {
        /// One or more types, e.g. "D 6" or "G2".
        spec: Vec<String>,
        /// Moduli to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u32, 4, 5])]
        h: Vec<u32>,
        /// Additionally cross-check this many sampled rows against a direct
        /// enumeration of the full quotient group.
        #[arg(long, default_value_t = 0)]
        self_check: usize,
    },
    /// Per-node structural analysis inside the finite reflection group.
    Hypothesis {
        /// One or more types.
        spec: Vec<String>,
        /// Restrict to a single node.
        #[arg(long)]
        node: Option<usize>,
    },
    /// Verify the even signed-permutation model for rank n, middle nodes.
    Dn {
        n: usize,
        /// Single node; all nodes with n/2 < k < n-1 when omitted.
        k: Option<usize>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cache = Cache::new(cli.cache_dir.clone());
    let mut sink = Sink::new(cli.format, cli.records.clone());
    let code = match &cli.command {
        Command::Roots { spec } => cmd_roots(&cli, &mut sink, spec)?,
        Command::Verify { spec, subgroup } => cmd_verify(&cli, &cache, &mut sink, spec, subgroup)?,
        Command::Classify {
            spec,
            h,
            self_check,
        } => cmd_classify(&cli, &cache, &mut sink, spec, h, *self_check)?,
        Command::Hypothesis { spec, node } => cmd_hypothesis(&cli, &mut sink, spec, *node)?,
        Command::Dn { n, k } => cmd_dn(&cli, &cache, &mut sink, *n, *k)?,
    };
    sink.finish()?;
    Ok(code)
}

/// Greedy type parsing: either a fused label ("A3", "g2") or a bare family
/// letter followed by a rank token ("A 3").
fn parse_types(tokens: &[String]) -> Result<Vec<RootType>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.len() == 1 && t.chars().next().unwrap().is_ascii_alphabetic() {
            let Some(rank_tok) = tokens.get(i + 1) else {
                bail!("family {t:?} needs a rank argument");
            };
            let rank: usize = rank_tok
                .parse()
                .with_context(|| format!("bad rank {rank_tok:?} after family {t:?}"))?;
            out.push(RootType::from_family_rank(t.chars().next().unwrap(), rank)?);
            i += 2;
        } else {
            out.push(RootType::parse(t)?);
            i += 1;
        }
    }
    Ok(out)
}

/// One type followed by exactly `extra` numeric arguments.
fn parse_type_and_numbers(tokens: &[String], extra: usize) -> Result<(RootType, Vec<u64>)> {
    let consumed = {
        let t = tokens
            .first()
            .ok_or_else(|| anyhow::anyhow!("missing type argument"))?;
        if t.len() == 1 && t.chars().next().unwrap().is_ascii_alphabetic() {
            2
        } else {
            1
        }
    };
    if tokens.len() != consumed + extra {
        bail!(
            "expected a type followed by {extra} numbers, got {} arguments",
            tokens.len()
        );
    }
    let rt = parse_types(&tokens[..consumed])?
        .pop()
        .expect("one type parsed");
    let mut nums = Vec::with_capacity(extra);
    for t in &tokens[consumed..] {
        nums.push(
            t.parse::<u64>()
                .with_context(|| format!("bad numeric argument {t:?}"))?,
        );
    }
    Ok((rt, nums))
}

/// Errors that mark a row as skipped rather than failing the run.
fn is_skip(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::Unsupported(_)
            | CoreError::OrderCapExceeded { .. }
            | CoreError::DegreeCapExceeded { .. }
    )
}

fn default_roots_sweep() -> Vec<RootType> {
    let mut v = Vec::new();
    for n in 1..=7 {
        v.push(RootType::A(n));
    }
    for n in 2..=6 {
        v.push(RootType::B(n));
    }
    for n in 2..=6 {
        v.push(RootType::C(n));
    }
    for n in 4..=7 {
        v.push(RootType::D(n));
    }
    v.extend([
        RootType::E6,
        RootType::E7,
        RootType::E8,
        RootType::F4,
        RootType::G2,
    ]);
    v
}

fn cmd_roots(cli: &Cli, sink: &mut Sink, spec: &[String]) -> Result<i32> {
    let types = if spec.is_empty() {
        default_roots_sweep()
    } else {
        parse_types(spec)?
    };
    let mut rows = Vec::new();
    let mut all_match = true;
    for rt in types {
        let rs = timed(cli.timings, &format!("roots {}", rt.label()), || {
            build_root_system(rt)
        })?;
        let coefficients = rs.highest_root().root.clone();
        let reference = reference_highest_root(rt);
        let matches = coefficients == reference;
        all_match &= matches;
        rows.push(RootsRecord {
            schema: SCHEMA_VERSION,
            command: "roots".into(),
            type_label: rt.label(),
            rank: rt.rank() as u8,
            coefficients,
            reference,
            matches,
        });
    }
    sink.push_table("roots", &rows)?;
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_verify(
    cli: &Cli,
    cache: &Cache,
    sink: &mut Sink,
    spec: &[String],
    subgroup: &str,
) -> Result<i32> {
    let (rt, nums) = parse_type_and_numbers(spec, 2)?;
    let (k, h) = (nums[0] as usize, nums[1] as u32);
    let sg = SubgroupKind::parse(subgroup)?;
    let label = rt.label();
    let key = Cache::key(&[
        "verify",
        &label,
        &k.to_string(),
        &h.to_string(),
        sg.label(),
    ]);

    let rec: VerifyRecord = if let Some(hit) = cache.load::<VerifyRecord>(&key) {
        if cli.timings {
            eprintln!("[time] verify {label} k={k} h={h} {}: cache hit", sg.label());
        }
        hit
    } else {
        let computed = timed(
            cli.timings,
            &format!("verify {label} k={k} h={h} {}", sg.label()),
            || verify_subgroup(rt, k, h, sg),
        );
        let rec = match computed {
            Ok(v) => VerifyRecord {
                schema: SCHEMA_VERSION,
                command: "verify".into(),
                type_label: label.clone(),
                k,
                h,
                subgroup: sg,
                row: v.row,
                analysis: Some(v.analysis),
                config: v.config,
            },
            Err(e) if is_skip(&e) => VerifyRecord {
                schema: SCHEMA_VERSION,
                command: "verify".into(),
                type_label: label.clone(),
                k,
                h,
                subgroup: sg,
                row: skipped_row(rt, k, h, sg, &e),
                analysis: None,
                config: None,
            },
            Err(e) => return Err(e.into()),
        };
        if rec.row.skipped.is_none() {
            cache.store(&key, &["verify", &label, &k.to_string(), &h.to_string(), sg.label()], &rec);
        }
        rec
    };

    let mut outcome = Outcome::default();
    outcome.absorb_row(&rec.row);
    sink.push_table(
        &format!("verify {label} k={k} h={h} subgroup={}", sg.label()),
        &[rec],
    )?;
    Ok(outcome.exit_code())
}

struct ClassifyUnit {
    rt: RootType,
    k: usize,
    h: u32,
}

fn classify_unit_rows(
    cli: &Cli,
    cache: &Cache,
    weyl: Option<&WeylGroup>,
    node: Option<&NodeData>,
    unit: &ClassifyUnit,
    weyl_err: Option<&CoreError>,
) -> Result<Vec<ClassifyRecord>> {
    let label = unit.rt.label();
    let wrap = |row: VerdictRow| ClassifyRecord {
        schema: SCHEMA_VERSION,
        command: "classify".into(),
        type_label: label.clone(),
        row,
    };
    let skip_pair = |e: &CoreError| {
        vec![
            wrap(skipped_row(unit.rt, unit.k, unit.h, SubgroupKind::K, e)),
            wrap(skipped_row(unit.rt, unit.k, unit.h, SubgroupKind::H, e)),
        ]
    };
    if let Some(e) = weyl_err {
        return Ok(skip_pair(e));
    }
    let (weyl, node) = (weyl.expect("weyl built"), node.expect("node built"));
    let tag = format!("classify {label} k={} h={}", unit.k, unit.h);
    match timed(cli.timings, &tag, || sweep_config(weyl, node, unit.h)) {
        Ok(report) => {
            let rows = vec![
                wrap(VerdictRow {
                    root_type: unit.rt,
                    k: unit.k,
                    h: unit.h,
                    subgroup: SubgroupKind::K,
                    multiplicity_free: Some(report.stabilizer_side.commutative),
                    scheme_rank: Some(report.stabilizer_side.rank),
                    symmetric: Some(report.stabilizer_side.symmetric),
                    predicted: report.predicted,
                    agreement: Some(report.stabilizer_side.commutative == report.predicted),
                    skipped: None,
                }),
                wrap(VerdictRow {
                    root_type: unit.rt,
                    k: unit.k,
                    h: unit.h,
                    subgroup: SubgroupKind::H,
                    multiplicity_free: Some(report.parabolic_side.commutative),
                    scheme_rank: Some(report.parabolic_side.rank),
                    symmetric: Some(report.parabolic_side.symmetric),
                    predicted: predicted_h_multiplicity_free(unit.rt, unit.k, node.qp_index()),
                    agreement: Some(
                        report.parabolic_side.commutative
                            == predicted_h_multiplicity_free(unit.rt, unit.k, node.qp_index()),
                    ),
                    skipped: None,
                }),
            ];
            let key = classify_key(unit);
            cache.store(
                &key,
                &[
                    "classify",
                    &label,
                    &unit.k.to_string(),
                    &unit.h.to_string(),
                ],
                &rows,
            );
            Ok(rows)
        }
        Err(e) if is_skip(&e) => Ok(skip_pair(&e)),
        Err(e) => Err(e.into()),
    }
}

fn classify_key(unit: &ClassifyUnit) -> String {
    Cache::key(&[
        "classify",
        &unit.rt.label(),
        &unit.k.to_string(),
        &unit.h.to_string(),
    ])
}

fn cmd_classify(
    cli: &Cli,
    cache: &Cache,
    sink: &mut Sink,
    spec: &[String],
    h_list: &[u32],
    self_check: usize,
) -> Result<i32> {
    if spec.is_empty() {
        bail!("classify needs at least one type argument");
    }
    if let Some(&bad) = h_list.iter().find(|&&h| h < 2) {
        bail!("modulus {bad} is below 2");
    }
    let types = parse_types(spec)?;
    let mut outcome = Outcome::default();
    let mut all_rows: Vec<ClassifyRecord> = Vec::new();
    // weyl groups kept for the self-check pass
    let mut built: Vec<(RootType, WeylGroup)> = Vec::new();

    for &rt in &types {
        let rank = rt.rank();
        let units: Vec<ClassifyUnit> = (1..=rank)
            .flat_map(|k| h_list.iter().map(move |&h| ClassifyUnit { rt, k, h }))
            .collect();

        // serve what the cache already has
        let mut cached: Vec<Option<Vec<ClassifyRecord>>> = units
            .iter()
            .map(|u| cache.load::<Vec<ClassifyRecord>>(&classify_key(u)))
            .collect();
        if cli.timings {
            for (u, c) in units.iter().zip(&cached) {
                if c.is_some() {
                    eprintln!("[time] classify {} k={} h={}: cache hit", rt.label(), u.k, u.h);
                }
            }
        }

        if cached.iter().any(|c| c.is_none()) {
            match WeylGroup::new(rt) {
                Ok(weyl) => {
                    let nodes: Vec<std::result::Result<NodeData, CoreError>> =
                        (1..=rank).map(|k| weyl.node_data(k)).collect();
                    let fresh: Vec<(usize, Result<Vec<ClassifyRecord>>)> = units
                        .par_iter()
                        .enumerate()
                        .filter(|(i, _)| cached[*i].is_none())
                        .map(|(i, u)| {
                            let rows = match &nodes[u.k - 1] {
                                Ok(node) => {
                                    classify_unit_rows(cli, cache, Some(&weyl), Some(node), u, None)
                                }
                                Err(e) => classify_unit_rows(cli, cache, None, None, u, Some(e)),
                            };
                            (i, rows)
                        })
                        .collect();
                    for (i, rows) in fresh {
                        cached[i] = Some(rows?);
                    }
                    built.push((rt, weyl));
                }
                Err(e) if is_skip(&e) => {
                    for (i, u) in units.iter().enumerate() {
                        if cached[i].is_none() {
                            cached[i] =
                                Some(classify_unit_rows(cli, cache, None, None, u, Some(&e))?);
                        }
                    }
                }
                Err(e) => return Err(e.into()),
            }
        } else if self_check > 0 {
            // cache covered everything, but the self-check still needs the group
            if let Ok(weyl) = WeylGroup::new(rt) {
                built.push((rt, weyl));
            }
        }

        for rows in cached.into_iter().flatten() {
            for r in &rows {
                outcome.absorb_row(&r.row);
            }
            all_rows.extend(rows);
        }
    }

    let title = format!(
        "classify {} h={}",
        types
            .iter()
            .map(|t| t.label())
            .collect::<Vec<_>>()
            .join(","),
        h_list
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    sink.push_table(&title, &all_rows)?;

    if self_check > 0 {
        let checks = run_self_checks(cli, &built, h_list, self_check)?;
        for c in &checks {
            if !(c.consistent && c.norm_matches_double_cosets) {
                outcome.disagreement = true;
            }
        }
        sink.push_table("self-check", &checks)?;
    }

    if cli.format == Format::Markdown {
        let skipped = all_rows.iter().filter(|r| r.row.skipped.is_some()).count();
        let disagreements = all_rows
            .iter()
            .filter(|r| r.row.agreement == Some(false))
            .count();
        println!(
            "{} rows, {} disagreements, {} skipped",
            all_rows.len(),
            disagreements,
            skipped
        );
    }
    Ok(outcome.exit_code())
}

/// Direct-enumeration budget: the whole quotient group must stay this small.
const SELF_CHECK_ORDER_CAP: u64 = 100_000;

fn run_self_checks(
    cli: &Cli,
    built: &[(RootType, WeylGroup)],
    h_list: &[u32],
    want: usize,
) -> Result<Vec<SelfCheckRecord>> {
    let mut eligible: Vec<(usize, usize, u32)> = Vec::new(); // (weyl idx, k, h)
    for (wi, (rt, _)) in built.iter().enumerate() {
        let rank = rt.rank();
        for k in 1..=rank {
            for &h in h_list {
                let order = known_weyl_order(*rt) as u128 * (h as u128).pow(rank as u32);
                if order <= SELF_CHECK_ORDER_CAP as u128 {
                    eligible.push((wi, k, h));
                }
            }
        }
    }
    let mut rng = Xorshift64::new(cli.seed);
    let picks = rng.sample_indices(eligible.len(), want);
    let chosen: Vec<(usize, usize, u32)> = picks.into_iter().map(|i| eligible[i]).collect();

    let results: Vec<Result<SelfCheckRecord>> = chosen
        .par_iter()
        .map(|&(wi, k, h)| {
            let (rt, weyl) = &built[wi];
            let node = weyl.node_data(k)?;
            let tag = format!("self-check {} k={k} h={h}", rt.label());
            let check = timed(cli.timings, &tag, || {
                cross_check_config(weyl, &node, h, SELF_CHECK_ORDER_CAP as usize + 1)
            })?;
            Ok(SelfCheckRecord {
                schema: SCHEMA_VERSION,
                command: "self-check".into(),
                type_label: rt.label(),
                k,
                h,
                quotient_order: check.quotient_order,
                consistent: check.stabilizer_consistent && check.parabolic_consistent,
                norm_matches_double_cosets: check.norm_matches_double_cosets,
            })
        })
        .collect();
    results.into_iter().collect()
}

fn cmd_hypothesis(
    cli: &Cli,
    sink: &mut Sink,
    spec: &[String],
    node: Option<usize>,
) -> Result<i32> {
    if spec.is_empty() {
        bail!("hypothesis needs at least one type argument");
    }
    let types = parse_types(spec)?;
    let mut outcome = Outcome::default();
    let mut rows = Vec::new();
    for rt in types {
        let label = rt.label();
        let weyl = match WeylGroup::new(rt) {
            Ok(w) => w,
            Err(e) if is_skip(&e) => {
                eprintln!("skipping {label}: {e}");
                outcome.skipped = true;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let nodes: Vec<usize> = match node {
            Some(k) => vec![k],
            None => (1..=rt.rank()).collect(),
        };
        for k in nodes {
            let nd = weyl.node_data(k)?;
            let analysis = timed(cli.timings, &format!("hypothesis {label} k={k}"), || {
                analyze_node(&weyl, &nd)
            })?;
            if analysis.q_commutative != analysis.predicted_q
                || analysis.p_commutative != analysis.predicted_p
            {
                outcome.disagreement = true;
            }
            rows.push(HypothesisRecord {
                schema: SCHEMA_VERSION,
                command: "hypothesis".into(),
                type_label: label.clone(),
                analysis,
            });
        }
    }
    sink.push_table("hypothesis", &rows)?;
    Ok(outcome.exit_code())
}

fn cmd_dn(cli: &Cli, cache: &Cache, sink: &mut Sink, n: usize, k: Option<usize>) -> Result<i32> {
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..n)
            .filter(|&k| 2 * k > n && k + 1 < n)
            .collect(),
    };
    let mut outcome = Outcome::default();
    if ks.is_empty() {
        eprintln!("no nodes with n/2 < k < n-1 for n={n}; nothing to verify");
        outcome.skipped = true;
    }
    if n > DN_MODEL_MAX_RANK {
        eprintln!("rank {n} exceeds the model bound {DN_MODEL_MAX_RANK}; skipping");
        outcome.skipped = true;
        sink.push_table(&format!("dn n={n}"), &Vec::<DnRecord>::new())?;
        return Ok(outcome.exit_code());
    }

    let mut rows: Vec<Option<DnRecord>> = vec![None; ks.len()];
    let mut missing: Vec<(usize, usize)> = Vec::new(); // (slot, k)
    for (slot, &k) in ks.iter().enumerate() {
        let key = Cache::key(&["dn", &n.to_string(), &k.to_string()]);
        if let Some(hit) = cache.load::<DnRecord>(&key) {
            if cli.timings {
                eprintln!("[time] dn n={n} k={k}: cache hit");
            }
            rows[slot] = Some(hit);
        } else {
            missing.push((slot, k));
        }
    }

    enum DnOutcome {
        Done(DnRecord),
        Skipped(String),
    }
    let fresh: Vec<(usize, Result<DnOutcome>)> = missing
        .par_iter()
        .map(|&(slot, k)| {
            let computed = timed(cli.timings, &format!("dn n={n} k={k}"), || {
                verify_dn_theorem(n, k)
            });
            let out = match computed {
                Ok(report) => Ok(DnOutcome::Done(DnRecord {
                    schema: SCHEMA_VERSION,
                    command: "dn".into(),
                    report,
                })),
                Err(e) if is_skip(&e) => Ok(DnOutcome::Skipped(e.to_string())),
                Err(e) => Err(e.into()),
            };
            (slot, out)
        })
        .collect();
    for (slot, out) in fresh {
        match out? {
            DnOutcome::Done(rec) => {
                let k = ks[slot];
                let key = Cache::key(&["dn", &n.to_string(), &k.to_string()]);
                cache.store(&key, &["dn", &n.to_string(), &k.to_string()], &rec);
                rows[slot] = Some(rec);
            }
            DnOutcome::Skipped(why) => {
                eprintln!("skipping n={n} k={}: {why}", ks[slot]);
                outcome.skipped = true;
            }
        }
    }

    let done: Vec<DnRecord> = rows.into_iter().flatten().collect();
    for rec in &done {
        let r = &rec.report;
        if !(r.agrees
            && r.pairing_pattern_ok
            && r.sum_matches_coset_character
            && r.vq_self_pairings_one)
        {
            outcome.disagreement = true;
        }
    }
    sink.push_table(&format!("dn n={n}"), &done)?;
    Ok(outcome.exit_code())
}
