use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::config::{start_for, Config};
use super::{svg, CliError, CommonArgs, EXIT_INCOMPLETE, EXIT_NO_FRONTIERS, EXIT_OK};
use crate::error::Error;
use crate::explorer::{
    aggregate_csv, compare_selectors, run_exploration_with_map, CompareSpec, Outcome, Stats,
};
use crate::frontier::find_segments;
use crate::grid::{parse_ascii, Pose};
use crate::reward::{reward_terms, RewardTerms, StepObservation};
use crate::scoring::select_waypoint;

pub(super) struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
}

fn io_err(what: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::config(format!("{what}: {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| io_err("output.dir", path, e))
}

fn out(io: &mut Io, text: &str) -> Result<(), CliError> {
    io.stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::config(format!("stdout: {e}")))
}

pub(super) fn run(
    cfg: &Config,
    base: &Path,
    _args: &CommonArgs,
    io: &mut Io,
) -> Result<i32, CliError> {
    cfg.check_run_lists()?;
    let exp = cfg.exploration()?;
    let maps = cfg.load_maps(base)?;
    let dir = base.join(&cfg.output.dir);
    fs::create_dir_all(&dir).map_err(|e| io_err("output.dir", &dir, e))?;

    let mut code = EXIT_OK;
    out(
        io,
        "map,selector,seed,outcome,ticks,distance_m,time_s,exploration_rate\n",
    )?;
    for case in &maps {
        for &seed in &cfg.run.seeds {
            let start = start_for(case, seed)?;
            for sel in &cfg.run.selectors {
                let kind = sel.with_seed(seed);
                let (rec, belief) = run_exploration_with_map(&case.truth, start, kind, &exp)
                    .map_err(|e| CliError::config(format!("maps.{}: {e}", case.name)))?;
                let stem = format!("{}_{}_{}", case.name, kind.label(), seed);
                if cfg.output.json {
                    let json = serde_json::to_string_pretty(&rec).expect("run record serializes");
                    write_file(&dir.join(format!("{stem}.json")), &json)?;
                }
                if cfg.output.csv {
                    write_file(&dir.join(format!("{stem}.csv")), &rec.to_csv())?;
                }
                if cfg.output.svg {
                    write_file(
                        &dir.join(format!("{stem}.svg")),
                        &svg::render_run(&rec, &belief),
                    )?;
                }
                if rec.outcome != Outcome::Complete {
                    code = EXIT_INCOMPLETE;
                }
                let outcome = serde_json::to_value(rec.outcome).expect("outcome serializes");
                out(
                    io,
                    &format!(
                        "{},{},{},{},{},{},{},{}\n",
                        case.name,
                        kind.label(),
                        seed,
                        outcome.as_str().unwrap_or_default(),
                        rec.ticks,
                        rec.distance(),
                        rec.time(),
                        rec.exploration_rate()
                    ),
                )?;
            }
        }
    }
    Ok(code)
}

pub(super) fn score(
    cfg: &Config,
    base: &Path,
    _args: &CommonArgs,
    io: &mut Io,
) -> Result<i32, CliError> {
    let rel = cfg
        .score
        .belief
        .as_ref()
        .ok_or_else(|| CliError::config("score.belief: required for the score command"))?;
    let path = base.join(rel);
    let text = fs::read_to_string(&path).map_err(|e| io_err("score.belief", &path, e))?;
    let mut belief =
        parse_ascii(&text, true).map_err(|e| CliError::config(format!("score.belief: {e}")))?;
    belief
        .inflate(cfg.inflation)
        .map_err(|e| CliError::config(format!("inflation: {e}")))?;
    let params = cfg.heuristic_params()?;
    let [x, y, theta] = cfg.score.robot;
    let robot = Pose::new(x, y, theta);
    let segments = find_segments(&belief, cfg.run.min_segment_size);
    match select_waypoint(&segments, &robot, &belief, &params) {
        Err(Error::NoFrontiers) => Err(CliError {
            code: EXIT_NO_FRONTIERS,
            message: "no frontiers".into(),
        }),
        Err(e) => Err(CliError::config(format!("score: {e}"))),
        Ok((chosen, rows)) => {
            let mut text = String::from("segment_id,d,D,O,h,chosen\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.segment_id,
                    r.d,
                    r.distance_score,
                    r.occupancy_score,
                    r.h,
                    r.segment_id == chosen
                ));
            }
            out(io, &text)?;
            Ok(EXIT_OK)
        }
    }
}

pub(super) fn compare(
    cfg: &Config,
    base: &Path,
    args: &CommonArgs,
    io: &mut Io,
) -> Result<i32, CliError> {
    cfg.check_run_lists()?;
    let config = cfg.exploration()?;
    let maps = cfg.load_maps(base)?;
    let spec = CompareSpec {
        maps,
        selectors: cfg.run.selectors.iter().map(|s| s.with_seed(0)).collect(),
        seeds: cfg.run.seeds.clone(),
        config,
        jobs: args.jobs,
    };
    let cmp = compare_selectors(&spec).map_err(|e| CliError::config(format!("compare: {e}")))?;
    let dir = base.join(&cfg.output.dir);
    fs::create_dir_all(&dir).map_err(|e| io_err("output.dir", &dir, e))?;
    write_file(&dir.join("aggregate.csv"), &aggregate_csv(&cmp.rows))?;

    let mut text = String::from("selector,runs,complete,avg_dist_m,avg_time_s,avg_expr_pct\n");
    for sel in &spec.selectors {
        let runs: Vec<_> = cmp.runs.iter().filter(|r| r.selector == *sel).collect();
        let col = |f: fn(&crate::explorer::RunSummary) -> f64| {
            Stats::of(&runs.iter().map(|r| f(r)).collect::<Vec<_>>()).mean
        };
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sel.label(),
            runs.len(),
            runs.iter()
                .filter(|r| r.outcome == Outcome::Complete)
                .count(),
            col(|r| r.distance),
            col(|r| r.time),
            col(|r| 100.0 * r.exploration_rate)
        ));
    }
    out(io, &text)?;
    let all_complete = cmp.runs.iter().all(|r| r.outcome == Outcome::Complete);
    Ok(if all_complete {
        EXIT_OK
    } else {
        EXIT_INCOMPLETE
    })
}

fn reward_lines(cfg: &Config, input: &mut dyn BufRead, io: &mut Io) -> Result<i32, CliError> {
    let rc = cfg.reward_config()?;
    let mut text = format!("{}\n", RewardTerms::CSV_HEADER);
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| CliError::config(format!("reward.input: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let obs: StepObservation = serde_json::from_str(&line)
            .map_err(|e| CliError::config(format!("reward.input line {}: {e}", n + 1)))?;
        let terms = reward_terms(&obs, &rc)
            .map_err(|e| CliError::config(format!("reward.input line {}: {e}", n + 1)))?;
        text.push_str(&terms.to_csv_row());
        text.push('\n');
    }
    out(io, &text)?;
    Ok(EXIT_OK)
}

pub(super) fn reward(
    cfg: &Config,
    base: &Path,
    _args: &CommonArgs,
    io: &mut Io,
) -> Result<i32, CliError> {
    if cfg.reward.input == "-" {
        let mut buf = Vec::new();
        std::io::copy(&mut io.stdin, &mut buf)
            .map_err(|e| CliError::config(format!("reward.input: {e}")))?;
        return reward_lines(cfg, &mut buf.as_slice(), io);
    }
    let path = base.join(&cfg.reward.input);
    let file = fs::File::open(&path).map_err(|e| io_err("reward.input", &path, e))?;
    reward_lines(cfg, &mut BufReader::new(file), io)
}
