use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use lmc::classifier::GateGraph;
use lmc::connectivity::{edge_components, vertex_components};
use lmc::format::{parse_matrix, parse_synthesis, write_synthesis};
use lmc::oracle::METRIC_DEFINITIONS;
use lmc::rivers::{cperfect as cperfect_report, enumerate_rivers};
use lmc::{
    classify_synthesis, confusion, decide_linkable, lmc_bound, lmc_bound_with, BinMatrix,
    BoundOptions, ConstructionId, GateClass, LinkabilityResult, Permutation, SizeTable, Synthesis,
};
use serde_json::json;

/// Outcome of a command that ran to completion.
#[derive(Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

fn read_matrix(path: &Path) -> anyhow::Result<BinMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_synthesis(path: &Path) -> anyhow::Result<Synthesis> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_synthesis(&text).with_context(|| format!("parsing {}", path.display()))
}

fn groups(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|g| {
            let labels: Vec<String> = g.iter().map(|x| (x + 1).to_string()).collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn bound(path: &Path, json: bool, opts: BoundOptions) -> anyhow::Result<Verdict> {
    let m = read_matrix(path)?;
    let report = lmc_bound_with(&m, opts)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{report}");
    }
    Ok(Verdict::Yes)
}

pub fn connectivity(path: &Path) -> anyhow::Result<Verdict> {
    let m = read_matrix(path)?;
    let vp = vertex_components(&m);
    let ep = edge_components(&m);
    println!("v={} e={}", vp.component_count(), ep.component_count());
    println!("vertex: {}", groups(&vp.groups()));
    // Edge components cover rows 0..n and columns n..2n.
    let n = m.n();
    let labelled: Vec<String> = ep
        .groups()
        .iter()
        .map(|g| {
            let labels: Vec<String> = g
                .iter()
                .map(|&x| {
                    if x < n {
                        format!("r{}", x + 1)
                    } else {
                        format!("c{}", x - n + 1)
                    }
                })
                .collect();
            format!("{{{}}}", labels.join(","))
        })
        .collect();
    println!("edge: {}", labelled.join(","));
    Ok(Verdict::Yes)
}

pub fn cperfect(path: &Path) -> anyhow::Result<Verdict> {
    let m = read_matrix(path)?;
    print!("{}", cperfect_report(&m)?);
    Ok(Verdict::Yes)
}

pub fn rivers(path: &Path) -> anyhow::Result<Verdict> {
    let m = read_matrix(path)?;
    let set = enumerate_rivers(&m)?;
    let mut lines: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    lines.sort();
    println!("count: {}", lines.len());
    for l in lines {
        println!("{l}");
    }
    Ok(Verdict::Yes)
}

fn describe_graph(g: &GateGraph) -> String {
    format!(
        "spanning_tree={} star={} path={}",
        g.is_spanning_tree(),
        g.is_star(),
        g.is_path()
    )
}

pub fn classify(path: &Path) -> anyhow::Result<Verdict> {
    let s = read_synthesis(path)?;
    let cs = classify_synthesis(&s);
    println!("pattern: {}", cs.pattern());
    println!(
        "counts: L={} M={} C={} N={}",
        cs.links(),
        cs.middles(),
        cs.cuts(),
        cs.neithers()
    );
    for class in [GateClass::Link, GateClass::Middle, GateClass::Cut] {
        println!(
            "{}: {}",
            class.letter(),
            describe_graph(&cs.gate_graph(class))
        );
    }
    Ok(Verdict::Yes)
}

pub fn synth_perm(
    cycles: &str,
    construction: ConstructionId,
    n: Option<usize>,
    out: Option<&Path>,
) -> anyhow::Result<Verdict> {
    let sigma = Permutation::from_cycle_notation(cycles, n)?;
    let s = lmc::synth_permutation(&sigma, construction)?;
    let cs = classify_synthesis(&s);
    let summary = format!(
        "gates: {}\npattern: {}\ncounts: L={} M={} C={} N={}\n",
        s.len(),
        cs.pattern(),
        cs.links(),
        cs.middles(),
        cs.cuts(),
        cs.neithers()
    );
    match out {
        Some(path) => {
            fs::write(path, write_synthesis(&s))
                .with_context(|| format!("writing {}", path.display()))?;
            print!("{summary}");
        }
        None => {
            // Summary as comments keeps stdout a valid synthesis file.
            for line in summary.lines() {
                println!("# {line}");
            }
            print!("{}", write_synthesis(&s));
        }
    }
    Ok(Verdict::Yes)
}

pub fn linkable(path: &Path) -> anyhow::Result<Verdict> {
    let m = read_matrix(path)?;
    match decide_linkable(&m)? {
        LinkabilityResult::Linkable(s) => {
            println!("LINKABLE");
            print!("{}", write_synthesis(&s));
            Ok(Verdict::Yes)
        }
        LinkabilityResult::NotLinkable(reason) => {
            println!("NOT LINKABLE ({reason})");
            Ok(Verdict::No)
        }
    }
}

pub struct CensusArgs {
    pub n: usize,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub timings: bool,
    pub opts: BoundOptions,
}

fn load_or_build(n: usize, cache: Option<&Path>) -> anyhow::Result<SizeTable> {
    if let Some(path) = cache {
        if path.exists() {
            let file =
                fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let table = SizeTable::read_cache(std::io::BufReader::new(file))
                .with_context(|| format!("reading cache {}", path.display()))?;
            if table.n() != n {
                bail!(
                    "cache {} holds n = {}, expected {n}",
                    path.display(),
                    table.n()
                );
            }
            return Ok(table);
        }
    }
    let table = SizeTable::build(n)?;
    if let Some(path) = cache {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let file =
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        table.write_cache(std::io::BufWriter::new(file))?;
    }
    Ok(table)
}

fn sizes_csv(table: &SizeTable) -> String {
    let mut out = String::from("size,count\n");
    for (s, count) in table.histogram().iter().enumerate() {
        let _ = writeln!(out, "{s},{count}");
    }
    out
}

pub fn census(args: &CensusArgs) -> anyhow::Result<Verdict> {
    let n = args.n;
    let start = Instant::now();
    let table = load_or_build(n, args.cache.as_deref())?;
    let built = start.elapsed();
    let cm = confusion(&table, args.opts);
    let metrics = cm.metrics();
    if args.timings {
        eprintln!(
            "table: {:.3}s total: {:.3}s",
            built.as_secs_f64(),
            start.elapsed().as_secs_f64()
        );
    }

    let report = json!({
        "n": n,
        "options": args.opts,
        "metrics": metrics,
        "definitions": METRIC_DEFINITIONS,
        "unsound_cells": cm.unsound_cells().len(),
    });
    let report = serde_json::to_string_pretty(&report)? + "\n";

    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let files = [
                (format!("sizes_n{n}.csv"), sizes_csv(&table)),
                (format!("confusion_n{n}.csv"), cm.to_csv()),
                (format!("heatmap_n{n}.csv"), cm.heatmap_csv()),
                (format!("metrics_n{n}.json"), report),
            ];
            for (name, body) in files {
                let path = dir.join(&name);
                fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
            }
        }
        None => {
            print!("{}", cm.to_csv());
            print!("{report}");
        }
    }
    Ok(Verdict::Yes)
}

pub fn verify(matrix: &Path, synthesis: &Path) -> anyhow::Result<Verdict> {
    let m = read_matrix(matrix)?;
    let s = read_synthesis(synthesis)?;
    if m.n() != s.n() {
        bail!(
            "dimension mismatch: matrix is {0}x{0}, synthesis is on {1} qubits",
            m.n(),
            s.n()
        );
    }
    let matches = s.replay() == m;
    println!("match: {}", if matches { "yes" } else { "no" });
    println!("gates: {}", s.len());
    if !matches {
        println!("verdict: MISMATCH");
        return Ok(Verdict::No);
    }
    let bound = lmc_bound(&m)?.bound;
    println!("bound: {bound}");
    if s.len() == bound {
        println!("verdict: OPTIMAL");
        Ok(Verdict::Yes)
    } else {
        println!("verdict: GAP {}", s.len() - bound);
        Ok(Verdict::No)
    }
}
