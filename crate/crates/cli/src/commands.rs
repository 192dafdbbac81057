use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use tcl_core::fitting::{fit_rho, EmConfig, EmTrace};
use tcl_core::generator::{
    generate_cl_fast, generate_cl_fast_seeded, generate_cl_slow, generate_tcl_seeded, GenMetrics,
    GenParams,
};
use tcl_core::io::{load_edge_list, write_labeled_edge_list, LoadedGraph};
use tcl_core::seed::SeedStreams;
use tcl_core::stats::oracle::{
    empirical_edge_probabilities, retry_check, top_degree_edges, two_hop_landing, GeneratorKind,
};
use tcl_core::stats::{compare, summarize, CcdfSeries, StatsOptions, StatsReport};
use tcl_core::{Graph, PiSampler};

use crate::args::{
    BenchArgs, Cli, Command, CompareArgs, EmArgs, FitArgs, GenerateArgs, Model, RhoArg, StatsArgs,
    StatsOpts, VerifyArgs,
};
use crate::report::RunReport;
use crate::CliError;

/// Slow Chung-Lu is quadratic; `verify` skips it above this many nodes.
pub const SLOW_CL_MAX_NODES: usize = 5_000;

type CmdResult = Result<RunReport, CliError>;

pub fn execute(cli: &Cli) -> CmdResult {
    let ctx = Context { cli };
    match &cli.command {
        Command::Fit(a) => ctx.fit(a),
        Command::Generate(a) => ctx.generate(a),
        Command::Stats(a) => ctx.stats(a),
        Command::Compare(a) => ctx.compare(a),
        Command::Verify(a) => ctx.verify(a),
        Command::Bench(a) => ctx.bench(a),
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

impl Context<'_> {
    fn streams(&self) -> SeedStreams {
        SeedStreams::new(self.cli.seed)
    }

    fn load(&self, path: &Path) -> Result<LoadedGraph, CliError> {
        Ok(load_edge_list(path, &self.cli.ingest.options())?)
    }

    /// Subcommand arguments plus the global inputs that affect the output.
    fn parameters<T: Serialize>(&self, args: &T) -> Value {
        let mut value = serde_json::to_value(args).expect("arguments serialize");
        let map = value.as_object_mut().expect("arguments are a struct");
        map.insert("seed".into(), json!(self.cli.seed));
        map.insert("ingest".into(), json!(self.cli.ingest));
        map.insert("no_timings".into(), json!(self.cli.no_timings));
        value
    }

    fn secs(&self, start: Instant) -> f64 {
        if self.cli.no_timings {
            0.0
        } else {
            start.elapsed().as_secs_f64()
        }
    }

    fn em_config(&self, em: &EmArgs) -> EmConfig {
        EmConfig {
            samples_per_iteration: em.samples,
            max_iterations: em.max_iterations,
            tolerance: em.tolerance,
            rho_init: em.rho_init,
            seed: self.cli.seed,
            ..EmConfig::default()
        }
    }

    fn run_fit(&self, g: &Graph, em: &EmArgs) -> Result<EmTrace, CliError> {
        let mut trace = fit_rho(g, &self.em_config(em))?;
        if self.cli.no_timings {
            trace.setup_secs = 0.0;
            for it in &mut trace.per_iteration {
                it.elapsed_secs = 0.0;
            }
        }
        Ok(trace)
    }

    /// The requested rho, fitting it when `auto`.
    fn resolve_rho(
        &self,
        g: &Graph,
        rho: RhoArg,
        em: &EmArgs,
    ) -> Result<(f64, Option<EmTrace>), CliError> {
        match rho {
            RhoArg::Value(v) => Ok((v, None)),
            RhoArg::Auto => {
                let trace = self.run_fit(g, em)?;
                Ok((trace.rho_final, Some(trace)))
            }
        }
    }

    fn fit(&self, a: &FitArgs) -> CmdResult {
        let loaded = self.load(&a.input)?;
        let trace = self.run_fit(&loaded.graph, &a.em)?;
        Ok(RunReport::new(
            "fit",
            self.parameters(a),
            json!({ "graph": graph_summary(&loaded), "em_trace": trace }),
        ))
    }

    fn generate(&self, a: &GenerateArgs) -> CmdResult {
        let loaded = self.load(&a.input)?;
        let g = &loaded.graph;
        let (rho, trace) = match a.model {
            Model::Tcl => self.resolve_rho(g, a.rho, &a.em)?,
            _ => (0.0, None),
        };
        let params = GenParams {
            rho,
            iterations: a.iterations,
            seed: self.cli.seed,
            max_attempts: None,
        };
        let sampler = PiSampler::new(g);
        let start = Instant::now();
        let (out, metrics, clamped) = match a.model {
            Model::Tcl => {
                let (out, m) = generate_tcl_seeded(g, &sampler, &params)?;
                (out, Some(m), None)
            }
            Model::Cl => {
                let (out, m) = generate_cl_fast_seeded(g, &sampler, &params)?;
                (out, Some(m), None)
            }
            Model::ClUncorrected => {
                let mut rng = params.streams().stream("warmup");
                let (out, m) = generate_cl_fast(g, &sampler, &params, false, &mut rng)?;
                (out, Some(m), None)
            }
            Model::ClSlow => {
                let (out, o) = generate_cl_slow(g, &mut params.streams().stream("generate"));
                (out, None, Some(o.clamped_pairs))
            }
        };
        let elapsed = self.secs(start);
        if metrics.is_some() && out.edge_count() != g.edge_count() {
            return Err(CliError::Internal(format!(
                "generated {} edges from a seed with {}",
                out.edge_count(),
                g.edge_count()
            )));
        }
        write_labeled_edge_list(&out, &loaded.labels, &a.output)?;
        Ok(RunReport::new(
            "generate",
            self.parameters(a),
            json!({
                "input": graph_summary(&loaded),
                "rho": rho,
                "rho_source": if trace.is_some() { "fitted" } else { "given" },
                "em_trace": trace,
                "output": { "path": a.output, "n": out.node_count(), "m": out.edge_count() },
                "metrics": metrics.map(metrics_json),
                "clamped_pairs": clamped,
                "elapsed_secs": elapsed,
            }),
        ))
    }

    fn stats_options(&self, opts: &StatsOpts) -> StatsOptions {
        StatsOptions {
            hop_sources: opts.hop_sources.map(|h| h.sources()),
            include_degree_one: opts.cc_include_deg1,
        }
    }

    fn summarize(&self, g: &Graph, opts: &StatsOpts) -> StatsReport {
        summarize(
            g,
            &self.stats_options(opts),
            &mut self.streams().stream("stats"),
        )
    }

    fn stats(&self, a: &StatsArgs) -> CmdResult {
        let loaded = self.load(&a.input)?;
        let report = self.summarize(&loaded.graph, &a.opts);
        if let Some(dir) = &a.csv {
            write_csv(dir, &report)?;
        }
        Ok(RunReport::new(
            "stats",
            self.parameters(a),
            json!({ "graph": graph_summary(&loaded), "stats": report }),
        ))
    }

    fn compare(&self, a: &CompareArgs) -> CmdResult {
        let left = self.load(&a.a)?;
        let right = self.load(&a.b)?;
        let sa = self.summarize(&left.graph, &a.opts);
        let sb = self.summarize(&right.graph, &a.opts);
        Ok(RunReport::new(
            "compare",
            self.parameters(a),
            json!({
                "a": graph_summary(&left),
                "b": graph_summary(&right),
                "comparison": compare(&sa, &sb),
            }),
        ))
    }

    fn verify(&self, a: &VerifyArgs) -> CmdResult {
        let loaded = self.load(&a.input)?;
        let g = &loaded.graph;
        let streams = self.streams();
        let label = |v: u32| loaded.labels[v as usize];

        let watch = top_degree_edges(g, a.top);
        let fast = empirical_edge_probabilities(
            g,
            GeneratorKind::ClFast,
            a.runs,
            &watch,
            streams.derive("verify-fast", 0),
        )?;
        let slow = if g.node_count() <= SLOW_CL_MAX_NODES {
            Some(empirical_edge_probabilities(
                g,
                GeneratorKind::ClSlow,
                a.runs,
                &watch,
                streams.derive("verify-slow", 0),
            )?)
        } else {
            None
        };
        let edges: Vec<Value> = fast
            .iter()
            .enumerate()
            .map(|(k, f)| {
                json!({
                    "edge": [label(f.edge.0), label(f.edge.1)],
                    "analytic": f.analytic,
                    "fast": f.frequency,
                    "slow": slow.as_ref().map(|s| s[k].frequency),
                })
            })
            .collect();
        let max_fast_slow_gap = slow.as_ref().map(|s| {
            fast.iter()
                .zip(s)
                .map(|(f, s)| (f.frequency - s.frequency).abs())
                .fold(0.0, f64::max)
        });
        let max_fast_analytic_gap = fast
            .iter()
            .map(|f| (f.frequency - f.analytic).abs())
            .fold(0.0, f64::max);

        let landing = two_hop_landing(g, a.runs, a.walks, streams.derive("verify-landing", 0))?;

        let mut retry = serde_json::Map::new();
        let cl = retry_check(
            g,
            GeneratorKind::ClFast,
            a.runs,
            streams.derive("verify-retry", 0),
        )?;
        retry.insert("cl".into(), retry_json(&cl));
        let mut trace = None;
        if let Some(rho) = a.rho {
            let (rho, t) = self.resolve_rho(g, rho, &a.em)?;
            trace = t;
            let tcl = retry_check(
                g,
                GeneratorKind::Tcl { rho },
                a.runs,
                streams.derive("verify-retry", 1),
            )?;
            let mut entry = retry_json(&tcl);
            entry["rho"] = json!(rho);
            retry.insert("tcl".into(), entry);
        }

        Ok(RunReport::new(
            "verify",
            self.parameters(a),
            json!({
                "graph": graph_summary(&loaded),
                "edge_probability": {
                    "watched": watch.len(),
                    "slow_skipped": slow.is_none(),
                    "max_fast_slow_gap": max_fast_slow_gap,
                    "max_fast_analytic_gap": max_fast_analytic_gap,
                    "edges": edges,
                },
                "two_hop_landing": landing,
                "retry": retry,
                "em_trace": trace,
            }),
        ))
    }

    fn bench(&self, a: &BenchArgs) -> CmdResult {
        let loaded = self.load(&a.input)?;
        let base = loaded.graph.replicate(a.base_copies as usize);
        let (rho, trace) = match a.model {
            Model::Tcl => self.resolve_rho(&loaded.graph, a.rho, &a.em)?,
            _ => (0.0, None),
        };
        let kind = match a.model {
            Model::Tcl => GeneratorKind::Tcl { rho },
            Model::Cl => GeneratorKind::ClFast,
            Model::ClUncorrected => GeneratorKind::ClFastUncorrected,
            Model::ClSlow => GeneratorKind::ClSlow,
        };
        let mut rows = Vec::new();
        let mut medians = Vec::new();
        for k in 1..=a.scale {
            let g = base.replicate(k as usize);
            let mut times = Vec::new();
            let mut metrics = GenMetrics::default();
            for r in 0..a.repeats {
                let seed = self.streams().derive("bench", k * a.repeats + r);
                let start = Instant::now();
                let sampler = PiSampler::new(&g);
                let (_, m) = kind.generate_with_metrics(&g, &sampler, seed)?;
                times.push(self.secs(start));
                metrics.merge(&m.unwrap_or_default());
            }
            times.sort_by(f64::total_cmp);
            let median = times[times.len() / 2];
            medians.push(median);
            rows.push(json!({
                "copies": k * a.base_copies,
                "n": g.node_count(),
                "m": g.edge_count(),
                "median_secs": median,
                "secs": times,
                "retry_ratio": metrics.retry_ratio(),
                "retry_bound": tcl_core::generator::retry_bound(&g.degrees()),
            }));
        }
        let ratios: Vec<f64> = medians
            .iter()
            .map(|&t| {
                if medians[0] > 0.0 {
                    t / medians[0]
                } else {
                    0.0
                }
            })
            .collect();
        Ok(RunReport::new(
            "bench",
            self.parameters(a),
            json!({
                "input": graph_summary(&loaded),
                "rho": rho,
                "em_trace": trace,
                "runs": rows,
                "time_ratios": ratios,
            }),
        ))
    }
}

fn graph_summary(loaded: &LoadedGraph) -> Value {
    json!({
        "n": loaded.graph.node_count(),
        "m": loaded.graph.edge_count(),
        "max_degree": loaded.graph.max_degree(),
        "capped_nodes": loaded.capped,
    })
}

fn metrics_json(m: GenMetrics) -> Value {
    let mut v = json!(m);
    v["retry_ratio"] = json!(m.retry_ratio());
    v
}

fn retry_json(check: &tcl_core::stats::oracle::RetryCheck) -> Value {
    let mut v = json!(check);
    v["within_bound"] = json!(check.mean_ratio <= check.bound + 0.1);
    v
}

fn write_csv(dir: &Path, report: &StatsReport) -> Result<(), CliError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Data(tcl_core::Error::Io { path, source })
    };
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let write = |name: &str, header: &str, rows: Vec<(f64, f64)>| -> Result<(), CliError> {
        let path = dir.join(name);
        let mut text = format!("{header}\n").into_bytes();
        for (x, y) in rows {
            writeln!(text, "{x},{y}").expect("writing to memory");
        }
        std::fs::write(&path, text).map_err(io_err(&path))
    };
    let series = |s: &CcdfSeries| s.points.clone();
    write(
        "degree_ccdf.csv",
        "degree,fraction",
        series(&report.degree_ccdf),
    )?;
    write(
        "clustering_ccdf.csv",
        "coefficient,fraction",
        series(&report.clustering_ccdf),
    )?;
    write(
        "hop_plot.csv",
        "hops,fraction",
        report
            .hop_plot
            .points
            .iter()
            .map(|&(h, f)| (h as f64, f))
            .collect(),
    )
}
