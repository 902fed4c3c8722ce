//! Scene files, command dispatch and JSON reports for the `logcoh` binary.

pub mod report;
pub mod scene_file;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use logcoh::betti::build_kn_model;
use logcoh::jet::expected_jet_count;
use logcoh::residue::NcdChart;
use logcoh::{
    build_stalk_log_model, completed_cohomology, gr_cohomology_concentration, mv_betti, verify_cech_exactness,
    verify_fil_graded, verify_homotopy_identities, verify_poin05_graded_iso, verify_residue_iso, verify_stalk_poincare,
    PrimeFiltrationModel,
};

pub use report::{Report, SideResult, Verdict};
pub use scene_file::{SceneError, SceneFile};

pub const MAX_JET_RANK: usize = 4;
pub const MAX_JET_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Cohomology,
    Betti,
    Compare,
    HomotopyCheck,
    CechCheck,
    ResidueCheck,
    Poin05Check,
    StalkPoincare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Betti => "betti",
            Command::Compare => "compare",
            Command::HomotopyCheck => "homotopy-check",
            Command::CechCheck => "cech-check",
            Command::ResidueCheck => "residue-check",
            Command::Poin05Check => "poin05-check",
            Command::StalkPoincare => "stalk-poincare",
        }
    }
}

/// Exact log de Rham cohomology of formally completed toric scenes.
#[derive(Debug, Parser)]
#[command(name = "logcoh", version)]
pub struct Cli {
    pub command: Command,
    /// Scene file (optional for homotopy-check).
    pub scene: Option<PathBuf>,
    /// Report degrees q ≤ N only.
    #[arg(long, value_name = "N")]
    pub max_q: Option<usize>,
    /// Override `options.truncation`.
    #[arg(long, value_name = "N")]
    pub truncation: Option<usize>,
    /// Override `options.window`.
    #[arg(long, value_name = "N")]
    pub window: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Suppress the table on stderr.
    #[arg(long)]
    pub quiet: bool,
    /// Omit timing and environment data from the report.
    #[arg(long)]
    pub no_meta: bool,
    /// Jet rank for homotopy-check.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Jet order for homotopy-check.
    #[arg(long, default_value_t = 3)]
    pub order: usize,
}

/// Applies `LOGCOH_THREADS` to the global pool. Later calls are no-ops.
pub fn init_threads() {
    if let Some(n) = std::env::var("LOGCOH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn load(cli: &Cli) -> Result<SceneFile, String> {
    let path = cli.scene.as_ref().ok_or_else(|| format!("{} needs a scene file", cli.command.name()))?;
    let mut file = SceneFile::read(path).map_err(|e| e.to_string())?;
    if let Some(t) = cli.truncation {
        file.set("options.truncation", t.into());
    }
    if let Some(w) = cli.window {
        file.set("options.window", w.into());
    }
    Ok(file)
}

/// Runs one command and returns the finished report.
pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let file = match cli.command {
        Command::HomotopyCheck if cli.scene.is_none() => None,
        _ => match load(cli) {
            Ok(f) => Some(f),
            Err(e) => {
                let mut report = Report::new(cli.command.name(), None);
                report.fail_with_error(e);
                return finish(cli, report, start);
            }
        },
    };
    let scene = file.as_ref().map(|f| report::SceneInfo { digest: f.digest() });
    let mut report = Report::new(cli.command.name(), scene);
    if let Err(e) = dispatch(cli, file.as_ref(), &mut report) {
        report.fail_with_error(e);
    }
    finish(cli, report, start)
}

fn finish(cli: &Cli, mut report: Report, start: Instant) -> Report {
    if let Some(q) = cli.max_q {
        report.truncate_q(q);
    }
    report.finish();
    if !cli.no_meta {
        report.meta = Some(report::Meta {
            wall_time_ms: start.elapsed().as_millis(),
            threads: rayon::current_num_threads(),
            version: env!("CARGO_PKG_VERSION"),
        });
    }
    report
}

fn dispatch(cli: &Cli, file: Option<&SceneFile>, report: &mut Report) -> Result<(), String> {
    let err = |e: logcoh::Error| e.to_string();
    if cli.command == Command::HomotopyCheck {
        if cli.rank == 0 || cli.rank > MAX_JET_RANK || cli.order > MAX_JET_ORDER {
            return Err(format!("jet bounds are rank 1..={MAX_JET_RANK}, order ≤ {MAX_JET_ORDER}"));
        }
        let h = verify_homotopy_identities(cli.rank, cli.order);
        let name = format!("homotopy identities r={} i={} ({} basis elements)", h.rank, h.order, h.checked);
        report.push_check(name, h.passed(), h.counterexample);
        report.push_check(
            "jet basis count",
            expected_jet_count(cli.rank, cli.order) == logcoh::jet::jet_basis(cli.rank, cli.order, 1).len(),
            None,
        );
        return Ok(());
    }
    let file = file.expect("scene loaded");
    let scene = file.to_scene().map_err(|e| e.to_string())?;
    let (truncation, window) = (scene.options.truncation, scene.options.window);
    let expected = file.expected_dims().map_err(|e| e.to_string())?;
    let compare_expected = |report: &mut Report, dims: &[usize]| {
        if let Some(e) = &expected {
            report.push_match("expected.dims", dims, e);
        }
    };
    match cli.command {
        Command::Cohomology => {
            let h = completed_cohomology(&scene).map_err(err)?;
            report.results.push(SideResult::new("algebraic", &h.dims, Some(h.stabilized_at)));
            compare_expected(report, &h.dims);
        }
        Command::Betti => {
            let b = mv_betti(&build_kn_model(&scene).map_err(err)?).map_err(err)?;
            report.results.push(SideResult::new("betti", &b, None));
            compare_expected(report, &b);
        }
        Command::Compare => {
            let h = completed_cohomology(&scene).map_err(err)?;
            let b = mv_betti(&build_kn_model(&scene).map_err(err)?).map_err(err)?;
            report.results.push(SideResult::new("algebraic", &h.dims, Some(h.stabilized_at)));
            report.results.push(SideResult::new("betti", &b, None));
            report.push_match("algebraic = betti", &h.dims, &b);
            compare_expected(report, &h.dims);
        }
        Command::HomotopyCheck => unreachable!(),
        Command::CechCheck => {
            let (width, order, level) = file.cech_params().map_err(|e| e.to_string())?;
            let c = verify_cech_exactness(&scene, width, order, level).map_err(err)?;
            report.push_check("cosimplicial identities", c.cosimplicial_identities, None);
            for s in &c.slices {
                let (a, d, p1) = s.ranks;
                let detail = format!("slice {:?}: rank α={a}, rank δ={d}, dim P¹={p1}", s.exponent);
                report.push_check(format!("slice {:?}", s.exponent), s.exact, Some(detail));
            }
        }
        Command::ResidueCheck => {
            let chart = NcdChart::from_scene(&scene).map_err(err)?;
            let level = file.check_level().map_err(|e| e.to_string())?;
            let key_degree = file.check_key_degree().map_err(|e| e.to_string())? as i64;
            for k in 0..=chart.r() {
                let iso = verify_residue_iso(&chart, k, level, key_degree).map_err(err)?;
                report.push_check(format!("residue k={k} ({} slices)", iso.slices), iso.passed(), iso.counterexample);
                let gr = gr_cohomology_concentration(&chart, k, truncation, window).map_err(err)?;
                report.results.push(SideResult::new(format!("gr_{k}"), &gr.dims, Some(gr.stabilized_at)));
                let detail = format!("dims {:?}, expected {} in degree {k}", gr.dims, gr.expected_at_k);
                report.push_check(format!("gr k={k} concentrated"), gr.passed(), Some(detail));
            }
        }
        Command::Poin05Check => {
            let prime = file.prime(&scene).map_err(|e| e.to_string())?;
            let model = PrimeFiltrationModel::new(&scene, &prime).map_err(err)?;
            let level = file.check_level().map_err(|e| e.to_string())?;
            let key_degree = file.check_key_degree().map_err(|e| e.to_string())? as i64;
            for r in 0..=model.t_side().quotient.free_rank {
                let p = verify_poin05_graded_iso(&model, r, level, key_degree).map_err(err)?;
                report.results.push(SideResult::new(format!("graded_{r}"), &p.dims, None));
                let detail = p.counterexample.clone().or_else(|| (!p.ses_exact).then(|| "ranks do not add up".into()));
                report.push_check(format!("graded iso r={r} ({} slices)", p.slices), p.passed(), detail);
            }
        }
        Command::StalkPoincare => {
            let model = build_stalk_log_model(&scene).map_err(err)?;
            let bound = file.stalk_bound().map_err(|e| e.to_string())?;
            let s = verify_stalk_poincare(&model, bound, window).map_err(err)?;
            report.results.push(SideResult::new("stalk", &s.dims, Some(s.stabilized_at)));
            report.push_check("stalk is (1, 0, …)", s.passed(), Some(format!("dims {:?}", s.dims)));
            for r in 0..=1 {
                let f = verify_fil_graded(&model, r, bound, window).map_err(err)?;
                report.results.push(SideResult::new(format!("fil_{r}"), &f.dims, Some(f.stabilized_at)));
                let detail = format!("dims {:?}, expected {:?}", f.dims, f.expected);
                report.push_check(format!("graded piece r={r}"), f.passed(), Some(detail));
            }
        }
    }
    Ok(())
}
