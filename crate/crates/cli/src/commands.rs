use std::fs;
use std::path::{Path, PathBuf};

use fastlight_core::medium::{group_index_for, group_velocity_for};
use fastlight_core::pulse::csv::{format_number, read_signal_file, write_signal_file};
use fastlight_core::pulse::{center_of_mass, front_arrival, peak_time, propagate_free, propagate_spectral};
use fastlight_core::{
    fit_weak_value, simulate_with_w, Error, FitResult, IntensityTrace, ReferenceTrace, SampledSignal, SweepPoint,
    SPEED_OF_LIGHT,
};
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::error::{from_fit, CliError};
use crate::plots;
use crate::scenario::{geometries, input_pulse, propagation_options, sweep_detunings, Geometry};

/// What a command prints: readable lines, or one `key=value` line.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub porcelain: String,
}

impl Report {
    pub fn render(&self, porcelain: bool) -> String {
        if porcelain {
            format!("{}\n", self.porcelain)
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

fn number_or(value: Option<f64>, missing: &str) -> String {
    value.map(format_number).unwrap_or_else(|| missing.to_string())
}

fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_path(path).map_err(|e| CliError::output(format!("{}: {e}", path.display())))?;
    out.write_record(header).map_err(CliError::output)?;
    for row in rows {
        out.write_record(row).map_err(CliError::output)?;
    }
    out.flush().map_err(CliError::output)
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::output(format!("{}: {e}", dir.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::output(format!("{}: {e}", path.display())))
}

fn write_signal(path: &Path, signal: &SampledSignal) -> Result<(), CliError> {
    write_signal_file(path, signal).map_err(CliError::output)
}

/// File names for per-geometry outputs: `<stem>.csv` for a single geometry,
/// `<stem>_<k>.csv` otherwise.
fn numbered(stem: &str, count: usize) -> Vec<String> {
    if count == 1 {
        vec![format!("{stem}.csv")]
    } else {
        (0..count).map(|k| format!("{stem}_{k}.csv")).collect()
    }
}

pub const SWEEP_HEADER: [&str; 8] =
    ["detuning_hz", "kappa_per_m", "n", "n_g", "re_w", "im_w", "transmission", "full_extinction"];

fn sweep_row(detuning: f64, p: &SweepPoint) -> Vec<String> {
    vec![
        format_number(detuning),
        number_or(p.kappa, "inf"),
        format_number(p.n),
        number_or(p.n_g, "nan"),
        number_or(p.weak_value.map(|w| w.re), "nan"),
        number_or(p.weak_value.map(|w| w.im), "nan"),
        format_number(p.transmission),
        if p.kappa.is_none() { "inf" } else { "" }.to_string(),
    ]
}

pub fn cmd_sweep(config: &ScenarioConfig, out_dir: &Path) -> Result<Report, CliError> {
    let geometries = geometries(config)?;
    let detunings = sweep_detunings(config);
    let omega0 = config.carrier_omega();
    let omegas: Vec<f64> = detunings.iter().map(|d| omega0 + 2.0 * std::f64::consts::PI * d).collect();
    prepare_dir(out_dir)?;
    let names = numbered("sweep", geometries.len());
    let tables: Vec<Vec<Vec<String>>> = geometries
        .par_iter()
        .map(|g| {
            g.medium
                .sweep(&omegas)
                .iter()
                .zip(&detunings)
                .map(|(p, &d)| sweep_row(d, p))
                .collect()
        })
        .collect();
    let mut report = Report::default();
    for ((g, name), rows) in geometries.iter().zip(&names).zip(&tables) {
        write_table(&out_dir.join(name), &SWEEP_HEADER, rows)?;
        let at_carrier = g.medium.sweep_point(omega0);
        let extinct = rows.iter().filter(|r| r[7] == "inf").count();
        report.lines.push(format!(
            "{name}: {} ({} points, n_g at carrier {}, {extinct} fully extinguished)",
            g.label,
            rows.len(),
            at_carrier.n_g.map(|v| format!("{v:.6}")).unwrap_or_else(|| "undefined".into()),
        ));
    }
    if config.plot_script {
        write_text(&out_dir.join("plot_sweep.py"), &plots::sweep_script(&names))?;
    }
    report.porcelain = format!("files={} points={}", names.join(","), detunings.len());
    Ok(report)
}

pub const SUMMARY_HEADER: [&str; 10] = [
    "index",
    "post_selection",
    "re_w",
    "im_w",
    "transmission_db",
    "com_shift_s",
    "peak_shift_s",
    "front_arrival_s",
    "predicted_shift_s",
    "group_index",
];

/// Per-geometry figures of one propagation run. Shifts are measured against
/// the free-propagation reference.
#[derive(Debug, Clone)]
pub struct PropagationRow {
    pub label: String,
    pub weak_value: Option<(f64, f64)>,
    pub transmission_db: f64,
    pub com_shift: f64,
    pub peak_shift: f64,
    pub front_arrival: Option<f64>,
    pub predicted_shift: Option<f64>,
    pub group_index: Option<f64>,
}

pub struct PropagationRun {
    pub input: SampledSignal,
    pub reference: SampledSignal,
    pub outputs: Vec<SampledSignal>,
    pub rows: Vec<PropagationRow>,
    pub output_names: Vec<String>,
}

fn measure(
    config: &ScenarioConfig,
    g: &Geometry,
    input: &SampledSignal,
    reference: &SampledSignal,
    out: &SampledSignal,
) -> PropagationRow {
    let omega0 = config.carrier_omega();
    let weak_value = g.medium.weak_value(omega0).ok();
    let ratio = out.energy() / input.energy();
    // zero energy leaves the centroid undefined; NaN marks it in the table
    let com = center_of_mass(out).map(|c| c - center_of_mass(reference).unwrap()).unwrap_or(f64::NAN);
    let peak = peak_time(out).map(|p| p - peak_time(reference).unwrap()).unwrap_or(f64::NAN);
    PropagationRow {
        label: g.label.clone(),
        weak_value: weak_value.map(|w| (w.re, w.im)),
        transmission_db: 10.0 * ratio.log10(),
        com_shift: com,
        peak_shift: peak,
        front_arrival: front_arrival(out, config.front_threshold, Some(input.peak_intensity())).ok(),
        predicted_shift: weak_value.map(|w| 0.5 * config.fiber.dgd() * w.re),
        group_index: weak_value.map(|w| group_index_for(&config.fiber, w.re)),
    }
}

pub fn run_propagation(config: &ScenarioConfig) -> Result<PropagationRun, CliError> {
    let geometries = geometries(config)?;
    let input = input_pulse(config, &geometries)?;
    let options = propagation_options(config);
    let scenario = |e: Error| match e {
        Error::WrapAround { .. } => CliError::Scenario(format!(
            "{e}; increase `samples` or `dt`, or set `remove_free_delay = true`"
        )),
        other => CliError::Scenario(other.to_string()),
    };
    let reference = propagate_free(&input, &config.fiber, &options).map_err(scenario)?;
    let outputs = geometries
        .par_iter()
        .map(|g| propagate_spectral(&input, &g.medium, &options))
        .collect::<Result<Vec<_>, _>>()
        .map_err(scenario)?;
    let rows = geometries
        .par_iter()
        .zip(&outputs)
        .map(|(g, out)| measure(config, g, &input, &reference, out))
        .collect();
    let output_names = (0..outputs.len()).map(|k| format!("output_{k}.csv")).collect();
    Ok(PropagationRun {
        input,
        reference,
        outputs,
        rows,
        output_names,
    })
}

fn summary_row(index: usize, r: &PropagationRow) -> Vec<String> {
    vec![
        index.to_string(),
        r.label.clone(),
        number_or(r.weak_value.map(|w| w.0), "nan"),
        number_or(r.weak_value.map(|w| w.1), "nan"),
        format_number(r.transmission_db),
        format_number(r.com_shift),
        format_number(r.peak_shift),
        number_or(r.front_arrival, "nan"),
        number_or(r.predicted_shift, "nan"),
        number_or(r.group_index, "nan"),
    ]
}

pub fn write_propagation(run: &PropagationRun, out_dir: &Path) -> Result<(), CliError> {
    prepare_dir(out_dir)?;
    write_signal(&out_dir.join("input.csv"), &run.input)?;
    write_signal(&out_dir.join("reference.csv"), &run.reference)?;
    run.outputs
        .par_iter()
        .zip(&run.output_names)
        .map(|(out, name)| write_signal(&out_dir.join(name), out))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<String>> = run.rows.iter().enumerate().map(|(k, r)| summary_row(k, r)).collect();
    write_table(&out_dir.join("summary.csv"), &SUMMARY_HEADER, &rows)
}

pub fn cmd_propagate(config: &ScenarioConfig, out_dir: &Path) -> Result<Report, CliError> {
    let run = run_propagation(config)?;
    write_propagation(&run, out_dir)?;
    if config.plot_script {
        write_text(&out_dir.join("plot_propagate.py"), &plots::propagate_script(&run.output_names, &[]))?;
    }
    let mut report = Report::default();
    report.lines.push(format!(
        "input: {} samples, dt = {:.4e} s; reference delay {:.4e} s",
        run.input.len(),
        run.input.dt(),
        center_of_mass(&run.reference).unwrap() - center_of_mass(&run.input).unwrap()
    ));
    for (name, r) in run.output_names.iter().zip(&run.rows) {
        report.lines.push(format!(
            "{name}: {}: transmission {:.2} dB, centroid {:+.4e} s, peak {:+.4e} s, front {}",
            r.label,
            r.transmission_db,
            r.com_shift,
            r.peak_shift,
            r.front_arrival.map(|t| format!("{t:.6e} s")).unwrap_or_else(|| "not reached".into())
        ));
    }
    report.porcelain = format!("files=input.csv,reference.csv,{},summary.csv", run.output_names.join(","));
    Ok(report)
}

fn read_trace(path: &Path, config: &ScenarioConfig) -> Result<IntensityTrace, CliError> {
    read_signal_file(path, config.carrier_omega())
        .map(|r| r.intensity)
        .map_err(CliError::Data)
}

pub fn fit_report(config: &ScenarioConfig, fit: &FitResult) -> Report {
    let shift = fit.implied_shift(&config.fiber);
    let n_g = group_index_for(&config.fiber, fit.w_estimate);
    let v_over_c = group_velocity_for(&config.fiber, shift).map(|v| v / SPEED_OF_LIGHT).ok();
    Report {
        lines: vec![
            format!("w_estimate      {:.6}", fit.w_estimate),
            format!("residual        {:.3e}", fit.residual),
            format!("amplitude_scale {:.6e}", fit.amplitude_scale),
            format!("mean_shift      {shift:.6e} s"),
            format!("n_g             {n_g:.6}"),
            format!(
                "v_g/c           {}",
                v_over_c.map(|v| format!("{v:.6}")).unwrap_or_else(|| "infinite".into())
            ),
            format!("evaluations     {}", fit.iterations),
        ],
        porcelain: format!(
            "w_estimate={} residual={} amplitude_scale={} mean_shift_s={} n_g={} v_g_over_c={}",
            format_number(fit.w_estimate),
            format_number(fit.residual),
            format_number(fit.amplitude_scale),
            format_number(shift),
            format_number(n_g),
            number_or(v_over_c, "inf"),
        ),
    }
}

pub fn fit_traces(config: &ScenarioConfig, reference: &IntensityTrace, measured: &IntensityTrace) -> Result<FitResult, CliError> {
    fit_weak_value(ReferenceTrace::Intensity(reference), measured, &config.fiber, config.w_range).map_err(from_fit)
}

pub fn cmd_fit(config: &ScenarioConfig, reference: &Path, measured: &Path) -> Result<Report, CliError> {
    let reference = read_trace(reference, config)?;
    let measured = read_trace(measured, config)?;
    let fit = fit_traces(config, &reference, &measured)?;
    Ok(fit_report(config, &fit))
}

/// Fitted intensity curve `s²·|model(w)|²` on the reference grid.
fn fitted_curve(config: &ScenarioConfig, reference: &IntensityTrace, fit: &FitResult) -> Result<SampledSignal, CliError> {
    let model = simulate_with_w(ReferenceTrace::Intensity(reference), fit.w_estimate, &config.fiber).map_err(from_fit)?;
    let scale = fit.amplitude_scale;
    let samples = model.samples().iter().map(|s| s * scale).collect();
    SampledSignal::new(model.t_start(), model.dt(), samples, model.carrier_omega()).map_err(from_fit)
}

const FIG2: &str = "\
# Index of refraction and absorption versus detuning for W = +60 and W = -60
target_weak_values = 60, -60
sweep_points = 4001
";

const FIG3A: &str = "\
# 2 ns square pulses through a sequence of decreasing-transmission analyzers
pulse = square
width = 2ns
dt = 1.33ps
samples = 16384
rise = 26.6ps
target_weak_values = 0, -3, -10, -30, -60
remove_free_delay = false
";

// The fitted values printed in the original figure are not legible; these
// are representative fast- and slow-light weak values below the
// superluminal threshold.
const FIG3B: &str = "\
# fast light with a 2 ns pulse
width = 2ns
target_weak_value = -250
";

const FIG3C: &str = "\
# slow light with a 2 ns pulse
width = 2ns
target_weak_value = 250
";

const FIG4: &str = "\
# 50 ns Gaussian pulses: superluminal fast light and the matching slow light
width = 50ns
target_weak_values = -3500, 3500
";

/// Runs one embedded scenario with the fiber and carrier of `base`.
fn embedded(base: &ScenarioConfig, text: &str, name: &str) -> Result<ScenarioConfig, CliError> {
    let mut config = ScenarioConfig::parse(text, name)?;
    config.fiber = base.fiber;
    config.wavelength = base.wavelength;
    config.plot_script = base.plot_script;
    Ok(config)
}

fn propagate_and_fit(config: &ScenarioConfig, dir: &Path, source: &str) -> Result<Vec<String>, CliError> {
    let run = run_propagation(config)?;
    write_propagation(&run, dir)?;
    write_text(&dir.join("scenario.cfg"), source)?;
    let reference = run.reference.intensity_trace();
    let fits = run
        .outputs
        .par_iter()
        .map(|out| {
            let fit = fit_traces(config, &reference, &out.intensity_trace())?;
            let curve = fitted_curve(config, &reference, &fit)?;
            Ok((fit, curve))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut lines = Vec::new();
    let mut fit_names = Vec::new();
    for (k, ((fit, curve), row)) in fits.iter().zip(&run.rows).enumerate() {
        let name = format!("fit_{k}.csv");
        write_signal(&dir.join(&name), curve)?;
        fit_names.push(name);
        lines.push(format!(
            "{}: {}: fitted W = {:.2}, peak shift {:+.4e} s, centroid shift {:+.4e} s",
            dir.display(),
            row.label,
            fit.w_estimate,
            row.peak_shift,
            row.com_shift
        ));
    }
    if config.plot_script {
        write_text(&dir.join("plot_propagate.py"), &plots::propagate_script(&run.output_names, &fit_names))?;
    }
    Ok(lines)
}

pub fn cmd_reproduce(base: &ScenarioConfig, fig: u8, out_dir: &Path) -> Result<Report, CliError> {
    let root: PathBuf = out_dir.join(format!("fig{fig}"));
    let mut report = Report::default();
    match fig {
        2 => {
            let config = embedded(base, FIG2, "fig2")?;
            let sweep = cmd_sweep(&config, &root)?;
            write_text(&root.join("scenario.cfg"), FIG2)?;
            if config.plot_script {
                write_text(&root.join("plot_fig2.py"), &plots::fig2_script())?;
            }
            report.lines = sweep.lines;
        }
        3 => {
            let a = embedded(base, FIG3A, "fig3a")?;
            let dir = root.join("a");
            let run = run_propagation(&a)?;
            write_propagation(&run, &dir)?;
            write_text(&dir.join("scenario.cfg"), FIG3A)?;
            for r in &run.rows {
                report.lines.push(format!(
                    "{}: {}: {:.1} dB, centroid shift {:+.4e} s, front {}",
                    dir.display(),
                    r.label,
                    r.transmission_db,
                    r.com_shift,
                    r.front_arrival.map(|t| format!("{t:.6e} s")).unwrap_or_else(|| "not reached".into())
                ));
            }
            report.lines.extend(propagate_and_fit(&embedded(base, FIG3B, "fig3b")?, &root.join("b"), FIG3B)?);
            report.lines.extend(propagate_and_fit(&embedded(base, FIG3C, "fig3c")?, &root.join("c"), FIG3C)?);
            if base.plot_script {
                write_text(&root.join("plot_fig3.py"), &plots::fig3_script(run.outputs.len()))?;
            }
        }
        4 => {
            let config = embedded(base, FIG4, "fig4")?;
            report.lines = propagate_and_fit(&config, &root, FIG4)?;
            let c_marker = -(config.fiber.index() - 1.0) * config.fiber.length() / SPEED_OF_LIGHT;
            report.lines.push(format!("light travelling at c would peak {c_marker:+.4e} s from the reference"));
            if config.plot_script {
                write_text(&root.join("plot_fig4.py"), &plots::fig4_script(c_marker))?;
            }
        }
        other => {
            return Err(CliError::field("--fig", None, format!("no figure {other}; choose 2, 3 or 4")));
        }
    }
    report.porcelain = format!("dir={}", root.display());
    Ok(report)
}
