//! Scenario files: one `key = value` per line, `#` starts a comment.
//!
//! Numbers may carry a unit suffix (`2.66ps`, `1.5 m`, `45deg`, `20GHz`);
//! without one they are read in SI units, angles in degrees. Lists are
//! comma separated.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use fastlight_core::{Complex64, FiberMedium, PolarizationState};

use crate::error::CliError;

pub const KEYS: &[&str] = &[
    "length",
    "index",
    "dgd",
    "wavelength",
    "pre_angle",
    "pre_state",
    "post_angle",
    "post_angles",
    "post_state",
    "post_phase",
    "target_weak_value",
    "target_weak_values",
    "align_to_carrier",
    "pulse",
    "width",
    "rise",
    "center",
    "dt",
    "samples",
    "detuning_min",
    "detuning_max",
    "sweep_points",
    "remove_free_delay",
    "front_threshold",
    "w_min",
    "w_max",
    "output_dir",
    "plot_script",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Time,
    Length,
    Angle,
    Frequency,
    Number,
}

const UNITS: &[(&str, Dimension, f64)] = &[
    ("fs", Dimension::Time, 1e-15),
    ("ps", Dimension::Time, 1e-12),
    ("ns", Dimension::Time, 1e-9),
    ("us", Dimension::Time, 1e-6),
    ("µs", Dimension::Time, 1e-6),
    ("ms", Dimension::Time, 1e-3),
    ("s", Dimension::Time, 1.0),
    ("nm", Dimension::Length, 1e-9),
    ("um", Dimension::Length, 1e-6),
    ("µm", Dimension::Length, 1e-6),
    ("mm", Dimension::Length, 1e-3),
    ("cm", Dimension::Length, 1e-2),
    ("m", Dimension::Length, 1.0),
    ("km", Dimension::Length, 1e3),
    ("deg", Dimension::Angle, PI / 180.0),
    ("rad", Dimension::Angle, 1.0),
    ("Hz", Dimension::Frequency, 1.0),
    ("kHz", Dimension::Frequency, 1e3),
    ("MHz", Dimension::Frequency, 1e6),
    ("GHz", Dimension::Frequency, 1e9),
    ("THz", Dimension::Frequency, 1e12),
];

/// Parses `<number>[ ]<unit>` into SI units (radians for angles).
pub fn parse_quantity(text: &str, dimension: Dimension) -> Result<f64, String> {
    let text = text.trim();
    // longest prefix that reads as a number; the rest is the unit
    let (value, unit) = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(text.len()))
        .rev()
        .find_map(|i| text[..i].trim().parse::<f64>().ok().map(|v| (v, &text[i..])))
        .ok_or_else(|| format!("`{text}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    let unit = unit.trim();
    if unit.is_empty() {
        let scale = if dimension == Dimension::Angle { PI / 180.0 } else { 1.0 };
        return Ok(value * scale);
    }
    match UNITS.iter().find(|(name, _, _)| *name == unit) {
        Some(&(_, dim, scale)) if dim == dimension => Ok(value * scale),
        Some(_) => Err(format!("unit `{unit}` does not fit a {dimension:?} value").to_lowercase()),
        None => Err(format!("unknown unit `{unit}`")),
    }
}

pub fn parse_bool(text: &str) -> Result<bool, String> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

/// Named state (`H`, `V`, `D`, `A`, `R`, `L`) or two complex amplitudes
/// `h, v` such as `0.6, 0.8i` or `1+1i, 0`.
pub fn parse_state(text: &str) -> Result<PolarizationState, String> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let named = |h: Complex64, v: Complex64| PolarizationState::new(h, v).map_err(|e| e.to_string());
    match text.trim() {
        "H" => return Ok(PolarizationState::horizontal()),
        "V" => return Ok(PolarizationState::vertical()),
        "D" => return Ok(PolarizationState::diagonal()),
        "A" => return named(Complex64::new(s, 0.0), Complex64::new(-s, 0.0)),
        "R" => return named(Complex64::new(s, 0.0), Complex64::new(0.0, -s)),
        "L" => return named(Complex64::new(s, 0.0), Complex64::new(0.0, s)),
        _ => {}
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("`{text}`: expected a named state or two complex amplitudes `h, v`"));
    }
    let parse = |p: &str| Complex64::from_str(&p.replace(' ', "")).map_err(|_| format!("`{p}` is not a complex number"));
    named(parse(parts[0])?, parse(parts[1])?)
}

/// Maps an angle to `[0°, 180°)`; a polarizer at `θ + 180°` is the same
/// polarizer.
pub fn normalize_angle(radians: f64) -> f64 {
    let r = radians.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    value: String,
}

/// Key/value pairs as written, with line numbers for diagnostics.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, Entry>,
}

impl RawConfig {
    pub fn parse(text: &str, source_name: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let syntax = |message: String| CliError::Syntax {
                source_name: source_name.to_string(),
                line,
                message,
            };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got `{content}`")))?;
            let key = key.trim();
            let value = value.trim();
            if !KEYS.contains(&key) {
                return Err(syntax(format!("unknown key `{key}`")));
            }
            if value.is_empty() {
                return Err(syntax(format!("`{key}` has no value")));
            }
            if let Some(previous) = entries.get(key) {
                let Entry { line: first, .. } = previous;
                return Err(syntax(format!("`{key}` already set on line {first}")));
            }
            entries.insert(key.to_string(), Entry { line, value: value.to_string() });
        }
        Ok(Self { entries })
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn line(&self, key: &str) -> Option<usize> {
        self.entries.get(key).map(|e| e.line)
    }

    fn get<T>(&self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(e) => parse(&e.value).map(Some).map_err(|m| CliError::field(key, Some(e.line), m)),
        }
    }

    fn quantity(&self, key: &str, dimension: Dimension) -> Result<Option<f64>, CliError> {
        self.get(key, |v| parse_quantity(v, dimension))
    }

    fn list(&self, key: &str, dimension: Dimension) -> Result<Option<Vec<f64>>, CliError> {
        self.get(key, |v| v.split(',').map(|item| parse_quantity(item, dimension)).collect())
    }

    /// Errors if more than one of `keys` is present.
    fn exclusive(&self, keys: &[&str]) -> Result<(), CliError> {
        let present: Vec<&&str> = keys.iter().filter(|k| self.contains(k)).collect();
        if present.len() > 1 {
            let key = present[1];
            return Err(CliError::field(
                key,
                self.line(key),
                format!("conflicts with `{}`; set only one of {}", present[0], keys.join(", ")),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseShape {
    Gaussian,
    Square,
}

/// How one post-selection is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PostSpec {
    /// Linear analyzer at `angle` (radians) with an extra relative phase.
    Angle { angle: f64, phase: f64 },
    State(PolarizationState),
    /// Real weak value to realize at the carrier.
    Target(f64),
}

impl PostSpec {
    pub fn label(&self) -> String {
        match self {
            PostSpec::Angle { angle, phase } if *phase == 0.0 => format!("angle={:.6}deg", angle.to_degrees()),
            PostSpec::Angle { angle, phase } => {
                format!("angle={:.6}deg phase={:.6}deg", angle.to_degrees(), phase.to_degrees())
            }
            PostSpec::State(s) => format!("state=({}, {})", s.amp_h(), s.amp_v()),
            PostSpec::Target(w) => format!("W={w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    pub shape: PulseShape,
    /// Intensity FWHM (Gaussian) or flat-top duration (square).
    pub width: f64,
    pub rise: Option<f64>,
    /// Gaussian center or square start.
    pub center: Option<f64>,
    pub dt: Option<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub fiber: FiberMedium,
    pub wavelength: f64,
    pub pre: PolarizationState,
    pub posts: Vec<PostSpec>,
    pub align_to_carrier: bool,
    pub pulse: PulseSpec,
    pub detuning: (f64, f64),
    pub sweep_points: usize,
    pub remove_free_delay: bool,
    pub front_threshold: f64,
    pub w_range: (f64, f64),
    pub output_dir: Option<PathBuf>,
    pub plot_script: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::from_raw(&RawConfig::default()).expect("defaults are valid")
    }
}

impl ScenarioConfig {
    pub fn parse(text: &str, source_name: &str) -> Result<Self, CliError> {
        Self::from_raw(&RawConfig::parse(text, source_name)?)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        let positive = |key: &str, value: f64| -> Result<f64, CliError> {
            if value > 0.0 {
                Ok(value)
            } else {
                Err(CliError::field(key, raw.line(key), format!("must be > 0, got {value}")))
            }
        };

        let reference = FiberMedium::reference();
        let length = positive("length", raw.quantity("length", Dimension::Length)?.unwrap_or(reference.length()))?;
        let index = raw.quantity("index", Dimension::Number)?.unwrap_or(reference.index());
        if !(index >= 1.0) {
            return Err(CliError::field("index", raw.line("index"), format!("must be >= 1, got {index}")));
        }
        let dgd = positive("dgd", raw.quantity("dgd", Dimension::Time)?.unwrap_or(reference.dgd()))?;
        let fiber = FiberMedium::new(length, index, dgd).map_err(|e| CliError::field("length", None, e.to_string()))?;
        let wavelength = positive(
            "wavelength",
            raw.quantity("wavelength", Dimension::Length)?.unwrap_or(fastlight_core::DEFAULT_WAVELENGTH),
        )?;

        raw.exclusive(&["pre_angle", "pre_state"])?;
        let pre = if let Some(state) = raw.get("pre_state", parse_state)? {
            state
        } else {
            let angle = raw.quantity("pre_angle", Dimension::Angle)?.unwrap_or(PI / 4.0);
            PolarizationState::linear(normalize_angle(angle))
        };

        raw.exclusive(&["post_angle", "post_angles", "post_state", "target_weak_value", "target_weak_values"])?;
        let phase = raw.quantity("post_phase", Dimension::Angle)?.unwrap_or(0.0);
        if raw.contains("post_phase") && !(raw.contains("post_angle") || raw.contains("post_angles")) {
            return Err(CliError::field(
                "post_phase",
                raw.line("post_phase"),
                "only applies together with `post_angle` or `post_angles`",
            ));
        }
        let angles = match raw.quantity("post_angle", Dimension::Angle)? {
            Some(a) => Some(vec![a]),
            None => raw.list("post_angles", Dimension::Angle)?,
        };
        let targets = match raw.quantity("target_weak_value", Dimension::Number)? {
            Some(w) => Some(vec![w]),
            None => raw.list("target_weak_values", Dimension::Number)?,
        };
        let posts = if let Some(angles) = angles {
            angles
                .into_iter()
                .map(|a| PostSpec::Angle { angle: normalize_angle(a), phase })
                .collect()
        } else if let Some(state) = raw.get("post_state", parse_state)? {
            vec![PostSpec::State(state)]
        } else if let Some(targets) = targets {
            targets.into_iter().map(PostSpec::Target).collect()
        } else {
            vec![PostSpec::Target(-3500.0)]
        };

        let align_to_carrier = raw.get("align_to_carrier", parse_bool)?.unwrap_or(true);

        let shape = match raw.get("pulse", |v| match v.trim().to_ascii_lowercase().as_str() {
            "gaussian" => Ok(PulseShape::Gaussian),
            "square" => Ok(PulseShape::Square),
            other => Err(format!("unknown pulse shape `{other}` (gaussian or square)")),
        })? {
            Some(shape) => shape,
            None => PulseShape::Gaussian,
        };
        let width = positive("width", raw.quantity("width", Dimension::Time)?.unwrap_or(50e-9))?;
        let rise = raw.quantity("rise", Dimension::Time)?.map(|r| positive("rise", r)).transpose()?;
        if rise.is_some() && shape != PulseShape::Square {
            return Err(CliError::field("rise", raw.line("rise"), "only applies to `pulse = square`"));
        }
        let center = raw.quantity("center", Dimension::Time)?;
        let dt = raw.quantity("dt", Dimension::Time)?.map(|d| positive("dt", d)).transpose()?;
        let samples = raw.quantity("samples", Dimension::Number)?.unwrap_or(fastlight_core::pulse::DEFAULT_SAMPLES as f64);
        if !(samples >= 8.0 && samples.fract() == 0.0) {
            return Err(CliError::field("samples", raw.line("samples"), format!("must be an integer >= 8, got {samples}")));
        }

        let fsr_hz = 1.0 / dgd;
        let detuning_min = raw.quantity("detuning_min", Dimension::Frequency)?.unwrap_or(-1.5 * fsr_hz);
        let detuning_max = raw.quantity("detuning_max", Dimension::Frequency)?.unwrap_or(1.5 * fsr_hz);
        if !(detuning_min < detuning_max) {
            return Err(CliError::field(
                "detuning_max",
                raw.line("detuning_max"),
                format!("must exceed detuning_min ({detuning_min} Hz), got {detuning_max} Hz"),
            ));
        }
        let carrier_hz = fastlight_core::SPEED_OF_LIGHT / wavelength;
        if !(carrier_hz + detuning_min > 0.0) {
            return Err(CliError::field("detuning_min", raw.line("detuning_min"), "reaches below zero absolute frequency"));
        }
        let sweep_points = raw.quantity("sweep_points", Dimension::Number)?.unwrap_or(2001.0);
        if !(sweep_points >= 2.0 && sweep_points.fract() == 0.0) {
            return Err(CliError::field(
                "sweep_points",
                raw.line("sweep_points"),
                format!("must be an integer >= 2, got {sweep_points}"),
            ));
        }

        let remove_free_delay = raw.get("remove_free_delay", parse_bool)?.unwrap_or(true);
        let front_threshold = raw.quantity("front_threshold", Dimension::Number)?.unwrap_or(1e-3);
        if !(front_threshold > 0.0 && front_threshold < 1.0) {
            return Err(CliError::field(
                "front_threshold",
                raw.line("front_threshold"),
                format!("must lie in (0, 1), got {front_threshold}"),
            ));
        }
        let w_min = raw.quantity("w_min", Dimension::Number)?.unwrap_or(-10_000.0);
        let w_max = raw.quantity("w_max", Dimension::Number)?.unwrap_or(10_000.0);
        if !(w_min < w_max) {
            return Err(CliError::field("w_max", raw.line("w_max"), format!("must exceed w_min ({w_min}), got {w_max}")));
        }
        let output_dir = raw.get("output_dir", |v| Ok(PathBuf::from(v)))?;
        let plot_script = raw.get("plot_script", parse_bool)?.unwrap_or(true);

        Ok(Self {
            fiber,
            wavelength,
            pre,
            posts,
            align_to_carrier,
            pulse: PulseSpec {
                shape,
                width,
                rise,
                center,
                dt,
                samples: samples as usize,
            },
            detuning: (detuning_min, detuning_max),
            sweep_points: sweep_points as usize,
            remove_free_delay,
            front_threshold,
            w_range: (w_min, w_max),
            output_dir,
            plot_script,
        })
    }

    pub fn carrier_omega(&self) -> f64 {
        fastlight_core::carrier_omega(self.wavelength)
    }
}
