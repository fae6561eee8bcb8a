//! Signal files: header `time_s,re,im,intensity`, one row per sample, numbers
//! written with 17 significant digits.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::{IntensityTrace, SampledSignal};
use crate::error::{Error, Result};

pub const HEADER: [&str; 4] = ["time_s", "re", "im", "intensity"];

/// Fixed 17-significant-digit scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_signal<W: Write>(writer: W, signal: &SampledSignal) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::SignalFile(e.to_string());
    out.write_record(HEADER).map_err(io)?;
    for (t, s) in signal.times().zip(signal.samples()) {
        out.write_record([
            format_number(t),
            format_number(s.re),
            format_number(s.im),
            format_number(s.norm_sqr()),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| Error::SignalFile(e.to_string()))
}

pub fn write_signal_file(path: &Path, signal: &SampledSignal) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::SignalFile(format!("{}: {e}", path.display())))?;
    write_signal(std::io::BufWriter::new(file), signal)
}

/// Contents of a signal file. The intensity column is kept as written, so
/// intensity-only files (zero `re`/`im`) are still usable.
#[derive(Debug, Clone)]
pub struct SignalRecord {
    pub signal: SampledSignal,
    pub intensity: IntensityTrace,
}

pub fn read_signal<R: Read>(reader: R, carrier_omega: f64) -> Result<SignalRecord> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let bad = |msg: String| Error::SignalFile(msg);
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.iter().ne(HEADER) {
        return Err(bad(format!("expected header {}, got {}", HEADER.join(","), headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut times = Vec::new();
    let mut samples = Vec::new();
    let mut intensity = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| -> Result<f64> {
            let raw = record.get(i).ok_or_else(|| bad(format!("row {}: missing column {}", row + 2, HEADER[i])))?;
            raw.parse::<f64>()
                .map_err(|_| bad(format!("row {}: cannot parse {} value `{raw}`", row + 2, HEADER[i])))
        };
        times.push(field(0)?);
        samples.push(Complex64::new(field(1)?, field(2)?));
        intensity.push(field(3)?);
    }
    if times.len() < 2 {
        return Err(bad(format!("need at least 2 samples, got {}", times.len())));
    }
    let n = times.len();
    let t_start = times[0];
    let dt = (times[n - 1] - t_start) / (n - 1) as f64;
    if !(dt > 0.0) {
        return Err(bad("time column must increase".into()));
    }
    for (k, &t) in times.iter().enumerate() {
        if (t - (t_start + k as f64 * dt)).abs() > 1e-6 * dt {
            return Err(bad(format!("non-uniform time grid at row {}", k + 2)));
        }
    }
    let signal = SampledSignal::new(t_start, dt, samples, carrier_omega)?;
    Ok(SignalRecord {
        signal,
        intensity: IntensityTrace {
            t_start,
            dt,
            values: intensity,
            carrier_omega,
        },
    })
}

pub fn read_signal_file(path: &Path, carrier_omega: f64) -> Result<SignalRecord> {
    let file = std::fs::File::open(path).map_err(|e| Error::SignalFile(format!("{}: {e}", path.display())))?;
    read_signal(std::io::BufReader::new(file), carrier_omega)
}
