//! Standalone matplotlib scripts written next to the CSV outputs. They read
//! only files in their own directory.

const PRELUDE: &str = r#"import csv
import math
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read(name):
    with open(os.path.join(HERE, name), newline="") as f:
        rows = list(csv.DictReader(f))
    return {k: [float(r[k]) if r[k] not in ("", "inf", "nan") else math.nan for r in rows] for k in rows[0]}


def db(values, peak):
    return [10 * math.log10(v / peak) if v > 0 else math.nan for v in values]
"#;

fn list(names: &[String]) -> String {
    let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
    format!("[{}]", quoted.join(", "))
}

pub fn sweep_script(files: &[String]) -> String {
    format!(
        r#"{PRELUDE}
fig, (ax_n, ax_k) = plt.subplots(2, 1, sharex=True)
for name in {files}:
    d = read(name)
    ghz = [x / 1e9 for x in d["detuning_hz"]]
    ax_n.plot(ghz, d["n"], label=name)
    ax_k.plot(ghz, d["kappa_per_m"], label=name)
ax_n.set_ylabel("n")
ax_k.set_ylabel("kappa (1/m)")
ax_k.set_xlabel("detuning (GHz)")
ax_n.legend()
fig.savefig(os.path.join(HERE, "sweep.png"), dpi=150)
"#,
        files = list(files)
    )
}

pub fn propagate_script(outputs: &[String], fits: &[String]) -> String {
    format!(
        r#"{PRELUDE}
ref = read("reference.csv")
peak = max(ref["intensity"])
fig, (ax_lin, ax_db) = plt.subplots(2, 1, sharex=True)
ns = [t * 1e9 for t in ref["time_s"]]
ax_lin.plot(ns, [v / peak for v in ref["intensity"]], "k--", label="reference")
ax_db.plot(ns, db(ref["intensity"], peak), "k--")
for name in {outputs}:
    d = read(name)
    ax_lin.plot(ns, [v / peak for v in d["intensity"]], label=name)
    ax_db.plot(ns, db(d["intensity"], peak))
for name in {fits}:
    d = read(name)
    ax_lin.plot(ns, [v / peak for v in d["intensity"]], ":", label=name)
ax_lin.set_ylabel("intensity / reference peak")
ax_db.set_ylabel("dB")
ax_db.set_ylim(-60, 5)
ax_db.set_xlabel("time (ns)")
ax_lin.legend(fontsize="small")
fig.savefig(os.path.join(HERE, "propagate.png"), dpi=150)
"#,
        outputs = list(outputs),
        fits = list(fits)
    )
}

pub fn fig2_script() -> String {
    format!(
        r#"{PRELUDE}
fig, (ax_n, ax_k) = plt.subplots(2, 1, sharex=True)
for name, label in (("sweep_0.csv", "W = +60"), ("sweep_1.csv", "W = -60")):
    d = read(name)
    ghz = [x / 1e9 for x in d["detuning_hz"]]
    ax_n.plot(ghz, d["n"], label=label)
    ax_k.plot(ghz, d["kappa_per_m"], label=label)
ax_n.set_ylabel("index of refraction")
ax_k.set_ylabel("absorption (1/m)")
ax_k.set_xlabel("detuning (GHz)")
ax_n.legend()
fig.savefig(os.path.join(HERE, "fig2.png"), dpi=150)
"#
    )
}

pub fn fig3_script(sequence: usize) -> String {
    let outputs: Vec<String> = (0..sequence).map(|k| format!("a/output_{k}.csv")).collect();
    format!(
        r#"{PRELUDE}
fig, (ax_a, ax_b, ax_c) = plt.subplots(3, 1, figsize=(6, 10))
ref = read("a/reference.csv")
peak = max(ref["intensity"])
ns = [t * 1e9 for t in ref["time_s"]]
ax_a.plot(ns, db(ref["intensity"], peak), "k--")
for name in {outputs}:
    ax_a.plot(ns, db(read(name)["intensity"], peak))
ax_a.set_ylim(-60, 5)
ax_a.set_ylabel("dB")
for ax, sub in ((ax_b, "b"), (ax_c, "c")):
    ref = read(sub + "/reference.csv")
    out = read(sub + "/output_0.csv")
    fit = read(sub + "/fit_0.csv")
    ns = [t * 1e9 for t in ref["time_s"]]
    rp, op = max(ref["intensity"]), max(out["intensity"])
    ax.plot(ns, [v / rp for v in ref["intensity"]], "k--")
    ax.plot(ns, [v / op for v in out["intensity"]], ".", markersize=2)
    ax.plot(ns, [v / op for v in fit["intensity"]], "-")
    ax.set_xlabel("time (ns)")
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig3.png"), dpi=150)
"#,
        outputs = list(&outputs)
    )
}

pub fn fig4_script(c_marker: f64) -> String {
    format!(
        r#"{PRELUDE}
ref = read("reference.csv")
ns = [t * 1e9 for t in ref["time_s"]]
center = sum(t * v for t, v in zip(ns, ref["intensity"])) / sum(ref["intensity"])
fig, ax = plt.subplots()
ax.plot(ns, [v / max(ref["intensity"]) for v in ref["intensity"]], "k--", label="reference")
for name, label in (("output_0.csv", "fast"), ("output_1.csv", "slow")):
    d = read(name)
    ax.plot(ns, [v / max(d["intensity"]) for v in d["intensity"]], label=label)
ax.axvline(center, color="k", linestyle="--")
ax.axvline(center + {marker}, color="k")
ax.set_xlabel("time (ns)")
ax.legend()
fig.savefig(os.path.join(HERE, "fig4.png"), dpi=150)
"#,
        marker = c_marker * 1e9
    )
}
