//! Matplotlib scripts that read the CSVs next to them. They only use paths
//! relative to their own directory.

const COMMON: &str = r##"import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read(name):
    meta, rows = {}, []
    with open(os.path.join(HERE, name)) as f:
        lines = []
        for line in f:
            if line.startswith("#"):
                if " = " in line:
                    k, v = line[1:].split(" = ", 1)
                    meta[k.strip()] = v.strip()
            else:
                lines.append(line)
    for r in csv.DictReader(lines):
        rows.append(r)
    return meta, rows


def num(s):
    return float(s) if s not in ("", None) else float("nan")


def intervals(meta):
    try:
        return [(float(meta["omega_minL"]), float(meta["omega_minR"])),
                (float(meta["omega_maxL"]), float(meta["omega_maxR"]))]
    except KeyError:
        return []
"##;

const SPECTRA: &str = r##"
meta, rows = read("spectra.csv")
omega = [num(r["omega"]) for r in rows]
labels = [k[4:] for k in rows[0] if k.startswith("phi_")]
fig, ax = plt.subplots(figsize=(8, 5))
for lab in labels:
    ys = [num(r["phi_" + lab]) for r in rows]
    if all(y != y or y <= 0 for y in ys):
        continue
    ax.plot(omega, ys, lw=0.8, label=lab)
for lo, hi in intervals(meta):
    ax.axvspan(lo, hi, color="0.85", zorder=0)
ax.set_yscale("log")
ax.set_xlabel("comoving frequency")
ax.set_ylabel("photon flux per mode")
ax.legend(ncol=3, fontsize=7)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "spectra.png"), dpi=150)
"##;

const ENTANGLEMENT: &str = r##"
meta, rows = read("entanglement.csv")
omega = [num(r["omega"]) for r in rows]
keys = [k for k in rows[0] if k.startswith("EN_noL_")]
fig, ax = plt.subplots(figsize=(8, 5))
for k in keys:
    ys = [num(r[k]) for r in rows]
    if all(y != y or y <= 0 for y in ys):
        continue
    ax.plot(omega, ys, lw=0.8, label="noL-" + k[7:])
for lo, hi in intervals(meta):
    ax.axvspan(lo, hi, color="0.85", zorder=0)
ax.set_xlabel("comoving frequency")
ax.set_ylabel("logarithmic negativity")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "entanglement.png"), dpi=150)
"##;

const HEATMAPS: &str = r##"
ORDER = ["no", "uo", "mo", "lo", "c", "ul", "nl", "ll", "nul"]


def order_key(label):
    side = label[-1]
    return ("LR".index(side), ORDER.index(label[:-1]))


for prefix in ("correlations", "degree"):
    names = [n for n in sorted(os.listdir(HERE)) if n.startswith(prefix + "_") and n.endswith(".csv")]
    if not names:
        continue
    fig, axes = plt.subplots(1, len(names), figsize=(3.2 * len(names), 3.4))
    if len(names) == 1:
        axes = [axes]
    for ax, name in zip(axes, names):
        _, rows = read(name)
        labs = sorted([r["mode"] for r in rows], key=order_key)
        by = {r["mode"]: r for r in rows}
        m = [[num(by[a][b]) if a != b else float("nan") for b in labs] for a in labs]
        im = ax.imshow(m, vmin=0, vmax=1, cmap="viridis")
        ax.set_xticks(range(len(labs)))
        ax.set_xticklabels(labs, rotation=90, fontsize=7)
        ax.set_yticks(range(len(labs)))
        ax.set_yticklabels(labs, fontsize=7)
        ax.set_title(name[len(prefix) + 1:-4])
    fig.colorbar(im, ax=list(axes), shrink=0.8)
    fig.savefig(os.path.join(HERE, prefix + ".png"), dpi=150)
"##;

const JC: &str = r##"
meta, rows = read("jc_scatter.csv")
fig, ax = plt.subplots(figsize=(5, 5))
for sc in "ABCDE":
    pts = [(num(r["c"]), num(r["j"])) for r in rows if r["scenario"] == sc]
    if pts:
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=12, label=sc)
ax.set_xlim(0, 1)
ax.set_ylim(0, 1)
ax.set_xlabel("correlation coefficient C")
ax.set_ylabel("degree of entanglement J")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(HERE, "jc_scatter.png"), dpi=150)
"##;

/// `(file name, contents)` for each plot script.
pub fn plot_scripts() -> Vec<(String, String)> {
    [
        ("plot_spectra.py", SPECTRA),
        ("plot_entanglement.py", ENTANGLEMENT),
        ("plot_heatmaps.py", HEATMAPS),
        ("plot_jc.py", JC),
    ]
    .into_iter()
    .map(|(n, body)| (n.to_string(), format!("{COMMON}{body}")))
    .collect()
}
