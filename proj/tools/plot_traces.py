#!/usr/bin/env python3
"""Plot concurrence traces or sweep summaries produced by the spinchain CLI.

Trace files carry a '#' metadata block (configuration echo plus detected
t_ESD / t_rev) followed by a CSV table; everything needed for the plot is
read back from the file itself.
"""

import argparse
import io
import re

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def read_metadata(path):
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            m = re.match(r"#\s*([\w.]+)\s*=\s*(\S+)", line)
            if m:
                meta[m.group(1)] = m.group(2)
    return meta


def load_table(path):
    # genfromtxt(names=True) would mistake the first '#' metadata line for
    # the header row, so strip the metadata block first
    with open(path) as fh:
        body = "".join(line for line in fh if not line.startswith("#"))
    data = np.genfromtxt(io.StringIO(body), delimiter=",", names=True)
    if data.ndim == 0:
        data = data.reshape(1)
    return data


def plot_trace(ax, path, components):
    meta = read_metadata(path)
    data = load_table(path)
    label = path
    for key in ("initial", "side_A.h", "side_A.h0", "side_A.J0_x"):
        if key in meta:
            label = f"{meta.get('initial', '?')}  h={meta.get('side_A.h', '?')}" \
                    f"  h0={meta.get('side_A.h0', '?')}  J0={meta.get('side_A.J0_x', '?')}"
            break
    ax.plot(data["t"], data["C"], label=f"C  [{label}]")
    if components:
        ax.plot(data["t"], data["C_par"], "--", lw=0.9, label="C_par")
        ax.plot(data["t"], data["C_anti"], ":", lw=0.9, label="C_anti")
    if "t_ESD" in meta:
        ax.axvline(float(meta["t_ESD"]), color="k", lw=0.7, alpha=0.5)
        ax.annotate("ESD", (float(meta["t_ESD"]), 0.02), fontsize=8)
    if "t_rev" in meta:
        ax.axvline(float(meta["t_rev"]), color="g", lw=0.7, alpha=0.5)
        ax.annotate("revival", (float(meta["t_rev"]), 0.05), fontsize=8, color="g")
    ax.set_xlabel("t")
    ax.set_ylabel("concurrence")
    ax.set_ylim(bottom=-0.02)


def plot_summary(ax, path, x, y, loglog):
    data = load_table(path)
    if x not in data.dtype.names or y not in data.dtype.names:
        raise SystemExit(f"{path}: columns {data.dtype.names}, asked for {x},{y}")
    plot = ax.loglog if loglog else ax.plot
    plot(data[x], data[y], "o-", label=path)
    ax.set_xlabel(x)
    ax.set_ylabel(y)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("files", nargs="+", help="trace or summary CSV files")
    ap.add_argument("-o", "--output", default="trace.png")
    ap.add_argument("--components", action="store_true",
                    help="also draw the parallel/antiparallel components")
    ap.add_argument("--summary", nargs=2, metavar=("XCOL", "YCOL"),
                    help="treat inputs as sweep summaries and plot YCOL vs XCOL")
    ap.add_argument("--loglog", action="store_true")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(7.2, 4.4))
    for path in args.files:
        if args.summary:
            plot_summary(ax, path, args.summary[0], args.summary[1], args.loglog)
        else:
            plot_trace(ax, path, args.components)
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.output, dpi=160)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
