"""Figure and CSV rendering for the report-producing CLI paths.

Renders the planar picture of the zero-norm ball and Newton polygons to
image files, and writes the same data as delimited text so scripts can
consume it without parsing JSON.
"""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import math

import matplotlib.pyplot as plt


def render_mz_picture(data: dict, path: str) -> None:
    """Draw the segment-plus-arcs picture produced by mz_structure."""
    fig, ax = plt.subplots(figsize=(7, 5))
    seg = data["segment"]
    ax.plot([seg["start"]["x"], seg["end"]["x"]],
            [seg["start"]["y"], seg["end"]["y"]], color="black", lw=1.5)
    ax.annotate(seg["start"]["label"], (seg["start"]["x"], seg["start"]["y"]),
                textcoords="offset points", xytext=(-4, -14))
    ax.annotate("0_Q", (seg["end"]["x"], seg["end"]["y"]),
                textcoords="offset points", xytext=(2, -14))
    for s in seg["samples"]:
        ax.plot(s["x"], s["y"], "k.", ms=4)
    for arc in data["arcs"]:
        r = arc["radius"]
        ts = [t / 200 for t in range(201)]
        xs = [2.0 + r * math.sin(math.pi * t) for t in ts]
        ys = [r * (1.0 - math.cos(math.pi * t)) for t in ts]
        ax.plot(xs, ys, lw=1.0)
        ep = arc["endpoint"]
        ax.plot(ep["x"], ep["y"], "ko", ms=3)
        ax.annotate(ep["label"], (ep["x"], ep["y"]),
                    textcoords="offset points", xytext=(4, 2), fontsize=8)
        for s in arc["samples"]:
            ax.plot(s["x"], s["y"], ".", ms=4)
    ax.plot(2.0, 0.0, "ko", ms=4)
    ax.set_aspect("equal")
    ax.set_title("zero-norm ball: real segment and one arc per prime")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_mz_csv(data: dict, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["branch", "p", "parameter", "label", "x", "y"])
        seg = data["segment"]
        w.writerow(["segment", "", "1", seg["start"]["label"],
                    seg["start"]["x"], seg["start"]["y"]])
        for s in seg["samples"]:
            w.writerow(["segment", "", s["upsilon"], s["label"], s["x"], s["y"]])
        w.writerow(["junction", "", "", "0_Q", 2.0, 0.0])
        for arc in data["arcs"]:
            for s in arc["samples"]:
                w.writerow(["arc", arc["p"], s["omega"], s["label"],
                            s["x"], s["y"]])
            ep = arc["endpoint"]
            w.writerow(["arc-endpoint", arc["p"], "inf", ep["label"],
                        ep["x"], ep["y"]])
        for row in data.get("thresholds", []):
            w.writerow(["threshold", row["p"],
                        f"k={row['k']},eps={row['epsilon']}", "",
                        row["omega"], ""])


def render_newton_polygon(polygon_json: dict, p: int, path: str) -> None:
    """Draw coefficient valuations and the lower hull of a Fredholm series."""
    fig, ax = plt.subplots(figsize=(6, 4))
    verts = [(int(m), float(_fraction(v))) for m, v in polygon_json["vertices"]]
    if verts:
        ax.plot([m for m, _ in verts], [v for _, v in verts],
                "o-", color="tab:blue", label="lower hull")
    for m, v in verts:
        ax.annotate(f"({m}, {v:g})", (m, v), textcoords="offset points",
                    xytext=(4, 4), fontsize=8)
    ax.set_xlabel("coefficient degree m")
    ax.set_ylabel(f"{p}-adic valuation of c_m")
    ax.set_title("Newton polygon of det(1 - t u)")
    ax.grid(True, alpha=0.3)
    if verts:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_fredholm_csv(series_json: dict, polygon_json: dict, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "coefficient", "valuation",
                    "stabilization_bound", "certified"])
        for row in series_json["coeffs"]:
            w.writerow([row["m"], row["value"],
                        "" if row["valuation"] is None else row["valuation"],
                        row["stabilization_bound"] or "", row["certified"]])
        w.writerow([])
        w.writerow(["segment_slope", "segment_length"])
        for seg in polygon_json["segments"]:
            w.writerow([seg["slope"], seg["length"]])


def _fraction(text: str) -> float:
    if "/" in text:
        a, b = text.split("/")
        return float(a) / float(b)
    return float(text)
