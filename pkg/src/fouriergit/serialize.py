"""Deterministic on-disk formats: CSV tables and key=value blocks.

All floats are written with 17 significant digits (enough to round-trip
float64 exactly), all files use LF line endings, and metadata rides along
as '# key=value' comment lines before the CSV header. Writing the same
objects twice produces byte-identical files.
"""

from __future__ import annotations

import csv
import re

import numpy as np

from .moments import FourierMomentSet
from .planner import ExtensionPlan
from .spectrum import DiscreteSpectrum
from .transform import TransformCurve

_INT_RE = re.compile(r"^[+-]?\d+$")


def format_value(v) -> str:
    """Canonical text form: '' for None, 17 significant digits for floats."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def parse_value(s: str):
    """Inverse of format_value with type inference."""
    s = s.strip()
    if s == "":
        return None
    if s == "true":
        return True
    if s == "false":
        return False
    if _INT_RE.match(s):
        return int(s)
    try:
        return float(s)
    except ValueError:
        return s


def _keyvalue_lines(d: dict) -> list[str]:
    return [f"{k}={format_value(v)}" for k, v in d.items()]


def write_keyvalues(path, d: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        for line in _keyvalue_lines(d):
            fh.write(line + "\n")


def read_keyvalues(path) -> dict:
    out = {}
    with open(path, "r") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"malformed key=value line: {line!r}")
            key, _, val = line.partition("=")
            out[key.strip()] = parse_value(val)
    return out


def plan_to_text(plan: ExtensionPlan) -> str:
    return "\n".join(_keyvalue_lines(plan.to_dict())) + "\n"


def plan_from_text(text: str) -> ExtensionPlan:
    d = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"malformed key=value line: {line!r}")
        key, _, val = line.partition("=")
        d[key.strip()] = parse_value(val)
    return ExtensionPlan.from_dict(d)


def write_plan(path, plan: ExtensionPlan) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(plan_to_text(plan))


def read_plan(path) -> ExtensionPlan:
    with open(path, "r") as fh:
        return plan_from_text(fh.read())


def _open_csv_writer(fh, metadata: dict | None):
    if metadata:
        for line in _keyvalue_lines(metadata):
            fh.write("# " + line + "\n")
    return csv.writer(fh, lineterminator="\n")


def _read_csv_with_metadata(path):
    metadata = {}
    rows = []
    with open(path, "r", newline="") as fh:
        header = None
        for raw in fh:
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    metadata[key.strip()] = parse_value(val)
                continue
            cells = next(csv.reader([line]))
            if header is None:
                header = cells
            else:
                rows.append(cells)
    if header is None:
        raise ValueError(f"{path}: no CSV header found")
    return header, rows, metadata


def write_table(path, columns, rows, metadata: dict | None = None) -> None:
    """Generic CSV table with an optional metadata comment block."""
    with open(path, "w", newline="\n") as fh:
        writer = _open_csv_writer(fh, metadata)
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([format_value(c) for c in row])


def write_spectrum(path, spectrum: DiscreteSpectrum) -> None:
    """Two-column CSV (omega, weight); norm_scale rides in the metadata."""
    rows = zip(spectrum.eigenfrequencies, spectrum.weights)
    write_table(
        path, ("omega", "weight"), rows, metadata={"norm_scale": spectrum.norm_scale}
    )


def read_spectrum(path) -> DiscreteSpectrum:
    header, rows, metadata = _read_csv_with_metadata(path)
    if header[:2] != ["omega", "weight"]:
        raise ValueError(f"{path}: expected header omega,weight, got {header}")
    om = np.array([float(r[0]) for r in rows])
    w = np.array([float(r[1]) for r in rows])
    norm_scale = float(metadata.get("norm_scale", 1.0))
    return DiscreteSpectrum(om, w, norm_scale=norm_scale)


def write_moments(path, moments: FourierMomentSet) -> None:
    """Three-column CSV (n, re, im); dt, mu0 and provenance in metadata."""
    meta = {
        "dt": moments.dt,
        "mu0": moments.mu0,
        "provenance": moments.provenance,
        "shots_per_part": moments.shots_per_part,
        "seed": moments.seed,
    }
    rows = (
        (n, v.real, v.imag) for n, v in enumerate(moments.values)
    )
    write_table(path, ("n", "re", "im"), rows, metadata=meta)


def read_moments(path) -> FourierMomentSet:
    header, rows, metadata = _read_csv_with_metadata(path)
    if header[:3] != ["n", "re", "im"]:
        raise ValueError(f"{path}: expected header n,re,im, got {header}")
    order = [int(r[0]) for r in rows]
    if order != list(range(len(order))):
        raise ValueError(f"{path}: moment orders must run 0..n_max contiguously")
    vals = np.array([complex(float(r[1]), float(r[2])) for r in rows])
    return FourierMomentSet(
        dt=float(metadata["dt"]),
        values=vals,
        provenance=str(metadata["provenance"]),
        mu0=float(metadata["mu0"]),
        shots_per_part=metadata.get("shots_per_part"),
        seed=metadata.get("seed"),
    )


def write_curves(path, curves, metadata: dict | None = None) -> None:
    """Concatenated (nu, value, kind) rows for one or more curves."""
    rows = []
    for curve in curves:
        for nu, val in zip(curve.grid, curve.values):
            rows.append((nu, val, curve.kind))
    write_table(path, ("nu", "value", "kind"), rows, metadata=metadata)


def read_curves(path):
    """Returns (curves, metadata); rows are regrouped by kind in file order."""
    header, rows, metadata = _read_csv_with_metadata(path)
    if header[:3] != ["nu", "value", "kind"]:
        raise ValueError(f"{path}: expected header nu,value,kind, got {header}")
    groups: dict[str, list] = {}
    order = []
    for r in rows:
        kind = r[2]
        if kind not in groups:
            groups[kind] = []
            order.append(kind)
        groups[kind].append((float(r[0]), float(r[1])))
    curves = []
    for kind in order:
        pts = np.array(groups[kind])
        curves.append(TransformCurve(pts[:, 0], pts[:, 1], kind))
    return curves, metadata


def read_config(path) -> dict:
    """Line-based key=value config file; '#' comments and blanks allowed.

    Values are returned as raw strings; the CLI validates and converts
    them against each command's known options.
    """
    out = {}
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out
