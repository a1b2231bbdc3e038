"""Parameter sweeps over the phase diagram and their CSV/JSON exports.

A sweep walks one or two axes (gamma, epsilon, omega, delta, delta_sq, or
time t), classifies the phase at every grid point and evaluates the
requested quantities.  Cells inside the exceptional-point band keep their
label and eigenvalues but omit the quantities that need eigenvectors or a
diagonalizable generator (metric norm, survival, Bloch components); the
entropy limit ln 2 is still reported there.

Exports are deterministic: fixed row order (block index outermost, then
axis2-major, then axis1), fixed column order, floats printed with 17
significant digits so CSV and JSON round-trip byte-for-byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .dynamics import (
    BlochState,
    effective_generator,
    evolve_no_jump,
)
from .biortho import metric
from .entropy import entanglement_entropy
from .errors import EmptySweepError, SpecValidationError
from .model import (
    Branch,
    ModelParams,
    Phase,
    Spectrum,
    classify_phase,
    spectrum_closed_form,
)

__all__ = [
    "AXIS_NAMES",
    "QUANTITIES",
    "Axis",
    "SweepSpec",
    "PhaseCell",
    "run_sweep",
    "export_csv",
    "export_json",
    "read_csv",
    "read_json",
    "spec_to_dict",
    "spec_from_dict",
]

AXIS_NAMES = ("gamma", "epsilon", "omega", "delta", "delta_sq", "t")
QUANTITIES = ("eigenvalues", "phase", "metric_norm", "entropy", "survival", "bloch")

_BASE_COLUMNS = (
    "n",
    "phase",
    "discriminant",
    "eigenvalue_I_re",
    "eigenvalue_I_im",
    "eigenvalue_II_re",
    "eigenvalue_II_im",
)


@dataclass(frozen=True)
class Axis:
    """One sweep axis: `steps` points spaced uniformly on [min, max]."""

    name: str
    min: float
    max: float
    steps: int

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of a sweep.

    fixed supplies the parameters not overridden by an axis; n_list (default
    just fixed.n) runs the sweep per block index; initial_bloch seeds the
    dynamics quantities when a t axis is present.
    """

    fixed: ModelParams
    axis1: Axis
    axis2: Axis | None = None
    quantities: tuple[str, ...] = ("phase",)
    n_list: tuple[int, ...] = ()
    initial_bloch: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def validate(self) -> None:
        problems = []
        axes = [("axis1", self.axis1)]
        if self.axis2 is not None:
            axes.append(("axis2", self.axis2))
        for label, axis in axes:
            if not isinstance(axis, Axis):
                problems.append(f"{label}: expected an Axis, got {type(axis).__name__}")
                continue
            if axis.name not in AXIS_NAMES:
                problems.append(f"{label}.name: {axis.name!r} not in {AXIS_NAMES}")
            if not (math.isfinite(axis.min) and math.isfinite(axis.max)):
                problems.append(f"{label}: min/max must be finite")
            elif not axis.min < axis.max:
                problems.append(f"{label}: min {axis.min} must be < max {axis.max}")
            if axis.steps < 2:
                problems.append(f"{label}.steps: need at least 2, got {axis.steps}")
            if axis.name == "delta_sq" and axis.min < 0.0:
                problems.append(f"{label}: delta_sq must be non-negative")
            if axis.name == "t" and axis.min < 0.0:
                problems.append(f"{label}: t must be non-negative")
        if self.axis2 is not None and isinstance(self.axis2, Axis) and isinstance(
            self.axis1, Axis
        ):
            if self.axis1.name == self.axis2.name:
                problems.append("axis2.name: must differ from axis1.name")
        if not self.quantities:
            problems.append("quantities: must not be empty")
        unknown = [q for q in self.quantities if q not in QUANTITIES]
        if unknown:
            problems.append(f"quantities: unknown {unknown}, allowed {QUANTITIES}")
        axis_names = {a.name for _, a in axes if isinstance(a, Axis)}
        if {"survival", "bloch"} & set(self.quantities) and "t" not in axis_names:
            problems.append("quantities: survival/bloch require a 't' axis")
        for n in self.n_list:
            if isinstance(n, bool) or n != int(n) or n < 0:
                problems.append(f"n_list: entries must be non-negative integers, got {n!r}")
        r = self.initial_bloch
        if len(r) != 3 or not all(math.isfinite(float(x)) for x in r):
            problems.append("initial_bloch: need 3 finite components")
        elif math.hypot(*map(float, r)) > 1.0 + 1e-9:
            problems.append("initial_bloch: length must not exceed 1")
        if problems:
            raise SpecValidationError("; ".join(problems))


@dataclass(frozen=True)
class PhaseCell:
    """One evaluated grid point."""

    coords: tuple[float, ...]
    axis_names: tuple[str, ...]
    n: int
    phase: Phase
    discriminant: float
    eigenvalues: Spectrum
    extras: dict[str, float] = field(default_factory=dict)


def _params_at(spec: SweepSpec, n: int, values: dict[str, float]) -> tuple[ModelParams, float | None]:
    t = values.pop("t", None)
    kw = {
        "omega": spec.fixed.omega,
        "epsilon": spec.fixed.epsilon,
        "gamma": spec.fixed.gamma,
    }
    for name, value in values.items():
        if name == "delta":
            kw["gamma"] = value / math.sqrt(n + 1)
        elif name == "delta_sq":
            kw["gamma"] = math.sqrt(value / (n + 1))
        else:
            kw[name] = value
    return ModelParams(n=n, **kw), t


def _evaluate_cell(spec: SweepSpec, n: int, coords: tuple[float, ...]) -> PhaseCell:
    axis_names = tuple(a.name for a in (spec.axis1, spec.axis2) if a is not None)
    p, t = _params_at(spec, n, dict(zip(axis_names, coords)))
    label = classify_phase(p)
    at_ep = label.value is Phase.EXCEPTIONAL_POINT
    extras: dict[str, float] = {}
    for q in spec.quantities:
        if q == "metric_norm" and not at_ep:
            extras["metric_norm"] = float(np.linalg.norm(metric(p).entries))
        elif q == "entropy":
            extras["entropy_I"] = entanglement_entropy(p, Branch.I)
            extras["entropy_II"] = entanglement_entropy(p, Branch.II)
        elif q in ("survival", "bloch") and t is not None and not at_ep:
            gen = effective_generator(p)
            state = evolve_no_jump(gen, BlochState(np.array(spec.initial_bloch)), t)
            if q == "survival":
                extras["survival"] = float(state.weight)
            else:
                extras["bloch_x"] = float(state.r[0])
                extras["bloch_y"] = float(state.r[1])
                extras["bloch_z"] = float(state.r[2])
    return PhaseCell(
        coords=tuple(float(c) for c in coords),
        axis_names=axis_names,
        n=int(n),
        phase=label.value,
        discriminant=float(label.discriminant),
        eigenvalues=spectrum_closed_form(p),
        extras=extras,
    )


def run_sweep(spec: SweepSpec) -> list[PhaseCell]:
    """Evaluate the grid; rows ordered n-major, then axis2, then axis1.

    Every cell is an independent pure function of its coordinates, so the
    evaluation order (or a worker pool, if one is ever added) cannot change
    the result.
    """
    spec.validate()
    n_list = tuple(spec.n_list) or (spec.fixed.n,)
    values1 = spec.axis1.values()
    cells = []
    if spec.axis2 is None:
        for n in n_list:
            for v1 in values1:
                cells.append(_evaluate_cell(spec, n, (float(v1),)))
    else:
        values2 = spec.axis2.values()
        for n in n_list:
            for v2 in values2:
                for v1 in values1:
                    cells.append(_evaluate_cell(spec, n, (float(v1), float(v2))))
    return cells


def _fmt(x: float) -> str:
    return "%.17g" % x


def _columns(cells: list[PhaseCell]) -> list[str]:
    extra_keys = sorted({k for c in cells for k in c.extras})
    return list(cells[0].axis_names) + list(_BASE_COLUMNS) + extra_keys


def _check_cells(cells) -> None:
    if not cells:
        raise EmptySweepError("no cells to export")
    names = cells[0].axis_names
    if any(c.axis_names != names for c in cells):
        raise ValueError("cells come from sweeps with different axes")


def _cell_row(cell: PhaseCell, columns: list[str]) -> list[str]:
    n_axes = len(cell.axis_names)
    row = [_fmt(c) for c in cell.coords]
    row += [
        str(cell.n),
        cell.phase.value,
        _fmt(cell.discriminant),
        _fmt(cell.eigenvalues.eigenvalue_I.real),
        _fmt(cell.eigenvalues.eigenvalue_I.imag),
        _fmt(cell.eigenvalues.eigenvalue_II.real),
        _fmt(cell.eigenvalues.eigenvalue_II.imag),
    ]
    for key in columns[n_axes + len(_BASE_COLUMNS):]:
        row.append(_fmt(cell.extras[key]) if key in cell.extras else "")
    return row


def _open_for(target, mode: str):
    if hasattr(target, "write"):
        return target, False
    return open(target, mode, newline="" if "b" not in mode else None), True


def export_csv(cells: list[PhaseCell], path) -> None:
    """Write cells as RFC-4180 CSV; EP-omitted quantities become empty fields."""
    _check_cells(cells)
    columns = _columns(cells)
    stream, owned = _open_for(path, "w")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for cell in cells:
            writer.writerow(_cell_row(cell, columns))
    finally:
        if owned:
            stream.close()


def read_csv(path) -> list[PhaseCell]:
    """Parse a file produced by export_csv back into cells."""
    stream, owned = _open_for(path, "r")
    try:
        rows = list(csv.reader(stream))
    finally:
        if owned:
            stream.close()
    if not rows:
        raise EmptySweepError("empty CSV")
    header = rows[0]
    n_axes = header.index("n")
    axis_names = tuple(header[:n_axes])
    extra_keys = header[n_axes + len(_BASE_COLUMNS):]
    cells = []
    for row in rows[1:]:
        rec = dict(zip(header, row))
        extras = {k: float(rec[k]) for k in extra_keys if rec[k] != ""}
        cells.append(
            PhaseCell(
                coords=tuple(float(v) for v in row[:n_axes]),
                axis_names=axis_names,
                n=int(rec["n"]),
                phase=Phase(rec["phase"]),
                discriminant=float(rec["discriminant"]),
                eigenvalues=Spectrum(
                    complex(float(rec["eigenvalue_I_re"]), float(rec["eigenvalue_I_im"])),
                    complex(float(rec["eigenvalue_II_re"]), float(rec["eigenvalue_II_im"])),
                ),
                extras=extras,
            )
        )
    return cells


def spec_to_dict(spec: SweepSpec) -> dict:
    """JSON-ready representation of a SweepSpec (the `meta` object)."""
    axes = [
        {"name": a.name, "min": a.min, "max": a.max, "steps": a.steps}
        for a in (spec.axis1, spec.axis2)
        if a is not None
    ]
    return {
        "fixed": {
            "omega": spec.fixed.omega,
            "epsilon": spec.fixed.epsilon,
            "gamma": spec.fixed.gamma,
            "n": spec.fixed.n,
        },
        "axes": axes,
        "quantities": list(spec.quantities),
        "n_list": list(spec.n_list),
        "initial_bloch": list(spec.initial_bloch),
    }


def spec_from_dict(data: dict) -> SweepSpec:
    """Inverse of spec_to_dict; also accepts CLI config files."""
    if not isinstance(data, dict):
        raise SpecValidationError("config: expected a JSON object")
    fixed = data.get("fixed", {})
    if not isinstance(fixed, dict):
        raise SpecValidationError("fixed: expected an object")
    try:
        params = ModelParams(
            omega=float(fixed.get("omega", 1.0)),
            epsilon=float(fixed.get("epsilon", 5.0)),
            gamma=float(fixed.get("gamma", 1.0)),
            n=int(fixed.get("n", 0)),
        )
    except (TypeError, ValueError) as exc:
        raise SpecValidationError(f"fixed: {exc}") from exc
    raw_axes = data.get("axes", [])
    if not isinstance(raw_axes, list) or not 1 <= len(raw_axes) <= 2:
        raise SpecValidationError("axes: need a list of 1 or 2 axis objects")
    axes = []
    for i, raw in enumerate(raw_axes, start=1):
        try:
            axes.append(
                Axis(str(raw["name"]), float(raw["min"]), float(raw["max"]), int(raw["steps"]))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecValidationError(f"axes[{i}]: {exc!r}") from exc
    spec = SweepSpec(
        fixed=params,
        axis1=axes[0],
        axis2=axes[1] if len(axes) == 2 else None,
        quantities=tuple(data.get("quantities", ("phase",))),
        n_list=tuple(int(n) for n in data.get("n_list", ())),
        initial_bloch=tuple(float(x) for x in data.get("initial_bloch", (0.0, 0.0, 1.0))),
    )
    spec.validate()
    return spec


def _cell_to_obj(cell: PhaseCell, extra_keys: list[str]) -> dict:
    obj = dict(zip(cell.axis_names, cell.coords))
    obj["n"] = cell.n
    obj["phase"] = cell.phase.value
    obj["discriminant"] = cell.discriminant
    obj["eigenvalue_I_re"] = cell.eigenvalues.eigenvalue_I.real
    obj["eigenvalue_I_im"] = cell.eigenvalues.eigenvalue_I.imag
    obj["eigenvalue_II_re"] = cell.eigenvalues.eigenvalue_II.real
    obj["eigenvalue_II_im"] = cell.eigenvalues.eigenvalue_II.imag
    for key in extra_keys:
        if key in cell.extras:
            obj[key] = cell.extras[key]
    return obj


def export_json(cells: list[PhaseCell], path, spec: SweepSpec) -> None:
    """Write cells plus a `meta` object echoing the sweep spec."""
    _check_cells(cells)
    extra_keys = sorted({k for c in cells for k in c.extras})
    payload = {
        "meta": spec_to_dict(spec),
        "cells": [_cell_to_obj(c, extra_keys) for c in cells],
    }
    stream, owned = _open_for(path, "w")
    try:
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    finally:
        if owned:
            stream.close()


def read_json(path) -> tuple[list[PhaseCell], SweepSpec]:
    """Parse a file produced by export_json back into (cells, spec)."""
    stream, owned = _open_for(path, "r")
    try:
        payload = json.load(stream)
    finally:
        if owned:
            stream.close()
    spec = spec_from_dict(payload["meta"])
    axis_names = tuple(a.name for a in (spec.axis1, spec.axis2) if a is not None)
    known = set(axis_names) | set(_BASE_COLUMNS)
    cells = []
    for obj in payload["cells"]:
        extras = {k: float(v) for k, v in obj.items() if k not in known}
        cells.append(
            PhaseCell(
                coords=tuple(float(obj[a]) for a in axis_names),
                axis_names=axis_names,
                n=int(obj["n"]),
                phase=Phase(obj["phase"]),
                discriminant=float(obj["discriminant"]),
                eigenvalues=Spectrum(
                    complex(obj["eigenvalue_I_re"], obj["eigenvalue_I_im"]),
                    complex(obj["eigenvalue_II_re"], obj["eigenvalue_II_im"]),
                ),
                extras=extras,
            )
        )
    return cells, spec


def csv_string(cells: list[PhaseCell]) -> str:
    """export_csv into a string (convenience for tests and stdout)."""
    buf = io.StringIO()
    export_csv(cells, buf)
    return buf.getvalue()
