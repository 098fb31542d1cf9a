"""Geometry export: the quadrics, the two curve components and the walking rulings.

A bundle holds everything needed to redraw the factorized map outside
Python. Quadric surfaces are tessellated on request: pencil members from
their rulings b(u) + v d(u) anchored on the curve, the invariant cylinders
from circular or hyperbolic sections.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from etgeom.conversions import render_json, render_obj_mesh, render_obj_polylines
from etgeom.curve import Component, Orbit, curve_points
from etgeom.dynamics import Delta
from etgeom.involution import involution_step, ruling_directions
from etgeom.pencil import PencilKind, pencil_quadric_for_nu

logger = logging.getLogger(__name__)

AXIS_MARGIN = 1.25
COINCIDENCE_TOLERANCE = 1e-12


@dataclass
class LabeledQuadric:
    label: str
    quadric: object
    kind: str
    lam: Optional[float] = None
    s: float = 0.0


@dataclass
class GeneratorSegment:
    label: str
    step: int
    start: np.ndarray
    end: np.ndarray


@dataclass
class GeometryBundle:
    orbit: Orbit
    nu1: float
    nu2: float
    quadrics: List[LabeledQuadric] = field(default_factory=list)
    curves: List[tuple] = field(default_factory=list)
    generators: List[GeneratorSegment] = field(default_factory=list)

    def quadric(self, label):
        for item in self.quadrics:
            if item.label == label:
                return item
        raise KeyError(label)

    def to_dict(self):
        chart = self.orbit.chart
        return {
            "case": self.orbit.case.value,
            "k": chart.k,
            "K": chart.K,
            "Kprime": chart.Kprime,
            "nu": self.orbit.nu,
            "nu1": self.nu1,
            "nu2": self.nu2,
            "amplitudes": list(chart.amplitudes),
            "quadrics": [
                {
                    "label": q.label,
                    "kind": q.kind,
                    "lambda": q.lam,
                    "coefficients": list(q.quadric.as_tuple()),
                }
                for q in self.quadrics
            ],
            "curves": [{"label": label, "points": points.tolist()} for label, points in self.curves],
            "generators": [
                {"label": g.label, "step": g.step, "start": g.start.tolist(), "end": g.end.tolist()}
                for g in self.generators
            ],
        }


def build_geometry(config):
    """Quadrics, sampled curve components and generator segments for a run."""
    delta = Delta.from_sequence(config.delta)
    orbit = Orbit.from_state(config.x0, delta)
    ctx = orbit.context
    nu1 = orbit.nu / 2.0 if config.nu1 is None else config.nu1
    nu2 = orbit.nu - nu1
    bundle = GeometryBundle(orbit, nu1, nu2)

    for label, q in zip(("C1", "C2", "C3"), ctx.quadrics()):
        bundle.quadrics.append(LabeledQuadric(label, q, "cylinder"))

    h1 = pencil_quadric_for_nu(nu1, ctx.conserved, delta, ctx.case, orbit.k)
    h2 = pencil_quadric_for_nu(nu2, ctx.conserved, delta, ctx.case, orbit.k)
    coincident = abs(abs(nu1) - abs(nu2)) <= COINCIDENCE_TOLERANCE * orbit.K
    if coincident:
        labels = ("H1=H2", "H1=H2")
        bundle.quadrics.append(LabeledQuadric("H1=H2", h1.quadric, h1.kind.value, h1.lam, h1.s))
    else:
        labels = ("H1", "H2")
        bundle.quadrics.append(LabeledQuadric("H1", h1.quadric, h1.kind.value, h1.lam, h1.s))
        bundle.quadrics.append(LabeledQuadric("H2", h2.quadric, h2.kind.value, h2.lam, h2.s))

    phases = np.linspace(0.0, 4.0 * orbit.K, config.mesh_resolution + 1)
    for component, label in ((Component.PLUS, "curve+"), (Component.MINUS, "curve-")):
        bundle.curves.append((label, curve_points(orbit.chart.with_component(component), phases)))

    x = np.array(config.x0, dtype=float)
    for n in range(config.steps):
        mid, end = involution_step(x, nu1, ctx)
        bundle.generators.append(GeneratorSegment(labels[0], n, x, mid))
        bundle.generators.append(GeneratorSegment(labels[1], n, mid, end))
        x = end
    logger.debug(
        "geometry bundle: %d quadrics, %d segments", len(bundle.quadrics), len(bundle.generators)
    )
    return bundle


def _axis_extents(bundle):
    points = np.vstack([points for _, points in bundle.curves])
    return np.maximum(AXIS_MARGIN * np.max(np.abs(points), axis=0), 1e-3)


def ruled_mesh(item, bundle, resolution, extent):
    """Grid b(u) + v d(u) with b on component + and d the ruling of the first family."""
    chart = bundle.orbit.chart.with_component(Component.PLUS)
    phases = np.linspace(0.0, 4.0 * chart.K, resolution)
    bases = curve_points(chart, phases)
    reach = extent * float(np.max(np.linalg.norm(bases, axis=1)))
    offsets = np.linspace(-reach, reach, resolution)
    grid = np.empty((resolution, resolution, 3))
    for i, b in enumerate(bases):
        d = ruling_directions(b, item.quadric, root=item.s)[0].as_array()
        grid[i] = b[None, :] + offsets[:, None] * d[None, :]
    return grid


def cylinder_meshes(q, extents, resolution):
    """One grid for an elliptic cylinder, two sheets for a hyperbolic one."""
    coeffs = q.quadratic
    axis = int(np.argmin(np.abs(coeffs)))
    i, j = [n for n in range(3) if n != axis]
    heights = np.linspace(-extents[axis], extents[axis], resolution)
    c0 = q.c0
    if c0 == 0.0:
        return []
    if coeffs[i] * coeffs[j] > 0.0:
        ri = math.sqrt(-c0 / coeffs[i])
        rj = math.sqrt(-c0 / coeffs[j])
        theta = np.linspace(0.0, 2.0 * math.pi, resolution)
        grid = np.empty((resolution, resolution, 3))
        grid[..., i] = ri * np.cos(theta)[:, None]
        grid[..., j] = rj * np.sin(theta)[:, None]
        grid[..., axis] = heights[None, :]
        return [grid]
    if -c0 / coeffs[i] < 0.0:
        i, j = j, i
    ri = math.sqrt(-c0 / coeffs[i])
    rj = math.sqrt(c0 / coeffs[j])
    reach = math.asinh(extents[j] / rj)
    t = np.linspace(-reach, reach, resolution)
    sheets = []
    for sign in (1.0, -1.0):
        grid = np.empty((resolution, resolution, 3))
        grid[..., i] = sign * ri * np.cosh(t)[:, None]
        grid[..., j] = rj * np.sinh(t)[:, None]
        grid[..., axis] = heights[None, :]
        sheets.append(grid)
    return sheets


def quadric_meshes(bundle, resolution, extent):
    """Named vertex grids for every quadric in the bundle."""
    extents = _axis_extents(bundle)
    meshes = []
    for item in bundle.quadrics:
        if item.kind == "cylinder":
            grids = cylinder_meshes(item.quadric, extents, resolution)
        elif item.kind in (PencilKind.HYPERBOLOID.value, PencilKind.CONE.value):
            grids = [ruled_mesh(item, bundle, resolution, extent)]
        else:
            grids = cylinder_meshes(item.quadric, extents, resolution)
        for n, grid in enumerate(grids):
            name = item.label if len(grids) == 1 else f"{item.label}_sheet{n + 1}"
            meshes.append((name, grid))
    return meshes


def _file_stem(label):
    return label.replace("=", "_")


def write_geometry(bundle, out_dir, obj=False, resolution=64, extent=1.0):
    """Write geometry.json, and OBJ meshes and polylines when ``obj`` is set."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    path = out_dir / "geometry.json"
    path.write_text(render_json(bundle.to_dict()))
    written.append(path)
    if obj:
        for name, grid in quadric_meshes(bundle, resolution, extent):
            mesh_path = out_dir / f"{_file_stem(name)}.obj"
            mesh_path.write_text(render_obj_mesh(grid, name))
            written.append(mesh_path)
        curves_path = out_dir / "curves.obj"
        curves_path.write_text(render_obj_polylines(bundle.curves))
        written.append(curves_path)
        segments = [
            (f"{g.label}_{g.step}", np.array([g.start, g.end])) for g in bundle.generators
        ]
        if segments:
            gen_path = out_dir / "generators.obj"
            gen_path.write_text(render_obj_polylines(segments))
            written.append(gen_path)
    return written
