"""Text renderings of trajectories, reports and meshes.

Every number goes through ``format_number`` so the output bytes depend on
nothing but the values.
"""

import json
import math

import numpy as np

TRAJECTORY_COLUMNS = ("n", "x1", "x2", "x3", "F1", "F2", "F3")


def format_number(value):
    """Fixed-format scientific notation with 17 significant digits."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.16e}"


def _json_value(value, indent, level):
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(key))}: {_json_value(item, indent, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [_json_value(item, indent, level + 1) for item in value]
        if all(not isinstance(item, (dict, list, tuple, np.ndarray)) for item in value):
            return "[" + ", ".join(items) + "]"
        return "[\n" + ",\n".join(pad + item for item in items) + "\n" + close + "]"
    if value is None or isinstance(value, (bool, np.bool_)):
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            # JSON has no literal for these
            return json.dumps(format_number(value))
        return format_number(value)
    return json.dumps(str(value))


def render_json(data, indent=2):
    """JSON text with 17-significant-digit numbers and a trailing newline."""
    return _json_value(data, indent, 0) + "\n"


def trajectory_rows(states, integrals):
    return [
        (n, *(float(v) for v in x), *(float(v) for v in F))
        for n, (x, F) in enumerate(zip(states, integrals))
    ]


def render_csv(rows, header=TRAJECTORY_COLUMNS):
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(str(v) if isinstance(v, (int, np.integer)) else format_number(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def trajectory_document(rows, mode, delta, x0):
    return {
        "mode": mode,
        "delta": list(delta),
        "x0": list(x0),
        "steps": len(rows) - 1,
        "columns": list(TRAJECTORY_COLUMNS),
        "rows": [list(row) for row in rows],
    }


def _vertex_line(point):
    return "v " + " ".join(format_number(c) for c in point)


def render_obj_mesh(grid, name):
    """OBJ text for a structured (nu, nv, 3) vertex grid as quad faces."""
    grid = np.asarray(grid, dtype=float)
    nu, nv, _ = grid.shape
    lines = [f"o {name}"]
    lines.extend(_vertex_line(p) for p in grid.reshape(-1, 3))
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            b = a + nv
            lines.append(f"f {a} {b} {b + 1} {a + 1}")
    return "\n".join(lines) + "\n"


def render_obj_polylines(polylines):
    """OBJ text for named polylines, one object and one line element each."""
    lines = []
    offset = 0
    for name, points in polylines:
        points = np.asarray(points, dtype=float)
        lines.append(f"o {name}")
        lines.extend(_vertex_line(p) for p in points)
        indices = " ".join(str(offset + i + 1) for i in range(len(points)))
        lines.append(f"l {indices}")
        offset += len(points)
    return "\n".join(lines) + "\n"
