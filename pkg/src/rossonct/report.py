"""Result serialization: deterministic CSV tables and optional figures.

CSV dialect: comma separator, header row, LF line endings, floats printed with
17 significant digits so values round-trip exactly.  Files are written
atomically (temp file in the target directory, then rename) so a crashed run
never leaves a truncated table behind.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .experiments import ExperimentResult


def _format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def render_csv(result: ExperimentResult) -> str:
    lines = [",".join(result.columns)]
    for row in result.rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        # mkstemp creates 0600; align with ordinary file-creation permissions
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(result: ExperimentResult, out_dir: str) -> str:
    path = os.path.join(out_dir, f"{result.id}.csv")
    write_atomic(path, render_csv(result))
    return path


def _numeric_columns(result: ExperimentResult):
    cols = {}
    for j, name in enumerate(result.columns):
        vals = [row[j] for row in result.rows]
        if all(isinstance(v, (int, float, np.integer, np.floating)) for v in vals):
            cols[name] = np.asarray(vals, dtype=float)
    return cols


def write_figure(result: ExperimentResult, out_dir: str) -> str | None:
    """Render the numeric columns of a result table to a PNG.

    The first numeric column is the x axis; remaining numeric columns become
    series.  Tables with fewer than two numeric columns or fewer than three
    rows get no figure.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = _numeric_columns(result)
    if len(cols) < 2 or len(result.rows) < 3:
        return None
    names = list(cols)
    xname = names[0]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name in names[1:]:
        ax.plot(cols[xname], cols[name], marker=".", label=name)
    ax.set_xlabel(xname)
    ax.set_title(result.id)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    path = os.path.join(out_dir, f"{result.id}.png")
    os.makedirs(out_dir, exist_ok=True)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
