"""2x2 panel rendering of a harness time series.

Panels: attitude error vector, angular velocity against its command
(velocity in blues, command in reds), inertia-estimate entries with the
fixed solid/dashed/dotted grouping, and the control moment.  Rendering
is read-only: values go from the CSV to the axes untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from matplotlib.figure import Figure

from .schema import load_timeseries

# upper-triangle entries share a style per diagonal band
JBAR_STYLES = (
    ("Jb11", "solid"),
    ("Jb12", "solid"),
    ("Jb22", "dashed"),
    ("Jb13", "dashed"),
    ("Jb33", "dotted"),
    ("Jb23", "dotted"),
)

_BLUES = ("#1f77b4", "#4393c3", "#92c5de")
_REDS = ("#b2182b", "#d6604d", "#f4a582")
_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    out_path: str
    dpi: int = 150


def render(spec: FigureSpec) -> str:
    """Write the panel figure; returns the output path."""
    cols = load_timeseries(spec.csv_path)
    t = cols["t"]

    fig = Figure(figsize=(11.0, 7.5), constrained_layout=True)
    axes = fig.subplots(2, 2)

    ax = axes[0][0]
    for name, axis in zip(("eRx", "eRy", "eRz"), _AXES):
        ax.plot(t, cols[name], label=axis)
    ax.set_title("attitude error vector")
    ax.set_ylabel("e_R")
    ax.legend(loc="upper right", fontsize="small")

    ax = axes[0][1]
    for name, color, axis in zip(("Wx", "Wy", "Wz"), _BLUES, _AXES):
        ax.plot(t, cols[name], color=color, label=f"$\\Omega_{axis}$")
    for name, color, axis in zip(("Wdx", "Wdy", "Wdz"), _REDS, _AXES):
        ax.plot(t, cols[name], color=color, label=f"$\\Omega_{{d,{axis}}}$")
    ax.set_title("angular velocity (blue) vs command (red)")
    ax.set_ylabel("rad/s")
    ax.legend(loc="upper right", fontsize="x-small", ncols=2)

    ax = axes[1][0]
    for name, style in JBAR_STYLES:
        ax.plot(t, cols[name], linestyle=style, label=name)
    ax.set_title("inertia estimate entries")
    ax.set_ylabel("kg m$^2$")
    ax.set_xlabel("time [s]")
    ax.legend(loc="upper right", fontsize="x-small", ncols=3)

    ax = axes[1][1]
    for name, axis in zip(("ux", "uy", "uz"), _AXES):
        ax.plot(t, cols[name], label=axis)
    ax.set_title("control moment")
    ax.set_ylabel("N m")
    ax.set_xlabel("time [s]")
    ax.legend(loc="upper right", fontsize="small")

    fig.savefig(spec.out_path, dpi=spec.dpi)
    return spec.out_path
