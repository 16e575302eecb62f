"""Reference data for the Fano fourfold corpus.

Four record families per corpus entry: regularized period coefficients,
the canonical quantum differential operator, the Jordan block tables of
the local log-monodromies at nontrivial points, and the ramification
defect verdict. A small fifth file carries the coefficients that
distinguish the near-coincident toric hypersurface series.
"""
from fractions import Fraction
from importlib.resources import files

from ..exactnum import parse_rational
from ..qde import DiffOperator

CORPUS_NAMES = (
    ("P4", "Q4")
    + tuple(f"FI4_{k}" for k in range(1, 7))
    + tuple(f"V4_{k}" for k in range(2, 19, 2))
    + tuple(f"MW4_{k}" for k in range(1, 19))
)

O4_NAMES = ("O4_6", "O4_35", "O4_41", "O4_88")


def _read(name: str) -> str:
    return files(__package__).joinpath(name).read_text()


def _content_lines(text: str):
    for ln in text.splitlines():
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            yield ln


def load_period_table() -> dict:
    """Map name -> list of (degree, regularized coefficient)."""
    table: dict = {}
    current = None
    for ln in _content_lines(_read("period_tables.txt")):
        if ln.startswith("name:"):
            current = ln.split(":", 1)[1].strip()
            table[current] = []
        else:
            d, alpha = ln.split()
            table[current].append((int(d), int(alpha)))
    return table


def load_operator(name: str) -> DiffOperator:
    return DiffOperator.from_text(_read(f"operators/{name}.qdo"))


def load_jordan_tables() -> dict:
    """Map name -> dict of point description -> block list.

    Points with trivial local monodromy are absent by convention, so the
    dict records exactly the points a verifier must reproduce.
    """
    table: dict = {}
    current = None
    point = None
    for ln in _content_lines(_read("jordan_tables.txt")):
        if ln.startswith("name:"):
            current = ln.split(":", 1)[1].strip()
            table[current] = {}
        elif ln.startswith("point:"):
            point = ln.split(":", 1)[1].strip()
        elif ln.startswith("blocks:"):
            items = ln.split(":", 1)[1].strip()
            blocks = []
            for piece in items.split("),"):
                ev, size = piece.strip().strip("()").split(",")
                blocks.append((Fraction(parse_rational(ev.strip())),
                               int(size.strip())))
            table[current][point] = tuple(blocks)
    return table


def load_defects() -> dict:
    out = {}
    for ln in _content_lines(_read("defects.txt")):
        name, defect = ln.split()
        out[name] = int(defect)
    return out


def load_o4_values() -> dict:
    """Map name -> {degree: regularized coefficient} for the toric
    hypersurface pairs whose periods agree through degree 7."""
    out: dict = {}
    for ln in _content_lines(_read("o4_distinguishing.txt")):
        name, d, alpha = ln.split()
        out.setdefault(name, {})[int(d)] = int(alpha)
    return out


__all__ = [
    "CORPUS_NAMES",
    "O4_NAMES",
    "load_period_table",
    "load_operator",
    "load_jordan_tables",
    "load_defects",
    "load_o4_values",
]
