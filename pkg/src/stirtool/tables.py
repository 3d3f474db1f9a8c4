"""Serialisation of Stirling triangles: csv, tsv, json and LaTeX."""

from __future__ import annotations

import json

from .exact import poly_from_json, poly_to_json
from .render import poly_to_latex, poly_to_text
from .stirling import Family, StirlingTriangle

FORMATS = ("csv", "tsv", "json", "latex")

_LATEX_SYMBOL = {
    Family.S1: "S_{{1}}({n},{k})",
    Family.S1U: "{{{n} \\brack {k}}}",
    Family.S2: "{{{n} \\brace {k}}}",
    Family.DS1: "S_{{1,\\lambda}}({n},{k})",
    Family.DS2: "S_{{2,\\lambda}}({n},{k})",
    Family.NS1: "S_{{1,\\lambda}}^{{*}}({n},{k})",
    Family.NS1U: "{{{n} \\brack {k}}}_{{\\lambda}}^{{*}}",
    Family.NS2: "{{{n} \\brace {k}}}_{{\\lambda}}^{{*}}",
}


def _delimited(tri: StirlingTriangle, sep: str) -> str:
    lines = [sep.join(("n", "k", "value"))]
    for n, k, p in tri.items():
        lines.append(sep.join((str(n), str(k), poly_to_text(p))))
    return "\n".join(lines) + "\n"


def to_json(tri: StirlingTriangle) -> str:
    doc = {
        "family": tri.family.value,
        "max_n": tri.max_n,
        "entries": [{"n": n, "k": k, "coeffs": poly_to_json(p)} for n, k, p in tri.items()],
    }
    return json.dumps(doc, indent=1) + "\n"


def from_json(text: str) -> StirlingTriangle:
    doc = json.loads(text)
    max_n = int(doc["max_n"])
    rows = [[None] * (n + 1) for n in range(max_n + 1)]
    for e in doc["entries"]:
        rows[e["n"]][e["k"]] = poly_from_json(e["coeffs"])
    if any(p is None for row in rows for p in row):
        raise ValueError("triangle JSON is missing entries")
    return StirlingTriangle(Family(doc["family"]), max_n, tuple(tuple(r) for r in rows))


def to_latex(tri: StirlingTriangle) -> str:
    sym = _LATEX_SYMBOL[tri.family]
    lines = ["\\begin{align*}"]
    for n, k, p in tri.items():
        lines.append(f"&{sym.format(n=n, k=k)}={poly_to_latex(p)} \\\\")
    lines.append("\\end{align*}")
    return "\n".join(lines) + "\n"


def render(tri: StirlingTriangle, fmt: str) -> str:
    if fmt == "csv":
        return _delimited(tri, ",")
    if fmt == "tsv":
        return _delimited(tri, "\t")
    if fmt == "json":
        return to_json(tri)
    if fmt == "latex":
        return to_latex(tri)
    raise ValueError(f"unknown format {fmt!r}")
