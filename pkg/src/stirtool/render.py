"""Text and LaTeX rendering of lambda-polynomials."""

from __future__ import annotations

from fractions import Fraction

from .exact import LambdaPoly, rat_to_str


def poly_to_text(p: LambdaPoly, var: str = "l") -> str:
    """Ascending powers, e.g. ``2+3*l+2*l^2``; the zero polynomial is ``0``."""
    parts = []
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        c = rat_to_str(abs(a))
        term = c if i == 0 else f"{c}*{var}" if i == 1 else f"{c}*{var}^{i}"
        sign = "-" if a < 0 else "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += sign + term
    return out


def _latex_scalar(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return rf"\frac{{{a.numerator}}}{{{a.denominator}}}"


def poly_to_latex(p: LambdaPoly) -> str:
    """Descending powers in the ``11 \\lambda^{2}+18 \\lambda+11`` style."""
    out = ""
    for i in range(len(p.coeffs) - 1, -1, -1):
        a = p.coeffs[i]
        if not a:
            continue
        mag = abs(a)
        if i == 0:
            body = _latex_scalar(mag)
        else:
            mono = r"\lambda" if i == 1 else rf"\lambda^{{{i}}}"
            body = mono if mag == 1 else f"{_latex_scalar(mag)} {mono}"
        if not out:
            out = ("-" if a < 0 else "") + body
        else:
            out += ("-" if a < 0 else "+") + body
    return out or "0"
