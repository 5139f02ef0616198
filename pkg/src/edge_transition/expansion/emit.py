"""Text output of kernel tables and of the intermediate anchor values."""

from __future__ import annotations

import json
import math
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import yaml

from edge_transition.algebra.algnum import AlgNum
from edge_transition.algebra.poly import BivarPoly
from edge_transition.expansion.airy_polys import airy_asymp_coeffs
from edge_transition.expansion.assembly import COMPONENTS
from edge_transition.expansion.conformal import e_factor_series
from edge_transition.expansion.riemann_hilbert import BranchConvention, j_matrix_series, r_outer_inner
from edge_transition.expansion.sandwich import sandwich_series

if TYPE_CHECKING:
    from edge_transition.algebra.series import Mat2Series
    from edge_transition.expansion.assembly import KernelExpansion


class OutputFormat(StrEnum):
    """Output formats of the derivation."""

    JSON = "json"
    LATEX = "latex"


AIRY_HEADER = (
    r"K^{\mathrm{Ai}}(x,y) &= \frac{\mathrm{Ai}(x)\mathrm{Ai}'(y)"
    r"-\mathrm{Ai}'(x)\mathrm{Ai}(y)}{x-y}"
)

_BASIS_LATEX = {
    "00": r"\mathrm{Ai}(x)\mathrm{Ai}(y)",
    "01": r"\mathrm{Ai}(x)\mathrm{Ai}'(y)",
    "10": r"\mathrm{Ai}'(x)\mathrm{Ai}(y)",
    "11": r"\mathrm{Ai}'(x)\mathrm{Ai}'(y)",
}


def header_lines(config: dict[str, Any], prefix: str) -> str:
    """Serialized run configuration as comment lines."""
    dumped = yaml.safe_dump(config, sort_keys=True, default_flow_style=False)
    return "".join(f"{prefix}{line}\n" for line in dumped.splitlines())


def _monomial(dx: int, dy: int) -> str:
    parts = []
    for var, e in (("x", dx), ("y", dy)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "".join(parts)


def latex_integer_poly(poly: BivarPoly) -> str:
    """Integer-coefficient polynomial such as "x^2+xy+y^2" in graded order."""
    out = []
    for (dx, dy), c in poly.sorted_terms():
        value = Fraction(c)  # type: ignore[arg-type]
        mono = _monomial(dx, dy)
        magnitude = abs(value)
        body = mono if mono and magnitude == 1 else f"{magnitude}{mono}"
        sign = "-" if value < 0 else "+"
        out.append(body if not out and sign == "+" else f"{sign}{body}")
    return "".join(out) or "0"


def _factored(poly: BivarPoly) -> tuple[int, str]:
    """(sign, text) of an integer polynomial with its content pulled out."""
    content = poly.content()
    first = Fraction(poly.sorted_terms()[0][1])  # type: ignore[arg-type]
    sign = -1 if first < 0 else 1
    rest = poly / (content * sign)
    inner = latex_integer_poly(rest)
    count = len(rest.terms)
    c = str(content.numerator) if content != 1 else ""
    if rest == 1:
        return sign, str(content.numerator)
    if count == 1:
        return sign, f"{c}{inner}"
    return sign, f"{c}({inner})"


def latex_kernel_term(j: int, table: dict[str, BivarPoly]) -> str:
    """K_j(x,y) &= \\frac{1}{D}\\Big(...\\Big) with D the common denominator."""
    denominator = math.lcm(*(poly.content().denominator for poly in table.values() if not poly.is_zero()), 1)
    pieces = []
    for comp in COMPONENTS:
        poly = table[comp]
        if poly.is_zero():
            continue
        sign, text = _factored(poly * denominator)
        joiner = "-" if sign < 0 else ("+" if pieces else "")
        pieces.append(f"{joiner}{text}{_BASIS_LATEX[comp]}")
    body = "".join(pieces) or "0"
    prefix = "" if denominator == 1 else rf"\frac{{1}}{{{denominator}}}"
    return rf"K_{{{j}}}(x,y) &= {prefix}\Big({body}\Big)"


def emit_expansion(
    expansion: KernelExpansion,
    fmt: OutputFormat | str,
    config: dict[str, Any] | None = None,
    anchors: dict[str, Any] | None = None,
) -> str:
    """Deterministic text form of a kernel table.

    Args:
        expansion: derived table
        fmt: "json" or "latex"
        config: run configuration written as a header, if given
        anchors: output of `anchor_report`, appended when given
    Returns:
        document text ending with a newline
    """
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        doc = expansion.to_json()
        if config is not None:
            doc = {"config": config, **doc}
        if anchors is not None:
            doc["anchors"] = anchors
        return json.dumps(doc, indent=2) + "\n"
    lines = [AIRY_HEADER] + [latex_kernel_term(j, expansion.terms[j]) for j in sorted(expansion.terms)]
    body = "\\begin{align*}\n" + ",\\\\\n".join(lines) + ".\n\\end{align*}\n"
    head = header_lines(config, "% ") if config is not None else ""
    tail = emit_anchors(anchors, fmt) if anchors is not None else ""
    return head + body + tail


def latex_algnum(value: AlgNum) -> str:
    """LaTeX form of a + b sqrt2 + c i + d i sqrt2."""
    parts = []
    for coeff, basis in (
        (value.a, ""),
        (value.b, r"\sqrt{2}"),
        (value.c, r"\mathrm{i}"),
        (value.d, r"\mathrm{i}\sqrt{2}"),
    ):
        if not coeff:
            continue
        mag = abs(coeff)
        num = f"{mag.numerator}{basis}" if mag.numerator != 1 or not basis else basis
        text = num if mag.denominator == 1 else rf"\frac{{{num}}}{{{mag.denominator}}}"
        sign = "-" if coeff < 0 else "+"
        parts.append(text if not parts and sign == "+" else f"{sign}{text}")
    return "".join(parts) or "0"


def _matrix_powers(matrix: Mat2Series, low: int, high: int) -> list[dict[str, Any]]:
    rows = []
    for k in range(low, high):
        entries = [AlgNum.of(c) for c in matrix.coeff(k)]
        if all(e.is_zero() for e in entries):
            continue
        rows.append({"power": k, "entries": [e.canonical() for e in entries]})
    return rows


def anchor_report(branch: BranchConvention = BranchConvention.PRINTED) -> dict[str, Any]:
    """Intermediate values: J_1, R_1 outside, the E-series, e_1, e_2 and u_1; J_1 and R_1 depend on the branch."""
    j1 = j_matrix_series(1, 1, branch)
    r1 = r_outer_inner(1, 1, branch)[0].outer
    e_inner = e_factor_series(2).inner
    sandwich = sandwich_series(2, branch)
    u1 = airy_asymp_coeffs(1)[1]
    return {
        "J_1": _matrix_powers(j1, -2, 1),
        "R_1_outer": _matrix_powers(r1, -2, 0),
        "E_inner": _matrix_powers(e_inner, 0, 3),
        "e": {
            str(j): [poly.to_coeff_records() for poly in sandwich.e[j]] for j in sorted(sandwich.e)
        },
        "u_1": str(u1.u),
        "v_1": str(u1.v),
    }


def emit_anchors(report: dict[str, Any], fmt: OutputFormat | str) -> str:
    """Anchor report as JSON or as a LaTeX list of coefficient matrices."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return json.dumps(report, indent=2) + "\n"
    lines = []
    for name in ("J_1", "R_1_outer", "E_inner"):
        for row in report[name]:
            cells = [latex_algnum(AlgNum.parse(text)) for text in row["entries"]]
            matrix = rf"\begin{{pmatrix}}{cells[0]} & {cells[1]}\\ {cells[2]} & {cells[3]}\end{{pmatrix}}"
            lines.append(rf"[{name.replace('_', r'\_')}]_{{{row['power']}}} &= {matrix}")
    lines.append(rf"\mathfrak{{u}}_1 &= {report['u_1']}")
    return "\\begin{align*}\n" + ",\\\\\n".join(lines) + ".\n\\end{align*}\n"
