"""Shared helpers for comparing computed convergence tables with the
published ones stored in tests/data/published_tables.json."""

from __future__ import annotations

import json
import math
import os
from decimal import Decimal
from fractions import Fraction

from pnkinetic import error_analysis as ea
from pnkinetic.bigfloat import log_abs
from pnkinetic.solver import STUDY_EPS, Study

DATA = os.path.join(os.path.dirname(__file__), "data", "published_tables.json")
ICS = ("g1", "g2", "g3")


def published():
    with open(DATA, encoding="utf-8") as fh:
        return json.load(fh)


def two_figure_match(computed, printed):
    """True when ``computed`` agrees with the 3-figure ``printed`` value to
    two significant figures: |c - p| <= 0.5 * 10^(e-1) with p = m * 10^e."""
    p = Decimal(printed)
    if p == 0:
        return computed == 0
    e = p.adjusted()
    c = Fraction(computed) if not isinstance(computed, float) else Fraction(computed)
    return abs(c - Fraction(p)) <= Fraction(1, 2) * Fraction(10) ** (e - 1)


def as_fraction(x):
    if hasattr(x, "as_fraction"):
        return x.as_fraction()
    return Fraction(float(x))


def cell_value(x):
    """Exact rational value of a computed error (float or ExtendedReal)."""
    return as_fraction(x)


def compute_tables(arith, ics=ICS, t=1, total_orders=(1, 2, 3, 4, 5), moment_orders=(4, 5),
                   eps_list=STUDY_EPS):
    """{('total', ic): table, ('moment_N4', ic): table, ('coefficient_N4', ic): ...}"""
    out = {}
    for ic in ics:
        study = Study(ic, arith)
        orders = sorted(set(total_orders) | set(moment_orders))
        data = ea.sweep(study, t, eps_list, orders, moments=True)
        if total_orders:
            out[("total", ic)] = ea.total_error_table(study, t, eps_list, total_orders, data=data)
        for N in moment_orders:
            sub = {k: v for k, v in data.items() if k[1] == N}
            xi, f = ea.moment_tables(study, t, N, eps_list, data=sub)
            out[(f"moment_N{N}", ic)] = xi
            out[(f"coefficient_N{N}", ic)] = f
    return out


def compare(table, rows, eps_filter=None, magnitude_floor=None, columns=None):
    """Mismatches between a computed ConvergenceTable and published rows.

    Returns a list of strings; empty means every compared entry agrees to two
    significant figures and every compared order within 0.10 of the
    published order.
    """
    problems = []
    names = columns or table.columns
    by_eps = {Fraction(r["eps"]): r for r in rows}
    for j, name in enumerate(table.columns):
        if name not in names:
            continue
        for i, e in enumerate(table.eps):
            if eps_filter is not None and not eps_filter(e):
                continue
            row = by_eps[Fraction(e)]
            printed = row["errors"][j]
            cell = table.cells[name][i]
            if magnitude_floor is not None and Decimal(printed) < magnitude_floor:
                continue
            if cell.below_floor:
                problems.append(f"{name} eps={e}: below the precision floor")
                continue
            if not two_figure_match(cell_value(cell.error), printed):
                problems.append(f"{name} eps={e}: error {float(cell.error):.4e} vs {printed}")
            ref_order = row["orders"][j]
            if ref_order is not None and cell.order is not None:
                if abs(cell.order - float(ref_order)) > 0.10 + 1e-12:
                    problems.append(f"{name} eps={e}: order {cell.order:.3f} vs {ref_order}")
    return problems


def theory_order_problems(table, expected, eps_filter, magnitude_floor=None):
    """Orders differing from ``expected[name]`` by more than 0.10."""
    problems = []
    for name in table.columns:
        for e, cell in zip(table.eps, table.cells[name]):
            if not eps_filter(e) or cell.order is None:
                continue
            if magnitude_floor is not None and cell_value(cell.error) < magnitude_floor:
                continue
            if abs(cell.order - expected[name]) > 0.10 + 1e-12:
                problems.append(f"{name} eps={e}: order {cell.order:.2f}, theory {expected[name]}")
    return problems


def moment_theory_orders(N):
    return {f"xi{l}": (2 * N if l == 0 else 2 * N + 2 - l) for l in range(N + 1)}


def rows_from(m_min):
    """eps filter selecting rows m >= m_min of eps = 2 * 4^-m."""
    limit = Fraction(2, 4 ** m_min)
    return lambda e: Fraction(e) <= limit


def log10(x):
    return log_abs(x) / math.log(10)


# criterion number -> PASS/FAIL line, printed at the end of the session
ACCEPTANCE = {}
