"""Errors, observed orders, convergence tables and error-ratio profiles.

Error norms come in two scalings.  The raw L2(dmu dx) norm of the coefficient
difference is sqrt(sum |d_lk|^2).  Tabulated values use the norm per unit
length of the periodic cell, i.e. the raw norm divided by sqrt(2 pi); this is
the ``normalized=True`` default and is the scaling in which the published
error tables are expressed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bigfloat import log_abs
from .moment_system import SpectralState, sum_abs2
from .solver import STUDY_EPS, Study


def _finish(acc, arith, normalized):
    val = arith.sqrt(acc)
    if normalized:
        val = val / arith.sqrt(arith.pi() * 2)
    return val


def _check_pair(ref, approx):
    if ref.K != approx.K:
        raise ValueError(f"Fourier cutoffs differ: {ref.K} vs {approx.K}")
    if ref.order < approx.order:
        raise ValueError("reference order must be at least the approximation order")
    if ref.arith != approx.arith:
        raise ValueError("states use different arithmetic")


def l2_error(ref, approx, normalized=True):
    """||ref - pad(approx)|| over all moments and wavenumbers."""
    _check_pair(ref, approx)
    diff = ref.coeffs - approx.padded(ref.order).coeffs
    return _finish(sum_abs2(diff, ref.arith), ref.arith, normalized)


def moment_error(ref, approx, l, normalized=True):
    """||ref_l - approx_l||_{L2(dx)} for one Legendre index l <= approx order."""
    _check_pair(ref, approx)
    if not 0 <= l <= approx.order:
        raise ValueError(f"moment index {l} outside 0..{approx.order}")
    diff = ref.coeffs[:, l:l + 1] - approx.coeffs[:, l:l + 1]
    return _finish(sum_abs2(diff, ref.arith), ref.arith, normalized)


def moment_norm(state, l, normalized=True):
    """||u_l||_{L2(dx)}."""
    return _finish(sum_abs2(state.coeffs[:, l:l + 1], state.arith), state.arith, normalized)


def state_norm(state, normalized=True):
    return _finish(sum_abs2(state.coeffs, state.arith), state.arith, normalized)


def error_split(ref, approx, normalized=True):
    """(||e||, ||eta||, ||xi||): eta collects moments l > N of the reference,
    xi the differences for l <= N."""
    _check_pair(ref, approx)
    n = approx.order + 1
    arith = ref.arith
    xi2 = sum_abs2(ref.coeffs[:, :n] - approx.coeffs, arith)
    eta2 = sum_abs2(ref.coeffs[:, n:], arith) if ref.order >= n else arith.zero()
    total = l2_error(ref, approx, normalized)
    return total, _finish(eta2, arith, normalized), _finish(xi2, arith, normalized)


def observed_order(err_coarse, err_fine, ratio=4):
    """log(err_coarse/err_fine)/log(ratio); None when an error is zero."""
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    if err_coarse is None or err_fine is None:
        return None
    if _is_zero(err_coarse) or _is_zero(err_fine):
        return None
    if err_coarse < 0 or err_fine < 0:
        raise ValueError("errors must be nonnegative")
    return (log_abs(err_coarse) - log_abs(err_fine)) / math.log(float(ratio))


def _is_zero(x):
    return not bool(x)


def algebraic_rate_fit(errors_by_N, eps=Fraction(1, 2)):
    """Least-squares q in error ~ C N^-q.

    ``errors_by_N`` is a mapping N -> error or a sequence of errors for
    N = 1, 2, ....  ``eps`` is recorded only; the fit is meaningful for
    eps of order one.
    """
    if not isinstance(errors_by_N, dict):
        errors_by_N = {i + 1: e for i, e in enumerate(errors_by_N)}
    if len(errors_by_N) < 4:
        raise ValueError("need at least four points for a rate fit")
    ns = sorted(errors_by_N)
    if any(_is_zero(errors_by_N[n]) or errors_by_N[n] < 0 for n in ns):
        raise ValueError("errors must be positive")
    x = np.log(np.array(ns, dtype=float))
    y = np.array([log_abs(errors_by_N[n]) for n in ns])
    slope = np.polyfit(x, y, 1)[0]
    return float(-slope)


# -- convergence tables ---------------------------------------------------------------

@dataclass
class TableCell:
    error: object
    order: float | None = None
    below_floor: bool = False


@dataclass
class ConvergenceTable:
    """Errors and observed orders on an eps sweep.

    ``columns`` label the quantities (e.g. 'P1'.. for total errors, 'xi0'..
    for moment errors, 'f0'.. for moment norms); ``cells[col][i]`` matches
    ``eps[i]``.
    """

    ic: str
    t: Fraction
    quantity: str
    eps: list
    columns: list
    cells: dict
    N: int | None = None
    arith: object = None
    meta: dict = field(default_factory=dict)

    def column(self, name):
        return self.cells[name]

    def errors(self, name):
        return [c.error for c in self.cells[name]]

    def orders(self, name):
        return [c.order for c in self.cells[name]]

    # -- emitters --------------------------------------------------------------
    def _fmt(self, x, digits):
        return self.arith.fmt(x, digits)

    def to_csv(self, digits=6):
        lines = []
        for name in self.columns:
            n_label = self.N if self.N is not None else name.lstrip("P")
            lines.append(f"# ic={self.ic} t={_frac_str(self.t)} quantity={self.quantity} "
                         f"N={n_label} column={name}")
            lines.append("eps,error,order")
            for e, cell in zip(self.eps, self.cells[name]):
                order = "" if cell.order is None else f"{cell.order:.2f}"
                if cell.below_floor:
                    order = "below_floor"
                lines.append(f"{_frac_str(e)},{self._fmt(cell.error, digits)},{order}")
        return "\n".join(lines) + "\n"

    def to_markdown(self, digits=3):
        head = "| eps | " + " | ".join(f"{c} error | order" for c in self.columns) + " |"
        rule = "|" + "---|" * (1 + 2 * len(self.columns))
        rows = [head, rule]
        for i, e in enumerate(self.eps):
            parts = [_frac_str(e)]
            for name in self.columns:
                cell = self.cells[name][i]
                parts.append(self._fmt(cell.error, digits))
                if cell.below_floor:
                    parts.append("floor")
                else:
                    parts.append("" if cell.order is None else f"{cell.order:.2f}")
            rows.append("| " + " | ".join(parts) + " |")
        title = f"{self.quantity} errors, {self.ic}, t={_frac_str(self.t)}"
        if self.N is not None:
            title += f", N={self.N}"
        return f"**{title}**\n\n" + "\n".join(rows) + "\n"


def _frac_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fill_orders(cells, eps):
    prev = None
    prev_eps = None
    for e, cell in zip(eps, cells):
        if cell.below_floor:
            cell.order = None
            prev = None
            continue
        if prev is not None:
            ratio = Fraction(prev_eps) / Fraction(e)
            cell.order = observed_order(prev, cell.error, float(ratio))
        prev = cell.error
        prev_eps = e


def sweep(study, t, eps_list=STUDY_EPS, orders=(1, 2, 3, 4, 5), moments=False,
          normalized=True):
    """Solve the reference and every P_N at each eps; returns a dict keyed by
    (eps, N) with total error, per-moment errors, moment norms and the
    reference norm."""
    arith = study.arith
    out = {}
    for e in eps_list:
        ref = study.reference(e, t)
        ref_norm = state_norm(ref, normalized)
        for N in orders:
            approx = study.solve(N, e, t)
            rec = {"total": l2_error(ref, approx, normalized), "ref_norm": ref_norm}
            if moments:
                rec["xi"] = [moment_error(ref, approx, l, normalized) for l in range(N + 1)]
                rec["f"] = [moment_norm(approx, l, normalized) for l in range(N + 1)]
            out[(Fraction(e), N)] = rec
    return out


def _below(err, ref_norm, arith):
    return err < arith.floor_level() * ref_norm


def total_error_table(study, t, eps_list=STUDY_EPS, orders=(1, 2, 3, 4, 5), data=None):
    data = data or sweep(study, t, eps_list, orders)
    arith = study.arith
    cells = {}
    for N in orders:
        col = []
        for e in eps_list:
            rec = data[(Fraction(e), N)]
            col.append(TableCell(rec["total"], None, _below(rec["total"], rec["ref_norm"], arith)))
        _fill_orders(col, eps_list)
        cells[f"P{N}"] = col
    return ConvergenceTable(study.ic.label, Fraction(t), "total", list(eps_list),
                            [f"P{N}" for N in orders], cells, None, arith)


def moment_tables(study, t, N, eps_list=STUDY_EPS, data=None):
    """(moment-error table xi_0..xi_N, moment-norm table f_0..f_N)."""
    data = data or sweep(study, t, eps_list, (N,), moments=True)
    arith = study.arith
    xi_cells, f_cells = {}, {}
    for l in range(N + 1):
        xs, fs = [], []
        for e in eps_list:
            rec = data[(Fraction(e), N)]
            xs.append(TableCell(rec["xi"][l], None, _below(rec["xi"][l], rec["ref_norm"], arith)))
            fs.append(TableCell(rec["f"][l], None, _below(rec["f"][l], rec["ref_norm"], arith)))
        _fill_orders(xs, eps_list)
        _fill_orders(fs, eps_list)
        xi_cells[f"xi{l}"] = xs
        f_cells[f"f{l}"] = fs
    xi = ConvergenceTable(study.ic.label, Fraction(t), "moment", list(eps_list),
                          list(xi_cells), xi_cells, N, arith)
    f = ConvergenceTable(study.ic.label, Fraction(t), "coefficient", list(eps_list),
                         list(f_cells), f_cells, N, arith)
    return xi, f


# -- error ratios -----------------------------------------------------------------------

def ratio_rows(errors, eps, quantity="total", floor=None):
    """[(N, raw, normalized, flagged)] from a mapping N -> error.

    raw = e^{N+1}/e^N, normalized divides by eps (total) or eps^2 (moments).
    A row whose denominator (or numerator) is below ``floor`` is flagged and
    its ratios set to None.
    """
    ns = sorted(errors)
    power = 1 if quantity == "total" else 2
    epsf = float(eps) ** power
    rows = []
    for n in ns:
        if n + 1 not in errors:
            continue
        a, b = errors[n], errors[n + 1]
        bad = _is_zero(a) or (floor is not None and (a < floor or b < floor))
        if bad:
            rows.append((n, None, None, True))
            continue
        raw = math.exp(log_abs(b) - log_abs(a)) if not _is_zero(b) else 0.0
        rows.append((n, raw, raw / epsf, False))
    return rows


def ratio_profile(ic, t, eps, N_max, quantity="total", arith=None, modes=None,
                  method="grid"):
    """Error ratios ||e^{N+1}||/||e^N|| for N = 1..N_max.

    ``quantity`` is 'total' or 'm<l>' for the l-th moment error.
    """
    from .bigfloat import DOUBLE
    from .solver import resolved_modes

    if N_max < 1:
        raise ValueError("N_max must be at least 1")
    arith = arith or DOUBLE
    study = Study(ic, arith, resolved_modes(t, eps, modes), method)
    errors = ratio_errors(study, t, eps, N_max, quantity)
    ref_norm = state_norm(study.reference(eps, t))
    floor = arith.floor_level() * ref_norm
    return ratio_rows(errors, eps, "total" if quantity == "total" else "moment", floor)


def ratio_errors(study, t, eps, N_max, quantity="total"):
    """N -> error for N = 1..N_max+1 (the quantity's error for each order)."""
    ref = study.reference(eps, t)
    out = {}
    for N in range(1, N_max + 2):
        approx = study.solve(N, eps, t)
        if quantity == "total":
            out[N] = l2_error(ref, approx)
        else:
            l = int(quantity.lstrip("m"))
            if l > N:
                continue
            out[N] = moment_error(ref, approx, l)
    return out
