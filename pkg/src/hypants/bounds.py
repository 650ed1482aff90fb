"""Numerical verification of the curve-length inequalities and seam-sum
convergence on pairs of pants, plus synthesis of stopping pairs with
prescribed boundary traces for test-corpus generation.

Each checker returns a BoundReport; `holds` applies a 1e-9 outward
slack only (a true violation is never converted into a pass, and
results within the slack of a boundary are flagged marginal instead).

The hyperbolic-repetition budget (check_trace_descent) verifies
TRACE_DROP * sum(n_i) <= tr(A) - 2: each small replacement reduces the
trace by at least TRACE_DROP, so the exponent sum is budgeted by the
initial trace gap.  The printed source states the opposite inequality,
which fails on every worked example; the printed direction is evaluated
and reported alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .halfplane import (
    HYPERBOLIC,
    INF,
    LD,
    PAR_TOL,
    GeometryError,
    Geodesic,
    Hexagon,
    Isometry,
    axis,
    classify,
    common_perpendicular,
    geodesic_intersection,
    hexagon_from_pair,
    point_distance,
    translation_length,
)
from .algorithm import (
    DISCRETE_FREE,
    TRACE_DROP,
    AlgorithmError,
    AlgorithmTrace,
    GeneratorPair,
    _pair,
    is_coherent,
    run_algorithm,
    stopping_check,
)
from .winding import (
    RationalClass,
    WindingResult,
    intersections,
    intersections_printed,
    primitive_pair,
)

SLACK = 1e-9


class InfeasibleTraces(AlgorithmError):
    pass


class StoppingClassRejected(AlgorithmError):
    pass


class WrongPhaseShape(AlgorithmError):
    pass


class NoAxisIntersection(GeometryError):
    pass


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    subject: str
    theorem: str                 # T6.1, T6.2, T6.3, T6.4, T6.5, Corollary
    lower: float
    value: float
    upper: float
    holds: bool
    marginal: bool = False
    vacuous_lower: bool = False
    slack: float = SLACK
    details: Dict = field(default_factory=dict)

    def as_dict(self) -> Dict:
        return {
            "subject": self.subject,
            "theorem": self.theorem,
            "lower": _json_float(self.lower),
            "value": _json_float(self.value),
            "upper": _json_float(self.upper),
            "holds": self.holds,
            "marginal": self.marginal,
            "vacuous_lower": self.vacuous_lower,
            "slack": self.slack,
            "details": {k: _json_float(v) if isinstance(v, float) else v
                        for k, v in sorted(self.details.items())},
        }


def _json_float(x):
    if isinstance(x, float) and math.isinf(x):
        return None
    return float(x) if isinstance(x, float) else x


# -- pants data ---------------------------------------------------------------


@dataclass(frozen=True)
class PantsData:
    boundary_traces: Tuple[float, float, float]   # (t_A >= t_B >= 2, t_C <= -2)
    boundary_lengths: Tuple[float, float, float]  # sorted descending, 0 = cusp
    seam_lengths: Tuple[float, float, float]
    longest_seam: float
    hexagon: Hexagon

    def shortest_boundary(self) -> float:
        return self.boundary_lengths[-1]

    def longest_boundary(self) -> float:
        return self.boundary_lengths[0]


def _boundary_length(t: float, par_tol: float) -> float:
    a = abs(t)
    if a <= 2.0 + par_tol:
        return 0.0
    return 2.0 * math.acosh(a / 2.0)


def pants_data(stop: GeneratorPair, par_tol: float = PAR_TOL) -> PantsData:
    """Geometric summary of a stopping configuration."""
    t1, t2, t3 = stop.trace_triple()
    ta, tb = (t1, t2) if t1 >= t2 else (t2, t1)
    lengths = sorted((_boundary_length(t1, par_tol), _boundary_length(t2, par_tol),
                      _boundary_length(t3, par_tol)), reverse=True)
    hexagon = hexagon_from_pair(stop.first, stop.second, par_tol)
    seams = tuple(hexagon.side_lengths[i] for i in Hexagon.SEAM_SLOTS)
    return PantsData(boundary_traces=(ta, tb, t3),
                     boundary_lengths=tuple(lengths),
                     seam_lengths=seams,
                     longest_seam=max(seams),
                     hexagon=hexagon)


# -- synthesis ----------------------------------------------------------------


def build_pants_group(t_a: float, t_b: float, t_c: float,
                      par_tol: float = PAR_TOL) -> GeneratorPair:
    """Stopping pair with prescribed boundary traces (t_a >= t_b >= 2,
    t_c <= -2); trace(first^-1 second) equals t_c to 1e-12."""
    if not (t_a >= t_b >= 2.0 - par_tol):
        raise InfeasibleTraces(f"need t_a >= t_b >= 2, got ({t_a}, {t_b})")
    if t_c > -2.0 + par_tol:
        raise InfeasibleTraces(f"need t_c <= -2, got {t_c}")
    ta, tb, tc = LD(t_a), LD(t_b), LD(t_c)
    if t_a <= 2.0 + par_tol:
        # parabolic normal form for the first generator
        first = Isometry([[1, 2], [0, 1]])
        c = (tb - tc) / 2.0
        a = d = tb / 2.0
        if t_b <= 2.0 + par_tol:
            second = Isometry(np.array([[1, 0], [c, 1]], dtype=LD))
        else:
            b = (a * d - 1.0) / c
            second = Isometry(np.array([[a, b], [c, d]], dtype=LD))
    else:
        lam = (ta + np.sqrt(ta * ta - 4.0)) / 2.0
        first = Isometry(np.array([[lam, 0], [0, 1.0 / lam]], dtype=LD))
        denom = lam - 1.0 / lam
        a = (tb * lam - tc) / denom
        d = tb - a
        b = a * d - 1.0
        second = Isometry(np.array([[a, b], [1.0, d]], dtype=LD))
    pair = _pair(first, second, par_tol)
    info = stopping_check(pair, par_tol)
    if info is None or info.kind != "discrete":
        raise InfeasibleTraces("constructed pair fails the stopping condition")
    if not is_coherent(pair):
        raise InfeasibleTraces("constructed pair is not coherently oriented")
    return pair


# -- length-band checks (winding sequences vs translation lengths) ------------


def _reference_half_length(stopping: GeneratorPair, par_tol: float) -> Tuple[float, str]:
    """Half-length of the longest hyperbolic stopping generator, falling
    back to the first non-zero winding curve when all three are parabolic."""
    traces = stopping.trace_triple()
    hyp = [abs(t) for t in traces if abs(t) > 2.0 + par_tol]
    if hyp:
        return math.acosh(max(hyp) / 2.0), "longest hyperbolic stopping generator"
    t = abs((stopping.first @ stopping.second).trace)
    return math.acosh(t / 2.0), "first non-zero winding curve (all cusps)"


def _wound_run(stop: GeneratorPair, r: RationalClass, par_tol: float):
    wr = primitive_pair(stop, r, par_tol)
    run = run_algorithm(wr.pair.first, wr.pair.second, par_tol=par_tol)
    return wr, run


def check_length_bounds(stop: GeneratorPair, r: RationalClass,
                        par_tol: float = PAR_TOL,
                        theorem: str = "T6.1") -> BoundReport:
    """Band prod(n_i) * T_ref/2 < T_W/2 <= prod(n_i + 1) * T_ref/2 for the
    F-sequence [n_1..n_t] of the wound class; strict lower, weak upper.
    theorem="T6.2" reports the same band in full curve-length units."""
    if r.is_stopping_class():
        raise StoppingClassRejected(f"{r} is a stopping generator class")
    wr, run = _wound_run(stop, r, par_tol)
    subject = f"{r}"
    scale = 2.0 if theorem == "T6.2" else 1.0
    if run.verdict != DISCRETE_FREE:
        return BoundReport(subject, theorem, 0.0, 0.0, 0.0, holds=False,
                           details={"error": f"unwind verdict {run.verdict}"})
    f_seq = run.f_sequence
    t_ref2, ref_kind = _reference_half_length(run.stopping, par_tol)
    value = 0.5 * translation_length(wr.pair.first, par_tol)
    lower = t_ref2
    upper = t_ref2
    for n in f_seq:
        lower *= n
        upper *= (n + 1)
    lower *= scale
    upper *= scale
    value *= scale
    holds = (value > lower - SLACK) and (value <= upper + SLACK)
    marginal = abs(value - lower) <= SLACK or abs(value - upper) <= SLACK
    floor_seq = [s.floor_exponent for s in run.steps]
    return BoundReport(subject, theorem, float(lower), float(value), float(upper),
                       holds=holds, marginal=marginal,
                       details={"f_sequence": list(f_seq),
                                "floor_sequence": floor_seq,
                                "reference": ref_kind,
                                "reference_half_length": float(t_ref2)})


def check_trace_descent(trace: AlgorithmTrace, par_tol: float = PAR_TOL) -> BoundReport:
    """Hyperbolic-repetition budget TRACE_DROP * sum(n_i) <= tr(A) - 2 over
    an all-hyperbolic run, plus phase length <= sum(n_i).

    The printed direction (>=) is evaluated into details["printed_holds"].
    """
    if trace.verdict != DISCRETE_FREE or trace.initial is None or trace.stopping is None:
        raise WrongPhaseShape("descent check needs a DiscreteFree run")
    pairs = [s.before for s in trace.steps] + [trace.stopping]
    for p in pairs:
        if (p.kind_first.kind != HYPERBOLIC or p.kind_second.kind != HYPERBOLIC):
            raise WrongPhaseShape("run leaves the hyperbolic-hyperbolic case")
    total = sum(trace.f_sequence)
    budget = trace.initial.first.trace - 2.0
    spent = TRACE_DROP * total
    holds = spent <= budget + SLACK * max(1.0, abs(budget))
    printed_holds = spent >= budget - SLACK * max(1.0, abs(budget))
    phase_ok = len(trace.steps) <= total
    return BoundReport(subject="descent", theorem="T6.3",
                       lower=0.0, value=float(spent), upper=float(budget),
                       holds=holds and phase_ok,
                       details={"exponent_sum": total,
                                "steps": len(trace.steps),
                                "phase_length_ok": phase_ok,
                                "printed_holds": printed_holds,
                                "drop_per_step": TRACE_DROP})


def check_intersection_bounds(stop: GeneratorPair, r: RationalClass,
                              par_tol: float = PAR_TOL,
                              variant: str = "canonical") -> BoundReport:
    """I(r) * L(gamma_0) <= L(gamma_r) <= (I(r) + 1) * L(alpha_0), with
    L(gamma_0) the shortest and L(alpha_0) the longest boundary length.
    A cusped shortest boundary makes the lower bound vacuous (flagged)."""
    if r.is_stopping_class():
        raise StoppingClassRejected(f"{r} is a stopping generator class")
    wr = primitive_pair(stop, r, par_tol)
    value = translation_length(wr.pair.first, par_tol)
    data = pants_data(stop, par_tol)
    icount = intersections(r) if variant == "canonical" else intersections_printed(r)
    lower = icount * data.shortest_boundary()
    upper = (icount + 1) * data.longest_boundary()
    vacuous = data.shortest_boundary() == 0.0
    holds = (vacuous or value >= lower - SLACK) and value <= upper + SLACK
    marginal = (not vacuous and abs(value - lower) <= SLACK) or abs(value - upper) <= SLACK
    return BoundReport(f"{r}", "T6.4", float(lower), float(value), float(upper),
                       holds=holds, marginal=marginal, vacuous_lower=vacuous,
                       details={"variant": variant, "intersections": icount})


# -- seam sums (Thm 6.5) -------------------------------------------------------


def seam_partial_sums(stop: GeneratorPair, t_max: int,
                      par_tol: float = PAR_TOL):
    """Feet of the axes of first*second^i along the common perpendicular.

    Returns (rho, lam0, residuals): the consecutive gaps rho_i for
    i = 1..t_max, the distance lam0 between the feet of the two stopping
    axes, and the residuals lam0 - partial sums (which must decrease to 0
    monotonically).
    """
    if t_max < 1:
        raise AlgorithmError("t_max must be at least 1")
    if (stop.kind_first.kind != HYPERBOLIC or stop.kind_second.kind != HYPERBOLIC):
        raise WrongPhaseShape("seam sums need two hyperbolic stopping generators")
    ax_a = axis(stop.first, par_tol)
    ax_b = axis(stop.second, par_tol)
    line, lam0 = common_perpendicular(ax_a, ax_b)
    q_prev = geodesic_intersection(line, ax_a)
    rho: List[float] = []
    travelled = 0.0
    word = stop.first
    for i in range(1, t_max + 1):
        word = word @ stop.second
        try:
            ax_i = axis(word, par_tol)
            q_i = geodesic_intersection(ax_i, line)
        except GeometryError as exc:
            raise NoAxisIntersection(
                f"axis of first*second^{i} misses the perpendicular") from exc
        step = point_distance(q_prev, q_i)
        rho.append(step)
        travelled += step
        if travelled > lam0 + 1e-6 * max(1.0, lam0):
            raise NoAxisIntersection(
                f"foot {i} overshoots the opposite axis; feet not monotone")
        q_prev = q_i
    sums = np.cumsum(rho)
    residuals = [float(lam0 - s) for s in sums]
    return rho, float(lam0), residuals


# -- Corollary: half-turn lines are no longer than the longest seam ------------


def check_halfturn_bound(stop: GeneratorPair, r: RationalClass,
                         par_tol: float = PAR_TOL) -> BoundReport:
    """Common-perpendicular length between the axes of the wound primitive
    pair for r, reported against the longest seam of the pants."""
    wr = primitive_pair(stop, r, par_tol)
    try:
        ax_w = axis(wr.pair.first, par_tol)
        ax_v = axis(wr.pair.second, par_tol)
        _, dist = common_perpendicular(ax_w, ax_v)
    except GeometryError as exc:
        raise GeometryError(f"half-turn line undefined for {r}: {exc}") from exc
    lam0 = max(pants_data(stop, par_tol).seam_lengths)
    if math.isinf(lam0):
        holds, marginal = True, False
    else:
        holds = dist <= lam0 + SLACK
        marginal = abs(dist - lam0) <= SLACK
    return BoundReport(f"{r}", "Corollary", 0.0, float(dist),
                       float(lam0) if not math.isinf(lam0) else INF,
                       holds=holds, marginal=marginal,
                       details={})
