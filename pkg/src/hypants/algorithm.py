"""Trace-minimizing replacement algorithm for two-generator subgroups
of PSL(2,R) with intertwining (disjoint) axes.

A coherently ordered pair (A, B) is repeatedly replaced by
(B^-1, A^-1 B^n), the exponent n chosen so the trace of the new second
generator is as small as it can be while the pair can still descend.
The run halts declaring the group discrete and free when
trace(A^-1 B) <= -2, reports an elliptic verdict when an elliptic
element appears, and records the exponent list (the F-sequence), which
doubles as a discreteness certificate.

Exponents are computed purely from the trace triple
(tr A, tr B, tr(A^-1 B)) through the linear three-term recursion
s_{n+1} = tr(B) s_n - s_{n-1} satisfied by s_n = tr(A^-1 B^n).  The
closed-form greatest-integer expressions from the source theory are
kept as a diagnostic variant (`nee_exponent_printed`); for pairs of
hyperbolics whose common perpendicular is long ("fat" pants) the
printed length-ratio formula provably overshoots the trace-minimizing
exponent, so it is reported but never drives a replacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .halfplane import (
    ELLIPTIC,
    HYPERBOLIC,
    IDENTITY,
    INF,
    LD,
    PAR_TOL,
    EllipticInput,
    GeometryError,
    Geodesic,
    Isometry,
    IsometryClass,
    SharedEndpoint,
    axis,
    classify,
    common_perpendicular,
    geodesics_cross,
    left_of,
    translation_length,
)

STOP_TOL = 1e-9          # slack on the trace(A^-1 B) <= 0 trigger
FLOOR_SNAP = 1e-12       # floor(x + snap), so analytic integers survive
_GEOM_TRACE_LIMIT = 1e12  # past this, boundary fixed points are unresolvable
TRACE_DROP = (math.sqrt(2.0) - 1.0) ** 2 / math.sqrt(2.0)  # per-step trace drop

DISCRETE_FREE = "DiscreteFree"
NOT_DISCRETE = "NotDiscrete"
NOT_FREE = "NotFree"
ELLIPTIC_UNDETERMINED = "EllipticUndetermined"

ORDER_1 = "1"        # tr C >= tr D >= |tr C^-1 D|
ORDER_2 = "2"        # tr C >= |tr C^-1 D| >= tr D
ORDER_3 = "3"        # |tr C^-1 D| >= tr C >= tr D
ORDER_CUSPED = "cusped"


class AlgorithmError(GeometryError):
    pass


class IntersectingAxes(AlgorithmError):
    """Both generators hyperbolic with crossing axes: out of scope here."""


class ElementaryGroup(AlgorithmError):
    pass


class NotCoherent(AlgorithmError):
    pass


class ZeroLength(AlgorithmError):
    pass


class StoppingPair(AlgorithmError):
    pass


class NonEllipticInput(AlgorithmError):
    pass


class EllipticProduced(AlgorithmError):
    def __init__(self, element: Isometry, exponent: int):
        super().__init__("replacement produced an elliptic element")
        self.element = element
        self.exponent = exponent


class NoDescent(AlgorithmError):
    """No exponent reduces the pair; not reachable from a coherent pair."""


class MaxStepsExceeded(AlgorithmError):
    def __init__(self, partial: "AlgorithmTrace"):
        super().__init__(f"no stop after {len(partial.steps)} replacements")
        self.partial = partial


# -- pairs ----------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorPair:
    first: Isometry
    second: Isometry
    kind_first: IsometryClass
    kind_second: IsometryClass
    coherent: bool = True
    # substitutions applied at ingestion, for mapping words back
    swapped: bool = False
    first_inverted: bool = False
    second_inverted: bool = False

    @property
    def kinds(self) -> Tuple[IsometryClass, IsometryClass]:
        return (self.kind_first, self.kind_second)

    def traces(self) -> Tuple[float, float]:
        return (self.first.trace, self.second.trace)

    def third(self) -> Isometry:
        return self.first.inverse() @ self.second

    def trace_triple(self) -> Tuple[float, float, float]:
        return (self.first.trace, self.second.trace, self.third().trace)

    def is_par_par(self, par_tol: float = PAR_TOL) -> bool:
        return (self.kind_first.kind == "parabolic"
                and self.kind_second.kind == "parabolic")


def _pair(first: Isometry, second: Isometry, par_tol: float = PAR_TOL,
          **subs) -> GeneratorPair:
    return GeneratorPair(first, second,
                         classify(first, par_tol), classify(second, par_tol),
                         **subs)


def _axis_or_point(iso: Isometry, par_tol: float) -> Geodesic:
    return axis(iso, par_tol)


def _lex_key(iso: Isometry):
    return tuple(float(v) for v in iso.sign_normalized().m.ravel())


def coherent_order(a: Isometry, b: Isometry, par_tol: float = PAR_TOL) -> GeneratorPair:
    """Sign-normalize, order and orient a generator pair coherently.

    The returned pair has trace(first) >= trace(second) >= 0 (hyperbolic
    first when only one is), disjoint axes, and both attracting fixed
    points / parabolic rotation senses on the left of the common
    perpendicular oriented from the first axis to the second.

    The relative orientation (which of trace(a^-1 b), trace(a b) is the
    third trace) is fixed by trace minimality, which is exact at any
    scale; the residual simultaneous-inversion ambiguity is resolved
    geometrically when the perpendicular is well conditioned and left
    alone otherwise (it affects neither traces, exponents nor verdicts,
    only the mirror class of the reported configuration).
    """
    a = a.sign_normalized()
    b = b.sign_normalized()
    ka = classify(a, par_tol)
    kb = classify(b, par_tol)
    for name, k in (("first", ka), ("second", kb)):
        if k.kind == ELLIPTIC:
            raise EllipticInput(f"{name} generator is elliptic")
        if k.kind == IDENTITY:
            raise ElementaryGroup(f"{name} generator is the identity")

    # Beyond this trace scale the fixed points of distinct long
    # translations collide in floating point, so endpoint-based side
    # checks stop being answerable; the trace logic below governs alone.
    geom_ok = max(abs(a.trace), abs(b.trace)) < _GEOM_TRACE_LIMIT
    ax_a = ax_b = None
    if geom_ok:
        try:
            ax_a = _axis_or_point(a, par_tol)
            ax_b = _axis_or_point(b, par_tol)
        except GeometryError:
            ax_a = ax_b = None
    if ax_a is not None and ax_b is not None:
        shared = {ax_a.e1, ax_a.e2} & {ax_b.e1, ax_b.e2}
        if _same_fixed_set(ax_a, ax_b):
            raise ElementaryGroup("generators share their fixed-point set")
        if shared:
            raise SharedEndpoint("generators share a fixed point")
        if (not ax_a.degenerate and not ax_b.degenerate
                and geodesics_cross(ax_a, ax_b)):
            raise IntersectingAxes("hyperbolic generators with crossing axes")

    # ordering: hyperbolic before parabolic, then descending trace,
    # ties broken by the lexicographically smaller matrix tuple
    swap = False
    rank_a = (0 if ka.kind == HYPERBOLIC else 1, -a.trace)
    rank_b = (0 if kb.kind == HYPERBOLIC else 1, -b.trace)
    if rank_b < rank_a:
        swap = True
    elif rank_b == rank_a and _lex_key(b) < _lex_key(a):
        swap = True
    if swap:
        a, b = b, a
        ka, kb = kb, ka
        ax_a, ax_b = ax_b, ax_a

    # coherent orientation carries the smaller of the two third traces
    inv_b = False
    t_as_is = (a.inverse() @ b).trace
    t_flipped = (a @ b).trace
    if t_flipped < t_as_is:
        b = b.inverse()
        inv_b = True

    # simultaneous inversion: settle by the left-of-L test when we can
    inv_both = False
    if ax_a is not None and ax_b is not None:
        try:
            line, _ = common_perpendicular(ax_a, ax_b)
            if not _pushes_left(a, line, other_end=line.e2):
                a, b = a.inverse(), b.inverse()
                inv_both = True
        except GeometryError:
            pass
    return _pair(a, b, par_tol, swapped=swap,
                 first_inverted=inv_both,
                 second_inverted=inv_b != inv_both)


def _same_fixed_set(ax_a: Geodesic, ax_b: Geodesic) -> bool:
    # exact comparison: nearby-but-distinct axes of long translations must
    # not register as elementary; truly shared fixed points that differ in
    # the last ulp surface as SharedEndpoint errors downstream instead
    pts_a = {ax_a.e1, ax_a.e2}
    pts_b = {ax_b.e1, ax_b.e2}
    if ax_a.degenerate or ax_b.degenerate:
        return bool(pts_a & pts_b) and (ax_a.degenerate or ax_b.degenerate)
    return pts_a == pts_b


def _pushes_left(x: Isometry, line: Geodesic, other_end: float) -> bool:
    """True when x moves the far endpoint of the perpendicular to the
    left of it: uniform coherence test for hyperbolics and parabolics."""
    return left_of(line, x.apply(other_end))


def is_coherent(p: GeneratorPair) -> bool:
    """Re-check the geometric coherence conditions of an ordered pair."""
    try:
        ax_a = axis(p.first)
        ax_b = axis(p.second)
        line, _ = common_perpendicular(ax_a, ax_b)
    except GeometryError:
        return False
    return (_pushes_left(p.first, line, line.e2)
            and _pushes_left(p.second, line, line.e1))


# -- stopping --------------------------------------------------------------


@dataclass(frozen=True)
class StopInfo:
    kind: str                  # "discrete" or "elliptic"
    third: Isometry
    stop_order: Optional[str] = None


def stop_ordering(t1: float, t2: float, t3: float, par_tol: float = PAR_TOL) -> str:
    for t in (t1, t2, t3):
        if abs(abs(t) - 2.0) <= par_tol:
            return ORDER_CUSPED
    a3 = abs(t3)
    if t1 >= t2 >= a3:
        return ORDER_1
    if t1 >= a3 >= t2:
        return ORDER_2
    return ORDER_3


def stopping_check(p: GeneratorPair, par_tol: float = PAR_TOL) -> Optional[StopInfo]:
    """None while trace(first^-1 second) > 0; otherwise the stop record.

    trace <= -2 is the discrete stop; a trace in (-2, 0] means the
    product is elliptic and the verdict routes through classify_elliptic.
    """
    third = p.third()
    t3 = third.trace
    if t3 > STOP_TOL:
        return None
    if t3 <= -2.0 + par_tol:
        order = stop_ordering(p.first.trace, p.second.trace, t3, par_tol)
        return StopInfo(kind="discrete", third=third, stop_order=order)
    return StopInfo(kind="elliptic", third=third)


# -- elliptic verdicts ------------------------------------------------------


@dataclass(frozen=True)
class EllipticVerdict:
    kind: str                 # finite_order | infinite_order | undetermined
    order: Optional[int]
    angle: float
    ratio: float              # angle / pi
    error: float              # distance to the best rational with q <= 1000


FINITE_ORDER = "finite_order"
INFINITE_ORDER = "infinite_order"
UNDETERMINED = "undetermined"

_RATIONAL_DEPTH = 1000
_FINITE_TOL = 1e-9
_INFINITE_TOL = 1e-6


def classify_elliptic(iso: Isometry, par_tol: float = PAR_TOL) -> EllipticVerdict:
    """Decide whether an elliptic is a finite-order rotation.

    The rotation angle over pi is compared against rationals with
    denominator <= 1000: within 1e-9 it is declared finite order (group
    not free), a miss above 1e-6 is treated as infinite order (group not
    discrete), and the band between stays honestly undetermined.
    """
    k = classify(iso, par_tol)
    if k.kind != ELLIPTIC:
        raise NonEllipticInput(f"expected an elliptic element, got {k.kind}")
    ratio = k.angle / math.pi
    best = Fraction(ratio).limit_denominator(_RATIONAL_DEPTH)
    err = abs(ratio - float(best))
    if err <= _FINITE_TOL:
        j, q = best.numerator, best.denominator
        order = 2 * q // math.gcd(j, 2 * q)
        return EllipticVerdict(FINITE_ORDER, order, k.angle, ratio, err)
    if err > _INFINITE_TOL:
        return EllipticVerdict(INFINITE_ORDER, None, k.angle, ratio, err)
    return EllipticVerdict(UNDETERMINED, None, k.angle, ratio, err)


def _verdict_for(ev: EllipticVerdict) -> str:
    if ev.kind == FINITE_ORDER:
        return NOT_FREE
    if ev.kind == INFINITE_ORDER:
        return NOT_DISCRETE
    return ELLIPTIC_UNDETERMINED


# -- exponents --------------------------------------------------------------


def trace_sequence(tc: float, td: float, s1: float, count: int) -> List[float]:
    """s_n = tr(C^-1 D^n) for n = 0..count via s_{n+1} = td*s_n - s_{n-1}."""
    seq = [LD(tc), LD(s1)]
    t = LD(td)
    for _ in range(count - 1):
        seq.append(t * seq[-1] - seq[-2])
    return [float(v) for v in seq]


def exponent_from_traces(tc: float, td: float, s1: float,
                         par_tol: float = PAR_TOL) -> int:
    """Replacement exponent from the trace triple alone.

    For a parabolic second generator the recursion is linear and the
    greatest-integer expression (tr C - 2)/|tr(C^-1 D) - tr C| is exact.
    Otherwise take the largest n for which the new second generator
    tr(C^-1 D^n) keeps a coherent (non-negative) trace and the resulting
    pair can still descend or legitimately stop.
    """
    if s1 <= STOP_TOL:
        raise StoppingPair("pair already satisfies the stop condition")
    if abs(td) <= 2.0 + par_tol:
        if abs(td) < 2.0 - par_tol:
            raise EllipticInput("second generator is elliptic")
        # parabolic second: s_n = tc + n*kappa exactly
        if abs(tc) <= 2.0 + par_tol:
            return 1  # parabolic-parabolic pair
        kappa = s1 - tc
        if kappa >= -par_tol:
            raise NoDescent("parabolic powers do not reduce the trace")
        n = int(math.floor((tc - 2.0) / abs(kappa) + FLOOR_SNAP))
        return max(1, n)

    tc_ld, td_ld, s_prev, s_cur = LD(tc), LD(td), LD(tc), LD(s1)
    best: Optional[int] = None
    n = 1
    limit = 1 << 24
    while n < limit:
        s_next = td_ld * s_cur - s_prev
        if s_cur >= -par_tol and _viable(float(s_cur), float(s_next), par_tol):
            best = n
        if s_cur < -par_tol:
            break
        if s_cur > s_prev and float(s_prev) >= 2.0 - par_tol and n > 1:
            break  # hyperbolic and growing: no later exponent can work
        s_prev, s_cur = s_cur, s_next
        n += 1
    if best is None:
        raise NoDescent("no viable replacement exponent")
    return best


def _viable(s_n: float, s_next: float, par_tol: float) -> bool:
    if s_next <= STOP_TOL:
        return True                      # next stop check fires
    if s_next < 2.0 - par_tol:
        return True                      # sub-hyperbolic remainder
    return s_next <= s_n * (1.0 + 1e-12) + STOP_TOL   # keeps descending


def nee_exponent(p: GeneratorPair, par_tol: float = PAR_TOL) -> int:
    """Canonical replacement exponent of a coherent, non-stopping pair."""
    if stopping_check(p, par_tol) is not None:
        raise StoppingPair("stopping pair has no replacement exponent")
    tc, td, s1 = p.trace_triple()
    return exponent_from_traces(tc, td, s1, par_tol)


def nee_exponent_printed(p: GeneratorPair, par_tol: float = PAR_TOL) -> Optional[int]:
    """Greatest-integer exponent formulas in their printed form.

    Hyp-hyp: floor((T_first/2)/(T_second/2)); hyp-par:
    floor((tr first - 2)/sqrt(|tr[first,second] - 2|)); par-par: 1.
    Exact for the parabolic branches; for hyperbolic pairs it matches the
    canonical exponent only when the pair is thin enough, so it is kept
    as a reported diagnostic.  Returns None where a branch is undefined.
    """
    k1, k2 = p.kind_first.kind, p.kind_second.kind
    if k1 == HYPERBOLIC and k2 == HYPERBOLIC:
        t_first = translation_length(p.first, par_tol)
        t_second = translation_length(p.second, par_tol)
        if t_second < 1e-12:
            raise ZeroLength("second generator has zero length; reclassify")
        return int(math.floor(t_first / t_second + FLOOR_SNAP))
    if k1 == HYPERBOLIC and k2 == "parabolic":
        comm = _commutator(p.first, p.second)
        gap = abs(comm.trace - 2.0)
        if gap <= 0:
            return None
        return max(1, int(math.floor((p.first.trace - 2.0) / math.sqrt(gap)
                                     + FLOOR_SNAP)))
    if k1 == "parabolic" and k2 == "parabolic":
        return 1
    return None


def _commutator(a: Isometry, b: Isometry) -> Isometry:
    return a @ b @ a.inverse() @ b.inverse()


# -- the replacement step ----------------------------------------------------


def _order_normalize(first: Isometry, second: Isometry,
                     par_tol: float) -> Tuple[Isometry, Isometry]:
    """Restore trace ordering with the coherence-preserving swap
    (A, B) -> (B^-1, A^-1)."""
    if abs(second.trace) > abs(first.trace) + STOP_TOL:
        return second.inverse(), first.inverse()
    return first, second


def gm_step(p: GeneratorPair, par_tol: float = PAR_TOL) -> Tuple[GeneratorPair, int]:
    """One trace-minimizing replacement (A, B) -> (B^-1, A^-1 B^n)."""
    n = nee_exponent(p, par_tol)
    produced = p.first.inverse() @ p.second.power(n)
    if abs(produced.trace) < 2.0 - par_tol:
        raise EllipticProduced(produced, n)
    new_first, new_second = _order_normalize(p.second.inverse(), produced, par_tol)
    return _pair(new_first, new_second, par_tol), n


# -- the full run -------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    before: GeneratorPair
    exponent: int
    after: GeneratorPair
    floor_exponent: Optional[int]


@dataclass
class AlgorithmTrace:
    steps: List[Step] = field(default_factory=list)
    f_sequence: List[int] = field(default_factory=list)
    verdict: str = ""
    stopping: Optional[GeneratorPair] = None
    stop_order: Optional[str] = None
    elliptic: Optional[EllipticVerdict] = None
    initial: Optional[GeneratorPair] = None

    def stopping_traces(self) -> Optional[Tuple[float, float, float]]:
        if self.stopping is None:
            return None
        return self.stopping.trace_triple()

    def hyp_hyp_exponent_sum(self) -> int:
        total = 0
        for s in self.steps:
            if (s.before.kind_first.kind == HYPERBOLIC
                    and s.before.kind_second.kind == HYPERBOLIC
                    and s.before is not s.after):
                total += s.exponent
        return total


def run_algorithm(a: Isometry, b: Isometry, max_steps: int = 10000,
                  par_tol: float = PAR_TOL) -> AlgorithmTrace:
    """Run the replacement algorithm to a verdict.

    DiscreteFree comes with the stopping pair and its Remark-ordering;
    an elliptic discovery yields NotFree / NotDiscrete /
    EllipticUndetermined via classify_elliptic.  An initial
    parabolic-parabolic stopping pair contributes the single bookkeeping
    exponent 1 (recorded as a step that does not change the pair) so the
    F-sequence of the standard cusped example is [1].
    """
    pair = coherent_order(a, b, par_tol)
    trace = AlgorithmTrace(initial=pair)
    _check_phase = _PhaseMonitor()
    while True:
        stop = stopping_check(pair, par_tol)
        if stop is not None:
            if stop.kind == "elliptic":
                ev = classify_elliptic(stop.third, par_tol)
                trace.elliptic = ev
                trace.verdict = _verdict_for(ev)
                return trace
            if not trace.steps and pair.is_par_par(par_tol):
                trace.steps.append(Step(pair, 1, pair, floor_exponent=1))
                trace.f_sequence.append(1)
            trace.stopping = pair
            trace.stop_order = stop.stop_order
            trace.verdict = DISCRETE_FREE
            _assert_descent_budget(trace)
            return trace
        if len(trace.steps) >= max_steps:
            raise MaxStepsExceeded(trace)
        try:
            floor_n = nee_exponent_printed(pair, par_tol)
        except ZeroLength:
            floor_n = None
        try:
            new_pair, n = gm_step(pair, par_tol)
        except EllipticProduced as exc:
            ev = classify_elliptic(exc.element, par_tol)
            trace.elliptic = ev
            trace.verdict = _verdict_for(ev)
            trace.f_sequence.append(exc.exponent)
            trace.steps.append(Step(pair, exc.exponent, pair, floor_exponent=floor_n))
            return trace
        _check_phase.observe(pair, new_pair)
        trace.steps.append(Step(pair, n, new_pair, floor_exponent=floor_n))
        trace.f_sequence.append(n)
        pair = new_pair


class _PhaseMonitor:
    """Pair kinds should only move hyp-hyp -> hyp-par -> par-par."""

    _RANK = {("hyperbolic", "hyperbolic"): 0,
             ("hyperbolic", "parabolic"): 1,
             ("parabolic", "parabolic"): 2}

    def __init__(self):
        self.rank = 0
        self.monotone = True

    def observe(self, before: GeneratorPair, after: GeneratorPair):
        r = self._RANK.get((after.kind_first.kind, after.kind_second.kind))
        if r is None:
            return
        if r < self.rank:
            self.monotone = False
        self.rank = max(self.rank, r)


def _assert_descent_budget(trace: AlgorithmTrace):
    """Hyp-hyp replacements are budgeted by the initial trace gap:
    TRACE_DROP * (sum of hyp-hyp exponents) <= tr(A) - 2 + slack."""
    if trace.initial is None or not trace.steps:
        return
    k1, k2 = trace.initial.kind_first.kind, trace.initial.kind_second.kind
    if k1 != HYPERBOLIC or k2 != HYPERBOLIC:
        return
    budget = trace.initial.first.trace - 2.0
    spent = TRACE_DROP * trace.hyp_hyp_exponent_sum()
    if spent > budget + 1e-6 * max(1.0, abs(budget)):
        raise AlgorithmError(
            f"descent budget violated: {spent:.6g} > {budget:.6g}")
