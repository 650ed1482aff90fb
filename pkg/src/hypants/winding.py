"""Combinatorics of primitive conjugacy classes: continued fractions,
Stern-Brocot indexing, winding a group up from a stopping pair, and
essential self-intersection numbers.

A primitive class is indexed by a coprime rational p/q (1/0 and 0/1 are
the two stopping generators themselves).  Winding is the exact inverse
of the replacement step: (C, D) -> (C^-m D^-1, C^-1), applied once per
entry of the winding sequence, with the words in the stopping alphabet
carried along.  Unwinding a wound pair recovers the sequence reversed.

Intersection numbers follow the Stern-Brocot mediant rule
I(mediant(u, v)) = 1 + I(u) + I(v) with I(0/1) = I(1/0) = 0, which
reproduces all five printed base values; the closed recursion along
continued-fraction approximants I_{k+1} = n_{k+1} (1 + I_k) + I_{k-1}
is equivalent.  The printed recursion 1 + n_{k+1} I_k + I_{k-1}
contradicts the base value I(1/2) = 2 and is kept only as a comparison
variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .halfplane import PAR_TOL, Isometry
from .algorithm import (
    AlgorithmError,
    GeneratorPair,
    _pair,
    stopping_check,
)

Word = Tuple[Tuple[str, int], ...]

CONVENTION_SHORTEST = "shortest"
CONVENTION_ALGORITHMIC = "algorithmic"

THIRD_CLASS = "first^-1 second"   # distinguished non-rational stopping class


class NotCoprime(AlgorithmError):
    pass


class BothZero(AlgorithmError):
    pass


class NotStoppingPair(AlgorithmError):
    pass


# -- rational classes --------------------------------------------------------


@dataclass(frozen=True)
class RationalClass:
    """Coprime p/q with the continued-fraction digits of its <=1
    representative ([0; n_1, ..., n_t], the leading 0 implicit) and its
    Stern-Brocot path from the root 1/1 ('' for the root, 'L'/'R' turns).

    1/0 denotes the class of the first stopping generator, 0/1 the
    second.  `inverted` records that p > q, i.e. the digits describe q/p.
    """

    p: int
    q: int
    cf: Tuple[int, ...]
    sb_path: str
    inverted: bool
    convention: str = CONVENTION_SHORTEST

    def is_stopping_class(self) -> bool:
        return (self.p, self.q) in ((1, 0), (0, 1))

    def value(self) -> float:
        return math.inf if self.q == 0 else self.p / self.q

    def __str__(self):
        return f"{self.p}/{self.q}"


def _cf_digits(p: int, q: int) -> Tuple[int, ...]:
    """Euclid digits of p/q <= 1 as [n_1, ..., n_t] (n_0 = 0 implicit)."""
    if p == 0:
        return ()
    digits = []
    a, b = q, p            # expand q/p = [n_1; n_2, ...]
    while b:
        digits.append(a // b)
        a, b = b, a % b
    return tuple(digits)


def _sb_path(p: int, q: int) -> str:
    lo = (0, 1)
    hi = (1, 0)
    path = []
    while True:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        if m == (p, q):
            return "".join(path)
        if p * m[1] < m[0] * q:      # target below the mediant
            path.append("L")
            hi = m
        else:
            path.append("R")
            lo = m


def sb_decode(path: str) -> Tuple[int, int]:
    lo = (0, 1)
    hi = (1, 0)
    for turn in path:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        if turn == "L":
            hi = m
        else:
            lo = m
    return (lo[0] + hi[0], lo[1] + hi[1])


def cf_expand(p: int, q: int) -> RationalClass:
    """Rational class of p/q, digits by the Euclidean algorithm."""
    if p < 0 or q < 0:
        raise AlgorithmError("p and q must be non-negative")
    if p == 0 and q == 0:
        raise BothZero("0/0 is not a rational class")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"{p}/{q} is not in lowest terms")
    if q == 0:
        return RationalClass(1, 0, cf=(), sb_path="", inverted=True)
    if p == 0:
        return RationalClass(0, 1, cf=(), sb_path="", inverted=False)
    inverted = p > q
    lo, hi = (p, q) if not inverted else (q, p)
    digits = _cf_digits(lo, hi)
    return RationalClass(p, q, cf=digits, sb_path=_sb_path(p, q),
                         inverted=inverted)


def approximants(r: RationalClass) -> List[Tuple[int, int]]:
    """p_k/q_k along the digits, seeded p_-1/q_-1 = 1/0, p_0/q_0 = 0/1."""
    ps, qs = [1, 0], [0, 1]
    for n in r.cf:
        ps.append(n * ps[-1] + ps[-2])
        qs.append(n * qs[-1] + qs[-2])
    return list(zip(ps[2:], qs[2:]))


# -- intersection numbers ----------------------------------------------------


def intersections(r: RationalClass) -> int:
    """Essential self-intersections by the mediant rule (canonical)."""
    if r.is_stopping_class():
        return 0
    lo_i = 0   # I(0/1)
    hi_i = 0   # I(1/0)
    val = 1 + lo_i + hi_i    # root 1/1
    for turn in r.sb_path:
        if turn == "L":
            hi_i = val
        else:
            lo_i = val
        val = 1 + lo_i + hi_i
    return val


def intersections_closed(r: RationalClass) -> int:
    """Closed recursion along approximants: I_{k+1} = n_{k+1}(1+I_k) + I_{k-1}."""
    if r.is_stopping_class():
        return 0
    prev, cur = 0, 0     # I_-1 = I(1/0), I_0 = I(0/1)
    for n in r.cf:
        prev, cur = cur, n * (1 + cur) + prev
    return cur


def intersections_printed(r: RationalClass) -> int:
    """Printed variant I_{k+1} = 1 + n_{k+1} I_k + I_{k-1}.

    Contradicts the base value I(1/2) = 2; kept for comparison runs only.
    """
    if r.is_stopping_class():
        return 0
    prev, cur = 0, 0
    for n in r.cf:
        prev, cur = cur, 1 + n * cur + prev
    return cur


def third_class_intersections() -> int:
    """The distinguished stopping class first^-1 second is simple."""
    return 0


# -- enumeration -------------------------------------------------------------


def enumerate_primitives(max_q: int) -> List[RationalClass]:
    """1/0, 0/1, then the Stern-Brocot tree in breadth-first order,
    pruned to p <= max_q and q <= max_q."""
    if max_q < 1:
        raise AlgorithmError("max_q must be at least 1")
    out = [cf_expand(1, 0), cf_expand(0, 1)]
    level = [((0, 1), (1, 0))]
    while level:
        nxt = []
        for lo, hi in level:
            p, q = lo[0] + hi[0], lo[1] + hi[1]
            if p > max_q or q > max_q:
                continue
            out.append(cf_expand(p, q))
            nxt.append((lo, (p, q)))
            nxt.append(((p, q), hi))
        level = nxt
    return out


# -- words over the stopping alphabet ----------------------------------------


def word_inverse(w: Word) -> Word:
    return tuple((ltr, -e) for ltr, e in reversed(w))


def word_multiply(w1: Word, w2: Word) -> Word:
    out = list(w1)
    for ltr, e in w2:
        if out and out[-1][0] == ltr:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((ltr, merged))
        else:
            out.append((ltr, e))
    return tuple(out)


def word_power(w: Word, n: int) -> Word:
    if n == 0:
        return ()
    if n < 0:
        return word_power(word_inverse(w), -n)
    out: Word = ()
    for _ in range(n):
        out = word_multiply(out, w)
    return out


def word_abelianization(w: Word) -> Tuple[int, int]:
    a = sum(e for ltr, e in w if ltr == "A")
    b = sum(e for ltr, e in w if ltr == "B")
    return (a, b)


def word_evaluate(w: Word, first: Isometry, second: Isometry) -> Isometry:
    gens = {"A": first, "B": second}
    result = None
    for ltr, e in w:
        m = gens[ltr].power(e)
        result = m if result is None else result @ m
    if result is None:
        from .halfplane import identity
        return identity()
    return result


def word_str(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    for ltr, e in w:
        parts.append(ltr if e == 1 else f"{ltr}^{e}")
    return " ".join(parts)


# -- winding ------------------------------------------------------------------


@dataclass(frozen=True)
class WindingResult:
    pair: GeneratorPair
    word_first: Word
    word_second: Word
    sequence: Tuple[int, ...]


def _require_stopping(stop: GeneratorPair, par_tol: float):
    info = stopping_check(stop, par_tol)
    if info is None or info.kind != "discrete":
        raise NotStoppingPair("winding requires a stopping pair")


def _wind_words(first: Isometry, second: Isometry, w_first: Word, w_second: Word,
                seq: Sequence[int], par_tol: float) -> WindingResult:
    c, d = first, second
    wc, wd = w_first, w_second
    for m in seq:
        if m < 1:
            raise AlgorithmError("winding entries must be positive integers")
        new_c = c.power(-m) @ d.inverse()
        new_wc = word_multiply(word_power(wc, -m), word_inverse(wd))
        c, d, wc, wd = new_c, c.inverse(), new_wc, word_inverse(wc)
    return WindingResult(pair=_pair(c, d, par_tol), word_first=wc,
                         word_second=wd, sequence=tuple(seq))


def wind(stop: GeneratorPair, seq: Sequence[int],
         par_tol: float = PAR_TOL) -> WindingResult:
    """Run the replacement algorithm backwards from a stopping pair.

    Each entry m inverts one forward step, so feeding the result to
    run_algorithm recovers exactly reversed(seq) as the F-sequence.
    """
    _require_stopping(stop, par_tol)
    if not seq:
        raise AlgorithmError("winding sequence must be non-empty")
    return _wind_words(stop.first, stop.second, (("A", 1),), (("B", 1),),
                       seq, par_tol)


def primitive_pair(stop: GeneratorPair, r: RationalClass,
                   par_tol: float = PAR_TOL) -> WindingResult:
    """Wound primitive pair whose first element represents the class p/q.

    The abelianization of the first word is +-(p, q) in the stopping
    basis: classes with p <= q wind from the swapped basis (second,
    first), classes with p > q from (first, second); the winding digits
    are the continued-fraction digits of the <=1 representative.
    """
    _require_stopping(stop, par_tol)
    if r.is_stopping_class():
        if (r.p, r.q) == (1, 0):
            return WindingResult(stop, (("A", 1),), (("B", 1),), ())
        return WindingResult(_pair(stop.second, stop.first, par_tol),
                             (("B", 1),), (("A", 1),), ())
    if r.p <= r.q:
        return _wind_words(stop.second, stop.first, (("B", 1),), (("A", 1),),
                           r.cf, par_tol)
    return _wind_words(stop.first, stop.second, (("A", 1),), (("B", 1),),
                       r.cf, par_tol)


def primitive_word(stop: GeneratorPair, r: RationalClass,
                   par_tol: float = PAR_TOL) -> Tuple[Isometry, Word]:
    """Primitive element (and its word in the stopping generators) whose
    winding sequence is the digit list of r."""
    wr = primitive_pair(stop, r, par_tol)
    return wr.pair.first, wr.word_first
