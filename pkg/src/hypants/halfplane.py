"""Floating-point geometry of the upper half-plane.

Isometries are kept as real 2x2 matrices of determinant one acting by
fractional linear transformations.  Geodesics are stored by their ideal
endpoints (a real number, or ``math.inf`` for the single point at
infinity).  Half-turns about geodesics are encoded as real matrices of
determinant -1 and trace 0; the product of two such matrices is the
determinant-one isometry obtained by composing the corresponding
half-turns, which is what makes generators factor through the standard
right-angled hexagon.

All values are immutable after construction and every function is pure,
so everything here is safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

LD = np.longdouble
INF = math.inf

DET_TOL = 1e-12
DET_RENORM = 1e-15
_DET_CHECK_SCALE = 1e6
PAR_TOL = 1e-8          # |trace| - 2 band for parabolic classification
ORTHO_TOL = 1e-9
IDENTITY_TOL = 1e-12

HYPERBOLIC = "hyperbolic"
PARABOLIC = "parabolic"
ELLIPTIC = "elliptic"
IDENTITY = "identity"


class GeometryError(ValueError):
    pass


class EllipticInput(GeometryError):
    pass


class NonHyperbolicInput(GeometryError):
    pass


class CrossingAxes(GeometryError):
    pass


class SharedEndpoint(GeometryError):
    pass


class DegenerateGeodesic(GeometryError):
    pass


class NotOrthogonal(GeometryError):
    pass


class NonPositiveSide(GeometryError):
    pass


def _as_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=LD)
    if a.shape != (2, 2):
        raise GeometryError(f"expected a 2x2 matrix, got shape {a.shape}")
    return a


class Isometry:
    """A determinant-one real matrix acting on the upper half-plane.

    The determinant is renormalized on construction when it has drifted
    by more than ~1e-15; a determinant off by more than 1e-12 from one
    (or a non-positive determinant) is rejected.  The sign of the matrix
    is preserved: products of sign-normalized generators carry whatever
    sign the product yields, so traces of words are well defined.
    """

    __slots__ = ("m",)

    def __init__(self, m):
        a = _as_matrix(m)
        if not np.all(np.isfinite(a)):
            raise GeometryError("matrix entries overflow")
        scale = np.max(np.abs(a))
        # ad - bc cancels catastrophically against the factor magnitudes
        # of long products, so unit determinant is only verifiable (and
        # renormalizable) at moderate scale; beyond it the algebra of
        # determinant-one factors is trusted as it stands.
        if scale < _DET_CHECK_SCALE:
            det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
            drift = abs(det - 1.0)
            if drift > DET_RENORM:
                if det <= 0 or drift > DET_TOL * max(1.0, float(scale * scale)):
                    raise GeometryError(f"determinant {float(det)} too far from 1")
                a = a / np.sqrt(det)
        a.setflags(write=False)
        self.m = a

    # -- basic algebra -------------------------------------------------

    @property
    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    def trace_ld(self) -> LD:
        return self.m[0, 0] + self.m[1, 1]

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.m @ other.m)

    def inverse(self) -> "Isometry":
        a, b, c, d = self.m.ravel()
        return Isometry([[d, -b], [-c, a]])

    def power(self, n: int) -> "Isometry":
        if n < 0:
            return self.inverse().power(-n)
        result = np.eye(2, dtype=LD)
        base = self.m
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return Isometry(result)

    def sign_normalized(self) -> "Isometry":
        """Representative with trace >= 0 (trace-zero: positive c, then a)."""
        t = self.trace_ld()
        if t < 0:
            return Isometry(-self.m)
        if t == 0:
            c = self.m[1, 0]
            if c < 0 or (c == 0 and self.m[0, 0] < 0):
                return Isometry(-self.m)
        return self

    def apply(self, x: float) -> float:
        """Action on a boundary point (``math.inf`` allowed)."""
        a, b, c, d = (float(v) for v in self.m.ravel())
        if math.isinf(x):
            return a / c if c != 0 else INF
        den = c * x + d
        if den == 0:
            return INF
        return (a * x + b) / den

    def apply_point(self, z: complex) -> complex:
        a, b, c, d = (complex(v) for v in self.m.ravel())
        return (a * z + b) / (c * z + d)

    def approx_equal(self, other: "Isometry", tol: float = 1e-9,
                     up_to_sign: bool = True) -> bool:
        m1, m2 = self.m, other.m
        scale = max(1.0, float(np.max(np.abs(m1))), float(np.max(np.abs(m2))))
        if np.max(np.abs(m1 - m2)) <= tol * scale:
            return True
        if up_to_sign and np.max(np.abs(m1 + m2)) <= tol * scale:
            return True
        return False

    def __repr__(self):
        a, b, c, d = (float(v) for v in self.m.ravel())
        return f"Isometry([[{a:.6g}, {b:.6g}], [{c:.6g}, {d:.6g}]])"


def identity() -> Isometry:
    return Isometry(np.eye(2, dtype=LD))


def compose(f: Isometry, g: Isometry) -> Isometry:
    """Matrix product f @ g; no sign normalization is applied."""
    return f @ g


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class IsometryClass:
    kind: str
    translation_length: float = 0.0      # hyperbolic
    fixed_point: Optional[float] = None  # parabolic
    angle: float = 0.0                   # elliptic, in (0, pi]
    direction: int = 0                   # rotation sense: +1 ccw boundary, -1 cw


def _is_identity(m: np.ndarray) -> bool:
    eye = np.eye(2, dtype=LD)
    return bool(np.max(np.abs(m - eye)) <= IDENTITY_TOL
                or np.max(np.abs(m + eye)) <= IDENTITY_TOL)


def parabolic_direction(iso: Isometry) -> int:
    """Rotation sense of a parabolic about its fixed point.

    +1 means boundary points move in the positive (counterclockwise)
    direction of the circle at infinity, -1 the opposite.
    """
    m = iso.sign_normalized().m
    c = float(m[1, 0])
    if c != 0:
        return -1 if c > 0 else 1
    return 1 if float(m[0, 1]) > 0 else -1


def _acosh(x) -> float:
    # longdouble arccosh keeps huge traces finite: acosh(1e4000) ~ 9212
    return float(np.arccosh(LD(x)))


def classify(iso: Isometry, par_tol: float = PAR_TOL) -> IsometryClass:
    if _is_identity(iso.m):
        return IsometryClass(kind=IDENTITY)
    t = abs(iso.trace_ld())
    if t > 2.0 + par_tol:
        return IsometryClass(kind=HYPERBOLIC,
                             translation_length=2.0 * _acosh(t / 2.0))
    if t >= 2.0 - par_tol:
        return IsometryClass(kind=PARABOLIC,
                             fixed_point=_parabolic_fixed_point(iso),
                             direction=parabolic_direction(iso))
    angle = 2.0 * math.acos(float(t) / 2.0)
    m = iso.sign_normalized().m
    direction = -1 if float(m[1, 0]) > 0 else 1
    return IsometryClass(kind=ELLIPTIC, angle=angle, direction=direction)


def _parabolic_fixed_point(iso: Isometry) -> float:
    a, b, c, d = (float(v) for v in iso.m.ravel())
    if c == 0:
        return INF
    # double root of c x^2 + (d - a) x - b
    return (a - d) / (2.0 * c)


def translation_length(iso: Isometry, par_tol: float = PAR_TOL) -> float:
    """2*arccosh(|trace|/2); exactly 0 for parabolics."""
    k = classify(iso, par_tol)
    if k.kind == ELLIPTIC:
        raise EllipticInput("translation length undefined for elliptic")
    if k.kind in (PARABOLIC, IDENTITY):
        return 0.0
    return k.translation_length


def multiplier(iso: Isometry, par_tol: float = PAR_TOL) -> float:
    """K > 1 with sqrt(K) + 1/sqrt(K) = |trace|, i.e. T = log K."""
    k = classify(iso, par_tol)
    if k.kind != HYPERBOLIC:
        raise NonHyperbolicInput(f"multiplier needs a hyperbolic input, got {k.kind}")
    return math.exp(k.translation_length)


# -- geodesics ---------------------------------------------------------


def _same_boundary_point(x: float, y: float, tol: float = 1e-12) -> bool:
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic with ideal endpoints (e1 -> e2).

    A degenerate geodesic carries a single boundary point (a parabolic
    fixed point) in both slots and is flagged; it stands in for the
    "axis" of a parabolic so hexagon code stays uniform in cusped cases.
    """

    e1: float
    e2: float
    degenerate: bool = False

    def __post_init__(self):
        if self.degenerate:
            return
        if _same_boundary_point(self.e1, self.e2):
            raise GeometryError("geodesic endpoints must be distinct")

    @property
    def vertical(self) -> bool:
        return math.isinf(self.e1) or math.isinf(self.e2)

    @property
    def center(self) -> float:
        if self.vertical:
            return self.e1 if math.isfinite(self.e1) else self.e2
        return 0.5 * (self.e1 + self.e2)

    @property
    def radius(self) -> float:
        if self.vertical:
            return INF
        return 0.5 * abs(self.e2 - self.e1)

    def reversed(self) -> "Geodesic":
        return Geodesic(self.e2, self.e1, self.degenerate)

    def endpoints_set(self):
        return (self.e1, self.e2)

    def contains_endpoint(self, x: float) -> bool:
        return _same_boundary_point(self.e1, x) or _same_boundary_point(self.e2, x)


def degenerate_geodesic(p: float) -> Geodesic:
    return Geodesic(p, p, degenerate=True)


def point_geodesic(g: Geodesic) -> float:
    if not g.degenerate:
        raise GeometryError("not a degenerate geodesic")
    return g.e1


def axis(iso: Isometry, par_tol: float = PAR_TOL) -> Geodesic:
    """Axis of a hyperbolic, ordered (repelling, attracting).

    A parabolic yields the degenerate geodesic at its fixed point.
    """
    k = classify(iso, par_tol)
    if k.kind == ELLIPTIC:
        raise EllipticInput("an elliptic has no axis")
    if k.kind == IDENTITY:
        raise GeometryError("the identity has no axis")
    if k.kind == PARABOLIC:
        return degenerate_geodesic(k.fixed_point)
    a, b, c, d = iso.m.ravel()
    if c == 0.0:
        other = float(b / (d - a))
        # eigenvalue of the eigenvector (1, 0) (fixed point infinity) is a
        if abs(a) > abs(d):
            return Geodesic(other, INF)
        return Geodesic(INF, other)
    disc = (a + d) ** 2 - 4.0
    sq = np.sqrt(disc)
    x1 = float(((a - d) + sq) / (2.0 * c))
    x2 = float(((a - d) - sq) / (2.0 * c))
    # the attracting fixed point has eigenvalue |c x + d| > 1
    if abs(c * LD(x1) + d) > abs(c * LD(x2) + d):
        return Geodesic(x2, x1)
    return Geodesic(x1, x2)


# -- boundary circle order ---------------------------------------------


def cyclically_ordered(p: float, q: float, r: float) -> bool:
    """True when q lies strictly between p and r in the positive
    (counterclockwise) orientation of the boundary circle R + inf."""
    if math.isinf(p):
        return q < r
    if math.isinf(q):
        return r < p
    if math.isinf(r):
        return p < q
    return (p < q < r) or (q < r < p) or (r < p < q)


def left_of(g: Geodesic, w: float) -> bool:
    """True when the boundary point w lies to the left of the oriented
    geodesic g (traveling from e1 to e2)."""
    return cyclically_ordered(g.e2, w, g.e1)


def geodesics_cross(g1: Geodesic, g2: Geodesic) -> bool:
    """Transversal crossing in the open half-plane (endpoints interleave)."""
    if g1.degenerate or g2.degenerate:
        return False
    a = left_of(g1, g2.e1)
    b = left_of(g1, g2.e2)
    return a != b


# -- points, distance, intersections -----------------------------------


def point_distance(z: complex, w: complex) -> float:
    dz = abs(z - w)
    return math.acosh(1.0 + dz * dz / (2.0 * z.imag * w.imag))


def geodesic_intersection(g1: Geodesic, g2: Geodesic) -> complex:
    """Intersection point of two crossing geodesics."""
    if g1.degenerate or g2.degenerate:
        raise DegenerateGeodesic("cannot intersect a degenerate geodesic")
    if g1.vertical and g2.vertical:
        raise GeometryError("parallel vertical geodesics do not meet")
    if g1.vertical or g2.vertical:
        v, s = (g1, g2) if g1.vertical else (g2, g1)
        x = v.center
        y2 = s.radius ** 2 - (x - s.center) ** 2
        if y2 <= 0:
            raise GeometryError("geodesics do not intersect")
        return complex(x, math.sqrt(y2))
    c1, r1, c2, r2 = g1.center, g1.radius, g2.center, g2.radius
    if c1 == c2:
        raise GeometryError("concentric geodesics do not meet")
    x = (c1 * c1 - r1 * r1 - c2 * c2 + r2 * r2) / (2.0 * (c1 - c2))
    y2 = r1 * r1 - (x - c1) ** 2
    if y2 <= 0:
        raise GeometryError("geodesics do not intersect")
    return complex(x, math.sqrt(y2))


def point_on(g: Geodesic, z: complex, tol: float = 1e-9) -> bool:
    if g.degenerate:
        return False
    if g.vertical:
        return abs(z.real - g.center) <= tol * max(1.0, abs(z))
    return abs(abs(z - g.center) - g.radius) <= tol * max(1.0, g.radius)


# -- half-turns ---------------------------------------------------------


def half_turn(g: Geodesic) -> np.ndarray:
    """Half-turn about a geodesic, as a real matrix of determinant -1.

    The matrix H encodes the involution z -> H(conj(z)); two of them
    multiply to the determinant-one isometry composing the half-turns
    (rightmost factor applied first).  H @ H is exactly the identity and
    the trace is 0.  The sign is fixed so the lower-left entry (or,
    for a vertical geodesic, the upper-left) is positive.
    """
    if g.degenerate:
        raise DegenerateGeodesic("no half-turn about a degenerate geodesic")
    if g.vertical:
        c = LD(g.center)
        return np.array([[-1.0, 2.0 * c], [0.0, 1.0]], dtype=LD)
    u, v = LD(g.e1), LD(g.e2)
    s = v - u
    m = np.array([[u + v, -2.0 * u * v], [LD(2.0), -(u + v)]], dtype=LD) / s
    if m[1, 0] < 0:
        m = -m
    return m


def halfturn_geodesic(m: np.ndarray) -> Geodesic:
    """Geodesic fixed by a determinant -1, trace 0 half-turn matrix."""
    a = LD(m[0, 0])
    b = LD(m[0, 1])
    c = LD(m[1, 0])
    d = LD(m[1, 1])
    if abs(a + d) > ORTHO_TOL * max(1.0, float(abs(a)), float(abs(d))):
        raise GeometryError("matrix is not an involution (trace != 0)")
    if c == 0:
        # z -> -conj z + 2k : vertical line
        return Geodesic(float(-b / (2.0 * a)), INF)
    x1 = float((a - 1.0) / c)
    x2 = float((a + 1.0) / c)
    return Geodesic(x1, x2)


def compose_half_turns(h1: np.ndarray, h2: np.ndarray) -> Isometry:
    """Isometry obtained by applying the half-turn h2, then h1."""
    return Isometry(np.asarray(h1, dtype=LD) @ np.asarray(h2, dtype=LD))


def reflect_point(g: Geodesic, x: float) -> float:
    """Image of a boundary point under the half-turn about g."""
    h = half_turn(g)
    a, b, c, d = (float(v) for v in h.ravel())
    if math.isinf(x):
        return a / c if c != 0 else INF
    den = c * x + d
    if den == 0:
        return INF
    return (a * x + b) / den


# -- common perpendicular ----------------------------------------------


def common_perpendicular(g1: Geodesic, g2: Geodesic):
    """Unique geodesic orthogonal to both, plus the distance between the
    feet, oriented so it crosses g1 first.

    Degenerate inputs (parabolic fixed points) are allowed; the distance
    is then reported as 0 and the perpendicular passes through the point.
    """
    if g1.degenerate and g2.degenerate:
        p, q = point_geodesic(g1), point_geodesic(g2)
        if _same_boundary_point(p, q):
            raise SharedEndpoint("parabolic fixed points coincide")
        return Geodesic(p, q), 0.0
    if g1.degenerate or g2.degenerate:
        if g1.degenerate:
            p, g = point_geodesic(g1), g2
            if g.contains_endpoint(p):
                raise SharedEndpoint("point lies on the geodesic's boundary")
            return Geodesic(p, reflect_point(g, p)), 0.0
        p, g = point_geodesic(g2), g1
        if g.contains_endpoint(p):
            raise SharedEndpoint("point lies on the geodesic's boundary")
        return Geodesic(reflect_point(g, p), p), 0.0
    if (g1.contains_endpoint(g2.e1) or g1.contains_endpoint(g2.e2)):
        raise SharedEndpoint("geodesics are asymptotic")
    if geodesics_cross(g1, g2):
        raise CrossingAxes("geodesics intersect; no common perpendicular")
    perp = _orthogonal_circle(g1, g2)
    # distance between the feet from the half-turn product: |tr| = 2 cosh d
    prod = np.asarray(half_turn(g2), dtype=LD) @ np.asarray(half_turn(g1), dtype=LD)
    t = abs(prod[0, 0] + prod[1, 1])
    dist = _acosh(max(t / 2.0, LD(1.0)))
    # orient from the g1 foot towards the g2 foot (x increases monotonically
    # along a semicircle, y along a vertical line)
    f1 = geodesic_intersection(perp, g1)
    f2 = geodesic_intersection(perp, g2)
    if perp.vertical:
        forward = f1.imag < f2.imag
    else:
        forward = f1.real < f2.real
    if not forward:
        perp = perp.reversed()
    return perp, dist


def _orthogonal_circle(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """Geodesic orthogonal to two disjoint geodesics, by circle algebra.

    A circle of center c, radius r on the real axis is orthogonal to the
    circle (ci, ri) iff (c - ci)^2 = r^2 + ri^2, and orthogonal to a
    vertical line iff centered on it.
    """
    if g1.vertical and g2.vertical:
        raise SharedEndpoint("vertical geodesics share the point at infinity")
    if g1.vertical or g2.vertical:
        v, s = (g1, g2) if g1.vertical else (g2, g1)
        c = v.center
        r2 = (c - s.center) ** 2 - s.radius ** 2
        if r2 <= 0:
            raise CrossingAxes("geodesics intersect; no common perpendicular")
        r = math.sqrt(r2)
        return Geodesic(c - r, c + r)
    c1, r1 = g1.center, g1.radius
    c2, r2_ = g2.center, g2.radius
    if c1 == c2:
        return Geodesic(c1, INF)   # concentric: the vertical through the center
    c = (c1 * c1 - c2 * c2 - r1 * r1 + r2_ * r2_) / (2.0 * (c1 - c2))
    rsq = (c - c1) ** 2 - r1 * r1
    if rsq <= 0:
        raise CrossingAxes("geodesics intersect; no common perpendicular")
    r = math.sqrt(rsq)
    return Geodesic(c - r, c + r)


def axes_half_distance_trace(g1: Geodesic, g2: Geodesic) -> float:
    """Distance between two disjoint geodesics from the half-turn product
    trace alone (robust when the geodesics are extremely close)."""
    if g1.degenerate or g2.degenerate:
        return 0.0
    prod = np.asarray(half_turn(g2), dtype=LD) @ np.asarray(half_turn(g1), dtype=LD)
    t = abs(prod[0, 0] + prod[1, 1])
    return _acosh(max(t / 2.0, LD(1.0)))


def foot(perp: Geodesic, g: Geodesic) -> complex:
    """Intersection point of a perpendicular with the geodesic it meets."""
    return geodesic_intersection(perp, g)


# -- factoring generators through half-turn lines -----------------------


def factor_generator(a: Isometry, line: Geodesic) -> Geodesic:
    """Geodesic L_A with  a = (half-turn about line) o (half-turn about L_A),
    i.e. half_turn(line) @ half_turn(L_A) == +-a as matrices.

    Requires line orthogonal to the axis of a (through the fixed point
    when a is parabolic); L_A is then orthogonal to the axis at distance
    T_a/2 from the foot of line.
    """
    k = classify(a)
    if k.kind == ELLIPTIC:
        raise EllipticInput("cannot factor an elliptic through half-turns")
    h = np.asarray(half_turn(line), dtype=LD)
    cand = h @ a.m
    tr = float(cand[0, 0] + cand[1, 1])
    scale = max(1.0, float(np.max(np.abs(cand))))
    if abs(tr) > 1e-9 * scale:
        raise NotOrthogonal("line is not orthogonal to the axis of the generator")
    # remove the trace drift so the result is an exact involution
    cand = cand - (LD(tr) / 2.0) * np.eye(2, dtype=LD)
    det = cand[0, 0] * cand[1, 1] - cand[0, 1] * cand[1, 0]
    cand = cand / np.sqrt(-det)
    return halfturn_geodesic(cand)


# -- hexagons ------------------------------------------------------------


@dataclass(frozen=True)
class Hexagon:
    """Right-angled hexagon of a coherently oriented pair.

    Sides in cyclic order: Ax_a, L_a, Ax_(a^-1 b), L_b, Ax_b, L.  Axis
    sides of parabolic generators degenerate to points (length 0) and
    the adjacent seam sides become infinite.
    """

    sides: tuple
    side_lengths: tuple
    corners: tuple
    convex: bool

    AXIS_SLOTS = (0, 2, 4)
    SEAM_SLOTS = (1, 3, 5)


def _segment_params(g: Geodesic, z: complex, w: complex):
    """Parametrize points of g by a monotone real coordinate."""
    if g.vertical:
        return (z.imag, w.imag)
    return (z.real, w.real)


def _segments_cross(g1: Geodesic, z1: complex, w1: complex,
                    g2: Geodesic, z2: complex, w2: complex) -> bool:
    if g1.degenerate or g2.degenerate:
        return False
    if not geodesics_cross(g1, g2):
        return False
    try:
        p = geodesic_intersection(g1, g2)
    except GeometryError:
        return False
    for g, z, w in ((g1, z1, w1), (g2, z2, w2)):
        a, b = _segment_params(g, z, w)
        t, _ = _segment_params(g, p, p)
        lo, hi = min(a, b), max(a, b)
        margin = 1e-12 * max(1.0, abs(lo), abs(hi))
        if not (lo + margin < t < hi - margin):
            return False
    return True


def hexagon_from_pair(a: Isometry, b: Isometry, par_tol: float = PAR_TOL) -> Hexagon:
    """Build the standard right-angled hexagon of a coherent pair (a, b)."""
    ax_a = axis(a, par_tol)
    ax_b = axis(b, par_tol)
    line, _ = common_perpendicular(ax_a, ax_b)
    l_a = factor_generator(a, line)
    l_b = factor_generator(b, line)
    third = a.inverse() @ b
    k3 = classify(third, par_tol)
    if k3.kind == ELLIPTIC:
        raise EllipticInput("a^-1 b is elliptic; the pair has no hexagon")
    ax_3 = axis(third, par_tol)

    sides = (ax_a, l_a, ax_3, l_b, ax_b, line)

    # corner between consecutive sides (None at an ideal/cusp corner)
    corners = []
    for i in range(6):
        g, h = sides[i], sides[(i + 1) % 6]
        if g.degenerate or h.degenerate:
            corners.append(None)
            continue
        corners.append(geodesic_intersection(g, h))
    corners = tuple(corners)

    lengths = []
    for i in range(6):
        g = sides[i]
        z = corners[i - 1]   # corner with the previous side
        w = corners[i]       # corner with the next side
        if g.degenerate:
            lengths.append(0.0)
        elif z is None or w is None:
            lengths.append(INF)
        else:
            lengths.append(point_distance(z, w))
    lengths = tuple(lengths)

    convex = True
    for i in range(6):
        for j in range(i + 2, 6):
            if i == 0 and j == 5:
                continue  # adjacent around the cycle
            gi, gj = sides[i], sides[j]
            zi, wi = corners[i - 1], corners[i]
            zj, wj = corners[j - 1], corners[j]
            if None in (zi, wi, zj, wj):
                if geodesics_cross(gi, gj):
                    convex = False
                continue
            if _segments_cross(gi, zi, wi, gj, zj, wj):
                convex = False
    return Hexagon(sides=sides, side_lengths=lengths, corners=corners, convex=convex)


# -- Fenchel's hexagon relation ------------------------------------------


def fenchel_opposite(x: float, y: float, z: float) -> float:
    """Interior side opposite the alternating side of length x in a convex
    right-angled hexagon with alternating sides x, y, z.

    cosh L = (cosh x + cosh y cosh z) / (sinh y sinh z).  The denominator
    corrects the printed "sinh y sinh x", which fails against measured
    hexagons; see fenchel_opposite_printed for the uncorrected variant.
    """
    if x <= 0 or y <= 0 or z <= 0:
        raise NonPositiveSide("hexagon sides must be positive")
    val = (math.cosh(x) + math.cosh(y) * math.cosh(z)) / (math.sinh(y) * math.sinh(z))
    return math.acosh(val)


def fenchel_opposite_printed(x: float, y: float, z: float) -> float:
    """Uncorrected variant with the denominator as printed (sinh y sinh x).

    Kept only for comparison runs; it agrees with fenchel_opposite exactly
    when x == z and deviates otherwise.
    """
    if x <= 0 or y <= 0 or z <= 0:
        raise NonPositiveSide("hexagon sides must be positive")
    val = (math.cosh(x) + math.cosh(y) * math.cosh(z)) / (math.sinh(y) * math.sinh(x))
    if val < 1.0:
        return float("nan")
    return math.acosh(val)
