"""Quadrilateral model, boundary distances and the equidistance curve.

A non-convex quadrilateral is normalized so that the reflex vertex ``O`` is
the origin, ``A = (1, 0)``, the polygon ``O, A, B, C`` is counter-clockwise
and the interior wedge at ``O`` spans polar angles ``(0, beta)``.

The equidistance curve Gamma separates points nearer to ``OA u OC`` from
points nearer to ``AB u BC``.  Along a ray of polar angle ``theta`` the
distance to the near pair is ``r m(theta)`` with

    m = sin(theta)          on [0, pi/2]             (foot on OA)
    m = 1                   on [pi/2, beta - pi/2]   (nearest point O)
    m = sin(beta - theta)   on [beta - pi/2, beta]   (foot on OC)

and the distance to a far line ``L`` is ``r n_L.u + p_L``, so Gamma is the
polar graph ``1/r = max_L (m - n_L.u) / p_L``.  The two far lines trade
places at the polar angle of ``S``, the point of Gamma on the bisector at
``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    ClassificationAmbiguous,
    DegenerateInput,
    DegenerateNormal,
    HardyDomainError,
    MultipleReflex,
)

__all__ = [
    "Quadrilateral",
    "GammaSegment",
    "GammaCurve",
    "AuxFrame",
    "normalize",
    "distance_minus",
    "distance_plus",
    "distance_to_boundary",
    "point_in_polygon",
    "build_gamma",
    "classify",
    "parabola_normal",
    "theta1_of_theta",
    "random_quadrilateral",
    "sample_quadrilaterals",
    "symmetric_dart",
    "write_svg",
]

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi
TIE_TOL = 1e-9
GAMMA_TOL = 1e-9
_SWITCH_SAMPLES = 4001
_CHECK_SAMPLES = 64

Point = tuple[float, float]


# --------------------------------------------------------------------------
# small vector helpers

def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _interior_angle(prev, v, nxt) -> float:
    """Interior angle at ``v`` of a counter-clockwise polygon."""
    a = np.subtract(nxt, v)
    b = np.subtract(prev, v)
    return math.atan2(_cross(a, b), float(np.dot(a, b))) % TWO_PI


def _segments_cross(p1, p2, p3, p4) -> bool:
    d1 = _cross(np.subtract(p2, p1), np.subtract(p3, p1))
    d2 = _cross(np.subtract(p2, p1), np.subtract(p4, p1))
    d3 = _cross(np.subtract(p4, p3), np.subtract(p1, p3))
    d4 = _cross(np.subtract(p4, p3), np.subtract(p2, p3))
    return d1 * d2 <= 0.0 and d3 * d4 <= 0.0


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / math.hypot(v[0], v[1])


# --------------------------------------------------------------------------
# quadrilateral

@dataclass(frozen=True)
class Quadrilateral:
    """Normalized quadrilateral ``O, A, B, C`` (counter-clockwise).

    For a non-convex input ``O`` is the reflex vertex.  For a convex input
    ``O`` is the vertex with the largest angle and ``is_convex`` is set.
    """

    O: Point
    A: Point
    B: Point
    C: Point
    beta: float
    gamma: float
    delta: float
    zeta: float
    mirrored: bool = False
    is_convex: bool = False

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.O, self.A, self.B, self.C], dtype=float)

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.beta, self.gamma, self.delta, self.zeta)

    @property
    def b_type(self) -> bool:
        """True when the angle at A is obtuse (beyond the tie tolerance)."""
        return self.gamma > HALF_PI + TIE_TOL

    @property
    def T(self) -> float:
        """``-x`` coordinate where the line BC meets the x-axis."""
        b, c = np.asarray(self.B), np.asarray(self.C)
        if abs(c[1] - b[1]) < 1e-300:
            return math.inf
        t = b[1] / (b[1] - c[1])
        return -(b[0] + t * (c[0] - b[0]))


def _check_points(raw) -> np.ndarray:
    pts = np.asarray(raw, dtype=float)
    if pts.shape != (4, 2):
        raise DegenerateInput(f"expected four 2D points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("vertex coordinates must be finite")
    scale = float(np.max(np.abs(pts - pts.mean(axis=0))))
    if scale == 0.0:
        raise DegenerateInput("all vertices coincide")
    for i in range(4):
        for j in range(i + 1, 4):
            if math.dist(pts[i], pts[j]) <= 1e-12 * scale:
                raise DegenerateInput(f"vertices {i} and {j} coincide")
    if _segments_cross(pts[0], pts[1], pts[2], pts[3]) or \
            _segments_cross(pts[1], pts[2], pts[3], pts[0]):
        raise DegenerateInput("edges intersect: polygon is not simple")
    area = 0.5 * sum(_cross(pts[i], pts[(i + 1) % 4]) for i in range(4))
    if area < 0.0:
        pts = pts[::-1].copy()
    for i in range(4):
        e1 = pts[i] - pts[i - 1]
        e2 = pts[(i + 1) % 4] - pts[i]
        if abs(_cross(e1, e2)) <= 1e-12 * np.linalg.norm(e1) * np.linalg.norm(e2):
            raise DegenerateInput(f"collinear triple at vertex {i}")
    return pts


def _normalize_core(raw) -> Quadrilateral:
    pts = _check_points(raw)
    cross = [_cross(pts[i] - pts[i - 1], pts[(i + 1) % 4] - pts[i]) for i in range(4)]
    reflex = [i for i in range(4) if cross[i] < 0.0]
    if len(reflex) > 1:
        raise MultipleReflex(f"{len(reflex)} reflex vertices")
    if reflex:
        o = reflex[0]
    else:
        ang = [_interior_angle(pts[i - 1], pts[i], pts[(i + 1) % 4]) for i in range(4)]
        top = max(ang)
        o = next(i for i in range(4) if ang[i] >= top - TIE_TOL)
    order = [(o + k) % 4 for k in range(4)]
    p = pts[order] - pts[o]
    phi = math.atan2(p[1, 1], p[1, 0])
    scale = math.hypot(p[1, 0], p[1, 1])
    cs, sn = math.cos(phi), math.sin(phi)
    rot = np.array([[cs, sn], [-sn, cs]])
    q = (p @ rot.T) / scale
    q[0] = (0.0, 0.0)
    q[1] = (1.0, 0.0)
    ang = [_interior_angle(q[i - 1], q[i], q[(i + 1) % 4]) for i in range(4)]
    verts = [tuple(map(float, v)) for v in q]
    return Quadrilateral(*verts, beta=ang[0], gamma=ang[1], delta=ang[2], zeta=ang[3],
                         mirrored=False, is_convex=not reflex)


def normalize(raw_vertices) -> Quadrilateral:
    """Normalize four boundary-ordered points, mirroring to the type convention.

    A-type (angles at A and C at most pi/2): the point S must satisfy
    ``theta_S <= beta/2``.  B-type: the obtuse angle must sit at ``A``.
    """
    q = _normalize_core(raw_vertices)
    if q.is_convex:
        return q
    if q.b_type:
        mirror = False
    elif q.zeta > HALF_PI + TIE_TOL:
        mirror = True
    else:
        theta_s = _switch_angle(q)
        mirror = theta_s > 0.5 * q.beta + 1e-12
    if not mirror:
        return q
    pts = np.asarray(raw_vertices, dtype=float) * np.array([1.0, -1.0])
    m = _normalize_core(pts)
    return Quadrilateral(m.O, m.A, m.B, m.C, m.beta, m.gamma, m.delta, m.zeta,
                         mirrored=True, is_convex=False)


# --------------------------------------------------------------------------
# distances

def _segment_distance(p: np.ndarray, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    ab = np.asarray(b, dtype=float) - a
    t = np.clip(((p - a) @ ab) / float(ab @ ab), 0.0, 1.0)
    foot = a + t[..., None] * ab
    return np.hypot(p[..., 0] - foot[..., 0], p[..., 1] - foot[..., 1])


def _dist_pair(p, q, pairs):
    pts = np.asarray(p, dtype=float)
    scalar = pts.ndim == 1
    pts = np.atleast_2d(pts)
    out = np.minimum(_segment_distance(pts, *pairs[0]), _segment_distance(pts, *pairs[1]))
    return float(out[0]) if scalar else out


def distance_minus(p, q: Quadrilateral):
    """Euclidean distance to ``OA u OC``; accepts a point or an (N, 2) array."""
    return _dist_pair(p, q, ((q.O, q.A), (q.O, q.C)))


def distance_plus(p, q: Quadrilateral):
    """Euclidean distance to ``AB u BC``."""
    return _dist_pair(p, q, ((q.A, q.B), (q.B, q.C)))


def distance_to_boundary(p, q: Quadrilateral):
    return np.minimum(distance_minus(p, q), distance_plus(p, q))


def point_in_polygon(p, q: Quadrilateral) -> np.ndarray:
    """Crossing-number test against the quadrilateral's boundary."""
    pts = np.atleast_2d(np.asarray(p, dtype=float))
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    v = q.vertices
    for i in range(4):
        (x1, y1), (x2, y2) = v[i], v[(i + 1) % 4]
        straddle = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= straddle & (x < xc)
    return inside


# --------------------------------------------------------------------------
# lines, parabolas and the equidistance curve

@dataclass(frozen=True)
class _FarLine:
    name: str
    normal: np.ndarray   # inward unit normal
    p: float             # distance from O (positive)

    def signed(self, pts):
        return pts @ self.normal + self.p


def _far_lines(q: Quadrilateral) -> dict[str, _FarLine]:
    out = {}
    for name, (a, b) in (("AB", (q.A, q.B)), ("BC", (q.B, q.C))):
        a, b = np.asarray(a), np.asarray(b)
        d = b - a
        n = np.array([-d[1], d[0]]) / math.hypot(d[0], d[1])
        p = -float(n @ a)
        if p <= 0.0:
            raise DegenerateInput(f"vertex O is not strictly inside line {name}")
        out[name] = _FarLine(name, n, p)
    return out


def _near_factor(theta, beta):
    th = np.asarray(theta, dtype=float)
    return np.where(th <= HALF_PI, np.sin(th),
                    np.where(th >= beta - HALF_PI, np.sin(beta - th), 1.0))


def _inv_radius(theta, beta, line: _FarLine):
    th = np.asarray(theta, dtype=float)
    un = np.cos(th) * line.normal[0] + np.sin(th) * line.normal[1]
    return (_near_factor(th, beta) - un) / line.p


def _switch_angle(q: Quadrilateral) -> float:
    lines = _far_lines(q)
    ab, bc = lines["AB"], lines["BC"]

    def diff(t):
        return float(_inv_radius(t, q.beta, ab) - _inv_radius(t, q.beta, bc))

    grid = np.linspace(0.0, q.beta, _SWITCH_SAMPLES)
    vals = _inv_radius(grid, q.beta, ab) - _inv_radius(grid, q.beta, bc)
    sign = np.sign(vals)
    roots = [float(t) for t in grid[sign == 0.0]]
    for i in np.nonzero(sign[:-1] * sign[1:] < 0.0)[0]:
        roots.append(brentq(diff, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15))
    if len(roots) != 1:
        raise ClassificationAmbiguous(
            f"far-line switch pattern has {len(roots)} crossings, expected exactly one")
    return roots[0]


def parabola_normal(theta: float, directrix) -> np.ndarray:
    """Unit normal of the parabola with focus O and the given directrix.

    ``directrix = (sin a, cos a, l)`` describes ``x sin a + y cos a + l = 0``.
    The normal points away from the convex side of the parabola.
    """
    sa, ca, _ = directrix
    den = 2.0 - 2.0 * (math.sin(theta) * ca + math.cos(theta) * sa)
    if den <= 1e-14:
        raise DegenerateNormal("normal requested at the parabola's point at infinity")
    return np.array([math.cos(theta) - sa, math.sin(theta) - ca]) / math.sqrt(den)


def _near_gradient(feature: str, theta: float, beta: float) -> np.ndarray:
    if feature == "OA":
        return np.array([0.0, 1.0])
    if feature == "OC":
        return np.array([math.sin(beta), -math.cos(beta)])
    return np.array([math.cos(theta), math.sin(theta)])


@dataclass(frozen=True)
class GammaSegment:
    """One piece of Gamma between two polar angles.

    ``near_minus`` is ``"OA"``, ``"O"`` or ``"OC"``; ``near_plus`` is
    ``"AB"`` or ``"BC"``.  A line segment stores a point and a unit
    direction; a parabola stores its directrix ``(sin a, cos a, l)`` (the
    focus is always O).
    """

    kind: str
    theta_lo: float
    theta_hi: float
    near_minus: str
    near_plus: str
    beta: float
    plus_normal: tuple[float, float]
    plus_offset: float
    point: tuple[float, float] | None = None
    direction: tuple[float, float] | None = None
    directrix: tuple[float, float, float] | None = None

    @property
    def theta_range(self) -> tuple[float, float]:
        return (self.theta_lo, self.theta_hi)

    @property
    def empty(self) -> bool:
        return self.theta_hi <= self.theta_lo

    def radius(self, theta):
        th = np.asarray(theta, dtype=float)
        n = self.plus_normal
        un = np.cos(th) * n[0] + np.sin(th) * n[1]
        return self.plus_offset / (_near_factor(th, self.beta) - un)

    def points(self, theta) -> np.ndarray:
        th = np.asarray(theta, dtype=float)
        r = self.radius(th)
        return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)

    def distance(self, theta):
        """Common distance to both boundary pairs at the given angle."""
        return self.radius(theta) * _near_factor(theta, self.beta)

    def normal(self, theta: float) -> np.ndarray:
        """Unit normal pointing from the near side to the far side."""
        if self.kind == "parabola":
            return parabola_normal(theta, self.directrix)
        grad = _near_gradient(self.near_minus, theta, self.beta) - np.asarray(self.plus_normal)
        return _unit(grad)

    def sample(self, n: int) -> np.ndarray:
        return np.linspace(self.theta_lo, self.theta_hi, n)


@dataclass(frozen=True)
class GammaCurve:
    """Gamma as an ordered list of segments, with S and the splitter SB."""

    segments: tuple[GammaSegment, ...]
    quad_type: str
    S: tuple[float, float]
    theta_s: float
    theta0: float
    theta0_prime: float | None
    gamma_star: tuple[tuple[float, float], tuple[float, float]]

    @property
    def kinds(self) -> list[str]:
        return [s.kind for s in self.segments]

    def sample(self, n_per_segment: int):
        """(theta, points) along all non-empty segments."""
        th, pts = [], []
        for seg in self.segments:
            if seg.empty:
                continue
            t = seg.sample(n_per_segment)
            th.append(t)
            pts.append(seg.points(t))
        return np.concatenate(th), np.concatenate(pts)


def _make_segment(lo, hi, minus, plus_line: _FarLine, beta) -> GammaSegment:
    n = plus_line.normal
    common = dict(theta_lo=float(lo), theta_hi=float(hi), near_minus=minus,
                  near_plus=plus_line.name, beta=beta,
                  plus_normal=(float(n[0]), float(n[1])), plus_offset=plus_line.p)
    if minus == "O":
        return GammaSegment(kind="parabola",
                            directrix=(float(n[0]), float(n[1]), plus_line.p), **common)
    grad = _near_gradient(minus, lo, beta) - n
    direction = _unit((-grad[1], grad[0]))
    seg = GammaSegment(kind="line", **common)
    start = seg.points(lo)
    return GammaSegment(kind="line", point=(float(start[0]), float(start[1])),
                        direction=(float(direction[0]), float(direction[1])), **common)


def _check_curve(curve: GammaCurve, q: Quadrilateral) -> None:
    for seg in curve.segments:
        if seg.empty:
            continue
        t = seg.sample(_CHECK_SAMPLES)
        pts = seg.points(t)
        if not np.all(np.isfinite(pts)):
            raise DegenerateInput("equidistance curve escapes to infinity")
        gap = np.abs(distance_minus(pts, q) - distance_plus(pts, q))
        if np.max(gap) > GAMMA_TOL:
            raise DegenerateInput(
                "equidistance curve does not follow the line/parabola pattern "
                f"(gap {np.max(gap):.2e} on {seg.near_minus}-{seg.near_plus})")
        inner = pts[1:-1]
        if len(inner) and not np.all(point_in_polygon(inner, q)):
            raise DegenerateInput("equidistance curve leaves the quadrilateral")


def build_gamma(q: Quadrilateral) -> GammaCurve:
    """Construct and classify Gamma for a normalized non-convex quadrilateral."""
    if q.is_convex:
        raise HardyDomainError("Gamma is only defined for non-convex quadrilaterals")
    beta = q.beta
    j1, j2 = HALF_PI, beta - HALF_PI
    lines = _far_lines(q)
    theta_s = _switch_angle(q)
    b_type = q.b_type
    if not b_type and q.zeta > HALF_PI + TIE_TOL:
        raise DegenerateInput("obtuse angle must sit at A; pass the vertices through normalize")

    # fold near-junction switches into the four-segment pattern
    for j in (j1, j2):
        if abs(theta_s - j) <= TIE_TOL:
            theta_s = j

    if theta_s < j1:
        quad_type = "B2" if b_type else "A2"
    elif theta_s <= j2:
        quad_type = "B1" if b_type else "A1"
    elif b_type:
        quad_type = "B3"
    else:
        raise DegenerateInput("A-type quadrilateral is not in normalized orientation")

    ab, bc = lines["AB"], lines["BC"]
    if quad_type in ("A1", "B1"):
        layout = [(0.0, j1, "OA", ab), (j1, theta_s, "O", ab),
                  (theta_s, j2, "O", bc), (j2, beta, "OC", bc)]
    elif quad_type in ("A2", "B2"):
        layout = [(0.0, theta_s, "OA", ab), (theta_s, j1, "OA", bc),
                  (j1, j2, "O", bc), (j2, beta, "OC", bc)]
    else:
        layout = [(0.0, j1, "OA", ab), (j1, j2, "O", ab),
                  (j2, theta_s, "OC", ab), (theta_s, beta, "OC", bc)]
    segments = [_make_segment(lo, hi, minus, line, beta) for lo, hi, minus, line in layout]

    s_seg = next(s for s in segments if s.theta_lo <= theta_s <= s.theta_hi)
    s_pt = s_seg.points(theta_s)
    S = (float(s_pt[0]), float(s_pt[1]))
    if quad_type == "B3":
        theta0, theta0p = j2, theta_s
    else:
        theta0, theta0p = theta_s, None
    curve = GammaCurve(tuple(segments), quad_type, S, theta_s, theta0, theta0p,
                       (S, tuple(map(float, q.B))))
    _check_curve(curve, q)
    return curve


def classify(q: Quadrilateral) -> str:
    return "Convex" if q.is_convex else build_gamma(q).quad_type


# --------------------------------------------------------------------------
# auxiliary frame for obtuse angle at A

@dataclass(frozen=True)
class AuxFrame:
    """Frame with origin on line AB, ``x1`` along A->B and ``y1`` inward.

    The origin sits at signed distance ``cos(gamma)`` from ``A`` along AB,
    so ``A = (-cos gamma, 0)`` and ``O = (0, sin gamma)`` in this frame, and
    ``y1`` equals the distance to line AB.
    """

    origin: tuple[float, float]
    rotation: float

    @classmethod
    def from_quad(cls, q: Quadrilateral) -> "AuxFrame":
        e1 = _unit(np.subtract(q.B, q.A))
        origin = np.asarray(q.A) + math.cos(q.gamma) * e1
        return cls((float(origin[0]), float(origin[1])), math.atan2(e1[1], e1[0]))

    @property
    def e1(self) -> np.ndarray:
        return np.array([math.cos(self.rotation), math.sin(self.rotation)])

    @property
    def e2(self) -> np.ndarray:
        return np.array([-math.sin(self.rotation), math.cos(self.rotation)])

    def to_local(self, p) -> np.ndarray:
        d = np.asarray(p, dtype=float) - np.asarray(self.origin)
        return np.stack([d @ self.e1, d @ self.e2], axis=-1)

    def polar(self, p):
        loc = self.to_local(p)
        return np.hypot(loc[..., 0], loc[..., 1]), np.arctan2(loc[..., 1], loc[..., 0])


def theta1_of_theta(theta, q: Quadrilateral, frame: AuxFrame, segment: GammaSegment):
    """Polar angle about the aux origin of the Gamma point at ``theta``.

    Uses the closed cotangent relation for the piece equidistant from AB
    and, respectively, OA, O or OC.
    """
    del frame  # the relations depend only on the angles of q
    if segment.near_plus != "AB":
        raise HardyDomainError("theta1 is defined on pieces nearest to AB")
    th = np.asarray(theta, dtype=float)
    pad = 1e-12
    if np.any((th < segment.theta_lo - pad) | (th > segment.theta_hi + pad)):
        raise HardyDomainError("theta outside the segment's range")
    g, b = q.gamma, q.beta
    with np.errstate(divide="ignore"):
        if segment.near_minus == "OA":
            cot1 = -math.cos(g) / np.tan(th) + math.sin(g)
        elif segment.near_minus == "O":
            cot1 = -np.cos(th + g)
        else:
            cot1 = -math.cos(b + g) / np.tan(b - th) - math.sin(b + g)
    out = np.arctan2(1.0, cot1)
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# random quadrilaterals

def random_quadrilateral(rng: np.random.Generator, focus_obtuse: bool = False) -> np.ndarray:
    """Four boundary-ordered vertices of a random dart (reflex vertex first).

    The reflex angle, the angles at A and C and the length of OC are drawn
    directly; B is where the sides leaving A and C meet.  With
    ``focus_obtuse`` the draw concentrates on an obtuse angle at A next to a
    long side OC, where the rarer curve patterns live.
    """
    while True:
        if focus_obtuse:
            beta = rng.uniform(math.pi + 0.05, 1.5 * math.pi - 0.05)
            gamma = rng.uniform(HALF_PI, HALF_PI + 0.6)
            zeta = rng.uniform(0.3, HALF_PI)
            rho = math.exp(rng.uniform(0.0, math.log(20.0)))
        else:
            beta = rng.uniform(math.pi + 0.05, TWO_PI - 0.05)
            gamma = rng.uniform(0.05, math.pi - 0.05)
            zeta = rng.uniform(0.05, math.pi - 0.05)
            rho = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
        if beta + gamma + zeta > TWO_PI - 0.05:
            continue
        c = rho * np.array([math.cos(beta), math.sin(beta)])
        dir_a = np.array([-math.cos(gamma), math.sin(gamma)])
        ang_c = beta - math.pi + zeta
        dir_c = np.array([math.cos(ang_c), math.sin(ang_c)])
        t = np.linalg.solve(np.column_stack([dir_a, -dir_c]), c - np.array([1.0, 0.0]))
        if t[0] <= 0.0 or t[1] <= 0.0:
            continue
        b = np.array([1.0, 0.0]) + t[0] * dir_a
        pts = np.array([[0.0, 0.0], [1.0, 0.0], b, c])
        try:
            q = _normalize_core(pts)
        except DegenerateInput:
            continue
        if not q.is_convex and min(q.gamma, q.delta, q.zeta) >= 0.04:
            return pts


def symmetric_dart(beta: float, gamma: float) -> np.ndarray:
    """Vertices of the dart with reflex angle ``beta`` at O and equal angles
    ``gamma`` at A and C; ``|OA| = |OC| = 1`` and B lies on the bisector at O."""
    if not (math.pi < beta < TWO_PI and 0.0 < gamma and beta + 2.0 * gamma < TWO_PI):
        raise DegenerateInput("need pi < beta < 2 pi and 0 < gamma < pi - beta/2")
    axis = np.array([math.cos(0.5 * beta), math.sin(0.5 * beta)])
    dir_a = np.array([-math.cos(gamma), math.sin(gamma)])
    s, t = np.linalg.solve(np.column_stack([dir_a, -axis]), np.array([-1.0, 0.0]))
    return np.array([[0.0, 0.0], [1.0, 0.0], t * axis, [math.cos(beta), math.sin(beta)]])


def sample_quadrilaterals(seed: int, per_type: int = 10,
                          types=("A1", "A2", "B1", "B2", "B3"),
                          max_draws: int = 100_000) -> dict[str, list[Quadrilateral]]:
    """Deterministic collection of normalized quadrilaterals per type."""
    rng = np.random.default_rng(seed)
    found: dict[str, list[Quadrilateral]] = {t: [] for t in types}
    for draw in range(max_draws):
        if all(len(v) >= per_type for v in found.values()):
            return found
        pts = random_quadrilateral(rng, focus_obtuse=bool(draw % 2))
        try:
            q = normalize(pts)
            kind = build_gamma(q).quad_type
        except HardyDomainError:
            continue
        bucket = found.get(kind)
        if bucket is not None and len(bucket) < per_type:
            bucket.append(q)
    missing = {t: per_type - len(v) for t, v in found.items() if len(v) < per_type}
    raise RuntimeError(f"could not sample enough quadrilaterals: {missing}")


# --------------------------------------------------------------------------
# SVG output

def write_svg(path, q: Quadrilateral, curve: GammaCurve | None = None,
              frame: AuxFrame | None = None, size: int = 640) -> None:
    """Outline, Gamma (lines blue, parabolas red), S, the splitter and aux axes."""
    verts = q.vertices
    pts = [verts]
    if curve is not None:
        pts.append(curve.sample(40)[1])
    allp = np.concatenate(pts)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    pad = 0.05 * span
    k = size / (span + 2 * pad)

    def tx(p):
        return (float((p[0] - lo[0] + pad) * k), float((hi[1] - p[1] + pad) * k))

    def poly(points):
        return " ".join(f"{x:.3f},{y:.3f}" for x, y in map(tx, points))

    w = (hi[0] - lo[0] + 2 * pad) * k
    h = (hi[1] - lo[1] + 2 * pad) * k
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}">',
           f'<polygon points="{poly(verts)}" fill="#f4f4f4" stroke="black" stroke-width="1.5"/>']
    for name, v in zip("OABC", verts):
        x, y = tx(v)
        out.append(f'<text x="{x + 4:.1f}" y="{y - 4:.1f}" font-size="14">{name}</text>')
    if curve is not None:
        for seg in curve.segments:
            if seg.empty:
                continue
            color = "#1f5fbf" if seg.kind == "line" else "#c0392b"
            sp = seg.points(seg.sample(80))
            out.append(f'<polyline points="{poly(sp)}" fill="none" stroke="{color}" '
                       'stroke-width="2"/>')
        s, b = curve.gamma_star
        out.append(f'<polyline points="{poly([s, b])}" stroke="#27ae60" '
                   'stroke-dasharray="6,3" stroke-width="1.5" fill="none"/>')
        x, y = tx(curve.S)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#27ae60"/>')
        out.append(f'<text x="{x + 5:.1f}" y="{y + 14:.1f}" font-size="13">S</text>')
    if frame is not None:
        o = np.asarray(frame.origin)
        for axis, label in ((frame.e1, "x1"), (frame.e2, "y1")):
            end = o + 0.3 * span * axis
            out.append(f'<polyline points="{poly([o, end])}" stroke="#8e44ad" '
                       'stroke-width="1.2" fill="none"/>')
            x, y = tx(end)
            out.append(f'<text x="{x:.1f}" y="{y:.1f}" font-size="12">{label}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
