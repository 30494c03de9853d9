"""Planar geometry shared by the encoder, masks, spotting and evaluation."""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateQuad, DegenerateSegment


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class LineSegment:
    """Finite text-line candidate with its normal-form line parameters.

    ``(rho, theta)`` satisfy ``x*cos(theta) + y*sin(theta) = rho`` with
    theta in degrees in [0, 180); both endpoints lie on that line up to
    accumulator quantization.
    """

    x1: float
    y1: float
    x2: float
    y2: float
    rho: float
    theta: float
    votes: int = 0

    @property
    def length(self) -> float:
        return math.hypot(self.x2 - self.x1, self.y2 - self.y1)

    @property
    def midpoint(self) -> tuple[float, float]:
        return (0.5 * (self.x1 + self.x2), 0.5 * (self.y1 + self.y2))

    def canonical(self) -> "LineSegment":
        """Endpoints ordered left-to-right, ties broken top-to-bottom."""
        if (self.x1, self.y1) <= (self.x2, self.y2):
            return self
        return replace(self, x1=self.x2, y1=self.y2, x2=self.x1, y2=self.y1)

    def angle_from_horizontal(self) -> float:
        """Direction angle in degrees in (-90, 90] of the canonical segment."""
        seg = self.canonical()
        dx = seg.x2 - seg.x1
        dy = seg.y2 - seg.y1
        if dx == 0 and dy == 0:
            raise DegenerateSegment("zero-length segment has no direction")
        ang = math.degrees(math.atan2(dy, dx))
        if ang <= -90.0:
            ang += 180.0
        elif ang > 90.0:
            ang -= 180.0
        return ang

    @classmethod
    def from_endpoints(cls, x1, y1, x2, y2, votes: int = 0) -> "LineSegment":
        """Build a segment, deriving (rho, theta) from the endpoints."""
        dx, dy = x2 - x1, y2 - y1
        if dx == 0 and dy == 0:
            raise DegenerateSegment("endpoints coincide")
        theta = (math.degrees(math.atan2(dy, dx)) + 90.0) % 180.0
        rho = x1 * math.cos(math.radians(theta)) + y1 * math.sin(math.radians(theta))
        return cls(x1, y1, x2, y2, rho, theta, votes).canonical()


def quad_area(quad: np.ndarray) -> float:
    """Absolute shoelace area of a 4-point polygon."""
    q = np.asarray(quad, dtype=float)
    x, y = q[:, 0], q[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def quad_mean_side_lengths(quad: np.ndarray) -> tuple[float, float]:
    """(mean of top/bottom edges, mean of left/right edges).

    Assumes vertices ordered clockwise from top-left: TL, TR, BR, BL.
    """
    q = np.asarray(quad, dtype=float)
    top = np.linalg.norm(q[1] - q[0])
    right = np.linalg.norm(q[2] - q[1])
    bottom = np.linalg.norm(q[3] - q[2])
    left = np.linalg.norm(q[0] - q[3])
    return 0.5 * (top + bottom), 0.5 * (left + right)


def quad_aabb(quad: np.ndarray) -> tuple[float, float, float, float]:
    q = np.asarray(quad, dtype=float)
    return q[:, 0].min(), q[:, 1].min(), q[:, 0].max(), q[:, 1].max()


def segment_quad_overlap_length(p1, p2, quad: np.ndarray) -> float:
    """Length of the part of segment p1-p2 inside a convex quadrilateral.

    Parametric half-plane clipping; the quad's centroid defines the
    interior side of each edge.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    q = np.asarray(quad, dtype=float)
    seg_len = float(np.linalg.norm(p2 - p1))
    if seg_len <= 0.0:
        raise DegenerateSegment("endpoints coincide")
    if quad_area(q) <= 0.0:
        raise DegenerateQuad("quad has zero area")
    centroid = q.mean(axis=0)
    t0, t1 = 0.0, 1.0
    for i in range(4):
        a = q[i]
        e = q[(i + 1) % 4] - a
        side = e[0] * (centroid[1] - a[1]) - e[1] * (centroid[0] - a[0])
        if side == 0.0:
            continue  # edge through centroid: degenerate edge, skip
        s = 1.0 if side > 0 else -1.0
        f0 = s * (e[0] * (p1[1] - a[1]) - e[1] * (p1[0] - a[0]))
        f1 = s * (e[0] * (p2[1] - a[1]) - e[1] * (p2[0] - a[0]))
        if f0 < 0.0 and f1 < 0.0:
            return 0.0
        if f0 < 0.0:
            t0 = max(t0, f0 / (f0 - f1))
        elif f1 < 0.0:
            t1 = min(t1, f0 / (f0 - f1))
    return max(0.0, t1 - t0) * seg_len


def line_param_range_in_rect(rho: float, theta_rad: float, width: int, height: int):
    """Parameter range of the line rho=(x cos, y sin) inside [0,W-1]x[0,H-1].

    Points are parameterized p(t) = rho*(cos, sin) + t*(-sin, cos).
    Returns (t_lo, t_hi) or None when the line misses the rectangle.
    """
    c, s = math.cos(theta_rad), math.sin(theta_rad)
    t_lo, t_hi = -math.inf, math.inf
    # x(t) = rho*c - t*s in [0, width-1]
    if abs(s) > 1e-12:
        bounds = sorted(((rho * c - 0.0) / s, (rho * c - (width - 1)) / s))
        t_lo, t_hi = max(t_lo, bounds[0]), min(t_hi, bounds[1])
    elif not (0.0 <= rho * c <= width - 1):
        return None
    # y(t) = rho*s + t*c in [0, height-1]
    if abs(c) > 1e-12:
        bounds = sorted(((0.0 - rho * s) / c, ((height - 1) - rho * s) / c))
        t_lo, t_hi = max(t_lo, bounds[0]), min(t_hi, bounds[1])
    elif not (0.0 <= rho * s <= height - 1):
        return None
    if t_lo > t_hi:
        return None
    return t_lo, t_hi
