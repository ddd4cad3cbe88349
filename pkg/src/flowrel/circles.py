"""The concentric-circle cascade: a homeomorphism of a nested family of
circles that migrates points along two tier chains while nudging their
angle by a sine term.

Tiers: outer circles C(n), n >= 0, of radius 1 - n/(n^2 + 1), and inner
circles D(n) of radius 1/n, all concentric; D(2) coincides with C(1) and
is canonicalized to it.  The map fixes C(0) and the common center
pointwise.  Forward, even outer circles ascend toward the rim C(0) and
odd inner circles descend then join them through D(3) -> C(2); odd outer
circles descend to C(1) = D(2) and continue outward in the even inner
chain toward the center.  The tier chain is taken as normative; the angle
increment keeps the published coefficient 1/n for tier index n.

Angle coordinates live in [0, pi) with pi identified to 0; every
non-fixed tier uses the update a -> a + sin(a)/n, which never leaves
[0, pi), and whose inverse is computed by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ANGLE_TOL = 1e-9

FIXED_RIM = "fixed_rim"        # points of C(0)
FIXED_CENTER = "fixed_center"  # the common center
RIMWARD = "rimward"            # forward asymptotic to C(0), backward to the center
CENTERWARD = "centerward"      # forward asymptotic to the center, backward to C(0)

TO_C0 = "to_c0"
TO_CENTER = "to_center"
FIXED = "fixed"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CirclePoint:
    """A point of the cascade: a tier plus an angle in [0, pi)."""

    family: str  # "C" | "D" | "center"
    index: int
    angle: float

    def __post_init__(self):
        if self.family == "center":
            object.__setattr__(self, "index", 0)
            object.__setattr__(self, "angle", 0.0)
            return
        if self.family not in ("C", "D"):
            raise ValueError("family must be C, D or center")
        if self.family == "C" and self.index < 0:
            raise ValueError("outer tiers start at C(0)")
        if self.family == "D" and self.index < 2:
            raise ValueError("inner tiers start at D(2)")
        if self.family == "D" and self.index == 2:
            object.__setattr__(self, "family", "C")
            object.__setattr__(self, "index", 1)
        object.__setattr__(self, "angle", float(self.angle) % math.pi)

    def tier(self) -> str:
        return "center" if self.family == "center" else f"{self.family}{self.index}"

    def describe(self) -> dict:
        return {"type": "circle_point", "tier": self.tier(), "angle": self.angle}


def center() -> CirclePoint:
    return CirclePoint("center", 0, 0.0)


def radius(p: CirclePoint) -> float:
    if p.family == "center":
        return 0.0
    if p.family == "C":
        return 1.0 - p.index / (p.index**2 + 1)
    return 1.0 / p.index


def rim_distance(p: CirclePoint) -> float:
    """Radial distance to the fixed rim circle C(0)."""
    return abs(radius(p) - 1.0)


def _forward_tier(p: CirclePoint) -> tuple[str, int, float] | None:
    """Next tier and angle coefficient, or None for fixed tiers."""
    if p.family == "center" or (p.family, p.index) == ("C", 0):
        return None
    f, n = p.family, p.index
    if f == "C":
        if n == 1:
            return ("D", 4, 1.0 / 2.0)  # C(1) = D(2) continues the inner even chain
        if n % 2 == 0:
            return ("C", n + 2, 1.0 / n)
        return ("C", n - 2, 1.0 / n)
    if n == 3:
        return ("C", 2, 1.0 / 3.0)
    if n % 2 == 1:
        return ("D", n - 2, 1.0 / n)
    return ("D", n + 2, 1.0 / n)


def _backward_tier(p: CirclePoint) -> tuple[str, int, float] | None:
    """Predecessor tier and its angle coefficient, or None for fixed tiers."""
    if p.family == "center" or (p.family, p.index) == ("C", 0):
        return None
    f, n = p.family, p.index
    if f == "C":
        if n == 1:
            return ("C", 3, 1.0 / 3.0)
        if n == 2:
            return ("D", 3, 1.0 / 3.0)
        if n % 2 == 0:
            return ("C", n - 2, 1.0 / (n - 2))
        return ("C", n + 2, 1.0 / (n + 2))
    if n == 4:
        return ("C", 1, 1.0 / 2.0)
    if n % 2 == 0:
        return ("D", n - 2, 1.0 / (n - 2))
    return ("D", n + 2, 1.0 / (n + 2))


def step(p: CirclePoint) -> CirclePoint:
    nxt = _forward_tier(p)
    if nxt is None:
        return p
    f, n, c = nxt
    return CirclePoint(f, n, p.angle + c * math.sin(p.angle))


def _invert_angle(alpha: float, coeff: float) -> float:
    """Solve b + coeff*sin(b) = alpha on [0, pi); strictly monotone since
    coeff <= 1/2."""
    lo, hi = 0.0, math.pi
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if mid + coeff * math.sin(mid) < alpha:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def step_back(p: CirclePoint) -> CirclePoint:
    prev = _backward_tier(p)
    if prev is None:
        return p
    f, n, c = prev
    return CirclePoint(f, n, _invert_angle(p.angle, c))


def iterate(p: CirclePoint, count: int) -> CirclePoint:
    """count forward steps when positive, backward steps when negative."""
    fn = step if count >= 0 else step_back
    for _ in range(abs(count)):
        p = fn(p)
    return p


def family_label(p: CirclePoint) -> str:
    if p.family == "center":
        return FIXED_CENTER
    if (p.family, p.index) == ("C", 0):
        return FIXED_RIM
    if p.family == "C":
        if p.index == 1:
            return CENTERWARD
        return RIMWARD if p.index % 2 == 0 else CENTERWARD
    return CENTERWARD if p.index % 2 == 0 else RIMWARD


@dataclass(frozen=True)
class AsymptoticReport:
    forward: str
    forward_steps: int | None
    backward: str
    backward_steps: int | None

    def as_json(self) -> dict:
        return {
            "forward": self.forward,
            "forward_steps": self.forward_steps,
            "backward": self.backward,
            "backward_steps": self.backward_steps,
        }


def _classify_direction(p: CirclePoint, advance, max_iter: int, eps: float) -> tuple[str, int | None]:
    if _forward_tier(p) is None:
        return FIXED, 0
    q = p
    for k in range(1, max_iter + 1):
        q = advance(q)
        if rim_distance(q) < eps:
            return TO_C0, k
        if radius(q) < eps:
            return TO_CENTER, k
    return INCONCLUSIVE, None


def asymptotic_class(p: CirclePoint, max_iter: int = 10**4, eps: float = 1e-3) -> AsymptoticReport:
    """Iterate forward and backward until the radial distance to the rim
    or to the center drops below eps, reporting the crossing step."""
    if max_iter < 1 or eps <= 0:
        raise ValueError("need max_iter >= 1 and eps > 0")
    fwd, fsteps = _classify_direction(p, step, max_iter, eps)
    bwd, bsteps = _classify_direction(p, step_back, max_iter, eps)
    return AsymptoticReport(fwd, fsteps, bwd, bsteps)


EVIDENCE_P = "EvidenceP"
EVIDENCE_D = "EvidenceD"


def pair_class(p: CirclePoint, q: CirclePoint) -> dict:
    """Table-driven proximality evidence for a pair of cascade points.

    A pair is proximal exactly when it is diagonal, both points share a
    migrating family (both rimward or both centerward), or one point is
    the center and the other migrates.  Points of the fixed rim are
    proximal to nothing but themselves.  The verdict carries the matched
    clause and both family labels.
    """
    fp, fq = family_label(p), family_label(q)
    same_point = (
        p.family == q.family and p.index == q.index
        and abs(p.angle - q.angle) < ANGLE_TOL
    )
    if same_point:
        clause = "diagonal"
    elif fp == fq and fp in (RIMWARD, CENTERWARD):
        clause = "shared_family"
    elif {fp, fq} in ({FIXED_CENTER, RIMWARD}, {FIXED_CENTER, CENTERWARD}):
        clause = "migrating_with_center"
    else:
        clause = None
    return {
        "x": p.describe(),
        "y": q.describe(),
        "families": [fp, fq],
        "label": EVIDENCE_P if clause else EVIDENCE_D,
        "clause": clause,
    }


def trajectory_rows(p: CirclePoint, steps: int, backward: bool = False) -> list[dict]:
    """Iteration trace (iteration, tier, angle, radial distance to the
    rim) for plotting or CSV dumps."""
    rows = []
    q = p
    advance = step_back if backward else step
    for k in range(steps + 1):
        rows.append({
            "iteration": -k if backward else k,
            "tier": q.tier(),
            "angle": q.angle,
            "radius": radius(q),
            "rim_distance": rim_distance(q),
        })
        q = advance(q)
    return rows
