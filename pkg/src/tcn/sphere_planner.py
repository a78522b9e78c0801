"""An explicit motion planner for n-point configurations on odd spheres.

Given (x_1, ..., x_n) on S^k with k odd, the planner returns n paths that
all start at x_1, path i ending at x_i: the shortest great-circle arc when
x_i is not antipodal to x_1, and the half great circle leaving x_1 in the
direction of a fixed nowhere-vanishing tangent field otherwise.  On each
stratum U_j (configurations where exactly j of x_2..x_n are antipodal to
x_1) the rule is continuous, so n strata give n continuous pieces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

UNIT_TOL = 1e-9
DEFAULT_ANTIPODE_TOL = 1e-8


class PlannerError(ValueError):
    pass


def sphere_point(coords) -> np.ndarray:
    """``coords`` scaled onto the unit sphere."""
    x = np.asarray(coords, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise PlannerError("a sphere point needs at least 2 coordinates")
    r = np.linalg.norm(x)
    if not np.isfinite(r) or r == 0:
        raise PlannerError("cannot put %s on the sphere" % (x,))
    return x / r


def _require_odd(k: int) -> None:
    if k % 2 == 0:
        raise PlannerError("S^%d has no nowhere-vanishing tangent field: no planner for even "
                           "spheres (TC_n(S^even) = n + 1 > n)" % k)


def tangent_field(x: np.ndarray, k: int) -> np.ndarray:
    """V(x) = (-x2, x1, -x4, x3, ...), a unit tangent field on S^k for odd k."""
    _require_odd(k)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (k + 1,):
        raise PlannerError("expected a point of R^%d" % (k + 1))
    v = np.empty_like(x)
    v[0::2] = -x[1::2]
    v[1::2] = x[0::2]
    return v


@dataclass
class Path:
    """Uniform samples gamma(0), gamma(1/m), ..., gamma(1) of a path on S^k."""

    samples: np.ndarray  # shape (m + 1, k + 1)
    k: int

    @property
    def start(self) -> np.ndarray:
        return self.samples[0]

    @property
    def end(self) -> np.ndarray:
        return self.samples[-1]

    def chords(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.samples, axis=0), axis=1)


def _angle(x: np.ndarray, y: np.ndarray) -> float:
    # stable near 0 and pi, unlike arccos of the dot product
    return 2.0 * np.arctan2(np.linalg.norm(x - y), np.linalg.norm(x + y))


def geodesic(x: np.ndarray, y: np.ndarray, k: int, samples: int = 100,
             antipode_tol: float = DEFAULT_ANTIPODE_TOL) -> Path:
    """The planner's path from ``x`` to ``y`` with ``samples`` + 1 sample points.

    * ``y`` antipodal to ``x`` (``|x + y| < antipode_tol``): the half great
      circle cos(pi t) x + sin(pi t) V(x); needs k odd.
    * ``y`` within ``antipode_tol`` of ``x``: normalized linear
      interpolation, which is the constant path when ``y == x``.
    * otherwise: slerp along the shorter great-circle arc.

    The first sample is ``x`` itself, bit for bit, and the last sample
    agrees with ``y`` to rounding error.
    """
    if samples < 2:
        raise PlannerError("need at least 2 samples")
    if antipode_tol >= 1:
        raise PlannerError("antipode tolerance must be below 1")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    t = np.linspace(0.0, 1.0, samples + 1)[:, None]
    if np.linalg.norm(x + y) < antipode_tol:
        _require_odd(k)
        v = tangent_field(x, k)
        pts = np.cos(np.pi * t) * x + np.sin(np.pi * t) * v
        # absorb the sub-tolerance offset of y from -x so the path ends at y
        pts = pts + t * (y + x)
    elif np.linalg.norm(x - y) < antipode_tol:
        pts = (1.0 - t) * x + t * y
    else:
        theta = _angle(x, y)
        s = np.sin(theta)
        pts = (np.sin((1.0 - t) * theta) * x + np.sin(t * theta) * y) / s
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    pts[0] = x
    return Path(pts, k)


def domain_index(config: Sequence[np.ndarray], antipode_tol: float = DEFAULT_ANTIPODE_TOL) -> int:
    """Number of points among x_2..x_n antipodal to x_1."""
    x1 = np.asarray(config[0], dtype=np.float64)
    return sum(1 for xi in config[1:] if np.linalg.norm(np.asarray(xi) + x1) < antipode_tol)


@dataclass
class Plan:
    """n paths from the common start x_1, path i ending at x_i."""

    paths: List[Path]
    domain: int
    k: int

    @property
    def n(self) -> int:
        return len(self.paths)

    @property
    def samples(self) -> int:
        return self.paths[0].samples.shape[0] - 1

    def endpoint_residuals(self, config: Sequence[np.ndarray]) -> np.ndarray:
        return np.array([np.linalg.norm(p.end - np.asarray(x)) for p, x in zip(self.paths, config)])

    def section_violations(self, config: Sequence[np.ndarray], tol: float = UNIT_TOL) -> List[str]:
        """Check common start, endpoints and unit length of every sample."""
        out = []
        start = self.paths[0].start
        for i, (p, x) in enumerate(zip(self.paths, config), 1):
            if not np.array_equal(p.start, start):
                out.append("path %d does not start at x_1" % i)
            r = np.linalg.norm(p.end - np.asarray(x))
            if r > tol:
                out.append("path %d misses x_%d by %.3g" % (i, i, r))
            off = np.max(np.abs(np.linalg.norm(p.samples, axis=1) - 1.0))
            if off > tol:
                out.append("path %d leaves the sphere by %.3g" % (i, off))
        return out

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "domain": self.domain, "samples": self.samples,
                "paths": [p.samples.tolist() for p in self.paths]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Plan":
        k = int(data["k"])
        paths = [Path(np.asarray(p, dtype=np.float64), k) for p in data["paths"]]
        return cls(paths, int(data["domain"]), k)


def plan(config: Sequence, k: int, samples: int = 100,
         antipode_tol: float = DEFAULT_ANTIPODE_TOL) -> Plan:
    """The planner's section of e_n evaluated at ``config``."""
    _require_odd(k)
    if len(config) < 1:
        raise PlannerError("empty configuration")
    pts = [np.asarray(x, dtype=np.float64) for x in config]
    for x in pts:
        if x.shape != (k + 1,):
            raise PlannerError("points on S^%d need %d coordinates" % (k, k + 1))
        if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
            raise PlannerError("point %s is not a unit vector" % (x,))
    x1 = pts[0]
    paths = [geodesic(x1, xi, k, samples, antipode_tol) for xi in pts]
    return Plan(paths, domain_index(pts, antipode_tol), k)


def domain_count(k: int, n: int) -> int:
    """Number of strata U_0, ..., U_{n-1} covering (S^k)^n."""
    _require_odd(k)
    if n < 1:
        raise PlannerError("n must be positive")
    return n


def random_point(rng: np.random.Generator, k: int) -> np.ndarray:
    x = rng.standard_normal(k + 1)
    return x / np.linalg.norm(x)


def random_config(rng: np.random.Generator, k: int, n: int,
                  p_antipode: float = 0.0, p_equal: float = 0.0) -> List[np.ndarray]:
    """Random configuration; each of x_2..x_n is -x_1 or x_1 with the given odds."""
    x1 = random_point(rng, k)
    cfg = [x1]
    for _ in range(n - 1):
        r = rng.random()
        if r < p_antipode:
            cfg.append(-x1)
        elif r < p_antipode + p_equal:
            cfg.append(x1.copy())
        else:
            cfg.append(random_point(rng, k))
    return cfg


def _small_rotation(rng: np.random.Generator, dim: int, angle: float) -> np.ndarray:
    # rotation by `angle` in a random 2-plane
    q, _ = np.linalg.qr(rng.standard_normal((dim, 2)))
    a, b = q[:, 0], q[:, 1]
    c, s = np.cos(angle), np.sin(angle)
    return (np.eye(dim) + (c - 1.0) * (np.outer(a, a) + np.outer(b, b))
            + s * (np.outer(b, a) - np.outer(a, b)))


def _jitter(rng: np.random.Generator, x: np.ndarray, delta: float) -> np.ndarray:
    v = rng.standard_normal(x.size)
    v -= v.dot(x) * x
    v *= delta / np.linalg.norm(v)
    y = x + v
    return y / np.linalg.norm(y)


@dataclass
class ContinuityReport:
    trials: int
    same_domain: int
    domain_changes: int
    violations: int
    max_ratio: float
    constant: float
    delta: float
    max_endpoint_residual: float

    def passed(self) -> bool:
        return self.violations == 0 and self.max_endpoint_residual < UNIT_TOL

    def as_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)


def continuity_probe(k: int, n: int, trials: int = 1000, delta: float = 1e-4,
                     samples: int = 50, constant: float = 100.0, seed: int = 0,
                     antipode_tol: float = DEFAULT_ANTIPODE_TOL) -> ContinuityReport:
    """Empirical continuity of the planner on each stratum.

    Every trial draws a configuration (sometimes with exact antipodes or
    repeated points), perturbs it by roughly ``delta`` and compares the two
    plans.  Perturbations are either a small global rotation, which keeps
    the antipode pattern, or independent jitter of every point, which
    usually does not.  Pairs whose stratum changed are counted and skipped;
    for the rest the sup distance between paths must stay below
    ``constant`` times the displacement of the configuration.
    """
    _require_odd(k)
    rng = np.random.default_rng(seed)
    same = changed = bad = 0
    worst = 0.0
    resid = 0.0
    for _ in range(trials):
        cfg = random_config(rng, k, n, p_antipode=0.3, p_equal=0.15)
        if rng.random() < 0.5:
            R = _small_rotation(rng, k + 1, delta)
            moved = [R @ x for x in cfg]
            moved = [m / np.linalg.norm(m) for m in moved]
        else:
            moved = [_jitter(rng, x, delta) for x in cfg]
        p0 = plan(cfg, k, samples, antipode_tol)
        p1 = plan(moved, k, samples, antipode_tol)
        resid = max(resid, p0.endpoint_residuals(cfg).max(), p1.endpoint_residuals(moved).max())
        if p0.domain != p1.domain:
            changed += 1
            continue
        same += 1
        shift = max(np.linalg.norm(a - b) for a, b in zip(cfg, moved))
        dist = max(np.max(np.linalg.norm(a.samples - b.samples, axis=1))
                   for a, b in zip(p0.paths, p1.paths))
        ratio = dist / shift if shift > 0 else (0.0 if dist == 0 else np.inf)
        worst = max(worst, ratio)
        if dist > constant * shift:
            bad += 1
    return ContinuityReport(trials, same, changed, bad, float(worst), constant, delta, float(resid))


def load_config(path) -> List[np.ndarray]:
    """Read a JSON array of points and put them on the unit sphere."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise PlannerError("%s: expected a non-empty JSON array of points" % path)
    return [sphere_point(p) for p in data]
