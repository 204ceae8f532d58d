"""Minimize the ratio ||p'||_q / ||p||_q over root placements.

The optimizer treats the 2n root coordinates as free variables,
projects any root that leaves the domain back to its nearest boundary
point (the root set is allowed to touch the boundary), and minimizes a
fast fixed-grid surrogate of the ratio: one batched kernel call per
objective evaluation over a panel grid frozen at setup.  The final
reported best_ratio is recomputed with the full adaptive quadrature on
the winning configuration, so it stands on its own.

Restarts run concurrently; each restart is deterministic under its
spawned sub-seed and the merge picks the smallest value with ties
broken by the lowest restart index, so results are reproducible
bit for bit regardless of scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import _kernels
from .geometry import ConvexBoundary, diameter, inradius, sample_params, \
    transfinite_diameter
from .norms import RootPolynomial, ratio

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

_METHODS = ("nelder-mead", "random-perturbation")


def worker_count() -> int:
    """Worker cap from TURANLAB_THREADS, else available parallelism."""
    raw = os.environ.get("TURANLAB_THREADS")
    if raw:
        try:
            v = int(raw)
        except ValueError as exc:
            raise ValueError(
                f"TURANLAB_THREADS must be an integer, got {raw!r}") from exc
        if v < 1:
            raise ValueError("TURANLAB_THREADS must be at least 1")
        return v
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SearchConfig:
    n: int
    q: float                    # math.inf for the sup norm
    budget: int = 20000         # objective evaluations across restarts
    restarts: int = 8
    seed: int = 0
    method: str = "nelder-mead"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be at least 1")
        if self.budget < 100:
            raise ValueError("budget must be at least 100")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if not (math.isinf(self.q) or self.q >= 1):
            raise ValueError("q must be >= 1 or inf")
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}")


@dataclass(frozen=True)
class SearchResult:
    best_ratio: float
    witness: RootPolynomial
    evaluations: int
    converged: bool
    trace: tuple[float, ...]    # best-so-far objective, nonincreasing
    family: str = "optimizer"


def bounding_box(b: ConvexBoundary) -> tuple[float, float, float, float]:
    return (-b.support(math.pi), b.support(0.0),
            -b.support(1.5 * math.pi), b.support(0.5 * math.pi))


def random_poly(b: ConvexBoundary, n: int, seed) -> RootPolynomial:
    """n i.i.d. roots from rejection sampling of the bounding box."""
    rng = np.random.default_rng(seed)
    x0, x1, y0, y1 = bounding_box(b)
    roots = []
    while len(roots) < n:
        z = complex(rng.uniform(x0, x1), rng.uniform(y0, y1))
        if b.contains(z):
            roots.append(z)
    return RootPolynomial(roots)


def project_into(b: ConvexBoundary, z: complex) -> complex:
    """z itself when inside, else its nearest boundary point."""
    if b.contains(z):
        return complex(z)
    _, point, _ = b.nearest_boundary(z)
    return complex(point)


class _FastRatio:
    """Fixed-grid surrogate for the ratio, one kernel call per eval."""

    def __init__(self, b: ConvexBoundary, n: int, q: float):
        self.q = q
        if math.isinf(q):
            params = np.sort(sample_params(b, max(1024, 32 * n)))
            self.pts = b.points_at(params)
            self.weights = None
        else:
            L = b.total_length
            starts, lens = [], []
            for j, piece in enumerate(b.pieces):
                m = max(4, math.ceil(4.0 * max(8, n) * piece.length / L))
                edges = b.vertex_params[j] + piece.length * \
                    np.arange(m + 1) / m
                starts.append(edges[:-1])
                lens.append(np.full(m, piece.length / m))
            a = np.concatenate(starts)
            h = np.concatenate(lens)
            s = (a[:, None] + 0.5 * h[:, None] * (_GL_X[None, :] + 1.0))
            self.pts = b.points_at(s.ravel())
            self.weights = (np.tile(_GL_W, len(a))
                            * np.repeat(0.5 * h, 16)).ravel()

    def __call__(self, roots: np.ndarray) -> float:
        logp, logdp = _kernels.poly_log_eval(self.pts, roots)
        mp = float(np.max(logp))
        md = float(np.max(logdp))
        if math.isinf(self.q):
            return math.exp(md - mp)
        q = self.q
        ip = float(self.weights @ np.exp(q * (logp - mp)))
        idv = float(self.weights @ np.exp(q * (logdp - md)))
        return math.exp(md - mp + (math.log(idv) - math.log(ip)) / q)


@dataclass
class _RestartOutcome:
    value: float
    roots: np.ndarray
    evaluations: int
    converged: bool
    trace: list[float] = field(default_factory=list)


def _project_vector(b: ConvexBoundary, x: np.ndarray) -> np.ndarray:
    roots = x[0::2] + 1j * x[1::2]
    for i, z in enumerate(roots):
        roots[i] = project_into(b, complex(z))
    return roots


def _run_restart(b: ConvexBoundary, cfg: SearchConfig, fast: _FastRatio,
                 sub_seed, budget: int) -> _RestartOutcome:
    start = random_poly(b, cfg.n, sub_seed)
    x0 = np.empty(2 * cfg.n)
    x0[0::2] = start.roots_array.real
    x0[1::2] = start.roots_array.imag
    out = _RestartOutcome(math.inf, start.roots_array.copy(), 0, False)

    def objective(x: np.ndarray) -> float:
        roots = _project_vector(b, np.asarray(x, dtype=np.float64))
        val = fast(roots)
        out.evaluations += 1
        if val < out.value:
            out.value = val
            out.roots = roots
        out.trace.append(out.value)
        return val

    if cfg.method == "nelder-mead":
        res = optimize.minimize(
            objective, x0, method="Nelder-Mead",
            options={"maxfev": budget, "xatol": 1e-10, "fatol": 1e-12,
                     "adaptive": True})
        out.converged = bool(res.status == 0)
    else:
        rng = np.random.default_rng(sub_seed)
        d = diameter(b)
        sigma = 0.25 * d
        x = x0.copy()
        fx = objective(x)
        while out.evaluations < budget:
            prop = x + sigma * rng.standard_normal(len(x))
            fp = objective(prop)
            if fp < fx:
                x, fx = prop, fp
                sigma = min(sigma * 1.3, 0.5 * d)
            else:
                sigma = max(sigma * 0.97, 1e-9 * d)
        out.converged = sigma <= 1e-6 * d
    return out


def estimate_oscillation(b: ConvexBoundary,
                         cfg: SearchConfig) -> SearchResult:
    """Multi-start projected minimization of the ratio surrogate.

    Upper-bounds the inverse Markov factor of the domain for (n, q);
    best_ratio is the full-quadrature ratio of the returned witness.
    """
    fast = _FastRatio(b, cfg.n, cfg.q)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    budget = max(100, cfg.budget // cfg.restarts)

    def work(i: int) -> _RestartOutcome:
        return _run_restart(b, cfg, fast, seeds[i], budget)

    workers = min(worker_count(), cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(work, range(cfg.restarts)))
    else:
        outcomes = [work(i) for i in range(cfg.restarts)]

    best_i = min(range(cfg.restarts),
                 key=lambda i: (outcomes[i].value, i))
    best = outcomes[best_i]
    witness = RootPolynomial(best.roots)
    full = ratio(witness, b, cfg.q)
    return SearchResult(
        best_ratio=full,
        witness=witness,
        evaluations=sum(o.evaluations for o in outcomes),
        converged=best.converged,
        trace=tuple(best.trace),
        family="optimizer",
    )


def upper_bound_witness(b: ConvexBoundary, n: int, q: float,
                        seed: int = 0) -> SearchResult:
    """Search for p with ratio below the target 15 n / d.

    Candidate families in order: all roots at the center of the largest
    inscribed disk, then boundary point sets maximizing the pairwise
    distance product, then the full optimizer.  converged is False when
    no candidate beats the target (for certified domains that would be
    a falsification event)."""
    d = diameter(b)
    target = 15.0 * n / d
    tried: list[float] = []
    best: SearchResult | None = None

    def consider(p: RootPolynomial, r: float, family: str,
                 evals: int, trace) -> SearchResult:
        return SearchResult(best_ratio=r, witness=p, evaluations=evals,
                            converged=r < target, trace=tuple(trace),
                            family=family)

    _, center = inradius(b)
    p = RootPolynomial([center] * n)
    r = ratio(p, b, q)
    tried.append(r)
    best = consider(p, r, "incenter", 1, tried)
    if best.converged:
        return best

    if n >= 3:
        pts = transfinite_diameter(b, m=n, seed=seed).points
    else:
        pts = b.points_at(np.arange(n) * b.total_length / max(n, 1))
    p = RootPolynomial(pts)
    r = ratio(p, b, q)
    tried.append(r)
    cand = consider(p, r, "fekete", 2, tried)
    if r < best.best_ratio:
        best = cand
    if cand.converged:
        return cand

    est = estimate_oscillation(
        b, SearchConfig(n=n, q=q, budget=20000, restarts=4, seed=seed))
    tried.append(est.best_ratio)
    if est.best_ratio < best.best_ratio:
        best = SearchResult(
            best_ratio=est.best_ratio, witness=est.witness,
            evaluations=2 + est.evaluations,
            converged=est.best_ratio < target,
            trace=tuple(tried), family="optimizer")
    return best
