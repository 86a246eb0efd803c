"""Labeling certificates: corner weights B(v,e), edge weights w(e), target alpha.

A labeling certifies a value of the p-spectral radius through three
conditions (edge weights summing to 1, unit row sums at vertices, and a
common per-edge value alpha), plus a consistency condition equating the
ratios w(e)/B(v,e) across the edges at each vertex.  Classification
reports the tightest class the residuals support at a given tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import UniformHypergraph
from .errors import PreconditionError

DEFAULT_TOL = 1e-8

CLASS_NORMAL = "normal"
CLASS_SUBNORMAL = "subnormal"
CLASS_STRICT_SUB = "strictly-subnormal"
CLASS_SUPERNORMAL = "supernormal"
CLASS_STRICT_SUPER = "strictly-supernormal"
CLASS_NONE = "none"


@dataclass(frozen=True)
class PVector:
    """Nonnegative vector on the unit l^p sphere (normalized on build)."""

    values: np.ndarray
    p: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if (v < 0).any():
            raise PreconditionError("PVector entries must be nonnegative")
        nrm = float(np.power(v, self.p).sum() ** (1.0 / self.p)) if v.size else 0.0
        if nrm > 0:
            v = v / nrm
        object.__setattr__(self, "values", v)

    def norm_p(self) -> float:
        return float(np.power(self.values, self.p).sum() ** (1.0 / self.p))


@dataclass(frozen=True)
class Labeling:
    """B stored densely per (edge, position-within-edge); support is exactly r*m."""

    B: np.ndarray  # (m, r), positions matching the sorted edge tuples
    w: np.ndarray  # (m,)
    p: float
    alpha: float

    def __post_init__(self) -> None:
        B = np.asarray(self.B, dtype=float)
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "w", w)
        if (B <= 0).any() or (w <= 0).any():
            raise PreconditionError("labeling entries must be positive")
        if self.p < 1:
            raise PreconditionError(f"p={self.p} must be >= 1")
        if self.alpha <= 0:
            raise PreconditionError(f"alpha={self.alpha} must be positive")

    def to_json(self) -> str:
        payload = {
            "p": self.p,
            "alpha": self.alpha,
            "w": self.w.tolist(),
            "B": self.B.tolist(),
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Labeling":
        data = json.loads(text)
        return cls(
            B=np.asarray(data["B"], dtype=float),
            w=np.asarray(data["w"], dtype=float),
            p=float(data["p"]),
            alpha=float(data["alpha"]),
        )


@dataclass(frozen=True)
class LabelingVerdict:
    classification: str
    consistent: bool
    residuals: dict = field(compare=False)
    tol: float

    def to_json(self) -> str:
        payload = {
            "class": self.classification,
            "consistent": self.consistent,
            "tol": self.tol,
            "residuals": {k: v for k, v in self.residuals.items()},
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def lambda_from_alpha(alpha: float, r: int, p: float) -> float:
    """r^{1-r/p} * alpha^{-1/p}; inverse of alpha_from_lambda for p > r."""
    if p <= r:
        raise PreconditionError(f"lambda_from_alpha requires p > r (got p={p}, r={r})")
    if alpha <= 0:
        raise PreconditionError("alpha must be positive")
    return r ** (1.0 - r / p) * alpha ** (-1.0 / p)


def alpha_from_lambda(lam: float, r: int, p: float) -> float:
    """r^{p-r} / lam^p (well-defined for any p >= 1, including p = r)."""
    if lam <= 0:
        raise PreconditionError("lambda must be positive")
    return r ** (p - r) / lam**p


def _check_support(G: UniformHypergraph, B: np.ndarray, w: np.ndarray) -> None:
    if B.shape != (G.m, G.r) or w.shape != (G.m,):
        raise PreconditionError(
            f"labeling support mismatch: expected B {G.m}x{G.r} and w of length {G.m}"
        )


def _row_sums(G: UniformHypergraph, B: np.ndarray) -> np.ndarray:
    rows = np.zeros(G.n)
    np.add.at(rows, G.edges_array, B)
    return rows


def condition_residuals(
    G: UniformHypergraph, B: np.ndarray, w: np.ndarray, p: float, alpha: float
) -> dict:
    """Signed residuals of the three defining conditions plus consistency spread.

    Shared by classification (p > r) and the p < r certificate machinery;
    no regime gate here.
    """
    _check_support(G, B, w)
    weight_sum = float(w.sum() - 1.0)
    rows = _row_sums(G, B) - 1.0
    edge_vals = w ** (p - G.r) * B.prod(axis=1) - alpha
    ratio = w[:, None] / B  # (m, r): w(e)/B(v,e) at each corner
    spread = np.zeros(G.n)
    for v in range(G.n):
        inc = G.incidence[v]
        if len(inc) < 2:
            continue
        vals = [ratio[k, G.edges[k].index(v)] for k in inc]
        hi, lo = max(vals), min(vals)
        spread[v] = (hi - lo) / hi if hi > 0 else 0.0
    return {
        "weight_sum": weight_sum,
        "rows": rows,
        "edges": edge_vals,
        "consistency_spread": spread,
    }


def _summary(res: dict) -> dict:
    return {
        "weight_sum": res["weight_sum"],
        "row_max_abs": float(np.abs(res["rows"]).max()) if res["rows"].size else 0.0,
        "edge_max_abs": float(np.abs(res["edges"]).max()) if res["edges"].size else 0.0,
        "consistency_spread_max": float(res["consistency_spread"].max())
        if res["consistency_spread"].size
        else 0.0,
    }


def classify_labeling(
    G: UniformHypergraph, L: Labeling, tol: float = DEFAULT_TOL
) -> LabelingVerdict:
    """Classify a labeling in the p > r regime against the three conditions."""
    if L.p <= G.r:
        raise PreconditionError(
            f"classify_labeling requires p > r (got p={L.p}, r={G.r}); "
            "use classify_labeling_sub_r for 1 <= p < r"
        )
    res = condition_residuals(G, L.B, L.w, L.p, L.alpha)
    ws, rows, edges = res["weight_sum"], res["rows"], res["edges"]
    consistent = bool((res["consistency_spread"] <= tol).all())

    def within(x):
        return abs(x) <= tol

    normal = within(ws) and bool((np.abs(rows) <= tol).all()) and bool(
        (np.abs(edges) <= tol).all()
    )
    sub = ws <= tol and bool((rows <= tol).all()) and bool((edges >= -tol).all())
    sup = ws >= -tol and bool((rows >= -tol).all()) and bool((edges <= tol).all())
    if normal:
        cls = CLASS_NORMAL
    elif sub:
        slack = max(-ws, float((-rows).max(initial=0.0)), float(edges.max(initial=0.0)))
        cls = CLASS_STRICT_SUB if slack > 10 * tol else CLASS_SUBNORMAL
    elif sup:
        slack = max(ws, float(rows.max(initial=0.0)), float((-edges).max(initial=0.0)))
        cls = CLASS_STRICT_SUPER if slack > 10 * tol else CLASS_SUPERNORMAL
    else:
        cls = CLASS_NONE
    return LabelingVerdict(cls, consistent, _summary(res), tol)


def classify_labeling_sub_r(
    G: UniformHypergraph,
    B: np.ndarray,
    alpha: float,
    p: float,
    tol: float = DEFAULT_TOL,
) -> LabelingVerdict:
    """Subnormality check in the 1 <= p < r regime.

    Conditions: row sums at most 1, and m^{r-p} * prod_{v in e} B(v,e)
    at least alpha on every edge.
    """
    if p >= G.r:
        raise PreconditionError(f"classify_labeling_sub_r requires p < r (got p={p}, r={G.r})")
    B = np.asarray(B, dtype=float)
    if B.shape != (G.m, G.r):
        raise PreconditionError(f"B support mismatch: expected {G.m}x{G.r}")
    rows = _row_sums(G, B) - 1.0
    edge_vals = G.m ** (G.r - p) * B.prod(axis=1) - alpha
    ok = bool((rows <= tol).all()) and bool((edge_vals >= -tol).all())
    residuals = {
        "row_max": float(rows.max(initial=0.0)),
        "edge_min": float(edge_vals.min(initial=0.0)),
    }
    return LabelingVerdict(CLASS_SUBNORMAL if ok else CLASS_NONE, ok, residuals, tol)


def labeling_from_eigenvector(
    G: UniformHypergraph, x: PVector, lam: float
) -> Labeling:
    """Build the labeling induced by an eigenpair (lam, x).

    B(v,e) = prod_{u in e} x_u / (lam * x_v^p), w(e) = r * prod / lam,
    alpha = r^{p-r} / lam^p.  Exact eigenpairs yield normal + consistent.
    """
    if lam <= 0:
        raise PreconditionError("lambda must be positive")
    xv = x.values
    if G.n != xv.shape[0]:
        raise PreconditionError("vector length does not match vertex count")
    prods = xv[G.edges_array].prod(axis=1)
    if (prods <= 0).any():
        raise PreconditionError("eigenvector has a zero entry at an incident vertex")
    w = G.r * prods / lam
    B = prods[:, None] / (lam * np.power(xv[G.edges_array], x.p))
    alpha = alpha_from_lambda(lam, G.r, x.p)
    return Labeling(B=B, w=w, p=x.p, alpha=alpha)


def eigenvector_from_labeling(
    G: UniformHypergraph, L: Labeling, tol: float = DEFAULT_TOL
) -> PVector:
    """Recover x_v = (w(e) / (r B(v,e)))^{1/p} from a consistent labeling."""
    vals = np.zeros(G.n)
    for v in range(G.n):
        inc = G.incidence[v]
        if not inc:
            raise PreconditionError(f"vertex {v} has no incident edge")
        cand = [
            (L.w[k] / (G.r * L.B[k, G.edges[k].index(v)])) ** (1.0 / L.p) for k in inc
        ]
        hi, lo = max(cand), min(cand)
        if hi > 0 and (hi - lo) / hi > tol:
            raise PreconditionError(
                f"inconsistent labeling at vertex {v}: edge-dependent values"
            )
        vals[v] = cand[0]
    return PVector(values=vals, p=L.p)


def weight_only_residual(
    G: UniformHypergraph, w: np.ndarray, alpha: float, p: float
) -> dict:
    """Residuals of the weight-only certificate system.

    Per edge: w(e)^p / prod_{v in e} (sum_{f: v in f} w(f)) - alpha, plus
    |sum w(e) - 1|.  All-zero residuals certify the radius matching alpha.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (G.m,):
        raise PreconditionError(f"expected {G.m} edge weights")
    vertex_sums = np.zeros(G.n)
    np.add.at(vertex_sums, G.edges_array, np.broadcast_to(w[:, None], G.edges_array.shape))
    denom = vertex_sums[G.edges_array].prod(axis=1)
    per_edge = w**p / denom - alpha
    return {"per_edge": per_edge, "weight_sum": float(abs(w.sum() - 1.0))}
