"""Exact boxicity of small graphs with verifiable certificates.

For every dimension ``t`` the search maintains a strict "entirely left of"
relation that must be an interval order (transitive and 2+2-free).  Edges
stay incomparable everywhere; each non-edge needs a dimension where it is
comparable.  See :func:`boxkit._pykernels.box_search` for the search itself.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _kernels
from .errors import BudgetExceeded, GraphFormatError, InconsistencyError, ParameterError
from .graphcore import EXACT_CAP, Graph, iter_bits
from .intervals import Cover, IntervalRep, VerificationReport, verify_cover

DEFAULT_MAX_NODES = 10**8
DEFAULT_MAX_DIMENSION = 6
SPLIT_DEPTH = 2


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    max_dimension: int = DEFAULT_MAX_DIMENSION

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_dimension < 1:
            raise ParameterError("search budget values must be positive")


@dataclass(frozen=True)
class BoxicityCertificate:
    """A cover witnessing ``box(G) <= dimension`` for the graph with hash ``graph_id``."""

    dimension: int
    cover: Cover
    graph_id: str

    def to_dict(self) -> dict:
        out = self.cover.to_dict()
        out["graph_sha"] = self.graph_id
        out["dimension"] = self.dimension
        return out

    @classmethod
    def from_dict(cls, obj) -> BoxicityCertificate:
        if not isinstance(obj, dict) or "graph_sha" not in obj:
            raise GraphFormatError("certificate needs 'graph_sha', 'dimension' and 'reps'")
        cover = Cover.from_dict(obj)
        return cls(obj["dimension"], cover, obj["graph_sha"])


def write_certificate(cert: BoxicityCertificate) -> bytes:
    return (json.dumps(cert.to_dict()) + "\n").encode()


def read_certificate(data: bytes | str) -> BoxicityCertificate:
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return BoxicityCertificate.from_dict(obj)


@dataclass(frozen=True)
class Decision:
    status: str  # "yes", "no" or "unknown"
    nodes: int
    certificate: BoxicityCertificate | None = None


@dataclass(frozen=True)
class ExactBoxicity:
    value: int
    certificate: BoxicityCertificate
    nodes: int


@dataclass(frozen=True)
class LowerBounded:
    """Search gave up; every dimension below ``value`` was refuted."""

    value: int
    nodes: int


def realize(preds: list[int], n: int) -> IntervalRep:
    """Integer intervals realizing an interval order given by predecessor bitmasks.

    Uses down-set sizes: ``l(v) = |pred(v)|`` and ``r(v)`` one below the
    smallest down-set containing ``v`` (``n`` if none), so ``u`` is left of
    ``v`` exactly when ``r(u) < l(v)``.
    """
    size = [p.bit_count() for p in preds]
    right = [n] * n
    for w in range(n):
        for u in iter_bits(preds[w]):
            right[u] = min(right[u], size[w] - 1)
    return IntervalRep(tuple((size[v], right[v]) for v in range(n)))


def left_of(rep: IntervalRep) -> list[int]:
    """Predecessor bitmasks of the "entirely left of" order of a representation."""
    preds = [0] * rep.n
    for v, (lo, _) in enumerate(rep.intervals):
        for u, (_, hi) in enumerate(rep.intervals):
            if hi < lo:
                preds[v] |= 1 << u
    return preds


def is_interval_order(preds: list[int]) -> bool:
    """Irreflexive, transitive and 2+2-free (down-sets form a chain)."""
    n = len(preds)
    for v in range(n):
        if (preds[v] >> v) & 1:
            return False
        for u in iter_bits(preds[v]):
            if preds[u] & ~preds[v]:
                return False
    for a in range(n):
        for b in range(n):
            if preds[a] & ~preds[b] and preds[b] & ~preds[a]:
                return False
    return True


def _run(args):
    n, rows, d, max_nodes, split_depth, index, count, backend = args
    if backend == "python" or _kernels.BACKEND == "python":
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    return _kernels.box_search(n, rows, d, max_nodes, split_depth, index, count, backend=backend)


def decide_boxicity_leq(g: Graph, d: int, budget: SearchBudget | None = None, *, jobs: int = 1,
                        cap: int = EXACT_CAP, backend: str | None = None) -> Decision:
    """Is ``g`` the intersection of ``d`` interval graphs?

    ``"no"`` answers come from an exhaustive search; ``"unknown"`` only from
    running out of ``budget.max_nodes``.  A ``"yes"`` carries a verified
    certificate.  ``jobs > 1`` partitions the tree across processes; the
    status matches the sequential run whenever the budget is not binding.
    """
    budget = budget or SearchBudget()
    if g.n > cap:
        raise BudgetExceeded(f"graph has {g.n} vertices, above the exact-search cap of {cap}")
    if d < 0:
        raise ParameterError(f"dimension must be non-negative, got {d}")
    if d == 0:
        if g.is_complete():
            return Decision("yes", 0, BoxicityCertificate(0, Cover((), n=g.n), g.sha))
        return Decision("no", 0)
    if jobs > 1:
        tasks = [(g.n, g.rows, d, budget.max_nodes, SPLIT_DEPTH, j, jobs, backend) for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, tasks))
        nodes = sum(r[1] for r in results)
        found = next((r for r in results if r[0] == _kernels.YES), None)
        if found is not None:
            status, preds = _kernels.YES, found[2]
        elif any(r[0] == _kernels.UNKNOWN for r in results):
            status, preds = _kernels.UNKNOWN, None
        else:
            status, preds = _kernels.NO, None
    else:
        status, nodes, preds = _run((g.n, g.rows, d, budget.max_nodes, -1, 0, 1, backend))
    if status == _kernels.NO:
        return Decision("no", nodes)
    if status == _kernels.UNKNOWN:
        return Decision("unknown", nodes)
    for p in preds:
        if not is_interval_order(p):
            raise InconsistencyError("search returned a relation that is not an interval order")
    cover = Cover(tuple(realize(p, g.n) for p in preds), n=g.n)
    cert = BoxicityCertificate(d, cover, g.sha)
    report = verify_certificate(g, cert)
    if not report.ok:
        raise InconsistencyError(f"search produced a certificate that fails verification: {report}")
    return Decision("yes", nodes, cert)


def exact_boxicity(g: Graph, budget: SearchBudget | None = None, *, jobs: int = 1,
                   cap: int = EXACT_CAP, backend: str | None = None) -> ExactBoxicity | LowerBounded:
    """Smallest ``d`` with a "yes" answer, trying ``d = 0, 1, ...`` in turn.

    The node budget is shared across all dimensions tried.
    """
    budget = budget or SearchBudget()
    spent = 0
    for d in range(budget.max_dimension + 1):
        remaining = budget.max_nodes - spent
        if remaining < 1:
            return LowerBounded(d, spent)
        dec = decide_boxicity_leq(g, d, SearchBudget(remaining, budget.max_dimension),
                                  jobs=jobs, cap=cap, backend=backend)
        spent += dec.nodes
        if dec.status == "yes":
            return ExactBoxicity(d, dec.certificate, spent)
        if dec.status == "unknown":
            return LowerBounded(d, spent)
    return LowerBounded(budget.max_dimension + 1, spent)


def verify_certificate(g: Graph, cert: BoxicityCertificate | Cover) -> VerificationReport:
    """Check a certificate (or a bare cover) against ``g``."""
    if isinstance(cert, Cover):
        cert = BoxicityCertificate(cert.dimension, cert, g.sha)
    if cert.dimension != cert.cover.dimension:
        raise ParameterError(f"certificate claims dimension {cert.dimension} "
                             f"but holds {cert.cover.dimension} reps")
    if cert.graph_id and cert.graph_id != g.sha:
        raise ParameterError("certificate was issued for a different graph")
    return verify_cover(g, cert.cover)


def result_to_dict(result: ExactBoxicity | LowerBounded | Decision, wall_time: float | None = None) -> dict:
    """JSON-ready summary; ``wall_time`` is the only field that varies between runs."""
    if isinstance(result, Decision):
        out = {"status": result.status, "nodes": result.nodes}
        cert = result.certificate
    elif isinstance(result, ExactBoxicity):
        out = {"status": "exact", "value": result.value, "nodes": result.nodes}
        cert = result.certificate
    else:
        out = {"status": "lower_bounded", "value": result.value, "nodes": result.nodes}
        cert = None
    if cert is not None:
        out["certificate"] = cert.to_dict()
    if wall_time is not None:
        out["wall_time"] = round(wall_time, 6)
    return out


def write_result(result: ExactBoxicity | LowerBounded | Decision, wall_time: float | None = None) -> bytes:
    return (json.dumps(result_to_dict(result, wall_time)) + "\n").encode()
