"""Interval representations, cover verification and the explicit Kneser cover.

A graph has boxicity at most ``d`` iff its edge set is the intersection of
the edge sets of ``d`` interval graphs on the same vertices.  A :class:`Cover`
is such a list of interval representations; :func:`verify_cover` checks it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GraphFormatError, ParameterError
from .graphcore import Graph, KneserParams, as_params, binom, kneser_sets


@dataclass(frozen=True)
class IntervalRep:
    """One closed integer interval ``(lo, hi)`` per vertex."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ivs = tuple((int(lo), int(hi)) for lo, hi in self.intervals)
        for v, (lo, hi) in enumerate(ivs):
            if lo > hi:
                raise ParameterError(f"interval of vertex {v} has lo > hi: [{lo}, {hi}]")
        object.__setattr__(self, "intervals", ivs)

    @property
    def n(self) -> int:
        return len(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.intervals:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        a = np.asarray(self.intervals, dtype=np.int64)
        return a[:, 0], a[:, 1]


@dataclass(frozen=True)
class Cover:
    """An ordered list of interval representations over the same vertex count."""

    reps: tuple[IntervalRep, ...] = ()
    n: int | None = None

    def __post_init__(self):
        reps = tuple(self.reps)
        sizes = {r.n for r in reps}
        if len(sizes) > 1:
            raise ParameterError(f"cover mixes vertex counts {sorted(sizes)}")
        n = self.n if self.n is not None else (reps[0].n if reps else None)
        if reps and n != reps[0].n:
            raise ParameterError(f"cover declares n={n} but its reps have {reps[0].n} vertices")
        object.__setattr__(self, "reps", reps)
        object.__setattr__(self, "n", n)

    @property
    def dimension(self) -> int:
        return len(self.reps)

    def to_dict(self) -> dict:
        return {"dimension": self.dimension,
                "reps": [{"intervals": [list(iv) for iv in r.intervals]} for r in self.reps]}

    @classmethod
    def from_dict(cls, obj) -> Cover:
        try:
            reps = tuple(IntervalRep(tuple(tuple(iv) for iv in r["intervals"])) for r in obj["reps"])
            dim = obj["dimension"]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed cover: {exc}") from None
        if dim != len(reps):
            raise GraphFormatError(f"cover says dimension {dim} but lists {len(reps)} reps")
        return cls(reps)


def write_cover(cover: Cover) -> bytes:
    return (json.dumps(cover.to_dict()) + "\n").encode()


def read_cover(data: bytes | str) -> Cover:
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise GraphFormatError("cover must be a JSON object")
    return Cover.from_dict(obj)


@dataclass
class VerificationReport:
    ok: bool
    missing_complement_edges: list[tuple[int, int]] = field(default_factory=list)
    extra_complement_edges: list[tuple[int, int]] = field(default_factory=list)
    per_rep_edge_counts: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "missing_complement_edges": [list(p) for p in self.missing_complement_edges],
                "extra_complement_edges": [list(p) for p in self.extra_complement_edges],
                "per_rep_edge_counts": list(self.per_rep_edge_counts)}


def _meets(rep: IntervalRep) -> np.ndarray:
    """Boolean matrix: closed intervals ``u`` and ``v`` intersect."""
    lo, hi = rep.arrays()
    return (lo[:, None] <= hi[None, :]) & (lo[None, :] <= hi[:, None])


def _adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def _rows_from_matrix(m: np.ndarray) -> list[int]:
    packed = np.packbits(m, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def intersection_graph(rep: IntervalRep) -> Graph:
    """Interval graph of ``rep``; touching endpoints count as intersecting."""
    m = _meets(rep)
    np.fill_diagonal(m, False)
    return Graph(rep.n, _rows_from_matrix(m) if rep.n else [])


def _pairs(mask: np.ndarray) -> list[tuple[int, int]]:
    us, vs = np.nonzero(np.triu(mask, 1))
    return sorted(zip(us.tolist(), vs.tolist()))


def verify_cover(g: Graph, cover: Cover) -> VerificationReport:
    """Check ``E(g) = ∩ E(I_t)`` and list every violation.

    ``extra_complement_edges`` are edges of ``g`` that some rep separates;
    ``missing_complement_edges`` are non-edges that no rep separates.
    """
    if cover.n is not None and cover.n != g.n:
        raise ParameterError(f"cover has {cover.n} vertices, graph has {g.n}")
    adj = _adjacency(g)
    separated = np.zeros((g.n, g.n), dtype=bool)
    broken = np.zeros((g.n, g.n), dtype=bool)
    counts = []
    for rep in cover.reps:
        m = _meets(rep)
        counts.append(int((m.sum() - g.n) // 2))
        separated |= ~m
        broken |= adj & ~m
    missing = ~adj & ~separated
    np.fill_diagonal(missing, False)
    missing_pairs = _pairs(missing)
    extra_pairs = _pairs(broken)
    return VerificationReport(not missing_pairs and not extra_pairs, missing_pairs, extra_pairs, counts)


def is_interval_rep_of(g: Graph, rep: IntervalRep) -> bool:
    if rep.n != g.n:
        raise ParameterError(f"representation has {rep.n} vertices, graph has {g.n}")
    return intersection_graph(rep).rows == g.rows


def with_whole_line(assigned: Sequence[tuple[int, int] | None]) -> IntervalRep:
    """Replace ``None`` entries by an interval strictly containing every finite endpoint."""
    finite = [iv for iv in assigned if iv is not None]
    lo = min((a for a, _ in finite), default=0) - 1
    hi = max((b for _, b in finite), default=0) + 1
    return IntervalRep(tuple(iv if iv is not None else (lo, hi) for iv in assigned))


def build_upper_cover(k: int | KneserParams, n: int | None = None) -> Cover:
    """``n - 2`` interval graphs whose intersection is the Kneser graph ``Kn(k, n)``.

    For ground element ``i`` the rep separates every pair of k-sets that both
    contain ``i``; the two largest elements are handled inside every rep, so
    elements ``1..n-2`` suffice.  Blocks of unit intervals are laid out left
    to right for sets containing ``i`` together with ``{n-1, n}``, with ``n``
    only, with neither, and with ``n-1`` only; sets missing ``i`` but holding
    ``n-1`` and/or ``n`` get one long interval spanning exactly the blocks
    they must meet, and sets avoiding all three get the whole line.
    """
    params = as_params(k, n)
    k, n = params.k, params.n
    if k < 2 or n < 2 * k + 1:
        raise ParameterError(f"explicit cover needs k >= 2 and n >= 2k+1, got k={k}, n={n}")
    b3 = binom(n - 3, k - 3)
    b2 = binom(n - 3, k - 2)
    b1 = binom(n - 3, k - 1)
    sets = kneser_sets(params)
    hi_pair = (n - 1, n)
    reps = []
    for i in range(1, n - 1):
        counters = {"in3": 0, "in_n": 0, "alone": 0, "in_n1": 0}
        offsets = {"in3": 0, "in_n": 2 * b3, "alone": 2 * b3 + 2 * b2, "in_n1": 2 * b3 + 2 * b2 + 2 * b1}
        both_hi = (2 * b3 + 2 * b2, 2 * b3 + 2 * b2 + 2 * b1 - 1)
        only_n1 = (2 * b3, 2 * b3 + 2 * b2 + 2 * b1 - 1)
        only_n = (2 * b3 + 2 * b2, 2 * b3 + 4 * b2 + 2 * b1 - 1)
        assigned: list[tuple[int, int] | None] = []
        for s in sets:
            has_i = i in s
            has_n1 = hi_pair[0] in s
            has_n = hi_pair[1] in s
            if has_i:
                group = ("in3" if has_n1 and has_n else "in_n" if has_n
                         else "in_n1" if has_n1 else "alone")
                left = offsets[group] + 2 * counters[group]
                counters[group] += 1
                assigned.append((left, left + 1))
            elif has_n1 and has_n:
                assigned.append(both_hi)
            elif has_n1:
                assigned.append(only_n1)
            elif has_n:
                assigned.append(only_n)
            else:
                assigned.append(None)
        reps.append(with_whole_line(assigned))
    return Cover(tuple(reps))


def write_verification(report: VerificationReport) -> bytes:
    return (json.dumps(report.to_dict()) + "\n").encode()
