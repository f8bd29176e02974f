"""Common-neighbourhood profiles ``c(i) = max_{|S|=i} |N(S)|`` and their structure.

``c(i) >= j`` holds exactly when the graph contains ``K_{i,j}`` with disjoint
sides, which is symmetric in ``i`` and ``j``.  Read as a partition, every
complete profile therefore equals its own conjugate.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from . import _kernels
from .errors import BudgetExceeded, FormulaNotApplicable, ParameterError
from .graphcore import Graph, KneserParams, as_params, binom, iter_bits

DEFAULT_PROFILE_CAP = 40
DEFAULT_BICLIQUE_CAP = 64


@dataclass(frozen=True)
class CommonNeighborProfile:
    """``values[i-1] = c(i)`` for ``i = 1..len(values)``."""

    values: tuple[int, ...]
    graph_id: str = ""
    n: int | None = None

    def __post_init__(self):
        vals = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        for a, b in zip(vals, vals[1:]):
            if b > a:
                raise ParameterError(f"profile must be non-increasing, got {vals}")
        if any(x < 0 for x in vals):
            raise ParameterError("profile values must be non-negative")
        if self.n is not None:
            for i, x in enumerate(vals, start=1):
                if x > self.n - i:
                    raise ParameterError(f"c({i}) = {x} exceeds n - i = {self.n - i}")

    def __getitem__(self, i: int) -> int:
        """``c(i)`` with 1-based ``i``; zero past the stored range when complete."""
        if i < 1:
            raise IndexError("profile index starts at 1")
        if i <= len(self.values):
            return self.values[i - 1]
        if self.complete:
            return 0
        raise IndexError(f"c({i}) was not computed")

    @property
    def complete(self) -> bool:
        """True once the stored values reach a zero or the last index ``n - 1``."""
        if self.values and self.values[-1] == 0:
            return True
        return self.n is not None and len(self.values) >= self.n - 1

    @property
    def total(self) -> int:
        return sum(self.values)

    def parts(self) -> tuple[int, ...]:
        return tuple(x for x in self.values if x > 0)


ProfileLike = Union[CommonNeighborProfile, Sequence[int]]


def _values(p: ProfileLike) -> tuple[int, ...]:
    if isinstance(p, CommonNeighborProfile):
        return p.values
    return tuple(int(x) for x in p)


def common_neighbors(g: Graph, s) -> frozenset[int]:
    """Vertices outside ``s`` adjacent to every vertex of ``s``."""
    s = set(s)
    if not s:
        raise ParameterError("common neighbourhood needs a non-empty vertex set")
    if not all(0 <= v < g.n for v in s):
        raise ParameterError(f"vertex set {sorted(s)} not contained in 0..{g.n - 1}")
    common = (1 << g.n) - 1
    for v in s:
        common &= g.rows[v]
    return frozenset(iter_bits(common))


def _cn_task(args):
    n, rows, i, first = args
    return _kernels.max_common_neighbors(n, rows, i, -1, first)


def c_value(g: Graph, i: int, *, jobs: int = 1, cap: int = DEFAULT_PROFILE_CAP, lower: int = -1) -> int:
    """Exact ``c(i)`` by exhaustive branch and bound over ``i``-subsets.

    ``lower`` may seed the search with a value known to be attained; the
    result is still the exact maximum.  With ``jobs > 1`` the subsets are
    split by their smallest element across worker processes.
    """
    if not 1 <= i <= g.n - 1:
        raise ParameterError(f"c(i) is defined for 1 <= i <= n-1, got i={i} with n={g.n}")
    if g.n > cap:
        raise BudgetExceeded(f"graph has {g.n} vertices, above the profile cap of {cap}")
    if jobs > 1 and i > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_cn_task, [(g.n, g.rows, i, first) for first in range(g.n)])
            return max(max(parts), lower, 0)
    return max(_kernels.max_common_neighbors(g.n, g.rows, i, lower), 0)


def profile(g: Graph, max_i: int | None = None, *, jobs: int = 1,
            cap: int = DEFAULT_PROFILE_CAP) -> CommonNeighborProfile:
    """``c(1..max_i)`` by direct enumeration; zeros are padded once ``c`` hits 0."""
    last = g.n - 1
    if max_i is None:
        max_i = last
    if not 1 <= max_i <= last:
        raise ParameterError(f"max_i must lie in 1..{last}, got {max_i}")
    vals: list[int] = []
    for i in range(1, max_i + 1):
        if vals and vals[-1] == 0:
            vals.append(0)
            continue
        vals.append(c_value(g, i, jobs=jobs, cap=cap))
    return CommonNeighborProfile(tuple(vals), g.sha, g.n)


def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    parts = [x for x in parts if x > 0]
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x >= j) for j in range(1, parts[0] + 1))


def check_young_symmetry(p: ProfileLike) -> bool:
    """True iff the profile, read as a partition, equals its conjugate."""
    parts = tuple(x for x in _values(p) if x > 0)
    return conjugate(parts) == parts


def check_neighbor_implication(p: ProfileLike) -> bool:
    """For every ``j = c(i) > 0``: ``c(j) >= i`` and ``c(j+1) < i``."""
    vals = _values(p)

    def c(i):
        return vals[i - 1] if i <= len(vals) else 0

    for i, j in enumerate(vals, start=1):
        if j > 0 and not (c(j + 1) < i <= c(j)):
            return False
    return True


def t_value(p: ProfileLike) -> int:
    """``max{i : c(i) >= i}``, or 0 when ``c(1) = 0``."""
    t = 0
    for i, x in enumerate(_values(p), start=1):
        if x >= i:
            t = i
    return t


def area_identity_check(p: ProfileLike) -> bool:
    """Total of the profile equals twice the area above the diagonal.

    Only meaningful for self-conjugate profiles.
    """
    if not check_young_symmetry(p):
        raise ParameterError("area identity needs a self-conjugate profile")
    vals = _values(p)
    t = t_value(vals)
    above = sum(vals[:t]) - Fraction(t * t, 2)
    return sum(vals) == 2 * above


def max_balanced_biclique(g: Graph, *, cap: int = DEFAULT_BICLIQUE_CAP) -> int:
    """Largest ``s`` with ``K_{s,s}`` (disjoint sides) as a subgraph of ``g``.

    Sides may have internal edges; only cross edges are required.  Grows
    ``s`` until no ``s``-set has ``s`` common neighbours.
    """
    if g.n > cap:
        raise BudgetExceeded(f"graph has {g.n} vertices, above the biclique cap of {cap}")
    s = 0
    while 2 * (s + 1) <= g.n:
        target = s + 1
        if _kernels.max_common_neighbors(g.n, g.rows, target, target - 1, -1, target) < target:
            break
        s = target
    return s


# -- closed forms for Kneser complements --------------------------------------

def _large_n(params: KneserParams) -> bool:
    k, n = params.k, params.n
    return k >= 2 and n >= 2 * k**3 - 2 * k**2 + 1


def t_kneser_closed(k: int | KneserParams, n: int | None = None) -> int:
    """Balanced-biclique size of the Kneser complement, ``floor(C(n-1,k-1)/2)``."""
    params = as_params(k, n)
    if not _large_n(params):
        raise FormulaNotApplicable(
            f"formula needs k >= 2 and n >= 2k^3-2k^2+1, got k={params.k}, n={params.n}")
    return binom(params.n - 1, params.k - 1) // 2


@dataclass(frozen=True)
class Exact:
    value: int


@dataclass(frozen=True)
class SumBoundRegion:
    """No per-index formula; only the aggregate bound over ``[lo, hi]`` applies."""

    lo: int
    hi: int


@dataclass(frozen=True)
class NotApplicable:
    reason: str


def _kneser_ranges(k: int, n: int) -> dict[str, int]:
    D = binom(n - 2, k - 2)
    E = binom(n - 2 - k, k - 2)
    F = binom(n - 1, k - 1)
    H = binom(n - 1 - k, k - 1)
    return {"D": D, "E": E, "F": F, "H": H, "t": F // 2}


def _first_half(k: int, n: int, i: int, r: dict[str, int]):
    D, E, F, H = r["D"], r["E"], r["F"], r["H"]
    if 1 <= i <= D - E:
        return SumBoundRegion(1, D - E)
    if D - E < i <= D:
        return Exact(2 * F - D - i)
    if D < i <= F - H:
        return Exact(F - i + (k - 1) ** 2 * binom(n - 3, k - 2))
    if F - H < i <= r["t"]:
        return Exact(F - i)
    raise AssertionError("index outside the first half")


def c_closed_form_kneser(k: int | KneserParams, n_or_i: int, i: int | None = None):
    """Closed-form ``c(i)`` of the Kneser complement for large ``n``.

    Call as ``c_closed_form_kneser(params, i)`` or ``c_closed_form_kneser(k, n, i)``.
    Returns :class:`Exact`, :class:`SumBoundRegion` (smallest indices, where
    only a summed bound is known) or :class:`NotApplicable`.  Indices beyond
    ``t = floor(C(n-1,k-1)/2)`` are filled in by conjugating the first half.
    """
    if isinstance(k, KneserParams):
        params, i = k, n_or_i
    else:
        try:
            params = KneserParams(k, n_or_i)
        except ParameterError as exc:
            return NotApplicable(str(exc))
    if i is None:
        raise ParameterError("index i is required")
    if not _large_n(params):
        return NotApplicable(f"needs k >= 2 and n >= 2k^3-2k^2+1 (k={params.k}, n={params.n})")
    k, n = params.k, params.n
    last = binom(n, k) - 1
    if not 1 <= i <= last:
        return NotApplicable(f"index {i} outside 1..{last}")
    r = _kneser_ranges(k, n)
    t = r["t"]
    if i <= t:
        return _first_half(k, n, i, r)
    # c(i) = #{j <= t : c(j) >= i} for i > t
    count = 0
    region0 = r["D"] - r["E"]
    if region0 >= 1:
        edge_value = _first_half(k, n, region0 + 1, r).value if region0 + 1 <= t else None
        if edge_value is None or edge_value < i:
            return SumBoundRegion(1, region0)
        count += region0
    for j in range(max(region0, 0) + 1, t + 1):
        if _first_half(k, n, j, r).value >= i:
            count += 1
        else:
            break
    return Exact(count)


# -- output -----------------------------------------------------------------

def write_profile(p: CommonNeighborProfile, format: str = "json") -> bytes:
    """JSON array of the values, or a two-column ``i,c_i`` CSV."""
    if format == "json":
        return (json.dumps(list(p.values)) + "\n").encode()
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "c_i"])
        w.writerows((i, x) for i, x in enumerate(p.values, start=1))
        return buf.getvalue().encode()
    raise ParameterError(f"unsupported profile format {format!r} (json or csv)")


def young_diagram(p: ProfileLike, max_width: int = 60) -> str:
    """Rows of ``#`` marks, one row per nonzero value (display only)."""
    parts = [x for x in _values(p) if x > 0]
    if parts and parts[0] > max_width:
        raise ParameterError(f"profile too wide to draw ({parts[0]} > {max_width})")
    return "\n".join("#" * x for x in parts) + ("\n" if parts else "")
