"""Closed-form boxicity bounds and their aggregation into a report.

All arithmetic is exact (ints and :class:`fractions.Fraction`); ceilings are
taken only when a rational bound is turned into an integer boxicity bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any

from .errors import FormulaNotApplicable, InconsistencyError, ParameterError
from .graphcore import Graph, KneserParams, as_params, binom, complement, line_graph, iter_bits
from .profile import DEFAULT_PROFILE_CAP, CommonNeighborProfile, profile


@dataclass(frozen=True)
class BoundEntry:
    kind: str  # "lower", "upper" or "exact"
    value: int
    source: str
    applicable: bool = True

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "source": self.source,
                "applicable": self.applicable}


@dataclass
class BoundReport:
    input: dict[str, Any]
    bounds: list[BoundEntry] = field(default_factory=list)

    @property
    def lower_bounds(self) -> list[BoundEntry]:
        return [b for b in self.bounds if b.kind == "lower"]

    @property
    def upper_bounds(self) -> list[BoundEntry]:
        return [b for b in self.bounds if b.kind == "upper"]

    @property
    def exact(self) -> int | None:
        vals = {b.value for b in self.bounds if b.kind == "exact" and b.applicable}
        if len(vals) > 1:
            raise InconsistencyError(f"conflicting exact values {sorted(vals)}")
        return vals.pop() if vals else None

    @property
    def best_lower(self) -> int:
        return max((b.value for b in self.lower_bounds if b.applicable), default=0)

    @property
    def best_upper(self) -> int | None:
        return min((b.value for b in self.upper_bounds if b.applicable), default=None)

    def check(self) -> BoundReport:
        """Raise if the collected bounds contradict each other."""
        lo, hi, ex = self.best_lower, self.best_upper, self.exact
        if hi is not None and lo > hi:
            raise InconsistencyError(f"best lower bound {lo} exceeds best upper bound {hi}")
        if ex is not None and (ex < lo or (hi is not None and ex > hi)):
            raise InconsistencyError(f"exact value {ex} outside [{lo}, {hi}]")
        return self

    def to_dict(self) -> dict:
        out = {"input": self.input, "bounds": [b.to_dict() for b in self.bounds],
               "best_lower": self.best_lower, "best_upper": self.best_upper}
        if self.exact is not None:
            out["exact"] = self.exact
        return out


def _lower(value, source: str) -> BoundEntry:
    v = ceil(value)
    return BoundEntry("lower", v, source, v >= 1)


# -- individual bounds ----------------------------------------------------------

def acs_lower_bound(g: Graph, p: CommonNeighborProfile) -> Fraction:
    """``|E(g^c)| / sum_i c(i, g^c)``; its ceiling bounds the boxicity of ``g`` from below.

    ``p`` must be the complete profile of ``complement(g)``.
    """
    if g.is_complete():
        raise FormulaNotApplicable("complete graph: boxicity is 0")
    if not p.complete:
        raise ParameterError("ratio bound needs a complete profile")
    comp = complement(g)
    if p.graph_id and p.graph_id != comp.sha:
        raise ParameterError("profile does not belong to the complement of this graph")
    total = p.total
    if total == 0:
        raise InconsistencyError("non-complete graph with an all-zero complement profile")
    return Fraction(comp.num_edges, total)


def kneser_upper_bound(k: int | KneserParams, n: int | None = None) -> int:
    params = as_params(k, n)
    if params.k < 2 or params.n < 2 * params.k + 1:
        raise FormulaNotApplicable(f"needs k >= 2 and n >= 2k+1, got k={params.k}, n={params.n}")
    return params.n - 2


def kneser_lower_bound_closed(k: int | KneserParams, n: int | None = None) -> int:
    """``n - (13k^2 - 11k + 16)/2`` for ``n >= 2k^3 - 2k^2 + 1`` (may be vacuous)."""
    params = as_params(k, n)
    k, n = params.k, params.n
    if k < 2 or n < 2 * k**3 - 2 * k**2 + 1:
        raise FormulaNotApplicable(f"needs k >= 2 and n >= 2k^3-2k^2+1, got k={k}, n={n}")
    num = 13 * k * k - 11 * k + 16
    assert num % 2 == 0
    return n - num // 2


def c_sum_upper_linegraph(delta: int) -> int:
    """Upper bound on the profile total of a line graph whose root has max degree ``delta``."""
    if delta < 3:
        raise FormulaNotApplicable(f"needs max degree >= 3, got {delta}")
    if delta == 3:
        return 12
    if delta == 4:
        return 16
    return delta * (delta + 3) // 2


def kneser2_range(n: int) -> tuple[int, int]:
    if n < 5:
        raise FormulaNotApplicable(f"needs n >= 5, got {n}")
    return n - 3, n - 2


def poset_remark_bounds(k: int | KneserParams, n: int | None = None) -> list[Fraction]:
    """Lower bounds obtained through the extended double cover and poset dimension."""
    params = as_params(k, n)
    k, n = params.k, params.n
    if k < 2 or n < 2 * k + 1:
        raise FormulaNotApplicable(f"needs k >= 2 and n >= 2k+1, got k={k}, n={n}")
    if n <= 3 * k + 1:
        return [Fraction(n - 2 * k - 1, 2)]
    return [Fraction(n - k - 4, 2)]


def range0_sum_bound(k: int | KneserParams, n: int | None = None) -> int:
    """``k^2 C(n-3,k-3) C(n-1,k-1)``: caps the profile total over the smallest indices."""
    params = as_params(k, n)
    k, n = params.k, params.n
    if k < 2 or n < 2 * k**3 - 2 * k**2 + 1:
        raise FormulaNotApplicable(f"needs k >= 2 and n >= 2k^3-2k^2+1, got k={k}, n={n}")
    return k * k * binom(n - 3, k - 3) * binom(n - 1, k - 1)


def _components(g: Graph) -> list[int]:
    seen = 0
    comps = []
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.rows[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def linegraph_complement_ratio(num_edges_h: int, delta: int) -> Fraction:
    """``|E(H)| / c_sum_upper_linegraph(delta)`` for the complement of ``H = L(G)``."""
    return Fraction(num_edges_h, c_sum_upper_linegraph(delta))


def linegraph_complement_bounds(g: Graph) -> BoundReport:
    """Bounds on the boxicity of the complement of ``line_graph(g)``."""
    h = line_graph(g)
    delta = g.max_degree
    report = BoundReport({"linegraph_complement_of": g.sha, "n": g.n, "max_degree": delta})
    if delta >= 3:
        report.bounds.append(_lower(linegraph_complement_ratio(h.num_edges, delta),
                                    "linegraph-complement-ratio"))
        report.bounds.append(BoundEntry("upper", g.n - 2, "kneser2-induced-subgraph"))
    else:
        # paths and cycles: component H_i contributes ceil(|E(H_i)|/3), except
        # that a 4-cycle contributes 1 (its complement 2K2 is an interval graph)
        value = 0
        for comp in _components(h):
            m = sum((h.rows[v] & comp).bit_count() for v in iter_bits(comp)) // 2
            is_c4 = comp.bit_count() == 4 and m == 4
            value += 1 if is_c4 else -(-m // 3)
        report.bounds.append(BoundEntry("lower", value, "path-cycle-components", value >= 1))
        report.bounds.append(BoundEntry("upper", value, "path-cycle-components"))
        report.bounds.append(BoundEntry("exact", value, "path-cycle-components"))
    return report.check()


# -- aggregation ----------------------------------------------------------------

def _kneser_entries(params: KneserParams) -> list[BoundEntry]:
    k, n = params.k, params.n
    out = []
    if k == 1:
        return [BoundEntry("exact", 0, "complete-graph")]
    if n >= 2 * k + 1:
        out.append(BoundEntry("upper", kneser_upper_bound(params), "explicit-interval-cover"))
    if k == 2 and n >= 5:
        lo, _ = kneser2_range(n)
        out.append(_lower(linegraph_complement_ratio(n * binom(n - 1, 2), n - 1),
                          "linegraph-complement-ratio"))
        out.append(BoundEntry("lower", lo, "kneser2-range"))
    if n >= 2 * k**3 - 2 * k**2 + 1:
        out.append(_lower(kneser_lower_bound_closed(params), "kneser-large-n-closed-form"))
    if n >= 2 * k + 1:
        out.append(_lower(poset_remark_bounds(params)[0], "extended-double-cover-poset"))
    if n == 2 * k:
        # perfect matching: an interval graph with non-edges
        out.append(BoundEntry("exact", 1, "perfect-matching"))
    return out


def bound_report(subject: Graph | KneserParams, *, acs: bool = False, exact: bool = False,
                 budget=None, profile_cap: int = DEFAULT_PROFILE_CAP, jobs: int = 1) -> BoundReport:
    """Every applicable bound for a graph or a Kneser parameter pair.

    ``acs`` adds the profile ratio bound (brute-force profile of the
    complement); ``exact`` runs the exact search within ``budget``.
    """
    from .exactbox import ExactBoxicity, SearchBudget, exact_boxicity
    from .graphcore import kneser_graph

    if isinstance(subject, KneserParams):
        report = BoundReport({"k": subject.k, "n": subject.n})
        report.bounds.extend(_kneser_entries(subject))
        graph = None
        if (acs or exact) and subject.k >= 2:
            graph = kneser_graph(subject)
    else:
        graph = subject
        report = BoundReport({"graph_sha": graph.sha, "n": graph.n})
        if graph.is_complete():
            report.bounds.append(BoundEntry("exact", 0, "complete-graph"))
            return report.check()
    if graph is not None and acs and not graph.is_complete():
        p = profile(complement(graph), cap=profile_cap, jobs=jobs)
        report.bounds.append(_lower(acs_lower_bound(graph, p), "common-neighbor-ratio"))
    if graph is not None and exact:
        result = exact_boxicity(graph, budget or SearchBudget(), jobs=jobs)
        if isinstance(result, ExactBoxicity):
            report.bounds.append(BoundEntry("exact", result.value, "exact-search"))
        else:
            report.bounds.append(BoundEntry("lower", result.value, "exact-search-refutation",
                                            result.value >= 1))
    return report.check()


def write_bound_report(report: BoundReport) -> bytes:
    return (json.dumps(report.to_dict()) + "\n").encode()
