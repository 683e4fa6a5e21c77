"""
Intersection bounds and the triple lemma machinery

Closed-form maximum crossing counts for every parity and simplicity
class, the E_P(e) triple scan, the +/- sign assignment on Q's edges
and the audit that walks the odd-odd upper-bound chain on a concrete
pair of polygons.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from ..core.errors import InvalidParams, LemmaViolation, PreconditionFailed
from ..geometry.polygon import (
    CrossingReport,
    EdgeRef,
    Polygon,
    PolygonTag,
    crossing_report,
    is_simple,
    order_along_q_edges,
)
from ..utils.logger import get_logger

logger = get_logger(__name__)


class CaseTag(Enum):
    EVEN_EVEN = "EvenEven"
    EVEN_ODD = "EvenOdd"
    ODD_ODD_GENERAL = "OddOddGeneral"
    ODD_ODD_SIMPLE = "OddOddSimple"


@dataclass(frozen=True)
class BoundSpec:
    p: int
    q: int
    simple: bool
    value: int
    case_tag: CaseTag

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "simple": self.simple,
            "value": self.value,
            "case": self.case_tag.value,
        }


def max_intersections(p: int, q: int, simple: bool) -> BoundSpec:
    """Maximum number of crossings between a p-gon and a q-gon"""
    if p < 3 or q < 3:
        raise InvalidParams(f"polygons need at least 3 vertices, got p={p}, q={q}")

    if p % 2 == 0 and q % 2 == 0:
        return BoundSpec(p, q, simple, p * q, CaseTag.EVEN_EVEN)
    if p % 2 == 0 or q % 2 == 0:
        even, odd = (p, q) if p % 2 == 0 else (q, p)
        return BoundSpec(p, q, simple, even * (odd - 1), CaseTag.EVEN_ODD)
    if simple:
        return BoundSpec(p, q, simple, (p - 1) * (q - 1) + 2, CaseTag.ODD_ODD_SIMPLE)
    return BoundSpec(p, q, simple, p * q - max(p, q), CaseTag.ODD_ODD_GENERAL)


def parity_bound_per_edge(n: int) -> int:
    """
    Most edges of an n-gon one segment can cross

    The closed n-gon meets the segment's supporting line an even number
    of times, so for odd n one edge is always missed.
    """
    return n - 1 if n % 2 else n


@dataclass(frozen=True)
class TripleWitness:
    edges: Tuple[EdgeRef, EdgeRef, EdgeRef]
    common: FrozenSet[EdgeRef]
    size: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edges": [str(e) for e in self.edges],
            "common": sorted(str(e) for e in self.common),
            "size": self.size,
        }


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    def flipped(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class Relation(Enum):
    SAME = "same"
    OPPOSITE = "opposite"


@dataclass(frozen=True)
class SignConflict:
    """A cycle of q-edges whose pairwise relations admit no +/- labelling"""

    cycle: Tuple[EdgeRef, ...]
    relations: Tuple[Relation, ...]  # relations[k] links cycle[k] and cycle[k + 1 mod len]

    def describe(self) -> str:
        parts = []
        for k, edge in enumerate(self.cycle):
            parts.append(f"{edge} -{self.relations[k].value}-")
        return " ".join(parts) + f" {self.cycle[0]}"


@dataclass
class SignAssignment:
    signs: Dict[EdgeRef, Sign]
    anchor: EdgeRef
    consistent: bool
    witness: Optional[SignConflict] = None
    non_monotone: List[Tuple[EdgeRef, EdgeRef]] = field(default_factory=list)
    constraints: Dict[Tuple[int, int], Relation] = field(default_factory=dict)

    def sign_of(self, index: int) -> Sign:
        return self.signs[EdgeRef(PolygonTag.Q, index)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "anchor": str(self.anchor),
            "consistent": self.consistent,
            "signs": {str(e): s.value for e, s in sorted(self.signs.items())},
            "witness": self.witness.describe() if self.witness else None,
            "non_monotone": [[str(a), str(b)] for a, b in self.non_monotone],
        }


def _require_simple_odd(p: Polygon, q: Polygon):
    if len(p) % 2 == 0 or len(q) % 2 == 0:
        raise PreconditionFailed(f"both polygons must have an odd vertex count, got {len(p)} and {len(q)}")
    if not is_simple(p) or not is_simple(q):
        raise PreconditionFailed("both polygons must be simple")


def _crossing_sets(report: CrossingReport, q: Polygon) -> List[FrozenSet[EdgeRef]]:
    table = report.edges_crossing_map(len(q))
    return [frozenset(table[j]) for j in range(len(q))]


def _scan_triples(sets: List[FrozenSet[EdgeRef]]) -> Optional[TripleWitness]:
    best: Optional[TripleWitness] = None
    for i, j, k in combinations(range(len(sets)), 3):
        common = sets[i] & sets[j] & sets[k]
        if best is None or len(common) < best.size:
            refs = (EdgeRef(PolygonTag.Q, i), EdgeRef(PolygonTag.Q, j), EdgeRef(PolygonTag.Q, k))
            best = TripleWitness(refs, common, len(common))
            if best.size == 0:
                break
    return best


def find_triple(p: Polygon, q: Polygon) -> TripleWitness:
    """
    Three edges of q crossed together by at most one edge of p

    Triples are scanned in lexicographic order; the first triple of
    minimum size wins.
    """
    _require_simple_odd(p, q)
    report = crossing_report(p, q)
    witness = _scan_triples(_crossing_sets(report, q))
    if witness is None or witness.size > 1:
        size = witness.size if witness else None
        raise LemmaViolation(f"every q-edge triple shares at least 2 crossing p-edges (min {size})", witness)
    logger.debug(f"triple {[str(e) for e in witness.edges]} shares {witness.size} p-edge(s)")
    return witness


def pairwise_intersection_table(p: Polygon, q: Polygon) -> np.ndarray:
    """Symmetric q×q matrix of |E_P(e_i) ∩ E_P(e_j)|; the diagonal holds |E_P(e_i)|"""
    sets = _crossing_sets(crossing_report(p, q), q)
    n = len(q)
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            table[i, j] = table[j, i] = len(sets[i] & sets[j])
    return table


def _order_constraints(p: Polygon, q: Polygon, report: CrossingReport):
    sets = _crossing_sets(report, q)
    orders = order_along_q_edges(p, q, report)
    constraints: Dict[Tuple[int, int], Relation] = {}
    non_monotone: List[Tuple[int, int]] = []
    for i, j in combinations(range(len(q)), 2):
        common = sets[i] & sets[j]
        if len(common) < 2:
            continue
        along_i = [e for e in orders[i] if e in common]
        along_j = [e for e in orders[j] if e in common]
        if along_i == along_j:
            constraints[(i, j)] = Relation.SAME
        elif along_i == along_j[::-1]:
            constraints[(i, j)] = Relation.OPPOSITE
        else:
            non_monotone.append((i, j))
    return constraints, non_monotone


def _conflict_cycle(u: int, v: int, parent: Dict[int, Optional[int]], relation_of) -> SignConflict:
    def path_to_root(node: int) -> List[int]:
        path = [node]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path

    up, vp = path_to_root(u), path_to_root(v)
    on_v_path = set(vp)
    lca = next(node for node in up if node in on_v_path)
    # lca ... u, then v ... back up to just below lca
    cycle = up[: up.index(lca) + 1][::-1] + vp[: vp.index(lca)]
    relations = tuple(relation_of(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle)))
    return SignConflict(tuple(EdgeRef(PolygonTag.Q, i) for i in cycle), relations)


def sign_assignment(p: Polygon, q: Polygon, anchor: EdgeRef) -> SignAssignment:
    """
    Label q's edges +/- from the order in which shared crossing p-edges
    meet them

    Two q-edges sharing at least two crossing p-edges get the same sign
    when those p-edges cross both in the same order, opposite signs when
    the order is reversed. Labels propagate from the anchor (Plus) by
    breadth-first 2-colouring; components the anchor cannot reach start
    from their lowest-index edge.
    """
    _require_simple_odd(p, q)
    if anchor.polygon_tag is not PolygonTag.Q or not 0 <= anchor.index < len(q):
        raise PreconditionFailed(f"anchor must be an edge of Q, got {anchor}")

    report = crossing_report(p, q)
    constraints, non_monotone = _order_constraints(p, q, report)

    neighbours: Dict[int, List[Tuple[int, Relation]]] = {j: [] for j in range(len(q))}
    for (i, j), relation in constraints.items():
        neighbours[i].append((j, relation))
        neighbours[j].append((i, relation))

    def relation_of(a: int, b: int) -> Relation:
        return constraints[(min(a, b), max(a, b))]

    signs: Dict[int, Sign] = {}
    parent: Dict[int, Optional[int]] = {}
    witness: Optional[SignConflict] = None

    for root in [anchor.index] + list(range(len(q))):
        if root in signs:
            continue
        signs[root] = Sign.PLUS
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, relation in sorted(neighbours[u], key=lambda item: item[0]):
                expected = signs[u] if relation is Relation.SAME else signs[u].flipped()
                if v not in signs:
                    signs[v] = expected
                    parent[v] = u
                    queue.append(v)
                elif signs[v] is not expected and witness is None:
                    witness = _conflict_cycle(u, v, parent, relation_of)

    consistent = witness is None and not non_monotone
    if not consistent:
        logger.debug(f"sign assignment inconsistent: {witness.describe() if witness else non_monotone}")

    return SignAssignment(
        signs={EdgeRef(PolygonTag.Q, j): s for j, s in sorted(signs.items())},
        anchor=anchor,
        consistent=consistent,
        witness=witness,
        non_monotone=[(EdgeRef(PolygonTag.Q, i), EdgeRef(PolygonTag.Q, j)) for i, j in non_monotone],
        constraints=constraints,
    )


@dataclass
class BoundAudit:
    """Step-by-step record of the odd-odd upper-bound chain on one pair"""

    p: int
    q: int
    triple: Optional[TripleWitness]
    triple_crossings: int
    hits_per_p_edge: List[int]
    max_remaining_edge_crossings: int
    total: int
    slack_bound: int
    bound: int
    findings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.findings

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "triple": self.triple.to_dict() if self.triple else None,
            "triple_crossings": self.triple_crossings,
            "hits_per_p_edge": self.hits_per_p_edge,
            "max_remaining_edge_crossings": self.max_remaining_edge_crossings,
            "total": self.total,
            "slack_bound": self.slack_bound,
            "bound": self.bound,
            "findings": self.findings,
            "passed": self.passed,
        }


def audit_bound_chain(p: Polygon, q: Polygon) -> BoundAudit:
    """Check every step of the (p−1)(q−1)+2 argument on a concrete simple odd-odd pair"""
    _require_simple_odd(p, q)
    report = crossing_report(p, q)
    sets = _crossing_sets(report, q)
    np_, nq = len(p), len(q)
    slack_bound = (np_ - 1) * (nq - 1) + 3
    bound = (np_ - 1) * (nq - 1) + 2
    findings: List[str] = []

    triple = _scan_triples(sets)
    if triple is None or triple.size > 1:
        findings.append(f"no q-edge triple with at most one common p-edge (min {triple.size if triple else None})")

    hits = [0] * np_
    triple_indices = {e.index for e in triple.edges} if triple else set()
    for j in triple_indices:
        for ref in sets[j]:
            hits[ref.index] += 1
    triple_crossings = sum(hits)
    if sum(1 for h in hits if h == 3) > 1:
        findings.append("more than one p-edge crosses all three triple edges")
    if triple and triple_crossings > 2 * np_ + 1:
        findings.append(f"triple edges carry {triple_crossings} crossings, above 2p+1 = {2 * np_ + 1}")

    remaining = [len(sets[j]) for j in range(nq) if j not in triple_indices]
    max_remaining = max(remaining, default=0)
    if max_remaining > parity_bound_per_edge(np_):
        findings.append(f"a q-edge crosses {max_remaining} p-edges, above {parity_bound_per_edge(np_)}")

    if report.total % 2:
        findings.append(f"odd crossing total {report.total}")
    if report.total > slack_bound:
        findings.append(f"total {report.total} exceeds (p-1)(q-1)+3 = {slack_bound}")
    elif report.total > bound:
        findings.append(f"total {report.total} exceeds (p-1)(q-1)+2 = {bound}")

    for finding in findings:
        logger.warning(f"bound audit ({np_}, {nq}): {finding}")

    return BoundAudit(
        p=np_,
        q=nq,
        triple=triple,
        triple_crossings=triple_crossings,
        hits_per_p_edge=hits,
        max_remaining_edge_crossings=max_remaining,
        total=report.total,
        slack_bound=slack_bound,
        bound=bound,
        findings=findings,
    )
