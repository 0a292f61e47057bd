"""End-to-end structure search over incidence-rich arrangements.

Given an arrangement with many incidences, find k arrangement points in
general position such that every pair is joined by an arrangement line, and
certify the result.  The search:

  1. partitions the points into balanced cells with r ~ beta * n^(2/3),
  2. picks the cell maximizing the floor-sum  sum_lines floor(|cell on line| / k),
  3. breaks each line's cell points into disjoint runs of k consecutive
     points ("segment lines"), which keeps the output local,
  4. dualizes the cell's miniature arrangement (shearing first if any line is
     vertical) and runs the exact clique search for k pairwise-crossing dual
     lines in general position,
  5. pulls the dual clique back to k cell points pairwise connected by
     arrangement lines and attaches a locality certificate: for every pair,
     the number of arrangement points strictly inside the open connecting
     segment is less than k.

Every returned certificate is re-validated from scratch with the exact
geometric predicates alone, independent of any search internals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arrangement import Arrangement, dualize, generic_shear_value
from .cliques import IntersectionGraph, build_graph, enumerate_complete_tuples, multiplicity_filter
from .geometry import Line, Point, as_rational, collinear, incident, strictly_between
from .partition import PartitionCell, PartitionResult, partition
from .roots import ceil_scaled_pow23, pow43_bounds, sqrt_bounds

logger = logging.getLogger(__name__)


class CertificateError(ValueError):
    """A certificate failed independent re-validation."""


@dataclass(frozen=True)
class PipelineConfig:
    """Search parameters.

    ``beta_k`` defaults to c/(2k); the partition parameter becomes
    r = clamp(ceil(beta_k * n^(2/3)), 1, n).  ``multiplicity_threshold``
    defaults to max(ceil(100/c), k) and bounds how many lines may pass through
    a surviving point.  Lines with fewer than ``rich_threshold_slack`` *
    sqrt(r) * k incidences are ignored when ranking cells; if that filter
    leaves every cell with floor-sum zero, ranking falls back to all lines
    (small instances never qualify as rich in the asymptotic sense).
    """

    k: int
    c: Fraction
    beta_k: Fraction | None = None
    multiplicity_threshold: int | None = None
    rich_threshold_slack: Fraction = Fraction(2)
    fallback_cells: int = 8

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(as_rational(self.c)))
        object.__setattr__(self, "rich_threshold_slack",
                           Fraction(as_rational(self.rich_threshold_slack)))
        if self.k < 3:
            raise ValueError("k must be >= 3")
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.beta_k is None:
            object.__setattr__(self, "beta_k", self.c / (2 * self.k))
        else:
            object.__setattr__(self, "beta_k", Fraction(as_rational(self.beta_k)))
        if self.beta_k <= 0:
            raise ValueError("beta_k must be positive")
        if self.multiplicity_threshold is None:
            ceil_100_over_c = -(-100 * self.c.denominator // self.c.numerator)
            object.__setattr__(self, "multiplicity_threshold",
                               max(ceil_100_over_c, self.k))
        if self.multiplicity_threshold < self.k:
            raise ValueError("multiplicity_threshold must be >= k")
        if self.rich_threshold_slack < 0:
            raise ValueError("rich_threshold_slack must be >= 0")
        if self.fallback_cells < 1:
            raise ValueError("fallback_cells must be >= 1")


@dataclass(frozen=True)
class RichCellReport:
    cell_index: int
    floor_sum: int
    per_line_counts: Mapping[int, int]  # line index -> |cell points on line|, nonzero only


@dataclass(frozen=True)
class SegmentLine:
    """k consecutive cell points along one parent line."""

    parent_line: int
    point_indices: tuple[int, ...]
    endpoints: tuple[Point, Point]


@dataclass(frozen=True)
class CompleteTupleCertificate:
    """k points in general position, pairwise joined by arrangement lines.

    ``connecting_lines`` maps each unordered point-index pair to an index of
    an arrangement line through both.  ``locality`` maps the same pairs to the
    number of arrangement points strictly inside the open segment between
    them; every value is below k.
    """

    k: int
    point_indices: tuple[int, ...]
    connecting_lines: Mapping[tuple[int, int], int]
    general_position: bool
    locality: Mapping[tuple[int, int], int]
    cell_index: int
    r: int


@dataclass(frozen=True)
class CellAttempt:
    cell_index: int
    floor_sum: int
    pairable_lines: int
    segment_count: int
    dual_edges: int
    certified: bool


@dataclass(frozen=True)
class NotFoundReport:
    """All intermediate statistics of an unsuccessful search.  Data, not failure."""

    r: int
    t: int
    n_points: int
    n_lines: int
    n_incidences: int
    density_ok: bool
    accounting_mode: str
    attempts: tuple[CellAttempt, ...]


def _cell_line_counts(arr: Arrangement, pr: PartitionResult) -> list[dict[int, int]]:
    """counts[cell][line] = |cell points on line|, via one pass over incidences."""
    cell_of: dict[int, int] = {}
    for ci, cell in enumerate(pr.cells):
        for pi in cell.point_indices:
            cell_of[pi] = ci
    counts: list[dict[int, int]] = [dict() for _ in pr.cells]
    for pi, li in arr.incidences:
        bucket = counts[cell_of[pi]]
        bucket[li] = bucket.get(li, 0) + 1
    return counts


def _floor_sums(counts: list[dict[int, int]], k: int,
                eligible: set[int] | None) -> list[int]:
    sums = []
    for bucket in counts:
        total = 0
        for li, cnt in bucket.items():
            if eligible is None or li in eligible:
                total += cnt // k
        sums.append(total)
    return sums


def select_rich_cell(arr: Arrangement, pr: PartitionResult, k: int,
                     eligible_lines: set[int] | None = None) -> RichCellReport:
    """The cell maximizing the per-line floor-sum, ties to the lowest index.

    The selected cell's floor-sum is at least the average over all cells;
    this pigeonhole fact is asserted exactly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = _cell_line_counts(arr, pr)
    sums = _floor_sums(counts, k, eligible_lines)
    if not sums:
        return RichCellReport(0, 0, {})
    best = max(range(len(sums)), key=lambda ci: (sums[ci], -ci))
    assert sums[best] * len(sums) >= sum(sums), "pigeonhole violated"
    per_line = {li: cnt for li, cnt in sorted(counts[best].items())
                if (eligible_lines is None or li in eligible_lines) and cnt > 0}
    return RichCellReport(best, sums[best], per_line)


def _cell_points_by_line(arr: Arrangement, cell: PartitionCell) -> dict[int, list[int]]:
    """line index -> cell points on it (>= 2 of them), ordered along the line."""
    cellset = set(cell.point_indices)
    out: dict[int, list[int]] = {}
    lines_seen: set[int] = set()
    for pi in cell.point_indices:
        lines_seen.update(arr.lines_through_point(pi))
    for li in sorted(lines_seen):
        members = [pi for pi in arr.points_on_line(li) if pi in cellset]
        if len(members) >= 2:
            members.sort(key=lambda pi: (arr.points[pi].x, arr.points[pi].y))
            out[li] = members
    return out


def break_into_segments(arr: Arrangement, cell: PartitionCell, k: int) -> list[SegmentLine]:
    """Disjoint runs of exactly k consecutive cell points per line.

    A line with s = floor(|cell points on line| / k) >= 1 yields s segments;
    the trailing remainder of fewer than k points is dropped.  Segments from
    one parent line share no points and appear in order along the line.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    segments: list[SegmentLine] = []
    for li, members in _cell_points_by_line(arr, cell).items():
        s = len(members) // k
        for g in range(s):
            group = tuple(members[g * k:(g + 1) * k])
            endpoints = (arr.points[group[0]], arr.points[group[-1]])
            segments.append(SegmentLine(li, group, endpoints))
    return segments


def locality_counts(arr: Arrangement, points: list[Point]) -> dict[tuple[int, int], int]:
    """For each pair (by list position), arrangement points strictly between them."""
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    out: dict[tuple[int, int], int] = {}
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            between = sum(1 for q in arr.points
                          if q != points[i] and q != points[j]
                          and strictly_between(points[i], points[j], q))
            out[(i, j)] = between
    return out


def revalidate_certificate(arr: Arrangement, cert: CompleteTupleCertificate) -> None:
    """Re-check a certificate using only the exact geometric predicates.

    Independent of the search: membership, incidence, general position and
    locality are all recomputed from the arrangement.  Raises
    CertificateError on any mismatch.
    """
    k = cert.k
    idxs = cert.point_indices
    if len(idxs) != k or len(set(idxs)) != k:
        raise CertificateError("point indices not k distinct values")
    if not all(0 <= i < arr.n_points for i in idxs):
        raise CertificateError("point index out of range")
    pts = [arr.points[i] for i in idxs]
    expected_pairs = {(idxs[a], idxs[b]) if idxs[a] < idxs[b] else (idxs[b], idxs[a])
                      for a in range(k) for b in range(a + 1, k)}
    if set(cert.connecting_lines) != expected_pairs:
        raise CertificateError("connecting lines do not cover exactly all pairs")
    for (pi, pj), li in cert.connecting_lines.items():
        if not 0 <= li < arr.n_lines:
            raise CertificateError("line index out of range")
        ln = arr.lines[li]
        if not (incident(arr.points[pi], ln) and incident(arr.points[pj], ln)):
            raise CertificateError(f"pair {(pi, pj)} not incident to line {li}")
    for a in range(k):
        for b in range(a + 1, k):
            for d in range(b + 1, k):
                if collinear(pts[a], pts[b], pts[d]):
                    raise CertificateError("three certificate points are collinear")
    if set(cert.locality) != expected_pairs:
        raise CertificateError("locality map does not cover exactly all pairs")
    for (pi, pj), reported in cert.locality.items():
        p, q = arr.points[pi], arr.points[pj]
        actual = sum(1 for z in arr.points
                     if z != p and z != q and strictly_between(p, q, z))
        if actual != reported:
            raise CertificateError(f"locality of {(pi, pj)} is {actual}, reported {reported}")
        if reported >= k:
            raise CertificateError(f"locality of {(pi, pj)} not below k")


def _attempt_cell(arr: Arrangement, cell: PartitionCell, cell_index: int,
                  floor_sum: int, cfg: PipelineConfig, r: int
                  ) -> tuple[CompleteTupleCertificate | None, CellAttempt]:
    """Run the dual clique search inside one cell."""
    by_line = _cell_points_by_line(arr, cell)
    # Segment bookkeeping: on lines holding >= k cell points, only pairs
    # inside one run of k consecutive points may be used, which is what keeps
    # the final tuple local.  Lines with 2..k-1 cell points stay usable whole.
    group_of: dict[int, dict[int, int]] = {}
    segment_count = 0
    for li, members in by_line.items():
        if len(members) >= cfg.k:
            s = len(members) // cfg.k
            groups: dict[int, int] = {}
            for g in range(s):
                for pi in members[g * cfg.k:(g + 1) * cfg.k]:
                    groups[pi] = g
            group_of[li] = groups
            segment_count += s
    sub_line_idx = sorted(by_line)
    miss = CellAttempt(cell_index, floor_sum, len(sub_line_idx), segment_count, 0, False)
    if not sub_line_idx:
        return None, miss
    sub_point_idx = sorted(cell.point_indices)
    sub_lines = [arr.lines[li] for li in sub_line_idx]
    sub_points = [arr.points[pi] for pi in sub_point_idx]
    s_shear = generic_shear_value(sub_lines)
    if s_shear:
        sub_points = [Point(p.x + s_shear * p.y, p.y) for p in sub_points]
        sub_lines = [Line.from_coefficients(l.a, l.b - l.a * s_shear, l.c) for l in sub_lines]
    dual = dualize(Arrangement(sub_points, sub_lines))
    kept = multiplicity_filter(dual, cfg.multiplicity_threshold)
    g = build_graph(dual, kept)

    edges: dict[tuple[int, int], int] = {}
    for (u, v), w in g.edges.items():
        li = sub_line_idx[w]
        groups = group_of.get(li)
        if groups is not None:
            gu = groups.get(sub_point_idx[u])
            gv = groups.get(sub_point_idx[v])
            if gu is None or gu != gv:
                continue
        edges[(u, v)] = w
    g_local = IntersectionGraph(dual.n_lines, edges, g.point_multiplicity, g.kept_points)

    found = enumerate_complete_tuples(g_local, dual, cfg.k, max_results=1)
    attempt = CellAttempt(cell_index, floor_sum, len(sub_line_idx), segment_count,
                          len(edges), bool(found))
    if not found:
        return None, attempt
    tup = found[0]
    point_indices = tuple(sorted(sub_point_idx[pos] for pos in tup.line_indices))
    connecting: dict[tuple[int, int], int] = {}
    for (u, v), w in tup.witness_points.items():
        pu, pv = sub_point_idx[u], sub_point_idx[v]
        pair = (pu, pv) if pu < pv else (pv, pu)
        connecting[pair] = sub_line_idx[w]
    by_position = locality_counts(arr, [arr.points[i] for i in point_indices])
    locality = {(point_indices[i], point_indices[j]): cnt
                for (i, j), cnt in by_position.items()}
    cert = CompleteTupleCertificate(cfg.k, point_indices, connecting, True,
                                    locality, cell_index, r)
    revalidate_certificate(arr, cert)
    return cert, attempt


def find_complete_tuple(arr: Arrangement,
                        cfg: PipelineConfig) -> CompleteTupleCertificate | NotFoundReport:
    """Search the arrangement for a certified complete k-tuple of points.

    Deterministic for a fixed configuration.  When the top-ranked cell fails,
    up to ``cfg.fallback_cells`` cells are tried in decreasing floor-sum
    order; a NotFoundReport with full per-cell statistics is returned if all
    of them fail.

    The search is sound, not exhaustive: every certificate re-validates, but
    a tuple whose connecting pairs straddle cell boundaries or the k-point
    segment runs is out of the procedure's reach (the segment restriction is
    what guarantees the locality bound), so NotFound does not prove the
    arrangement contains no such tuple.
    """
    n = arr.n_points
    inc = arr.n_incidences
    density_ok = Fraction(inc)**3 >= cfg.c**3 * Fraction(n)**4
    if not density_ok:
        logger.warning("incidence count %d below c * n^(4/3) for c=%s, n=%d; searching anyway",
                       inc, cfg.c, n)
    r = max(1, min(n, ceil_scaled_pow23(n, cfg.beta_k))) if n else 1
    pr = partition(arr.points, r)
    counts = _cell_line_counts(arr, pr)

    # Slack filter: a line is "rich" when inc(line) >= slack * sqrt(r) * k,
    # compared exactly via squares.
    slack = cfg.rich_threshold_slack
    eligible = {li for li in range(arr.n_lines)
                if (len(arr.points_on_line(li)) * slack.denominator)**2
                >= (slack.numerator * cfg.k)**2 * r}
    mode = "rich-lines"
    sums = _floor_sums(counts, cfg.k, eligible)
    if not sums or max(sums, default=0) == 0 or not eligible:
        eligible = None
        mode = "all-lines"
        sums = _floor_sums(counts, cfg.k, None)

    order = sorted(range(pr.t), key=lambda ci: (-sums[ci], ci))
    attempts: list[CellAttempt] = []
    for ci in order[:cfg.fallback_cells]:
        cert, attempt = _attempt_cell(arr, pr.cells[ci], ci, sums[ci], cfg, r)
        attempts.append(attempt)
        if cert is not None:
            return cert
    return NotFoundReport(r, pr.t, n, arr.n_lines, inc, density_ok, mode, tuple(attempts))


@dataclass(frozen=True)
class InequalityAudit:
    """Exact two-sided evaluation of the floor-sum incidence inequality.

    The claim audited is  (c/k) * n^(4/3) <= floor_sum_total + |L| * sqrt(r).
    Both irrational quantities are bracketed by exact rationals, and the
    status is only "holds" / "fails" when the brackets decide it; rounding can
    therefore never report a false verdict in either direction.
    """

    n_points: int
    n_lines: int
    k: int
    c: Fraction
    r: int
    floor_sum_total: int
    lhs_lower: Fraction
    lhs_upper: Fraction
    error_term_lower: Fraction
    error_term_upper: Fraction
    status: str  # "holds" | "fails" | "indeterminate"


def inequality_audit(arr: Arrangement, pr: PartitionResult, cfg: PipelineConfig) -> InequalityAudit:
    counts = _cell_line_counts(arr, pr)
    floor_sum_total = sum(_floor_sums(counts, cfg.k, None))
    r = max(1, pr.r_requested)
    p43_lo, p43_hi = pow43_bounds(arr.n_points)
    lhs_lo = cfg.c / cfg.k * p43_lo
    lhs_hi = cfg.c / cfg.k * p43_hi
    sq_lo, sq_hi = sqrt_bounds(r)
    err_lo = arr.n_lines * sq_lo
    err_hi = arr.n_lines * sq_hi
    if lhs_hi <= floor_sum_total + err_lo:
        status = "holds"
    elif lhs_lo > floor_sum_total + err_hi:
        status = "fails"
    else:
        status = "indeterminate"
    return InequalityAudit(arr.n_points, arr.n_lines, cfg.k, cfg.c, r,
                           floor_sum_total, lhs_lo, lhs_hi, err_lo, err_hi, status)
