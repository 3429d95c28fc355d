"""Coarse hyperbolic geometry on finite unweighted graphs.

Distances are integers, Gromov products half-integers, so everything here is
exact.  Rays are vertex sequences ``v_0, ..., v_T`` with ``d(v_0, v_t) = t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx
import numpy as np


class UnknownVertexError(KeyError):
    pass


class RayError(ValueError):
    pass


class FiniteGraphSpace:
    """A connected finite graph on vertices ``0..n-1`` with its path metric."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError((u, v))
            g.add_edge(int(u), int(v))
        if n == 0 or not nx.is_connected(g):
            raise ValueError("graph must be nonempty and connected")
        self.n = n
        self.graph = g
        dist = np.zeros((n, n), dtype=np.int64)
        for src, lengths in nx.all_pairs_shortest_path_length(g):
            for dst, d in lengths.items():
                dist[src, dst] = d
        dist.setflags(write=False)
        self.dist = dist

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "FiniteGraphSpace":
        g = nx.convert_node_labels_to_integers(g)
        return cls(g.number_of_nodes(), g.edges())

    @property
    def edges(self):
        return sorted(tuple(sorted(e)) for e in self.graph.edges())

    def d(self, x, y) -> int:
        self._check(x, y)
        return int(self.dist[x, y])

    def _check(self, *vs):
        for v in vs:
            if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
                raise UnknownVertexError(v)

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


def gromov_product(space: FiniteGraphSpace, y, z, x) -> Fraction:
    """(y, z)_x = (d(y, x) + d(z, x) - d(y, z)) / 2."""
    return Fraction(space.d(y, x) + space.d(z, x) - space.d(y, z), 2)


def _doubled_products(dist, w):
    # 2 (x, y)_w for all x, y
    row = dist[w]
    return row[:, None] + row[None, :] - dist


@dataclass
class DeltaResult:
    delta: Fraction
    witness: Optional[tuple] = None


def four_point(space: FiniteGraphSpace) -> DeltaResult:
    """Smallest delta with (x,z)_w >= min((x,y)_w, (y,z)_w) - delta for all x, y, z, w.

    The witness ``(x, y, z, w)`` is the first one found scanning ``w`` outermost.
    """
    best, witness = 0, None
    for w in range(space.n):
        gp = _doubled_products(space.dist, w)
        # gap[x, y, z] = min(gp[x, y], gp[y, z]) - gp[x, z]
        gap = np.minimum(gp[:, :, None], gp[None, :, :]) - gp[:, None, :]
        m = int(gap.max())
        if m > best:
            x, y, z = np.unravel_index(int(gap.argmax()), gap.shape)
            best, witness = m, (int(x), int(y), int(z), w)
    return DeltaResult(Fraction(best, 2), witness)


def four_point_delta(space: FiniteGraphSpace) -> Fraction:
    return four_point(space).delta


# -- slim triangles ------------------------------------------------------------


def geodesics(space: FiniteGraphSpace, u: int, v: int, cap: int = 10_000):
    """All geodesics from u to v as vertex tuples, at most ``cap`` of them.

    Returns ``(paths, capped)``.
    """
    dist = space.dist
    paths = []
    capped = False

    def extend(path):
        nonlocal capped
        if capped:
            return
        last = path[-1]
        if last == v:
            if len(paths) >= cap:
                capped = True
                return
            paths.append(tuple(path))
            return
        for nb in sorted(space.graph.neighbors(last)):
            if dist[nb, v] == dist[last, v] - 1:
                path.append(nb)
                extend(path)
                path.pop()

    extend([u])
    return paths, capped


@dataclass
class SlimTriangleReport:
    delta: int
    witness: Optional[tuple] = None
    capped_pairs: list = field(default_factory=list)


MAX_SLIM_VERTICES = 64


def slim_triangles(space: FiniteGraphSpace, cap: int = 10_000) -> SlimTriangleReport:
    """Thinness of geodesic triangles, over every triple and every choice of sides.

    For a side ``P`` from ``y`` to ``z`` and a vertex ``v`` on it, the other
    two sides can be chosen independently, so the worst distance from ``v`` to
    their union is ``min(far[x, y][v], far[x, z][v])`` where ``far[u, w][v]``
    is the largest distance from ``v`` to any geodesic between ``u`` and ``w``.
    The witness is ``(x, y, z, side, v)``.
    """
    n = space.n
    if n > MAX_SLIM_VERTICES:
        raise ValueError(f"slim triangle scan is limited to {MAX_SLIM_VERTICES} vertices")
    dist = space.dist
    geo = {}
    far = {}
    capped_pairs = []
    for u in range(n):
        for w in range(u, n):
            paths, capped = geodesics(space, u, w, cap)
            if capped:
                capped_pairs.append((u, w))
            geo[(u, w)] = paths
            geo[(w, u)] = [p[::-1] for p in paths]
            worst = np.zeros(n, dtype=np.int64)
            for p in paths:
                worst = np.maximum(worst, dist[:, list(p)].min(axis=1))
            far[(u, w)] = far[(w, u)] = worst
    best, witness = 0, None
    for x, y, z in itertools.combinations_with_replacement(range(n), 3):
        for apex, (s, t) in ((x, (y, z)), (y, (x, z)), (z, (x, y))):
            bound = np.minimum(far[(apex, s)], far[(apex, t)])
            for path in geo[(s, t)]:
                vals = bound[list(path)]
                k = int(vals.argmax())
                if vals[k] > best:
                    best, witness = int(vals[k]), (x, y, z, (s, t), path[k])
    return SlimTriangleReport(best, witness, capped_pairs)


def slim_triangle_delta(space: FiniteGraphSpace) -> int:
    return slim_triangles(space).delta


# -- Busemann functions --------------------------------------------------------


def check_ray(space: FiniteGraphSpace, ray: Sequence[int]) -> tuple:
    ray = tuple(int(v) for v in ray)
    space._check(*ray)
    for t, v in enumerate(ray):
        if space.dist[ray[0], v] != t:
            raise RayError(f"vertex {v} at step {t} is at distance {space.dist[ray[0], v]} from the start")
    return ray


@dataclass(frozen=True)
class BusemannEstimate:
    value: int
    stabilized: bool


def busemann_estimate(space: FiniteGraphSpace, y: int, ray: Sequence[int]) -> BusemannEstimate:
    """Estimate lim sup d(y, ray(t)) - t from a finite prefix.

    ``value`` is the maximum over the second half of the prefix.  The estimate
    counts as stabilized when the quantity is constant on the last quarter and
    that constant equals ``value``; d(y, ray(t)) - t never increases along a
    geodesic, so this means it is constant on the whole second half.
    """
    ray = check_ray(space, ray)
    T = len(ray) - 1
    if T < 4:
        raise RayError(f"ray prefix of length {T} is too short (need at least 4)")
    space._check(y)
    diffs = [int(space.dist[y, v]) - t for t, v in enumerate(ray)]
    value = max(diffs[(T + 1) // 2 :])
    tail = set(diffs[T - T // 4 :])
    return BusemannEstimate(value, tail == {value})


def family_estimate(space: FiniteGraphSpace, y: int, rays) -> Optional[int]:
    """Sup of the single-ray estimates, or None unless every one stabilized."""
    ests = [busemann_estimate(space, y, r) for r in rays]
    if not ests or not all(e.stabilized for e in ests):
        return None
    return max(e.value for e in ests)


@dataclass
class BusemannReport:
    """Worst constants seen for the three Busemann estimates.

    ``lipschitz`` is the largest |beta(y, x)| - d(y, x) (must be <= 0),
    ``cocycle`` the largest |beta(z, y) - beta(z, x) + beta(y, x)| and
    ``along_ray`` the largest |beta(ray(t), x) + d(ray(t), x)|.  Each is paired
    with the tuple attaining it.
    """

    lipschitz: Optional[int] = None
    lipschitz_witness: Optional[tuple] = None
    lipschitz_violations: int = 0
    cocycle: Optional[int] = None
    cocycle_witness: Optional[tuple] = None
    along_ray: Optional[int] = None
    along_ray_witness: Optional[tuple] = None
    used: int = 0
    excluded: int = 0

    @property
    def empty(self) -> bool:
        return self.used == 0


def _keep_max(cur, wit, val, cand):
    if cur is None or val > cur:
        return val, cand
    return cur, wit


def busemann_inequality_report(space: FiniteGraphSpace, rays, samples) -> BusemannReport:
    """Check the Busemann estimates against their standard bounds.

    ``beta(y, x)`` is the ray-family estimate at ``y`` using the rays in
    ``rays`` that start at ``x``; only vertices that start a ray serve as
    basepoints.  Pairs whose estimate did not stabilize are excluded.
    """
    rays = [check_ray(space, r) for r in rays]
    by_start: dict = {}
    for r in rays:
        by_start.setdefault(r[0], []).append(r)
    samples = sorted(set(int(v) for v in samples))
    beta = {}
    rep = BusemannReport()
    for x in sorted(by_start):
        for y in sorted(set(samples) | {v for r in by_start[x] for v in r}):
            val = family_estimate(space, y, by_start[x])
            if val is None:
                if y in samples:
                    rep.excluded += 1
                continue
            beta[(y, x)] = val
            if y in samples:
                rep.used += 1
    for (y, x), b in sorted(beta.items()):
        if y not in samples:
            continue
        slack = abs(b) - int(space.dist[y, x])
        rep.lipschitz, rep.lipschitz_witness = _keep_max(rep.lipschitz, rep.lipschitz_witness, slack, (y, x))
        if slack > 0:
            rep.lipschitz_violations += 1
    starts = sorted(by_start)
    for z in samples:
        for x in starts:
            for y in starts:
                if (z, x) in beta and (z, y) in beta and (y, x) in beta:
                    c = abs(beta[(z, y)] - beta[(z, x)] + beta[(y, x)])
                    rep.cocycle, rep.cocycle_witness = _keep_max(rep.cocycle, rep.cocycle_witness, c, (z, y, x))
    for x in starts:
        for r in by_start[x]:
            for t, v in enumerate(r):
                if (v, x) in beta:
                    c = abs(beta[(v, x)] + int(space.dist[v, x]))
                    rep.along_ray, rep.along_ray_witness = _keep_max(
                        rep.along_ray, rep.along_ray_witness, c, (r, t)
                    )
    return rep


def horosphere_points(space: FiniteGraphSpace, rays, x: int, tol: int) -> list[int]:
    """Vertices whose ray-family estimate is within ``tol`` of the one at ``x``."""
    bx = family_estimate(space, x, rays)
    if bx is None:
        raise ValueError(f"estimate at {x} did not stabilize")
    out = []
    for y in range(space.n):
        by = family_estimate(space, y, rays)
        if by is not None and abs(by - bx) <= tol:
            out.append(y)
    return out


# -- fixtures --------------------------------------------------------------------


def path_graph(n: int) -> FiniteGraphSpace:
    return FiniteGraphSpace(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> FiniteGraphSpace:
    return FiniteGraphSpace(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> FiniteGraphSpace:
    return FiniteGraphSpace(n, itertools.combinations(range(n), 2))


def tree_catalog(max_n: int):
    """Every unlabelled tree with 1..max_n vertices."""
    yield FiniteGraphSpace(1, [])
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            yield FiniteGraphSpace.from_networkx(t)
