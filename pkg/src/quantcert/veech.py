"""Configuration graphs of multicurve pairs and the two-multitwist data.

A pair of multicurves in minimal position is recorded as a bipartite
intersection pattern: m components on one side, k on the other, an m-by-k
matrix of geometric intersection numbers, and a positive multiplicity per
component.  The weighted matrix N = (d_i i(gamma_i, gamma_j)) is
nonnegative and irreducible when the graph is connected, so it carries
Perron data (mu, v) with Nv = mu v and v > 0.

mu scales the derivative matrices of the two multitwists,

    DT_c = [[1, mu], [0, 1]],    DT_d = [[1, 0], [-mu, 1]],

and products of these classify by trace: elliptic (|tr| < 2), parabolic
(|tr| = 2), Anosov (|tr| > 2).  The flat surface is the union of one
v_i-by-v_j rectangle per intersection point.

Unit-multiplicity configuration graphs are classified exactly, with no
tolerance: spectral radius below 2 exactly for the simply-laced diagram
shapes (paths, forked paths, the three exceptional trees), equal to 2
exactly for their affine extensions (cycles, doubled edge, doubly forked
paths, the three extended trees), and above 2 otherwise.  The
two-multitwist group has finite index in the stabilizer of the flat
surface precisely in the first two classes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DisconnectedGraph,
    GraphParseError,
    InvalidGraph,
    NoConvergence,
)

RECESSIVE = "recessive"
CRITICAL = "critical"
DOMINANT = "dominant"

ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
ANOSOV = "anosov"

FINITE_INDEX_IN_VEECH = "finite_index_in_veech"
NOT_FINITE_INDEX = "not_finite_index"

DEFAULT_TOL = 1e-12
PARABOLIC_TOL = 1e-9
DET_TOL = 1e-12
CRITICAL_BAND = 1e-9


@dataclass(frozen=True)
class ConfigurationGraph:
    """Bipartite multicurve intersection data with multiplicities.

    ``intersections[i][j]`` is the geometric intersection number of the
    i-th component of the first multicurve with the j-th component of the
    second; ``multiplicities`` lists the m + k twist multiplicities in that
    vertex order.  The bipartite multigraph must be connected.
    """

    intersections: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        m = len(self.intersections)
        if m == 0:
            raise InvalidGraph("need at least one component on each side")
        k = len(self.intersections[0])
        if k == 0 or any(len(row) != k for row in self.intersections):
            raise InvalidGraph("intersection matrix must be rectangular and nonempty")
        if any(x < 0 for row in self.intersections for x in row):
            raise InvalidGraph("intersection numbers must be nonnegative")
        if len(self.multiplicities) != m + k:
            raise InvalidGraph(
                f"expected {m + k} multiplicities, got {len(self.multiplicities)}"
            )
        if any(d < 1 for d in self.multiplicities):
            raise InvalidGraph("multiplicities must be positive")
        if not self._connected():
            raise DisconnectedGraph("configuration graph is not connected")

    @property
    def m(self) -> int:
        return len(self.intersections)

    @property
    def k(self) -> int:
        return len(self.intersections[0])

    @property
    def size(self) -> int:
        return self.m + self.k

    @property
    def unit_multiplicities(self) -> bool:
        return all(d == 1 for d in self.multiplicities)

    def adjacency(self) -> list[list[int]]:
        """Unweighted (multiplicity-free) multigraph adjacency, size m + k."""
        n = self.size
        adj = [[0] * n for _ in range(n)]
        for i in range(self.m):
            for j in range(self.k):
                adj[i][self.m + j] = self.intersections[i][j]
                adj[self.m + j][i] = self.intersections[i][j]
        return adj

    def _connected(self) -> bool:
        adj = self.adjacency()
        n = self.size
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in range(n):
                if adj[u][w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


def intersection_matrix(g: ConfigurationGraph) -> np.ndarray:
    """The weighted matrix N with N[i][j] = d_i * i(gamma_i, gamma_j).

    Zero on the two diagonal blocks; not symmetric in general, since each
    row is scaled by its own multiplicity.
    """
    n = g.size
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(g.m):
        for j in range(g.k):
            out[i, g.m + j] = g.multiplicities[i] * g.intersections[i][j]
            out[g.m + j, i] = g.multiplicities[g.m + j] * g.intersections[i][j]
    return out


@dataclass(frozen=True)
class PerronData:
    mu: float
    v: tuple[float, ...]
    residual: float
    tolerance: float


def perron(n_matrix, tol: float = DEFAULT_TOL, max_iter: int = 500_000) -> PerronData:
    """Dominant eigenpair of a nonnegative irreducible matrix.

    Power iteration on N + I (the shift removes the period-2 oscillation of
    bipartite matrices without moving eigenvectors), from the all-ones
    start vector, until ||Nv - mu v|| <= tol * mu.
    """
    n_mat = np.asarray(n_matrix, dtype=float)
    size = n_mat.shape[0]
    if n_mat.shape != (size, size):
        raise InvalidGraph("matrix must be square")
    shifted = n_mat + np.eye(size)
    v = np.ones(size) / math.sqrt(size)
    for _ in range(max_iter):
        w = shifted @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            raise NoConvergence("power iteration hit the zero vector")
        v = w / norm
        mu = float(v @ (n_mat @ v))
        residual = float(np.linalg.norm(n_mat @ v - mu * v))
        if mu > 0 and residual <= tol * mu:
            if np.any(v <= 0):
                raise NoConvergence("iterate is not strictly positive")
            return PerronData(
                mu=mu, v=tuple(float(x) for x in v), residual=residual, tolerance=tol
            )
    raise NoConvergence(f"no convergence after {max_iter} iterations")


@dataclass(frozen=True)
class SL2Mat:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c - 1.0) > DET_TOL:
            raise InvalidGraph("matrix must have determinant 1")

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "SL2Mat") -> "SL2Mat":
        return SL2Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Mat":
        return SL2Mat(self.d, -self.b, -self.c, self.a)


def multitwist_matrices(mu: float) -> tuple[SL2Mat, SL2Mat]:
    """Derivative matrices of the two multitwists at Perron value mu."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    return SL2Mat(1.0, mu, 0.0, 1.0), SL2Mat(1.0, 0.0, -mu, 1.0)


def classify_sl2(mat: SL2Mat) -> str:
    """Trace trichotomy: elliptic, parabolic or Anosov."""
    t = abs(mat.trace)
    if abs(t - 2.0) <= PARABOLIC_TOL:
        return PARABOLIC
    return ELLIPTIC if t < 2.0 else ANOSOV


# ---------------------------------------------------------------------------
# exact classification of unit-multiplicity configuration graphs

def _arm_lengths(adj: list[list[int]], branch: int) -> list[int] | None:
    """Path lengths from a branch vertex of a tree, None if a path forks."""
    n = len(adj)
    arms = []
    for w in range(n):
        for _ in range(adj[branch][w]):
            length = 1
            prev, cur = branch, w
            while True:
                nxt = [
                    x
                    for x in range(n)
                    for _ in range(adj[cur][x])
                    if x != prev
                ]
                if not nxt:
                    break
                if len(nxt) > 1:
                    return None
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
    return arms


def _classify_multigraph(adj: list[list[int]]) -> str:
    """Exact spectral-radius trichotomy of a connected multigraph vs 2.

    Radius below 2 exactly for the simply-laced tree shapes; equal to 2
    exactly for the doubled edge, cycles, the doubly forked trees and the
    three exceptional affine trees.  Decided combinatorially: the float
    spectrum is never consulted.
    """
    n = len(adj)
    if any(adj[i][j] >= 3 for i in range(n) for j in range(n)):
        return DOMINANT
    edge_count = sum(adj[i][j] for i in range(n) for j in range(i, n))
    if any(adj[i][j] == 2 for i in range(n) for j in range(n)):
        # doubled edge alone is the unique radius-2 multigraph; more is worse
        return CRITICAL if n == 2 and edge_count == 2 else DOMINANT
    degrees = [sum(adj[v]) for v in range(n)]
    if edge_count >= n + 1:
        return DOMINANT
    if edge_count == n:
        return CRITICAL if all(d == 2 for d in degrees) else DOMINANT
    # tree cases
    branches = [v for v in range(n) if degrees[v] >= 3]
    if not branches:
        return RECESSIVE  # path
    if len(branches) == 1:
        b = branches[0]
        if degrees[b] >= 5:
            return DOMINANT
        arms = sorted(_arm_lengths(adj, b))
        if degrees[b] == 4:
            return CRITICAL if arms == [1, 1, 1, 1] else DOMINANT
        weight = sum(Fraction(1, a + 1) for a in arms)
        if weight > 1:
            return RECESSIVE
        return CRITICAL if weight == 1 else DOMINANT
    if len(branches) == 2 and all(degrees[b] == 3 for b in branches):
        # doubly forked path: critical iff both forks are a pair of leaves
        for b in branches:
            leaf_arms = 0
            for w in range(n):
                if adj[b][w] and degrees[w] == 1:
                    leaf_arms += 1
            if leaf_arms != 2:
                return DOMINANT
        return CRITICAL
    return DOMINANT


def spectral_radius(adj) -> float:
    """Float spectral radius; the cross-check oracle for the exact classifier."""
    mat = np.asarray(adj, dtype=float)
    if np.allclose(mat, mat.T):
        return float(np.max(np.abs(np.linalg.eigvalsh(mat))))
    return float(np.max(np.abs(np.linalg.eigvals(mat))))


def classify_graph(g: ConfigurationGraph) -> str:
    """Recessive / critical / dominant classification of the configuration graph.

    Unit multiplicities are classified exactly by shape; general
    multiplicities fall back to the spectral radius of the weighted matrix
    with a tolerance band around 2.
    """
    if g.unit_multiplicities:
        return _classify_multigraph(g.adjacency())
    mu = perron(intersection_matrix(g)).mu
    if mu < 2.0 - CRITICAL_BAND:
        return RECESSIVE
    if mu <= 2.0 + CRITICAL_BAND:
        return CRITICAL
    return DOMINANT


@dataclass(frozen=True)
class LatticeCertificate:
    graph_class: str
    status: str | None  # None when the shape taxonomy does not apply
    mu: float
    teichmuller_curve_by_mu: bool


def lattice_certificate(g: ConfigurationGraph) -> LatticeCertificate:
    """Finite-index status of the two-multitwist group, plus the mu report.

    The shape taxonomy applies only to unit multiplicities; the mu-based
    flag (a lattice stabilizer whenever mu <= 2) is always reported.
    """
    cls = classify_graph(g)
    mu = perron(intersection_matrix(g)).mu
    status: str | None = None
    if g.unit_multiplicities:
        status = (
            FINITE_INDEX_IN_VEECH
            if cls in (RECESSIVE, CRITICAL)
            else NOT_FINITE_INDEX
        )
    return LatticeCertificate(
        graph_class=cls,
        status=status,
        mu=mu,
        teichmuller_curve_by_mu=mu <= 2.0 + CRITICAL_BAND,
    )


@dataclass(frozen=True)
class Rectangle:
    point_id: int
    c_index: int
    d_index: int
    width: float
    height: float


@dataclass(frozen=True)
class FlatSurfaceData:
    rectangles: tuple[Rectangle, ...]
    horizontal_gluing: tuple[tuple[int, int], ...]
    vertical_gluing: tuple[tuple[int, int], ...]
    total_area: float


def flat_surface(g: ConfigurationGraph) -> FlatSurfaceData:
    """One rectangle per intersection point, sized by the Perron vector.

    Rectangles that share a component are glued in the cyclic order of
    their point ids along that component (deterministic but otherwise
    arbitrary): horizontally along first-multicurve components, vertically
    along second-multicurve components.
    """
    data = perron(intersection_matrix(g))
    v = data.v
    rectangles: list[Rectangle] = []
    for i in range(g.m):
        for j in range(g.k):
            for _ in range(g.intersections[i][j]):
                rectangles.append(
                    Rectangle(
                        point_id=len(rectangles),
                        c_index=i,
                        d_index=j,
                        width=v[i],
                        height=v[g.m + j],
                    )
                )
    def cyclic(ids: list[int]) -> list[tuple[int, int]]:
        if len(ids) < 2:
            return []
        return [(ids[t], ids[(t + 1) % len(ids)]) for t in range(len(ids))]

    horizontal: list[tuple[int, int]] = []
    for i in range(g.m):
        horizontal.extend(cyclic([r.point_id for r in rectangles if r.c_index == i]))
    vertical: list[tuple[int, int]] = []
    for j in range(g.k):
        vertical.extend(cyclic([r.point_id for r in rectangles if r.d_index == j]))
    area = sum(r.width * r.height for r in rectangles)
    if not area > 0:
        raise InvalidGraph("flat surface has no area")
    return FlatSurfaceData(
        rectangles=tuple(rectangles),
        horizontal_gluing=tuple(horizontal),
        vertical_gluing=tuple(vertical),
        total_area=area,
    )


# ---------------------------------------------------------------------------
# construction helpers and the input DSL

def _from_adjacency(adj: list[list[int]]) -> ConfigurationGraph:
    """Split a bipartite multigraph into the two-sided intersection form."""
    n = len(adj)
    color = [-1] * n
    color[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in range(n):
            if adj[u][w]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise InvalidGraph(
                        "graph is not bipartite: two crossing multicurves must "
                        "alternate"
                    )
    c_side = [v for v in range(n) if color[v] == 0]
    d_side = [v for v in range(n) if color[v] == 1]
    if not c_side or not d_side:
        raise InvalidGraph("each side needs at least one component")
    inter = tuple(
        tuple(adj[u][w] for w in d_side) for u in c_side
    )
    return ConfigurationGraph(inter, (1,) * n)


def path_family(n: int) -> ConfigurationGraph:
    """The A-family: a path on n vertices."""
    if n < 2:
        raise InvalidGraph("path family needs at least 2 vertices")
    adj = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        adj[i][i + 1] = adj[i + 1][i] = 1
    return _from_adjacency(adj)


def forked_path_family(n: int) -> ConfigurationGraph:
    """The D-family: a path on n - 1 vertices with one extra fork leaf."""
    if n < 4:
        raise InvalidGraph("forked path family needs at least 4 vertices")
    adj = [[0] * n for _ in range(n)]
    for i in range(n - 2):
        adj[i][i + 1] = adj[i + 1][i] = 1
    adj[n - 1][1] = adj[1][n - 1] = 1
    return _from_adjacency(adj)


def exceptional_family(n: int) -> ConfigurationGraph:
    """The E-family trees for n in {6, 7, 8}: arms (1, 2, n - 4)."""
    if n not in (6, 7, 8):
        raise InvalidGraph("exceptional family exists for 6, 7, 8 only")
    adj = [[0] * n for _ in range(n)]
    for i in range(n - 2):
        adj[i][i + 1] = adj[i + 1][i] = 1
    adj[n - 1][2] = adj[2][n - 1] = 1
    return _from_adjacency(adj)


def cycle_family(n: int) -> ConfigurationGraph:
    """A cycle on n vertices; n must be even to admit a bipartition."""
    if n < 3:
        raise InvalidGraph("cycle family needs at least 3 vertices")
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        j = (i + 1) % n
        adj[i][j] += 1
        adj[j][i] += 1
    return _from_adjacency(adj)


def star_family(leaves: int) -> ConfigurationGraph:
    """A star with the given number of leaves."""
    if leaves < 1:
        raise InvalidGraph("star family needs at least 1 leaf")
    n = leaves + 1
    adj = [[0] * n for _ in range(n)]
    for i in range(1, n):
        adj[0][i] = adj[i][0] = 1
    return _from_adjacency(adj)


_FAMILY_BUILDERS = {
    "A": path_family,
    "D": forked_path_family,
    "E": exceptional_family,
    "cycle": cycle_family,
    "star": star_family,
}


def parse_family(spec: str) -> ConfigurationGraph:
    """Parse a named family spec: A:n, D:n, E:6|7|8, cycle:n, star:n."""
    name, sep, arg = spec.partition(":")
    name = name.strip()
    if not sep or name not in _FAMILY_BUILDERS:
        raise GraphParseError(
            f"unknown family {spec!r}; expected A:n, D:n, E:6|7|8, cycle:n or star:n",
            token=spec,
        )
    try:
        n = int(arg.strip())
    except ValueError:
        raise GraphParseError(
            f"invalid family size {arg.strip()!r} in {spec!r}", token=arg.strip()
        ) from None
    try:
        return _FAMILY_BUILDERS[name](n)
    except InvalidGraph as exc:
        raise GraphParseError(str(exc), token=spec) from exc


_INTER_TOKEN = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_intersections(
    inter_text: str, mult_text: str = "", m: int = 0, k: int = 0
) -> ConfigurationGraph:
    """Parse an explicit bipartite spec.

    ``inter_text`` lists (i, j, count) triples with 1-based component
    indices; side sizes are inferred from the largest indices unless given.
    ``mult_text`` is a comma list of m + k multiplicities (default all 1).
    """
    entries = []
    cleaned = inter_text.replace(" ", "")
    pos = 0
    while pos < len(cleaned):
        if cleaned[pos] == ",":
            pos += 1
            continue
        match = _INTER_TOKEN.match(cleaned, pos)
        if not match:
            raise GraphParseError(
                f"invalid intersection token at position {pos}: "
                f"{cleaned[pos:pos + 12]!r}",
                token=cleaned[pos : pos + 12],
                position=pos,
            )
        entries.append((int(match.group(1)), int(match.group(2)), int(match.group(3))))
        pos = match.end()
    if not entries:
        raise GraphParseError("no intersections given", token=inter_text)
    m = max(m, max(e[0] for e in entries))
    k = max(k, max(e[1] for e in entries))
    inter = [[0] * k for _ in range(m)]
    for i, j, count in entries:
        if i < 1 or j < 1:
            raise GraphParseError(
                f"component indices are 1-based, got ({i}, {j})", token=f"({i},{j})"
            )
        inter[i - 1][j - 1] += count
    if mult_text.strip():
        try:
            mult = tuple(int(t) for t in mult_text.split(","))
        except ValueError:
            raise GraphParseError(
                f"invalid multiplicity list {mult_text!r}", token=mult_text
            ) from None
        if len(mult) != m + k:
            raise GraphParseError(
                f"expected {m + k} multiplicities, got {len(mult)}", token=mult_text
            )
    else:
        mult = (1,) * (m + k)
    try:
        return ConfigurationGraph(tuple(tuple(row) for row in inter), mult)
    except (InvalidGraph, DisconnectedGraph) as exc:
        raise GraphParseError(str(exc), token=inter_text) from exc


def parse_config_spec(text: str) -> ConfigurationGraph:
    """Parse either a named family or a ``c=..; d=..; inter=..; mult=..`` spec."""
    if "=" not in text:
        return parse_family(text)
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise GraphParseError(
                f"expected key=value, got {part.strip()!r}", token=part.strip()
            )
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {"c", "d", "inter", "mult"}
    if unknown:
        raise GraphParseError(
            f"unknown sections {sorted(unknown)}", token=",".join(sorted(unknown))
        )
    if "inter" not in fields:
        raise GraphParseError("missing inter=... section", token="inter")
    m = int(fields["c"]) if "c" in fields else 0
    k = int(fields["d"]) if "d" in fields else 0
    return parse_intersections(fields["inter"], fields.get("mult", ""), m=m, k=k)
