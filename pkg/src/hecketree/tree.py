"""Finite semi-homogeneous tree balls and geometric counting of structure constants.

The counting functions here know nothing about closed-form multiplication
tables: every structure constant is obtained by enumerating vertices or
edges of an explicit finite ball and measuring distances along unique paths.
They serve as the independent oracle against which the algebraic modules are
verified.

Conventions (fixed so all enumeration orders are deterministic):

* vertex 0 is the root, has even type, and carries ``q0 + 1`` children;
  vertices are numbered in breadth-first order, so the sphere of radius ``d``
  is a contiguous range of indices;
* the marked ray toward the boundary is the leftmost branch, i.e. the first
  vertex of every sphere;
* the distinguished edge for edge counting is the first ray edge, and
  crossing an even-type vertex contributes the letter ``s``, an odd-type
  vertex the letter ``t``.
"""

from __future__ import annotations

from bisect import bisect_right

DEFAULT_MAX_VERTICES = 4_000_000

_SWAP_TYPES = str.maketrans("st", "ts")


def swap_types(word: str) -> str:
    """Swap the two vertex-type letters in a crossing word."""
    return word.translate(_SWAP_TYPES)


class BallBudgetExceeded(ValueError):
    """Requested ball would exceed the configured vertex budget."""


class BallTooSmall(ValueError):
    """A counting operation was handed a ball below its minimal radius."""


class HorocycleMismatch(ValueError):
    """The two vertices do not lie on a common horocycle."""


class TreeBall:
    """Ball of a given radius in the (q0+1, q1+1)-semi-homogeneous tree.

    Immutable after construction.  Only the parent array and the sphere
    offsets are stored; everything else (depths, the marked ray, paths) is
    derived on demand.
    """

    __slots__ = ("q0", "q1", "radius", "parent", "sphere_start")

    def __init__(self, q0: int, q1: int, radius: int, parent: list, sphere_start: list):
        self.q0 = q0
        self.q1 = q1
        self.radius = radius
        self.parent = parent
        self.sphere_start = sphere_start

    @property
    def num_vertices(self) -> int:
        return len(self.parent)

    def depth(self, v: int) -> int:
        return bisect_right(self.sphere_start, v) - 1

    def sphere(self, d: int) -> range:
        """Vertices at distance ``d`` from the root, as a contiguous range."""
        if d < 0 or d > self.radius:
            raise BallTooSmall(f"sphere radius {d} outside ball of radius {self.radius}")
        return range(self.sphere_start[d], self.sphere_start[d + 1])

    def ray(self) -> tuple:
        """The marked ray from the root toward the boundary (leftmost branch)."""
        return tuple(self.sphere_start[: self.radius + 1])

    def ray_vertex(self, j: int) -> int:
        if j < 0 or j > self.radius:
            raise BallTooSmall(f"ray vertex {j} outside ball of radius {self.radius}")
        return self.sphere_start[j]

    def edges(self) -> range:
        """All edges, each identified by its child endpoint."""
        return range(1, len(self.parent))

    def __repr__(self):
        return (
            f"TreeBall(q0={self.q0}, q1={self.q1}, radius={self.radius}, "
            f"vertices={self.num_vertices})"
        )


def ball_size(q0: int, q1: int, radius: int) -> int:
    """Number of vertices of the radius-``radius`` ball, without building it."""
    total, layer = 1, 1
    for d in range(radius):
        layer *= (q0 + 1) if d == 0 else (q0 if d % 2 == 0 else q1)
        total += layer
    return total


def build_ball(
    q0: int, q1: int, radius: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> TreeBall:
    """Build the ball of the semi-homogeneous tree with the stated branching.

    Even-type vertices have degree ``q0 + 1``, odd-type ``q1 + 1``; the tree
    is homogeneous when ``q0 == q1``.  Both parameters must be at least 2
    (at least three edges at every vertex).
    """
    if q0 < 2 or q1 < 2:
        raise ValueError(f"branching numbers must be >= 2, got ({q0}, {q1})")
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    expected = ball_size(q0, q1, radius)
    if expected > max_vertices:
        raise BallBudgetExceeded(
            f"ball of radius {radius} has {expected} vertices, "
            f"exceeding the budget of {max_vertices}"
        )
    parent = [-1]
    sphere_start = [0, 1]
    start, end = 0, 1
    for d in range(radius):
        width = (q0 + 1) if d == 0 else (q0 if d % 2 == 0 else q1)
        parent.extend(v for v in range(start, end) for _ in range(width))
        start, end = end, len(parent)
        sphere_start.append(end)
    return TreeBall(q0, q1, radius, parent, sphere_start)


def distance(ball: TreeBall, u: int, v: int) -> int:
    """Length of the unique path between two vertices."""
    parent = ball.parent
    du, dv = ball.depth(u), ball.depth(v)
    dist = 0
    while du > dv:
        u = parent[u]
        du -= 1
        dist += 1
    while dv > du:
        v = parent[v]
        dv -= 1
        dist += 1
    while u != v:
        u = parent[u]
        v = parent[v]
        dist += 2
    return dist


def vertex_path(ball: TreeBall, u: int, v: int) -> list:
    """Vertices of the unique path from ``u`` to ``v``, inclusive."""
    parent = ball.parent
    du, dv = ball.depth(u), ball.depth(v)
    up, down = [u], [v]
    while du > dv:
        u = parent[u]
        up.append(u)
        du -= 1
    while dv > du:
        v = parent[v]
        down.append(v)
        dv -= 1
    while u != v:
        u = parent[u]
        up.append(u)
        v = parent[v]
        down.append(v)
    return up + down[-2::-1]


def ray_confluence_depth(ball: TreeBall, v: int) -> int:
    """Depth of the deepest marked-ray vertex on the path from ``v`` to the root."""
    parent = ball.parent
    sphere_start = ball.sphere_start
    d = ball.depth(v)
    while v != sphere_start[d]:
        v = parent[v]
        d -= 1
    return d


# -- vertex-stabilizer (spherical) counting ---------------------------------


def spherical_constant(ball: TreeBall, n: int, m: int, k: int) -> int:
    """Count vertices at distance ``n`` from the root and ``m`` from a witness.

    The witness is the marked-ray vertex at depth ``k``; this is the
    structure constant of the radius-``k`` basis element in the product of
    the radius-``n`` and radius-``m`` ones.  Inconsistent parameters (``k``
    outside ``[|n-m|, n+m]`` or of the wrong parity) give 0, not an error.
    """
    if min(n, m, k) < 0:
        raise ValueError("sphere radii must be nonnegative")
    if k > n + m or k < abs(n - m) or (n + m - k) % 2:
        return 0
    if ball.radius < max(n, k):
        raise BallTooSmall(
            f"ball radius {ball.radius} < required {max(n, k)} for ({n},{m},{k})"
        )
    w = ball.ray_vertex(k)
    return sum(1 for v in ball.sphere(n) if distance(ball, v, w) == m)


def spherical_product(ball: TreeBall, n: int, m: int) -> dict:
    """Full structure-constant vector of a sphere-sphere product, by counting.

    Equivalent to ``{k: spherical_constant(ball, n, m, k)}`` over all
    ``k <= n + m`` but in a single pass: with the witness for class ``k``
    sitting on the marked ray at depth ``k``, the distance from a vertex
    ``v`` of the ``n``-sphere to it is determined by the depth at which the
    path from ``v`` to the root meets the ray.
    """
    if min(n, m) < 0:
        raise ValueError("sphere radii must be nonnegative")
    if ball.radius < n + m:
        raise BallTooSmall(f"ball radius {ball.radius} < required {n + m}")
    counts: dict = {}
    for v in ball.sphere(n):
        c = ray_confluence_depth(ball, v)
        k = n - m
        if 0 <= k <= c:
            counts[k] = counts.get(k, 0) + 1
        k = m - n + 2 * c
        if c < k <= n + m:
            counts[k] = counts.get(k, 0) + 1
    return counts


# -- edge-fixator (Weyl distance) counting -----------------------------------


def _near_endpoint(ball: TreeBall, e: int, target: int) -> int:
    """Endpoint of edge ``e`` closer to the vertex ``target``."""
    p = ball.parent[e]
    return e if distance(ball, e, target) < distance(ball, p, target) else p


def weyl_distance(ball: TreeBall, e: int, f: int) -> str:
    """Crossing word of the edge path from ``e`` to ``f``.

    Each step of the path crosses one vertex; even-type vertices contribute
    ``s`` and odd-type vertices ``t``, so the word alternates and its length
    is the edge-graph distance.
    """
    if e == f:
        return ""
    a = _near_endpoint(ball, e, f)
    b = _near_endpoint(ball, f, e)
    crossed = vertex_path(ball, a, b)
    return "".join("s" if ball.depth(v) % 2 == 0 else "t" for v in crossed)


def base_edge(ball: TreeBall) -> int:
    """The distinguished edge: first ray edge, joining the root to ray vertex 1."""
    if ball.radius < 1:
        raise BallTooSmall("ball of radius 0 has no edges")
    return ball.ray_vertex(1)


def edges_by_weyl_word(ball: TreeBall, max_len: int) -> dict:
    """Group all edges at crossing-word length <= max_len from the base edge."""
    if ball.radius < max_len + 2:
        raise BallTooSmall(
            f"ball radius {ball.radius} < required {max_len + 2} for words of length {max_len}"
        )
    e0 = base_edge(ball)
    # an edge at edge-distance L from the base edge has child depth <= L + 1
    limit = ball.sphere_start[min(max_len + 2, ball.radius + 1)]
    groups: dict = {}
    for f in range(1, limit):
        word = weyl_distance(ball, e0, f)
        if len(word) <= max_len:
            groups.setdefault(word, []).append(f)
    return groups


def iwahori_constant(
    ball: TreeBall,
    w1: str,
    w2: str,
    target: str,
    iflags: tuple = (0, 0, 0),
    _groups: dict | None = None,
) -> int:
    """Edge count giving one structure constant of the edge-fixator algebra.

    For the type-preserving basis (all ``iflags`` zero) this counts edges
    ``f`` with crossing word ``w1`` from the base edge and ``w2`` from a
    fixed witness edge at crossing word ``target``.  In the extended algebra
    a one-sided coset is an (edge, type-parity) pair; an index with the
    inversion flag set reaches the same edges through a type-swapped word,
    which is what the ``iflags`` adjustments below implement.
    """
    d1, d2, dt = (flag & 1 for flag in iflags)
    if d1 ^ d2 != dt:
        return 0
    if len(target) > len(w1) + len(w2):
        # triangle inequality on the edge metric: no witness can be reached
        return 0
    if ball.radius < len(w1) + len(w2) + 2:
        raise BallTooSmall(
            f"ball radius {ball.radius} < required {len(w1) + len(w2) + 2}"
        )
    word_ef = swap_types(w1) if d1 else w1
    word_eg = swap_types(target) if dt else target
    word_fg = swap_types(w2) if dt else w2
    groups = _groups if _groups is not None else edges_by_weyl_word(ball, len(w1) + len(w2))
    witnesses = groups.get(word_eg)
    if not witnesses:
        raise BallTooSmall(f"no witness edge at word {word_eg!r} in {ball!r}")
    g = witnesses[0]
    return sum(1 for f in groups.get(word_ef, ()) if weyl_distance(ball, f, g) == word_fg)


# -- end-stabilizer (horocycle) counting ---------------------------------------


def _ray_path(ball: TreeBall, v: int) -> list:
    """The ray from ``v`` toward the marked end: up to the marked ray, then along it."""
    parent = ball.parent
    sphere_start = ball.sphere_start
    path = [v]
    d = ball.depth(v)
    while v != sphere_start[d]:
        v = parent[v]
        d -= 1
        path.append(v)
    path.extend(sphere_start[j] for j in range(d + 1, ball.radius + 1))
    return path


def horocycle_class(ball: TreeBall, ray: tuple, u: int, v: int) -> int:
    """Confluence distance of two vertices on a common horocycle.

    Both rays toward the marked end eventually merge; the class is the
    distance from either vertex to the merge point.  Raises
    :class:`HorocycleMismatch` when the two distances differ, i.e. the
    vertices sit on different horocycles.
    """
    if not ray or tuple(ray) != ball.ray()[: len(ray)]:
        raise ValueError("ray does not match the ball's marked ray")
    if u == v:
        return 0
    pu = _ray_path(ball, u)
    pv = _ray_path(ball, v)
    i = 1
    stop = min(len(pu), len(pv))
    while i <= stop and pu[-i] == pv[-i]:
        i += 1
    i -= 1
    n_u = len(pu) - i
    n_v = len(pv) - i
    if n_u != n_v:
        raise HorocycleMismatch(
            f"vertices {u} and {v} lie on different horocycles ({n_u} != {n_v})"
        )
    return n_u


def horocycle_members(ball: TreeBall, n: int) -> list:
    """Vertices on the root's horocycle at confluence distance ``n``."""
    if n == 0:
        return [0]
    if ball.radius < 2 * n:
        raise BallTooSmall(f"ball radius {ball.radius} < required {2 * n}")
    return [v for v in ball.sphere(2 * n) if ray_confluence_depth(ball, v) == n]


def horocycle_constant(ball: TreeBall, m: int, n: int, k: int) -> int:
    """Count horocycle points at class ``m`` from the root and ``n`` from a witness.

    The witness is the first vertex at class ``k`` from the root; the count
    is the structure constant of the class-``k`` basis element in the
    product of the class-``m`` and class-``n`` ones.
    """
    if min(m, n, k) < 0:
        raise ValueError("horocycle classes must be nonnegative")
    bound = 2 * max(m, n, k) + 2
    if ball.radius < bound:
        raise BallTooSmall(f"ball radius {ball.radius} < required {bound}")
    ray = ball.ray()
    w = horocycle_members(ball, k)[0]
    return sum(
        1 for v in horocycle_members(ball, m) if horocycle_class(ball, ray, v, w) == n
    )
