"""Cubical meshes over laid-out diagrams.

The depth-k explosion graph is turned into a complex of cubes: a
j-cube is any family of 2^j nodes whose skeleton of explosion edges
is complete, built by pairing (j-1)-cubes corner by corner along a
fresh axis.  Coordinates come from the layout, labels from the
projection of each cube's most singular corner.  Subdivision splits
every cube into 2^j children at multilinear midpoints, sharing the
interpolated vertices between neighbouring cubes so surfaces stay
watertight.  3-cubes decompose into six signed tetrahedra around a
main diagonal for volume work and STL export.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .diagram import Diagram, KernelError, diagram_dimension
from .explode import explode, visible_generator
from .layout import Layout, _coord_key


class GeometryError(KernelError):
    pass


@dataclass(frozen=True)
class Cube:
    k: int
    vertices: tuple  # 2^k vertex ids, index bit i = advanced along axes[i]
    axes: tuple
    label: object


@dataclass(frozen=True)
class Simplex:
    k: int
    vertices: tuple  # k + 1 vertex ids
    sign: int


@dataclass(frozen=True)
class Geometry:
    dimension: int
    vertices: tuple  # coordinate tuples
    cubes: tuple


def mesh(d: Diagram, k: int, l: Layout) -> Geometry:
    """Cube complex of the depth-k explosion with layout coordinates."""
    graph = explode(d, k)
    coords = sorted(graph.nodes, key=_coord_key)
    for c in coords:
        if c not in l.positions:
            raise GeometryError(f"layout misses a coordinate: {c}")
    index = {c: i for i, c in enumerate(coords)}
    vertices = tuple(tuple(l.positions[c]) for c in coords)

    by_axis: dict = {}
    for e in graph.edges:
        by_axis.setdefault(e.axis, set()).add((index[e.src], index[e.dst]))

    labels = {index[c]: visible_generator(w) for c, w in graph.nodes.items()}
    cubes = []
    # cubes over the axis set (): the nodes themselves, as singleton tuples
    layer = {(): [(i,) for i in range(len(coords))]}
    for size in range(1, k + 1):
        nxt: dict = {}
        for axes in combinations(range(k), size):
            pairs = by_axis.get(axes[-1], set())
            lower = layer.get(axes[:-1], [])
            for bottom in lower:
                for top in lower:
                    if all((a, b) in pairs for a, b in zip(bottom, top)):
                        nxt.setdefault(axes, []).append(bottom + top)
        for axes in sorted(nxt):
            for corners in nxt[axes]:
                cubes.append(Cube(size, corners, axes, labels[corners[-1]]))
        layer = nxt
    return Geometry(k, vertices, tuple(cubes))


def subdivide(g: Geometry, depth: int) -> Geometry:
    """Split each j-cube into 2^j children at multilinear midpoints."""
    if depth < 0:
        raise GeometryError("subdivision depth must be nonnegative")
    for _ in range(depth):
        g = _subdivide_once(g)
    return g


def _subdivide_once(g: Geometry) -> Geometry:
    vertices = list(g.vertices)
    shared: dict = {}

    def midpoint(ids):
        key = frozenset(ids)
        if len(key) == 1:
            return next(iter(key))
        if key not in shared:
            pts = [g.vertices[i] for i in sorted(key)]
            pos = tuple(sum(p[j] for p in pts) / len(pts) for j in range(g.dimension))
            shared[key] = len(vertices)
            vertices.append(pos)
        return shared[key]

    cubes = []
    for cube in g.cubes:
        grid = {}
        for point in _lattice(cube.k):
            face = [
                corner
                for s, corner in enumerate(cube.vertices)
                if all(
                    point[i] == 1 or point[i] == 2 * ((s >> i) & 1)
                    for i in range(cube.k)
                )
            ]
            grid[point] = midpoint(face)
        for base in _lattice(cube.k, limit=2):
            corners = tuple(
                grid[tuple(base[i] + ((s >> i) & 1) for i in range(cube.k))]
                for s in range(1 << cube.k)
            )
            cubes.append(Cube(cube.k, corners, cube.axes, cube.label))
    return Geometry(g.dimension, tuple(vertices), tuple(cubes))


def _lattice(k: int, limit: int = 3):
    """All integer points of {0..limit-1}^k in lexicographic order."""
    if k == 0:
        yield ()
        return
    for rest in _lattice(k - 1, limit):
        for i in range(limit):
            yield rest + (i,)


def cube_to_simplices(cube: Cube) -> list:
    """Six signed tetrahedra sharing the cube's main diagonal."""
    if cube.k != 3 or len(cube.vertices) != 8:
        raise GeometryError("only 3-cubes decompose into tetrahedra")
    out = []
    for order, sign in _PERMUTATIONS:
        path = [0]
        mask = 0
        for axis in order:
            mask |= 1 << axis
            path.append(mask)
        out.append(Simplex(3, tuple(cube.vertices[m] for m in path), sign))
    return out


_PERMUTATIONS = (
    ((0, 1, 2), 1),
    ((0, 2, 1), -1),
    ((1, 0, 2), -1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((2, 1, 0), -1),
)


def simplex_volume(g: Geometry, s: Simplex) -> float:
    """Signed 3-volume of a tetrahedron, including the orientation sign."""
    a, b, c, d = (g.vertices[i] for i in s.vertices)
    u = [b[i] - a[i] for i in range(3)]
    v = [c[i] - a[i] for i in range(3)]
    w = [d[i] - a[i] for i in range(3)]
    det = (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )
    return s.sign * det / 6.0


def cube_volume(g: Geometry, cube: Cube) -> float:
    """k-volume of a cube: length, triangle-split area, or tet sum."""
    vs = [g.vertices[i] for i in cube.vertices]
    if cube.k == 0:
        return 0.0
    if cube.k == 1:
        return _dist(vs[0], vs[1])
    if cube.k == 2:
        return _tri_area(vs[0], vs[1], vs[3]) + _tri_area(vs[0], vs[3], vs[2])
    if cube.k == 3:
        return sum(simplex_volume(g, s) for s in cube_to_simplices(cube))
    raise GeometryError("volume only defined up to 3-cubes")


def _dist(a, b):
    return sum((x - y) ** 2 for x, y in zip(a, b)) ** 0.5


def _tri_area(a, b, c):
    u = [b[i] - a[i] for i in range(len(a))]
    v = [c[i] - a[i] for i in range(len(a))]
    uu = sum(x * x for x in u)
    vv = sum(x * x for x in v)
    uv = sum(x * y for x, y in zip(u, v))
    sq = uu * vv - uv * uv
    return (sq if sq > 0 else 0.0) ** 0.5 / 2.0


def slice_4d(g: Geometry, w: float) -> Geometry:
    """Intersect a 4-coordinate geometry with the hyperplane w = const.

    Each cube must run along a single axis in its final coordinate;
    the slice drops one cube dimension and the w component.
    """
    if g.dimension != 4:
        raise GeometryError("slicing needs a 4th coordinate")
    vertices: list = []
    seen: dict = {}

    def emit(pos):
        if pos not in seen:
            seen[pos] = len(vertices)
            vertices.append(pos)
        return seen[pos]

    cubes = []
    for cube in g.cubes:
        ws = [g.vertices[i][3] for i in cube.vertices]
        axis = _w_axis(cube, ws)
        if axis is None:
            continue
        half = [s for s in range(1 << cube.k) if not (s >> axis) & 1]
        corners = []
        inside = True
        for s in half:
            lo, hi = cube.vertices[s], cube.vertices[s | (1 << axis)]
            w0, w1 = g.vertices[lo][3], g.vertices[hi][3]
            if w1 == w0:
                inside = inside and w0 == w
                t = 0.0
            else:
                t = (w - w0) / (w1 - w0)
                inside = inside and 0.0 <= t <= 1.0
            if not inside:
                break
            p = tuple(
                g.vertices[lo][j] + t * (g.vertices[hi][j] - g.vertices[lo][j])
                for j in range(3)
            )
            corners.append(emit(p))
        if not inside:
            continue
        axes = tuple(a for i, a in enumerate(cube.axes) if i != axis)
        cubes.append(Cube(cube.k - 1, tuple(corners), axes, cube.label))
    return Geometry(3, tuple(vertices), tuple(cubes))


def _w_axis(cube: Cube, ws):
    """The unique cube axis along which w varies, if any."""
    varying = [
        i
        for i in range(cube.k)
        if any(ws[s] != ws[s | (1 << i)] for s in range(1 << cube.k) if not (s >> i) & 1)
    ]
    if len(varying) > 1:
        raise GeometryError("cube is not aligned with the slicing plane")
    if not varying:
        return None
    return varying[0]


def face_incidence(simplices) -> dict:
    """Net signed count of oriented triangular faces across tetrahedra.

    Interior faces of a proper decomposition cancel to zero; the
    boundary survives with unit multiplicity.
    """
    total: dict = {}
    for s in simplices:
        for i in range(4):
            face = s.vertices[:i] + s.vertices[i + 1 :]
            key = tuple(sorted(face))
            parity = _perm_sign(face, key)
            total[key] = total.get(key, 0) + s.sign * parity * (-1) ** i
    return total


def _perm_sign(seq, sorted_seq):
    perm = [sorted_seq.index(v) for v in seq]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign
