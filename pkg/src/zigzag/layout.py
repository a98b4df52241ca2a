"""Coordinate assignment for exploded diagrams.

Every node of the depth-k explosion receives a k-vector.  Component 0
is the height along the outermost zigzag and is fixed: regular level i
sits at 2i, singular height i at 2i+1.  Each deeper axis is solved by
its own small linear program:

  * variables live on singular columns, one per wire class, where a
    wire class joins columns connected across levels by identity
    edges (a wire keeps its position until something happens to it);
  * wires sharing a bounding region are kept >= 2 apart, so the
    region midpoint stays >= 1 from either side;
  * a column is softly centred on the mean of the cross-level
    neighbours it is attached to (slack weight 1), and a total-width
    term with weight 1/100 keeps the picture tight.

Regular columns (regions) are not solved: their coordinate is
interpolated between the neighbouring wires afterwards.  All programs
are translation invariant, so variables are kept nonnegative instead
of being split into signed parts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, KernelError, diagram_dimension, is_identity_rewrite
from .explode import ExplosionGraph, explode
from .interner import current_interner
from .simplex import solve_lp

ORDER_GAP = 2.0
CENTER_WEIGHT = 1.0
WIDTH_WEIGHT = 0.01
TOLERANCE = 1e-6


class LayoutRangeError(KernelError):
    pass


@dataclass(frozen=True)
class LayoutVar:
    """One solved quantity of one axis ("pos" on a column, or an aux)."""

    axis: int
    kind: str
    entity: tuple


@dataclass(frozen=True)
class LinearProgram:
    variables: tuple
    constraints: tuple  # (coeffs: tuple[(LayoutVar, float)], rel: "<=" | "=", rhs)
    objective: tuple

    def dump(self) -> str:
        lines = []
        for coeffs, rel, rhs in self.constraints:
            lhs = " + ".join(f"{w:g}*{_var_name(v)}" for v, w in coeffs)
            lines.append(f"{lhs} {rel} {rhs:g}")
        obj = " + ".join(f"{w:g}*{_var_name(v)}" for v, w in self.objective)
        lines.append(f"minimize {obj}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Layout:
    positions: dict  # explosion coordinate -> tuple of floats


def _var_name(v: LayoutVar) -> str:
    body = ".".join(f"{k}{i}" for k, i in v.entity) if v.entity else "*"
    return f"{v.kind}{v.axis}[{body}]"


def _component_key(comp) -> int:
    kind, i = comp
    return 2 * i if kind == "R" else 2 * i + 1


def _coord_key(coord) -> tuple:
    return tuple(_component_key(c) for c in coord)


class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic root: keep the smaller coordinate key
            if _coord_key(rb) < _coord_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class _AxisPlan:
    axis: int
    classes: list  # ordered class representatives (truncated coords)
    class_of: dict  # truncated coord -> representative
    orderings: list  # (left rep, right rep)
    centerings: list  # (rep, tuple of neighbour reps)
    regions: dict  # truncated regular coord -> (left reps, right reps)


def _truncate(coord, axis):
    return coord[: axis + 1]


def _plan_axis(graph: ExplosionGraph, axis: int) -> _AxisPlan:
    singular = sorted(
        {c[: axis + 1] for c in graph.nodes if c[axis][0] == "S"}, key=_coord_key
    )
    uf = _UnionFind(singular)

    # wire continuity: merge columns joined across levels purely by identities
    cross = {}
    for e in graph.edges:
        if e.axis >= axis:
            continue
        if e.src[axis][0] != "S" or e.dst[axis][0] != "S":
            continue
        key = (_truncate(e.src, axis), _truncate(e.dst, axis))
        cross[key] = cross.get(key, True) and is_identity_rewrite(e.weight)
    for (a, b), identity in sorted(cross.items(), key=lambda kv: (_coord_key(kv[0][0]), _coord_key(kv[0][1]))):
        if identity:
            uf.union(a, b)

    class_of = {c: uf.find(c) for c in singular}
    classes = sorted(set(class_of.values()), key=_coord_key)

    # ordering: wires around a shared region stay ORDER_GAP apart
    regions: dict = {}
    for e in graph.edges:
        if e.axis != axis:
            continue
        r = _truncate(e.src, axis)
        w = class_of[_truncate(e.dst, axis)]
        left, right = regions.setdefault(r, (set(), set()))
        (left if e.orientation == "b" else right).add(w)
    orderings = []
    seen = set()
    for r in sorted(regions, key=_coord_key):
        left, right = regions[r]
        for a in sorted(left, key=_coord_key):
            for b in sorted(right, key=_coord_key):
                if a != b and (a, b) not in seen:
                    seen.add((a, b))
                    orderings.append((a, b))

    # soft centering on unmerged cross-level neighbours
    attached: dict = {}
    for (a, b), identity in cross.items():
        if identity:
            continue
        ca, cb = class_of[a], class_of[b]
        if ca == cb:
            continue
        attached.setdefault(ca, set()).add(cb)
        attached.setdefault(cb, set()).add(ca)
    centerings = [
        (rep, tuple(sorted(attached[rep], key=_coord_key)))
        for rep in classes
        if rep in attached
    ]
    return _AxisPlan(axis, classes, class_of, orderings, centerings, regions)


def build_constraints(d: Diagram, k: int) -> LinearProgram:
    """Collect every free-axis program of the depth-k layout in one table."""
    _check_depth(d, k)
    graph = explode(d, k)
    variables: list = []
    constraints: list = []
    objective: list = []
    for axis in range(1, k):
        plan = _plan_axis(graph, axis)
        if not plan.classes:
            continue
        pos = {rep: LayoutVar(axis, "pos", rep) for rep in plan.classes}
        variables.extend(pos[rep] for rep in plan.classes)
        for a, b in plan.orderings:
            constraints.append(
                (((pos[a], 1.0), (pos[b], -1.0)), "<=", -ORDER_GAP)
            )
        for rep, neighbours in plan.centerings:
            slack = LayoutVar(axis, "slack", rep)
            variables.append(slack)
            objective.append((slack, CENTER_WEIGHT))
            share = 1.0 / len(neighbours)
            up = [(pos[rep], 1.0), (slack, -1.0)]
            down = [(pos[rep], -1.0), (slack, -1.0)]
            for nb in neighbours:
                up.append((pos[nb], -share))
                down.append((pos[nb], share))
            constraints.append((tuple(up), "<=", 0.0))
            constraints.append((tuple(down), "<=", 0.0))
        hi = LayoutVar(axis, "hi", ())
        lo = LayoutVar(axis, "lo", ())
        variables.extend([hi, lo])
        objective.extend([(hi, WIDTH_WEIGHT), (lo, -WIDTH_WEIGHT)])
        for rep in plan.classes:
            constraints.append((((pos[rep], 1.0), (hi, -1.0)), "<=", 0.0))
            constraints.append((((lo, 1.0), (pos[rep], -1.0)), "<=", 0.0))
    return LinearProgram(tuple(variables), tuple(constraints), tuple(objective))


def solve(lp: LinearProgram) -> dict:
    """Values for every program variable, solved with fixed pivoting."""
    if not lp.variables:
        return {}
    index = {v: j for j, v in enumerate(lp.variables)}
    c = [0.0] * len(lp.variables)
    for v, w in lp.objective:
        c[index[v]] += w
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for coeffs, rel, rhs in lp.constraints:
        row = [0.0] * len(lp.variables)
        for v, w in coeffs:
            row[index[v]] += w
        if rel == "<=":
            a_ub.append(row)
            b_ub.append(rhs)
        else:
            a_eq.append(row)
            b_eq.append(rhs)
    result = solve_lp(c, a_ub or None, b_ub or None, a_eq or None, b_eq or None)
    return {v: float(result.x[j]) for v, j in index.items()}


def check_layout(lp: LinearProgram, values: dict) -> None:
    """Re-verify a solution against its own program."""
    for coeffs, rel, rhs in lp.constraints:
        total = sum(values[v] * w for v, w in coeffs)
        if rel == "<=" and total > rhs + TOLERANCE:
            raise KernelError(f"violated: {total:g} <= {rhs:g}")
        if rel == "=" and abs(total - rhs) > TOLERANCE:
            raise KernelError(f"violated: {total:g} = {rhs:g}")


def layout(d: Diagram, k: int) -> Layout:
    """Solved positions for every node of the depth-k explosion."""
    _check_depth(d, k)
    itn = current_interner()
    return itn.memoize(f"layout@{k}", [d], lambda: _layout(d, k))


def _layout(d: Diagram, k: int) -> Layout:
    if k == 0:
        return Layout({(): ()})
    graph = explode(d, k)
    lp = build_constraints(d, k)
    values = solve(lp)
    check_layout(lp, values)
    axes = []
    for axis in range(1, k):
        plan = _plan_axis(graph, axis)
        solved = {
            rep: values[LayoutVar(axis, "pos", rep)] for rep in plan.classes
        }
        axes.append((plan, solved))
    positions = {}
    for coord in sorted(graph.nodes, key=_coord_key):
        vec = [float(_component_key(coord[0]))]
        for plan, solved in axes:
            tr = _truncate(coord, plan.axis)
            if coord[plan.axis][0] == "S":
                vec.append(solved[plan.class_of[tr]])
            else:
                vec.append(_region_position(plan, solved, tr))
        positions[coord] = tuple(vec)
    return Layout(positions)


def _region_position(plan: _AxisPlan, solved: dict, tr: tuple) -> float:
    left, right = plan.regions.get(tr, (set(), set()))
    lx = [solved[r] for r in left]
    rx = [solved[r] for r in right]
    if lx and rx:
        return (max(lx) + min(rx)) / 2.0
    if rx:
        return min(rx) - 1.0
    if lx:
        return max(lx) + 1.0
    return 0.0


def _check_depth(d: Diagram, k: int) -> None:
    n = diagram_dimension(d)
    if k < 0 or k > min(n, 4):
        raise LayoutRangeError(f"layout depth {k} out of range for dimension {n}")
