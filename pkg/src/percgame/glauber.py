"""Hard-core Glauber class updates on doubling-graph tori, and the pathwise
coupling between the slab game recursion and the class-update chain.

A doubling torus is the finite quotient of a family's directed lattice by
its layer automorphism, with the transverse directions wrapped: a cycle for
z2, a (d-1)-dimensional grid torus for even(d), a bcc torus for bcc(d), the
triangular torus for subset(3), the hexagonal torus for binomial(3,1) and
the diamond-cubic torus for binomial(4,1).  Layers of a slab land on the
vertex classes W_0..W_{m-1} in cyclic order.

Class update of W_i at closing probability p: each vertex of W_i
independently becomes 0 if any neighbor is occupied, and otherwise becomes
1 with probability 1-p.  The stationary activity is lambda = 1/p - 1.  In
the extended variant a vertex occupied before the update is forced to 0
first (stationary activity lambda = 1 - p < 1).

Randomness: a free-running chain uses one uniform per vertex per update,
tag (sweep, class); the coupled chain driven by a game environment uses
the tag-0 closedness of the slab site (vertex coords..., layer), which is
exactly what the game recursion consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import lattice
from .lattice import GraphFamily
from .sitefield import SiteField, hash_uniforms
from .solver import SlabIndex
from .symbols import ONE, ZERO

VARIANTS = ("standard", "extended")


def _check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    return variant


@dataclass
class DoublingTorus:
    family: GraphFamily
    sizes: tuple[int, ...]
    coords: np.ndarray          # (V, tdim) torus coordinates
    classes: np.ndarray         # (V,) vertex class
    class_members: list         # per class, vertex index array
    neighbors: np.ndarray       # (V, deg) undirected adjacency

    @property
    def m(self) -> int:
        return len(self.class_members)

    @property
    def n_vertices(self) -> int:
        return self.coords.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    def neighbor_lists(self) -> list[list[int]]:
        return [sorted(set(row)) for row in self.neighbors.tolist()]

    def class_lists(self) -> list[list[int]]:
        return [sorted(m.tolist()) for m in self.class_members]


class IncompatibleSizesError(ValueError):
    pass


def build_doubling_torus(family: GraphFamily, sizes) -> DoublingTorus:
    """Finite torus quotient of the doubling graph, with its class partition.

    Sizes must respect the family's membership constraint (even for
    parity-constrained lattices, multiples of the residue period for
    subset/binomial kinds).
    """
    if family.kind == "zd" and family.d > 2:
        raise lattice.UnsupportedFamilyError("zd(d>=3) has no doubling graph")
    try:
        sizes = lattice.validate_torus_sizes(family, sizes)
    except ValueError as e:
        raise IncompatibleSizesError(str(e)) from None
    verts = lattice.torus_vertices(family, sizes)
    index = {t: i for i, t in enumerate(verts)}
    coords = np.array(verts, dtype=np.int64).reshape(len(verts), -1)
    classes = np.array([lattice.torus_class(family, t) for t in verts], dtype=np.int64)
    q = family.torus_classes
    offsets = lattice.out_offset_table(family, sizes)
    # (A2): the in-offsets of a vertex equal its out-offsets, so the
    # undirected neighborhood is the out-offset orbit; the phi move of the
    # extended kind (transverse delta 0) yields no doubling edge.
    deg = len([o for o in offsets[0] if any(o[0])])
    neighbors = np.empty((len(verts), deg), dtype=np.int64)
    for i, t in enumerate(verts):
        c = classes[i]
        j = 0
        for dt, _ in offsets[c]:
            if not any(dt):
                continue
            neighbors[i, j] = index[lattice.wrap_tcoord(
                tuple(a + b for a, b in zip(t, dt)), sizes)]
            j += 1
        if j != deg:
            raise AssertionError("inconsistent torus degree")
    members = [np.nonzero(classes == c)[0] for c in range(q)]
    return DoublingTorus(family, sizes, coords, classes, members, neighbors)


def checkerboard_config(torus: DoublingTorus, occupied_class: int) -> np.ndarray:
    """Extremal configuration occupying exactly one vertex class."""
    vals = np.zeros(torus.n_vertices, dtype=np.int8)
    vals[torus.class_members[occupied_class % torus.m]] = ONE
    return vals


def independence_violations(torus: DoublingTorus, values: np.ndarray) -> int:
    """Number of (directed) occupied-occupied adjacencies."""
    occ = values[..., torus.neighbors].max(axis=-1)
    return int(((values == ONE) & (occ == ONE)).sum())


def class_update(torus: DoublingTorus, values: np.ndarray, class_i: int,
                 p: float, variant: str, uniforms: np.ndarray) -> np.ndarray:
    """One class update; `uniforms` has one entry per class-i vertex
    (trailing axis), broadcast against leading axes of `values`."""
    _check_variant(variant)
    sel = torus.class_members[class_i % torus.m]
    out = np.array(values, dtype=np.int8, copy=True)
    occupied_nbr = (out[..., torus.neighbors[sel]] == ONE).any(axis=-1)
    allowed = ~occupied_nbr & (uniforms >= p)
    if variant == "extended":
        allowed &= out[..., sel] == ZERO
    out[..., sel] = allowed.astype(np.int8)
    return out


def run_chains(torus: DoublingTorus, p: float, variant: str, sweeps: int,
               seeds, init="even", record_every: int = 1):
    """Alternating class updates over a batch of seeds.

    init: 'even' / 'odd' (checkerboard states), 'empty', or an explicit
    (V,) array.  Vertex v in class i at sweep t draws uniform(seed, coords
    of v, tag=(t, i)).  Returns (record_sweeps, occupations (S, R, m)).
    """
    _check_variant(variant)
    seeds = np.atleast_1d(np.asarray(seeds, dtype=np.int64))
    if isinstance(init, str):
        base = {"even": lambda: checkerboard_config(torus, 0),
                "odd": lambda: checkerboard_config(torus, 1),
                "empty": lambda: np.zeros(torus.n_vertices, dtype=np.int8)}[init]()
    else:
        base = np.asarray(init, dtype=np.int8)
    values = np.broadcast_to(base, (seeds.size, torus.n_vertices)).copy()
    record_sweeps = []
    occs = []

    def record(t):
        record_sweeps.append(t)
        occs.append(np.stack(
            [(values[:, mem] == ONE).mean(axis=1) for mem in torus.class_members],
            axis=1))

    for t in range(sweeps):
        for i in range(torus.m):
            sel = torus.class_members[i]
            u = hash_uniforms(seeds, torus.coords[sel], (t, i))
            values = class_update(torus, values, i, p, variant, u)
        if (t + 1) % record_every == 0 or t == sweeps - 1:
            record(t + 1)
    return np.array(record_sweeps), np.stack(occs, axis=1)


def staggered_difference(occupations: np.ndarray) -> np.ndarray:
    """rho(W_0) - rho(W_1) along the last class axis (bipartite order
    parameter; only meaningful for m = 2)."""
    return occupations[..., 0] - occupations[..., 1]


def sweep_chain(torus: DoublingTorus, p: float, variant: str, sweeps: int,
                field: SiteField, init="even", record_every: int = 1):
    """Single-seed chain; returns rows for the
    'sweep,class,occupation,staggered_diff' schema."""
    ts, occ = run_chains(torus, p, variant, sweeps, [field.seed], init, record_every)
    rows = []
    for r, t in enumerate(ts):
        diff = float(occ[0, r, 0] - occ[0, r, 1]) if torus.m == 2 else None
        for c in range(torus.m):
            rows.append((int(t), c, float(occ[0, r, c]), diff))
    return rows


# -- the game <-> Glauber coupling -------------------------------------------


@dataclass
class CouplingReport:
    family: GraphFamily
    depth: int
    sizes: tuple[int, ...]
    p: float
    seed: int
    variant: str
    layers_checked: int
    mismatches: int

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def _game_recursion_on_slab(family: GraphFamily, index: SlabIndex, depth: int,
                            field: SiteField) -> dict:
    """Site-by-site two-valued game recursion, independent of the torus
    adjacency tables: every site is lifted to its lattice coordinates and
    the family's move set is applied directly.

    Boundary layers depth..depth+m-1 take the tag-1 Bernoulli(1/2) values.
    Returns {layer: value array over the layer's class vertices}.
    """
    m = family.m
    sizes = index.sizes
    gamma: dict[int, np.ndarray] = {}
    for layer in range(depth, depth + m):
        verts = index.verts_by_class[layer % index.q]
        vals = np.empty(verts.shape[0], dtype=np.int8)
        for i, t in enumerate(verts):
            u = field.uniform_at(tuple(int(c) for c in t) + (layer,), 1)
            vals[i] = ONE if u < 0.5 else ZERO
        gamma[layer] = vals
    for k in range(depth - 1, -1, -1):
        verts = index.verts_by_class[k % index.q]
        vals = np.empty(verts.shape[0], dtype=np.int8)
        for i, t in enumerate(verts):
            tt = tuple(int(c) for c in t)
            if field.uniform_at(tt + (k,), 0) < field.p:
                vals[i] = ZERO
                continue
            x = lattice.lift_site(family, tt, k)
            win = ONE
            for y in lattice.out_neighbors(family, x):
                ky = lattice.layer_of(family, y)
                ty = lattice.wrap_tcoord(lattice.transverse_coord(family, y), sizes)
                pos = index.pos[ty]
                if gamma[ky][pos] != ZERO:
                    win = ZERO
                    break
            vals[i] = win
        gamma[k] = vals
    return gamma


def game_glauber_coupling_check(family: GraphFamily, depth: int, sizes,
                                p: float, seed: int,
                                variant: Optional[str] = None) -> CouplingReport:
    """Exact pathwise identity sigma_k(v) = gamma(f_k^{-1}(v)).

    Runs the two-valued game recursion on the slab (site coordinates, move
    set applied directly) and, sharing the identical closed/open bits, the
    class-update chain on the doubling torus; checks equality at every
    layer k from depth-1 down to 0.  Any mismatch indicates an indexing
    inconsistency between the move set, the quotient map and the torus.
    """
    if variant is None:
        variant = "extended" if family.has_A2_prime else "standard"
    _check_variant(variant)
    if variant == "standard" and not family.has_A2:
        raise ValueError(f"{family.name} does not satisfy the standard assumptions")
    if variant == "extended" and not family.has_A2_prime:
        raise ValueError(f"{family.name} does not satisfy the extended assumptions")
    field = SiteField(seed, p, family)
    torus = build_doubling_torus(family, sizes)
    index = SlabIndex(family, sizes)
    gamma = _game_recursion_on_slab(family, index, depth, field)

    m = family.m
    sigma = np.zeros(torus.n_vertices, dtype=np.int8)
    for c in range(torus.m):
        if not np.array_equal(torus.coords[torus.class_members[c]],
                              index.verts_by_class[c]):
            raise AssertionError("torus and slab class orders diverged")
    for layer in range(depth, depth + m):
        members = torus.class_members[layer % torus.m]
        sigma[members] = gamma[layer]
    mismatches = 0
    for k in range(depth - 1, -1, -1):
        c = k % torus.m
        members = torus.class_members[c]
        u = hash_uniforms(np.asarray(seed), np.concatenate(
            [torus.coords[members],
             np.full((members.size, 1), k, dtype=np.int64)], axis=1), 0)
        sigma = class_update(torus, sigma, c, p, variant, u)
        mismatches += int((sigma[members] != gamma[k]).sum())
    return CouplingReport(family, depth, tuple(index.sizes), p, seed, variant,
                          depth, mismatches)


# -- small graphs for exact stationarity tests --------------------------------


def cycle_graph(n: int):
    """(neighbors, classes): the n-cycle with parity classes (n even)."""
    if n % 2:
        raise ValueError("cycle needs even length for a bipartition")
    nbrs = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
    classes = [[i for i in range(n) if i % 2 == 0], [i for i in range(n) if i % 2 == 1]]
    return nbrs, classes


def path_graph(n: int):
    nbrs = [[j for j in (i - 1, i + 1) if 0 <= j < n] for i in range(n)]
    classes = [[i for i in range(n) if i % 2 == 0], [i for i in range(n) if i % 2 == 1]]
    return nbrs, classes


def grid_graph(rows: int, cols: int):
    """Open-boundary grid with parity classes."""
    def vid(i, j):
        return i * cols + j

    nbrs = [[] for _ in range(rows * cols)]
    for i in range(rows):
        for j in range(cols):
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                a, b = i + di, j + dj
                if 0 <= a < rows and 0 <= b < cols:
                    nbrs[vid(i, j)].append(vid(a, b))
    classes = [[vid(i, j) for i in range(rows) for j in range(cols) if (i + j) % 2 == 0],
               [vid(i, j) for i in range(rows) for j in range(cols) if (i + j) % 2 == 1]]
    return nbrs, classes


def triangular_patch(rows: int, cols: int):
    """Open patch of the triangular lattice (edges east, north, northeast),
    with the three-coloring classes (i + j) mod 3."""
    def vid(i, j):
        return i * cols + j

    nbrs = [[] for _ in range(rows * cols)]
    for i in range(rows):
        for j in range(cols):
            for di, dj in ((0, 1), (0, -1), (1, 0), (-1, 0), (1, 1), (-1, -1)):
                a, b = i + di, j + dj
                if 0 <= a < rows and 0 <= b < cols:
                    nbrs[vid(i, j)].append(vid(a, b))
    classes = [[vid(i, j) for i in range(rows) for j in range(cols)
                if (i + j) % 3 == c] for c in range(3)]
    return nbrs, classes
