"""Doubling tori, class updates, chains, and the game coupling."""

import numpy as np
import pytest

from percgame import exact, glauber
from percgame import lattice as lat
from percgame.sitefield import SiteField

Z2 = lat.z2()
EVEN3 = lat.even_sublattice(3)
BCC4 = lat.bcc_lattice(4)
SUB3 = lat.subset_increment(3)
BIN31 = lat.binomial_family(3, 1)
BIN41 = lat.binomial_family(4, 1)
EXT3 = lat.even_sublattice_extended(3)


def test_torus_z2_is_cycle():
    t = glauber.build_doubling_torus(Z2, (10,))
    assert t.n_vertices == 10 and t.degree == 2 and t.m == 2
    for i in range(10):
        v = int(t.coords[i, 0])
        assert sorted(int(t.coords[j, 0]) for j in t.neighbors[i]) == \
            sorted(((v - 1) % 10, (v + 1) % 10))
        assert t.classes[i] == v % 2


def test_torus_even3_is_grid():
    t = glauber.build_doubling_torus(EVEN3, (6, 6))
    assert t.n_vertices == 36 and t.degree == 4
    i = {tuple(c): k for k, c in enumerate(t.coords.tolist())}[(2, 3)]
    nbrs = {tuple(t.coords[j]) for j in t.neighbors[i]}
    assert nbrs == {(1, 3), (3, 3), (2, 2), (2, 4)}


def test_torus_sub3_is_triangular():
    t = glauber.build_doubling_torus(SUB3, (6, 6))
    assert t.n_vertices == 36 and t.degree == 6 and t.m == 3
    # classes partition into three independent sets of equal size
    assert [len(m) for m in t.class_members] == [12, 12, 12]
    for i in range(36):
        assert all(t.classes[j] != t.classes[i] for j in t.neighbors[i])


def test_torus_bin31_is_hexagonal():
    t = glauber.build_doubling_torus(BIN31, (6, 6))
    assert t.n_vertices == 24 and t.degree == 3 and t.m == 2


def test_torus_bin41_is_diamond():
    t = glauber.build_doubling_torus(BIN41, (4, 4, 4))
    assert t.n_vertices == 32 and t.degree == 4 and t.m == 2


def test_torus_bcc4():
    t = glauber.build_doubling_torus(BCC4, (4, 4, 4))
    assert t.n_vertices == 16 and t.degree == 8  # bcc(3): 2 sublattices of 2Z^3


def test_torus_extended_drops_phi_edge():
    t_std = glauber.build_doubling_torus(EVEN3, (8, 8))
    t_ext = glauber.build_doubling_torus(EXT3, (8, 8))
    assert t_ext.degree == t_std.degree == 4  # the phi move adds no edge


def test_torus_incompatible_sizes():
    with pytest.raises(glauber.IncompatibleSizesError):
        glauber.build_doubling_torus(Z2, (9,))
    with pytest.raises(glauber.IncompatibleSizesError):
        glauber.build_doubling_torus(SUB3, (6, 8))
    with pytest.raises(lat.UnsupportedFamilyError):
        glauber.build_doubling_torus(lat.zd(3), (9, 9))


def test_class_update_fixtures():
    t = glauber.build_doubling_torus(Z2, (8,))
    empty = np.zeros(8, dtype=np.int8)
    sel = t.class_members[0]
    # p=1: all closed, class stays empty
    u = np.zeros(sel.size)  # u < p = 1 everywhere
    out = glauber.class_update(t, empty, 0, 1.0, "standard", u)
    assert (out == 0).all()
    # occupied neighbor forces 0 regardless of the uniform
    vals = glauber.checkerboard_config(t, 1)  # odd class fully occupied
    out = glauber.class_update(t, vals, 0, 0.0, "standard", np.full(sel.size, 0.99))
    assert (out[sel] == 0).all()
    # extended: an occupied vertex must vacate even if allowed to stay
    vals = glauber.checkerboard_config(t, 0)
    out = glauber.class_update(t, vals, 0, 0.0, "extended", np.full(sel.size, 0.99))
    assert (out[sel] == 0).all()
    # standard: same situation re-occupies (p=0, no neighbor occupied)
    out = glauber.class_update(t, vals, 0, 0.0, "standard", np.full(sel.size, 0.99))
    assert (out[sel] == 1).all()


def test_one_sweep_repairs_independence():
    # start from the all-occupied (infeasible) configuration: after one full
    # sweep the configuration is an independent set and stays one
    t = glauber.build_doubling_torus(EVEN3, (8, 8))
    vals = np.ones((1, t.n_vertices), dtype=np.int8)
    assert glauber.independence_violations(t, vals) > 0
    seeds = np.array([3])
    for sweep in range(3):
        for i in range(t.m):
            sel = t.class_members[i]
            from percgame.sitefield import hash_uniforms
            u = hash_uniforms(seeds, t.coords[sel], (sweep, i))
            vals = glauber.class_update(t, vals, i, 0.4, "standard", u)
        assert glauber.independence_violations(t, vals) == 0


def test_chain_determinism():
    t = glauber.build_doubling_torus(EVEN3, (8, 8))
    ts1, occ1 = glauber.run_chains(t, 0.3, "standard", 50, [5], "even", 10)
    ts2, occ2 = glauber.run_chains(t, 0.3, "standard", 50, [5], "even", 10)
    assert np.array_equal(occ1, occ2) and np.array_equal(ts1, ts2)


def test_ring_staggered_difference_vanishes():
    # hard-core on Z (the z2 doubling graph) has a unique Gibbs law: the
    # checkerboard memory washes out
    t = glauber.build_doubling_torus(Z2, (64,))
    seeds = np.arange(20)
    _, occ = glauber.run_chains(t, 0.25, "standard", 400, seeds, "even", 50)
    diff = glauber.staggered_difference(occ)
    tail = diff[:, -4:].mean()
    assert abs(tail) < 0.1


def test_sweep_chain_rows_schema():
    t = glauber.build_doubling_torus(Z2, (12,))
    rows = glauber.sweep_chain(t, 0.4, "standard", 10, SiteField(1, 0.4), "even", 5)
    assert rows[0][:2] == (5, 0)
    assert all(len(r) == 4 for r in rows)


def test_small_tori_exact_stationarity():
    # every built doubling torus with <= 14 vertices is exactly stationary
    # under its class updates, both variants
    cases = [
        glauber.build_doubling_torus(Z2, (10,)),
        glauber.build_doubling_torus(Z2, (14,)),
        glauber.build_doubling_torus(SUB3, (3, 3)),
        glauber.build_doubling_torus(BIN31, (3, 3)),
    ]
    for torus in cases:
        assert torus.n_vertices <= 14
        nbrs = torus.neighbor_lists()
        classes = torus.class_lists()
        assert exact.kernel_stationarity_check(nbrs, classes, 1.3) <= 1e-12
        assert exact.kernel_stationarity_check(nbrs, classes, 0.6, "extended") <= 1e-12


@pytest.mark.parametrize("fam,sizes,K,p", [
    (Z2, (16,), 12, 0.3),
    (EVEN3, (8, 8), 10, 0.2),
    (SUB3, (6, 6), 10, 0.25),
    (BIN31, (6, 6), 10, 0.3),
    (BCC4, (4, 4, 4), 8, 0.3),
    (BIN41, (4, 4, 4), 8, 0.3),
])
def test_coupling_examples(fam, sizes, K, p):
    for seed in range(3):
        rep = glauber.game_glauber_coupling_check(fam, K, sizes, p, seed)
        assert rep.ok, f"{fam.name} seed {seed}: {rep.mismatches} mismatches"


def test_coupling_extended_variant():
    for seed in range(3):
        rep = glauber.game_glauber_coupling_check(EXT3, 10, (8, 8), 0.5, seed)
        assert rep.ok and rep.variant == "extended"


def test_coupling_variant_guards():
    with pytest.raises(ValueError):
        glauber.game_glauber_coupling_check(EXT3, 6, (8, 8), 0.5, 0, "standard")
    with pytest.raises(ValueError):
        glauber.game_glauber_coupling_check(Z2, 6, (8,), 0.5, 0, "extended")
