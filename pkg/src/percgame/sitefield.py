"""Deterministic, seed-indexed site randomness.

Every random decision in this package is a pure function of
``(seed, site coordinates, stream tag)``, so that any two consumers that
name the same triple see the same uniform variate and any two distinct
triples are statistically independent.  Random access by site is what the
backward-induction solver needs (it visits sites in layer order), and exact
replays are what the coupling checks need.

Bit-level definition (normative, reproducible across platforms)
---------------------------------------------------------------
All arithmetic is on 64-bit unsigned words.  ``mix64`` is the splitmix64
finalizer:

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Coordinates are packed three per word in 21-bit fields, each offset by
2**20 (so coordinates must satisfy ``|c| < 2**20``):

    word_g = sum((c[3g+j] + 2**20) << (21*j)  for j in 0..2)

The hash of a triple chains these words through ``mix64``:

    h = mix64(seed)
    for each coordinate word w:   h = mix64(h ^ w)
    for each tag element t:       h = mix64(h ^ t)
    u = (h >> 11) * 2.0**-53          # uniform in [0, 1)

A tag is a non-negative int or a tuple of them; an int tag behaves as a
1-tuple.  Tag registry used in this package:

    0          open/closed status of a lattice site (``is_closed``)
    1          boundary-value sampling in the slab/triangle solver
    t          ring-PCA step at time t (sites are 1-d cell indices)
    (t, i)     free-running Glauber sweep t, vertex class i

The game/Glauber coupling intentionally reuses tag 0 on slab sites: the
same closed/open bit drives both the game recursion and the coupled class
update.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Optional

import numpy as np

_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

COORD_OFFSET = 1 << 20
COORD_LIMIT = 1 << 20  # packed coordinates must satisfy |c| < COORD_LIMIT

_INV_2_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """Splitmix64 finalizer on a Python int (mod 2**64)."""
    z &= _MASK
    z ^= z >> 30
    z = (z * _C1) & _MASK
    z ^= z >> 27
    z = (z * _C2) & _MASK
    z ^= z >> 31
    return z


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_C1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_C2)
    z = z ^ (z >> np.uint64(31))
    return z


def _tag_elements(tag) -> tuple[int, ...]:
    if isinstance(tag, (int, np.integer)):
        return (int(tag),)
    return tuple(int(t) for t in tag)


def _pack_words(coords: np.ndarray) -> np.ndarray:
    """Pack integer coordinates, shape (..., d), into uint64 words (..., nw)."""
    if np.any(np.abs(coords) >= COORD_LIMIT):
        raise ValueError(f"coordinates must satisfy |c| < {COORD_LIMIT}")
    d = coords.shape[-1]
    nwords = (d + 2) // 3
    shifted = (coords + COORD_OFFSET).astype(np.uint64)
    words = np.zeros(coords.shape[:-1] + (nwords,), dtype=np.uint64)
    for j in range(d):
        words[..., j // 3] |= shifted[..., j] << np.uint64(21 * (j % 3))
    return words


def hash_uniforms(seeds, coords, tag=0) -> np.ndarray:
    """Uniform variates for every (seed, site, tag) combination.

    ``seeds`` is a scalar or shape (S,) int array; ``coords`` is an integer
    array of shape (..., d) (or (...,) for 1-d sites).  Returns float64 of
    shape (...) for a scalar seed, or (S, ...) for a seed vector.
    """
    coords = np.asarray(coords, dtype=np.int64)
    if coords.ndim == 0:
        coords = coords.reshape(1)
    if coords.ndim == 1:
        coords = coords[:, None]
    seeds_arr = np.asarray(seeds, dtype=np.uint64)
    scalar_seed = seeds_arr.ndim == 0
    with np.errstate(over="ignore"):
        h = _mix64_np(seeds_arr.reshape(-1))  # (S,)
        words = _pack_words(coords)  # (..., nw)
        out_shape = (h.shape[0],) + words.shape[:-1]
        acc = np.broadcast_to(h.reshape((-1,) + (1,) * (words.ndim - 1)), out_shape).copy()
        for w in range(words.shape[-1]):
            acc = _mix64_np(acc ^ words[None, ..., w])
        for t in _tag_elements(tag):
            acc = _mix64_np(acc ^ np.uint64(t & _MASK))
    u = (acc >> np.uint64(11)).astype(np.float64) * _INV_2_53
    return u[0] if scalar_seed else u


def hash_uniform_scalar(seed: int, coords, tag=0) -> float:
    """Pure-Python scalar path; bit-identical to :func:`hash_uniforms`."""
    h = mix64(seed)
    coords = tuple(int(c) for c in (coords if hasattr(coords, "__len__") else (coords,)))
    for g in range(0, len(coords), 3):
        word = 0
        for j, c in enumerate(coords[g:g + 3]):
            if abs(c) >= COORD_LIMIT:
                raise ValueError(f"coordinates must satisfy |c| < {COORD_LIMIT}")
            word |= (c + COORD_OFFSET) << (21 * j)
        h = mix64(h ^ word)
    for t in _tag_elements(tag):
        h = mix64(h ^ (t & _MASK))
    return (h >> 11) * _INV_2_53


@dataclass(frozen=True)
class SiteField:
    """Percolation environment: each site closed with probability p.

    ``is_closed`` is a deterministic pure function of (seed, site, p); the
    closed/open bit of a site is derived from the tag-0 uniform.  ``family``
    is optional context (carried for reporting, not used in the hash).
    """

    seed: int
    p: float
    family: Optional[object] = dataclass_field(default=None)

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")

    def uniform_at(self, x, stream_tag=0) -> float:
        return hash_uniform_scalar(self.seed, x, stream_tag)

    def uniforms(self, coords, stream_tag=0) -> np.ndarray:
        return hash_uniforms(self.seed, coords, stream_tag)

    def is_closed(self, x) -> bool:
        return self.uniform_at(x, 0) < self.p

    def closed_mask(self, coords) -> np.ndarray:
        """Vectorized is_closed over an array of sites, shape (..., d)."""
        return self.uniforms(coords, 0) < self.p
