"""Finite matrix groups built by closure from generator unitaries.

Element identity uses a canonical key: entries rounded to a fixed number of
decimal places, hashed row-major, with every key hit confirmed by a max-abs
tolerance check. Element indices are assigned in breadth-first discovery
order starting from {identity} + generators, multiplying on the right by
generators, so closing the same generator list twice yields identical
tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, KeyCollision, OrderCapExceeded
from .linalg import canonical_key, check_unitary, max_abs


@dataclass(frozen=True)
class ClosureConfig:
    max_order: int = 20000
    tol: float = 1e-9
    round_digits: int = 9

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass
class FiniteMatrixGroup:
    """Closure of a gate set, with Cayley and class structure.

    Fields:
        dim: matrix dimension.
        mats: (order, dim, dim) complex array; mats[i] is element i. The
            identity is always element 0.
        cayley: (order, order) int array; cayley[a, b] = index of
            mats[a] @ mats[b].
        inverses: (order,) int array.
        classes: conjugacy classes as tuples of indices, ordered by the
            smallest member, so the identity class comes first.
        class_of: (order,) int array mapping element -> class index.
        generators: indices of the (deduplicated) input generators.
    """

    dim: int
    mats: np.ndarray
    cayley: np.ndarray
    inverses: np.ndarray
    classes: list[tuple[int, ...]]
    class_of: np.ndarray
    generators: list[int]
    tol: float = 1e-9
    round_digits: int = 9
    _index: dict[bytes, int] = field(default_factory=dict, repr=False)

    identity: int = 0

    @property
    def order(self) -> int:
        return self.mats.shape[0]

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(dim={self.dim}, order={self.order}, k={len(self.classes)})"


def _confirm(candidate: np.ndarray, stored: np.ndarray, tol: float) -> bool:
    return max_abs(candidate - stored) <= tol


def close_group(generators: list[np.ndarray], cfg: ClosureConfig | None = None) -> FiniteMatrixGroup:
    """Close a generator list under matrix multiplication.

    Raises OrderCapExceeded if more than cfg.max_order elements are
    discovered, DimensionMismatch on inconsistent generator shapes and
    NotUnitary when a generator fails the unitarity check.
    """
    cfg = cfg or ClosureConfig()
    if not generators:
        raise DimensionMismatch("need at least one generator to fix the dimension")
    gens = [check_unitary(g) for g in generators]
    dim = gens[0].shape[0]
    for g in gens[1:]:
        if g.shape[0] != dim:
            raise DimensionMismatch(f"generator dims differ: {g.shape[0]} vs {dim}")

    mats: list[np.ndarray] = [np.eye(dim, dtype=complex)]
    index: dict[bytes, int] = {canonical_key(mats[0], cfg.round_digits): 0}
    parents: list[tuple[int, int]] = [(-1, -1)]  # (parent element, generator slot)

    # locality buckets on a fixed random projection back the rounded-key fast
    # path: any two matrices within 8*tol project into adjacent buckets, so a
    # key miss only ever scans a handful of true neighbor candidates
    proj_rng = np.random.default_rng(0x5EED)
    proj_mat = proj_rng.standard_normal((dim, dim)) + 1j * proj_rng.standard_normal((dim, dim))
    proj_l1 = float(np.sum(np.abs(proj_mat.real)) + np.sum(np.abs(proj_mat.imag)))
    bucket_w = proj_l1 * 8.0 * cfg.tol
    buckets: dict[int, list[int]] = {}

    def _proj_bucket(m: np.ndarray) -> int:
        p = float(np.sum(proj_mat.real * m.real) + np.sum(proj_mat.imag * m.imag))
        return int(p // bucket_w)

    buckets[_proj_bucket(mats[0])] = [0]

    def lookup_or_add(m: np.ndarray, parent: int, slot: int) -> int:
        key = canonical_key(m, cfg.round_digits)
        hit = index.get(key)
        if hit is not None and _confirm(m, mats[hit], cfg.tol):
            return hit
        b = _proj_bucket(m)
        best, best_d = -1, np.inf
        for nb in (b - 1, b, b + 1):
            for cand in buckets.get(nb, ()):
                d = max_abs(m - mats[cand])
                if d < best_d:
                    best, best_d = cand, d
        if best_d <= cfg.tol:
            return best
        if best_d <= 8 * cfg.tol:
            raise KeyCollision(
                f"two products are {best_d:.2e} apart, between tol and 8*tol; "
                f"the generated set is not tolerance-separated")
        count = len(mats)
        if count >= cfg.max_order:
            raise OrderCapExceeded(
                f"closure passed max_order={cfg.max_order}; generated group "
                f"is not finite or exceeds the cap")
        mats.append(m)
        index[key] = count
        buckets.setdefault(b, []).append(count)
        parents.append((parent, slot))
        return count

    gen_idx: list[int] = []
    for slot, g in enumerate(gens):
        i = lookup_or_add(g, 0, slot)
        if i not in gen_idx:
            gen_idx.append(i)

    n_slots = len(gens)
    # right_by[a][j] = index of mats[a] @ gens[j]; every element is expanded once
    right_rows: dict[int, list[int]] = {}
    frontier = list(range(len(mats)))
    while frontier:
        batch = np.stack([mats[i] for i in frontier])
        next_frontier: list[int] = []
        rows = [[0] * n_slots for _ in frontier]
        for j, g in enumerate(gens):
            prods = batch @ g
            for pos, src in enumerate(frontier):
                before = len(mats)
                idx = lookup_or_add(prods[pos], src, j)
                rows[pos][j] = idx
                if len(mats) > before:
                    next_frontier.append(idx)
        for pos, src in enumerate(frontier):
            right_rows[src] = rows[pos]
        frontier = next_frontier

    n = len(mats)
    right = np.zeros((n, n_slots), dtype=np.int64)
    for a in range(n):
        right[a] = right_rows[a]

    # cayley[:, b] by composing right-multiplication permutations along the
    # BFS tree: b = parent @ gens[j] gives col(b) = right[col(parent), j].
    dtype = np.int16 if n < 2 ** 15 else np.int32
    cayley = np.zeros((n, n), dtype=dtype)
    cayley[:, 0] = np.arange(n)
    for b in range(1, n):
        p, j = parents[b]
        cayley[:, b] = right[cayley[:, p], j]

    inverses = np.argmin(cayley, axis=1).astype(np.int64)
    classes, class_of = conjugacy_classes_from_cayley(cayley, inverses)

    return FiniteMatrixGroup(
        dim=dim,
        mats=np.stack(mats),
        cayley=cayley,
        inverses=inverses,
        classes=classes,
        class_of=class_of,
        generators=gen_idx,
        tol=cfg.tol,
        round_digits=cfg.round_digits,
        _index=index,
    )


def element_of(group: FiniteMatrixGroup, m: np.ndarray) -> int | None:
    """Index of the unique element matching m within the group tolerance,
    or None when absent."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (group.dim, group.dim):
        raise DimensionMismatch(f"expected shape {(group.dim, group.dim)}, got {m.shape}")
    hit = group._index.get(canonical_key(m, group.round_digits))
    if hit is not None and _confirm(m, group.mats[hit], group.tol):
        return hit
    # rounding can straddle a key boundary; fall back to a scan
    defects = np.max(np.abs(group.mats - m[None, :, :]), axis=(1, 2))
    best = int(np.argmin(defects))
    if defects[best] <= group.tol:
        return best
    return None


def conjugacy_classes_from_cayley(
    cayley: np.ndarray, inverses: np.ndarray
) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Partition indices into conjugacy classes using only the cayley table.

    a and b share a class iff g a g^-1 = b for some g. Classes are ordered by
    their smallest member, so the identity's singleton class is first.
    """
    n = cayley.shape[0]
    all_g = np.arange(n)
    class_of = np.full(n, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for a in range(n):
        if class_of[a] >= 0:
            continue
        ag_inv = cayley[a, inverses[all_g]]
        orbit = np.unique(cayley[all_g, ag_inv])
        ci = len(classes)
        classes.append(tuple(int(x) for x in orbit))
        class_of[orbit] = ci
    return classes, class_of


def conjugacy_classes(group: FiniteMatrixGroup) -> list[tuple[int, ...]]:
    classes, _ = conjugacy_classes_from_cayley(group.cayley, group.inverses)
    return classes


def center_and_abelian(group: FiniteMatrixGroup) -> tuple[list[int], bool]:
    """Center as element indices plus an is-abelian flag, both from the
    cayley table."""
    center = [
        z for z in range(group.order)
        if np.array_equal(group.cayley[z, :], group.cayley[:, z])
    ]
    return center, len(center) == group.order


def group_to_json(group: FiniteMatrixGroup) -> dict:
    """Dump format used by the CLI: dim, order, elements as row-major
    [re, im] pair arrays, generator indices, classes."""
    elements = [
        [[float(v.real), float(v.imag)] for v in mat.ravel()]
        for mat in group.mats
    ]
    return {
        "dim": group.dim,
        "order": group.order,
        "elements": elements,
        "generators": list(group.generators),
        "classes": [list(c) for c in group.classes],
    }
