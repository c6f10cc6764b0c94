"""Attributed network snapshots, edge indexing, and stream containers.

Edge vectors use a fixed order: row-major over node pairs (i, j) with the
diagonal skipped. Undirected networks keep one row per unordered pair,
canonicalized as i < j, so m = n(n-1)/2 instead of n(n-1). All containers
are immutable after construction (arrays are marked read-only) and safe to
share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DimensionError,
    EmptyWindowError,
    HomogeneityError,
    IncompleteAttributesError,
    InvalidEdgeError,
    UnknownRoleError,
)
from .glm import EdgeFamily


def edge_count(n: int, directed: bool) -> int:
    """Number of representable edges: n(n-1) directed, n(n-1)/2 undirected."""
    return n * (n - 1) if directed else n * (n - 1) // 2


@lru_cache(maxsize=64)
def edge_pairs(n: int, directed: bool) -> tuple[np.ndarray, np.ndarray]:
    """Node-pair arrays (i, j) in vectorization order; cached and read-only."""
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    mask = ii != jj if directed else ii < jj
    i = ii[mask]
    j = jj[mask]
    i.setflags(write=False)
    j.setflags(write=False)
    return i, j


def edge_index(i: int, j: int, n: int, directed: bool) -> int:
    """Row index of edge (i, j) in the fixed vectorization order.

    Undirected indices are symmetric: (i, j) and (j, i) map to the same row.
    """
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidEdgeError(f"node ids ({i}, {j}) out of range for n={n}")
    if i == j:
        raise InvalidEdgeError(f"self-edge ({i}, {i}) is not representable")
    if directed:
        return i * (n - 1) + (j - 1 if j > i else j)
    a, b = (i, j) if i < j else (j, i)
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def vectorize(adjacency: np.ndarray, directed: bool) -> np.ndarray:
    """Extract the edge-weight vector from an n-by-n adjacency matrix.

    The diagonal is ignored. For undirected networks the upper triangle
    is taken; symmetry of the input is the caller's responsibility.
    """
    adjacency = np.asarray(adjacency)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise DimensionError(f"adjacency must be square, got {adjacency.shape}")
    i, j = edge_pairs(adjacency.shape[0], directed)
    return adjacency[i, j].astype(float)


def devectorize(weights: np.ndarray, n: int, directed: bool) -> np.ndarray:
    """Inverse of :func:`vectorize`; zero diagonal, symmetric fill if undirected."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (edge_count(n, directed),):
        raise DimensionError(
            f"expected {edge_count(n, directed)} weights, got {weights.shape}"
        )
    out = np.zeros((n, n))
    i, j = edge_pairs(n, directed)
    out[i, j] = weights
    if not directed:
        out[j, i] = weights
    return out


@dataclass(frozen=True, eq=False)
class NetworkSnapshot:
    """One observed network: edge weights at a discrete time index."""

    t: int
    n: int
    directed: bool
    weights: np.ndarray
    family: EdgeFamily

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        m = edge_count(self.n, self.directed)
        if w.shape != (m,):
            raise DimensionError(
                f"expected {m} edge weights for n={self.n}, got {w.shape}"
            )
        if self.family is EdgeFamily.BERNOULLI:
            if not np.all((w == 0.0) | (w == 1.0)):
                raise ValueError("Bernoulli snapshot weights must be 0 or 1")
        else:
            if not (np.all(w >= 0) and np.all(w == np.floor(w))):
                raise ValueError("Poisson snapshot weights must be non-negative integers")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class AttributeMatrix:
    """Edge attribute design matrix; first column is the intercept."""

    values: np.ndarray
    n: int
    directed: bool

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        m = edge_count(self.n, self.directed)
        if v.ndim != 2 or v.shape[0] != m:
            raise DimensionError(f"expected {m} rows for n={self.n}, got {v.shape}")
        if not np.all(v[:, 0] == 1.0):
            raise ValueError("first attribute column must be identically 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1] - 1

    def index_of(self, i: int, j: int) -> int:
        return edge_index(i, j, self.n, self.directed)

    def pair_of(self, row: int) -> tuple[int, int]:
        i, j = edge_pairs(self.n, self.directed)
        return int(i[row]), int(j[row])

    def row(self, i: int, j: int) -> np.ndarray:
        return self.values[self.index_of(i, j)]


def build_attribute_matrix(
    edge_attrs: Mapping[tuple[int, int], Sequence[float]] | None,
    n: int,
    directed: bool,
) -> AttributeMatrix:
    """Assemble the m-by-(p+1) design from per-edge attribute vectors.

    ``edge_attrs`` maps node pairs to length-p vectors; every representable
    edge must be covered. Undirected edges accept either key order; giving
    both orders with different values is an error. ``None`` builds the
    intercept-only design (p=0).
    """
    m = edge_count(n, directed)
    if edge_attrs is None:
        return AttributeMatrix(np.ones((m, 1)), n, directed)
    i_arr, j_arr = edge_pairs(n, directed)
    p = None
    values = None
    for row, (i, j) in enumerate(zip(i_arr, j_arr)):
        key = (int(i), int(j))
        if key in edge_attrs:
            attrs = edge_attrs[key]
            if not directed and (key[1], key[0]) in edge_attrs:
                other = edge_attrs[(key[1], key[0])]
                if not np.array_equal(np.asarray(attrs, float), np.asarray(other, float)):
                    raise IncompleteAttributesError(
                        f"conflicting attributes for undirected edge {key}"
                    )
        elif not directed and (key[1], key[0]) in edge_attrs:
            attrs = edge_attrs[(key[1], key[0])]
        else:
            raise IncompleteAttributesError(f"missing attributes for edge {key}")
        attrs = np.asarray(attrs, dtype=float).ravel()
        if p is None:
            p = attrs.shape[0]
            values = np.ones((m, p + 1))
        elif attrs.shape[0] != p:
            raise IncompleteAttributesError(
                f"edge {key} has {attrs.shape[0]} attributes, expected {p}"
            )
        values[row, 1:] = attrs
    return AttributeMatrix(values, n, directed)


def role_pair_order(role_set: Sequence[str]) -> list[tuple[str, str]]:
    """Ordered (src, dst) role pairs; the first pair is the reference level."""
    roles = list(role_set)
    if len(set(roles)) != len(roles):
        raise ValueError("role_set contains duplicates")
    return [(a, b) for a in roles for b in roles]


def role_pair_columns(role_set: Sequence[str]) -> list[str]:
    """Dummy-column names, one per non-reference role pair."""
    return [f"{a}->{b}" for a, b in role_pair_order(role_set)[1:]]


def encode_role_pairs(
    src_role: str, dst_role: str, role_set: Sequence[str]
) -> np.ndarray:
    """Dummy-encode an ordered role pair against the reference (first) pair.

    With k distinct ordered pairs the result has length k-1 and sum 0
    (reference pair) or 1.
    """
    roles = list(role_set)
    for role in (src_role, dst_role):
        if role not in roles:
            raise UnknownRoleError(f"role {role!r} not in role set {roles}")
    k = len(roles)
    idx = roles.index(src_role) * k + roles.index(dst_role)
    out = np.zeros(k * k - 1)
    if idx > 0:
        out[idx - 1] = 1.0
    return out


def _check_homogeneous(snapshots: Sequence[NetworkSnapshot],
                       attributes: Sequence[AttributeMatrix]) -> None:
    first, x0 = snapshots[0], attributes[0]
    for snap, x in zip(snapshots, attributes):
        if (snap.n, snap.directed, snap.family) != (first.n, first.directed, first.family):
            raise HomogeneityError(
                f"snapshot t={snap.t} differs in n/directedness/family from t={first.t}"
            )
        if (x.n, x.directed, x.p) != (x0.n, x0.directed, x0.p):
            raise HomogeneityError(f"attribute matrix at t={snap.t} differs in shape")


@dataclass(frozen=True, eq=False)
class NetworkStream:
    """Ordered sequence of (snapshot, attributes) with strictly increasing t."""

    snapshots: tuple[NetworkSnapshot, ...]
    attributes: tuple[AttributeMatrix, ...]

    def __post_init__(self):
        snaps = tuple(self.snapshots)
        attrs = tuple(self.attributes)
        if len(snaps) != len(attrs):
            raise DimensionError("one attribute matrix per snapshot required")
        if snaps:
            _check_homogeneous(snaps, attrs)
            times = [s.t for s in snaps]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise HomogeneityError("snapshot times must be strictly increasing")
        object.__setattr__(self, "snapshots", snaps)
        object.__setattr__(self, "attributes", attrs)

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[NetworkSnapshot, AttributeMatrix]]
    ) -> "NetworkStream":
        pairs = list(pairs)
        return cls(tuple(s for s, _ in pairs), tuple(x for _, x in pairs))

    def __len__(self) -> int:
        return len(self.snapshots)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return NetworkStream(self.snapshots[idx], self.attributes[idx])
        return self.snapshots[idx], self.attributes[idx]

    def __iter__(self):
        return iter(zip(self.snapshots, self.attributes))

    @property
    def family(self) -> EdgeFamily:
        return self.snapshots[0].family

    @property
    def n(self) -> int:
        return self.snapshots[0].n

    @property
    def directed(self) -> bool:
        return self.snapshots[0].directed

    @property
    def p(self) -> int:
        return self.attributes[0].p


def aggregate_window(
    window: NetworkStream | Sequence[tuple[NetworkSnapshot, AttributeMatrix]],
) -> tuple[np.ndarray, np.ndarray]:
    """Stack a window of snapshots into one pooled design.

    Returns (weights, X) with m * l_w rows, suitable for a single GLM fit.
    """
    pairs = list(window)
    if not pairs:
        raise EmptyWindowError("cannot aggregate an empty window")
    _check_homogeneous([s for s, _ in pairs], [x for _, x in pairs])
    w = np.concatenate([s.weights for s, _ in pairs])
    X = np.vstack([x.values for _, x in pairs])
    return w, X


def accumulate_initial_window(
    snapshots: Sequence[NetworkSnapshot],
) -> NetworkSnapshot:
    """Collapse the first snapshots into one network.

    Binary snapshots take the union (edge present if present anywhere in
    the window); count snapshots sum their weights. The aggregate keeps
    the window's last time index.
    """
    snaps = list(snapshots)
    if not snaps:
        raise EmptyWindowError("cannot accumulate an empty window")
    first = snaps[0]
    for snap in snaps:
        if (snap.n, snap.directed, snap.family) != (first.n, first.directed, first.family):
            raise HomogeneityError("window snapshots must agree on n/directedness/family")
    stacked = np.stack([s.weights for s in snaps])
    if first.family is EdgeFamily.BERNOULLI:
        weights = stacked.max(axis=0)
    else:
        weights = stacked.sum(axis=0)
    return NetworkSnapshot(
        t=snaps[-1].t, n=first.n, directed=first.directed,
        weights=weights, family=first.family,
    )
