"""Central hyperplane arrangements given by their normal vectors.

Provides the sign-pattern vector set E, the lattice of flats (spans of
subsets of the normals) with its Mobius function, the Zaslavsky chamber
count, and an independent deletion-restriction region counter used as an
oracle against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .errors import GuardError
from .exactlin import (
    SubspaceBasis,
    Vector,
    _insert,
    _reduce,
    primitive,
    rank,
)

__all__ = [
    "VectorSet",
    "Flat",
    "IntersectionLattice",
    "FlatTable",
    "ensure_table",
    "generate_sign_vectors",
    "build_lattice",
    "chamber_count",
    "chamber_count_dr",
    "schlafli_bound",
    "read_vector_set",
    "write_vector_set",
]

SIGN_VECTORS_MAX_N = 20
SCHLAFLI_MAX_N = 62


@dataclass(frozen=True)
class VectorSet:
    """An ordered set of arrangement normals w_0..w_{T-1} spanning R^d.

    Zero vectors and parallel pairs are rejected: coincident hyperplanes
    would double-count atoms of the lattice, and the flag enumeration
    indexes distinct vectors.
    """

    vectors: tuple[Vector, ...]
    ambient_dim: int

    def __post_init__(self):
        d = self.ambient_dim
        seen: dict[Vector, int] = {}
        for i, v in enumerate(self.vectors):
            if len(v) != d:
                raise ValueError(f"vector {i} has length {len(v)}, expected {d}")
            if not any(v):
                raise ValueError(f"vector {i} is zero")
            p = primitive(v)
            if p in seen:
                raise ValueError(f"vectors {seen[p]} and {i} are parallel")
            seen[p] = i
        if len(self.vectors) < d:
            raise ValueError(
                f"{len(self.vectors)} vectors cannot span R^{d}"
            )
        if rank(self.vectors) != d:
            raise ValueError(f"vectors do not span R^{self.ambient_dim}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "VectorSet":
        vecs = tuple(tuple(int(x) for x in row) for row in rows)
        if not vecs:
            raise ValueError("empty vector set")
        return cls(vecs, len(vecs[0]))

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> Vector:
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)


def generate_sign_vectors(n: int) -> VectorSet:
    """All 2^n vectors (1, b_1, .., b_n) with b_i = +-1, in canonical order.

    These are the normals whose arrangement's chambers are in bijection
    with the threshold functions of n variables.  Vector k has b_{j+1} = +1
    when bit j of k (most significant bit first) is 0, and -1 when it is 1;
    so k = 0 is the all-plus vector and k = 2^n - 1 the all-minus one.
    """
    if not 1 <= n <= SIGN_VECTORS_MAX_N:
        raise GuardError("generate_sign_vectors.n", f"1 <= n <= {SIGN_VECTORS_MAX_N}", n)
    vecs = []
    for k in range(1 << n):
        bits = [(k >> (n - 1 - j)) & 1 for j in range(n)]
        vecs.append((1,) + tuple(1 - 2 * b for b in bits))
    return VectorSet(tuple(vecs), n + 1)


def schlafli_bound(n: int) -> int:
    """Upper bound 2 * sum_{i<=n} C(2^n - 1, i) on the sign-vector
    arrangement's chamber count, counting cells cut from a sphere by
    general-position great circles."""
    if not 1 <= n <= SCHLAFLI_MAX_N:
        raise GuardError("schlafli_bound.n", f"1 <= n <= {SCHLAFLI_MAX_N}", n)
    m = (1 << n) - 1
    return 2 * sum(math.comb(m, i) for i in range(n + 1))


class FlatTable:
    """Interning table for the flats (distinct spans of subsets) of a VectorSet.

    Flats are identified by their canonical primitive-RREF rows and stored
    under small integer ids.  The table is a cache: it never affects results,
    only the cost of obtaining them.  Id 0 is the zero subspace.
    """

    def __init__(self, vs: VectorSet):
        self.vs = vs
        self._ids: dict[tuple[Vector, ...], int] = {}
        self.rows: list[tuple[Vector, ...]] = []
        self.masks: list[int] = []
        self.counts: list[int] = []
        self.dims: list[int] = []
        self._extend_memo: dict[int, int] = {}
        self._covers: dict[int, list[int]] = {}
        self._members_memo: dict[int, tuple[int, ...]] = {}
        self._closed = False
        self._flag_groups: dict[int, dict[int, int]] | None = None
        self.zero_fid = self._intern(())

    def _intern(self, rows: tuple[Vector, ...]) -> int:
        fid = self._ids.get(rows)
        if fid is not None:
            return fid
        fid = len(self.rows)
        self._ids[rows] = fid
        self.rows.append(rows)
        mask = 0
        cnt = 0
        for j, w in enumerate(self.vs.vectors):
            if not any(_reduce(rows, w)):
                mask |= 1 << j
                cnt += 1
        self.masks.append(mask)
        self.counts.append(cnt)
        self.dims.append(len(rows))
        return fid

    def extend(self, fid: int, i: int) -> int:
        """Id of span(flat + w_i).  Dimension grows iff i is not a member."""
        key = fid * len(self.vs.vectors) + i
        out = self._extend_memo.get(key)
        if out is None:
            rows, _ = _insert(self.rows[fid], self.vs.vectors[i])
            out = self._intern(rows)
            self._extend_memo[key] = out
        return out

    def covers(self, fid: int) -> list[int]:
        """Ids of the flats one dimension up reachable by adjoining a vector."""
        out = self._covers.get(fid)
        if out is None:
            mask = self.masks[fid]
            seen = set()
            for i in range(len(self.vs.vectors)):
                if not (mask >> i) & 1:
                    seen.add(self.extend(fid, i))
            out = sorted(seen)
            self._covers[fid] = out
        return out

    def close(self) -> None:
        """Materialize every flat and the full cover (Hasse) diagram."""
        if self._closed:
            return
        frontier = [self.zero_fid]
        while frontier:
            nxt = []
            for fid in frontier:
                if self.dims[fid] >= self.vs.ambient_dim:
                    continue
                for cid in self.covers(fid):
                    if cid not in self._covers and self.dims[cid] < self.vs.ambient_dim:
                        nxt.append(cid)
            # A flat can be re-reached along several chains; dedupe.
            frontier = sorted(set(nxt) - set(self._covers))
        for fid in range(len(self.rows)):
            if self.dims[fid] == self.vs.ambient_dim:
                self._covers.setdefault(fid, [])
        self._closed = True

    def fids_by_dim(self) -> list[list[int]]:
        self.close()
        out: list[list[int]] = [[] for _ in range(self.vs.ambient_dim + 1)]
        for fid in range(len(self.rows)):
            out[self.dims[fid]].append(fid)
        return out

    def subspace(self, fid: int) -> SubspaceBasis:
        return SubspaceBasis(self.vs.ambient_dim, self.rows[fid])

    def members(self, fid: int) -> tuple[int, ...]:
        out = self._members_memo.get(fid)
        if out is None:
            mask = self.masks[fid]
            out = tuple(i for i in range(len(self.vs.vectors)) if (mask >> i) & 1)
            self._members_memo[fid] = out
        return out

    def flag_group_counts(self) -> dict[int, dict[int, int]]:
        """Ordered independent tuples grouped by (top flat, flag product).

        Returns {top_fid: {product: number_of_tuples}} over all ordered
        linearly independent (d-1)-tuples, computed by a chain walk over the
        Hasse diagram: a tuple corresponds to the chain of its suffix spans,
        a chain F_1 < .. < F_{d-1} is shared by exactly
        prod_l (count(F_l) - count(F_{l-1})) tuples, and every tuple on one
        chain has the same flag product prod_l count(F_l), where count is
        the number of vectors lying in a flat.
        """
        if self._flag_groups is not None:
            return self._flag_groups
        self.close()
        n = self.vs.ambient_dim - 1
        layer: dict[int, dict[int, int]] = {self.zero_fid: {1: 1}}
        for k in range(n):
            nxt: dict[int, dict[int, int]] = {}
            for fid, prods in layer.items():
                c_lo = self.counts[fid]
                for cid in self.covers(fid):
                    c_hi = self.counts[cid]
                    mult = c_hi - c_lo
                    acc = nxt.setdefault(cid, {})
                    for prod, cnt in prods.items():
                        key = prod * c_hi
                        acc[key] = acc.get(key, 0) + cnt * mult
            layer = nxt
        self._flag_groups = layer
        return layer


@dataclass(frozen=True)
class Flat:
    """A flat of the arrangement: a subspace plus the normals lying in it."""

    subspace: SubspaceBasis
    members: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.subspace.dim


class IntersectionLattice:
    """The poset of flats ordered by inclusion, with Mobius values from 0-hat.

    Ordering is containment of member sets, which for flats coincides with
    subspace inclusion.  Mobius values satisfy mu(0) = 1 and, for t > 0,
    sum_{s <= t} mu(s) = 0.
    """

    def __init__(self, table: FlatTable, mobius_by_fid: list[int]):
        self._table = table
        self._mobius = mobius_by_fid
        order = sorted(range(len(table.rows)), key=lambda f: (table.dims[f], f))
        self._order = order
        self.flats: tuple[Flat, ...] = tuple(
            Flat(table.subspace(f), table.members(f)) for f in order
        )
        self.mobius: dict[Flat, int] = {
            flat: mobius_by_fid[f] for flat, f in zip(self.flats, order)
        }
        self.bottom = self.flats[0]
        self.top = self.flats[-1]

    @property
    def vector_set(self) -> VectorSet:
        return self._table.vs

    @staticmethod
    def leq(s: Flat, t: Flat) -> bool:
        if s.dim == 0:
            return True
        sm = set(s.members)
        return sm.issubset(t.members) and s.dim <= t.dim

    def chamber_count(self) -> int:
        return sum(abs(m) for m in self._mobius)


def ensure_table(H: VectorSet, table: FlatTable | None = None) -> FlatTable:
    """Reuse a caller-provided flat table after checking it matches H."""
    if table is None:
        return FlatTable(H)
    if table.vs is not H and table.vs != H:
        raise ValueError("flat table was built for a different vector set")
    return table


def build_lattice(H: VectorSet, table: FlatTable | None = None) -> IntersectionLattice:
    """Enumerate all flats by closure from the atoms and solve the Mobius
    recursion mu(t) = -sum_{s<t} mu(s) bottom-up by dimension."""
    table = ensure_table(H, table)
    table.close()
    nflats = len(table.rows)
    children: list[list[int]] = [[] for _ in range(nflats)]
    for fid in range(nflats):
        for cid in table.covers(fid):
            children[cid].append(fid)
    mobius = [0] * nflats
    mobius[table.zero_fid] = 1
    order = sorted(range(nflats), key=lambda f: table.dims[f])
    for fid in order:
        if fid == table.zero_fid:
            continue
        # Proper down-set of fid via the reversed cover diagram.
        seen = {fid}
        stack = [fid]
        total = 0
        while stack:
            for s in children[stack.pop()]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
                    total += mobius[s]
        mobius[fid] = -total
    return IntersectionLattice(table, mobius)


def chamber_count(H: VectorSet, table: FlatTable | None = None) -> int:
    """Number of chambers via Zaslavsky: sum of |mu(0,t)| over all flats."""
    return build_lattice(H, table).chamber_count()


def _hyperplane_basis(h: Vector) -> list[Vector]:
    """Integer basis of the hyperplane orthogonal to h."""
    j = next(k for k, x in enumerate(h) if x != 0)
    a = h[j]
    d = len(h)
    basis = []
    for k in range(d):
        if k == j:
            continue
        v = [0] * d
        v[k] = a
        v[j] = -h[k]
        basis.append(tuple(v))
    return basis


def _dr_regions(normals: frozenset[Vector], dim: int, memo: dict) -> int:
    if not normals:
        return 1
    key = (dim, normals)
    cached = memo.get(key)
    if cached is not None:
        return cached
    h = max(normals)
    rest = normals - {h}
    deleted = _dr_regions(rest, dim, memo)
    basis = _hyperplane_basis(h)
    induced = set()
    for w in rest:
        u = tuple(sum(b[k] * w[k] for k in range(dim)) for b in basis)
        if any(u):
            induced.add(primitive(u))
    restricted = _dr_regions(frozenset(induced), dim - 1, memo)
    out = deleted + restricted
    memo[key] = out
    return out


def chamber_count_dr(H: VectorSet) -> int:
    """Region count by deletion-restriction; independent of the lattice path.

    r(A) = r(A minus h) + r(A restricted to h), with the restriction taken
    exactly: the remaining normals are projected onto an integer basis of
    the hyperplane, zero projections dropped and parallels merged.
    """
    normals = frozenset(primitive(v) for v in H.vectors)
    return _dr_regions(normals, H.ambient_dim, {})


def write_vector_set(target: str | TextIO, vs: VectorSet) -> None:
    """Write `T d` on the first line, then one vector of d integers per line."""
    def _emit(fh: TextIO) -> None:
        fh.write(f"{len(vs)} {vs.ambient_dim}\n")
        for v in vs.vectors:
            fh.write(" ".join(str(x) for x in v) + "\n")

    if isinstance(target, str):
        with open(target, "w", encoding="ascii") as fh:
            _emit(fh)
    else:
        _emit(target)


def read_vector_set(source: str | TextIO) -> VectorSet:
    """Parse the vector-set format; lines starting with '#' are comments."""
    if isinstance(source, str):
        with open(source, "r", encoding="ascii") as fh:
            return read_vector_set(fh)
    lines = [ln.strip() for ln in source]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty vector-set file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed header {lines[0]!r}, expected 'T d'")
    try:
        t, d = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ValueError(f"malformed header {lines[0]!r}") from exc
    if len(lines) - 1 != t:
        raise ValueError(f"expected {t} vectors, found {len(lines) - 1}")
    vecs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != d:
            raise ValueError(f"vector line {ln!r} does not have {d} entries")
        try:
            vecs.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"non-integer entry in line {ln!r}") from exc
    return VectorSet(tuple(vecs), d)
