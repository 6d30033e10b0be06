"""Integral lattices in rational ambient coordinates.

A lattice is stored as a row basis over Q.  All norms and inner
products come from the ambient standard inner product; the interesting
lattices here are the even-coordinate model of E8, its triple direct
sum, root lattices A_n, rescalings by sqrt(2) (realized rationally by
doubling coordinates), tensor products, and the index-3 sublattice of
E8 isometric to A8 together with its glue structure.

Shell enumeration (all vectors of a prescribed norm) is exact: a
rational quadratic completion of the Gram matrix drives a bounded
depth-first search, and results can be persisted in a text cache.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .numerics import Matrix, Q, dot

QVec = Tuple[Fraction, ...]


def _qvec(v: Sequence) -> QVec:
    return tuple(Fraction(x) for x in v)


def _doubled(v: Sequence[Fraction]) -> Tuple[int, ...]:
    out = []
    for x in v:
        d = 2 * Fraction(x)
        if d.denominator != 1:
            raise ValueError(f"coordinate {x} is not a half-integer")
        out.append(d.numerator)
    return tuple(out)


class Lattice:
    """An integral lattice given by linearly independent basis rows."""

    def __init__(self, label: str, basis: Sequence[Sequence]) -> None:
        if not label or any(ch.isspace() for ch in label):
            raise ValueError("lattice label must be nonempty without spaces")
        self.label = label
        self.basis: Tuple[QVec, ...] = tuple(_qvec(r) for r in basis)
        if not self.basis:
            raise ValueError("empty basis")
        self.ambient_dim = len(self.basis[0])
        if any(len(r) != self.ambient_dim for r in self.basis):
            raise ValueError("ragged basis")
        self.rank = len(self.basis)

    def __repr__(self) -> str:
        return f"Lattice({self.label!r}, rank={self.rank}, ambient={self.ambient_dim})"

    @cached_property
    def gram(self) -> Matrix:
        return Matrix([[dot(a, b) for b in self.basis] for a in self.basis])

    @cached_property
    def det(self) -> Fraction:
        d = self.gram.det()
        if d <= 0:
            raise ValueError(f"basis of {self.label} is not linearly independent")
        return d

    @cached_property
    def _doubled_basis(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(_doubled(r) for r in self.basis)

    @cached_property
    def _coord_solver(self) -> Tuple[Tuple[Tuple[int, ...], ...], int]:
        # Integer form of B^T (B B^T)^{-1}: coords(v) = (2v . num) / (2 den).
        b2 = self._doubled_basis
        g4 = Matrix([[Q(sum(x * y for x, y in zip(r, s))) for s in b2] for r in b2])
        ginv = g4.inverse()  # inverse of 4*gram
        # P = B^T G^{-1} = (B2/2)^T (Ginv4 * 4) = 2 * B2^T Ginv4
        pt_rows: List[List[Fraction]] = []
        for col in range(self.ambient_dim):
            row = []
            for j in range(self.rank):
                row.append(2 * sum(Q(b2[i][col]) * ginv.rows[i][j] for i in range(self.rank)))
            pt_rows.append(row)
        den = 1
        for row in pt_rows:
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = tuple(tuple(int(x * den) for x in row) for row in pt_rows)
        return num, den

    def coords(self, v: Sequence) -> Optional[QVec]:
        """Rational coordinates of v in this basis, or None when v is off the span."""
        vq = _qvec(v)
        if len(vq) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        try:
            v2 = _doubled(vq)
        except ValueError:
            num, den = None, None
            v2 = None
        if v2 is not None:
            num, den = self._coord_solver
            raw = [sum(v2[i] * num[i][j] for i in range(self.ambient_dim)) for j in range(self.rank)]
            coords = tuple(Q(x, 2 * den) for x in raw)
        else:
            bt = Matrix(list(zip(*self.basis)))
            sol = bt.solve(vq)
            if sol is None:
                return None
            coords = tuple(Fraction(x) for x in sol)
        # The solver returns the span projection; reject vectors off the span.
        recon = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                recon = [r + c * x for r, x in zip(recon, row)]
        if tuple(recon) != vq:
            return None
        return coords

    def contains(self, v: Sequence) -> bool:
        c = self.coords(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def vector_from_coords(self, coords: Sequence) -> QVec:
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            c = Fraction(c)
            if c:
                out = [r + c * x for r, x in zip(out, row)]
        return tuple(out)


# ---------------------------------------------------------------------------
# standard constructions


def build_standard(kind: str, n: Optional[int] = None) -> Lattice:
    """A_n in n+1 ambient coordinates, E8 in the even-coordinate model, or Z^n."""
    if kind == "E8":
        return _build_e8()
    if kind == "A":
        if n is None or n < 1:
            raise ValueError("A_n needs n >= 1")
        basis = []
        for i in range(n):
            row = [0] * (n + 1)
            row[i] = 1
            row[i + 1] = -1
            basis.append(row)
        return Lattice(f"A{n}", basis)
    if kind == "Z":
        if n is None or n < 1:
            raise ValueError("Z^n needs n >= 1")
        return Lattice(f"Z{n}", [[1 if i == j else 0 for j in range(n)] for i in range(n)])
    raise ValueError(f"unknown lattice kind {kind!r}")


def _build_e8() -> Lattice:
    h = Fraction(1, 2)
    basis = [
        [h, -h, -h, -h, -h, -h, -h, h],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, -1, 1, 0],
    ]
    return Lattice("E8", basis)


def sqrt2_scale(L: Lattice, label: Optional[str] = None) -> Lattice:
    """The same abstract lattice with all inner products doubled.

    Realized rationally by repeating each basis row in two coordinate
    blocks, so <(b,b),(c,c)> = 2<b,c>.
    """
    basis = [tuple(r) + tuple(r) for r in L.basis]
    return Lattice(label or f"sqrt2.{L.label}", basis)


def direct_sum(parts: Sequence[Lattice], label: Optional[str] = None) -> Lattice:
    total = sum(p.ambient_dim for p in parts)
    basis = []
    offset = 0
    for p in parts:
        for r in p.basis:
            row = [Fraction(0)] * total
            row[offset:offset + p.ambient_dim] = list(r)
            basis.append(row)
        offset += p.ambient_dim
    return Lattice(label or "+".join(p.label for p in parts), basis)


def tensor_product(A: Lattice, B: Lattice, label: Optional[str] = None) -> Lattice:
    """Tensor product with basis a_i (x) b_j in i-major order."""
    basis = []
    for a in A.basis:
        for b in B.basis:
            basis.append([x * y for x in a for y in b])
    return Lattice(label or f"{A.label}x{B.label}", basis)


def block_embed(v: Sequence, block: int, nblocks: int) -> QVec:
    """Place v into the given block of an nblocks-fold ambient space."""
    vq = _qvec(v)
    d = len(vq)
    out = [Fraction(0)] * (d * nblocks)
    out[block * d:(block + 1) * d] = list(vq)
    return tuple(out)


def map_lattice(fn: Callable[[QVec], QVec], L: Lattice, label: str) -> Lattice:
    return Lattice(label, [fn(r) for r in L.basis])


# ---------------------------------------------------------------------------
# integer row reduction (sums, annihilators, equality)


def _int_row_echelon(rows: List[List[int]], track: bool = False):
    """Integer row echelon form by gcd elimination.

    Returns (H, U) with U unimodular and U*A = H when track is set,
    otherwise just H.  Rows of H span the same integer row lattice as A.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)] if track else None
    top = 0
    for col in range(nc):
        while True:
            live = [i for i in range(top, nr) if m[i][col] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(m[i][col]))
            m[top], m[i0] = m[i0], m[top]
            if track:
                u[top], u[i0] = u[i0], u[top]
            done = True
            for i in range(top + 1, nr):
                if m[i][col] != 0:
                    q = m[i][col] // m[top][col]
                    if q:
                        m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                        if track:
                            u[i] = [a - q * b for a, b in zip(u[i], u[top])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if any(m[i][col] != 0 for i in range(top, nr)):
            if m[top][col] < 0:
                m[top] = [-x for x in m[top]]
                if track:
                    u[top] = [-x for x in u[top]]
            # reduce entries above the pivot for a canonical form
            for i in range(top):
                q = m[i][col] // m[top][col]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if track:
                        u[i] = [a - q * b for a, b in zip(u[i], u[top])]
            top += 1
            if top == nr:
                break
    return (m, u) if track else m


def lattice_sum(A: Lattice, B: Lattice, label: Optional[str] = None) -> Lattice:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    rows = [list(r) for r in A._doubled_basis] + [list(r) for r in B._doubled_basis]
    h = _int_row_echelon(rows)
    basis = [[Fraction(x, 2) for x in r] for r in h if any(r)]
    return Lattice(label or f"{A.label}+{B.label}", basis)


def lattice_eq(A: Lattice, B: Lattice) -> bool:
    if A.ambient_dim != B.ambient_dim or A.rank != B.rank:
        return False
    return all(B.contains(r) for r in A.basis) and all(A.contains(r) for r in B.basis)


def index_in(sub: Lattice, sup: Lattice) -> int:
    """The index [sup : sub] via the determinant ratio."""
    if not all(sup.contains(r) for r in sub.basis):
        raise ValueError(f"{sub.label} is not a sublattice of {sup.label}")
    if sub.rank != sup.rank:
        raise ValueError("rank mismatch: index undefined")
    ratio = sub.det / sup.det
    if ratio.denominator != 1:
        raise ValueError("determinant ratio is not an integer")
    root = math.isqrt(ratio.numerator)
    if root * root != ratio.numerator:
        raise ValueError("determinant ratio is not a perfect square")
    return root


def annihilator(L: Lattice, S: Lattice, label: Optional[str] = None) -> Lattice:
    """The sublattice of L of vectors orthogonal to every vector of S."""
    if L.ambient_dim != S.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    # pairing of doubled bases is 4 * the true pairing; kernels agree
    pairing = [
        [sum(x * y for x, y in zip(bl, bs)) for bs in S._doubled_basis]
        for bl in L._doubled_basis
    ]
    h, u = _int_row_echelon(pairing, track=True)
    kernel_rows = [u[i] for i in range(len(h)) if not any(h[i])]
    if not kernel_rows:
        raise ValueError("annihilator is trivial")
    basis = []
    for x in kernel_rows:
        row = [Fraction(0)] * L.ambient_dim
        for c, b in zip(x, L.basis):
            if c:
                row = [r + c * e for r, e in zip(row, b)]
        basis.append(row)
    return Lattice(label or f"Ann_{L.label}({S.label})", basis)


# ---------------------------------------------------------------------------
# shells


@dataclass(frozen=True)
class Shell:
    """All lattice vectors of one squared norm, sorted lexicographically."""

    label: str
    norm: Fraction
    vectors: Tuple[QVec, ...]

    def __len__(self) -> int:
        return len(self.vectors)


def _quadratic_completion(gram: Matrix) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Diagonal weights d and completion coefficients u with
    Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)**2."""
    n = gram.nrows
    a = [list(r) for r in gram.rows]
    d: List[Fraction] = [Q(0)] * n
    u: List[List[Fraction]] = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise ValueError("gram matrix is not positive definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                v = a[k][l] - d[i] * u[i][k] * u[i][l]
                a[k][l] = v
                a[l][k] = v
    return d, u


def _enumerate_coords(gram: Matrix, m: Fraction) -> List[Tuple[int, ...]]:
    """Integer basis-coordinate vectors of squared norm exactly m.

    Only one of each pair {x, -x} is produced (the highest-index nonzero
    coordinate is positive); the zero vector is excluded.
    """
    n = gram.nrows
    d, u = _quadratic_completion(gram)
    out: List[Tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, budget: Fraction, on_axis: bool) -> None:
        if i < 0:
            if budget == 0:
                out.append(tuple(x))
            return
        c = Q(0)
        for j in range(i + 1, n):
            if x[j]:
                c += u[i][j] * x[j]
        t = budget / d[i]
        # safe outer bound for |x_i + c|: (isqrt(p*q) + 1) / q >= sqrt(p/q)
        s_hi = Q(math.isqrt(t.numerator * t.denominator) + 1, t.denominator)
        lo = math.ceil(-c - s_hi)
        hi = math.floor(-c + s_hi)
        if on_axis:
            lo = max(lo, 0)
        for xi in range(lo, hi + 1):
            w = d[i] * (xi + c) ** 2
            if w > budget:
                continue
            x[i] = xi
            descend(i - 1, budget - w, on_axis and xi == 0)
        x[i] = 0

    descend(n - 1, Fraction(m), True)
    return [v for v in out if any(v)]


def shell(L: Lattice, norm, cache: Optional["DiskCache"] = None) -> Shell:
    norm = Fraction(norm)
    if norm <= 0:
        raise ValueError("shell norm must be positive")
    if cache is not None:
        got = cache.load_shell(L.label, norm)
        if got is not None:
            return got
    half: List[QVec] = [L.vector_from_coords(c) for c in _enumerate_coords(L.gram, norm)]
    vectors = sorted(half + [tuple(-x for x in v) for v in half])
    sh = Shell(L.label, norm, tuple(vectors))
    if cache is not None:
        cache.store_shell(sh)
    return sh


def shell_brute_force(L: Lattice, norm) -> Shell:
    """Independent box-search oracle; exponential in the rank, tests only."""
    norm = Fraction(norm)
    ginv = L.gram.inverse()
    bounds = []
    for i in range(L.rank):
        t = norm * ginv.rows[i][i]
        bounds.append(math.isqrt(math.ceil(t)) + 1)
    vectors = []
    def rec(i: int, coords: List[int]) -> None:
        if i == L.rank:
            v = L.vector_from_coords(coords)
            if dot(v, v) == norm and any(coords):
                vectors.append(v)
            return
        for c in range(-bounds[i], bounds[i] + 1):
            coords.append(c)
            rec(i + 1, coords)
            coords.pop()
    rec(0, [])
    return Shell(L.label, norm, tuple(sorted(vectors)))


# ---------------------------------------------------------------------------
# root systems


def root_system_type(L: Lattice, cache: Optional["DiskCache"] = None) -> str:
    """ADE type of the norm-2 vectors, e.g. 'A8', 'E8', 'A2+A2', 'no roots'."""
    roots = shell(L, 2, cache).vectors
    if not roots:
        return "no roots"
    root_rank = Matrix(roots).rank()
    if root_rank < L.rank:
        return "not simply-laced root lattice"
    pos = [r for r in roots if _lex_positive(r)]
    pos_set = set(pos)
    simple = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, p)) in pos_set for p in pos):
            simple.append(r)
    n = len(simple)
    adj: Dict[int, List[int]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            c = dot(simple[i], simple[j])
            if c == -1:
                adj[i].append(j)
                adj[j].append(i)
            elif c != 0:
                return "unknown"
    seen = [False] * n
    labels = []
    for i in range(n):
        if seen[i]:
            continue
        comp = [i]
        seen[i] = True
        queue = [i]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        labels.append(_classify_component(comp, adj))
    return "+".join(sorted(labels))


def _lex_positive(v: QVec) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def _classify_component(comp: List[int], adj: Dict[int, List[int]]) -> str:
    n = len(comp)
    degs = {v: len([w for w in adj[v] if w in comp]) for v in comp}
    edge_count = sum(degs.values()) // 2
    if edge_count != n - 1:
        return "unknown"
    if max(degs.values(), default=0) <= 2:
        return f"A{n}"
    branch = [v for v in comp if degs[v] == 3]
    if len(branch) != 1 or max(degs.values()) > 3:
        return "unknown"
    b = branch[0]
    arms = []
    for start in adj[b]:
        length = 1
        prev, cur = b, start
        while degs[cur] == 2:
            nxt = [w for w in adj[cur] if w != prev][0]
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    return "unknown"


# ---------------------------------------------------------------------------
# the index-3 sublattice of E8 and its glue


def sublattice_mod(L: Lattice, a: Sequence, modulus: int, label: str) -> Lattice:
    """{v in L : <v, a> = 0 mod modulus} (index dividing modulus)."""
    aq = _qvec(a)
    c = [int(dot(b, aq)) % modulus for b in L.basis]
    if all(x == 0 for x in c):
        return Lattice(label, L.basis)
    i0 = next(i for i, x in enumerate(c) if x != 0)
    inv = pow(c[i0], -1, modulus)
    basis: List[QVec] = []
    for j, b in enumerate(L.basis):
        if j == i0:
            basis.append(tuple(modulus * x for x in b))
        else:
            k = (c[j] * inv) % modulus
            basis.append(tuple(x - k * y for x, y in zip(b, L.basis[i0])))
    return Lattice(label, basis)


def sublattice_K(e8: Lattice, a: Sequence) -> Lattice:
    """The vectors of E8 pairing to a multiple of 3 with a."""
    return sublattice_mod(e8, a, 3, "K")


def find_a(e8: Lattice, cache: Optional["DiskCache"] = None) -> QVec:
    """The first vector whose mod-3 pairing kernel in E8 is an A8 root
    lattice of index 3.

    Deterministic search order: shells of norm 2, 4, 6, 8 in turn,
    lexicographically within each shell.  Norms below 8 contain no
    suitable vector (their kernels catch 126, 84 or 78 roots); the
    first norm-8 vector already qualifies, so the scan is short.
    """
    import numpy as np

    roots = shell(e8, 2, cache).vectors
    r2 = np.array([_doubled(r) for r in roots], dtype=np.int64).T
    for norm in (2, 4, 6, 8):
        vectors = shell(e8, norm, cache).vectors
        cand = np.array([_doubled(v) for v in vectors], dtype=np.int64)
        # doubled dot = 4 * true dot, so test mod 12; entries are tiny, exact in int64
        hits = (np.mod(cand @ r2, 12) == 0).sum(axis=1)
        for idx in np.nonzero(hits == 72)[0]:
            a = vectors[int(idx)]
            K = sublattice_K(e8, a)
            if index_in(K, e8) == 3 and root_system_type(K, cache) == "A8":
                return a
    raise RuntimeError("no suitable vector found in shells of norm 2 through 8")


def glue_vector(ell: int, i: int) -> QVec:
    """The i-th glue vector of A_ell in ell+1 ambient coordinates."""
    if not 0 <= i <= ell:
        raise ValueError(f"glue index {i} out of range 0..{ell}")
    head = [Fraction(i, ell + 1)] * (ell + 1 - i)
    tail = [Fraction(-(ell + 1 - i), ell + 1)] * i
    return tuple(head + tail)


class EmbeddingMaps:
    """Coordinate embeddings of Z^{n+1} and Z^{k+1} into Z^{(n+1)(k+1)}.

    eta(i, .) copies a vector into the i-th of k+1 blocks; iota(i, .)
    spreads a vector across blocks at offset i; d and mu are the sums of
    all eta respectively iota maps and scale norms by k+1 resp. n+1.
    """

    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self.block = n + 1
        self.blocks = k + 1
        self.total = (n + 1) * (k + 1)

    def eta(self, i: int, v: Sequence) -> QVec:
        if not 0 <= i <= self.k:
            raise ValueError("eta index out of range")
        vq = _qvec(v)
        if len(vq) != self.block:
            raise ValueError("eta input dimension mismatch")
        return block_embed(vq, i, self.blocks)

    def iota(self, i: int, v: Sequence) -> QVec:
        if not 0 <= i <= self.n:
            raise ValueError("iota index out of range")
        vq = _qvec(v)
        if len(vq) != self.blocks:
            raise ValueError("iota input dimension mismatch")
        out = [Fraction(0)] * self.total
        for j, x in enumerate(vq):
            out[self.block * j + i] = x
        return tuple(out)

    def d(self, v: Sequence) -> QVec:
        out = [Fraction(0)] * self.total
        for i in range(self.blocks):
            out = [a + b for a, b in zip(out, self.eta(i, v))]
        return tuple(out)

    def mu(self, v: Sequence) -> QVec:
        out = [Fraction(0)] * self.total
        for i in range(self.block):
            out = [a + b for a, b in zip(out, self.iota(i, v))]
        return tuple(out)


@dataclass
class CosetSystem:
    """Coset representatives of a finite-index sublattice."""

    superlattice: Lattice
    sublattice: Lattice
    representatives: Tuple[QVec, ...]
    index: int
    verified: bool = False

    def verify(self) -> "CosetSystem":
        if len(self.representatives) != self.index:
            raise ValueError(
                f"expected {self.index} representatives, got {len(self.representatives)}")
        for r in self.representatives:
            if not self.superlattice.contains(r):
                raise ValueError(f"representative {r} is not in {self.superlattice.label}")
        reps = self.representatives
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                diff = tuple(a - b for a, b in zip(reps[i], reps[j]))
                if self.sublattice.contains(diff):
                    raise ValueError(f"representatives {i} and {j} are congruent")
        self.verified = True
        return self


def coset_decomposition_A26(cache: Optional["DiskCache"] = None) -> CosetSystem:
    """81 cosets of mu(A2) + (A8 + A8 + A8) inside A26."""
    a26 = build_standard("A", 26)
    a8 = build_standard("A", 8)
    a2 = build_standard("A", 2)
    maps = EmbeddingMaps(8, 2)
    y = map_lattice(maps.mu, a2, "mu.A2")
    blocks = [map_lattice(lambda v, i=i: maps.eta(i, v), a8, f"eta{i}.A8") for i in range(3)]
    sub_basis = list(y.basis) + [r for b in blocks for r in b.basis]
    sub = Lattice("mu.A2+A8^3", sub_basis)
    idx = index_in(sub, a26)

    alpha1 = (1, -1, 0)
    alpha2 = (0, 1, -1)
    mu1 = maps.mu(alpha1)
    mu2 = maps.mu(alpha2)

    def nu1(v: QVec) -> QVec:
        return tuple(a - b for a, b in zip(maps.eta(0, v), maps.eta(1, v)))

    def nu2(v: QVec) -> QVec:
        return tuple(a - b for a, b in zip(maps.eta(1, v), maps.eta(2, v)))

    reps = []
    for i in range(9):
        for j in range(9):
            base = tuple(-Fraction(1, 9) * (i * x + j * y_) for x, y_ in zip(mu1, mu2))
            g = tuple(a + b + c for a, b, c in zip(base, nu1(glue_vector(8, i)), nu2(glue_vector(8, j))))
            reps.append(g)
    system = CosetSystem(a26, sub, tuple(reps), idx)

    if cache is not None:
        cached = cache.load_cosets(a26.label, sub.label)
        if cached is not None:
            if cached != system.representatives:
                raise ValueError("cached coset representatives disagree with construction")
            system.verified = True
            return system
    system.verify()
    if cache is not None:
        cache.store_cosets(a26.label, sub.label, system.representatives)
    return system


# ---------------------------------------------------------------------------
# disk cache

_SHELL_HEADER = "griess-lab-shell v1"
_COSET_HEADER = "griess-lab-cosets v1"


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.^+-]", "_", label)


def _format_vec(v: QVec) -> str:
    return " ".join(str(x) for x in v)


def _parse_vec(line: str) -> QVec:
    out = []
    for tok in line.split():
        if "/" in tok:
            num, den = tok.split("/", 1)
            out.append(Fraction(int(num), int(den)))
        else:
            out.append(Fraction(int(tok)))
    return tuple(out)


class DiskCache:
    """Text-file persistence for shells and coset representatives."""

    def __init__(self, directory: str) -> None:
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _shell_path(self, label: str, norm: Fraction) -> str:
        return os.path.join(
            self.directory, f"{_safe_name(label)}__{norm.numerator}_{norm.denominator}.shell")

    def load_shell(self, label: str, norm: Fraction) -> Optional[Shell]:
        path = self._shell_path(label, norm)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().split()
            if header[:2] != _SHELL_HEADER.split() or len(header) != 5:
                raise ValueError(f"bad shell cache header in {path}")
            got_label, got_norm, count = header[2], header[3], int(header[4])
            if got_label != label or Fraction(got_norm) != norm:
                raise ValueError(f"shell cache {path} is for {got_label}:{got_norm}")
            vectors = tuple(_parse_vec(line) for line in fh if line.strip())
        if len(vectors) != count:
            raise ValueError(f"shell cache {path} truncated")
        return Shell(label, norm, vectors)

    def store_shell(self, sh: Shell) -> None:
        path = self._shell_path(sh.label, sh.norm)
        with open(path, "w", encoding="ascii") as fh:
            fh.write(f"{_SHELL_HEADER} {sh.label} {sh.norm} {len(sh.vectors)}\n")
            for v in sh.vectors:
                fh.write(_format_vec(v) + "\n")

    def _coset_path(self, sup_label: str, sub_label: str) -> str:
        return os.path.join(
            self.directory, f"{_safe_name(sup_label)}__mod__{_safe_name(sub_label)}.cosets")

    def load_cosets(self, sup_label: str, sub_label: str) -> Optional[Tuple[QVec, ...]]:
        path = self._coset_path(sup_label, sub_label)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().split()
            if header[:2] != _COSET_HEADER.split() or len(header) != 5:
                raise ValueError(f"bad coset cache header in {path}")
            count = int(header[4])
            reps = tuple(_parse_vec(line) for line in fh if line.strip())
        if len(reps) != count:
            raise ValueError(f"coset cache {path} truncated")
        return reps

    def store_cosets(self, sup_label: str, sub_label: str, reps: Tuple[QVec, ...]) -> None:
        path = self._coset_path(sup_label, sub_label)
        with open(path, "w", encoding="ascii") as fh:
            fh.write(f"{_COSET_HEADER} {sup_label} {sub_label} {len(reps)}\n")
            for v in reps:
                fh.write(_format_vec(v) + "\n")

    def status(self) -> List[str]:
        lines = []
        for name in sorted(os.listdir(self.directory)):
            path = os.path.join(self.directory, name)
            if name.endswith(".shell") or name.endswith(".cosets"):
                with open(path, "r", encoding="ascii") as fh:
                    lines.append(fh.readline().strip())
        return lines

    def clear(self) -> int:
        removed = 0
        for name in os.listdir(self.directory):
            if name.endswith(".shell") or name.endswith(".cosets"):
                os.remove(os.path.join(self.directory, name))
                removed += 1
        return removed


def default_cache_dir() -> str:
    env = os.environ.get("GRIESS_LAB_CACHE")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "griess-lab")
