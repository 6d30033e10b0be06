"""Finite-dimensional commutative axial algebras given by structure constants.

A StructureAlgebra packages a basis, the full product table and the Gram
matrix of the invariant form, all over the rationals, and validates the
commutativity and form-associativity laws on construction.  On top of that
live the two concrete algebras of interest (the 3-dimensional 3C algebra
and its 9-dimensional sibling spanned by nine pairwise 3C axes), Virasoro
certification, adjoint spectra, the Miyamoto involutions, finite matrix
group closure, and central-charge bookkeeping for affine and parafermion
cosets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .numerics import Matrix, Q, dot

Vector = Tuple[Fraction, ...]

HALF = Q(1, 2)
SIXTEENTH = Q(1, 16)


def _vec(x: Sequence) -> Vector:
    return tuple(Fraction(v) for v in x)


class StructureAlgebra:
    """Commutative algebra with invariant form, defined by tables."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[Sequence]],
                 gram: Sequence[Sequence]) -> None:
        self.labels = tuple(labels)
        d = len(self.labels)
        self.table: Tuple[Tuple[Vector, ...], ...] = tuple(
            tuple(_vec(table[i][j]) for j in range(d)) for i in range(d))
        self.gram = Matrix([[Fraction(gram[i][j]) for j in range(d)]
                            for i in range(d)])
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def _validate(self) -> None:
        d = self.dim
        for i in range(d):
            for j in range(d):
                if self.table[i][j] != self.table[j][i]:
                    raise ValueError(f"product table not commutative at ({i},{j})")
                if self.gram.rows[i][j] != self.gram.rows[j][i]:
                    raise ValueError(f"gram not symmetric at ({i},{j})")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = sum(c * self.gram.rows[l][k]
                               for l, c in enumerate(self.table[i][j]) if c)
                    right = sum(c * self.gram.rows[i][l]
                                for l, c in enumerate(self.table[j][k]) if c)
                    if left != right:
                        raise ValueError(
                            f"form not associative on triple ({i},{j},{k})")

    def unit(self, i: int) -> Vector:
        return tuple(Q(1) if j == i else Q(0) for j in range(self.dim))

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        x, y = _vec(x), _vec(y)
        acc = [Q(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        acc[k] += w * c
        return tuple(acc)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(_vec(x), self.gram.matvec(_vec(y)))


@dataclass(frozen=True)
class LinearEndo:
    matrix: Matrix
    automorphism: bool = False

    def apply(self, x: Sequence) -> Vector:
        return self.matrix.matvec(_vec(x))

    def compose(self, other: "LinearEndo") -> "LinearEndo":
        return LinearEndo(self.matrix.matmul(other.matrix),
                          self.automorphism and other.automorphism)


def verify_automorphism(A: StructureAlgebra, m: Matrix) -> bool:
    d = A.dim
    for i in range(d):
        for j in range(i, d):
            ti = m.matvec(A.unit(i))
            tj = m.matvec(A.unit(j))
            if A.multiply(ti, tj) != m.matvec(A.table[i][j]):
                return False
            if A.form(ti, tj) != A.gram.rows[i][j]:
                return False
    return True


def as_automorphism(A: StructureAlgebra, m: Matrix) -> LinearEndo:
    if not verify_automorphism(A, m):
        raise ValueError("map does not preserve the product and form")
    return LinearEndo(m, automorphism=True)


# -- the two concrete algebras -------------------------------------------------


def build_3C() -> StructureAlgebra:
    """Three Ising axes, any two generating a 3C dihedral pair."""
    d = 3
    table = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i == j:
                table[i][j] = [Q(2) if k == i else Q(0) for k in range(d)]
            else:
                table[i][j] = [
                    Q(1, 32) * (1 if k in (i, j) else -1) for k in range(d)]
    gram = [[Q(1, 4) if i == j else Q(1, 256) for j in range(d)]
            for i in range(d)]
    return StructureAlgebra([f"e{i}" for i in range(d)], table, gram)


def _g9_index(i: int, j: int) -> int:
    return 3 * (i % 3) + (j % 3)


def build_G9() -> StructureAlgebra:
    """Nine axes labeled by the affine plane of order 3: two distinct axes
    multiply into the third point of their line."""
    d = 9
    table = [[None] * d for _ in range(d)]
    for a in range(d):
        i1, j1 = divmod(a, 3)
        for b in range(d):
            i2, j2 = divmod(b, 3)
            row = [Q(0)] * d
            if a == b:
                row[a] = Q(2)
            else:
                c = _g9_index(-i1 - i2, -j1 - j2)
                row[a] += Q(1, 32)
                row[b] += Q(1, 32)
                row[c] -= Q(1, 32)
            table[a][b] = row
    gram = [[Q(1, 4) if a == b else Q(1, 256) for b in range(d)]
            for a in range(d)]
    labels = [f"e{i}{j}" for i in range(3) for j in range(3)]
    return StructureAlgebra(labels, table, gram)


def axis_vector(A: StructureAlgebra, i: int, j: int) -> Vector:
    return A.unit(_g9_index(i, j))


def line_sum_idempotent(A: StructureAlgebra, points: Sequence[Tuple[int, int]],
                        base: Tuple[int, int] = (0, 0)) -> Vector:
    """(32/33)(sum of a line of axes) - base axis."""
    acc = [Q(0)] * A.dim
    for i, j in points:
        acc[_g9_index(i, j)] += Q(32, 33)
    acc[_g9_index(*base)] -= 1
    return tuple(acc)


AG3_LINES: Tuple[Tuple[Tuple[int, int], ...], ...] = (
    ((0, 0), (0, 1), (0, 2)),
    ((0, 0), (1, 0), (2, 0)),
    ((0, 0), (1, 1), (2, 2)),
    ((0, 0), (1, 2), (2, 1)),
)


def certify_virasoro(A: StructureAlgebra, v: Sequence) -> Fraction:
    v = _vec(v)
    if A.multiply(v, v) != tuple(2 * x for x in v):
        raise ValueError("not idempotent: v*v != 2v")
    return 2 * A.form(v, v)


def check_a_products(A: StructureAlgebra) -> Dict[Tuple[int, int], bool]:
    """The four line idempotents satisfy the exchange relation
    a^i a^j = (1/33)(2a^i + 2a^j - a^k - a^l)."""
    a = [line_sum_idempotent(A, line) for line in AG3_LINES]
    report: Dict[Tuple[int, int], bool] = {}
    for i in range(4):
        for j in range(i + 1, 4):
            k, l = (x for x in range(4) if x not in (i, j))
            want = tuple(
                Q(1, 33) * (2 * a[i][t] + 2 * a[j][t] - a[k][t] - a[l][t])
                for t in range(A.dim))
            report[(i + 1, j + 1)] = A.multiply(a[i], a[j]) == want
    return report


def adjoint(A: StructureAlgebra, v: Sequence) -> LinearEndo:
    v = _vec(v)
    cols = [A.multiply(v, A.unit(j)) for j in range(A.dim)]
    rows = [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]
    return LinearEndo(Matrix(rows))


def adjoint_eigenspaces(A: StructureAlgebra, v: Sequence,
                        candidates: Sequence[Fraction] = (Q(2), Q(0), HALF, SIXTEENTH)
                        ) -> Dict[Fraction, List[Vector]]:
    m = adjoint(A, v).matrix
    spaces = {}
    for lam in candidates:
        basis = m.eigenspace(lam)
        if basis:
            spaces[lam] = [tuple(b) for b in basis]
    return spaces


def _involution_from_split(A: StructureAlgebra, plus: List[Vector],
                           minus: List[Vector]) -> Matrix:
    cols = [list(v) for v in plus + minus]
    p = Matrix([[cols[j][i] for j in range(len(cols))] for i in range(A.dim)])
    signs = [Q(1)] * len(plus) + [Q(-1)] * len(minus)
    d = Matrix([[signs[i] if i == j else Q(0) for j in range(len(cols))]
                for i in range(len(cols))])
    return p.matmul(d).matmul(p.inverse())


def miyamoto_tau(A: StructureAlgebra, e: Sequence) -> LinearEndo:
    """Involution acting as -1 on the 1/16 part of the adjoint of an axis."""
    if certify_virasoro(A, e) != HALF:
        raise ValueError("axis must be idempotent of central charge 1/2")
    spaces = adjoint_eigenspaces(A, e)
    total = sum(len(b) for b in spaces.values())
    if total != A.dim:
        raise ValueError("adjoint eigenvalues outside {2, 0, 1/2, 1/16}")
    plus = [v for lam in (Q(2), Q(0), HALF) for v in spaces.get(lam, [])]
    minus = list(spaces.get(SIXTEENTH, []))
    return as_automorphism(A, _involution_from_split(A, plus, minus))


def miyamoto_sigma(A: StructureAlgebra, e: Sequence) -> LinearEndo:
    """Involution of the tau-fixed subalgebra: -1 on the 1/2 part,
    extended by the identity elsewhere."""
    if certify_virasoro(A, e) != HALF:
        raise ValueError("axis must be idempotent of central charge 1/2")
    spaces = adjoint_eigenspaces(A, e)
    total = sum(len(b) for b in spaces.values())
    if total != A.dim:
        raise ValueError("adjoint eigenvalues outside {2, 0, 1/2, 1/16}")
    plus = [v for lam in (Q(2), Q(0), SIXTEENTH) for v in spaces.get(lam, [])]
    minus = list(spaces.get(HALF, []))
    m = _involution_from_split(A, plus, minus)
    fixed = [v for lam in (Q(2), Q(0), HALF) for v in spaces.get(lam, [])]
    for x in fixed:
        for y in fixed:
            tx, ty = m.matvec(x), m.matvec(y)
            if A.multiply(tx, ty) != m.matvec(A.multiply(x, y)):
                raise ValueError("sigma fails to preserve the fixed subalgebra")
            if A.form(tx, ty) != A.form(x, y):
                raise ValueError("sigma fails to preserve the form")
    return LinearEndo(m, automorphism=verify_automorphism(A, m))


# -- finite matrix groups --------------------------------------------------------


@dataclass(frozen=True)
class MatrixGroup:
    generators: Tuple[LinearEndo, ...]
    elements: Tuple[Matrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order(self, m: Matrix) -> int:
        ident = Matrix.identity(len(m.rows))
        p, n = m, 1
        while p != ident:
            p = p.matmul(m)
            n += 1
            if n > self.order:
                raise RuntimeError("order computation exceeded group size")
        return n

    def involutions(self) -> List[Matrix]:
        return [m for m in self.elements if self.element_order(m) == 2]

    def order_three_part(self) -> List[Matrix]:
        return [m for m in self.elements if self.element_order(m) in (1, 3)]

    def _inverse(self, m: Matrix) -> Matrix:
        return m.inverse()

    def is_normal(self, subset: Sequence[Matrix]) -> bool:
        sub = set(subset)
        for g in self.elements:
            gi = self._inverse(g)
            for s in subset:
                if g.matmul(s).matmul(gi) not in sub:
                    return False
        return True

    def conjugacy_closed(self, seeds: Sequence[Matrix]) -> bool:
        """All seeds lie in a single conjugacy orbit."""
        if not seeds:
            return True
        orbit = {seeds[0]}
        frontier = [seeds[0]]
        while frontier:
            x = frontier.pop()
            for g in self.elements:
                y = g.matmul(x).matmul(self._inverse(g))
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return all(s in orbit for s in seeds)

    def shape_certificate(self) -> Dict[str, object]:
        """Invariants recognizing the order-18 extension of a nine-element
        elementary abelian normal part by a reflection."""
        invs = self.involutions()
        o3 = self.order_three_part()
        return {
            "order": self.order,
            "o3_size": len(o3),
            "o3_normal": self.is_normal(o3),
            "involutions": len(invs),
            "involutions_conjugate": self.conjugacy_closed(invs),
            "quotient_order": self.order // len(o3) if o3 else 0,
        }


def group_closure(gens: Sequence[LinearEndo], bound: int = 10 ** 4) -> MatrixGroup:
    for g in gens:
        if not g.automorphism:
            raise ValueError("generators must be verified automorphisms")
    mats = [g.matrix for g in gens]
    if not mats:
        raise ValueError("no generators")
    ident = Matrix.identity(len(mats[0].rows))
    seen = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for m in mats:
            y = x.matmul(m)
            if y not in seen:
                if len(seen) >= bound:
                    raise RuntimeError(f"closure exceeded bound {bound}")
                seen.add(y)
                frontier.append(y)
    elements = tuple(sorted(seen, key=lambda m: m.rows))
    return MatrixGroup(generators=tuple(gens), elements=elements)


# -- eigenvalue frames -----------------------------------------------------------


def highest_weight_check(A: StructureAlgebra, v: Sequence,
                         frame: Sequence[Sequence]) -> Tuple[Fraction, ...]:
    v = _vec(v)
    if not any(v):
        raise ValueError("zero vector has no eigenvalue triple")
    out = []
    for f in frame:
        fv = A.multiply(f, v)
        lam = None
        for x, y in zip(fv, v):
            if y:
                lam = x / y
                break
        if lam is None:
            lam = Q(0)
        if fv != tuple(lam * y for y in v):
            raise ValueError("not a simultaneous eigenvector")
        out.append(lam)
    return tuple(out)


def standard_frame(A: StructureAlgebra) -> Tuple[Vector, Vector, Vector]:
    """(axis, line complement, plane complement): three orthogonal
    idempotent-halves summing to the full Virasoro vector."""
    e00 = A.unit(0)
    a1 = line_sum_idempotent(A, AG3_LINES[0])
    omega = tuple(Q(8, 9) for _ in range(A.dim))
    b1 = tuple(w - x - y for w, x, y in zip(omega, e00, a1))
    return e00, a1, b1


def isomorphism_check(A: StructureAlgebra, B: StructureAlgebra,
                      basis_map: Sequence[int]) -> bool:
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    perm = list(basis_map)
    if sorted(perm) != list(range(A.dim)):
        raise ValueError("basis_map must be a bijection of indices")
    for i in range(A.dim):
        for j in range(A.dim):
            if A.gram.rows[i][j] != B.gram.rows[perm[i]][perm[j]]:
                return False
            mapped = [Q(0)] * A.dim
            for k, c in enumerate(A.table[i][j]):
                mapped[perm[k]] = c
            if tuple(mapped) != B.table[perm[i]][perm[j]]:
                return False
    return True


# -- central charge bookkeeping ---------------------------------------------------


@dataclass(frozen=True)
class LieData:
    label: str
    rank: int
    dim: int
    dual_coxeter: int


def lie_algebra(series: str, n: int) -> LieData:
    if series == "A":
        return LieData(f"A{n}", n, n * (n + 2), n + 1)
    if series == "E" and n == 8:
        return LieData("E8", 8, 248, 30)
    raise ValueError(f"unsupported algebra {series}{n}")


def affine_central_charge(g: LieData, k: int) -> Fraction:
    if k < 1:
        raise ValueError("level must be positive")
    return Q(k * g.dim, k + g.dual_coxeter)


def parafermion_central_charge(g: LieData, k: int) -> Fraction:
    return affine_central_charge(g, k) - g.rank


# -- bridge from the Fock engine ---------------------------------------------------


def algebra_from_griess(space, states: Sequence, labels: Sequence[str]
                        ) -> StructureAlgebra:
    """Structure constants of a list of weight-2 states that close under
    the Griess product, with exact closure verification."""
    d = len(states)
    gram_rows = [[space.invariant_form(states[i], states[j]).rational_part()
                  for j in range(d)] for i in range(d)]
    g = Matrix(gram_rows)
    table = []
    for i in range(d):
        row = []
        for j in range(i + 1):
            prod = space.griess_product(states[i], states[j])
            rhs = tuple(space.invariant_form(prod, states[k]).rational_part()
                        for k in range(d))
            coeffs = g.solve(rhs)
            if coeffs is None:
                raise ValueError("product escapes the span of the given states")
            recombined = None
            for k, c in enumerate(coeffs):
                part = states[k].scale(c)
                recombined = part if recombined is None else recombined + part
            if recombined != prod:
                raise ValueError("product escapes the span of the given states")
            row.append(tuple(coeffs))
        table.append(row)
    full = [[table[max(i, j)][min(i, j)] for j in range(d)] for i in range(d)]
    return StructureAlgebra(labels, full, gram_rows)


# -- serialization ------------------------------------------------------------------


def dump_algebra(A: StructureAlgebra) -> str:
    lines = [f"griess-lab-alg v1 {A.dim} " + " ".join(A.labels)]
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in enumerate(A.table[i][j]):
                if c:
                    lines.append(f"{i} {j} {k} {c}")
    for i in range(A.dim):
        for j in range(A.dim):
            if A.gram.rows[i][j]:
                lines.append(f"gram {i} {j} {A.gram.rows[i][j]}")
    return "\n".join(lines) + "\n"


def load_algebra(text: str) -> StructureAlgebra:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split()
    if header[:2] != ["griess-lab-alg", "v1"]:
        raise ValueError("bad algebra header")
    d = int(header[2])
    labels = header[3:]
    if len(labels) != d:
        raise ValueError("label count does not match dimension")
    table = [[[Q(0)] * d for _ in range(d)] for _ in range(d)]
    gram = [[Q(0)] * d for _ in range(d)]
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "gram":
            i, j = int(parts[1]), int(parts[2])
            gram[i][j] = Fraction(parts[3])
        else:
            i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
            table[i][j][k] = Fraction(parts[3])
    return StructureAlgebra(labels, table, gram)
