"""Exact ordinary character tables by the Dixon-Schneider method.

The class matrices of the centre of the group algebra are diagonalised
simultaneously over a prime field F_l with l = 1 (mod exponent); their common
eigenvectors are the central characters. Degrees come from the orthogonality
of central characters, and each modular value is lifted to Q(zeta_e) through
the eigenvalue multiplicities of the element it is evaluated at.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import modlinalg
from ._arith import is_prime, primitive_root, units
from .cyclotomic import Cyclo
from .errors import CapExceeded, GroupMismatch, LiftFailure, NotACharacter, NotSubgroup
from .permgroup import ClassData, FinGroup, compose, conjugacy_classes, format_cycles, invert

__all__ = [
    "CharacterTable", "ClassFunction", "class_constants", "compute_character_table",
    "character_table", "choose_prime", "inner_product", "class_fusion", "restrict",
    "induce", "constituents", "permutation_character", "regular_character",
    "trivial_character", "table_validity", "render_table",
]

DEFAULT_RETRY_BUDGET = 64
DEFAULT_TABLE_CAP = 100_000


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Values of a class function, one per class of ``classes``."""

    classes: ClassData
    values: tuple[Cyclo, ...]

    def __post_init__(self):
        if len(self.values) != self.classes.num_classes:
            raise ValueError("one value per class required")

    def __getitem__(self, c: int) -> Cyclo:
        return self.values[c]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def degree(self) -> Cyclo:
        return self.values[0]

    def _check(self, other: ClassFunction):
        if other.classes.group != self.classes.group:
            raise GroupMismatch("class functions live on different groups")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.classes, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.classes, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.classes, tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.classes, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.classes.group == other.classes.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def galois(self, k: int) -> ClassFunction:
        """``chi^sigma_k``, realised as ``c -> chi(class of g**k)``."""
        pm = self.classes.power_maps[k % self.classes.exponent]
        return ClassFunction(self.classes, tuple(self.values[pm[c]] for c in range(len(self.values))))

    def conj(self) -> ClassFunction:
        return ClassFunction(self.classes, tuple(v.conj() for v in self.values))

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Irr(G): one row per irreducible character, columns indexed by classes.

    Rows are sorted by degree, then lexicographically by their rendered values.
    ``prime`` is the modulus the table was computed with.
    """

    group: FinGroup
    classes: ClassData
    exponent: int
    rows: tuple[tuple[Cyclo, ...], ...]
    prime: int

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r[0].to_rational() for r in self.rows)

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.classes, self.rows[i])

    def characters(self) -> list[ClassFunction]:
        return [self.character(i) for i in range(len(self.rows))]

    @property
    def trivial_index(self) -> int:
        return next(i for i, r in enumerate(self.rows) if all(v == 1 for v in r))

    def index_of(self, values: Sequence[Cyclo]) -> int:
        """Row index of an irreducible character given by its values."""
        values = tuple(values)
        for i, r in enumerate(self.rows):
            if r == values:
                return i
        raise KeyError("not a row of this table")


# -- class algebra ----------------------------------------------------------

@lru_cache(maxsize=None)
def class_constants(cd: ClassData) -> tuple:
    """``a[i][j][k] = #{(x, y) : x in C_i, y in C_j, xy = z}`` for a fixed ``z`` in ``C_k``."""
    G = cd.group
    r = cd.num_classes
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    inverses = [invert(x) for x in G.elements]
    class_of = cd.class_of
    index = G.index
    for k in range(r):
        z = G.elements[cd.reps[k]]
        for xi, x_inv in enumerate(inverses):
            y = compose(x_inv, z)
            a[class_of[xi]][class_of[index(y)]][k] += 1
    return tuple(tuple(tuple(row) for row in plane) for plane in a)


def choose_prime(exponent: int, order: int) -> int:
    """Least prime ``l = 1 (mod exponent)`` with ``l > 2*sqrt(order)``."""
    l = 1 + exponent
    while not (is_prime(l) and l * l > 4 * order):
        l += exponent
    return l


def _split(matrices, r: int, p: int, rng: random.Random, budget: int) -> list[list[int]]:
    """Common eigenvectors (as rows) of the commuting ``matrices`` over F_p."""
    pending = [([[int(i == j) for j in range(r)] for i in range(r)], list(range(r)))]
    done: list[list[int]] = []
    failures = 0
    while pending:
        basis, pivots = pending.pop()
        d = len(basis)
        if d == 1:
            done.append(basis[0])
            continue
        coeffs = [rng.randrange(p) for _ in matrices]
        combo = [[sum(c * m[i][j] for c, m in zip(coeffs, matrices)) % p for j in range(r)]
                 for i in range(r)]
        images = [modlinalg.matvec(combo, b, p) for b in basis]
        # restriction to span(basis): column t holds coordinates of combo @ basis[t]
        restricted = [[images[t][pc] for t in range(d)] for pc in pivots]
        eigvals = modlinalg.roots(modlinalg.charpoly(restricted, p), p)
        pieces = []
        for lam in eigvals:
            shifted = [[(restricted[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
            coords = modlinalg.nullspace(shifted, p)
            vecs = [[sum(y[t] * basis[t][col] for t in range(d)) % p for col in range(r)] for y in coords]
            pieces.append(modlinalg.rref(vecs, p))
        if sum(len(b) for b, _ in pieces) != d:
            raise LiftFailure("class matrix combination is not diagonalisable over F_p")
        if len(pieces) == 1:
            failures += 1
            if failures > budget:
                raise LiftFailure(f"eigenspace splitting made no progress in {budget} attempts")
            pending.append((basis, pivots))
            continue
        failures = 0
        pending.extend(pieces)
    return done


def compute_character_table(G: FinGroup, cd: ClassData | None = None, seed: int = 0,
                            retry_budget: int = DEFAULT_RETRY_BUDGET,
                            cap: int = DEFAULT_TABLE_CAP) -> CharacterTable:
    """Compute Irr(G) exactly.

    ``seed`` drives the random class-matrix combinations used to split
    eigenspaces; the resulting table does not depend on it.
    """
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
    if cd is None:
        cd = conjugacy_classes(G)
    order = G.order
    r = cd.num_classes
    e = cd.exponent
    p = choose_prime(e, order)
    a = class_constants(cd)
    # M_j[i][k] = a[j][i][k]; the central character vector is a right eigenvector
    matrices = [[list(a[j][i]) for i in range(r)] for j in range(r)]
    rng = random.Random(seed)
    vectors = _split(matrices[1:] or matrices, r, p, rng, retry_budget)
    if len(vectors) != r:
        raise LiftFailure(f"found {len(vectors)} central characters, expected {r}")

    z = pow(primitive_root(p), (p - 1) // e, p)
    inv_cls = cd.inverse_classes
    size_inv = [pow(s, -1, p) for s in cd.sizes]
    rows = []
    for v in vectors:
        scale = pow(v[0], -1, p)
        omega = [x * scale % p for x in v]
        s = sum(omega[i] * omega[inv_cls[i]] * size_inv[i] for i in range(r)) % p
        deg_sq = order * pow(s, -1, p) % p
        deg = next((d for d in range(1, math.isqrt(order) + 1) if d * d % p == deg_sq), None)
        if deg is None:
            raise LiftFailure("no integral degree matches the central character")
        modvals = [omega[i] * deg * size_inv[i] % p for i in range(r)]
        rows.append(_lift_row(modvals, deg, cd, z, p))

    rows.sort(key=lambda row: (row[0].to_rational(), tuple(str(x) for x in row)))
    return CharacterTable(G, cd, e, tuple(rows), p)


def _lift_row(modvals: list[int], deg: int, cd: ClassData, z: int, p: int) -> tuple[Cyclo, ...]:
    e = cd.exponent
    out = []
    for c in range(cd.num_classes):
        m = cd.orders[c]
        step = e // m
        w_inv = pow(pow(z, step, p), -1, p)
        m_inv = pow(m, -1, p)
        # chi(g^k) depends only on k mod o(g), so the length-e transform
        # collapses to a length-m one on the exponents that are multiples of e/m
        seq = [modvals[cd.power_maps[k][c]] for k in range(m)]
        mults = {}
        total = 0
        for j in range(m):
            wj = pow(w_inv, j, p)
            acc = 0
            t = 1
            for val in seq:
                acc += val * t
                t = t * wj % p
            mult = acc * m_inv % p
            if mult > deg:
                raise LiftFailure(f"eigenvalue multiplicity {mult} exceeds degree {deg} on class {c}")
            if mult:
                mults[j * step] = mult
                total += mult
        if total != deg:
            raise LiftFailure(f"multiplicities on class {c} sum to {total}, not {deg}")
        out.append(Cyclo.from_exponents(e, mults))
    return tuple(out)


@lru_cache(maxsize=None)
def character_table(G: FinGroup, seed: int = 0) -> CharacterTable:
    """Cached :func:`compute_character_table`."""
    return compute_character_table(G, conjugacy_classes(G), seed=seed)


# -- class functions --------------------------------------------------------

def inner_product(alpha: ClassFunction, beta: ClassFunction) -> Fraction | int:
    """``(1/|G|) sum_c |c| alpha(c) conj(beta(c))``, exact."""
    if alpha.classes.group != beta.classes.group:
        raise GroupMismatch("class functions live on different groups")
    cd = alpha.classes
    total = Cyclo.zero()
    for size, a, b in zip(cd.sizes, alpha.values, beta.values):
        if a and b:
            total = total + a * b.conj() * size
    value = total / cd.group.order
    if not value.is_rational():
        raise ValueError("inner product is not rational")
    return value.to_rational()


def class_fusion(sub: ClassData, cd: ClassData) -> tuple[int, ...]:
    """For each class of the subgroup, the class of the group containing it."""
    G = cd.group
    fusion = []
    for c in range(sub.num_classes):
        g = sub.rep(c)
        if g not in G:
            raise NotSubgroup(f"{format_cycles(g)} is not an element of the group")
        fusion.append(cd.class_of[G.index(g)])
    return tuple(fusion)


def restrict(chi: ClassFunction, H: FinGroup | ClassData) -> tuple[ClassFunction, tuple[int, ...]]:
    """``chi_H`` together with the class fusion ``H -> G``."""
    sub = H if isinstance(H, ClassData) else conjugacy_classes(H)
    fusion = class_fusion(sub, chi.classes)
    return ClassFunction(sub, tuple(chi.values[f] for f in fusion)), fusion


def induce(theta: ClassFunction, G: FinGroup | ClassData) -> ClassFunction:
    """Induced class function, evaluated through class fusion as
    ``theta^G(c) = |G| / (|H| |c|) * sum_{d -> c} |d| theta(d)``.
    """
    cd = G if isinstance(G, ClassData) else conjugacy_classes(G)
    sub = theta.classes
    fusion = class_fusion(sub, cd)
    sums = [Cyclo.zero() for _ in range(cd.num_classes)]
    for d, c in enumerate(fusion):
        if theta.values[d]:
            sums[c] = sums[c] + theta.values[d] * sub.sizes[d]
    order_g, order_h = cd.group.order, sub.group.order
    values = tuple(sums[c] * Fraction(order_g, order_h * cd.sizes[c]) for c in range(cd.num_classes))
    return ClassFunction(cd, values)


def constituents(alpha: ClassFunction, table: CharacterTable) -> list[tuple[int, int]]:
    """Irreducible constituents ``(row index, multiplicity)`` of a character."""
    out = []
    for i in range(len(table)):
        mult = inner_product(alpha, table.character(i))
        if mult < 0 or Fraction(mult).denominator != 1:
            raise NotACharacter(f"multiplicity {mult} of row {i}")
        if mult:
            out.append((i, int(mult)))
    return out


def trivial_character(cd: ClassData) -> ClassFunction:
    return ClassFunction(cd, tuple(Cyclo.rational(1) for _ in range(cd.num_classes)))


def regular_character(cd: ClassData) -> ClassFunction:
    return ClassFunction(cd, tuple(Cyclo.rational(cd.group.order if c == 0 else 0)
                                   for c in range(cd.num_classes)))


def permutation_character(cd: ClassData) -> ClassFunction:
    """Fixed-point counts of the natural action on points."""
    values = []
    for c in range(cd.num_classes):
        g = cd.rep(c)
        values.append(Cyclo.rational(sum(1 for i, j in enumerate(g) if i == j)))
    return ClassFunction(cd, tuple(values))


# -- validation and rendering ----------------------------------------------

def table_validity(table: CharacterTable) -> dict[str, bool]:
    """Exact checks of the defining properties of a character table."""
    cd = table.classes
    G = table.group
    r = cd.num_classes
    rows = table.rows
    inv = cd.inverse_classes
    degrees = []
    degrees_ok = True
    for row in rows:
        d = row[0]
        if not d.is_rational() or Fraction(d.to_rational()).denominator != 1 or d.to_rational() <= 0:
            degrees_ok = False
            continue
        degrees.append(d.to_rational())
    degrees_ok = degrees_ok and all(G.order % d == 0 for d in degrees)

    # conj(chi(g)) = chi(g^-1) holds for characters; the literal conj is used for
    # row orthogonality, and the power map for column orthogonality
    conj_rows = [[v.conj() for v in row] for row in rows]
    row_ok = True
    for i in range(r):
        for j in range(i, r):
            total = Cyclo.zero()
            for c in range(r):
                if rows[i][c] and conj_rows[j][c]:
                    total = total + rows[i][c] * conj_rows[j][c] * cd.sizes[c]
            if total != (G.order if i == j else 0):
                row_ok = False
    col_ok = True
    for c in range(r):
        for c2 in range(c, r):
            total = Cyclo.zero()
            for row in rows:
                if row[c] and row[inv[c2]]:
                    total = total + row[c] * row[inv[c2]]
            if total != (G.order // cd.sizes[c] if c == c2 else 0):
                col_ok = False
    row_set = set(rows)
    galois_ok = all(
        tuple(row[cd.power_maps[k][c]] for c in range(r)) in row_set
        for k in units(cd.exponent) for row in rows
    )
    return {
        "row_count": len(rows) == r,
        "integral_degrees": degrees_ok,
        "sum_of_squares": sum(d * d for d in degrees) == G.order,
        "row_orthogonality": row_ok,
        "column_orthogonality": col_ok,
        "galois_closure": galois_ok,
    }


def render_table(table: CharacterTable, name: str | None = None) -> str:
    """Plain-text table: class data header, then one row per character."""
    cd = table.classes
    head = [f"group {name}" if name else "group", f"order {table.group.order}",
            f"classes {cd.num_classes}", f"exponent {table.exponent}"]
    lines = ["  ".join(head)]
    cells = [["class"] + [format_cycles(cd.rep(c)) for c in range(cd.num_classes)],
             ["size"] + [str(s) for s in cd.sizes],
             ["order"] + [str(o) for o in cd.orders]]
    for i, row in enumerate(table.rows):
        cells.append([f"X.{i + 1}"] + [str(v) for v in row])
    widths = [max(len(line[c]) for line in cells) for c in range(len(cells[0]))]
    for line in cells:
        lines.append("  ".join(s.rjust(w) if k else s.ljust(w) for k, (s, w) in enumerate(zip(line, widths))).rstrip())
    return "\n".join(lines) + "\n"
