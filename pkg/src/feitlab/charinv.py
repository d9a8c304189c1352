"""Arithmetic invariants of irreducible characters.

Galois stabilizers and Feit numbers, determinantal orders, p-special
characters (via the full subnormal-subgroup definition), and invariance of
characters of a normal subgroup under conjugation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._arith import divisors, euler_phi, is_power_of, prime_divisors, units
from .chartable import CharacterTable, ClassFunction, character_table, constituents, restrict
from .cyclotomic import Cyclo
from .errors import CapExceeded, DecompositionFailure, NotNormalizing, NotSolvable
from .permgroup import (
    ClassData,
    FinGroup,
    Permutation,
    compose,
    conjugacy_classes,
    invert,
    is_solvable,
    normal_closure,
    subgroup,
    trivial_subgroup,
)

__all__ = [
    "GaloisStabilizer", "CharacterProfile", "galois_stabilizer", "feit_number",
    "field_degree", "determinant_exponents", "determinantal_order", "normal_subgroups",
    "subnormal_subgroups", "is_p_special", "p_special_primes", "is_invariant_under",
    "conjugate_character", "character_profile", "profiles", "DEFAULT_LATTICE_CAP",
]

DEFAULT_LATTICE_CAP = 10_000


def _values(chi) -> tuple[Cyclo, ...]:
    return chi.values if isinstance(chi, ClassFunction) else tuple(chi)


# -- fields of values -------------------------------------------------------

@dataclass(frozen=True)
class GaloisStabilizer:
    """Units ``k`` mod ``modulus`` with ``chi^sigma_k = chi``."""

    modulus: int
    members: tuple[int, ...]

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.members

    @property
    def index(self) -> int:
        """Index in the unit group, i.e. the degree of the field of values."""
        return euler_phi(self.modulus) // len(self.members)


def galois_stabilizer(chi, cd: ClassData) -> GaloisStabilizer:
    values = _values(chi)
    e = cd.exponent
    r = cd.num_classes
    members = []
    for k in units(e):
        pm = cd.power_maps[k]
        if all(values[pm[c]] == values[c] for c in range(r)):
            members.append(k)
    return GaloisStabilizer(e, tuple(members))


def feit_number(chi, cd: ClassData, stabilizer: GaloisStabilizer | None = None) -> int:
    """Smallest ``n`` such that Q_n contains every value of ``chi``.

    Q(chi) lies in Q_d exactly when every unit ``k = 1 (mod d)`` fixes ``chi``;
    only divisors of the exponent need to be scanned.
    """
    stab = stabilizer or galois_stabilizer(chi, cd)
    e = cd.exponent
    unit_group = units(e)
    for d in divisors(e):
        if all(k in stab.members for k in unit_group if k % d == 1 % d):
            return d
    raise AssertionError("the exponent always qualifies")  # pragma: no cover


def field_degree(chi, cd: ClassData) -> int:
    """``[Q(chi) : Q]``."""
    return galois_stabilizer(chi, cd).index


# -- determinants -----------------------------------------------------------

def _times_root(val: Cyclo, e: int, k: int) -> Cyclo:
    """``val * zeta_e**k`` at the common context."""
    ctx = math.lcm(val.n, e)
    return val.lift(ctx).mul_root(k * (ctx // e))


def determinant_exponents(chi, cd: ClassData) -> tuple[int, ...]:
    """``det chi`` on each class as an exponent of ``zeta_e``.

    On a class of order ``m``, ``chi`` restricted to the cyclic subgroup is
    split into the linear characters of C_m by the exact discrete transform
    ``a_j = (1/m) sum_t chi(g^t) zeta_m^(-jt)``; the determinant there is
    ``zeta_m^(sum_j j*a_j)``.
    """
    values = _values(chi)
    e = cd.exponent
    degree = values[0]
    out = []
    for c in range(cd.num_classes):
        m = cd.orders[c]
        step = e // m
        seq = [values[cd.power_maps[t][c]] for t in range(m)]
        total = 0
        det = 0
        for j in range(m):
            acc = Cyclo.zero(e)
            for t, val in enumerate(seq):
                if val:
                    acc = acc + _times_root(val, e, -j * t * step)
            a_j = acc / m
            if not a_j.is_rational():
                raise DecompositionFailure(f"multiplicity on class {c} is irrational")
            q = Fraction(a_j.to_rational())
            if q.denominator != 1 or q < 0:
                raise DecompositionFailure(f"multiplicity {q} on class {c}")
            total += int(q)
            det += j * int(q)
        if degree != total:
            raise DecompositionFailure(f"multiplicities on class {c} sum to {total}")
        out.append((det % m) * step % e)
    return tuple(out)


def determinantal_order(chi, cd: ClassData) -> int:
    """Multiplicative order of the linear character ``det chi``."""
    exps = determinant_exponents(chi, cd)
    e = cd.exponent
    return e // math.gcd(e, *exps)


@lru_cache(maxsize=None)
def _table_det_orders(table: CharacterTable) -> tuple[int, ...]:
    return tuple(determinantal_order(row, table.classes) for row in table.rows)


# -- normal and subnormal subgroups -----------------------------------------

@lru_cache(maxsize=None)
def normal_subgroups(G: FinGroup) -> tuple[FinGroup, ...]:
    """All normal subgroups, as joins of normal closures of single classes.

    Sorted by order, then by element list.
    """
    cd = conjugacy_classes(G)
    found: dict[tuple, FinGroup] = {}
    triv = trivial_subgroup(G)
    found[triv.elements] = triv
    for c in range(1, cd.num_classes):
        N = normal_closure(G, [cd.rep(c)])
        found.setdefault(N.elements, N)
    base = list(found.values())
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        element_sets = {k: set(k) for k in found}
        for A in current:
            for B in base:
                if B.order <= A.order and set(B.elements) <= element_sets[A.elements]:
                    continue
                if A.order <= B.order and set(A.elements) <= set(B.elements):
                    continue
                J = subgroup(G, list(A.generators) + list(B.generators))
                if J.elements not in found:
                    found[J.elements] = J
                    changed = True
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.elements)))


@lru_cache(maxsize=None)
def subnormal_subgroups(G: FinGroup, cap: int = DEFAULT_LATTICE_CAP) -> tuple[FinGroup, ...]:
    """Every subnormal subgroup: normal subgroups of normal subgroups, recursively."""
    seen = {G.elements: G}
    stack = [G]
    while stack:
        S = stack.pop()
        for N in normal_subgroups(S):
            if N.elements not in seen:
                seen[N.elements] = N
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} subnormal subgroups")
                stack.append(N)
    return tuple(sorted(seen.values(), key=lambda H: (H.order, H.elements)))


# -- p-special characters ---------------------------------------------------

def is_p_special(chi, table: CharacterTable, p: int, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Whether ``chi`` has ``p``-power degree and every irreducible constituent of
    every subnormal restriction has ``p``-power determinantal order."""
    G = table.group
    if not is_solvable(G):
        raise NotSolvable("p-special characters are only tested in solvable groups")
    values = _values(chi)
    if not is_power_of(values[0].to_rational(), p):
        return False
    chi_fn = ClassFunction(table.classes, values)
    for S in subnormal_subgroups(G, cap):
        if S.order == 1:
            continue
        if S == G:
            if not is_power_of(determinantal_order(values, table.classes), p):
                return False
            continue
        sub_table = character_table(S, 0)
        res, _ = restrict(chi_fn, sub_table.classes)
        det_orders = _table_det_orders(sub_table)
        for i, _mult in constituents(res, sub_table):
            if not is_power_of(det_orders[i], p):
                return False
    return True


def p_special_primes(chi, table: CharacterTable, primes: Iterable[int] | None = None) -> tuple[int, ...]:
    """Primes (dividing ``|G|`` by default) for which ``chi`` is p-special."""
    if primes is None:
        primes = prime_divisors(table.group.order)
    return tuple(p for p in primes if is_p_special(chi, table, p))


# -- conjugation action on characters of a normal subgroup -------------------

def _conjugation_class_map(cd: ClassData, x: Permutation) -> tuple[int, ...]:
    N = cd.group
    x_inv = invert(x)
    out = []
    for c in range(cd.num_classes):
        y = compose(compose(x, cd.rep(c)), x_inv)
        if y not in N:
            raise NotNormalizing("actor does not normalize the subgroup")
        out.append(cd.class_of[N.index(y)])
    return tuple(out)


def conjugate_character(theta, cd: ClassData, x: Permutation) -> tuple[Cyclo, ...]:
    """Values of ``c -> theta(x g_c x^-1)`` for ``x`` normalizing the group of ``cd``."""
    values = _values(theta)
    cmap = _conjugation_class_map(cd, x)
    return tuple(values[cmap[c]] for c in range(cd.num_classes))


def is_invariant_under(theta, cd: ClassData, actors: Iterable[Permutation]) -> bool:
    values = _values(theta)
    for x in actors:
        for c, k in enumerate(_conjugation_class_map(cd, x)):
            if values[k] != values[c]:
                return False
    return True


# -- profiles ---------------------------------------------------------------

@dataclass(frozen=True)
class CharacterProfile:
    degree: int
    feit: int
    det_order: int
    is_rational: bool
    field_degree: int
    p_special_for: tuple[int, ...] | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "feit": self.feit,
            "det_order": self.det_order,
            "field_degree": self.field_degree,
            "p_special_for": None if self.p_special_for is None else list(self.p_special_for),
        }


def character_profile(table: CharacterTable, i: int, with_special: bool = True) -> CharacterProfile:
    """Invariants of row ``i``; ``p_special_for`` is None for non-solvable groups."""
    row = table.rows[i]
    cd = table.classes
    stab = galois_stabilizer(row, cd)
    special = None
    if with_special and is_solvable(table.group):
        special = p_special_primes(row, table)
    return CharacterProfile(
        degree=row[0].to_rational(),
        feit=feit_number(row, cd, stab),
        det_order=determinantal_order(row, cd),
        is_rational=all(v.is_rational() for v in row),
        field_degree=stab.index,
        p_special_for=special,
    )


def profiles(table: CharacterTable, with_special: bool = True) -> list[CharacterProfile]:
    return [character_profile(table, i, with_special) for i in range(len(table))]
