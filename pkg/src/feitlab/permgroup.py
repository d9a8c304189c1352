"""Permutation groups held as fully enumerated, canonically sorted element lists.

A permutation is a plain tuple of 0-based images. Products read left to right:
``compose(p, q)`` applies ``p`` first, then ``q``. Group elements are identified
by their index in the sorted element list, and every map in :class:`ClassData`
is expressed over those indices.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from ._arith import is_prime, p_part
from .errors import (
    ClosureExceedsCap,
    DegreeMismatch,
    NotNormal,
    NotPrime,
    NotSubgroup,
    PermutationParseError,
)

Permutation = tuple[int, ...]

DEFAULT_CAP = 100_000

__all__ = [
    "Permutation", "FinGroup", "ClassData", "QuotientSpectrum", "DEFAULT_CAP",
    "identity", "compose", "invert", "perm_power", "perm_order", "conjugate",
    "commutator", "parse_cycles", "format_cycles", "group_closure", "subgroup",
    "conjugacy_classes", "power_map", "derived_subgroup", "derived_series",
    "is_solvable", "is_abelian", "normal_closure", "sylow_subgroup", "normalizer",
    "is_normal", "quotient_order_spectrum", "element_orders", "trivial_subgroup",
]


# -- permutations -----------------------------------------------------------

def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product ``p*q``: first ``p``, then ``q``."""
    return tuple(map(q.__getitem__, p))


def invert(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = invert(p), -k
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def perm_order(p: Permutation) -> int:
    """Order of ``p``: lcm of its cycle lengths."""
    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = math.lcm(order, length)
    return order


def conjugate(g: Permutation, x: Permutation) -> Permutation:
    """``x^-1 * g * x``."""
    return compose(compose(invert(x), g), x)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b``."""
    return compose(compose(invert(a), invert(b)), compose(a, b))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation with 1-based points, e.g. ``"(1 2 3)(4 5)"``.

    Points may be separated by spaces or commas. ``"()"`` is the identity.
    """
    text = text.strip()
    if not text:
        raise PermutationParseError("empty permutation text")
    leftover = _CYCLE_RE.sub("", text)
    if leftover.strip():
        raise PermutationParseError(f"unexpected characters {leftover.strip()!r} in {text!r}")
    images = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        try:
            points = [int(t) - 1 for t in tokens]
        except ValueError:
            raise PermutationParseError(f"non-integer point in {text!r}") from None
        for pt in points:
            if not 0 <= pt < degree:
                raise PermutationParseError(f"point {pt + 1} out of range 1..{degree} in {text!r}")
            if pt in used:
                raise PermutationParseError(f"point {pt + 1} repeated in {text!r}")
            used.add(pt)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(p: Permutation) -> str:
    """Inverse of :func:`parse_cycles`; fixed points omitted, identity is ``"()"``."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cycle = []
        j = i
        while not seen[j]:
            seen[j] = True
            cycle.append(str(j + 1))
            j = p[j]
        parts.append("(" + " ".join(cycle) + ")")
    return "".join(parts) or "()"


# -- groups -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FinGroup:
    """A permutation group with every element listed in lexicographic order.

    Two groups compare equal when they have the same degree and element set;
    generators are ignored.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    _index: dict = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.elements)})
        object.__setattr__(self, "_hash", hash((self.degree, self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def index(self, g: Permutation) -> int:
        """Position of ``g`` in the element list (KeyError if absent)."""
        return self._index[g]

    def __contains__(self, g) -> bool:
        return g in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinGroup):
            return NotImplemented
        return self._hash == other._hash and self.degree == other.degree and self.elements == other.elements

    def __hash__(self) -> int:
        return self._hash

    def issubset(self, other: FinGroup) -> bool:
        return self.order <= other.order and all(g in other for g in self.elements)

    def __repr__(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"FinGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"


def group_closure(degree: int, generators: Iterable[Permutation], cap: int = DEFAULT_CAP) -> FinGroup:
    """Breadth-first closure of ``generators`` into the full group they generate."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree:
            raise DegreeMismatch(f"generator {g} has degree {len(g)}, expected {degree}")
        if sorted(g) != list(range(degree)):
            raise PermutationParseError(f"{g} is not a permutation")
        if g not in gens:
            gens.append(g)
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        raise ClosureExceedsCap(f"group exceeds cap of {cap} elements")
                    nxt.append(h)
        frontier = nxt
    return FinGroup(degree, tuple(g for g in gens if g != e), tuple(sorted(seen)))


def trivial_subgroup(G: FinGroup) -> FinGroup:
    return FinGroup(G.degree, (), (G.identity,))


def subgroup(G: FinGroup, generators: Iterable[Permutation]) -> FinGroup:
    """Subgroup of ``G`` generated by ``generators`` (each must lie in ``G``)."""
    gens = list(generators)
    for g in gens:
        if g not in G:
            raise NotSubgroup(f"{format_cycles(g)} is not an element of the group")
    return group_closure(G.degree, gens, cap=G.order)


def _from_elements(degree: int, elements: Sequence[Permutation]) -> FinGroup:
    """Wrap a known-closed, sorted element list, picking a small generating set."""
    gens: list[Permutation] = []
    span = {identity(degree)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(group_closure(degree, gens, cap=len(elements)).elements)
            if len(span) == len(elements):
                break
    return FinGroup(degree, tuple(gens), tuple(elements))


def is_abelian(G: FinGroup) -> bool:
    gens = G.generators
    return all(compose(a, b) == compose(b, a) for a in gens for b in gens)


def element_orders(G: FinGroup) -> Counter:
    return Counter(perm_order(g) for g in G.elements)


# -- conjugacy classes ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassData:
    """Conjugacy classes of ``group``, all maps over element/class indices.

    Classes are ordered by their representative, which is the least-index
    element in the class; class 0 is therefore the identity class.
    ``power_maps[k][c]`` is the class of ``g**k`` for ``g`` in class ``c``,
    for ``k`` in ``0 .. exponent-1``.
    """

    group: FinGroup
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int
    power_maps: tuple[tuple[int, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.reps)

    def rep(self, c: int) -> Permutation:
        return self.group.elements[self.reps[c]]

    def class_of_element(self, g: Permutation) -> int:
        return self.class_of[self.group.index(g)]

    @property
    def inverse_classes(self) -> tuple[int, ...]:
        return self.power_maps[-1 % self.exponent]

    def members(self, c: int) -> list[int]:
        return [i for i, k in enumerate(self.class_of) if k == c]


@lru_cache(maxsize=None)
def conjugacy_classes(G: FinGroup) -> ClassData:
    """Conjugacy classes as orbits of conjugation by the generators of ``G``."""
    n = G.order
    class_of = [-1] * n
    reps, sizes = [], []
    gens = [(s, invert(s)) for s in G.generators]
    for i in range(n):
        if class_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        class_of[i] = c
        orbit = [G.elements[i]]
        for g in orbit:
            for s, s_inv in gens:
                h = compose(compose(s_inv, g), s)
                j = G.index(h)
                if class_of[j] < 0:
                    class_of[j] = c
                    orbit.append(h)
        sizes.append(len(orbit))
    orders = tuple(perm_order(G.elements[r]) for r in reps)
    exponent = math.lcm(*orders)
    columns = []
    for r in reps:
        g = G.elements[r]
        x = G.identity
        col = []
        for _ in range(exponent):
            col.append(class_of[G.index(x)])
            x = compose(x, g)
        columns.append(col)
    power_maps = tuple(tuple(col[k] for col in columns) for k in range(exponent))
    return ClassData(G, tuple(reps), tuple(sizes), tuple(class_of), orders, exponent, power_maps)


def power_map(cd: ClassData, k: int) -> tuple[int, ...]:
    """Class map ``c -> class of g**k``; depends only on ``k mod exponent``."""
    return cd.power_maps[k % cd.exponent]


# -- subgroups --------------------------------------------------------------

def normal_closure(G: FinGroup, elements: Iterable[Permutation]) -> FinGroup:
    """Smallest normal subgroup of ``G`` containing ``elements``."""
    gens = [g for g in elements if g != G.identity]
    H = subgroup(G, gens)
    while True:
        extra = []
        for x in G.generators:
            for h in H.generators:
                y = conjugate(h, x)
                if y not in H and y not in extra:
                    extra.append(y)
        if not extra:
            return H
        H = subgroup(G, list(H.generators) + extra)


def derived_subgroup(G: FinGroup) -> FinGroup:
    """Commutator subgroup, as the normal closure of commutators of generators."""
    gens = G.generators
    return normal_closure(G, [commutator(a, b) for a in gens for b in gens])


def derived_series(G: FinGroup) -> list[FinGroup]:
    """``[G, G', G'', ...]`` ending at the first repeated (perfect) term."""
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


@lru_cache(maxsize=None)
def is_solvable(G: FinGroup) -> bool:
    return derived_series(G)[-1].order == 1


def is_normal(G: FinGroup, H: FinGroup) -> bool:
    return all(conjugate(h, x) in H for x in G.generators for h in H.generators)


def normalizer(G: FinGroup, H: FinGroup) -> FinGroup:
    """``{g in G : g^-1 H g = H}`` by a full scan of ``G``."""
    if H.degree != G.degree:
        raise DegreeMismatch("subgroup and group have different degrees")
    if not H.issubset(G):
        raise NotSubgroup("H is not contained in G")
    # conjugating a generating set into H suffices for a finite H
    gens = H.generators
    elements = [g for g in G.elements if all(conjugate(h, g) in H for h in gens)]
    if len(elements) == G.order:
        return G
    return _from_elements(G.degree, elements)


def sylow_subgroup(G: FinGroup, p: int) -> FinGroup:
    """A Sylow ``p``-subgroup, grown one factor ``p`` at a time inside normalizers.

    At each step the first element (in canonical order) of ``N_G(P)`` that lies
    outside ``P`` but has its ``p``-th power in ``P`` is adjoined. The result is
    deterministic for a given element ordering.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    target = p_part(G.order, p)
    P = trivial_subgroup(G)
    while P.order < target:
        N = normalizer(G, P)
        for x in N.elements:
            if x not in P and perm_power(x, p) in P:
                P = subgroup(G, list(P.generators) + [x])
                break
        else:  # pragma: no cover - Sylow theory guarantees an extension
            raise AssertionError("no p-element extends P inside its normalizer")
    return P


@dataclass(frozen=True)
class QuotientSpectrum:
    """Orders of the cosets of ``K`` in ``N``.

    ``counts[m]`` is the number of cosets of order ``m``; ``witnesses[m]`` is the
    first coset representative (canonical order) whose coset has order ``m``.
    """

    counts: dict[int, int]
    witnesses: dict[int, Permutation]

    def __contains__(self, m: int) -> bool:
        return m in self.counts

    @property
    def index(self) -> int:
        return sum(self.counts.values())

    @property
    def exponent(self) -> int:
        return math.lcm(*self.counts)

    @property
    def max_order(self) -> int:
        return max(self.counts)

    def as_multiset(self) -> list[int]:
        return sorted(Counter(self.counts).elements())


def quotient_order_spectrum(N: FinGroup, K: FinGroup) -> QuotientSpectrum:
    """Order of every coset ``gK`` in ``N/K``: least ``m >= 1`` with ``g**m`` in ``K``."""
    if not K.issubset(N):
        raise NotSubgroup("K is not contained in N")
    if not is_normal(N, K):
        raise NotNormal("K is not normal in N")
    covered: set[Permutation] = set()
    counts: dict[int, int] = {}
    witnesses: dict[int, Permutation] = {}
    for g in N.elements:
        if g in covered:
            continue
        covered.update(compose(g, k) for k in K.elements)
        m, x = 1, g
        while x not in K:
            x = compose(x, g)
            m += 1
        counts[m] = counts.get(m, 0) + 1
        witnesses.setdefault(m, g)
    return QuotientSpectrum(dict(sorted(counts.items())), dict(sorted(witnesses.items())))
