import itertools
from collections import Counter
from pathlib import Path

import pytest

from feitlab.chartable import (
    ClassFunction,
    choose_prime,
    class_constants,
    compute_character_table,
    constituents,
    induce,
    inner_product,
    permutation_character,
    regular_character,
    render_table,
    restrict,
    table_validity,
    trivial_character,
    character_table,
)
from feitlab.cyclotomic import Cyclo, parse_cyclo, root_of_unity
from feitlab.errors import GroupMismatch, NotACharacter
from feitlab.permgroup import compose, conjugacy_classes, derived_subgroup, format_cycles, invert, sylow_subgroup

from conftest import CORPUS, corpus_group

GOLDEN = Path(__file__).parent / "golden"


def row_of(table, ints):
    return tuple(Cyclo.rational(v) for v in ints)


# -- class algebra -------------------------------------------------------------

def test_class_constants_examples(S3):
    cd = conjugacy_classes(S3)
    a = class_constants(cd)
    t = cd.orders.index(2)
    c3 = cd.orders.index(3)
    assert a[t][t][0] == 3
    assert a[t][t][c3] == 3
    assert a[c3][c3][0] == 2 and a[c3][c3][c3] == 1
    assert a[0][t][t] == 1


@pytest.mark.parametrize("name", ["S3", "Q8", "A4", "S4", "C7:C3", "GL(2,3)"])
def test_class_constants_counting(name):
    cd = conjugacy_classes(corpus_group(name))
    a = class_constants(cd)
    r = cd.num_classes
    for i in range(r):
        for j in range(r):
            assert sum(a[i][j][k] * cd.sizes[k] for k in range(r)) == cd.sizes[i] * cd.sizes[j]


def test_choose_prime():
    assert choose_prime(6, 6) == 7
    assert choose_prime(2, 2) == 3
    assert choose_prime(30, 60) == 31


# -- whole tables --------------------------------------------------------------

def test_c2_table():
    table = character_table(corpus_group("C2"))
    assert table.rows == (row_of(table, [1, -1]), row_of(table, [1, 1]))


def test_s3_from_permutation_character(S3):
    table = character_table(S3)
    cd = table.classes
    std = permutation_character(cd) - trivial_character(cd)
    assert inner_product(std, std) == 1
    assert std.values in table.rows


def test_gl23_shape(GL23):
    table = character_table(GL23)
    assert len(table) == 8
    assert Counter(table.degrees) == Counter([1, 1, 2, 2, 2, 3, 3, 4])
    irrational = [r for r in table.rows if not all(v.is_rational() for v in r)]
    assert len(irrational) == 2
    for r in irrational:
        assert all(v * v.conj() in {0, 2, 4} or v.is_rational() for v in r)
        assert any(v == root_of_unity(8) + root_of_unity(8, 3) or v == -(root_of_unity(8) + root_of_unity(8, 3))
                   for v in r)


@pytest.mark.parametrize("name", list(CORPUS))
def test_table_valid(name):
    table = character_table(corpus_group(name))
    assert all(table_validity(table).values())
    assert table.trivial_index in range(len(table))


def test_determinism_across_seeds(S4, GL23):
    for G in (S4, GL23):
        rows = compute_character_table(G, seed=0).rows
        for seed in (1, 7, 12345):
            assert compute_character_table(G, seed=seed).rows == rows


@pytest.mark.parametrize("name", ["S3", "S4"])
def test_golden(name):
    lines = [l for l in (GOLDEN / f"{name}.txt").read_text().splitlines() if l and not l.startswith("#")]
    reps = [s.strip() for s in lines[0].split("|")]
    expected = {tuple(Cyclo.rational(int(x)) for x in l.split()) for l in lines[1:]}
    table = character_table(corpus_group(name))
    cd = table.classes
    got_reps = [format_cycles(cd.rep(c)) for c in range(cd.num_classes)]
    assert sorted(reps) == sorted(got_reps)
    order = [got_reps.index(rep) for rep in reps]
    assert {tuple(r[c] for c in order) for r in table.rows} == expected


def test_render_table(S3):
    text = render_table(character_table(S3), "S3")
    assert text.splitlines()[0] == "group S3  order 6  classes 3  exponent 6"
    assert text.splitlines()[-1].split() == ["X.3", "2", "0", "-1"]


# -- abelian groups: the dual group computed by brute force ----------------------

def dual_group_rows(G):
    """All homomorphisms G -> <zeta_e>, found by assigning exponents to generators."""
    cd = conjugacy_classes(G)
    e = cd.exponent
    gens = G.generators
    rows = set()
    for assignment in itertools.product(range(e), repeat=len(gens)):
        value = {G.identity: 0}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for g in frontier:
                for gen, a in zip(gens, assignment):
                    h = compose(g, gen)
                    v = (value[g] + a) % e
                    if h in value:
                        if value[h] != v:
                            ok = False
                            break
                    else:
                        value[h] = v
                        nxt.append(h)
                if not ok:
                    break
            frontier = nxt
        if ok:
            rows.add(tuple(root_of_unity(e, value[cd.rep(c)]) for c in range(cd.num_classes)))
    return rows


@pytest.mark.parametrize("name", [n for n, e in CORPUS.items() if "abelian" in e.tags])
def test_abelian_table_is_dual_group(name):
    G = corpus_group(name)
    table = character_table(G)
    dual = dual_group_rows(G)
    assert len(dual) == G.order
    assert set(table.rows) == dual


# -- inner products, restriction, induction ---------------------------------------

def test_inner_product_examples(S3, S4):
    table = character_table(S3)
    for i, chi in enumerate(table.characters()):
        for j, psi in enumerate(table.characters()):
            assert inner_product(chi, psi) == (1 if i == j else 0)
    reg = regular_character(table.classes)
    assert constituents(reg, table) == [(i, d) for i, d in enumerate(table.degrees)]
    with pytest.raises(GroupMismatch):
        inner_product(reg, trivial_character(conjugacy_classes(S4)))


def test_not_a_character(S3):
    table = character_table(S3)
    virtual = table.character(2) - table.character(1)
    with pytest.raises(NotACharacter):
        constituents(virtual, table)
    third = ClassFunction(table.classes, tuple(v / 3 for v in table.rows[2]))
    with pytest.raises(NotACharacter):
        constituents(third, table)


def test_s4_restriction_to_a4(S4):
    A4 = derived_subgroup(S4)
    table = character_table(S4)
    sub = character_table(A4)
    chi = table.character(table.degrees.index(2))
    res, fusion = restrict(chi, A4)
    assert len(fusion) == sub.classes.num_classes
    nontrivial_linear = [i for i, d in enumerate(sub.degrees) if d == 1 and i != sub.trivial_index]
    assert constituents(res, sub) == [(i, 1) for i in nontrivial_linear]


def brute_induce(theta, G):
    """theta^G(g) = (1/|H|) * sum over x in G of theta(x g x^-1), zero off H."""
    sub = theta.classes
    H = sub.group
    cd = conjugacy_classes(G)
    values = []
    for c in range(cd.num_classes):
        g = cd.rep(c)
        total = Cyclo.zero()
        for x in G:
            y = compose(compose(x, g), invert(x))
            if y in H:
                total = total + theta.values[sub.class_of[H.index(y)]]
        values.append(total / H.order)
    return tuple(values)


@pytest.mark.parametrize("name,p", [("S3", 3), ("S4", 2), ("S4", 3), ("A4", 2), ("C7:C3", 7), ("Q8", 2),
                                    ("GL(2,3)", 3), ("D10", 5)])
def test_induce_matches_brute_force_and_reciprocity(name, p):
    G = corpus_group(name)
    H = sylow_subgroup(G, p)
    if H == G:
        H = derived_subgroup(G)
    table = character_table(G)
    sub = character_table(H)
    for theta in sub.characters():
        ind = induce(theta, G)
        assert ind.values == brute_induce(theta, G)
        for chi in table.characters():
            assert inner_product(ind, chi) == inner_product(theta, restrict(chi, H)[0])


def test_induce_c7_to_c7c3(C7C3):
    C7 = sylow_subgroup(C7C3, 7)
    table = character_table(C7C3)
    sub = character_table(C7)
    theta = next(t for t in sub.characters() if t.values != sub.rows[sub.trivial_index])
    ind = induce(theta, C7C3)
    assert ind.degree == 3
    assert inner_product(ind, ind) == 1
    assert ind.values in table.rows


def test_parse_values_of_rendered_table(GL23):
    table = character_table(GL23)
    for row in table.rows:
        assert tuple(parse_cyclo(str(v)) for v in row) == row
