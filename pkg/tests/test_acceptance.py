"""Acceptance criteria, one PASS/FAIL line each (run with ``-s`` to see them)."""

import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

import feitlab
from feitlab import chartable, charinv, cyclotomic, permgroup
from feitlab.chartable import character_table, table_validity
from feitlab.charinv import feit_number
from feitlab.cyclotomic import Cyclo
from feitlab.harness import GroupData, check_amit_chillag, check_lemmas, check_theorem_a
from feitlab.permgroup import conjugacy_classes, format_cycles, is_solvable, normalizer, subgroup, sylow_subgroup
from feitlab._arith import prime_divisors

from conftest import CORPUS, corpus_group
from test_chartable import GOLDEN, dual_group_rows
from test_permgroup import brute_classes, brute_normalizer


def clear_caches():
    for mod in (permgroup, chartable, charinv, cyclotomic, feitlab._arith):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


@contextmanager
def criterion(number, title, budget=None):
    start = time.perf_counter()
    notes = []
    try:
        yield notes
    except AssertionError as exc:
        print(f"\ncriterion {number}: FAIL  {title}  ({time.perf_counter() - start:.2f}s)  {exc}")
        raise
    elapsed = time.perf_counter() - start
    extra = ("  " + "; ".join(notes)) if notes else ""
    if budget is not None and elapsed >= budget:
        print(f"\ncriterion {number}: FAIL  {title}  ({elapsed:.2f}s, budget {budget}s){extra}")
        pytest.fail(f"took {elapsed:.2f}s, budget {budget}s")
    print(f"\ncriterion {number}: PASS  {title}  ({elapsed:.2f}s){extra}")


def test_criterion_1_gl23():
    clear_caches()
    with criterion(1, "GL(2,3) at p=3: two degree-2 rows with f=8, coset exponent 6", budget=2) as notes:
        gd = GroupData(CORPUS["GL(2,3)"])
        table = gd.table
        rows = [r for r in table.rows if r[0] == 2 and not all(v.is_rational() for v in r)]
        assert len(rows) == 2, f"{len(rows)} non-rational degree-2 rows"
        assert [feit_number(r, table.classes) for r in rows] == [8, 8]
        sd = gd.sylow_data(3)
        assert sd.spectrum.max_order == 6
        assert 8 not in sd.spectrum and sd.index % 8 != 0
        notes.append(f"|N:P'|={sd.index}, spectrum={sd.spectrum.as_multiset()}")


def test_criterion_2_a5():
    clear_caches()
    with criterion(2, "A5 at p=2: two degree-3 rows with f=5, no coset of order 5", budget=2) as notes:
        gd = GroupData(CORPUS["A5"])
        table = gd.table
        rows = [r for r in table.rows if r[0] == 3]
        assert len(rows) == 2
        assert [feit_number(r, table.classes) for r in rows] == [5, 5]
        sd = gd.sylow_data(2)
        assert sd.index % 5 != 0 and 5 not in sd.spectrum
        assert not is_solvable(gd.group)
        notes.append(f"|N:P'|={sd.index}, coset orders={sorted(sd.spectrum.counts)}")


def solvable_entries():
    return [e for e in CORPUS.values() if e.group().order <= 500 and is_solvable(e.group())]


def test_criterion_3_theorem_a():
    clear_caches()
    with criterion(3, "odd p'-degree rows of solvable groups have a coset of order f dividing |N:P'|",
                   budget=60) as notes:
        entries = solvable_entries()
        assert len(entries) >= 12, f"only {len(entries)} solvable entries"
        checked = 0
        failures = []
        for entry in entries:
            gd = GroupData(entry)
            for p in prime_divisors(gd.group.order):
                for r in check_theorem_a(gd, p):
                    if r.degree % 2 == 1 and r.degree % p:
                        checked += 1
                        if not (r.holds and r.witness):
                            failures.append((entry.name, p, r.char_index))
        assert not failures, failures
        notes.append(f"{len(entries)} groups, {checked} (row, p) pairs")


def test_criterion_4_amit_chillag():
    with criterion(4, "every row of a solvable group has an element of order f") as notes:
        failures = []
        count = 0
        for entry in CORPUS.values():
            gd = GroupData(entry)
            if not gd.solvable:
                continue
            for r in check_amit_chillag(gd):
                count += 1
                if not r.holds:
                    failures.append((entry.name, r.char_index))
        assert not failures, failures
        notes.append(f"{count} rows")


def test_criterion_5_table_validity():
    with criterion(5, "exact orthogonality, degrees and Galois closure for every entry") as notes:
        bad = {}
        for name in CORPUS:
            v = table_validity(character_table(corpus_group(name)))
            if not all(v.values()):
                bad[name] = [k for k, ok in v.items() if not ok]
        assert not bad, bad
        notes.append(f"{len(CORPUS)} tables")


def test_criterion_6_lemmas():
    with criterion(6, "lemma suite on every solvable entry") as notes:
        failures = []
        counts = {}
        q2_rational = []
        for entry in CORPUS.values():
            gd = GroupData(entry)
            if not gd.solvable:
                continue
            for r in check_lemmas(gd, prime_divisors(gd.group.order)):
                counts[r.check] = counts.get(r.check, 0) + 1
                if not r.holds:
                    failures.append((entry.name, r.check, r.p, r.char_index))
                if r.check == "lemma3" and r.p == 2 and r.feit % 2:
                    q2_rational.append(f"{entry.name}#{r.char_index}")
        assert not failures, failures
        assert all(counts.get(k) for k in ("lemma1", "lemma2", "lemma3", "lemma4"))
        notes.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())))
        # zeta_2 = -1 is rational, so "q | f" cannot hold literally at q = 2
        notes.append(f"q=2 rows with odd f (root test used): {len(q2_rational)}")


def test_criterion_7_oracles():
    with criterion(7, "brute-force classes and normalizers, abelian dual tables, golden S3/S4") as notes:
        small = [n for n in CORPUS if corpus_group(n).order <= 24]
        for name in small:
            G = corpus_group(name)
            cd = conjugacy_classes(G)
            got = {frozenset(G.elements[i] for i in cd.members(c)) for c in range(cd.num_classes)}
            assert got == {frozenset(c) for c in brute_classes(G)}, name
            subgroups = [sylow_subgroup(G, p) for p in prime_divisors(G.order)]
            subgroups += [subgroup(G, [g]) for g in G.elements]
            for H in subgroups:
                assert set(normalizer(G, H).elements) == brute_normalizer(G, H), name
        abelian = [n for n, e in CORPUS.items() if "abelian" in e.tags]
        for name in abelian:
            assert set(character_table(corpus_group(name)).rows) == dual_group_rows(corpus_group(name)), name
        for name in ("S3", "S4"):
            lines = [l for l in (GOLDEN / f"{name}.txt").read_text().splitlines() if l and not l.startswith("#")]
            reps = [s.strip() for s in lines[0].split("|")]
            table = character_table(corpus_group(name))
            got_reps = [format_cycles(table.classes.rep(c)) for c in range(table.classes.num_classes)]
            order = [got_reps.index(rep) for rep in reps]
            expected = {tuple(Cyclo.rational(int(x)) for x in l.split()) for l in lines[1:]}
            assert {tuple(r[c] for c in order) for r in table.rows} == expected, name
        notes.append(f"{len(small)} small groups, {len(abelian)} abelian, 2 golden")


def test_criterion_8_determinism(tmp_path):
    with criterion(8, "two verify runs give byte-identical JSON") as notes:
        outputs = []
        for k in range(2):
            path = tmp_path / f"run{k}.json"
            proc = subprocess.run([sys.executable, "-m", "feitlab.cli", "verify", "bundled", "--check", "all",
                                   "--seed", "0", "--json", str(path)], capture_output=True)
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]
        notes.append(f"{len(outputs[0])} bytes")
