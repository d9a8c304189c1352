"""Corpus ingestion, verification suites and report emission."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Any, Iterable, Sequence

from . import __version__
from ._arith import is_power_of, is_prime, prime_divisors
from .chartable import (
    CharacterTable,
    character_table,
    constituents,
    restrict,
    table_validity,
)
from .charinv import (
    CharacterProfile,
    conjugate_character,
    determinantal_order,
    galois_stabilizer,
    is_invariant_under,
    normal_subgroups,
    profiles,
)
from .errors import CorpusError, DuplicateName, PermutationParseError
from .permgroup import (
    DEFAULT_CAP,
    FinGroup,
    conjugacy_classes,
    derived_subgroup,
    element_orders,
    format_cycles,
    group_closure,
    is_solvable,
    normalizer,
    parse_cycles,
    perm_order,
    quotient_order_spectrum,
    sylow_subgroup,
)

log = logging.getLogger(__name__)

CHECKS = ("table", "theoremA", "amitchillag", "lemmas", "counterexample")


# -- corpus -----------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    degree: int
    generators: tuple[str, ...]
    tags: tuple[str, ...] = ()

    def group(self, cap: int = DEFAULT_CAP) -> FinGroup:
        gens = [parse_cycles(g, self.degree) for g in self.generators]
        return group_closure(self.degree, gens, cap=cap)

    def counterexample_primes(self) -> list[int]:
        return [int(t.split(":", 1)[1]) for t in self.tags if t.startswith("counterexample:")]


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_corpus(text: str) -> list[CorpusEntry]:
    """Parse ``group ... end`` blocks; ``#`` starts a comment."""
    entries: list[CorpusEntry] = []
    names: set[str] = set()
    current: dict[str, Any] | None = None
    start = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = " ".join(rest.split())
        if current is None:
            if key != "group" or not rest or " " in rest:
                raise CorpusError(f"expected 'group <name>', got {line!r}", lineno)
            if rest in names:
                raise DuplicateName(f"duplicate group name {rest!r}", lineno)
            current = {"name": rest, "degree": None, "gens": [], "tags": []}
            start = lineno
        elif key == "degree":
            if current["degree"] is not None:
                raise CorpusError("degree given twice", lineno)
            try:
                current["degree"] = int(rest)
            except ValueError:
                raise CorpusError(f"bad degree {rest!r}", lineno) from None
            if current["degree"] < 1:
                raise CorpusError("degree must be positive", lineno)
        elif key == "tag":
            if not rest or " " in rest:
                raise CorpusError(f"bad tag {rest!r}", lineno)
            current["tags"].append(rest)
        elif key == "gen":
            if current["degree"] is None:
                raise CorpusError("'gen' before 'degree'", lineno)
            try:
                parse_cycles(rest, current["degree"])
            except PermutationParseError as exc:
                raise CorpusError(str(exc), lineno) from None
            current["gens"].append(rest)
        elif key == "end" and not rest:
            if current["degree"] is None:
                raise CorpusError(f"group {current['name']!r} has no degree", lineno)
            if not current["gens"]:
                raise CorpusError(f"group {current['name']!r} has no generators", lineno)
            entries.append(CorpusEntry(current["name"], current["degree"],
                                       tuple(current["gens"]), tuple(current["tags"])))
            names.add(current["name"])
            current = None
        else:
            raise CorpusError(f"unexpected line {line!r}", lineno)
    if current is not None:
        raise CorpusError(f"group {current['name']!r} is missing 'end'", start)
    return entries


def render_corpus(entries: Iterable[CorpusEntry]) -> str:
    lines = []
    for e in entries:
        lines.append(f"group {e.name}")
        lines.append(f"degree {e.degree}")
        lines.extend(f"tag {t}" for t in e.tags)
        lines.extend(f"gen {g}" for g in e.generators)
        lines.append("end")
    return "".join(line + "\n" for line in lines)


def normalize_corpus(text: str) -> str:
    """Drop comments and blank lines, collapse whitespace, order each block
    as group/degree/tags/gens/end."""
    out = []
    block: dict[str, list[str]] = {}
    for raw in text.splitlines():
        line = " ".join(_strip(raw).split())
        if not line:
            continue
        key = line.split(" ", 1)[0]
        if key == "group":
            block = {"group": [line], "degree": [], "tag": [], "gen": []}
        elif key == "end":
            out.extend(block["group"] + block["degree"] + block["tag"] + block["gen"] + ["end"])
        else:
            block[key].append(line)
    return "".join(line + "\n" for line in out)


def corpus_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def bundled_corpus_text() -> str:
    return resources.files("feitlab").joinpath("data/corpus.txt").read_text(encoding="utf-8")


# -- per-group data ---------------------------------------------------------

class GroupData:
    """Lazily computed group, table and profiles for one corpus entry."""

    def __init__(self, entry: CorpusEntry, seed: int = 0, cap: int = DEFAULT_CAP):
        self.entry = entry
        self.seed = seed
        self.cap = cap

    @cached_property
    def group(self) -> FinGroup:
        return self.entry.group(self.cap)

    @cached_property
    def table(self) -> CharacterTable:
        return character_table(self.group, self.seed)

    @cached_property
    def solvable(self) -> bool:
        return is_solvable(self.group)

    @cached_property
    def profiles(self) -> list[CharacterProfile]:
        return profiles(self.table)

    @cached_property
    def element_orders(self) -> dict[int, int]:
        return dict(element_orders(self.group))

    def sylow_data(self, p: int) -> SylowData:
        cache = self.__dict__.setdefault("_sylow", {})
        if p not in cache:
            cache[p] = SylowData(self.group, p)
        return cache[p]


class SylowData:
    def __init__(self, G: FinGroup, p: int):
        self.p = p
        self.P = sylow_subgroup(G, p)
        self.N = normalizer(G, self.P)
        self.P_derived = derived_subgroup(self.P)
        self.spectrum = quotient_order_spectrum(self.N, self.P_derived)

    @property
    def index(self) -> int:
        return self.N.order // self.P_derived.order

    def summary(self) -> dict:
        return {
            "sylow_order": self.P.order,
            "normalizer_order": self.N.order,
            "derived_order": self.P_derived.order,
            "quotient_order": self.index,
            "spectrum": {str(k): v for k, v in self.spectrum.counts.items()},
        }


# -- results ----------------------------------------------------------------

@dataclass
class CheckResult:
    group: str
    check: str
    holds: bool
    hypothesis_met: bool = True
    p: int | None = None
    char_index: int | None = None
    degree: int | None = None
    feit: int | None = None
    witness: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        if not self.hypothesis_met:
            return "hypothesis_violated"
        return "pass" if self.holds else "fail"

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "check": self.check,
            "p": self.p,
            "char_index": self.char_index,
            "degree": self.degree,
            "feit": self.feit,
            "holds": self.holds,
            "hypothesis_met": self.hypothesis_met,
            "witness": self.witness,
            "details": self.details,
        }


def _witness(g, m: int) -> str:
    return f"{format_cycles(g)} has order {m}"


def check_table(gd: GroupData) -> list[CheckResult]:
    validity = table_validity(gd.table)
    return [CheckResult(gd.entry.name, "table", all(validity.values()), details={
        "order": gd.group.order, "classes": len(gd.table), "degrees": list(gd.table.degrees),
        **validity})]


def check_theorem_a(gd: GroupData, p: int) -> list[CheckResult]:
    """Odd p'-degree rows: some coset of P' in N_G(P) has order f_chi."""
    sd = gd.sylow_data(p)
    results = []
    for i, prof in enumerate(gd.profiles):
        p_prime = prof.degree % p != 0
        odd = prof.degree % 2 == 1
        in_spectrum = prof.feit in sd.spectrum
        divides = sd.index % prof.feit == 0
        reasons = []
        if not gd.solvable:
            reasons.append("group not solvable")
        if not p_prime:
            reasons.append("p divides degree")
        if not odd:
            reasons.append("even degree")
        witness = sd.spectrum.witnesses.get(prof.feit)
        results.append(CheckResult(
            gd.entry.name, "theoremA", in_spectrum and divides,
            hypothesis_met=not reasons, p=p, char_index=i, degree=prof.degree, feit=prof.feit,
            witness=None if witness is None else "coset of " + _witness(witness, prof.feit),
            details={**sd.summary(), "feit_in_spectrum": in_spectrum, "feit_divides_index": divides,
                     "hypothesis_failures": reasons},
        ))
    return results


def check_amit_chillag(gd: GroupData) -> list[CheckResult]:
    """Every row has an element of order f_chi (only claimed for solvable groups)."""
    orders = gd.element_orders
    results = []
    for i, prof in enumerate(gd.profiles):
        witness = None
        if prof.feit in orders:
            g = next(g for g in gd.group.elements if perm_order(g) == prof.feit)
            witness = _witness(g, prof.feit)
        results.append(CheckResult(
            gd.entry.name, "amitchillag", prof.feit in orders, hypothesis_met=gd.solvable,
            char_index=i, degree=prof.degree, feit=prof.feit, witness=witness,
            details={"element_orders": sorted(orders)},
        ))
    return results


def _lemma1(gd: GroupData, p: int) -> list[CheckResult]:
    G = gd.group
    table = gd.table
    sd = gd.sylow_data(p)
    normals = [N for N in normal_subgroups(G) if 1 < N.order < G.order]
    results = []
    for i, prof in enumerate(gd.profiles):
        if prof.degree % p == 0:
            continue
        chi = table.character(i)
        ok = True
        per_normal = []
        for N in normals:
            tN = character_table(N, gd.seed)
            res, _ = restrict(chi, tN.classes)
            consts = [j for j, _ in constituents(res, tN)]
            invariant = [j for j in consts if is_invariant_under(tN.rows[j], tN.classes, sd.P.generators)]
            conjugate = True
            for a in invariant:
                orbit = {conjugate_character(tN.rows[a], tN.classes, x) for x in sd.N.elements}
                if any(tN.rows[b] not in orbit for b in invariant):
                    conjugate = False
            ok = ok and bool(invariant) and conjugate
            per_normal.append({"normal_order": N.order, "constituents": consts,
                               "p_invariant": invariant, "normalizer_conjugate": conjugate})
        results.append(CheckResult(gd.entry.name, "lemma1", ok, p=p, char_index=i,
                                   degree=prof.degree, feit=prof.feit,
                                   details={"normal_subgroups": per_normal}))
    return results


def _lemma2(gd: GroupData, p: int) -> list[CheckResult]:
    sd = gd.sylow_data(p)
    special = [i for i, prof in enumerate(gd.profiles) if p in (prof.p_special_for or ())]
    restricted = {}
    for i in special:
        res, _ = restrict(gd.table.character(i), sd.P)
        restricted[i] = res.values
    injective = len(set(restricted.values())) == len(special)
    p_power = {i: gd.profiles[i].feit for i in special}
    ok = injective and all(is_power_of(f, p) for f in p_power.values())
    return [CheckResult(gd.entry.name, "lemma2", ok, p=p,
                        details={"p_special": special, "restriction_injective": injective,
                                 "feit": {str(i): f for i, f in p_power.items()}})]


def _lemma3(gd: GroupData, q: int) -> list[CheckResult]:
    results = []
    cd = gd.table.classes
    triv = gd.table.trivial_index
    for i, prof in enumerate(gd.profiles):
        if i == triv or q not in (prof.p_special_for or ()):
            continue
        stab = galois_stabilizer(gd.table.rows[i], cd)
        # zeta_q in Q(chi) iff every k fixing chi is 1 mod q; for odd q this is
        # the same as q | f_chi, while zeta_2 = -1 is always rational
        root_in_field = all(k % q == 1 for k in stab.members)
        divides = prof.feit % q == 0
        holds = root_in_field and (divides or q == 2)
        results.append(CheckResult(gd.entry.name, "lemma3", holds, p=q, char_index=i,
                                   degree=prof.degree, feit=prof.feit,
                                   details={"stabilizer": list(stab.members), "modulus": stab.modulus,
                                            "root_in_field": root_in_field, "q_divides_feit": divides}))
    return results


def _lemma4(gd: GroupData, p: int) -> list[CheckResult]:
    sd = gd.sylow_data(p)
    cdN = conjugacy_classes(sd.N)
    results = []
    for i, prof in enumerate(gd.profiles):
        if prof.degree != 1:
            continue
        lam = gd.table.character(i)
        on_normalizer = determinantal_order(restrict(lam, cdN)[0], cdN)
        on_group = determinantal_order(restrict(lam, gd.table.classes)[0], gd.table.classes)
        ok = prof.det_order == on_normalizer == on_group
        results.append(CheckResult(gd.entry.name, "lemma4", ok, p=p, char_index=i, degree=1, feit=prof.feit,
                                   details={"order": prof.det_order, "order_on_normalizer": on_normalizer,
                                            "order_on_group": on_group, "normalizer_order": sd.N.order}))
    return results


def check_lemmas(gd: GroupData, primes: Sequence[int]) -> list[CheckResult]:
    """Lemmas 1 and 4 on every group; lemmas 2 and 3 only on solvable groups."""
    results = []
    for p in primes:
        results += _lemma1(gd, p)
        if gd.solvable:
            results += _lemma2(gd, p)
            results += _lemma3(gd, p)
        results += _lemma4(gd, p)
    return results


def check_counterexample(gd: GroupData) -> list[CheckResult]:
    """Tagged counterexamples must show a p'-degree row with f_chi outside N_G(P)/P'."""
    results = []
    for p in gd.entry.counterexample_primes():
        rows = [r for r in check_theorem_a(gd, p)
                if not r.hypothesis_met and "p divides degree" not in r.details["hypothesis_failures"]]
        failing = [r.char_index for r in rows if not r.holds]
        sd = gd.sylow_data(p)
        results.append(CheckResult(
            gd.entry.name, "counterexample", bool(failing), p=p,
            details={"failing_rows": failing, "feit": {str(r.char_index): r.feit for r in rows if not r.holds},
                     "max_coset_order": sd.spectrum.max_order, **sd.summary()},
        ))
    return results


def primes_for(G: FinGroup, include_degenerate: bool = True) -> list[int]:
    """Prime divisors of ``|G|``, plus the least prime not dividing it."""
    primes = prime_divisors(G.order)
    if include_degenerate:
        q = 2
        while G.order % q == 0 or not is_prime(q):
            q += 1
        primes.append(q)
    return primes


def run_checks(entries: Sequence[CorpusEntry], check: str = "all", p: int | None = None,
               seed: int = 0, cap: int = DEFAULT_CAP) -> list[CheckResult]:
    """Run the selected suite(s) over ``entries`` in corpus order."""
    if check != "all" and check not in CHECKS:
        raise ValueError(f"unknown check {check!r}")
    selected = CHECKS if check == "all" else (check,)
    results: list[CheckResult] = []
    for entry in entries:
        gd = GroupData(entry, seed, cap)
        log.info("checking %s (order %d)", entry.name, gd.group.order)
        if p is None:
            theorem_primes = primes_for(gd.group)
            lemma_primes = prime_divisors(gd.group.order)
        else:
            theorem_primes = lemma_primes = [p]
        if "table" in selected:
            results += check_table(gd)
        if "theoremA" in selected:
            for q in theorem_primes:
                results += check_theorem_a(gd, q)
        if "amitchillag" in selected:
            results += check_amit_chillag(gd)
        if "lemmas" in selected:
            results += check_lemmas(gd, lemma_primes)
        if "counterexample" in selected:
            results += check_counterexample(gd)
    return results


# -- reports ----------------------------------------------------------------

def summarize(results: Iterable[CheckResult]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "hypothesis_violated": 0}
    for r in results:
        counts[r.outcome] += 1
    return counts


def build_report(results: Sequence[CheckResult], seed: int, digest: str) -> dict:
    return {
        "version": __version__,
        "seed": seed,
        "corpus_digest": digest,
        "results": [r.to_dict() for r in results],
        "summary": summarize(results),
    }


def emit_report(results: Sequence[CheckResult], fmt: str = "json", seed: int = 0, digest: str = "") -> bytes:
    """Serialize results deterministically as JSON or a plain-text summary."""
    if fmt == "json":
        return (json.dumps(build_report(results, seed, digest), indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    rows: dict[tuple[str, str], dict[str, int]] = {}
    for r in results:
        counts = rows.setdefault((r.group, r.check), {"pass": 0, "fail": 0, "hypothesis_violated": 0})
        counts[r.outcome] += 1
    width = max([len(g) for g, _ in rows] + [5])
    lines = [f"feitlab {__version__}  seed {seed}  corpus {digest}",
             f"{'group'.ljust(width)}  {'check':<14} {'pass':>5} {'fail':>5} {'hyp-viol':>8}"]
    for (group, check), c in rows.items():
        lines.append(f"{group.ljust(width)}  {check:<14} {c['pass']:>5} {c['fail']:>5} {c['hypothesis_violated']:>8}")
    s = summarize(results)
    lines.append(f"total: {s['pass']} pass, {s['fail']} fail, {s['hypothesis_violated']} hypothesis violated")
    for r in results:
        if r.outcome == "fail":
            lines.append(f"FAIL {r.group} {r.check} p={r.p} char={r.char_index}: {json.dumps(r.details)}")
    return ("\n".join(lines) + "\n").encode("utf-8")
