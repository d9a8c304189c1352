from __future__ import annotations

import pytest

from feitlab.harness import bundled_corpus_text, parse_corpus
from feitlab.permgroup import group_closure, parse_cycles

CORPUS = {e.name: e for e in parse_corpus(bundled_corpus_text())}


def make_group(degree, *cycles):
    return group_closure(degree, [parse_cycles(c, degree) for c in cycles])


def corpus_group(name):
    return CORPUS[name].group()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def S3():
    return corpus_group("S3")


@pytest.fixture(scope="session")
def S4():
    return corpus_group("S4")


@pytest.fixture(scope="session")
def A4():
    return corpus_group("A4")


@pytest.fixture(scope="session")
def A5():
    return corpus_group("A5")


@pytest.fixture(scope="session")
def Q8():
    return corpus_group("Q8")


@pytest.fixture(scope="session")
def GL23():
    return corpus_group("GL(2,3)")


@pytest.fixture(scope="session")
def C7C3():
    return corpus_group("C7:C3")
