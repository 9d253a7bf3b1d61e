"""Reference data bundled with the package.

All expected values used by tests and by `recomb reproduce` live in
``recomb/data``; nothing numeric is inlined elsewhere.  Identity files are
trusted only after the test suite checks that each one expands to zero.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib.resources import files

from .io_formats import parse_identity, parse_matrix
from .monomials import IdentityCombination

IDENTITY_NAMES = (
    "binary_recombination",
    "binary_recombination_reduced",
    "canonical_generator_1",
    "canonical_generator_2",
    "canonical_generator_3",
    "reduced_generator_1",
    "reduced_generator_2",
    "ternary_recombination",
    "second_type_rewrite_n3",
)


def _read(name: str) -> str:
    return files("recomb.data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def load_identity(name: str) -> IdentityCombination:
    if name not in IDENTITY_NAMES:
        raise KeyError(f"unknown identity {name!r}")
    return parse_identity(_read(name + ".txt"))


@lru_cache(maxsize=None)
def load_matrix(name: str) -> tuple:
    return tuple(tuple(row) for row in parse_matrix(_read(name + ".txt")))


@lru_cache(maxsize=None)
def load_norms(name: str) -> tuple:
    return tuple(int(x) for x in _read(name + ".txt").split())


@lru_cache(maxsize=None)
def scalars() -> dict:
    return json.loads(_read("scalars.json"))
