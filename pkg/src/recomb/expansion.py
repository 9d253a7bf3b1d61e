"""Expansion of monomials into slot-tuple combinations.

The n-ary operation on molecules (x1, ..., xn) sums, over all permutations
sigma of the n arguments, the tuple whose slot j holds the slot-j piece of
argument sigma(j).  A slot combination maps slot tuples (tuples of variable
indices) to integer coefficients.  A lone variable x is represented by the
single tuple (x, ..., x): x occupies every slot of its own molecule.

Expanding a monomial with k operation applications yields total coefficient
mass (n!)^k; the expansion matrix E collects these coefficients with one row
per slot tuple and one column per monomial, and polynomial identities are
exactly the integer nullspace vectors of E.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .monomials import (
    DegreeContext,
    IdentityCombination,
    MultilinearityError,
    get_context,
    is_leaf,
)


def variable_combination(v: int, n: int) -> dict:
    return {(v,) * n: 1}


def combination_variables(comb: dict) -> set:
    out: set = set()
    for tup in comb:
        out.update(tup)
    return out


def mass(comb: dict) -> int:
    return sum(comb.values())


def expand_operation(args, n: int | None = None) -> dict:
    """Multilinear extension of the operation to slot combinations.

    args: sequence of slot combinations or bare variable indices over
    pairwise disjoint variable sets.
    """
    combos = []
    for a in args:
        if isinstance(a, int):
            if n is None:
                n = len(args)
            combos.append(variable_combination(a, n))
        else:
            combos.append(a)
    n = len(combos)
    seen: set = set()
    for c in combos:
        vs = combination_variables(c)
        if seen & vs:
            raise MultilinearityError("arguments share variables")
        seen |= vs

    out: dict = {}
    perms = list(itertools.permutations(range(n)))
    for choice in itertools.product(*(c.items() for c in combos)):
        coeff = 1
        for _, c in choice:
            coeff *= c
        tuples = [t for t, _ in choice]
        for sigma in perms:
            key = tuple(tuples[sigma[j]][j] for j in range(n))
            out[key] = out.get(key, 0) + coeff
    return out


def expand_monomial(tree, n: int, _memo: dict | None = None) -> dict:
    """Expansion of a canonical monomial, bottom-up with subtree memoization."""
    if _memo is None:
        _memo = {}
    got = _memo.get(tree)
    if got is not None:
        return got
    if is_leaf(tree):
        out = variable_combination(tree, n)
    else:
        out = expand_operation([expand_monomial(c, n, _memo) for c in tree], n)
    _memo[tree] = out
    return out


def evaluate_identity(idc: IdentityCombination, _memo: dict | None = None) -> dict:
    """Signed expansion of a combination; the combination is an identity iff
    the result is empty."""
    if _memo is None:
        _memo = {}
    acc: dict = {}
    for tree, coeff in idc.terms.items():
        for tup, c in expand_monomial(tree, idc.n, _memo).items():
            val = acc.get(tup, 0) + coeff * c
            if val:
                acc[tup] = val
            else:
                acc.pop(tup, None)
    return acc


def is_identity(idc: IdentityCombination) -> bool:
    return not evaluate_identity(idc)


class ExpansionMatrix:
    """Integer matrix: rows = slot tuples, columns = canonical monomials."""

    def __init__(self, ctx: DegreeContext, array: np.ndarray):
        self.ctx = ctx
        self.n = ctx.n
        self.d = ctx.d
        self.array = array

    @property
    def shape(self):
        return self.array.shape

    def column_combination(self, j: int) -> dict:
        col = self.array[:, j]
        return {self.ctx.slot_tuples[i]: int(c) for i, c in enumerate(col) if c}


def build_expansion_matrix(n: int, d: int, threads: int = 1) -> ExpansionMatrix:
    """Expansion matrix for all degree-d monomials; deterministic layout.

    Column construction may be partitioned across threads; the assembled
    matrix is identical for any thread count.
    """
    ctx = get_context(n, d)
    rows = len(ctx.slot_tuples)
    cols = ctx.num_monomials
    arr = np.zeros((rows, cols), dtype=np.int64)
    slot_index = ctx.slot_index

    def fill(jlo: int, jhi: int) -> None:
        memo: dict = {}
        for j in range(jlo, jhi):
            for tup, c in expand_monomial(ctx.monomials[j], n, memo).items():
                arr[slot_index[tup], j] = c

    threads = max(1, int(threads))
    if threads == 1 or cols < 64:
        fill(0, cols)
    else:
        step = -(-cols // threads)
        spans = [(j, min(j + step, cols)) for j in range(0, cols, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda s: fill(*s), spans))
    return ExpansionMatrix(ctx, arr)
