"""Canonical multilinear monomials of a completely symmetric n-ary operation.

A monomial is a nested tuple: a leaf is an int (0-based variable index) and
an internal node is a tuple of exactly n subtrees.  Complete symmetry makes
children unordered, so every monomial has a unique straightened form in which
the children of each node are sorted: composite children before leaf
children, composites compared by association type and then by leaf sequence,
leaves compared by variable index.

Association types (shapes) use the same nesting with 0 in place of each leaf.
Types of one degree are ordered so that the type with all nesting in the
first argument comes first, then decreasing nesting depth; the order is
realized by `shape_key`.
"""

from __future__ import annotations

import itertools
import math
import string
from functools import lru_cache

LEAF = 0  # shape marker for a leaf


class InvalidDegreeError(ValueError):
    """Degree is not of the form k*(n-1) + 1."""


class MultilinearityError(ValueError):
    """A variable occurs more than once in one monomial."""


# ---------------------------------------------------------------------------
# variables

def var_name(i: int) -> str:
    if 0 <= i < 26:
        return string.ascii_lowercase[i]
    raise ValueError(f"variable index {i} out of letter range")


def var_index(name: str) -> int:
    name = name.strip()
    if len(name) == 1 and name in string.ascii_lowercase:
        return string.ascii_lowercase.index(name)
    raise ValueError(f"bad variable name {name!r}")


# ---------------------------------------------------------------------------
# trees and shapes

def is_leaf(t) -> bool:
    return isinstance(t, int)


def tree_degree(t) -> int:
    if is_leaf(t):
        return 1
    return sum(tree_degree(c) for c in t)


def leaves(t) -> tuple:
    """Leaf variables of a tree, left to right."""
    if is_leaf(t):
        return (t,)
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if is_leaf(node):
            out.append(node)
        else:
            stack.extend(reversed(node))
    return tuple(out)


def shape_of(t):
    if is_leaf(t):
        return LEAF
    return tuple(shape_of(c) for c in t)


@lru_cache(maxsize=None)
def shape_degree(shape) -> int:
    if shape == LEAF:
        return 1
    return sum(shape_degree(c) for c in shape)


@lru_cache(maxsize=None)
def shape_key(shape):
    """Total order on shapes: deeper-left nesting sorts first.

    Compares as (-degree, child keys...); children of a canonical shape are
    already in this order, so the key is a nested tuple comparable with <.
    """
    if shape == LEAF:
        return (-1,)
    return (-shape_degree(shape),) + tuple(shape_key(c) for c in shape)


def monomial_key(t):
    """Global order on same-degree monomials: type major, leaf sequence minor."""
    return (shape_key(shape_of(t)), leaves(t))


def tree_from(shape, leaf_seq):
    """Rebuild a tree with the given shape, consuming leaf_seq left to right."""
    it = iter(leaf_seq)

    def build(s):
        if s == LEAF:
            return next(it)
        return tuple(build(c) for c in s)

    out = build(shape)
    rest = list(it)
    if rest:
        raise ValueError("leaf sequence longer than shape")
    return out


def _child_key(t):
    return (shape_key(shape_of(t)), leaves(t))


def straighten(t, arity: int | None = None):
    """Canonical representative of a tree under complete symmetry.

    Sorts the children of every node by (shape order, leaf sequence).
    Idempotent, and constant on the orbit of independent child permutations.
    Raises MultilinearityError if a leaf variable repeats.
    """
    out = _straighten(t, arity)
    lv = leaves(out)
    if len(set(lv)) != len(lv):
        raise MultilinearityError(f"repeated variable in {to_bracket(t)}")
    return out


def _straighten(t, arity):
    if is_leaf(t):
        if t < 0:
            raise ValueError("negative variable index")
        return t
    if arity is not None and len(t) != arity:
        raise ValueError(f"node arity {len(t)} != {arity}")
    kids = sorted((_straighten(c, arity) for c in t), key=_child_key)
    return tuple(kids)


def relabel(t, sigma):
    """Apply a variable substitution (index -> sigma[index]) to all leaves."""
    if is_leaf(t):
        return sigma[t]
    return tuple(relabel(c, sigma) for c in t)


# ---------------------------------------------------------------------------
# display

def to_bracket(t) -> str:
    if is_leaf(t):
        return var_name(t)
    return "[" + ",".join(to_bracket(c) for c in t) + "]"


def parse_bracket(s: str):
    """Inverse of to_bracket; accepts whitespace between tokens."""
    pos = 0
    s = s.strip()

    def parse():
        nonlocal pos
        while pos < len(s) and s[pos] in " \t":
            pos += 1
        if pos >= len(s):
            raise ValueError("unexpected end of monomial")
        if s[pos] == "[":
            pos += 1
            kids = [parse()]
            while True:
                while pos < len(s) and s[pos] in " \t":
                    pos += 1
                if pos >= len(s):
                    raise ValueError("unclosed bracket")
                if s[pos] == ",":
                    pos += 1
                    kids.append(parse())
                elif s[pos] == "]":
                    pos += 1
                    return tuple(kids)
                else:
                    raise ValueError(f"bad character {s[pos]!r} at {pos}")
        ch = s[pos]
        pos += 1
        return var_index(ch)

    out = parse()
    while pos < len(s) and s[pos] in " \t":
        pos += 1
    if pos != len(s):
        raise ValueError(f"trailing input {s[pos:]!r}")
    return out


# ---------------------------------------------------------------------------
# association types

def check_degree(n: int, d: int) -> None:
    if n < 2:
        raise ValueError(f"arity must be >= 2, got {n}")
    if d < 1 or (d - 1) % (n - 1) != 0:
        raise InvalidDegreeError(f"degree {d} is not k*({n}-1)+1")


@lru_cache(maxsize=None)
def enumerate_canonical_types(n: int, d: int) -> tuple:
    """All association types of degree d modulo complete symmetry, in order."""
    check_degree(n, d)
    if d == 1:
        return (LEAF,)

    # children: nondecreasing (by shape_key) sequences of smaller types
    child_degrees = [k for k in range(1, d) if (k - 1) % (n - 1) == 0]
    pool = []
    for k in child_degrees:
        pool.extend(enumerate_canonical_types(n, k))
    pool.sort(key=shape_key)

    found = []

    def rec(start: int, left: int, budget: int, acc: list) -> None:
        if left == 0:
            if budget == 0:
                found.append(tuple(acc))
            return
        for i in range(start, len(pool)):
            k = shape_degree(pool[i])
            if k > budget - (left - 1):
                continue
            acc.append(pool[i])
            rec(i, left - 1, budget - k, acc)
            acc.pop()

    rec(0, n, d, [])
    return tuple(sorted(found, key=shape_key))


@lru_cache(maxsize=None)
def automorphism_order(shape) -> int:
    """Order of the symmetry group of a shape (repeated-children factor)."""
    if shape == LEAF:
        return 1
    total = 1
    for child, group in itertools.groupby(shape):
        size = len(list(group))
        total *= math.factorial(size) * automorphism_order(child) ** size
    return total


@lru_cache(maxsize=None)
def compile_straightener(shape):
    """Fast canonicalizer for leaf sequences of a fixed canonical shape.

    Returns fn(leaf_tuple) -> canonical leaf_tuple; only valid when the shape
    itself is canonical (leaf relabelings never change the shape).
    """
    if shape == LEAF:
        return lambda seq: seq
    sizes = [shape_degree(c) for c in shape]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    subs = [compile_straightener(c) for c in shape]
    # consecutive identical child shapes may be permuted among themselves
    groups = []
    i = 0
    while i < len(shape):
        j = i
        while j + 1 < len(shape) and shape[j + 1] == shape[i]:
            j += 1
        if j > i:
            groups.append((i, j + 1))
        i = j + 1

    if all(c == LEAF for c in shape):
        return lambda seq: tuple(sorted(seq))

    def fn(seq):
        parts = [subs[i](seq[offsets[i]:offsets[i + 1]]) for i in range(len(shape))]
        for a, b in groups:
            parts[a:b] = sorted(parts[a:b])
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)

    return fn


def enumerate_monomial_leaves(shape) -> list:
    """Canonical leaf sequences of a type on variables 0..d-1, lex sorted.

    Generated by straightening all d! assignments and deduplicating; the
    count is asserted against d!/|Aut(shape)|.
    """
    d = shape_degree(shape)
    fn = compile_straightener(shape)
    seen = set()
    for perm in itertools.permutations(range(d)):
        seen.add(fn(perm))
    out = sorted(seen)
    assert len(out) == math.factorial(d) // automorphism_order(shape)
    return out


def enumerate_monomials(shape) -> list:
    """All distinct canonical monomials of a type, as trees, in order."""
    return [tree_from(shape, lv) for lv in enumerate_monomial_leaves(shape)]


def order_slot_tuples(n: int, d: int) -> list:
    """All n-permutations of {0..d-1}, lexicographic; length n! * C(d,n)."""
    if d < n:
        raise ValueError(f"degree {d} < arity {n}")
    return list(itertools.permutations(range(d), n))


# ---------------------------------------------------------------------------
# permutations of variables

def identity_permutation(d: int) -> tuple:
    return tuple(range(d))


def compose(tau, sigma) -> tuple:
    """(tau o sigma)(i) = tau(sigma(i))."""
    return tuple(tau[s] for s in sigma)


def invert(sigma) -> tuple:
    out = [0] * len(sigma)
    for i, s in enumerate(sigma):
        out[s] = i
    return tuple(out)


def check_permutation(sigma, d: int) -> None:
    if len(sigma) != d or sorted(sigma) != list(range(d)):
        raise ValueError(f"not a permutation of {d} symbols: {sigma}")


# ---------------------------------------------------------------------------
# integer combinations of monomials

class IdentityCombination:
    """Sparse integer combination of canonical monomials of one degree."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: dict, *, _trusted=False):
        if _trusted:
            self.n, self.degree, self.terms = n, degree, dict(terms)
            return
        clean: dict = {}
        for tree, coeff in terms.items():
            coeff = int(coeff)
            if coeff == 0:
                continue
            tree = straighten(tree, n)
            if tree_degree(tree) != degree:
                raise ValueError("mixed degrees in combination")
            clean[tree] = clean.get(tree, 0) + coeff
        self.n = n
        self.degree = degree
        self.terms = {t: c for t, c in clean.items() if c != 0}

    @classmethod
    def from_terms(cls, n: int, pairs) -> "IdentityCombination":
        """Build from (coeff, tree) pairs; trees are straightened and merged."""
        acc: dict = {}
        degree = None
        for coeff, tree in pairs:
            tree = straighten(tree, n)
            dg = tree_degree(tree)
            if degree is None:
                degree = dg
            elif dg != degree:
                raise ValueError("mixed degrees in combination")
            acc[tree] = acc.get(tree, 0) + int(coeff)
        if degree is None:
            raise ValueError("empty combination needs an explicit degree")
        acc = {t: c for t, c in acc.items() if c != 0}
        return cls(n, degree, acc, _trusted=True)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda item: monomial_key(item[0]))

    def norm_sq(self) -> int:
        return sum(c * c for c in self.terms.values())

    def normalized(self) -> "IdentityCombination":
        """Flip the overall sign so the leading term has a positive coefficient."""
        if not self.terms:
            return self
        lead = min(self.terms, key=monomial_key)
        if self.terms[lead] < 0:
            return IdentityCombination(
                self.n, self.degree, {t: -c for t, c in self.terms.items()},
                _trusted=True)
        return self

    def scaled(self, k: int) -> "IdentityCombination":
        if k == 0:
            return IdentityCombination(self.n, self.degree, {}, _trusted=True)
        return IdentityCombination(
            self.n, self.degree, {t: k * c for t, c in self.terms.items()},
            _trusted=True)

    def __add__(self, other: "IdentityCombination") -> "IdentityCombination":
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("degree/arity mismatch")
        acc = dict(self.terms)
        for t, c in other.terms.items():
            acc[t] = acc.get(t, 0) + c
            if acc[t] == 0:
                del acc[t]
        return IdentityCombination(self.n, self.degree, acc, _trusted=True)

    def __sub__(self, other: "IdentityCombination") -> "IdentityCombination":
        return self + other.scaled(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IdentityCombination)
                and self.n == other.n and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        parts = [f"{c:+d}*{to_bracket(t)}" for t, c in self.sorted_terms()]
        return " ".join(parts) if parts else "0"


def apply_permutation(idc: IdentityCombination, sigma) -> IdentityCombination:
    """Relabel variables of every term by sigma and re-straighten.

    Group action: apply(apply(I, sigma), tau) == apply(I, compose(tau, sigma)).
    """
    check_permutation(sigma, idc.degree)
    acc: dict = {}
    for tree, coeff in idc.terms.items():
        t2 = straighten(relabel(tree, sigma), idc.n)
        acc[t2] = acc.get(t2, 0) + coeff
    acc = {t: c for t, c in acc.items() if c != 0}
    return IdentityCombination(idc.n, idc.degree, acc, _trusted=True)


# ---------------------------------------------------------------------------
# per-degree context: index maps shared by the expansion and analysis layers

class DegreeContext:
    """Monomial and slot-tuple bookkeeping for one (arity, degree)."""

    def __init__(self, n: int, d: int):
        check_degree(n, d)
        self.n = n
        self.d = d
        self.types = list(enumerate_canonical_types(n, d))
        self.type_index = {s: i for i, s in enumerate(self.types)}
        self.leaves_by_type = [enumerate_monomial_leaves(s) for s in self.types]
        self.monomials = []
        self.column_of = {}
        self.column_of_pair = {}
        for ti, (shape, lvs) in enumerate(zip(self.types, self.leaves_by_type)):
            for lv in lvs:
                tree = tree_from(shape, lv)
                j = len(self.monomials)
                self.monomials.append(tree)
                self.column_of[tree] = j
                self.column_of_pair[(ti, lv)] = j
        self.straighteners = [compile_straightener(s) for s in self.types]
        if d >= n:
            self.slot_tuples = order_slot_tuples(n, d)
            self.slot_index = {t: i for i, t in enumerate(self.slot_tuples)}
        else:
            self.slot_tuples = []
            self.slot_index = {}
        self._perm_table_inv = None

    @property
    def num_monomials(self) -> int:
        return len(self.monomials)

    @property
    def type_counts(self) -> list:
        return [len(lvs) for lvs in self.leaves_by_type]

    def vector_of(self, idc: IdentityCombination):
        """Dense integer coefficient vector over the monomial basis."""
        import numpy as np
        if (idc.n, idc.degree) != (self.n, self.d):
            raise ValueError("combination does not match context")
        v = np.zeros(self.num_monomials, dtype=np.int64)
        for tree, coeff in idc.terms.items():
            v[self.column_of[tree]] = coeff
        return v

    def combination_of(self, vector) -> IdentityCombination:
        terms = {self.monomials[j]: int(c) for j, c in enumerate(vector) if c}
        return IdentityCombination(self.n, self.d, terms, _trusted=True)

    def sparse_of(self, idc: IdentityCombination):
        """(columns, coefficients) of a combination, column-sorted."""
        pairs = sorted((self.column_of[t], c) for t, c in idc.terms.items())
        return [p[0] for p in pairs], [p[1] for p in pairs]

    def permuted_columns(self, sigma):
        """Column index map j -> column of sigma . monomial_j."""
        out = []
        for ti, lvs in enumerate(self.leaves_by_type):
            fn = self.straighteners[ti]
            for lv in lvs:
                out.append(self.column_of_pair[(ti, fn(tuple(sigma[v] for v in lv)))])
        return out

    def perm_table_inv(self):
        """(d!, m) gather table: orbit rows are vector[table] per permutation.

        Row s holds, for each column k, the source column j with
        sigma_s . monomial_j = monomial_k.  Only built for d! <= 45000.
        """
        import numpy as np
        if self._perm_table_inv is None:
            nperm = math.factorial(self.d)
            if nperm > 45000:
                raise ValueError("permutation table too large; use the sparse path")
            m = self.num_monomials
            table = np.empty((nperm, m), dtype=np.int32)
            for s, sigma in enumerate(itertools.permutations(range(self.d))):
                cols = self.permuted_columns(sigma)
                row = np.empty(m, dtype=np.int32)
                row[cols] = np.arange(m, dtype=np.int32)
                table[s] = row
            self._perm_table_inv = table
        return self._perm_table_inv


@lru_cache(maxsize=None)
def get_context(n: int, d: int) -> DegreeContext:
    return DegreeContext(n, d)
