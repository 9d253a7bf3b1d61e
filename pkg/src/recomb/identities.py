"""Module structure of identity spaces under the symmetric group.

An identity in degree d spans an S_d-module: the span of all variable
permutations of its coefficient vector.  Ranks of such spans (mod p) decide
which nullspace vectors are genuinely new generators and whether higher
degrees contain identities that are not consequences of lower ones.

Two orbit engines feed the rank accumulator:
  * a gather-table path for d! small enough to tabulate (degree <= 7 here),
  * a sparse per-permutation path for degree 9, where each consequence row
    has only a handful of nonzero columns.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import golden
from .expansion import build_expansion_matrix, evaluate_identity
from .linalg import ModularRankAccumulator, squared_norm
from .monomials import (
    DegreeContext,
    IdentityCombination,
    get_context,
    is_leaf,
    leaves,
    relabel,
    shape_of,
    straighten,
    tree_degree,
)

_TABLE_LIMIT = 45000  # largest d! worth tabulating


def _orbit_rows(ctx: DegreeContext, vector, p: int) -> np.ndarray:
    """All permuted images of a coefficient vector, mod p, deduplicated."""
    table = ctx.perm_table_inv()
    v = np.asarray(vector, dtype=np.int64) % p
    orbit = v[table]
    return np.unique(orbit, axis=0)


class _SparseTerms:
    """Pre-split terms of one combination for fast permutation of rows."""

    def __init__(self, ctx: DegreeContext, idc: IdentityCombination):
        self.ctx = ctx
        self.items = []
        for tree, coeff in idc.terms.items():
            sh = shape_of(tree)
            ti = ctx.type_index[sh]
            self.items.append((ti, leaves(tree), coeff))

    def row(self, sigma):
        """(sorted columns, matching coeffs) of the sigma-permuted identity."""
        ctx = self.ctx
        pairs = []
        for ti, lv, coeff in self.items:
            cl = ctx.straighteners[ti](tuple(sigma[v] for v in lv))
            pairs.append((ctx.column_of_pair[(ti, cl)], coeff))
        pairs.sort()
        return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def _add_orbit_sparse(acc: ModularRankAccumulator, ctx: DegreeContext,
                      idc: IdentityCombination, sigmas, *,
                      dedup: bool = True, batch: int = 2048) -> None:
    terms = _SparseTerms(ctx, idc)
    seen: set = set()
    rows_i: list = []
    cols: list = []
    vals: list = []
    nrows = 0

    def flush():
        nonlocal rows_i, cols, vals, nrows
        if nrows:
            acc.add_sparse_batch(rows_i, cols, vals, nrows)
            rows_i, cols, vals, nrows = [], [], [], 0

    for sigma in sigmas:
        key = terms.row(sigma)
        if dedup:
            if key in seen:
                continue
            seen.add(key)
        c, v = key
        rows_i.extend([nrows] * len(c))
        cols.extend(c)
        vals.extend(v)
        nrows += 1
        if nrows >= batch:
            flush()
    flush()


def _add_orbit(acc: ModularRankAccumulator, ctx: DegreeContext,
               idc: IdentityCombination, p: int) -> None:
    if math.factorial(ctx.d) <= _TABLE_LIMIT:
        acc.add_batch(_orbit_rows(ctx, ctx.vector_of(idc), p))
    else:
        _add_orbit_sparse(acc, ctx, idc,
                          itertools.permutations(range(ctx.d)))


def module_rank(ids, p: int = 101, *, n: int | None = None,
                d: int | None = None) -> int:
    """Dimension mod p of the S_d-module spanned by the given identities."""
    ids = list(ids)
    if not ids:
        return 0
    n = ids[0].n if n is None else n
    d = ids[0].degree if d is None else d
    if p <= d:
        raise ValueError(f"need a prime p > degree, got p={p}, d={d}")
    for idc in ids:
        if (idc.n, idc.degree) != (n, d):
            raise ValueError("mixed arities or degrees")
    ctx = get_context(n, d)
    acc = ModularRankAccumulator(ctx.num_monomials, p)
    for idc in ids:
        _add_orbit(acc, ctx, idc, p)
    acc.flush()
    return acc.rank()


@dataclass
class SieveGenerator:
    position: int               # 1-based position in the processed order
    norm_sq: int
    identity: IdentityCombination
    cumulative_rank: int


def generator_sieve(vectors, n: int, d: int, p: int = 101,
                    target: int | None = None) -> list:
    """Scan nullspace vectors in the given order, keeping module generators.

    A vector is a generator when its orbit strictly increases the rank of
    the accumulated S_d-module.  Stops once the cumulative rank reaches
    `target` (defaults to the number of vectors, i.e. the nullspace dim).
    """
    vectors = [list(map(int, v)) for v in vectors]
    if target is None:
        target = len(vectors)
    ctx = get_context(n, d)
    acc = ModularRankAccumulator(ctx.num_monomials, p)
    out: list = []
    rank = 0
    for pos, vec in enumerate(vectors, start=1):
        idc = ctx.combination_of(vec)
        _add_orbit(acc, ctx, idc, p)
        acc.flush()
        new_rank = acc.rank()
        if new_rank > rank:
            out.append(SieveGenerator(pos, squared_norm(vec),
                                      idc.normalized(), new_rank))
            rank = new_rank
        if rank >= target:
            break
    return out


# ---------------------------------------------------------------------------
# degree lifting

@dataclass
class LiftedConsequence:
    source: IdentityCombination
    kind: str                   # "substitute" or "embed"
    variable: int | None        # substituted variable, None for embeddings
    result: IdentityCombination


def _substitute_leaf(tree, var: int, replacement):
    if is_leaf(tree):
        return replacement if tree == var else tree
    return tuple(_substitute_leaf(c, var, replacement) for c in tree)


def lift_identity(idc: IdentityCombination) -> list:
    """All one-step consequences of an identity in the next degree.

    One consequence per variable x (replace x by the operation applied to
    x and n-1 fresh variables) plus one embedding of the whole identity in
    an operation with n-1 fresh variables.  Fresh variables take indices
    d, d+1, ..., d+n-2.
    """
    n, d = idc.n, idc.degree
    fresh = tuple(range(d, d + n - 1))
    out: list = []
    for x in range(d):
        node = (x,) + fresh
        terms: dict = {}
        for tree, coeff in idc.terms.items():
            t2 = straighten(_substitute_leaf(tree, x, node), n)
            terms[t2] = terms.get(t2, 0) + coeff
        res = IdentityCombination(n, d + n - 1,
                                  {t: c for t, c in terms.items() if c},
                                  _trusted=True)
        if not res.terms:
            raise ValueError(f"substitution consequence for {x} collapsed")
        out.append(LiftedConsequence(idc, "substitute", x, res))
    terms = {}
    for tree, coeff in idc.terms.items():
        t2 = straighten((tree,) + fresh, n)
        terms[t2] = terms.get(t2, 0) + coeff
    res = IdentityCombination(n, d + n - 1,
                              {t: c for t, c in terms.items() if c},
                              _trusted=True)
    if not res.terms:
        raise ValueError("embedding consequence collapsed")
    out.append(LiftedConsequence(idc, "embed", None, res))
    return out


# ---------------------------------------------------------------------------
# closure: are there new identities in degree d?

@dataclass
class ClosureResult:
    degree: int
    nullspace_dim: int
    consequence_dims: list      # cumulative dims (exact mode), else [final]
    final_dim: int
    verdict: str                # "no new identities" | "new identities" | "inconclusive"
    mode: str
    samples: int                # permutations processed (certify mode)


def expansion_rank(n: int, d: int, p: int = 101, threads: int = 1) -> tuple:
    """(rank of E mod p, nullspace dimension) for degree d."""
    E = build_expansion_matrix(n, d, threads=threads)
    acc = ModularRankAccumulator(E.array.shape[0], p)
    cols = np.ascontiguousarray(E.array.T)
    step = 4096
    for lo in range(0, cols.shape[0], step):
        acc.add_batch(cols[lo:lo + step])
    rank = acc.rank()
    return rank, E.array.shape[1] - rank


def new_identity_test(d: int, known, p: int = 101, *, n: int | None = None,
                      mode: str = "exact", seed: int = 0,
                      max_samples: int | None = None,
                      threads: int = 1) -> ClosureResult:
    """Compare the degree-d nullspace with the span of lifted consequences.

    `known` holds identities of degree d-(n-1); their lifts are the degree-d
    consequences.  Exact mode runs the full orbit of every consequence and
    reports the cumulative dimension after each one.  Certify mode samples
    random permutations round-robin until the span reaches the nullspace
    dimension (proof of "no new identities"), or gives up as inconclusive.
    """
    known = list(known)
    if n is None:
        if not known:
            raise ValueError("need identities or an explicit arity")
        n = known[0].n
    rank, null_dim = expansion_rank(n, d, p, threads=threads)
    consequences = [lc.result for idc in known for lc in lift_identity(idc)]
    for idc in consequences:
        if idc.degree != d:
            raise ValueError("consequence degree mismatch")

    ctx = get_context(n, d)
    acc = ModularRankAccumulator(ctx.num_monomials, p)

    if mode == "exact":
        dims = []
        for idc in consequences:
            _add_orbit(acc, ctx, idc, p)
            acc.flush()
            dims.append(acc.rank())
        final = dims[-1] if dims else 0
        verdict = ("no new identities" if final == null_dim
                   else "new identities")
        return ClosureResult(d, null_dim, dims, final, verdict, mode, 0)

    if mode != "certify":
        raise ValueError(f"unknown mode {mode!r}")
    if max_samples is None:
        max_samples = 40 * null_dim + 10000
    rng = np.random.default_rng(seed)
    sparse_terms = [_SparseTerms(ctx, idc) for idc in consequences]
    samples = 0
    batch_rows: list = []
    cols: list = []
    vals: list = []
    nrows = 0
    batch = 512

    def flush():
        nonlocal batch_rows, cols, vals, nrows
        if nrows:
            acc.add_sparse_batch(batch_rows, cols, vals, nrows)
            batch_rows, cols, vals, nrows = [], [], [], 0

    while samples < max_samples and acc.rank() < null_dim:
        if not consequences:
            break
        st = sparse_terms[samples % len(sparse_terms)]
        sigma = tuple(int(x) for x in rng.permutation(d))
        c, v = st.row(sigma)
        batch_rows.extend([nrows] * len(c))
        cols.extend(c)
        vals.extend(v)
        nrows += 1
        samples += 1
        if nrows >= batch:
            flush()
    flush()
    acc.flush()
    final = acc.rank()
    if final == null_dim:
        verdict = "no new identities"
    elif samples >= max_samples:
        verdict = "inconclusive"
    else:
        verdict = "new identities"
    return ClosureResult(d, null_dim, [final], final, verdict, "certify", samples)


# ---------------------------------------------------------------------------
# rewriting the second association type into the first

def _rewrite_template(n: int) -> IdentityCombination:
    if n == 3:
        return golden.load_identity("second_type_rewrite_n3")
    if n == 2:
        return golden.load_identity("binary_recombination_reduced")
    raise ValueError(f"no rewrite template for arity {n}")


def rewrite_second_type(m, n: int | None = None) -> IdentityCombination:
    """Express a second-association-type monomial in the first type.

    Instantiates the bundled rewrite identity (whose unique second-type term
    has coefficient +1) under the variable substitution matching m, and
    returns the equivalent first-type combination.
    """
    if n is None:
        if is_leaf(m):
            raise ValueError("need an arity for a bare variable")
        n = len(m)
    m = straighten(m, n)
    d = tree_degree(m)
    template = _rewrite_template(n)
    if template.degree != d:
        raise ValueError(f"no rewrite template for arity {n}, degree {d}")
    second_type = get_context(n, d).types[1]
    if shape_of(m) != second_type:
        raise ValueError("monomial is not of the second association type")
    t0 = next(t for t in template.terms if shape_of(t) == second_type)
    c0 = template.terms[t0]
    assert abs(c0) == 1
    src = leaves(t0)
    dst = leaves(m)
    sigma = [0] * d
    for a, b in zip(src, dst):
        sigma[a] = b
    terms: dict = {}
    for tree, coeff in template.terms.items():
        if tree == t0:
            continue
        t2 = straighten(relabel(tree, sigma), n)
        terms[t2] = terms.get(t2, 0) - coeff * c0
    return IdentityCombination(n, d, {t: c for t, c in terms.items() if c},
                               _trusted=True)



def verify_identity(idc: IdentityCombination) -> int:
    """Number of residual slot tuples after expansion (0 iff identity)."""
    return len(evaluate_identity(idc))
