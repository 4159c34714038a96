"""Hyperplane families in P^n: general position, diagonals, the full generic
condition with violation witnesses, restriction, and seeded generation.

Indices are 1-based everywhere in the public API and in JSON, matching the
usual labelling H_1..H_q of a family.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .exactalg import (
    RatMatrix,
    RowEchelon,
    int_kernel_vector,
    int_rank,
    primitive_vector,
    rat_from_str,
    rat_to_str,
)


class NoDiagonal(Exception):
    """The two row spans meet only in zero; no diagonal hyperplane exists."""


class AmbiguousDiagonal(Exception):
    """The row spans meet in dimension >= 2; the diagonal is not unique."""


class DegenerateRestriction(Exception):
    """A restricted form vanished identically (caller violated preconditions)."""


class ExhaustedTries(Exception):
    """Rejection sampling failed to find a generic family within the try budget."""

    def __init__(self, tries: int):
        super().__init__(f"no generic arrangement found after {tries} tries")
        self.tries = tries


class Hyperplane:
    """A hyperplane h = sum a_j z_j in P^n, stored in canonical primitive form.

    Canonical form: integer coefficients with content 1 and positive first
    nonzero entry, so projectively equal inputs compare structurally equal.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        canon = primitive_vector(coeffs)
        if not any(canon):
            raise ValueError("hyperplane coefficients must not all be zero")
        self.coeffs: tuple[int, ...] = canon

    @property
    def dim(self) -> int:
        """Ambient projective dimension n."""
        return len(self.coeffs) - 1

    def value_at(self, point: Sequence[Fraction | int]) -> Fraction:
        return sum((Fraction(a) * Fraction(x) for a, x in zip(self.coeffs, point)), Fraction(0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hyperplane) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Hyperplane({list(self.coeffs)})"

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Hyperplane":
        return cls([rat_from_str(s) for s in data])


class Arrangement:
    """An ordered family {H_i}_{1<=i<=q} of pairwise distinct hyperplanes in P^n."""

    __slots__ = ("n", "hyperplanes")

    def __init__(self, n: int, hyperplanes: Sequence[Hyperplane]):
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if not hyperplanes:
            raise ValueError("arrangement needs at least one hyperplane")
        for h in hyperplanes:
            if h.dim != n:
                raise ValueError("hyperplane/ambient dimension mismatch")
        if len(set(hyperplanes)) != len(hyperplanes):
            raise ValueError("hyperplanes must be pairwise projectively distinct")
        self.n = n
        self.hyperplanes = tuple(hyperplanes)

    @property
    def q(self) -> int:
        return len(self.hyperplanes)

    def row(self, i: int) -> tuple[int, ...]:
        """Coefficient row of H_i (1-based index)."""
        return self.hyperplanes[i - 1].coeffs

    def rows(self, indices: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.row(i) for i in indices]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Arrangement)
            and self.n == other.n
            and self.hyperplanes == other.hyperplanes
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        arr = cls(int(data["n"]), [Hyperplane.from_json(h) for h in data["hyperplanes"]])
        if "q" in data and int(data["q"]) != arr.q:
            raise ValueError("declared q does not match hyperplane count")
        return arr


@dataclass(frozen=True)
class SubspaceRef:
    """An intersection subspace P = cap_{i in I} H_i with its exact codimension.

    codim == n+1 encodes the empty intersection; dimension is n - codim.
    """

    indices: tuple[int, ...]
    codim: int

    def dim(self, n: int) -> int:
        return n - self.codim


@dataclass(frozen=True)
class GenericityViolation:
    """Witness tuple for a failure of the generic condition.

    The stacked forms are: the |J| family hyperplanes H_j, one diagonal per
    partition block (each block B pairs with I to give the diagonal of I u B),
    and the |extra| hyperplanes indexed inside I.  expected_codim is
    min(k+l, |I|) + |J|; a value > n means the intersection had to be empty.
    """

    I: tuple[int, ...]
    J: tuple[int, ...]
    partitions: tuple[tuple[int, ...], ...]
    extra: tuple[int, ...]
    expected_codim: int
    actual_codim: int

    def describe(self, n: int) -> str:
        if self.expected_codim > n and self.actual_codim <= n:
            return "nonempty though expected empty"
        return f"codimension {self.actual_codim}, expected {self.expected_codim}"

    def to_json(self) -> dict:
        return {
            "I": list(self.I),
            "J": list(self.J),
            "partitions": [list(p) for p in self.partitions],
            "extra": list(self.extra),
            "expected_codim": self.expected_codim,
            "actual_codim": self.actual_codim,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GenericityViolation":
        return cls(
            I=tuple(data["I"]),
            J=tuple(data["J"]),
            partitions=tuple(tuple(p) for p in data["partitions"]),
            extra=tuple(data["extra"]),
            expected_codim=int(data["expected_codim"]),
            actual_codim=int(data["actual_codim"]),
        )


def is_general_position(a: Arrangement) -> bool | tuple[int, ...]:
    """True iff every (n+1)-subset of coefficient rows has rank n+1.

    Returns the lexicographically first violating subset otherwise.  Families
    with q <= n are rejected: the predicate needs at least n+1 members.
    """
    n = a.n
    if a.q <= n:
        raise ValueError("general position needs q >= n+1")
    ncols = n + 1
    for subset in itertools.combinations(range(1, a.q + 1), n + 1):
        if int_rank(a.rows(subset), ncols) != n + 1:
            return subset
    return True


def intersect(a: Arrangement, indices: Sequence[int]) -> SubspaceRef:
    """SubspaceRef for cap_{i in I} H_i with exact codimension."""
    idx = tuple(sorted(set(indices)))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 1 or idx[-1] > a.q:
        raise ValueError("index out of range")
    codim = int_rank(a.rows(idx), a.n + 1)
    return SubspaceRef(indices=idx, codim=codim)


def intersection_point(a: Arrangement, indices: Sequence[int]) -> tuple[int, ...]:
    """The unique intersection point of n independent hyperplanes, as a
    primitive integer representative."""
    idx = tuple(sorted(set(indices)))
    if len(idx) != a.n:
        raise ValueError("need exactly n hyperplanes for a point")
    mat = RatMatrix.from_rows(a.rows(idx))
    ker = mat.kernel()
    if len(ker) != 1:
        raise ValueError("hyperplanes do not meet in a single point")
    return primitive_vector(ker[0])


def diagonal_hyperplane(a: Arrangement, J: Sequence[int], K: Sequence[int]) -> Hyperplane:
    """The unique hyperplane containing cap_J H_j and cap_K H_k.

    Requires |J|, |K| >= 2 disjoint with |J| + |K| = n + 2 and the subfamily
    J u K in general position.  Containment of both subspaces is re-verified
    by rank before returning.
    """
    Jt = tuple(sorted(set(J)))
    Kt = tuple(sorted(set(K)))
    if set(Jt) & set(Kt):
        raise ValueError("J and K must be disjoint")
    if len(Jt) < 2 or len(Kt) < 2 or len(Jt) + len(Kt) != a.n + 2:
        raise ValueError("need |J|,|K| >= 2 and |J|+|K| = n+2")
    ncols = a.n + 1
    # A hyperplane contains cap_J iff its row lies in the span of the J rows:
    # solve sum_j x_j h_j = sum_k y_k h_k via the kernel of the stacked columns.
    jrows = a.rows(Jt)
    krows = a.rows(Kt)
    cols = [[r[c] for r in jrows] + [-r[c] for r in krows] for c in range(ncols)]
    combo = int_kernel_vector(cols, a.n + 2)
    if combo is None:
        # rank-deficient column matrix: the span intersection is not a line
        frac_ker = RatMatrix.from_rows(cols).kernel()
        if len(frac_ker) == 0:
            raise NoDiagonal("row spans intersect only in zero")
        raise AmbiguousDiagonal("row spans intersect in dimension >= 2")
    coeffs = [
        sum(combo[t] * jrows[t][c] for t in range(len(Jt))) for c in range(ncols)
    ]
    if not any(coeffs):
        raise NoDiagonal("row-span intersection degenerates to zero")
    diag = Hyperplane(coeffs)
    if int_rank(jrows + [diag.coeffs], ncols) != len(Jt):
        raise NoDiagonal("diagonal does not contain the J-intersection")
    if int_rank(krows + [diag.coeffs], ncols) != len(Kt):
        raise NoDiagonal("diagonal does not contain the K-intersection")
    return diag


def _subsets_lex(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All subsets of a sorted sequence, in lexicographic order of the tuples."""
    cur: list[int] = []

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        yield tuple(cur)
        for i in range(start, len(items)):
            cur.append(items[i])
            yield from rec(i + 1)
            cur.pop()

    return rec(0)


def _block_partitions(items: Sequence[int], k: int, bsize: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unordered partitions of k disjoint bsize-blocks drawn from items, in
    lexicographic normal form order (blocks sorted, anchored on their minima)."""
    items = sorted(items)

    def rec_skip(avail: list[int], blocks: list[tuple[int, ...]]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(blocks) == k:
            yield tuple(blocks)
            return
        # choose the anchor of the next block among avail, in ascending order,
        # keeping normal form: anchors strictly increase
        for ai in range(len(avail) - bsize + 1):
            head = avail[ai]
            rest = avail[ai + 1 :]
            for comp in itertools.combinations(rest, bsize - 1):
                block = (head,) + comp
                remaining = [x for x in rest if x not in comp]
                blocks.append(block)
                yield from rec_skip(remaining, blocks)
                blocks.pop()

    yield from rec_skip(list(items), [])


class _GenericSweep:
    """Deterministic enumeration of the generic-condition tuples for one family.

    Order: |I| ascending, I lex, k ascending, partitions in lex normal form,
    J lex, l ascending, extras lex.  Tuples whose verdict is forced by an
    already-verified tuple are skipped:

      * k = 0 tuples only restate general position (verified up front);
      * once the emptiness branch is hit at extension level l, deeper l are
        intersections of verified-empty sets;
      * J-supersets of a J verified empty at l = 0 stay empty;
      * beyond the first saturated level k+l = |I| the expected codimension
        |I|+|J| is pinned between a verified lower bound and the structural
        upper bound rank <= |I|+|J| (diagonals and extras lie in the I-span).
    """

    def __init__(self, a: Arrangement):
        self.a = a
        self.n = a.n
        self.q = a.q
        self.ncols = a.n + 1
        self.violation: Optional[GenericityViolation] = None
        self._diag_cache: dict[tuple, tuple[int, ...]] = {}

    def _diag(self, I: tuple[int, ...], block: tuple[int, ...]) -> tuple[int, ...]:
        key = (I, block)
        row = self._diag_cache.get(key)
        if row is None:
            row = diagonal_hyperplane(self.a, I, block).coeffs
            self._diag_cache[key] = row
        return row

    def run(self) -> Optional[GenericityViolation]:
        n, q = self.n, self.q
        for isize in range(2, n + 1):
            bsize = n + 2 - isize
            for I in itertools.combinations(range(1, q + 1), isize):
                iset = set(I)
                rest = [j for j in range(1, q + 1) if j not in iset]
                kmax = len(rest) // bsize
                for k in range(1, kmax + 1):
                    for blocks in _block_partitions(rest, k, bsize):
                        try:
                            diags = [self._diag(I, b) for b in blocks]
                        except (NoDiagonal, AmbiguousDiagonal):
                            # structurally impossible under the general-position
                            # precondition; report as a degenerate witness
                            self.violation = GenericityViolation(
                                I=I,
                                J=(),
                                partitions=blocks,
                                extra=(),
                                expected_codim=min(k, isize),
                                actual_codim=-1,
                            )
                            return self.violation
                        used = iset.union(*blocks)
                        rem = [j for j in rest if j not in used]
                        if self._scan_j(I, blocks, diags, rem, k):
                            return self.violation
        return None

    def _scan_j(self, I, blocks, diags, rem, k) -> bool:
        """Recursive lexicographic scan over J with an incremental echelon."""
        n = self.n
        isize = len(I)
        stack = RowEchelon(self.ncols)
        for d in diags:
            stack.push(d)

        def visit(jtuple: tuple[int, ...], start: int) -> Optional[bool]:
            """Returns True on violation, 'prune' via False to stop extending."""
            jsize = len(jtuple)
            extend = True
            if self._scan_l(I, blocks, jtuple, stack, k):
                return True
            if min(k, isize) + jsize > n:
                # this J was checked empty at l = 0; supersets stay empty
                extend = False
            if extend:
                for t in range(start, len(rem)):
                    j = rem[t]
                    stack.push(self.a.row(j))
                    if visit(jtuple + (j,), t + 1):
                        return True
                    stack.pop()
            return False

        return bool(visit((), 0))

    def _scan_l(self, I, blocks, jtuple, stack: RowEchelon, k) -> bool:
        """Check all extras {i_1..i_l} <= I for the current (I, partitions, J)."""
        n = self.n
        isize = len(I)
        jsize = len(jtuple)

        for l in range(0, isize + 1):
            expected = min(k + l, isize) + jsize
            for extra in itertools.combinations(I, l):
                pushed = 0
                for i in extra:
                    stack.push(self.a.row(i))
                    pushed += 1
                actual = stack.rank
                ok = (actual == expected) if expected <= n else (actual == n + 1)
                for _ in range(pushed):
                    stack.pop()
                if not ok:
                    self.violation = GenericityViolation(
                        I=I,
                        J=jtuple,
                        partitions=blocks,
                        extra=extra,
                        expected_codim=expected,
                        actual_codim=actual,
                    )
                    return True
            if expected > n:
                break  # emptiness level reached: deeper l forced empty
            if k + l >= isize:
                break  # saturated: deeper l pinned at rank |I| + |J|
        return False


def is_generic(a: Arrangement) -> bool | GenericityViolation:
    """Certify the full generic condition; True or the first violation found.

    Preconditions: q >= n+2 and the family is in general position (checked;
    a ValueError names the offending subset otherwise).
    """
    if a.q < a.n + 2:
        raise ValueError("generic condition needs q >= n+2")
    gp = is_general_position(a)
    if gp is not True:
        raise ValueError(f"family not in general position; violating subset {gp}")
    result = _GenericSweep(a).run()
    return True if result is None else result


def restrict(a: Arrangement, I: Sequence[int]) -> Arrangement:
    """Restrict the family to cap_{i in I} H_i, reindexed into P^(n-|I|).

    Uses the canonical kernel basis of the stacked I-rows as an exact rational
    parametrization; every h_j with j outside I is pulled back through it.
    """
    idx = tuple(sorted(set(I)))
    if not idx or len(idx) > a.n - 1:
        raise ValueError("need 1 <= |I| <= n-1")
    gp = is_general_position(a)
    if gp is not True:
        raise ValueError("restriction requires a general-position family")
    ker = RatMatrix.from_rows(a.rows(idx)).kernel()
    new_n = a.n - len(idx)
    if len(ker) != new_n + 1:
        raise DegenerateRestriction("I-rows are not independent")
    restricted = []
    for j in range(1, a.q + 1):
        if j in idx:
            continue
        row = a.row(j)
        coeffs = [
            sum((Fraction(row[c]) * v[c] for c in range(a.n + 1)), Fraction(0)) for v in ker
        ]
        if not any(coeffs):
            raise DegenerateRestriction(f"H_{j} vanishes identically on the subspace")
        restricted.append(Hyperplane(coeffs))
    return Arrangement(new_n, restricted)


@dataclass(frozen=True)
class GeneratedArrangement:
    """A generic arrangement with the reproducibility data that produced it."""

    arrangement: Arrangement
    seed: int
    tries: int


def random_generic(
    n: int,
    q: int,
    coeff_bound: int,
    seed: int,
    max_tries: int = 64,
) -> GeneratedArrangement:
    """Rejection-sample integer arrangements until the generic condition holds.

    Deterministic in the seed; a try draws q coefficient vectors uniformly from
    [-coeff_bound, coeff_bound]^(n+1) (zero vectors are redrawn in place).
    Raises ExhaustedTries when the budget runs out, which usually means
    coeff_bound is too small for q distinct directions.
    """
    if q < n + 2:
        raise ValueError("need q >= n+2")
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        planes: list[Hyperplane] = []
        ok = True
        for _ in range(q):
            for _redraw in range(1000):
                vec = [rng.randint(-coeff_bound, coeff_bound) for _ in range(n + 1)]
                if any(vec):
                    break
            else:  # pragma: no cover - astronomically unlikely
                raise ExhaustedTries(attempt)
            h = Hyperplane(vec)
            if h in planes:
                ok = False
                break
            planes.append(h)
        if not ok:
            continue
        arr = Arrangement(n, planes)
        if is_general_position(arr) is not True:
            continue
        if is_generic(arr) is not True:
            continue
        return GeneratedArrangement(arrangement=arr, seed=seed, tries=attempt)
    raise ExhaustedTries(max_tries)
