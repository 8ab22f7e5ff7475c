"""Exact rational linear algebra for intersection matrices.

The central object is M = (-(b_i Gamma_i . b_j Gamma_j))_ij, a weighted
graph Laplacian whose kernel is spanned by the all-ones vector exactly
when the fiber is connected.  Its Moore-Penrose pseudoinverse M+ is
computed exactly as follows: ground the last vertex, factor the resulting
nonsingular minor by sparse symmetric elimination (pivot order: fewest
active off-diagonal entries, ties by index, so runs are bit-deterministic),
solve for every column of the grounded inverse G, and project
M+ = (I - J/r) G (I - J/r).  The projection of a grounded inverse is the
Moore-Penrose pseudoinverse for symmetric M with kernel span(1); rather
than trusting that argument, every call re-verifies the Penrose data
exactly: symmetry, zero row sums, sum_j n_ij m_jk = delta_ik - 1/r, and
the trace identity.  Together with zero row sums of M these identities
force MM+M = M and M+MM+ = M+.

Leaf-heavy fibers (each pendant chain eliminates with no fill-in) factor
in O(edges); the 451-component stress case runs in about a second where a
dense exact elimination of M + J/r measures ~30s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import MalformedInput, SingularBeyondKernel
from .fiber import SpecialFiber
from .rationals import Rat, ZERO, rat


@dataclass(frozen=True)
class RatMatrix:
    """Dense immutable matrix of exact rationals."""

    entries: tuple

    def __init__(self, entries):
        rows = tuple(tuple(rat(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise MalformedInput("matrix must be nonempty")
        if any(len(row) != len(rows[0]) for row in rows):
            raise MalformedInput("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Rat:
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.rows) for j in range(i))

    def row_sums(self) -> tuple:
        return tuple(sum(row, ZERO) for row in self.entries)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def trace(self) -> Rat:
        return sum(self.diagonal(), ZERO)

    def matvec(self, v) -> list:
        return [sum((row[j] * v[j] for j in range(self.cols) if v[j] != 0), ZERO)
                for row in self.entries]

    @cached_property
    def nonzero_columns(self) -> tuple:
        """Per row, the indices of nonzero entries (sparse iteration aid)."""
        return tuple(
            tuple(j for j, x in enumerate(row) if x != 0) for row in self.entries
        )


def build_laplacian(fiber: SpecialFiber) -> RatMatrix:
    """M with m_ij = -(b_i Gamma_i . b_j Gamma_j); expects a validated fiber."""
    b = fiber.multiplicities
    n = fiber.r
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -rat(b[i] * b[i]) * fiber.components[i].self_intersection
        for j in fiber.neighbors[i]:
            rows[i][j] = -rat(b[i] * b[j]) * fiber.pair_value(i, j)
    M = RatMatrix(rows)
    if any(s != 0 for s in M.row_sums()):
        raise MalformedInput(
            f"fiber {fiber.name!r} violates the fiber relation; validate() it first"
        )
    return M


@dataclass(frozen=True)
class PseudoinverseResult:
    """Exact Moore-Penrose pseudoinverse with rank and kernel certificates."""

    mplus: RatMatrix
    trace: Rat
    rank: int
    kernel_certificate: tuple  # basis vectors of ker M

    def entry(self, i: int, j: int) -> Rat:
        return self.mplus.entry(i, j)

    @property
    def r(self) -> int:
        return self.mplus.rows


def _sparse_rows(M: RatMatrix) -> list:
    return [
        {j: M.entries[i][j] for j in M.nonzero_columns[i]} for i in range(M.rows)
    ]


def _grounded_factor(M: RatMatrix):
    """Eliminate M without its last row/column; record the row operations.

    Returns (ops, pivots) where ops is a list of (pivot_index, {j: factor})
    applied in order and pivots the matching (index, pivot_value) list.
    Raises SingularBeyondKernel on a zero pivot, which under zero row sums
    and symmetry means ker M is larger than span(1).
    """
    n = M.rows
    work = []
    for i in range(n - 1):
        row = {j: M.entries[i][j] for j in M.nonzero_columns[i] if j != n - 1}
        row.setdefault(i, ZERO)
        work.append(row)
    active = set(range(n - 1))
    ops = []
    pivots = []
    while active:
        i = min(active, key=lambda k: (len(work[k]), k))
        d = work[i].get(i, ZERO)
        if d == 0:
            raise SingularBeyondKernel(
                f"rank below r-1 (zero pivot at index {i}); fiber is disconnected"
            )
        factors = {}
        items = [(k, v) for k, v in work[i].items() if k != i]
        for j, vij in items:
            f = vij / d
            factors[j] = f
            wj = work[j]
            for k, vik in items:
                nv = wj.get(k, ZERO) - f * vik
                if nv:
                    wj[k] = nv
                elif k in wj:
                    del wj[k]
            wj.pop(i, None)
        ops.append((i, factors))
        pivots.append((i, d))
        active.discard(i)
    return ops, pivots


def _grounded_column(ops, pivots, n: int, col: int) -> list:
    """Solve (grounded M) x = e_col by replaying the recorded operations."""
    x = [ZERO] * n
    x[col] = rat(1)
    for i, factors in ops:
        xi = x[i]
        if xi:
            for j, f in factors.items():
                x[j] = x[j] - f * xi
    for i, d in pivots:
        if x[i]:
            x[i] = x[i] / d
    for i, factors in reversed(ops):
        xi = x[i]
        for j, f in factors.items():
            if x[j]:
                xi = xi - f * x[j]
        x[i] = xi
    return x


def _verify_penrose(M: RatMatrix, P: PseudoinverseResult) -> None:
    """Exact postcondition check; failures mean an implementation bug."""
    n = M.rows
    mp = P.mplus
    if not mp.is_symmetric():
        raise AssertionError("pseudoinverse postcondition: symmetry")
    if any(s != 0 for s in mp.row_sums()):
        raise AssertionError("pseudoinverse postcondition: row sums")
    minus_inv_r = rat(-1, n)
    for k in range(n):
        cols = M.nonzero_columns[k]
        mk = M.entries[k]
        for i in range(n):
            row = mp.entries[i]
            s = sum((row[j] * mk[j] for j in cols), ZERO)
            expect = minus_inv_r + (1 if i == k else 0)
            if s != expect:
                raise AssertionError(
                    f"pseudoinverse postcondition: (M+ M)[{i},{k}] = {s}"
                )
    diag = mp.diagonal()
    md = M.matvec(list(diag))
    target = P.trace / n
    for i in range(n):
        row = mp.entries[i]
        s = diag[i] - sum((row[j] * md[j] for j in range(n) if md[j] != 0), ZERO)
        if s != target:
            raise AssertionError(f"pseudoinverse postcondition: trace identity at {i}")


def pseudoinverse(M: RatMatrix) -> PseudoinverseResult:
    """Exact M+ for a symmetric zero-row-sum M with kernel span(1).

    Raises SingularBeyondKernel when rank < r-1 (disconnected fiber).
    The returned data satisfies the Penrose axioms exactly; this is
    re-verified on every call, not assumed.
    """
    n = M.rows
    if M.rows != M.cols or not M.is_symmetric():
        raise MalformedInput("pseudoinverse needs a symmetric square matrix")
    if any(s != 0 for s in M.row_sums()):
        raise MalformedInput("pseudoinverse needs zero row sums")
    ops, pivots = _grounded_factor(M)
    columns = [_grounded_column(ops, pivots, n - 1, c) for c in range(n - 1)]
    # project: M+ = (I - J/n) G (I - J/n) with G the zero-padded grounded inverse
    row_sums = [sum(col, ZERO) for col in columns] + [ZERO]
    total = sum(row_sums, ZERO)
    inv_n = rat(1, n)
    shift = total * inv_n * inv_n
    entries = []
    for i in range(n):
        gi = columns[i] if i < n - 1 else None
        ri = row_sums[i] * inv_n
        row = []
        for j in range(n):
            gij = gi[j] if (gi is not None and j < n - 1) else ZERO
            row.append(gij - ri - row_sums[j] * inv_n + shift)
        entries.append(row)
    mplus = RatMatrix(entries)
    ones = tuple(rat(1) for _ in range(n))
    if any(x != 0 for x in M.matvec(list(ones))):
        raise MalformedInput("all-ones vector is not in ker M")
    result = PseudoinverseResult(
        mplus=mplus,
        trace=mplus.trace(),
        rank=n - 1 if n > 1 else 0,
        kernel_certificate=(ones,),
    )
    _verify_penrose(M, result)
    return result


def effective_resistance(P: PseudoinverseResult, i: int, j: int) -> Rat:
    """r(Gamma_i, Gamma_j) = n_ii + n_jj - 2 n_ij on the metrized dual graph."""
    n = P.r
    if not (0 <= i < n and 0 <= j < n):
        raise MalformedInput(f"resistance indices ({i}, {j}) out of range")
    return P.entry(i, i) + P.entry(j, j) - 2 * P.entry(i, j)


@dataclass(frozen=True)
class PsdCertificate:
    """Outcome of an exact congruence decomposition of a symmetric matrix."""

    is_psd: bool
    pivots: tuple
    witness: str = ""


def psd_certificate(M: RatMatrix) -> PsdCertificate:
    """Exact LDL^t-style certificate of positive semidefiniteness.

    Pivots are taken only on nonzero diagonal entries; a fully zero
    remaining diagonal with a nonzero off-diagonal entry exhibits an
    indefinite 2x2 minor, and a zero remaining block is kernel.  The
    verdict is True iff every recorded pivot is positive.
    """
    if M.rows != M.cols or not M.is_symmetric():
        raise MalformedInput("psd_certificate needs a symmetric square matrix")
    work = _sparse_rows(M)
    active = set(range(M.rows))
    pivots = []
    witness = ""
    while active:
        candidates = [k for k in active if work[k].get(k, ZERO) != 0]
        if not candidates:
            for k in sorted(active):
                for j, v in sorted(work[k].items()):
                    if j in active and v != 0:
                        witness = (
                            f"indefinite 2x2 minor at ({k},{j}): "
                            f"[[0, {v}], [{v}, 0]]"
                        )
                        return PsdCertificate(False, tuple(pivots), witness)
            break  # remaining block is identically zero: kernel directions
        i = min(candidates, key=lambda k: (len(work[k]), k))
        d = work[i][i]
        pivots.append(d)
        items = [(k, v) for k, v in work[i].items() if k != i and k in active]
        for j, vij in items:
            f = vij / d
            wj = work[j]
            for k, vik in items:
                nv = wj.get(k, ZERO) - f * vik
                if nv:
                    wj[k] = nv
                elif k in wj:
                    del wj[k]
            wj.pop(i, None)
        active.discard(i)
    negative = [p for p in pivots if p < 0]
    if negative:
        witness = f"negative pivot {negative[0]}"
    return PsdCertificate(not negative, tuple(pivots), witness)
