"""Finite-dimensional linear algebra over Q for sets of derivations.

Derivations are coordinatized against the monomial support of their
coefficients: a coordinate is a pair (slot, monomial) meaning the given
monomial inside the coefficient of d_slot.  All rank and membership
computations use exact rational Gaussian elimination; the stored basis is
the reduced row echelon form of the generators, which is unique for a given
row space and column order, so equal spans produce identical bases.

Series computations (derived, lower central) and the adjoint-nilpotency test
operate on bracket-closed spans only; closure itself is produced by
`lie_closure` under explicit degree and dimension caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .derivation import Derivation
from .polyring import Monomial, Polynomial, monomial_sort_key

DEFAULT_DEGREE_CAP = 12
DEFAULT_DIM_CAP = 512

Coordinate = tuple[int, Monomial]


def _collect_coordinates(gens: Iterable[Derivation]) -> list[Coordinate]:
    seen: set[Coordinate] = set()
    for d in gens:
        for pos, f in enumerate(d.coeffs):
            for mono, _ in f:
                seen.add((pos + 1, mono))
    coords = list(seen)
    # slots ascending, monomials graded-lex descending within each slot
    coords.sort(key=lambda c: monomial_sort_key(c[1]), reverse=True)
    coords.sort(key=lambda c: c[0])
    return coords


def _vector(d: Derivation, coords: Sequence[Coordinate],
            positions: dict[Coordinate, int]) -> list[Fraction] | None:
    """Coordinate vector of d, or None if d has support outside coords."""
    vec = [Fraction(0)] * len(coords)
    for pos, f in enumerate(d.coeffs):
        for mono, c in f:
            key = (pos + 1, mono)
            at = positions.get(key)
            if at is None:
                return None
            vec[at] = c
    return vec


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _derivation_from_vector(n: int, vec: Sequence[Fraction],
                            coords: Sequence[Coordinate]) -> Derivation:
    per_slot: list[dict[Monomial, Fraction]] = [dict() for _ in range(n)]
    for (slot, mono), c in zip(coords, vec):
        if c != 0:
            per_slot[slot - 1][mono] = c
    return Derivation(n, [Polynomial(n, t) for t in per_slot])


class SpanBasis:
    """Reduced basis of the rational span of a finite set of derivations."""

    __slots__ = ("n", "basis", "coordinate_index", "_matrix", "_pivots", "_positions")

    def __init__(self, n: int, gens: Iterable[Derivation]):
        gens = list(gens)
        for d in gens:
            if d.n != n:
                raise ValueError(f"ambient dimension mismatch: {d.n} vs {n}")
        coords = _collect_coordinates(gens)
        positions = {c: i for i, c in enumerate(coords)}
        rows = []
        for d in gens:
            v = _vector(d, coords, positions)
            assert v is not None
            rows.append(v)
        matrix, pivots = _rref(rows)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coordinate_index", tuple(coords))
        object.__setattr__(self, "_matrix", tuple(tuple(r) for r in matrix))
        object.__setattr__(self, "_pivots", tuple(pivots))
        object.__setattr__(self, "_positions", positions)
        object.__setattr__(
            self, "basis",
            tuple(_derivation_from_vector(n, row, coords) for row in matrix))

    def __setattr__(self, name, value):
        raise AttributeError("SpanBasis is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def _reduce(self, d: Derivation) -> tuple[list[Fraction], list[Fraction]] | None:
        """(combination coefficients, residual vector), or None off-support."""
        vec = _vector(d, self.coordinate_index, self._positions)
        if vec is None:
            return None
        combo = []
        for row, pivot in zip(self._matrix, self._pivots):
            c = vec[pivot]
            combo.append(c)
            if c != 0:
                vec = [a - c * b for a, b in zip(vec, row)]
        return combo, vec

    def contains(self, d: Derivation) -> bool:
        if d.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {d.n} vs {self.n}")
        reduced = self._reduce(d)
        return reduced is not None and all(x == 0 for x in reduced[1])

    def coordinates_of(self, d: Derivation) -> tuple[Fraction, ...] | None:
        """Coefficients expressing d in this basis; None if d is outside."""
        reduced = self._reduce(d)
        if reduced is None or any(x != 0 for x in reduced[1]):
            return None
        return tuple(reduced[0])

    def same_span(self, other: SpanBasis) -> bool:
        """Exact span equality (mutual containment of reduced bases)."""
        if self.n != other.n or self.dim != other.dim:
            return False
        return (all(self.contains(d) for d in other.basis)
                and all(other.contains(d) for d in self.basis))

    def pairwise_brackets(self) -> list[Derivation]:
        out = []
        for i in range(len(self.basis)):
            for j in range(i + 1, len(self.basis)):
                out.append(self.basis[i].bracket(self.basis[j]))
        return out

    def is_bracket_closed(self) -> bool:
        return all(self.contains(b) for b in self.pairwise_brackets())

    def __repr__(self) -> str:
        return f"SpanBasis(n={self.n}, dim={self.dim})"


def coordinatize(gens: Iterable[Derivation], n: int | None = None) -> SpanBasis:
    """Reduced basis of the span of gens; n is required when gens is empty."""
    gens = list(gens)
    if gens:
        n = gens[0].n
    elif n is None:
        raise ValueError("ambient dimension required for an empty generating set")
    return SpanBasis(n, gens)


@dataclass(frozen=True)
class LieClosureResult:
    """Outcome of saturating a span under brackets, subject to caps."""

    status: str  # "closed" | "degree_cap_exceeded" | "dim_cap_exceeded"
    basis: SpanBasis
    offending_bracket: tuple[int, int] | None = None

    @property
    def closed(self) -> bool:
        return self.status == "closed"


def lie_closure(gens: Iterable[Derivation], *,
                degree_cap: int = DEFAULT_DEGREE_CAP,
                dim_cap: int = DEFAULT_DIM_CAP,
                n: int | None = None) -> LieClosureResult:
    """Adjoin pairwise brackets and re-reduce until the span is stable.

    Every produced bracket is degree-checked before being adjoined; a
    coefficient of total degree above degree_cap aborts with
    "degree_cap_exceeded" and the offending pair of basis indices.  Exceeding
    dim_cap aborts likewise.  On "closed" the resulting span is bracket-closed.
    """
    if degree_cap < 1 or dim_cap < 1:
        raise ValueError("caps must be >= 1")
    basis = coordinatize(gens, n)
    if basis.dim > dim_cap:
        return LieClosureResult("dim_cap_exceeded", basis)
    while True:
        new_elems = []
        for i in range(basis.dim):
            for j in range(i + 1, basis.dim):
                br = basis.basis[i].bracket(basis.basis[j])
                deg = br.max_coeff_degree()
                if deg is not None and deg > degree_cap:
                    return LieClosureResult("degree_cap_exceeded", basis, (i, j))
                if not basis.contains(br):
                    new_elems.append(br)
        if not new_elems:
            return LieClosureResult("closed", basis)
        basis = SpanBasis(basis.n, list(basis.basis) + new_elems)
        if basis.dim > dim_cap:
            return LieClosureResult("dim_cap_exceeded", basis)


@dataclass(frozen=True)
class SeriesReport:
    """Dimensions of successive series terms plus a termination verdict.

    verdict is "solvable" (derived series reached zero; length = derived
    length), "nilpotent" (lower central series reached zero; length =
    nilpotency class), "stabilized_nonzero" (two consecutive terms span the
    same nonzero space; stabilized_at = first repeated step), or "cap_hit".
    """

    dims: tuple[int, ...]
    verdict: str
    length: int | None = None
    stabilized_at: int | None = None

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "verdict": self.verdict,
            "length": self.length,
            "stabilized_at": self.stabilized_at,
        }


def default_max_iter(n: int) -> int:
    """Margin above the 2n derived-length ceiling for solvable spans."""
    return 2 * n + 4


def _series(start: SpanBasis, max_iter: int | None, *, lower_central: bool) -> SeriesReport:
    if not start.is_bracket_closed():
        raise ValueError("span is not bracket-closed; run lie_closure first")
    if max_iter is None:
        max_iter = default_max_iter(start.n)
    zero_verdict = "nilpotent" if lower_central else "solvable"
    whole = start
    current = start
    dims = [current.dim]
    if current.dim == 0:
        return SeriesReport((0,), zero_verdict, length=0)
    for step in range(1, max_iter + 1):
        if lower_central:
            gens = [a.bracket(b) for a in whole.basis for b in current.basis]
        else:
            gens = current.pairwise_brackets()
        nxt = SpanBasis(start.n, gens)
        dims.append(nxt.dim)
        if nxt.dim == 0:
            return SeriesReport(tuple(dims), zero_verdict, length=step)
        if nxt.dim == current.dim and nxt.same_span(current):
            return SeriesReport(tuple(dims), "stabilized_nonzero", stabilized_at=step)
        current = nxt
    return SeriesReport(tuple(dims), "cap_hit")


def derived_series(basis: SpanBasis, max_iter: int | None = None) -> SeriesReport:
    """L, [L,L], [[L,L],[L,L]], ... on a bracket-closed span."""
    return _series(basis, max_iter, lower_central=False)


def lower_central_series(basis: SpanBasis, max_iter: int | None = None) -> SeriesReport:
    """L, [L,L], [L,[L,L]], ... on a bracket-closed span."""
    return _series(basis, max_iter, lower_central=True)


def ad_nilpotency_step(d: Derivation, basis: SpanBasis, bound: int) -> int | None:
    """Smallest k <= bound with (ad d)^k = 0 on the span, else None.

    The adjoint map e -> [d, e] must keep the span invariant; a basis
    element whose bracket leaves the span raises ValueError.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    if basis.dim == 0:
        return 1
    columns = []
    for e in basis.basis:
        coords = basis.coordinates_of(d.bracket(e))
        if coords is None:
            raise ValueError("derivation does not normalize the span")
        columns.append(coords)
    m = basis.dim
    # matrix[i][j] = coefficient of basis[i] in [d, basis[j]]
    mat = [[columns[j][i] for j in range(m)] for i in range(m)]
    power = mat
    for k in range(1, bound + 1):
        if all(x == 0 for row in power for x in row):
            return k
        power = [[sum((power[i][t] * mat[t][j] for t in range(m)), Fraction(0))
                  for j in range(m)] for i in range(m)]
    return None
