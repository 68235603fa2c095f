import random

import pytest

from polylie.derivation import Derivation
from polylie.grammar import parse_derivation
from polylie.span import (
    SpanBasis,
    ad_nilpotency_step,
    coordinatize,
    derived_series,
    lie_closure,
    lower_central_series,
)
from polylie.sampling import random_derivation


def pd(text, n):
    return parse_derivation(text, n)


class TestCoordinatize:
    def test_scalar_dependence(self):
        n = 1
        d1 = Derivation.partial(n, 1)
        assert coordinatize([d1, 2 * d1]).dim == 1

    def test_distinct_supports(self):
        n = 1
        assert coordinatize([pd("d1", n), pd("(x1) d1", n)]).dim == 2

    def test_rank_three_vectors(self):
        n = 2
        gens = [pd("(x1) d1 + (x2) d2", n), pd("(x1) d1 - (x2) d2", n),
                pd("(x2) d2", n)]
        assert coordinatize(gens).dim == 2

    def test_empty_needs_dimension(self):
        assert coordinatize([], n=2).dim == 0
        with pytest.raises(ValueError):
            coordinatize([])

    def test_containment_and_coordinates(self):
        n = 2
        basis = coordinatize([pd("(x1) d1 + (x2) d2", n), pd("(x2) d2", n)])
        inside = pd("(2 x1) d1 + (3 x2) d2", n)
        assert basis.contains(inside)
        coords = basis.coordinates_of(inside)
        rebuilt = Derivation.zero(n)
        for c, b in zip(coords, basis.basis):
            rebuilt = rebuilt + c * b
        assert rebuilt == inside
        assert not basis.contains(pd("(x1) d2", n))
        assert basis.coordinates_of(pd("(x1) d2", n)) is None

    def test_deterministic_reduced_basis(self):
        n = 2
        a = coordinatize([pd("(x1) d1 + (x2) d2", n), pd("(x1) d1 - (x2) d2", n)])
        b = coordinatize([pd("(x1) d1", n), pd("(x2) d2", n)])
        assert a.same_span(b)
        assert a.basis == b.basis  # RREF is canonical for a fixed column order


class TestLieClosure:
    def test_sl2_triple_already_closed(self):
        n = 1
        gens = [pd(t, n) for t in ("d1", "(x1) d1", "(x1^2) d1")]
        result = lie_closure(gens)
        assert result.status == "closed" and result.basis.dim == 3

    def test_generates_middle_element(self):
        n = 1
        result = lie_closure([pd("d1", n), pd("(x1^2) d1", n)])
        assert result.status == "closed" and result.basis.dim == 3
        assert result.basis.contains(pd("(x1) d1", n))

    def test_degree_cap(self):
        n = 2
        result = lie_closure([pd("(x1^2) d2", n), pd("(x2^2) d1", n)], degree_cap=3)
        assert result.status == "degree_cap_exceeded"
        assert result.offending_bracket is not None

    def test_dim_cap(self):
        n = 2
        result = lie_closure([pd("(x1^2) d2", n), pd("(x2^2) d1", n)], dim_cap=4)
        assert result.status == "dim_cap_exceeded"

    def test_order_independent(self):
        rng = random.Random(31)
        n = 1
        gens = [pd(t, n) for t in ("d1", "(x1^2) d1", "(x1) d1")]
        reference = lie_closure(gens)
        for _ in range(5):
            shuffled = gens[:]
            rng.shuffle(shuffled)
            other = lie_closure(shuffled)
            assert other.status == "closed"
            assert other.basis.same_span(reference.basis)

    def test_closed_result_is_bracket_closed(self):
        n = 2
        result = lie_closure([pd("d1", n), pd("(x1) d2", n), pd("(x1) d1", n)])
        assert result.status == "closed"
        assert result.basis.is_bracket_closed()


class TestDerivedSeries:
    def test_affine_span_solvable(self):
        n = 1
        report = derived_series(coordinatize([pd("d1", n), pd("(x1) d1", n)]))
        assert report.dims == (2, 1, 0)
        assert report.verdict == "solvable" and report.length == 2

    def test_sl2_stabilizes(self):
        n = 1
        gens = [pd(t, n) for t in ("d1", "(x1) d1", "(x1^2) d1")]
        report = derived_series(coordinatize(gens))
        assert report.dims == (3, 3)
        assert report.verdict == "stabilized_nonzero"

    def test_zero_span(self):
        report = derived_series(coordinatize([], n=2))
        assert report.dims == (0,)
        assert report.verdict == "solvable" and report.length == 0

    def test_not_closed_rejected(self):
        n = 1
        with pytest.raises(ValueError):
            derived_series(coordinatize([pd("d1", n), pd("(x1^2) d1", n)]))

    def test_dims_non_increasing_and_terms_closed(self):
        n = 2
        result = lie_closure([pd("d1", n), pd("(x1) d1", n), pd("(x1) d2", n),
                              pd("(x2) d2", n)])
        assert result.status == "closed"
        report = derived_series(result.basis)
        assert all(a >= b for a, b in zip(report.dims, report.dims[1:]))
        # every derived term is itself bracket-closed
        current = result.basis
        for _ in range(len(report.dims) - 1):
            nxt = SpanBasis(n, current.pairwise_brackets())
            assert nxt.is_bracket_closed()
            current = nxt


class TestLowerCentralSeries:
    def test_affine_span_not_nilpotent(self):
        n = 1
        report = lower_central_series(coordinatize([pd("d1", n), pd("(x1) d1", n)]))
        assert report.verdict == "stabilized_nonzero"

    def test_abelian_class_one(self):
        n = 2
        report = lower_central_series(coordinatize([pd("d1", n), pd("d2", n)]))
        assert report.verdict == "nilpotent" and report.length == 1

    def test_commuting_pair_class_one(self):
        n = 2
        report = lower_central_series(coordinatize([pd("d2", n), pd("(x1) d2", n)]))
        assert report.verdict == "nilpotent" and report.length == 1

    def test_derived_term_inside_lower_central_term(self):
        n = 2
        result = lie_closure([pd("d1", n), pd("(x1) d1", n), pd("(x1) d2", n),
                              pd("(x2) d2", n)])
        assert result.status == "closed"
        derived_term = result.basis
        lower_term = result.basis
        for _ in range(4):
            derived_term = SpanBasis(n, derived_term.pairwise_brackets())
            lower_term = SpanBasis(n, [a.bracket(b) for a in result.basis
                                       for b in lower_term.basis])
            assert all(lower_term.contains(d) for d in derived_term.basis)


class TestAdNilpotency:
    def test_partial_on_affine_span(self):
        n = 1
        basis = coordinatize([pd("d1", n), pd("(x1) d1", n)])
        assert ad_nilpotency_step(Derivation.partial(n, 1), basis, 10) == 2

    def test_semisimple_element_not_nilpotent(self):
        n = 1
        basis = coordinatize([pd("d1", n)])
        assert ad_nilpotency_step(pd("(x1) d1", n), basis, 10) is None

    def test_zero_derivation(self):
        n = 1
        basis = coordinatize([pd("d1", n), pd("(x1) d1", n)])
        assert ad_nilpotency_step(Derivation.zero(n), basis, 10) == 1

    def test_non_normalizing_rejected(self):
        n = 1
        basis = coordinatize([pd("(x1) d1", n)])
        with pytest.raises(ValueError):
            ad_nilpotency_step(pd("(x1^2) d1", n), basis, 10)


class TestRandomSpans:
    def test_closure_idempotent_on_random_gens(self):
        rng = random.Random(32)
        for _ in range(10):
            n = rng.randint(1, 2)
            gens = [random_derivation(rng, n, 1, max_terms=2) for _ in range(2)]
            result = lie_closure(gens, degree_cap=6, dim_cap=64)
            if result.status != "closed":
                continue
            again = lie_closure(list(result.basis.basis), degree_cap=6, dim_cap=64,
                                n=n)
            assert again.status == "closed"
            assert again.basis.same_span(result.basis)
