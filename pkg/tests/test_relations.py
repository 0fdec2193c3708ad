import time
from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from src.arrangement import Arrangement, Circuit, LinearForm, ProjectivePoint, classify
from src.common.errors import (
    DimensionMismatchError,
    PointInBaseLocusError,
    PointOnArrangementError,
    PreconditionError,
)
from src.exactlin import VectorQ, rank
from src.relations import (
    associated_subspace_through,
    attach_circuits,
    base_locus,
    circuits,
    diagonal_hyperplanes,
    entire_curve_obstructions,
    relation_sum,
    tangent_direction_subspaces,
    verify_curve_in_subspace,
)

from .oracle import oracle_circuits, random_arrangement


def normalized(*coefficients) -> VectorQ:
    return VectorQ(coefficients).normalized()


def p4_lift(t) -> VectorQ:
    return VectorQ([t, t + 1, t + 2, t + 3, 1])


def test_square_circuit(square):
    start = time.perf_counter()
    (circuit,) = circuits(square)
    assert circuit.indices == (1, 2, 3, 4)
    assert circuit.coefficients == (1, -1, -1, 1)
    diagonals = diagonal_hyperplanes(circuit, square)
    assert {d.form.coefficients for d in diagonals} == {
        normalized(0, 1, -1),
        normalized(-1, 1, 1),
        normalized(1, 0, 0),
    }
    assert [d.subset for d in diagonals] == [(1, 2), (1, 3), (1, 4)]
    assert time.perf_counter() - start < 1


def test_coordinate_forms_have_no_circuits():
    for n in range(1, 5):
        arr = Arrangement.from_rows(n, [VectorQ.unit(n + 1, i) for i in range(n + 1)])
        assert circuits(arr) == []
        p = ProjectivePoint.of(range(1, n + 2))
        assert entire_curve_obstructions(arr, p).is_empty
        assert tangent_direction_subspaces(arr, p) == []


def test_p4_circuit(p4_forms):
    (circuit,) = circuits(p4_forms)
    assert circuit.indices == (1, 2, 3, 4)
    assert circuit.coefficients == (1, 1, 1, 1)
    diagonals = diagonal_hyperplanes(circuit, p4_forms)
    assert {d.form.coefficients for d in diagonals} == {
        normalized(1, -1, 0, 0, 0),
        normalized(0, 0, 1, -1, 0),
        normalized(1, 1, -1, -1, 0),
    }


def test_p4_base_locus(p4_forms):
    (circuit,) = circuits(p4_forms)
    assert base_locus(circuit, p4_forms) == [VectorQ([1, 1, 1, 1, 0]), VectorQ([0, 0, 0, 0, 1])]


def test_p4_pullbacks_constant(p4_forms):
    ts = [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(7, 3), Fraction(5)]
    for t in ts:
        lift = p4_lift(t)
        assert [p4_forms.form(j)(lift) for j in range(1, 5)] == [-2, 1, -2, 3]


def test_p4_curve_in_associated_subspace(p4_forms):
    (circuit,) = circuits(p4_forms)
    p = ProjectivePoint.of([0, 1, 2, 3, 1])
    sub = associated_subspace_through(circuit, p4_forms, p)
    assert sub.span_basis == (VectorQ([1, 1, 1, 1, 0]), VectorQ([0, 0, 0, 0, 1]), VectorQ([0, 1, 2, 3, 1]))
    samples = [p4_lift(t) for t in (0, 1, 2, -1, 5)]
    assert verify_curve_in_subspace(samples, sub.conditions())
    assert all(sub.contains(s) for s in samples)
    assert not verify_curve_in_subspace(samples, [LinearForm.of([1, 0, 0, 0, 0])])
    assert verify_curve_in_subspace([VectorQ([0, 1, 2, 3, 1])] * 3, sub.conditions())


def test_verify_curve_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        verify_curve_in_subspace([VectorQ([1, 2])], [LinearForm.of([1, 0, 0])])


def test_concurrent_lines(concurrent_lines):
    (circuit,) = circuits(concurrent_lines)
    assert circuit.indices == (1, 2, 3)
    assert circuit.coefficients == (1, 1, -1)
    assert diagonal_hyperplanes(circuit, concurrent_lines) == []
    assert base_locus(circuit, concurrent_lines) == [VectorQ([0, 0, 1])]

    p = ProjectivePoint.of([1, 1, 1])
    sub = associated_subspace_through(circuit, concurrent_lines, p)
    assert sub.projective_dimension == 1
    assert [f.coefficients for f in sub.conditions()] == [VectorQ([1, -1, 0])]

    report = entire_curve_obstructions(concurrent_lines, p)
    (entry,) = report.entries
    assert entry.diagonal_hyperplanes == ()
    assert entry.associated_subspace == sub

    (tangent,) = tangent_direction_subspaces(concurrent_lines, p)
    assert tangent.source == 'associated'
    assert tangent.chart == 0
    assert tangent.conditions == (VectorQ([-1, 0]),)


def test_point_in_base_locus(concurrent_lines):
    (circuit,) = circuits(concurrent_lines)
    with pytest.raises(PointInBaseLocusError):
        associated_subspace_through(circuit, concurrent_lines, ProjectivePoint.of([0, 0, 1]))


def test_square_obstructions(square):
    p = ProjectivePoint.of([1, 2, 3])
    report = entire_curve_obstructions(square, p)
    (entry,) = report.entries
    # 2 - 3, 1 and 1 - 2 - 3 are all nonzero
    assert entry.diagonal_hyperplanes == ()
    assert entry.associated_subspace is not None
    assert entry.associated_subspace.span_basis == (p.coordinates,)
    assert entry.associated_subspace.projective_dimension == 0
    tangents = tangent_direction_subspaces(square, p)
    assert len(tangents) == 1
    assert len(tangents[0].conditions) == 2


def test_square_obstructions_on_diagonal(square):
    p = ProjectivePoint.of([1, 2, 2])
    report = entire_curve_obstructions(square, p)
    (entry,) = report.entries
    assert [d.subset for d in entry.diagonal_hyperplanes] == [(1, 2)]
    tangents = tangent_direction_subspaces(square, p)
    assert [t.source for t in tangents] == ['diagonal', 'associated']
    assert tangents[0].conditions == (VectorQ([1, -1]),)


def test_tangent_subspaces_reuse_report(square):
    p = ProjectivePoint.of([1, 2, 2])
    report = entire_curve_obstructions(square, p)
    assert tangent_direction_subspaces(square, p, report) == tangent_direction_subspaces(square, p)
    with pytest.raises(PreconditionError):
        tangent_direction_subspaces(square, ProjectivePoint.of([1, 2, 3]), report)


def test_point_on_arrangement(square):
    with pytest.raises(PointOnArrangementError):
        entire_curve_obstructions(square, ProjectivePoint.of([1, 0, 3]))


def test_dependent_arrangements_give_proper_tangent_subspaces():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 20:
        arr, _ = random_arrangement(rng)
        coords = rng.integers(-5, 6, size=arr.n + 1)
        if not coords.any():
            continue
        p = ProjectivePoint.of(int(v) for v in coords)
        if not all(f(p.coordinates) for f in arr.forms):
            continue
        found = circuits(arr)
        try:
            subspaces = tangent_direction_subspaces(arr, p)
        except PointInBaseLocusError:
            continue
        checked += 1
        assert bool(subspaces) == bool(found)
        assert all(t.conditions for t in subspaces)


def test_attach_circuits(square):
    report = attach_circuits(classify(square), square)
    assert report.circuits == tuple(circuits(square))


def test_circuit_model_invariants():
    with pytest.raises(ValueError):
        Circuit(indices=(1, 2, 3), coefficients=(2, 1, 1))
    with pytest.raises(ValueError):
        Circuit(indices=(2, 1, 3), coefficients=(1, 1, 1))
    with pytest.raises(ValueError):
        Circuit(indices=(1, 2, 3), coefficients=(1, 0, 1))


def test_circuits_match_oracle():
    rng = np.random.default_rng(2718)
    start = time.perf_counter()
    for _ in range(200):
        arr, rows = random_arrangement(rng)
        found = circuits(arr)
        assert {c.indices for c in found} == oracle_circuits(rows)
        assert [(c.size, c.indices) for c in found] == sorted((c.size, c.indices) for c in found)
        for c in found:
            assert relation_sum(c, arr).is_zero
            assert c.coefficients[0] == 1
            # minimality: dropping any form leaves an independent set
            for j in c.indices:
                rest = [i for i in c.indices if i != j]
                assert rank(arr.matrix(rest)) == len(rest)
            for d in diagonal_hyperplanes(c, arr):
                assert 2 <= len(d.subset) <= c.size - 2
                complement = tuple(i for i in c.indices if i not in d.subset)
                assert relation_sum(c, arr, complement).normalized() == d.form.coefficients
    assert time.perf_counter() - start < 30


def test_circuits_of_many_generic_forms():
    # points on the moment curve: every 4 forms are independent, so every 5 form a circuit
    arr = Arrangement.from_rows(3, [[1, t, t**2, t**3] for t in range(1, 13)])
    start = time.perf_counter()
    found = circuits(arr)
    assert len(found) == 792
    assert all(c.size == 5 for c in found)
    assert time.perf_counter() - start < 30


def test_circuits_skip_supersets_of_dependent_sets():
    # a pencil of lines through [0:0:1] plus two generic lines
    rows = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [2, -1, 0], [1, 1, 1], [1, -2, 3]]
    found = circuits(Arrangement.from_rows(2, rows))
    assert {c.indices for c in found} == oracle_circuits(rows)
    assert sum(c.size == 3 for c in found) == 10


@st.composite
def rescalings(draw, size: int):
    return [draw(st.integers(1, 5)) * draw(st.sampled_from([1, -1])) for _ in range(size)]


@given(st.permutations([1, 2, 3, 4]), rescalings(4))
@settings(max_examples=30, deadline=None)
def test_square_obstructions_equivariant(order, scales):
    base = Arrangement.from_rows(2, [[0, 1, 0], [0, 0, 1], [-1, 1, 0], [-1, 0, 1]])
    rows = [[v * scales[i] for v in base.form(j).coefficients] for i, j in enumerate(order)]
    arr = Arrangement.from_rows(2, rows)
    p = ProjectivePoint.of([1, 2, 2])

    (circuit,) = circuits(arr)
    assert circuit.indices == (1, 2, 3, 4)
    diagonal_forms = {d.form.coefficients for d in diagonal_hyperplanes(circuit, arr)}
    assert diagonal_forms == {normalized(0, 1, -1), normalized(-1, 1, 1), normalized(1, 0, 0)}

    (entry,) = entire_curve_obstructions(arr, p).entries
    assert [d.form.coefficients for d in entry.diagonal_hyperplanes] == [normalized(0, 1, -1)]
    assert entry.associated_subspace is not None
    assert entry.associated_subspace.span_basis == (p.coordinates,)
