import time
from fractions import Fraction

import numpy as np
import pytest
from logfire.testing import CaptureLogfire

from src.arrangement import (
    Arrangement,
    ClassificationReport,
    LinearForm,
    ProjectivePoint,
    Reason,
    Verdict,
    classify,
    complement_membership,
    is_general_position,
    oka_witness,
    parse_arrangement,
    product_profile,
)
from src.common.errors import (
    DuplicateHyperplaneError,
    LengthMismatchError,
    MalformedDocumentError,
    MalformedScalarError,
    PreconditionError,
    ZeroFormError,
    ZeroPointError,
)
from src.exactlin import GaussianRational, I, MatrixQ, VectorQ, rank

from .oracle import oracle_general_position, random_arrangement


def coordinate_forms(n: int, count: int) -> Arrangement:
    return Arrangement(n=n, forms=tuple(LinearForm(VectorQ.unit(n + 1, i)) for i in range(count)))


def test_parse_arrangement():
    arr = parse_arrangement('{"n": 2, "forms": [[0, 1, 0], ["1/2", "i", 0]]}')
    assert arr.n == 2
    assert arr.num_forms == 2
    assert arr.form(2).coefficients == VectorQ(['1/2', I, 0])


@pytest.mark.parametrize(
    'text,error',
    [
        ('{"n": 2}', MalformedDocumentError),
        ('not json', MalformedDocumentError),
        ('{"n": 0, "forms": []}', MalformedDocumentError),
        ('{"n": 2, "forms": [[0, 0, 0]]}', ZeroFormError),
        ('{"n": 2, "forms": [[1, 2, 3], [2, 4, 6]]}', DuplicateHyperplaneError),
        ('{"n": 2, "forms": [[1, 2]]}', LengthMismatchError),
        ('{"n": 2, "forms": [[1, 2, "x"]]}', MalformedScalarError),
        ('{"n": 2, "forms": [[1, 2, 0.5]]}', MalformedScalarError),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_arrangement(text)


def test_forms_kept_as_written():
    arr = Arrangement.from_rows(1, [[2, 4], [0, 3]])
    assert arr.form(1).coefficients == VectorQ([2, 4])
    assert arr.form(1).normalized().coefficients == VectorQ([1, 2])
    assert arr.form(1).same_hyperplane(LinearForm.of([-1, -2]))


def test_form_str():
    assert str(LinearForm.of([-1, 1, 0])) == '-x0 + x1'
    assert str(LinearForm.of([1, 0, -1])) == 'x0 - x2'
    assert str(LinearForm.of([0, 2, 'i'])) == '2*x1 + (1*i)*x2'


def test_projective_point():
    p = ProjectivePoint.of([0, 2, 4])
    assert p.coordinates == VectorQ([0, 1, 2])
    assert p.chart_index == 1
    assert str(p) == '[0:1:2]'
    with pytest.raises(ZeroPointError):
        ProjectivePoint.of([0, 0])


def test_unit_square_not_oka(square):
    start = time.perf_counter()
    report = classify(square)
    assert report.verdict == Verdict.NOT_OKA
    assert report.reason == Reason.GENERAL_POSITION_TOO_MANY
    assert not report.dominable_by_cn
    assert not report.c_connected
    assert not report.chain_c_connected
    assert report.oka_witness is None
    assert report.failing_subset is None
    assert time.perf_counter() - start < 1


def test_concurrent_lines_not_general(concurrent_lines):
    gp = is_general_position(concurrent_lines)
    assert gp.general is False
    assert gp.failing_subset == (1, 2, 3)
    report = classify(concurrent_lines)
    assert report.verdict == Verdict.NOT_OKA
    assert report.reason == Reason.NOT_GENERAL_POSITION
    assert report.failing_subset == (1, 2, 3)


def test_smallest_failing_subset():
    # forms 2, 3 and 4 are dependent, earlier triples are not
    arr = Arrangement.from_rows(2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1]])
    assert is_general_position(arr).failing_subset == (2, 3, 4)


@pytest.mark.parametrize('n', range(1, 6))
def test_coordinate_hyperplanes_oka(n):
    start = time.perf_counter()
    for count in range(0, n + 2):
        arr = coordinate_forms(n, count)
        report = classify(arr)
        assert report.verdict == Verdict.OKA
        assert report.reason == Reason.GENERAL_POSITION_FEW_FORMS
        assert report.dominable_by_cn and report.c_connected and report.chain_c_connected
        m = report.oka_witness
        assert m is not None
        for j, form in enumerate(arr.forms):
            assert form.compose(m).coefficients == VectorQ.unit(n + 1, j)
        profile = report.product_profile
        assert profile is not None
        if count == 0:
            assert profile.whole_projective_space
        else:
            assert (profile.punctured_factors, profile.plane_factors) == (count - 1, n + 1 - count)
    assert time.perf_counter() - start < 1


def test_witness_general_position():
    # three lines in general position in P^2, not coordinate
    arr = Arrangement.from_rows(2, [[1, 1, 0], [0, 1, 'i'], [1, 0, 1]])
    m = oka_witness(arr)
    for j, form in enumerate(arr.forms):
        pulled = form.compose(m).coefficients
        assert pulled.first_nonzero() == j
        assert all(not pulled[i] for i in range(len(pulled)) if i != j)


def test_witness_precondition(square):
    with pytest.raises(PreconditionError):
        oka_witness(square)


def test_product_profile_few_forms():
    arr = Arrangement.from_rows(3, [[1, 1, 0, 0], [0, 0, 1, 1]])
    profile = product_profile(arr)
    assert (profile.punctured_factors, profile.plane_factors, profile.whole_projective_space) == (1, 2, False)


def test_complement_membership(square):
    assert complement_membership(square, ProjectivePoint.of([1, 2, 3]))
    assert not complement_membership(square, ProjectivePoint.of([1, 1, 3]))
    with pytest.raises(LengthMismatchError):
        complement_membership(square, ProjectivePoint.of([1, 2]))


def test_report_invariants_enforced():
    with pytest.raises(ValueError):
        ClassificationReport(
            n=2,
            num_forms=4,
            verdict=Verdict.NOT_OKA,
            reason=Reason.GENERAL_POSITION_TOO_MANY,
            dominable_by_cn=True,
            c_connected=False,
            chain_c_connected=False,
        )


def test_report_json_round_trip(square):
    for arr in (square, coordinate_forms(3, 2)):
        report = classify(arr)
        again = ClassificationReport.model_validate_json(report.model_dump_json())
        assert again == report
        assert again.model_dump_json() == report.model_dump_json()


def test_witness_serialized_exactly():
    report = classify(Arrangement.from_rows(1, [[1, 1], [0, 2]]))
    assert report.model_dump(mode='json')['oka_witness'] == [['1', '-1/2'], ['0', '1/2']]
    assert isinstance(report.oka_witness, MatrixQ)


def test_general_position_matches_oracle():
    rng = np.random.default_rng(31415)
    for _ in range(200):
        arr, rows = random_arrangement(rng)
        assert is_general_position(arr).general == oracle_general_position(rows, arr.n)


def test_permutation_invariance(square):
    permuted = square.permuted([3, 1, 4, 2])
    assert classify(permuted).verdict == classify(square).verdict
    assert classify(permuted).reason == classify(square).reason


def test_classify_span(capfire: CaptureLogfire, square):
    classify(square)
    spans = capfire.exporter.exported_spans_as_dict()
    names = [s['name'] for s in spans]
    assert 'classify arrangement {n=} {num_forms=}' in names
    span = next(s for s in spans if s['name'] == 'classify arrangement {n=} {num_forms=}')
    assert span['attributes']['verdict'] == 'NotOka'


def test_witness_span(capfire: CaptureLogfire):
    oka_witness(coordinate_forms(2, 2))
    names = [s['name'] for s in capfire.exporter.exported_spans_as_dict()]
    assert 'coordinate change witness' in names


def test_classify_matches_oracle():
    rng = np.random.default_rng(27182)
    for _ in range(200):
        arr, rows = random_arrangement(rng)
        general = oracle_general_position(rows, arr.n)
        if general and arr.num_forms <= arr.n + 1:
            expected = Verdict.OKA, Reason.GENERAL_POSITION_FEW_FORMS
        elif general:
            expected = Verdict.NOT_OKA, Reason.GENERAL_POSITION_TOO_MANY
        else:
            expected = Verdict.NOT_OKA, Reason.NOT_GENERAL_POSITION
        report = classify(arr)
        assert (report.verdict, report.reason) == expected, rows
        assert (report.oka_witness is not None) == (report.verdict == Verdict.OKA)


@pytest.mark.parametrize(
    'factor', [2, Fraction(-1, 3), GaussianRational(1, 2), I, GaussianRational(Fraction(3, 4), -5)]
)
def test_classify_invariant_under_rescaling(factor):
    rng = np.random.default_rng(1618)
    for _ in range(40):
        arr, rows = random_arrangement(rng)
        j = int(rng.integers(len(rows)))
        scaled = [[factor * v for v in row] if i == j else row for i, row in enumerate(rows)]
        before, after = classify(arr), classify(Arrangement.from_rows(arr.n, scaled))
        assert after.verdict == before.verdict
        assert after.reason == before.reason
        assert after.failing_subset == before.failing_subset


def test_witness_on_random_general_position():
    rng = np.random.default_rng(4242)
    checked = 0
    while checked < 60:
        arr, rows = random_arrangement(rng)
        if arr.num_forms > arr.n + 1 or not oracle_general_position(rows, arr.n):
            continue
        m = oka_witness(arr)
        assert rank(m) == arr.n + 1
        for j, form in enumerate(arr.forms):
            assert form.compose(m).coefficients == VectorQ.unit(arr.n + 1, j)
        checked += 1
