import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from z4scx.analysis import (
    BinaryCode,
    ab_condition,
    analyze,
    dual_distance_oracle,
    gray_image,
    gray_linear_exhaustive,
    gray_linear_pairtest,
    griesmer_defect,
    is_minimal_binary,
    is_projective_columns,
    is_projective_generator,
    plotkin_check,
)
from z4scx.codegen import DefiningSet, build_defining_set, generate_code
from z4scx.simplicial import parse_subset
from z4scx.spectra import WeightDistribution, lee_spectrum_bruteforce
from z4scx.verify import parameter_space


def code_of(family, m, a, b, c):
    A, B, C = (parse_subset(t, m) for t in (a, b, c))
    return generate_code(build_defining_set(family, m, A, B, C))


def WD(d):
    return WeightDistribution.from_mapping(d)


# --------------------------------------------------------------- projectivity


def test_f2_example_is_projective():
    A, B, C = (parse_subset(t, 6) for t in ("{5}", "{1,2,3,4}", "{2,3,4,6}"))
    assert is_projective_columns(build_defining_set("f2", 6, A, B, C))


def test_all_even_columns_not_projective():
    for A, B, C in parameter_space("f1", 3):
        if not len(A):
            assert not is_projective_columns(build_defining_set("f1", 3, A, B, C))


def test_c_equals_a_example_not_projective():
    code = code_of("f1", 4, "{2,3}", "{3,4}", "{2,3}")
    assert not is_projective_columns(code.defining_set)
    assert not is_projective_generator(code.generator)


def test_dual_of_full_space_is_trivial():
    code = generate_code(DefiningSet.from_columns(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert dual_distance_oracle(code) is None


def test_dual_oracle_small_projective_example():
    code = code_of("f2", 4, "{2,3}", "{4}", "{1}")
    assert code.n == 6
    assert dual_distance_oracle(code) >= 3
    assert is_projective_columns(code.defining_set)


def test_dual_oracle_length_cap():
    code = code_of("f1", 4, "{2,3}", "{3,4}", "{2,3}")
    with pytest.raises(ValueError):
        dual_distance_oracle(code)


def test_dual_oracle_repeated_column():
    # two equal columns give the dual word (1, 3, 0...) of Lee weight 2
    code = generate_code(DefiningSet.from_columns(2, [[1, 0], [3, 0], [0, 1]]))
    assert dual_distance_oracle(code) == 2


@st.composite
def small_defining_sets(draw):
    m = draw(st.integers(1, 3))
    cols = draw(st.lists(st.lists(st.integers(0, 3), min_size=m, max_size=m), min_size=1, max_size=6))
    return DefiningSet.from_columns(m, cols)


@given(small_defining_sets())
def test_column_criterion_matches_dual_oracle(D):
    code = generate_code(D)
    dual = dual_distance_oracle(code)
    assert is_projective_columns(D) == (dual is None or dual >= 3)
    assert is_projective_generator(code.generator) == is_projective_columns(D)


# -------------------------------------------------------------------- Plotkin


@pytest.mark.parametrize(
    "n,size,d,bound,optimal",
    [(28, 32, 28, 28, True), (16, 32, 16, 16, True), (14, 32, 13, 14, False)],
)
def test_plotkin_examples(n, size, d, bound, optimal):
    assert plotkin_check(n, size, d) == (bound, optimal)


def test_plotkin_needs_two_words():
    with pytest.raises(ValueError):
        plotkin_check(4, 1, None)


# ---------------------------------------------------------------- Gray images


def test_gray_image_sixteen_four_six():
    image = gray_image(code_of("f1", 3, "{3}", "{3}", "{1,2}"))
    assert image.linear
    assert image.params() == (16, 4, 6)
    assert image.spectrum == WD({0: 1, 6: 2, 8: 7, 10: 6})
    assert is_minimal_binary(image)


def test_gray_image_of_trivial_code():
    code = generate_code(DefiningSet.from_columns(2, [[0, 0]]))
    image = gray_image(code)
    assert image.n == 2 and image.size == 1 and image.linear


def test_gray_image_fifty_two_five_twenty_five():
    image = gray_image(code_of("f3", 4, "{1}", "{1}", "{2}"))
    assert image.params() == (52, 5, 25)
    assert image.spectrum == WD({0: 1, 25: 8, 26: 8, 27: 8, 28: 4, 32: 3})


def test_gray_image_fifty_two_five_twenty_four_is_minimal():
    image = gray_image(code_of("f3", 4, "{1}", "{2}", "{3}"))
    assert image.params() == (52, 5, 24)
    assert is_minimal_binary(image)


def test_pairtest_examples():
    assert not gray_linear_pairtest(code_of("f1", 4, "{2,3}", "{3,4}", "{2,3}"))
    assert gray_linear_pairtest(code_of("f3", 3, "{1}", "{2}", "{3}"))


def test_pairtest_matches_exhaustive_oracle():
    for family in ("f1", "f2", "f3"):
        for m in (2, 3):
            for A, B, C in parameter_space(family, m):
                code = generate_code(build_defining_set(family, m, A, B, C))
                if code.size <= 256:
                    assert gray_linear_pairtest(code) == gray_linear_exhaustive(code)
                    assert gray_linear_pairtest(code) == gray_image(code).linear


@given(st.sampled_from(list(parameter_space("f1", 3))))
def test_linear_image_dimension_and_spectrum(params):
    A, B, C = params
    code = generate_code(build_defining_set("f1", 3, A, B, C))
    image = gray_image(code)
    if image.linear:
        assert image.dimension == 2 * code.k1 + code.k2
        assert image.spectrum == lee_spectrum_bruteforce(code)


# ------------------------------------------------------------------ minimality


def test_explicit_cover_is_not_minimal():
    words = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], dtype=np.uint8)
    assert not is_minimal_binary(BinaryCode.from_words(words))


def test_minimality_rejects_nonlinear():
    with pytest.raises(ValueError):
        is_minimal_binary(BinaryCode.from_words(np.array([[1, 0], [0, 1]], dtype=np.uint8)))


@pytest.mark.parametrize(
    "spectrum,expected",
    [
        ({6: 2, 8: 7, 10: 6}, True),
        ({1: 1, 2: 1}, False),
        ({25: 8, 26: 8, 27: 8, 28: 4, 32: 3}, True),
    ],
)
def test_ab_condition_examples(spectrum, expected):
    assert ab_condition(spectrum) is expected
    assert ab_condition(WD({0: 1, **spectrum})) is expected


def test_ab_condition_trivial():
    with pytest.raises(ValueError):
        ab_condition({0: 1})


def test_ab_implies_minimal():
    for family in ("f1", "f3"):
        for A, B, C in parameter_space(family, 3):
            code = generate_code(build_defining_set(family, 3, A, B, C))
            image = gray_image(code)
            if image.linear and image.size > 1 and ab_condition(image.spectrum):
                assert is_minimal_binary(image)


# -------------------------------------------------------------------- Griesmer


@pytest.mark.parametrize("n,k,d,defect", [(7, 3, 4, 0), (8, 3, 4, 1), (28, 4, 14, 1)])
def test_griesmer_examples(n, k, d, defect):
    assert griesmer_defect(n, k, d) == defect


def test_griesmer_rejects_nonpositive():
    with pytest.raises(ValueError):
        griesmer_defect(4, 0, 2)
    with pytest.raises(ValueError):
        griesmer_defect(4, 2, 0)


# ---------------------------------------------------------------------- report


def test_report_fields_and_json():
    code = code_of("f1", 3, "{3}", "{3}", "{1,2}")
    report = analyze(code)
    data = json.loads(report.to_json())
    for key in ("projective", "plotkin_bound", "plotkin_optimal", "gray_linear",
                "gray_dimension", "minimal", "ab", "griesmer_defect"):
        assert key in data
    assert data["gray_linear"] and data["minimal"] and data["gray_dimension"] == 4
    assert report.plotkin_bound == 16 * 8 // 15


def test_report_plotkin_optimal_example():
    report = analyze(code_of("f1", 4, "{2,3}", "{3,4}", "{2,3}"))
    assert report.plotkin_optimal and report.plotkin_bound == 16
    assert report.gray_linear is False and report.minimal is None


def test_report_is_stable():
    code = code_of("f2", 4, "{2,3}", "{4}", "{1}")
    assert analyze(code).to_json() == analyze(code).to_json()
