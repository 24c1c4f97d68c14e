import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilpow import AlgebraSpec, concat, dim_component, format_word, normal_words, parse_word, word_index
from nilpow.errors import DegreeOutOfRange, NotNormal, TruncationOverflow
from nilpow.words import is_normal

from dense_oracle import brute_normal_words


def spec_of(m, nil, d=8):
    return AlgebraSpec(m=m, nil=tuple(nil), max_degree=d)


def test_single_generator_square_zero():
    s = spec_of(1, (2,))
    assert normal_words(s, 1) == ((1,),)
    assert normal_words(s, 2) == ()


def test_two_generator_degree_three():
    s = spec_of(2, (2, 2))
    ws = normal_words(s, 3)
    assert ws == ((1, 2, 1), (2, 1, 2))  # xyx, yxy
    assert dim_component(s, 3) == 2


def test_three_generator_degree_four_count():
    s = spec_of(3, (2, 2, 2))
    assert dim_component(s, 4) == 24 == 3 * 2**3


@pytest.mark.parametrize("m,nil", [(2, (2, 2)), (2, (3, 3)), (3, (2, 2, 2)), (1, (4,)), (3, (2, 3, 1))])
def test_counts_match_brute_force(m, nil):
    s = spec_of(m, nil, d=6)
    for d in range(1, 7):
        assert list(normal_words(s, d)) == brute_normal_words(m, nil, d)


def test_degree_out_of_range():
    s = spec_of(2, (2, 2), d=4)
    with pytest.raises(DegreeOutOfRange):
        normal_words(s, 5)
    with pytest.raises(DegreeOutOfRange):
        normal_words(s, 0)


def test_concat_examples():
    s = spec_of(2, (2, 2))
    assert concat(s, (1, 2), (1, 2, 1)) == (1, 2, 1, 2, 1)  # xy * xyx
    assert concat(s, (2, 1), (1, 2, 1)) is None  # yx * xyx -> xx run
    s3 = spec_of(2, (3, 3))
    assert concat(s3, (1, 1), (1, 2)) is None  # xx * xy -> xxx run


def test_concat_truncation_overflow():
    s = spec_of(2, (2, 2), d=4)
    with pytest.raises(TruncationOverflow):
        concat(s, (1, 2, 1), (2, 1))


def test_word_index_examples():
    s = spec_of(2, (2, 2))
    assert word_index(s, (1, 2, 1)) == (3, 0)
    assert word_index(s, (2, 1, 2)) == (3, 1)
    s1 = spec_of(1, (3,))
    assert word_index(s1, (1, 1)) == (2, 0)
    with pytest.raises(NotNormal):
        word_index(s, (1, 1))


def test_word_index_round_trip():
    s = spec_of(3, (2, 2, 2), d=5)
    for d in range(1, 6):
        for i, w in enumerate(normal_words(s, d)):
            assert word_index(s, w) == (d, i)


def test_dead_generator_excluded():
    s = spec_of(2, (1, 2))
    assert s.dead_generators == (1,)
    for d in range(1, 4):
        assert all(1 not in w for w in normal_words(s, d))
    assert dim_component(s, 1) == 1


def test_alternating_dims_are_two():
    s = spec_of(2, (2, 2), d=12)
    for d in range(1, 13):
        assert dim_component(s, d) == 2


@st.composite
def words_triple(draw):
    m = draw(st.integers(2, 3))
    nil = tuple(draw(st.integers(2, 3)) for _ in range(m))
    s = AlgebraSpec(m=m, nil=nil, max_degree=12)
    ws = []
    for _ in range(3):
        d = draw(st.integers(1, 4))
        basis = normal_words(s, d)
        ws.append(basis[draw(st.integers(0, len(basis) - 1))])
    return s, ws


@given(words_triple())
def test_concat_associativity_with_zero_absorption(sw):
    s, (u, v, w) = sw
    uv = concat(s, u, v)
    vw = concat(s, v, w)
    left = concat(s, uv, w) if uv is not None else None
    right = concat(s, u, vw) if vw is not None else None
    assert left == right


@given(words_triple())
def test_concat_matches_full_scan(sw):
    s, (u, v, _) = sw
    got = concat(s, u, v)
    expect = u + v if is_normal(s, u + v) else None
    assert got == expect


def test_format_and_parse_word():
    s = spec_of(2, (2, 2))
    assert format_word(s, (1, 2, 1)) == "xyx"
    assert format_word(s, (1, 2, 1), compact=False) == "x1.x2.x1"
    assert parse_word(s, "xyx") == (1, 2, 1)
    assert parse_word(s, "x1.x2.x1") == (1, 2, 1)
    with pytest.raises(NotNormal):
        parse_word(s, "xxy")
