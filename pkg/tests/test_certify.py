import random

import pytest

from nilpow import (
    AlgebraSpec,
    Field,
    certify_generation,
    degree_split_check,
    derived_tower,
    fk_identity_check,
    generating_set,
    identity_check,
    lemma1_check,
    nilpotency_index,
    span,
    vec_from_word,
)
from nilpow.certify import random_lie_ideal
from nilpow.errors import BoundExceedsTruncation, NotALieIdeal


def test_nilpotency_index_k1_m2():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    rep = nilpotency_index(spec, 1)
    assert rep.n == 3
    assert rep.quotient_dims[:3] == [(1, 2), (2, 1), (3, 0)]
    assert all(q == 0 for d, q in rep.quotient_dims if d >= 3)
    assert rep.total_dim == 3


def test_nilpotency_index_commutative_case():
    # one generator: the first derived power is zero, so the quotient is the
    # whole algebra, nilpotent of index equal to the nil exponent
    spec = AlgebraSpec(m=1, nil=(4,), max_degree=8)
    rep = nilpotency_index(spec, 1)
    assert rep.n == 4
    assert rep.quotient_dims == [(1, 1), (2, 1), (3, 1)] + [(d, 0) for d in range(4, 9)]


def test_nilpotency_index_k3_m2():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=12)
    rep = nilpotency_index(spec, 3)
    assert rep.n == 11


def test_nilpotency_not_found_is_a_value():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=8)
    rep = nilpotency_index(spec, 3)
    assert rep.n is None and not rep.found


def test_nilpotency_monotone_in_k(suite_specs):
    for spec in suite_specs:
        tower = derived_tower(spec, 3)
        ns = [nilpotency_index(spec, k, tower).n for k in (1, 2, 3)]
        found = [n for n in ns if n is not None]
        assert found == sorted(found)
        # once an index is not found, deeper ones cannot be found either
        for a, b in zip(ns, ns[1:]):
            if a is None:
                assert b is None


def test_generating_set_i1():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=24)
    gens = generating_set(spec, 1, 11)
    assert len(gens) == 28  # dims of the first derived power over degrees 2..20
    assert all(max(g.degrees()) <= 20 for g in gens)
    tower = derived_tower(spec, 1)
    assert all(tower.level(1).contains(g) for g in gens)


def test_generating_set_i0_is_degree_one_basis():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=8)
    gens = generating_set(spec, 0, 3)
    assert gens == [vec_from_word(spec, (1,)), vec_from_word(spec, (2,))]


def test_generating_set_empty_when_derived_power_zero():
    spec = AlgebraSpec(m=1, nil=(4,), max_degree=8)
    assert generating_set(spec, 1, 4) == []


def test_generating_set_bound_exceeds_truncation():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=10)
    with pytest.raises(BoundExceedsTruncation):
        generating_set(spec, 1, 11)


def test_certify_verified_m2():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=24)
    cert = certify_generation(spec, 1)
    assert cert.verified
    assert cert.n == 11 and cert.bound == 20
    assert cert.dims_target == cert.dims_closure
    assert cert.reason is None


def test_certify_trivial_m1():
    spec = AlgebraSpec(m=1, nil=(4,), max_degree=8)
    cert = certify_generation(spec, 1)
    assert cert.verified
    assert cert.generators == []
    assert all(dim == 0 for _, dim in cert.dims_target)


def test_certify_inconclusive_small_degree():
    # at D=10 the nilpotency index n=11 is not yet visible
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=10)
    cert = certify_generation(spec, 1)
    assert cert.verdict == "INCONCLUSIVE"
    assert "not found" in cert.reason
    # at D=12 the index is found but the generation bound overshoots D
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=12)
    cert = certify_generation(spec, 1)
    assert cert.verdict == "INCONCLUSIVE"
    assert cert.n == 11
    assert "bound 20 exceeds max degree 12" in cert.reason


def test_certify_inconclusive_when_index_not_found():
    spec = AlgebraSpec(m=3, nil=(2, 2, 2), max_degree=8)
    cert = certify_generation(spec, 1)
    assert cert.verdict == "INCONCLUSIVE"
    assert "not found" in cert.reason


def test_certify_rejects_i_zero():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=8)
    with pytest.raises(ValueError):
        certify_generation(spec, 0)


def test_degree_split_property():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=24)
    rep = degree_split_check(spec, 1, 11)
    assert rep.passed and rep.checked > 0


def test_nilpotency_propagation(suite_specs):
    # once the quotient vanishes it stays vanished at every larger degree
    for spec in suite_specs:
        for k in (1, 2):
            rep = nilpotency_index(spec, k)
            if rep.n is None:
                continue
            assert all(q == 0 for d, q in rep.quotient_dims if d >= rep.n)


# -- lemma-1 containment -----------------------------------------------------


def test_lemma1_on_derived_powers():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=8)
    tower = derived_tower(spec, 2)
    for i in (1, 2):
        rep = lemma1_check(spec, tower.level(i))
        assert rep.passed


def test_lemma1_on_random_ideals(suite_specs):
    rng = random.Random(42)
    for spec in suite_specs:
        for _ in range(3):
            rep = lemma1_check(spec, random_lie_ideal(spec, rng))
            assert rep.passed


def test_lemma1_vacuous_on_zero():
    from nilpow import Subspace

    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    rep = lemma1_check(spec, Subspace(spec))
    assert rep.passed


def test_lemma1_rejects_non_ideal():
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    not_ideal = span(spec, [vec_from_word(spec, (1, 2))])  # xy alone is no Lie ideal
    with pytest.raises(NotALieIdeal):
        lemma1_check(spec, not_ideal)


# -- fk identities -----------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2])
def test_fk_identity_suite(k):
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=12)
    rep = fk_identity_check(spec, k, trials=50, seed=7)
    assert rep.passed and rep.trials == 50 and rep.seed == 7


def test_fk_k3_m3():
    spec = AlgebraSpec(m=3, nil=(2, 2, 2), max_degree=8)
    rep = fk_identity_check(spec, 3, trials=20, seed=1)
    assert rep.passed


def test_identity_check_fp_and_q():
    for field in (Field.prime(32003), Field.rationals()):
        spec = AlgebraSpec(m=2, nil=(3, 3), field=field, max_degree=8)
        rep = identity_check(spec, trials=30, seed=3)
        assert rep.passed
