import pytest
from hypothesis import given, strategies as st

from src.axioms import (
    SEMIRING_A, SEMIRING_D, SEMIRING_E, SEMIRING_ED, SEMIRING_INT, SEMIRING_LITERAL_PAIRS,
    axiom_suite, homomorphism_suite, sample_dim_element, sample_euler_dim, sample_literal_pair,
    sample_product_ed, sample_ring_e,
)
from src.errors import IdentityFailure, RejectedInput
from src.semiring import (
    DimElement, EulerDim, EulerRingE, Monomial, a_add, a_mul, a_sum, d_add, d_mul,
    d_normalize, d_prec, e_eval_chi, euler_part,
)

euler_dims = st.one_of(
    st.just(EulerDim.zero()),
    st.builds(EulerDim, st.integers(-20, 20), st.integers(0, 6)),
)
ring_e = st.builds(EulerRingE, st.integers(-20, 20), st.integers(-20, 20))
monomials = st.integers(0, 4).flatmap(
    lambda k: st.integers(k, k + 4).map(lambda l: Monomial(k, l)))
dim_elements = st.lists(monomials, max_size=4).map(d_normalize)


# 1. Semiring A

@given(euler_dims, euler_dims, euler_dims)
def test_a_distributes(x, y, z):
    assert a_mul(x, a_add(y, z)) == a_add(a_mul(x, y), a_mul(x, z))


@given(euler_dims, euler_dims, euler_dims)
def test_a_associative(x, y, z):
    assert a_add(a_add(x, y), z) == a_add(x, a_add(y, z))
    assert a_mul(a_mul(x, y), z) == a_mul(x, a_mul(y, z))


@given(euler_dims)
def test_a_zero_absorbs_and_units(x):
    assert a_mul(EulerDim.zero(), x) == EulerDim.zero()
    assert a_add(EulerDim.zero(), x) == x
    assert a_mul(EulerDim.one(), x) == x


def test_a_worked_values():
    assert a_add(EulerDim(1, 2), EulerDim(-1, 1)) == EulerDim(0, 2)
    assert a_mul(EulerDim(-1, 1), EulerDim(-1, 1)) == EulerDim(1, 2)
    assert a_sum([]) == EulerDim.zero()
    assert EulerDim.count(0) == EulerDim.zero()
    assert EulerDim.count(3) == EulerDim(3, 0)


def test_a_render_and_parse():
    assert EulerDim(1, 2).render() == "(1, 2)"
    assert EulerDim.zero().render() == "(0, ⊥)"
    assert EulerDim.parse("(0, ⊥)") == EulerDim.zero()
    assert EulerDim.parse("( -3 , 4 )") == EulerDim(-3, 4)
    assert EulerDim.from_json([0, "bot"]) == EulerDim.zero()
    assert EulerDim.from_json(EulerDim(2, 1).to_json()) == EulerDim(2, 1)


@pytest.mark.parametrize("raw", [[1, "bot"], [1.0, 0], [0, -1], [True, 0], [1, 2, 3]])
def test_a_rejects_malformed(raw):
    with pytest.raises(RejectedInput):
        EulerDim.from_json(raw)


def test_a_to_z_is_a_homomorphism():
    report = homomorphism_suite("euler part", SEMIRING_A, SEMIRING_INT, euler_part,
                                sample_euler_dim, trials=500, seed=1)
    assert report.ok, report.summary()


# 2. Semiring E

def test_e_relation_x_squared():
    x = EulerRingE(0, 1)
    assert x * x == EulerRingE(0, -1)
    assert x * (x + EulerRingE.one()) == EulerRingE.zero()


@given(ring_e, ring_e)
def test_e_chi_evaluation_is_multiplicative(x, y):
    assert e_eval_chi(x * y) == e_eval_chi(x) * e_eval_chi(y)
    assert e_eval_chi(x + y) == e_eval_chi(x) + e_eval_chi(y)


# 3. Semiring D

def test_monomial_needs_k_at_most_l():
    with pytest.raises(RejectedInput):
        Monomial(2, 1)


def test_d_keeps_only_maximal_monomials():
    small, big, side = Monomial(0, 0), Monomial(1, 1), Monomial(0, 2)
    assert d_prec(small, big)
    assert not d_prec(side, big) and not d_prec(big, side)
    assert d_normalize([small, big]) == DimElement((big,))
    assert d_normalize([small, big, side]).monomials == (side, big)


def test_d_parse_and_render():
    x = DimElement.parse("y^1 z^1 + y^0 z^0")
    assert x == DimElement((Monomial(1, 1),))
    assert x.render() == "y^1 z^1"
    assert DimElement.parse("0") == DimElement.zero()


def test_d_rejects_unsorted_antichain():
    with pytest.raises(RejectedInput):
        DimElement((Monomial(0, 0), Monomial(1, 1)))


@given(dim_elements, dim_elements, dim_elements)
def test_d_distributes(x, y, z):
    assert d_mul(x, d_add(y, z)) == d_add(d_mul(x, y), d_mul(x, z))


# 4. Randomized axiom suites

@pytest.mark.parametrize("spec,sampler", [
    (SEMIRING_A, sample_euler_dim),
    (SEMIRING_E, sample_ring_e),
    (SEMIRING_D, sample_dim_element),
    (SEMIRING_ED, sample_product_ed),
])
def test_axiom_suite_passes(spec, sampler):
    report = axiom_suite(spec, sampler, trials=2000, seed=3)
    assert report.ok, report.summary()
    report.raise_for_failure()


def test_literal_pairs_fail_zero_absorption():
    report = axiom_suite(SEMIRING_LITERAL_PAIRS, sample_literal_pair, trials=200, seed=3)
    assert not report.ok
    assert report.law == "zero_absorbs"
    x = report.witness[0]
    assert report.lhs == (0, x[1]) and report.rhs == (0, 0)
    with pytest.raises(IdentityFailure):
        report.raise_for_failure()
