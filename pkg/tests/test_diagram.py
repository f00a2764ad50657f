from __future__ import annotations

import itertools
import random

import pytest

from diagram_maxgroups import diagram as dg
from diagram_maxgroups.acceptance import WORKED_A, WORKED_AB, WORKED_B
from diagram_maxgroups.diagram import PartitionError, TwistedElement


def test_worked_product_and_floating_component() -> None:
    a, b = dg.parse_partition(WORKED_A), dg.parse_partition(WORKED_B)
    ab, floats = dg.multiply_with_floats(a, b)

    assert ab == dg.parse_partition(WORKED_AB)
    assert floats == 1
    assert dg.format_partition(ab) == WORKED_AB


def test_format_is_canonical_block_order() -> None:
    a = dg.parse_partition("3'; 5 6; 1' 2' 6'; 2 3 4' 5'; 1 4")

    assert dg.format_partition(a) == WORKED_A
    assert str(a) == WORKED_A


def test_rank_and_non_transversal_counts() -> None:
    a = dg.parse_partition(WORKED_A)

    assert dg.rank(a) == 1
    assert dg.ntu(a) == 2
    assert dg.ntd(a) == 2
    assert dg.nt(a) == 4
    assert dg.dom(a) == frozenset({2, 3})
    assert dg.codom(a) == frozenset({4, 5})


def test_involution_swaps_rows() -> None:
    a = dg.parse_partition("1 2 1'; 2'")

    assert dg.format_partition(dg.involution(a)) == "1 1' 2'; 2"
    assert dg.involution(dg.involution(a)) == a


def test_identity_is_neutral() -> None:
    a = dg.parse_partition(WORKED_B)
    one = dg.identity(6)

    assert dg.multiply(one, a) == a
    assert dg.multiply(a, one) == a


def test_parse_rejects_missing_and_repeated_points() -> None:
    with pytest.raises(PartitionError):
        dg.parse_partition("1 2; 2'", 2)
    with pytest.raises(PartitionError):
        dg.parse_partition("1 1'; 1; 2 2'")
    with pytest.raises(PartitionError):
        dg.parse_partition("1 x'")


def test_multiply_rejects_degree_mismatch() -> None:
    with pytest.raises(PartitionError):
        dg.multiply(dg.identity(2), dg.identity(3))


def test_twisted_product_counts_floats() -> None:
    x = dg.parse_partition("1; 2; 1'; 2'")
    t = TwistedElement(0, x)

    assert dg.twisted_multiply(t, t) == TwistedElement(2, x)
    assert dg.twisted_power(t, 3) == TwistedElement(4, x)
    assert dg.twisted_multiply(dg.twisted_identity(2), t) == t
    assert str(TwistedElement(2, x)) == "2 | 1; 2; 1'; 2'"
    with pytest.raises(PartitionError):
        dg.twisted_power(t, 0)


def test_equivalence_helpers() -> None:
    assert dg.join_equivalences((0, 0, 1), (0, 1, 1)) == (0, 0, 0)
    assert dg.equivalence_leq((0, 0, 1), (0, 0, 0))
    assert not dg.equivalence_leq((0, 0, 0), (0, 0, 1))
    assert dg.equivalence_classes((0, 1, 0)) == (frozenset({1, 3}), frozenset({2}))
    assert dg.equivalence_from_classes(3, [{1, 3}, {2}]) == (0, 1, 0)
    assert dg.format_partition(dg.id_of_equivalence((0, 0, 1))) == "1 2 1' 2'; 3 3'"


def test_direct_sum_of_identities() -> None:
    assert dg.direct_sum(dg.identity(1), dg.identity(1)) == dg.identity(2)
    s = dg.direct_sum(dg.parse_partition("1; 1'"), dg.identity(1))
    assert dg.format_partition(s) == "1; 2 2'; 1'"


def test_blocks_and_transversals() -> None:
    a = dg.parse_partition("1 2 1'; 2'")

    assert dg.blocks(a) == (
        (frozenset({1, 2}), frozenset({1})),
        (frozenset(), frozenset({2})),
    )
    assert dg.transversals(a) == ((frozenset({1, 2}), frozenset({1})),)


def test_projection_checks() -> None:
    assert dg.is_projection(dg.identity(3))
    assert dg.is_projection(dg.parse_partition("1 1'; 2; 2'"))
    assert not dg.is_projection(dg.parse_partition("1 2 1'; 2'"))
    assert dg.is_idempotent(dg.parse_partition("1 2 1'; 2'"))
    assert not dg.is_idempotent(dg.parse_partition("1 2'; 2 1'"))


def test_idempotent_components_match_squaring_on_p2(handle) -> None:
    for x in handle("Pn", 2).elements():
        assert dg.idempotent_components(x).certified == dg.is_idempotent(x)


def _assoc_with_floats(a, b, c) -> None:
    ab, f_ab = dg.multiply_with_floats(a, b)
    bc, f_bc = dg.multiply_with_floats(b, c)
    left, f_left = dg.multiply_with_floats(ab, c)
    right, f_right = dg.multiply_with_floats(a, bc)

    assert left == right
    assert f_ab + f_left == f_bc + f_right


def test_product_is_associative_on_p2(handle) -> None:
    for a, b, c in itertools.product(handle("Pn", 2).elements(), repeat=3):
        _assoc_with_floats(a, b, c)


@pytest.mark.parametrize("n", [3, 4])
def test_product_is_associative_on_sampled_triples(handle, n: int) -> None:
    rng = random.Random(20 + n)
    elems = handle("Pn", n).elements()
    for _ in range(10_000):
        _assoc_with_floats(rng.choice(elems), rng.choice(elems), rng.choice(elems))


def test_twisted_product_is_associative(handle) -> None:
    rng = random.Random(7)
    elems = handle("Pn", 3).elements()
    for _ in range(2_000):
        x, y, z = (TwistedElement(rng.randrange(4), rng.choice(elems)) for _ in range(3))
        assert dg.twisted_multiply(dg.twisted_multiply(x, y), z) == dg.twisted_multiply(x, dg.twisted_multiply(y, z))


def test_involution_axioms_on_p3(handle) -> None:
    elems = handle("Pn", 3).elements()
    for a in elems:
        star = dg.involution(a)
        assert dg.involution(star) == a
        assert dg.multiply(dg.multiply(a, star), a) == a
        for b in elems:
            assert dg.involution(dg.multiply(a, b)) == dg.multiply(dg.involution(b), star)


def test_domain_and_range_projections_fix_the_element(handle) -> None:
    for a in handle("Pn", 3).elements():
        left, right = dg.d_projection(a), dg.r_projection(a)
        assert dg.is_projection(left) and dg.is_projection(right)
        assert dg.multiply(left, a) == a
        assert dg.multiply(a, right) == a


def test_projection_axioms_on_p3(handle) -> None:
    h = handle("Pn", 3)
    projections = h.projections()

    assert all(dg.is_projection(p) for p in projections)
    assert dg.identity(3) in projections
    for p in projections:
        for q in projections:
            # p q p is again a projection
            assert dg.is_projection(dg.multiply(dg.multiply(p, q), p))
        for a in h.elements():
            assert dg.is_projection(dg.multiply(dg.multiply(dg.involution(a), p), a))
