from __future__ import annotations

import pytest

from diagram_maxgroups import diagram as dg
from diagram_maxgroups.acceptance import BAND_P2, BAND_P3, UD_SQUARE_P3, UD_WITNESS_P3
from diagram_maxgroups.biorder import (
    LabelError,
    Square,
    all_singular_witnesses,
    basic_pairs,
    diamonds_from_projection_square,
    ehresmann_square,
    enumerate_linked_diamonds,
    enumerate_singular_squares,
    enumerate_singular_squares_brute,
    find_singularizers,
    is_coxeter_idempotent,
    is_linked_pair,
    is_lr_singular,
    is_nt_reducing,
    is_p_linked,
    is_rl_singular,
    is_ud_singular,
    label,
    label_prime,
    linked_pairs,
    linked_square,
    linked_square_singularizations,
    linked_triangles,
    loose_blocks_square,
    natural_order_leq,
    nt_reducing_square,
    projection_singularizations,
    square_from_corners,
    square_key,
)
from diagram_maxgroups.green import DClassError, f_set


def _square(n: int, texts: tuple[str, ...]) -> Square:
    return Square(*(dg.parse_partition(t, n) for t in texts))


def test_rectangular_bands_have_no_singularizer(handle) -> None:
    assert find_singularizers(handle("Pn", 2), _square(2, BAND_P2)) == []
    assert find_singularizers(handle("Pn", 3), _square(3, BAND_P3)) == []


def test_vertical_square_of_p3_has_the_printed_witness(handle) -> None:
    h = handle("Pn", 3)
    sq = _square(3, UD_SQUARE_P3)
    u = dg.parse_partition(UD_WITNESS_P3)
    witnesses = find_singularizers(h, sq)

    assert is_ud_singular(h, sq, u)
    assert any(w.orientation == "UD" and w.u == u for w in witnesses)
    assert all(w.orientation_class == "v" for w in witnesses)


def test_square_from_corners_validates_shape(dclass) -> None:
    d = dclass("Pn", 3, 1)
    e, f, g, h = (dg.parse_partition(t, 3) for t in UD_SQUARE_P3)

    assert square_from_corners(d, e, f, g, h) == Square(e, f, g, h)
    with pytest.raises(DClassError):
        square_from_corners(d, e, g, f, h)
    with pytest.raises(DClassError):
        square_from_corners(d, e, f, g, dg.identity(3))


def test_label_of_printed_idempotent() -> None:
    e = dg.parse_partition("1 4 4'; 2 2'; 3; 5 3' 5'; 1'")

    assert label_prime(e) == ((1, 4), (2, 2), (5, 3))
    assert label(e).array_form == [2, 0, 1]
    assert not is_coxeter_idempotent(e)


def test_label_undefined_on_rank_zero() -> None:
    with pytest.raises(LabelError):
        label(dg.parse_partition("1 2; 1' 2'"))


def test_coxeter_idempotent_swaps_neighbours() -> None:
    e = dg.parse_partition("1 2 1'; 3 3'; 2'")
    swap = dg.parse_partition("1 2'; 2 3 1'; 3'")

    assert label(e).is_Identity
    assert is_coxeter_idempotent(swap)


def test_labels_on_projections_and_stars(dclass) -> None:
    d = dclass("Pn", 4, 2)
    h = d.handle

    assert all(label(p).is_Identity for p in d.projections)
    assert all(label(h.star(e)) == ~label(e) for e in d.idempotents)


def test_natural_order_and_basic_pairs(handle) -> None:
    h = handle("Pn", 2)
    one = dg.identity(2)
    e = dg.parse_partition("1 2 1'; 2'")

    assert natural_order_leq(h, e, one)
    assert not natural_order_leq(h, one, e)
    assert (e, one) in basic_pairs(h)
    assert all(ef in h.idempotents() for ef in (h.product(x, y) for x, y in basic_pairs(h)))


def test_top_rank_has_no_singular_squares(dclass) -> None:
    assert enumerate_singular_squares(dclass("Pn", 3, 2)) == ()
    assert enumerate_singular_squares(dclass("Pn", 4, 3)) == ()


def test_singular_squares_are_witnessed(dclass) -> None:
    d = dclass("Pn", 3, 1)
    h = d.handle
    checks = {"LR": is_lr_singular, "UD": is_ud_singular}
    found = enumerate_singular_squares(d)

    assert found
    for w in found:
        assert not w.square.is_degenerate
        assert checks[w.orientation](h, w.square, w.u)
    assert len({square_key(d, w) for w in found}) == len(found)


def test_threaded_scan_matches_serial(dclass) -> None:
    d = dclass("Pn", 3, 1)

    assert enumerate_singular_squares(d, threads=3) == enumerate_singular_squares(d)


def test_constructive_scan_matches_brute_force(dclass) -> None:
    d = dclass("Pn", 3, 1)
    brute = {square_key(d, w) for w in enumerate_singular_squares_brute(d)}

    assert {square_key(d, w) for w in enumerate_singular_squares(d)} == brute


def test_transformation_squares_use_brute_force(dclass) -> None:
    d = dclass("Tn", 3, 2)

    assert enumerate_singular_squares(d) == enumerate_singular_squares_brute(d)


def test_linked_diamonds_are_p_linked(dclass) -> None:
    for r in range(3):
        d = dclass("Pn", 3, r)
        diamonds = enumerate_linked_diamonds(d)
        assert diamonds
        for dm in diamonds:
            assert is_p_linked(d, dm)
            assert is_linked_pair(d.handle, dm.p, d.projections[dm.s], d.projections[dm.u])
            assert dm.witnesses >= 1
        assert all(dm.is_triangle for dm in linked_triangles(diamonds))
        assert linked_pairs(diamonds) <= {(dm.s, dm.u) for dm in diamonds}


def test_linked_squares_are_singularised_vertically(dclass) -> None:
    d = dclass("Pn", 3, 1)
    h = d.handle
    for dm in enumerate_linked_diamonds(d):
        if dm.is_degenerate:
            continue
        sq = linked_square(d, dm)
        assert all(x in d.idempotent_index for x in sq.corners)
        for w in linked_square_singularizations(d, dm):
            assert is_ud_singular(h, w.square, w.u)


def test_product_singularised_squares_split_by_projection(dclass) -> None:
    d = dclass("Pn", 3, 1)
    h = d.handle
    lr = [w for w in all_singular_witnesses(d) if w.orientation == "LR"]

    assert lr
    for w in lr:
        for x in projection_singularizations(h, w):
            assert is_lr_singular(h, x.square, x.u)
        if h.star(w.u) == w.u:
            for dm, corner in zip(diamonds_from_projection_square(d, w), (w.square.f, w.square.h)):
                assert is_p_linked(d, dm)
                assert linked_square(d, dm).f == corner


def test_projection_helpers_reject_vertical_witness(dclass) -> None:
    d = dclass("Pn", 3, 1)
    ud = next(w for w in all_singular_witnesses(d) if w.orientation == "UD")

    with pytest.raises(DClassError):
        projection_singularizations(d.handle, ud)
    with pytest.raises(DClassError):
        diamonds_from_projection_square(d, ud)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2)])
def test_every_idempotent_outside_f_has_a_reducing_square(dclass, n: int, r: int) -> None:
    d = dclass("Pn", n, r)
    h = d.handle
    keep = set(f_set(d))
    for e in d.idempotents:
        if e in keep:
            continue
        w = nt_reducing_square(h, e)
        assert w is not None, dg.format_partition(e)
        assert w.square.h == e
        assert is_nt_reducing(h, w.square)


def test_ehresmann_square_is_rl_singular(handle) -> None:
    h = handle("Pn", 3)
    for e in h.idempotents():
        w = ehresmann_square(e)
        assert w.orientation == "RL"
        assert w.square.h == e
        assert is_rl_singular(h, w.square, w.u)


def test_loose_blocks_square_needs_two_loose_upper_blocks() -> None:
    p = dg.parse_partition("1 1'; 2; 3; 4 4'; 2'; 3'")
    w = loose_blocks_square(p)

    assert w is not None
    assert w.square.h == p
    assert w.orientation == "RL"
    assert loose_blocks_square(dg.parse_partition("1 1'; 2 2'; 3; 3'")) is None
