from __future__ import annotations

import pytest

from diagram_maxgroups import diagram as dg
from diagram_maxgroups.green import (
    DClassError,
    d_related,
    dclass_data,
    f_set,
    from_dict,
    h_class_idempotent,
    h_related,
    principal_ideal_oracle,
    r_related,
    l_related,
    sandwich_set,
    strata_table,
    stratum_projections,
    to_dict,
)
from diagram_maxgroups.monoids import AdjacencySemigroup


def test_top_class_counts(dclass) -> None:
    d3 = dclass("Pn", 3, 2)
    d4 = dclass("Pn", 4, 3)

    assert (len(d3.projections), len(d3.idempotents)) == (6, 18)
    assert (len(d4.projections), len(d4.idempotents)) == (10, 34)


def test_rank_zero_of_p2_is_a_band(dclass) -> None:
    d = dclass("Pn", 2, 0)

    assert len(d.elements) == 4
    assert set(d.idempotents) == set(d.elements)
    assert len(d.projections) == 2
    assert d.row_count == d.column_count == 2


def test_brauer_rank_zero_square_band(dclass) -> None:
    d = dclass("Brauer", 4, 0)

    assert (len(d.projections), len(d.idempotents)) == (3, 9)


def test_friendly_pairs_index_group_h_classes(dclass) -> None:
    d = dclass("Pn", 3, 1)
    h = d.handle

    assert len(d.friendly) == len(d.idempotents)
    for i, j in d.friendly:
        e = h.product(d.projections[i], d.projections[j])
        assert d.edge(e) == (i, j)
        assert d.idempotent_at(i, j) == e


def test_key_relations_match_principal_ideals_on_p2(handle) -> None:
    h = handle("Pn", 2)
    rights = principal_ideal_oracle(h, "R")
    lefts = principal_ideal_oracle(h, "L")

    for a in h.elements():
        for b in h.elements():
            assert (rights[a] == rights[b]) == r_related(h, a, b)
            assert (lefts[a] == lefts[b]) == l_related(h, a, b)
            assert d_related(h, a, b) == (dg.rank(a) == dg.rank(b))
    with pytest.raises(DClassError):
        principal_ideal_oracle(h, "J")


def test_h_related_projection_is_reflexive_only(dclass) -> None:
    d = dclass("Pn", 3, 2)
    h = d.handle
    p, q = d.projections[0], d.projections[1]

    assert h_related(h, p, p)
    assert not h_related(h, p, q)


def test_sandwich_set_of_an_idempotent_with_itself(handle) -> None:
    h = handle("Pn", 2)
    e = dg.parse_partition("1 2 1'; 2'")

    assert sandwich_set(h, e, e) == (e,)
    with pytest.raises(DClassError):
        sandwich_set(h, e, dg.parse_partition("1 2'; 2 1'"))


def test_strata_table_sums_to_idempotent_count(dclass) -> None:
    d = dclass("Pn", 3, 1)
    table = strata_table(d)

    assert int(table.to_numpy().sum()) == len(d.idempotents)
    assert len(stratum_projections(d, 0)) == 1
    assert len(stratum_projections(d, 1)) == 6


def test_f_set_keeps_p1_and_zero_strata(dclass) -> None:
    d = dclass("Pn", 3, 1)
    h = d.handle
    kept = set(f_set(d))

    assert set(stratum_projections(d, 1)) <= kept
    assert all(0 in h.nt_stats(e) for e in kept - set(stratum_projections(d, 1)))


def test_h_class_idempotent_for_unfriendly_pair(dclass) -> None:
    d = dclass("Pn", 3, 1)
    p = d.projections[0]
    unfriendly = [q for q in d.projections if not d.is_friendly(p, q)]

    assert h_class_idempotent(d, p, p) == p
    assert unfriendly
    assert h_class_idempotent(d, p, unfriendly[0]) is None
    with pytest.raises(DClassError):
        h_class_idempotent(d, p, dg.identity(3))


def test_json_round_trip(dclass) -> None:
    d = dclass("Pn", 3, 1)
    back = from_dict(d.handle, to_dict(d))

    assert back.elements == d.elements
    assert back.idempotents == d.idempotents
    assert back.projections == d.projections
    assert back.friendly == d.friendly


def test_json_rejects_other_version(dclass) -> None:
    d = dclass("Pn", 2, 1)
    payload = to_dict(d)
    payload["version"] = 0

    with pytest.raises(DClassError):
        from_dict(d.handle, payload)


def test_transformation_class_uses_kernel_and_image_keys(dclass) -> None:
    d = dclass("Tn", 3, 2)

    assert not d.is_star
    assert d.projections == ()
    assert d.row_count == 3
    assert d.column_count == 3
    assert len(d.idempotents) == 6


def test_adjacency_nonzero_class() -> None:
    h = AdjacencySemigroup.from_edges([("a", "b"), ("b", "c"), ("a", "c")])
    d = dclass_data(h, 1)

    assert len(d.elements) == 9
    assert len(d.projections) == 3
    assert len(d.friendly) == 9
    with pytest.raises(DClassError):
        dclass_data(h, 0)


def test_empty_class_is_rejected(handle) -> None:
    with pytest.raises(DClassError):
        dclass_data(handle("Brauer", 3), 2)
