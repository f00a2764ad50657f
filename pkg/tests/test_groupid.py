from __future__ import annotations

from sympy.combinatorics import Permutation

from diagram_maxgroups.groupid import (
    FINITE,
    FREE,
    UNKNOWN,
    Z_CROSS_FINITE,
    AbelianInvariants,
    abelian_coordinates,
    collapse_infinite_cyclic,
    simplify_group,
    subgroup_index,
    IdentifyHints,
    Verdict,
    abelianization,
    check_label_homomorphism,
    identify,
    permutation_label_assignment,
    render_verdict,
    smith_normal_form,
    todd_coxeter,
    verdict_to_dict,
)
from diagram_maxgroups.present import GroupPresentation, tietze_simplify

A, B = 0, 1

CYCLIC3 = GroupPresentation(("a",), (((A, 1),) * 3,))
S3 = GroupPresentation(
    ("s1", "s2"),
    (((A, 1), (A, 1)), ((B, 1), (B, 1)), ((A, 1), (B, 1)) * 3),
)
S3_LABELS = {"s1": Permutation([1, 0, 2]), "s2": Permutation([0, 2, 1])}


def test_smith_normal_form() -> None:
    assert smith_normal_form([[2, 0], [0, 3]]) == (1, 6)
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[0, 0]]) == (0,)
    assert smith_normal_form([]) == ()


def test_abelianization() -> None:
    assert abelianization(CYCLIC3) == AbelianInvariants(0, (3,))
    assert abelianization(GroupPresentation(("a", "b"), ())) == AbelianInvariants(2, ())
    commutator = GroupPresentation(("a", "b"), (((A, 1), (B, 1), (A, -1), (B, -1)),))
    assert abelianization(commutator) == AbelianInvariants(2, ())
    assert str(AbelianInvariants(1, (2,))) == "Z^1 × Z_2"
    assert str(AbelianInvariants(0, ())) == "1"


def test_todd_coxeter_orders() -> None:
    assert todd_coxeter(CYCLIC3).order == 3
    assert todd_coxeter(S3).order == 6
    assert todd_coxeter(GroupPresentation((), ())).order == 1


def test_todd_coxeter_gives_up_on_infinite_group() -> None:
    table = todd_coxeter(GroupPresentation(("a",), ()), max_cosets=50)

    assert not table.complete
    assert table.order is None


def test_label_homomorphism_on_s3() -> None:
    check = check_label_homomorphism(S3, S3_LABELS)

    assert check.valid
    assert check.image_order == 6
    bad = check_label_homomorphism(CYCLIC3, {"a": Permutation([1, 0])})
    assert not bad.valid
    assert bad.failed_relators == (0,)


def test_identify_free_trivial_and_finite() -> None:
    free = identify(GroupPresentation(("a", "b"), ()))
    assert (free.kind, free.rank) == (FREE, 2)
    assert identify(GroupPresentation((), ())).kind == FINITE
    v = identify(CYCLIC3)
    assert (v.kind, v.order) == (FINITE, 3)
    assert render_verdict(v) == "finite of order 3"


def test_identify_unknown_for_free_abelian_of_rank_two() -> None:
    commutator = GroupPresentation(("a", "b"), (((A, 1), (B, 1), (A, -1), (B, -1)),))

    assert identify(commutator).kind == UNKNOWN


def test_identify_symmetric_with_labels() -> None:
    v = identify(S3, IdentifyHints(symmetric_degree=3, labels=S3_LABELS))

    assert (v.kind, v.order, v.tag, v.certification) == (FINITE, 6, "S_3", "certified")
    assert render_verdict(v) == "S_3 (order 6, certified)"


def test_identify_symmetric_fails_on_wrong_order() -> None:
    v = identify(CYCLIC3, IdentifyHints(symmetric_degree=3, labels={"a": Permutation([1, 2, 0])}))

    assert v.kind == UNKNOWN


def test_z_cross_needs_quotient_choices() -> None:
    z = GroupPresentation(("a",), ())

    assert identify(z, IdentifyHints(symmetric_degree=1, z_cross=True, labels={"a": Permutation([0])})).kind == UNKNOWN
    v = identify(
        z,
        IdentifyHints(symmetric_degree=1, z_cross=True, labels={"a": Permutation([0])}, quotient_choices=("a",)),
    )
    assert (v.kind, v.certification) == (Z_CROSS_FINITE, "partial")
    assert render_verdict(v) == "consistent with Z×S_1 (partial)"


def test_render_verdicts() -> None:
    assert render_verdict(Verdict(FREE, rank=0)) == "trivial"
    assert render_verdict(Verdict(FREE, rank=1)) == "Z (free rank 1)"
    assert render_verdict(Verdict(FREE, rank=3)) == "free of rank 3"
    assert render_verdict(Verdict(FINITE, order=1)) == "trivial"
    assert render_verdict(Verdict(FINITE, order=2, tag="S_2", certification="certified")) == "S_2 (order 2, certified)"
    assert render_verdict(Verdict(UNKNOWN)) == "unknown"


def test_verdict_json_carries_evidence() -> None:
    payload = verdict_to_dict(identify(CYCLIC3))

    assert payload["kind"] == FINITE
    assert payload["order"] == 3
    assert payload["rendered"] == "finite of order 3"
    assert any("todd-coxeter" in line for line in payload["evidence"])


def test_labels_for_pair_generators(dclass) -> None:
    d = dclass("Pn", 3, 1)
    p = GroupPresentation(("a[0,0]",), ())
    labels = permutation_label_assignment(d, p)

    assert labels["a[0,0]"].is_Identity


def test_abelian_coordinates_of_rank_one_groups() -> None:
    assert abelian_coordinates(GroupPresentation(("a", "b"), (((A, 1), (B, -1), (B, -1)),))) in {(2, 1), (-2, -1)}
    assert abelian_coordinates(GroupPresentation(("a", "b"), ())) is None


def test_subgroup_index_in_s3() -> None:
    assert subgroup_index(S3, ((A, 1),)) == 3
    assert subgroup_index(CYCLIC3, ((A, 1),)) == 1


def test_collapse_to_one_generator_when_certified() -> None:
    z = GroupPresentation(("a", "b"), (((A, 1), (B, -1), (B, -1)),))
    collapsed = collapse_infinite_cyclic(z)

    assert collapsed is not None
    assert (len(collapsed.generators), collapsed.relators) == (1, ())


def test_collapse_refuses_without_certificate() -> None:
    commutator = GroupPresentation(("a", "b"), (((A, 1), (B, 1), (A, -1), (B, -1)),))
    trefoil = GroupPresentation(("a", "b"), (((A, 1), (A, 1), (B, -1), (B, -1), (B, -1)),))

    assert collapse_infinite_cyclic(commutator) is None
    assert collapse_infinite_cyclic(CYCLIC3) is None
    assert collapse_infinite_cyclic(trefoil, max_cosets=200) is None


def test_identify_infinite_cyclic_left_by_tietze_with_two_generators() -> None:
    # a = t^2, b = t^3 in Z
    z = GroupPresentation(
        ("a", "b"),
        (((A, 1), (A, 1), (A, 1), (B, -1), (B, -1)), ((A, 1), (B, 1), (A, -1), (B, -1))),
    )
    s = simplify_group(z)
    v = identify(z)

    assert len(tietze_simplify(z).generators) == 2
    assert (len(s.generators), s.relators) == (1, ())
    assert (v.kind, v.rank) == (FREE, 1)
