"""Local bisections, the inverse semigroup, sectionability, extendibility."""

import pytest

from corpus import (
    cyclic_window,
    full_window,
    identity_window,
    sierpinski_pair_data,
    swap3_groupoid,
)
from groupoidkit.bisections import (
    EMPTY_BISECTION,
    check_extendible,
    compose_bisections,
    generate_semigroup,
    identity_bisection,
    inverse_semigroup_laws,
    is_sectionable,
    is_valid_bisection,
    is_window_bisection,
    left_translate,
    local_bisections,
    make_bisection,
    relative_inverse,
    w_bisections,
)
from groupoidkit.core import discrete_topology, pair_groupoid
from groupoidkit.errors import OutOfDomain


def swap3_data():
    G = swap3_groupoid()
    return full_window(G)


def swap_bisection(G):
    """The full-domain bisection applying the non-identity group element."""
    return make_bisection(
        {x: next(a for a in G.star(x) if not a.startswith("id:")) for x in G.objects}
    )


class TestBisectionBasics:
    def test_identity_bisection_is_valid(self):
        D = swap3_data()
        s = identity_bisection(D.G, D.G.objects)
        assert is_valid_bisection(D.G, D.t_objects, s)
        assert is_window_bisection(D, s)

    def test_mixture_with_clashing_shadow_rejected(self):
        D = swap3_data()
        G = D.G
        bad = make_bisection({"1": G.id_of["1"], "2": next(a for a in G.star("2") if not a.startswith("id:"))})
        # both points land on 1
        assert not is_valid_bisection(G, D.t_objects, bad)

    def test_domain_must_be_open(self):
        D = sierpinski_pair_data()
        s = make_bisection({"b": D.G.id_of["b"]})  # {b} is not open
        assert not is_valid_bisection(D.G, D.t_objects, s)


class TestComposeBisections:
    def test_identity_is_neutral(self):
        D = swap3_data()
        e = identity_bisection(D.G, D.G.objects)
        t = swap_bisection(D.G)
        assert compose_bisections(D.G, e, t) == t
        assert compose_bisections(D.G, t, e) == t

    def test_disjoint_shadow_gives_empty(self):
        G = pair_groupoid(["a", "b"])
        s = make_bisection({"a": G.id_of["a"]})
        t = make_bisection({"b": G.id_of["b"]})  # shadow misses dom s entirely
        assert compose_bisections(G, s, t) == EMPTY_BISECTION

    def test_swap_squared_is_identity(self):
        D = swap3_data()
        t = swap_bisection(D.G)
        assert compose_bisections(D.G, t, t) == identity_bisection(D.G, D.G.objects)

    def test_associative_exhaustively_on_small_instance(self):
        D = full_window(pair_groupoid(["a", "b"]))
        family = local_bisections(D.G, D.t_objects)
        for s in family:
            for t in family:
                st = compose_bisections(D.G, s, t)
                for u in family:
                    left = compose_bisections(D.G, st, u)
                    right = compose_bisections(D.G, s, compose_bisections(D.G, t, u))
                    assert left == right


class TestRelativeInverse:
    def test_identity_inverse(self):
        D = swap3_data()
        e = identity_bisection(D.G, D.G.objects)
        assert relative_inverse(D.G, e) == e

    def test_swap_is_self_inverse(self):
        D = swap3_data()
        t = swap_bisection(D.G)
        assert relative_inverse(D.G, t) == t

    def test_single_point_bisection(self):
        G = pair_groupoid(["a", "b"])
        s = make_bisection({"a": "a>b"})
        sp = relative_inverse(G, s)
        assert sp == make_bisection({"b": "b>a"})

    def test_involution_exhaustive(self):
        D = swap3_data()
        for s in w_bisections(D):
            assert relative_inverse(D.G, relative_inverse(D.G, s)) == s

    def test_defining_equations(self):
        D = swap3_data()
        for s in w_bisections(D):
            sp = relative_inverse(D.G, s)
            assert compose_bisections(D.G, compose_bisections(D.G, s, sp), s) == s
            assert compose_bisections(D.G, compose_bisections(D.G, sp, s), sp) == sp


class TestLeftTranslate:
    def test_identity_bisection_fixes_arrows(self):
        D = swap3_data()
        e = identity_bisection(D.G, D.G.objects)
        for g in D.G.arrows:
            assert left_translate(D.G, e, g) == g

    def test_identity_arrow_gives_section_value(self):
        D = swap3_data()
        t = swap_bisection(D.G)
        for x in D.G.objects:
            assert left_translate(D.G, t, D.G.id_of[x]) == t.as_dict()[x]

    def test_swap_translate_of_swap_is_identity(self):
        D = swap3_data()
        t = swap_bisection(D.G)
        g = next(a for a in D.G.arrows if not a.startswith("id:") and D.G.src[a] == "1")
        assert left_translate(D.G, t, g) == "id:1"

    def test_out_of_domain(self):
        G = pair_groupoid(["a", "b"])
        s = make_bisection({"a": G.id_of["a"]})
        with pytest.raises(OutOfDomain):
            left_translate(G, s, "a>b")  # target b outside dom s

    def test_translation_maps_opens_to_opens(self):
        # with the topology produced by a successful extension
        D = cyclic_window(4, 1)
        res = check_extendible(D)
        assert res.ok
        T = res.topology
        for s in w_bisections(D):
            m = s.as_dict()
            for U in T.opens():
                image = frozenset(
                    left_translate(D.G, s, g) for g in U if D.G.tgt[g] in m
                )
                assert T.is_open(image)


class TestWBisections:
    def test_identity_window_gives_identity_bisections(self):
        D = identity_window(swap3_groupoid())
        family = w_bisections(D)
        opens = D.t_objects.opens()
        assert len(family) == len(opens)
        for s in family:
            assert all(a.startswith("id:") for a in s.as_dict().values())

    def test_swap3_full_window_counts(self):
        D = swap3_data()
        family = w_bisections(D)
        fulls = [s for s in family if len(s.domain) == 3]
        assert len(fulls) == 4  # identity/swap on {1,2} x identity/flip at 3
        assert EMPTY_BISECTION in family

    def test_sierpinski_discontinuous_excluded(self):
        D = sierpinski_pair_data()
        family = w_bisections(D)
        # no member may hit a cross arrow: its shadow image {b} is not open
        for s in family:
            assert all(a.startswith("id:") for a in s.as_dict().values())


class TestSemigroup:
    def test_single_identity_seed(self):
        D = swap3_data()
        e = identity_bisection(D.G, D.G.objects)
        S = generate_semigroup(D.G, [e])
        assert S.elements == (e,)

    def test_swap3_closure_is_its_generator_family(self):
        D = swap3_data()
        family = w_bisections(D)
        S = generate_semigroup(D.G, family)
        assert set(S.elements) == set(family)  # window is the whole groupoid

    def test_laws_hold_exhaustively(self):
        for D in (swap3_data(), cyclic_window(4, 1), sierpinski_pair_data()):
            S = generate_semigroup(D.G, w_bisections(D))
            assert inverse_semigroup_laws(S) == []

    def test_relative_inverse_unique_on_small_instance(self):
        D = cyclic_window(4, 1)
        S = generate_semigroup(D.G, w_bisections(D))
        for s in S.elements:
            matches = [
                t
                for t in S.elements
                if S.multiply(S.multiply(s, t), s) == s and S.multiply(S.multiply(t, s), t) == t
            ]
            assert matches == [S.inverse(s)]


class TestSectionable:
    def test_identity_window_sectionable(self):
        assert is_sectionable(identity_window(swap3_groupoid()))

    def test_swap3_full_sectionable(self):
        assert is_sectionable(swap3_data())

    def test_sierpinski_cross_arrows_not_sectionable(self):
        assert not is_sectionable(sierpinski_pair_data())

    def test_agrees_with_bisection_search_on_small_instances(self):
        for D in (swap3_data(), sierpinski_pair_data(), cyclic_window(4, 1)):
            family = w_bisections(D)
            direct = all(
                any(s.as_dict().get(D.G.src[w]) == w for s in family)
                for w in D.window
            )
            assert is_sectionable(D) == direct


class TestExtendible:
    def test_whole_groupoid_with_discrete_topology(self):
        D = full_window(swap3_groupoid())
        res = check_extendible(D)
        assert res.ok
        assert res.topology.same_as(discrete_topology(D.G.arrows))

    def test_classical_group_case_c4(self):
        D = cyclic_window(4, 1)
        res = check_extendible(D)
        assert res.ok
        assert all(len(res.topology.min_open[a]) == 1 for a in D.G.arrows)

    def test_failure_reported_with_witness(self):
        from groupoidkit.holonomy import mobius_model

        res = check_extendible(mobius_model(3))
        assert not res.ok
        kinds = {k for (k, _) in res.failures}
        assert "window-subspace" in kinds


class TestClosureBudget:
    def test_overflow_guard_stops_oversized_closures(self):
        from groupoidkit.holonomy import mobius_model

        D = mobius_model(3)
        with pytest.raises(OverflowError):
            generate_semigroup(D.G, w_bisections(D), max_elements=50)
