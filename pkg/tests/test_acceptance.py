"""The ten acceptance criteria, each printing one PASS/FAIL line."""

import random
from collections import Counter
from fractions import Fraction

from oracles import bracket_by_walking, knot_quandle_colorings

from vsg import generate as gen
from vsg.code import Passage, canonical_key
from vsg.group import abelianization, count_homs, symmetric_group, tietze_simplify, wirtinger
from vsg.laurent import SIGMA, LaurentPoly
from vsg.links import VirtualLink, f_poly, knot_link, linking_number, tg, tg_invariants, tg_linking
from vsg.moves import RIGID, apply_move, insertion_sites, replay
from vsg.normalize import normal_form_violations, normalize_forbidden
from vsg.quandle import (
    brute_force_colorings,
    count_colorings,
    dihedral_structure,
    gcd_valence,
    shipped_structures,
    validate_vqs,
)
from vsg.realize import extract_code, realize
from vsg.search import EQUIVALENT, SearchConfig, search_equivalent, verify_witness
from vsg.yamada import bouquet_value, graph_eval, normalize, yamada

CLASSICAL = ("I", "II", "III", "IV", "V", "VI")


def test_1_yamada_base_cases(criterion):
    with criterion(1, limit=1.0) as c:
        for n in range(6):
            assert graph_eval(1, [(0, 0)] * n) == -((-SIGMA) ** n)
            assert bouquet_value(n) == -((-SIGMA) ** n)
        assert graph_eval(0, []) == LaurentPoly.constant(1)
        assert graph_eval(1, []) == LaurentPoly.constant(-1)
        c.detail = "B_0..B_5, empty graph, single vertex"


def test_2_yamada_theta(criterion):
    with criterion(2, limit=1.0) as c:
        # Hand deletion-contraction: theta/e is B_2 and theta-e is a circle,
        # so R = -(sigma^2) + sigma = -A^2 - A - 2 - A^-1 - A^-2.
        expected = LaurentPoly({2: -1, 1: -1, 0: -2, -1: -1, -2: -1})
        assert expected == SIGMA - SIGMA ** 2
        assert yamada(gen.theta()) == expected
        c.detail = f"R(theta) = {expected.to_text()}"


def _random_insertion(rng, code, move):
    sites = [s for s in insertion_sites(code, {move}) if s.move == move]
    return rng.choice(sites) if sites else None


def test_3_yamada_move_invariance(criterion):
    rng = random.Random(3)
    checked = Counter()
    with criterion(3, limit=60.0) as c:
        for _ in range(100):
            code = gen.random_code(rng, max_vertices=3, max_crossings=6)
            r = yamada(code)
            site = _random_insertion(rng, code, "I")
            after = apply_move(code, site)
            assert yamada(after) == r.shift(2 * site["sign"])
            checked["I"] += 1
            if code.crossing_count() <= 4:
                after = apply_move(code, _random_insertion(rng, code, "II"))
                assert yamada(after) == r
                checked["II"] += 1
            small = [v for v in code.vertices if code.degree(v) + code.crossing_count() <= 7]
            if small:
                v = rng.choice(small)
                sites = [s for s in insertion_sites(code, {"IV"}) if s["vertex"] == v]
                if sites:
                    assert yamada(apply_move(code, rng.choice(sites))) == r
                    checked["IV"] += 1
            if code.crossing_count() <= 3:
                planted = gen.plant_triangle(rng, code)
                r_planted = yamada(planted)
                moved, _ = gen.random_walk(rng, planted, {"III"}, 1)
                assert moved != planted
                assert yamada(moved) == r_planted
                checked["III"] += 1
            walk, _ = gen.random_walk(rng, code, RIGID, rng.randint(1, 12), max_crossings=7)
            assert normalize(yamada(walk), strict=False) == normalize(r, strict=False)
            checked["walk"] += 1
        c.detail = "checked " + ", ".join(f"{k}={v}" for k, v in sorted(checked.items()))


def test_4_realization_round_trip(criterion):
    rng = random.Random(4)
    with criterion(4, limit=10.0) as c:
        for _ in range(200):
            code = gen.random_code(rng, max_vertices=3, max_crossings=6)
            assert extract_code(realize(code)) == code
        c.detail = "200 random codes"


def test_5_forbidden_normalization(criterion):
    rng = random.Random(5)
    with criterion(5, limit=10.0) as c:
        for _ in range(50):
            code = gen.random_code(rng, max_vertices=3, max_crossings=8)
            for level in ("viii", "pliable"):
                assert normal_form_violations(normalize_forbidden(code, level), level) == []
        c.detail = "50 codes at both levels, postconditions via arrow_sets"


def _group_fingerprint(code, s3):
    p = tietze_simplify(wirtinger(code))
    return abelianization(p), count_homs(p, s3)


def test_6_fundamental_group(criterion):
    rng = random.Random(6)
    s3 = symmetric_group(3)
    with criterion(6, limit=30.0) as c:
        p = tietze_simplify(wirtinger(gen.theta()))
        assert (len(p.generators), len(p.relators)) == (2, 0)
        assert abelianization(p).free_rank == 2 and abelianization(p).torsion == ()
        assert count_homs(p, s3) == 36
        for _ in range(50):
            code = gen.random_code(rng, max_vertices=3, max_crossings=4)
            walk, _ = gen.random_walk(rng, code, CLASSICAL, rng.randint(1, 8), max_crossings=8)
            assert _group_fingerprint(walk, s3) == _group_fingerprint(code, s3)
        c.detail = "theta: 2 gens, 0 rels, Z^2, 36 homs; 50 move sequences"


def test_7_quandle_colorings(criterion):
    rng = random.Random(7)
    structures = shipped_structures()
    with criterion(7, limit=60.0) as c:
        for s in structures.values():
            assert validate_vqs(s).ok
        checks = 0
        while checks < 50:
            code = gen.random_code(rng, max_vertices=3, max_crossings=4)
            d = gcd_valence(code)
            usable = [s for s in structures.values() if validate_vqs(s, d).ok]
            walk, _ = gen.random_walk(rng, code, CLASSICAL, rng.randint(1, 6), max_crossings=7)
            for s in usable:
                base = count_colorings(code, s)
                assert {count_colorings(code, s, variant=k) for k in range(10)} == {base}
                assert count_colorings(walk, s) == base
            checks += 1
        dihedral = dihedral_structure()
        counts = {}
        for name in ("unknot", "trefoil"):
            code = gen.NAMED[name]()
            counts[name] = count_colorings(code, dihedral)
            assert counts[name] == brute_force_colorings(code, dihedral)
            assert counts[name] == knot_quandle_colorings(code.passages["e"], dihedral.op)
        assert counts == {"unknot": 3, "trefoil": 9}
        c.detail = f"{len(structures)} structures, 50 codes x 10 realizations, dihedral {counts}"


def test_8_tg(criterion):
    rng = random.Random(8)
    with criterion(8, limit=60.0) as c:
        t = tg(gen.theta())
        assert sum(t.values()) == 9
        assert {link.size: n for link, n in t.items()} == {1: 3, 0: 6}
        assert all(not comp for link in t for comp in link.components)
        one = VirtualLink(((Passage("c", "o", 1),), (Passage("c", "u", 1),)))
        assert abs(linking_number(one, 0, 1)) == Fraction(1, 2)
        for code in (gen.virtual_hopf(),):
            (link,) = tg(code)
            assert abs(linking_number(link, 0, 1)) == Fraction(1, 2)
        for _ in range(20):
            code = gen.random_code(rng, max_vertices=3, max_crossings=5)
            inv, lk = tg_invariants(code), tg_linking(code)
            for moves in ({"VI*"}, {"VII*"}):
                moved, _ = gen.random_walk(rng, code, moves, 4)
                assert tg_invariants(moved) == inv
            moved, _ = gen.random_walk(rng, code, {"VIII*"}, 6)
            assert tg_linking(moved) == lk
        c.detail = "|T(theta)| = 9 {unknot x3, empty x6}; lk = 1/2; VI*/VII*/VIII* mechanism"


def test_9_virtual_vs_classical(criterion):
    with criterion(9, limit=1.0) as c:
        polys = {}
        for name in ("virtual-trefoil", "unknot", "trefoil"):
            link = knot_link(gen.NAMED[name]())
            f = f_poly(link)
            w = link.writhe()
            oracle = bracket_by_walking(list(link.components)) * LaurentPoly.monomial(-3 * w, (-1) ** (w % 2))
            assert f == oracle
            polys[name] = f
        assert polys["virtual-trefoil"] != polys["unknot"]
        assert polys["virtual-trefoil"] != polys["trefoil"]
        c.detail = "f(virtual trefoil) = " + polys["virtual-trefoil"].to_text()


def test_10_search_soundness(criterion):
    rng = random.Random(10)
    found = 0
    with criterion(10, limit=120.0) as c:
        for _ in range(100):
            a = gen.random_code(rng, max_vertices=2, max_crossings=3)
            b, used = gen.random_walk(rng, a, CLASSICAL, rng.randint(1, 2), max_crossings=5)
            budget = max(a.crossing_count(), b.crossing_count()) + 1
            v = search_equivalent(a, b, SearchConfig(max_crossings=budget, max_states=4000))
            if v.outcome == EQUIVALENT:
                found += 1
                assert verify_witness(a, b, v.witness)
                assert canonical_key(replay(a, v.witness)) == canonical_key(b)
        c.detail = f"{found}/100 pairs resolved as equivalent, every witness replays"
