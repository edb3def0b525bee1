"""Local operator rule tables and reducibility predicates."""

from fractions import Fraction as Q

import pytest

from sp4eis.characters import CharClass
from sp4eis.localrules import (
    ARCH, NONARCH, LocalRuleKey, RuleTableError, UncoveredKey, UnknownChoice,
    default_rules, gl2_reducible, load_rules, parse_rules, sl2_reducible,
)

TR, QU, OT, SGN = (CharClass.TRIVIAL, CharClass.QUADRATIC,
                   CharClass.OTHER, CharClass.SGN)
RULES = default_rules()


def key(case, element, place, cls, s0) -> LocalRuleKey:
    return LocalRuleKey(case, element, place, cls, Q(s0))


# ---------------------------------------------------------------------------
# reducibility predicates
# ---------------------------------------------------------------------------

def test_sl2_nonarch():
    assert sl2_reducible(NONARCH, QU, Q(0))
    assert sl2_reducible(NONARCH, TR, Q(-1))
    assert sl2_reducible(NONARCH, TR, Q(1))
    assert not sl2_reducible(NONARCH, OT, Q(-5))
    assert not sl2_reducible(NONARCH, TR, Q(0))
    assert not sl2_reducible(NONARCH, QU, Q(-1))


def test_sl2_arch():
    assert sl2_reducible(ARCH, TR, Q(-3))
    assert sl2_reducible(ARCH, TR, Q(1))
    assert not sl2_reducible(ARCH, TR, Q(-2))
    assert sl2_reducible(ARCH, SGN, Q(0))
    assert sl2_reducible(ARCH, SGN, Q(-4))
    assert not sl2_reducible(ARCH, SGN, Q(-3))
    assert not sl2_reducible(ARCH, TR, Q(-1, 2))


def test_gl2():
    assert gl2_reducible(NONARCH, TR, Q(-1))
    assert not gl2_reducible(NONARCH, TR, Q(-2))
    assert not gl2_reducible(NONARCH, QU, Q(1))
    assert gl2_reducible(ARCH, TR, Q(-3))
    assert gl2_reducible(ARCH, SGN, Q(-2))
    assert not gl2_reducible(ARCH, SGN, Q(-3))


# ---------------------------------------------------------------------------
# pole rules
# ---------------------------------------------------------------------------

def test_heisenberg_nonarch_pole():
    res = RULES.local_pole(key("heisenberg", "sc2s", NONARCH, TR, -2))
    assert res.order == 1
    assert res.carrier == "st_gl2"
    for element in ("s", "c2s"):
        assert RULES.local_pole(key("heisenberg", element, NONARCH, TR, -2)).order == 1


def test_heisenberg_arch_poles():
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, SGN, -3)).order == 1
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, TR, -2)).order == 1
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, TR, -4)).order == 1
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, TR, -3)).order == 0
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, SGN, -1)).order == 0
    assert RULES.local_pole(key("heisenberg", "sc2s", ARCH, SGN, -2)).order == 0


def test_heisenberg_action_at_zero():
    k = key("heisenberg", "sc2s", NONARCH, TR, 0)
    assert RULES.local_pole(k).order == 0
    assert RULES.sign_action(k, "langlands") == "+1"
    assert RULES.sign_action(k, "steinberg") == "-1"
    assert RULES.sign_action(key("heisenberg", "id", NONARCH, TR, 0), "anything") == "iso"


def test_quadratic_action_signs():
    k = key("heisenberg", "c2s", NONARCH, QU, 0)
    assert RULES.sign_action(k, "t1") == "+1"
    assert RULES.sign_action(k, "t2") == "-1"
    with pytest.raises(UnknownChoice):
        RULES.sign_action(k, "steinberg")


def test_siegel_poles():
    assert RULES.local_pole(key("siegel", "c2", NONARCH, TR, Q(-3, 2))).order == 1
    assert RULES.local_pole(key("siegel", "sc2", NONARCH, TR, Q(-3, 2))).order == 1
    res = RULES.local_pole(key("siegel", "c2sc2", NONARCH, TR, Q(-1, 2)))
    assert res.order == 1
    assert res.carrier == "tempered_t2"
    assert RULES.local_pole(key("siegel", "c2", NONARCH, TR, Q(-1, 2))).order == 0
    assert RULES.local_pole(key("siegel", "sc2", NONARCH, TR, Q(-1, 2))).order == 0
    assert RULES.local_pole(key("siegel", "c2", NONARCH, QU, Q(-3, 2))).order == 0


def test_siegel_arch_parity():
    # first-step parity: s+1/2 negative odd (trivial) / even (sgn)
    assert RULES.local_pole(key("siegel", "c2", ARCH, TR, Q(-3, 2))).order == 1
    assert RULES.local_pole(key("siegel", "c2", ARCH, SGN, Q(-5, 2))).order == 1
    assert RULES.local_pole(key("siegel", "c2", ARCH, TR, Q(-5, 2))).order == 0
    # last-step parity for the long element: s-1/2 negative odd / even
    assert RULES.local_pole(key("siegel", "c2sc2", ARCH, TR, Q(-1, 2))).order == 1
    assert RULES.local_pole(key("siegel", "c2sc2", ARCH, TR, Q(-5, 2))).order == 1
    assert RULES.local_pole(key("siegel", "c2sc2", ARCH, SGN, Q(-3, 2))).order == 1
    assert RULES.local_pole(key("siegel", "sc2", ARCH, TR, Q(-5, 2))).order == 0


def test_holomorphic_for_nonnegative_points():
    elements = {"heisenberg": ("id", "s", "c2s", "sc2s"),
                "siegel": ("id", "c2", "sc2", "c2sc2")}
    for case, names in elements.items():
        for element in names:
            for place, classes in ((NONARCH, (TR, QU, OT)), (ARCH, (TR, SGN, OT))):
                for cls in classes:
                    for s8 in range(0, 25):
                        res = RULES.local_pole(key(case, element, place, cls, Q(s8, 8)))
                        assert res.order == 0


def test_spherical_choice_never_meets_a_pole():
    k = key("heisenberg", "sc2s", NONARCH, TR, -2)
    assert RULES.pole_order_for_choice(k, "spherical") == 0
    assert RULES.pole_order_for_choice(k, "steinberg") == 1
    assert RULES.pole_order_for_choice(k, "langlands") == 0


def test_uncovered_keys_fail_loudly():
    with pytest.raises(UncoveredKey):
        RULES.local_pole(key("heisenberg", "c2", NONARCH, TR, 0))  # not a summand
    with pytest.raises(UncoveredKey):
        RULES.local_pole(key("siegel", "s", NONARCH, TR, 0))
    with pytest.raises(UncoveredKey):
        RULES.local_pole(key("heisenberg", "s", NONARCH, SGN, 0))  # sgn is archimedean
    with pytest.raises(UncoveredKey):
        RULES.local_pole(key("heisenberg", "s", ARCH, QU, 0))
    with pytest.raises(UncoveredKey):
        RULES.local_pole(key("klingen", "s", NONARCH, TR, 0))


def test_table_is_exactly_the_stated_clauses():
    """The pole table is the union of the stated exceptional clauses plus
    the holomorphic catch-alls: no extra first-order rows."""
    exceptional = {
        ("heisenberg", ("s", "c2s", "sc2s"), NONARCH, ("trivial",), "s=-2", "st_gl2"),
        ("heisenberg", ("s", "c2s", "sc2s"), ARCH, ("trivial",),
         "s even integer < -1", "arch_nonlanglands"),
        ("heisenberg", ("s", "c2s", "sc2s"), ARCH, ("sgn",),
         "s odd integer < -1", "arch_nonlanglands"),
        ("siegel", ("c2", "sc2", "c2sc2"), NONARCH, ("trivial",), "s=-3/2", "st_sl2"),
        ("siegel", ("c2sc2",), NONARCH, ("trivial",), "s=-1/2", "tempered_t2"),
        ("siegel", ("c2", "sc2", "c2sc2"), ARCH, ("trivial",),
         "s+1/2 odd integer < 0", "arch_nonlanglands"),
        ("siegel", ("c2", "sc2", "c2sc2"), ARCH, ("sgn",),
         "s+1/2 even integer < 0", "arch_nonlanglands"),
        ("siegel", ("c2sc2",), ARCH, ("trivial",),
         "s-1/2 odd integer < 0", "arch_nonlanglands"),
        ("siegel", ("c2sc2",), ARCH, ("sgn",),
         "s-1/2 even integer < 0", "arch_nonlanglands"),
    }
    got = {
        (r.case, r.elements, r.place, r.classes, r.condition.render(), r.carrier)
        for r in RULES.poles if r.order == 1
    }
    assert got == exceptional
    # every row carries a human-readable justification
    assert all(r.note for r in RULES.poles if r.order == 1)
    assert all(r.note for r in RULES.actions)


def test_nonarch_poles_match_reducibility():
    """First-order nonarchimedean rows occur exactly where the SL2/GL2
    reducibility predicates fire at the relevant shifted parameter."""
    # the first reflection step of the Heisenberg operators is a GL2 step
    # at relative exponent s+1
    assert gl2_reducible(NONARCH, TR, Q(-2) + 1)
    # the first step of the Siegel operators is an SL2 step at s+1/2
    assert sl2_reducible(NONARCH, TR, Q(-3, 2) + Q(1, 2))
    # the extra step of the long Siegel element is an SL2 step at s-1/2
    assert sl2_reducible(NONARCH, TR, Q(-1, 2) - Q(1, 2))
    # and nowhere else at negative parameters on the tables' class range:
    for s8 in range(-32, 0):
        s0 = Q(s8, 8)
        fires = RULES.local_pole(key("heisenberg", "s", NONARCH, TR, s0)).order == 1
        assert fires == (gl2_reducible(NONARCH, TR, s0 + 1) and s0 + 1 < 0)
        fires = RULES.local_pole(key("siegel", "c2", NONARCH, TR, s0)).order == 1
        assert fires == (sl2_reducible(NONARCH, TR, s0 + Q(1, 2)) and s0 + Q(1, 2) < 0)


def test_rules_roundtrip_from_file(tmp_path):
    import importlib.resources
    text = importlib.resources.files("sp4eis").joinpath("data/local_rules.txt").read_text()
    p = tmp_path / "rules.txt"
    p.write_text(text, encoding="utf-8")
    table = load_rules(p)
    assert len(table.poles) == len(RULES.poles)
    assert len(table.actions) == len(RULES.actions)


def test_malformed_tables_rejected():
    with pytest.raises(RuleTableError):
        parse_rules("pole|heisenberg|s|nonarch|trivial|eq:-2|3|x|steinberg|note\n"
                    "pole|heisenberg|*|*|*|always|0|||ok\n"
                    "pole|siegel|*|*|*|always|0|||ok\n")
    with pytest.raises(RuleTableError):
        parse_rules("pole|siegel|*|*|*|always|0|||missing heisenberg catch-all\n")
    with pytest.raises(RuleTableError):
        parse_rules("frob|x|y\n")
