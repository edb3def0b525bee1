"""Constant-term assembly: per-element germs, cancellations, pole reports.

The constant term of the degenerate Eisenstein series is a sum over the
four Weyl representatives of (inverse normalizing factor) x (local
operators applied to the section).  This module combines, for a chosen
section profile, the exact order data of the global factors with the
local pole/action tables, detects cancellations between summands whose
target characters coincide at the point, and reports the resulting pole
order, vanishing behavior, and image labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q

from . import germs
from .characters import (
    CharClass, TorusCharacter, lambda_for_case, power_class, weyl_act,
)
from .germs import (
    GermSum, IndeterminateLeading, OrderValue, Series, StripDep,
    known_part_series, order_at, split_expression, sum_series,
)
from .localrules import (
    ARCH, ISO, KERNEL, NONARCH, LocalRuleKey, RuleTable, UncoveredKey, default_rules,
)
from .normfactor import LExpression, canonicalize, inverse_norm_factor
from .roots import CRootSystem, WeylElement

CHOICES = ("spherical", "langlands", "steinberg", "t1", "t2", "carrier")


class ProfileError(ValueError):
    """Invalid place profile."""


_SYSTEM = CRootSystem(2)

_FACTOR_CACHE: dict[tuple[str, str, CharClass], LExpression] = {}


def factor_expression(case: str, w: WeylElement, cls: CharClass) -> LExpression:
    """Canonicalized inverse normalizing factor, memoized per (case, w, class)."""
    key = (case, w.name, cls)
    if key not in _FACTOR_CACHE:
        lam, _ = lambda_for_case(case)
        _FACTOR_CACHE[key] = canonicalize(inverse_norm_factor(lam, w, _SYSTEM), cls)
    return _FACTOR_CACHE[key]


@dataclass(frozen=True)
class Place:
    """One ramified place: kind, local character class, section choice."""

    kind: str                 # "arch" | "nonarch"
    local_class: CharClass
    choice: str = "spherical"

    def to_json(self) -> dict:
        return {"kind": self.kind, "class": self.local_class.value, "choice": self.choice}


@dataclass(frozen=True)
class PlaceProfile:
    """The finite ramified set S; everything outside S is spherical.

    Exactly one archimedean place is required (it belongs to S).  Places
    outside S never influence orders or signs, so they are not modeled.
    """

    places: tuple[Place, ...]

    def __post_init__(self):
        arch = [p for p in self.places if p.kind == ARCH]
        if len(arch) != 1:
            raise ProfileError("exactly one archimedean place is required")
        for p in self.places:
            if p.kind not in (ARCH, NONARCH):
                raise ProfileError(f"unknown place kind {p.kind!r}")
            if p.kind == ARCH and p.local_class is CharClass.QUADRATIC:
                raise ProfileError("use the sgn class for the archimedean quadratic character")
            if p.kind == NONARCH and p.local_class is CharClass.SGN:
                raise ProfileError("sgn class only occurs at the archimedean place")
            if p.choice not in CHOICES:
                raise ProfileError(f"unknown section choice {p.choice!r}")

    @staticmethod
    def spherical(arch_class: CharClass = CharClass.TRIVIAL) -> "PlaceProfile":
        return PlaceProfile((Place(ARCH, arch_class),))

    def to_json(self) -> dict:
        return {"places": [p.to_json() for p in self.places]}


# ---------------------------------------------------------------------------
# coset representatives and grouping
# ---------------------------------------------------------------------------

def coset_representatives(case: str, system: CRootSystem | None = None) -> list[WeylElement]:
    """The four Weyl elements appearing in the constant term of the case."""
    system = system or _SYSTEM
    _, keep = lambda_for_case(case)
    return system.coset_reps([keep])


def same_target_groups(case: str, s0: Q, cls: CharClass,
                       system: CRootSystem | None = None) -> list[list[WeylElement]]:
    """Partition of the representatives by target character at s = s0.

    Two summands can only cancel when the Weyl images of the inducing
    character agree at the point (after class reduction of chi powers).
    Groups are ordered by their shortest member; members by length.
    """
    system = system or _SYSTEM
    lam, _ = lambda_for_case(case)
    buckets: dict[tuple, list[WeylElement]] = {}
    for w in coset_representatives(case, system):
        key = weyl_act(w, lam).value_key(s0, cls)
        buckets.setdefault(key, []).append(w)
    groups = [sorted(ws, key=WeylElement.sort_key) for ws in buckets.values()]
    groups.sort(key=lambda ws: ws[0].sort_key())
    return groups


def local_order_sum(case: str, profile: PlaceProfile, w: WeylElement, s0: Q,
                    rules: RuleTable) -> int:
    """Total local pole order met by the profile's choices for the element."""
    total = 0
    for p in profile.places:
        key = LocalRuleKey(case, w.name, p.kind, p.local_class, s0)
        total += rules.pole_order_for_choice(key, p.choice)
    return total


def term_order(case: str, profile: PlaceProfile, w: WeylElement, s0: Q,
               cls: CharClass, rules: RuleTable | None = None) -> OrderValue:
    """Order of one constant-term summand: global factor minus local poles."""
    rules = rules or default_rules()
    expr = factor_expression(case, w, cls)
    return order_at(expr, cls, s0).shifted(-local_order_sum(case, profile, w, s0, rules))


# ---------------------------------------------------------------------------
# group evaluation
# ---------------------------------------------------------------------------

@dataclass
class TermReport:
    w: WeylElement
    expr: LExpression
    factor_order: OrderValue
    local_order: int
    target: str

    @property
    def order(self) -> OrderValue:
        return self.factor_order.shifted(-self.local_order)

    def to_json(self) -> dict:
        return {
            "w": self.w.name,
            "length": self.w.length,
            "factor": self.expr.render(),
            "factor_order": self.factor_order.to_json(),
            "local_order": self.local_order,
            "order": self.order.to_json(),
            "target": self.target,
        }


@dataclass
class GroupReport:
    members: list[str]
    order: OrderValue | None       # None when the group is killed by a kernel
    leading: str | None
    cancelled: bool                # a pole/leading actually cancelled in the sum
    kernel_killed: bool = False
    weights: dict[str, str] = field(default_factory=dict)
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"members": self.members, "cancelled": self.cancelled}
        if self.kernel_killed:
            out["kernel_killed"] = True
        else:
            out["order"] = self.order.to_json() if self.order is not None else None
            if self.leading is not None:
                out["leading"] = self.leading
        if self.weights:
            out["weights"] = self.weights
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ImageEntry:
    place: int | str
    label: str
    structure: str
    note: str = ""

    def to_json(self) -> dict:
        out = {"place": self.place, "label": self.label, "structure": self.structure}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ConstantTermReport:
    case: str
    char_class: CharClass
    s0: Q
    profile: PlaceProfile
    terms: list[TermReport]
    groups: list[GroupReport]
    combined_order: OrderValue
    pole_order: int | None          # None when only conditional poles exist
    conditional_on: list[StripDep]
    vanishes_at_point: bool
    image: list[ImageEntry]
    notes: list[str]

    def to_json(self) -> dict:
        return {
            "schema": "sp4eis-report/1",
            "case": self.case,
            "char_class": self.char_class.value,
            "s0": str(self.s0),
            "profile": self.profile.to_json(),
            "terms": [t.to_json() for t in self.terms],
            "groups": [g.to_json() for g in self.groups],
            "combined": {
                "order": self.combined_order.to_json(),
                "pole_order": self.pole_order,
                "conditional_on": [d.to_json() for d in self.conditional_on],
                "vanishes_at_point": self.vanishes_at_point,
            },
            "image": [e.to_json() for e in self.image],
            "notes": self.notes,
        }


def _common_factor(exprs: list[LExpression]) -> LExpression:
    """Largest monomial dividing all expressions (shared strip content)."""
    dicts = [e.as_dict() for e in exprs]
    syms = set()
    for d in dicts:
        syms.update(d)
    common: dict = {}
    for sym in syms:
        exps = [d.get(sym, 0) for d in dicts]
        if all(e > 0 for e in exps):
            common[sym] = min(exps)
        elif all(e < 0 for e in exps):
            common[sym] = max(exps)
    return LExpression.build(Q(1), common)


def _group_weights(case: str, group: list[WeylElement], profile: PlaceProfile,
                   s0: Q, cls: CharClass, rules: RuleTable):
    """Per-member weights (+-1), base-kernel detection, and notes.

    The shortest member is the base; its action rows supply kernel
    information, the other members' rows supply the relative signs.  The
    identity summand carries no operator at all.  A missing row is
    tolerated for spherical choices (the normalized spherical vector is
    always carried with weight +1) and for the base summand; any other
    gap fails loudly.
    """
    base = group[0]
    weights: dict[str, Q] = {}
    notes: list[str] = []
    kernel = False
    defaulted = False
    for w in group:
        weight = Q(1)
        is_base = w is base
        for p in profile.places:
            if w.is_identity():
                continue
            row = rules.action_rule(case, w.name, p.kind, p.local_class, s0)
            if row is not None and (row.base == "base") != is_base:
                row = None
            if row is None:
                if p.choice == "spherical" or is_base:
                    if len(group) > 1 and not is_base:
                        defaulted = True
                    continue
                raise UncoveredKey(
                    f"no action rule for {case}/{w.name} at s={s0} covering choice {p.choice!r}")
            value = row.action_for(p.choice)
            if value == KERNEL:
                if is_base or len(group) == 1:
                    kernel = True
                else:  # pragma: no cover - tables only put kernels on bases
                    raise UncoveredKey("kernel action on a non-base element")
            elif value != ISO:
                weight *= Q(value)
        weights[w.name] = weight
    if kernel:
        notes.append("summand killed: a chosen constituent lies in the kernel of the operator")
    if defaulted:
        notes.append("no action row at this point; spherical sections carried "
                     "with weight +1 (unramified compatibility)")
    return weights, kernel, notes


def evaluate_group(case: str, group: list[WeylElement], profile: PlaceProfile,
                   s0: Q, cls: CharClass, rules: RuleTable,
                   system: CRootSystem) -> GroupReport:
    """Order (and leading, when certified) of one same-target group."""
    exprs = {w.name: factor_expression(case, w, cls) for w in group}
    locals_ = {w.name: local_order_sum(case, profile, w, s0, rules) for w in group}
    members = [w.name for w in group]

    weights, kernel, notes = _group_weights(case, group, profile, s0, cls, rules)
    if kernel:
        return GroupReport(members, None, None, cancelled=False, kernel_killed=True,
                           weights={k: str(v) for k, v in weights.items()},
                           note="; ".join(notes))

    if len(group) == 1:
        w = group[0]
        ov = order_at(exprs[w.name], cls, s0).shifted(-locals_[w.name])
        leading = None
        if ov.is_known:
            g = germs.germ_at(exprs[w.name], cls, s0)
            leading = g.leading.render()
        return GroupReport(members, ov, leading, cancelled=False,
                           note="; ".join(notes))

    if len(set(locals_.values())) != 1:
        raise IndeterminateLeading(
            "grouped summands carry different local pole orders; cancellation not analyzed")
    shared_local = locals_[members[0]]

    common = _common_factor(list(exprs.values()))
    common_order = order_at(common, cls, s0)
    inv = common.inverse()
    series_terms: list[tuple[Series, Q]] = []
    for w in group:
        rem = exprs[w.name] * inv
        _, deps = split_expression(rem, cls, s0)
        if deps:
            raise IndeterminateLeading(
                "strip-order symbols differ within a same-target group")
        series_terms.append((known_part_series(rem, cls, s0), weights[w.name]))
    out: GermSum = sum_series(series_terms)
    cancelled = out.order.base > min(s.ord for s, _ in series_terms)
    total = (common_order + out.order).shifted(-shared_local)
    leading = out.leading.render() if out.leading is not None and out.order.is_known else None
    return GroupReport(members, total, leading, cancelled=cancelled,
                       weights={k: str(v) for k, v in weights.items()},
                       note="; ".join(notes))


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------

def _combine_orders(groups: list[GroupReport]) -> tuple[OrderValue, int | None, list[StripDep], bool]:
    """Minimum over group orders, conditional deps, and vanishing flag.

    Groups whose order is only bounded below (floor-only sums and
    numerator-strip conditionals) cannot decrease the minimum beneath
    their floor, so the combined order is exact whenever some known order
    sits at or below every floor.  Possible poles from denominator strip
    zeros are reported as conditional dependencies.
    """
    live = [g.order for g in groups if not g.kernel_killed and g.order is not None]
    if not live:
        return OrderValue.known(0), 0, [], True
    vanishes = all(o.definitely_positive() for o in live)
    neg_deps: list[StripDep] = []
    for o in live:
        for d in o.deps:
            if d.coeff < 0 and d not in neg_deps:
                neg_deps.append(d)
    known_vals = [o.base for o in live if o.is_known]
    floors = [o.base for o in live]
    if neg_deps:
        combined = OrderValue.conditional(min(floors), tuple(neg_deps))
        pole = -min(known_vals) if known_vals and min(known_vals) < 0 else None
        return combined, pole, neg_deps, vanishes
    if known_vals and min(known_vals) <= min(floors):
        m = min(known_vals)
        return OrderValue.known(m), max(0, -m), [], vanishes
    return OrderValue.at_least(min(floors)), (0 if min(floors) > 0 else None), [], vanishes


def _label(kind: str, *params) -> str:
    return LABEL_RENDERERS[kind](*params)


def _render_exponent(e: Q) -> str:
    return f"nu^{e}" if e.denominator == 1 else f"nu^({e})"


def _chi_prefix(k: int, cls: CharClass) -> str:
    return "" if power_class(cls, k) is CharClass.TRIVIAL else "chi*"


def langlands_label(target: TorusCharacter, s0: Q, cls: CharClass) -> str:
    """Langlands-quotient label of the target character at the point.

    Coordinates with negative exponent are inverted, the positive ones are
    sorted decreasingly as GL1 data; zero-exponent coordinates form the
    tempered part (the spherical tempered constituent for a quadratic
    class, the full unitary principal series for the trivial one).
    """
    gl1: list[tuple[Q, int]] = []
    temperate: list[int] = []
    for k, form in target.coords:
        v = form.at(s0)
        if v == 0:
            temperate.append(k)
        elif v > 0:
            gl1.append((v, k))
        else:
            gl1.append((-v, -k))
    gl1.sort(key=lambda t: (-t[0],))
    parts = [f"{_chi_prefix(k, cls)}{_render_exponent(v)}" for v, k in gl1]
    if temperate:
        k = temperate[0]
        if power_class(cls, k) is CharClass.TRIVIAL:
            tail = "nu^0x1"
        else:
            tail = "T1"
        return "L(" + ",".join(parts) + ";" + tail + ")"
    return "L(" + ",".join(parts) + ";1)"


LABEL_RENDERERS = {
    "st_gl2": lambda e=Q(3, 2): f"L({_render_exponent(e)}St_GL2;1)",
    "st_sl2": lambda e=Q(2): f"L({_render_exponent(e)};St_SL2)",
    "tempered_t2": lambda: "T2",
    # non-Langlands constituents at a real place: the Heisenberg case comes
    # with essentially-discrete-series data, the Siegel case is described
    # only as the maximal proper subrepresentation after reflection
    "arch_nonlanglands_heis": lambda s0: f"L(delta*nu^({(1 - s0) / 2}),{-s0 - 1};1)",
    "arch_nonlanglands_sieg": lambda s0: f"maxsub(nu^({-s0})1_GL2x1)",
}


def choice_label(case: str, place: Place, s0: Q, token: str, rules: RuleTable) -> str:
    """Concrete constituent label for a section-choice token at a point."""
    if token == "spherical":
        return "spherical"
    if token in ("t1", "t2"):
        i = token[1]
        if s0 == Q(-1, 2):
            return f"T{i}"
        prefix = "" if case == "heisenberg" else "chi*"
        return f"L({prefix}nu^1;T{i})"
    if token == "langlands":
        lam, _ = lambda_for_case(case)
        return langlands_label(weyl_act(_longest(case), lam), s0, place.local_class)
    # steinberg / carrier: the constituent carrying the local pole
    key = LocalRuleKey(case, _longest(case).name, place.kind, place.local_class, s0)
    res = rules.local_pole(key)
    if res.order == 0 or res.carrier is None:
        if token == "steinberg" and case == "heisenberg" and s0 == 0:
            return _label("st_gl2", Q(1, 2))
        return token
    if res.carrier == "st_gl2":
        return _label("st_gl2", Q(3, 2))
    if res.carrier == "st_sl2":
        return _label("st_sl2", Q(2))
    if res.carrier == "tempered_t2":
        return _label("tempered_t2")
    if res.carrier == "arch_nonlanglands":
        kind = "arch_nonlanglands_heis" if case == "heisenberg" else "arch_nonlanglands_sieg"
        return _label(kind, s0)
    return res.carrier


_LONGEST = {"heisenberg": None, "siegel": None}


def _longest(case: str) -> WeylElement:
    if _LONGEST[case] is None:
        reps = coset_representatives(case)
        _LONGEST[case] = max(reps, key=lambda w: w.length)
    return _LONGEST[case]


def describe_image(case: str, profile: PlaceProfile, s0: Q, cls: CharClass,
                   groups: list[GroupReport], group_elements: list[list[WeylElement]],
                   combined: OrderValue, vanishes: bool,
                   rules: RuleTable, system: CRootSystem) -> list[ImageEntry]:
    """Label-level image description per ramified place.

    When the identity summand survives at the minimal order the map embeds
    the full induced module (restricted to the chosen constituents when
    the profile ramifies).  When a pole (or the minimum) is carried by
    non-identity summands only, each ramified choice spans its own
    constituent and spherical places span the image of the spherical
    vector: the Langlands quotient of the target, of length two when the
    local operator there had further constituents in play.
    """
    if vanishes:
        return []
    lam, _ = lambda_for_case(case)
    live = [(g, ws) for g, ws in zip(groups, group_elements)
            if not g.kernel_killed and g.order is not None]
    floor = min(g.order.base for g, _ in live)
    leaders = [(g, ws) for g, ws in live if g.order.base == floor]
    id_leads = any(ws[0].is_identity() for _, ws in leaders)

    entries: list[ImageEntry] = []
    if id_leads:
        ramified = [p for p in profile.places if p.choice != "spherical"]
        if not ramified:
            return [ImageEntry("all", "full-induced", "embedding",
                               "identity summand uncancelled: whole module embeds")]
        for i, p in enumerate(profile.places):
            entries.append(ImageEntry(
                i, choice_label(case, p, s0, p.choice, rules), "irreducible-constituent"))
        return entries

    # pole (or leading term) carried by non-identity summands
    lead_ws = [w for _, ws in leaders for w in ws]
    w0 = max(lead_ws, key=lambda w: w.length)
    target = weyl_act(w0, lam)
    for i, p in enumerate(profile.places):
        if p.choice == "spherical":
            label = langlands_label(target, s0, p.local_class)
            key = LocalRuleKey(case, w0.name, p.kind, p.local_class, s0)
            res = rules.local_pole(key)
            if res.order > 0:
                carrier = choice_label(case, p, s0, "carrier", rules)
                entries.append(ImageEntry(i, label, "length-two",
                                          f"semisimplification {label}+{carrier}"))
            else:
                entries.append(ImageEntry(i, label, "spherical-constituent"))
        else:
            entries.append(ImageEntry(
                i, choice_label(case, p, s0, p.choice, rules), "irreducible-constituent"))
    return entries


def eisenstein_order(case: str, profile: PlaceProfile, s0: Q, cls: CharClass,
                     rules: RuleTable | None = None) -> ConstantTermReport:
    """Full constant-term report at s = s0 for one section profile."""
    rules = rules or default_rules()
    system = _SYSTEM
    lam, _ = lambda_for_case(case)

    terms: list[TermReport] = []
    for w in coset_representatives(case, system):
        expr = factor_expression(case, w, cls)
        terms.append(TermReport(
            w, expr, order_at(expr, cls, s0),
            local_order_sum(case, profile, w, s0, rules),
            weyl_act(w, lam).render_at(s0, cls),
        ))

    group_elements = same_target_groups(case, s0, cls, system)
    groups = [evaluate_group(case, g, profile, s0, cls, rules, system)
              for g in group_elements]
    combined, pole, deps, vanishes = _combine_orders(groups)
    image = describe_image(case, profile, s0, cls, groups, group_elements,
                           combined, vanishes, rules, system)
    notes = [g.note for g in groups if g.note]
    return ConstantTermReport(
        case=case, char_class=cls, s0=s0, profile=profile,
        terms=terms, groups=groups,
        combined_order=combined, pole_order=pole, conditional_on=deps,
        vanishes_at_point=vanishes, image=image, notes=notes,
    )
