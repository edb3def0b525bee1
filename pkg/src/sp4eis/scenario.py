"""Scenario files: TOML descriptions of what to compute.

Schema (all keys optional unless noted):

    case = "heisenberg"            # required: "heisenberg" | "siegel"
    char_class = "trivial"         # "trivial" | "quadratic" | "other"
    modulus = 4                    # Dirichlet modulus for numeric checks
    s0 = ["2", "-1/2"]             # rational points, as strings
    checks = ["poles"]             # any of "poles", "verify", "numcheck"
    theorems = ["H+", "H-"]        # used by the "verify" check

    [[places]]                     # the ramified set S; default: one
    kind = "arch"                  # spherical archimedean place
    class = "trivial"              # "trivial"|"quadratic"|"sgn"|"other"
    choice = "spherical"           # "spherical"|"langlands"|"steinberg"|
                                   # "t1"|"t2"|"carrier"

Exactly one archimedean place is required when places are given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    tomllib = None

from .characters import CharClass, parse_class
from .constant_term import Place, PlaceProfile

VALID_CHECKS = ("poles", "verify", "numcheck")


class ScenarioError(ValueError):
    pass


def _parse_value(text: str, source: str, lineno: int):
    text = text.strip()
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return []
        return [_parse_value(item, source, lineno) for item in inner.split(",")]
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        raise ScenarioError(f"{source}:{lineno}: cannot parse value {text!r}") from None


def parse_toml_subset(text: str, source: str = "<scenario>") -> dict:
    """Parser for the documented key/value subset (fallback for old pythons).

    Supports `key = value` with quoted strings, integers, booleans, arrays
    of those, comments, and repeated `[[places]]` tables.
    """
    root: dict = {}
    target = root
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[[") and line.endswith("]]"):
            name = line[2:-2].strip()
            target = {}
            root.setdefault(name, []).append(target)
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            target = root.setdefault(name, {})
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ScenarioError(f"{source}:{lineno}: expected key = value")
        target[key.strip()] = _parse_value(value, source, lineno)
    return root


@dataclass
class Scenario:
    case: str
    char_class: CharClass
    s0_list: list[Q]
    profile: PlaceProfile
    modulus: int | None = None
    checks: list[str] = field(default_factory=lambda: ["poles"])
    theorems: list[str] = field(default_factory=lambda: ["H+", "H-", "S+", "S-"])

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "char_class": self.char_class.value,
            "s0": [str(s) for s in self.s0_list],
            "profile": self.profile.to_json(),
            "modulus": self.modulus,
            "checks": self.checks,
            "theorems": self.theorems,
        }


def default_arch_class(cls: CharClass) -> CharClass:
    return CharClass.OTHER if cls is CharClass.OTHER else CharClass.TRIVIAL


def scenario_from_dict(data: dict, source: str = "<scenario>") -> Scenario:
    try:
        case = data["case"]
    except KeyError:
        raise ScenarioError(f"{source}: missing required key 'case'") from None
    if case not in ("heisenberg", "siegel"):
        raise ScenarioError(f"{source}: unknown case {case!r}")
    cls = parse_class(data.get("char_class", "trivial"))
    if cls is CharClass.SGN:
        raise ScenarioError(f"{source}: 'sgn' is a local class; use char_class='quadratic'")
    try:
        s0_list = [Q(str(x)) for x in data.get("s0", ["0"])]
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"{source}: bad s0 entry: {exc}") from None
    places_data = data.get("places")
    if places_data:
        places = []
        for p in places_data:
            places.append(Place(p.get("kind", "nonarch"),
                                parse_class(p.get("class", "trivial")),
                                p.get("choice", "spherical")))
        profile = PlaceProfile(tuple(places))
    else:
        profile = PlaceProfile.spherical(default_arch_class(cls))
    checks = list(data.get("checks", ["poles"]))
    for c in checks:
        if c not in VALID_CHECKS:
            raise ScenarioError(f"{source}: unknown check {c!r}")
    theorems = [str(t) for t in data.get("theorems", ["H+", "H-", "S+", "S-"])]
    modulus = data.get("modulus")
    if modulus is not None:
        modulus = int(modulus)
    return Scenario(case=case, char_class=cls, s0_list=s0_list, profile=profile,
                    modulus=modulus, checks=checks, theorems=theorems)


def load_scenario(path: str | Path) -> Scenario:
    p = Path(path)
    if tomllib is not None:
        with p.open("rb") as fh:
            data = tomllib.load(fh)
    else:
        data = parse_toml_subset(p.read_text(encoding="utf-8"), source=str(p))
    return scenario_from_dict(data, source=str(p))
