"""Meromorphic-germ calculus for canonical L/epsilon products.

Orders of vanishing are computed exactly from a small knowledge base of
completed-L facts (kept as data in ``COMPLETED_L_FACTS``):

* the completed zeta function has simple poles at arguments 0 and 1 with
  residues -1 and +1, no zeros outside the open strip (0,1), and unknown
  nonnegative vanishing order inside it;
* completed L-functions of nontrivial primitive characters are entire and
  nonvanishing outside the open strip, including its edges;
* epsilon factors are entire and nonvanishing, identically 1 for the
  trivial character, and satisfy eps(u)*eps(1-u) = 1 for self-dual
  characters (a consequence of applying the functional equation twice).

Leading coefficients are tracked as formal products of named atoms with
rational coefficients.  Truncated Laurent series over this scalar ring
drive cancellation detection in sums of germs.  Two atoms that are not
plainly nonzero carry a nonzeroness assertion that the numeric layer
cross-checks: the shared constant Laurent coefficient of completed zeta
at its poles, and the derivative of a quadratic completed L at 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from .characters import AffineForm, CharClass, power_class, reduce_power
from .normfactor import EPS, L, LExpression, LSymbol

SERIES_DEPTH = 5

# Knowledge base: facts about completed L-functions, by coarse class.
COMPLETED_L_FACTS = {
    "trivial": {
        "pole_residues": {Q(0): Q(-1), Q(1): Q(1)},
        "open_strip": (Q(0), Q(1)),
        "nonvanishing_outside_strip": True,  # includes edges via the poles
        "reflection_exact": True,            # Lam(u) = Lam(1-u)
    },
    "nontrivial": {
        "pole_residues": {},
        "open_strip": (Q(0), Q(1)),
        "nonvanishing_outside_strip": True,  # edge nonvanishing asserted
        "reflection_exact": False,           # functional equation brings eps
    },
}


class GermError(Exception):
    """Base class for germ-calculus failures."""


class StripOrderUnknown(GermError):
    """Raised when an exact germ is requested but a strip order is unknown."""


class IndeterminateLeading(GermError):
    """Raised when cancellation reaches opaque atoms without a resolution."""


class DegenerateSymbol(GermError):
    """Raised for a constant symbol pinned at a pole of the completed L."""


# ---------------------------------------------------------------------------
# formal scalars: rational combinations of monomials in named atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Atom:
    """Named nonzero-or-opaque constant appearing in leading coefficients."""

    kind: str
    data: tuple

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.kind, self.data)))
        object.__setattr__(self, "_key", (self.kind, tuple(str(d) for d in self.data)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Atom):
            return NotImplemented
        return self.kind == other.kind and self.data == other.data

    def render(self) -> str:
        if self.kind == "zconst":
            return "Lam_c"
        if self.kind == "zcoef":
            return f"Lam_c{self.data[0]}"
        if self.kind == "zval":
            return f"Lam({self.data[0]})"
        if self.kind == "zder":
            u, k = self.data
            return f"Lam^({k})({u})"
        if self.kind == "lval":
            cls, u = self.data
            return f"Lhat[{cls}]({u})"
        if self.kind == "lder":
            cls, u, k = self.data
            return f"Lhat[{cls}]^({k})({u})"
        if self.kind == "epsv":
            cls, u = self.data
            return f"eps[{cls}]({u})"
        if self.kind == "epsder":
            cls, u, k = self.data
            return f"eps[{cls}]^({k})({u})"
        return f"{self.kind}{self.data}"

    def sort_key(self) -> tuple:
        return self._key

    @property
    def known_nonzero(self) -> bool:
        if self.kind in ("zconst", "zval", "lval", "epsv"):
            return True
        if self.kind == "lder":
            cls, u, k = self.data
            # forced by the source's "holomorphic and non-zero" cancellation
            # statements; verified numerically for the modulus-4 character
            return cls == CharClass.QUADRATIC.value and k == 1 and u in (Q(0), Q(1))
        return False


Monomial = tuple[tuple[Atom, int], ...]

_ONE: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d: dict[Atom, int] = {}
    for a, e in m1:
        d[a] = d.get(a, 0) + e
    for a, e in m2:
        d[a] = d.get(a, 0) + e
    return _mono_normalize(d)


def _mono_normalize(d: dict[Atom, int]) -> Monomial:
    out: dict[Atom, int] = {}
    for a, e in d.items():
        if a.kind == "epsv":
            cls, u = a.data
            if u == Q(1, 2) and cls != CharClass.OTHER.value:
                e %= 2  # eps(1/2)^2 = 1 for a self-dual character
        if e:
            out[a] = out.get(a, 0) + e
    return tuple(sorted(((a, e) for a, e in out.items() if e), key=lambda it: it[0].sort_key()))


def _mono_inv(m: Monomial) -> Monomial:
    return _mono_normalize({a: -e for a, e in m})


class FormalScalar:
    """Rational linear combination of atom monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Q] | None = None):
        self.terms: dict[Monomial, Q] = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = self.terms.get(m, Q(0)) + c
            self.terms = {m: c for m, c in self.terms.items() if c != 0}

    # -- constructors --

    @staticmethod
    def zero() -> "FormalScalar":
        return FormalScalar()

    @staticmethod
    def rational(c: Q | int) -> "FormalScalar":
        c = Q(c)
        return FormalScalar({_ONE: c} if c else None)

    @staticmethod
    def monomial(m: Monomial, c: Q | int = 1) -> "FormalScalar":
        return FormalScalar({_mono_normalize(dict(m)): Q(c)})

    @staticmethod
    def atom(a: Atom, c: Q | int = 1) -> "FormalScalar":
        return FormalScalar.monomial(((a, 1),), c)

    # -- ring operations --

    def __add__(self, other: "FormalScalar") -> "FormalScalar":
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, Q(0)) + c
        return FormalScalar(d)

    def __neg__(self) -> "FormalScalar":
        return FormalScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FormalScalar") -> "FormalScalar":
        return self + (-other)

    def __mul__(self, other: "FormalScalar") -> "FormalScalar":
        d: dict[Monomial, Q] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, Q(0)) + c1 * c2
        return FormalScalar(d)

    def scale(self, c: Q | int) -> "FormalScalar":
        c = Q(c)
        return FormalScalar({m: cc * c for m, cc in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def single_monomial(self) -> tuple[Q, Monomial] | None:
        if len(self.terms) != 1:
            return None
        ((m, c),) = self.terms.items()
        return c, m

    def inverse(self) -> "FormalScalar":
        got = self.single_monomial()
        if got is None:
            raise IndeterminateLeading(f"cannot invert non-monomial scalar {self.render()}")
        c, m = got
        return FormalScalar({_mono_inv(m): 1 / c})

    def certified_nonzero(self) -> bool:
        """True when the scalar is plainly a nonzero number.

        Only single monomials whose atoms are all marked nonzero qualify;
        sums of distinct monomials are never certified.
        """
        got = self.single_monomial()
        if got is None:
            return False
        c, m = got
        return c != 0 and all(a.known_nonzero for a, _ in m)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda it: tuple(a.sort_key() + (e,) for a, e in it[0])):
            factors = [a.render() + (f"^{e}" if e != 1 else "") for a, e in m]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FormalScalar({self.render()})"


# -- normalized atom constructors (functional-equation orientation) --------

def zeta_value_atom(u: Q) -> FormalScalar:
    """Completed zeta value at u outside [0,1]; reflected so u >= 1/2."""
    u = max(u, 1 - u)
    return FormalScalar.atom(Atom("zval", (u,)))


def zeta_derivative_atom(u: Q, k: int) -> FormalScalar:
    """k-th derivative of completed zeta at u, reflected with sign (-1)^k."""
    if u >= 1 - u:
        return FormalScalar.atom(Atom("zder", (u, k)))
    return FormalScalar.atom(Atom("zder", (1 - u, k)), Q(-1) ** k)


def l_value_atom(cls: CharClass, u: Q) -> FormalScalar:
    """Completed L-value of a nontrivial class at u outside the open strip.

    For a self-dual class with u < 1/2 the functional equation rewrites the
    value as eps(1-u)*L(1-u), orienting every value atom to Re >= 1/2.
    """
    if cls.is_real and u < Q(1, 2):
        return FormalScalar.monomial((
            (Atom("epsv", (cls.value, 1 - u)), 1),
            (Atom("lval", (cls.value, 1 - u)), 1),
        ))
    return FormalScalar.atom(Atom("lval", (cls.value, u)))


def l_derivative_atom(cls: CharClass, u: Q, k: int) -> FormalScalar:
    return FormalScalar.atom(Atom("lder", (cls.value, u, k)))


def eps_value_atom(cls: CharClass, u: Q) -> FormalScalar:
    """Epsilon value; self-dual classes satisfy eps(u) = eps(1-u)^-1."""
    if cls.is_real and u < Q(1, 2):
        return FormalScalar.monomial(((Atom("epsv", (cls.value, 1 - u)), -1),))
    return FormalScalar.atom(Atom("epsv", (cls.value, u)))


def eps_derivative_atom(cls: CharClass, u: Q, k: int) -> FormalScalar:
    return FormalScalar.atom(Atom("epsder", (cls.value, u, k)))


ZETA_CONST = FormalScalar.atom(Atom("zconst", ()))


def zeta_deep_coefficient(k: int) -> FormalScalar:
    return FormalScalar.atom(Atom("zcoef", (k,)))


# ---------------------------------------------------------------------------
# truncated Laurent series over formal scalars
# ---------------------------------------------------------------------------

class Series:
    """Truncated Laurent series sum_i coeffs[i] * delta^(ord+i) + O(delta^prec)."""

    __slots__ = ("ord", "coeffs", "prec")

    def __init__(self, ord: int, coeffs: Sequence[FormalScalar], prec: int | None = None):
        self.ord = ord
        self.coeffs = list(coeffs)
        self.prec = prec if prec is not None else ord + len(coeffs)
        if self.prec < self.ord + len(self.coeffs):
            self.coeffs = self.coeffs[: self.prec - self.ord]

    @staticmethod
    def constant(c: FormalScalar, depth: int = SERIES_DEPTH) -> "Series":
        return Series(0, [c] + [FormalScalar.zero()] * (depth - 1))

    @staticmethod
    def exact_one(depth: int = SERIES_DEPTH) -> "Series":
        return Series.constant(FormalScalar.rational(1), depth)

    def __mul__(self, other: "Series") -> "Series":
        n1, n2 = len(self.coeffs), len(other.coeffs)
        prec = min(self.prec + other.ord, other.prec + self.ord)
        n = prec - (self.ord + other.ord)
        out = [FormalScalar.zero() for _ in range(max(n, 0))]
        for i in range(min(n1, n)):
            if self.coeffs[i].is_zero():
                continue
            for j in range(min(n2, n - i)):
                if other.coeffs[j].is_zero():
                    continue
                out[i + j] = out[i + j] + self.coeffs[i] * other.coeffs[j]
        return Series(self.ord + other.ord, out, prec)

    def inverse(self) -> "Series":
        if not self.coeffs or self.coeffs[0].is_zero():
            raise IndeterminateLeading("cannot invert series with vanishing leading term")
        a0_inv = self.coeffs[0].inverse()
        n = len(self.coeffs)
        out = [FormalScalar.zero() for _ in range(n)]
        out[0] = a0_inv
        for k in range(1, n):
            acc = FormalScalar.zero()
            for j in range(1, k + 1):
                if j < n and not self.coeffs[j].is_zero():
                    acc = acc + self.coeffs[j] * out[k - j]
            out[k] = -(a0_inv * acc)
        return Series(-self.ord, out, -self.ord + n)

    def power(self, e: int) -> "Series":
        if e == 0:
            return Series.exact_one(len(self.coeffs))
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def scale(self, c: Q | int) -> "Series":
        return Series(self.ord, [x.scale(c) for x in self.coeffs], self.prec)

    @staticmethod
    def add(series: Iterable["Series"]) -> "Series":
        items = list(series)
        ord0 = min(s.ord for s in items)
        prec = min(s.prec for s in items)
        n = prec - ord0
        out = [FormalScalar.zero() for _ in range(max(n, 0))]
        for s in items:
            off = s.ord - ord0
            for i, c in enumerate(s.coeffs):
                if off + i < n:
                    out[off + i] = out[off + i] + c
        return Series(ord0, out, prec)

    def leading(self) -> tuple[int, FormalScalar] | None:
        """Exponent and coefficient of the first formally nonzero term."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return self.ord + i, c
        return None

    def render(self) -> str:  # pragma: no cover - debugging aid
        bits = [f"({c.render()})*d^{self.ord + i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(bits) + f" + O(d^{self.prec})"


# ---------------------------------------------------------------------------
# order values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StripDep:
    """Unknown vanishing order of one L-value in the open critical strip."""

    symbol: str
    point: Q
    coeff: int

    def render(self) -> str:
        sign = "+" if self.coeff > 0 else "-"
        mag = abs(self.coeff)
        head = f"{sign}{mag if mag != 1 else ''}"
        return f"{head}ord[{self.symbol} at {self.point}]"

    def to_json(self) -> dict:
        return {"symbol": self.symbol, "at": str(self.point), "coeff": self.coeff}


@dataclass(frozen=True)
class OrderValue:
    """Order of vanishing at a point: exact, floor-only, or strip-conditional.

    ``known(n)`` is an exact order (negative for poles).  ``conditional``
    adds signed multiples of unknown nonnegative strip orders to the base.
    ``at_least(n)`` records only a lower bound (cancellations that run into
    opaque Laurent coefficients).
    """

    kind: str  # "known" | "conditional" | "at-least"
    base: int
    deps: tuple[StripDep, ...] = ()

    @staticmethod
    def known(n: int) -> "OrderValue":
        return OrderValue("known", n)

    @staticmethod
    def at_least(n: int) -> "OrderValue":
        return OrderValue("at-least", n)

    @staticmethod
    def conditional(base: int, deps: Iterable[StripDep]) -> "OrderValue":
        deps = tuple(deps)
        if not deps:
            return OrderValue.known(base)
        return OrderValue("conditional", base, deps)

    @property
    def is_known(self) -> bool:
        return self.kind == "known"

    def definitely_nonnegative(self) -> bool:
        if self.kind == "conditional":
            return self.base >= 0 and all(d.coeff > 0 for d in self.deps)
        return self.base >= 0

    def definitely_positive(self) -> bool:
        if self.kind == "conditional":
            return self.base > 0 and all(d.coeff > 0 for d in self.deps)
        return self.base > 0

    def may_be_negative(self) -> bool:
        if self.kind == "conditional":
            return self.base < 0 or any(d.coeff < 0 for d in self.deps)
        return self.base < 0

    def negate(self) -> "OrderValue":
        if self.kind == "at-least":
            raise GermError("cannot negate a floor-only order")
        return OrderValue(self.kind, -self.base,
                          tuple(StripDep(d.symbol, d.point, -d.coeff) for d in self.deps))

    def shifted(self, n: int) -> "OrderValue":
        return OrderValue(self.kind, self.base + n, self.deps)

    def __add__(self, other: "OrderValue") -> "OrderValue":
        base = self.base + other.base
        if self.kind == "known" and other.kind == "known":
            return OrderValue.known(base)
        if "at-least" in (self.kind, other.kind):
            neg = [d for d in self.deps + other.deps if d.coeff < 0]
            if neg:
                raise GermError("cannot combine a floor-only order with a possible pole")
            return OrderValue.at_least(base)
        return OrderValue.conditional(base, self.deps + other.deps)

    def render(self) -> str:
        if self.kind == "known":
            return str(self.base)
        if self.kind == "at-least":
            return f">= {self.base}"
        tail = " ".join(d.render() for d in self.deps)
        return f"{self.base} {tail}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "base": self.base}
        if self.deps:
            out["deps"] = [d.to_json() for d in self.deps]
        return out


# ---------------------------------------------------------------------------
# symbol germs from the knowledge base
# ---------------------------------------------------------------------------

def _strip_contains(u: Q) -> bool:
    lo, hi = COMPLETED_L_FACTS["trivial"]["open_strip"]
    return lo < u < hi


def _zeta_pole_series(u0: Q, a: Q, depth: int) -> Series:
    """Laurent series of completed zeta at argument u0 + a*delta, u0 in {0,1}.

    The expansion at 1 is 1/x + c + c2*x + ...; by the exact reflection the
    expansion at 0 is -1/x + c - c2*x + ... with the same coefficients.
    """
    residue = COMPLETED_L_FACTS["trivial"]["pole_residues"][u0]
    sign = Q(1) if u0 == 1 else Q(-1)
    coeffs = [FormalScalar.rational(residue / a)]
    coeffs.append(ZETA_CONST)
    for k in range(2, depth):
        coeffs.append(zeta_deep_coefficient(k).scale(sign ** k * a ** (k - 1)))
    return Series(-1, coeffs)


def _zeta_value_series(u0: Q, a: Q, depth: int) -> Series:
    coeffs = [zeta_value_atom(u0)]
    for k in range(1, depth):
        coeffs.append(zeta_derivative_atom(u0, k).scale(a ** k))
    return Series(0, coeffs)


def _l_value_series(cls: CharClass, u0: Q, a: Q, depth: int) -> Series:
    """Series of a nontrivial completed L around argument u0 + a*delta.

    For a self-dual class right of the center the functional equation
    L(x) = eps(1-x) L(1-x) rebases the expansion on the reflected point,
    so every derivative atom lives at an argument <= 1/2 and epsilon
    derivatives cancel structurally in grouped sums.
    """
    if cls.is_real and u0 > Q(1, 2):
        return _eps_series(cls, 1 - u0, -a, depth) * _l_value_series(cls, 1 - u0, -a, depth)
    coeffs = [l_value_atom(cls, u0)]
    for k in range(1, depth):
        coeffs.append(l_derivative_atom(cls, u0, k).scale(a ** k))
    return Series(0, coeffs)


def _eps_series(cls: CharClass, u0: Q, a: Q, depth: int) -> Series:
    if cls is CharClass.TRIVIAL:
        return Series.exact_one(depth)
    if cls.is_real and u0 > Q(1, 2):
        # eps(x) * eps(1-x) = 1 for a self-dual class
        return _eps_series(cls, 1 - u0, -a, depth).inverse()
    coeffs = [eps_value_atom(cls, u0)]
    for k in range(1, depth):
        coeffs.append(eps_derivative_atom(cls, u0, k).scale(a ** k))
    return Series(0, coeffs)


def classify_symbol(sym: LSymbol, cls: CharClass, s0: Q) -> str:
    """One of "known", "strip" for the symbol at the given point.

    Epsilon factors are entire and nonvanishing, so always known; L-symbols
    of every class have unknown vanishing order inside the open strip.
    """
    if sym.kind == EPS:
        return "known"
    u0 = sym.arg.at(s0)
    return "strip" if _strip_contains(u0) else "known"


def symbol_order(sym: LSymbol, cls: CharClass, s0: Q) -> int:
    """Exact order of a non-strip symbol at s0 (0, or -1 at a zeta pole)."""
    eff = power_class(cls, sym.power)
    if sym.kind == EPS:
        return 0
    u0 = sym.arg.at(s0)
    if eff is CharClass.TRIVIAL and u0 in COMPLETED_L_FACTS["trivial"]["pole_residues"]:
        if sym.arg.a == 0:
            raise DegenerateSymbol(
                f"symbol {sym.render()} is constant at a completed-zeta pole")
        return -1
    return 0


def symbol_series(sym: LSymbol, cls: CharClass, s0: Q, depth: int = SERIES_DEPTH) -> Series:
    """Truncated Laurent expansion of one symbol around s0 (non-strip only)."""
    eff = power_class(cls, sym.power)
    u0 = sym.arg.at(s0)
    a = sym.arg.a
    if sym.kind == EPS:
        if eff is CharClass.TRIVIAL:
            return Series.exact_one(depth)
        return _eps_series(eff, u0, a, depth)
    if _strip_contains(u0):
        raise StripOrderUnknown(f"symbol {sym.render()} has strip argument {u0}")
    if eff is CharClass.TRIVIAL:
        if u0 in COMPLETED_L_FACTS["trivial"]["pole_residues"]:
            if a == 0:
                raise DegenerateSymbol(
                    f"symbol {sym.render()} is constant at a completed-zeta pole")
            return _zeta_pole_series(u0, a, depth)
        return _zeta_value_series(u0, a, depth)
    return _l_value_series(eff, u0, a, depth)


def _class_symbol_render(sym: LSymbol, cls: CharClass) -> str:
    k = reduce_power(cls, sym.power)
    chi = {0: "1", 1: "chi"}.get(k, f"chi^{k}")
    return f"{sym.kind}({sym.arg.render()},{chi})"


def split_expression(expr: LExpression, cls: CharClass, s0: Q):
    """Separate strip symbols from symbols with known local behavior.

    Returns (known: [(symbol, exponent)], strip deps: [StripDep]).
    """
    known: list[tuple[LSymbol, int]] = []
    deps: list[StripDep] = []
    for sym, e in expr.factors:
        if classify_symbol(sym, cls, s0) == "strip":
            deps.append(StripDep(_class_symbol_render(sym, cls), sym.arg.at(s0), e))
        else:
            known.append((sym, e))
    return known, deps


def order_at(expr: LExpression, cls: CharClass, s0: Q) -> OrderValue:
    """Order of vanishing of the expression at s = s0 (negative for poles)."""
    known, deps = split_expression(expr, cls, s0)
    base = sum(symbol_order(sym, cls, s0) * e for sym, e in known)
    return OrderValue.conditional(base, deps)


@dataclass
class Germ:
    """Exact order plus formal leading coefficient (and its series)."""

    order: int
    leading: FormalScalar
    series: Series
    certified: bool = True

    def render(self) -> str:
        return f"order {self.order}, leading {self.leading.render()}"


def known_part_series(expr: LExpression, cls: CharClass, s0: Q,
                      depth: int = SERIES_DEPTH) -> Series:
    out = Series.exact_one(depth).scale(expr.scalar)
    for sym, e in expr.factors:
        if classify_symbol(sym, cls, s0) == "strip":
            continue
        out = out * symbol_series(sym, cls, s0, depth).power(e)
    return out


def germ_at(expr: LExpression, cls: CharClass, s0: Q,
            depth: int = SERIES_DEPTH) -> Germ:
    """Germ of the expression at s0; refuses strip-unknown orders."""
    known, deps = split_expression(expr, cls, s0)
    if deps:
        raise StripOrderUnknown(
            "order depends on unknown strip zeros: "
            + ", ".join(d.render() for d in deps))
    series = known_part_series(expr, cls, s0, depth)
    got = series.leading()
    if got is None:  # pragma: no cover - a product of nonzero leadings
        raise IndeterminateLeading("empty series")
    order, lead = got
    return Germ(order, lead, series, certified=lead.certified_nonzero())


@dataclass
class GermSum:
    """Result of summing germs: exact when certified, else a floor."""

    order: OrderValue
    leading: FormalScalar | None
    series: Series

    @property
    def exact(self) -> bool:
        return self.order.is_known


def sum_series(terms: list[tuple[Series, Q]]) -> GermSum:
    total = Series.add([s.scale(w) for s, w in terms if w != 0]) if any(w != 0 for _, w in terms) \
        else Series(0, [FormalScalar.zero()], 1)
    got = total.leading()
    if got is None:
        return GermSum(OrderValue.at_least(total.prec), None, total)
    order, lead = got
    if lead.certified_nonzero():
        return GermSum(OrderValue.known(order), lead, total)
    return GermSum(OrderValue.at_least(order), lead, total)


def sum_germs(terms: list[tuple[Germ, Q]], require_certified: bool = True) -> GermSum:
    """Weighted sum of germs with exact cancellation detection.

    The minimum order wins; when leading coefficients cancel formally the
    next Laurent coefficient is consulted.  If the surviving coefficient
    cannot be certified nonzero the result is only a floor; with
    ``require_certified`` that situation raises ``IndeterminateLeading``.
    """
    out = sum_series([(g.series, w) for g, w in terms])
    if require_certified and not out.exact:
        raise IndeterminateLeading(
            "indeterminate leading coefficient: "
            + (out.leading.render() if out.leading is not None else "all examined terms cancel"))
    return out


# ---------------------------------------------------------------------------
# functional-equation rewrite on expressions
# ---------------------------------------------------------------------------

def _oriented(arg: AffineForm) -> bool:
    if arg.a > 0:
        return True
    if arg.a < 0:
        return False
    return arg.b >= Q(1, 2)


def apply_functional_equation(expr: LExpression, cls: CharClass | None = None) -> LExpression:
    """Rewrite L-symbols toward arguments in the half-plane Re >= 1/2.

    Each L(u, chi^k) with a left-oriented argument u becomes
    eps(1-u, chi^-k) * L(1-u, chi^-k).  Epsilon symbols are left alone.
    The rewrite is idempotent; passing a class additionally reduces chi
    powers (so for self-dual classes the result matches the classical
    single-character form).
    """
    from .normfactor import canonicalize  # local import to avoid cycle

    d: dict[LSymbol, int] = {}
    for sym, e in expr.factors:
        if sym.kind == L and not _oriented(sym.arg):
            refl = sym.arg.reflect()
            for new in (LSymbol(L, refl, -sym.power), LSymbol(EPS, refl, -sym.power)):
                d[new] = d.get(new, 0) + e
        else:
            d[sym] = d.get(sym, 0) + e
    out = LExpression.build(expr.scalar, d)
    return canonicalize(out, cls) if cls is not None else out
