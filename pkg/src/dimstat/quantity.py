"""Quantity calculus: dimensions, units, scale kinds and the arithmetic on them.

A measured value is written ``X = {X} [X]``: a float magnitude and a `Unit`.
Dimension exponents and unit factors are exact rationals so that downstream
Pi-group extraction never sees rounding; magnitudes are plain floats.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    ImaginaryResult,
    RegistryError,
    ScaleKindMismatch,
    ScaleViolation,
    UnknownDimension,
    UnknownUnit,
)

__all__ = [
    "Dimension",
    "ScaleKind",
    "Unit",
    "Quantity",
    "UnitRegistry",
    "ChangeReport",
    "DIMENSIONLESS",
    "convert",
    "add",
    "sub",
    "compare",
    "mul",
    "div",
    "pow_rational",
    "assess_change",
    "validate_quantity",
    "default_registry",
    "parse_power_product",
    "to_fraction",
]


def to_fraction(value) -> Fraction:
    """Exact rational from int, Fraction, or a decimal / ``p/q`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {value!r}") from exc


def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def _render_powers(items: Iterable[tuple[str, Fraction]]) -> str:
    parts = []
    for name, e in items:
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{_fmt_exp(e)}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# power products:  kg*m^-3,  (N*Theta)^-1,  L^(1/2)/T
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[^\W\d][\w°]*|°\w*)|(?P<op>[*/^()\-]))")


def _tokenize_product(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character {text[pos]!r} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_power_product(text: str) -> list[tuple[str, Fraction]]:
    """Parse ``a*b^2/c^(1/2)`` into ordered ``(symbol, exponent)`` pairs.

    The literal ``1`` denotes the empty product. Repeated symbols accumulate.
    Raises ``ValueError`` on malformed input.
    """
    toks = _tokenize_product(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (expected is not None and tok[1] != expected):
            raise ValueError(f"expected {expected or 'token'} in {text!r}")
        pos += 1
        return tok

    def exponent() -> Fraction:
        sign = 1
        paren = False
        if peek()[1] == "(":
            take("(")
            paren = True
        if peek()[1] == "-":
            take("-")
            sign = -1
        kind, val = take()
        if kind != "num":
            raise ValueError(f"bad exponent in {text!r}")
        e = Fraction(val)
        if peek()[1] == "/" and paren:
            take("/")
            kind, den = take()
            if kind != "num":
                raise ValueError(f"bad exponent in {text!r}")
            e = e / Fraction(den)
        if paren:
            take(")")
        return sign * e

    def factor() -> dict[str, Fraction]:
        kind, val = peek()
        if val == "(":
            take("(")
            inner = product()
            take(")")
        elif kind == "num":
            take()
            if Fraction(val) != 1:
                raise ValueError(f"numeric factor {val!r} not allowed in {text!r}")
            inner = {}
        elif kind == "name":
            take()
            inner = {val: Fraction(1)}
        else:
            raise ValueError(f"unexpected {val!r} in {text!r}")
        if peek()[1] == "^":
            take("^")
            e = exponent()
            inner = {k: v * e for k, v in inner.items()}
        return inner

    def product() -> dict[str, Fraction]:
        acc: dict[str, Fraction] = {}

        def merge(d, sign):
            for k, v in d.items():
                acc[k] = acc.get(k, Fraction(0)) + sign * v

        merge(factor(), 1)
        while peek()[1] in ("*", "/"):
            op = take()[1]
            merge(factor(), 1 if op == "*" else -1)
        return acc

    if not toks:
        raise ValueError("empty expression")
    result = product()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return [(k, v) for k, v in result.items() if v != 0]


# ---------------------------------------------------------------------------
# Dimension
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Dimension:
    """Exact rational exponent vector over an ordered list of base dimensions.

    Equality and hashing use the nonzero exponents only, so the same physical
    dimension compares equal whether it was built over ``(L, M, T)`` or over a
    larger system that also contains temperature.
    """

    bases: tuple[str, ...]
    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.bases) != len(self.exponents):
            raise ValueError("exponent count must equal base-dimension count")
        if len(set(self.bases)) != len(self.bases):
            raise ValueError("duplicate base dimension")
        object.__setattr__(self, "exponents", tuple(Fraction(e) for e in self.exponents))

    @classmethod
    def none(cls, bases: Iterable[str] = ()) -> "Dimension":
        bases = tuple(bases)
        return cls(bases, (Fraction(0),) * len(bases))

    @classmethod
    def from_map(cls, mapping: Mapping[str, Fraction], bases: Iterable[str] | None = None) -> "Dimension":
        if bases is None:
            bases = tuple(mapping)
        bases = tuple(bases)
        missing = [k for k, v in mapping.items() if v != 0 and k not in bases]
        if missing:
            raise UnknownDimension(f"unknown base dimension {missing[0]!r}")
        return cls(bases, tuple(Fraction(mapping.get(b, 0)) for b in bases))

    @classmethod
    def parse(cls, text: str, bases: Iterable[str]) -> "Dimension":
        bases = tuple(bases)
        try:
            pairs = parse_power_product(text)
        except ValueError as exc:
            raise UnknownDimension(str(exc)) from exc
        acc: dict[str, Fraction] = {}
        for k, v in pairs:
            if k not in bases:
                raise UnknownDimension(f"unknown base dimension {k!r}")
            acc[k] = acc.get(k, Fraction(0)) + v
        return cls.from_map(acc, bases)

    def as_dict(self) -> dict[str, Fraction]:
        return {b: e for b, e in zip(self.bases, self.exponents) if e != 0}

    def __getitem__(self, base: str) -> Fraction:
        return self.as_dict().get(base, Fraction(0))

    @property
    def is_dimensionless(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def over(self, bases: Iterable[str]) -> "Dimension":
        """Re-express over another base list; fails if a used base is missing."""
        return Dimension.from_map(self.as_dict(), tuple(bases))

    def vector(self, bases: Iterable[str] | None = None) -> tuple[Fraction, ...]:
        if bases is None:
            return self.exponents
        return self.over(bases).exponents

    def _merged_bases(self, other: "Dimension") -> tuple[str, ...]:
        return self.bases + tuple(b for b in other.bases if b not in self.bases)

    def __mul__(self, other: "Dimension") -> "Dimension":
        bases = self._merged_bases(other)
        a, b = self.as_dict(), other.as_dict()
        return Dimension(bases, tuple(a.get(k, 0) + b.get(k, 0) for k in bases))

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return self * other ** -1

    def __pow__(self, power) -> "Dimension":
        p = to_fraction(power)
        return Dimension(self.bases, tuple(e * p for e in self.exponents))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dimension):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(frozenset(self.as_dict().items()))

    def __str__(self) -> str:
        return _render_powers(zip(self.bases, self.exponents))

    def __repr__(self) -> str:
        return f"Dimension({self})"


class ScaleKind(str, enum.Enum):
    RATIO = "ratio"
    INTERVAL = "interval"


# ---------------------------------------------------------------------------
# Unit and Quantity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    """A unit: ``coherent value = magnitude * factor + offset``."""

    symbol: str
    dimension: Dimension
    factor: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)
    scale: ScaleKind = ScaleKind.RATIO
    powers: tuple[tuple[str, Fraction], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "factor", to_fraction(self.factor))
        object.__setattr__(self, "offset", to_fraction(self.offset))
        if self.factor <= 0:
            raise RegistryError(f"unit {self.symbol!r}: factor must be positive")
        if self.offset != 0 and self.scale is not ScaleKind.INTERVAL:
            raise RegistryError(f"unit {self.symbol!r}: a nonzero offset requires an interval scale")
        if not self.powers:
            object.__setattr__(self, "powers", ((self.symbol, Fraction(1)),) if self.symbol != "1" else ())

    @property
    def is_dimensionless(self) -> bool:
        return self.dimension.is_dimensionless

    def delta(self) -> "Unit":
        """Offset-free ratio-scale unit for differences (``degC`` → ``delta_degC``)."""
        if self.offset == 0 and self.scale is ScaleKind.RATIO:
            return self
        return Unit(f"delta_{self.symbol}", self.dimension, self.factor, Fraction(0), ScaleKind.RATIO)

    def _require_ratio(self, what: str):
        if self.scale is not ScaleKind.RATIO:
            raise ScaleViolation(f"{what} needs a ratio-scale unit, got interval unit {self.symbol!r}")

    def __mul__(self, other: "Unit") -> "Unit":
        self._require_ratio("multiplication")
        other._require_ratio("multiplication")
        acc: dict[str, Fraction] = {}
        for name, e in self.powers + other.powers:
            acc[name] = acc.get(name, Fraction(0)) + e
        powers = tuple((k, v) for k, v in acc.items() if v != 0)
        return Unit(
            _render_powers(powers),
            self.dimension * other.dimension,
            self.factor * other.factor,
            powers=powers or (("1", Fraction(0)),),
        )

    def __truediv__(self, other: "Unit") -> "Unit":
        return self * other ** -1

    def __pow__(self, power) -> "Unit":
        self._require_ratio("exponentiation")
        p = to_fraction(power)
        powers = tuple((k, v * p) for k, v in self.powers if v * p != 0)
        if p.denominator == 1:
            factor = self.factor ** p.numerator
        else:
            root = _exact_root(self.factor, p)
            factor = root if root is not None else Fraction(float(self.factor) ** float(p))
        return Unit(_render_powers(powers), self.dimension ** p, factor, powers=powers or (("1", Fraction(0)),))

    def __str__(self) -> str:
        return self.symbol


def _exact_root(value: Fraction, power: Fraction) -> Fraction | None:
    """``value**power`` if it is rational, else ``None``."""
    def iroot(n: int, k: int) -> int | None:
        if n < 0:
            return None
        if n < 2:
            return n
        if k >= n.bit_length():  # 2**k > n, so no integer root
            return None
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == n:
                return cand
        return None

    num, den = power.numerator, power.denominator
    a, b = iroot(value.numerator, den), iroot(value.denominator, den)
    if a is None or b is None:
        return None
    return Fraction(a, b) ** num


DIMENSIONLESS = Unit("1", Dimension.none(), Fraction(1))


@dataclass(frozen=True)
class Quantity:
    magnitude: float
    unit: Unit = DIMENSIONLESS

    @property
    def dimension(self) -> Dimension:
        return self.unit.dimension

    def to(self, target: Unit) -> "Quantity":
        return convert(self, target)

    def coherent(self) -> float:
        """Magnitude in the coherent base unit of its dimension."""
        return self.magnitude * float(self.unit.factor) + float(self.unit.offset)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            other = Quantity(float(other))
        return mul(self, other)

    def __rmul__(self, other):
        return Quantity(float(other)) * self

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            other = Quantity(float(other))
        return div(self, other)

    def __pow__(self, power):
        return pow_rational(self, power)

    def __neg__(self):
        return Quantity(-self.magnitude, self.unit)

    def __str__(self) -> str:
        return f"{self.magnitude!r} [{self.unit.symbol}]"


def convert(q: Quantity, target: Unit) -> Quantity:
    if q.unit.dimension != target.dimension:
        raise DimensionMismatch(f"cannot convert [{q.unit.dimension}] to [{target.dimension}]")
    src = q.unit
    if src.offset == 0 and target.offset == 0:
        ratio = src.factor / target.factor
        if ratio.denominator == 1:
            value = q.magnitude * ratio.numerator
        else:
            value = q.magnitude * ratio.numerator / ratio.denominator
    else:
        value = (q.magnitude * float(src.factor) + float(src.offset - target.offset)) / float(target.factor)
    return Quantity(value, target)


def _same_dimension(x: Quantity, y: Quantity, op: str):
    if x.dimension != y.dimension:
        raise DimensionMismatch(f"cannot {op} [{x.dimension}] and [{y.dimension}]")


def add(x: Quantity, y: Quantity) -> Quantity:
    """Sum in ``x``'s unit.

    Two interval-scale absolutes cannot be summed; an interval quantity plus a
    ratio-scale quantity of the same dimension is read as "absolute + delta".
    """
    _same_dimension(x, y, "add")
    xi = x.unit.scale is ScaleKind.INTERVAL
    yi = y.unit.scale is ScaleKind.INTERVAL
    if xi and yi:
        raise ScaleViolation("sum of two interval-scale values is undefined; subtract them instead")
    if xi:
        step = convert(y, x.unit.delta()).magnitude
        return Quantity(x.magnitude + step, x.unit)
    if yi:
        step = convert(x, y.unit.delta()).magnitude
        return Quantity(y.magnitude + step, y.unit)
    return Quantity(x.magnitude + convert(y, x.unit).magnitude, x.unit)


def sub(x: Quantity, y: Quantity) -> Quantity:
    """Difference; two interval absolutes give a ratio-scale delta."""
    _same_dimension(x, y, "subtract")
    xi = x.unit.scale is ScaleKind.INTERVAL
    yi = y.unit.scale is ScaleKind.INTERVAL
    if xi and yi:
        return Quantity(x.magnitude - convert(y, x.unit).magnitude, x.unit.delta())
    if xi:
        return Quantity(x.magnitude - convert(y, x.unit.delta()).magnitude, x.unit)
    if yi:
        raise ScaleViolation("cannot subtract an interval-scale absolute from a ratio-scale value")
    return Quantity(x.magnitude - convert(y, x.unit).magnitude, x.unit)


def compare(x: Quantity, y: Quantity) -> int:
    """-1, 0 or 1. Mixed ratio/interval comparison is an error."""
    _same_dimension(x, y, "compare")
    if x.unit.scale is not y.unit.scale:
        raise ScaleKindMismatch("compare ratio- and interval-scale values via an explicit convert")
    a, b = x.magnitude, convert(y, x.unit).magnitude
    return (a > b) - (a < b)


def mul(x: Quantity, y: Quantity) -> Quantity:
    if x.unit.scale is ScaleKind.INTERVAL or y.unit.scale is ScaleKind.INTERVAL:
        raise ScaleViolation("interval-scale operands must be differenced or converted before multiplying")
    return Quantity(x.magnitude * y.magnitude, x.unit * y.unit)


def div(x: Quantity, y: Quantity) -> Quantity:
    if x.unit.scale is ScaleKind.INTERVAL or y.unit.scale is ScaleKind.INTERVAL:
        raise ScaleViolation("interval-scale operands must be differenced or converted before dividing")
    if y.magnitude == 0:
        raise DivisionByZero("divisor magnitude is zero")
    return Quantity(x.magnitude / y.magnitude, x.unit / y.unit)


def pow_rational(x: Quantity, gamma) -> Quantity:
    g = to_fraction(gamma)
    if x.unit.scale is ScaleKind.INTERVAL:
        raise ScaleViolation("rational powers need a ratio-scale operand")
    if g == 0:
        return Quantity(1.0, DIMENSIONLESS)
    m = x.magnitude
    if m == 0 and g < 0:
        raise DivisionByZero("zero raised to a negative power")
    if m < 0:
        if g.denominator % 2 == 0:
            raise ImaginaryResult(f"even root of negative magnitude {m!r}")
        value = (-1.0) ** g.numerator * abs(m) ** float(g)
    elif g.denominator == 1:
        value = m ** g.numerator
    else:
        value = m ** float(g)
    return Quantity(float(value), x.unit ** g)


@dataclass(frozen=True)
class ChangeReport:
    kind: str  # "ratio" or "difference"
    value: float
    unit: Unit
    meaningful: str

    def __str__(self) -> str:
        if self.kind == "ratio":
            return f"ratio after/before = {self.value!r} ({self.meaningful})"
        return f"difference after-before = {self.value!r} [{self.unit.symbol}] ({self.meaningful})"


def assess_change(before: Quantity, after: Quantity) -> ChangeReport:
    """Compare two measurements the way their scale permits.

    Ratio scales compare by the unitless ratio, interval scales by the
    difference.
    """
    _same_dimension(before, after, "compare")
    if before.unit.scale is not after.unit.scale:
        raise ScaleKindMismatch("before and after must share a scale kind")
    after_c = convert(after, before.unit)
    if before.unit.scale is ScaleKind.RATIO:
        if before.magnitude == 0:
            raise DivisionByZero("ratio change from a zero baseline")
        return ChangeReport("ratio", after_c.magnitude / before.magnitude, DIMENSIONLESS,
                            "ratio scale: relative change is meaningful")
    return ChangeReport("difference", after_c.magnitude - before.magnitude, before.unit.delta(),
                        "interval scale: only differences are meaningful")


def validate_quantity(q: Quantity) -> list[str]:
    """Soft checks; negative ratio-scale magnitudes are flagged, not rejected."""
    issues = []
    if q.unit.scale is ScaleKind.RATIO and q.unit.offset == 0 and q.magnitude < 0:
        issues.append(f"negative magnitude {q.magnitude!r} on a ratio scale [{q.unit.symbol}]")
    return issues


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


class UnitRegistry:
    """Immutable symbol → Unit table over a declared list of base dimensions."""

    def __init__(self, bases: Iterable[str], units: Mapping[str, Unit]):
        self._bases = tuple(bases)
        self._units = MappingProxyType(dict(units))
        for sym, u in self._units.items():
            if any(b not in self._bases for b in u.dimension.as_dict()):
                raise RegistryError(f"unit {sym!r} uses an unregistered base dimension")

    @property
    def bases(self) -> tuple[str, ...]:
        return self._bases

    @property
    def units(self) -> Mapping[str, Unit]:
        return self._units

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._units

    def __getitem__(self, symbol: str) -> Unit:
        return self.unit(symbol)

    def unit(self, expr: str) -> Unit:
        """Look up a symbol or build a composite unit from ``kg*m^-3`` style text."""
        expr = expr.strip()
        if expr in self._units:
            return self._units[expr]
        try:
            pairs = parse_power_product(expr)
        except ValueError as exc:
            raise UnknownUnit(f"unknown unit {expr!r}") from exc
        result = DIMENSIONLESS
        for sym, e in pairs:
            if sym not in self._units:
                raise UnknownUnit(f"unknown unit {sym!r}")
            result = result * self._units[sym] ** e
        return result

    def coherent(self, dimension: Dimension) -> Unit:
        """The factor-1 coherent unit for ``dimension``."""
        d = dimension.over(self._bases)
        return Unit(_render_powers((self._base_symbol(b), e) for b, e in zip(self._bases, d.exponents)), d)

    def _base_symbol(self, base: str) -> str:
        for sym, u in self._units.items():
            if u.factor == 1 and u.offset == 0 and u.dimension == Dimension.from_map({base: 1}):
                return sym
        return base

    def quantity(self, magnitude: float, unit: str) -> Quantity:
        return Quantity(float(magnitude), self.unit(unit))

    def extend(self, text: str) -> "UnitRegistry":
        bases, units = _parse_registry(text, self._bases, dict(self._units))
        return UnitRegistry(bases, units)

    @classmethod
    def from_text(cls, text: str) -> "UnitRegistry":
        bases, units = _parse_registry(text, (), {"1": DIMENSIONLESS})
        return cls(bases, units)

    @classmethod
    def from_file(cls, path: str | Path) -> "UnitRegistry":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


_UNIT_LINE = re.compile(
    r"^unit\s+(?P<sym>\S+)\s*=\s*(?P<factor>[0-9.]+(?:/[0-9.]+)?)\s+(?P<expr>.+?)"
    r"(?:\s+offset\s+(?P<offset>-?[0-9.]+(?:/[0-9]+)?))?(?P<interval>\s+interval)?\s*$"
)
_BASE_LINE = re.compile(r"^base\s+(?P<dim>[^\W\d]\w*)\s+(?P<sym>\S+)\s*$")


def _parse_registry(text: str, bases: tuple[str, ...], units: dict[str, Unit]):
    bases = list(bases)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _BASE_LINE.match(line)
        if m:
            dim, sym = m.group("dim"), m.group("sym")
            if dim in bases:
                raise RegistryError(f"line {lineno}: base dimension {dim!r} declared twice")
            if sym in units:
                raise RegistryError(f"line {lineno}: duplicate unit symbol {sym!r}")
            bases.append(dim)
            units[sym] = Unit(sym, Dimension.from_map({dim: 1}))
            continue
        m = _UNIT_LINE.match(line)
        if not m:
            raise RegistryError(f"line {lineno}: cannot parse {raw.strip()!r}")
        sym = m.group("sym")
        if sym in units:
            raise RegistryError(f"line {lineno}: duplicate unit symbol {sym!r}")
        num, _, den = m.group("factor").partition("/")
        factor = to_fraction(num) / (to_fraction(den) if den else 1)
        expr = m.group("expr").strip()
        ref = DIMENSIONLESS
        try:
            for s, e in parse_power_product(expr):
                if s not in units:
                    raise RegistryError(f"line {lineno}: unknown unit {s!r}")
                ref = ref * units[s] ** e
        except (ValueError, ScaleViolation) as exc:
            raise RegistryError(f"line {lineno}: {exc}") from exc
        offset = to_fraction(m.group("offset")) if m.group("offset") else Fraction(0)
        interval = bool(m.group("interval")) or offset != 0
        units[sym] = Unit(
            sym,
            ref.dimension.over(bases),
            factor * ref.factor,
            offset,
            ScaleKind.INTERVAL if interval else ScaleKind.RATIO,
        )
    return tuple(bases), units


@lru_cache(maxsize=1)
def default_registry() -> UnitRegistry:
    text = resources.files("dimstat").joinpath("data/units.txt").read_text(encoding="utf-8")
    return UnitRegistry.from_text(text)
