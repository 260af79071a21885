"""Model declarations, the expression AST, and CSV datasets.

A model file has four sections::

    dimensions: L M T
    variables:
      F   : M*L*T^-2   secondary
      rho : M*L^-3     primary
    parameters:
      k   : ?
    equations:
      F = k * rho

Variables take optional trailing keywords ``interval``, ``primary`` or
``secondary``, and ``response``. Parameters use ``?`` for an unknown
dimension. An equation without ``=`` means ``expr = 0``.
"""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import (
    DatasetError,
    DimensionMismatch,
    DuplicateName,
    MissingColumn,
    ModelSyntaxError,
    RaggedRows,
    UnknownDimension,
)
from .quantity import Dimension, ScaleKind, Unit, UnitRegistry, default_registry

TRANSCENDENTAL = ("ln", "log10", "exp", "sin", "cos", "sinh", "cosh")


class Role(str, enum.Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"
    UNASSIGNED = "unassigned"


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end: int

    def key(self) -> str:
        return f"{self.line}:{self.col}-{self.end}"


_NOSPAN = Span(0, 0, 0)


def _span_field():
    return field(default=_NOSPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Param:
    name: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Const:
    value: Fraction
    unit: str | None = None
    span: Span = _span_field()


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class PowRational:
    base: "Expr"
    exponent: Fraction
    span: Span = _span_field()


@dataclass(frozen=True)
class PowSymbolic:
    base: "Expr"
    param: str
    span: Span = _span_field()


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class PosPart:
    arg: "Expr"
    span: Span = _span_field()


@dataclass(frozen=True)
class Deriv:
    arg: "Expr"
    wrt: str
    span: Span = _span_field()


Expr = Union[Var, Param, Const, Add, Sub, Neg, Mul, Div, PowRational, PowSymbolic, Call, PosPart, Deriv]


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Call, PosPart, Deriv)):
        return (e.arg,)
    if isinstance(e, (PowRational, PowSymbolic)):
        return (e.base,)
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    yield e
    for c in children(e):
        yield from walk(c)


def referenced_names(e: Expr) -> set[str]:
    out = set()
    for node in walk(e):
        if isinstance(node, (Var, Param)):
            out.add(node.name)
        elif isinstance(node, PowSymbolic):
            out.add(node.param)
        elif isinstance(node, Deriv):
            out.add(node.wrt)
    return out


@dataclass(frozen=True)
class Equation:
    lhs: Expr
    rhs: Expr
    implicit_zero: bool = False
    line: int = field(default=0, compare=False)


# ---------------------------------------------------------------------------
# declarations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VariableDecl:
    name: str
    dimension: Dimension
    scale: ScaleKind = ScaleKind.RATIO
    role: Role = Role.UNASSIGNED
    response: bool = False


@dataclass(frozen=True)
class ParameterDecl:
    name: str
    dimension: Dimension | None = None  # None = unknown, to be inferred


@dataclass(frozen=True)
class ModelSpec:
    bases: tuple[str, ...]
    variables: tuple[VariableDecl, ...]
    parameters: tuple[ParameterDecl, ...] = ()
    equations: tuple[Equation, ...] = ()
    registry: UnitRegistry | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        seen = set()
        for name in [v.name for v in self.variables] + [q.name for q in self.parameters]:
            if name in seen:
                raise DuplicateName(f"name {name!r} declared twice")
            seen.add(name)

    @property
    def p(self) -> int:
        return len(self.variables)

    @property
    def n(self) -> int:
        return len(self.bases)

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> VariableDecl:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def parameter(self, name: str) -> ParameterDecl:
        for q in self.parameters:
            if q.name == name:
                return q
        raise KeyError(name)

    def is_variable(self, name: str) -> bool:
        return any(v.name == name for v in self.variables)

    def is_parameter(self, name: str) -> bool:
        return any(q.name == name for q in self.parameters)

    def units(self) -> UnitRegistry:
        return self.registry if self.registry is not None else default_registry()

    def with_parameter_dimensions(self, dims: dict[str, Dimension]) -> "ModelSpec":
        params = tuple(ParameterDecl(q.name, dims.get(q.name, q.dimension)) for q in self.parameters)
        return ModelSpec(self.bases, self.variables, params, self.equations, self.registry)

    def with_roles(self, primaries: Sequence[str]) -> "ModelSpec":
        prim = set(primaries)
        unknown = prim - set(self.variable_names)
        if unknown:
            raise KeyError(sorted(unknown)[0])
        vs = tuple(
            VariableDecl(v.name, v.dimension, v.scale, Role.PRIMARY if v.name in prim else Role.SECONDARY, v.response)
            for v in self.variables
        )
        return ModelSpec(self.bases, vs, self.parameters, self.equations, self.registry)


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_EXPR_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<unit>\[[^\]]*\])|(?P<op>[-+*/^(),=])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize_expr(text: str, line: int) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            raise ModelSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    out.append(_Tok("eof", "", len(text) + 1))
    return out


class _ExprParser:
    def __init__(self, text: str, line: int, variables: set[str], parameters: set[str], col0: int = 0):
        self.toks = _tokenize_expr(text, line)
        for t in self.toks:
            t.col += col0
        self.i = 0
        self.line = line
        self.variables = variables
        self.parameters = parameters

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ModelSyntaxError(msg, self.line, tok.col)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of line'!r}")
        return self.next()

    def span(self, start: _Tok) -> Span:
        prev = self.toks[self.i - 1]
        return Span(self.line, start.col, prev.col + len(prev.text))

    # additive
    def expr(self) -> Expr:
        start = self.peek()
        left = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            right = self.term()
            cls = Add if op == "+" else Sub
            left = cls(left, right, self.span(start))
        return left

    def term(self) -> Expr:
        start = self.peek()
        left = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            right = self.unary()
            cls = Mul if op == "*" else Div
            left = cls(left, right, self.span(start))
        return left

    def unary(self) -> Expr:
        start = self.peek()
        if start.text == "-":
            self.next()
            return Neg(self.unary(), self.span(start))
        if start.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        start = self.peek()
        base = self.atom()
        while self.peek().text == "^":
            self.next()
            t = self.peek()
            if t.kind == "name":
                self.next()
                if t.text not in self.parameters:
                    self.error(f"symbolic exponent {t.text!r} must be a declared parameter", t)
                base = PowSymbolic(base, t.text, self.span(start))
            else:
                base = PowRational(base, self.rational_exponent(), self.span(start))
        return base

    def rational_exponent(self) -> Fraction:
        paren = False
        if self.peek().text == "(":
            self.next()
            paren = True
            t = self.peek()
            if t.kind == "name" and t.text in self.parameters:
                self.next()
                self.expect(")")
                self.error("parenthesized symbolic exponents are not supported; write x^name", t)
        sign = 1
        if self.peek().text in ("-", "+"):
            sign = -1 if self.next().text == "-" else 1
        t = self.next()
        if t.kind != "num":
            self.error("exponent must be a rational number or a parameter name", t)
        value = Fraction(t.text)
        if paren and self.peek().text == "/":
            self.next()
            d = self.next()
            if d.kind != "num" or Fraction(d.text) == 0:
                self.error("bad exponent denominator", d)
            value /= Fraction(d.text)
        if paren:
            self.expect(")")
        return sign * value

    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "num":
            self.next()
            unit = None
            if self.peek().kind == "unit":
                unit = self.next().text[1:-1].strip()
                if not unit:
                    self.error("empty unit literal")
            return Const(Fraction(t.text), unit, self.span(t))
        if t.text == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "name":
            self.next()
            name = t.text
            declared = name in self.variables or name in self.parameters
            if self.peek().text == "(" and not declared:
                return self.call(t)
            if name in self.variables:
                return Var(name, self.span(t))
            if name in self.parameters:
                return Param(name, self.span(t))
            self.error(f"undeclared name {name!r}", t)
        self.error(f"unexpected {t.text or 'end of line'!r}")

    def call(self, t: _Tok) -> Expr:
        name = t.text
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        if name == "d":
            self.expect("/")
            d = self.next()
            if d.text != "d":
                self.error("derivative must be written d(expr)/d(var)", d)
            self.expect("(")
            w = self.next()
            if w.kind != "name" or w.text not in self.variables:
                self.error("derivative must be taken with respect to a declared variable", w)
            self.expect(")")
            return Deriv(arg, w.text, self.span(t))
        if name == "pospart":
            return PosPart(arg, self.span(t))
        if name in TRANSCENDENTAL:
            return Call(name, arg, self.span(t))
        self.error(f"unknown function {name!r}", t)

    def parse_all(self) -> Expr:
        e = self.expr()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")
        return e


def parse_expression(text: str, spec: ModelSpec, line: int = 1) -> Expr:
    """Parse one expression against the names declared in ``spec``."""
    return _ExprParser(text, line, set(spec.variable_names), {q.name for q in spec.parameters}).parse_all()


# ---------------------------------------------------------------------------
# model file parser
# ---------------------------------------------------------------------------

_SECTIONS = ("dimensions", "variables", "parameters", "equations")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_KEYWORDS = {"interval", "ratio", "primary", "secondary", "response"}


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_dim(text: str, bases: tuple[str, ...], line: int, col: int) -> Dimension:
    try:
        return Dimension.parse(text, bases)
    except UnknownDimension as exc:
        raise UnknownDimension(str(exc), line, col) from None


def parse_model(text: str, registry: UnitRegistry | None = None) -> ModelSpec:
    """Parse a model file; errors carry 1-based line and column."""
    section = None
    bases: list[str] = []
    variables: list[VariableDecl] = []
    parameters: list[ParameterDecl] = []
    eq_lines: list[tuple[int, str, int]] = []
    seen_sections = set()
    names: set[str] = set()

    def declare(name: str, lineno: int, col: int):
        if not _NAME.match(name):
            raise ModelSyntaxError(f"invalid name {name!r}", lineno, col)
        if name in names:
            raise DuplicateName(f"name {name!r} declared twice", lineno, col)
        names.add(name)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        head = re.match(r"^\s*([A-Za-z]+)\s*:(.*)$", line)
        if head and head.group(1) in _SECTIONS and (head.group(1) not in names):
            section = head.group(1)
            if section in seen_sections:
                raise ModelSyntaxError(f"section {section!r} repeated", lineno, 1)
            seen_sections.add(section)
            rest = head.group(2).strip()
            if not rest:
                continue
            line = rest
            offset = raw.index(rest)
        else:
            offset = len(line) - len(line.lstrip())
            line = line.strip()
        if section is None:
            raise ModelSyntaxError("content before the first section header", lineno, 1)

        if section == "dimensions":
            for m in re.finditer(r"[^\s,]+", line):
                name = m.group()
                if not _NAME.match(name):
                    raise ModelSyntaxError(f"invalid base dimension {name!r}", lineno, offset + m.start() + 1)
                if name in bases:
                    raise DuplicateName(f"base dimension {name!r} declared twice", lineno, offset + m.start() + 1)
                bases.append(name)
            continue

        if section == "equations":
            eq_lines.append((lineno, line, offset))
            continue

        if ":" not in line:
            raise ModelSyntaxError("expected 'name : dimension'", lineno, offset + 1)
        name, _, rest = line.partition(":")
        name = name.strip()
        declare(name, lineno, offset + 1)
        col = offset + line.index(":") + 2
        words = rest.split()
        flags = []
        while words and words[-1] in _KEYWORDS:
            flags.append(words.pop())
        dim_text = " ".join(words)
        if not dim_text:
            raise ModelSyntaxError(f"missing dimension for {name!r}", lineno, col)
        if section == "parameters":
            if flags:
                raise ModelSyntaxError(f"parameter {name!r} takes no keywords", lineno, col)
            dim = None if dim_text == "?" else _parse_dim(dim_text, tuple(bases), lineno, col)
            parameters.append(ParameterDecl(name, dim))
            continue
        if dim_text == "?":
            raise ModelSyntaxError(f"variable {name!r} needs a declared dimension", lineno, col)
        roles = [f for f in flags if f in ("primary", "secondary")]
        if len(roles) > 1 or len(set(flags)) != len(flags):
            raise ModelSyntaxError(f"conflicting keywords for {name!r}", lineno, col)
        variables.append(
            VariableDecl(
                name,
                _parse_dim(dim_text, tuple(bases), lineno, col),
                ScaleKind.INTERVAL if "interval" in flags else ScaleKind.RATIO,
                Role(roles[0]) if roles else Role.UNASSIGNED,
                "response" in flags,
            )
        )

    if not bases and "dimensions" not in seen_sections:
        raise ModelSyntaxError("missing 'dimensions:' section", 1, 1)
    if not variables:
        raise ModelSyntaxError("model declares no variables", 1, 1)

    var_names = {v.name for v in variables}
    par_names = {q.name for q in parameters}
    equations = []
    for lineno, line, offset in eq_lines:
        parts = _split_top_level_eq(line, lineno, offset)
        if len(parts) == 1:
            lhs = _ExprParser(parts[0][0], lineno, var_names, par_names, parts[0][1]).parse_all()
            equations.append(Equation(lhs, Const(Fraction(0)), True, lineno))
        else:
            (lt, lo), (rt, ro) = parts
            lhs = _ExprParser(lt, lineno, var_names, par_names, lo).parse_all()
            rhs = _ExprParser(rt, lineno, var_names, par_names, ro).parse_all()
            equations.append(Equation(lhs, rhs, False, lineno))

    return ModelSpec(tuple(bases), tuple(variables), tuple(parameters), tuple(equations), registry)


def _split_top_level_eq(line: str, lineno: int, offset: int) -> list[tuple[str, int]]:
    idx = [i for i, ch in enumerate(line) if ch == "="]
    if len(idx) > 1:
        raise ModelSyntaxError("more than one '=' in equation", lineno, offset + idx[1] + 1)
    if not idx:
        return [(line, offset)]
    i = idx[0]
    if not line[:i].strip() or not line[i + 1:].strip():
        raise ModelSyntaxError("empty side of equation", lineno, offset + i + 1)
    return [(line[:i], offset), (line[i + 1:], offset + i + 1)]


def load_model(path, registry: UnitRegistry | None = None) -> ModelSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), registry)


# ---------------------------------------------------------------------------
# pretty printer
# ---------------------------------------------------------------------------


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, (PowRational, PowSymbolic)):
        return 4
    return 5


def _fmt_const(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    d, twos, fives = v.denominator, 0, 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        raise ValueError(f"constant {v} has no finite decimal form")
    places = max(twos, fives)
    scaled = v * 10 ** places
    s = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return ("-" if v < 0 else "") + s[:-places] + "." + s[-places:]


def _fmt_exponent(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})"


def format_expr(e: Expr) -> str:
    def wrap(child: Expr, min_prec: int) -> str:
        s = format_expr(child)
        return f"({s})" if _prec(child) < min_prec else s

    if isinstance(e, Var) or isinstance(e, Param):
        return e.name
    if isinstance(e, Const):
        s = _fmt_const(e.value)
        return f"{s}[{e.unit}]" if e.unit else s
    if isinstance(e, Add):
        return f"{wrap(e.left, 1)} + {wrap(e.right, 2)}"
    if isinstance(e, Sub):
        return f"{wrap(e.left, 1)} - {wrap(e.right, 2)}"
    if isinstance(e, Mul):
        return f"{wrap(e.left, 2)} * {wrap(e.right, 3)}"
    if isinstance(e, Div):
        return f"{wrap(e.left, 2)} / {wrap(e.right, 3)}"
    if isinstance(e, Neg):
        return f"-{wrap(e.arg, 3)}"
    if isinstance(e, PowRational):
        return f"{wrap(e.base, 4)}^{_fmt_exponent(e.exponent)}"
    if isinstance(e, PowSymbolic):
        return f"{wrap(e.base, 4)}^{e.param}"
    if isinstance(e, Call):
        return f"{e.fn}({format_expr(e.arg)})"
    if isinstance(e, PosPart):
        return f"pospart({format_expr(e.arg)})"
    if isinstance(e, Deriv):
        return f"d({format_expr(e.arg)})/d({e.wrt})"
    raise TypeError(f"not an expression node: {e!r}")


def format_equation(eq: Equation) -> str:
    if eq.implicit_zero:
        return format_expr(eq.lhs)
    return f"{format_expr(eq.lhs)} = {format_expr(eq.rhs)}"


def format_model(spec: ModelSpec) -> str:
    lines = ["dimensions: " + " ".join(spec.bases), "variables:"]
    for v in spec.variables:
        extra = []
        if v.scale is ScaleKind.INTERVAL:
            extra.append("interval")
        if v.role is not Role.UNASSIGNED:
            extra.append(v.role.value)
        if v.response:
            extra.append("response")
        lines.append(f"  {v.name} : {v.dimension.over(spec.bases)}" + "".join(" " + x for x in extra))
    if spec.parameters:
        lines.append("parameters:")
        for q in spec.parameters:
            lines.append(f"  {q.name} : {'?' if q.dimension is None else q.dimension.over(spec.bases)}")
    if spec.equations:
        lines.append("equations:")
        for eq in spec.equations:
            lines.append("  " + format_equation(eq))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# datasets
# ---------------------------------------------------------------------------

_HEADER = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\[([^\]]*)\]\s*$")


@dataclass(frozen=True)
class Dataset:
    columns: tuple[str, ...]
    units: tuple[Unit, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.columns) != len(self.units):
            raise DatasetError("one unit per column required")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise RaggedRows(f"row {i + 1} has {len(row)} cells, expected {len(self.columns)}")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumn(f"no column {name!r}") from None

    def unit(self, name: str) -> Unit:
        return self.units[self.index(name)]

    def column(self, name: str) -> list[float]:
        j = self.index(name)
        return [row[j] for row in self.rows]

    def coherent_column(self, name: str) -> list[float]:
        """Column magnitudes in the coherent base unit (exact factor, one rounding)."""
        j = self.index(name)
        u = self.units[j]
        f, o = u.factor, u.offset
        if o == 0 and f == 1:
            return [row[j] for row in self.rows]
        if o == 0:
            return [row[j] * f.numerator / f.denominator for row in self.rows]
        return [row[j] * float(f) + float(o) for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"{c}[{u.symbol}]" for c, u in zip(self.columns, self.units)])
        for row in self.rows:
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


def parse_dataset(data: bytes | str, spec: ModelSpec, registry: UnitRegistry | None = None) -> Dataset:
    """Read a CSV whose header cells are ``name[unit]``."""
    registry = registry or spec.units()
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("empty dataset") from None
    names, units = [], []
    for j, cell in enumerate(header):
        m = _HEADER.match(cell)
        if not m:
            raise DatasetError(f"header cell {j + 1} {cell!r} is not of the form name[unit]")
        name, unit_text = m.group(1), m.group(2).strip()
        if name in names:
            raise DatasetError(f"column {name!r} repeated")
        try:
            decl = spec.variable(name)
        except KeyError:
            raise DatasetError(f"column {name!r} is not a declared variable") from None
        unit = registry.unit(unit_text or "1")
        if unit.dimension != decl.dimension:
            raise DimensionMismatch(
                f"column {name!r}: unit [{unit.symbol}] has dimension {unit.dimension}, declared {decl.dimension}"
            )
        names.append(name)
        units.append(unit)
    rows = []
    for i, cells in enumerate(reader, 2):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(names):
            raise RaggedRows(f"line {i}: {len(cells)} cells, expected {len(names)}")
        try:
            rows.append(tuple(float(c) for c in cells))
        except ValueError as exc:
            raise DatasetError(f"line {i}: {exc}") from None
    return Dataset(tuple(names), tuple(units), tuple(rows))


__all__ = [
    "Add", "Call", "Const", "Dataset", "Deriv", "Div", "Equation", "Expr", "ModelSpec", "Mul", "Neg",
    "Param", "ParameterDecl", "PosPart", "PowRational", "PowSymbolic", "Role", "Span", "Sub",
    "TRANSCENDENTAL", "Var", "VariableDecl", "children", "format_equation", "format_expr", "format_model",
    "load_model", "parse_dataset", "parse_expression", "parse_model", "referenced_names", "walk",
]
