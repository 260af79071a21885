"""Dimensional type checking, parameter-dimension inference and law families.

Inference runs on affine dimension forms ``known + sum_j c_j * D_j`` where
``D_j`` is the unknown dimension of the j-th undeclared parameter. Sums and
equations equate their two forms; when unknowns are involved that equation
becomes a linear constraint instead of a verdict. Each base dimension gives an
independent copy of the same coefficient system, solved exactly.

Only additive and equation equalities generate constraints. A parameter seen
only inside a transcendental call or a symbolic power stays undetermined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg
from .errors import (
    DimensionedExponent,
    DimstatError,
    HomogeneityError,
    Inconsistent,
    InhomogeneousEquation,
    InhomogeneousSum,
    MissingResponse,
    SymbolicPowerOfDimensioned,
    TranscendentalOfDimensioned,
    Underdetermined,
    UnresolvedParameter,
)
from .model import (
    Add,
    Call,
    Const,
    Deriv,
    Div,
    Equation,
    Expr,
    ModelSpec,
    Mul,
    Neg,
    Param,
    PosPart,
    PowRational,
    PowSymbolic,
    Sub,
    Var,
)
from .quantity import Dimension, ScaleKind

__all__ = [
    "DimReport",
    "LawFamily",
    "Violation",
    "check_homogeneity",
    "classify_law_family",
    "evaluate",
    "infer_dimension",
    "ln_taylor",
    "solve_parameter_dimensions",
]


class _Poly:
    """A bare literal zero: it takes whatever dimension its context needs."""

    def __repr__(self):
        return "POLY"


class _Poison:
    """Subtree already reported as ill-typed; suppresses cascading errors."""

    def __repr__(self):
        return "POISON"


POLY = _Poly()
POISON = _Poison()


@dataclass(frozen=True)
class _Form:
    known: tuple[Fraction, ...]
    coeffs: tuple[Fraction, ...]

    def has_unknowns(self) -> bool:
        return any(self.coeffs)

    def is_dimensionless(self) -> bool:
        return not any(self.known) and not self.has_unknowns()

    def __add__(self, other: "_Form") -> "_Form":
        return _Form(
            tuple(a + b for a, b in zip(self.known, other.known)),
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "_Form") -> "_Form":
        return self + other.scale(-1)

    def scale(self, k) -> "_Form":
        k = Fraction(k)
        return _Form(tuple(a * k for a in self.known), tuple(a * k for a in self.coeffs))


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    line: int
    col: int
    end: int

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "line": self.line, "col": self.col, "end": self.end}


def _violation(err: HomogeneityError) -> Violation:
    span = getattr(err.node, "span", None)
    if span is None:
        return Violation(err.code, str(err), 0, 0, 0)
    return Violation(err.code, str(err), span.line, span.col, span.end)


class _Inferencer:
    def __init__(self, spec: ModelSpec, unknowns: list[str], resolved: Mapping[str, Dimension], strict: bool):
        self.spec = spec
        self.bases = spec.bases
        self.unknowns = unknowns
        self.resolved = dict(resolved)
        self.strict = strict
        self.violations: list[HomogeneityError] = []
        self.constraints: list[_Form] = []
        self.node_dims: dict[str, Dimension] = {}

    # helpers
    def zero(self) -> _Form:
        return _Form((Fraction(0),) * len(self.bases), (Fraction(0),) * len(self.unknowns))

    def known(self, dim: Dimension) -> _Form:
        return _Form(dim.over(self.bases).exponents, (Fraction(0),) * len(self.unknowns))

    def dim_of(self, form: _Form) -> Dimension:
        return Dimension(self.bases, form.known)

    def fail(self, err: HomogeneityError):
        if self.strict:
            raise err
        self.violations.append(err)
        return POISON

    def record(self, node: Expr, form):
        if isinstance(form, _Form) and not form.has_unknowns() and node.span.line:
            self.node_dims[node.span.key()] = self.dim_of(form)
        return form

    def fmt(self, form) -> str:
        if form is POLY:
            return "0"
        if form.has_unknowns():
            extra = " + ".join(
                f"{c}*[{u}]" for c, u in zip(form.coeffs, self.unknowns) if c
            )
            return f"{self.dim_of(form)} + {extra}"
        return str(self.dim_of(form))

    def equate(self, a, b, node: Expr, cls) -> object:
        if a is POISON or b is POISON:
            return POISON
        if a is POLY:
            return b
        if b is POLY:
            return a
        if a == b:
            return a
        if a.has_unknowns() or b.has_unknowns():
            self.constraints.append(a - b)
            return a
        kind = "sum" if cls is InhomogeneousSum else "equation"
        return self.fail(cls(f"{kind} mixes [{self.fmt(a)}] and [{self.fmt(b)}]", node))

    # main
    def infer(self, e: Expr):
        return self.record(e, self._infer(e))

    def _infer(self, e: Expr):
        if isinstance(e, Var):
            return self.known(self.spec.variable(e.name).dimension)
        if isinstance(e, Param):
            return self.param_form(e)
        if isinstance(e, Const):
            if e.unit is None:
                return POLY if e.value == 0 else self.zero()
            try:
                return self.known(self.spec.units().unit(e.unit).dimension)
            except DimstatError as exc:
                return self.fail(HomogeneityError(f"unit literal [{e.unit}]: {exc}", e))
        if isinstance(e, (Add, Sub)):
            return self.equate(self.infer(e.left), self.infer(e.right), e, InhomogeneousSum)
        if isinstance(e, (Neg, PosPart)):
            return self.infer(e.arg)
        if isinstance(e, (Mul, Div)):
            a, b = self.as_product(self.infer(e.left)), self.as_product(self.infer(e.right))
            if a is POISON or b is POISON:
                return POISON
            return a + b if isinstance(e, Mul) else a - b
        if isinstance(e, PowRational):
            a = self.as_product(self.infer(e.base))
            return POISON if a is POISON else a.scale(e.exponent)
        if isinstance(e, PowSymbolic):
            return self.symbolic_power(e)
        if isinstance(e, Call):
            a = self.infer(e.arg)
            if a is POISON:
                return POISON
            if a is POLY or a.is_dimensionless() or a.has_unknowns():
                return self.zero()
            return self.fail(TranscendentalOfDimensioned(
                f"{e.fn}() of an argument with dimension [{self.fmt(a)}]", e))
        if isinstance(e, Deriv):
            a = self.as_product(self.infer(e.arg))
            if a is POISON:
                return POISON
            return a - self.known(self.spec.variable(e.wrt).dimension)
        raise TypeError(f"not an expression node: {e!r}")

    def as_product(self, form):
        return self.zero() if form is POLY else form

    def param_form(self, e: Param):
        decl = self.spec.parameter(e.name)
        if decl.dimension is not None:
            return self.known(decl.dimension)
        if e.name in self.resolved:
            return self.known(self.resolved[e.name])
        if e.name in self.unknowns:
            coeffs = [Fraction(0)] * len(self.unknowns)
            coeffs[self.unknowns.index(e.name)] = Fraction(1)
            return _Form((Fraction(0),) * len(self.bases), tuple(coeffs))
        return self.fail(UnresolvedParameter(f"dimension of parameter {e.name!r} is not determined", e))

    def symbolic_power(self, e: PowSymbolic):
        base = self.infer(e.base)
        decl = self.spec.parameter(e.param)
        exp_dim = decl.dimension if decl.dimension is not None else self.resolved.get(e.param)
        if exp_dim is not None and not exp_dim.is_dimensionless:
            return self.fail(DimensionedExponent(f"exponent {e.param!r} has dimension [{exp_dim}]", e))
        if base is POISON:
            return POISON
        if base is POLY or base.is_dimensionless() or base.has_unknowns():
            return self.zero()
        return self.fail(SymbolicPowerOfDimensioned(
            f"base with dimension [{self.fmt(base)}] raised to the symbolic power {e.param!r}", e))

    def equation(self, eq: Equation):
        return self.equate(self.infer(eq.lhs), self.infer(eq.rhs), eq.lhs, InhomogeneousEquation)


def _unknown_params(spec: ModelSpec) -> list[str]:
    return [q.name for q in spec.parameters if q.dimension is None]


def _solve(spec: ModelSpec):
    """Returns (solved dims, undetermined names, inconsistent flag)."""
    unknowns = _unknown_params(spec)
    if not unknowns:
        return {}, [], False
    inf = _Inferencer(spec, unknowns, {}, strict=False)
    for eq in spec.equations:
        inf.equation(eq)
    rows = [list(c.coeffs) for c in inf.constraints]
    k = len(unknowns)
    if not rows:
        return {}, list(unknowns), False
    determined = linalg.determined_columns(rows, k)
    values = [[Fraction(0)] * len(spec.bases) for _ in range(k)]
    for bi in range(len(spec.bases)):
        rhs = [-c.known[bi] for c in inf.constraints]
        x, _ = linalg.solve(rows, rhs)
        if x is None:
            return {}, [], True
        for j in range(k):
            values[j][bi] = x[j]
    solved = {u: Dimension(spec.bases, tuple(values[j])) for j, u in enumerate(unknowns) if determined[j]}
    undetermined = [u for j, u in enumerate(unknowns) if not determined[j]]
    return solved, undetermined, False


def solve_parameter_dimensions(spec: ModelSpec) -> dict[str, Dimension]:
    """Exact dimensions of every ``?`` parameter, or an error saying why not."""
    solved, undetermined, inconsistent = _solve(spec)
    if inconsistent:
        raise Inconsistent("the equations force contradictory parameter dimensions")
    if undetermined:
        raise Underdetermined(undetermined)
    return solved


def infer_dimension(e: Expr, spec: ModelSpec, parameter_dims: Mapping[str, Dimension] | None = None) -> Dimension:
    """Dimension of ``e``; raises on the first homogeneity error."""
    inf = _Inferencer(spec, [], parameter_dims or {}, strict=True)
    form = inf.infer(e)
    if form is POLY:
        return Dimension.none(spec.bases)
    return inf.dim_of(form)


@dataclass(frozen=True)
class DimReport:
    violations: tuple[Violation, ...]
    node_dims: Mapping[str, Dimension] = field(default_factory=dict)
    parameter_dims: Mapping[str, Dimension] = field(default_factory=dict)
    undetermined: tuple[str, ...] = ()
    inconsistent: bool = False

    @property
    def homogeneous(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "Homogeneous" if self.homogeneous else "Violations"

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "violations": [v.to_json() for v in self.violations],
            "node_dims": {k: str(v) for k, v in sorted(self.node_dims.items())},
            "parameter_dims": {k: str(v) for k, v in sorted(self.parameter_dims.items())},
            "undetermined": list(self.undetermined),
            "inconsistent": self.inconsistent,
        }


def check_homogeneity(spec: ModelSpec) -> DimReport:
    """Type-check every equation, inferring ``?`` parameters first.

    Never raises on model errors; all diagnostics land in the report.
    """
    solved, undetermined, inconsistent = _solve(spec)
    inf = _Inferencer(spec, [], solved, strict=False)
    for eq in spec.equations:
        inf.equation(eq)
    violations = [_violation(v) for v in inf.violations]
    if inconsistent:
        violations.insert(0, Violation(Inconsistent.code, "parameter dimensions are contradictory", 0, 0, 0))
    return DimReport(tuple(violations), inf.node_dims, solved, tuple(undetermined), inconsistent)


# ---------------------------------------------------------------------------
# numeric evaluation, used to test that homogeneity implies equivariance
# ---------------------------------------------------------------------------

_FUNCS = {
    "ln": math.log,
    "log10": math.log10,
    "exp": math.exp,
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
}


def evaluate(e: Expr, values: Mapping[str, float], spec: ModelSpec | None = None) -> float:
    """Numeric value of ``e`` given coherent-unit magnitudes for every name.

    Unit literals need ``spec`` for the registry. Derivatives are opaque and
    cannot be evaluated.
    """
    if isinstance(e, (Var, Param)):
        return float(values[e.name])
    if isinstance(e, Const):
        if e.unit is None:
            return float(e.value)
        u = spec.units().unit(e.unit)
        return float(e.value) * float(u.factor) + float(u.offset)
    if isinstance(e, Add):
        return evaluate(e.left, values, spec) + evaluate(e.right, values, spec)
    if isinstance(e, Sub):
        return evaluate(e.left, values, spec) - evaluate(e.right, values, spec)
    if isinstance(e, Mul):
        return evaluate(e.left, values, spec) * evaluate(e.right, values, spec)
    if isinstance(e, Div):
        return evaluate(e.left, values, spec) / evaluate(e.right, values, spec)
    if isinstance(e, Neg):
        return -evaluate(e.arg, values, spec)
    if isinstance(e, PosPart):
        return max(0.0, evaluate(e.arg, values, spec))
    if isinstance(e, PowRational):
        return evaluate(e.base, values, spec) ** float(e.exponent)
    if isinstance(e, PowSymbolic):
        return evaluate(e.base, values, spec) ** float(values[e.param])
    if isinstance(e, Call):
        return _FUNCS[e.fn](evaluate(e.arg, values, spec))
    raise ValueError(f"cannot evaluate {type(e).__name__}")


def ln_taylor(x: float, terms: int = 40, a: float = 1.0) -> float:
    """Partial sum of the series of ``ln x`` about ``a``.

    Every term is a power of the dimensionless ``(x - a) / a``.
    """
    r = (x - a) / a
    total, power = 0.0, 1.0
    for k in range(1, terms + 1):
        power *= r
        total += (power if k % 2 else -power) / k
    return math.log(a) + total


# ---------------------------------------------------------------------------
# admissible law families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LawFamily:
    kind: str  # Monomial | NoLaw | Admissible | Unclassified
    response: str
    predictors: tuple[str, ...]
    description: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "response": self.response,
            "predictors": list(self.predictors),
            "description": self.description,
        }


def classify_law_family(spec: ModelSpec) -> LawFamily:
    """Which functional form a law relating the response to its predictors may take.

    Only the cases with a known answer are decided; any other mix of scale
    kinds is reported as Unclassified.
    """
    responses = [v for v in spec.variables if v.response]
    if not responses:
        raise MissingResponse("no variable is marked 'response'")
    if len(responses) > 1:
        raise MissingResponse("more than one variable is marked 'response'")
    resp = responses[0]
    preds = [v for v in spec.variables if v is not resp]
    names = tuple(v.name for v in preds)
    kinds = {v.scale for v in preds}
    p = len(spec.variables)
    if resp.scale is ScaleKind.RATIO and kinds <= {ScaleKind.RATIO}:
        rhs = " * ".join(f"{n}^a{i + 1}" for i, n in enumerate(names)) or "1"
        return LawFamily("Monomial", resp.name, names, f"{resp.name} = k * {rhs}")
    if resp.scale is ScaleKind.INTERVAL:
        if p == 2 and kinds == {ScaleKind.INTERVAL}:
            return LawFamily("Admissible", resp.name, names,
                             "single interval-scale predictor with interval-scale response (p = 2)")
        if kinds == {ScaleKind.RATIO, ScaleKind.INTERVAL}:
            return LawFamily("NoLaw", resp.name, names,
                             "mixed ratio/interval predictors with an interval-scale response admit no law")
    return LawFamily("Unclassified", resp.name, names, "scale-kind combination outside the decided cases")
