import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimstat.errors import (
    DimensionedExponent,
    Inconsistent,
    MissingResponse,
    SymbolicPowerOfDimensioned,
    TranscendentalOfDimensioned,
    Underdetermined,
)
from dimstat.homogeneity import (
    check_homogeneity,
    classify_law_family,
    evaluate,
    infer_dimension,
    ln_taylor,
    solve_parameter_dimensions,
)
from dimstat.model import parse_expression, parse_model
from dimstat.quantity import Dimension

HEAD = """dimensions: L M T
variables:
  a : L
  b : L
  c : M
  d : M
  e : T
  f : T
  g : L*T^-1
"""
DIMS = {"a": "L", "b": "L", "c": "M", "d": "M", "e": "T", "f": "T", "g": "L*T^-1"}
PAIRS = [("a", "b"), ("c", "d"), ("e", "f"), ("g", "g")]


def model(eq, params=""):
    text = HEAD + (f"parameters:\n{params}" if params else "") + f"equations:\n  {eq}\n"
    return parse_model(text)


def test_bundled_verdicts(spec):
    assert check_homogeneity(spec("area")).homogeneous
    assert check_homogeneity(spec("zhai")).homogeneous
    assert check_homogeneity(spec("wong")).homogeneous
    assert check_homogeneity(spec("unconscious_fixed")).homogeneous
    can = check_homogeneity(spec("canadian"))
    assert can.verdict == "Violations"
    assert "SymbolicPowerOfDimensioned" in can.codes()
    unc = check_homogeneity(spec("unconscious"))
    assert unc.codes() == ["InhomogeneousEquation"]


def test_violation_positions_point_at_source(spec):
    can = check_homogeneity(spec("canadian"))
    v = next(v for v in can.violations if v.code == "SymbolicPowerOfDimensioned")
    line = (spec("canadian").equations[0].line)
    assert v.line == line and v.col > 1


def test_parameter_inference(spec):
    area = solve_parameter_dimensions(spec("area"))
    assert area["alpha0"] == Dimension.from_map({"A": 1, "L": -2})
    gas = solve_parameter_dimensions(spec("ideal_gas"))
    assert gas["R"] == Dimension.from_map({"F": 1, "L": 1, "Theta": -1, "N": -1})
    z = solve_parameter_dimensions(spec("zhai"))
    assert z["a_star"].is_dimensionless and z["c_star"].is_dimensionless


def test_inference_failures():
    with pytest.raises(Underdetermined) as info:
        solve_parameter_dimensions(model("ln(k) = 0", "  k : ?\n"))
    assert info.value.params == ("k",)
    with pytest.raises(Inconsistent):
        solve_parameter_dimensions(parse_model(HEAD + "parameters:\n  k : ?\nequations:\n  k*a = b\n  k*c = e\n"))


@pytest.mark.parametrize("expr,err", [
    ("ln(a)", TranscendentalOfDimensioned),
    ("exp(a/e)", TranscendentalOfDimensioned),
    ("(a)^k", SymbolicPowerOfDimensioned),
    ("(a/b)^q", DimensionedExponent),
])
def test_strict_inference_errors(expr, err):
    s = model("a = b", "  k : 1\n  q : L\n")
    with pytest.raises(err):
        infer_dimension(parse_expression(expr, s), s)


def test_infer_dimension_of_expressions():
    s = model("a = b")
    assert str(infer_dimension(parse_expression("c * g^2 / a", s), s)) == "L*M*T^-2"
    assert infer_dimension(parse_expression("ln(a/b) + sin(e/f)", s), s).is_dimensionless
    assert str(infer_dimension(parse_expression("(a*b)^(1/2)", s), s)) == "L"


def test_report_json_is_stable(spec):
    rep = check_homogeneity(spec("canadian")).to_json()
    assert rep["verdict"] == "Violations"
    assert all({"code", "line", "col"} <= set(v) for v in rep["violations"])


def test_ln_taylor_series_is_homogeneous():
    # each term is a power of (x - a)/a, so rescaling x and a together changes nothing
    for x, a in [(1.3, 1.0), (2.6, 2.0), (0.65, 0.5)]:
        assert ln_taylor(x, 60, a) - math.log(a) == pytest.approx(math.log(x / a), rel=1e-9)
    assert ln_taylor(13.0, 60, 10.0) - math.log(10.0) == pytest.approx(ln_taylor(1.3, 60, 1.0), rel=1e-12)


def test_law_family(spec):
    assert classify_law_family(spec("tree")).kind == "Monomial"
    assert classify_law_family(spec("normal")).kind == "NoLaw"
    with pytest.raises(MissingResponse):
        classify_law_family(spec("ideal_gas"))


# --- homogeneity implies equivariance -----------------------------------------

monomials = st.lists(st.tuples(st.sampled_from(sorted(DIMS)), st.integers(-2, 2)), min_size=1, max_size=3)
ratio = st.sampled_from(PAIRS).map(lambda p: f"({p[0]}/{p[1]})")
funcs = st.sampled_from(["exp({})", "ln(1 + {})", "sin({})", "cosh({})", "{}^(1/2)", "pospart({} - 1)"])


def render(mono):
    return " * ".join(f"{n}^({e})" for n, e in mono)


@st.composite
def homogeneous_equations(draw):
    m = render(draw(monomials))
    f1 = draw(funcs).format(draw(ratio))
    f2 = draw(funcs).format(draw(ratio))
    return f"{m} + {m} * {f1} = {m} * (2 + {f2})"


def _values(rng):
    return {n: float(math.exp(rng.uniform(-1, 1))) for n in DIMS}


def _rescaled(values, s):
    out = {}
    for n, v in values.items():
        d = Dimension.parse(DIMS[n], ("L", "M", "T"))
        out[n] = v / math.prod(s[b] ** float(d[b]) for b in ("L", "M", "T"))
    return out


def _discrepancy(eq, vals, s):
    lhs, rhs = evaluate(eq.lhs, vals, s), evaluate(eq.rhs, vals, s)
    return (lhs - rhs) / rhs


@settings(max_examples=120, deadline=None)
@given(homogeneous_equations(), st.integers(0, 2**32 - 1))
def test_homogeneous_equations_are_equivariant(text, seed):
    s = model(text)
    assert check_homogeneity(s).homogeneous, text
    rng = np.random.default_rng(seed)
    vals = _values(rng)
    scale = {b: float(rng.uniform(0.1, 10)) for b in ("L", "M", "T")}
    eq = s.equations[0]
    d0 = _discrepancy(eq, vals, s)
    d1 = _discrepancy(eq, _rescaled(vals, scale), s)
    assert d1 == pytest.approx(d0, rel=1e-9, abs=1e-12)


def test_inhomogeneous_equation_is_not_equivariant():
    s = model("a + e = b")
    assert "InhomogeneousSum" in check_homogeneity(s).codes()
    vals = {n: 1.5 for n in DIMS}
    eq = s.equations[0]
    assert _discrepancy(eq, vals, s) != pytest.approx(_discrepancy(eq, _rescaled(vals, {"L": 3.0, "M": 1.0, "T": 1.0}), s))
