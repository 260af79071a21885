import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimstat.errors import (
    DimensionMismatch,
    DivisionByZero,
    ImaginaryResult,
    RegistryError,
    ScaleKindMismatch,
    ScaleViolation,
    UnknownDimension,
    UnknownUnit,
)
from dimstat.quantity import (
    DIMENSIONLESS,
    Dimension,
    Quantity,
    ScaleKind,
    Unit,
    UnitRegistry,
    assess_change,
    compare,
    convert,
    default_registry,
    parse_power_product,
    validate_quantity,
)

REG = default_registry()
BASES = ("L", "M", "T")
LINEAR = ["m", "mm", "cm", "km", "in", "ft"]


def q(mag, unit):
    return REG.quantity(mag, unit)


# --- dimensions -------------------------------------------------------------


def test_parse_power_product_forms():
    assert parse_power_product("M*L^-1*T^-2") == [("M", 1), ("L", -1), ("T", -2)]
    assert dict(parse_power_product("L^(1/2)/T")) == {"L": Fraction(1, 2), "T": -1}
    assert parse_power_product("1") == []


def test_dimension_parse_and_render():
    d = Dimension.parse("M*L^-3", BASES)
    assert d.exponents == (-3, 1, 0)
    assert str(d) == "L^-3*M"
    assert str(Dimension.none(BASES)) == "1"
    with pytest.raises(UnknownDimension):
        Dimension.parse("Q", BASES)


def test_dimension_equality_ignores_extra_zero_bases():
    a = Dimension.parse("L", ("L",))
    b = Dimension.parse("L", ("L", "M", "T"))
    assert a == b and hash(a) == hash(b)


dims = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=4)] * 3).map(
    lambda e: Dimension(BASES, e))


@settings(max_examples=100, deadline=None)
@given(dims, dims, st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_dimension_group_laws(a, b, p):
    assert (a * b) / b == a
    assert a * Dimension.none(BASES) == a
    assert (a * b) ** p == a ** p * b ** p
    assert (a / a).is_dimensionless


# --- units and conversion ----------------------------------------------------


def test_conversions_from_registry():
    assert convert(q(1, "ft"), REG["in"]).magnitude == pytest.approx(12, rel=1e-15)
    assert convert(q(0, "degC"), REG["K"]).magnitude == 273.15
    assert convert(q(44.2, "mm^2"), REG.unit("cm^2")).magnitude == 0.442
    assert convert(q(212, "degF"), REG["degC"]).magnitude == pytest.approx(100, rel=1e-13)


def test_convert_rejects_other_dimension():
    with pytest.raises(DimensionMismatch):
        convert(q(1, "m"), REG["s"])


def test_unknown_unit_is_keyerror():
    with pytest.raises(UnknownUnit):
        REG["furlong"]
    with pytest.raises(KeyError):
        REG["furlong"]


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1e6), st.sampled_from(LINEAR), st.sampled_from(LINEAR))
def test_conversion_round_trip(x, u1, u2):
    back = convert(convert(q(x, u1), REG[u2]), REG[u1]).magnitude
    assert abs(back - x) <= 1e-12 * abs(x)


@settings(max_examples=200, deadline=None)
@given(st.floats(-200, 500), st.sampled_from(["K", "degC", "degF"]), st.sampled_from(["K", "degC", "degF"]))
def test_temperature_round_trip(x, u1, u2):
    back = convert(convert(q(x, u1), REG[u2]), REG[u1]).magnitude
    assert abs(back - x) <= 1e-12 * max(abs(x), 1)


def test_unit_validation():
    with pytest.raises(RegistryError):
        Unit("bad", Dimension.parse("L", BASES), Fraction(-1))
    with pytest.raises(RegistryError):
        Unit("bad", Dimension.parse("L", BASES), Fraction(1), Fraction(3))


def test_registry_extend_and_text():
    reg = REG.extend("unit furlong = 201.168 m\n")
    assert convert(reg.quantity(1, "furlong"), reg["m"]).magnitude == pytest.approx(201.168)
    tiny = UnitRegistry.from_text("base L m\nunit yd = 0.9144 m\n")
    assert tiny.bases == ("L",)
    with pytest.raises(RegistryError):
        UnitRegistry.from_text("unit yd = 0.9144 m\n")


# --- quantity calculus ------------------------------------------------------


def test_add_converts_to_left_unit():
    s = q(1, "ft") + q(12, "in")
    assert s.unit.symbol == "ft" and s.magnitude == pytest.approx(2)


def test_add_rejects_mismatched_dimension():
    with pytest.raises(DimensionMismatch):
        q(1, "m") + q(1, "s")


def test_unitless_ratio():
    r = q(12, "kg") / q(60, "kg")
    assert r.unit.is_dimensionless and r.magnitude == pytest.approx(0.2)


def test_interval_rules():
    d = q(25, "degC") - q(20, "degC")
    assert d.unit.symbol == "delta_degC" and d.unit.scale is ScaleKind.RATIO
    assert d.magnitude == pytest.approx(5)
    with pytest.raises(ScaleViolation):
        q(25, "degC") + q(20, "degC")
    with pytest.raises(ScaleViolation):
        q(25, "degC") * q(2, "m")
    shifted = q(20, "degC") + d
    assert shifted.unit.symbol == "degC" and shifted.magnitude == pytest.approx(25)


def test_compare():
    assert compare(q(1, "ft"), q(11, "in")) == 1
    assert compare(q(1, "ft"), q(12, "in")) == 0
    with pytest.raises(ScaleKindMismatch):
        compare(q(300, "K"), q(20, "degC"))


def test_powers_and_roots():
    a = q(3, "in") ** 2
    assert a.unit.symbol == "in^2" and a.magnitude == 9
    r = a ** Fraction(1, 2)
    assert r.unit.symbol == "in" and r.magnitude == 3
    with pytest.raises(ImaginaryResult):
        q(-4, "m^2") ** Fraction(1, 2)
    with pytest.raises(DivisionByZero):
        q(0, "m") ** -1
    with pytest.raises(DivisionByZero):
        q(1, "m") / q(0, "s")


def test_assess_change():
    r = assess_change(q(10, "kg"), q(8, "kg"))
    assert r.kind == "ratio" and r.value == pytest.approx(0.8)
    d = assess_change(q(20, "degC"), q(18, "degC"))
    assert d.kind == "difference" and d.value == pytest.approx(-2) and d.unit.symbol == "delta_degC"


def test_validate_flags_negative_ratio_magnitude():
    assert validate_quantity(q(-1, "m"))
    assert not validate_quantity(q(-1, "degC"))


units = st.sampled_from(["m", "kg", "s", "ft", "N", "Pa", "1"])


@settings(max_examples=150, deadline=None)
@given(st.floats(0.01, 100), units, st.floats(0.01, 100), units,
       st.fractions(min_value=-2, max_value=2, max_denominator=2))
def test_closure_of_products_and_powers(x, u, y, v, p):
    a, b = q(x, u), q(y, v)
    prod = a * b
    assert prod.dimension == a.dimension * b.dimension
    assert (a / b).dimension == a.dimension / b.dimension
    powd = a ** p
    assert powd.dimension == a.dimension ** p
    assert math.isclose(powd.magnitude, x ** float(p), rel_tol=1e-12)
    c = convert(prod, REG.coherent(prod.dimension))
    assert math.isclose(c.magnitude, a.coherent() * b.coherent(), rel_tol=1e-12)


def test_dimensionless_unit():
    assert DIMENSIONLESS.is_dimensionless
    assert Quantity(2.0).unit is DIMENSIONLESS
