"""Buckingham Pi groups by exact rational elimination.

The quantities entering the analysis are the model's variables in declaration
order, followed by any parameter whose dimension is declared or can be
inferred and is not dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    DimstatError,
    MissingColumn,
    NegativeBaseForFractionalPower,
    NoVariables,
    RankDeficientRepeatingSet,
    VariableListMismatch,
)
from .homogeneity import _solve
from .model import Dataset, ModelSpec, Role
from .quantity import DIMENSIONLESS, Dimension

__all__ = [
    "EliminationTrace",
    "ExponentMatrix",
    "PiBasis",
    "TraceStep",
    "bases_equivalent",
    "exponent_matrix",
    "extract_pi_groups",
    "nondimensionalize_dataset",
    "pi_values",
    "render_monomial",
]


@dataclass(frozen=True)
class ExponentMatrix:
    quantities: tuple[str, ...]
    bases: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return linalg.rank(self.rows) if self.rows else 0

    def row(self, name: str) -> tuple[Fraction, ...]:
        return self.rows[self.quantities.index(name)]

    def to_json(self) -> dict:
        return {
            "quantities": list(self.quantities),
            "bases": list(self.bases),
            "rows": [[str(x) for x in r] for r in self.rows],
        }


def _pi_quantities(spec: ModelSpec) -> list[tuple[str, Dimension, Role]]:
    out = [(v.name, v.dimension, v.role) for v in spec.variables]
    try:
        solved, _, _ = _solve(spec)
    except DimstatError:
        solved = {}
    for q in spec.parameters:
        dim = q.dimension if q.dimension is not None else solved.get(q.name)
        if dim is not None and not dim.is_dimensionless:
            out.append((q.name, dim, Role.UNASSIGNED))
    return out


def exponent_matrix(spec: ModelSpec) -> ExponentMatrix:
    qs = _pi_quantities(spec)
    return ExponentMatrix(
        tuple(n for n, _, _ in qs),
        spec.bases,
        tuple(d.over(spec.bases).exponents for _, d, _ in qs),
    )


def render_monomial(names: Sequence[str], exps: Sequence, lead: str | None = None) -> str:
    """``F * rho^-1 * D^-2``; ``lead`` is printed first when given."""
    order = list(range(len(names)))
    if lead is not None:
        j = names.index(lead)
        order.remove(j)
        order.insert(0, j)
    parts = []
    for j in order:
        e = Fraction(exps[j])
        if e == 0:
            continue
        if e == 1:
            parts.append(names[j])
        elif e.denominator == 1:
            parts.append(f"{names[j]}^{e.numerator}")
        else:
            parts.append(f"{names[j]}^({e.numerator}/{e.denominator})")
    return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class PiBasis:
    quantities: tuple[str, ...]
    vectors: tuple[tuple[int, ...], ...]
    repeating: tuple[str, ...] = ()
    heads: tuple[str, ...] = ()  # the non-repeating quantity heading each group

    @property
    def q(self) -> int:
        return len(self.vectors)

    def render(self) -> list[str]:
        out = []
        for i, v in enumerate(self.vectors):
            lead = self.heads[i] if i < len(self.heads) else None
            out.append(f"pi{i + 1} = {render_monomial(self.quantities, v, lead)}")
        return out

    def group(self, i: int) -> dict[str, int]:
        return {n: e for n, e in zip(self.quantities, self.vectors[i]) if e}

    def to_json(self) -> dict:
        return {
            "quantities": list(self.quantities),
            "repeating": list(self.repeating),
            "basis": [list(map(int, v)) for v in self.vectors],
            "groups": self.render(),
        }


@dataclass(frozen=True)
class TraceStep:
    dimension: str
    pivot: str
    equations: tuple[tuple[str, str, str], ...]  # (quantity, monomial, remaining dimension)

    def render(self) -> str:
        eqs = ";  ".join(f"[{m}] = {d}" for _, m, d in self.equations)
        return f"eliminate {self.dimension} via {self.pivot}: {eqs}"


@dataclass(frozen=True)
class EliminationTrace:
    steps: tuple[TraceStep, ...]

    def render(self) -> list[str]:
        return [s.render() for s in self.steps]

    def to_json(self) -> list:
        return [
            {
                "dimension": s.dimension,
                "pivot": s.pivot,
                "equations": [{"quantity": q, "monomial": m, "dimension": d} for q, m, d in s.equations],
            }
            for s in self.steps
        ]


def _default_repeating(spec: ModelSpec, qs, rank_m: int) -> list[str]:
    # declared primaries first, then undesignated quantities, then the
    # response and declared secondaries, which should head groups if possible
    responses = {v.name for v in spec.variables if v.response}
    primaries = [n for n, _, r in qs if r is Role.PRIMARY]
    others = [n for n, _, r in qs if r is Role.UNASSIGNED and n not in responses]
    late = [n for n, _, r in qs if r is not Role.PRIMARY and n not in others]
    dims = {n: d for n, d, _ in qs}
    chosen: list[str] = []
    for name in primaries + others + late:
        if len(chosen) == rank_m:
            break
        trial = [dims[c] for c in chosen + [name]]
        if linalg.rank([d.exponents for d in trial]) == len(chosen) + 1:
            chosen.append(name)
    return chosen


def _trace(m: ExponentMatrix, repeating: list[str]) -> EliminationTrace:
    names = list(m.quantities)
    mono = {n: {n: Fraction(1)} for n in names}
    dim = {n: list(m.row(n)) for n in names}
    active = list(names)
    unused = list(repeating)
    steps = []
    for bi, base in enumerate(m.bases):
        if all(dim[n][bi] == 0 for n in active):
            continue
        pivot = next((r for r in unused if r in active and dim[r][bi] != 0), None)
        if pivot is None:
            continue
        unused.remove(pivot)
        active.remove(pivot)
        pd, pm = dim[pivot], mono[pivot]
        for n in active:
            c = dim[n][bi]
            if c == 0:
                continue
            k = -c / pd[bi]
            dim[n] = [a + k * b for a, b in zip(dim[n], pd)]
            for sym, e in pm.items():
                mono[n][sym] = mono[n].get(sym, Fraction(0)) + k * e
        eqs = []
        for n in active:
            order = [s for s in names if mono[n].get(s, 0) != 0]
            mon = render_monomial(order, [mono[n][s] for s in order], n)
            eqs.append((n, mon, str(Dimension(m.bases, tuple(dim[n])))))
        steps.append(TraceStep(base, pivot, tuple(eqs)))
    return EliminationTrace(tuple(steps))


def extract_pi_groups(spec: ModelSpec, repeating: Sequence[str] | None = None) -> tuple[PiBasis, EliminationTrace]:
    """Pi basis with one group per non-repeating quantity, plus the elimination trace."""
    qs = _pi_quantities(spec)
    if not qs:
        raise NoVariables("model has no variables")
    m = exponent_matrix(spec)
    rank_m = m.rank
    if repeating is None:
        rep = _default_repeating(spec, qs, rank_m)
    else:
        rep = list(repeating)
        missing = [r for r in rep if r not in m.quantities]
        if missing:
            raise RankDeficientRepeatingSet(f"unknown repeating quantity {missing[0]!r}")
        if len(set(rep)) != len(rep):
            raise RankDeficientRepeatingSet("repeating set lists a quantity twice")
        rows = [m.row(r) for r in rep]
        r_rank = linalg.rank(rows) if rows else 0
        if r_rank != len(rep) or r_rank != rank_m:
            raise RankDeficientRepeatingSet(
                f"repeating set {{{', '.join(rep)}}} has rank {r_rank}; need {rank_m} independent quantities"
            )
    rep_cols = linalg.transpose([m.row(r) for r in rep]) if rep else [[] for _ in m.bases]
    vectors, heads = [], []
    for name in m.quantities:
        if name in rep:
            continue
        target = [-x for x in m.row(name)]
        if rep:
            x, _ = linalg.solve(rep_cols, target)
        else:
            x = [] if not any(target) else None
        if x is None:
            raise RankDeficientRepeatingSet(f"{name!r} is not expressible in the repeating quantities")
        vec = [Fraction(0)] * len(m.quantities)
        vec[m.quantities.index(name)] = Fraction(1)
        for r, xr in zip(rep, x):
            vec[m.quantities.index(r)] = xr
        vectors.append(tuple(linalg.primitive_integer(vec)))
        heads.append(name)
    basis = PiBasis(m.quantities, tuple(vectors), tuple(rep), tuple(heads))
    return basis, _trace(m, rep)


def bases_equivalent(b1: PiBasis, b2: PiBasis) -> bool:
    """True iff the two bases generate the same group of Pi monomials."""
    if set(b1.quantities) != set(b2.quantities) or len(b1.quantities) != len(b2.quantities):
        raise VariableListMismatch("bases are over different quantity lists")
    perm = [b2.quantities.index(n) for n in b1.quantities]
    v2 = [[v[j] for j in perm] for v in b2.vectors]
    return linalg.same_row_space([list(v) for v in b1.vectors], v2)


def _power(x: float, e: Fraction, name: str) -> float:
    if e.denominator == 1:
        return x ** e.numerator
    if x < 0:
        if e.denominator % 2 == 0:
            raise NegativeBaseForFractionalPower(f"{name} = {x!r} raised to {e}")
        return -((-x) ** float(e)) if e.numerator % 2 else (-x) ** float(e)
    return x ** float(e)


def nondimensionalize_dataset(data: Dataset, basis: PiBasis) -> Dataset:
    """One dimensionless column per Pi group, computed in coherent units."""
    missing = [n for n in basis.quantities if n not in data.columns and any(v[basis.quantities.index(n)] for v in basis.vectors)]
    if missing:
        raise MissingColumn(f"dataset lacks column {missing[0]!r}")
    cols = {}
    for n in basis.quantities:
        if n in data.columns:
            cols[n] = data.coherent_column(n)
    rows = []
    for i in range(data.n_rows):
        out = []
        for v in basis.vectors:
            num, den = 1.0, 1.0
            for n, e in zip(basis.quantities, v):
                e = Fraction(e)
                if e == 0:
                    continue
                if e > 0:
                    num *= _power(cols[n][i], e, n)
                else:
                    den *= _power(cols[n][i], -e, n)
            out.append(num / den)
        rows.append(tuple(out))
    names = tuple(f"pi{i + 1}" for i in range(basis.q))
    return Dataset(names, (DIMENSIONLESS,) * basis.q, tuple(rows))


def pi_values(values: dict[str, float], basis: PiBasis) -> list[float]:
    """Pi groups for one point given coherent-unit magnitudes."""
    out = []
    for v in basis.vectors:
        acc = 1.0
        for n, e in zip(basis.quantities, v):
            if e:
                acc *= _power(values[n], Fraction(e), n) if e > 0 else 1.0 / _power(values[n], Fraction(-e), n)
        out.append(acc)
    return out

