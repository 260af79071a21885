"""Transformation groups, maximal invariants and randomized verification.

Two kinds of group act on a sample point ``x``:

* scalar groups rescale each primary variable by a positive factor and every
  secondary variable by the product of those factors its dimension dictates;
* affine groups act on a location-scale primary block ``x1 = (S, Q)`` (a
  k x k scale matrix, stored row-major, and a k-vector location) by
  ``(R, P): S -> R S, Q -> R Q + P`` and on the secondary block by
  ``x2 -> M(R) x2 + psi(R)`` plus ``A(P)`` in case (ii).

All randomized checks draw from a Philox generator seeded by
``SeedSequence([seed, trial])``, so each trial is reproducible on its own and
chunked runs merge to the same report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .errors import (
    InvalidFamily,
    NonTransitivePrimaryAction,
    RankDeficientPrimaries,
    ScaleViolation,
    ShapeMismatch,
    SingularR1,
)
from .model import ModelSpec, Role
from .pi import render_monomial
from .quantity import Dimension, ScaleKind

__all__ = [
    "AffineElement",
    "AffineFamily",
    "AffineGroup",
    "MaximalInvariant",
    "ScalarElement",
    "ScalarGroup",
    "VerificationReport",
    "builtin_family",
    "deviation",
    "maximal_invariant_affine",
    "maximal_invariant_scalar",
    "trial_rng",
    "verify_group_axioms",
    "verify_invariance",
    "verify_maximality",
    "verify_orbit_indexing",
]

FACTOR_LOG_RANGE = 2.0  # scale factors are exp(U(-2, 2))
AFFINE_ENTRY_RANGE = 2.0  # affine entries are U(-2, 2)
MIN_ABS_DET = 0.1  # reject near-singular matrices
POINT_LOG_RANGE = 3.0  # positive sample coordinates are exp(U(-3, 3))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def deviation(a, b) -> float:
    """Largest entrywise ``|a - b| / max(|a|, |b|, 1)``."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        return math.inf
    if a.size == 0:
        return 0.0
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
    d = np.abs(a - b) / scale
    if np.any(~np.isfinite(d)):
        return math.inf
    return float(d.max())


@dataclass(frozen=True)
class VerificationReport:
    check: str
    trials: int
    seed: int
    max_deviation: float
    failures: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.trials > 0

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        if (self.check, self.seed, self.tolerance) != (other.check, other.seed, other.tolerance):
            raise ValueError("only reports of the same check, seed and tolerance merge")
        return VerificationReport(
            self.check,
            self.trials + other.trials,
            self.seed,
            max(self.max_deviation, other.max_deviation),
            self.failures + other.failures,
            self.tolerance,
        )

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "trials": self.trials,
            "seed": self.seed,
            "max_deviation": self.max_deviation,
            "failures": self.failures,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _run(check: str, trial_fn: Callable[[np.random.Generator], float], trials: int, seed: int,
         tolerance: float, chunk: int = 1000) -> VerificationReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    report = None
    for start in range(0, trials, chunk):
        worst, fails = 0.0, 0
        for t in range(start, min(trials, start + chunk)):
            d = trial_fn(trial_rng(seed, t))
            worst = max(worst, d)
            fails += not d <= tolerance
        part = VerificationReport(check, min(trials, start + chunk) - start, seed, worst, fails, tolerance)
        report = part if report is None else report.merge(part)
    return report


# ---------------------------------------------------------------------------
# scalar groups
# ---------------------------------------------------------------------------


def _fast_exps(exps) -> tuple:
    # ints where exact, floats otherwise; avoids Fraction overhead per trial
    out = []
    for e in exps:
        if type(e) is int or type(e) is float:
            out.append(e)
        else:
            e = Fraction(e)
            out.append(e.numerator if e.denominator == 1 else float(e))
    return tuple(out)


@dataclass(frozen=True)
class ScalarElement:
    factors: tuple  # one positive factor per primary


class ScalarGroup:
    """Positive rescalings of the primaries and the induced action on secondaries."""

    def __init__(self, names: Sequence[str], dims: Sequence[Dimension], primaries: Sequence[str], bases: Sequence[str]):
        self.names = tuple(names)
        self.bases = tuple(bases)
        self.dims = tuple(d.over(self.bases) for d in dims)
        self.primaries = tuple(primaries)
        if not self.primaries:
            raise RankDeficientPrimaries("no primary variables designated")
        idx = [self.names.index(p) for p in self.primaries]
        prim_rows = [self.dims[i].exponents for i in idx]
        all_rows = [d.exponents for d in self.dims]
        r = linalg.rank(prim_rows)
        if r != len(self.primaries) or r != linalg.rank(all_rows):
            raise RankDeficientPrimaries(
                f"primaries {{{', '.join(self.primaries)}}} have rank {r}; "
                f"need {linalg.rank(all_rows)} independent dimensions"
            )
        self._prim_cols = linalg.transpose(prim_rows)
        self.exponents = tuple(self.induced_exponents(d) for d in self.dims)
        self._fast = tuple(_fast_exps(e) for e in self.exponents)

    @classmethod
    def from_spec(cls, spec: ModelSpec, primaries: Sequence[str] | None = None) -> "ScalarGroup":
        bad = [v.name for v in spec.variables if v.scale is not ScaleKind.RATIO]
        if bad:
            raise ScaleViolation(f"scalar groups need ratio-scale variables; {bad[0]!r} is interval-scaled")
        if primaries is None:
            primaries = [v.name for v in spec.variables if v.role is Role.PRIMARY]
        return cls(spec.variable_names, [v.dimension for v in spec.variables], primaries, spec.bases)

    @property
    def k(self) -> int:
        return len(self.primaries)

    def induced_exponents(self, dim: Dimension) -> tuple[Fraction, ...]:
        """Exponents ``e`` with ``[q] = prod [primary_i]^e_i``."""
        x, _ = linalg.solve(self._prim_cols, dim.over(self.bases).exponents)
        if x is None:
            raise RankDeficientPrimaries(f"dimension {dim} is not generated by the primaries")
        return tuple(x)

    def induced_factor(self, g: ScalarElement, exps: Sequence[Fraction]):
        """``prod c_i^e_i``; exact for rational factors and integer exponents."""
        out = 1
        for c, e in zip(g.factors, _fast_exps(exps)):
            if e == 0:
                continue
            if type(e) is int:
                out = out * (c ** e if e > 0 else 1 / c ** (-e))
            else:
                out = out * float(c) ** e
        return out

    def factor_for(self, g: ScalarElement, i: int):
        """Induced factor on the i-th variable."""
        return self.induced_factor(g, self._fast[i])

    def identity(self) -> ScalarElement:
        return ScalarElement(tuple(Fraction(1) for _ in self.primaries))

    def compose(self, g: ScalarElement, h: ScalarElement) -> ScalarElement:
        return ScalarElement(tuple(a * b for a, b in zip(g.factors, h.factors)))

    def inverse(self, g: ScalarElement) -> ScalarElement:
        return ScalarElement(tuple(1 / c for c in g.factors))

    def check_element(self, g: ScalarElement):
        if len(g.factors) != self.k:
            raise ShapeMismatch(f"expected {self.k} factors, got {len(g.factors)}")
        if any(not c > 0 for c in g.factors):
            raise ShapeMismatch("scale factors must be positive")

    def apply(self, g: ScalarElement, x: Sequence) -> tuple:
        self.check_element(g)
        if len(x) != len(self.names):
            raise ShapeMismatch(f"expected {len(self.names)} coordinates, got {len(x)}")
        return tuple(xi * self.factor_for(g, i) for i, xi in enumerate(x))

    def apply_to(self, g: ScalarElement, values: Sequence, dims: Sequence[Dimension]) -> tuple:
        """Action on any quantities whose dimensions the primaries generate (e.g. parameters)."""
        return tuple(v * self.induced_factor(g, self.induced_exponents(d)) for v, d in zip(values, dims))

    def standardizer(self, x: Sequence) -> ScalarElement:
        return ScalarElement(tuple(1 / x[self.names.index(p)] for p in self.primaries))

    def connector(self, x: Sequence, y: Sequence) -> ScalarElement:
        """Element taking ``y`` to ``x`` when both share an orbit."""
        return ScalarElement(tuple(x[self.names.index(p)] / y[self.names.index(p)] for p in self.primaries))

    def sample_element(self, rng: np.random.Generator) -> ScalarElement:
        return ScalarElement(tuple(float(v) for v in np.exp(rng.uniform(-FACTOR_LOG_RANGE, FACTOR_LOG_RANGE, self.k))))

    def sample_point(self, rng: np.random.Generator) -> tuple:
        return tuple(float(v) for v in np.exp(rng.uniform(-POINT_LOG_RANGE, POINT_LOG_RANGE, len(self.names))))


# ---------------------------------------------------------------------------
# affine groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineElement:
    R: np.ndarray = field(compare=False)
    P: np.ndarray = field(compare=False)


@dataclass(frozen=True)
class AffineFamily:
    """A lawful triple ``(M, psi, A)``; ``A`` is None in case (i)."""

    name: str
    k: int
    m: int
    M: Callable[[np.ndarray], np.ndarray]
    psi: Callable[[np.ndarray], np.ndarray]
    A: Callable[[np.ndarray], np.ndarray] | None = None

    @property
    def case(self) -> str:
        return "i" if self.A is None else "ii"


def _kron_power(R):
    # R (x) R without np.kron's generic reshaping overhead
    k = R.shape[0]
    return np.multiply.outer(R, R).transpose(0, 2, 1, 3).reshape(k * k, k * k)


def _det_power(r: float):
    def M(R):
        return np.array([[abs(np.linalg.det(R)) ** r]])
    return M


def _cocycle(M, v):
    v = np.asarray(v, dtype=float)

    def psi(R):
        return (M(R) - np.eye(len(v))) @ v
    return psi


def builtin_family(name: str) -> AffineFamily:
    """Shipped families: ``normal``, ``affine-i``, ``affine-i-det``, ``affine-ii``."""
    if name == "normal":
        return AffineFamily("normal", 1, 1, lambda R: np.array([[R[0, 0]]]), lambda R: np.zeros(1),
                            lambda P: np.array([P[0]]))
    if name == "affine-i":
        return AffineFamily("affine-i", 2, 4, _kron_power, _cocycle(_kron_power, [1.0, -0.5, 0.25, 2.0]))
    if name == "affine-i-det":
        M = _det_power(0.5)
        return AffineFamily("affine-i-det", 2, 1, M, _cocycle(M, [1.5]))
    if name == "affine-ii":
        M = lambda R: np.array(R, dtype=float)  # noqa: E731
        return AffineFamily("affine-ii", 2, 2, M, _cocycle(M, [0.5, -1.0]), lambda P: np.array(P, dtype=float))
    raise InvalidFamily(f"unknown family {name!r}")


def _random_matrix(rng: np.random.Generator, k: int) -> np.ndarray:
    while True:
        R = rng.uniform(-AFFINE_ENTRY_RANGE, AFFINE_ENTRY_RANGE, (k, k))
        if abs(np.linalg.det(R)) >= MIN_ABS_DET:
            return R


def family_law_deviation(fam: AffineFamily, rng: np.random.Generator) -> float:
    """Worst violation of the identity, multiplicative, cocycle and additive laws."""
    k, m = fam.k, fam.m
    S, R = _random_matrix(rng, k), _random_matrix(rng, k)
    I = np.eye(k)
    devs = [
        deviation(fam.M(I), np.eye(m)),
        deviation(fam.psi(I), np.zeros(m)),
        deviation(fam.M(S @ R), fam.M(S) @ fam.M(R)),
        deviation(fam.psi(S @ R), fam.M(S) @ fam.psi(R) + fam.psi(S)),
    ]
    if fam.M(I).shape != (m, m) or np.shape(fam.psi(I)) != (m,):
        return math.inf
    if fam.A is not None:
        P, Q = rng.uniform(-2, 2, k), rng.uniform(-2, 2, k)
        devs += [
            deviation(fam.A(np.zeros(k)), np.zeros(m)),
            deviation(fam.A(P + Q), fam.A(P) + fam.A(Q)),
            deviation(fam.A(R @ P), fam.M(R) @ fam.A(P)),
        ]
    return max(devs)


class AffineGroup:
    """Group indexed by ``(R, P)`` acting on ``x = (vec S, Q, x2)``."""

    def __init__(self, family: AffineFamily, names: Sequence[str] | None = None, check_trials: int = 16):
        for t in range(check_trials):
            try:
                d = family_law_deviation(family, trial_rng(0, t))
            except Exception as exc:  # a broken callable is an invalid family
                raise InvalidFamily(f"family {family.name!r}: {exc}") from exc
            if not d <= 1e-10:
                raise InvalidFamily(f"family {family.name!r} violates the group laws (deviation {d:.3g})")
        self.family = family
        self.k, self.m = family.k, family.m
        self.dim = self.k * self.k + self.k + self.m
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(self.dim))
        if len(self.names) != self.dim:
            raise ShapeMismatch(f"{len(self.names)} names for a {self.dim}-dimensional sample space")

    def split(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ShapeMismatch(f"expected {self.dim} coordinates, got shape {x.shape}")
        k = self.k
        return x[: k * k].reshape(k, k), x[k * k: k * k + k], x[k * k + k:]

    def join(self, S, Q, x2) -> np.ndarray:
        return np.concatenate([np.asarray(S).ravel(), np.asarray(Q), np.asarray(x2)])

    def check_element(self, g: AffineElement):
        R, P = np.asarray(g.R, dtype=float), np.asarray(g.P, dtype=float)
        if R.shape != (self.k, self.k) or P.shape != (self.k,):
            raise ShapeMismatch(f"element must be ({self.k}x{self.k}, {self.k})")
        # singular relative to the Hadamard bound on |det R|
        if not abs(np.linalg.det(R)) > 1e-13 * float(np.prod(np.linalg.norm(R, axis=1))):
            raise SingularR1("R is singular")

    def identity(self) -> AffineElement:
        return AffineElement(np.eye(self.k), np.zeros(self.k))

    def compose(self, g: AffineElement, h: AffineElement) -> AffineElement:
        """``g o h``: apply ``h`` first."""
        return AffineElement(g.R @ h.R, g.R @ h.P + g.P)

    def inverse(self, g: AffineElement) -> AffineElement:
        self.check_element(g)
        Ri = np.linalg.inv(g.R)
        return AffineElement(Ri, -Ri @ g.P)

    def secondary_shift(self, g: AffineElement) -> np.ndarray:
        shift = self.family.psi(g.R)
        if self.family.A is not None:
            shift = shift + self.family.A(g.P)
        return shift

    def apply(self, g: AffineElement, x) -> np.ndarray:
        self.check_element(g)
        S, Q, x2 = self.split(x)
        return self.join(g.R @ S, g.R @ Q + g.P, self.family.M(g.R) @ x2 + self.secondary_shift(g))

    def standardizer(self, x) -> AffineElement:
        """Element moving the primary block of ``x`` to the origin ``(I, 0)``."""
        S, Q, _ = self.split(x)
        if abs(np.linalg.det(S)) < 1e-300:
            raise NonTransitivePrimaryAction("scale block is singular; no element reaches the origin")
        Si = np.linalg.inv(S)
        return AffineElement(Si, -Si @ Q)

    def connector(self, x, y) -> AffineElement:
        """Element taking ``y`` to ``x``: ``S* = S_x S_y^-1``, ``Q* = Q_x - S* Q_y``."""
        Sx, Qx, _ = self.split(x)
        Sy, Qy, _ = self.split(y)
        Ss = Sx @ np.linalg.inv(Sy)
        return AffineElement(Ss, Qx - Ss @ Qy)

    def sample_element(self, rng: np.random.Generator) -> AffineElement:
        return AffineElement(_random_matrix(rng, self.k), rng.uniform(-AFFINE_ENTRY_RANGE, AFFINE_ENTRY_RANGE, self.k))

    def sample_point(self, rng: np.random.Generator) -> np.ndarray:
        S = _random_matrix(rng, self.k)
        rest = rng.uniform(-AFFINE_ENTRY_RANGE, AFFINE_ENTRY_RANGE, self.k + self.m)
        return np.concatenate([S.ravel(), rest])


# ---------------------------------------------------------------------------
# maximal invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalInvariant:
    group: object
    func: Callable[[Sequence], Sequence]
    labels: tuple[str, ...] = ()
    exponents: tuple[tuple[int, ...], ...] = ()  # scalar case: one integer vector per secondary

    def __call__(self, x) -> tuple:
        return tuple(self.func(x))


def maximal_invariant_scalar(spec: ModelSpec, primaries: Sequence[str] | None = None) -> MaximalInvariant:
    """``1`` on each primary and one Pi monomial per secondary, in variable order."""
    group = ScalarGroup.from_spec(spec, primaries)
    prim = set(group.primaries)
    sec = [i for i, n in enumerate(group.names) if n not in prim]
    prim_idx = [group.names.index(p) for p in group.primaries]

    def func(x):
        if len(x) != len(group.names):
            raise ShapeMismatch(f"expected {len(group.names)} coordinates")
        out = []
        std = group.standardizer(x)
        for i, xi in enumerate(x):
            out.append(1 if group.names[i] in prim else xi * group.factor_for(std, i))
        return out

    labels, vecs = [], []
    for i in sec:
        vec = [Fraction(0)] * len(group.names)
        vec[i] = Fraction(1)
        for j, e in zip(prim_idx, group.exponents[i]):
            vec[j] -= e
        vecs.append(tuple(linalg.primitive_integer(vec)))
        labels.append(render_monomial(group.names, vec, group.names[i]))
    return MaximalInvariant(group, func, tuple(labels), tuple(vecs))


def _affine_invariant(group: AffineGroup) -> MaximalInvariant:
    k = group.k

    def func(x):
        s = group.standardizer(x)
        _, _, x2 = group.split(x)
        pi2 = group.family.M(s.R) @ x2 + group.secondary_shift(s)
        return list(np.eye(k).ravel()) + [0.0] * k + list(pi2)

    return MaximalInvariant(group, func, tuple(f"pi{i + 1}" for i in range(group.m)))


def maximal_invariant_affine(spec_or_family, case: str = "ii") -> MaximalInvariant:
    """Affine maximal invariant for a location-scale model or a shipped family.

    From a model: exactly one ratio-scale and one interval-scale primary of
    the same dimension (scale and location); every secondary shares that
    dimension. Case (ii) shifts secondaries with the location, case (i) does
    not.
    """
    if isinstance(spec_or_family, str):
        return _affine_invariant(AffineGroup(builtin_family(spec_or_family)))
    if isinstance(spec_or_family, AffineFamily):
        return _affine_invariant(AffineGroup(spec_or_family))
    spec: ModelSpec = spec_or_family
    prim = [v for v in spec.variables if v.role is Role.PRIMARY]
    sec = [v for v in spec.variables if v.role is not Role.PRIMARY]
    scales = [v for v in prim if v.scale is ScaleKind.RATIO]
    locs = [v for v in prim if v.scale is ScaleKind.INTERVAL]
    if len(prim) != 2 or len(scales) != 1 or len(locs) != 1 or scales[0].dimension != locs[0].dimension:
        raise NonTransitivePrimaryAction(
            "primaries must be one ratio-scale scale and one interval-scale location of equal dimension"
        )
    if not sec or any(v.dimension != scales[0].dimension for v in sec):
        raise ShapeMismatch("secondaries must share the dimension of the location-scale primaries")
    if case not in ("i", "ii"):
        raise InvalidFamily(f"case must be 'i' or 'ii', not {case!r}")
    m = len(sec)
    fam = AffineFamily(
        f"location-scale-{case}", 1, m,
        lambda R: R[0, 0] * np.eye(m),
        lambda R: np.zeros(m),
        (lambda P: np.full(m, P[0])) if case == "ii" else None,
    )
    order = [scales[0].name, locs[0].name] + [v.name for v in sec]
    group = AffineGroup(fam, order)
    inv = _affine_invariant(group)
    labels = tuple(f"({v.name} - {locs[0].name}) / {scales[0].name}" if case == "ii" else f"{v.name} / {scales[0].name}"
                   for v in sec)
    return MaximalInvariant(group, inv.func, labels)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_invariance(inv: MaximalInvariant, trials: int, seed: int, tolerance: float = 1e-9) -> VerificationReport:
    """Max deviation between ``M(g x)`` and ``M(x)`` over random ``g`` and ``x``."""
    group = inv.group

    def trial(rng):
        x = group.sample_point(rng)
        g = group.sample_element(rng)
        return deviation(inv(group.apply(g, x)), inv(x))

    return _run("invariance", trial, trials, seed, tolerance)


def verify_maximality(inv: MaximalInvariant, trials: int, seed: int, tolerance: float = 1e-9) -> VerificationReport:
    """For ``y = g x`` build the connecting element from the pair alone and check it maps ``y`` to ``x``."""
    group = inv.group

    def trial(rng):
        x = group.sample_point(rng)
        y = group.apply(group.sample_element(rng), x)
        d_inv = deviation(inv(x), inv(y))
        back = group.apply(group.connector(x, y), y)
        return max(d_inv, deviation(back, x))

    return _run("maximality", trial, trials, seed, tolerance)


def verify_orbit_indexing(inv: MaximalInvariant, trials: int, seed: int, tolerance: float = 1e-12) -> VerificationReport:
    """``apply(standardizer(x), x)`` equals the invariant's value at ``x``."""
    group = inv.group

    def trial(rng):
        x = group.sample_point(rng)
        return deviation(group.apply(group.standardizer(x), x), inv(x))

    return _run("orbit-indexing", trial, trials, seed, tolerance)


def _generic_scalar_group() -> ScalarGroup:
    # three base dimensions, three primaries and two secondaries with mixed exponents
    bases = ("L", "M", "T")
    dims = [
        Dimension(bases, (1, 0, 0)),
        Dimension(bases, (0, 1, 0)),
        Dimension(bases, (0, 0, 1)),
        Dimension(bases, (1, 1, -2)),
        Dimension(bases, (-3, 1, 0)),
    ]
    return ScalarGroup(["a", "b", "c", "d", "e"], dims, ["a", "b", "c"], bases)


def verify_group_axioms(family, trials: int, seed: int, tolerance: float = 1e-10) -> VerificationReport:
    """Randomized closure, identity, inverse, associativity and action checks.

    ``family`` is ``"scalar"``, a shipped affine family name, an AffineFamily,
    or a ready-made ScalarGroup / AffineGroup.
    """
    if isinstance(family, (ScalarGroup, AffineGroup)):
        group = family
    elif family == "scalar":
        group = _generic_scalar_group()
    elif isinstance(family, AffineFamily):
        group = AffineGroup(family)
    else:
        group = AffineGroup(builtin_family(family))

    def as_vec(g):
        if isinstance(g, ScalarElement):
            return np.array([float(c) for c in g.factors])
        return np.concatenate([np.ravel(g.R), g.P])

    def trial(rng):
        x = group.sample_point(rng)
        g, h, f = group.sample_element(rng), group.sample_element(rng), group.sample_element(rng)
        gh = group.compose(g, h)
        group.check_element(gh)  # closure
        devs = [
            deviation(group.apply(gh, x), group.apply(g, group.apply(h, x))),
            deviation(group.apply(group.identity(), x), x),
            deviation(group.apply(group.compose(g, group.inverse(g)), x), x),
            deviation(group.apply(group.compose(group.inverse(g), g), x), x),
            deviation(as_vec(group.compose(group.compose(g, h), f)), as_vec(group.compose(g, group.compose(h, f)))),
        ]
        if isinstance(group, AffineGroup):
            devs.append(family_law_deviation(group.family, rng))
        return max(devs)

    return _run("group-axioms", trial, trials, seed, tolerance)
