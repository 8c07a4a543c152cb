"""Physical parameters, exact half-integer quantum numbers and derived notation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact multiple of 1/2, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise TypeError(f"twice must be int, got {type(self.twice).__name__}")

    @classmethod
    def of(cls, value: Union["HalfInt", int, float, str, Fraction]) -> "HalfInt":
        """Parse ``1``, ``-3/2``, ``"0.5"``, ``"1/2"`` or a Fraction exactly."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        return HalfInt.of(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def half(value) -> HalfInt:
    return HalfInt.of(value)


class Geometry(enum.Enum):
    FLAT = "flat"
    SPHERE = "sphere"
    HYPERBOLOID = "hyperboloid"

    @property
    def epsilon(self) -> int:
        """Curvature sign: +1 sphere, -1 hyperboloid, 0 flat."""
        return {Geometry.FLAT: 0, Geometry.SPHERE: 1, Geometry.HYPERBOLOID: -1}[self]

    @property
    def curved(self) -> bool:
        return self is not Geometry.FLAT


@dataclass(frozen=True)
class PhysParams:
    """Constants and couplings of the system. Defaults are atomic units."""

    mu: float = 1.0
    hbar: float = 1.0
    e2: float = 1.0
    lambda1: float = 0.0
    lambda2: float = 0.0
    s: HalfInt = field(default_factory=lambda: HalfInt(0))
    geometry: Geometry = Geometry.FLAT
    r_curv: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "s", HalfInt.of(self.s))
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        for name in ("mu", "hbar", "r_curv"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")
        for name in ("e2", "lambda1", "lambda2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")

    @property
    def bohr_radius(self) -> float:
        if self.e2 == 0:
            raise ValueError("Bohr radius undefined for e2 = 0")
        return self.hbar**2 / (self.mu * self.e2)

    @property
    def g1(self) -> float:
        """Dimensionless 4*mu*lambda1/hbar**2."""
        return 4.0 * self.mu * self.lambda1 / self.hbar**2

    @property
    def g2(self) -> float:
        """Dimensionless 4*mu*lambda2/hbar**2."""
        return 4.0 * self.mu * self.lambda2 / self.hbar**2

    def replace(self, **changes) -> "PhysParams":
        from dataclasses import replace

        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "hbar": self.hbar,
            "e2": self.e2,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "s": str(self.s),
            "geometry": self.geometry.value,
            "r_curv": self.r_curv,
        }


@dataclass(frozen=True)
class QuantumNumbers:
    n: HalfInt
    j: HalfInt
    m: HalfInt

    def __post_init__(self):
        for name in ("n", "j", "m"):
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))

    @classmethod
    def of(cls, n, j, m) -> "QuantumNumbers":
        return cls(HalfInt.of(n), HalfInt.of(j), HalfInt.of(m))

    @property
    def radial_degree(self) -> int:
        """n - j - 1, the degree of the terminating radial series."""
        return int(self.n - self.j - 1)

    def __str__(self) -> str:
        return f"(n={self.n}, j={self.j}, m={self.m})"


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str


class ValidationError(ValueError):
    """Raised when quantum numbers are not admissible; carries every violation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"[{v.rule}] {v.message}" for v in self.violations))


class NoBoundStateError(ValueError):
    """The requested hyperboloid level is not normalizable."""


@dataclass(frozen=True)
class DerivedNotation:
    m1: float
    m2: float
    m_plus: HalfInt
    delta: float
    j_tilde: float
    n_eff: float
    sigma: Optional[float] = None
    kappa: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "m1": self.m1,
            "m2": self.m2,
            "m_plus": str(self.m_plus),
            "delta": self.delta,
            "j_tilde": self.j_tilde,
            "n_eff": self.n_eff,
            "sigma": self.sigma,
            "kappa": self.kappa,
        }


def m_plus(s: HalfInt, m: HalfInt) -> HalfInt:
    # (|m+s| + |m-s|)/2 == max(|m|, |s|)
    return max(abs(m), abs(s))


def _excess(integer_part: HalfInt, g: float) -> float:
    """sqrt(k**2 + g) - |k| without cancellation."""
    k = abs(float(integer_part))
    if g == 0.0:
        return 0.0
    return g / (math.sqrt(k * k + g) + k)


def delta_of(p: PhysParams, m: HalfInt) -> float:
    """Quantum defect (m1 + m2)/2 - m_plus for magnetic number m."""
    m = HalfInt.of(m)
    return 0.5 * (_excess(m - p.s, p.g1) + _excess(m + p.s, p.g2))


def _kinematic_violations(p: PhysParams, q: QuantumNumbers) -> list:
    out = []
    s, n, j, m = p.s, q.n, q.j, q.m
    if not (m - s).is_integer:
        out.append(Violation("m-s-integer", f"m - s = {m - s} is not an integer"))
    nr = n - abs(s)
    if not (nr.is_integer and nr.twice >= 2):
        out.append(Violation("n-range", f"n - |s| = {nr} is not a positive integer"))
    mp_ = m_plus(s, m)
    if not (j - mp_).is_integer or j < mp_:
        out.append(Violation("j-range", f"j = {j} not in m_+ + N with m_+ = {mp_}"))
    if not (n - j - 1).is_integer or (n - j - 1).twice < 0:
        out.append(Violation("j-range", f"j = {j} not in {{..., n-1}} for n = {n}"))
    if abs(m) > j or not (j - m).is_integer:
        out.append(Violation("m-range", f"m = {m} not in {{-j, ..., j}} for j = {j}"))
    return out


def validate(p: PhysParams, q: QuantumNumbers, *, require_bound: bool = True) -> list:
    """Return every violated admissibility rule (empty list means valid).

    For the hyperboloid, ``require_bound`` additionally enforces the
    normalizability condition (n + delta)**2 < R0/r0.
    """
    out = _kinematic_violations(p, q)
    if require_bound and p.geometry is Geometry.HYPERBOLOID and not out:
        n_eff = float(q.n) + delta_of(p, q.m)
        ratio = p.r_curv / p.bohr_radius
        if not n_eff**2 < ratio:
            out.append(
                Violation(
                    "bound-state",
                    f"(n + delta)^2 = {n_eff**2:.17g} >= R0/r0 = {ratio:.17g}",
                )
            )
    return out


def check(p: PhysParams, q: QuantumNumbers, *, require_bound: bool = True) -> None:
    violations = validate(p, q, require_bound=require_bound)
    if violations:
        if [v.rule for v in violations] == ["bound-state"]:
            raise NoBoundStateError(violations[0].message)
        raise ValidationError(violations)


def derive_notation(p: PhysParams, q: QuantumNumbers) -> DerivedNotation:
    """Compute m1, m2, m_+, delta, j~ and the geometry's sigma or kappa.

    Raises ValidationError for kinematically invalid quantum numbers. The
    hyperboloid bound-state condition is *not* enforced here.
    """
    violations = _kinematic_violations(p, q)
    if violations:
        raise ValidationError(violations)
    s, m = p.s, q.m
    m1 = math.sqrt(float(m - s) ** 2 + p.g1)
    m2 = math.sqrt(float(m + s) ** 2 + p.g2)
    mp_ = m_plus(s, m)
    delta = delta_of(p, m)
    n_eff = float(q.n) + delta
    sigma = kappa = None
    if p.e2 > 0:
        if p.geometry.curved:
            sigma = p.r_curv / (p.bohr_radius * n_eff)
        else:
            kappa = 1.0 / (p.bohr_radius * n_eff)
    return DerivedNotation(
        m1=m1,
        m2=m2,
        m_plus=mp_,
        delta=delta,
        j_tilde=float(q.j) + delta,
        n_eff=n_eff,
        sigma=sigma,
        kappa=kappa,
    )


def enumerate_states(p: PhysParams, n_max) -> Iterator[QuantumNumbers]:
    """All kinematically valid (n, j, m) with n <= n_max, in (n, j, m) order.

    The hyperboloid bound-state condition is not applied.
    """
    n_max = HalfInt.of(n_max)
    n = abs(p.s) + 1
    while n <= n_max:
        j = HalfInt(n.twice % 2)
        while j <= n - 1:
            m = -j
            while m <= j:
                q = QuantumNumbers(n, j, m)
                if not _kinematic_violations(p, q):
                    yield q
                m = m + 1
            j = j + 1
        n = n + 1
