"""Moebius transformations in SL(2,C)/{+-1}, trace parameters and element types."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .config import DEFAULT_CONFIG, Config

Number = Union[int, float, complex]


class DegenerateInput(ValueError):
    pass


class HalfTurn(ValueError):
    pass


class NotElliptic(ValueError):
    pass


@dataclass(frozen=True)
class MoebiusElement:
    """Unit-determinant 2x2 complex matrix, considered up to a global sign."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        det = self.det()
        scale = max(1.0, self.norm() ** 2)
        if not abs(det - 1.0) < DEFAULT_CONFIG.eps_det * scale:
            raise ValueError(f"determinant {det} is not 1")

    @classmethod
    def from_entries(cls, a: Number, b: Number, c: Number, d: Number) -> "MoebiusElement":
        """Build from any non-singular matrix, rescaling to determinant one."""
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if det == 0:
            raise DegenerateInput("singular matrix")
        s = cmath.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def identity(cls) -> "MoebiusElement":
        return cls(1, 0, 0, 1)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def norm(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def trace(self) -> complex:
        return self.a + self.d

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "MoebiusElement":
        return MoebiusElement(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        det = a * d - b * c
        if abs(det - 1.0) > 1e-13:
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        return MoebiusElement(a, b, c, d)

    __mul__ = __matmul__

    def __pow__(self, k: int) -> "MoebiusElement":
        return power(self, k)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def distance(self, other: "MoebiusElement") -> float:
        """min(||M - N||, ||M + N||) in the max-entry norm."""
        minus = max(abs(x - y) for x, y in zip(self.entries(), other.entries()))
        plus = max(abs(x + y) for x, y in zip(self.entries(), other.entries()))
        return min(minus, plus)

    def approx_eq(self, other: "MoebiusElement", eps: float = DEFAULT_CONFIG.eps_eq) -> bool:
        return self.distance(other) < eps

    def identity_residual(self) -> float:
        return self.distance(IDENTITY)

    def is_identity(self, eps: float = DEFAULT_CONFIG.eps_eq) -> bool:
        return self.identity_residual() < eps

    def conjugate_by(self, m: "MoebiusElement") -> "MoebiusElement":
        return m @ self @ m.inverse()


IDENTITY = MoebiusElement(1, 0, 0, 1)


def _renormalize(m: MoebiusElement) -> MoebiusElement:
    s = cmath.sqrt(m.det())
    return MoebiusElement(m.a / s, m.b / s, m.c / s, m.d / s)


def power(m: MoebiusElement, k: int) -> MoebiusElement:
    """Binary powering; the determinant is re-normalised every 16 products."""
    if k < 0:
        return power(m.inverse(), -k)
    result = IDENTITY
    base = m
    count = 0
    while k:
        if k & 1:
            result = result @ base
            count += 1
        k >>= 1
        if k:
            base = base @ base
            count += 1
        if count >= 16:
            result, base = _renormalize(result), _renormalize(base)
            count = 0
    return result


def commutator(f: MoebiusElement, g: MoebiusElement) -> MoebiusElement:
    return f @ g @ f.inverse() @ g.inverse()


@dataclass(frozen=True)
class ParameterTriple:
    """Real trace parameters (beta, beta', gamma) of a marked pair (f, g)."""

    beta: float
    beta_prime: float
    gamma: float
    provenance: tuple[Optional[str], Optional[str], Optional[str]] = (None, None, None)
    imag: tuple[float, float, float] = field(default=(0.0, 0.0, 0.0), compare=False)

    def __post_init__(self) -> None:
        for name in ("beta", "beta_prime", "gamma"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.beta, self.beta_prime, self.gamma)

    def is_real(self, eps_im: float = DEFAULT_CONFIG.eps_im) -> bool:
        return all(abs(x) < eps_im for x in self.imag)

    def close_to(self, other: "ParameterTriple", eps: float) -> bool:
        return all(abs(x - y) < eps for x, y in zip(self.as_tuple(), other.as_tuple()))


def params_of_pair(f: MoebiusElement, g: MoebiusElement,
                   config: Config = DEFAULT_CONFIG) -> ParameterTriple:
    if f.is_identity(config.eps_eq) or g.is_identity(config.eps_eq):
        raise DegenerateInput("generator is +-identity")
    beta = f.trace() ** 2 - 4
    beta_prime = g.trace() ** 2 - 4
    gamma = commutator(f, g).trace() - 2
    return ParameterTriple(
        beta.real, beta_prime.real, gamma.real,
        imag=(beta.imag, beta_prime.imag, gamma.imag),
    )


@dataclass(frozen=True)
class ElementClass:
    kind: str
    n: int = 0
    q: int = 0

    @property
    def is_elliptic(self) -> bool:
        return self.kind == "elliptic"

    @property
    def primitive(self) -> bool:
        return self.kind == "elliptic" and self.q == 1

    def __str__(self) -> str:
        if self.kind == "elliptic":
            return f"elliptic(n={self.n}, q={self.q})"
        return self.kind


def classify_element(beta: Number, tolerance: float = DEFAULT_CONFIG.eps_rot,
                     n_max: int = DEFAULT_CONFIG.n_max) -> ElementClass:
    """Type of an element from beta = tr^2 - 4.

    For beta in [-4, 0) the rotation angle is recognised as q*pi/n with
    gcd(q, n) = 1 and n <= n_max, via the continued-fraction best
    approximation of arcsin(sqrt(-beta/4))/pi.
    """
    if isinstance(beta, complex):
        if abs(beta.imag) >= tolerance:
            return ElementClass("strictly_loxodromic")
        beta = beta.real
    beta = float(beta)
    if abs(beta) < tolerance:
        return ElementClass("parabolic")
    if beta > 0:
        return ElementClass("hyperbolic")
    if beta < -4 - tolerance:
        return ElementClass("pi_loxodromic")
    s = math.sqrt(min(max(-beta / 4.0, 0.0), 1.0))
    x = math.asin(s) / math.pi
    frac = Fraction(x).limit_denominator(n_max)
    q, n = frac.numerator, frac.denominator
    if q == 0 or n < 2:
        return ElementClass("infinite_order_elliptic")
    if abs(beta + 4.0 * math.sin(q * math.pi / n) ** 2) >= tolerance:
        return ElementClass("infinite_order_elliptic")
    return ElementClass("elliptic", n=n, q=q)


def primitive_beta(n: int) -> float:
    return -4.0 * math.sin(math.pi / n) ** 2


def normalize_primitive(triple: ParameterTriple,
                        config: Config = DEFAULT_CONFIG) -> ParameterTriple:
    """Replace a non-primitive elliptic f by the primitive power f^r of the same order."""
    cls = classify_element(triple.beta, config.eps_rot, config.n_max)
    if not cls.is_elliptic:
        raise NotElliptic(f"beta={triple.beta!r} is {cls}")
    if cls.n == 2:
        raise HalfTurn("the elliptic generator is a half-turn")
    if cls.q == 1:
        return triple
    r = pow(cls.q, -1, cls.n)
    if r > cls.n // 2:
        r = cls.n - r
    beta_r = primitive_beta(cls.n)
    gamma_r = triple.gamma * beta_r / triple.beta
    tag = f"f^{r}: -4sin^2(pi/{cls.n})"
    return ParameterTriple(
        beta_r, triple.beta_prime, gamma_r,
        provenance=(tag, triple.provenance[1], f"gamma*beta(f^{r})/beta(f)"),
    )


@dataclass(frozen=True)
class AxisRegime:
    kind: str            # "disjoint_coplanar" | "intersecting_non_orthogonal" | "out_of_scope"
    reason: str = ""

    @property
    def in_scope(self) -> bool:
        return self.kind != "out_of_scope"


DISJOINT = AxisRegime("disjoint_coplanar")
INTERSECTING = AxisRegime("intersecting_non_orthogonal")
ELEMENTARY_REASON = "elementary; f and g have a common fixed point"


def axis_regime(triple: ParameterTriple, gamma_zero_tol: float = 1e-12) -> AxisRegime:
    beta, beta_prime, gamma = triple.as_tuple()
    if not (-4.0 < beta < 0.0):
        return AxisRegime("out_of_scope", "f is not elliptic of order >= 3")
    if not beta_prime > 0.0:
        return AxisRegime("out_of_scope", "g is not hyperbolic")
    if abs(gamma) <= gamma_zero_tol:
        return AxisRegime("out_of_scope", ELEMENTARY_REASON)
    if gamma < 0:
        return DISJOINT
    if gamma < -beta * beta_prime / 4.0:
        return INTERSECTING
    return AxisRegime("out_of_scope", "outside the truly-spatial coplanar regime")
