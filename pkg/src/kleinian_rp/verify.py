"""Matrix realisation of parameter triples and numerical certificates."""
from __future__ import annotations

import cmath
import math

import mpmath
import dataclasses
from dataclasses import dataclass
from typing import Any, Optional

from .algebra import (
    IDENTITY,
    MoebiusElement,
    ParameterTriple,
    axis_regime,
    classify_element,
    commutator,
    params_of_pair,
    power,
)
from .classifier import DISJOINT_FAMILIES, FamilyMatch, forward_match
from .config import DEFAULT_CONFIG, Config
from .indices import UPoint
from .presentations import GeneratorWordTable, PresentationInstance

SQRT5 = math.sqrt(5.0)


class GammaZero(ValueError):
    pass


class NotPrimitiveElliptic(ValueError):
    pass


class NotHyperbolic(ValueError):
    pass


class NoAdmissibleRoot(ArithmeticError):
    pass


class RealizationFailed(ArithmeticError):
    pass


@dataclass(frozen=True)
class RealizedPair:
    F: MoebiusElement
    G: MoebiusElement
    achieved: ParameterTriple
    residuals: tuple[float, float, float]
    target: Optional[ParameterTriple] = None
    match: Optional[FamilyMatch] = None      # family point the pair was built from, if any

    def images(self) -> dict[int, MoebiusElement]:
        return {1: self.F, 2: self.G}


def realize(triple: ParameterTriple, config: Config = DEFAULT_CONFIG) -> RealizedPair:
    """Normal-form matrices with the given (beta, beta', gamma).

    F = [[l, 1], [0, 1/l]] with l = exp(i*pi/n) and G = [[v, 0], [c, 1/v]]
    with v + 1/v = sqrt(beta' + 4).  Expanding the commutator trace gives
    gamma = c*(c + B) with B = (l - 1/l)(v - 1/v), so c is a root of
    c^2 + B c - gamma = 0.
    """
    beta, beta_prime, gamma = triple.as_tuple()
    if abs(gamma) < config.eps_eq:
        raise GammaZero("gamma = 0: f and g share a fixed point")
    cls = classify_element(beta, config.eps_rot, config.n_max)
    if not (cls.primitive and cls.n >= 3):
        raise NotPrimitiveElliptic(f"beta={beta!r} is {cls}")
    if not beta_prime > 0:
        raise NotHyperbolic(f"beta'={beta_prime!r} is not positive")
    lam = cmath.exp(1j * math.pi / cls.n)
    nu = (math.sqrt(beta_prime + 4) + math.sqrt(beta_prime)) / 2
    b = (lam - 1 / lam) * (nu - 1 / nu)
    c = (-b + cmath.sqrt(b * b + 4 * gamma)) / 2
    f = MoebiusElement(lam, 1, 0, 1 / lam)
    g = MoebiusElement(nu, 0, c, 1 / nu)
    achieved = params_of_pair(f, g, config)
    res = tuple(abs(x - y) for x, y in zip(achieved.as_tuple(), triple.as_tuple()))
    res = tuple(max(r, abs(i)) for r, i in zip(res, achieved.imag))
    # beta was snapped to the primitive value; compare against that
    res = (abs(achieved.beta + 4 * math.sin(math.pi / cls.n) ** 2), res[1], res[2])
    if max(res) >= config.eps_realize * max(1.0, abs(beta_prime), abs(gamma)):
        raise RealizationFailed(f"realisation residuals {res}")
    if axis_regime(achieved).kind != axis_regime(triple).kind:
        raise RealizationFailed("realised pair changed axis regime")
    return RealizedPair(f, g, achieved, res, triple)


def realize_match(match: FamilyMatch, beta_prime: Optional[float] = None,
                  config: Config = DEFAULT_CONFIG) -> RealizedPair:
    """Realise the row values of ``match``; certificates can then use exact row data."""
    triple = ParameterTriple(*forward_match(match, beta_prime))
    pair = realize(triple, config)
    return dataclasses.replace(pair, match=match)


def _scaled(m: MoebiusElement, sign: int, s: complex) -> MoebiusElement:
    return MoebiusElement((sign * m.a + 1) / s, sign * m.b / s, sign * m.c / s, (sign * m.d + 1) / s)


def sqrt_commutator(pair: RealizedPair, config: Config = DEFAULT_CONFIG) -> MoebiusElement:
    """H with H^2 = +-[F,G] and (HG)^2 = +-I (disjoint axes only)."""
    if not pair.achieved.gamma < 0:
        raise ValueError("square root of the commutator needs gamma < 0")
    k = commutator(pair.F, pair.G)
    best: Optional[tuple[float, MoebiusElement]] = None
    for sign in (1, -1):
        rad = cmath.sqrt(sign * k.trace() + 2)
        if abs(rad) < 1e-6:          # radicand lost to cancellation
            continue
        try:
            h = _scaled(k, sign, rad)
            res = max((h @ h).distance(k), (h @ pair.G @ h @ pair.G).identity_residual())
        except (ValueError, ZeroDivisionError):
            continue
        if best is None or res < best[0]:
            best = (res, h)
    if best is None or best[0] >= config.eps_cert:
        raise NoAdmissibleRoot("no square root of [F,G] with (HG)^2 = +-1")
    return best[1]


@dataclass(frozen=True)
class ElementReport:
    kind: str            # "elliptic" | "parabolic" | "hyperbolic"
    half_trace: float    # |tr|/2
    order: Optional[int] = None
    translation: Optional[float] = None

    def as_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "half_trace": self.half_trace,
                "order": self.order, "translation": self.translation}


def element_report(m: MoebiusElement, config: Config = DEFAULT_CONFIG) -> ElementReport:
    t = abs(m.trace()) / 2
    if abs(t - 1) < config.eps_cert:
        return ElementReport("parabolic", t)
    if t > 1:
        return ElementReport("hyperbolic", t, translation=2 * math.acosh(t))
    theta = math.acos(t)
    order = round(math.pi / theta) if theta > 0 else None
    if order is not None and abs(math.cos(math.pi / order) - t) >= config.eps_cert:
        order = None
    return ElementReport("elliptic", t, order=order)


def expected_root_half_trace(match: FamilyMatch) -> float:
    """|tr H|/2 predicted by the family; H^2 = [f,g] gives |tr H| = sqrt(-gamma)."""
    if match.family == "D1":
        return match.u.cosh()
    if match.family == "D2":
        return abs(math.cos(2 * math.pi / match.n))
    if match.family == "D3":
        return (SQRT5 - 1) / 4
    raise ValueError(f"{match.family} is not a disjoint-axes family")


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class CertificateEntry:
    label: str
    residual: float
    check: str                 # "identity" | "parabolic" | "trace"
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {"label": self.label, "residual": self.residual, "check": self.check,
                "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Certificate:
    kind: str                  # "presentation" | "geometry"
    entries: tuple[CertificateEntry, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def partial(self) -> bool:
        return bool(self.notes)

    @property
    def max_residual(self) -> float:
        return max((e.residual for e in self.entries), default=0.0)

    def as_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "passed": self.passed, "partial": self.partial,
                "entries": [e.as_dict() for e in self.entries], "notes": list(self.notes)}


# 2x2 arithmetic on mpmath tuples (a, b, c, d)
_MpMat = tuple


def _mp_mul(x: _MpMat, y: _MpMat) -> _MpMat:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _mp_inv(x: _MpMat) -> _MpMat:
    return (x[3], -x[1], -x[2], x[0])


def _mp_pow(x: _MpMat, k: int) -> _MpMat:
    if k < 0:
        x, k = _mp_inv(x), -k
    result: _MpMat = (1, 0, 0, 1)
    while k:
        if k & 1:
            result = _mp_mul(result, x)
        k >>= 1
        if k:
            x = _mp_mul(x, x)
    return result


def _mp_identity_residual(x: _MpMat) -> float:
    minus = max(abs(x[0] - 1), abs(x[1]), abs(x[2]), abs(x[3] - 1))
    plus = max(abs(x[0] + 1), abs(x[1]), abs(x[2]), abs(x[3] + 1))
    return float(min(minus, plus))


def _mp_images(match: FamilyMatch, beta_prime: float) -> dict[int, _MpMat]:
    """Normal-form F, G at the exact row values of ``match`` (current mpmath precision)."""
    _, bp, gamma = forward_match(match, beta_prime, mpmath)
    lam = mpmath.expjpi(mpmath.mpf(1) / match.n)
    nu = (mpmath.sqrt(bp + 4) + mpmath.sqrt(bp)) / 2
    b = (lam - 1 / lam) * (nu - 1 / nu)
    c = (-b + mpmath.sqrt(b * b + 4 * gamma)) / 2
    return {1: (lam, 1, 0, 1 / lam), 2: (nu, 0, c, 1 / nu)}


class _Backend:
    """Word evaluation in double precision or at the exact row values."""

    def __init__(self, pair: RealizedPair, config: Config) -> None:
        self.extended = pair.match is not None and config.cert_dps > 0
        if self.extended:
            bp = pair.target.beta_prime if pair.target is not None else pair.achieved.beta_prime
            self.images = _mp_images(pair.match, bp)
        else:
            self.images = pair.images()

    def evaluate(self, word):
        if not self.extended:
            return word.evaluate(self.images)
        result: _MpMat = (1, 0, 0, 1)
        for x in word.letters:
            m = self.images[abs(x)]
            result = _mp_mul(result, m if x > 0 else _mp_inv(m))
        return result

    def mul(self, x, y):
        return _mp_mul(x, y) if self.extended else x @ y

    def power(self, x, k: int):
        return _mp_pow(x, k) if self.extended else power(x, k)

    def identity(self):
        return (1, 0, 0, 1) if self.extended else IDENTITY

    def identity_residual(self, x) -> float:
        return _mp_identity_residual(x) if self.extended else x.identity_residual()

    def abs_trace(self, x) -> float:
        return float(abs(x[0] + x[3])) if self.extended else abs(x.trace())


def certify_presentation(pair: RealizedPair, pres: PresentationInstance,
                         words: GeneratorWordTable, config: Config = DEFAULT_CONFIG) -> Certificate:
    """Evaluate every relator whose generators all have f,g-words.

    When the pair was built with :func:`realize_match` and ``config.cert_dps``
    is positive, words are evaluated at the exact row values with that many
    digits; otherwise on the double-precision matrices.
    """
    eps = config.eps_cert
    with mpmath.workdps(max(config.cert_dps, 15)):
        backend = _Backend(pair, config)
        images = {name: backend.evaluate(w) for name, w in words.words.items()}
        entries: list[CertificateEntry] = []
        notes: list[str] = []
        if words.missing:
            notes.append("no f,g-word for " + ", ".join(words.missing))
        precision = f"{config.cert_dps} digits" if backend.extended else "double"
        for rel in pres.relators:
            label = str(rel)
            if any(g not in images for g, _ in rel.word):
                notes.append(f"uncovered relator {label}")
                continue
            w = backend.identity()
            for g, e in rel.word:
                w = backend.mul(w, backend.power(images[g], e))
            if rel.exponent is None or rel.exponent.is_finite:
                k = 1 if rel.exponent is None else rel.exponent.k
                res = backend.identity_residual(backend.power(w, k))
                entries.append(CertificateEntry(label, res, "identity", res < eps, precision))
            else:
                res = abs(backend.abs_trace(w) - 2.0)
                away = backend.identity_residual(w)
                entries.append(CertificateEntry(
                    label, res, "parabolic", res < eps and away > eps,
                    f"{precision}; distance from +-I {away:.3e}"))
    return Certificate("presentation", tuple(entries), tuple(notes))


def _cosh2(u: UPoint) -> float:
    """|cosh 2u| without going through cosh^2."""
    if u.kind == "angle":
        return abs(math.cos(2 * math.pi / u.p))
    if u.kind == "zero":
        return 1.0
    return math.cosh(2 * u.d)


def geometric_constant(match: FamilyMatch) -> tuple[float, str]:
    """Printed |tr(g f g^-1 f)|/2 for an intersecting-axes row, with a short label."""
    fam, n = match.family, match.n
    if fam in ("P1", "P2", "P4", "P5"):
        return _cosh2(match.u), f"|cosh 2u|, t(u)={match.t_u}"
    if fam in ("P3", "P9", "P10"):
        return abs(math.cos(2 * math.pi / match.m)), f"cos(2pi/{match.m})"
    if fam == "P6":
        return abs(math.cos(4 * math.pi / n)), f"cos(4pi/{n})"
    if fam in ("P7", "P18"):
        return 0.5, "cos(pi/3)"
    if fam == "P8":
        return 2 * math.cos(math.pi / n) ** 2, f"cosh d = 2cos^2(pi/{n})"
    if fam == "P11":
        return 2 * math.cos(math.pi / match.m) ** 2 - 0.5, f"cosh d = 2cos^2(pi/{match.m})-1/2"
    if fam == "P12":
        return (3 + SQRT5) / 4, "cosh d = (3+sqrt5)/4"
    if fam in ("P13", "P14"):
        return math.cos(math.pi / 5), "cos(pi/5)"
    if fam in ("P15", "P16", "P17"):
        return 0.0, "cos(pi/2)"
    if fam == "P19":
        return (5 + SQRT5) / 4, "cosh d = (5+sqrt5)/4"
    raise ValueError(f"{fam} has no geometric constant")


def certify_geometry(pair: RealizedPair, match: FamilyMatch,
                     config: Config = DEFAULT_CONFIG) -> Certificate:
    if match.family in DISJOINT_FAMILIES:
        raise ValueError("geometric constants are defined for intersecting-axes rows")
    w = pair.G @ pair.F @ pair.G.inverse() @ pair.F
    value, label = geometric_constant(match)
    half = abs(w.trace()) / 2
    res = abs(half - value)
    kind = "parabolic" if abs(value - 1) < 1e-15 else ("hyperbolic" if value > 1 else "elliptic")
    detail = f"{label}; |tr W|/2 = {half:.16e}; {kind}"
    if kind == "hyperbolic":
        detail += f"; d = {math.acosh(value):.16e}"
    entry = CertificateEntry("|tr(G F G^-1 F)|/2", res, "trace", res < config.eps_cert, detail)
    return Certificate("geometry", (entry,))
