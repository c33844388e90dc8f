"""Discreteness decision for RP groups with a primitive elliptic and a hyperbolic generator.

Every family is handled the same way: recover a best-guess index tuple from
(beta, beta', gamma), evaluate the family formulas forward on that tuple and
compare.  A family matches when the side constraints hold on the recovered
integers and the forward residual is below ``eps_match``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .algebra import (
    AxisRegime,
    ParameterTriple,
    axis_regime,
    classify_element,
    normalize_primitive,
)
from .config import DEFAULT_CONFIG, Config
from .indices import (
    INF,
    INF_BAR,
    ExtIndex,
    NegativeSquare,
    Parity,
    UPoint,
    match_cosh2,
    t_of,
)

SQRT5 = math.sqrt(5.0)

DISJOINT_FAMILIES = ("D1", "D2", "D3")
EVEN_FAMILIES = ("P1", "P2", "P3")
ODD_FAMILIES = tuple(f"P{i}" for i in range(4, 20))
FAMILIES = DISJOINT_FAMILIES + EVEN_FAMILIES + ODD_FAMILIES
FIXED_FAMILIES = tuple(f"P{i}" for i in range(12, 20))
SEMI_FIXED_M = ("P3", "P9", "P10", "P11")

FIXED_N = {f: (3 if f in ("P12", "P13", "P14") else 5) for f in FIXED_FAMILIES}


class InvalidRange(ValueError):
    pass


@dataclass(frozen=True)
class FamilyMatch:
    """A family row together with the index values recovered for it."""

    family: str
    n: int
    indices: Mapping[str, ExtIndex] = field(default_factory=dict)
    residual: float = 0.0
    u: Optional[UPoint] = None
    v: Optional[UPoint] = None

    def index(self, name: str) -> ExtIndex:
        return self.indices[name]

    @property
    def t_u(self) -> Optional[ExtIndex]:
        return self.indices.get("t_u")

    @property
    def t_v(self) -> Optional[ExtIndex]:
        return self.indices.get("t_v")

    @property
    def m(self) -> Optional[int]:
        m = self.indices.get("m")
        return m.k if m is not None else None

    def key(self) -> tuple:
        """Identity of the match without the residual (used for round-trips)."""
        return (self.family, self.n, tuple(sorted((k, str(v)) for k, v in self.indices.items())))

    def label(self) -> str:
        parts = [f"n={self.n}"] + [f"{k}={v}" for k, v in sorted(self.indices.items())]
        return f"{self.family}(" + ", ".join(parts) + ")"

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "family": self.family,
            "n": self.n,
            "indices": {k: str(v) for k, v in sorted(self.indices.items())},
            "residual": self.residual,
        }
        for name, pt in (("u", self.u), ("v", self.v)):
            if pt is not None:
                out[name] = {"kind": pt.kind, "p": pt.p, "d": pt.d}
        return out


@dataclass(frozen=True)
class Verdict:
    kind: str                                  # "discrete" | "not_discrete" | "out_of_scope"
    matches: tuple[FamilyMatch, ...] = ()
    nearest: Optional[FamilyMatch] = None
    reason: str = ""
    triple: Optional[ParameterTriple] = None   # after primitive normalisation
    regime: Optional[AxisRegime] = None

    def __post_init__(self) -> None:
        if self.kind == "discrete" and not self.matches:
            raise ValueError("a discrete verdict needs at least one match")

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    @property
    def families(self) -> tuple[str, ...]:
        return tuple(m.family for m in self.matches)


# ---------------------------------------------------------------------------
# row formulas

def _cos_pi(n: int) -> float:
    return math.cos(math.pi / n)


def _S(beta, gamma, n: int, lib: Any = math):
    return -2 * ((gamma - beta) ** 2 * lib.cos(lib.pi / n) + gamma * (gamma + beta)) / (gamma * beta)


def _T(beta, n: int, lib: Any = math):
    return (-2 * (beta + 2) ** 2 * lib.cos(lib.pi / n) / (beta + 1)
            - 2 * (beta * beta + 6 * beta + 4) / beta)


def _ucosh(u: UPoint, lib: Any = math):
    if u.kind == "angle":
        return lib.cos(lib.pi / u.p)
    if u.kind == "zero":
        return lib.mpf(1) if lib is not math else 1.0
    return lib.cosh(u.d)


def _fixed_row(family: str, lib: Any = math) -> tuple:
    r5 = lib.sqrt(5)
    return {
        "P12": (-3, (r5 + 1) / 2, r5),
        "P13": (-3, (r5 - 1) / 2, r5),
        "P14": (-3, (r5 - 1) / 2, r5 - 1),
        "P15": ((r5 - 5) / 2, (r5 - 1) / 2, r5),
        "P16": ((r5 - 5) / 2, (r5 - 1) / 2, (3 * r5 - 1) / 2),
        "P17": ((r5 - 5) / 2, (r5 - 1) / 2, 3 * (r5 + 1) / 2),
        "P18": ((r5 - 5) / 2, (r5 + 1) / 2, 3 * (r5 + 1) / 2),
        "P19": ((r5 - 5) / 2, r5 + 2, (5 * r5 + 9) / 2),
    }[family]


# beta, gamma, beta' of the fixed rows
FIXED_ROWS: dict[str, tuple[float, float, float]] = {f: _fixed_row(f) for f in FIXED_FAMILIES}


def _num(x: float, lib: Any):
    return float(x) if lib is math else lib.mpf(x)


def forward(family: str, n: int, u: Optional[UPoint] = None, v: Optional[UPoint] = None,
            m: Optional[int] = None, beta_prime: Optional[float] = None, lib: Any = math
            ) -> tuple:
    """Evaluate a family row; returns (beta, beta', gamma).

    ``lib`` is ``math`` or ``mpmath`` (anything with cos, cosh, sqrt, pi).
    """
    pi, cos = lib.pi, lib.cos
    beta = -4 * lib.sin(pi / n) ** 2
    ch2 = (lambda w: _ucosh(w, lib) ** 2)
    if family == "D1":
        if beta_prime is None:
            raise ValueError("D1 leaves beta' free; pass beta_prime")
        return beta, _num(beta_prime, lib), -4 * ch2(u)
    if family == "D2":
        return beta, 4 * (beta + 4) * ch2(u) - 4, -(beta + 2) ** 2
    if family == "D3":
        r5 = lib.sqrt(5)
        return beta, 2 * (7 + 3 * r5) * ch2(u) - 4, (r5 - 3) / 2
    if family in ("P1", "P2", "P4", "P5"):
        gamma = 4 * ch2(u) + beta
        if family == "P1":
            bp = 4 / gamma * ch2(v) - 4 * gamma / beta
        elif family == "P2":
            bp = 4 * (gamma - beta) / gamma * ch2(v) - 4 * gamma / beta
        elif family == "P4":
            bp = 2 / gamma * (_ucosh(v, lib) - cos(pi / n)) + _S(beta, gamma, n, lib)
        else:
            bp = 2 * (gamma - beta) / gamma * _ucosh(v, lib) + _S(beta, gamma, n, lib)
        return beta, bp, gamma
    if family == "P3":
        gamma = 2 * cos(2 * pi / m)
        return beta, gamma * gamma + 4 * gamma, gamma
    if family == "P6":
        gamma = (beta + 4) * (beta + 1)
        return beta, 2 * (beta + 2) ** 2 / (beta + 1) * _ucosh(v, lib) + _T(beta, n, lib), gamma
    if family == "P7":
        return beta, 2 / beta * ((beta - 3) * cos(pi / n) - 2 * beta - 3), beta + 3
    if family == "P8":
        return beta, -6 / beta * (2 * cos(pi / n) + beta + 2), 2 * (beta + 3)
    if family in ("P9", "P10"):
        gamma = 2 * cos(2 * pi / m) - 1
        if family == "P9":
            return beta, 2 / gamma * (gamma * gamma + 2 * gamma + 2), gamma
        return beta, gamma * gamma + 4 * gamma, gamma
    if family == "P11":
        gamma = 2 * cos(2 * pi / m)
        return beta, 2 * gamma, gamma
    if family in FIXED_ROWS:
        b, g, bp = _fixed_row(family, lib)
        return b, bp, g
    raise ValueError(f"unknown family {family!r}")


def forward_match(match: "FamilyMatch", beta_prime: Optional[float] = None, lib: Any = math) -> tuple:
    """Row values at the indices stored in ``match``."""
    return forward(match.family, match.n, match.u, match.v, match.m, beta_prime, lib)


# ---------------------------------------------------------------------------
# side constraints

def _header_ok(n: int, t: ExtIndex) -> bool:
    return 1.0 / n + t.reciprocal() < 0.5


def constraints_ok(family: str, n: int, t_u: Optional[ExtIndex] = None,
                   t_v: Optional[ExtIndex] = None, m: Optional[int] = None) -> bool:
    """Printed side conditions of a row, checked on exact integers."""
    odd = n % 2 == 1
    if family == "D1":
        return n >= 3 and t_u >= ExtIndex.finite(3)
    if family == "D2":
        return n >= 5 and odd and t_u >= ExtIndex.finite(4)
    if family == "D3":
        return n == 3 and t_u >= ExtIndex.finite(3)
    if family in ("P1", "P2"):
        parity: Parity = "even" if family == "P1" else "odd"
        return (n >= 4 and not odd and t_u.satisfies(parity) and _header_ok(n, t_u)
                and t_v >= ExtIndex.finite(3))
    if family == "P3":
        return n == 4 and m >= 5 and m % 2 == 1
    if family in ("P4", "P5"):
        parity = "even" if family == "P4" else "odd"
        return (n >= 3 and odd and t_u.satisfies(parity) and _header_ok(n, t_u)
                and t_v >= ExtIndex.finite(2))
    if family == "P6":
        return n >= 7 and odd and t_v >= ExtIndex.finite(2)
    if family in ("P7", "P8"):
        return n >= 5 and odd and math.gcd(n, 3) == 1
    if family == "P9":
        return n == 3 and m >= 7 and m % 2 == 1
    if family == "P10":
        return n == 3 and m >= 8 and math.gcd(m, 6) == 2
    if family == "P11":
        return n == 3 and m >= 7 and math.gcd(m, 4) <= 2
    if family in FIXED_ROWS:
        return n == FIXED_N[family]
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# inversion helpers

def _guess_u(w: float, parity: Parity, min_t: ExtIndex, config: Config) -> Optional[UPoint]:
    """Point of U with cosh^2 = w, or the nearest finite guess when none matches."""
    try:
        hit = match_cosh2(w, parity, min_t, config.tol, config.p_max)
    except NegativeSquare:
        return None
    if hit is not None:
        return hit[0]
    if not math.isfinite(w) or w < 0:
        return None
    if w >= 1.0:
        return UPoint.positive(math.acosh(math.sqrt(w))) if w > 1.0 else UPoint.zero()
    p = round(math.pi / math.acos(math.sqrt(w)))
    return UPoint.angle(min(max(p, 2), config.p_max))


def _guess_u_from_cosh(c: float, parity: Parity, min_t: ExtIndex,
                       config: Config) -> Optional[UPoint]:
    if not math.isfinite(c) or c < -config.tol:
        return None
    return _guess_u(max(c, 0.0) ** 2, parity, min_t, config)


def _guess_m(cos_value: float, config: Config) -> list[int]:
    """Integers m near the solution of cos(2*pi/m) = cos_value."""
    if not -1.0 <= cos_value < 1.0:
        return []
    m_hat = 2 * math.pi / math.acos(cos_value)
    if not math.isfinite(m_hat):
        return []
    centre = round(m_hat)
    return [m for m in (centre - 1, centre, centre + 1) if 2 <= m <= config.m_scan_max]


def _ratio(num: float, den: float) -> float:
    """num/den, or nan when the denominator vanishes (the guess is then dropped)."""
    return num / den if den != 0.0 else math.nan


def _residual(family: str, triple: ParameterTriple, n: int, u=None, v=None, m=None) -> float:
    b, bp, g = triple.as_tuple()
    fb, fbp, fg = forward(family, n, u, v, m, beta_prime=bp)
    return max(abs(fb - b), abs(fbp - bp), abs(fg - g))


@dataclass
class _Collector:
    triple: ParameterTriple
    config: Config
    matches: list[FamilyMatch] = field(default_factory=list)
    nearest: Optional[FamilyMatch] = None

    def offer(self, family: str, n: int, u: Optional[UPoint] = None,
              v: Optional[UPoint] = None, m: Optional[int] = None) -> None:
        try:
            res = _residual(family, self.triple, n, u, v, m)
        except (ZeroDivisionError, ValueError, OverflowError):
            return
        if not math.isfinite(res):
            return
        indices: dict[str, ExtIndex] = {}
        if u is not None:
            indices["t_u"] = t_of(u)
        if v is not None:
            indices["t_v"] = t_of(v)
        if m is not None:
            indices["m"] = ExtIndex.finite(m)
        ok = constraints_ok(family, n, indices.get("t_u"), indices.get("t_v"), m)
        fm = FamilyMatch(family, n, indices, res, u, v)
        if ok and res < self.config.eps_match:
            self.matches.append(fm)
        elif res < self.config.eps_report:
            if self.nearest is None or res < self.nearest.residual:
                self.nearest = fm


# ---------------------------------------------------------------------------
# per-regime matchers

def _check_n(triple: ParameterTriple, config: Config) -> int:
    cls = classify_element(triple.beta, config.eps_rot, config.n_max)
    if not cls.primitive:
        raise ValueError(f"beta={triple.beta!r} is not a primitive elliptic ({cls})")
    return cls.n


def _disjoint(col: _Collector, n: int) -> None:
    b, bp, g = col.triple.as_tuple()
    cfg = col.config
    col.offer("D1", n, u=_guess_u(-g / 4.0, "any", ExtIndex.finite(3), cfg))
    if n >= 5 and n % 2 == 1:
        u = _guess_u((bp + 4) / (4 * (b + 4)), "any", ExtIndex.finite(4), cfg)
        if u is not None:
            col.offer("D2", n, u=u)
    if n == 3:
        u = _guess_u((bp + 4) / (2 * (7 + 3 * SQRT5)), "any", ExtIndex.finite(3), cfg)
        if u is not None:
            col.offer("D3", n, u=u)


def _intersecting(col: _Collector, n: int) -> None:
    b, bp, g = col.triple.as_tuple()
    cfg = col.config
    w_u = (g - b) / 4.0
    if n % 2 == 0:
        u_even = _guess_u(w_u, "even", ExtIndex.finite(2), cfg)
        u_odd = _guess_u(w_u, "odd", ExtIndex.finite(2), cfg)
        if u_even is not None:
            gam = 4 * u_even.cosh2() + b
            v = _guess_u((bp + 4 * gam / b) * gam / 4.0, "any", ExtIndex.finite(3), cfg)
            if v is not None:
                col.offer("P1", n, u=u_even, v=v)
        if u_odd is not None:
            gam = 4 * u_odd.cosh2() + b
            v = _guess_u(_ratio((bp + 4 * gam / b) * gam, 4.0 * (gam - b)), "any",
                         ExtIndex.finite(3), cfg)
            if v is not None:
                col.offer("P2", n, u=u_odd, v=v)
        if n == 4:
            for m in _guess_m(g / 2.0, cfg):
                col.offer("P3", n, m=m)
        return

    u_even = _guess_u(w_u, "even", ExtIndex.finite(2), cfg)
    u_odd = _guess_u(w_u, "odd", ExtIndex.finite(2), cfg)
    if u_even is not None:
        gam = 4 * u_even.cosh2() + b
        c = (bp - _S(b, gam, n)) * gam / 2.0 + _cos_pi(n) if gam != 0.0 else math.nan
        v = _guess_u_from_cosh(c, "any", ExtIndex.finite(2), cfg)
        if v is not None:
            col.offer("P4", n, u=u_even, v=v)
    if u_odd is not None:
        gam = 4 * u_odd.cosh2() + b
        c = _ratio((bp - _S(b, gam, n)) * gam, 2.0 * (gam - b)) if gam != 0.0 else math.nan
        v = _guess_u_from_cosh(c, "any", ExtIndex.finite(2), cfg)
        if v is not None:
            col.offer("P5", n, u=u_odd, v=v)
    if n >= 7:
        c = (bp - _T(b, n)) * (b + 1) / (2.0 * (b + 2) ** 2)
        v = _guess_u_from_cosh(c, "any", ExtIndex.finite(2), cfg)
        if v is not None:
            col.offer("P6", n, v=v)
    if n >= 5:
        col.offer("P7", n)
        col.offer("P8", n)
    if n == 3:
        for m in _guess_m((g + 1.0) / 2.0, cfg):
            col.offer("P9", n, m=m)
            col.offer("P10", n, m=m)
        for m in _guess_m(g / 2.0, cfg):
            col.offer("P11", n, m=m)
    for fam in FIXED_FAMILIES:
        if FIXED_N[fam] == n:
            col.offer(fam, n)


def _ordered(matches: Iterable[FamilyMatch]) -> tuple[FamilyMatch, ...]:
    seen: dict[tuple, FamilyMatch] = {}
    for fm in matches:
        seen.setdefault(fm.key(), fm)
    return tuple(sorted(seen.values(), key=lambda fm: (FAMILIES.index(fm.family), fm.key())))


def _verdict(col: _Collector, regime: AxisRegime) -> Verdict:
    if col.matches:
        return Verdict("discrete", _ordered(col.matches), triple=col.triple, regime=regime)
    return Verdict("not_discrete", nearest=col.nearest, reason="no family matches",
                   triple=col.triple, regime=regime)


def classify_disjoint(triple: ParameterTriple, config: Config = DEFAULT_CONFIG) -> Verdict:
    if not triple.gamma < 0:
        raise ValueError("classify_disjoint needs gamma < 0")
    col = _Collector(triple, config)
    _disjoint(col, _check_n(triple, config))
    return _verdict(col, axis_regime(triple))


def classify_intersecting(triple: ParameterTriple, config: Config = DEFAULT_CONFIG) -> Verdict:
    regime = axis_regime(triple)
    if regime.kind != "intersecting_non_orthogonal":
        raise ValueError("classify_intersecting needs 0 < gamma < -beta*beta'/4")
    col = _Collector(triple, config)
    _intersecting(col, _check_n(triple, config))
    return _verdict(col, regime)


def _fixed_beyond_interval(triple: ParameterTriple, config: Config) -> Optional[Verdict]:
    """Fixed rows listed with gamma >= -beta*beta'/4 (P19) are still recognised."""
    b, bp, g = triple.as_tuple()
    if not (-4.0 < b < 0.0 and bp > 0.0 and g > 0.0):
        return None
    cls = classify_element(b, config.eps_rot, config.n_max)
    if not cls.primitive:
        return None
    col = _Collector(triple, config)
    for fam in FIXED_FAMILIES:
        if FIXED_N[fam] == cls.n:
            col.offer(fam, cls.n)
    if not col.matches:
        return None
    return Verdict("discrete", _ordered(col.matches), triple=triple,
                   regime=AxisRegime("intersecting_non_orthogonal", BEYOND_INTERVAL),
                   reason=BEYOND_INTERVAL)


BEYOND_INTERVAL = "fixed row listed with gamma >= -beta*beta'/4"


def classify(triple: ParameterTriple, config: Config = DEFAULT_CONFIG) -> Verdict:
    """Decide discreteness of the RP group with parameters ``triple``."""
    regime = axis_regime(triple)
    if not regime.in_scope:
        fixed = _fixed_beyond_interval(triple, config)
        if fixed is not None:
            return fixed
        return Verdict("out_of_scope", reason=regime.reason, triple=triple, regime=regime)
    cls = classify_element(triple.beta, config.eps_rot, config.n_max)
    if cls.kind == "infinite_order_elliptic":
        return Verdict("not_discrete", reason="irrational rotation", triple=triple, regime=regime)
    if not cls.is_elliptic:
        return Verdict("out_of_scope", reason=f"f is {cls}", triple=triple, regime=regime)
    triple = normalize_primitive(triple, config)
    if regime.kind == "disjoint_coplanar":
        return classify_disjoint(triple, config)
    return classify_intersecting(triple, config)


# ---------------------------------------------------------------------------
# enumeration

ALIASES = {"p": "t_u", "u": "t_u", "v": "t_v", "l": "t_v", "ell": "t_v", "k": "t_v",
           "bp": "beta_prime", "r": "m"}

RANGE_KEYS: dict[str, tuple[str, ...]] = {
    "D1": ("n", "t_u", "beta_prime"),
    "D2": ("n", "t_u"),
    "D3": ("t_u",),
    "P1": ("n", "t_u", "t_v"), "P2": ("n", "t_u", "t_v"),
    "P4": ("n", "t_u", "t_v"), "P5": ("n", "t_u", "t_v"),
    "P3": ("m",), "P9": ("m",), "P10": ("m",), "P11": ("m",),
    "P6": ("n", "t_v"),
    "P7": ("n",), "P8": ("n",),
    **{f: () for f in FIXED_FAMILIES},
}

_U_GRID = ("2", "3", "4", "5", "6", "7", "8", "10", "12", "inf", "inf_bar:0.4", "inf_bar:1.1")
DEFAULT_RANGES: dict[str, dict[str, Sequence[Any]]] = {
    "D1": {"n": (3,), "t_u": _U_GRID, "beta_prime": (1.0,)},
    "D2": {"n": (5, 7, 9), "t_u": _U_GRID},
    "D3": {"t_u": _U_GRID},
    "P1": {"n": (4, 6, 8), "t_u": _U_GRID, "t_v": _U_GRID},
    "P2": {"n": (4, 6, 8), "t_u": ("3", "5", "7", "9"), "t_v": _U_GRID},
    "P4": {"n": (3, 5, 7), "t_u": _U_GRID, "t_v": _U_GRID},
    "P5": {"n": (3, 5, 7), "t_u": ("3", "5", "7", "9"), "t_v": _U_GRID},
    "P6": {"n": (7, 9, 11, 13), "t_v": ("2", "3", "5", "inf", "inf_bar:1.5", "inf_bar:2.5",
                                      "inf_bar:3.5")},
    "P3": {"m": tuple(range(5, 16))},
    "P7": {"n": tuple(range(5, 20))},
    "P8": {"n": tuple(range(5, 20))},
    "P9": {"m": tuple(range(7, 20))},
    "P10": {"m": tuple(range(8, 30))},
    "P11": {"m": tuple(range(7, 20))},
    **{f: {} for f in FIXED_FAMILIES},
}


def parse_u(token: Any) -> UPoint:
    """``7`` -> i*pi/7, ``inf`` -> 0, ``inf_bar:0.3`` (or ``inf_bar``) -> d=0.3 (0.5 default)."""
    if isinstance(token, UPoint):
        return token
    if isinstance(token, int) and not isinstance(token, bool):
        return UPoint.angle(token)
    if isinstance(token, tuple) and len(token) == 2:
        return UPoint.from_index(ExtIndex.parse(token[0]), float(token[1]))
    text = str(token).strip().lower()
    if text.startswith("inf_bar"):
        _, _, d = text.partition(":")
        return UPoint.positive(float(d) if d else 0.5)
    idx = ExtIndex.parse(text)
    return UPoint.from_index(idx)


def _normalise_ranges(family: str, ranges: Optional[Mapping[str, Any]]) -> dict[str, list[Any]]:
    allowed = RANGE_KEYS[family]
    merged: dict[str, list[Any]] = {k: list(v) for k, v in DEFAULT_RANGES[family].items()}
    for raw_key, values in (ranges or {}).items():
        key = ALIASES.get(raw_key, raw_key)
        if key not in allowed:
            raise InvalidRange(f"{family} has no index {raw_key!r} (expected one of {allowed})")
        if isinstance(values, (str, int, float)):
            values = [values]
        values = list(values)
        if not values:
            raise InvalidRange(f"empty range for {raw_key!r}")
        merged[key] = values
    return merged


def _sort_key(item: tuple[ParameterTriple, FamilyMatch]) -> tuple:
    triple, fm = item

    def pt(u: Optional[UPoint]) -> tuple:
        if u is None:
            return (-1, 0, 0.0)
        return (t_of(u)._key(), u.d)

    m = fm.m if fm.m is not None else 0
    return (fm.n, m, pt(fm.u), pt(fm.v), triple.beta_prime)


def enumerate_family(family: str, index_ranges: Optional[Mapping[str, Any]] = None,
                     config: Config = DEFAULT_CONFIG) -> list[tuple[ParameterTriple, FamilyMatch]]:
    """Forward-evaluate a row over an index grid.

    Tuples violating the row's side conditions, or whose triple leaves the
    row's axis regime, are skipped.  Output order is deterministic.
    """
    if family not in FAMILIES:
        raise InvalidRange(f"unknown family {family!r}")
    ranges = _normalise_ranges(family, index_ranges)
    try:
        ns = [int(x) for x in ranges.get("n", [FIXED_N.get(family, _default_n(family))])]
        us = [parse_u(x) for x in ranges.get("t_u", [None])] if "t_u" in RANGE_KEYS[family] else [None]
        vs = [parse_u(x) for x in ranges.get("t_v", [None])] if "t_v" in RANGE_KEYS[family] else [None]
        ms = [int(x) for x in ranges.get("m", [None])] if "m" in RANGE_KEYS[family] else [None]
        bps = [float(x) for x in ranges["beta_prime"]] if "beta_prime" in ranges else [None]
    except (TypeError, ValueError) as exc:
        raise InvalidRange(str(exc)) from None
    if any(n < 2 for n in ns):
        raise InvalidRange("n must be >= 2")

    want = "disjoint_coplanar" if family in DISJOINT_FAMILIES else "intersecting_non_orthogonal"
    out: dict[tuple, tuple[ParameterTriple, FamilyMatch]] = {}
    for n in ns:
        for u in us:
            for v in vs:
                for m in ms:
                    t_u = t_of(u) if u is not None else None
                    t_v = t_of(v) if v is not None else None
                    if not constraints_ok(family, n, t_u, t_v, m):
                        continue
                    for bp in bps:
                        try:
                            b, bpv, g = forward(family, n, u, v, m, beta_prime=bp)
                        except (ZeroDivisionError, ValueError):
                            continue
                        if not all(math.isfinite(x) for x in (b, bpv, g)):
                            continue
                        triple = ParameterTriple(b, bpv, g, provenance=_provenance(family, n, u, v, m))
                        if axis_regime(triple).kind != want and family not in FIXED_FAMILIES:
                            continue
                        indices = {k: val for k, val in (("t_u", t_u), ("t_v", t_v)) if val is not None}
                        if m is not None:
                            indices["m"] = ExtIndex.finite(m)
                        fm = FamilyMatch(family, n, indices, 0.0, u, v)
                        out.setdefault((fm.key(), u, v, bpv), (triple, fm))
    return sorted(out.values(), key=_sort_key)


def _default_n(family: str) -> int:
    if family == "P3":
        return 4
    return 3


def _provenance(family: str, n: int, u, v, m) -> tuple[Optional[str], Optional[str], Optional[str]]:
    beta = f"-4sin^2(pi/{n})"
    parts = [f"u={u}" if u is not None else "", f"v={v}" if v is not None else "",
             f"m={m}" if m is not None else ""]
    tag = f"{family}[" + ",".join(p for p in parts if p) + "]"
    return (beta, tag, tag)
