"""Presentation schemas, the family -> presentation map and generator words in f, g."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .classifier import FamilyMatch
from .config import DEFAULT_CONFIG, Config
from .indices import INF_BAR, ExtIndex
from .words import F, G, Word, commutator

# A word over presentation generators: ((name, exponent), ...)
GenWord = tuple[tuple[str, int], ...]


class UnmappedFamily(ValueError):
    pass


class ParityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Relator:
    word: GenWord
    exponent: Optional[ExtIndex]          # None: the word itself is trivial

    def word_text(self) -> str:
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.word)

    def __str__(self) -> str:
        body = self.word_text()
        if self.exponent is None:
            return body
        if len(self.word) == 1 and self.word[0][1] == 1:
            return f"{body}^{self.exponent}"
        return f"({body})^{self.exponent}"


def _w(text: str) -> GenWord:
    """``"x z^-1 y"`` -> (("x", 1), ("z", -1), ("y", 1))."""
    out = []
    for tok in text.split():
        name, _, exp = tok.partition("^")
        out.append((name, int(exp) if exp else 1))
    return tuple(out)


# relator tags: "sK" takes exponent slot K, a digit string is a fixed
# exponent, "bare" means the word itself is trivial
SCHEMAS: dict[str, tuple[tuple[str, ...], tuple[tuple[str, str], ...]]] = {
    "GT": (("f", "g"), (("f", "s0"), ("g", "s1"), ("f g f^-1 g^-1", "s2"))),
    "PH": (("x", "y", "z"), (
        ("x", "s0"), ("y", "2"), ("z", "2"), ("x z", "2"),
        ("x y x^-1 y^-1", "s1"), ("y x y z", "s2"))),
    "H": (("x", "y", "s"), (
        ("s", "2"), ("x", "s1"), ("y", "s2"), ("x y^-1", "s0"),
        ("s x s y^-1", "s3"), ("s x^-1 y", "2"))),
    "P": (("w", "x", "y", "z"), (
        ("w", "s0"), ("x", "2"), ("y", "2"), ("z", "2"), ("w x", "2"),
        ("w y", "2"), ("y z", "2"), ("z x", "s2"), ("z w", "s1"))),
    "Tet6": (("x", "y", "z"), (
        ("x", "s0"), ("y", "s1"), ("z", "s2"),
        ("y z^-1", "s3"), ("z x^-1", "s4"), ("x y^-1", "s5"))),
    "GTet1": (("x", "y", "z"), (
        ("x", "s0"), ("y", "2"), ("x y", "s1"),
        ("y z y^-1 z^-1", "s2"), ("x z x^-1 z^-1", "bare"))),
    "GTet2": (("x", "y", "z"), (
        ("x", "s0"), ("y", "2"), ("x y", "s1"),
        ("x z^-1 y^-1 z y", "s2"), ("x z x^-1 z^-1", "bare"))),
    "S2": (("x", "L"), (("x", "s0"), ("x L x L^-1", "s1"), ("x L^2 x^-1 L^-2", "s2"))),
    "S3": (("x", "L"), (("x", "s0"), ("x L x L^-1", "s1"), ("x L x L x L^-2", "s2"))),
    "R": (("u", "v"), (("u v", "s0"), ("u v^-1", "s1"), ("u v u^-1 v^-1", "s2"))),
}


def _resolve_templates() -> dict[str, tuple[tuple[str, ...], tuple[tuple[GenWord, object], ...]]]:
    out = {}
    for name, (gens, templates) in SCHEMAS.items():
        resolved = []
        for text, tag in templates:
            if tag == "bare":
                resolved.append((_w(text), None))
            elif tag.startswith("s"):
                resolved.append((_w(text), ("slot", int(tag[1:]))))
            else:
                resolved.append((_w(text), ("fixed", int(tag))))
        out[name] = (gens, tuple(resolved))
    return out


_TEMPLATES = _resolve_templates()
SCHEMA_ARITY = {"GT": 3, "PH": 3, "H": 4, "P": 3, "Tet6": 6, "Tet3": 3,
                "GTet1": 3, "GTet2": 3, "S2": 3, "S3": 3, "R": 3}
SCHEMA_NAMES = tuple(SCHEMA_ARITY)


def _display_name(schema: str) -> str:
    return "Tet" if schema in ("Tet3", "Tet6") else schema


def _exponent_text(schema: str, exps: Sequence[ExtIndex]) -> str:
    s = [str(e) for e in exps]
    if schema in ("GT", "R", "Tet3"):
        return f"{s[0]},{s[1]};{s[2]}"
    if schema == "H":
        return f"{s[0]};{s[1]},{s[2]};{s[3]}"
    if schema == "Tet6":
        return f"{s[0]},{s[1]},{s[2]};{s[3]},{s[4]},{s[5]}"
    return ",".join(s)


@dataclass(frozen=True)
class PresentationInstance:
    schema: str
    exponents: tuple[ExtIndex, ...]
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]
    form: str = "kleinian"                   # "kleinian" | "abstract"

    @property
    def name(self) -> str:
        return f"{_display_name(self.schema)}[{_exponent_text(self.schema, self.exponents)}]"

    def text(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"{self.name} = < {', '.join(self.generators)} | {rels} >"

    def __str__(self) -> str:
        return self.text()

    def expanded_exponents(self) -> tuple[ExtIndex, ...]:
        """Tet[n,m;q] is Tet[2,2,n;2,q,m]; other schemas are returned unchanged."""
        if self.schema == "Tet3":
            n, m, q = self.exponents
            two = ExtIndex.finite(2)
            return (two, two, n, two, q, m)
        return self.exponents


def build_presentation(schema: str, exponents: Sequence[ExtIndex | int | str],
                       form: str = "kleinian") -> PresentationInstance:
    if schema not in SCHEMA_ARITY:
        raise ValueError(f"unknown schema {schema!r}")
    if form not in ("kleinian", "abstract"):
        raise ValueError(f"unknown form {form!r}")
    exps = tuple(ExtIndex.parse(e) for e in exponents)
    if len(exps) != SCHEMA_ARITY[schema]:
        raise ValueError(f"{schema} takes {SCHEMA_ARITY[schema]} exponents, got {len(exps)}")
    base = "Tet6" if schema == "Tet3" else schema
    slots = exps
    if schema == "Tet3":
        n, m, q = exps
        two = ExtIndex.finite(2)
        slots = (two, two, n, two, q, m)
    gens, templates = _TEMPLATES[base]
    relators: list[Relator] = []
    for word, slot in templates:
        if slot is None:
            relators.append(Relator(word, None))
            continue
        kind, value = slot
        e = slots[value] if kind == "slot" else ExtIndex.finite(value)
        if e.is_inf_bar or (e.is_inf and form == "abstract"):
            continue
        relators.append(Relator(word, e))
    return PresentationInstance(schema, exps, gens, tuple(relators), form)


# ---------------------------------------------------------------------------
# family -> presentation

def _half(t: ExtIndex) -> ExtIndex:
    return t.div(2)


def _odd(t: Optional[ExtIndex]) -> bool:
    return t is not None and t.satisfies("odd")


def presentation_schema(match: FamilyMatch, config: Config = DEFAULT_CONFIG
                        ) -> tuple[str, tuple[ExtIndex, ...]]:
    fam, n = match.family, ExtIndex.finite(match.n)
    tu, tv = match.t_u, match.t_v
    two, three, five = ExtIndex.finite(2), ExtIndex.finite(3), ExtIndex.finite(5)
    if fam == "D1":
        if _odd(tu):
            return "Tet3", (n, INF_BAR, tu)
        return "GT", (n, INF_BAR, _half(tu))
    if fam == "D2":
        return "Tet3", (n, tu, three)
    if fam == "D3":
        return "Tet3", (three, tu, five)
    if fam == "P1":
        if _odd(tv):
            return "PH", (n, _half(tu), tv)
        return "S2", (n, _half(tu), _half(tv))
    if fam == "P2":
        if _odd(tv):
            return "P", (n, tu, tv)
        return "GTet1", (n, tu, _half(tv))
    if fam == "P3":
        return "Tet3", (ExtIndex.finite(4), ExtIndex.finite(match.m), three)
    if fam == "P4":
        return "S3", (n, _half(tu), tv)
    if fam == "P5":
        return "GTet2", (n, tu, tv)
    if fam == "P6":
        return "GTet2", (n, three, tv)
    if fam == "P7":
        return "H", (two, three, n, two)
    if fam == "P8":
        return "R", (n, two, two)
    if fam == "P9":
        return "GTet1", (ExtIndex.finite(match.m), three, two)
    if fam == "P10":
        return "Tet6", (two, three, three, two, three, ExtIndex.finite(match.m // 2))
    if fam == "P11":
        m = match.m
        if m % 4 == 2:
            p = m // 2 if config.p11_index_convention == "half" else m
            return "H", (ExtIndex.finite(p), three, three, two)
        return "Tet3", (ExtIndex.finite(4), ExtIndex.finite(m), three)
    if fam in ("P12", "P13", "P15", "P19"):
        return "H", (two, two, three, five)
    if fam == "P14":
        return "Tet3", (ExtIndex.finite(4), five, three)
    if fam == "P16":
        return "Tet3", (three, three, five)
    if fam in ("P17", "P18"):
        return "H", (two, two, five, three)
    raise UnmappedFamily(f"no presentation for family {fam!r}")


def presentation_of(match: FamilyMatch, config: Config = DEFAULT_CONFIG,
                    form: str = "kleinian") -> PresentationInstance:
    schema, exps = presentation_schema(match, config)
    return build_presentation(schema, exps, form)


# ---------------------------------------------------------------------------
# generator words

@dataclass(frozen=True)
class GeneratorWordTable:
    words: Mapping[str, Word]
    missing: tuple[str, ...] = ()
    aux: Mapping[str, Word] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, w in self.words.items():
            if not w:
                raise ValueError(f"generator {name} mapped to the empty word")

    @property
    def complete(self) -> bool:
        return not self.missing

    @property
    def coverage(self) -> str:
        return "total" if self.complete else "partial"

    def as_dict(self) -> dict[str, object]:
        return {
            "coverage": self.coverage,
            "words": {k: str(v) for k, v in sorted(self.words.items())},
            "missing": list(self.missing),
            "aux": {k: str(v) for k, v in sorted(self.aux.items())},
        }


K = commutator(F, G)                     # f g f^-1 g^-1
FG = F * G * F * G.inverse()             # f g f g^-1
HH = G * F * G.inverse() * F             # h = g f g^-1 f


def _need(cond: bool, what: str) -> None:
    if not cond:
        raise ParityMismatch(what)


def _h3(n: int) -> Word:
    k = (n - 1) // 2
    return G * F * G.inverse() * F ** (-k) * G.inverse() * F * G * F ** (-k)


def _odd_e(a: Word, k: int) -> Word:
    return a.inverse() * (a * a.swap_inverse()) ** (-((k - 1) // 2))


def _sym_mod(k: int, n: int) -> int:
    k %= n
    return k - n if k > n // 2 else k


def _table(gens: Sequence[str], words: Mapping[str, Word], aux: Optional[Mapping[str, Word]] = None
           ) -> GeneratorWordTable:
    present = {g: words[g] for g in gens if g in words}
    missing = tuple(g for g in gens if g not in words)
    return GeneratorWordTable(present, missing, dict(aux or {}))


def _finite(t: Optional[ExtIndex]) -> Optional[int]:
    return t.k if t is not None and t.is_finite else None


def _p11_tet3(m: int) -> tuple[dict[str, Word], dict[str, Word]]:
    w = _h3(3)
    a = (m + 1) // 2
    h2 = w ** _sym_mod(a, m)
    h2bar = w ** _sym_mod(a * a, m)
    t1 = HH.inverse() * h2
    e1 = t1 ** -2 * h2bar.inverse() * G * t1
    words = {"x": e1, "y": e1 * h2bar, "z": e1 * t1.inverse()}
    return words, {"h2": h2, "h2bar": h2bar, "t1": t1}


def _h3bar_pair(n: int, order: int) -> tuple[Word, Word, Word]:
    """(h3bar, b, a) with h3bar = h3(n)^k, 3k = 1 mod ``order``."""
    k = _sym_mod(pow(3, -1, order), order)
    h3bar = _h3(n) ** k
    b = HH.inverse() * h3bar
    a = h3bar.inverse() * b.inverse()
    return h3bar, b, a


def generator_words(match: FamilyMatch, config: Config = DEFAULT_CONFIG) -> GeneratorWordTable:
    """Words in f, g for the generators of ``presentation_of(match)``."""
    schema, _ = presentation_schema(match, config)
    gens = _TEMPLATES["Tet6" if schema == "Tet3" else schema][0]
    fam, n = match.family, match.n
    tu, tv = match.t_u, match.t_v
    words: dict[str, Word] = {}
    aux: dict[str, Word] = {}

    if fam == "D1":
        if schema == "GT":
            words = {"f": F, "g": G}
        else:
            p = tu.k
            e = K ** ((p - 1) // 2) * F * G
            words, aux = {"x": G * e, "y": e, "z": F}, {"e": e}
    elif fam == "D2":
        _need(n % 2 == 1, "D2 needs odd n")
        h = K ** (-((n - 1) // 2))
        e = F.inverse() * h * G
        xe = h ** (-((n - 1) // 2))
        s = xe.inverse() * F
        words = {"x": s.inverse() * F.inverse(), "y": F * e, "z": F}
        aux = {"h": h, "e": e}
    elif fam == "D3":
        h = K ** 3
        xe = h ** 3
        e = F.inverse() * h * G
        s = (F.inverse() * xe) ** 2
        words = {"x": s.inverse() * F.inverse(), "y": F * e, "z": F}
        aux = {"h": h, "e": e}
    elif fam == "P1":
        _need(n % 2 == 0, "P1 needs even n")
        fh = F ** (n // 2)
        if schema == "PH":
            e = _odd_e(fh * G.inverse() * F * G, tv.k)
            words, aux = {"x": F, "y": G * e, "z": fh * e}, {"e": e}
        else:
            words = {"x": F, "L": G * fh}
    elif fam == "P2":
        _need(n % 2 == 0 and _finite(tu) is not None and tu.k % 2 == 1, "P2 needs even n, odd t(u)")
        m = tu.k
        fh = F ** (n // 2)
        z0 = F.inverse() * FG ** (-((m - 1) // 2))
        aux = {"z0": z0}
        if schema == "P":
            e = _odd_e(z0 * fh, tv.k)
            words = {"w": F, "x": fh * e, "y": G * e * z0, "z": z0}
            aux["e"] = e
        else:
            words = {"x": F, "y": z0, "z": z0 * G * fh}
    elif fam == "P4":
        _need(n % 2 == 1, "P4 needs odd n")
        words = {"x": F, "L": F ** ((n - 1) // 2) * G.inverse()}
    elif fam == "P5":
        _need(n % 2 == 1 and _finite(tu) is not None and tu.k % 2 == 1, "P5 needs odd n, odd t(u)")
        v = FG ** ((tu.k - 1) // 2) * F
        u = v * G * F ** (-((n - 1) // 2))
        words, aux = {"x": F.inverse(), "y": v, "z": u.inverse()}, {"v": v, "u": u}
    elif fam == "P6":
        words = {"x": F.inverse()}
    elif fam == "P7":
        h3bar, b, a = _h3bar_pair(n, n)
        words, aux = {"x": a, "y": F, "s": F.inverse() * a}, {"h3bar": h3bar}
    elif fam == "P8":
        k = _sym_mod(pow(3, -1, n), n)
        h3bar = _h3(n) ** k
        v = F ** ((n - 1) // 2) * G.inverse()
        words, aux = {"u": v.inverse() * h3bar.inverse(), "v": v}, {"h3bar": h3bar}
    elif fam == "P10":
        r = match.m // 2
        h3bar, b, a = _h3bar_pair(3, r)
        words, aux = {"x": a, "y": b.inverse(), "z": F}, {"h3bar": h3bar}
    elif fam in ("P11", "P14"):
        m = match.m if fam == "P11" else 5
        if schema == "H":
            r = m // 2
            h2 = _h3(3) ** _sym_mod((r + 1) // 2, r)
            t1 = HH.inverse() * h2
            u = t1.inverse() * h2.inverse()
            words = {"x": t1.inverse(), "y": u, "s": u * G * t1}
            aux = {"h2": h2, "t1": t1}
        else:
            words, aux = _p11_tet3(m)
    elif fam == "P16":
        h3bar, b, a = _h3bar_pair(5, 5)
        bi = b.inverse()
        words = {"x": F * bi, "y": a * bi, "z": F ** 2 * bi}
        aux = {"h3bar": h3bar}
    return _table(gens, words, aux)
