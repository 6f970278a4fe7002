"""Conjugacy in ``Z_m *_{Z_d} Z_n`` and delocalized traces.

Both factors are abelian and the amalgamated subgroup ``<r>`` is central.
After cyclic reduction an element is one of

* a central power ``r^c`` (its own class),
* a single syllable ``r^c x^e`` lying in one factor (its own class, since
  conjugating inside an abelian factor does nothing and it is not in ``<r>``),
* an alternating word of even length, conjugate exactly to its cyclic
  rotations (conjugation by the central subgroup being trivial).

The canonical key below packages this; the bounded-ball brute-force oracle
in the test suite checks it.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParamMismatch
from .normal_form import S, T, NormalWord, generator, identity, multiply, render

IDENTITY, CENTRAL, FACTOR_S, FACTOR_T, GENERIC = (
    "Identity", "CentralTorsion", "FactorTorsionS", "FactorTorsionT", "Generic")

SUBGROUPS = ("Zd", "Zm", "Zn")


def cyclically_reduce(a: NormalWord) -> NormalWord:
    """Conjugate of ``a`` whose first and last syllables lie in different factors."""
    params = a.params
    central = a.central
    syllables = list(a.syllables)
    while len(syllables) >= 2 and syllables[0][0] == syllables[-1][0]:
        factor, last = syllables.pop()
        first = syllables[0][1]
        # conjugating by the last syllable moves it to the front
        carry, rem = divmod(first + last, params.cosets(factor))
        central += carry
        if rem:
            syllables[0] = (factor, rem)
        else:
            syllables.pop(0)
    return NormalWord(params, central % params.d, tuple(syllables))


def conjugacy_key(a: NormalWord):
    """Hashable invariant: equal keys iff conjugate."""
    c = cyclically_reduce(a)
    if len(c.syllables) <= 1:
        return (c.central, c.syllables)
    syl = c.syllables
    rotation = min(syl[i:] + syl[:i] for i in range(len(syl)))
    return (c.central, rotation)


def are_conjugate(a: NormalWord, b: NormalWord) -> bool:
    if a.params != b.params:
        raise ParamMismatch(f"elements of different groups: {a.params} vs {b.params}")
    ca, cb = cyclically_reduce(a), cyclically_reduce(b)
    if ca.central != cb.central or len(ca.syllables) != len(cb.syllables):
        return False
    if len(ca.syllables) <= 1:
        return ca == cb
    doubled = ca.syllables + ca.syllables
    k = len(cb.syllables)
    return any(doubled[i:i + k] == cb.syllables for i in range(k))


def classify(a: NormalWord) -> str:
    c = cyclically_reduce(a)
    if not c.syllables:
        return IDENTITY if c.central == 0 else CENTRAL
    if len(c.syllables) == 1:
        return FACTOR_S if c.syllables[0][0] == S else FACTOR_T
    return GENERIC


@dataclass(frozen=True)
class ClassDescriptor:
    representative: NormalWord
    kind: str

    @classmethod
    def of(cls, g: NormalWord):
        return cls(g, classify(g))

    @property
    def torsion(self):
        return self.kind != GENERIC


def subgroup_elements(params, subgroup: str):
    if subgroup == "Zd":
        return [generator(params, "r", j) for j in range(params.d)]
    if subgroup == "Zm":
        return [generator(params, "s", j) for j in range(params.m)]
    if subgroup == "Zn":
        return [generator(params, "t", j) for j in range(params.n)]
    raise ValueError(f"unknown subgroup {subgroup!r}; expected one of {SUBGROUPS}")


def class_intersection_count(g: NormalWord, subgroup: str) -> int:
    """``|<g> ∩ H|`` for H the cyclic subgroup generated by r, s or t."""
    return sum(1 for x in subgroup_elements(g.params, subgroup) if are_conjugate(x, g))


def delocalized_trace(a, g: NormalWord) -> Fraction:
    """Sum of the coefficients of ``a`` over the conjugacy class of ``g``.

    Accepts a group ring element or a square matrix of them (summing the
    diagonal).
    """
    from .group_ring import GRMatrix

    if isinstance(a, GRMatrix):
        if a.rows != a.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((delocalized_trace(a[i, i], g) for i in range(a.rows)), Fraction(0))
    if a.params != g.params:
        raise ParamMismatch(f"element over {a.params}, class in {g.params}")
    key = conjugacy_key(g)
    return sum((c for w, c in a.items() if conjugacy_key(w) == key), Fraction(0))


# brute force

LETTERS = (("s", 1), ("s", -1), ("t", 1), ("t", -1))


def ball(params, radius: int):
    """Distinct elements given by words of letter-length <= radius over s^±1, t^±1."""
    steps = [generator(params, g, e) for g, e in LETTERS]
    seen = {identity(params)}
    frontier = [identity(params)]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for step in steps:
                y = multiply(x, step)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda w: (len(w.syllables), render(w)))


def brute_force_class(g: NormalWord, conjugators):
    """``{u g u^-1 : u in conjugators}``."""
    from .normal_form import invert

    return {multiply(multiply(u, g), invert(u)) for u in conjugators}


def brute_force_conjugate(a: NormalWord, b: NormalWord, radius: int = 8) -> bool:
    return b in brute_force_class(a, ball(a.params, radius))


def all_pairs(elements):
    return itertools.product(elements, repeat=2)
