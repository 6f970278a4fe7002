"""Normal forms and exact arithmetic in ``G = Z_m *_{Z_d} Z_n``.

An element is stored as ``r^c`` times an alternating sequence of syllables
``s^e`` (1 <= e < m/d) and ``t^e`` (1 <= e < n/d).  Since ``r = s^(m/d) =
t^(n/d)`` commutes with both generators, every r-power produced while
rewriting can be pushed into the prefix, so two elements are equal exactly
when their stored forms are equal.
"""
from dataclasses import dataclass
from typing import Tuple

from .errors import ParamMismatch
from .presentation import AmalgamParams, RawWord, parse_word

S, T = 0, 1
FACTOR_NAMES = ("s", "t")
_FACTOR_OF = {"s": S, "t": T}


@dataclass(frozen=True)
class NormalWord:
    params: AmalgamParams
    central: int = 0
    syllables: Tuple[Tuple[int, int], ...] = ()

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, k):
        return power(self, k)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"NormalWord({render(self)!r})"

    def is_identity(self):
        return self.central == 0 and not self.syllables


def _check_same(a: NormalWord, b: NormalWord):
    if a.params != b.params:
        raise ParamMismatch(f"elements live in different groups: {a.params} vs {b.params}")


def _absorb(params, central, syllables, factor, exponent):
    """Fold ``factor^exponent`` onto the right end of ``syllables`` in place.

    Returns the updated (unreduced) central power.
    """
    cosets = params.cosets(factor)
    carry, rem = divmod(exponent % params.order(factor), cosets)
    central += carry
    if syllables and syllables[-1][0] == factor:
        carry, rem = divmod(syllables[-1][1] + rem, cosets)
        central += carry
        if rem:
            syllables[-1] = (factor, rem)
        else:
            syllables.pop()
    elif rem:
        syllables.append((factor, rem))
    return central


def identity(params: AmalgamParams) -> NormalWord:
    return NormalWord(params)


def generator(params: AmalgamParams, name: str, exponent: int = 1) -> NormalWord:
    """``s^exponent``, ``t^exponent`` or ``r^exponent`` in normal form."""
    if name == "r":
        return NormalWord(params, exponent % params.d)
    syllables = []
    central = _absorb(params, 0, syllables, _FACTOR_OF[name], exponent)
    return NormalWord(params, central % params.d, tuple(syllables))


def reduce(word: RawWord, params: AmalgamParams) -> NormalWord:
    syllables = []
    central = 0
    for name, exponent in word:
        if name == "r":
            central += exponent
        else:
            central = _absorb(params, central, syllables, _FACTOR_OF[name], exponent)
    return NormalWord(params, central % params.d, tuple(syllables))


def from_text(text: str, params: AmalgamParams) -> NormalWord:
    return reduce(parse_word(text, params), params)


def multiply(a: NormalWord, b: NormalWord) -> NormalWord:
    _check_same(a, b)
    if not b.syllables:
        if not b.central:
            return a
        return NormalWord(a.params, (a.central + b.central) % a.params.d, a.syllables)
    params = a.params
    syllables = list(a.syllables)
    central = a.central + b.central
    for factor, exponent in b.syllables:
        central = _absorb(params, central, syllables, factor, exponent)
    return NormalWord(params, central % params.d, tuple(syllables))


def invert(a: NormalWord) -> NormalWord:
    params = a.params
    # s^-e = r^-1 s^(m/d - e) for a nontrivial coset representative e
    syllables = tuple((f, params.cosets(f) - e) for f, e in reversed(a.syllables))
    central = (-a.central - len(a.syllables)) % params.d
    return NormalWord(params, central, syllables)


def power(a: NormalWord, k: int) -> NormalWord:
    if k < 0:
        a, k = invert(a), -k
    result = identity(a.params)
    base = a
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def conjugate(g: NormalWord, u: NormalWord) -> NormalWord:
    """``u g u^-1``."""
    return multiply(multiply(u, g), invert(u))


def syllable_length(a: NormalWord) -> int:
    return len(a.syllables)


def element_order(a: NormalWord, limit: int = 10_000):
    """Order by repeated multiplication; ``None`` when no power up to ``limit`` is trivial."""
    x = a
    for k in range(1, limit + 1):
        if x.is_identity():
            return k
        x = multiply(x, a)
    return None


def render(a: NormalWord) -> str:
    parts = []
    if a.central:
        parts.append("r" if a.central == 1 else f"r^{a.central}")
    for factor, exponent in a.syllables:
        name = FACTOR_NAMES[factor]
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
    return " ".join(parts) if parts else "1"


def sort_key(a: NormalWord):
    return render(a)
