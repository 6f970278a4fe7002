"""Group parameters and the textual word syntax.

Words are written as whitespace-separated (or juxtaposed) terms::

    word := term*
    term := ("s" | "t" | "r") ("^" signed-integer)?

``r`` is shorthand for ``s^(m/d)``.  The lone token ``1`` denotes the
identity and is what :func:`amalgam.normal_form.render` prints for it.
"""
from dataclasses import dataclass
from typing import Tuple

from .errors import DivisibilityError, RangeError, WordSyntaxError

GENERATORS = ("s", "t")


@dataclass(frozen=True)
class AmalgamParams:
    """The triple (m, n, d) fixing ``Z_m *_{Z_d} Z_n``.

    Construct through :func:`parse_params` to get validation.
    """

    m: int
    n: int
    d: int

    @property
    def s_cosets(self) -> int:
        """Number of cosets of the amalgamated subgroup in ``<s>`` (m/d)."""
        return self.m // self.d

    @property
    def t_cosets(self) -> int:
        return self.n // self.d

    @property
    def degenerate(self) -> bool:
        """True for d = 1, the plain free product."""
        return self.d == 1

    def order(self, factor: int) -> int:
        return self.m if factor == 0 else self.n

    def cosets(self, factor: int) -> int:
        return self.s_cosets if factor == 0 else self.t_cosets

    def as_tuple(self):
        return (self.m, self.n, self.d)

    def __str__(self):
        return f"(m={self.m}, n={self.n}, d={self.d})"


def parse_params(m: int, n: int, d: int) -> AmalgamParams:
    for name, value in (("m", m), ("n", n), ("d", d)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise RangeError(f"{name} must be an integer, got {value!r}")
        if value < 1:
            raise RangeError(f"{name} must be positive, got {value}")
    if m < 2:
        raise RangeError(f"m must be at least 2, got {m}")
    if n < 3:
        raise RangeError(f"n must be at least 3, got {n}")
    if m % d or n % d:
        raise DivisibilityError(f"d={d} must divide both m={m} and n={n}")
    if d != 1 and (d >= m or d >= n):
        raise RangeError(
            f"d={d} must be a proper divisor of m={m} and n={n} (or d=1)"
        )
    return AmalgamParams(m, n, d)


@dataclass(frozen=True)
class RawWord:
    """Unreduced letter sequence of ``(generator, exponent)`` pairs."""

    letters: Tuple[Tuple[str, int], ...] = ()

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)


def _offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_word(text: str, params: AmalgamParams = None) -> RawWord:
    """Tokenize ``text`` into a :class:`RawWord`.

    ``r`` needs ``params`` for its expansion; zero exponents are dropped.
    """
    letters = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "1":
            # identity token; must stand alone as a term
            i += 1
            if i < size and not text[i].isspace():
                raise WordSyntaxError(f"unexpected {text[i]!r}", _offset(text, i))
            continue
        if ch not in "str":
            raise WordSyntaxError(f"unexpected {ch!r}", _offset(text, i))
        i += 1
        exponent = 1
        if i < size and text[i] == "^":
            i += 1
            start = i
            if i < size and text[i] in "+-":
                i += 1
            digits = i
            while i < size and text[i].isdigit():
                i += 1
            if i == digits:
                bad = i if i < size else size
                raise WordSyntaxError("expected an integer exponent", _offset(text, bad))
            exponent = int(text[start:i])
        if ch == "r":
            if params is None:
                raise WordSyntaxError("'r' requires group parameters", _offset(text, i - 1))
            ch, exponent = "s", exponent * params.s_cosets
        if exponent:
            letters.append((ch, exponent))
    return RawWord(tuple(letters))


def render_raw(word: RawWord) -> str:
    if not word.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word.letters)
