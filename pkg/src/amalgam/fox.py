"""Fox derivatives and the first Laplacian of the presentation complex.

The presentation is ``<s, t | s^m, t^n, s^(-m/d) t^(n/d)>``.  Differentials
follow the cochain convention: ``d0`` is 2x1 and ``d1`` is 3x2, with the
third row rescaled by the central unit ``s^(m/d)`` so that it reads
``(-f(s), g(t))``.
"""
from dataclasses import dataclass
from typing import Tuple

from .group_ring import GRMatrix, GroupRingElement, make_f, make_g, make_p, make_q
from .normal_form import generator, identity, multiply
from .presentation import AmalgamParams

_LETTER = {"s": 0, "t": 1}


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in the free group on s, t."""

    letters: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        for i, (g, e) in enumerate(self.letters):
            if g not in _LETTER or e not in (1, -1):
                raise ValueError(f"bad free-group letter {(g, e)!r}")
            if i and self.letters[i - 1] == (g, -e):
                raise ValueError("FreeWord must be freely reduced")

    @classmethod
    def reduced(cls, letters):
        out = []
        for g, e in letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return cls(tuple(out))

    @classmethod
    def from_powers(cls, powers):
        """``[("s", -2), ("t", 3)]`` -> ``s^-1 s^-1 t t t``."""
        letters = []
        for g, e in powers:
            sign = 1 if e > 0 else -1
            letters.extend([(g, sign)] * abs(e))
        return cls.reduced(letters)

    def __mul__(self, other):
        return FreeWord.reduced(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def image(self, params):
        """Image in ``G`` under the quotient map."""
        x = identity(params)
        for g, e in self.letters:
            x = multiply(x, generator(params, g, e))
        return x

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)


def fox_derivative(word: FreeWord, gen: str, params: AmalgamParams) -> GroupRingElement:
    """``d word / d gen`` projected to QG.

    Expanding the product rule letter by letter: a letter ``gen`` after
    prefix ``u`` contributes ``+u``, a letter ``gen^-1`` contributes
    ``-u gen^-1``.
    """
    coeffs = {}
    prefix = identity(params)
    for g, e in word.letters:
        step = generator(params, g, e)
        if g == gen:
            if e == 1:
                coeffs[prefix] = coeffs.get(prefix, 0) + 1
                prefix = multiply(prefix, step)
            else:
                prefix = multiply(prefix, step)
                coeffs[prefix] = coeffs.get(prefix, 0) - 1
        else:
            prefix = multiply(prefix, step)
    return GroupRingElement(params, coeffs)


def relators(params):
    a, b = params.s_cosets, params.t_cosets
    return (
        FreeWord.from_powers([("s", params.m)]),
        FreeWord.from_powers([("t", params.n)]),
        FreeWord.from_powers([("s", -a), ("t", b)]),
    )


def fox_jacobian(params) -> GRMatrix:
    """Raw 3x2 matrix of Fox derivatives, one row per relator."""
    return GRMatrix(params, [[fox_derivative(w, g, params) for g in ("s", "t")]
                             for w in relators(params)])


def build_delta0(params) -> GRMatrix:
    one = GroupRingElement.one(params)
    return GRMatrix(params, [[one - GroupRingElement.from_word(generator(params, g))
                              for g in ("s", "t")]])


def build_d0(params) -> GRMatrix:
    return build_delta0(params).transpose()


def build_d1(params) -> GRMatrix:
    raw = fox_jacobian(params)
    # drop the central unit s^(-m/d) carried by the third relator
    unit = GroupRingElement.from_word(generator(params, "s", params.s_cosets))
    rows = [list(raw.entries[0]), list(raw.entries[1]), [unit * x for x in raw.entries[2]]]
    return GRMatrix(params, rows)


def build_delta1(params) -> GRMatrix:
    return build_d1(params).transpose()


def build_laplacian(params) -> GRMatrix:
    d0, d1 = build_d0(params), build_d1(params)
    return d0 * d0.star() + d1.star() * d1


def expanded_laplacian(params) -> GRMatrix:
    """Laplacian written out as rank-one block + diag(m^2 p, n^2 q) + rank-one block.

    Coded straight from the closed form, independently of the Fox calculus.
    """
    one = GroupRingElement.one(params)
    s = GroupRingElement.from_word(generator(params, "s"))
    t = GroupRingElement.from_word(generator(params, "t"))
    edge = [one - s, one - t]
    rel = [-make_f(params), make_g(params)]
    diag = [make_p(params).scale(params.m ** 2), make_q(params).scale(params.n ** 2)]
    entries = []
    for i in range(2):
        row = []
        for j in range(2):
            x = edge[i] * edge[j].star() + rel[i].star() * rel[j]
            if i == j:
                x = x + diag[i]
            row.append(x)
        entries.append(row)
    return GRMatrix(params, entries)
