"""The rational group ring QG and matrices over it.

Elements are finitely supported maps from :class:`NormalWord` to
:class:`~fractions.Fraction`; zero coefficients are never stored, so
equality is plain dictionary equality.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import IdentityFailure, ParamMismatch
from .normal_form import NormalWord, generator, identity, invert, multiply, render
from .presentation import AmalgamParams


class GroupRingElement:
    __slots__ = ("params", "_coeffs", "_hash")

    def __init__(self, params: AmalgamParams, coeffs=None):
        self.params = params
        clean = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for word, c in items:
                if word.params != params:
                    raise ParamMismatch(f"{word!r} does not belong to {params}")
                c = clean.get(word, 0) + Fraction(c)
                if c:
                    clean[word] = c
                else:
                    clean.pop(word, None)
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, params, coeffs):
        obj = cls.__new__(cls)
        obj.params = params
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def zero(cls, params):
        return cls._trusted(params, {})

    @classmethod
    def one(cls, params):
        return cls.from_word(identity(params))

    @classmethod
    def from_word(cls, word: NormalWord, coeff=1):
        c = Fraction(coeff)
        return cls._trusted(word.params, {word: c} if c else {})

    @classmethod
    def scalar(cls, params, value):
        return cls.from_word(identity(params), value)

    # mapping protocol
    def __getitem__(self, word):
        return self._coeffs.get(word, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def support(self):
        return list(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other):
        if self.params != other.params:
            raise ParamMismatch(f"group ring elements over {self.params} and {other.params}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, NormalWord):
            return GroupRingElement.from_word(other)
        if isinstance(other, (int, Fraction)):
            return GroupRingElement.scalar(self.params, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for w, c in other._coeffs.items():
            c = out.get(w, 0) + c
            if c:
                out[w] = c
            else:
                out.pop(w, None)
        return GroupRingElement._trusted(self.params, out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._trusted(self.params, {w: -c for w, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return GroupRingElement.zero(self.params)
        return GroupRingElement._trusted(
            self.params, {w: c * factor for w, c in self._coeffs.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[NormalWord, Fraction] = {}
        for g, x in self._coeffs.items():
            for h, y in other._coeffs.items():
                gh = multiply(g, h)
                out[gh] = out.get(gh, 0) + x * y
        return GroupRingElement._trusted(self.params, {w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElement.scalar(self.params, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.params == other.params and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._coeffs.items())))
        return self._hash

    def star(self):
        return GroupRingElement._trusted(
            self.params, {invert(w): c for w, c in self._coeffs.items()}
        )

    def augmentation(self) -> Fraction:
        return sum(self._coeffs.values(), Fraction(0))

    def sorted_terms(self) -> List[Tuple[NormalWord, Fraction]]:
        return sorted(self._coeffs.items(), key=lambda wc: render(wc[0]))

    def to_json(self):
        return [
            {"word": render(w), "num": c.numerator, "den": c.denominator}
            for w, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, params):
        from .normal_form import from_text

        return cls(params, [(from_text(t["word"], params), Fraction(t["num"], t["den"])) for t in data])

    def __str__(self):
        return render_element(self)

    def __repr__(self):
        return f"GroupRingElement({render_element(self)!r})"


def render_element(a: GroupRingElement) -> str:
    terms = a.sorted_terms()
    if not terms:
        return "0"
    out = []
    for word, c in terms:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        text = render(word)
        if text == "1":
            body = str(c)
        elif c == 1:
            body = text
        else:
            body = f"{c} {text}"
        out.append((sign, body))
    first_sign, first = out[0]
    pieces = [("-" if first_sign == "-" else "") + first]
    pieces += [f"{sign} {body}" for sign, body in out[1:]]
    return " ".join(pieces)


def element(params, terms: Iterable) -> GroupRingElement:
    """Build from ``(word_or_text, coefficient)`` pairs."""
    from .normal_form import from_text

    pairs = []
    for w, c in terms:
        if isinstance(w, str):
            w = from_text(w, params)
        pairs.append((w, c))
    return GroupRingElement(params, pairs)


def power_sum(params, name: str, exponents: Iterable[int], coeff=1) -> GroupRingElement:
    """``coeff * sum(x^e for e in exponents)`` for a generator name ``x``."""
    return GroupRingElement(params, [(generator(params, name, e), coeff) for e in exponents])


# named elements

def make_p(params):
    return power_sum(params, "s", range(params.m), Fraction(1, params.m))


def make_q(params):
    return power_sum(params, "t", range(params.n), Fraction(1, params.n))


def make_h(params):
    return power_sum(params, "r", range(params.d), Fraction(1, params.d))


def make_f(params):
    """``1 + s + ... + s^(m/d - 1)``."""
    return power_sum(params, "s", range(params.s_cosets))


def make_g(params):
    return power_sum(params, "t", range(params.t_cosets))


def _telescope(params, name, powers, weight):
    """``-weight * sum_j (x + ... + x^j)`` over ``j`` in ``powers``.

    Uses ``1 - x^j = (1 - x^-1) * -(x + ... + x^j)``.
    """
    out = {}
    for j in powers:
        for u in range(1, j + 1):
            out[u] = out.get(u, 0) + 1
    return GroupRingElement(
        params, [(generator(params, name, u), -weight * c) for u, c in out.items()]
    )


def _require_factorization(label, target, left, factor):
    """Check ``target == factor*left == left*factor``; raise otherwise."""
    if factor * left != target or left * factor != target:
        raise IdentityFailure(f"{label} does not satisfy its defining factorization")
    return left


def one_minus_inverse(params, name):
    one = GroupRingElement.one(params)
    return one - GroupRingElement.from_word(generator(params, name, -1))


def make_k(params):
    """Element with ``1 - h = k (1 - s^-1) = (1 - s^-1) k``; zero when d = 1."""
    if params.d == 1:
        return GroupRingElement.zero(params)
    step = params.s_cosets
    k = _telescope(params, "s", [step * i for i in range(1, params.d)], Fraction(1, params.d))
    one = GroupRingElement.one(params)
    return _require_factorization("k", one - make_h(params), k, one_minus_inverse(params, "s"))


def make_l(params):
    if params.d == 1:
        return GroupRingElement.zero(params)
    step = params.t_cosets
    l = _telescope(params, "t", [step * i for i in range(1, params.d)], Fraction(1, params.d))
    one = GroupRingElement.one(params)
    return _require_factorization("l", one - make_h(params), l, one_minus_inverse(params, "t"))


def make_k1(params):
    """Element with ``1 - p = (1 - s^-1) k1 = k1 (1 - s^-1)``."""
    k1 = _telescope(params, "s", range(1, params.m), Fraction(1, params.m))
    one = GroupRingElement.one(params)
    return _require_factorization("k1", one - make_p(params), k1, one_minus_inverse(params, "s"))


def make_l1(params):
    l1 = _telescope(params, "t", range(1, params.n), Fraction(1, params.n))
    one = GroupRingElement.one(params)
    return _require_factorization("l1", one - make_q(params), l1, one_minus_inverse(params, "t"))


def symbolic_identities(params) -> List[Tuple[str, GroupRingElement, GroupRingElement]]:
    """Every exact ring identity the kernel computation relies on, as (name, lhs, rhs)."""
    one = GroupRingElement.one(params)
    s = GroupRingElement.from_word(generator(params, "s"))
    t = GroupRingElement.from_word(generator(params, "t"))
    r = GroupRingElement.from_word(generator(params, "r"))
    p, q, h = make_p(params), make_q(params), make_h(params)
    f, g = make_f(params), make_g(params)
    k, l = make_k(params), make_l(params)
    k1, l1 = make_k1(params), make_l1(params)
    a, b, d = params.s_cosets, params.t_cosets, params.d
    dsi = one - s.star()
    dti = one - t.star()
    return [
        ("p^2 = p", p * p, p),
        ("q^2 = q", q * q, q),
        ("h^2 = h", h * h, h),
        ("p* = p", p.star(), p),
        ("q* = q", q.star(), q),
        ("h* = h", h.star(), h),
        ("ps = p", p * s, p),
        ("sp = p", s * p, p),
        ("qt = q", q * t, q),
        ("tq = q", t * q, q),
        ("ph = p", p * h, p),
        ("hp = p", h * p, p),
        ("qh = q", q * h, q),
        ("hq = q", h * q, q),
        ("p = (d/m) h f(s)", p, (h * f).scale(Fraction(d, params.m))),
        ("q = (d/n) h g(t)", q, (h * g).scale(Fraction(d, params.n))),
        ("f(s)(1-s) = 1-r", f * (one - s), one - r),
        ("g(t)(1-t) = 1-r", g * (one - t), one - r),
        ("1-h = k(1-s^-1)", k * dsi, one - h),
        ("1-h = (1-s^-1)k", dsi * k, one - h),
        ("1-h = l(1-t^-1)", l * dti, one - h),
        ("1-h = (1-t^-1)l", dti * l, one - h),
        ("p g(t) = (n/d) p q", p * g, (p * q).scale(b)),
        ("q f(s) = (m/d) q p", q * f, (q * p).scale(a)),
        ("f(s)(1-p) = (1-h)f(s)", f * (one - p), (one - h) * f),
        ("g(t)(1-q) = (1-h)g(t)", g * (one - q), (one - h) * g),
        ("1-p = (1-s^-1)k1", dsi * k1, one - p),
        ("1-p = k1(1-s^-1)", k1 * dsi, one - p),
        ("1-q = (1-t^-1)l1", dti * l1, one - q),
        ("1-q = l1(1-t^-1)", l1 * dti, one - q),
    ]


class GRMatrix:
    """Dense rectangular matrix of group ring elements."""

    def __init__(self, params, entries: Sequence[Sequence[GroupRingElement]]):
        rows = [tuple(row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("GRMatrix needs at least one row and column")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged GRMatrix rows")
            for x in row:
                if x.params != params:
                    raise ParamMismatch(f"entry over {x.params} in matrix over {params}")
        self.params = params
        self.entries = tuple(rows)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def diag(cls, params, items):
        items = list(items)
        zero = GroupRingElement.zero(params)
        return cls(params, [[items[i] if i == j else zero for j in range(len(items))]
                            for i in range(len(items))])

    def _check(self, other):
        if self.params != other.params:
            raise ParamMismatch(f"matrices over {self.params} and {other.params}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return GRMatrix(self.params, [[x + y for x, y in zip(r1, r2)]
                                      for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return GRMatrix(self.params, [[-x for x in row] for row in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GRMatrix(self.params, [[x.scale(other) for x in row] for row in self.entries])
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = GroupRingElement.zero(self.params)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    x, y = self.entries[i][k], other.entries[k][j]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return GRMatrix(self.params, out)

    def transpose(self):
        return GRMatrix(self.params, [list(col) for col in zip(*self.entries)])

    def star(self):
        """Conjugate transpose: entrywise ``star`` of the transpose."""
        return GRMatrix(self.params, [[x.star() for x in col] for col in zip(*self.entries)])

    def __eq__(self, other):
        if not isinstance(other, GRMatrix):
            return NotImplemented
        return self.params == other.params and self.entries == other.entries

    def __hash__(self):
        return hash((self.params, self.entries))

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]

    def to_text(self):
        return [[render_element(x) for x in row] for row in self.entries]

    def __repr__(self):
        return f"GRMatrix({self.to_text()!r})"
