"""Finite permutation quotients of G and the finite-dimensional checks.

A :class:`QuotientRep` sends ``s`` and ``t`` to permutations of
``{0, ..., N-1}`` (``i -> s[i]``) satisfying the defining relations.  Group
ring elements become exact rational ``N x N`` matrices, on which kernel and
rank statements are verified by exact elimination.

For a finite quotient the constant functions on each orbit are harmonic
0-cochains, which do not exist in ``l2(G)``; every identity that loses a
term because ``G`` is infinite picks up the joint fixed space here.
"""
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, Tuple

from .errors import MalformedPermutation, ParamMismatch, RelationViolation
from .fox import build_laplacian
from .group_ring import (GRMatrix, GroupRingElement, make_f, make_g, make_h, make_k, make_k1,
                         make_l, make_l1, make_p, make_q)
from .linalg import RationalMatrix, column_basis, nullspace, nullspace_dim, rank
from .normal_form import NormalWord, generator
from .presentation import AmalgamParams, parse_params


def _compose(p, q):
    """``p after q``."""
    return tuple(p[i] for i in q)


def _perm_power(p, k):
    result = tuple(range(len(p)))
    base = p
    while k:
        if k & 1:
            result = _compose(base, result)
        base = _compose(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class QuotientRep:
    degree: int
    image_s: Tuple[int, ...]
    image_t: Tuple[int, ...]
    params: AmalgamParams
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        for label, perm in (("s", self.image_s), ("t", self.image_t)):
            if len(perm) != self.degree or sorted(perm) != list(range(self.degree)):
                raise MalformedPermutation(
                    f"image of {label} is not a permutation of 0..{self.degree - 1}")
        ident = tuple(range(self.degree))
        p = self.params
        if _perm_power(self.image_s, p.m) != ident:
            raise RelationViolation(f"s^{p.m} = 1")
        if _perm_power(self.image_t, p.n) != ident:
            raise RelationViolation(f"t^{p.n} = 1")
        if _perm_power(self.image_s, p.s_cosets) != _perm_power(self.image_t, p.t_cosets):
            raise RelationViolation(f"s^{p.s_cosets} = t^{p.t_cosets}")

    def to_json(self):
        return {"degree": self.degree, "s": list(self.image_s), "t": list(self.image_t)}

    def perm_of(self, g: NormalWord):
        return _word_perm(self, g)

    def relabel(self, sigma):
        """Conjugate by the point relabelling ``i -> sigma[i]``."""
        inv = [0] * self.degree
        for i, j in enumerate(sigma):
            inv[j] = i
        s = tuple(sigma[self.image_s[inv[j]]] for j in range(self.degree))
        t = tuple(sigma[self.image_t[inv[j]]] for j in range(self.degree))
        return QuotientRep(self.degree, s, t, self.params, self.name + "~")


@lru_cache(maxsize=65536)
def _word_perm(rep: QuotientRep, g: NormalWord):
    if g.params != rep.params:
        raise ParamMismatch(f"element of {g.params} applied to a quotient of {rep.params}")
    perm = tuple(range(rep.degree))
    if g.central:
        perm = _perm_power(_perm_power(rep.image_s, rep.params.s_cosets), g.central)
    for factor, e in g.syllables:
        perm = _compose(perm, _perm_power(rep.image_s if factor == 0 else rep.image_t, e))
    return perm


def load_rep(doc, params: AmalgamParams = None, name="custom") -> QuotientRep:
    """Validate a quotient document ``{"degree": N, "s": [...], "t": [...]}``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise MalformedPermutation("quotient document must be a JSON object")
    if params is None:
        if "params" not in doc:
            raise ParamMismatch("group parameters missing (pass --m/--n/--d or a 'params' key)")
        pp = doc["params"]
        params = parse_params(pp["m"], pp["n"], pp["d"])
    try:
        degree = int(doc["degree"])
        s = tuple(int(x) for x in doc["s"])
        t = tuple(int(x) for x in doc["t"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPermutation(f"quotient document needs degree, s, t: {exc}") from None
    if degree < 1:
        raise MalformedPermutation("degree must be positive")
    return QuotientRep(degree, s, t, params, doc.get("name", name))


# built-in quotients

_S = (0, -1, 1, 0)
_T = (0, -1, 1, 1)


def _matmul_mod(x, y, N):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)


def _regular_rep(gens, N, canon, params, name):
    start = canon((1 % N, 0, 0, 1 % N))
    index = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        x = order[i]
        for g in gens:
            y = canon(_matmul_mod(g, x, N))
            if y not in index:
                index[y] = len(order)
                order.append(y)
        i += 1
    s = tuple(index[canon(_matmul_mod(gens[0], x, N))] for x in order)
    t = tuple(index[canon(_matmul_mod(gens[1], x, N))] for x in order)
    return QuotientRep(len(order), s, t, params, name)


def sl2_mod(N: int) -> QuotientRep:
    """Left-multiplication action of SL(2, Z/N) on itself, for (4, 6, 2)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    gens = [tuple(x % N for x in _S), tuple(x % N for x in _T)]
    return _regular_rep(gens, N, lambda x: x, parse_params(4, 6, 2), f"sl2_z_mod{N}")


def psl2_mod(N: int) -> QuotientRep:
    """Left-multiplication action of SL(2, Z/N)/{±1} on itself, for (2, 3, 1)."""
    if N < 2:
        raise ValueError("N must be at least 2")

    def canon(x):
        return min(x, tuple((-v) % N for v in x))

    gens = [tuple(x % N for x in _S), tuple(x % N for x in _T)]
    return _regular_rep(gens, N, canon, parse_params(2, 3, 1), f"psl2_z_mod{N}")


def trivial_rep(params) -> QuotientRep:
    return QuotientRep(1, (0,), (0,), params, "trivial")


def cyclic_rep(params) -> QuotientRep:
    """Smallest cyclic quotient ``Z_K`` (translations) that is faithful on ``<r>``."""
    a, b = params.s_cosets, params.t_cosets
    for K in range(1, lcm(params.m, params.n) + 1):
        for u in range(K):
            if (params.m * u) % K:
                continue
            for v in range(K):
                if (params.n * v) % K or (a * u - b * v) % K:
                    continue
                if K // gcd(K, a * u) == params.d:
                    s = tuple((i + u) % K for i in range(K))
                    t = tuple((i + v) % K for i in range(K))
                    return QuotientRep(K, s, t, params, f"cyclic{K}")
    raise AssertionError("Z_lcm(m,n) always works")


def _random_perm_with_cycles(rng, degree, lengths):
    points = list(range(degree))
    rng.shuffle(points)
    perm = list(range(degree))
    i = 0
    while i < degree:
        size = rng.choice([c for c in lengths if c <= degree - i])
        cycle = points[i:i + size]
        for j, x in enumerate(cycle):
            perm[x] = cycle[(j + 1) % size]
        i += size
    return tuple(perm)


def collapsed_rep(params, degree: int, seed: int = 0) -> QuotientRep:
    """Random quotient killing ``r``: it factors through ``Z_(m/d) * Z_(n/d)``."""
    rng = random.Random(seed)
    a, b = params.s_cosets, params.t_cosets
    s = _random_perm_with_cycles(rng, degree, [c for c in range(1, a + 1) if a % c == 0])
    t = _random_perm_with_cycles(rng, degree, [c for c in range(1, b + 1) if b % c == 0])
    return QuotientRep(degree, s, t, params, f"collapsed{degree}_{seed}")


def product_rep(x: QuotientRep, y: QuotientRep) -> QuotientRep:
    """Diagonal action on ``points(x) × points(y)``."""
    if x.params != y.params:
        raise ParamMismatch("product of quotients of different groups")
    ny = y.degree
    s = tuple(x.image_s[i // ny] * ny + y.image_s[i % ny] for i in range(x.degree * ny))
    t = tuple(x.image_t[i // ny] * ny + y.image_t[i % ny] for i in range(x.degree * ny))
    return QuotientRep(x.degree * ny, s, t, x.params, f"{x.name}x{y.name}")


def builtin(name: str) -> QuotientRep:
    """``sl2_z_modN``, ``psl2_z_modN``."""
    for prefix, factory in (("sl2_z_mod", sl2_mod), ("psl2_z_mod", psl2_mod)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return factory(int(name[len(prefix):]))
    raise KeyError(f"unknown built-in quotient {name!r}")


# representing group ring elements

def represent(a, rep: QuotientRep) -> RationalMatrix:
    """Image of a group ring element (or a matrix of them) under ``rep``."""
    if isinstance(a, GRMatrix):
        if a.params != rep.params:
            raise ParamMismatch(f"matrix over {a.params}, quotient of {rep.params}")
        return RationalMatrix.block([[represent(x, rep) for x in row] for row in a.entries])
    if a.params != rep.params:
        raise ParamMismatch(f"element over {a.params}, quotient of {rep.params}")
    N = rep.degree
    out = [[Fraction(0)] * N for _ in range(N)]
    for g, c in a.items():
        perm = rep.perm_of(g)
        for i in range(N):
            out[perm[i]][i] += c
    return RationalMatrix._raw(out, N, N)


def orbit_count(rep: QuotientRep) -> int:
    parent = list(range(rep.degree))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in (rep.image_s, rep.image_t):
        for i, j in enumerate(perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(rep.degree)})


def orbit_indicators(rep: QuotientRep) -> RationalMatrix:
    """Indicator vectors of the orbits, as columns: a basis of the joint fixed space."""
    labels = {}
    seen = [-1] * rep.degree
    for start in range(rep.degree):
        if seen[start] >= 0:
            continue
        k = len(labels)
        labels[start] = k
        stack = [start]
        seen[start] = k
        while stack:
            i = stack.pop()
            for j in (rep.image_s[i], rep.image_t[i]):
                if seen[j] < 0:
                    seen[j] = k
                    stack.append(j)
    cols = len(labels)
    return RationalMatrix([[1 if seen[i] == k else 0 for k in range(cols)]
                           for i in range(rep.degree)])


def joint_fixed_dim(rep: QuotientRep) -> int:
    """Dimension of the vectors fixed by both generators, by exact elimination."""
    ident = RationalMatrix.identity(rep.degree)
    one = GroupRingElement.one(rep.params)
    S = represent(GroupRingElement.from_word(generator(rep.params, "s")), rep)
    T = represent(GroupRingElement.from_word(generator(rep.params, "t")), rep)
    return nullspace_dim(RationalMatrix.vstack([ident - S, ident - T]))


def _element_ranks(rep):
    p, q, h = (represent(x(rep.params), rep) for x in (make_p, make_q, make_h))
    return p, q, h, rank(p), rank(q), rank(h)


def verify_kernel_identity(rep: QuotientRep, with_embedding: bool = True) -> Dict:
    """Compare ``dim ker rep(Laplacian)`` with ``rk h - rk p - rk q + dim fixed``."""
    params = rep.params
    lap = represent(build_laplacian(params), rep)
    A = nullspace_dim(lap)
    P, Q, H, rp, rq, rh = _element_ranks(rep)
    fixed = orbit_count(rep)
    B = rh - rp - rq + fixed
    report = {
        "check": "kernel",
        "quotient": rep.name,
        "degree": rep.degree,
        "laplacian_nullity": A,
        "rank_h": rh,
        "rank_p": rp,
        "rank_q": rq,
        "joint_fixed_dim": fixed,
        "rank_formula": B,
        "kernel_ratio": _frac(Fraction(A, rep.degree)),
        "class_trace_ratio": _frac(Fraction(rh - rp - rq, rep.degree)),
        "equal": A == B,
    }
    if with_embedding:
        # a -> (k1 a, -l1 a) on im h ∩ ker p ∩ ker q should land in the kernel
        ident = RationalMatrix.identity(rep.degree)
        a_basis = nullspace(RationalMatrix.vstack([ident - H, P, Q]))
        report["harmonic_source_dim"] = a_basis.cols
        if a_basis.cols:
            K1 = represent(make_k1(params), rep)
            L1 = represent(make_l1(params), rep)
            X = RationalMatrix.vstack([K1 @ a_basis, -(L1 @ a_basis)])
            report["embedding_in_kernel"] = (lap @ X).is_zero()
            report["embedding_rank"] = rank(X.transpose())
        else:
            report["embedding_in_kernel"] = True
            report["embedding_rank"] = 0
        report["embedding_spans_kernel"] = (report["embedding_in_kernel"]
                                            and report["embedding_rank"] == A)
    report["passed"] = report["equal"] and report.get("embedding_spans_kernel", True)
    return report


def verify_lemma31(rep: QuotientRep) -> Dict:
    """Kernel of ``(1-t^-1)(1-t) + (1-s^-1)(1-s)`` and the restricted kernel on im(1-h)."""
    params = rep.params
    one = GroupRingElement.one(params)
    s = GroupRingElement.from_word(generator(params, "s"))
    t = GroupRingElement.from_word(generator(params, "t"))
    form = (one - t.star()) * (one - t) + (one - s.star()) * (one - s)
    M = represent(form, rep)
    kernel_dim = nullspace_dim(M)
    fixed = orbit_count(rep)
    fixed_in_kernel = (M @ orbit_indicators(rep)).is_zero()
    fixed_exact = joint_fixed_dim(rep)

    op = represent(make_f(params) * make_k(params) + make_g(params) * make_l(params), rep)
    complement = column_basis(represent(one - make_h(params), rep))
    if complement.cols:
        restricted = nullspace_dim(op @ complement)
    else:
        restricted = 0
    report = {
        "check": "lemma31",
        "quotient": rep.name,
        "degree": rep.degree,
        "form_kernel_dim": kernel_dim,
        "joint_fixed_dim": fixed,
        "joint_fixed_dim_exact": fixed_exact,
        "fixed_space_in_kernel": fixed_in_kernel,
        "kernel_is_fixed_space": fixed_in_kernel and kernel_dim == fixed == fixed_exact,
        "complement_dim": complement.cols,
        "restricted_kernel_dim": restricted,
        "restricted_kernel_trivial": restricted == 0,
    }
    report["passed"] = report["kernel_is_fixed_space"] and report["restricted_kernel_trivial"]
    return report


def _orthogonal(X: RationalMatrix, Y: RationalMatrix) -> bool:
    if not X.cols or not Y.cols:
        return True
    return (X.transpose() @ Y).is_zero()


def verify_decompositions(rep: QuotientRep) -> Dict:
    """Build the five subspaces of im h ⊕ im h and check the two orthogonal splittings."""
    N = rep.degree
    ident = RationalMatrix.identity(N)
    zero = RationalMatrix.zeros(N, N)
    P, Q, H, rp, rq, rh = _element_ranks(rep)
    fixed = orbit_count(rep)

    a_basis = nullspace(RationalMatrix.vstack([ident - H, P, Q]))
    pq_basis = column_basis(RationalMatrix.hstack([P, Q]))
    h_basis = column_basis(H)

    def pair(top, bottom):
        return RationalMatrix.vstack([top, bottom])

    H1 = pair(a_basis, -a_basis) if a_basis.cols else RationalMatrix.zeros(2 * N, 0)
    H2 = pair(pq_basis, -pq_basis) if pq_basis.cols else RationalMatrix.zeros(2 * N, 0)
    H3 = pair(h_basis, h_basis)
    H2t = column_basis(RationalMatrix.block([[P, zero], [zero, Q]]))
    H3t = column_basis(pair((ident - P) @ H, (ident - Q) @ H))

    dims = {"H1": H1.cols, "H2": H2.cols, "H3": H3.cols, "H2~": H2t.cols, "H3~": H3t.cols}
    diag_h = RationalMatrix.block([[H, zero], [zero, H]])
    inside = all((diag_h @ X - X).is_zero() for X in (H1, H2, H3, H2t, H3t) if X.cols)
    T = RationalMatrix.block([[H, H], [H, H]]).scale(Fraction(1, 2))
    report = {
        "check": "decomp",
        "quotient": rep.name,
        "degree": N,
        "rank_h": rh,
        "rank_p": rp,
        "rank_q": rq,
        "joint_fixed_dim": fixed,
        "dims": dims,
        "inside_im_h_squared": inside,
        "orthogonal_first": _orthogonal(H1, H2) and _orthogonal(H1, H3) and _orthogonal(H2, H3),
        "orthogonal_second": (_orthogonal(H1, H2t) and _orthogonal(H1, H3t)
                              and _orthogonal(H2t, H3t)),
        "additive_first": 2 * rh == dims["H1"] + dims["H2"] + dims["H3"],
        "additive_second": 2 * rh == dims["H1"] + dims["H2~"] + dims["H3~"],
        "T_projection": T @ T == T and T.is_symmetric(),
        "rank_T_equals_rank_h": rank(T) == rh,
        "H2_tilde_is_p_plus_q": dims["H2~"] == rp + rq,
        "H3_equals_H3_tilde": dims["H3"] == dims["H3~"],
        "H3_defect_is_fixed_space": dims["H3"] - dims["H3~"] == fixed,
    }
    report["passed"] = all(report[k] for k in (
        "inside_im_h_squared", "orthogonal_first", "orthogonal_second", "additive_first",
        "additive_second", "T_projection", "rank_T_equals_rank_h", "H2_tilde_is_p_plus_q",
        "H3_defect_is_fixed_space"))
    return report


def spectral_gap_estimate(rep: QuotientRep, tol: float = 1e-9) -> float:
    """Smallest nonzero eigenvalue of rep(Laplacian), in floating point.

    The exact nullity decides how many eigenvalues are discarded.
    """
    import numpy as np

    lap = represent(build_laplacian(rep.params), rep)
    nullity = nullspace_dim(lap)
    eig = np.linalg.eigvalsh(lap.to_float())
    scale = max(1.0, float(np.max(np.abs(eig))))
    if nullity and np.max(np.abs(eig[:nullity])) > tol * scale:
        raise ArithmeticError("numeric spectrum disagrees with the exact nullity")
    if nullity == len(eig):
        return 0.0
    return float(eig[nullity])


def verify_gap(rep: QuotientRep) -> Dict:
    gap = spectral_gap_estimate(rep)
    return {"check": "gap", "quotient": rep.name, "degree": rep.degree,
            "spectral_gap": gap, "passed": gap > 1e-9}


CHECKS = {
    "kernel": verify_kernel_identity,
    "lemma31": verify_lemma31,
    "decomp": verify_decompositions,
    "gap": verify_gap,
}


def run_checks(rep: QuotientRep, which="all") -> Dict:
    names = list(CHECKS) if which == "all" else [which]
    results = {name: CHECKS[name](rep) for name in names}
    return {
        "schema": "amalgam.quotient/1",
        "quotient": rep.name,
        "degree": rep.degree,
        "params": {"m": rep.params.m, "n": rep.params.n, "d": rep.params.d},
        "checks": results,
        "passed": all(r["passed"] for r in results.values()),
    }


def _frac(x):
    return f"{x.numerator}/{x.denominator}"
