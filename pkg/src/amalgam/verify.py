"""Batch verification: every identity and cross-check, as a pass/fail report."""
import random
import time
from fractions import Fraction
from typing import List

from . import quotient as qt
from .betti import betti_by_count, betti_by_trace, betti_table, torsion_representatives
from .conjugacy import (are_conjugate, ball, brute_force_class, delocalized_trace)
from .fox import (FreeWord, build_d0, build_d1, build_laplacian, expanded_laplacian,
                  fox_derivative, fox_jacobian)
from .group_ring import (GroupRingElement, make_f, make_g, make_h, make_p, make_q,
                         symbolic_identities)
from .normal_form import (element_order, generator, identity, invert, multiply)
from .presentation import AmalgamParams, parse_params

DEFAULT_SEED = 20240601
SCHEMA = "amalgam.verify/1"

LEVELS = {
    "quick": {"samples": 40, "trace_pairs": 200, "conj_radius": 3, "conj_ball": 6,
              "conj_budget": 60_000, "max_degree": 24},
    "full": {"samples": 200, "trace_pairs": 1000, "conj_radius": 5, "conj_ball": 8,
             "conj_budget": 150_000, "max_degree": 120},
}


def random_word(params, rng, max_letters=6):
    x = identity(params)
    for _ in range(rng.randint(0, max_letters)):
        x = multiply(x, generator(params, rng.choice("st"), rng.choice((1, -1))))
    return x


def random_element(params, rng, max_support=3, max_letters=4):
    terms = [(random_word(params, rng, max_letters), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
             for _ in range(rng.randint(1, max_support))]
    return GroupRingElement(params, terms)


def random_free_word(rng, max_letters=8):
    return FreeWord.reduced([(rng.choice("st"), rng.choice((1, -1)))
                             for _ in range(rng.randint(0, max_letters))])


def torsion_sample(params):
    return [g for _, g in torsion_representatives(params)]


class _Report:
    def __init__(self):
        self.entries: List[dict] = []

    def add(self, suite, name, passed, detail=None):
        entry = {"suite": suite, "name": name, "passed": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        self.entries.append(entry)


def _suite_normal_form(params, rng, cfg, rep: _Report):
    n = cfg["samples"]
    triples = [tuple(random_word(params, rng) for _ in range(3)) for _ in range(n)]
    rep.add("normal_form", "associativity",
            all(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)) for a, b, c in triples))
    rep.add("normal_form", "inverse",
            all(multiply(a, invert(a)).is_identity() and multiply(invert(a), a).is_identity()
                for a, _, _ in triples))
    orders = (element_order(generator(params, "s")), element_order(generator(params, "t")),
              element_order(generator(params, "r")))
    rep.add("normal_form", "orders of s, t, r are m, n, d",
            orders == (params.m, params.n, params.d), {"orders": list(orders)})
    r = generator(params, "r")
    rep.add("normal_form", "r is central",
            all(multiply(r, a) == multiply(a, r) for a, _, _ in triples))


def _suite_group_ring(params, rng, cfg, rep: _Report):
    for name, lhs, rhs in symbolic_identities(params):
        rep.add("group_ring", name, lhs == rhs)
    pairs = [(random_element(params, rng), random_element(params, rng))
             for _ in range(cfg["samples"] // 2)]
    rep.add("group_ring", "star is an involution", all(a.star().star() == a for a, _ in pairs))
    rep.add("group_ring", "(ab)* = b* a*",
            all((a * b).star() == b.star() * a.star() for a, b in pairs))
    rep.add("group_ring", "augmentation is multiplicative",
            all((a * b).augmentation() == a.augmentation() * b.augmentation() for a, b in pairs))


def _suite_fox(params, rng, cfg, rep: _Report):
    one = GroupRingElement.one(params)
    s = GroupRingElement.from_word(generator(params, "s"))
    t = GroupRingElement.from_word(generator(params, "t"))
    words = [(random_free_word(rng), random_free_word(rng)) for _ in range(cfg["samples"] // 2)]

    def as_element(w):
        return GroupRingElement.from_word(w.image(params))

    ok = True
    for u, v in words:
        for gen in "st":
            lhs = fox_derivative(u * v, gen, params)
            rhs = fox_derivative(u, gen, params) + as_element(u) * fox_derivative(v, gen, params)
            ok = ok and lhs == rhs
    rep.add("fox", "product rule", ok)
    rep.add("fox", "fundamental formula w - 1 = sum dw/dx (x - 1)", all(
        as_element(w) - one == fox_derivative(w, "s", params) * (s - one)
        + fox_derivative(w, "t", params) * (t - one) for w, _ in words))
    d0, d1 = build_d0(params), build_d1(params)
    rep.add("fox", "d0 = [1-s; 1-t]", d0.entries == ((one - s,), (one - t,)))
    f, g = make_f(params), make_g(params)
    zero = GroupRingElement.zero(params)
    printed = ((make_p(params).scale(params.m), zero),
               (zero, make_q(params).scale(params.n)),
               (-f, g))
    rep.add("fox", "d1 matches the printed matrix", d1.entries == printed)
    raw = fox_jacobian(params)
    unit = GroupRingElement.from_word(generator(params, "s", params.s_cosets))
    rep.add("fox", "third row is s^(m/d) times the raw Fox row",
            all(unit * raw[2, j] == d1[2, j] for j in range(2)))
    rep.add("fox", "augmentation kills d0", all(x.augmentation() == 0 for (x,) in d0.entries))
    lap = build_laplacian(params)
    rep.add("fox", "Laplacian equals expanded form", lap == expanded_laplacian(params))
    rep.add("fox", "Laplacian is self-adjoint", lap == lap.star())


def _suite_conjugacy(params, rng, cfg, rep: _Report):
    # shrink both radii together until the brute force fits the budget
    radius, reach = cfg["conj_radius"], cfg["conj_ball"]
    while True:
        small = ball(params, radius)
        conjugators = ball(params, reach)
        if len(small) * len(conjugators) <= cfg["conj_budget"] or radius <= 2:
            break
        radius, reach = radius - 1, reach - 1
    mismatches = 0
    for a in small:
        cls = brute_force_class(a, conjugators)
        mismatches += sum((b in cls) != are_conjugate(a, b) for b in small)
    rep.add("conjugacy", "agrees with bounded-ball brute force", mismatches == 0,
            {"radius": radius, "conjugator_radius": reach, "elements": len(small),
             "conjugators": len(conjugators), "mismatches": mismatches})
    torsion = torsion_sample(params)
    failures = 0
    for _ in range(cfg["trace_pairs"]):
        a, b = random_element(params, rng), random_element(params, rng)
        g = rng.choice(torsion)
        if delocalized_trace(a * b, g) != delocalized_trace(b * a, g):
            failures += 1
    rep.add("conjugacy", "trace property tau(ab) = tau(ba)", failures == 0,
            {"pairs": cfg["trace_pairs"], "failures": failures})
    ok = True
    for _ in range(cfg["samples"] // 2):
        a = random_element(params, rng)
        u = GroupRingElement.from_word(random_word(params, rng))
        g = rng.choice(torsion)
        ok = ok and delocalized_trace(u * a * u.star(), g) == delocalized_trace(a, g)
    rep.add("conjugacy", "conjugation invariance of tau", ok)


def _suite_betti(params, rng, cfg, rep: _Report):
    reps = torsion_sample(params)
    rep.add("betti", "trace pairing equals intersection count",
            all(betti_by_trace(g) == betti_by_count(g) for g in reps))
    one = identity(params)
    expected = Fraction(1, params.d) - Fraction(1, params.m) - Fraction(1, params.n)
    rep.add("betti", "value at identity is 1/d - 1/m - 1/n", betti_by_trace(one) == expected)
    generic = multiply(generator(params, "s"), generator(params, "t"))
    rep.add("betti", "infinite-order class gives 0", betti_by_trace(generic) == 0)
    table = betti_table(params)
    labels = [row.representative for row in table.rows if row.representative is not None]
    rep.add("betti", "table classes pairwise non-conjugate",
            all(not are_conjugate(x, y) for i, x in enumerate(labels) for y in labels[i + 1:]))
    if params.d == 1:
        p, q = make_p(params), make_q(params)
        ok = all(delocalized_trace(GroupRingElement.one(params), g) - delocalized_trace(p, g)
                 - delocalized_trace(q, g) == betti_by_trace(g) for g in reps)
        rep.add("betti", "d = 1 reproduces [1] - [p] - [q]", ok and make_h(params) == 1)


def quotients_for(params: AmalgamParams, max_degree: int, seed: int):
    """Small finite quotients used by the verification suites."""
    out = [qt.trivial_rep(params)]
    if params.as_tuple() == (4, 6, 2):
        out += [r for r in (qt.sl2_mod(N) for N in (2, 3, 4, 5)) if r.degree <= max_degree]
    elif params.as_tuple() == (2, 3, 1):
        out += [r for r in (qt.psl2_mod(N) for N in (2, 3, 5)) if r.degree <= max_degree]
    cyc = qt.cyclic_rep(params)
    if cyc.degree <= max_degree:
        out.append(cyc)
    collapsed = qt.collapsed_rep(params, 6, seed)
    out.append(collapsed)
    prod = qt.product_rep(cyc, qt.collapsed_rep(params, 4, seed + 1))
    if prod.degree <= max_degree:
        out.append(prod)
    return out


def _suite_quotient(params, rng, cfg, rep: _Report, seed):
    for q in quotients_for(params, cfg["max_degree"], seed):
        if q.degree <= 30:
            checks = qt.run_checks(q)["checks"]
        else:
            checks = {"kernel": qt.verify_kernel_identity(q, with_embedding=False)}
        for name, result in checks.items():
            detail = {k: v for k, v in result.items() if k not in ("check", "quotient", "passed")}
            rep.add("quotient", f"{name} on {q.name}", result["passed"], detail)


SUITES = ("normal_form", "group_ring", "fox", "conjugacy", "betti", "quotient")


def verify_all(params: AmalgamParams, level: str = "quick", seed: int = DEFAULT_SEED,
               suites=SUITES) -> dict:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {sorted(LEVELS)}")
    cfg = LEVELS[level]
    rng = random.Random(seed)
    rep = _Report()
    start = time.perf_counter()
    for suite in suites:
        if suite == "quotient":
            _suite_quotient(params, rng, cfg, rep, seed)
        else:
            globals()[f"_suite_{suite}"](params, rng, cfg, rep)
    return {
        "schema": SCHEMA,
        "params": {"m": params.m, "n": params.n, "d": params.d},
        "level": level,
        "seed": seed,
        "results": rep.entries,
        "passed": all(e["passed"] for e in rep.entries),
        "elapsed_seconds": round(time.perf_counter() - start, 3),
    }


def parameter_grid(limit: int = 12):
    """Every valid (m, n, d) with m, n <= limit."""
    grid = []
    for m in range(2, limit + 1):
        for n in range(3, limit + 1):
            for d in range(1, min(m, n) + 1):
                if m % d or n % d or (d != 1 and (d >= m or d >= n)):
                    continue
                grid.append(parse_params(m, n, d))
    return grid
