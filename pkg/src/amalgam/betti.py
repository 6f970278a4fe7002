"""Delocalized first l2-Betti numbers from the class ``[h] - [p] - [q]``."""
import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .conjugacy import (GENERIC, are_conjugate, class_intersection_count, classify,
                        delocalized_trace)
from .group_ring import make_h, make_p, make_q
from .normal_form import NormalWord, generator, identity, render
from .presentation import AmalgamParams

SCHEMA = "amalgam.betti/1"


def betti_by_trace(g: NormalWord) -> Fraction:
    params = g.params
    return (delocalized_trace(make_h(params), g)
            - delocalized_trace(make_p(params), g)
            - delocalized_trace(make_q(params), g))


def betti_by_count(g: NormalWord) -> Fraction:
    params = g.params
    return (Fraction(class_intersection_count(g, "Zd"), params.d)
            - Fraction(class_intersection_count(g, "Zm"), params.m)
            - Fraction(class_intersection_count(g, "Zn"), params.n))


def betti_number(g: NormalWord, params: AmalgamParams = None) -> Fraction:
    """Pair ``[h] - [p] - [q]`` with the delocalized trace at ``g``.

    Computed twice, by trace pairing and by counting class intersections
    with the finite cyclic subgroups; the two must agree.
    """
    if params is not None and g.params != params:
        from .errors import ParamMismatch

        raise ParamMismatch(f"class word over {g.params}, requested {params}")
    by_trace = betti_by_trace(g)
    by_count = betti_by_count(g)
    if by_trace != by_count:
        raise ArithmeticError(
            f"trace pairing {by_trace} disagrees with intersection count {by_count} at {render(g)}")
    return by_trace


def _power_label(name, k):
    return f"<{name}>" if k == 1 else f"<{name}^{k}>"


def candidate_representatives(params) -> List[Tuple[str, NormalWord]]:
    """1, r^j, s^i (i not a multiple of m/d), t^i (i not a multiple of n/d), labelled."""
    out = [("1", identity(params))]
    out += [(_power_label("r", j), generator(params, "r", j)) for j in range(1, params.d)]
    out += [(_power_label("s", i), generator(params, "s", i))
            for i in range(1, params.m) if i % params.s_cosets]
    out += [(_power_label("t", i), generator(params, "t", i))
            for i in range(1, params.n) if i % params.t_cosets]
    return out


def torsion_representatives(params) -> List[Tuple[str, NormalWord]]:
    """Candidates with conjugate duplicates removed (first occurrence kept)."""
    reps = []
    for label, g in candidate_representatives(params):
        if not any(are_conjugate(g, x) for _, x in reps):
            reps.append((label, g))
    return reps


@dataclass
class BettiRow:
    class_label: str
    representative: Optional[NormalWord]
    value: Fraction
    kind: str


@dataclass
class BettiReport:
    params: AmalgamParams
    rows: List[BettiRow] = field(default_factory=list)
    degenerate_note: Optional[str] = None
    other_degrees_note: str = "beta_k = 0 for every k != 1 and every class (only p_1 is non-zero)"

    def value_of(self, label):
        for row in self.rows:
            if row.class_label == label:
                return row.value
        raise KeyError(label)

    def grouped(self) -> List[Tuple[Fraction, List[str]]]:
        """Rows with equal value merged, in first-appearance order."""
        groups = {}
        for row in self.rows:
            groups.setdefault(row.value, []).append(row.class_label)
        return list(groups.items())

    def to_json(self):
        return {
            "schema": SCHEMA,
            "params": {"m": self.params.m, "n": self.params.n, "d": self.params.d},
            "degree": 1,
            "rows": [
                {
                    "class": row.class_label,
                    "representative": None if row.representative is None else render(row.representative),
                    "kind": row.kind,
                    "value": format_fraction(row.value),
                }
                for row in self.rows
            ],
            "degenerate_note": self.degenerate_note,
            "other_degrees": self.other_degrees_note,
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "representative", "kind", "value"])
        for row in self.rows:
            rep = "" if row.representative is None else render(row.representative)
            writer.writerow([row.class_label, rep, row.kind, format_fraction(row.value)])
        return buf.getvalue()

    def to_table(self):
        p = self.params
        lines = [f"Delocalized l2-Betti numbers beta_1,<g> for Z_{p.m} *_Z_{p.d} Z_{p.n}"]
        if self.degenerate_note:
            lines.append(self.degenerate_note)
        groups = self.grouped()
        width = max(len(display_fraction(v)) for v, _ in groups)
        for value, labels in groups:
            if labels == ["otherwise"]:
                cond = "otherwise"
            else:
                named = [lab for lab in labels if lab != "1"]
                cond = " or ".join((["g = 1"] if "1" in labels else [])
                                   + ([f"g in {', '.join(named)}"] if named else []))
            lines.append(f"  {display_fraction(value):>{width}}   {cond}")
        lines.append(self.other_degrees_note)
        return "\n".join(lines) + "\n"


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def display_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else format_fraction(x)


def betti_table(params) -> BettiReport:
    rows = []
    for label, g in torsion_representatives(params):
        rows.append(BettiRow(label, g, betti_number(g), classify(g)))
    rows.append(BettiRow("otherwise", None, Fraction(0), GENERIC))
    note = None
    if params.degenerate:
        note = "d = 1: free product Z_%d * Z_%d, class [1] - [p] - [q]" % (params.m, params.n)
    return BettiReport(params, rows, note)
