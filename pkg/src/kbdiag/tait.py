"""Breadth identities, order bounds, and non-alternating certificates.

The main identity states that a connected alternating diagram of a mod-2
trivial link, drawn so that it cannot retreat into a disk with fewer
holes and carrying no nugatory crossing, has bracket breadth exactly
4n + 4 - 4g - 4k, where k counts the crossings whose corners meet two
distinct puncture-carrying faces.  ``check_jones_tait`` evaluates both
sides and reports a verdict that is "inapplicable" whenever a hypothesis
fails, so a "fail" always names a genuine counterexample.

``check_lemma_bounds`` reports the supporting order bounds that hold for
every connected diagram of a mod-2 trivial link: the breadth is at most
the order span between the all-plus and all-minus states (an equality
for adequate diagrams), the trivial-circle counts of the two extreme
states sum to at most n + 1 - g when the diagram uses all its holes and
g >= 1, and for alternating diagrams the span equals 4n + 4 - 4g.

Certificates work at the link level.  Splitness along essential spheres
and the homotopic genus quantify over all diagrams of a link, so the
caller asserts them as flags; the certificate only turns a verified
breadth inequality into the advertised conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bracket import bracket_report
from .diagram import (
    PuncturedDiagram,
    adequacy,
    diagram_genus,
    is_alternating,
    is_connected,
    simplicity_report,
    z2_class,
)
from .laurent import RationalFn

__all__ = [
    "TheoremVerdict",
    "LemmaReport",
    "Certificate",
    "check_jones_tait",
    "check_lemma_bounds",
    "non_alternating_certificate",
    "crossing_lower_bound",
    "PASS",
    "FAIL",
    "INAPPLICABLE",
]

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


def _hypotheses(d: PuncturedDiagram) -> dict[str, bool]:
    return {
        "connected": is_connected(d),
        "alternating": is_alternating(d),
        "z2_trivial": not any(z2_class(d)),
        "fills_genus": diagram_genus(d) == d.genus,
    }


@dataclass(frozen=True)
class TheoremVerdict:
    """Outcome of the breadth identity check on one diagram.

    ``hypotheses`` records every precondition by name; ``k`` is the
    count of crossings adjacent to two distinct external faces
    (crossings meeting one external face twice are excluded from k and
    do not block applicability).  ``expected`` is 4n + 4 - 4g - 4k and
    is reported even when the verdict is "inapplicable".
    """

    hypotheses: dict[str, bool]
    k: int
    n: int
    genus: int
    expected: int
    actual: int
    verdict: str

    @property
    def applicable(self) -> bool:
        return all(self.hypotheses.values())


def check_jones_tait(d: PuncturedDiagram, jobs: int = 1) -> TheoremVerdict:
    """Compare the bracket breadth with 4n + 4 - 4g - 4k."""
    rep = simplicity_report(d)
    hyp = _hypotheses(d)
    hyp["no_nugatory"] = not rep.nugatory
    n = d.n_crossings
    expected = 4 * n + 4 - 4 * d.genus - 4 * rep.k
    actual = bracket_report(d, jobs=jobs).breadth
    if not all(hyp.values()):
        verdict = INAPPLICABLE
    elif actual == expected:
        verdict = PASS
    else:
        verdict = FAIL
    return TheoremVerdict(
        hypotheses=hyp,
        k=rep.k,
        n=n,
        genus=d.genus,
        expected=expected,
        actual=actual,
        verdict=verdict,
    )


@dataclass(frozen=True)
class LemmaReport:
    """Raw order data and the bound checks that apply to it.

    A check is None when its hypotheses do not hold for this diagram
    (or when a vanishing extreme state leaves the span undefined), True
    when asserted and satisfied, False when asserted and violated.
    The raw quantities are always filled in, so out-of-scope cases
    (disconnected inputs, the genus-0 trivial-sum bound) can still be
    inspected.
    """

    hypotheses: dict[str, bool]
    n: int
    genus: int
    breadth: int
    order_span: Optional[int]
    plus_trivial: int
    minus_trivial: int
    adequate_plus: bool
    adequate_minus: bool
    span_bound_holds: Optional[bool]
    span_equality_holds: Optional[bool]
    trivial_sum: int
    trivial_sum_bound: Optional[int]
    trivial_sum_holds: Optional[bool]
    alternating_span: Optional[int]
    alternating_span_holds: Optional[bool]


def check_lemma_bounds(d: PuncturedDiagram, jobs: int = 1) -> LemmaReport:
    """Evaluate the order-span and trivial-circle bounds on one diagram."""
    rep = bracket_report(d, jobs=jobs)
    hyp = _hypotheses(d)
    core = hyp["connected"] and hyp["z2_trivial"]
    plus, minus = rep.plus_state, rep.minus_state
    top = plus.order_top
    bottom = minus.order_bottom
    span = top - bottom if top is not None and bottom is not None else None
    adq_plus, adq_minus = adequacy(d)

    span_bound = None
    span_equality = None
    if core and span is not None:
        span_bound = rep.breadth <= span
        if adq_plus and adq_minus:
            span_equality = rep.breadth == span

    trivial_sum = plus.trivial + minus.trivial
    trivial_sum_bound = None
    trivial_sum_holds = None
    if core and hyp["fills_genus"] and d.genus >= 1:
        trivial_sum_bound = rep.n + 1 - d.genus
        trivial_sum_holds = trivial_sum <= trivial_sum_bound

    alternating_span = None
    alternating_span_holds = None
    if core and hyp["alternating"] and hyp["fills_genus"]:
        alternating_span = 4 * rep.n + 4 - 4 * d.genus
        if span is not None:
            alternating_span_holds = span == alternating_span

    return LemmaReport(
        hypotheses=hyp,
        n=rep.n,
        genus=d.genus,
        breadth=rep.breadth,
        order_span=span,
        plus_trivial=plus.trivial,
        minus_trivial=minus.trivial,
        adequate_plus=adq_plus,
        adequate_minus=adq_minus,
        span_bound_holds=span_bound,
        span_equality_holds=span_equality,
        trivial_sum=trivial_sum,
        trivial_sum_bound=trivial_sum_bound,
        trivial_sum_holds=trivial_sum_holds,
        alternating_span=alternating_span,
        alternating_span_holds=alternating_span_holds,
    )


@dataclass(frozen=True)
class Certificate:
    """A verified breadth obstruction together with its conclusion.

    kind 1: breadth not a multiple of 4, the link is not alternating.
    kind 2: breadth not a positive multiple of 4, the link has no
    simple alternating diagram.  kind 3: breadth below 4n + 4 - 4g for
    the asserted homotopic genus and crossing count, so the link is
    either not alternating or has crossing number below n.  The
    caller-asserted flags are echoed so downstream output shows what
    the conclusion is conditional on.
    """

    kind: int
    conclusion: str
    breadth: int
    flags: dict[str, object]
    threshold: Optional[int] = None
    crossing_count: Optional[int] = None


def non_alternating_certificate(
    bracket: RationalFn,
    *,
    non_h_split: bool,
    z2_trivial: bool,
    homotopic_genus: Optional[int] = None,
    sphere_condition: bool = False,
    crossing_count: Optional[int] = None,
) -> Optional[Certificate]:
    """Return the strongest certificate the breadth supports, or None.

    ``non_h_split`` and ``z2_trivial`` are required for every kind and
    must be vouched for by the caller.  Kind 3 additionally needs the
    homotopic genus, the assertion that no non-separating sphere meets
    the link twice (``sphere_condition``), and the crossing count of
    the diagram under discussion.
    """
    if not (non_h_split and z2_trivial):
        return None
    flags: dict[str, object] = {
        "non_h_split": non_h_split,
        "z2_trivial": z2_trivial,
        "homotopic_genus": homotopic_genus,
        "sphere_condition": sphere_condition,
    }
    b = bracket.breadth()
    if b % 4 != 0:
        return Certificate(
            kind=1,
            conclusion="not alternating",
            breadth=b,
            flags=flags,
        )
    if b <= 0 or bracket.is_zero():
        return Certificate(
            kind=2,
            conclusion="not alternating with a simple diagram",
            breadth=b,
            flags=flags,
        )
    if (
        homotopic_genus is not None
        and sphere_condition
        and crossing_count is not None
    ):
        threshold = 4 * crossing_count + 4 - 4 * homotopic_genus
        if b < threshold:
            return Certificate(
                kind=3,
                conclusion="not alternating at this crossing count",
                breadth=b,
                flags=flags,
                threshold=threshold,
                crossing_count=crossing_count,
            )
    return None


def crossing_lower_bound(bracket: RationalFn, g: int) -> int:
    """Least crossing count compatible with the given bracket breadth.

    For a link of homotopic genus g >= 1 that is not H-split, mod-2
    trivial, every n-crossing diagram obeys B <= 4n + 2 - 2g, because
    the order span is at most 2(n + sum of trivial counts) and the
    trivial counts sum to at most n + 1 - g while the defect terms are
    nonpositive.  At g = 0 the classical bound B <= 4n + 4 applies.
    The zero function has breadth 0, making the bound vacuous.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    b = bracket.breadth()
    if g == 0:
        return max(0, -(-(b - 4) // 4))
    return max(0, -(-(b + 2 * g - 2) // 4))
