"""Exact bracket state sum over all 2^n smoothings.

The bracket of a diagram D with crossings c_1 < ... < c_n (by id) is

    sum over states s of  A**(sum s)  *  delta**sD  *  value(D_s)

where sD counts the homotopically trivial circles of the resolution,
D_s is the system of essential circles, and value(D_s) is the shadow
evaluation from the shadow module.  States are indexed by bitmask: bit
i set means crossing c_i is smoothed with sign -1, so index 0 is the
all-plus state and index 2**n - 1 the all-minus state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import PuncturedDiagram
from .laurent import Order, RationalFn, delta
from .resolution import Resolution, resolve
from .shadow import psi as shadow_psi
from .shadow import resolution_value

__all__ = [
    "BracketReport",
    "StateSummary",
    "bracket_report",
    "kauffman_bracket",
    "state_resolution",
    "state_term",
    "summarize_state",
]


def state_of_index(d: PuncturedDiagram, index: int) -> dict[str, int]:
    cids = [cid for cid, _ in d.crossings]
    return {cid: -1 if index >> i & 1 else 1 for i, cid in enumerate(cids)}


def state_resolution(d: PuncturedDiagram, index: int) -> Resolution:
    return resolve(d, state_of_index(d, index))


def state_term(d: PuncturedDiagram, index: int) -> RationalFn:
    """The contribution of one state to the bracket."""
    res = state_resolution(d, index)
    term = resolution_value(res.complex)
    if term.is_zero():
        return term
    return term * RationalFn.monomial(1, res.sum_signs) * _delta_power(res.trivial_count)


_DELTA_CACHE: dict[int, RationalFn] = {}


def _delta_power(k: int) -> RationalFn:
    if k not in _DELTA_CACHE:
        _DELTA_CACHE[k] = RationalFn(delta()) ** k
    return _DELTA_CACHE[k]


@dataclass(frozen=True)
class StateSummary:
    """Order data of one state, as used by the bound checks."""

    index: int
    sum_signs: int
    trivial: int  # circles bounding disks in the punctured sphere
    essential: int  # circles that stay after discarding the trivial ones
    psi: Optional[int]  # None when the resolution value vanishes
    term: RationalFn

    @property
    def order_top(self) -> Optional[int]:
        """ord_inf of the state contribution: sum s + 2(sD + psi)."""
        if self.psi is None:
            return None
        return self.sum_signs + 2 * (self.trivial + self.psi)

    @property
    def order_bottom(self) -> Optional[int]:
        """ord_0 of the state contribution: sum s - 2(sD + psi)."""
        if self.psi is None:
            return None
        return self.sum_signs - 2 * (self.trivial + self.psi)


def summarize_state(d: PuncturedDiagram, index: int) -> StateSummary:
    res = state_resolution(d, index)
    value = resolution_value(res.complex)
    term = RationalFn.zero()
    if not value.is_zero():
        term = (
            value
            * RationalFn.monomial(1, res.sum_signs)
            * _delta_power(res.trivial_count)
        )
    return StateSummary(
        index=index,
        sum_signs=res.sum_signs,
        trivial=res.trivial_count,
        essential=res.essential_count,
        psi=shadow_psi(res.complex),
        term=term,
    )


def _sum_range(d: PuncturedDiagram, lo: int, hi: int) -> RationalFn:
    total = RationalFn.zero()
    for index in range(lo, hi):
        total = total + state_term(d, index)
    return total


def _chunk_worker(args: tuple[PuncturedDiagram, int, int]) -> RationalFn:
    d, lo, hi = args
    return _sum_range(d, lo, hi)


def kauffman_bracket(d: PuncturedDiagram, jobs: int = 1) -> RationalFn:
    """Exact bracket in canonical rational form.

    ``jobs > 1`` splits the state range over a process pool; the result
    is identical bit for bit because partial sums are reassembled in
    index order.
    """
    n = d.n_crossings
    total_states = 1 << n
    if jobs <= 1 or total_states < 64:
        return _sum_range(d, 0, total_states)
    import multiprocessing

    chunk = max(1, total_states // (jobs * 4))
    bounds = list(range(0, total_states, chunk)) + [total_states]
    tasks = [(d, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    with multiprocessing.Pool(processes=jobs) as pool:
        parts = pool.map(_chunk_worker, tasks)
    total = RationalFn.zero()
    for part in parts:
        total = total + part
    return total


@dataclass(frozen=True)
class BracketReport:
    value: RationalFn
    n: int
    breadth: int
    ord_inf: Order
    ord_zero: Order
    plus_state: StateSummary
    minus_state: StateSummary


def bracket_report(d: PuncturedDiagram, jobs: int = 1) -> BracketReport:
    value = kauffman_bracket(d, jobs=jobs)
    n = d.n_crossings
    return BracketReport(
        value=value,
        n=n,
        breadth=value.breadth(),
        ord_inf=value.ord_inf(),
        ord_zero=value.ord_zero(),
        plus_state=summarize_state(d, 0),
        minus_state=summarize_state(d, (1 << n) - 1),
    )
