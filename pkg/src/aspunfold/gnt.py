"""Generate-and-test driver: search stable models of a generator program and
certify each covered candidate by showing its tester has no stable model.

The search mirrors the two-engine layout: one solver instance enumerates
generator models, a fresh solver instance runs every minimality test.  Early
tests on backtrack paths (sound by the no-stable-superset property) are
gated by a per-search WasCovered flag: set when a candidate is covered,
consumed by the next early test.  With ``early_test="repeat"`` a failed test
leaves the flag set, so the test repeats at each backtracking level until it
succeeds; ``"off"`` disables early testing entirely and never changes the
result, only the statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .gentest import gen_basic, gen_naive, gen_program, test_program
from .semantics import enumerate_stable_models
from .solver import Solver, SolverConfig, SolverStats
from .syntax import Atom, Literal, Program

MODES = ("gnt1", "gnt2", "naive", "brute")

_GENERATORS = {"gnt1": gen_basic, "gnt2": gen_program, "naive": gen_naive}


@dataclass
class GntStats:
    candidates_covered: int = 0
    minimal_tests: int = 0
    early_prunes: int = 0


@dataclass
class GntConfig:
    early_test: str = "once"  # once | repeat | off
    lookahead: bool = False
    trace: bool = False

    def __post_init__(self) -> None:
        if self.early_test not in ("once", "repeat", "off"):
            raise ValueError(f"unknown early-test policy {self.early_test!r}")


@dataclass
class SolveResult:
    models: list[frozenset[Atom]]
    stats: GntStats
    solver_stats: SolverStats


def minimal_test(
    p: Program,
    assignment_true: Iterable[Atom],
    config: Optional[GntConfig] = None,
    stats: Optional[GntStats] = None,
    solver_stats: Optional[SolverStats] = None,
) -> bool:
    """Read the true atoms as a total candidate (undefined taken false) and
    check that its tester has no stable model."""
    config = config or GntConfig()
    candidate = frozenset(assignment_true) & p.base
    tester = Solver(test_program(p, candidate), SolverConfig(lookahead=config.lookahead))
    found = tester.next_stable_model()
    if stats is not None:
        stats.minimal_tests += 1
    if solver_stats is not None:
        solver_stats.merge(tester.stats)
    return found is None


class _GntSearch:
    def __init__(self, g: Program, p: Program, config: GntConfig):
        self.generator = Solver(g, SolverConfig(lookahead=config.lookahead))
        self.p = p
        self.config = config
        self.stats = GntStats()
        self.test_solver_stats = SolverStats()
        self.was_covered = False
        self.trace: list[tuple] = []

    def _minimal(self, early: bool) -> bool:
        ok = minimal_test(
            self.p,
            self.generator.true_atoms(),
            self.config,
            self.stats,
            self.test_solver_stats,
        )
        if self.config.trace:
            self.trace.append(("early_test" if early else "cover_test", ok))
        return ok

    def run(self, assumptions: Iterable[Literal] = ()) -> Iterator[frozenset[Atom]]:
        pairs = [(l.atom, l.positive) for l in assumptions]
        return self._gnt(pairs)

    def _gnt(self, to_assign: list[tuple[Atom, bool]]) -> Iterator[frozenset[Atom]]:
        s = self.generator
        mark = s.mark()
        if not s.assign_and_extend(to_assign):
            s.stats.conflicts += 1
            s.undo_to(mark)
            return
        if s.covered:
            self.was_covered = True
            self.stats.candidates_covered += 1
            if self.config.trace:
                self.trace.append(("covered",))
            if self._minimal(early=False):
                yield s.true_atoms()
            s.undo_to(mark)
            return
        x = s.pick_atom()
        yield from self._gnt([(x, False)])
        if not s.assign_and_expand([(x, True)]):
            s.stats.conflicts += 1
            s.undo_to(mark)
            return
        if self.was_covered and self.config.early_test != "off":
            if not self._minimal(early=True):
                self.stats.early_prunes += 1
                if self.config.early_test == "once":
                    self.was_covered = False
                s.undo_to(mark)
                return
        self.was_covered = False
        yield from self._gnt([])
        s.undo_to(mark)


def gnt_search(
    g: Program,
    p: Program,
    assumptions: Iterable[Literal] = (),
    config: Optional[GntConfig] = None,
) -> Optional[frozenset[Atom]]:
    """First certified candidate of the generator, restricted to the input base."""
    search = _GntSearch(g, p, config or GntConfig())
    n = next(search.run(assumptions), None)
    return None if n is None else n & p.base


def solve_disjunctive(
    p: Program,
    mode: str = "gnt2",
    enumerate_all: bool = False,
    config: Optional[GntConfig] = None,
    cap: int = 12,
) -> SolveResult:
    """Stable models of a disjunctive program via the selected generator
    (or by the brute-force oracle); deduplicated and sorted."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    config = config or GntConfig()
    if mode == "brute":
        models = enumerate_stable_models(p, cap)
        if not enumerate_all:
            models = models[:1]
        return SolveResult(models, GntStats(), SolverStats())

    search = _GntSearch(_GENERATORS[mode](p), p, config)
    seen = set()
    models = []
    for n in search.run():
        m = n & p.base
        if m not in seen:
            seen.add(m)
            models.append(m)
        if not enumerate_all:
            break
    models.sort(key=lambda s: sorted(a.text for a in s))
    solver_stats = SolverStats()
    solver_stats.merge(search.generator.stats)
    solver_stats.merge(search.test_solver_stats)
    return SolveResult(models, search.stats, solver_stats)
