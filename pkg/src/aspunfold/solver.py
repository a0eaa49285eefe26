"""Backtracking stable-model search for normal programs.

Propagation combines forward/backward unit rules over body counters with
falsification of the greatest unfounded set, computed as the complement of a
"can still be derived" least fixpoint.  Every literal added by expand holds
in every stable model of the program agreeing with the current assignment,
so a covered conflict-free fixpoint is exactly a stable model.

Branching follows the negative-phase-first skeleton: pick the undefined atom
occurring in the most not-yet-satisfied rules (ties lexicographic), try
``not x`` before ``x``, and on finding a model emit it and backtrack as if
conflicted.  Chronological backtracking, no learning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .syntax import Atom, Literal, Program

TRUE = 1
FALSE = 0
UNDEF = -1


@dataclass
class SolverStats:
    choices: int = 0
    conflicts: int = 0
    expansions: int = 0

    def merge(self, other: "SolverStats") -> None:
        self.choices += other.choices
        self.conflicts += other.conflicts
        self.expansions += other.expansions


@dataclass
class SolverConfig:
    lookahead: bool = False


@dataclass(frozen=True)
class ExpandResult:
    literals: frozenset[Literal]
    conflict: bool


class Solver:
    """Resumable enumeration of the stable models of one normal program
    consistent with an initial assignment.  Single-threaded while searching."""

    def __init__(
        self,
        program: Program,
        config: Optional[SolverConfig] = None,
        assumptions: Iterable[Literal] = (),
    ):
        if not program.is_normal:
            raise ValueError("solver requires a normal program")
        self.program = program
        self.config = config or SolverConfig()
        self.stats = SolverStats()

        self.atoms: list[Atom] = sorted(program.base)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        n = len(self.atoms)

        self.r_head: list[int] = []
        self.r_pos: list[tuple[int, ...]] = []
        self.r_neg: list[tuple[int, ...]] = []
        self.r_size: list[int] = []
        self.occ_pos: list[list[int]] = [[] for _ in range(n)]
        self.occ_neg: list[list[int]] = [[] for _ in range(n)]
        self.occ_head: list[list[int]] = [[] for _ in range(n)]
        for r in program.rules:
            ridx = len(self.r_head)
            (head,) = r.head
            h = self.index[head]
            pos = tuple(sorted(self.index[a] for a in r.pos))
            neg = tuple(sorted(self.index[a] for a in r.neg))
            self.r_head.append(h)
            self.r_pos.append(pos)
            self.r_neg.append(neg)
            self.r_size.append(len(pos) + len(neg))
            self.occ_head[h].append(ridx)
            for b in pos:
                self.occ_pos[b].append(ridx)
            for c in neg:
                self.occ_neg[c].append(ridx)
        self.occ_all: list[list[int]] = [
            sorted(set(self.occ_head[a] + self.occ_pos[a] + self.occ_neg[a]))
            for a in range(n)
        ]

        self.val = [UNDEF] * n
        self.n_assigned = 0
        self.trail: list[int] = []
        self.n_true = [0] * len(self.r_head)
        self.n_false = [0] * len(self.r_head)
        self.active = [len(self.occ_head[a]) for a in range(n)]
        self._queue: list[tuple[int, int]] = []
        self._conflict = False
        self._cyclic = self._has_positive_cycle()

        self._initial: list[tuple[int, int]] = []
        for ridx, size in enumerate(self.r_size):
            if size == 0:
                self._initial.append((self.r_head[ridx], TRUE))
        for a in range(n):
            if self.active[a] == 0:
                self._initial.append((a, FALSE))
        for lit in assumptions:
            if lit.atom not in self.index:
                raise ValueError(f"assumption atom {lit.atom.text} not in program base")
            self._initial.append((self.index[lit.atom], TRUE if lit.positive else FALSE))

        self._gen: Optional[Iterator[frozenset[Atom]]] = None

    def _has_positive_cycle(self) -> bool:
        # DFS over head -> positive-body edges; cycles require the unfounded pass.
        n = len(self.atoms)
        adj: list[set[int]] = [set() for _ in range(n)]
        for ridx, h in enumerate(self.r_head):
            adj[h].update(self.r_pos[ridx])
        state = [0] * n  # 0 unseen, 1 on stack, 2 done
        for root in range(n):
            if state[root]:
                continue
            stack = [(root, iter(adj[root]))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if state[nxt] == 1:
                        return True
                    if state[nxt] == 0:
                        state[nxt] = 1
                        stack.append((nxt, iter(adj[nxt])))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack.pop()
        return False

    # -- assignment and unit propagation -----------------------------------

    def _push(self, a: int, v: int) -> None:
        self._queue.append((a, v))

    def _set(self, a: int, v: int) -> bool:
        cur = self.val[a]
        if cur != UNDEF:
            if cur == v:
                return True
            self._conflict = True
            return False
        self.val[a] = v
        self.trail.append(a)
        self.n_assigned += 1
        if v == TRUE:
            for r in self.occ_pos[a]:
                self.n_true[r] += 1
                self._body_progress(r)
            for r in self.occ_neg[a]:
                self.n_false[r] += 1
                if self.n_false[r] == 1:
                    self._body_first_false(r)
            self._head_true(a)
        else:
            for r in self.occ_pos[a]:
                self.n_false[r] += 1
                if self.n_false[r] == 1:
                    self._body_first_false(r)
            for r in self.occ_neg[a]:
                self.n_true[r] += 1
                self._body_progress(r)
            for r in self.occ_head[a]:
                self._head_false_rule(r)
        return True

    def _body_progress(self, r: int) -> None:
        if self.n_false[r]:
            return
        if self.n_true[r] == self.r_size[r]:
            self._push(self.r_head[r], TRUE)
        elif self.val[self.r_head[r]] == FALSE and self.r_size[r] - self.n_true[r] == 1:
            self._falsify_last_literal(r)

    def _body_first_false(self, r: int) -> None:
        h = self.r_head[r]
        self.active[h] -= 1
        if self.active[h] == 0:
            self._push(h, FALSE)
        elif self.active[h] == 1 and self.val[h] == TRUE:
            self._force_single_support(h)

    def _head_true(self, a: int) -> None:
        if self.active[a] == 0:
            self._conflict = True
        elif self.active[a] == 1:
            self._force_single_support(a)

    def _head_false_rule(self, r: int) -> None:
        if self.n_false[r]:
            return
        if self.n_true[r] == self.r_size[r]:
            self._conflict = True
        elif self.r_size[r] - self.n_true[r] == 1:
            self._falsify_last_literal(r)

    def _force_single_support(self, a: int) -> None:
        for r in self.occ_head[a]:
            if self.n_false[r] == 0:
                for b in self.r_pos[r]:
                    if self.val[b] == UNDEF:
                        self._push(b, TRUE)
                for c in self.r_neg[r]:
                    if self.val[c] == UNDEF:
                        self._push(c, FALSE)
                return

    def _falsify_last_literal(self, r: int) -> None:
        for b in self.r_pos[r]:
            if self.val[b] == UNDEF:
                self._push(b, FALSE)
                return
        for c in self.r_neg[r]:
            if self.val[c] == UNDEF:
                self._push(c, TRUE)
                return

    def _unit_propagate(self) -> bool:
        while self._queue:
            a, v = self._queue.pop()
            if not self._set(a, v):
                self._queue.clear()
                return False
            if self._conflict:
                self._queue.clear()
                return False
        return True

    # -- unfounded-set falsification ----------------------------------------

    def _unfounded_pass(self) -> tuple[bool, bool]:
        """Falsify atoms outside the can-still-be-derived closure.

        Returns (ok, changed)."""
        rem = []
        blocked = []
        stack = []
        for r in range(len(self.r_head)):
            pos = self.r_pos[r]
            bad = any(self.val[b] == FALSE for b in pos) or any(
                self.val[c] == TRUE for c in self.r_neg[r]
            )
            blocked.append(bad)
            rem.append(len(pos))
            if not bad and not pos:
                stack.append(r)
        derivable = [False] * len(self.atoms)
        while stack:
            r = stack.pop()
            h = self.r_head[r]
            if derivable[h]:
                continue
            derivable[h] = True
            for r2 in self.occ_pos[h]:
                if blocked[r2]:
                    continue
                rem[r2] -= 1
                if rem[r2] == 0 and not derivable[self.r_head[r2]]:
                    stack.append(r2)
        changed = False
        for a, d in enumerate(derivable):
            if not d and self.val[a] != FALSE:
                changed = True
                self._push(a, FALSE)
        if changed and not self._unit_propagate():
            return False, True
        return True, changed

    # -- expand / lookahead ---------------------------------------------------

    def _expand(self) -> bool:
        self.stats.expansions += 1
        if not self._unit_propagate():
            return False
        if not self._cyclic:
            return True
        while True:
            ok, changed = self._unfounded_pass()
            if not ok:
                return False
            if not changed:
                return True

    def _probe(self, a: int, v: int) -> bool:
        """Whether assigning a:=v expands without conflict (state restored)."""
        mark = len(self.trail)
        self._push(a, v)
        ok = self._expand()
        self._undo_to(mark)
        return ok

    def _lookahead_fixpoint(self) -> bool:
        while True:
            progress = False
            for a in range(len(self.atoms)):
                if self.val[a] != UNDEF:
                    continue
                if not self._probe(a, TRUE):
                    self._push(a, FALSE)
                    if not self._expand():
                        return False
                    progress = True
                elif not self._probe(a, FALSE):
                    self._push(a, TRUE)
                    if not self._expand():
                        return False
                    progress = True
            if not progress:
                return True

    def _extend(self) -> bool:
        if not self._expand():
            return False
        if self.config.lookahead:
            return self._lookahead_fixpoint()
        return True

    # -- backtracking -----------------------------------------------------------

    def _undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            a = self.trail.pop()
            v = self.val[a]
            self.val[a] = UNDEF
            self.n_assigned -= 1
            if v == TRUE:
                for r in self.occ_pos[a]:
                    self.n_true[r] -= 1
                for r in self.occ_neg[a]:
                    self.n_false[r] -= 1
                    if self.n_false[r] == 0:
                        self.active[self.r_head[r]] += 1
            else:
                for r in self.occ_pos[a]:
                    self.n_false[r] -= 1
                    if self.n_false[r] == 0:
                        self.active[self.r_head[r]] += 1
                for r in self.occ_neg[a]:
                    self.n_true[r] -= 1
        self._queue.clear()
        self._conflict = False

    # -- search -----------------------------------------------------------------

    def _rule_satisfied(self, r: int) -> bool:
        return self.val[self.r_head[r]] == TRUE or self.n_false[r] > 0

    def _choose(self) -> int:
        best, best_count = -1, -1
        for a in range(len(self.atoms)):
            if self.val[a] != UNDEF:
                continue
            count = sum(1 for r in self.occ_all[a] if not self._rule_satisfied(r))
            if count > best_count:
                best, best_count = a, count
        if best < 0:
            raise RuntimeError("no undefined atom to branch on")
        return best

    @property
    def covered(self) -> bool:
        return self.n_assigned == len(self.atoms)

    def _model(self) -> frozenset[Atom]:
        return frozenset(a for a, i in self.index.items() if self.val[i] == TRUE)

    def _search(self, to_assign: list[tuple[int, int]]) -> Iterator[frozenset[Atom]]:
        mark = len(self.trail)
        for a, v in to_assign:
            self._push(a, v)
        if not self._extend():
            self.stats.conflicts += 1
            self._undo_to(mark)
            return
        if self.covered:
            yield self._model()
            self._undo_to(mark)
            return
        x = self._choose()
        self.stats.choices += 1
        yield from self._search([(x, FALSE)])
        yield from self._search([(x, TRUE)])
        self._undo_to(mark)

    def models(self) -> Iterator[frozenset[Atom]]:
        if self._gen is None:
            self._gen = self._search(list(self._initial))
        return self._gen

    def next_stable_model(self) -> Optional[frozenset[Atom]]:
        return next(self.models(), None)

    def all_models(self) -> list[frozenset[Atom]]:
        return sorted(self.models(), key=lambda s: sorted(a.text for a in s))

    # -- driver hooks (used by the generate-and-test search) ---------------------

    def mark(self) -> int:
        return len(self.trail)

    def assign_and_expand(self, pairs: Iterable[tuple[Atom, bool]]) -> bool:
        for atom, value in pairs:
            self._push(self.index[atom], TRUE if value else FALSE)
        return self._expand()

    def assign_and_extend(self, pairs: Iterable[tuple[Atom, bool]]) -> bool:
        for atom, value in pairs:
            self._push(self.index[atom], TRUE if value else FALSE)
        return self._extend()

    def undo_to(self, mark: int) -> None:
        self._undo_to(mark)

    def pick_atom(self) -> Atom:
        a = self._choose()
        self.stats.choices += 1
        return self.atoms[a]

    def true_atoms(self) -> frozenset[Atom]:
        return self._model()


# ---------------------------------------------------------------------------
# Functional surface over a throwaway solver instance.

def _run(program: Program, literals: Iterable[Literal], config: SolverConfig) -> tuple[Solver, bool]:
    s = Solver(program, config=config, assumptions=literals)
    for a, v in s._initial:
        s._push(a, v)
    ok = s._extend()
    return s, ok


def _result(s: Solver, ok: bool) -> ExpandResult:
    lits = frozenset(
        Literal(s.atoms[a], s.val[a] == TRUE)
        for a in range(len(s.atoms))
        if s.val[a] != UNDEF
    )
    return ExpandResult(lits, not ok)


def expand(program: Program, literals: Iterable[Literal] = ()) -> ExpandResult:
    s = Solver(program, assumptions=literals)
    for a, v in s._initial:
        s._push(a, v)
    return _result(s, s._expand())


def lookahead(program: Program, literals: Iterable[Literal] = ()) -> ExpandResult:
    return extend(program, literals, SolverConfig(lookahead=True))


def extend(
    program: Program,
    literals: Iterable[Literal] = (),
    config: Optional[SolverConfig] = None,
) -> ExpandResult:
    s, ok = _run(program, literals, config or SolverConfig())
    return _result(s, ok)


def conflict(literals: Iterable[Literal]) -> bool:
    """Whether the literal set contains a complementary pair."""
    lits = set(literals)
    return any(Literal(l.atom, not l.positive) in lits for l in lits)


def heuristic(program: Program, literals: Iterable[Literal] = ()) -> Atom:
    """The undefined atom occurring in the most not-yet-satisfied rules."""
    s = Solver(program)
    for lit in literals:
        if not s._set(s.index[lit.atom], TRUE if lit.positive else FALSE) or s._conflict:
            raise ValueError("conflicting literals")
    s._queue.clear()
    return s.atoms[s._choose()]
