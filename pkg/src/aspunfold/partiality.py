"""Capturing partial stable models by total ones.

The translation doubles every rule: the original with its negative literals
redirected to potential-marked atoms, and a fully marked copy with the
original negative literals, plus a consistency rule ``p__a :- a`` per base
atom.  Truth of the pair (a, p__a) codes three-valued truth of a: both true
is true, both false is false, only the mark true is undefined; mark false
with atom true is ruled out by the consistency rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .semantics import PartialInterpretation, UnknownAtomError
from .syntax import Atom, F_ATOM, Literal, Marker, Program, Rule, potential


def _reject_potential(p: Program, what: str) -> None:
    marked = sorted(a for a in p.base if a.marker is Marker.POTENTIAL)
    if marked:
        raise ValueError(f"{what}: potential-marked atoms present ({marked[0].text}, ...)")


def unfold_partiality(p: Program) -> Program:
    _reject_potential(p, "unfold_partiality")
    rules = []
    for r in p.rules:
        rules.append(Rule(r.head, r.pos, frozenset(potential(c) for c in r.neg)))
        rules.append(
            Rule(
                frozenset(potential(a) for a in r.head),
                frozenset(potential(b) for b in r.pos),
                r.neg,
            )
        )
    for a in sorted(p.base):
        rules.append(Rule(frozenset([potential(a)]), frozenset([a]), frozenset()))
    return Program(tuple(rules), base=p.base | {potential(a) for a in p.base})


def expand_psm(m: PartialInterpretation) -> frozenset[Atom]:
    """Total interpretation of the translation coding m: T plus marked T-and-undefined."""
    return m.true_set | {potential(a) for a in m.true_set | m.undef_set}


def project_sm(true_atoms: Iterable[Atom], plain_base: Iterable[Atom]) -> PartialInterpretation:
    """Read a total model of the translation back as a partial interpretation."""
    n = frozenset(true_atoms)
    base = frozenset(plain_base)
    t, f = set(), set()
    for a in base:
        in_n = a in n
        mark_in_n = potential(a) in n
        if in_n and not mark_in_n:
            raise ValueError(f"atom {a.text} true without its potential mark")
        if in_n:
            t.add(a)
        elif not mark_in_n:
            f.add(a)
    return PartialInterpretation(frozenset(t), frozenset(f), base)


@dataclass(frozen=True)
class QueryLiterals:
    literals: frozenset[Literal]

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", frozenset(self.literals))
        atoms = {l.atom for l in self.literals}
        for a in atoms:
            if Literal(a, True) in self.literals and Literal(a, False) in self.literals:
                raise ValueError(f"query contains complementary pair on {a.text}")

    @property
    def atoms(self) -> frozenset[Atom]:
        return frozenset(l.atom for l in self.literals)


def translate_query(q: QueryLiterals) -> QueryLiterals:
    marked = {Literal(potential(l.atom), l.positive) for l in q.literals}
    return QueryLiterals(q.literals | marked)


def tr2_program(p: Program) -> Program:
    """Translation variant whose flag atom detects leftover undefined atoms."""
    if F_ATOM in p.base:
        raise ValueError("tr2 requires the reserved atom __f to be fresh")
    trp = unfold_partiality(p)
    extra = tuple(
        Rule(frozenset([F_ATOM]), frozenset([potential(a)]), frozenset([a]))
        for a in sorted(p.base)
    )
    return Program(trp.rules + extra, base=trp.base | {F_ATOM})


def tr2_query(q: QueryLiterals) -> QueryLiterals:
    return QueryLiterals(q.literals | {Literal(F_ATOM, False)})


def query_constraint_rules(q: QueryLiterals) -> tuple[Rule, ...]:
    """Constraint rules forcing every literal of q true in a stable model."""
    rules = []
    for lit in sorted(q.literals):
        if lit.positive:
            rules.append(Rule(frozenset([F_ATOM]), frozenset(), frozenset([F_ATOM, lit.atom])))
        else:
            rules.append(Rule(frozenset([F_ATOM]), frozenset([lit.atom]), frozenset([F_ATOM])))
    return tuple(rules)


SolveFn = Callable[[Program], Optional[frozenset[Atom]]]


def _default_solve(mode: str) -> SolveFn:
    from .gnt import solve_disjunctive
    from .solver import Solver

    def run(g: Program) -> Optional[frozenset[Atom]]:
        if g.is_normal:
            return Solver(g).next_stable_model()
        result = solve_disjunctive(g, mode=mode)
        return result.models[0] if result.models else None

    return run


def possibility_query(
    p: Program,
    q: QueryLiterals,
    solve: Optional[SolveFn] = None,
    mode: str = "gnt2",
) -> tuple[bool, Optional[PartialInterpretation]]:
    """Whether some partial stable model of p satisfies every literal of q.

    Returns the witnessing model alongside the verdict.  Atoms used only in
    the query are rejected rather than silently added to the base.
    """
    unknown = sorted(q.atoms - p.base)
    if unknown:
        raise UnknownAtomError(f"query atom {unknown[0].text} not in program base")
    solve = solve or _default_solve(mode)
    trp = unfold_partiality(p)
    augmented = Program(
        trp.rules + query_constraint_rules(translate_query(q)),
        base=trp.base | {F_ATOM},
    )
    n = solve(augmented)
    if n is None:
        return False, None
    return True, project_sm(n, p.base)


def query_by_filter(
    p: Program, q: QueryLiterals, cap: int = 12
) -> tuple[bool, Optional[PartialInterpretation]]:
    """Oracle fallback: enumerate partial stable models and test the query directly."""
    from .semantics import enumerate_partial_stable_models, eval_conj, TruthValue

    unknown = sorted(q.atoms - p.base)
    if unknown:
        raise UnknownAtomError(f"query atom {unknown[0].text} not in program base")
    for m in enumerate_partial_stable_models(p, cap):
        if eval_conj(m, q.literals) is TruthValue.TRUE:
            return True, m
    return False, None
