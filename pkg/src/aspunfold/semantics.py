"""Brute-force reference semantics: three-valued evaluation, reducts,
unfounded sets, stable and partial stable models.

Everything here is exact and enumerative, guarded by an atom cap (default 12);
exceeding the cap raises instead of truncating.  Interpretations are compiled
to bitmasks internally so the enumerations stay affordable at desk scale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .syntax import Atom, Literal, Program, Rule

DEFAULT_CAP = 12


class CapExceededError(RuntimeError):
    pass


class UnknownAtomError(ValueError):
    pass


def _require_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(f"{what}: {n} atoms exceeds enumeration cap {cap}")


class TruthValue(enum.IntEnum):
    FALSE = 0
    UNDEF = 1
    TRUE = 2

    @property
    def symbol(self) -> str:
        return {0: "f", 1: "u", 2: "t"}[int(self)]


@dataclass(frozen=True)
class PartialInterpretation:
    """Disjoint true/false atom sets over a Herbrand base; the rest is undefined."""

    true_set: frozenset[Atom]
    false_set: frozenset[Atom]
    base: frozenset[Atom]

    def __post_init__(self) -> None:
        object.__setattr__(self, "true_set", frozenset(self.true_set))
        object.__setattr__(self, "false_set", frozenset(self.false_set))
        object.__setattr__(self, "base", frozenset(self.base))
        if self.true_set & self.false_set:
            raise ValueError("true_set and false_set must be disjoint")
        if not (self.true_set | self.false_set) <= self.base:
            raise ValueError("true_set and false_set must be subsets of the base")

    @classmethod
    def total(cls, true_atoms: Iterable[Atom], base: Iterable[Atom]) -> "PartialInterpretation":
        t = frozenset(true_atoms)
        b = frozenset(base)
        return cls(t, b - t, b)

    @classmethod
    def empty(cls, base: Iterable[Atom]) -> "PartialInterpretation":
        return cls(frozenset(), frozenset(), frozenset(base))

    @property
    def undef_set(self) -> frozenset[Atom]:
        return self.base - self.true_set - self.false_set

    @property
    def is_total(self) -> bool:
        return not self.undef_set

    def value(self, atom: Atom) -> TruthValue:
        if atom not in self.base:
            raise UnknownAtomError(f"atom {atom.text} not in base")
        if atom in self.true_set:
            return TruthValue.TRUE
        if atom in self.false_set:
            return TruthValue.FALSE
        return TruthValue.UNDEF

    def literal_value(self, lit: Literal) -> TruthValue:
        v = self.value(lit.atom)
        return v if lit.positive else TruthValue(2 - int(v))

    def leq_truth(self, other: "PartialInterpretation") -> bool:
        """M1 <= M2 iff T1 <= T2 and F1 >= F2."""
        return self.true_set <= other.true_set and self.false_set >= other.false_set

    def lt_truth(self, other: "PartialInterpretation") -> bool:
        return self.leq_truth(other) and self != other

    def leq_knowledge(self, other: "PartialInterpretation") -> bool:
        """Componentwise inclusion: T1 <= T2 and F1 <= F2."""
        return self.true_set <= other.true_set and self.false_set <= other.false_set


def eval_conj(i: PartialInterpretation, literals: Iterable[Literal]) -> TruthValue:
    v = TruthValue.TRUE
    for lit in literals:
        v = min(v, i.literal_value(lit))
    return v


def eval_disj(i: PartialInterpretation, atoms: Iterable[Atom]) -> TruthValue:
    v = TruthValue.FALSE
    for a in atoms:
        v = max(v, i.value(a))
    return v


def satisfies(i: PartialInterpretation, rule: Rule) -> bool:
    return eval_disj(i, rule.head) >= eval_conj(i, rule.body_literals())


def is_partial_model(i: PartialInterpretation, p: Program) -> bool:
    return all(satisfies(i, r) for r in p.rules)


def is_total_model(i: PartialInterpretation, p: Program) -> bool:
    return i.is_total and is_partial_model(i, p)


def gl_reduct(p: Program, i: PartialInterpretation) -> Program:
    """Rules with false negative body, negative literals deleted (positive program)."""
    kept = tuple(
        Rule(r.head, r.pos, frozenset()) for r in p.rules if r.neg <= i.false_set
    )
    return Program(kept, base=p.base)


@dataclass(frozen=True)
class ReducedRule:
    """Rule of the three-valued reduct: negative literals folded to a constant.

    A rule whose negative part folds to false is inert: its body value is f,
    so it never constrains models.
    """

    head: frozenset[Atom]
    pos_body: frozenset[Atom]
    const_body: TruthValue

    @property
    def is_inert(self) -> bool:
        return self.const_body is TruthValue.FALSE


def tv_reduct(p: Program, m: PartialInterpretation) -> list[ReducedRule]:
    out = []
    for r in p.rules:
        const = eval_conj(m, (Literal(c, False) for c in r.neg))
        out.append(ReducedRule(r.head, r.pos, const))
    return out


def reduced_satisfies(i: PartialInterpretation, rr: ReducedRule) -> bool:
    body = min(eval_conj(i, (Literal(b, True) for b in rr.pos_body)), rr.const_body)
    return eval_disj(i, rr.head) >= body


def is_partial_model_of_reduct(i: PartialInterpretation, rrs: Sequence[ReducedRule]) -> bool:
    return all(reduced_satisfies(i, rr) for rr in rrs)


# ---------------------------------------------------------------------------
# Bitmask internals.  Atom order is the sorted rendering order, so every
# enumeration below is deterministic.

@dataclass
class _Masks:
    atoms: list[Atom]
    index: dict[Atom, int]
    rules: list[tuple[int, int, int]]  # (head, pos, neg) masks
    full: int


def _compile(p: Program) -> _Masks:
    atoms = sorted(p.base)
    index = {a: i for i, a in enumerate(atoms)}
    rules = []
    for r in p.rules:
        h = sum(1 << index[a] for a in r.head)
        b = sum(1 << index[a] for a in r.pos)
        n = sum(1 << index[a] for a in r.neg)
        rules.append((h, b, n))
    return _Masks(atoms, index, rules, (1 << len(atoms)) - 1)


def _mask(ms: _Masks, atoms: Iterable[Atom]) -> int:
    m = 0
    for a in atoms:
        try:
            m |= 1 << ms.index[a]
        except KeyError:
            raise UnknownAtomError(f"atom {a.text} not in base")
    return m


def _atoms_of(ms: _Masks, mask: int) -> frozenset[Atom]:
    return frozenset(a for i, a in enumerate(ms.atoms) if mask >> i & 1)


def _conj_value(pos: int, neg: int, t: int, f: int) -> int:
    if pos & f or neg & t:
        return 0
    if pos & t == pos and neg & f == neg:
        return 2
    return 1


def _disj_value(head: int, t: int, f: int) -> int:
    if head & t:
        return 2
    if head & f == head:
        return 0
    return 1


def _is_partial_model_masks(ms: _Masks, t: int, f: int) -> bool:
    for h, b, n in ms.rules:
        if _disj_value(h, t, f) < _conj_value(b, n, t, f):
            return False
    return True


def _submasks(m: int) -> Iterator[int]:
    """All submasks of m, descending, m itself first and 0 last."""
    sub = m
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & m


def _total_model_of(rules: list[tuple[int, int]], t: int) -> bool:
    for h, b in rules:
        if b & t == b and not h & t:
            return False
    return True


def _is_stable_masks(ms: _Masks, t: int) -> bool:
    reduct = [(h, b) for h, b, n in ms.rules if not n & t]
    if not _total_model_of(reduct, t):
        return False
    for sub in _submasks(t):
        if sub != t and _total_model_of(reduct, sub):
            return False
    return True


def _reduced_rules_masks(ms: _Masks, t: int, f: int) -> list[tuple[int, int, int]]:
    out = []
    for h, b, n in ms.rules:
        if n & t:
            const = 0
        elif n & f == n:
            const = 2
        else:
            const = 1
        out.append((h, b, const))
    return out


def _partial_model_of_reduct(rrs: list[tuple[int, int, int]], t: int, f: int) -> bool:
    for h, b, const in rrs:
        body = min(_conj_value(b, 0, t, f), const)
        if _disj_value(h, t, f) < body:
            return False
    return True


def _weaker_interps(t: int, f: int, full: int) -> Iterator[tuple[int, int]]:
    """All (t', f') strictly below (t, f) in the truth ordering."""
    bits = [1 << i for i in range(full.bit_length()) if full >> i & 1]
    # per-atom options as (t-bit, f-bit) contributions
    options = []
    for bit in bits:
        if bit & t:
            options.append(((bit, 0), (0, bit), (0, 0)))
        elif bit & f:
            options.append(((0, bit),))
        else:
            options.append(((0, bit), (0, 0)))

    def rec(i: int, ct: int, cf: int) -> Iterator[tuple[int, int]]:
        if i == len(options):
            if (ct, cf) != (t, f):
                yield ct, cf
            return
        for dt, df in options[i]:
            yield from rec(i + 1, ct | dt, cf | df)

    yield from rec(0, 0, 0)


def _is_psm_masks(ms: _Masks, t: int, f: int) -> bool:
    rrs = _reduced_rules_masks(ms, t, f)
    if not _partial_model_of_reduct(rrs, t, f):
        return False
    for t2, f2 in _weaker_interps(t, f, ms.full):
        if _partial_model_of_reduct(rrs, t2, f2):
            return False
    return True


def _unfounded_masks(ms: _Masks, t: int, f: int, u: int) -> bool:
    undef = ms.full & ~t & ~f
    for h, b, n in ms.rules:
        if not h & u:
            continue
        if b & f or n & t:  # UF1
            continue
        if b & u:  # UF2
            continue
        if h & ~u & (t | undef):  # UF3
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# Public oracle operations.

def is_stable_model(p: Program, n: PartialInterpretation, cap: int = DEFAULT_CAP) -> bool:
    if not n.is_total:
        raise ValueError("stable-model check requires a total interpretation")
    _require_cap(len(n.true_set), cap, "stable-model minimality check")
    ms = _compile(p)
    return _is_stable_masks(ms, _mask(ms, n.true_set))


def is_partial_stable_model(p: Program, m: PartialInterpretation, cap: int = DEFAULT_CAP) -> bool:
    _require_cap(len(p.base), cap, "partial-stable-model check")
    ms = _compile(p)
    return _is_psm_masks(ms, _mask(ms, m.true_set), _mask(ms, m.false_set))


def enumerate_stable_models(p: Program, cap: int = DEFAULT_CAP) -> list[frozenset[Atom]]:
    _require_cap(len(p.base), cap, "stable-model enumeration")
    ms = _compile(p)
    out = []
    for t in range(ms.full + 1):
        if _is_stable_masks(ms, t):
            out.append(_atoms_of(ms, t))
    return sorted(out, key=lambda s: sorted(a.text for a in s))


def enumerate_partial_stable_models(p: Program, cap: int = DEFAULT_CAP) -> list[PartialInterpretation]:
    _require_cap(len(p.base), cap, "partial-stable-model enumeration")
    ms = _compile(p)
    out = []
    for t in range(ms.full + 1):
        rest = ms.full & ~t
        for f in _submasks(rest):
            if _is_psm_masks(ms, t, f):
                out.append(
                    PartialInterpretation(_atoms_of(ms, t), _atoms_of(ms, f), p.base)
                )
    return sorted(
        out,
        key=lambda m: (sorted(a.text for a in m.true_set), sorted(a.text for a in m.false_set)),
    )


def is_unfounded_set(p: Program, i: PartialInterpretation, u: Iterable[Atom]) -> bool:
    u = frozenset(u)
    if not u <= p.base:
        raise UnknownAtomError("unfounded-set candidate contains atoms outside the base")
    ms = _compile(p)
    return _unfounded_masks(ms, _mask(ms, i.true_set), _mask(ms, i.false_set), _mask(ms, u))


def is_consistent_unfounded(u: Iterable[Atom], i: PartialInterpretation) -> bool:
    return not frozenset(u) & i.true_set


def unfounded_sets(
    p: Program, i: PartialInterpretation, cap: int = DEFAULT_CAP
) -> Iterator[frozenset[Atom]]:
    """All unfounded sets w.r.t. i, the empty set included."""
    _require_cap(len(p.base), cap, "unfounded-set enumeration")
    ms = _compile(p)
    t, f = _mask(ms, i.true_set), _mask(ms, i.false_set)
    for u in range(ms.full + 1):
        if _unfounded_masks(ms, t, f, u):
            yield _atoms_of(ms, u)


def greatest_unfounded_set(
    p: Program, i: PartialInterpretation, cap: int = DEFAULT_CAP
) -> Optional[frozenset[Atom]]:
    """Union of all unfounded sets if that union is itself unfounded, else None."""
    _require_cap(len(p.base), cap, "greatest-unfounded-set search")
    ms = _compile(p)
    t, f = _mask(ms, i.true_set), _mask(ms, i.false_set)
    union = 0
    for u in range(ms.full + 1):
        if u & ~union and _unfounded_masks(ms, t, f, u):
            union |= u
    if _unfounded_masks(ms, t, f, union):
        return _atoms_of(ms, union)
    return None


def is_unfounded_free(p: Program, n: PartialInterpretation, cap: int = DEFAULT_CAP) -> bool:
    if not n.is_total:
        raise ValueError("unfounded-freeness is defined for total interpretations")
    _require_cap(len(p.base), cap, "unfounded-freeness check")
    ms = _compile(p)
    t, f = _mask(ms, n.true_set), _mask(ms, n.false_set)
    for u in range(1, ms.full + 1):
        if u & t and _unfounded_masks(ms, t, f, u):
            return False
    return True


def remove_unfounded(
    p: Program, m: PartialInterpretation, u: Iterable[Atom]
) -> PartialInterpretation:
    """Falsify an unfounded set inside a partial model of a positive program."""
    u = frozenset(u)
    if not p.is_positive:
        raise ValueError("remove_unfounded requires a positive program")
    if not is_partial_model(m, p):
        raise ValueError("interpretation is not a partial model of the program")
    if not is_unfounded_set(p, m, u):
        raise ValueError("set is not unfounded w.r.t. the interpretation")
    if not m.is_total and not is_consistent_unfounded(u, m):
        raise ValueError("unfounded set must be consistent when the model is partial")
    return PartialInterpretation(m.true_set - u, m.false_set | u, m.base)


def check_total_stable(p: Program, n: PartialInterpretation, cap: int = DEFAULT_CAP) -> Optional[str]:
    """None if n is a stable model, otherwise the failed condition."""
    if not n.is_total:
        raise ValueError("expected a total interpretation")
    if not is_total_model(n, p):
        return "rule unsatisfied"
    if not is_stable_model(p, n, cap):
        return "not minimal model of reduct"
    return None


def check_partial_stable(p: Program, m: PartialInterpretation, cap: int = DEFAULT_CAP) -> Optional[str]:
    """None if m is a partial stable model, otherwise the failed condition."""
    _require_cap(len(p.base), cap, "partial-stable-model check")
    rrs = tv_reduct(p, m)
    if not is_partial_model_of_reduct(m, rrs):
        return "rule unsatisfied"
    if is_partial_stable_model(p, m, cap):
        return None
    glred = gl_reduct(p, m)
    tm = PartialInterpretation.total(m.true_set, p.base)
    if not is_total_model(tm, glred) or not _minimal_total_model(glred, m.true_set, cap):
        return "not minimal model of reduct"
    return "unfounded-set condition violated"


def _minimal_total_model(positive: Program, true_atoms: frozenset[Atom], cap: int) -> bool:
    _require_cap(len(true_atoms), cap, "minimal-model check")
    ms = _compile(positive)
    t = _mask(ms, true_atoms)
    rules = [(h, b) for h, b, _ in ms.rules]
    if not _total_model_of(rules, t):
        return False
    return all(sub == t or not _total_model_of(rules, sub) for sub in _submasks(t))


def maximal_models(
    models: Sequence[PartialInterpretation], ordering: str = "truth"
) -> list[PartialInterpretation]:
    """Filter to the maximal elements under the chosen ordering."""
    if ordering == "truth":
        dominated = lambda a, b: a.lt_truth(b)
    elif ordering == "knowledge":
        dominated = lambda a, b: a.leq_knowledge(b) and a != b
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    return [m for m in models if not any(dominated(m, other) for other in models)]


# ---------------------------------------------------------------------------
# Propositional clauses, for the minimal-model benchmark oracle and the
# unsatisfiability reading of the minimality test.

@dataclass(frozen=True)
class Clause:
    """Disjunction of positive atoms `pos` and negated atoms `neg`."""

    pos: frozenset[Atom]
    neg: frozenset[Atom] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.pos | self.neg


def rule_as_clause(rule: Rule) -> Clause:
    """Positive disjunctive rule read as the clause head-or-not-body."""
    if rule.neg:
        raise ValueError("only positive rules can be read as clauses")
    return Clause(rule.head, rule.pos)


def _clause_masks(clauses: Sequence[Clause], atoms: Sequence[Atom]) -> list[tuple[int, int]]:
    index = {a: i for i, a in enumerate(atoms)}
    out = []
    for c in clauses:
        out.append(
            (
                sum(1 << index[a] for a in c.pos),
                sum(1 << index[a] for a in c.neg),
            )
        )
    return out


def clause_atoms(clauses: Sequence[Clause]) -> frozenset[Atom]:
    out: set[Atom] = set()
    for c in clauses:
        out |= c.atoms
    return frozenset(out)


def satisfiable(
    clauses: Sequence[Clause], atoms: Iterable[Atom] = (), cap: int = DEFAULT_CAP
) -> bool:
    """Truth-table satisfiability over the occurring atoms plus any extras."""
    universe = sorted(clause_atoms(clauses) | frozenset(atoms))
    _require_cap(len(universe), cap, "satisfiability check")
    cms = _clause_masks(clauses, universe)
    for m in range(1 << len(universe)):
        if all(p & m or n & ~m for p, n in cms):
            return True
    return False


def minimal_models_containing(
    clauses: Sequence[Clause], specified: Iterable[Atom], cap: int = DEFAULT_CAP
) -> bool:
    """Whether some subset-minimal model of the clauses contains all specified atoms."""
    specified = frozenset(specified)
    universe = sorted(clause_atoms(clauses) | specified)
    _require_cap(len(universe), cap, "minimal-model search")
    cms = _clause_masks(clauses, universe)
    index = {a: i for i, a in enumerate(universe)}
    spec = sum(1 << index[a] for a in specified)

    models = [m for m in range(1 << len(universe)) if all(p & m or n & ~m for p, n in cms)]
    models.sort(key=lambda m: (bin(m).count("1"), m))
    minimal: list[int] = []
    for m in models:
        if not any(mm & m == mm for mm in minimal):
            minimal.append(m)
            if spec & m == spec:
                return True
    return False
