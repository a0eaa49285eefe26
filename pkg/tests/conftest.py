import random

import hypothesis
from hypothesis import strategies as st

from aspunfold.syntax import Atom, F_ATOM, Program, Rule

hypothesis.settings.register_profile("det", derandomize=True, max_examples=60)
hypothesis.settings.load_profile("det")

ATOM_POOL = tuple(Atom(ch) for ch in "abcdef")


def random_normal_program(seed, max_atoms=6, max_rules=10, constraints=True):
    rng = random.Random(("normal", seed).__repr__())
    atoms = list(ATOM_POOL[: rng.randint(1, max_atoms)])
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        if constraints and rng.random() < 0.15:
            head, extra = F_ATOM, frozenset([F_ATOM])
        else:
            head, extra = rng.choice(atoms), frozenset()
        pos = frozenset(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        neg = frozenset(rng.sample(atoms, rng.randint(0, min(2, len(atoms))))) | extra
        rules.append(Rule(frozenset([head]), pos, neg))
    return Program(tuple(rules), base=frozenset(atoms))


def random_disjunctive_program(seed, max_atoms=6, max_rules=8, constraints=True):
    rng = random.Random(("disj", seed).__repr__())
    atoms = list(ATOM_POOL[: rng.randint(2, max_atoms)])
    rules = []
    for k in range(rng.randint(1, max_rules)):
        if constraints and k > 0 and rng.random() < 0.12:
            head, extra = frozenset([F_ATOM]), frozenset([F_ATOM])
        else:
            size = rng.randint(2, 3) if k == 0 else rng.randint(1, 3)
            head = frozenset(rng.sample(atoms, min(size, len(atoms))))
            extra = frozenset()
        pos = frozenset(rng.sample(atoms, rng.randint(0, 2)))
        neg = frozenset(rng.sample(atoms, rng.randint(0, 2))) | extra
        rules.append(Rule(head, pos, neg))
    if all(len(r.head) < 2 for r in rules):
        rules[0] = Rule(frozenset(atoms[:2]), rules[0].pos, rules[0].neg)
    return Program(tuple(rules), base=frozenset(atoms))


def random_positive_program(seed, max_atoms=5, max_rules=6):
    rng = random.Random(("pos", seed).__repr__())
    atoms = list(ATOM_POOL[: rng.randint(1, max_atoms)])
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        head = frozenset(rng.sample(atoms, rng.randint(1, min(3, len(atoms)))))
        pos = frozenset(rng.sample(atoms, rng.randint(0, min(2, len(atoms)))))
        rules.append(Rule(head, pos, frozenset()))
    return Program(tuple(rules), base=frozenset(atoms))


def random_partial_interpretation(rng, base):
    from aspunfold.semantics import PartialInterpretation

    t, f = set(), set()
    for a in sorted(base):  # sorted so the draw order is hash-independent
        r = rng.random()
        if r < 1 / 3:
            t.add(a)
        elif r < 2 / 3:
            f.add(a)
    return PartialInterpretation(frozenset(t), frozenset(f), frozenset(base))


def random_total_interpretation(rng, base):
    from aspunfold.semantics import PartialInterpretation

    return PartialInterpretation.total(
        frozenset(a for a in sorted(base) if rng.random() < 0.5), frozenset(base)
    )


# hypothesis strategies over the same shapes

atom_st = st.sampled_from(ATOM_POOL)
atom_set_st = st.frozensets(atom_st, max_size=4)


@st.composite
def rule_st(draw):
    head = draw(st.frozensets(atom_st, min_size=1, max_size=3))
    return Rule(head, draw(atom_set_st), draw(atom_set_st))


@st.composite
def program_st(draw):
    rules = draw(st.lists(rule_st(), max_size=8))
    return Program(tuple(rules))


@st.composite
def interpretation_st(draw, base=ATOM_POOL):
    from aspunfold.semantics import PartialInterpretation

    t, f = set(), set()
    for a in base:
        bucket = draw(st.integers(0, 2))
        if bucket == 0:
            t.add(a)
        elif bucket == 1:
            f.add(a)
    return PartialInterpretation(frozenset(t), frozenset(f), frozenset(base))
