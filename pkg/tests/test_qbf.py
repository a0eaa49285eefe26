import random

import pytest

from aspunfold.bench import (
    BenchParams,
    gen_d3sat_instance,
    gen_random_3sat_clauses,
    gen_random_d3sat,
    gen_random_qbf,
    mm_encode,
)
from aspunfold.gnt import solve_disjunctive
from aspunfold.qbf import (
    NegClause,
    Qbf2E,
    QbfParseError,
    negate_dnf,
    parse_qbf,
    qbf_to_program,
    qbf_valid_oracle,
    render_qbf,
)
from aspunfold.semantics import (
    CapExceededError,
    Clause,
    PartialInterpretation,
    gl_reduct,
    minimal_models_containing,
)
from aspunfold.syntax import (
    Atom,
    F_ATOM,
    Literal,
    Program,
    Rule,
    U_ATOM,
    clause_atom,
    clause_negation_atom,
)

X, Y = Atom("x"), Atom("y")


def lit(a, positive=True):
    return Literal(a, positive)


def test_parse_qbf():
    q = parse_qbf("e x\na y\nx y\nx -y\n")
    assert q.x_vars == (X,) and q.y_vars == (Y,)
    assert set(q.terms) == {
        frozenset([lit(X), lit(Y)]),
        frozenset([lit(X), lit(Y, False)]),
    }


def test_parse_qbf_errors():
    with pytest.raises(QbfParseError):
        parse_qbf("x y\n")  # missing e line
    with pytest.raises(QbfParseError):
        parse_qbf("e x\nx y\n")  # missing a line
    with pytest.raises(QbfParseError):
        parse_qbf("e x\na y\n\nx y\n")  # empty term line
    with pytest.raises(QbfParseError):
        parse_qbf("e x\na x\nx\n")  # shared variable
    with pytest.raises(QbfParseError):
        parse_qbf("e x\na y\nx -x\n")  # complementary pair in a term
    with pytest.raises(QbfParseError):
        parse_qbf("e x\na y\nz\n")  # unquantified variable


def test_qbf_roundtrip():
    q = gen_random_qbf(8, "gw", 5)
    assert parse_qbf(render_qbf(q)) == q


def test_negate_dnf():
    q = parse_qbf("e x\na y\nx y\nx -y\n")
    got = {
        (c.x_pos, c.x_neg, c.y_pos, c.y_neg) for c in negate_dnf(q)
    }
    assert got == {
        (frozenset(), frozenset([X]), frozenset(), frozenset([Y])),
        (frozenset(), frozenset([X]), frozenset([Y]), frozenset()),
    }
    single = Qbf2E((X,), (), (frozenset([lit(X, False)]),))
    (c,) = negate_dnf(single)
    assert (c.x_pos, c.x_neg, c.y_pos, c.y_neg) == (frozenset([X]), frozenset(), frozenset(), frozenset())
    assert negate_dnf(Qbf2E((X,), (Y,), ())) == []


def test_neg_clause_validation():
    with pytest.raises(ValueError):
        NegClause(frozenset([X]), frozenset([X]), frozenset(), frozenset())


def test_translation_structure():
    q = parse_qbf("e x\na y\nx y\nx -y\n")
    p = qbf_to_program(q)
    rules = set(p.rules)
    assert Rule(frozenset([clause_atom(1)]), frozenset(), frozenset([clause_negation_atom(1)])) in rules
    assert Rule(frozenset([X]), frozenset(), frozenset([clause_negation_atom(1)])) in rules
    assert Rule(frozenset([Y]), frozenset([U_ATOM]), frozenset()) in rules
    assert Rule(frozenset([U_ATOM]), frozenset(), frozenset([U_ATOM])) in rules
    # clause 2 has y in Y1: a proper disjunctive saturation rule
    assert Rule(frozenset([U_ATOM, Y]), frozenset(), frozenset([clause_negation_atom(2)])) in rules
    assert not p.is_normal


def test_translation_empty_clause_set():
    p = qbf_to_program(Qbf2E((X,), (Y,), ()))
    assert [r.render() for r in p.rules] == ["__u :- not __u."]
    assert solve_disjunctive(p, mode="gnt2").models == []


def test_translation_size_bound():
    for seed in range(30):
        q = gen_random_qbf(8, "gw", seed)
        p = qbf_to_program(q)
        used = {l.atom for t in q.terms for l in t}
        assert len(p.base) <= len(used) + 2 * len(q.terms) + 2


def test_validity_oracle():
    assert qbf_valid_oracle(parse_qbf("e x\na y\nx y\nx -y\n"))
    assert not qbf_valid_oracle(parse_qbf("e x\na y\nx y\n"))
    assert qbf_valid_oracle(Qbf2E((X,), (), (frozenset([lit(X)]),)))
    assert not qbf_valid_oracle(Qbf2E((X,), (Y,), ()))
    big = Qbf2E(tuple(Atom(f"x{i}") for i in range(21)), (), (frozenset([lit(Atom("x0"))]),))
    with pytest.raises(CapExceededError):
        qbf_valid_oracle(big)


def test_paper_stable_model_shape():
    q = parse_qbf("e x\na y\nx y\nx -y\n")
    r = solve_disjunctive(qbf_to_program(q), mode="gnt2", enumerate_all=True)
    assert r.models == [
        frozenset([X, Y, U_ATOM, clause_atom(1), clause_atom(2)])
    ]


def test_translation_correct_small_all_modes():
    rng = random.Random(0)
    vars_pool = [Atom("x1"), Atom("x2"), Atom("y1"), Atom("y2")]
    for seed in range(60):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        terms = []
        for _ in range(d):
            picked = rng.sample(vars_pool, 3)
            terms.append(frozenset(Literal(a, rng.random() < 0.5) for a in picked))
        q = Qbf2E(tuple(vars_pool[:2]), tuple(vars_pool[2:]), tuple(terms))
        want = qbf_valid_oracle(q)
        for mode in ("gnt1", "gnt2", "naive"):
            assert bool(solve_disjunctive(qbf_to_program(q), mode=mode).models) == want


def _interpretation_meeting_lemma_conditions(q, clauses, rng):
    base_true = set()
    for v in q.variables:
        if rng.random() < 0.5:
            base_true.add(v)
    if rng.random() < 0.5:
        base_true.add(U_ATOM)
    true = set(base_true)
    for i, c in enumerate(clauses, 1):
        active = not (c.x_pos & base_true) and c.x_neg <= base_true
        true.add(clause_atom(i) if active else clause_negation_atom(i))
    return frozenset(true)


def test_reduct_structure_lemma():
    """Per-clause reduct structure (the facts/rules R1-R7) for total
    interpretations tying clause atoms to the X-part.  The stated conditions
    for the explanation-rule reducts are necessary; the exact membership
    conditions additionally route through the clause-activity atom."""
    from aspunfold.qbf import clause_translation

    rng = random.Random(4)
    for seed in range(40):
        q = gen_random_qbf(6, "gw", seed)
        clauses = negate_dnf(q)
        p = qbf_to_program(q)
        m = _interpretation_meeting_lemma_conditions(q, clauses, rng)
        total = PartialInterpretation.total(m & p.base, p.base)
        for i, c in enumerate(clauses, 1):
            ci, nci = clause_atom(i), clause_negation_atom(i)
            tr_v, tr_e, tr_u = clause_translation(c, i)
            red_v = set(gl_reduct(Program(tr_v, base=p.base), total).rules)
            red_e = set(gl_reduct(Program(tr_e, base=p.base), total).rules)
            red_u = set(gl_reduct(Program(tr_u, base=p.base), total).rules)
            # R1, R2
            assert (Rule(frozenset([ci]), frozenset(), frozenset()) in red_v) == (ci in m)
            assert (Rule(frozenset([nci]), frozenset(), frozenset()) in red_v) == (nci in m)
            for x in c.x_pos:
                # R3: membership implies x false and f false; exact
                # membership is clause-active and f false
                present = Rule(frozenset([F_ATOM]), frozenset([x]), frozenset()) in red_e
                if present:
                    assert x not in m and F_ATOM not in m
                assert present == (ci in m and F_ATOM not in m)
            for x in c.x_neg:
                # R4: membership implies x true; exact membership is clause-active
                present = Rule(frozenset([x]), frozenset(), frozenset()) in red_e
                if present:
                    assert x in m
                assert present == (ci in m)
            # R5: membership implies X2 not under m and f false; exactly,
            # every not-X1 literal must also hold
            present = Rule(frozenset([F_ATOM]), c.x_neg, frozenset()) in red_e
            if present:
                assert not (c.x_neg <= m) and F_ATOM not in m
            assert present == (not c.x_pos & m and ci not in m and F_ATOM not in m)
            # R6: unconditional
            for y in c.y_pos | c.y_neg:
                assert Rule(frozenset([y]), frozenset([U_ATOM]), frozenset()) in red_u
            # R7
            assert (Rule(c.y_pos | {U_ATOM}, c.y_neg, frozenset()) in red_u) == (ci in m)


def test_gen_random_qbf_schemes():
    q = gen_random_qbf(10, "gw", 3)
    assert len(q.terms) == 20
    assert all(len(t) == 5 for t in q.terms)
    y_set = set(q.y_vars)
    assert all(sum(1 for l in t if l.atom in y_set) >= 2 for t in q.terms)
    q2 = gen_random_qbf(50, "sqrt", 3)
    assert len(q2.terms) == 5 and all(len(t) == 3 for t in q2.terms)
    assert gen_random_qbf(10, "gw", 9) == gen_random_qbf(10, "gw", 9)
    assert gen_random_qbf(10, "gw", 9) != gen_random_qbf(10, "gw", 10)
    with pytest.raises(ValueError):
        gen_random_qbf(9, "gw", 0)
    with pytest.raises(ValueError):
        gen_random_qbf(4, "gw", 0)
    with pytest.raises(ValueError):
        gen_random_qbf(2, "sqrt", 0)


def test_bench_params_validation():
    with pytest.raises(ValueError):
        BenchParams(10, ratio=-1.0)
    with pytest.raises(ValueError):
        BenchParams(10, scheme="xx")
    BenchParams(10, ratio=4.258, scheme="gw", seed=1)


def test_d3sat_generator_counts():
    inst = gen_d3sat_instance(100, 4.258, 1)
    assert len(inst.program.rules) == 425 + 2
    assert len(inst.specified) == 2
    inst20 = gen_d3sat_instance(20, 4.258, 1)
    assert len(inst20.specified) == 0 and len(inst20.program.rules) == 85
    assert gen_random_d3sat(20, 4.258, 5) == gen_random_d3sat(20, 4.258, 5)


def test_d3sat_all_negative_clause_becomes_constraint():
    a1, a2, a3 = Atom("a1"), Atom("a2"), Atom("a3")
    p = mm_encode([Clause(frozenset(), frozenset([a1, a2, a3]))], [])
    (r,) = p.rules
    assert r.head == frozenset([F_ATOM])
    assert r.pos == frozenset([a1, a2, a3])
    assert r.neg == frozenset([F_ATOM])


def test_mm_encoding_matches_minimal_model_oracle():
    rng = random.Random(2)
    for seed in range(40):
        n = rng.randint(4, 8)
        clauses = gen_random_3sat_clauses(n, 3.0, random.Random(seed))
        atoms = sorted({a for c in clauses for a in c.atoms})
        specified = rng.sample(atoms, rng.randint(0, min(2, len(atoms))))
        p = mm_encode(clauses, specified)
        want = minimal_models_containing(clauses, specified)
        assert bool(solve_disjunctive(p, mode="gnt2").models) == want
