"""Command-line surface: solve, partial, transform, check, query, qbf, bench.

Output is deterministic byte-for-byte for fixed inputs and seeds: models are
printed one per line with atoms sorted, stats as ``key=value`` lines, and
wall-clock timing is only emitted under ``--timing``.  Exit codes follow
solver practice: 0 models/yes, 20 none/no, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bench import gen_d3sat_instance, gen_random_qbf
from .gentest import gen_basic, gen_naive, gen_program, support_program, test_program
from .gnt import MODES, GntConfig, solve_disjunctive
from .parser import ParseError, parse_atom_set, parse_literals, parse_program
from .partiality import (
    QueryLiterals,
    possibility_query,
    project_sm,
    query_by_filter,
    query_constraint_rules,
    tr2_program,
    unfold_partiality,
)
from .qbf import QbfParseError, parse_qbf, qbf_to_program, qbf_witness, render_qbf
from .semantics import (
    CapExceededError,
    DEFAULT_CAP,
    PartialInterpretation,
    check_partial_stable,
    check_total_stable,
    enumerate_stable_models,
    eval_conj,
    maximal_models,
    TruthValue,
)
from .solver import Solver, SolverConfig, SolverStats
from .syntax import Atom, F_ATOM, Program, render_program

EXIT_MODELS = 0
EXIT_NO_MODELS = 20
EXIT_ERROR = 1

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "outcome"],
    "properties": {
        "command": {"type": "string"},
        "outcome": {"enum": ["models_found", "no_models", "error"]},
        "models": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "partial_models": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["true", "undef"],
                "properties": {
                    "true": {"type": "array", "items": {"type": "string"}},
                    "undef": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "answer": {"type": "string"},
        "reason": {"type": "string"},
        "stats": {"type": "object", "additionalProperties": {"type": "integer"}},
        "elapsed": {"type": "number"},
        "error": {"type": "string"},
    },
}


@dataclass
class RunReport:
    command: str
    outcome: str = "no_models"
    models: list[list[str]] = field(default_factory=list)
    partial_models: list[dict] = field(default_factory=list)
    answer: Optional[str] = None
    reason: Optional[str] = None
    stats: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0
    error: Optional[str] = None

    def as_json(self, timing: bool) -> dict:
        doc: dict = {"command": self.command, "outcome": self.outcome}
        if self.models:
            doc["models"] = self.models
        if self.partial_models:
            doc["partial_models"] = self.partial_models
        if self.answer is not None:
            doc["answer"] = self.answer
        if self.reason is not None:
            doc["reason"] = self.reason
        if self.stats:
            doc["stats"] = self.stats
        if self.error is not None:
            doc["error"] = self.error
        if timing:
            doc["elapsed"] = self.elapsed
        return doc


def _emit(report: RunReport, args, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report.as_json(getattr(args, "timing", False)), sort_keys=True))
        return
    for line in lines:
        print(line)
    if getattr(args, "stats", False):
        for key, value in report.stats.items():
            print(f"{key}={value}")
    if getattr(args, "timing", False):
        print(f"elapsed={report.elapsed:.3f}s")


def _model_line(model: frozenset[Atom]) -> str:
    return " ".join(a.text for a in sorted(model))


def _partial_line(m: PartialInterpretation) -> str:
    t = " ".join(a.text for a in sorted(m.true_set))
    u = " ".join(a.text for a in sorted(m.undef_set))
    return f"T={{{t}}} U={{{u}}}"


def _gnt_config(args) -> GntConfig:
    return GntConfig(
        early_test=getattr(args, "early_test", "once"),
        lookahead=getattr(args, "lookahead", False),
    )


def _stats_dict(gnt=None, solver: Optional[SolverStats] = None) -> dict[str, int]:
    out: dict[str, int] = {}
    if gnt is not None:
        out["candidates"] = gnt.candidates_covered
        out["tests"] = gnt.minimal_tests
        out["prunes"] = gnt.early_prunes
    if solver is not None:
        out["choices"] = solver.choices
        out["conflicts"] = solver.conflicts
        out["expansions"] = solver.expansions
    return out


def _load_program(args) -> Program:
    with open(args.file, "r", encoding="utf-8") as fh:
        return parse_program(fh.read(), allow_reserved=getattr(args, "allow_reserved", False))


def _solve_program(p: Program, args, enumerate_all: bool) -> tuple[list[frozenset[Atom]], dict[str, int]]:
    mode = getattr(args, "mode", "gnt2")
    if mode == "brute":
        models = enumerate_stable_models(p, args.cap)
        if not enumerate_all:
            models = models[:1]
        return models, _stats_dict(gnt=None, solver=SolverStats())
    if p.is_normal:
        solver = Solver(p, SolverConfig(lookahead=getattr(args, "lookahead", False)))
        models = solver.all_models() if enumerate_all else [
            m for m in [solver.next_stable_model()] if m is not None
        ]
        return models, _stats_dict(solver=solver.stats)
    result = solve_disjunctive(p, mode=mode, enumerate_all=enumerate_all, config=_gnt_config(args))
    return result.models, _stats_dict(result.stats, result.solver_stats)


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    report = RunReport("solve")
    p = _load_program(args)
    models, report.stats = _solve_program(p, args, args.all)
    report.elapsed = time.perf_counter() - t0
    if models:
        report.outcome = "models_found"
        report.models = [[a.text for a in sorted(m)] for m in models]
        _emit(report, args, [_model_line(m) for m in models])
        return EXIT_MODELS
    _emit(report, args, ["NO STABLE MODELS"])
    return EXIT_NO_MODELS


def cmd_partial(args) -> int:
    t0 = time.perf_counter()
    report = RunReport("partial")
    p = _load_program(args)
    trp = unfold_partiality(p)
    enumerate_all = args.all or args.maximal
    models, report.stats = _solve_program(trp, args, enumerate_all)
    psms = [project_sm(n, p.base) for n in models]
    if args.maximal:
        psms = maximal_models(psms, args.ordering)
    psms.sort(key=lambda m: (sorted(a.text for a in m.true_set), sorted(a.text for a in m.undef_set)))
    report.elapsed = time.perf_counter() - t0
    if psms:
        report.outcome = "models_found"
        report.models = [[a.text for a in sorted(m.true_set)] for m in psms]
        report.partial_models = [
            {
                "true": [a.text for a in sorted(m.true_set)],
                "undef": [a.text for a in sorted(m.undef_set)],
            }
            for m in psms
        ]
        _emit(report, args, [_partial_line(m) for m in psms])
        return EXIT_MODELS
    _emit(report, args, ["NO PARTIAL STABLE MODELS"])
    return EXIT_NO_MODELS


_TRANSFORMS = {
    "tr": unfold_partiality,
    "tr2": tr2_program,
    "gen0": gen_naive,
    "gen1": gen_basic,
    "supp": support_program,
    "gen": gen_program,
}


def cmd_transform(args) -> int:
    p = _load_program(args)
    if args.kind == "test":
        if args.model is None:
            raise ParseError("transform --kind test requires --model")
        candidate = parse_atom_set(args.model, allow_reserved=args.allow_reserved)
        out = test_program(p, candidate)
    else:
        out = _TRANSFORMS[args.kind](p)
    sys.stdout.write(render_program(out))
    return EXIT_MODELS


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    report = RunReport("check")
    p = _load_program(args)
    if args.model is not None:
        atoms = parse_atom_set(args.model, allow_reserved=args.allow_reserved)
        unknown = sorted(atoms - p.base)
        if unknown:
            raise ParseError(f"model atom {unknown[0].text} not in program base")
        claimed = PartialInterpretation.total(atoms, p.base)
        reason = check_total_stable(p, claimed, args.cap)
        if reason is None:
            report.models = [[a.text for a in sorted(claimed.true_set)]]
    else:
        spec = args.partial
        if "/" not in spec:
            raise ParseError("--partial expects 'TRUE_ATOMS / FALSE_ATOMS'")
        left, right = spec.split("/", 1)
        t = parse_atom_set(left, allow_reserved=args.allow_reserved)
        f = parse_atom_set(right, allow_reserved=args.allow_reserved)
        unknown = sorted((t | f) - p.base)
        if unknown:
            raise ParseError(f"model atom {unknown[0].text} not in program base")
        claimed = PartialInterpretation(t, f, p.base)
        reason = check_partial_stable(p, claimed, args.cap)
        if reason is None:
            report.partial_models = [
                {
                    "true": [a.text for a in sorted(claimed.true_set)],
                    "undef": [a.text for a in sorted(claimed.undef_set)],
                }
            ]
    report.elapsed = time.perf_counter() - t0
    if reason is None:
        report.outcome = "models_found"
        report.answer = "ACCEPT"
        _emit(report, args, ["ACCEPT"])
        return EXIT_MODELS
    report.answer = "REJECT"
    report.reason = reason
    _emit(report, args, [f"REJECT: {reason}"])
    return EXIT_NO_MODELS


def cmd_query(args) -> int:
    t0 = time.perf_counter()
    report = RunReport("query")
    p = _load_program(args)
    literals = parse_literals(args.query, allow_reserved=args.allow_reserved) if args.query.strip() else ()
    q = QueryLiterals(frozenset(literals))

    witness_lines: list[str] = []
    if args.semantics == "partial":
        if args.filter:
            ok, witness = query_by_filter(p, q, args.cap)
        else:
            ok, witness = possibility_query(p, q, mode=args.mode)
        if ok and witness is not None:
            witness_lines = [_partial_line(witness)]
            report.partial_models = [
                {
                    "true": [a.text for a in sorted(witness.true_set)],
                    "undef": [a.text for a in sorted(witness.undef_set)],
                }
            ]
    else:
        unknown = sorted(q.atoms - p.base)
        if unknown:
            raise ParseError(f"query atom {unknown[0].text} not in program base")
        if args.filter:
            ok, model = False, None
            for m in enumerate_stable_models(p, args.cap):
                i = PartialInterpretation.total(m, p.base)
                if eval_conj(i, q.literals) is TruthValue.TRUE:
                    ok, model = True, m
                    break
        else:
            augmented = Program(
                p.rules + query_constraint_rules(q), base=p.base | {F_ATOM}
            )
            models, _ = _solve_program(augmented, args, enumerate_all=False)
            ok = bool(models)
            model = models[0] & p.base if models else None
        if ok and model is not None:
            witness_lines = [_model_line(model)]
            report.models = [[a.text for a in sorted(model)]]
    report.elapsed = time.perf_counter() - t0
    report.answer = "YES" if ok else "NO"
    report.outcome = "models_found" if ok else "no_models"
    _emit(report, args, [report.answer] + witness_lines)
    return EXIT_MODELS if ok else EXIT_NO_MODELS


def cmd_qbf(args) -> int:
    t0 = time.perf_counter()
    with open(args.file, "r", encoding="utf-8") as fh:
        q = parse_qbf(fh.read())
    if args.action == "translate":
        sys.stdout.write(render_program(qbf_to_program(q)))
        return EXIT_MODELS
    report = RunReport("qbf")
    if args.action == "eval":
        witness = qbf_witness(q, args.cap if args.cap != DEFAULT_CAP else 20)
        valid = witness is not None
        if valid:
            # the model row is the witnessing existential assignment
            report.models = [[a.text for a in sorted(witness)]]
    else:
        result = solve_disjunctive(qbf_to_program(q), mode=args.mode, config=_gnt_config(args))
        valid = bool(result.models)
        if valid:
            report.models = [[a.text for a in sorted(result.models[0])]]
        report.stats = _stats_dict(result.stats, result.solver_stats)
    report.elapsed = time.perf_counter() - t0
    report.answer = "VALID" if valid else "INVALID"
    report.outcome = "models_found" if valid else "no_models"
    _emit(report, args, [report.answer])
    return EXIT_MODELS if valid else EXIT_NO_MODELS


def cmd_bench(args) -> int:
    texts = []
    for i in range(args.count):
        seed = args.seed + i
        if args.family == "d3sat":
            inst = gen_d3sat_instance(args.atoms, args.ratio, seed, args.specified)
            texts.append((f"d3sat_n{args.atoms}_s{seed}.lp", render_program(inst.program)))
        else:
            q = gen_random_qbf(args.vars, args.scheme, seed)
            texts.append((f"qbf_{args.scheme}_v{args.vars}_s{seed}.qbf", render_qbf(q)))
    if args.out_dir is None:
        if args.count != 1:
            raise ParseError("--count > 1 requires --out-dir")
        sys.stdout.write(texts[0][1])
        return EXIT_MODELS
    import os

    os.makedirs(args.out_dir, exist_ok=True)
    for name, text in texts:
        with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(text)
        print(name)
    return EXIT_MODELS


def _add_common(sp, stats: bool = True) -> None:
    sp.add_argument("--json", action="store_true", help="emit a JSON report")
    sp.add_argument("--timing", action="store_true", help="include wall-clock time in output")
    sp.add_argument("--allow-reserved", action="store_true", help="accept reserved atom spellings in input")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="atom cap for enumerative oracles")
    if stats:
        sp.add_argument("--stats", action="store_true", help="print key=value statistics")


def _add_solving(sp) -> None:
    sp.add_argument("--mode", choices=MODES, default="gnt2")
    sp.add_argument("--early-test", choices=("once", "repeat", "off"), default="once")
    sp.add_argument("--lookahead", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aspunfold")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="stable models of a program")
    sp.add_argument("file")
    sp.add_argument("--all", action="store_true", help="enumerate all models")
    _add_solving(sp)
    _add_common(sp)
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("partial", help="partial stable models via the partiality unfolding")
    sp.add_argument("file")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--maximal", action="store_true", help="keep only maximal models")
    sp.add_argument("--ordering", choices=("truth", "knowledge"), default="truth")
    _add_solving(sp)
    _add_common(sp)
    sp.set_defaults(fn=cmd_partial)

    sp = sub.add_parser("transform", help="print a program transformation")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=("tr", "tr2", "gen0", "gen1", "supp", "gen", "test"), required=True)
    sp.add_argument("--model", help="candidate model for --kind test, e.g. 'a b'")
    _add_common(sp, stats=False)
    sp.set_defaults(fn=cmd_transform)

    sp = sub.add_parser("check", help="oracle verification of a claimed model")
    sp.add_argument("file")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", help="total model as 'a b'")
    group.add_argument("--partial", help="partial interpretation as 'TRUE / FALSE'")
    _add_common(sp, stats=False)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("query", help="possibility inference")
    sp.add_argument("file")
    sp.add_argument("--query", required=True, help="comma-separated literals, e.g. 'a, not b'")
    sp.add_argument("--semantics", choices=("partial", "total"), default="partial")
    sp.add_argument("--filter", action="store_true", help="answer by oracle enumeration instead of one solver call")
    _add_solving(sp)
    _add_common(sp)
    sp.set_defaults(fn=cmd_query)

    sp = sub.add_parser("qbf", help="2,exists-QBF translation, solving, and oracle evaluation")
    sp.add_argument("action", choices=("translate", "solve", "eval"))
    sp.add_argument("file")
    _add_solving(sp)
    _add_common(sp)
    sp.set_defaults(fn=cmd_qbf)

    sp = sub.add_parser("bench", help="random benchmark instance generation")
    sp.add_argument("family", choices=("d3sat", "qbf"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out-dir")
    sp.add_argument("--atoms", type=int, default=20, help="d3sat: number of atoms")
    sp.add_argument("--ratio", type=float, default=4.258, help="d3sat: clauses/atoms ratio")
    sp.add_argument("--specified", type=int, default=None, help="d3sat: override specified-atom count")
    sp.add_argument("--vars", type=int, default=10, help="qbf: number of variables")
    sp.add_argument("--scheme", choices=("gw", "sqrt"), default="gw")
    sp.set_defaults(fn=cmd_bench)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, QbfParseError, CapExceededError, ValueError, OSError) as exc:
        if getattr(args, "json", False):
            report = RunReport(args.command, outcome="error", error=str(exc))
            print(json.dumps(report.as_json(False), sort_keys=True))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
