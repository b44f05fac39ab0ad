"""Command-line interface.

Exit codes: 0 proven / check passed / valid, 1 refuted / check failed / not
valid, 2 input error, resource cap or failed self-check.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import CorpusError, entry_sequent, load_corpus
from .formula import ParseError, is_bet_free, parse, render
from .hypersequent import Sequent, hypersequent_to_json, parse_sequent
from .proofcheck import Calculus, MalformedProof, check
from .search import Proven, StepLimitExceeded, decide, proof_from_json, proof_to_json
from .semantics import eval_formula, is_valid_in, model_from_json, model_to_json, truth_lemma_check

EXIT_PROVEN, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _write(path: str, data) -> None:
    Path(path).write_text(_dump(data))


def _sequent_text(s: Sequent) -> str:
    return ", ".join(render(f) for f in s.ant) + " |- " + ", ".join(render(f) for f in s.suc)


def self_check(verdict) -> str | None:
    """Re-validate a verdict independently; returns a failure message or None."""
    if isinstance(verdict, Proven):
        result = check(verdict.proof, Calculus.HEPlus)
        return None if result.ok else result.describe()
    if not truth_lemma_check(verdict.saturated, verdict.model):
        return "truth lemma fails on the extracted model"
    w = verdict.falsifying_world
    root = verdict.root
    if not all(eval_formula(verdict.model, w, f) for f in root.ant if is_bet_free(f)):
        return f"world {w} does not satisfy the antecedent"
    if any(eval_formula(verdict.model, w, f) for f in root.suc if is_bet_free(f)):
        return f"world {w} does not falsify the succedent"
    return None


def _describe_model(model) -> list[str]:
    lines = [f"worlds: {', '.join(map(str, model.worlds))}"]
    pairs = ", ".join(f"{x}>{y}" for x, y in sorted(model.succ)) or "(empty)"
    lines.append(f"better: {pairs}")
    for w in model.worlds:
        lines.append(f"V({w}) = {{{', '.join(sorted(model.valuation[w]))}}}")
    return lines


def cmd_decide(args) -> int:
    if (args.formula is None) == (args.sequent is None):
        raise CliError("give exactly one of FORMULA or --sequent")
    if args.sequent is not None:
        root = parse_sequent(args.sequent, allow_bet=args.allow_bet)
    else:
        root = Sequent.of((), (parse(args.formula, allow_bet=args.allow_bet),))
    verdict = decide(root, max_steps=args.max_steps, allow_bet=args.allow_bet)

    if args.self_check:
        problem = self_check(verdict)
        if problem:
            print(f"self-check FAILED: {problem}", file=sys.stderr)
            return EXIT_ERROR

    proven = isinstance(verdict, Proven)
    if args.emit_proof:
        if proven:
            _write(args.emit_proof, proof_to_json(verdict.proof))
        else:
            print("note: no proof to emit, the input is refuted", file=sys.stderr)
    if args.emit_model:
        if proven:
            print("note: no model to emit, the input is proven", file=sys.stderr)
        else:
            _write(args.emit_model, model_to_json(verdict.model))

    if args.format == "json":
        out = {"input": _sequent_text(root), "verdict": "Proven" if proven else "Refuted"}
        if not proven:
            out["falsifying_world"] = verdict.falsifying_world
            out["saturated"] = hypersequent_to_json(verdict.saturated)
            out["model"] = model_to_json(verdict.model)
        out["stats"] = verdict.stats.to_json()
        sys.stdout.write(_dump(out))
    else:
        print("Proven" if proven else "Refuted")
        if not proven:
            print(f"saturated: {verdict.saturated}")
            for line in _describe_model(verdict.model):
                print(line)
            print(f"falsifying world: {verdict.falsifying_world}")
        if args.stats:
            for key, value in verdict.stats.to_json().items():
                print(f"{key}: {value}")
    return EXIT_PROVEN if proven else EXIT_REFUTED


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc})") from None


def cmd_check_proof(args) -> int:
    import jsonschema

    data = _load_json(args.path)
    calculus = args.calculus
    if isinstance(data, dict) and "proof" in data:
        calculus = calculus or data.get("calculus")
        data = data["proof"]
    calculus = calculus or Calculus.HEPlus.value
    try:
        proof = proof_from_json(data)
    except jsonschema.ValidationError as exc:
        raise CliError(f"{args.path}: not a proof object ({exc.message})") from None
    result = check(proof, calculus)
    print(result.describe(), file=sys.stdout if result.ok else sys.stderr)
    return EXIT_PROVEN if result.ok else EXIT_REFUTED


def cmd_eval(args) -> int:
    import jsonschema

    try:
        model = model_from_json(_load_json(args.model))
    except (jsonschema.ValidationError, ValueError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        raise CliError(f"{args.model}: not a model ({msg})") from None
    f = parse(args.formula, allow_bet=args.allow_bet)
    values = {w: eval_formula(model, w, f) for w in model.worlds}
    valid = is_valid_in(model, f)
    if args.format == "json":
        sys.stdout.write(_dump({
            "formula": render(f),
            "worlds": {str(w): v for w, v in values.items()},
            "valid": valid,
        }))
    else:
        for w, v in values.items():
            print(f"{w}: {'true' if v else 'false'}")
        print("valid" if valid else "not valid")
    return EXIT_PROVEN if valid else EXIT_REFUTED


def cmd_corpus(args) -> int:
    entries = load_corpus(args.path)
    rows, failures = [], 0
    totals = {"max_components": 0, "max_component_formulas": 0, "max_branch_length": 0, "nodes_expanded": 0}
    for entry in entries:
        row = {"name": entry.name, "expected": entry.expected}
        try:
            verdict = decide(entry_sequent(entry.input), max_steps=args.max_steps)
        except StepLimitExceeded as exc:
            row.update(verdict="StepLimitExceeded", passed=False, detail=str(exc))
        else:
            got = "Proven" if isinstance(verdict, Proven) else "Refuted"
            row.update(verdict=got, passed=got == entry.expected)
            if args.self_check:
                problem = self_check(verdict)
                if problem:
                    row.update(passed=False, detail=f"self-check failed: {problem}")
            stats = verdict.stats.to_json()
            row["stats"] = stats
            for key in totals:
                totals[key] = totals[key] + stats[key] if key == "nodes_expanded" else max(totals[key], stats[key])
        failures += not row["passed"]
        rows.append(row)

    if args.format == "json":
        sys.stdout.write(_dump({"entries": rows, "passed": len(rows) - failures, "failed": failures, "stats": totals}))
    else:
        for row in rows:
            mark = "PASS" if row["passed"] else "FAIL"
            extra = f" ({row['detail']})" if "detail" in row else ""
            print(f"{mark} {row['name']}: expected {row['expected']}, got {row['verdict']}{extra}")
        print(f"{len(rows) - failures}/{len(rows)} passed")
        print(" ".join(f"{k}={v}" for k, v in totals.items()))
    return EXIT_PROVEN if failures == 0 else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyadic", description="Decision procedure for dyadic deontic logic E.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="prove or refute a formula or sequent")
    p.add_argument("formula", nargs="?")
    p.add_argument("--sequent", help='sequent "A, B |- C, D"')
    p.add_argument("--emit-proof", metavar="PATH")
    p.add_argument("--emit-model", metavar="PATH")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--self-check", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--allow-bet", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("check-proof", help="replay a proof file")
    p.add_argument("path")
    p.add_argument("--calculus", choices=[c.value for c in Calculus], default=None)
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("eval", help="evaluate a formula in a model file")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--allow-bet", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("corpus", help="run a corpus file or a shipped corpus by name")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--self-check", action="store_true")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except StepLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
    except (CliError, CorpusError, MalformedProof, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
