"""Batch command-line front end.

Usage::

    desire-kernel VERB MODEL [--set JSON] [--gamble JSON] [--certify] [--json] ...

``MODEL`` is a path to a JSON model document (``-`` reads stdin).  Query
payloads are inline JSON or ``@path``.  Exit codes: 0 yes, 1 no, 2 usage or
model error, 3 selection cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from typing import Any, Optional, Sequence

from . import choice, cones, desirability, operators
from .model import (
    CredalSet,
    EmptyOptionSetError,
    GambleAssessment,
    Model,
    ModelError,
    OptionSetAssessment,
    SpaceMismatch,
    dump_model,
    format_rational,
    parse_gamble,
    parse_model,
    parse_option_set,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

VERBS = (
    "check",
    "entail",
    "entail-mixing",
    "choose",
    "e-admit",
    "lowprev",
    "margin",
    "total",
    "operators",
    "verify-cert",
)
OPERATORS = ("rn", "su", "rs", "rp", "chull", "translate")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="desire-kernel", description="Exact inference for sets of desirable option sets.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("model", help="model JSON file, or - for stdin")
    p.add_argument("--set", dest="option_set", help="option set: JSON array of gambles, or @file")
    p.add_argument("--gamble", help="gamble: JSON array of rationals, or @file")
    p.add_argument("--cert", help="certificate JSON (verify-cert), or @file")
    p.add_argument("--op", choices=OPERATORS, help="operator for the operators verb")
    p.add_argument("--mixing", action="store_true", help="use the mixing natural extension")
    p.add_argument("--certify", action="store_true", help="attach a certificate")
    p.add_argument("--cap", type=int, default=choice.DEFAULT_SELECTION_CAP, help="selection cap")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads")
    p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    p.add_argument("--timing", action="store_true", help="report wall-clock time (JSON mode)")
    return p


def _payload(raw: Optional[str], flag: str) -> Any:
    if raw is None:
        raise UsageError(f"this verb needs {flag}")
    if raw.startswith("@"):
        with open(raw[1:], encoding="utf-8") as fh:
            raw = fh.read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: malformed JSON: {exc.msg}") from None


def _read_model(path: str) -> Model:
    if path == "-":
        return parse_model(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _as_assessment(model: Model, verb: str) -> OptionSetAssessment:
    if isinstance(model, OptionSetAssessment):
        return model
    if isinstance(model, GambleAssessment):
        return model.lift()
    raise UsageError(f"{verb} needs an 'assessment' or 'desirable' model")


def _ext(value) -> str:
    return "unbounded" if value is cones.UNBOUNDED else format_rational(value)


class _Report:
    """Collected outcome of one command."""

    def __init__(self, verdict: Any, exit_code: int, human: str, certificate: Any = None):
        self.verdict = verdict
        self.exit_code = exit_code
        self.human = human
        self.certificate = certificate


def _yes_no(answer: bool, yes: str, no: str, cert=None) -> _Report:
    return _Report(answer, EXIT_YES if answer else EXIT_NO, yes if answer else no, cert)


def _dispatch(args, model: Model, executor, query: dict) -> _Report:
    verb, cap = args.verb, args.cap
    n = len(model.space)

    def option_set():
        parsed = parse_option_set(_payload(args.option_set, "--set"), n, "$set")
        query["set"] = parsed.to_json()
        return parsed

    def gamble():
        parsed = parse_gamble(_payload(args.gamble, "--gamble"), n, "$gamble")
        query["gamble"] = parsed.to_json()
        return parsed

    if verb == "check":
        if isinstance(model, CredalSet):
            return _Report(True, EXIT_YES, "consistent")
        v = choice.k_consistent(_as_assessment(model, verb), cap, executor)
        return _yes_no(v.answer, "consistent", "inconsistent", v.certificate)

    if verb in ("entail", "entail-mixing"):
        b = option_set()
        mixing = args.mixing or verb == "entail-mixing"
        query["mixing"] = mixing
        if isinstance(model, CredalSet):
            return _yes_no(cones.credal_accepts(model, b), "entailed", "not entailed")
        v = choice.k_entails(_as_assessment(model, verb), b, cap, executor, mixing)
        return _yes_no(v.answer, "entailed", "not entailed", v.certificate)

    if verb == "choose":
        s = option_set()
        query["mixing"] = args.mixing
        if isinstance(model, CredalSet):
            chosen = desirability.d_maximality_choice(model, s)
        else:
            chosen = choice.choice_set(_as_assessment(model, verb), s, args.mixing, cap, executor)
        return _Report(chosen.to_json(), EXIT_YES, str(chosen))

    if verb == "e-admit":
        if not isinstance(model, CredalSet):
            raise UsageError("e-admit needs a 'credal' model")
        chosen = choice.e_admissible_choice(model, option_set())
        return _Report(chosen.to_json(), EXIT_YES, str(chosen))

    if verb == "lowprev":
        f = gamble()
        if isinstance(model, CredalSet):
            value = model.lower(f)
        elif isinstance(model, GambleAssessment):
            value = cones.lower_prevision(model, f)
        else:
            value = choice.k_lower_prevision(model, f, cap, executor)
        return _Report(_ext(value), EXIT_YES, _ext(value))

    if verb == "margin":
        m = choice.arch_margin(_as_assessment(model, verb), option_set(), cap, executor)
        verdict = {"margin": _ext(m.value), "attained": m.attained, "archimedean": m.archimedean}
        human = f"{_ext(m.value)} ({'attained' if m.attained else 'supremum, not attained'})"
        return _Report(verdict, EXIT_YES if m.archimedean else EXIT_NO, human)

    if verb == "total":
        v = choice.totality_query(_as_assessment(model, verb), gamble(), cap, executor)
        return _yes_no(v.answer, "total on this gamble", "not total on this gamble", v.certificate)

    if verb == "verify-cert":
        a = _as_assessment(model, verb)
        raw = _payload(args.cert, "--cert")
        cert = choice.certificate_from_json(raw)
        query["cert"] = cert.to_json()
        b = option_set() if args.option_set is not None else None
        ok = choice.verify_certificate(a, b, cert, cap)
        return _yes_no(ok, "certificate valid", "certificate invalid")

    # operators
    if args.op is None:
        raise UsageError("operators needs --op")
    query["op"] = args.op
    if args.op == "translate":
        out = operators.translate(option_set(), gamble())
        return _Report(out.to_json(), EXIT_YES, str(out))
    if args.op == "chull":
        ok = operators.chull_contains(option_set(), gamble())
        return _yes_no(ok, "in convex hull", "not in convex hull")
    a = _as_assessment(model, verb)
    family = operators.FiniteFamily(a.sets, a.space, a.ordering)
    if args.op == "rn":
        out = operators.rn_transform(family, cap)
        return _Report(out.to_json(), EXIT_YES, "\n".join(str(s) for s in out))
    test = {"su": operators.su_contains, "rs": operators.rs_contains, "rp": operators.rp_contains}
    ok = test[args.op](family, option_set())
    return _yes_no(ok, "member", "not a member")


def _certificate_json(cert) -> Any:
    return None if cert is None else cert.to_json()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"desire-kernel: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    start = time.perf_counter()
    query: dict = {"verb": args.verb}
    try:
        if args.cap < 1 or args.threads < 1:
            raise UsageError("--cap and --threads must be positive")
        model = _read_model(args.model)
        pool = ThreadPoolExecutor(args.threads) if args.threads > 1 else nullcontext()
        with pool as executor:
            report = _dispatch(args, model, executor, query)
    except (choice.SelectionCapExceeded, operators.FamilyCapExceeded) as exc:
        print(f"desire-kernel: {exc}", file=stderr)
        return EXIT_CAP
    except (
        UsageError,
        ModelError,
        SpaceMismatch,
        EmptyOptionSetError,
        choice.InconsistentAssessmentError,
        choice.NotEntailedError,
        OSError,
        ValueError,
        KeyError,
        TypeError,
    ) as exc:
        print(f"desire-kernel: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start

    if args.json:
        doc = {
            "verdict": report.verdict,
            "certificate": _certificate_json(report.certificate) if args.certify else None,
            "timing": {"seconds": round(elapsed, 6)} if args.timing else None,
            "inputs": {
                "model_sha256": _sha(dump_model(model)),
                "query_sha256": _sha(_canonical(query)),
            },
        }
        print(_canonical(doc), file=stdout)
    else:
        print(report.human, file=stdout)
        if args.certify and report.certificate is not None:
            print(json.dumps(report.certificate.to_json(), sort_keys=True), file=stdout)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
