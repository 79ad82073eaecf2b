"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 input error, 3 bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import hardness, manipulation
from .core import (
    DEFAULT_ENUMERATION_BOUND,
    MEN,
    WOMEN,
    BoundExceeded,
    Profile,
    ProfileError,
    all_stable_matchings,
    blocking_pairs,
    format_matching,
    format_profile,
    matching_to_json,
    parse_profile,
    profile_to_json,
)
from .gale_shapley import female_optimal, male_optimal
from .gender_neutral import SIGNATURE_MODES, PEER_INDIFFERENT, gn_rule, signatures
from .generators import GENERATOR_NAME, random_digraph, random_profile
from .procedures import get_procedure, lexmin_regret_detail
from .voting import Election, get_rule, stv_order, stv_tally

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_profile(args) -> Profile:
    if not args.input:
        raise UsageError("--input is required")
    return parse_profile(_read(args.input))


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _parse_agent(token: str) -> tuple[str, int]:
    token = token.strip().lower()
    if len(token) < 2 or token[0] not in "mw" or not token[1:].isdigit():
        raise UsageError(f"agent must look like m3 or w1, got {token!r}")
    return (MEN if token[0] == "m" else WOMEN), int(token[1:]) - 1


def _person(gender: str, i: int) -> str:
    return f"{'m' if gender == MEN else 'w'}{i + 1}"


def cmd_solve(args) -> int:
    p = _load_profile(args)
    proc = get_procedure(args.proc, args.signature_mode)
    if args.proc.split(":")[-1] == "ht":
        hardness.graph_size(p)
    mu = proc(p)
    blocking = blocking_pairs(p, mu)
    verdict = "stable" if not blocking else "UNSTABLE"
    _emit(
        args,
        f"{format_matching(mu)}\n{verdict}",
        {"procedure": args.proc, "matching": matching_to_json(mu), "stable": not blocking},
    )
    return EXIT_OK


def cmd_signature(args) -> int:
    p = _load_profile(args)
    male, female = signatures(p, args.signature_mode)
    _, swapped = gn_rule(p, args.signature_mode)
    decision = "swap" if swapped else "keep"
    _emit(
        args,
        f"men: {male}  women: {female}  decision: {decision}",
        {"mode": args.signature_mode, "men": list(male.digits), "women": list(female.digits), "decision": decision},
    )
    return EXIT_OK


def cmd_gn(args) -> int:
    p = _load_profile(args)
    male, female = signatures(p, args.signature_mode)
    _, swapped = gn_rule(p, args.signature_mode)
    inner = args.proc[3:] if args.proc.startswith("gn:") else args.proc
    mu = get_procedure(f"gn:{inner}", args.signature_mode)(p)
    decision = "swap" if swapped else ("tie" if male == female else "keep")
    text = (
        f"men: {male}  women: {female}  decision: {decision}\n"
        f"gn:{inner}: {format_matching(mu)}"
    )
    _emit(args, text, {
        "men": list(male.digits), "women": list(female.digits), "decision": decision,
        "procedure": f"gn:{inner}", "matching": matching_to_json(mu),
    })
    return EXIT_OK


def cmd_enumerate(args) -> int:
    p = _load_profile(args)
    found = all_stable_matchings(p, args.bound or DEFAULT_ENUMERATION_BOUND)
    mo, fo = male_optimal(p), female_optimal(p)
    lines = []
    for mu in found:
        tags = [t for t, x in (("male-optimal", mo), ("female-optimal", fo)) if mu == x]
        lines.append(format_matching(mu) + (f"  [{', '.join(tags)}]" if tags else ""))
    lines.append(f"{len(found)} stable matching(s)")
    _emit(args, "\n".join(lines), {
        "count": len(found),
        "matchings": [matching_to_json(mu) for mu in found],
        "male_optimal": matching_to_json(mo),
        "female_optimal": matching_to_json(fo),
    })
    return EXIT_OK


def cmd_stv(args) -> int:
    p = _load_profile(args)
    blocks, payload = [], {}
    for label, voters, cand_tag in (("men", p.women, "m"), ("women", p.men, "w")):
        names = tuple(f"{cand_tag}{i + 1}" for i in range(p.n))
        e = Election(p.n, voters, names=names)
        tally = stv_tally(e)
        order = stv_order(e)
        blocks.append(f"# ordering {label} (quota {e.quota})")
        blocks.extend(tally.trace_lines(e))
        blocks.append("order: " + " ".join(names[c] for c in order))
        payload[label] = {
            "quota": e.quota,
            "rounds": tally.trace_lines(e),
            "order": [names[c] for c in order],
        }
    _emit(args, "\n".join(blocks), payload)
    return EXIT_OK


def cmd_lexmin(args) -> int:
    p = _load_profile(args)
    detail = lexmin_regret_detail(p, get_rule(args.rule))
    men_order, women_order = detail.orders()
    lines = [
        "men order: " + " ".join(f"m{i + 1}" for i in men_order),
        "women order: " + " ".join(f"w{i + 1}" for i in women_order),
    ]
    rows = []
    for s in detail.scored:
        lines.append(f"{format_matching(s.matching)}  male={s.male} female={s.female} overall={s.overall}")
        rows.append({"matching": matching_to_json(s.matching), "male": s.male, "female": s.female, "overall": s.overall})
    lines.append(f"chosen: {format_matching(detail.chosen)}")
    _emit(args, "\n".join(lines), {"candidates": rows, "chosen": matching_to_json(detail.chosen)})
    return EXIT_OK


def cmd_manipulate(args) -> int:
    p = _load_profile(args)
    if not args.agent:
        raise UsageError("--agent is required")
    gender, agent = _parse_agent(args.agent)
    if not 0 <= agent < p.n:
        raise UsageError(f"agent {args.agent} out of range")
    proc = get_procedure(args.proc, args.signature_mode)
    extra = {}
    if args.mode == "universal":
        if gender != WOMEN:
            raise UsageError("the universal scheme applies to women")
        witness = manipulation.universally_manipulable_by(p, agent)
        if witness is None:
            truthful = proc(p).partner(gender, agent)
            report = manipulation.ManipulationReport(
                gender, agent, truthful, truthful, p.women[agent], manipulation.UNCHANGED
            )
            extra["universally_manipulable"] = False
        else:
            q = manipulation.universal_manipulation(p, agent)
            report = manipulation.evaluate_report(proc, p, gender, agent, q.women[agent])
            extra["universally_manipulable"] = True
            extra["witness"] = {"m": f"m{witness.m + 1}", "n": f"m{witness.n + 1}", "v": f"w{witness.v + 1}"}
    elif args.mode == "brute":
        bound = args.bound or manipulation.DEFAULT_MANIPULATION_BOUND
        report = manipulation.brute_force_manipulation(proc, p, gender, agent, bound)
        if report is None:
            truthful = proc(p).partner(gender, agent)
            report = manipulation.ManipulationReport(
                gender, agent, truthful, truthful, p.prefs(gender)[agent], manipulation.UNCHANGED
            )
    elif args.mode == "firstlast":
        if gender != MEN:
            raise UsageError("the first/last rewrite applies to men")
        q = manipulation.firstlast_heuristic(p, agent)
        report = manipulation.evaluate_report(proc, p, gender, agent, q.men[agent])
    else:
        raise UsageError(f"unknown mode {args.mode!r}")
    payload = {"procedure": args.proc, "mode": args.mode, **extra, **report.to_json()}
    other = WOMEN if gender == MEN else MEN
    lines = [f"procedure: {args.proc}  mode: {args.mode}"]
    if "witness" in extra:
        w = extra["witness"]
        lines.append(f"witness: m={w['m']} n={w['n']} v={w['v']}")
    elif args.mode == "universal":
        lines.append("not universally manipulable; list left unchanged")
    lines += [
        f"agent: {_person(gender, agent)}",
        f"truthful partner: {_person(other, report.truthful_partner)}",
        "reported list: " + " ".join(_person(other, x) for x in report.reported_list),
        f"verdict: {report.verdict}",
        f"manipulated partner: {_person(other, report.manipulated_partner)}",
    ]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def _parse_cover(text: str) -> tuple[int, list[tuple[int, ...]]]:
    universe, subsets = None, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n"):
            universe = int(line.partition("=")[2])
        elif line.startswith("s"):
            subsets.append(tuple(int(x) for x in line.split()[1:]))
        else:
            raise ProfileError(f"cannot parse {line!r}", lineno)
    if universe is None:
        raise ProfileError("cover file lacks an n=<int> line")
    return universe, subsets


def cmd_reduce(args) -> int:
    if args.graph:
        g = hardness.parse_graph(_read(args.graph))
        p = hardness.build_reduction_profile(g)
        header = f"# reduction of a {g.n}-vertex digraph; men m1 m2 p1..p{g.n + 1}, women w1 w2 v1..v{g.n + 1}\n"
    elif args.cover:
        universe, subsets = _parse_cover(_read(args.cover))
        cap = args.bound or manipulation.DEFAULT_REDUCTION_CAP
        p = manipulation.build_stv_reduction_profile(universe, subsets, cap)
        header = f"# STV reduction of a 3-COVER instance, |S|={universe}, {len(subsets)} subsets\n"
    else:
        raise UsageError("reduce needs --graph or --cover")
    if args.format == "json":
        print(json.dumps(profile_to_json(p)))
    else:
        sys.stdout.write(header + format_profile(p))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    rng = random.Random(args.seed)
    header = f"# generator: {GENERATOR_NAME} seed={args.seed}"
    if args.kind == "profile":
        p = random_profile(rng, args.n)
        if args.format == "json":
            print(json.dumps({"generator": GENERATOR_NAME, "seed": args.seed, **profile_to_json(p)}))
        else:
            sys.stdout.write(header + "\n" + format_profile(p))
    else:
        g = random_digraph(rng, args.n)
        sys.stdout.write(header + "\n" + hardness.format_graph(g))
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "signature": cmd_signature,
    "gn": cmd_gn,
    "enumerate": cmd_enumerate,
    "stv": cmd_stv,
    "lexmin": cmd_lexmin,
    "manipulate": cmd_manipulate,
    "reduce": cmd_reduce,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="profile file (text or JSON), '-' for stdin")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--proc", default="gs-male", help="gs-male | gs-female | gn:<proc> | score | lexmin:<rule> | ht")
    common.add_argument("--rule", default="stv", help="voting rule for lexmin (stv | plurality)")
    common.add_argument("--signature-mode", choices=SIGNATURE_MODES, default=PEER_INDIFFERENT)
    common.add_argument("--bound", type=int, help="brute-force size bound")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="stablemarriage", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common], help="run a procedure on a profile")
    sub.add_parser("signature", parents=[common], help="print both gender signatures and the gn decision")
    sub.add_parser("gn", parents=[common], help="gn decision plus the gender-neutral result of --proc")
    sub.add_parser("enumerate", parents=[common], help="all stable matchings by exhaustive scan")
    sub.add_parser("stv", parents=[common], help="STV round traces for both popularity orders")
    sub.add_parser("lexmin", parents=[common], help="score vectors of the lexicographic-regret procedure")
    m = sub.add_parser("manipulate", parents=[common], help="manipulation reports")
    m.add_argument("--mode", choices=("universal", "brute", "firstlast"), default="brute")
    m.add_argument("--agent", help="m<i> or w<i>")
    r = sub.add_parser("reduce", parents=[common], help="emit a reduction profile")
    r.add_argument("--graph", help="digraph file: n=<int> then 'e <i> <j>' lines")
    r.add_argument("--cover", help="3-COVER file: n=<int> then 's <a> <b> <c>' lines")
    g = sub.add_parser("gen", parents=[common], help="seeded random profile or digraph")
    g.add_argument("--kind", choices=("profile", "graph"), default="profile")
    g.add_argument("--n", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.bound is not None and args.bound < 1:
        parser.error("--bound must be positive")
    try:
        get_procedure(args.proc, args.signature_mode)
        get_rule(args.rule)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ProfileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
