"""Command line front end, DIMACS input and the JSON instance format.

Big integers travel as decimal strings so thousand-bit values survive any
JSON reader; small structural numbers (k, s, machine indices) are plain
JSON integers.  Output uses sorted keys and a fixed indent, so identical
input gives byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from . import equivalences, gadgets, harness, reduce_eth, reduce_seth, sched_reductions, solvers, vss
from .numeric import format_rational, parse_rational, NumericError
from .problems import (
    CnfFormula, Decided, GroupedInstance, GroupedWitness, Job, PartitionInstance,
    PartitionWitness, ProblemError, Reduced, ScheduleWitness, SchedulingInstance,
    SubsetSumInstance, SubsetWitness, VssInstance,
)

log = logging.getLogger(__name__)


# ------------------------------------------------------------ DIMACS

class DimacsError(ValueError):
    pass


class MalformedHeader(DimacsError):
    pass


class LiteralOutOfRange(DimacsError):
    pass


class EmptyClause(DimacsError):
    pass


class MalformedToken(DimacsError):
    pass


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF.  A clause count differing from the header is logged."""
    header = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise MalformedHeader(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] != "cnf" or not all(p.isdigit() for p in parts[2:]):
                raise MalformedHeader(f"line {lineno}: expected 'p cnf N M'")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise MalformedHeader(f"line {lineno}: clause before the header")
        for tok in line.split():
            if not re.fullmatch(r"-?[0-9]+", tok):
                raise MalformedToken(f"line {lineno}: bad token {tok!r}")
            lit = int(tok)
            if lit == 0:
                if not current:
                    raise EmptyClause(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise LiteralOutOfRange(f"line {lineno}: literal {lit} with N={header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise MalformedHeader("no 'p cnf' header")
    if current:
        log.warning("last clause lacks the terminating 0; accepted")
        clauses.append(tuple(current))
    if len(clauses) != header[1]:
        log.warning("header announces %d clauses, body has %d", header[1], len(clauses))
    return CnfFormula(header[0], tuple(clauses))


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {phi.M}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ JSON schema

class SchemaViolation(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


_INT = re.compile(r"-?(0|[1-9][0-9]*)")


def _num(x: int) -> str:
    return str(x)


def _nums(xs) -> list:
    return [str(x) for x in xs]


def _opt(x):
    return None if x is None else str(x)


def to_json(inst) -> dict:
    """JSON-ready dict for an instance, witness or pass output."""
    if isinstance(inst, CnfFormula):
        return {"type": "cnf", "num_vars": inst.num_vars, "clauses": [list(c) for c in inst.clauses]}
    if isinstance(inst, PartitionInstance):
        return {"type": "partition", "k": inst.k, "items": _nums(inst.items), "set": inst.set_flag,
                "targets": None if inst.targets is None else _nums(inst.targets),
                "capacity": _opt(inst.capacity), "bounded_W": _opt(inst.bounded_W)}
    if isinstance(inst, GroupedInstance):
        return {"type": "grouped", "k": inst.k, "s": inst.s, "W": _num(inst.W),
                "groups": [_nums(g) for g in inst.groups], "weak": inst.weak, "set": inst.set_flag,
                "targets": None if inst.targets is None else _nums(inst.targets)}
    if isinstance(inst, SchedulingInstance):
        return {"type": "scheduling", "k": inst.k, "objective": inst.objective,
                "threshold": _num(inst.threshold),
                "speeds": None if inst.speeds is None else [format_rational(s) for s in inst.speeds],
                "jobs": [{"p": _num(j.p), "r": _opt(j.r), "d": _opt(j.d), "w": _opt(j.w)}
                         for j in inst.jobs]}
    if isinstance(inst, VssInstance):
        return {"type": "vss", "vectors": [_nums(v) for v in inst.vectors], "target": _nums(inst.target)}
    if isinstance(inst, SubsetSumInstance):
        return {"type": "subset_sum", "items": _nums(inst.items), "target": _num(inst.target)}
    if isinstance(inst, Decided):
        return {"type": "decided", "verdict": "yes" if inst.verdict else "no", "reason": inst.reason}
    if isinstance(inst, Reduced):
        return to_json(inst.instance)
    if isinstance(inst, (PartitionWitness, GroupedWitness)):
        return {"bins": [list(b) if isinstance(b, tuple) else b for b in inst.bins]}
    if isinstance(inst, ScheduleWitness):
        return {"slots": [[m, format_rational(Fraction(t))] for m, t in inst.slots]}
    if isinstance(inst, SubsetWitness):
        return {"chosen": list(inst.chosen)}
    if isinstance(inst, (list, tuple)):
        # assignment vector from the SAT solver
        return {"assignment": [int(v) for v in inst]}
    raise TypeError(f"cannot serialise {type(inst).__name__}")


def serialize_instance(inst) -> str:
    return json.dumps(to_json(inst), sort_keys=True, indent=2) + "\n"


class _Reader:
    """Typed field access that reports the JSON path of every violation."""

    def __init__(self, obj, path="$"):
        self.obj, self.path = obj, path

    def sub(self, key):
        return f"{self.path}.{key}" if isinstance(key, str) else f"{self.path}[{key}]"

    def field(self, key, required=True):
        if not isinstance(self.obj, dict):
            raise SchemaViolation(self.path, "expected an object")
        if key not in self.obj:
            if required:
                raise SchemaViolation(self.sub(key), "missing field")
            return None
        return self.obj[key]

    def small_int(self, key):
        v = self.field(key)
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaViolation(self.sub(key), "expected an integer")
        return v

    def flag(self, key):
        v = self.field(key, required=False)
        if v is None:
            return False
        if not isinstance(v, bool):
            raise SchemaViolation(self.sub(key), "expected true or false")
        return v


def _dec(value, path, signed=False):
    if not isinstance(value, str) or not _INT.fullmatch(value):
        raise SchemaViolation(path, f"expected a decimal string, got {value!r}")
    x = int(value)
    if x < 0 and not signed:
        raise SchemaViolation(path, "expected a natural number")
    return x


def _dec_list(value, path):
    if not isinstance(value, list):
        raise SchemaViolation(path, "expected a list")
    return tuple(_dec(v, f"{path}[{i}]") for i, v in enumerate(value))


def _opt_dec(r: _Reader, key):
    v = r.field(key, required=False)
    return None if v is None else _dec(v, r.sub(key))


def _opt_list(r: _Reader, key):
    v = r.field(key, required=False)
    return None if v is None else _dec_list(v, r.sub(key))


def from_json(obj, path="$"):
    r = _Reader(obj, path)
    kind = r.field("type")
    try:
        if kind == "cnf":
            clauses = r.field("clauses")
            if not isinstance(clauses, list) or not all(isinstance(c, list) for c in clauses):
                raise SchemaViolation(r.sub("clauses"), "expected a list of lists")
            return CnfFormula(r.small_int("num_vars"), tuple(tuple(c) for c in clauses))
        if kind == "partition":
            return PartitionInstance(_dec_list(r.field("items"), r.sub("items")), r.small_int("k"),
                                     r.flag("set"), _opt_list(r, "targets"),
                                     _opt_dec(r, "capacity"), _opt_dec(r, "bounded_W"))
        if kind == "grouped":
            groups = r.field("groups")
            if not isinstance(groups, list):
                raise SchemaViolation(r.sub("groups"), "expected a list")
            return GroupedInstance(
                tuple(_dec_list(g, f"{r.sub('groups')}[{i}]") for i, g in enumerate(groups)),
                r.small_int("k"), r.small_int("s"), _dec(r.field("W"), r.sub("W")),
                _opt_list(r, "targets"), r.flag("weak"), r.flag("set"))
        if kind == "scheduling":
            jobs = r.field("jobs")
            if not isinstance(jobs, list):
                raise SchemaViolation(r.sub("jobs"), "expected a list")
            parsed = []
            for i, j in enumerate(jobs):
                jr = _Reader(j, f"{r.sub('jobs')}[{i}]")
                parsed.append(Job(_dec(jr.field("p"), jr.sub("p")), _opt_dec(jr, "r"),
                                  _opt_dec(jr, "d"), _opt_dec(jr, "w")))
            speeds = r.field("speeds", required=False)
            if speeds is not None:
                try:
                    speeds = tuple(parse_rational(s) for s in speeds)
                except (NumericError, TypeError, AttributeError) as e:
                    raise SchemaViolation(r.sub("speeds"), str(e)) from None
            return SchedulingInstance(r.small_int("k"), tuple(parsed), r.field("objective"),
                                      _dec(r.field("threshold"), r.sub("threshold"), signed=True),
                                      speeds)
        if kind == "vss":
            vectors = r.field("vectors")
            if not isinstance(vectors, list):
                raise SchemaViolation(r.sub("vectors"), "expected a list")
            return VssInstance(tuple(_dec_list(v, f"{r.sub('vectors')}[{i}]") for i, v in enumerate(vectors)),
                               _dec_list(r.field("target"), r.sub("target")))
        if kind == "subset_sum":
            return SubsetSumInstance(_dec_list(r.field("items"), r.sub("items")),
                                     _dec(r.field("target"), r.sub("target")))
        if kind == "decided":
            verdict = r.field("verdict")
            if verdict not in ("yes", "no"):
                raise SchemaViolation(r.sub("verdict"), "expected 'yes' or 'no'")
            return Decided(verdict == "yes", str(r.field("reason", required=False) or ""))
    except (ProblemError, NumericError) as e:
        raise SchemaViolation(path, str(e)) from None
    raise SchemaViolation(r.sub("type"), f"unknown instance type {kind!r}")


def parse_instance(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaViolation("$", f"invalid JSON: {e}") from None
    return from_json(obj)


def read_formula(text: str) -> CnfFormula:
    """DIMACS, or a JSON 'cnf' instance."""
    if text.lstrip().startswith("{"):
        phi = parse_instance(text)
        if not isinstance(phi, CnfFormula):
            raise SchemaViolation("$.type", "expected a cnf instance")
        return phi
    return parse_dimacs(text)


# ------------------------------------------------------------ commands

EQUIV_PASSES = {
    "partition-to-binpacking": equivalences.partition_to_binpacking,
    "binpacking-to-partition": equivalences.binpacking_to_partition,
    "targets-to-multiset": equivalences.targets_to_plain_multiset,
    "multiset-to-bounded": equivalences.multiset_to_bounded,
    "bounded-to-set": equivalences.bounded_multiset_to_set,
    "qcmax-to-pcmax": equivalences.qcmax_to_pcmax,
    "bounded-to-grouped": lambda x: Reduced(equivalences.bounded_to_weak_grouped_q1(x), {}),
    "weak-targets-to-multiset": equivalences.weak_targets_to_weak_multiset,
    "weak-multiset-to-set": equivalences.weak_multiset_to_weak_set,
}

SCHED_PASSES = {
    "sumuj0": sched_reductions.grouped_to_sumUj0,
    "reverse-time": sched_reductions.reverse_time,
    "wjcj": sched_reductions.grouped_to_wjcj,
    "pjuj": sched_reductions.weak_grouped_to_pjUj,
    "lmax-shift": sched_reductions.lmax_tmax_shift,
    "normalize-r": sched_reductions.normalize_release_dates,
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out_path, stdout):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _cmd_reduce(args, stdout) -> int:
    text = _read(args.input)
    if args.target == "eth":
        phi = reduce_eth.pad_formula(read_formula(text), args.k)
        inst, _ = reduce_eth.build_eth_instance(phi, args.k)
        _emit(serialize_instance(inst), args.output, stdout)
        return 0
    if args.target == "seth":
        phi = reduce_seth.pad_variables(read_formula(text), args.k, args.a)
        params = reduce_seth.seth_params(phi, args.k, args.a, parse_rational(args.mu))
        members = [{"gamma": list(g), "instance": to_json(inst)}
                   for g, inst in reduce_seth.seth_instance_family(phi, params)]
        _emit(_dump({"type": "family", "members": members}), args.output, stdout)
        return 0
    inst = parse_instance(text)
    if args.target == "equiv":
        out = EQUIV_PASSES[args.pass_id](inst)
    elif args.target == "sched":
        out = SCHED_PASSES[args.pass_id](inst)
    else:  # vss
        if args.to_ss:
            if not isinstance(inst, VssInstance):
                raise UsageError("--to-ss expects a vss instance")
            out = vss.vss_to_subset_sum(inst)
        else:
            if not isinstance(inst, SubsetSumInstance) or args.k is None:
                raise UsageError("--from-ss expects a subset_sum instance and --k")
            members = [{"carries": list(c), "instance": to_json(m)}
                       for c, m in vss.carry_members(inst.items, inst.target, args.k)]
            _emit(_dump({"type": "family", "members": members}), args.output, stdout)
            return 0
    _emit(serialize_instance(out), args.output, stdout)
    return 0


def _cmd_solve(args, stdout) -> int:
    text = _read(args.input)
    if not text.lstrip().startswith("{"):
        inst = parse_dimacs(text)
    else:
        inst = parse_instance(text)
    if isinstance(inst, Decided):
        result = {"verdict": "yes" if inst.verdict else "no", "witness": None, "states": 0}
    elif isinstance(inst, CnfFormula):
        rep = solvers.sat_bruteforce(inst)
        result = {"verdict": "yes" if rep.verdict else "no", "states": rep.states_explored,
                  "witness": None if rep.witness is None else to_json(rep.witness)}
    else:
        rep = solvers.solve(inst, args.solver, args.budget)
        result = {"verdict": "yes" if rep.verdict else "no", "states": rep.states_explored,
                  "witness": None if rep.witness is None else to_json(rep.witness)}
        if rep.value is not None:
            result["value"] = format_rational(Fraction(rep.value))
    stdout.write(_dump(result))
    return 0


def _cmd_verify(args, stdout) -> int:
    if args.pass_id not in harness.PASSES:
        raise UsageError(f"unknown pass {args.pass_id!r}; known: {', '.join(sorted(harness.PASSES))}")
    corpus = harness.corpus_for(args.pass_id, args.seed, args.count)
    report = harness.roundtrip_check(args.pass_id, corpus, args.budget)
    summary = report.summary()
    spec = harness.PASSES[args.pass_id]
    if spec.n_bound is not None:
        audit = harness.param_audit(args.pass_id, corpus)
        summary["audit"] = {"checked": audit.checked, "ok": audit.ok,
                            "max_n_ratio": format_rational(audit.max_n_ratio),
                            "max_T_ratio": format_rational(audit.max_T_ratio)}
        ok = report.ok and audit.ok
    else:
        ok = report.ok
    stdout.write(_dump(summary))
    return 0 if ok else 1


def _cmd_gadget(args, stdout) -> int:
    if args.kind == "behrend":
        B = gadgets.behrend_set(args.n, args.k, parse_rational(args.mu))
        ok, bad = gadgets.verify_avg_free(B.elements, args.k)
        stdout.write(_dump({"elements": _nums(B.elements), "average_free": ok,
                            "params": {key: str(v) for key, v in B.params.items()}}))
        return 0 if ok else 1
    F = gadgets.filler_multiset(args.tau, args.k)
    stdout.write(_dump({"tau": str(args.tau), "k": args.k, "items": _nums(F.P)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reduction-forge",
                                     description="Compile SAT into partition and scheduling instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    red = sub.add_parser("reduce", help="apply a reduction pass")
    red_sub = red.add_subparsers(dest="target", required=True)
    for name in ("eth", "seth"):
        p = red_sub.add_parser(name)
        p.add_argument("input")
        p.add_argument("--k", type=int, default=2)
        p.add_argument("-o", "--output")
        if name == "seth":
            p.add_argument("--a", type=int, default=1)
            p.add_argument("--mu", default="1/2")
    p = red_sub.add_parser("equiv")
    p.add_argument("--pass", dest="pass_id", choices=sorted(EQUIV_PASSES), required=True)
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p = red_sub.add_parser("sched")
    p.add_argument("--pass", dest="pass_id", choices=sorted(SCHED_PASSES), required=True)
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p = red_sub.add_parser("vss")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to-ss", action="store_true")
    mode.add_argument("--from-ss", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("input")
    p.add_argument("-o", "--output")

    sol = sub.add_parser("solve", help="decide an instance exactly")
    sol.add_argument("input")
    sol.add_argument("--solver", choices=("auto", "dp", "brute"), default="auto")
    sol.add_argument("--budget", type=int, default=None)

    ver = sub.add_parser("verify", help="round-trip check a registered pass")
    ver.add_argument("--pass", dest="pass_id", required=True)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--count", type=int, default=20)
    ver.add_argument("--budget", type=int, default=None)

    gad = sub.add_parser("gadget", help="build a gadget")
    gad_sub = gad.add_subparsers(dest="kind", required=True)
    p = gad_sub.add_parser("behrend")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mu", default="1/2")
    p = gad_sub.add_parser("filler")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


COMMANDS = {"reduce": _cmd_reduce, "solve": _cmd_solve, "verify": _cmd_verify, "gadget": _cmd_gadget}


def main(argv=None, stdout=None, stderr=None) -> int:
    """Run the CLI; returns 0 on success, 1 on a failed check, 2 on usage errors."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return COMMANDS[args.command](args, stdout)
    except (UsageError, SchemaViolation, DimacsError, ProblemError, NumericError,
            OSError, solvers.GuardExceeded, gadgets.GadgetError,
            reduce_eth.EthError, reduce_seth.SethError) as e:
        stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
