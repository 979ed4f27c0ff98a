"""Command line, DIMACS parsing and JSON instance files."""

import io
import json
import random

import pytest

from reduction_forge import cli
from reduction_forge.problems import (
    CnfFormula, GroupedInstance, Job, PartitionInstance, SchedulingInstance, SubsetSumInstance,
    VssInstance,
)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_dimacs_example():
    phi = cli.parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert phi == CnfFormula(2, ((1, -2),))
    assert cli.parse_dimacs(cli.format_dimacs(phi)) == phi


def test_dimacs_errors():
    with pytest.raises(cli.MalformedHeader):
        cli.parse_dimacs("c only a comment\n")
    with pytest.raises(cli.LiteralOutOfRange):
        cli.parse_dimacs("p cnf 1 1\n2 0\n")
    with pytest.raises(cli.MalformedToken):
        cli.parse_dimacs("p cnf 1 1\nx 0\n")


def test_dimacs_fuzz_never_crashes():
    rng = random.Random(3)
    base = "p cnf 3 2\n1 -2 0\n2 3 -1 0\n"
    alphabet = "0123-  \npcnf"
    for _ in range(1000):
        chars = list(base)
        for _ in range(rng.randint(1, 6)):
            pos = rng.randrange(len(chars) + 1)
            op = rng.random()
            if op < 0.4 and chars:
                del chars[min(pos, len(chars) - 1)]
            elif op < 0.8:
                chars.insert(pos, rng.choice(alphabet))
            elif chars:
                chars[min(pos, len(chars) - 1)] = rng.choice(alphabet)
        try:
            cli.parse_dimacs("".join(chars))
        except cli.DimacsError:
            pass


@pytest.mark.parametrize("inst", [
    PartitionInstance((), 2),
    PartitionInstance((1, 2, 3), 2, capacity=3),
    PartitionInstance((1, 2, 3), 3, targets=(1, 2, 3)),
    GroupedInstance(((2 ** 20, 2 ** 20),), 2, 1, 2 ** 20, targets=(2 ** 20,), weak=True),
    SchedulingInstance(2, (Job(2, d=3), Job(1, d=1)), "SumUj", 1),
    SchedulingInstance(1, (Job(2),), "Cmax", 5, (1,)),
    SchedulingInstance(1, (Job(2, d=1),), "Lmax", -3),
    VssInstance(((1, 2),), (1, 2)),
    SubsetSumInstance((10 ** 40, 3), 10 ** 40 + 3),
])
def test_json_round_trip(inst):
    text = cli.serialize_instance(inst)
    assert cli.parse_instance(text) == inst
    assert cli.serialize_instance(cli.parse_instance(text)) == text


def test_json_rejects_malformed_numbers():
    text = json.dumps({"type": "subset_sum", "items": ["1e5"], "target": "3"})
    with pytest.raises(cli.SchemaViolation):
        cli.parse_instance(text)
    text = json.dumps({"type": "subset_sum", "items": [5], "target": "3"})
    with pytest.raises(cli.SchemaViolation):
        cli.parse_instance(text)


def test_solve_yes_instance(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(cli.serialize_instance(PartitionInstance((1, 2, 3), 2, capacity=3)))
    code, out, _ = run(["solve", str(path)])
    result = json.loads(out)
    assert code == 0 and result["verdict"] == "yes" and result["witness"] is not None


def test_solve_dimacs(tmp_path):
    path = tmp_path / "f.cnf"
    path.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, out, _ = run(["solve", str(path)])
    assert code == 0 and json.loads(out)["verdict"] == "no"


def test_reduce_eth_then_solve(tmp_path):
    src = tmp_path / "f.cnf"
    src.write_text("p cnf 3 1\n1 2 3 0\n")
    dst = tmp_path / "out.json"
    assert run(["reduce", "eth", str(src), "--k", "2", "-o", str(dst)])[0] == 0
    code, out, _ = run(["solve", str(dst)])
    assert json.loads(out)["verdict"] == "yes"


def test_reduce_family_outputs(tmp_path):
    src = tmp_path / "f.cnf"
    src.write_text("p cnf 2 1\n1 -2 0\n")
    code, out, _ = run(["reduce", "seth", str(src)])
    doc = json.loads(out)
    assert code == 0 and doc["type"] == "family" and doc["members"]
    ss = tmp_path / "ss.json"
    ss.write_text(cli.serialize_instance(SubsetSumInstance((3, 5, 6), 8)))
    code, out, _ = run(["reduce", "vss", "--from-ss", "--k", "2", str(ss)])
    assert code == 0 and len(json.loads(out)["members"]) == 3


def test_reduce_equiv_and_sched(tmp_path):
    src = tmp_path / "p.json"
    src.write_text(cli.serialize_instance(PartitionInstance((1, 2, 3), 2)))
    code, out, _ = run(["reduce", "equiv", "--pass", "partition-to-binpacking", str(src)])
    assert code == 0 and cli.parse_instance(out).capacity == 3
    sched = tmp_path / "s.json"
    sched.write_text(cli.serialize_instance(
        SchedulingInstance(1, (Job(2, r=1), Job(2, r=3), Job(2, r=5)), "Cmax", 12)))
    code, out, _ = run(["reduce", "sched", "--pass", "reverse-time", str(sched)])
    assert code == 0
    jobs = cli.parse_instance(out).jobs
    assert [j.d for j in jobs] == [11, 9, 7]


def test_verify_and_gadget_commands():
    code, out, _ = run(["verify", "--pass", "reverse_time", "--count", "10", "--seed", "7"])
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["gadget", "behrend", "--n", "4", "--k", "2"])
    assert code == 0 and json.loads(out)["average_free"]
    code, out, _ = run(["gadget", "filler", "--tau", "16", "--k", "2"])
    assert sorted(int(x) for x in json.loads(out)["items"]) == [1, 1, 2, 4, 4, 4]


def test_errors_exit_with_two(tmp_path):
    assert run(["frobnicate"])[0] == 2
    code, _, err = run(["solve", str(tmp_path / "missing.json")])
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "partition", "items": ["1e5"], "k": 2}')
    assert run(["solve", str(bad)])[0] == 2
    assert run(["verify", "--pass", "no_such_pass"])[0] == 2
