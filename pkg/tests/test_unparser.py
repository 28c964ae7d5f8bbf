
import csv
import io
import json

from ordopt.record import ResultRecord, problem_params
from ordopt.model import ProbabilityResult, make_problem
from ordopt.unparser import record_to_json, records_to_csv, serialize_records


PARAMS = problem_params(make_problem(100, 5, 0.05, 0.6))


def test_json_leaves_out_missing_fields() -> None:
    record = ResultRecord.from_probability(ProbabilityResult(0.9, "approx"), PARAMS)
    line = record_to_json(record)
    assert json.loads(line) == {"method": "approx", "params": PARAMS, "value": 0.9}
    assert line.index('"method"') < line.index('"params"') < line.index('"value"')


def test_json_carries_evidence() -> None:
    result = ProbabilityResult(0.5, "simulate", error_estimate=0.01, seed=3)
    record = ResultRecord.from_probability(result, PARAMS, replications=1000)
    obj = json.loads(record_to_json(record))
    assert obj["seed"] == 3
    assert obj["error_estimate"] == 0.01
    assert obj["replications"] == 1000


def test_json_failure_record() -> None:
    obj = json.loads(record_to_json(ResultRecord.failure("exact", PARAMS, "boom")))
    assert obj["value"] is None
    assert obj["error"] == "boom"


def test_json_lines() -> None:
    records = [ResultRecord("exact", PARAMS, 0.1), ResultRecord("exact", PARAMS, 0.2)]
    text = serialize_records(records, "json")
    assert text.endswith("\n")
    assert [json.loads(line)["value"] for line in text.splitlines()] == [0.1, 0.2]


def test_csv_layout() -> None:
    records = [
        ResultRecord("optimised", {"n": 10, "alpha": 0.1}, 0.1,
                     extras={"theta_used": 0.7, "feasible": True}),
        ResultRecord("plan", {"alpha": 0.1, "delta": 0.05}, None, log_n=1e5,
                     extras={"n_text": "2.806e43429"}),
    ]
    text = records_to_csv(records)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["method", "n", "alpha", "delta", "value", "error_estimate",
                       "seed", "log_n", "theta_used", "feasible", "n_text"]
    assert rows[1] == ["optimised", "10", "0.10000000000000001", "", "0.10000000000000001",
                       "", "", "", "0.69999999999999996", "true", ""]
    assert rows[2][0] == "plan"
    assert rows[2][4] == ""
    assert rows[2][7] == "100000"
    assert rows[2][10] == "2.806e43429"
    assert len(rows) == 3


def test_csv_round_trips_doubles() -> None:
    value = 0.1 + 0.2
    text = serialize_records([ResultRecord("exact", {}, value)], "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert float(rows[1][1]) == value
