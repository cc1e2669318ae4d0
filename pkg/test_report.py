import math

import numpy as np

from report import (
    OutputFormat,
    ReportType,
    clean_number,
    create_report,
    format_number,
    format_table,
    parse_report,
    read_csv_table,
    write_output,
)


def test_clean_number():
    assert math.copysign(1.0, clean_number(-0.0)) == 1.0
    assert clean_number(np.float64(2.5)) == 2.5
    assert clean_number(math.inf) is None
    assert clean_number(math.nan) is None


def test_csv_fields_round_trip_exactly():
    values = [0.1, 1.0 / 3.0, -2.5e-17, 123456789.123456789, -0.0]
    text = format_table(["x", "y"], [(v, 2.0 * v) for v in values])
    assert text.startswith("x,y\n")
    assert "\r" not in text
    assert "-0.0" not in text
    columns, rows = read_csv_table(text)
    assert columns == ["x", "y"]
    assert [row[0] for row in rows] == [v + 0.0 for v in values]
    assert format_number(1.0 / 3.0) == repr(1.0 / 3.0)


def test_json_table_form():
    text = format_table(["z", "V+R"], [(1.0, math.inf)], OutputFormat.JSON)
    report = parse_report(text)
    assert report == {"type": ReportType.TABLE, "columns": ["z", "V+R"], "rows": [[1.0, None]]}


def test_reports_are_stable():
    data = {"b": 1, "a": [1.5, 2.5]}
    assert create_report(ReportType.SPECTRUM, data) == create_report(ReportType.SPECTRUM, data)
    assert create_report(ReportType.SPECTRUM, data).index('"b"') < create_report(ReportType.SPECTRUM, data).index('"a"')
    assert parse_report("not json") is None


def test_write_output(tmp_path, capsys):
    target = tmp_path / "out.csv"
    assert write_output("x\n1.0\n", str(target))
    assert target.read_text() == "x\n1.0\n"
    assert write_output("hello\n")
    assert capsys.readouterr().out == "hello\n"
    assert not write_output("x", str(tmp_path / "missing" / "out.csv"))
