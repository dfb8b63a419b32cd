import json

import pandas as pd
import pytest
from pandas.testing import assert_frame_equal

from utils.md2html import markdown_table, markdown_to_html
from utils.tables import from_json, render, to_csv, to_json, write_output


@pytest.fixture
def table():
    return pd.DataFrame(
        [(1, "1/2", "+", 0.1, True), (2, "3/2", None, -1 / 3, False)],
        columns=["n", "j", "branch", "dE [Ry]", "passed"],
    )


def test_json_keeps_full_precision(table):
    payload = json.loads(to_json(table))
    assert payload["columns"] == ["n", "j", "branch", "dE [Ry]", "passed"]
    assert payload["rows"][1] == [2, "3/2", None, -1 / 3, False]


def test_json_reads_back(table):
    assert_frame_equal(from_json(to_json(table)), table)


def test_csv_format(table):
    lines = to_csv(table).splitlines()
    assert lines[0] == "n,j,branch,dE [Ry],passed"
    assert lines[1] == "1,1/2,+,0.10000000000000001,True"
    assert lines[2].startswith("2,3/2,,-0.33333333333333331,")


def test_markdown(table):
    text = markdown_table(table, "Shifts")
    assert text.startswith("# Shifts\n")
    assert text.count("|") > 10 and "dE [Ry]" in text
    assert "-0.33333333333333331" in text
    assert "true" in text and "false" in text


def test_html():
    text = markdown_to_html(markdown_table(pd.DataFrame({"n": [1]}), "Levels"), "Levels")
    assert "<title>Levels</title>" in text
    assert "<table>" in text and "<td>1</td>" in text


def test_render_rejects_unknown_format(table):
    with pytest.raises(ValueError):
        render(table, "xml")


def test_write_output_to_file(tmp_path):
    path = tmp_path / "nested" / "out.csv"
    write_output("a,b\n", path)
    assert path.read_text() == "a,b\n"


def test_write_output_to_stdout(capsys):
    write_output("hello\n")
    assert capsys.readouterr().out == "hello\n"
