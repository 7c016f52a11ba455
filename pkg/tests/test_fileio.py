"""
Tests for matrix text files, CSV tables, edge lists and JSON documents.
"""
import json

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from fileio import (
    dumps_document, format_float, format_matrix, from_jsonable, parse_edge_list, parse_matrix,
    parse_token, read_csv_matrix, read_edge_list, read_matrix, read_timeseries_csv, read_vector,
    to_jsonable, write_csv_rows, write_document, write_matrix, write_timeseries_csv
)
from utils.error_handlers import ParseError

NEG = -np.inf


class TestTokens:
    @pytest.mark.parametrize("value, text", [
        (NEG, "-inf"),
        (np.inf, "inf"),
        (0.5, "0.5"),
        (0.1, "0.10000000000000001"),
    ])
    def test_format_float(self, value, text):
        assert format_float(value) == text

    @pytest.mark.parametrize("token, value", [
        ("-inf", NEG), ("INF", np.inf), ("+inf", np.inf), ("1e-3", 1e-3), (" 2 ", 2.0),
    ])
    def test_parse_token(self, token, value):
        assert parse_token(token) == value

    @pytest.mark.parametrize("token", ["nan", "abc", ""])
    def test_bad_tokens(self, token):
        with pytest.raises(ParseError):
            parse_token(token)


class TestMatrixText:
    def test_comments_commas_and_infinities(self):
        text = "# system matrix\n7 15 10 -inf\n\n14, -inf, 11, 11\n"
        assert_array_equal(parse_matrix(text), [[7.0, 15.0, 10.0, NEG], [14.0, NEG, 11.0, 11.0]])

    def test_ragged(self):
        with pytest.raises(ParseError):
            parse_matrix("1 2\n3\n")

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_matrix("# nothing here\n")

    def test_write_then_read(self, tmp_path):
        path = tmp_path / "A.txt"
        values = np.array([[0.1, NEG], [1.0 / 3.0, 2.0]])
        write_matrix(path, values, header="factor")
        assert path.read_text().startswith("# factor\n")
        assert_array_equal(read_matrix(path), values)

    def test_format_matrix(self):
        assert format_matrix([[1.0, NEG]]) == "1 -inf\n"

    def test_vectors(self, tmp_path):
        row = tmp_path / "row.txt"
        row.write_text("1 2 3\n")
        column = tmp_path / "column.txt"
        column.write_text("1\n2\n3\n")
        assert_array_equal(read_vector(row), [1.0, 2.0, 3.0])
        assert_array_equal(read_vector(column), [1.0, 2.0, 3.0])
        square = tmp_path / "square.txt"
        square.write_text("1 2\n3 4\n")
        with pytest.raises(ParseError):
            read_vector(square)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_matrix(tmp_path / "absent.txt")

    @pytest.mark.parametrize("reader", [read_matrix, read_csv_matrix, read_edge_list])
    def test_undecodable_bytes(self, tmp_path, reader):
        path = tmp_path / "binary.txt"
        path.write_bytes(b"1 2\n\xff\xfe\n")
        with pytest.raises(ParseError):
            reader(path)


class TestTables:
    def test_csv_with_header(self, tmp_path):
        path = tmp_path / "table.csv"
        write_csv_rows(path, [[0, 1.5, "a"], [1, NEG, "b"]], header=["vertex", "x", "label"])
        lines = path.read_text().splitlines()
        assert lines[0] == "# vertex,x,label"
        assert lines[2] == "1,-inf,b"

    def test_timeseries(self, tmp_path):
        path = tmp_path / "orbit.csv"
        X = np.array([[0.0, 2.0, 4.0], [1.0, 3.0, 5.0]])
        write_timeseries_csv(path, X)
        rows = read_timeseries_csv(path)
        assert_array_equal(rows, X.T)

    def test_timeseries_needs_two_rows(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("1,2\n")
        with pytest.raises(ParseError):
            read_timeseries_csv(path)

    def test_csv_errors(self, tmp_path):
        ragged = tmp_path / "ragged.csv"
        ragged.write_text("1,2\n3\n")
        with pytest.raises(ParseError):
            read_csv_matrix(ragged)
        bad = tmp_path / "bad.csv"
        bad.write_text("1,x\n")
        with pytest.raises(ParseError):
            read_csv_matrix(bad)


class TestEdgeLists:
    def test_parse(self):
        edges, n = parse_edge_list("0 1\n1 2 2.5  # weighted\n\n# comment\n4,2\n")
        assert edges == [(0, 1, 1.0), (1, 2, 2.5), (4, 2, 1.0)]
        assert n == 5

    def test_empty(self):
        assert parse_edge_list("") == ([], 0)

    @pytest.mark.parametrize("text", ["0\n", "0 1 2 3\n", "a b\n", "-1 2\n", "0 1 x\n"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_edge_list(text)

    def test_read(self, tmp_path):
        path = tmp_path / "edges.txt"
        path.write_text("0 1\n")
        assert read_edge_list(path) == ([(0, 1, 1.0)], 2)


class TestDocuments:
    def test_jsonable(self):
        document = to_jsonable({"x": np.array([1.0, NEG]), "n": np.int64(3), "ok": np.bool_(True)})
        assert document == {"x": [1.0, "-inf"], "n": 3, "ok": True}
        assert from_jsonable(document["x"]) == [1.0, NEG]

    def test_dumps_is_canonical(self):
        text = dumps_document({"b": 1, "a": [np.inf]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": ["inf"], "b": 1}

    def test_write_to_file_and_stdout(self, tmp_path, capsys):
        path = tmp_path / "out.json"
        write_document({"value": 0.5}, path)
        assert json.loads(path.read_text()) == {"value": 0.5}
        write_document({"value": 0.5})
        assert json.loads(capsys.readouterr().out) == {"value": 0.5}
