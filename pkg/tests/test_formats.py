import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_search.bell import SampleFormatError, SampleSet, format_samples, parse_samples, read_samples, write_samples
from pauli_search.densefile import DenseFormatError, format_dense, parse_dense, read_dense, write_dense
from pauli_search.pauli_core import DenseState, SizeGuardError


class TestSampleFile:
    def test_exact_bytes(self, tmp_path):
        s = SampleSet.from_runs([[0, 3, 1], [2, 2, 0]])
        path = tmp_path / "s.txt"
        write_samples(s, path)
        assert path.read_bytes() == b"3 2\n031\n220\n"

    def test_empty_set(self):
        s = SampleSet(4, np.zeros((0, 4), np.uint8))
        assert format_samples(s) == "4 0\n"
        assert parse_samples("4 0\n").M == 0

    @given(st.integers(1, 8), st.integers(0, 30), st.integers(0, 2**32 - 1))
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, n, m, seed):
        s = SampleSet(n, np.random.default_rng(seed).integers(0, 4, (m, n)))
        back = parse_samples(format_samples(s))
        np.testing.assert_array_equal(back.outcomes, s.outcomes)
        assert back.n == n

    def test_file_round_trip(self, tmp_path):
        s = SampleSet(2, np.random.default_rng(0).integers(0, 4, (50, 2)))
        write_samples(s, tmp_path / "a")
        np.testing.assert_array_equal(read_samples(tmp_path / "a").outcomes, s.outcomes)

    @pytest.mark.parametrize(
        "text,line,column",
        [
            ("2 2\n01\n0a\n", 3, 2),
            ("2 2\n014\n01\n", 2, None),
            ("2 1\n01\n33\n", 3, None),
            ("2 3\n01\n33\n", 4, None),
            ("2\n01\n", 1, None),
            ("x 1\n0\n", 1, None),
            ("", 1, None),
            ("3 1\n0 1\n", 2, 2),
        ],
    )
    def test_malformed(self, text, line, column):
        with pytest.raises(SampleFormatError) as info:
            parse_samples(text)
        assert info.value.line == line
        assert info.value.column == column
        assert f"line {line}" in str(info.value)

    def test_bad_byte_reports_column(self, tmp_path):
        path = tmp_path / "bad"
        path.write_bytes(b"3 1\n0\xff2\n")
        with pytest.raises(SampleFormatError) as info:
            read_samples(path)
        assert (info.value.line, info.value.column) == (2, 2)

    def test_crlf_rejected(self):
        with pytest.raises(SampleFormatError):
            parse_samples("1 1\r\n0\r\n")


class TestDenseFile:
    def test_round_trip_exact(self, states, tmp_path):
        for name, rho in states.items():
            path = tmp_path / f"{name}.txt"
            write_dense(rho, path)
            np.testing.assert_array_equal(read_dense(path).matrix, rho.matrix)

    def test_layout(self):
        text = format_dense(DenseState.maximally_mixed(1))
        assert text == "1\n0.5 0.0 0.0 0.0\n0.0 0.0 0.5 0.0\n"

    def test_complex_entries(self):
        rho = parse_dense("1\n0.5 0 0 -0.5\n0 0.5 0.5 0\n")
        assert rho.matrix[0, 1] == -0.5j and rho.matrix[1, 0] == 0.5j

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 1),
            ("one\n", 1),
            ("0\n", 1),
            ("1\n0.5 0 0 0\n", 3),
            ("1\n0.5 0 0\n0 0 0.5 0\n", 2),
            ("1\n0.5 0 0 0\n0 0 zz 0\n", 3),
        ],
    )
    def test_malformed(self, text, line):
        with pytest.raises(DenseFormatError) as info:
            parse_dense(text)
        assert info.value.line == line

    def test_not_a_state(self):
        with pytest.raises(ValueError):
            parse_dense("1\n1 0 0 0\n0 0 1 0\n")

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            parse_dense("9\n")
