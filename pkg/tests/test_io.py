"""Sample file formats and parameter serialization."""

import numpy as np
import pytest

from hypoexp import (
    EME,
    DataError,
    Erlang,
    Exponential,
    Hypoexponential,
    Sample,
    dist_from_dict,
    dist_to_dict,
    load_dist,
    read_samples,
    save_dist,
    write_samples,
)


class TestSampleFiles:
    def test_plain_round_trip(self, tmp_path):
        path = tmp_path / "values.txt"
        values = np.array([0.0, 1.5, 2.25, 1e-12, 17.125])
        write_samples(path, values)
        back = read_samples(path)
        np.testing.assert_array_equal(back.values, values)
        assert back.label == str(path)

    def test_plain_skips_blank_and_comment_lines(self, tmp_path):
        path = tmp_path / "values.txt"
        path.write_text("# header comment\n1.0\n\n2.0\n")
        np.testing.assert_array_equal(read_samples(path).values, [1.0, 2.0])

    def test_csv_column(self, tmp_path):
        path = tmp_path / "table.csv"
        path.write_text("idx,duration,other\n0,1.5,9\n1,2.5,9\n2,0.25,9\n")
        batch = read_samples(path, column="duration")
        np.testing.assert_array_equal(batch.values, [1.5, 2.5, 0.25])
        assert batch.label.endswith(":duration")

    def test_csv_missing_column(self, tmp_path):
        path = tmp_path / "table.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(DataError):
            read_samples(path, column="duration")

    def test_non_numeric_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.0\noops\n")
        with pytest.raises(DataError):
            read_samples(path)

    def test_negative_rejected(self, tmp_path):
        path = tmp_path / "neg.txt"
        path.write_text("1.0\n-3.0\n")
        with pytest.raises(DataError):
            read_samples(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_samples(tmp_path / "nope.txt")

    def test_write_accepts_sample(self, tmp_path):
        path = tmp_path / "s.txt"
        write_samples(path, Sample(np.array([1.0, 2.0]), label="x"))
        np.testing.assert_array_equal(read_samples(path).values, [1.0, 2.0])


class TestParameterRecords:
    @pytest.mark.parametrize(
        "dist",
        [
            Exponential(2.5),
            Erlang(4, 0.7),
            Hypoexponential((1.0, 2.0, 4.5)),
            EME(3, 1.25, 0.4),
        ],
        ids=lambda d: repr(d),
    )
    def test_round_trip(self, dist, tmp_path):
        record = dist_to_dict(dist)
        assert record["family"]
        assert dist_from_dict(record) == dist
        path = tmp_path / "params.json"
        save_dist(path, dist)
        assert load_dist(path) == dist

    def test_record_uses_lambda_key(self):
        assert dist_to_dict(Exponential(2.0)) == {"family": "exponential", "lambda": 2.0}
        rec = dist_to_dict(EME(2, 1.0, 3.0))
        assert rec == {"family": "eme", "n": 2, "lambda": 1.0, "w": 3.0}

    def test_bad_record(self):
        from hypoexp import ParameterError

        with pytest.raises(ParameterError):
            dist_from_dict({"n": 2})
        with pytest.raises(ParameterError):
            dist_from_dict({"family": "cauchy"})
