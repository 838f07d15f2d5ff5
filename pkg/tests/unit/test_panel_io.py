"""
Unit tests for panel CSV ingest and serialization
"""

import io

import numpy as np
import pytest

from panel.io import dump_panel, load_panel
from panel.models import PanelValidationError

CSV = (
    "time,Basque,Madrid,Cataluna\n"
    "1955,3.85,4.91,3.55\n"
    "1956,3.95,5.01,3.69\n"
    "1957,4.03,5.21,3.81\n"
    "1958,4.02,5.18,3.77\n"
)


class TestLoadPanel:
    """Test cases for load_panel"""

    def test_load_bytes(self):
        """Test a valid panel from bytes"""
        panel = load_panel(CSV.encode(), treated="Basque", t0=3)
        assert panel.n_controls == 2
        assert panel.t1 == 1
        assert panel.times == [1955, 1956, 1957, 1958]
        assert panel.control_labels == ["Madrid", "Cataluna"]
        assert panel.treated[0] == pytest.approx(3.85)

    def test_load_path_and_stream(self, tmp_path):
        """Test path and text-stream sources"""
        path = tmp_path / "panel.csv"
        path.write_text(CSV, encoding="utf-8")
        a = load_panel(path, treated="Madrid", t0=2)
        b = load_panel(io.StringIO(CSV), treated="Madrid", t0=2)
        assert a.treated_label == "Madrid"
        np.testing.assert_array_equal(a.outcomes, b.outcomes)

    def test_minimal_panel(self):
        """Test a 3-row, 2-unit CSV"""
        panel = load_panel(b"time,y,x\n1,1.0,2.0\n2,2.0,3.0\n3,4.0,5.0\n", treated="y", t0=2)
        assert (panel.n_controls, panel.t0, panel.t1) == (1, 2, 1)

    def test_bom_is_stripped(self):
        """Test a UTF-8 byte-order mark before the header"""
        panel = load_panel(b"\xef\xbb\xbf" + CSV.encode(), treated="Basque", t0=3)
        assert panel.unit_labels[0] == "Basque"

    def test_empty_cell(self):
        """Test an empty cell names its row and column"""
        bad = CSV.replace("1956,3.95,5.01,3.69", "1956,3.95,,3.69")
        with pytest.raises(PanelValidationError, match=r"Missing value \(row 2, column 'Madrid'\)"):
            load_panel(bad.encode(), treated="Basque", t0=3)

    def test_non_numeric_cell(self):
        """Test a non-numeric cell names its row and column"""
        bad = CSV.replace("4.02", "four")
        with pytest.raises(PanelValidationError, match="Invalid numeric value") as info:
            load_panel(bad.encode(), treated="Basque", t0=3)
        assert info.value.row == 4
        assert info.value.column == "Basque"

    def test_unknown_treated(self):
        """Test an unknown treated label"""
        with pytest.raises(PanelValidationError, match="Unknown treated unit"):
            load_panel(CSV.encode(), treated="Navarra", t0=3)

    @pytest.mark.parametrize("t0", [1, 4, 10])
    def test_t0_out_of_range(self, t0):
        """Test t0 outside [2, rows)"""
        with pytest.raises(PanelValidationError, match="out of range"):
            load_panel(CSV.encode(), treated="Basque", t0=t0)

    def test_bad_header(self):
        """Test the first header cell must be 'time'"""
        with pytest.raises(PanelValidationError, match="'time'"):
            load_panel(CSV.replace("time", "year").encode(), treated="Basque", t0=3)

    def test_ragged_rows(self):
        """Test rows with extra fields are malformed"""
        with pytest.raises(PanelValidationError):
            load_panel((CSV + "1959,1,2,3,4\n").encode(), treated="Basque", t0=3)


class TestDumpPanel:
    """Test cases for dump_panel"""

    def test_round_trip(self, tmp_path):
        """Test load -> dump -> load reproduces the panel"""
        rng = np.random.default_rng(3)
        body = "\n".join(
            ",".join([str(2000 + t)] + [repr(float(v)) for v in rng.normal(size=3)])
            for t in range(6)
        )
        first = load_panel(f"time,a,b,c\n{body}\n".encode(), treated="b", t0=4)

        text = dump_panel(first, tmp_path / "out.csv")
        second = load_panel(tmp_path / "out.csv", treated="b", t0=4)

        assert text == (tmp_path / "out.csv").read_text(encoding="utf-8")
        np.testing.assert_array_equal(first.outcomes, second.outcomes)
        assert first.times == second.times
        assert first.unit_labels == second.unit_labels
        assert dump_panel(second) == text
