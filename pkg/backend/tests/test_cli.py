import json

import numpy as np
import pandas as pd
import pytest

from topo_sensing.core.config import settings
from topo_sensing.core.errors import ConfigError
from topo_sensing.core.run_config import RunConfig
from topo_sensing.main import main
from topo_sensing.many_body.closed_forms import chern_tpt_sum
from topo_sensing.services.config_service import (
    build_run_config,
    family_from_config,
    parse_interval,
    parse_lambda_grid,
)
from topo_sensing.services.output_service import render_table


def run_cli(tmp_path, *args, name="out.csv"):
    out = tmp_path / name
    code = main([*args, "--no-record", "--output", str(out)])
    return code, out


class TestConfig:

    def test_canonical_json_round_trip(self):
        cfg = build_run_config("estimate", {"seed": 5}, {"lambdas": [0.4], "params": {"j2": 1.0}})
        text = cfg.canonical_json()
        assert RunConfig.from_json(text).canonical_json() == text

    def test_flags_override_file(self):
        cfg = build_run_config(
            "edge-qfi",
            {"lambdas": [0.3], "params": {"t1": 2.0}},
            {"lambdas": [0.4], "params": {"t2": 3.0}},
        )
        assert cfg.lambdas == [0.4]
        assert cfg.params == {"t1": 2.0, "t2": 3.0}
        assert cfg.sizes == [32]

    def test_lambda_grid(self):
        assert parse_lambda_grid("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]

    @pytest.mark.parametrize("text", ["0:1", "a:b:c", "0:1:0"])
    def test_malformed_lambda_grid(self, text):
        with pytest.raises(ConfigError):
            parse_lambda_grid(text)

    def test_malformed_interval(self):
        with pytest.raises(ConfigError):
            parse_interval("0.5")

    def test_invalid_values(self):
        with pytest.raises(ConfigError):
            build_run_config("edge-qfi", {}, {"sizes": [0]})
        with pytest.raises(ConfigError):
            build_run_config("edge-qfi", {"unknown_key": 1}, {})

    def test_unknown_model(self):
        cfg = build_run_config("edge-qfi", {}, {"model": "haldane"})
        with pytest.raises(ConfigError):
            family_from_config(cfg)

    def test_canonical_csv(self):
        text = render_table(pd.DataFrame({"lambda": [0.1], "L": [8]}), "csv")
        assert text == "lambda,L\n0.10000000000000001,8\n"


class TestCommands:

    def test_edge_qfi(self, tmp_path):
        code, out = run_cli(tmp_path, "edge-qfi", "--lambda", "0.5", "--sizes", "32")
        assert code == 0
        row = pd.read_csv(out).iloc[0]
        assert row["F_numeric"] == pytest.approx(row["F_closed_form"], rel=1e-6)
        assert row["cfi_position"] == pytest.approx(row["F_closed_form"], rel=1e-8)

    def test_edge_qfi_chern_has_no_closed_form(self, tmp_path):
        code, out = run_cli(tmp_path, "edge-qfi", "--model", "chern-wire", "--lambda", "-3.5", "--sizes", "24")
        assert code == 0
        row = pd.read_csv(out).iloc[0]
        assert np.isnan(row["F_closed_form"])
        assert row["F_numeric"] > 0

    def test_empty_lambda_list(self, tmp_path):
        code, _ = run_cli(tmp_path, "edge-qfi", "--lambda", "")
        assert code == 2

    def test_manybody_closed_form(self, tmp_path):
        code, out = run_cli(tmp_path, "manybody-qfi", "--method", "closed-form", "--lambda", "1", "--sizes", "6")
        assert code == 0
        assert pd.read_csv(out)["F"].iloc[0] == pytest.approx(5.0 / 3.0)

    def test_manybody_closed_form_off_critical(self, tmp_path):
        code, _ = run_cli(tmp_path, "manybody-qfi", "--method", "closed-form", "--lambda", "0.5")
        assert code == 2

    def test_manybody_invalid_pairing(self, tmp_path):
        code, _ = run_cli(tmp_path, "manybody-qfi", "--model", "chern-wire")
        assert code == 2

    def test_manybody_chern_pbc(self, tmp_path):
        code, out = run_cli(tmp_path, "manybody-qfi", "--model", "chern-bloch", "--lambda", "-4", "--sizes", "16")
        assert code == 0
        row = pd.read_csv(out).iloc[0]
        assert row["F"] == pytest.approx(4.0 * chern_tpt_sum(16), rel=1e-6)
        assert row["excluded"] == 1

    def test_exponent_scan_malformed_grid(self, tmp_path):
        code, _ = run_cli(tmp_path, "exponent-scan", "--sizes", "64,128")
        assert code == 2

    def test_exponent_scan_all_rows_failed(self, tmp_path):
        code, out = run_cli(tmp_path, "exponent-scan", "--model", "chern-bloch", "--lambda=-3,-2")
        assert code == 3
        assert pd.read_csv(out)["flags"].tolist() == ["error:InvalidParams"] * 2

    def test_exponent_scan_edge(self, tmp_path):
        code, out = run_cli(tmp_path, "exponent-scan", "--lambda", "0.9999,1.0")
        assert code == 0
        assert pd.read_csv(out)["b"].tolist() == pytest.approx([2.0, 2.0], abs=0.05)

    def test_estimate_is_reproducible(self, tmp_path):
        args = ["estimate", "--lambda", "0.5", "--sizes", "16", "--samples", "500", "--reps", "10",
                "--seed", "11", "--format", "json"]
        code_a, out_a = run_cli(tmp_path, *args, name="a.json")
        code_b, out_b = run_cli(tmp_path, *args, name="b.json")
        assert code_a == code_b == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        assert len(json.loads(out_a.read_text())["estimates"]) == 10

    def test_estimate_outside_interval(self, tmp_path):
        code, _ = run_cli(tmp_path, "estimate", "--lambda", "0.5", "--interval", "0.6:0.9")
        assert code == 2

    def test_closed_forms_to_stdout(self, capsys):
        code = main(["closed-forms", "--lambda", "1", "--sizes", "6", "--no-record"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "quantity,lambda,L,value,flags"
        assert len(lines) == 7

    def test_json_format(self, tmp_path):
        code, out = run_cli(tmp_path, "closed-forms", "--lambda", "0.5", "--sizes", "8", "--format", "json",
                            name="out.json")
        assert code == 0
        records = {r["quantity"]: r for r in json.loads(out.read_text())}
        assert records["ssh_tpt"]["value"] == pytest.approx(3.5)
        assert records["ssh_continuum"]["value"] == pytest.approx(2.0 / 3.0)
        # k1 = 1/L with alpha = 1, lambda - lambda_c = 0.5
        assert records["band_inversion"]["value"] == pytest.approx((0.125 / (0.125 ** 2 + 0.25)) ** 2)

    def test_closed_forms_use_configured_couplings(self, tmp_path, monkeypatch):
        monkeypatch.setattr(settings, "DEFAULT_T2", 2.0)
        code, out = run_cli(tmp_path, "closed-forms", "--lambda", "0.5", "--sizes", "8")
        assert code == 0
        table = pd.read_csv(out).set_index("quantity")
        assert table.loc["chern_tpt_sum", "value"] == pytest.approx(chern_tpt_sum(8, 1.0, 2.0))

        code, out = run_cli(tmp_path, "closed-forms", "--lambda", "0.5", "--sizes", "8", "--t2", "3",
                            name="flag.csv")
        assert code == 0
        table = pd.read_csv(out).set_index("quantity")
        assert table.loc["chern_tpt_sum", "value"] == pytest.approx(chern_tpt_sum(8, 1.0, 3.0))

    def test_config_file(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"lambdas": [1.0], "sizes": [8], "method": "closed-form"}))
        code, out = run_cli(tmp_path, "manybody-qfi", "--config", str(config))
        assert code == 0
        assert pd.read_csv(out)["F"].iloc[0] == pytest.approx(3.5)
