import contextlib
import io
import json

import pytest

from mobcorr import cli


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


def test_parse_int_token():
    assert cli.parse_int_token("42") == 42
    assert cli.parse_int_token("10^6") == 10**6
    assert cli.parse_int_token("2^20") == 2**20
    with pytest.raises(ValueError):
        cli.parse_int_token("1e6")
    with pytest.raises(ValueError):
        cli.parse_int_token("-5")


def test_parse_ladder():
    assert cli.parse_ladder("10,100,1000") == [10, 100, 1000]
    assert cli.parse_ladder("10^1..10^4") == [10, 100, 1000, 10000]
    assert cli.parse_ladder("2^3..2^5") == [8, 16, 32]
    with pytest.raises(ValueError):
        cli.parse_ladder("10^1..2^5")
    with pytest.raises(ValueError):
        cli.parse_ladder("")


def test_parse_range():
    assert cli.parse_range("1..10^6") == (1, 10**6)
    with pytest.raises(ValueError):
        cli.parse_range("5")
    with pytest.raises(ValueError):
        cli.parse_range("9..3")


def test_run_config_validation(tmp_path):
    with pytest.raises(ValueError):
        cli.RunConfig(cache_dir=None, block_len=3000)
    with pytest.raises(ValueError):
        cli.RunConfig(cache_dir=None, block_len=1 << 9)
    with pytest.raises(ValueError):
        cli.RunConfig(cache_dir=None, workers=0)
    with pytest.raises(ValueError):
        cli.RunConfig(cache_dir=None, output_format="xml")


def test_correlate_csv():
    code, out, _ = run_cli(["correlate", "--t", "1", "--ladder", "10,100", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x,r,r_over_x"
    assert len(lines) == 3
    assert lines[1].startswith("1,10,-3,")


def test_correlate_zero_shift_is_usage_error():
    code, out, err = run_cli(["correlate", "--t", "0", "--ladder", "10"])
    assert code == 2
    assert out == ""
    assert "squarefree" in err


def test_correlate_json_with_scaling():
    code, out, _ = run_cli(["correlate", "--t", "1", "--ladder", "10", "--c", "0.5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "correlation_series"
    assert doc["c"] == 0.5
    cp = doc["checkpoints"][0]
    assert cp["x"] == "10" and cp["r"] == "-3"
    assert "scaled" in cp


def test_correlate_negative_shift():
    code, out, _ = run_cli(["correlate", "--t", "-1", "--ladder", "10", "--format", "csv"])
    assert code == 0
    assert out.strip().splitlines()[1] == "-1,10,-2,-0.2"


def test_block_len_validation_is_usage_error():
    code, _, err = run_cli(["mertens", "--ladder", "10", "--block-len", "1000"])
    assert code == 2
    assert "power of two" in err


def test_unknown_command_exits_2():
    code, _, _ = run_cli(["frobnicate"])
    assert code == 2


def test_mertens_json_values():
    code, out, _ = run_cli(["mertens", "--ladder", "10^1..10^4"])
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "summatory_ladder"
    assert [p["mertens"] for p in doc["points"]] == ["-1", "1", "2", "-23"]


def test_sieve_block_files(tmp_path):
    cache_dir = tmp_path / "cache"
    code, out, _ = run_cli(
        ["sieve", "--range", "1..10^6", "--cache-dir", str(cache_dir), "--format", "csv"]
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[1].split(",")[2] == "mu-1-1000000.mubk"
    assert lines[1].endswith("written")
    assert (cache_dir / "mu-1-1000000.mubk").is_file()

    # rerun is a no-op when checksums match
    code, out, _ = run_cli(
        ["sieve", "--range", "1..10^6", "--cache-dir", str(cache_dir), "--format", "csv"]
    )
    assert code == 0
    assert out.strip().splitlines()[1].endswith("exists")


def test_sieve_two_blocks(tmp_path):
    cache_dir = tmp_path / "cache"
    code, out, _ = run_cli(["sieve", "--range", "1..2^21", "--cache-dir", str(cache_dir)])
    assert code == 0
    doc = json.loads(out)
    assert [b["path"] for b in doc["blocks"]] == [
        "mu-1-1048576.mubk",
        "mu-1048577-1048576.mubk",
    ]
    assert all(b["status"] == "written" for b in doc["blocks"])


def test_sieve_requires_cache_dir(monkeypatch):
    monkeypatch.delenv(cli.ENV_CACHE_DIR, raising=False)
    code, _, err = run_cli(["sieve", "--range", "1..1000"])
    assert code == 2
    assert "cache" in err


def test_sieve_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.ENV_CACHE_DIR, str(tmp_path / "envcache"))
    code, out, _ = run_cli(["sieve", "--range", "1..1000"])
    assert code == 0
    doc = json.loads(out)
    assert (tmp_path / "envcache" / doc["blocks"][0]["path"]).is_file()


def test_cache_dir_collision_is_io_error(tmp_path):
    target = tmp_path / "blocker"
    target.write_text("in the way")
    code, _, err = run_cli(["sieve", "--range", "1..1000", "--cache-dir", str(target)])
    assert code == 3
    assert "error" in err


def test_warm_cache_output_identical(tmp_path):
    cache_dir = tmp_path / "cache"
    args = ["mertens", "--ladder", "10^1..10^5", "--cache-dir", str(cache_dir)]
    code, cold, _ = run_cli(args)
    assert code == 0
    run_cli(["sieve", "--range", "1..10^5", "--cache-dir", str(cache_dir)])
    code, warm, _ = run_cli(args)
    assert code == 0
    assert warm == cold


def test_decompose_fields():
    code, out, _ = run_cli(["decompose", "--x", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "decomposition_report"
    assert doc["lhs_direct"] == "0"
    assert doc["rhs_pair_expansion"] == "1"
    assert doc["r0"] == "1/1"
    assert doc["r1"] == "0/1"
    assert doc["discrepancy_pair_vs_direct"] == "1"
    assert doc["corrected_expansion"] == "0"


def test_decompose_exact_ceiling_is_usage_error():
    code, _, err = run_cli(["decompose", "--x", "10^5"])
    assert code == 2
    assert "float" in err


def test_decompose_float_mode():
    code, out, _ = run_cli(["decompose", "--x", "50", "--mode", "float"])
    assert code == 0
    doc = json.loads(out)
    assert doc["arithmetic"] == "float"
    assert isinstance(doc["r0"], float)


def test_large_sieve_csv_columns():
    code, out, _ = run_cli(["large-sieve", "--x", "100", "--q", "10", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "Q,x,lhs,rhs,ratio"
    assert lines[1].startswith("10,100,")


def test_large_sieve_warns_when_q_exceeds_x():
    code, out, err = run_cli(["large-sieve", "--x", "10", "--q", "20"])
    assert code == 0
    assert "exceeds" in err
    assert json.loads(out)["q_exceeds_x"] is True


def test_ap_errors_profile_csv():
    code, out, _ = run_cli(["ap-errors", "--x", "10", "--qmax", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["q,max_abs_error", "1,0.0", "2,0.0", "3,0.6666666666666666"]


def test_ap_errors_detail_mode():
    code, out, _ = run_cli(["ap-errors", "--x", "10", "--q", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "ap_counts"
    assert [r["count"] for r in doc["rows"]] == ["4", "3", "3"]


def test_ap_errors_requires_exactly_one_mode():
    code, _, _ = run_cli(["ap-errors", "--x", "10"])
    assert code == 2
    code, _, _ = run_cli(["ap-errors", "--x", "10", "--q", "3", "--qmax", "5"])
    assert code == 2


def test_fit_csv_single_model_header():
    code, out, _ = run_cli(
        ["fit", "--ladder", "10^1..10^5", "--model", "EXP_SQRT_LOG", "--format", "csv"]
    )
    assert code == 0
    assert out.splitlines()[0] == "x,y,fitted_y,residual"


def test_fit_csv_multi_model_header():
    code, out, _ = run_cli(["fit", "--ladder", "10^1..10^5", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "model,x,y,fitted_y,residual"


def test_fit_unknown_model_is_usage_error():
    code, _, err = run_cli(["fit", "--ladder", "10^1..10^4", "--model", "NOPE"])
    assert code == 2
    assert "unknown model" in err


def test_fit_correlation_source():
    code, out, _ = run_cli(["fit", "--ladder", "10^1..10^4", "--t", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["source"] == "correlation"
    assert doc["shift_t"] == "1"
    assert len(doc["fits"]) == 3


def test_verify_passes_at_100():
    code, out, _ = run_cli(["verify", "--limit", "100"])
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == "verify_bundle"
    assert doc["passed"] is True
    assert doc["identities"]["passed"] is True
    assert doc["decomposition"]["exact_identities_hold"] is True
    assert doc["large_sieve"]["all_ratios_bounded"] is True
    assert doc["ap_partition"]["first_failure_q"] is None


def test_verify_zero_limit_is_usage_error():
    code, _, _ = run_cli(["verify", "--limit", "0"])
    assert code == 2


def test_figures_written(tmp_path):
    figs = tmp_path / "figs"
    code, out, err = run_cli(
        ["correlate", "--t", "1", "--ladder", "10,100,1000", "--figures", str(figs)]
    )
    assert code == 0
    png = figs / "correlation.png"
    assert png.is_file()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "figure" in err
    json.loads(out)  # stdout stays machine readable


def test_json_round_trip_all_documents(tmp_path):
    cases = [
        ["mertens", "--ladder", "10,100"],
        ["correlate", "--t", "2", "--ladder", "10,100"],
        ["correlate", "--t", "1", "--ladder", "10", "--c", "1.5"],
        ["decompose", "--x", "10"],
        ["decompose", "--x", "10", "--mode", "float"],
        ["large-sieve", "--x", "50", "--q", "5"],
        ["ap-errors", "--x", "30", "--qmax", "6"],
        ["ap-errors", "--x", "30", "--q", "4"],
        ["fit", "--ladder", "10^1..10^5"],
        ["verify", "--limit", "20"],
    ]
    for argv in cases:
        code, out, _ = run_cli(argv)
        assert code == 0, argv
        doc = json.loads(out)
        assert rebuild_document(doc) == doc, argv


def rebuild_document(doc):
    kind = doc["type"]
    if kind == "summatory_ladder":
        return cli.summatory_to_doc(cli.doc_to_summatory(doc))
    if kind == "correlation_series":
        return cli.correlation_to_doc(cli.doc_to_correlation(doc), doc.get("c"))
    if kind == "decomposition_report":
        return cli.decomposition_to_doc(cli.doc_to_decomposition(doc))
    if kind == "large_sieve_report":
        return cli.large_sieve_to_doc(cli.doc_to_large_sieve(doc))
    if kind == "ap_error_profile":
        x, rows = cli.doc_to_ap_profile(doc)
        return cli.ap_profile_to_doc(x, rows)
    if kind == "ap_counts":
        return cli.ap_counts_to_doc(cli.doc_to_ap_counts(doc))
    if kind == "decay_fit_report":
        fits = cli.doc_to_fits(doc)
        rows = [
            (r["model"], int(r["x"]), r["y"], r["fitted_y"], r["residual"])
            for r in doc["rows"]
        ]
        shift = None if doc["shift_t"] is None else int(doc["shift_t"])
        return cli.fits_to_doc(doc["source"], shift, int(doc["dropped_points"]), fits, rows)
    if kind == "identity_report":
        return cli.identity_report_to_doc(cli.doc_to_identity_report(doc))
    if kind == "verify_bundle":
        out = dict(doc)
        out["identities"] = rebuild_document(doc["identities"])
        out["decomposition"] = {
            "exact_identities_hold": doc["decomposition"]["exact_identities_hold"],
            "reports": [rebuild_document(r) for r in doc["decomposition"]["reports"]],
        }
        out["large_sieve"] = {
            "all_ratios_bounded": doc["large_sieve"]["all_ratios_bounded"],
            "reports": [rebuild_document(r) for r in doc["large_sieve"]["reports"]],
        }
        return out
    raise AssertionError(f"unhandled document type {kind}")
