"""Command-line interface.

Output goes to stdout as JSON (default) or CSV (--format csv).  Every
exact integer or rational serializes as a string ("p/q" for rationals)
because checkpoint values outgrow 53-bit floats; measured floats stay
JSON numbers.  All schemas live here, next to their parsers, and each
JSON document round-trips: doc == build(parse(doc)).

Exit codes: 0 success, 1 invariant failure (verify), 2 usage error,
3 I/O error.

Shift convention: correlate accepts negative --t; R(t, x) for t < 0 is
the sum over n <= x with n + t >= 1, which equals R(-t, x + t) after
reindexing, and an empty range reports 0.

Figure rendering (--figures DIR on mertens, correlate, ap-errors, fit)
writes PNG files into DIR and never touches stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import cache, correlation, decay, decomposition, identities, progressions, sieve

ENV_CACHE_DIR = "MOBIUS_CACHE_DIR"


@dataclass(frozen=True)
class RunConfig:
    cache_dir: Path | None
    block_len: int = sieve.DEFAULT_BLOCK_LEN
    workers: int = 1
    output_format: str = "json"
    exact_ceiling: int = 10**4

    def __post_init__(self) -> None:
        b = self.block_len
        if b < (1 << 10) or b > (1 << 26) or (b & (b - 1)) != 0:
            raise ValueError("block length must be a power of two in [2^10, 2^26]")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise ValueError("format must be json or csv")
        if self.exact_ceiling < 2:
            raise ValueError("exact ceiling must be >= 2")


_POWER_RE = re.compile(r"(\d+)\^(\d+)")


def parse_int_token(tok: str) -> int:
    """A positive integer, written plainly or as base^exp."""
    tok = tok.strip()
    m = _POWER_RE.fullmatch(tok)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", tok):
        return int(tok)
    raise ValueError(f"cannot parse integer token {tok!r} (use digits or base^exp)")


def parse_ladder(text: str) -> list[int]:
    """A comma list ('10,100,1000') or a geometric span ('10^1..10^8')."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        m1 = _POWER_RE.fullmatch(lo_s.strip())
        m2 = _POWER_RE.fullmatch(hi_s.strip())
        if not (m1 and m2) or m1.group(1) != m2.group(1):
            raise ValueError("ladder spans must look like 10^1..10^8, one base on both ends")
        base = int(m1.group(1))
        a, b = int(m1.group(2)), int(m2.group(2))
        if base < 2 or a > b:
            raise ValueError("ladder span needs base >= 2 and ascending exponents")
        return [base**k for k in range(a, b + 1)]
    xs = [parse_int_token(t) for t in text.split(",") if t.strip()]
    if not xs:
        raise ValueError("empty ladder")
    return xs


def parse_range(text: str) -> tuple[int, int]:
    """An inclusive integer range 'lo..hi', tokens as in parse_int_token."""
    if ".." not in text:
        raise ValueError("range must look like 1..10^6")
    lo_s, hi_s = text.split("..", 1)
    lo, hi = parse_int_token(lo_s), parse_int_token(hi_s)
    if lo < 1 or hi < lo:
        raise ValueError("range must satisfy 1 <= lo <= hi")
    return lo, hi


def _int_s(v) -> str:
    return str(int(v))


def _rat_s(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _exact_or_float(v):
    return _rat_s(v) if isinstance(v, Fraction) else float(v)


# ---------------------------------------------------------------------------
# document builders and parsers (one pair per schema)


def summatory_to_doc(points) -> dict:
    return {
        "type": "summatory_ladder",
        "points": [
            {"x": _int_s(p.x), "mertens": _int_s(p.mertens), "reciprocal_sum": p.reciprocal_sum}
            for p in points
        ],
    }


def doc_to_summatory(doc) -> list[sieve.SummatoryPoint]:
    return [
        sieve.SummatoryPoint(int(p["x"]), int(p["mertens"]), float(p["reciprocal_sum"]))
        for p in doc["points"]
    ]


def correlation_to_doc(series: correlation.CorrelationSeries, c: float | None = None) -> dict:
    doc = {
        "type": "correlation_series",
        "shift_t": _int_s(series.shift_t),
        "function": series.function_id,
        "checkpoints": [
            {"x": _int_s(x), "r": _int_s(r), "r_over_x": r / x} for x, r in series.checkpoints
        ],
    }
    if c is not None:
        doc["c"] = float(c)
        scaled = correlation.normalized_series(series, c)
        for entry, (_, _, s) in zip(doc["checkpoints"], scaled):
            entry["scaled"] = s
    return doc


def doc_to_correlation(doc) -> correlation.CorrelationSeries:
    return correlation.CorrelationSeries(
        int(doc["shift_t"]),
        doc["function"],
        tuple((int(p["x"]), int(p["r"])) for p in doc["checkpoints"]),
    )


def decomposition_to_doc(rep: decomposition.DecompositionReport) -> dict:
    return {
        "type": "decomposition_report",
        "x": _int_s(rep.x),
        "t": _int_s(rep.t),
        "arithmetic": rep.arithmetic,
        "lhs_direct": _int_s(rep.lhs_direct),
        "rhs_pair_expansion": _int_s(rep.rhs_pair_expansion),
        "r0": _exact_or_float(rep.r0),
        "r1": _exact_or_float(rep.r1),
        "r0_plus_r1": _exact_or_float(rep.r0_plus_r1),
        "discrepancy_pair_vs_direct": _int_s(rep.discrepancy_pair_vs_direct),
        "corrected_expansion": _int_s(rep.corrected_expansion),
        "r0_unrestricted": None if rep.r0_unrestricted is None else _rat_s(rep.r0_unrestricted),
        "r0_product_gap": None if rep.r0_product_gap is None else _rat_s(rep.r0_product_gap),
    }


def doc_to_decomposition(doc) -> decomposition.DecompositionReport:
    exact = doc["arithmetic"] == "exact"

    def num(v):
        return Fraction(v) if exact else float(v)

    return decomposition.DecompositionReport(
        x=int(doc["x"]),
        t=int(doc["t"]),
        lhs_direct=int(doc["lhs_direct"]),
        rhs_pair_expansion=int(doc["rhs_pair_expansion"]),
        r0=num(doc["r0"]),
        r1=num(doc["r1"]),
        r0_plus_r1=num(doc["r0_plus_r1"]),
        discrepancy_pair_vs_direct=int(doc["discrepancy_pair_vs_direct"]),
        corrected_expansion=int(doc["corrected_expansion"]),
        arithmetic=doc["arithmetic"],
        r0_unrestricted=(
            None if doc["r0_unrestricted"] is None else Fraction(doc["r0_unrestricted"])
        ),
        r0_product_gap=(
            None if doc["r0_product_gap"] is None else Fraction(doc["r0_product_gap"])
        ),
    )


def large_sieve_to_doc(rep: progressions.LargeSieveReport) -> dict:
    return {
        "type": "large_sieve_report",
        "Q": _int_s(rep.Q),
        "x": _int_s(rep.x),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "ratio": rep.ratio,
        "sequence": rep.sequence_id,
        "q_exceeds_x": rep.q_exceeds_x,
    }


def doc_to_large_sieve(doc) -> progressions.LargeSieveReport:
    return progressions.LargeSieveReport(
        Q=int(doc["Q"]),
        x=int(doc["x"]),
        lhs=float(doc["lhs"]),
        rhs=float(doc["rhs"]),
        ratio=float(doc["ratio"]),
        sequence_id=doc["sequence"],
        q_exceeds_x=bool(doc["q_exceeds_x"]),
    )


def ap_profile_to_doc(x: int, profile) -> dict:
    return {
        "type": "ap_error_profile",
        "x": _int_s(x),
        "qmax": _int_s(profile[-1][0]) if profile else "0",
        "rows": [{"q": _int_s(q), "max_abs_error": e} for q, e in profile],
    }


def doc_to_ap_profile(doc) -> tuple[int, list[tuple[int, float]]]:
    return int(doc["x"]), [(int(r["q"]), float(r["max_abs_error"])) for r in doc["rows"]]


def ap_counts_to_doc(rows) -> dict:
    first = rows[0]
    return {
        "type": "ap_counts",
        "x": _int_s(first.x),
        "q": _int_s(first.q),
        "max_error_over_a": first.max_error_over_a,
        "rows": [{"a": _int_s(r.a), "count": _int_s(r.count), "error": r.error} for r in rows],
    }


def doc_to_ap_counts(doc) -> list[progressions.APCountError]:
    x, q = int(doc["x"]), int(doc["q"])
    worst = float(doc["max_error_over_a"])
    return [
        progressions.APCountError(
            x=x,
            q=q,
            a=int(r["a"]),
            count=int(r["count"]),
            expected=x / q,
            error=float(r["error"]),
            max_error_over_a=worst,
        )
        for r in doc["rows"]
    ]


def fits_to_doc(source: str, shift_t, dropped: int, fits, rows) -> dict:
    return {
        "type": "decay_fit_report",
        "source": source,
        "shift_t": None if shift_t is None else _int_s(shift_t),
        "dropped_points": _int_s(dropped),
        "fits": [
            {
                "model": f.model_id,
                "c_hat": f.c_hat,
                "C_hat": f.C_hat,
                "rss": f.rss,
                "n_points": _int_s(f.n_points),
            }
            for f in fits
        ],
        "rows": [
            {
                "model": m,
                "x": _int_s(x),
                "y": y,
                "fitted_y": fy,
                "residual": res,
            }
            for m, x, y, fy, res in rows
        ],
    }


def doc_to_fits(doc) -> list[decay.DecayFit]:
    return [
        decay.DecayFit(
            model_id=f["model"],
            c_hat=float(f["c_hat"]),
            C_hat=float(f["C_hat"]),
            rss=float(f["rss"]),
            n_points=int(f["n_points"]),
        )
        for f in doc["fits"]
    ]


def identity_report_to_doc(rep: identities.IdentityReport) -> dict:
    return {
        "type": "identity_report",
        "limit": _int_s(rep.limit),
        "passed": rep.passed,
        "checks": [
            {
                "name": c.name,
                "limit": _int_s(c.limit),
                "checked": _int_s(c.checked),
                "max_deviation": c.max_deviation,
                "first_failure": c.first_failure,
            }
            for c in rep.checks
        ],
    }


def doc_to_identity_report(doc) -> identities.IdentityReport:
    return identities.IdentityReport(
        int(doc["limit"]),
        tuple(
            identities.IdentityCheck(
                name=c["name"],
                limit=int(c["limit"]),
                checked=int(c["checked"]),
                max_deviation=float(c["max_deviation"]),
                first_failure=c["first_failure"],
            )
            for c in doc["checks"]
        ),
    )


# ---------------------------------------------------------------------------
# output plumbing


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _emit_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _figures_dir(args) -> Path | None:
    d = getattr(args, "figures", None)
    if d is None:
        return None
    d = Path(d)
    d.mkdir(parents=True, exist_ok=True)
    return d


# ---------------------------------------------------------------------------
# subcommands


def _sieve_blob_task(args):
    start, count = args
    values = sieve.sieve_values(start, count, sieve.MOBIUS)
    blob = cache.block_bytes(start, values)
    return start, count, blob, cache.sha256_hex(blob)


def cmd_sieve(cfg: RunConfig, args) -> int:
    lo, hi = parse_range(args.range)
    if cfg.cache_dir is None:
        raise ValueError(f"sieve needs a cache directory (--cache-dir or {ENV_CACHE_DIR})")
    cache_dir = Path(cfg.cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    tasks = []
    start = lo
    while start <= hi:
        count = min(cfg.block_len, hi - start + 1)
        tasks.append((start, count))
        start += count
    results = sieve._map_ordered(_sieve_blob_task, tasks, cfg.workers)
    blocks = []
    for start, count, blob, digest in results:
        name = cache.block_file_name(start, count)
        path = cache_dir / name
        if path.is_file() and cache.sha256_hex(path.read_bytes()) == digest:
            status = "exists"
        else:
            tmp = path.with_name(name + ".tmp")
            tmp.write_bytes(blob)
            os.replace(tmp, path)
            status = "written"
        blocks.append(
            {
                "start": _int_s(start),
                "count": _int_s(count),
                "path": name,
                "sha256": digest,
                "status": status,
            }
        )
    doc = {
        "type": "sieve_summary",
        "range": {"lo": _int_s(lo), "hi": _int_s(hi)},
        "block_len": _int_s(cfg.block_len),
        "blocks": blocks,
    }
    if cfg.output_format == "json":
        _emit_json(doc)
    else:
        _emit_csv(
            ("start", "count", "path", "sha256", "status"),
            [(b["start"], b["count"], b["path"], b["sha256"], b["status"]) for b in blocks],
        )
    return 0


def cmd_mertens(cfg: RunConfig, args) -> int:
    ladder = parse_ladder(args.ladder)
    points = sieve.summatory_ladder(
        ladder, block_len=cfg.block_len, workers=cfg.workers, cache_dir=cfg.cache_dir
    )
    if cfg.output_format == "json":
        _emit_json(summatory_to_doc(points))
    else:
        _emit_csv(
            ("x", "mertens", "reciprocal_sum"),
            [(_int_s(p.x), _int_s(p.mertens), p.reciprocal_sum) for p in points],
        )
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import plotting

        out = plotting.save_summatory_figure(points, figdir / "mertens.png")
        _note(f"figure written: {out}")
    return 0


def cmd_correlate(cfg: RunConfig, args) -> int:
    ladder = parse_ladder(args.ladder)
    series = correlation.autocorrelation(
        args.function,
        args.t,
        ladder,
        block_len=cfg.block_len,
        workers=cfg.workers,
        cache_dir=cfg.cache_dir,
    )
    if cfg.output_format == "json":
        _emit_json(correlation_to_doc(series, args.c))
    else:
        if args.c is None:
            header = ("t", "x", "r", "r_over_x")
            rows = [
                (_int_s(series.shift_t), _int_s(x), _int_s(r), r / x)
                for x, r in series.checkpoints
            ]
        else:
            header = ("t", "x", "r", "r_over_x", "scaled")
            scaled = correlation.normalized_series(series, args.c)
            rows = [
                (_int_s(series.shift_t), _int_s(x), _int_s(r), r / x, s)
                for (x, r), (_, _, s) in zip(series.checkpoints, scaled)
            ]
        _emit_csv(header, rows)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import plotting

        out = plotting.save_correlation_figure(series, figdir / "correlation.png")
        _note(f"figure written: {out}")
    return 0


def cmd_decompose(cfg: RunConfig, args) -> int:
    rep = decomposition.decomposition_report(
        args.x, mode=args.mode, exact_ceiling=cfg.exact_ceiling, workers=cfg.workers
    )
    doc = decomposition_to_doc(rep)
    if cfg.output_format == "json":
        _emit_json(doc)
    else:
        skip = ("type",)
        rows = [(k, "" if v is None else v) for k, v in doc.items() if k not in skip]
        _emit_csv(("field", "value"), rows)
    return 0


def cmd_large_sieve(cfg: RunConfig, args) -> int:
    rep = progressions.large_sieve_functional(
        args.x, args.q, args.sequence, workers=cfg.workers, cache_dir=cfg.cache_dir
    )
    if rep.q_exceeds_x:
        _note(f"warning: Q={rep.Q} exceeds x={rep.x}; the stated bound assumes Q <= x")
    if cfg.output_format == "json":
        _emit_json(large_sieve_to_doc(rep))
    else:
        _emit_csv(
            ("Q", "x", "lhs", "rhs", "ratio"),
            [(_int_s(rep.Q), _int_s(rep.x), rep.lhs, rep.rhs, rep.ratio)],
        )
    return 0


def cmd_ap_errors(cfg: RunConfig, args) -> int:
    if (args.q is None) == (args.qmax is None):
        raise ValueError("pass exactly one of --qmax (profile) or --q (per-class detail)")
    if args.q is not None:
        rows = [progressions.ap_count(args.x, args.q, a) for a in range(1, args.q + 1)]
        if cfg.output_format == "json":
            _emit_json(ap_counts_to_doc(rows))
        else:
            _emit_csv(
                ("q", "a", "count", "error"),
                [(_int_s(r.q), _int_s(r.a), _int_s(r.count), r.error) for r in rows],
            )
        return 0
    profile = progressions.ap_error_profile(args.x, args.qmax, workers=cfg.workers)
    if cfg.output_format == "json":
        _emit_json(ap_profile_to_doc(args.x, profile))
    else:
        _emit_csv(("q", "max_abs_error"), [(_int_s(q), e) for q, e in profile])
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import plotting

        out = plotting.save_ap_profile_figure(args.x, profile, figdir / "ap-errors.png")
        _note(f"figure written: {out}")
    return 0


def _parse_models(text: str) -> list[str]:
    models = [m.strip() for m in text.split(",") if m.strip()]
    if not models:
        raise ValueError("empty model list")
    for m in models:
        if m not in decay.ALL_MODELS:
            raise ValueError(f"unknown model {m!r}; choose from {', '.join(decay.ALL_MODELS)}")
    return models


def cmd_fit(cfg: RunConfig, args) -> int:
    ladder = parse_ladder(args.ladder)
    models = _parse_models(args.model)
    if args.t is not None:
        series = correlation.autocorrelation(
            args.function,
            args.t,
            ladder,
            block_len=cfg.block_len,
            workers=cfg.workers,
            cache_dir=cfg.cache_dir,
        )
        data = [(x, float(abs(r))) for x, r in series.checkpoints]
        source = "correlation"
    else:
        points = sieve.summatory_ladder(
            ladder, block_len=cfg.block_len, workers=cfg.workers, cache_dir=cfg.cache_dir
        )
        data = [(p.x, float(abs(p.mertens))) for p in points]
        source = "mertens"
    usable = [(x, y) for x, y in data if y > 0.0 and x >= 3]
    dropped = len(data) - len(usable)
    fits = decay.compare_models(usable, models)
    rows = []
    for f in fits:
        for x, y in usable:
            fy = decay.model_value(f.model_id, f.c_hat, f.C_hat, x)
            rows.append((f.model_id, x, y, fy, y - fy))
    if cfg.output_format == "json":
        _emit_json(fits_to_doc(source, args.t, dropped, fits, rows))
    else:
        if len(models) == 1:
            header = ("x", "y", "fitted_y", "residual")
            out = [(_int_s(x), y, fy, res) for _, x, y, fy, res in rows]
        else:
            header = ("model", "x", "y", "fitted_y", "residual")
            out = [(m, _int_s(x), y, fy, res) for m, x, y, fy, res in rows]
        _emit_csv(header, out)
    figdir = _figures_dir(args)
    if figdir is not None:
        from . import plotting

        out_path = plotting.save_fit_figure(usable, fits, figdir / "fit.png")
        _note(f"figure written: {out_path}")
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    limit = args.limit
    if limit < 1:
        raise ValueError("limit must be >= 1")
    report = identities.verify_identities(limit, workers=cfg.workers)

    dec_xs = [x for x in (2, 3, 10, 50, 100, 200) if x <= min(limit, cfg.exact_ceiling)]
    dec_reports = [
        decomposition.decomposition_report(x, exact_ceiling=cfg.exact_ceiling, workers=cfg.workers)
        for x in dec_xs
    ]
    dec_ok = all(
        r.r0_plus_r1 == r.rhs_pair_expansion and r.corrected_expansion == r.lhs_direct
        for r in dec_reports
    )

    ls_x = min(limit, 10**4)
    ls_reports = [
        progressions.large_sieve_functional(
            ls_x, ls_x, seq, workers=cfg.workers, cache_dir=cfg.cache_dir
        )
        for seq in (progressions.ONES, progressions.MOBIUS)
    ]
    ls_ok = all(r.ratio <= 1.0 for r in ls_reports)

    ap_x = min(limit, 10**4)
    ap_fail = progressions.check_ap_partition(ap_x, workers=cfg.workers)

    passed = report.passed and dec_ok and ls_ok and ap_fail is None
    doc = {
        "type": "verify_bundle",
        "limit": _int_s(limit),
        "passed": passed,
        "identities": identity_report_to_doc(report),
        "decomposition": {
            "exact_identities_hold": dec_ok,
            "reports": [decomposition_to_doc(r) for r in dec_reports],
        },
        "large_sieve": {
            "all_ratios_bounded": ls_ok,
            "reports": [large_sieve_to_doc(r) for r in ls_reports],
        },
        "ap_partition": {
            "x": _int_s(ap_x),
            "first_failure_q": None if ap_fail is None else _int_s(ap_fail),
        },
    }
    if cfg.output_format == "json":
        _emit_json(doc)
    else:
        rows = []
        for c in report.checks:
            rows.append((c.name, c.first_failure is None, f"max_deviation={c.max_deviation}"))
        rows.append(("decomposition_exact_identities", dec_ok, f"x={dec_xs}"))
        for r in ls_reports:
            rows.append((f"large_sieve_{r.sequence_id}", r.ratio <= 1.0, f"ratio={r.ratio}"))
        rows.append(
            ("ap_partition", ap_fail is None, "" if ap_fail is None else f"q={ap_fail}")
        )
        _emit_csv(("check", "passed", "detail"), rows)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", type=Path, default=None, help="block cache directory")
    common.add_argument(
        "--block-len",
        type=parse_int_token,
        default=sieve.DEFAULT_BLOCK_LEN,
        help="sieve block length, a power of two in [2^10, 2^26] (default 2^20)",
    )
    common.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format (default json)"
    )
    common.add_argument(
        "--exact-ceiling",
        type=parse_int_token,
        default=10**4,
        help="largest x allowed in exact decomposition arithmetic (default 10^4)",
    )

    parser = argparse.ArgumentParser(
        prog="mobcorr",
        description="Mobius and Liouville autocorrelations with exact desk-scale verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", parents=[common], help="sieve mu blocks into the cache")
    p.add_argument("--range", required=True, help="inclusive range, e.g. 1..10^6")
    p.set_defaults(handler=cmd_sieve)

    p = sub.add_parser("mertens", parents=[common], help="M(x) and m(x) at ladder checkpoints")
    p.add_argument("--ladder", required=True, help="comma list or span, e.g. 10^1..10^8")
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    p.set_defaults(handler=cmd_mertens)

    p = sub.add_parser("correlate", parents=[common], help="R(t, x) at ladder checkpoints")
    p.add_argument("--t", type=int, required=True, help="nonzero shift; negative reindexes")
    p.add_argument("--ladder", required=True, help="comma list or span, e.g. 10^1..10^6")
    p.add_argument(
        "--function",
        choices=(sieve.MOBIUS, sieve.LIOUVILLE),
        default=sieve.MOBIUS,
        help="arithmetic function (default mobius)",
    )
    p.add_argument(
        "--c", type=float, default=None, help="also emit |R| exp(c sqrt(log x)) / x"
    )
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    p.set_defaults(handler=cmd_correlate)

    p = sub.add_parser("decompose", parents=[common], help="divisor-pair ledger at one x")
    p.add_argument("--x", type=parse_int_token, required=True)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser(
        "large-sieve", parents=[common], help="progression-variance functional and bound"
    )
    p.add_argument("--x", type=parse_int_token, required=True)
    p.add_argument("--q", type=parse_int_token, required=True, help="largest modulus Q")
    p.add_argument(
        "--sequence",
        choices=(progressions.ONES, progressions.MOBIUS),
        default=progressions.ONES,
    )
    p.set_defaults(handler=cmd_large_sieve)

    p = sub.add_parser(
        "ap-errors", parents=[common], help="progression count deviations from x/q"
    )
    p.add_argument("--x", type=parse_int_token, required=True)
    p.add_argument("--qmax", type=parse_int_token, default=None, help="profile q = 1..qmax")
    p.add_argument("--q", type=parse_int_token, default=None, help="per-class detail at one q")
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    p.set_defaults(handler=cmd_ap_errors)

    p = sub.add_parser("fit", parents=[common], help="fit decay models to measured ladders")
    p.add_argument("--ladder", required=True, help="comma list or span, e.g. 10^1..10^8")
    p.add_argument(
        "--model",
        default=",".join(decay.ALL_MODELS),
        help="comma list of model ids (default all)",
    )
    p.add_argument(
        "--t", type=int, default=None, help="fit |R(t, x)| instead of |M(x)| when given"
    )
    p.add_argument(
        "--function",
        choices=(sieve.MOBIUS, sieve.LIOUVILLE),
        default=sieve.MOBIUS,
        help="function for the correlation source (default mobius)",
    )
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser(
        "verify", parents=[common], help="identity, decomposition, and sieve checks"
    )
    p.add_argument("--limit", type=parse_int_token, required=True)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.cache_dir is None:
        env = os.environ.get(ENV_CACHE_DIR)
        if env:
            args.cache_dir = Path(env)
    try:
        cfg = RunConfig(
            cache_dir=args.cache_dir,
            block_len=args.block_len,
            workers=args.workers,
            output_format=args.format,
            exact_ceiling=args.exact_ceiling,
        )
        return args.handler(cfg, args)
    except decomposition.CapabilityError as exc:
        _note(f"error: {exc}")
        return 2
    except ValueError as exc:
        _note(f"error: {exc}")
        return 2
    except OSError as exc:
        _note(f"error: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
