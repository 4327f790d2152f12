"""Command-line front end: suite runs, entropy queries, game and proof-trace
reports.

Exit codes: 0 on success, 1 when a certificate fails, 2 on usage or input
errors.  Reports are written atomically (temp file + rename) and are
byte-identical for identical configurations and seeds; the timestamp lives
in a separate header object outside the determinism contract.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from datetime import datetime, timezone

from . import entropies as ent
from . import relations as rel
from .errors import QmurError
from .game import GameScenario, iid_trend, qkd_bound, run_game
from .measurements import (
    MeasurementChannel,
    computational_basis,
    fourier_basis,
    load_basis,
)
from .states import load_state
from .suites import SUITES, SuiteConfig, run_suites

EXIT_OK = 0
EXIT_CERT_FAILURE = 1
EXIT_USAGE = 2


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension profile {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"bad dimension profile {text!r}")
    return dims


def _parse_tolerance(text: str) -> tuple[str, float]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(
            f"tolerance override must be relation=value, got {text!r}"
        )
    name, value = text.split("=", 1)
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value {value!r}")


def _fmt_bits(value: float) -> str:
    if value == float("-inf"):
        return "-inf"
    return f"{value:.9f}"


def _atomic_write(path: str, payload: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cert_rows(result) -> list[dict]:
    rows = []
    for suite, trial, c in result.certificates:
        rows.append(
            {
                "suite": suite,
                "trial": trial,
                "relation_id": c.relation_id,
                "lhs": c.lhs,
                "rhs": c.rhs,
                "slack": c.slack,
                "tolerance": c.tolerance,
                "status": c.status,
                "two_sided": c.two_sided,
                "inputs_digest": c.inputs_digest,
            }
        )
    return rows


def _render_report(body: dict, fmt: str, rows: list[dict]) -> str:
    if fmt == "json":
        report = {
            "header": {"timestamp": datetime.now(timezone.utc).isoformat()},
            **body,
        }
        return json.dumps(report, indent=2, sort_keys=False, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    # aligned-column plain text
    if not rows:
        return "no certificates\n"
    cols = list(rows[0].keys())
    table = [cols] + [
        [
            f"{r[c]:.6g}" if isinstance(r[c], float) else str(r[c])
            for c in cols
        ]
        for r in rows
    ]
    widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
    out = "\n".join(
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line))
        for line in table
    )
    return out + "\n"


def _emit(payload: str, out_path: str | None) -> None:
    if out_path:
        _atomic_write(out_path, payload)
    else:
        sys.stdout.write(payload)


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suites=tuple(args.suite),
        trials=args.trials,
        dims=args.dims,
        seed=args.seed,
        tolerances=tuple(args.tolerance),
        epsilons=tuple(args.epsilon),
    )
    result = run_suites(cfg)
    rows = _cert_rows(result)
    payload = _render_report(result.to_dict(), args.format, rows)
    _emit(payload, args.out)
    if result.failures:
        failing = sorted(
            {
                f"{suite}/{trial}/{c.relation_id}:{c.inputs_digest}"
                for suite, trial, c in result.certificates
                if c.status == rel.FAIL
            }
        )
        print(
            f"{result.failures} certificate failure(s):", file=sys.stderr
        )
        for line in failing[:50]:
            print(f"  {line}", file=sys.stderr)
        return EXIT_CERT_FAILURE
    return EXIT_OK


def _measure_value(args) -> float:
    rho = load_state(args.state)
    measure = args.measure
    if measure == "vn":
        return ent.h_vn(rho)
    if measure == "vn-cond":
        return ent.h_vn_cond(rho, 0, 1)
    if measure == "hmin":
        return ent.h_min_uncond(rho)
    if measure == "hmax":
        return ent.h_max_uncond(rho)
    if measure == "hneginf":
        return ent.h_neg_inf(rho)
    if measure == "hmin-cond":
        value, _ = ent.h_min_cond(rho, 0, 1)
        return value
    if measure == "hmin-cond-fixed":
        if not args.sigma:
            raise QmurError("--sigma is required for hmin-cond-fixed")
        return ent.h_min_cond_fixed(rho, load_state(args.sigma), 0, 1)
    if measure == "measured-cond":
        if not args.basis:
            raise QmurError("--basis is required for measured-cond")
        ch = MeasurementChannel(load_basis(args.basis), 0)
        return ent.h_measured_cond(rho, ch, 1)
    if measure == "smooth-hmax-oracle":
        eps = args.epsilon[0] if args.epsilon else 0.0
        return ent.smooth_hmax_oracle(rho.eigenvalues(), eps)
    raise QmurError(f"unknown measure {measure!r}")


def cmd_entropy(args) -> int:
    print(_fmt_bits(_measure_value(args)))
    return EXIT_OK


def _game_bases(args, d: int):
    r = load_basis(args.r_basis) if args.r_basis else computational_basis(d)
    s = load_basis(args.s_basis) if args.s_basis else fourier_basis(d)
    return r, s


def cmd_game(args) -> int:
    d = args.dims[0]
    r, s = _game_bases(args, d)
    sc = GameScenario(args.strategy, r, s, p=args.p, state_file=args.state)
    report = run_game(sc)
    body = {"scenario": args.strategy, "report": report.to_dict()}
    rows = [dict(section="game", **report.to_dict())]
    if args.qkd:
        from .states import werner

        rho = (
            load_state(args.state)
            if args.strategy == "custom"
            else werner(d, args.p if args.strategy == "werner" else 1.0)
        )
        qkd = qkd_bound(rho, r, s)
        body["qkd"] = qkd.to_dict()
        rows.append(dict(section="qkd", **qkd.to_dict()))
    if args.trend:
        from .states import max_entangled

        rho = max_entangled(d) if args.strategy == "mes" else None
        if args.strategy == "custom":
            rho = load_state(args.state)
        if rho is not None:
            body["iid_trend"] = iid_trend(rho, r, s, n_max=args.trend)
    payload = _render_report(body, args.format, rows)
    _emit(payload, args.out)
    return EXIT_OK


def cmd_smooth_trace(args) -> int:
    rho = load_state(args.state)
    d = rho.dims[0]
    r, s = _game_bases(args, d)
    failures = 0
    all_rows = []
    cert_dicts = []
    for eps in args.epsilon:
        certs = rel.check_smooth_proof_trace(r, s, rho, eps)
        for c in certs:
            failures += c.status == rel.FAIL
            row = {"epsilon": eps, **c.to_dict()}
            row.pop("terms", None)
            all_rows.append(row)
            cert_dicts.append({"epsilon": eps, **c.to_dict()})
    body = {"state": args.state, "certificates": cert_dicts}
    payload = _render_report(body, args.format, all_rows)
    _emit(payload, args.out)
    return EXIT_CERT_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmur",
        description="Numerics for uncertainty relations with quantum memory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="report file path")
        p.add_argument(
            "--format", choices=("json", "csv", "text"), default="json"
        )

    p_verify = sub.add_parser("verify", help="run certificate suites")
    p_verify.add_argument(
        "--suite",
        action="append",
        required=True,
        choices=sorted(SUITES) + ["all"],
    )
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--dims", type=_parse_dims, default=(2, 2))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--tolerance", action="append", type=_parse_tolerance, default=[]
    )
    p_verify.add_argument(
        "--epsilon", action="append", type=float, default=None
    )
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_entropy = sub.add_parser("entropy", help="evaluate one entropy measure")
    p_entropy.add_argument("--state", required=True)
    p_entropy.add_argument(
        "--measure",
        required=True,
        choices=(
            "vn",
            "vn-cond",
            "hmin",
            "hmax",
            "hneginf",
            "hmin-cond",
            "hmin-cond-fixed",
            "measured-cond",
            "smooth-hmax-oracle",
        ),
    )
    p_entropy.add_argument("--basis", default=None)
    p_entropy.add_argument("--sigma", default=None)
    p_entropy.add_argument(
        "--epsilon", action="append", type=float, default=None
    )
    p_entropy.set_defaults(func=cmd_entropy)

    p_game = sub.add_parser("game", help="run the uncertainty game")
    p_game.add_argument(
        "--strategy",
        required=True,
        choices=("mes", "product", "werner", "custom"),
    )
    p_game.add_argument("--dims", type=_parse_dims, default=(2,))
    p_game.add_argument("--p", type=float, default=1.0)
    p_game.add_argument("--state", default=None)
    p_game.add_argument("--r-basis", dest="r_basis", default=None)
    p_game.add_argument("--s-basis", dest="s_basis", default=None)
    p_game.add_argument("--qkd", action="store_true")
    p_game.add_argument("--trend", type=int, default=0, choices=(0, 1, 2, 3))
    common(p_game)
    p_game.set_defaults(func=cmd_game)

    p_trace = sub.add_parser(
        "smooth-trace", help="certify the smooth-relation proof steps"
    )
    p_trace.add_argument("--state", required=True)
    p_trace.add_argument(
        "--epsilon", action="append", type=float, default=None
    )
    p_trace.add_argument("--r-basis", dest="r_basis", default=None)
    p_trace.add_argument("--s-basis", dest="s_basis", default=None)
    common(p_trace)
    p_trace.set_defaults(func=cmd_smooth_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else 0
    if getattr(args, "epsilon", None) in (None, []):
        args.epsilon = [0.05]
    try:
        return args.func(args)
    except QmurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
