"""Command-line front end.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 failed
verification, 2 invalid arguments, 3 Monte Carlo budget too small, 4 target
BER unreachable.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np

from . import closed_form as cf
from . import graycode as gc
from . import montecarlo as mc
from . import pam_layout as pl

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_UNREACHABLE = 4

LOSS_START_DB = -10.0
LOSS_STEP_DB = 0.5
LOSS_INITIAL_STOP_DB = 30.0
LOSS_MAX_DB = 60.0

CSV_FIELDS = ["ebn0_db", "theta_rad", "constellation", "ber_closed", "ber_mc", "mc_errors", "mc_bits"]


class UsageError(Exception):
    pass


def _log2_exact(m: int, what: str) -> int:
    if m < 2 or m & (m - 1):
        raise UsageError(f"{what} must be a power of two >= 2, got {m}")
    return m.bit_length() - 1


def parse_constellation(spec: str, ebn0: float = 1.0, theta: float = 0.0) -> cf.PamConfig | cf.QamConfig:
    """``pam:K`` (K bits per symbol) or ``qam:MIxMQ`` (symbol counts per axis)."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "pam":
            K = int(rest)
            if not 1 <= K <= gc.MAX_BITS:
                raise UsageError(f"pam bits must be in [1, {gc.MAX_BITS}], got {K}")
            if theta != 0:
                raise UsageError("phase rotation is only defined for qam constellations")
            return cf.PamConfig(K, ebn0)
        if kind == "qam":
            mi_s, sep, mq_s = rest.lower().partition("x")
            if not sep:
                raise UsageError(f"expected qam:MIxMQ, got {spec!r}")
            mi = _log2_exact(int(mi_s), "MI")
            mq = _log2_exact(int(mq_s), "MQ")
            if max(mi, mq) > gc.MAX_BITS:
                raise UsageError(f"axis sizes above 2**{gc.MAX_BITS} are not supported")
            return cf.QamConfig(mi, mq, ebn0, theta)
    except ValueError as exc:
        raise UsageError(f"invalid constellation {spec!r}: {exc}") from None
    raise UsageError(f"constellation must be pam:K or qam:MIxMQ, got {spec!r}")


def _fmt(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _fmt_level(v: float | int) -> str:
    if v == pl.NEG_INF:
        return "-inf"
    if v == pl.POS_INF:
        return "+inf"
    return str(int(v))


def cmd_gray(args: argparse.Namespace) -> int:
    if not 1 <= args.n <= gc.MAX_BITS:
        raise UsageError(f"n must be in [1, {gc.MAX_BITS}], got {args.n}")
    seq = gc.brgc(args.n)
    if args.permute or args.complement:
        try:
            perm = tuple(int(p) for p in args.permute.split(",")) if args.permute else tuple(range(1, args.n + 1))
            mask = tuple(int(c) for c in args.complement) if args.complement else (0,) * args.n
            seq = gc.apply_transform(seq, gc.LabelTransform(perm, mask))
        except ValueError as exc:
            raise UsageError(f"invalid transform: {exc}") from None
    sys.stdout.write("\n".join(seq.as_strings()) + "\n")
    return 0


def cmd_regions(args: argparse.Namespace) -> int:
    K, k = args.K, args.k
    if not 1 <= K <= gc.MAX_BITS or not 1 <= k <= K:
        raise UsageError(f"need 1 <= k <= K <= {gc.MAX_BITS}, got K={K}, k={k}")
    lay = pl.layout(K, k)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["kind", "bit", "lower", "upper", "position"])
    tagged = [(lo, hi, 1) for lo, hi in lay.regions_one] + [(lo, hi, 0) for lo, hi in lay.regions_zero]
    for lo, hi, bit in sorted(tagged):
        out.writerow(["region", bit, _fmt_level(lo), _fmt_level(hi), ""])
    tagged_pos = [(a, 1) for a in lay.positions_one] + [(a, 0) for a in lay.positions_zero]
    for a, bit in sorted(tagged_pos):
        out.writerow(["position", bit, "", "", a])
    return 0


def _grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise UsageError("--step must be positive")
    if stop < start:
        raise UsageError("--to must not be below --from")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def cmd_curve(args: argparse.Namespace) -> int:
    theta = math.radians(args.theta_deg)
    template = parse_constellation(args.constellation, 1.0, theta)
    grid = _grid(args.start, args.stop, args.step)
    mode = "both" if args.mc else args.mode
    n_bits = 0
    if mode != "closed":
        bps = template.bits_per_symbol
        n_bits = int(args.bits)
        n_bits -= n_bits % bps
        if n_bits < mc.MIN_BITS:
            print(f"Monte Carlo needs at least {mc.MIN_BITS} bits, got {int(args.bits)}", file=sys.stderr)
            return EXIT_BUDGET
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(CSV_FIELDS)
    for i, db in enumerate(grid):
        cfg = replace(template, ebn0=cf.db_to_linear(db))
        closed = cf.ber(cfg)
        est = None
        if mode != "closed":
            est = mc.simulate(mc.SimJob(cfg, n_bits, args.seed, stream=i))
        out.writerow([
            _fmt(db), _fmt(theta), template.label, _fmt(closed),
            _fmt(est.estimate) if est else "",
            _fmt(est.errors) if est else "",
            _fmt(est.bits) if est else "",
        ])
    return 0


def _rotated(template: cf.QamConfig | cf.PamConfig, theta: float) -> cf.QamConfig | cf.PamConfig:
    return replace(template, theta=theta) if isinstance(template, cf.QamConfig) else template


def loss_db(template: cf.QamConfig | cf.PamConfig, theta: float, target: float) -> float:
    """dB loss of ``template`` rotated by ``theta`` against the unrotated case.

    The search grid runs from -10 to 30 dB and is extended up to 60 dB if needed.
    Raises :class:`~qamber.closed_form.NotBracketedError` if unreachable.
    """
    stop = LOSS_INITIAL_STOP_DB
    while True:
        grid = np.arange(LOSS_START_DB, stop + LOSS_STEP_DB / 2, LOSS_STEP_DB)
        ref = cf.ber_curve(_rotated(template, 0.0), grid)
        imp = cf.ber_curve(_rotated(template, theta), grid)
        try:
            return cf.loss_at(ref, imp, target)
        except cf.NotBracketedError:
            if stop >= LOSS_MAX_DB:
                raise
            stop = min(LOSS_MAX_DB, stop + 10.0)


def cmd_loss(args: argparse.Namespace) -> int:
    theta = math.radians(args.theta_deg)
    template = parse_constellation(args.constellation, 1.0, theta)
    if not 0 < args.target < 1:
        raise UsageError("--target must lie in (0, 1)")
    try:
        loss = loss_db(template, theta, args.target)
    except cf.NotBracketedError as exc:
        print(f"target BER unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    print(f"{loss:.3f}")
    return 0


def verification_checks(max_K: int) -> list[tuple[str, Callable[[], bool]]]:
    """Named oracle checks run by ``verify``."""
    rng = np.random.default_rng(0)

    def layouts() -> bool:
        return all(
            pl.formula_layout(K, k) == pl.brute_force_layout(K, k)
            for K in range(1, max_K + 1) for k in range(1, K + 1)
        )

    def columns() -> bool:
        return all(
            gc.bit_column(K, k).values == gc.brgc(K).column(k)
            for K in range(1, max_K + 1) for k in range(1, K + 1)
        )

    def region_counts() -> bool:
        for K in range(1, max_K + 1):
            for k in range(1, K + 1):
                r1, r0 = pl.region_sets(K, k)
                if len(r1) + len(r0) != 2 ** (k - 1) + 1:
                    return False
        return True

    def labeling() -> bool:
        for K in range(1, min(max_K, 4) + 1):
            base = gc.brgc(K)
            ref = cf.pam_ber(K, 4.0)
            for _ in range(20):
                seq = gc.apply_transform(base, gc.LabelTransform.random(K, rng))
                if abs(cf.generic_labeled_pam_ber(seq, 4.0) - ref) > 1e-12:
                    return False
        return True

    def reductions() -> bool:
        for e in (0.1, 1.0, 10.0):
            want = 0.5 * math.erfc(math.sqrt(e))
            if abs(cf.pam_ber(1, e) - want) > 1e-12:
                return False
            if abs(cf.qam_conditional_ber(cf.QamConfig(1, 1, e, 0.0)) - want) > 1e-12:
                return False
        return True

    def theta_symmetry() -> bool:
        for mi in range(1, min(max_K, 4) + 1):
            for mq in range(1, min(max_K, 4) + 1):
                a = cf.qam_conditional_ber(cf.QamConfig(mi, mq, 10.0, 0.1))
                b = cf.qam_conditional_ber(cf.QamConfig(mi, mq, 10.0, -0.1))
                if abs(a - b) > 1e-12:
                    return False
        return True

    return [
        ("layout formula equals brute force", layouts),
        ("bit columns equal BRGC columns", columns),
        ("region count 2**(k-1)+1", region_counts),
        ("labeling invariance", labeling),
        ("analytic reductions", reductions),
        ("theta symmetry", theta_symmetry),
    ]


def cmd_verify(args: argparse.Namespace) -> int:
    if not 1 <= args.max_k <= 12:
        raise UsageError(f"--max-k must be in [1, 12], got {args.max_k}")
    failed = 0
    for name, check in verification_checks(args.max_k):
        ok = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return EXIT_FAIL if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qamber", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gray", help="list a Gray code sequence")
    p.add_argument("n", type=int)
    p.add_argument("--permute", help="comma-separated 1-based source bit for each output bit")
    p.add_argument("--complement", help="bit mask, e.g. 010")
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("regions", help="dump decision regions and positions of bit k")
    p.add_argument("K", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("curve", help="BER over an Eb/N0 grid as CSV")
    p.add_argument("constellation")
    p.add_argument("--theta-deg", type=float, default=0.0)
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=20.0)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--mode", choices=["closed", "mc", "both"], default="closed")
    p.add_argument("--mc", action="store_true", help="shorthand for --mode both")
    p.add_argument("--bits", type=float, default=1e6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("loss", help="Eb/N0 loss (dB) caused by a phase rotation")
    p.add_argument("constellation")
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--target", type=float, required=True)
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("verify", help="run oracle equivalence checks")
    p.add_argument("--max-k", type=int, default=10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qamber {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
