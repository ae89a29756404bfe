"""Command-line front end.

Subcommands wire the library modules together and map every failure mode to
a stable exit code (EXIT_CODES) so batch runs can be triaged mechanically.
All emitted numbers are exact "p/q" strings or plain integers; outputs carry
no timestamps, so identical configs produce identical bytes.
"""

import argparse
import dataclasses
import sys
from fractions import Fraction
from pathlib import Path

from .bestapprox import (
    audit_growth,
    audit_minkowski,
    enumerate_best_approx,
    export_sequence_lines,
    sequence_fingerprint,
)
from .catalog import catalog_names, get_entry
from .errors import (
    ConfigError,
    DegenerateForm,
    IncompleteSequence,
    InvariantViolation,
    NoBaseFound,
    NoSurvivor,
    PrecisionExhausted,
)
from .journal import certificate_json, journal_text, parse_certificate, parse_journal
from .rationals import ThetaForm, parse_rational, theta_fingerprint
from .sieve import SieveConfig, dangerous_children, run_sieve
from .verify import (
    bad_alpha_beta_score,
    bad_theta_score,
    brute_best_approx,
    grid_dangerous_children,
    linear_form_score,
)

EXIT_CODES = {
    "ok": 0,
    "violation": 2,  # a mathematical claim failed its recheck
    "no_survivor": 3,
    "precision": 4,
    "config": 5,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; route through the config path instead
    def error(self, message):
        raise ConfigError(message)


def _add_theta_flags(p):
    p.add_argument("--catalog", help="named theta pair from the built-in catalog")
    p.add_argument(
        "--theta",
        help='inline pair "T1,T2", each an exact p/q or decimal string',
    )
    p.add_argument(
        "--theta-error",
        default="0",
        help="declared truncation error of an inline pair (p/q or decimal)",
    )


def _resolve_theta(args) -> ThetaForm:
    if args.catalog and args.theta:
        raise ConfigError("give either --catalog or --theta, not both")
    if args.catalog:
        return get_entry(args.catalog).theta
    if args.theta:
        parts = args.theta.split(",")
        if len(parts) != 2:
            raise ConfigError('--theta wants exactly two components "T1,T2"')
        return ThetaForm(
            theta1=parse_rational(parts[0]),
            theta2=parse_rational(parts[1]),
            declared_error=parse_rational(args.theta_error),
        )
    raise ConfigError("a theta source is required: --catalog NAME or --theta T1,T2")


def build_parser() -> _Parser:
    parser = _Parser(prog="badsieve")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("best-approx", help="enumerate best approximation vectors")
    _add_theta_flags(p)
    p.add_argument("--bound", type=int, required=True, help="height_sq ceiling M^2")
    p.add_argument("--out", default="sequence.txt", help="sequence file to write")
    p.set_defaults(func=cmd_best_approx)

    p = sub.add_parser("construct", help="run the full nested-rectangle descent")
    _add_theta_flags(p)
    p.add_argument("--R", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--policy", choices=("lex", "random"))
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=".", help="directory for journal + certificate")
    p.add_argument("--resume", help="existing journal to replay and continue")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="recheck a certificate from scratch")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--Q", type=int, default=10**5, help="scan bound for the scores")
    p.add_argument("--trace", action="store_true", help="print running-min records")
    p.add_argument("--out", help="verified copy path (default: *.verified.json)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("crosscheck", help="run the independent oracles side by side")
    _add_theta_flags(p)
    p.add_argument("--bound", type=int, default=3600)
    p.add_argument("--R", type=int, default=8)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--policy", choices=("lex", "random"), default="lex")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("catalog", help="built-in theta pairs")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_catalog)

    return parser


def cmd_best_approx(args) -> int:
    theta = _resolve_theta(args)
    seq = enumerate_best_approx(theta, args.bound)
    Path(args.out).write_text(export_sequence_lines(seq))
    print(f"theta {theta_fingerprint(theta)}")
    print(f"sequence {sequence_fingerprint(seq)}")
    print(f"vectors {len(seq.vectors)}  height_sq_max {seq.height_sq_max}")
    bad = False
    mink = audit_minkowski(seq)
    if mink:
        bad = True
        print(f"minkowski VIOLATION at index pairs {list(mink)[:5]}")
    else:
        print("minkowski ok (0 violations)")
    growth = audit_growth(seq)
    if growth:
        bad = True
        print(f"growth VIOLATION at {list(growth)[:5]}")
    else:
        print("growth ok (0 violations)")
    print(f"wrote {args.out}")
    return EXIT_CODES["violation"] if bad else EXIT_CODES["ok"]


def _print_level_table(levels, cfg):
    head = (
        f"{'level':>5}  {'win1':>4} {'win2':>4}  {'t1_kills':>8} {'t2_kills':>8}"
        f"  {'union':>6} {'survivors':>9}  {'union_bound':>11}"
    )
    print(head)
    for rec in levels:
        s = rec.stats
        print(
            f"{rec.level:>5}  {len(rec.window1):>4} {len(rec.window2):>4}"
            f"  {s.type1_total:>8} {s.type2_total:>8}"
            f"  {s.union_kills:>6} {s.survivors:>9}  {s.union_bound:>11}"
        )


def cmd_construct(args) -> int:
    resume_levels = ()
    if args.resume:
        text = Path(args.resume).read_text()
        j_theta, j_cfg, _tfp, _sfp, _base, resume_levels, _final = parse_journal(text)
        theta = j_theta
        if args.catalog or args.theta:
            if _resolve_theta(args) != j_theta:
                raise ConfigError("--resume journal was built for a different theta")
        for flag, journal_value in (
            ("R", j_cfg.R),
            ("depth", j_cfg.depth),
            ("policy", j_cfg.policy),
            ("seed", j_cfg.seed),
        ):
            given = getattr(args, flag)
            if given is not None and given != journal_value:
                raise ConfigError(
                    f"--{flag} {given} conflicts with the resume journal's "
                    f"{flag}={journal_value}"
                )
        cfg = j_cfg
    else:
        theta = _resolve_theta(args)
        if args.R is None or args.depth is None:
            raise ConfigError("construct needs --R and --depth (or --resume)")
        cfg = SieveConfig(
            R=args.R,
            depth=args.depth,
            policy=args.policy or "lex",
            seed=args.seed if args.seed is not None else 0,
        )

    if not cfg.scale_valid:
        lg = cfg.log2R_ceil
        print(
            f"scale advisory: 1000*R^2*ceil(log2 R) = {1000 * cfg.R**2 * lg} "
            f">= R^3 = {cfg.R**3}; kill capacity is not a priori sufficient "
            "at this R, measured stats decide"
        )

    bound = max(1, cfg.height_sq_bound())
    seq = enumerate_best_approx(theta, bound)
    print(f"theta {theta_fingerprint(theta)}")
    print(f"sequence {sequence_fingerprint(seq)}  vectors {len(seq.vectors)}")

    cert, journal = run_sieve(
        theta, cfg, seq, threads=args.threads, resume_levels=resume_levels
    )
    _print_level_table(journal.levels, cfg)
    print(f"eta ({cert.eta[0]}, {cert.eta[1]})")
    print(f"verified_form_min {cert.verified_form_min} > epsilon {cert.epsilon}")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jpath = out / "journal.jsonl"
    cpath = out / "certificate.json"
    jpath.write_text(journal_text(journal))
    cpath.write_text(certificate_json(cert))
    print(f"wrote {jpath}")
    print(f"wrote {cpath}")
    return EXIT_CODES["ok"]


def _verified_path(cert_path: str, out) -> Path:
    if out:
        return Path(out)
    p = Path(cert_path)
    if p.suffix == ".json":
        return p.with_suffix(".verified.json")
    return Path(str(p) + ".verified.json")


def cmd_verify(args) -> int:
    cert = parse_certificate(Path(args.certificate).read_text())
    theta = cert.theta
    if theta_fingerprint(theta) != cert.theta_fp:
        raise ConfigError("certificate theta fingerprint mismatch")

    seq = enumerate_best_approx(theta, max(1, cert.height_sq_bound))
    if sequence_fingerprint(seq) != cert.sequence_fp:
        raise ConfigError(
            "sequence fingerprint mismatch: enumeration no longer reproduces "
            "the certificate's vector list"
        )
    print("fingerprints ok")

    form = linear_form_score(theta, cert.eta, seq)
    if args.trace:
        for h, cubed in form.running_min_trace:
            print(f"  form record at height_sq={h}: cubed={cubed}")
    if form.exact_score != cert.verified_form_min:
        raise InvariantViolation(
            f"linear form minimum {form.exact_score} does not match the "
            f"certificate's {cert.verified_form_min}"
        )
    if form.exact_score <= cert.epsilon:
        raise InvariantViolation(
            f"linear form minimum {form.exact_score} <= epsilon {cert.epsilon}"
        )
    print(f"linear_form_min {form.exact_score} > epsilon {cert.epsilon} (matches)")

    rep = bad_theta_score(theta, cert.eta, args.Q)
    if args.trace:
        for q, cubed in rep.running_min_trace:
            print(f"  theta record at q={q}: cubed={cubed}")
    print(
        f"bad_theta_score Q={args.Q}: {rep.score:.6e} "
        f"(cubed {rep.score_cubed}, argmin q={rep.argmin})"
    )
    if rep.score_cubed == 0:
        raise InvariantViolation("eta lies on the orbit: score hit exact 0")

    hom = bad_alpha_beta_score(theta, args.Q)
    print(f"bad_alpha_beta_score Q={args.Q}: {hom.score:.6e} (cubed {hom.score_cubed})")

    stamped = dataclasses.replace(
        cert, bad_theta_score_at_Q=(args.Q, rep.score_cubed)
    )
    vpath = _verified_path(args.certificate, args.out)
    vpath.write_text(certificate_json(stamped))
    print(f"wrote {vpath}")
    return EXIT_CODES["ok"]


def _dump_sequence_divergence(name, fast, slow) -> None:
    n = min(len(fast.vectors), len(slow.vectors))
    for k in range(n):
        a, b = fast.vectors[k], slow.vectors[k]
        if a != b:
            print(f"  {name}: first divergence at position {k}:")
            print(f"    enumerated {a}")
            print(f"    brute      {b}")
            return
    print(
        f"  {name}: length mismatch: enumerated {len(fast.vectors)} "
        f"vs brute {len(slow.vectors)}"
    )


def cmd_crosscheck(args) -> int:
    if args.catalog or args.theta:
        pairs = [("theta", _resolve_theta(args))]
    else:
        pairs = [(name, get_entry(name).theta) for name in catalog_names()]

    ok = True
    for name, theta in pairs:
        fast = enumerate_best_approx(theta, args.bound)
        slow = brute_best_approx(theta, args.bound)
        if fast.vectors == slow.vectors:
            print(
                f"best-approx oracle: {name} bound {args.bound}: "
                f"{len(fast.vectors)} vectors equal"
            )
        else:
            ok = False
            print(f"best-approx oracle: {name} bound {args.bound}: DIVERGENCE")
            _dump_sequence_divergence(name, fast, slow)

    cfg = SieveConfig(R=args.R, depth=args.depth, policy=args.policy, seed=args.seed)
    for name, theta in pairs:
        seq = enumerate_best_approx(theta, max(1, cfg.height_sq_bound()))
        _, journal = run_sieve(theta, cfg, seq)
        checked = 0
        for rec in journal.levels:
            for k in rec.window1 + rec.window2:
                v = seq.vectors[k - 1]
                strip = dangerous_children(rec.rect, v, cfg)
                grid = grid_dangerous_children(rec.rect, v, cfg)
                if strip != grid:
                    ok = False
                    extra = sorted(strip - grid)[:5]
                    missing = sorted(grid - strip)[:5]
                    print(
                        f"strip oracle: {name} level {rec.level} vector "
                        f"({v.m1},{v.m2}): DIVERGENCE extra={extra} "
                        f"missing={missing}"
                    )
                checked += 1
        print(
            f"strip oracle: {name} R={cfg.R} depth={cfg.depth}: "
            f"{checked} (level, vector) pairs compared"
        )

    if not ok:
        print("crosscheck FAILED")
        return EXIT_CODES["violation"]
    print("crosscheck ok")
    return EXIT_CODES["ok"]


def cmd_catalog(args) -> int:
    for name in catalog_names():
        e = get_entry(name)
        print(f"{name}: {e.description}")
        print(f"  theta1 ~ {float(e.theta.theta1):.12f}")
        print(f"  theta2 ~ {float(e.theta.theta2):.12f}")
        print(f"  declared_error {e.theta.declared_error}")
    return EXIT_CODES["ok"]


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (DegenerateForm, InvariantViolation) as e:
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_CODES["violation"]
    except NoSurvivor as e:
        print(f"no survivor: {e}", file=sys.stderr)
        return EXIT_CODES["no_survivor"]
    except PrecisionExhausted as e:
        print(f"precision exhausted: {e}", file=sys.stderr)
        return EXIT_CODES["precision"]
    except (ConfigError, NoBaseFound, IncompleteSequence, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CODES["config"]


if __name__ == "__main__":
    sys.exit(main())
