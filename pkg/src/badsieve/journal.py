"""Line-oriented persistence for sieve runs and certificates.

A journal is JSONL: one header line (config, theta, fingerprints, base
corner), one line per completed level, one final line. Every rational is a
"p/q" string, keys are emitted in a fixed order, and nothing time- or
host-dependent is ever written, so identical runs produce byte-identical
files. A journal whose final line is missing is a resumable interrupted run.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ConfigError
from .rationals import ThetaForm, format_rational, parse_rational
from .sieve import (
    Certificate,
    DangerStats,
    LevelRecord,
    Rectangle,
    RunJournal,
    SieveConfig,
    VectorMark,
)

SCHEMA = 1


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _rect_pair(rect: Rectangle) -> list[str]:
    return [format_rational(rect.b1), format_rational(rect.b2)]


def _header_record(j: RunJournal) -> dict:
    return {
        "type": "header",
        "schema": SCHEMA,
        "R": j.config.R,
        "depth": j.config.depth,
        "policy": j.config.policy,
        "seed": j.config.seed,
        "theta1": format_rational(j.theta.theta1),
        "theta2": format_rational(j.theta.theta2),
        "declared_error": format_rational(j.theta.declared_error),
        "theta_fingerprint": j.theta_fp,
        "sequence_fingerprint": j.sequence_fp,
        "base": _rect_pair(j.base),
    }


def _level_record(rec: LevelRecord) -> dict:
    s = rec.stats
    return {
        "type": "level",
        "level": rec.level,
        "rect": _rect_pair(rec.rect),
        "window1": list(rec.window1),
        "window2": list(rec.window2),
        "marks": [
            {"index": m.index, "kind": m.kind, "kills": m.kills, "gap_ok": m.gap_ok}
            for m in s.per_vector
        ],
        "type1_total": s.type1_total,
        "type2_total": s.type2_total,
        "union_kills": s.union_kills,
        "survivors": s.survivors,
        "bounds": {
            "h1": s.h1_bound,
            "h2": s.h2_bound,
            "type1_total": s.type1_total_bound,
            "type2_total": s.type2_total_bound,
            "union": s.union_bound,
        },
        "chosen": list(rec.chosen),
    }


def _final_record(j: RunJournal) -> dict:
    return {
        "type": "final",
        "level": j.final.level,
        "rect": _rect_pair(j.final),
    }


def journal_text(j: RunJournal) -> str:
    lines = [_dump(_header_record(j))]
    lines.extend(_dump(_level_record(rec)) for rec in j.levels)
    lines.append(_dump(_final_record(j)))
    return "".join(line + "\n" for line in lines)


def _parse_level(rec: dict, cfg: SieveConfig) -> LevelRecord:
    marks = tuple(
        VectorMark(
            index=m["index"], kind=m["kind"], kills=m["kills"], gap_ok=m["gap_ok"]
        )
        for m in rec["marks"]
    )
    stats = DangerStats.collect(cfg, rec["level"], marks, rec["union_kills"])
    if (
        stats.type1_total != rec["type1_total"]
        or stats.type2_total != rec["type2_total"]
    ):
        raise ConfigError("journal level record inconsistent with its marks")
    if stats.survivors != rec["survivors"] or {
        "h1": stats.h1_bound,
        "h2": stats.h2_bound,
        "type1_total": stats.type1_total_bound,
        "type2_total": stats.type2_total_bound,
        "union": stats.union_bound,
    } != rec["bounds"]:
        raise ConfigError("journal level record inconsistent with its config")
    return LevelRecord(
        level=rec["level"],
        rect=Rectangle(
            parse_rational(rec["rect"][0]), parse_rational(rec["rect"][1]), rec["level"]
        ),
        window1=tuple(rec["window1"]),
        window2=tuple(rec["window2"]),
        stats=stats,
        chosen=(rec["chosen"][0], rec["chosen"][1]),
    )


def parse_journal(text: str):
    """-> (theta, config, theta_fp, sequence_fp, base, levels, final|None).

    Tolerates a missing final record (interrupted run); everything else
    malformed raises ConfigError."""
    records = []
    for ln, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise ConfigError(f"journal line {ln} is not valid JSON: {e}") from None
    if not records or records[0].get("type") != "header":
        raise ConfigError("journal does not start with a header record")
    h = records[0]
    if h.get("schema") != SCHEMA:
        raise ConfigError(f"unsupported journal schema {h.get('schema')}")
    theta = ThetaForm(
        theta1=parse_rational(h["theta1"]),
        theta2=parse_rational(h["theta2"]),
        declared_error=parse_rational(h["declared_error"]),
    )
    cfg = SieveConfig(R=h["R"], depth=h["depth"], policy=h["policy"], seed=h["seed"])
    base = Rectangle(parse_rational(h["base"][0]), parse_rational(h["base"][1]), 0)
    levels = []
    final = None
    for rec in records[1:]:
        kind = rec.get("type")
        if kind == "level":
            levels.append(_parse_level(rec, cfg))
        elif kind == "final":
            final = Rectangle(
                parse_rational(rec["rect"][0]),
                parse_rational(rec["rect"][1]),
                rec["level"],
            )
        else:
            raise ConfigError(f"unknown journal record type {kind!r}")
    expected = 0
    for rec in levels:
        if rec.level != expected:
            raise ConfigError("journal levels are not consecutive from 0")
        expected += 1
    return theta, cfg, h["theta_fingerprint"], h["sequence_fingerprint"], base, tuple(levels), final


def certificate_json(cert: Certificate) -> str:
    obj = {
        "schema": SCHEMA,
        "kind": "certificate",
        "theta": {
            "theta1": format_rational(cert.theta.theta1),
            "theta2": format_rational(cert.theta.theta2),
            "declared_error": format_rational(cert.theta.declared_error),
            "fingerprint": cert.theta_fp,
        },
        "config": {
            "R": cert.R,
            "depth": cert.depth,
            "policy": cert.policy,
            "seed": cert.seed,
        },
        "sequence_fingerprint": cert.sequence_fp,
        "eta": [format_rational(cert.eta[0]), format_rational(cert.eta[1])],
        "epsilon": format_rational(cert.epsilon),
        "height_sq_bound": cert.height_sq_bound,
        "verified_form_min": format_rational(cert.verified_form_min),
        "bad_theta_score_at_Q": None
        if cert.bad_theta_score_at_Q is None
        else {
            "Q": cert.bad_theta_score_at_Q[0],
            "score_cubed": format_rational(cert.bad_theta_score_at_Q[1]),
            "score": float(cert.bad_theta_score_at_Q[1]) ** (1.0 / 3.0),
        },
    }
    return json.dumps(obj, indent=2) + "\n"


def parse_certificate(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"certificate is not valid JSON: {e}") from None
    if obj.get("kind") != "certificate" or obj.get("schema") != SCHEMA:
        raise ConfigError("not a certificate file of a supported schema")
    t = obj["theta"]
    theta = ThetaForm(
        theta1=parse_rational(t["theta1"]),
        theta2=parse_rational(t["theta2"]),
        declared_error=parse_rational(t["declared_error"]),
    )
    c = obj["config"]
    score = obj["bad_theta_score_at_Q"]
    return Certificate(
        theta=theta,
        theta_fp=t["fingerprint"],
        sequence_fp=obj["sequence_fingerprint"],
        R=c["R"],
        depth=c["depth"],
        policy=c["policy"],
        seed=c["seed"],
        eta=(parse_rational(obj["eta"][0]), parse_rational(obj["eta"][1])),
        epsilon=parse_rational(obj["epsilon"]),
        height_sq_bound=obj["height_sq_bound"],
        verified_form_min=parse_rational(obj["verified_form_min"]),
        bad_theta_score_at_Q=None
        if score is None
        else (score["Q"], parse_rational(score["score_cubed"])),
    )
