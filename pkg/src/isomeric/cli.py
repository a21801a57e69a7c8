"""Command-line front end.

Every report records the seed it ran with; computed quantities are rendered
as strings so that exact integers and rationals survive JSON.  The exit status
is 0 exactly when every check embedded in the run holds, 1 when a check fails
and 2 for invalid input or a dimension-cap abort.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .partitions import format_partition, parse_partition
from .symfunc import cauchy_check, component_dim, graded_dim_A, schur_q

OUTPUT_DIR_ENV = "ISOMERIC_OUTPUT_DIR"
DEFAULT_DIM_CAP = 5000


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: tuple[str, ...]
    n: int | None = None
    r: int | None = None
    degree: int | None = None
    max_degree: int | None = None
    kmax: int = 4
    fmt: str = "text"
    seed: int = 0
    output: str | None = None
    dim_cap: int = DEFAULT_DIM_CAP
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("n",):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name} must be positive")
        for name in ("r", "degree", "max_degree"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        if self.kmax < 1:
            raise UsageError("--kmax must be positive")
        if self.dim_cap < 1:
            raise UsageError("--dim-cap must be positive")


def _check_cap(n: int, d: int, cap: int) -> None:
    est = graded_dim_A(n, d)
    if est > cap:
        raise UsageError(
            f"graded piece of degree {d} at rank {n} has dimension {est}, above the cap {cap}; "
            "raise --dim-cap to run it anyway"
        )


def _render(cfg: RunConfig, payload: dict, rows: list[dict] | None, text: str) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if cfg.fmt == "csv":
        if rows is None:
            raise UsageError(f"{' '.join(cfg.command)} has no table-shaped output; use json or text")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["seed"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        buf.write(f"# seed={cfg.seed}\n")
        return buf.getvalue()
    return text + f"seed: {cfg.seed}\n"


def _cmd_cauchy(cfg: RunConfig):
    reports = [cauchy_check(cfg.n, d) for d in range(cfg.max_degree + 1)]
    ok = all(r.equal for r in reports)
    payload = {"command": "cauchy", "seed": cfg.seed, "n": cfg.n, "ok": ok, "records": [r.as_dict() for r in reports]}
    rows = [{"degree": r.degree, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal} for r in reports]
    lines = []
    for r in reports:
        terms = " + ".join(f"{t}[{format_partition(lam)}]" for lam, t in r.per_lambda if t) or "0"
        lines.append(f"degree {r.degree}: lhs {r.lhs} rhs {r.rhs} ({terms}) {'equal' if r.equal else 'DIFFERENT'}")
    return ok, payload, rows, "\n".join(lines) + "\n"


def _cmd_symfunc_q(cfg: RunConfig):
    lam = cfg.extra["lambda"]
    nvars = cfg.extra["vars"]
    poly = schur_q(lam, nvars)
    payload = {
        "command": "symfunc q",
        "seed": cfg.seed,
        "lambda": format_partition(lam),
        "vars": nvars,
        "ok": True,
        "polynomial": str(poly),
    }
    rows = [
        {"exponents": " ".join(map(str, k)), "coefficient": str(c)}
        for k, c in sorted(poly.coeffs.items(), reverse=True)
    ]
    return True, payload, rows, f"Q_{format_partition(lam)}({nvars} vars) = {poly}\n"


def _cmd_isotypic(cfg: RunConfig):
    from .liealg import isotypic_decomposition

    _check_cap(cfg.n, cfg.degree, cfg.dim_cap)
    dec = isotypic_decomposition(cfg.n, cfg.degree, seed=cfg.seed)
    total = graded_dim_A(cfg.n, cfg.degree)
    ok = (
        sum(c.dimension for c in dec.components) == total
        and all(c.dimension == component_dim(c.label, cfg.n) for c in dec.components)
        and dec.commutant_dim == len(dec.components)
    )
    comps = [
        {"lambda": format_partition(c.label), "dimension": str(c.dimension), "degree": c.degree, "label_method": c.label_method}
        for c in dec.components
    ]
    payload = {
        "command": "isotypic",
        "seed": cfg.seed,
        "n": cfg.n,
        "degree": cfg.degree,
        "ok": ok,
        "commutant_dim": str(dec.commutant_dim),
        "attempts": dec.attempts,
        "components": comps,
    }
    dump = cfg.extra.get("dump_basis")
    if dump:
        with open(_resolve(dump), "w") as fh:
            fh.write(f"# isotypic n={cfg.n} degree={cfg.degree} seed={cfg.seed}\n")
            for c in dec.components:
                fh.write(f"# lambda={format_partition(c.label)} dimension={c.dimension}\n")
                fh.write(c.basis.to_text())
    text = "".join(f"{c['lambda']}: dimension {c['dimension']} ({c['label_method']})\n" for c in comps)
    text += f"commutant dimension {dec.commutant_dim}; total {total}\n"
    return ok, payload, [dict(c) for c in comps], text


def _cmd_qdet_verify(cfg: RunConfig):
    from .qdet import verify_rank_locus

    if cfg.r >= cfg.n:
        raise UsageError("qdet verify needs r < n")
    _check_cap(cfg.n, cfg.max_degree, cfg.dim_cap)
    rep = verify_rank_locus(cfg.n, cfg.r, cfg.max_degree, cfg.kmax)
    degrees = list(range(1, cfg.max_degree + 1))
    payload = {
        "command": "qdet verify",
        "seed": cfg.seed,
        "n": cfg.n,
        "r": cfg.r,
        "max_degree": cfg.max_degree,
        "kmax": cfg.kmax,
        "ok": rep.ok,
        "degrees": degrees,
        "kernel_dims": [str(x) for x in rep.kernel_dims[1:]],
        "predicted_dims": [str(x) for x in rep.predicted_dims[1:]],
        "minor_powers": [
            {"minor": mp["minor"], "k": None if mp["k"] is None else str(mp["k"]), "status": mp["status"]}
            for mp in rep.minor_powers
        ],
        "inclusion_ok": rep.inclusion_ok,
        "equivariance_ok": rep.equivariance_ok,
        "solution_dim": str(rep.solution_dim),
    }
    rows = [
        {"degree": d, "kernel_dim": k, "predicted": p}
        for d, k, p in zip(degrees, rep.kernel_dims[1:], rep.predicted_dims[1:])
    ]
    text = f"kernel dims (degrees 1..{cfg.max_degree}): {rep.kernel_dims[1:]}\n"
    text += f"predicted:                     {rep.predicted_dims[1:]}\n"
    for mp in rep.minor_powers:
        text += f"minor {mp['minor']}: k = {mp['k']} ({mp['status']})\n"
    text += f"inclusion_ok: {rep.inclusion_ok}\nequivariance_ok: {rep.equivariance_ok}\n"
    return rep.ok, payload, rows, text


def _cmd_qdet_integrality(cfg: RunConfig):
    from .qdet import integrality_check

    trials = integrality_check(cfg.n, cfg.extra["trials"], seed=cfg.seed)
    ok = all(t["product_nonzero"] for t in trials if t["found"])
    payload = {"command": "qdet integrality", "seed": cfg.seed, "n": cfg.n, "ok": ok, "trials": trials}
    rows = [{k: t[k] for k in ("trial", "f", "g", "found", "f_prime", "product_nonzero")} for t in trials]
    text = "".join(
        f"trial {t['trial']}: f={t['f']} g={t['g']} f'={t['f_prime']} nonzero={t['product_nonzero']}\n" for t in trials
    )
    return ok, payload, rows, text


def _cmd_lattice(cfg: RunConfig):
    from . import lattice as lat

    op = cfg.command[1]
    if op == "spec":
        chain = lat.g_spectrum(cfg.extra["rmax"])
        entries = [{"r": "inf" if r is None else str(r), "generators": str(I)} for r, I in chain]
        ok = all(lat.is_g_prime(I) and lat.g_radical(I) == I for _, I in chain) and all(
            lat.leq(b, a) and a != b for (_, a), (_, b) in zip(chain, chain[1:])
        )
        payload = {"command": "lattice spec", "seed": cfg.seed, "ok": ok, "chain": entries}
        text = "\n".join(f"I_{e['r']} = <{e['generators']}>" for e in entries) + "\n"
        return ok, payload, entries, text
    ideal = lat.parse_antichain(cfg.extra["gens"])
    if op == "leq":
        other = lat.parse_antichain(cfg.extra["other"])
        value = lat.leq(ideal, other)
        payload = {"command": "lattice leq", "seed": cfg.seed, "ok": True, "gens": str(ideal), "other": str(other), "result": value}
        return True, payload, None, f"{str(value).lower()}\n"
    if op == "radical":
        rad = lat.g_radical(ideal)
        r = lat.rank_of_prime(rad) if lat.is_g_prime(rad) else None
        payload = {
            "command": "lattice radical",
            "seed": cfg.seed,
            "ok": True,
            "gens": str(ideal),
            "radical": str(rad),
            "r": "inf" if rad.is_zero else (None if r is None else str(r)),
        }
        return True, payload, None, f"{rad}\n"
    if op == "prime":
        value = lat.is_g_prime(ideal)
        payload = {"command": "lattice prime", "seed": cfg.seed, "ok": True, "gens": str(ideal), "result": value}
        return True, payload, None, f"{str(value).lower()}\n"
    raise UsageError(f"unknown lattice operation {op}")


def _cmd_selftest(cfg: RunConfig):
    from .acceptance import run_all

    outcomes = run_all()
    ok = all(o.passed for o in outcomes)
    payload = {
        "command": "selftest",
        "seed": cfg.seed,
        "ok": ok,
        "criteria": [{"number": o.number, "name": o.name, "passed": o.passed, "detail": o.detail} for o in outcomes],
    }
    rows = [{"number": o.number, "name": o.name, "passed": o.passed} for o in outcomes]
    return ok, payload, rows, "".join(o.line + "\n" for o in outcomes)


_DISPATCH = {
    ("cauchy",): _cmd_cauchy,
    ("symfunc", "q"): _cmd_symfunc_q,
    ("isotypic",): _cmd_isotypic,
    ("qdet", "verify"): _cmd_qdet_verify,
    ("qdet", "integrality"): _cmd_qdet_integrality,
    ("lattice", "leq"): _cmd_lattice,
    ("lattice", "radical"): _cmd_lattice,
    ("lattice", "prime"): _cmd_lattice,
    ("lattice", "spec"): _cmd_lattice,
    ("selftest",): _cmd_selftest,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one configured run; returns (exit status, rendered report)."""
    cfg.validate()
    handler = _DISPATCH.get(cfg.command)
    if handler is None:
        raise UsageError(f"unknown command {' '.join(cfg.command)}")
    ok, payload, rows, text = handler(cfg)
    return (0 if ok else 1), _render(cfg, payload, rows, text)


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help=f"write the report here (relative paths go under ${OUTPUT_DIR_ENV})")
    common.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP)

    parser = argparse.ArgumentParser(prog="isomeric", description="Equivariant algebra of the isomeric ring A at finite rank.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("cauchy", parents=[common], help="check dim A^(d) against the Schur Q sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=8)

    p = sub.add_parser("symfunc", help="Schur Q-functions")
    ssub = p.add_subparsers(dest="op", required=True)
    q = ssub.add_parser("q", parents=[common], help="print the monomial expansion of Q_lambda")
    q.add_argument("--lambda", dest="lam", required=True)
    q.add_argument("--vars", type=int, required=True)

    p = sub.add_parser("isotypic", parents=[common], help="isotypic decomposition of a graded piece")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--dump-basis", metavar="FILE")

    p = sub.add_parser("qdet", help="isomeric determinantal ideals")
    qsub = p.add_subparsers(dest="op", required=True)
    v = qsub.add_parser("verify", parents=[common], help="kernel of phi_r and the rank locus")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--r", type=int, required=True)
    v.add_argument("--max-degree", type=int, default=6)
    v.add_argument("--kmax", type=int, default=4)
    g = qsub.add_parser("integrality", parents=[common], help="random integrality witnesses")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("lattice", help="equivariant ideals as antichains of strict partitions")
    lsub = p.add_subparsers(dest="op", required=True)
    a = lsub.add_parser("leq", parents=[common], help="is I contained in J")
    a.add_argument("--gens", required=True)
    a.add_argument("--other", required=True)
    for name, helptext in (("radical", "g-radical of an ideal"), ("prime", "is the ideal g-prime")):
        b = lsub.add_parser(name, parents=[common], help=helptext)
        b.add_argument("--gens", required=True)
    c = lsub.add_parser("spec", parents=[common], help="the chain of g-primes")
    c.add_argument("--rmax", type=int, default=5)

    sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = (ns.cmd,) + ((ns.op,) if getattr(ns, "op", None) else ())
    extra = {}
    if command == ("symfunc", "q"):
        extra = {"lambda": parse_partition(ns.lam), "vars": ns.vars}
        if ns.vars < 1:
            raise UsageError("--vars must be positive")
    elif command == ("isotypic",):
        extra = {"dump_basis": ns.dump_basis}
    elif command == ("qdet", "integrality"):
        extra = {"trials": ns.trials}
    elif command[0] == "lattice":
        extra = {k: getattr(ns, k) for k in ("gens", "other", "rmax") if hasattr(ns, k)}
        if "gens" in extra:
            from .lattice import parse_antichain

            parse_antichain(extra["gens"])
        if extra.get("rmax") is not None and extra["rmax"] < 0:
            raise UsageError("--rmax must be nonnegative")
    return RunConfig(
        command=command,
        n=getattr(ns, "n", None),
        r=getattr(ns, "r", None),
        degree=getattr(ns, "degree", None),
        max_degree=getattr(ns, "max_degree", None),
        kmax=getattr(ns, "kmax", 4),
        fmt=ns.fmt,
        seed=ns.seed,
        output=ns.output,
        dim_cap=ns.dim_cap,
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, report = run(cfg)
    except (UsageError, ValueError) as exc:
        print(f"isomeric: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        _resolve(cfg.output).write_text(report)
    else:
        sys.stdout.write(report)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
