"""Command-line driver.

Every command writes deterministic output: ASCII, ``\\n`` line endings, full
decimal integers, and a ``# schema=1`` first line on CSV files (JSON reports
carry ``"schema": 1``).  Exit codes: 0 ok, 2 configuration error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from typing import Iterable, Optional, Sequence

from . import __version__
from .arith import DomainError, digit_count
from .congruence import primorial_modulus, residue_sets
from .density import (
    VerificationError,
    bucket_edges,
    count_primes_ec,
    hc_product_checkpoints,
    hunt_primes,
    iz_bound,
    j_bound,
    nz_stats,
    prime_indices,
)
from .divisors import (
    cofactor_progression,
    count_cofactor_primes,
    count_cofactor_primes_window,
)
from .ecset import EcParams
from .generator import CandidatePair, algorithm1, algorithm2, lift_to_digits, validate_pair
from .parallel import default_workers
from .primality import PrimalityPolicy

SCHEMA = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3

PAIRS_HEADER = ["q1", "c", "j0", "modulus", "parity", "algorithm", "seed"]

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str = ""
    q1: int = 0
    count: int = 1
    parity: str = "odd"
    algo: int = 1
    seed: int = 1
    target_m: int = 0
    offset: int = 0
    c: int = 0
    j0: int = -1
    z: float = 1.0
    x_max: int = 0
    checkpoint_step: int = 0
    prime_limit: int = 4_000_000
    mr_rounds: int = 64
    lucas: bool = True
    rng_seed: int = 0
    max_results: int = 2
    bucket_width: int = 0
    buckets: int = 10
    first_width: int = 0
    a1: int = 5
    eps: int = 1
    xs: str = ""
    window: str = "ecx"
    p: int = 0
    pairs: str = ""
    out: str = "-"
    out_csv: str = ""
    checkpoint: str = ""
    checkpoint_every: int = 1000
    format: str = "csv"
    workers: int = 1

    @property
    def policy(self) -> PrimalityPolicy:
        return PrimalityPolicy(self.mr_rounds, self.lucas, self.rng_seed)

    def to_kv(self) -> str:
        return "".join(f"{f.name}={getattr(self, f.name)}\n" for f in fields(self))

    @classmethod
    def from_kv(cls, text: str) -> "RunConfig":
        kinds = {f.name: f.type for f in fields(cls)}
        values = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, raw = line.partition("=")
            key = key.strip()
            if not sep or key not in kinds:
                raise ConfigError(f"bad config line: {line!r}")
            values[key] = _coerce(kinds[key], raw.strip())
        return cls(**values)


def _coerce(kind: str, raw: str):
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    if kind == "bool":
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigError(f"not a boolean: {raw!r}")
    return raw


# -- output helpers ---------------------------------------------------------------

def _open_out(path: str):
    if path in ("", "-"):
        return _StdoutSink()
    return open(path, "w", newline="", encoding="ascii")


class _StdoutSink(io.StringIO):
    def close(self):
        sys.stdout.write(self.getvalue())
        sys.stdout.flush()
        super().close()


def write_table(path: str, header: Sequence[str], rows: Iterable[Sequence], fmt: str = "csv") -> None:
    rows = [list(r) for r in rows]
    fh = _open_out(path)
    try:
        if fmt == "json":
            doc = {"schema": SCHEMA, "columns": list(header),
                   "rows": [dict(zip(header, r)) for r in rows]}
            fh.write(json.dumps(doc, indent=2) + "\n")
        else:
            fh.write(f"# schema={SCHEMA}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    finally:
        fh.close()


def write_json(path: str, doc: dict) -> None:
    fh = _open_out(path)
    try:
        fh.write(json.dumps({"schema": SCHEMA, **doc}, indent=2) + "\n")
    finally:
        fh.close()


def read_csv_rows(path: str) -> list[dict]:
    with open(path, encoding="ascii") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def load_pairs(path: str) -> list[CandidatePair]:
    out = []
    for row in read_csv_rows(path):
        try:
            out.append(CandidatePair(int(row["c"]), int(row["j0"]), int(row["q1"]), int(row["modulus"])))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"{path}: malformed pair row {row}") from exc
    return out


def pair_rows(pairs: Sequence[CandidatePair], algo: int | str, seed: int | str) -> list[list]:
    return [[p.q1, p.c, p.j0, p.modulus, p.parity, algo, seed] for p in pairs]


# -- commands ---------------------------------------------------------------------

def cmd_gen_c(cfg: RunConfig) -> int:
    if cfg.algo == 1:
        pairs = algorithm1(cfg.q1, cfg.count, cfg.parity)
        seed_col: int | str = ""
    elif cfg.algo == 2:
        if cfg.parity == "both":
            raise ConfigError("algorithm 2 needs a single parity")
        pairs = algorithm2(cfg.q1, cfg.count, cfg.seed, cfg.parity, cfg.workers)
        seed_col = cfg.seed
    else:
        raise ConfigError(f"unknown algorithm {cfg.algo}")
    if cfg.target_m:
        pairs = [lift_to_digits(p, cfg.target_m, cfg.offset) for p in pairs]
    for p in pairs:
        problems = validate_pair(p)
        if problems:
            raise VerificationError(f"pair c={p.c}: {'; '.join(problems)}")
    write_table(cfg.out, PAIRS_HEADER, pair_rows(pairs, cfg.algo, seed_col), cfg.format)
    return 0


def _product_limits(limit: int) -> list[int]:
    out = [10**k for k in range(1, 20) if 10**k < limit]
    return out + [limit]


def cmd_estimate_hc(cfg: RunConfig) -> int:
    if cfg.c < 1:
        raise ConfigError("--c must be >= 1")
    if cfg.prime_limit < 3:
        raise ConfigError("--prime-limit must be >= 3")
    cps = hc_product_checkpoints(cfg.c, _product_limits(cfg.prime_limit))
    doc = {
        "c": cfg.c,
        "prime_limit": cfg.prime_limit,
        "h_product": cps[-1][1],
        "checkpoints": [{"prime_limit": lim, "h_product": h} for lim, h in cps],
        "conventions": {
            "h_product": "prod over odd p <= prime_limit of (p - t_p)/(p - 1), p | c skipped",
            "d_per_X": "primes counted / X_max",
            "d_per_element": "primes counted / number of X <= X_max of parity r",
            "h_emp": "m_c * ln(10) * d_per_X",
        },
    }
    if cfg.x_max > 0:
        rep = count_primes_ec(cfg.c, cfg.x_max, cfg.checkpoint_step, cfg.policy, cfg.workers)
        s_c = EcParams(cfg.c).s
        doc["empirical"] = {
            "X_max": rep.X_max, "count": rep.prime_count, "h_emp": rep.h_emp,
            "d_per_X": rep.d_per_X, "d_per_element": rep.d_per_element,
            "checkpoints": rep.checkpoint_rows(s_c),
        }
    write_json(cfg.out, doc)
    return 0


def _hunt_pairs(cfg: RunConfig) -> list[CandidatePair]:
    if cfg.pairs:
        return load_pairs(cfg.pairs)
    if cfg.c < 1 or cfg.q1 < 3:
        raise ConfigError("hunt needs --pairs or an inline --c/--q1")
    j0 = cfg.j0
    if j0 < 0:
        from .generator import anchor_index
        j0 = anchor_index(cfg.c, cfg.q1)
    return [CandidatePair(cfg.c, j0, cfg.q1, primorial_modulus(cfg.q1))]


def _load_checkpoint(path: str) -> dict:
    if not path or not os.path.exists(path):
        return {}
    with open(path, encoding="ascii") as fh:
        doc = json.load(fh)
    return {int(k): v for k, v in doc.get("pairs", {}).items()}


def _save_checkpoint(path: str, state: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump({"schema": SCHEMA, "pairs": {str(k): v for k, v in state.items()}}, fh)
    os.replace(tmp, path)


def cmd_hunt(cfg: RunConfig) -> int:
    """Hunt each pair's I_z in X-blocks; the checkpoint records (c, last X)."""
    pairs = _hunt_pairs(cfg)
    state = _load_checkpoint(cfg.checkpoint)
    policy = cfg.policy
    block = max(2, 2 * cfg.checkpoint_every)
    rows = []
    for pair in pairs:
        bound = iz_bound(EcParams(pair.c).m, cfg.z)
        st = state.setdefault(pair.c, {"last_X": -1, "found": []})
        while st["last_X"] < bound and len(st["found"]) < cfg.max_results:
            lo = st["last_X"] + 1
            hi = min(bound, lo + block - 1)
            hits = hunt_primes(pair, cfg.z, cfg.max_results - len(st["found"]),
                               policy, start_X=lo, end_X=hi)
            st["found"].extend(X for X, _v in hits)
            full = len(st["found"]) >= cfg.max_results
            st["last_X"] = hits[-1][0] if full else hi
            if cfg.checkpoint:
                _save_checkpoint(cfg.checkpoint, state)
        for X in st["found"]:
            rows.append([pair.c, X, digit_count(X * X + pair.c), "true"])
    write_table(cfg.out, ["c", "X", "digits", "verified"], rows, cfg.format)
    return 0


def _hist_rows(pairs, edges, policy, workers):
    totals = [0] * len(edges)
    if edges:
        for p in pairs:
            js = prime_indices(EcParams(p.c), 0, edges[-1][1] + 1, policy, workers)
            for i, (lo, hi) in enumerate(edges):
                totals[i] += sum(1 for j in js if lo <= j <= hi)
    n = len(pairs)
    rows = [[lo, hi, t, f"{t / n:.4f}"] for (lo, hi), t in zip(edges, totals)]
    if edges:
        rows.append([edges[0][0], edges[-1][1], sum(totals), f"{sum(totals) / n:.4f}"])
    return rows


def cmd_density_scan(cfg: RunConfig) -> int:
    pairs = load_pairs(cfg.pairs) if cfg.pairs else []
    if not pairs:
        raise ConfigError("density-scan needs a non-empty --pairs file")
    ms = {EcParams(p.c).m for p in pairs}
    if len(ms) != 1:
        raise ConfigError(f"pairs have mixed decimal sizes {sorted(ms)}")
    stats = nz_stats(pairs, cfg.z, cfg.policy, workers=cfg.workers)
    doc = {
        "z": cfg.z, "m_c": ms.pop(), "I_z_max_X": stats.bound, "pairs": len(pairs),
        "h": stats.h, "expected": stats.expected, "mean": stats.mean, "mode": stats.mode,
        "fraction_with_prime": stats.fraction_with_prime,
        "distribution_percent": {str(k): v for k, v in stats.distribution.items()},
        "per_pair": [{"c": p.c, "j0": p.j0, "N_z": n} for p, n in zip(pairs, stats.counts)],
        "conventions": {"expected": "4 h / (z ln 10)", "I_z": "X in [0, floor(4 m_c / z)], X of parity r"},
    }
    write_json(cfg.out, doc)
    if cfg.out_csv:
        width = cfg.bucket_width or max(1, j_bound(EcParams(pairs[0].c), stats.bound) // cfg.buckets)
        edges = bucket_edges(width, cfg.buckets, cfg.first_width or None)
        write_table(cfg.out_csv, ["j_lo", "j_hi", "primes", "mean_per_pair"],
                    _hist_rows(pairs, edges, cfg.policy, cfg.workers))
    return 0


def cmd_cofactor_count(cfg: RunConfig) -> int:
    cp = cofactor_progression(cfg.a1, EcParams(cfg.c or 1), cfg.eps)
    xs = [int(float(x)) for x in cfg.xs.split(",") if x.strip()] if cfg.xs else []
    if not xs:
        raise ConfigError("--xs needs at least one value")
    rows = []
    for x in xs:
        if cfg.window == "ecx":
            n = count_cofactor_primes_window(cp, x, cfg.policy, cfg.workers)
        elif cfg.window == "inclusive":
            n = count_cofactor_primes(cp, x // cfg.a1, cfg.policy, cfg.workers)
        else:
            raise ConfigError(f"unknown window {cfg.window!r}")
        rows.append([x, n])
    write_table(cfg.out, ["x", "count"], rows, cfg.format)
    return 0


def cmd_residues(cfg: RunConfig) -> int:
    sets = residue_sets(cfg.p)
    rows = [[b, "rq"] for b in sets.rq] + [[b, "nrq"] for b in sets.nrq]
    rows.sort()
    write_table(cfg.out, ["b", "set"], rows, cfg.format)
    return 0


COMMANDS = {
    "gen-c": cmd_gen_c,
    "estimate-hc": cmd_estimate_hc,
    "hunt": cmd_hunt,
    "density-scan": cmd_density_scan,
    "cofactor-count": cmd_cofactor_count,
    "residues": cmd_residues,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadprimes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file supplying defaults")
    common.add_argument("--out", help="output path ('-' for stdout)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--workers", type=int, help="worker processes (env QUADPRIMES_WORKERS)")
    common.add_argument("--mr-rounds", type=int)
    common.add_argument("--no-lucas", dest="lucas", action="store_false", default=None)
    common.add_argument("--rng-seed", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-c", parents=[common], help="generate (c, j0) pairs")
    p.add_argument("--q1", type=int, required=True)
    p.add_argument("--count", type=int)
    p.add_argument("--parity", choices=["even", "odd", "both"])
    p.add_argument("--algo", type=int, choices=[1, 2])
    p.add_argument("--seed", type=int)
    p.add_argument("--target-m", type=int, help="lift c to this many decimal digits")
    p.add_argument("--offset", type=int)

    p = sub.add_parser("estimate-hc", parents=[common], help="h_c by truncated product")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--prime-limit", type=int)
    p.add_argument("--x-max", type=int, help="also count primes for X <= x-max")
    p.add_argument("--checkpoint-step", type=int)

    p = sub.add_parser("hunt", parents=[common], help="find primes X^2 + c in I_z")
    p.add_argument("--pairs")
    p.add_argument("--c", type=int)
    p.add_argument("--q1", type=int)
    p.add_argument("--j0", type=int)
    p.add_argument("--z", type=float)
    p.add_argument("--max-results", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--checkpoint-every", type=int)

    p = sub.add_parser("density-scan", parents=[common], help="N_z statistics and histograms")
    p.add_argument("--pairs", required=True)
    p.add_argument("--z", type=float)
    p.add_argument("--out-csv", help="interval histogram CSV")
    p.add_argument("--bucket-width", type=int)
    p.add_argument("--buckets", type=int)
    p.add_argument("--first-width", type=int)

    p = sub.add_parser("cofactor-count", parents=[common], help="primes in a cofactor progression")
    p.add_argument("--a1", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--eps", type=int, choices=[1, -1])
    p.add_argument("--xs", required=True, help="comma-separated x values")
    p.add_argument("--window", choices=["ecx", "inclusive"])

    p = sub.add_parser("residues", parents=[common], help="dump -x^2 residues mod p")
    p.add_argument("--p", type=int, required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.config:
        with open(ns.config, encoding="ascii") as fh:
            cfg = RunConfig.from_kv(fh.read())
    else:
        cfg = RunConfig(workers=default_workers())
    cfg.command = ns.command
    names = {f.name for f in fields(RunConfig)}
    for key, val in vars(ns).items():
        if key in names and key != "command" and val is not None:
            setattr(cfg, key, val)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"quadprimes: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VerificationError as exc:
        print(f"quadprimes: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
