"""Command-line experiment runner.

    cnpulse --lines 4 --mode pulsation --seed 1,2,3 --out runs/
    cnpulse verify runs/n4-pulsation-s1.net
    cnpulse report runs/

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from . import engine, sortnet
from .objectives import ObjectiveParams

log = logging.getLogger("cnpulse")

RECORD_KEYS = (
    "run_id", "seed", "mode", "gen", "novelty_active", "best_m", "best_l", "best_c",
    "best_o1", "mean_o1", "distinct_behaviors", "wall_ms",
)
SUMMARY_KEYS = (
    "run_id", "seed", "mode", "summary", "lines", "generations", "target_gen",
    "best_m", "best_l", "best_c", "best_o1", "network", "wall_ms",
)
EMPTY = "—"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _mode_list(text: str) -> list[str]:
    modes = [t.strip() for t in text.split(",") if t.strip()]
    bad = [m for m in modes if m not in engine.MODES]
    if bad or not modes:
        raise argparse.ArgumentTypeError(f"modes must be drawn from {', '.join(engine.MODES)}")
    return modes


def _alphas(text: str) -> ObjectiveParams:
    try:
        vals = [float(t) for t in text.split(",")]
        return ObjectiveParams(*vals)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError("--alpha takes four non-negative numbers a1,a2,a3,a4")


@dataclass(frozen=True)
class CampaignSpec:
    configs: tuple[engine.RunConfig, ...]
    out: Path | None
    workers: int = 1


def run_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cnpulse", description="Run seeded evolution campaigns on sorting networks.")
    d = engine.RunConfig()
    p.add_argument("--lines", type=_int_list, default=[d.lines], help="line count(s), comma separated")
    p.add_argument("--pop", type=int, default=d.population_size)
    p.add_argument("--elite-frac", type=float, default=d.elite_fraction)
    p.add_argument("--multiplier", type=float, default=d.selection_multiplier)
    p.add_argument("--period", type=int, default=d.pulsation_period)
    p.add_argument("--generations", type=int, default=d.generations)
    p.add_argument("--mode", type=_mode_list, default=[d.mode], help="mode(s), comma separated")
    p.add_argument("--seed", type=_int_list, default=[d.seed], help="seed(s), comma separated")
    p.add_argument("--target-comparators", type=int, default=None)
    p.add_argument("--pulse-phase", choices=engine.PHASES, default=d.pulse_phase)
    p.add_argument("--alpha", type=_alphas, default=d.params, help="a1,a2,a3,a4 (default 1,10,1,10)")
    p.add_argument("--p-crossover", type=float, default=d.p_crossover)
    p.add_argument("--out", type=Path, default=None, help="directory for per-run logs and reports")
    p.add_argument("--workers", type=int, default=1)
    return p


def parse_args(argv: list[str]) -> CampaignSpec:
    ns = run_parser().parse_args(argv)
    if not ns.seed:
        raise UsageError("seed list must be non-empty")
    configs = []
    try:
        for n in ns.lines:
            for mode in ns.mode:
                for seed in ns.seed:
                    configs.append(engine.RunConfig(
                        lines=n,
                        population_size=ns.pop,
                        elite_fraction=ns.elite_frac,
                        selection_multiplier=ns.multiplier,
                        pulsation_period=ns.period,
                        generations=ns.generations,
                        mode=mode,
                        params=ns.alpha,
                        seed=seed,
                        p_crossover=ns.p_crossover,
                        target_comparators=ns.target_comparators,
                        pulse_phase=ns.pulse_phase,
                    ))
    except engine.ConfigError as exc:
        raise UsageError(str(exc)) from exc
    return CampaignSpec(tuple(configs), ns.out, max(1, ns.workers))


def run_id(config: engine.RunConfig) -> str:
    return f"n{config.lines}-{config.mode}-s{config.seed}"


def record_line(rid: str, config: engine.RunConfig, rec: engine.GenerationRecord) -> str:
    row = {
        "run_id": rid,
        "seed": config.seed,
        "mode": config.mode,
        "gen": rec.gen,
        "novelty_active": rec.novelty_active,
        "best_m": rec.best_m,
        "best_l": rec.best_l,
        "best_c": rec.best_c,
        "best_o1": rec.best_o1,
        "mean_o1": rec.mean_o1,
        "distinct_behaviors": rec.distinct_behaviors,
        "wall_ms": round(rec.wall_ms, 3),
    }
    return json.dumps(row)


def summary_line(rid: str, result: engine.RunResult) -> str:
    config = result.config
    m, l, c = result.best.result.triple
    row = {
        "run_id": rid,
        "seed": config.seed,
        "mode": config.mode,
        "summary": True,
        "lines": config.lines,
        "generations": result.records[-1].gen,
        "target_gen": result.target_gen,
        "best_m": m,
        "best_l": l,
        "best_c": c,
        "best_o1": result.best.fitness,
        "network": sortnet.export_network(result.best.genome),
        "wall_ms": round(sum(r.wall_ms for r in result.records), 3),
    }
    return json.dumps(row)


def write_records(result: engine.RunResult, sink: TextIO, rid: str | None = None) -> None:
    rid = rid or run_id(result.config)
    for rec in result.records:
        sink.write(record_line(rid, result.config, rec) + "\n")
    sink.write(summary_line(rid, result) + "\n")


def execute(config: engine.RunConfig, out: Path | None) -> str:
    """Run one configuration; write its log atomically when ``out`` is given."""
    result = engine.run(config)
    buf = io.StringIO()
    write_records(result, buf)
    text = buf.getvalue()
    if out is not None:
        rid = run_id(config)
        path = out / f"{rid}.jsonl"
        tmp = path.with_suffix(".jsonl.tmp")
        try:
            tmp.write_text(text)
            tmp.replace(path)
            (out / f"{rid}.net").write_text(sortnet.export_network(result.best.genome))
        except OSError as exc:
            raise RuntimeError(f"cannot write run log {path}: {exc}") from exc
    return text


# -- reporting ---------------------------------------------------------------


def load_summaries(paths: Iterable[Path]) -> list[dict]:
    rows = []
    for path in sorted(paths):
        try:
            with open(path) as fh:
                for line in fh:
                    row = json.loads(line)
                    if row.get("summary"):
                        rows.append(row)
        except (OSError, json.JSONDecodeError) as exc:
            raise RuntimeError(f"cannot read run log {path}: {exc}") from exc
    return rows


def _fmt(value) -> str:
    if value is None:
        return EMPTY
    if isinstance(value, float):
        return f"{value:.1f}" if value != int(value) else str(int(value))
    return str(value)


def report(summaries: list[dict]) -> list[dict]:
    """One row per (lines, mode) cell: success rate, generations and wall time to target."""
    cells: dict[tuple[int, str], list[dict]] = {}
    for row in summaries:
        cells.setdefault((row["lines"], row["mode"]), []).append(row)
    table = []
    for (n, mode), rows in sorted(cells.items(), key=lambda kv: (kv[0][0], engine.MODES.index(kv[0][1]))):
        hits = [r["target_gen"] for r in rows if r["target_gen"] is not None]
        table.append({
            "lines": n,
            "mode": mode,
            "runs": len(rows),
            "successes": len(hits),
            "success_rate": len(hits) / len(rows),
            "median_gens": statistics.median(hits) if hits else None,
            "mean_gens": statistics.mean(hits) if hits else None,
            "median_wall_ms": statistics.median(r["wall_ms"] for r in rows),
        })
    return table


def format_report(table: list[dict]) -> str:
    header = ("lines", "mode", "runs", "successes", "success_rate", "median_gens", "mean_gens", "median_wall_ms")
    rows = [header] + [tuple(_fmt(row[h]) if h != "success_rate" else f"{row[h]:.2f}" for h in header) for row in table]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def report_csv(table: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(table[0]) if table else ["lines"], lineterminator="\n")
    writer.writeheader()
    for row in table:
        writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue()


# -- entry points ------------------------------------------------------------


def cmd_verify(argv: list[str], stdout: TextIO) -> int:
    p = _Parser(prog="cnpulse verify", description="Evaluate an exported network.")
    p.add_argument("file", type=Path)
    ns = p.parse_args(argv)
    try:
        net = sortnet.parse_network(ns.file.read_text())
    except OSError as exc:
        raise RuntimeError(f"cannot read {ns.file}: {exc}") from exc
    except sortnet.ContractError as exc:
        raise RuntimeError(f"{ns.file}: {exc}") from exc
    res = sortnet.evaluate(net)
    stdout.write(json.dumps({
        "file": str(ns.file), "lines": net.lines, "m": res.mistakes, "l": res.layers,
        "c": res.comparators, "valid": res.mistakes == 0,
    }) + "\n")
    return 0


def cmd_report(argv: list[str], stdout: TextIO) -> int:
    p = _Parser(prog="cnpulse report", description="Summarise a directory of run logs.")
    p.add_argument("dir", type=Path)
    p.add_argument("--csv", type=Path, default=None)
    ns = p.parse_args(argv)
    table = report(load_summaries(ns.dir.glob("*.jsonl")))
    stdout.write(format_report(table))
    if ns.csv is not None:
        ns.csv.write_text(report_csv(table))
    return 0


def cmd_run(argv: list[str], stdout: TextIO) -> int:
    spec = parse_args(argv)
    if spec.out is not None:
        spec.out.mkdir(parents=True, exist_ok=True)
    if spec.workers > 1 and len(spec.configs) > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            texts = list(pool.map(execute, spec.configs, [spec.out] * len(spec.configs)))
    else:
        texts = [execute(c, spec.out) for c in spec.configs]
    summaries = [json.loads(t.splitlines()[-1]) for t in texts]
    table = report(summaries)
    if spec.out is None:
        stdout.write("".join(texts))
        sys.stderr.write(format_report(table))
    else:
        (spec.out / "report.txt").write_text(format_report(table))
        (spec.out / "report.csv").write_text(report_csv(table))
        stdout.write(format_report(table))
    return 0


def main(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    commands = {"verify": cmd_verify, "report": cmd_report}
    try:
        if argv and argv[0] in commands:
            return commands[argv[0]](argv[1:], stdout)
        return cmd_run(argv, stdout)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except RuntimeError as exc:
        sys.stderr.write(f"cnpulse: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
