"""Command-line interface: ``corelab <command> ...``.

Exit codes: 0 success, 1 data error, 2 configuration error, 64 usage error.
Data goes to files (or stdout); diagnostics go to stderr as one JSON object
per line.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import curation
from .corpus import atomic_write, attach_ratings, iter_jsonl, read_corpus, read_ratings, score_correctness
from .diagnostics import JsonLineFormatter, emit, logger
from .errors import ConfigurationError, CorelabError, InputError
from .lid import DEFAULT_MIN_TOKENS, LidConfig, detect_instance_languages, read_gold, tag_words, validate_lid
from .metrics import SCALAR_METRICS, MatrixClass, SwitchMetrics, compute_all, min_max_normalize
from .stats import encode, fit_logistic
from .tokenize import SegmenterRegistry, tokenize

EXIT_DATA, EXIT_CONFIG, EXIT_USAGE = 1, 2, 64
SUMMARY_METRICS = (*SCALAR_METRICS, "fluency", "accuracy")
MATRIX_SHARES = {
    MatrixClass.SAME_AS_PROMPT: "matrix_same_as_prompt",
    MatrixClass.ENGLISH: "matrix_english",
    MatrixClass.OTHER_LANGUAGE: "matrix_other",
}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    language_registry: Path | None = None
    wordlist_dir: Path | None = None
    segmenters: Path | None = None
    seed: int = 0
    budget: int = curation.DEFAULT_BUDGET
    percentile: float = curation.DEFAULT_PERCENTILE
    min_tokens: int = DEFAULT_MIN_TOKENS
    outputs: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        if path is None:
            return cls()
        p = Path(path)
        try:
            raw = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot load config {p}: {exc}") from None
        known = set(cls.__dataclass_fields__)
        if unknown := sorted(set(raw) - known):
            raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
        cfg = cls(**raw)
        for name in ("seed", "budget", "min_tokens"):
            value = getattr(cfg, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigurationError(f"config {name} must be a non-negative integer, got {value!r}")
        if not isinstance(cfg.percentile, (int, float)) or not 0 < cfg.percentile <= 1:
            raise ConfigurationError(f"config percentile must lie in (0, 1], got {cfg.percentile!r}")
        for name in ("language_registry", "wordlist_dir", "segmenters"):
            value = getattr(cfg, name)
            if value is not None:
                value = Path(value)
                if not value.is_absolute():
                    value = p.parent / value
                if not value.exists():
                    raise ConfigurationError(f"config {name} points to missing path {value}")
                setattr(cfg, name, value)
        return cfg

    def lid_config(self) -> LidConfig:
        if self.language_registry is None:
            if self.wordlist_dir is not None:
                with resources.as_file(resources.files("corelab") / "data" / "languages.json") as reg:
                    return LidConfig.from_registry(reg, self.wordlist_dir)
            return LidConfig.default()
        return LidConfig.from_registry(self.language_registry, self.wordlist_dir)

    def segmenter_registry(self) -> SegmenterRegistry:
        if self.segmenters is None:
            return SegmenterRegistry.default()
        return SegmenterRegistry.from_json(self.segmenters)


def fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return "NA" if x != x else format(x, ".6g")
    return str(x)


def render_tsv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _emit_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def _mean(xs):
    xs = [x for x in xs if x is not None]
    return sum(xs) / len(xs) if xs else None


def _group_value(key: str, trace, metrics: SwitchMetrics | None = None):
    if key == "language":
        return trace.prompt_language
    if metrics is not None and key in ("matrix_class", "matrix_language"):
        return fmt(getattr(metrics, key) and str(getattr(metrics, key)))
    if hasattr(trace, key) and key not in ("extras", "ratings"):
        return getattr(trace, key)
    if key in trace.extras:
        return trace.extras[key]
    raise InputError(f"unknown group-by key {key!r}")


def _group_keys(spec: str) -> list[str]:
    keys = [k.strip() for k in spec.split(",") if k.strip()]
    if not keys:
        raise UsageError("--group-by needs at least one key")
    return keys


# -- commands ---------------------------------------------------------------


def _texts_from_args(args) -> list[tuple[str, str, str | None]]:
    if args.text is not None:
        return [("text", args.text, args.language)]
    if args.input is None:
        raise UsageError("give --text or --input")
    return [(t.id, t.reasoning, t.prompt_language) for t in read_corpus(args.input)]


def cmd_tokenize(args, cfg: RunConfig) -> int:
    segs = cfg.segmenter_registry()
    lines = []
    for tid, text, lang in _texts_from_args(args):
        tt = tokenize(text, lang, segs)
        lines.append(dumps({"id": tid, "tokens": [
            {"text": t.text, "start": t.start, "end": t.end, "script": t.script.value} for t in tt.tokens]}))
    _emit_output(args.output, "".join(ln + "\n" for ln in lines))
    return 0


def cmd_lid(args, cfg: RunConfig) -> int:
    segs, config = cfg.segmenter_registry(), cfg.lid_config()
    min_tokens = args.min_tokens if args.min_tokens is not None else cfg.min_tokens
    lines = []
    for tid, text, lang in _texts_from_args(args):
        tt = tag_words(tokenize(text, lang, segs), config)
        langs = sorted(t.code for t in detect_instance_languages(tt, min_tokens))
        lines.append(dumps({
            "id": tid,
            "languages": langs,
            "code_switched": len(langs) >= 2,
            "tokens": [{"text": t.text, "start": t.start, "end": t.end, "script": t.script.value,
                        "lang": str(t.tag)} for t in tt.tokens],
        }))
    _emit_output(args.output, "".join(ln + "\n" for ln in lines))
    return 0


def _compute(traces, config, segs, workers: int) -> list[SwitchMetrics]:
    if workers > 1 and len(traces) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(traces) // (workers * 4))
            return list(pool.map(partial(compute_all, config=config, segmenters=segs), traces, chunksize=chunk))
    return [compute_all(t, config, segs) for t in traces]


def summary_rows(pairs, keys: list[str]):
    """Per-group metric means and matrix-class shares, min-max normalized across groups."""
    groups: dict[tuple, list[SwitchMetrics]] = defaultdict(list)
    for trace, m in pairs:
        groups[tuple(str(_group_value(k, trace, m)) for k in keys)].append(m)
    ordered = sorted(groups)
    table = {name: [_mean(getattr(m, name) for m in groups[g]) for g in ordered] for name in SUMMARY_METRICS}
    for cls, name in MATRIX_SHARES.items():
        table[name] = [sum(m.matrix_class == cls for m in groups[g]) / len(groups[g]) for g in ordered]
    norm = min_max_normalize(table)
    header = [*keys, "n", *norm]
    rows = [[*g, len(groups[g]), *(norm[c][i] for c in norm)] for i, g in enumerate(ordered)]
    return header, rows


def cmd_metrics(args, cfg: RunConfig) -> int:
    config, segs = cfg.lid_config(), cfg.segmenter_registry()
    keys = _group_keys(args.group_by)
    traces = read_corpus(args.corpus)
    if args.ratings:
        attach_ratings(traces, read_ratings(args.ratings))
    results = _compute(traces, config, segs, args.workers)
    metrics_text = "".join(dumps(m.to_dict()) + "\n" for m in results)
    summary = render_tsv(*summary_rows(list(zip(traces, results)), keys)) if args.summary else None
    _emit_output(args.output, metrics_text)
    if summary is not None:
        atomic_write(args.summary, summary)
    return 0


def read_metrics(path) -> dict[str, SwitchMetrics]:
    out = {}
    for lineno, rec in iter_jsonl(path):
        try:
            m = SwitchMetrics.from_dict(rec)
        except (TypeError, ValueError) as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        out[m.trace_id] = m
    return out


def _join(metrics_path, corpus_path):
    metrics = read_metrics(metrics_path)
    traces = read_corpus(corpus_path)
    joined = [(t, metrics[t.id]) for t in traces if t.id in metrics]
    trace_ids = {t.id for t in traces}
    unjoined = sorted((set(metrics) - trace_ids) | (trace_ids - set(metrics)))
    if unjoined:
        emit("unjoined-ids", ids=unjoined)
    if not joined:
        raise InputError("no joined rows")
    return joined


def _outcome(trace) -> bool | None:
    if trace.correct is not None:
        return trace.correct
    if trace.gold is not None:
        return score_correctness(trace)
    return None


def cmd_report(args, cfg: RunConfig) -> int:
    joined = _join(args.metrics, args.corpus)
    keys = _group_keys(args.group_by)
    norm = min_max_normalize({c: [getattr(m, c) for _, m in joined] for c in SUMMARY_METRICS})
    groups: dict[tuple, list[int]] = defaultdict(list)
    for i, (t, m) in enumerate(joined):
        groups[tuple(str(_group_value(k, t, m)) for k in keys)].append(i)
    header = [*keys, "n", "n_scored", "correct_rate", *SUMMARY_METRICS]
    rows = []
    for g in sorted(groups):
        idx = groups[g]
        outcomes = [o for o in (_outcome(joined[i][0]) for i in idx) if o is not None]
        rate = sum(outcomes) / len(outcomes) if outcomes else None
        rows.append([*g, len(idx), len(outcomes), rate, *(_mean(norm[c][i] for i in idx) for c in SUMMARY_METRICS)])
    _emit_output(args.output, render_tsv(header, rows))
    return 0


def fit_observations(joined, continuous, factors):
    rows = []
    for t, m in joined:
        y = _outcome(t)
        rec = {"correct": y, "language": t.prompt_language, "model": t.model,
               "matrix_class": None if m.matrix_class is None else m.matrix_class.value}
        for k in factors:
            if k not in rec:
                rec[k] = _group_value(k, t, m)
        for c in continuous:
            rec[c] = getattr(m, c) if hasattr(m, c) else t.extras.get(c)
        missing = [k for k in ("correct", *continuous, *factors) if rec.get(k) is None]
        if missing:
            emit("row-dropped", trace_id=t.id, missing=missing)
            continue
        rows.append(rec)
    return rows


def cmd_fit(args, cfg: RunConfig) -> int:
    joined = _join(args.metrics, args.corpus)
    continuous = [c for c in args.continuous.split(",") if c]
    factors = [f for f in args.factors.split(",") if f]
    rows = fit_observations(joined, continuous, factors)
    design = encode(rows, factors=factors, continuous=continuous,
                    references={"matrix_class": MatrixClass.SAME_AS_PROMPT.value})
    result = fit_logistic(design, ridge=args.ridge)
    payload = json.dumps(result.to_dict(), ensure_ascii=False, indent=2, sort_keys=False) + "\n"
    z = result.z_values
    table = render_tsv(
        ["term", "estimate", "std_error", "z_value"],
        [[c, result.coefficients[c], result.standard_errors[c], z[c]] for c in design.columns],
    )
    if args.table:
        atomic_write(args.table, table)
    _emit_output(args.output, payload)
    return 0


def _read_records(path) -> list[dict]:
    return [rec for _, rec in iter_jsonl(path)]


def cmd_curate(args, cfg: RunConfig) -> int:
    task = curation.Task(args.task)
    seed = args.seed if args.seed is not None else cfg.seed
    budget = args.budget if args.budget is not None else cfg.budget
    percentile = args.percentile if args.percentile is not None else cfg.percentile
    min_tokens = args.min_tokens if args.min_tokens is not None else cfg.min_tokens
    template = None
    if task in (curation.Task.MT_EN, curation.Task.PROMPT_MT_EN):
        if not args.template:
            raise ConfigurationError(f"task {task} needs --template")
        try:
            template = Path(args.template).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read template: {exc}") from None
        if curation.PLACEHOLDER not in template:
            raise ConfigurationError(f"template {args.template} has no {curation.PLACEHOLDER} placeholder")
    meta = {"task": task.value, "language": args.language or "", "seed": seed,
            "prng": curation.PRNG_ALGORITHM, "percentile": percentile}
    if task is curation.Task.NATIVE:
        instances, cutoff = curation.build_native(read_corpus(args.input), args.language or "", percentile,
                                                  args.cutoff)
        meta["cutoff"] = cutoff
    elif task is curation.Task.STRATEGIC_CSW:
        instances = curation.build_strategic(read_corpus(args.input), cfg.lid_config(), args.language or "",
                                             min_tokens, cfg.segmenter_registry())
        meta["min_tokens"] = min_tokens
    elif task in (curation.Task.MT_EN, curation.Task.PROMPT_MT_EN):
        recs = _read_records(args.input)
        try:
            pairs = [(r["source"], r["target"]) for r in recs]
        except KeyError as exc:
            raise InputError(f"translation pairs need source/target fields (missing {exc})") from None
        ids = [str(r.get("id", f"{task.value}-{i:06d}")) for i, r in enumerate(recs)]
        instances = curation.make_translation_instances(pairs, template, task, args.language or "", ids=ids)
    elif task is curation.Task.ENGLISH_REASONING:
        instances = curation.make_english_reasoning_instances(_read_records(args.input), args.language or "")
    else:
        instances = curation.build_synthetic(_read_records(args.input), seed, args.language or "")
    if args.quality_filter:
        kept = []
        for inst in instances:
            verdict = curation.repetition_filter(inst.reasoning + "\n" + inst.answer)
            if verdict.passed:
                kept.append(inst)
            else:
                emit("quality-filtered", id=inst.id, reason=verdict.reason)
        instances = kept
    plan = curation.apply_token_budget(instances, budget)
    chosen = set(plan.selected)
    data = "".join(dumps(i.to_dict()) + "\n" for i in instances if i.id in chosen)
    plan_doc = {**meta, **plan.to_dict(), "n_candidates": len(instances)}
    _emit_output(args.output, data)
    if args.plan:
        atomic_write(args.plan, json.dumps(plan_doc, ensure_ascii=False, indent=2) + "\n")
    return 0


def cmd_validate_lid(args, cfg: RunConfig) -> int:
    config = cfg.lid_config()
    if args.languages:
        config = config.restrict(args.languages.split(","))
    report = validate_lid(read_gold(args.gold), config, cfg.segmenter_registry())
    doc = report.to_dict()
    if not args.per_token:
        doc.pop("tokens")
    _emit_output(args.output, json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    return 0


# -- wiring -----------------------------------------------------------------


def build_parser() -> Parser:
    p = Parser(prog="corelab", description="Code-switching analysis and SFT data curation for reasoning traces.")
    p.add_argument("--config", help="RunConfig JSON (registry, dictionaries, seed, budget, ...)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true", help="also report informational diagnostics")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    for name, fn, help_ in (("tokenize", cmd_tokenize, "word tokens with byte offsets and scripts"),
                            ("lid", cmd_lid, "word-level language tags and instance languages")):
        s = sub.add_parser(name, help=help_)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--text")
        src.add_argument("--input", help="corpus JSONL; the reasoning field is processed")
        s.add_argument("--language", help="language hint for --text")
        s.add_argument("--output")
        if name == "lid":
            s.add_argument("--min-tokens", type=int)
        s.set_defaults(func=fn)

    s = sub.add_parser("metrics", help="per-trace code-switching metrics")
    s.add_argument("corpus")
    s.add_argument("--output", required=True)
    s.add_argument("--summary", help="grouped, min-max normalized TSV")
    s.add_argument("--group-by", default="language,model")
    s.add_argument("--ratings", help="ratings JSONL to attach before computing")
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("report", help="correctness by code-switching behaviour")
    s.add_argument("--metrics", required=True)
    s.add_argument("--corpus", required=True)
    s.add_argument("--output")
    s.add_argument("--group-by", default="matrix_class")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("fit", help="logistic regression of correctness on metrics")
    s.add_argument("--metrics", required=True)
    s.add_argument("--corpus", required=True)
    s.add_argument("--output")
    s.add_argument("--table", help="coefficient TSV")
    s.add_argument("--continuous", default="cmi,m_index,i_index,burstiness")
    s.add_argument("--factors", default="matrix_class,language,model")
    s.add_argument("--ridge", type=float, default=1e-6)
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("curate", help="build one SFT dataset")
    s.add_argument("task", choices=[t.value for t in curation.Task])
    s.add_argument("--input", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--plan", help="budget plan JSON")
    s.add_argument("--language")
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s.add_argument("--budget", type=int)
    s.add_argument("--percentile", type=float)
    s.add_argument("--cutoff", type=int, help="fixed length cutoff instead of the percentile (native)")
    s.add_argument("--template", help="prompt template with a {source} placeholder")
    s.add_argument("--min-tokens", type=int)
    s.add_argument("--quality-filter", action="store_true", help="drop instances failing the repetition filter")
    s.set_defaults(func=cmd_curate)

    s = sub.add_parser("validate-lid", help="word-level LID accuracy on a gold set")
    s.add_argument("--gold", required=True)
    s.add_argument("--output")
    s.add_argument("--languages", help="restrict candidates to these codes")
    s.add_argument("--per-token", action="store_true")
    s.set_defaults(func=cmd_validate_lid)
    return p


def _install_logging(verbose: bool):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JsonLineFormatter())
    saved = (logger.level, logger.propagate)
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    logger.propagate = False

    def restore():
        logger.removeHandler(handler)
        logger.setLevel(saved[0])
        logger.propagate = saved[1]

    return restore


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"corelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    restore_logging = _install_logging(args.verbose)
    try:
        cfg = RunConfig.load(args.config)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"corelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorelabError as exc:
        emit("error", level=logging.ERROR, kind=type(exc).__name__, message=str(exc))
        return exc.exit_code
    finally:
        restore_logging()


if __name__ == "__main__":
    sys.exit(main())
