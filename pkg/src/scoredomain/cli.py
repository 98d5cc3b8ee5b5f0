"""Command-line entry point: ``scoredomain <subcommand> ...``.

Exit status is 0 on success, 1 for data errors and 2 for usage errors.
Failures print one JSON line on stderr naming the file and line.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from textwrap import dedent

from . import __version__
from .centers import CenterMethod
from .geometry import compare_domains, summarize_domain
from .model import (
    ClassScores,
    DataError,
    LabelMap,
    LabeledDataset,
    Polarity,
    Side,
    class_name,
    guess_format,
    partition,
    read_records,
    sort_scores,
)
from .report import (
    FORMATS,
    TOOL,
    analyze_report,
    compare_report,
    format_report,
    header_lines,
    roc_report,
    thresholds_report,
)
from .svg import PanelDomain, RenderSpec, default_styles, render, render_comparison, threshold_lines
from .synth import SynthSpec, generate
from .thresholds import STRATEGY_GROUPS, TieRule, all_candidates, roc_sweep, threshold_report

CENTER_CHOICES = [m.value for m in CenterMethod]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Reports bad arguments as the same one-line JSON as every other failure."""

    def error(self, message):
        _fail("usage", f"{self.prog}: {message}")
        sys.exit(2)


@dataclass(frozen=True)
class RunConfig:
    """Resolved options of one invocation; echoed into every artifact."""

    subcommand: str
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
        return cls(args.command, opts)

    def as_dict(self) -> dict:
        return {"subcommand": self.subcommand, **self.options}

    def echo(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


# --- input helpers --------------------------------------------------------------


def _labels(args) -> LabelMap:
    try:
        return LabelMap(args.live_label, args.fake_label, Polarity(args.polarity))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_records(path: str, args):
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read file ({exc.strerror})", path) from None
    fmt = args.input_format or guess_format(path)
    return read_records(raw, fmt, _labels(args), source=path)


def _load_dataset(path: str, args) -> LabeledDataset:
    return partition(_load_records(path, args), Polarity(args.polarity), path)


def _load_classes(path: str, args) -> dict[Side, ClassScores]:
    """Whatever classes are present in ``path`` (at least one)."""
    records = _load_records(path, args)
    if not records:
        raise DataError("no score records", path)
    out = {}
    for side in (Side.LOWER, Side.UPPER):
        values = [r.score for r in records if r.side is side]
        if values:
            out[side] = sort_scores(values)
    return out


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like lo,hi (got {text!r})") from None
    return lo, hi


def _parse_rings(text: str) -> tuple[float, ...]:
    try:
        rings = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"--rings must be comma-separated fractions (got {text!r})") from None
    if any(not 0 < q <= 1 for q in rings):
        raise UsageError("--rings fractions must lie in (0, 1]")
    return rings


def _emit(args, text: str | bytes) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


# --- subcommands ----------------------------------------------------------------


def cmd_analyze(args, config: RunConfig) -> None:
    classes = _load_classes(args.input, args)
    variant = args.variant or Path(args.input).stem
    rows = [
        (class_name(side, Polarity(args.polarity)), variant, summarize_domain(scores, args.center))
        for side, scores in classes.items()
    ]
    _emit(args, format_report(analyze_report(config.as_dict(), rows), args.format))


def cmd_compare(args, config: RunConfig) -> None:
    before = _load_classes(args.before, args)
    after = _load_classes(args.after, args)
    shared = [side for side in (Side.LOWER, Side.UPPER) if side in before and side in after]
    if not shared:
        raise DataError("no class present in both files", args.after)
    rows = [
        compare_domains(
            summarize_domain(before[side], args.center),
            summarize_domain(after[side], args.center),
            class_name(side, Polarity(args.polarity)),
        )
        for side in shared
    ]
    _emit(args, format_report(compare_report(config.as_dict(), rows), args.format))


def cmd_thresholds(args, config: RunConfig) -> None:
    train = _load_dataset(args.input, args)
    dev = _load_dataset(args.dev, args) if args.dev else None
    rows = threshold_report(train, dev, args.strategy, args.center, args.tie_rule)
    _emit(args, format_report(thresholds_report(config.as_dict(), rows), args.format))


def cmd_roc(args, config: RunConfig) -> None:
    data = _load_dataset(args.input, args)
    _emit(args, format_report(roc_report(config.as_dict(), roc_sweep(data, args.tie_rule)), args.format))


def _panel_spec(path: str, args, thresholds, title: str) -> RenderSpec:
    classes = _load_classes(path, args)
    names = [class_name(side, Polarity(args.polarity)) for side in classes]
    domains = tuple(
        PanelDomain(summarize_domain(scores, args.center), style, scores)
        for scores, style in zip(classes.values(), default_styles(names))
    )
    viewport = _parse_pair(args.viewport, "--viewport")
    try:
        return RenderSpec(
            width=args.width,
            height=args.height,
            viewport=viewport,
            domains=domains,
            thresholds=thresholds,
            rug=not args.no_rug,
            rings=_parse_rings(args.rings),
            legend=not args.no_legend,
            title=title,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_viz(args, config: RunConfig) -> None:
    lines = ()
    if args.thresholds != "none":
        classes = _load_classes(args.input, args)
        if len(classes) == 2:
            found = all_candidates(LabeledDataset(classes[Side.LOWER], classes[Side.UPPER], Polarity(args.polarity)), args.center)
            lines = threshold_lines(found[s] for s in STRATEGY_GROUPS[args.thresholds])
    title = args.title if args.title is not None else Path(args.input).name
    before = _panel_spec(args.input, args, lines, title)
    if args.after:
        after = _panel_spec(args.after, args, lines, Path(args.after).name)
        svg = render_comparison(before, after, metadata=config.echo())
    else:
        svg = render(before, metadata=config.echo())
    _emit(args, svg)


def cmd_synth(args, config: RunConfig) -> None:
    clamp = _parse_pair(args.clamp, "--clamp") if args.clamp else None
    try:
        spec = SynthSpec(n=args.n, mean=args.mean, std_dev=args.std, seed=args.seed, clamp=clamp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    scores = generate(spec)
    width = len(str(spec.n - 1))
    lines = header_lines("synth", config.as_dict()) + ["id,score,label"]
    lines += [f"s{i:0{width}d},{v!r},{args.label}" for i, v in enumerate(scores.scores.tolist())]
    _emit(args, "\n".join(lines) + "\n")


# --- parser -----------------------------------------------------------------------

EXAMPLES = {
    "analyze": "scoredomain analyze --in train.csv --center balance --format text",
    "thresholds": "scoredomain thresholds --in train.csv --dev dev.csv --strategy all --format text",
    "roc": "scoredomain roc --in dev.csv --format csv --out roc.csv",
    "viz": "scoredomain viz --in scores.csv --center balance --thresholds all --out figure.svg --width 800 --rings 0.25,0.5,0.75,1.0",
    "synth": "scoredomain synth --n 500 --mean 0.5 --std 0.1 --seed 2024 --clamp 0,1 --label live --out synth.csv",
    "compare": "scoredomain compare --before orig.csv --after extended.csv --format text",
}


def _add_labels(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("labels")
    g.add_argument("--live-label", default="live", help="token marking genuine samples (default: live)")
    g.add_argument("--fake-label", default="fake", help="token marking attack samples (default: fake)")
    g.add_argument(
        "--polarity",
        choices=[p.value for p in Polarity],
        default=Polarity.GENUINE_LOW.value,
        help="which class sits low on the score axis (default: genuine-low)",
    )
    g.add_argument("--input-format", choices=["csv", "json"], default=None, help="override format detection by extension")


def _add_center(p: argparse.ArgumentParser) -> None:
    p.add_argument("--center", choices=CENTER_CHOICES, default=CenterMethod.BALANCE.value, help="center estimator (default: balance)")


def _add_output(p: argparse.ArgumentParser, formats: bool = True) -> None:
    if formats:
        p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def _sub(subs, name: str, help_text: str, func) -> argparse.ArgumentParser:
    p = subs.add_parser(
        name,
        help=help_text,
        description=help_text,
        epilog=dedent(f"example:\n  {EXAMPLES[name]}"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.set_defaults(func=func)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Prediction-score domain analysis and threshold selection.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = _sub(subs, "analyze", "Radius/Normalize/Density per class", cmd_analyze)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--variant", default=None, help="variant column value (default: input file stem)")
    _add_center(p)
    _add_labels(p)
    _add_output(p)

    p = _sub(subs, "thresholds", "threshold strategies evaluated on train (and dev)", cmd_thresholds)
    p.add_argument("--in", dest="input", required=True, help="train scores")
    p.add_argument("--dev", default=None, help="dev scores")
    p.add_argument("--strategy", choices=list(STRATEGY_GROUPS), default="all")
    p.add_argument("--tie-rule", choices=[t.value for t in TieRule], default=TieRule.EQUAL_IS_GENUINE.value)
    _add_center(p)
    _add_labels(p)
    _add_output(p)

    p = _sub(subs, "roc", "ROC points and AUC", cmd_roc)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tie-rule", choices=[t.value for t in TieRule], default=TieRule.EQUAL_IS_GENUINE.value)
    _add_labels(p)
    _add_output(p)

    p = _sub(subs, "viz", "SVG diagram of the class domains", cmd_viz)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--after", default=None, help="second score file drawn as a right-hand panel")
    p.add_argument("--thresholds", choices=["none", *STRATEGY_GROUPS], default="all")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=300)
    p.add_argument("--viewport", default="0,1", help="score interval shown, lo,hi (default: 0,1)")
    p.add_argument("--rings", default="0.25,0.5,0.75,1.0", help="sample fractions for quantile rings")
    p.add_argument("--no-rug", action="store_true")
    p.add_argument("--no-legend", action="store_true")
    p.add_argument("--title", default=None, help="panel title (default: input file name)")
    _add_center(p)
    _add_labels(p)
    _add_output(p, formats=False)

    p = _sub(subs, "synth", "seeded Gaussian score sample as CSV", cmd_synth)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--mean", type=float, default=0.5)
    p.add_argument("--std", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--clamp", default=None, help="saturate samples into lo,hi")
    p.add_argument("--label", default="live")
    _add_output(p, formats=False)

    p = _sub(subs, "compare", "before/after Radius/Normalize/Density deltas", cmd_compare)
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    _add_center(p)
    _add_labels(p)
    _add_output(p)
    return parser


def _fail(kind: str, message: str, source: str | None = None, line: int | None = None) -> None:
    payload = {"error": kind, "file": source, "line": line, "message": message}
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig.from_args(args)
    try:
        args.func(args, config)
    except DataError as exc:
        _fail("data", exc.message, exc.source, exc.line)
        return 1
    except UsageError as exc:
        _fail("usage", str(exc))
        return 2
    except ValueError as exc:
        _fail("data", str(exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
