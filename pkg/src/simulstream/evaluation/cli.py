"""Command-line entry point for offline evaluation.

    simulstream_eval --log run.jsonl --refs refs.json [--mode ideal|ca|both]
                     [--report report.json] [--export-dir DIR] [--out-dir DIR]

Always prints the plain-text table. ``--report`` writes the JSON report,
``--export-dir`` the aligned segment pairs for external scorers, and
``--out-dir`` the full bundle: JSON + table + per-audio CSV + figures.
"""

import argparse
import sys
from pathlib import Path

from simulstream.evaluation.export import export_for_external_scorer
from simulstream.evaluation.report import (
    EvaluationError,
    evaluate,
    render_table,
    write_per_audio_csv,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        "simulstream_eval",
        description="Score a metric log against sentence-level references.")
    parser.add_argument("--log", required=True, help="JSONL metric log to evaluate.")
    parser.add_argument("--refs", required=True,
                        help="References (JSON mapping or TSV), see docs for layout.")
    parser.add_argument("--mode", choices=["ideal", "ca", "both"], default="both",
                        help="Which latency variant(s) to compute. Default: both.")
    parser.add_argument("--report", type=Path, default=None,
                        help="Write the JSON report to this path.")
    parser.add_argument("--export-dir", type=Path, default=None,
                        help="Write hypothesis/reference/manifest files for external scorers.")
    parser.add_argument("--out-dir", type=Path, default=None,
                        help="Write report.json, report.txt, per_audio.csv, and figures here.")
    args = parser.parse_args(argv)

    try:
        report, aligned = evaluate(args.log, args.refs, mode=args.mode)
    except (EvaluationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    table = render_table(report)
    print(table)
    if report.rtf_exceeds_realtime:
        print("warning: RTF > 1; the system cannot process the input in time",
              file=sys.stderr)

    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(report.to_json() + "\n", encoding="utf-8")
    if args.export_dir is not None:
        export_for_external_scorer(aligned, args.export_dir)
    if args.out_dir is not None:
        from simulstream.evaluation.figures import render_report_figures

        out = args.out_dir
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json() + "\n", encoding="utf-8")
        (out / "report.txt").write_text(table + "\n", encoding="utf-8")
        write_per_audio_csv(report, out / "per_audio.csv")
        render_report_figures(report, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
