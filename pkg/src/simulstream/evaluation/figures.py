"""Render report figures to image files.

Two views of a report: per-audio quality and latency bars, and the
quality-latency operating point scatter (ideal vs computationally aware).
Rendering is file-only (Agg); nothing here opens a window.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from simulstream.evaluation.report import EvaluationReport  # noqa: E402


def render_report_figures(report: EvaluationReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [
        _per_audio_bars(report, out / "per_audio_metrics.png"),
        _latency_quality_scatter(report, out / "latency_quality.png"),
    ]
    return [p for p in written if p is not None]


def _per_audio_bars(report: EvaluationReport, path: Path) -> Path:
    audios = [r.audio_id for r in report.per_audio]
    x = range(len(audios))
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)

    axes[0, 0].bar(x, [r.bleu for r in report.per_audio], color="#4878cf")
    axes[0, 0].set_ylabel("BLEU")

    laal = [r.stream_laal_s or 0.0 for r in report.per_audio]
    laal_ca = [r.stream_laal_ca_s or 0.0 for r in report.per_audio]
    width = 0.4
    axes[0, 1].bar([i - width / 2 for i in x], laal, width, label="ideal", color="#4878cf")
    axes[0, 1].bar([i + width / 2 for i in x], laal_ca, width, label="comp. aware", color="#d65f5f")
    axes[0, 1].set_ylabel("StreamLAAL (s)")
    axes[0, 1].legend(fontsize=8)

    axes[1, 0].bar(x, [r.ne or 0.0 for r in report.per_audio], color="#6acc65")
    axes[1, 0].set_ylabel("NE")

    axes[1, 1].bar(x, [r.rtf for r in report.per_audio], color="#956cb4")
    axes[1, 1].axhline(1.0, color="red", linestyle="--", linewidth=1)
    axes[1, 1].set_ylabel("RTF")

    for ax in axes[1]:
        ax.set_xticks(list(x))
        ax.set_xticklabels(audios, rotation=45, ha="right", fontsize=8)
    fig.suptitle("Per-audio metrics")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _latency_quality_scatter(report: EvaluationReport, path: Path) -> Path | None:
    points = [(r.stream_laal_s, r.stream_laal_ca_s, r.bleu, r.audio_id)
              for r in report.per_audio if r.stream_laal_s is not None]
    if not points:
        return None
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.scatter([p[0] for p in points], [p[2] for p in points],
               label="ideal", color="#4878cf")
    if any(p[1] is not None for p in points):
        ax.scatter([p[1] for p in points if p[1] is not None],
                   [p[2] for p in points if p[1] is not None],
                   label="comp. aware", color="#d65f5f", marker="x")
    for laal, _, bleu, audio_id in points:
        ax.annotate(audio_id, (laal, bleu), fontsize=7,
                    textcoords="offset points", xytext=(4, 2))
    ax.set_xlabel("StreamLAAL (s)")
    ax.set_ylabel("BLEU")
    ax.legend(fontsize=8)
    ax.set_title("Latency / quality operating points")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
