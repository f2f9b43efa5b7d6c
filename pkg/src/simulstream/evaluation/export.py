"""Export resegmented hypothesis/reference pairs for external scorers.

Neural quality metrics run out of process; this writes the aligned segment
pairs as parallel UTF-8 text files (one segment per line) plus a manifest
mapping each line back to its audio id and segment index.
"""

from pathlib import Path

from simulstream.evaluation.report import AlignedAudio

HYPOTHESIS_FILE = "hypothesis.txt"
REFERENCE_FILE = "reference.txt"
MANIFEST_FILE = "manifest.tsv"


def export_for_external_scorer(aligned: list[AlignedAudio], out_dir: str | Path) -> dict[str, Path]:
    """Write hypothesis.txt, reference.txt, and manifest.tsv into out_dir.

    Line i of the two text files is the i-th segment pair; empty segments
    stay as empty lines so line counts never drift.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    hyp_lines = []
    ref_lines = []
    manifest_lines = ["line\taudio_id\tsegment_index"]
    line_no = 1
    for audio in aligned:
        for segment_index, (hyp, ref) in enumerate(zip(audio.hyp_segments, audio.ref_segments)):
            hyp_lines.append(" ".join(hyp))
            ref_lines.append(" ".join(ref))
            manifest_lines.append(f"{line_no}\t{audio.audio_id}\t{segment_index}")
            line_no += 1
    paths = {
        "hypothesis": out / HYPOTHESIS_FILE,
        "reference": out / REFERENCE_FILE,
        "manifest": out / MANIFEST_FILE,
    }
    paths["hypothesis"].write_text("\n".join(hyp_lines) + "\n" if hyp_lines else "",
                                   encoding="utf-8")
    paths["reference"].write_text("\n".join(ref_lines) + "\n" if ref_lines else "",
                                  encoding="utf-8")
    paths["manifest"].write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    return paths


def read_exported_segments(out_dir: str | Path) -> list[tuple[str, int, str, str]]:
    """Reload an export: (audio_id, segment_index, hyp_line, ref_line) rows."""
    out = Path(out_dir)
    hyp_lines = (out / HYPOTHESIS_FILE).read_text(encoding="utf-8").split("\n")
    ref_lines = (out / REFERENCE_FILE).read_text(encoding="utf-8").split("\n")
    rows = []
    manifest = (out / MANIFEST_FILE).read_text(encoding="utf-8").splitlines()
    for line in manifest[1:]:
        if not line.strip():
            continue
        line_no, audio_id, segment_index = line.split("\t")
        idx = int(line_no) - 1
        rows.append((audio_id, int(segment_index), hyp_lines[idx], ref_lines[idx]))
    return rows
