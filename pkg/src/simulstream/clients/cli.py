"""Command-line entry points for the WAV client and the direct runner.

    simulstream_client --list wavs.txt --url ws://host:port \
        --source-lang en --target-lang de [--pace realtime|max] \
        [--out-dir DIR] [--concurrency N]

    simulstream_direct --list wavs.txt --processor-config proc.yaml \
        --log run.jsonl --source-lang en --target-lang de
"""

import argparse
import logging
import sys

from simulstream.clients.direct import run_direct
from simulstream.clients.ws_client import stream_wav_files


def client_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        "simulstream_client", description="Stream WAV files to a running server.")
    parser.add_argument("--list", required=True, dest="list_path",
                        help="Text file with one WAV path per line.")
    parser.add_argument("--url", required=True, help="Server URL, e.g. ws://127.0.0.1:8765")
    parser.add_argument("--source-lang", required=True)
    parser.add_argument("--target-lang", required=True)
    parser.add_argument("--pace", choices=["realtime", "max"], default="max",
                        help="realtime: 100ms frames on the wall clock; max: as fast as possible.")
    parser.add_argument("--out-dir", default=None,
                        help="Directory for final per-file transcripts.")
    parser.add_argument("--concurrency", type=int, default=1,
                        help="Parallel sessions (keep within the server pool size).")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s")

    summary = stream_wav_files(
        args.list_path, args.url,
        source_lang=args.source_lang, target_lang=args.target_lang,
        pace=args.pace, out_dir=args.out_dir, concurrency=args.concurrency)
    for audio_id, reason in sorted(summary.failed.items()):
        print(f"failed: {audio_id}: {reason}", file=sys.stderr)
    for path, reason in sorted(summary.skipped.items()):
        print(f"skipped: {path}: {reason}", file=sys.stderr)
    print(f"{len(summary.transcripts)} session(s) completed")
    return 0 if summary.ok else 1


def direct_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        "simulstream_direct",
        description="Process WAV files without a server, writing metric logs.")
    parser.add_argument("--list", required=True, dest="list_path",
                        help="Text file with one WAV path per line.")
    parser.add_argument("--processor-config", required=True,
                        help="YAML describing the speech processor.")
    parser.add_argument("--log", required=True, help="Metric log output path (JSONL).")
    parser.add_argument("--source-lang", required=True)
    parser.add_argument("--target-lang", required=True)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO,
                        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s")

    try:
        result = run_direct(args.list_path, args.processor_config, args.log,
                            source_lang=args.source_lang, target_lang=args.target_lang)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path, reason in sorted(result.failures.items()):
        print(f"failed: {path}: {reason}", file=sys.stderr)
    print(f"{len(result.processed)} file(s) processed into {args.log}")
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(client_main())
