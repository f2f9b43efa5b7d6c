"""Command-line entry point for the streaming server.

    simulstream_server --server-config server.yaml --processor-config proc.yaml
"""

import argparse
import asyncio
import functools
import logging
import sys
from pathlib import Path

from simulstream.processors import build_processor, load_processor_config
from simulstream.server.app import run_server
from simulstream.server.config import load_server_config


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        "simulstream_server",
        description="Serve speech processors over WebSocket.")
    parser.add_argument("--server-config", required=True,
                        help="YAML with host, port, pool_size, log_path.")
    parser.add_argument("--processor-config", required=True,
                        help="YAML describing the speech processor to pool.")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        level=logging.DEBUG if args.verbose else logging.INFO)

    try:
        server_config = load_server_config(args.server_config)
        processor_config = load_processor_config(args.processor_config)
        factory = functools.partial(build_processor, processor_config,
                                    base_dir=Path(args.processor_config).parent)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        asyncio.run(run_server(server_config, factory))
    except KeyboardInterrupt:
        pass
    except OSError as exc:
        print(f"error: cannot bind {server_config.host}:{server_config.port}: {exc}",
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
