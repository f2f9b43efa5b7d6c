"""Build processors from YAML configuration.

Top-level key ``type`` selects the processor; the remaining keys are
type-specific. Windowed processors take a nested ``generator`` mapping
(``type: scripted`` with ``script_path``/``script``, or ``type: bridge``
with ``command``).
"""

from pathlib import Path

import yaml

from simulstream.processors.base import SpeechProcessor
from simulstream.processors.bridge import BridgeConfig, BridgeGenerator, BridgeProcessor
from simulstream.processors.generators import Generator, ScriptedGenerator
from simulstream.processors.scripted import ScriptedProcessor
from simulstream.processors.sliding_window import SlidingWindowConfig, SlidingWindowProcessor
from simulstream.processors.streamatt import StreamAttConfig, StreamAttProcessor
from simulstream.processors.vad import VadConfig, VadProcessor


class ConfigError(ValueError):
    """Invalid processor configuration."""


def load_processor_config(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ConfigError(f"processor config {path} must be a YAML mapping")
    return data


def build_processor(config: dict, base_dir: str | Path = ".") -> SpeechProcessor:
    """Construct the processor described by ``config``.

    Relative paths in the config resolve against ``base_dir`` (usually the
    directory containing the YAML file).
    """
    kind = config.get("type")
    if kind == "sliding_window":
        generator = _build_generator(_require(config, "generator"), base_dir)
        return SlidingWindowProcessor(generator, SlidingWindowConfig(
            window_s=float(_require(config, "window_s")),
            stride_s=float(_require(config, "stride_s")),
        ))
    if kind == "streamatt":
        generator = _build_generator(_require(config, "generator"), base_dir)
        return StreamAttProcessor(generator, StreamAttConfig(
            cutoff_frames=int(_require(config, "cutoff_frames")),
            chunk_s=float(config.get("chunk_s", 1.0)),
            max_history_words=int(config.get("max_history_words", 40)),
        ))
    if kind == "vad":
        inner = build_processor(_require(config, "inner"), base_dir)
        return VadProcessor(inner, VadConfig(
            threshold=float(_require(config, "threshold")),
            frame_ms=float(config.get("frame_ms", 30.0)),
            hangover_frames=int(config.get("hangover_frames", 0)),
        ))
    if kind == "scripted":
        pairs = config.get("supported_languages")
        supported = [tuple(p) for p in pairs] if pairs is not None else None
        kwargs = {
            "preferred_chunk_s": float(config.get("preferred_chunk_s", 1.0)),
            "supported_pairs": supported,
        }
        if "script" in config:
            return ScriptedProcessor.from_dict(config["script"], **kwargs)
        path = Path(base_dir) / _require(config, "script_path")
        return ScriptedProcessor.from_file(path, **kwargs)
    if kind == "bridge":
        generator = BridgeGenerator(BridgeConfig(
            command=str(_require(config, "command")),
            timeout_s=float(config.get("timeout_s", 30.0)),
            provides_attention=bool(config.get("provides_attention", False)),
        ))
        return BridgeProcessor(generator, chunk_s=float(config.get("chunk_s", 1.0)))
    raise ConfigError(f"unknown processor type {kind!r}")


def build_processor_from_file(path: str | Path) -> SpeechProcessor:
    path = Path(path)
    return build_processor(load_processor_config(path), base_dir=path.parent)


def _build_generator(config: dict, base_dir: str | Path) -> Generator:
    if not isinstance(config, dict):
        raise ConfigError("generator must be a mapping")
    kind = config.get("type")
    if kind == "scripted":
        if "script" in config:
            return ScriptedGenerator.from_dict(config["script"])
        path = Path(base_dir) / _require(config, "script_path")
        return ScriptedGenerator.from_file(path)
    if kind == "bridge":
        return BridgeGenerator(BridgeConfig(
            command=str(_require(config, "command")),
            timeout_s=float(config.get("timeout_s", 30.0)),
            provides_attention=bool(config.get("provides_attention", False)),
        ))
    raise ConfigError(f"unknown generator type {kind!r}")


def _require(config: dict, key: str):
    if key not in config:
        raise ConfigError(f"missing required key {key!r}")
    return config[key]
