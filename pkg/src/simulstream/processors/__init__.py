from simulstream.processors.base import ProcessorError, SpeechProcessor
from simulstream.processors.bridge import BridgeConfig, BridgeGenerator, BridgeProcessor
from simulstream.processors.factory import (
    ConfigError,
    build_processor,
    build_processor_from_file,
    load_processor_config,
)
from simulstream.processors.generators import (
    Generator,
    GeneratorOutput,
    ScriptedGenerator,
    ScriptEntry,
)
from simulstream.processors.scripted import ScriptedProcessor, ScriptedStep
from simulstream.processors.sliding_window import (
    SlidingWindowConfig,
    SlidingWindowProcessor,
    lcs_align,
)
from simulstream.processors.streamatt import StreamAttConfig, StreamAttProcessor
from simulstream.processors.vad import VadConfig, VadProcessor, speech_score

__all__ = [
    "BridgeConfig",
    "BridgeGenerator",
    "BridgeProcessor",
    "ConfigError",
    "Generator",
    "GeneratorOutput",
    "ProcessorError",
    "ScriptEntry",
    "ScriptedGenerator",
    "ScriptedProcessor",
    "ScriptedStep",
    "SlidingWindowConfig",
    "SlidingWindowProcessor",
    "SpeechProcessor",
    "StreamAttConfig",
    "StreamAttProcessor",
    "VadConfig",
    "VadProcessor",
    "build_processor",
    "build_processor_from_file",
    "lcs_align",
    "load_processor_config",
    "speech_score",
]
