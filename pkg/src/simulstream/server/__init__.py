from simulstream.server.app import StreamServer, run_server
from simulstream.server.config import ServerConfig, load_server_config
from simulstream.server.pool import ProcessorPool

__all__ = [
    "ProcessorPool",
    "ServerConfig",
    "StreamServer",
    "load_server_config",
    "run_server",
]
