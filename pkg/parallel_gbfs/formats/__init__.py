from .topology_file import (
    TopologyParseError,
    load_topology,
    dumps_topology,
    read_topology_file,
    write_topology_file,
)

__all__ = [
    "TopologyParseError",
    "load_topology",
    "dumps_topology",
    "read_topology_file",
    "write_topology_file",
]
