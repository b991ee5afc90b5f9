"""Frame replication and elimination for reliability."""

from ._frer import (
    CodecError,
    Decision,
    ParseError,
    ReplicationEntry,
    SequenceGenerator,
    SequenceRecovery,
    ValidationError,
    build_vlan_frame,
    eliminate,
    has_rtag,
    list_builtin,
    load_scenario,
    parse_frame,
    pop_rtag,
    push_rtag,
    replicate,
    run_scenario,
    validate_scenario,
)

__all__ = [
    "CodecError",
    "Decision",
    "ParseError",
    "ReplicationEntry",
    "SequenceGenerator",
    "SequenceRecovery",
    "ValidationError",
    "build_vlan_frame",
    "eliminate",
    "has_rtag",
    "list_builtin",
    "load_scenario",
    "parse_frame",
    "pop_rtag",
    "push_rtag",
    "replicate",
    "run_scenario",
    "validate_scenario",
]
