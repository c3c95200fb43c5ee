"""Mud (massive, unordered, distributed) algorithms and streaming simulation."""

from .encoding import Codec, Field, Message
from .errors import MudError
from .model import (
    ExecMetrics,
    MudSpec,
    StreamSpec,
    adapter_stream_of_mud,
    check_invariance,
    eval_mud,
    eval_stream,
)
from .simulator import TableDFA, combine, mud_from_stream, pair_reach, reach_set, scm_protocol
from .trees import ComputationTree, balanced, eval_parallel, left_deep, random_tree

__all__ = [
    "Codec",
    "ComputationTree",
    "ExecMetrics",
    "Field",
    "Message",
    "MudError",
    "MudSpec",
    "StreamSpec",
    "TableDFA",
    "adapter_stream_of_mud",
    "balanced",
    "check_invariance",
    "combine",
    "eval_mud",
    "eval_parallel",
    "eval_stream",
    "left_deep",
    "mud_from_stream",
    "pair_reach",
    "random_tree",
    "reach_set",
    "scm_protocol",
]
