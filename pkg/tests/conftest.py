from __future__ import annotations

import pytest

from logical_noise.channels import NoiseKind, effective_channel_1q, effective_channel_2q
from logical_noise.codes import get_code
from logical_noise.decoder import Strategy, build_table

_TABLES: dict = {}
_CHANNELS_1Q: dict = {}
_CHANNELS_2Q: dict = {}


def table_for(code_name: str, strategy: Strategy):
    key = (code_name, strategy)
    if key not in _TABLES:
        _TABLES[key] = build_table(get_code(code_name), strategy)
    return _TABLES[key]


def channel_1q(code_name: str, strategy: Strategy, kind: NoiseKind):
    key = (code_name, strategy, kind)
    if key not in _CHANNELS_1Q:
        _CHANNELS_1Q[key] = effective_channel_1q(
            get_code(code_name), table_for(code_name, strategy), kind
        )
    return _CHANNELS_1Q[key]


def channel_2q(code_name: str, strategy: Strategy = Strategy.MIN_WEIGHT_PAULI):
    key = (code_name, strategy)
    if key not in _CHANNELS_2Q:
        _CHANNELS_2Q[key] = effective_channel_2q(
            get_code(code_name), table_for(code_name, strategy)
        )
    return _CHANNELS_2Q[key]


@pytest.fixture(scope="session")
def channels():
    """Accessors for memoized tables and channels shared across test modules."""
    return table_for, channel_1q, channel_2q
