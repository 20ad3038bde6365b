"""Line-oriented ``key = value`` session config files.

Grammar: one assignment per line, ``#`` starts a comment, blank lines are
skipped.  Keys are flat and snake_case; unknown or duplicate keys are
rejected with the offending line number.  Values are parsed per key (int,
float, bool, enum name, or string) and then assembled into a validated
:class:`~qsdc.protocol.SessionConfig`.

Exactly one of ``message`` (a literal bit string) or ``message_random_bits``
(a length; bits derived deterministically from the seed) must be present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigParseError, ValidationError
from .measurement import BsmMode
from .noise import ChannelSpec, MemorySpec, NoiseKind
from .protocol import BasisPolicy, EveKind, EveStrategy, SessionConfig
from .rng import random_bits


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float(text: str) -> float:
    value = float(text)
    if math.isnan(value):
        raise ValueError("NaN is not a valid config value")
    return value


def _parse_bits(text: str) -> str:
    cleaned = "".join(text.split())
    if not cleaned or set(cleaned) - {"0", "1"}:
        raise ValueError(f"not a bit string: {text!r}")
    return cleaned


def _enum_parser(enum_cls):
    def parse(text: str):
        try:
            return enum_cls(text.lower())
        except ValueError:
            options = ", ".join(member.value for member in enum_cls)
            raise ValueError(f"expected one of ({options}), got {text!r}") from None

    return parse


#: key -> value parser.  This table is the authority on which keys exist.
KEY_PARSERS = {
    "n_pairs": int,
    "check_fraction": _parse_float,
    "qber_threshold": _parse_float,
    "distance_m": _parse_float,
    "op_time_ns": _parse_float,
    "light_speed_m_per_ns": _parse_float,
    "source_noise_kind": _enum_parser(NoiseKind),
    "source_noise_p": _parse_float,
    "hop_noise_kind": _enum_parser(NoiseKind),
    "hop_noise_p": _parse_float,
    "transmittance": _parse_float,
    "memory_a_eta0": _parse_float,
    "memory_a_tau_ns": _parse_float,
    "memory_a_dephase_p": _parse_float,
    "memory_b_eta0": _parse_float,
    "memory_b_tau_ns": _parse_float,
    "memory_b_dephase_p": _parse_float,
    "storage_a_ns": _parse_float,
    "storage_b_ns": _parse_float,
    "bsm_mode": _enum_parser(BsmMode),
    "eve_kind": _enum_parser(EveKind),
    "eve_basis_policy": _enum_parser(BasisPolicy),
    "eve_on_encoded_hop": _parse_bool,
    "gen_prob_per_cycle": _parse_float,
    "cycle_time_ns": _parse_float,
    "duty_cycles_per_period": int,
    "period_ms": _parse_float,
    "seed": int,
    "message": _parse_bits,
    "message_random_bits": int,
}

#: Keys that a parameter sweep may vary, with the caster applied to grid values.
SWEEP_KEYS = {
    key: parser
    for key, parser in KEY_PARSERS.items()
    if parser in (int, _parse_float) and key not in ("seed", "message_random_bits")
}


def parse_config_text(text: str) -> dict[str, object]:
    """Parse config text into a typed key -> value mapping.

    Raises:
        ConfigParseError: On malformed lines, unknown keys, duplicate keys,
            or unparsable values — always naming the line number.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value_text = line.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if not key or not value_text:
            raise ConfigParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in KEY_PARSERS:
            raise ConfigParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigParseError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = KEY_PARSERS[key](value_text)
        except ValueError as exc:
            raise ConfigParseError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    return values


@dataclass(frozen=True)
class RunSettings:
    """A fully resolved run: validated config, seed, and message bits."""

    config: SessionConfig
    seed: int
    message: str


def build_settings(values: dict[str, object], seed_override: int | None = None) -> RunSettings:
    """Assemble parsed key/values into a validated, runnable setting.

    Args:
        values: Output of :func:`parse_config_text`.
        seed_override: Replaces the config seed when given (used for the
            environment override); the replacement also drives random
            message generation.

    Raises:
        ValidationError: On out-of-range values, or when the message is
            given neither or both ways.
    """
    def take(key: str, default):
        return values.get(key, default)

    seed = int(take("seed", 0))
    if seed_override is not None:
        seed = seed_override
    if seed < 0:
        raise ValidationError(f"seed must be non-negative, got {seed}")

    config = SessionConfig(
        n_pairs=take("n_pairs", 1000),
        check_fraction=take("check_fraction", 0.2),
        qber_threshold=take("qber_threshold", 0.12),
        distance_m=take("distance_m", 3.0),
        op_time_ns=take("op_time_ns", 40.0),
        light_speed_m_per_ns=take("light_speed_m_per_ns", 0.3),
        source_noise=ChannelSpec(take("source_noise_kind", NoiseKind.NONE), take("source_noise_p", 0.0)),
        hop_noise=ChannelSpec(take("hop_noise_kind", NoiseKind.NONE), take("hop_noise_p", 0.0)),
        transmittance=take("transmittance", 1.0),
        memory_a=MemorySpec(
            take("memory_a_eta0", 1.0),
            take("memory_a_tau_ns", math.inf),
            take("memory_a_dephase_p", 0.0),
        ),
        memory_b=MemorySpec(
            take("memory_b_eta0", 1.0),
            take("memory_b_tau_ns", math.inf),
            take("memory_b_dephase_p", 0.0),
        ),
        storage_a_ns=take("storage_a_ns", 50.0),
        storage_b_ns=take("storage_b_ns", 120.0),
        bsm_mode=take("bsm_mode", BsmMode.IDEAL),
        eve=EveStrategy(
            take("eve_kind", EveKind.NONE),
            take("eve_basis_policy", BasisPolicy.RANDOM_ZX),
        ),
        eve_on_encoded_hop=take("eve_on_encoded_hop", False),
        gen_prob_per_cycle=take("gen_prob_per_cycle", 1.0),
        cycle_time_ns=take("cycle_time_ns", 500.0),
        duty_cycles_per_period=take("duty_cycles_per_period", 2600),
        period_ms=take("period_ms", 10.0),
    )

    has_literal = "message" in values
    has_random = "message_random_bits" in values
    if has_literal == has_random:
        raise ValidationError(
            "config must set exactly one of 'message' or 'message_random_bits'"
        )
    if has_literal:
        message = str(values["message"])
    else:
        n_bits = int(values["message_random_bits"])
        if n_bits < 1:
            raise ValidationError(f"message_random_bits must be positive, got {n_bits}")
        message = random_bits(seed, n_bits)
    return RunSettings(config=config, seed=seed, message=message)


def load_config(text: str, seed_override: int | None = None) -> RunSettings:
    """Parse and assemble in one step."""
    return build_settings(parse_config_text(text), seed_override=seed_override)


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional parameter sweep over repeated session runs.

    Attributes:
        param: Config key to vary (must be numeric).
        grid: Values the parameter takes, in emission order.
        trials: Independent seeded trials per grid point.
    """

    param: str
    grid: tuple[float, ...]
    trials: int

    def __post_init__(self) -> None:
        if self.param not in SWEEP_KEYS:
            valid = ", ".join(sorted(SWEEP_KEYS))
            raise ValidationError(f"cannot sweep {self.param!r}; numeric keys are: {valid}")
        if len(self.grid) < 1:
            raise ValidationError("sweep grid must contain at least one value")
        if self.trials < 1:
            raise ValidationError(f"trials must be positive, got {self.trials}")
