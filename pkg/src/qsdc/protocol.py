"""Session engine for entanglement-based secure direct communication.

A session distributes ``n_pairs`` entangled pairs between a sender and a
receiver, spends a configurable fraction of them on two security checks,
and carries the message on the rest, two bits per pair, by applying one of
four local unitaries and reading it back with a Bell-state measurement.

The first check measures a random subset in a shared random local basis
(Z or X) before any encoding happens; its error rate exposes an
intercept-resend attack on the distribution hop.  The second check mixes
decoy pairs carrying known random bit groups in with the message pairs and
compares them after decoding.  Either check aborts the session when its
error rate exceeds the configured threshold, and an aborted session decodes
nothing.

Loss is heralded at every stage (memory retrievals, the transmission hop):
a lost check pair simply drops out of the statistics, a lost message pair
erases its bit group, and erased positions are reported so the sender can
retransmit.  All randomness is drawn from per-stage streams derived from
the session seed, so identical ``(config, message, seed)`` triples
reproduce results exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .core import (
    BELL_ORDER,
    BELL_TO_CODE,
    BellLabel,
    TwoBitCode,
    apply_local,
    bell_density,
    encode_unitary,
    lift_local,
)
from .errors import CapacityError, TimingError, ValidationError
from .measurement import (
    BsmMode,
    LocalBasis,
    basis_kets,
    bell_overlaps,
    outcome_probs,
)
from .noise import ChannelSpec, MemorySpec, NoiseKind, apply_channel
from .rng import stream_rng


class EveKind(enum.Enum):
    NONE = "none"
    INTERCEPT_RESEND = "intercept_resend"


class BasisPolicy(enum.Enum):
    """How an intercept-resend attacker picks a measurement basis per pair."""

    ALWAYS_Z = "always_z"
    ALWAYS_X = "always_x"
    RANDOM_ZX = "random_zx"


@dataclass(frozen=True)
class EveStrategy:
    kind: EveKind = EveKind.NONE
    basis_policy: BasisPolicy = BasisPolicy.RANDOM_ZX

    def __post_init__(self) -> None:
        if not isinstance(self.kind, EveKind):
            raise ValidationError(f"kind must be an EveKind, got {self.kind!r}")
        if not isinstance(self.basis_policy, BasisPolicy):
            raise ValidationError(f"basis_policy must be a BasisPolicy, got {self.basis_policy!r}")


def intercept_resend(
    state: NDArray[np.complex128], side: str, basis: LocalBasis
) -> NDArray[np.complex128]:
    """Exact state change from an intercept-resend attack on one qubit.

    The attacker measures the chosen side projectively in ``basis`` and
    resends the eigenstate found.  Averaged over the (unknown) outcomes the
    state becomes ``sum_k P_k rho P_k``, which is what every honest-party
    statistic sees; no sampling of the attacker's result is needed.
    """
    rho = np.asarray(state, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    out = np.zeros_like(rho)
    for ket in basis_kets(basis):
        proj = lift_local(np.outer(ket, ket.conj()), side)
        out += proj @ rho @ proj.conj().T
    return out


@dataclass(frozen=True)
class SessionConfig:
    """Full parameter set of one communication session.

    Attributes:
        n_pairs: Entangled pairs distributed in the session.
        check_fraction: Fraction of pairs spent on security checks, split
            evenly between the pre-encoding check and the decoy check.
        qber_threshold: Error rate above which either check aborts.
        distance_m: One-way transmission distance.
        op_time_ns: Local operation time budget per pair.
        light_speed_m_per_ns: Signal velocity on the link (0.3 in air).
        source_noise: Channel applied to the sender-side qubit at emission.
        hop_noise: Channel applied to the encoded photon in transit.
        transmittance: Heralded survival probability of the encoded hop.
        memory_a: Sender-side memory (holds during the timing window).
        memory_b: Receiver-side memory (holds until decoding).
        storage_a_ns: Hold duration in the sender-side memory.
        storage_b_ns: Hold duration in the receiver-side memory.
        bsm_mode: Bell-analyzer model used for decoding.
        eve: Attacker model on the distribution hop.
        eve_on_encoded_hop: Also attack the encoded photon in transit.
        gen_prob_per_cycle: Probability that one duty cycle yields a pair
            (folds source brightness and distribution losses into one
            heralded number).
        cycle_time_ns: Duration of one attempt cycle.
        duty_cycles_per_period: Attempt cycles available per duty period.
        period_ms: Length of one duty period (cycles run only in its active
            window, so throughput is paced by the period, not the cycle).
    """

    n_pairs: int = 1000
    check_fraction: float = 0.2
    qber_threshold: float = 0.12
    distance_m: float = 3.0
    op_time_ns: float = 40.0
    light_speed_m_per_ns: float = 0.3
    source_noise: ChannelSpec = ChannelSpec()
    hop_noise: ChannelSpec = ChannelSpec()
    transmittance: float = 1.0
    memory_a: MemorySpec = MemorySpec()
    memory_b: MemorySpec = MemorySpec()
    storage_a_ns: float = 50.0
    storage_b_ns: float = 120.0
    bsm_mode: BsmMode = BsmMode.IDEAL
    eve: EveStrategy = EveStrategy()
    eve_on_encoded_hop: bool = False
    gen_prob_per_cycle: float = 1.0
    cycle_time_ns: float = 500.0
    duty_cycles_per_period: int = 2600
    period_ms: float = 10.0

    def __post_init__(self) -> None:
        if not isinstance(self.n_pairs, int) or self.n_pairs < 1:
            raise ValidationError(f"n_pairs must be a positive integer, got {self.n_pairs!r}")
        if not (0.0 < self.check_fraction < 1.0):
            raise ValidationError(f"check_fraction must lie in (0, 1), got {self.check_fraction}")
        if self.check_fraction * self.n_pairs < 10.0:
            raise ValidationError(
                "check_fraction * n_pairs must be at least 10 for meaningful statistics, "
                f"got {self.check_fraction * self.n_pairs:.3g}"
            )
        if not (0.0 < self.qber_threshold < 1.0):
            raise ValidationError(f"qber_threshold must lie in (0, 1), got {self.qber_threshold}")
        if self.distance_m < 0.0:
            raise ValidationError(f"distance_m must be non-negative, got {self.distance_m}")
        if self.op_time_ns < 0.0:
            raise ValidationError(f"op_time_ns must be non-negative, got {self.op_time_ns}")
        if not (self.light_speed_m_per_ns > 0.0):
            raise ValidationError(
                f"light_speed_m_per_ns must be positive, got {self.light_speed_m_per_ns}"
            )
        if not isinstance(self.source_noise, ChannelSpec) or not isinstance(self.hop_noise, ChannelSpec):
            raise ValidationError("source_noise and hop_noise must be ChannelSpec instances")
        if not isinstance(self.memory_a, MemorySpec) or not isinstance(self.memory_b, MemorySpec):
            raise ValidationError("memory_a and memory_b must be MemorySpec instances")
        if not (0.0 <= self.transmittance <= 1.0):
            raise ValidationError(f"transmittance must lie in [0, 1], got {self.transmittance}")
        if self.storage_a_ns < 0.0 or self.storage_b_ns < 0.0:
            raise ValidationError("storage durations must be non-negative")
        if not isinstance(self.bsm_mode, BsmMode):
            raise ValidationError(f"bsm_mode must be a BsmMode, got {self.bsm_mode!r}")
        if not isinstance(self.eve, EveStrategy):
            raise ValidationError(f"eve must be an EveStrategy, got {self.eve!r}")
        if not (0.0 < self.gen_prob_per_cycle <= 1.0):
            raise ValidationError(
                f"gen_prob_per_cycle must lie in (0, 1], got {self.gen_prob_per_cycle}"
            )
        if not (self.cycle_time_ns > 0.0):
            raise ValidationError(f"cycle_time_ns must be positive, got {self.cycle_time_ns}")
        if not isinstance(self.duty_cycles_per_period, int) or self.duty_cycles_per_period < 1:
            raise ValidationError(
                f"duty_cycles_per_period must be a positive integer, got {self.duty_cycles_per_period!r}"
            )
        if not (self.period_ms > 0.0):
            raise ValidationError(f"period_ms must be positive, got {self.period_ms}")
        if self.duty_cycles_per_period * self.cycle_time_ns > self.period_ms * 1e6:
            raise ValidationError(
                "active window exceeds the duty period: "
                f"{self.duty_cycles_per_period} cycles x {self.cycle_time_ns} ns "
                f"> {self.period_ms} ms"
            )


@dataclass(frozen=True)
class TimingPlan:
    """Required hold time versus what the sender-side memory can deliver.

    Attributes:
        required_ns: Operation time plus one-way flight time.
        feasible: Whether the configured sender-side hold covers it.
        retrieval_efficiency: Sender-memory efficiency at the required hold.
    """

    required_ns: float
    feasible: bool
    retrieval_efficiency: float


def plan_timing(config: SessionConfig) -> TimingPlan:
    """Check that the sender's memory can hold until it is safe to encode.

    The sender must keep its half of each pair stored for the local
    operation time plus the light travel time over the link; encoding any
    earlier would leak the message to a wiretap on the outgoing photon.
    """
    required = config.op_time_ns + config.distance_m / config.light_speed_m_per_ns
    return TimingPlan(
        required_ns=required,
        feasible=config.storage_a_ns >= required,
        retrieval_efficiency=config.memory_a.efficiency(required),
    )


@dataclass(frozen=True)
class EncodedMessage:
    """Bit groups ready for transmission.

    ``padded`` records whether a zero bit was appended to complete the last
    group; ``bit_length`` is the original message length before padding.
    """

    codes: tuple[TwoBitCode, ...]
    padded: bool
    bit_length: int


def encode_message(bits: str | Sequence[int]) -> EncodedMessage:
    """Split a bit string into two-bit groups, padding the tail if odd.

    Args:
        bits: Either a string over ``{'0', '1'}`` (whitespace ignored) or a
            sequence of 0/1 integers.

    Raises:
        ValueError: On any character or value outside {0, 1}.
    """
    if isinstance(bits, str):
        cleaned = "".join(bits.split())
        bad = set(cleaned) - {"0", "1"}
        if bad:
            raise ValueError(f"message contains non-bit characters: {sorted(bad)}")
        values = [int(c) for c in cleaned]
    else:
        values = []
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"message bits must be 0 or 1, got {b!r}")
            values.append(int(b))
    bit_length = len(values)
    padded = bool(bit_length % 2)
    if padded:
        values.append(0)
    codes = tuple(
        TwoBitCode.from_bits(values[k], values[k + 1]) for k in range(0, len(values), 2)
    )
    return EncodedMessage(codes=codes, padded=padded, bit_length=bit_length)


@dataclass(frozen=True)
class CheckRecord:
    """One security-check measurement: shared basis and both outcomes."""

    basis: LocalBasis
    outcome_a: int
    outcome_b: int
    expect_equal: bool = True


def estimate_qber(records: Iterable[CheckRecord]) -> float:
    """Fraction of check records violating their expected correlation.

    Returns NaN for an empty record list.
    """
    total = 0
    errors = 0
    for rec in records:
        total += 1
        agree = rec.outcome_a == rec.outcome_b
        if agree != rec.expect_equal:
            errors += 1
    if total == 0:
        return float("nan")
    return errors / total


class AbortStage(enum.Enum):
    NOT_ABORTED = "none"
    CHECK1 = "check1"
    CHECK2 = "check2"


#: Stage labels captured by a trace, in pipeline order.
STAGE_LABELS = ("emitted", "stored_both", "retrieved_sender", "retrieved_both", "encoded")


@dataclass(frozen=True, eq=False)
class StageTrace:
    """Exact pair state after each pipeline stage, for one message pair.

    Stages follow ``STAGE_LABELS``: emission (source noise applied), both
    halves in memory (attack on the distribution hop included), sender
    retrieval, full retrieval of an unencoded pair after transit, and the
    encoded pair as it enters the Bell analyzer carrying the first message
    group.  Loss is heralded, so the trace shows the surviving-path states.
    """

    stages: tuple[tuple[str, NDArray[np.complex128]], ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.stages)


@dataclass(frozen=True)
class SessionResult:
    """Outcome of one session.

    Error accounting is per two-bit group: ``bit_errors`` counts decoded
    groups that differ from what was sent, and ``bit_error_rate`` divides by
    the number of decoded groups.  ``erasure_positions`` are message group
    indices lost to heralded failures or analyzer erasures; the receiver
    knows them and can request retransmission.  An aborted session decodes
    nothing (empty ``decoded_bits``, no erasure list).
    """

    decoded_bits: str
    erasure_positions: tuple[int, ...]
    qber_check1: float
    qber_check2: float
    aborted_at: AbortStage
    pairs_lost: int
    bits_sent: int
    bits_decoded: int
    bit_errors: int
    bit_error_rate: float
    bit_rate_per_s: float
    simulated_time_s: float
    message_padded: bool
    trace: StageTrace | None = field(default=None, compare=False)


_CODE_LIST = tuple(TwoBitCode)
_EVE_BASIS = {0: LocalBasis.Z, 1: LocalBasis.X}


def _draw_eve_bases(policy: BasisPolicy, n: int, rng: np.random.Generator) -> NDArray[np.int8]:
    if policy is BasisPolicy.ALWAYS_Z:
        return np.zeros(n, dtype=np.int8)
    if policy is BasisPolicy.ALWAYS_X:
        return np.ones(n, dtype=np.int8)
    return rng.integers(0, 2, size=n).astype(np.int8)


def run_session(
    config: SessionConfig,
    message: str | Sequence[int],
    seed: int,
    capture_trace: bool = False,
) -> SessionResult:
    """Simulate one full session.

    Args:
        config: Validated session parameters.
        message: Bit string (or 0/1 sequence) to transmit.
        seed: Non-negative integer; the only source of randomness.
        capture_trace: Also record the exact pair state after each pipeline
            stage for the first message pair.

    Returns:
        A :class:`SessionResult`; identical inputs give identical results.

    Raises:
        TimingError: If the sender memory cannot hold for the required time
            (raised before any randomness is consumed).
        CapacityError: If the message needs more groups than the session
            has message-pair slots.
    """
    plan = plan_timing(config)
    if not plan.feasible:
        raise TimingError(
            f"sender memory holds {config.storage_a_ns} ns but "
            f"{plan.required_ns} ns are required before encoding is safe"
        )
    encoded = encode_message(message)
    n = config.n_pairs
    n_check1 = int(round(config.check_fraction * n / 2.0))
    n_check2 = n_check1
    n_slots = n - n_check1 - n_check2
    if len(encoded.codes) > n_slots:
        raise CapacityError(
            f"message needs {len(encoded.codes)} pair slots but only {n_slots} "
            f"are available ({n} pairs, check fraction {config.check_fraction})"
        )

    # Duty-cycle accounting: how many attempt cycles the block consumed.
    r_cycles = stream_rng(seed, "cycles")
    if config.gen_prob_per_cycle >= 1.0:
        cycles = n
    else:
        cycles = int(r_cycles.geometric(config.gen_prob_per_cycle, size=n).sum())
    periods = -(-cycles // config.duty_cycles_per_period)
    sim_time_s = periods * config.period_ms * 1e-3

    # Role assignment: a random split into check-1, check-2, and message pairs.
    ROLE_MSG, ROLE_C1, ROLE_C2 = 0, 1, 2
    perm = stream_rng(seed, "roles").permutation(n)
    roles = np.full(n, ROLE_MSG, dtype=np.int8)
    roles[perm[:n_check1]] = ROLE_C1
    roles[perm[n_check1 : n_check1 + n_check2]] = ROLE_C2

    eve_active = config.eve.kind is EveKind.INTERCEPT_RESEND
    if eve_active:
        eve1 = _draw_eve_bases(config.eve.basis_policy, n, stream_rng(seed, "eve_dist"))
    else:
        eve1 = np.full(n, -1, dtype=np.int8)
    if eve_active and config.eve_on_encoded_hop:
        eve2 = _draw_eve_bases(config.eve.basis_policy, n, stream_rng(seed, "eve_enc"))
    else:
        eve2 = np.full(n, -1, dtype=np.int8)

    # Sender-side retrieval survival, drawn per pair.
    eta_a = config.memory_a.efficiency(config.storage_a_ns)
    ok_a = stream_rng(seed, "mem_a").random(n) < eta_a
    pairs_lost = int(np.count_nonzero(~ok_a))

    # Exact state pipeline.  Pairs with the same discrete history share a
    # density matrix, so each distinct branch is evaluated once.
    dephase_a = ChannelSpec(NoiseKind.DEPHASING, config.memory_a.dephase_p)
    dephase_b = ChannelSpec(NoiseKind.DEPHASING, config.memory_b.dephase_p)
    rho_source = apply_channel(config.source_noise, "A", bell_density(BellLabel.PHI_PLUS))

    _distributed: dict[int, NDArray[np.complex128]] = {}

    def state_distributed(e1_code: int) -> NDArray[np.complex128]:
        if e1_code not in _distributed:
            if e1_code < 0:
                _distributed[e1_code] = rho_source
            else:
                _distributed[e1_code] = intercept_resend(rho_source, "B", _EVE_BASIS[e1_code])
        return _distributed[e1_code]

    _retrieved_a: dict[int, NDArray[np.complex128]] = {}

    def state_retrieved_a(e1_code: int) -> NDArray[np.complex128]:
        if e1_code not in _retrieved_a:
            _retrieved_a[e1_code] = apply_channel(dephase_a, "A", state_distributed(e1_code))
        return _retrieved_a[e1_code]

    def _finish_transit(rho: NDArray[np.complex128], e2_code: int) -> NDArray[np.complex128]:
        if e2_code >= 0:
            rho = intercept_resend(rho, "A", _EVE_BASIS[e2_code])
        rho = apply_channel(config.hop_noise, "A", rho)
        return apply_channel(dephase_b, "B", rho)

    _check_cum: dict[tuple[int, LocalBasis], NDArray[np.float64]] = {}

    def check_cum(e1_code: int, basis: LocalBasis) -> NDArray[np.float64]:
        key = (e1_code, basis)
        if key not in _check_cum:
            probs = outcome_probs(state_retrieved_a(e1_code), basis, basis)
            _check_cum[key] = np.cumsum(probs / probs.sum())
        return _check_cum[key]

    _bsm_cum: dict[tuple[TwoBitCode, int, int], NDArray[np.float64]] = {}

    def bsm_cum(code: TwoBitCode, e1_code: int, e2_code: int) -> NDArray[np.float64]:
        key = (code, e1_code, e2_code)
        if key not in _bsm_cum:
            rho = apply_local(encode_unitary(code), "A", state_retrieved_a(e1_code))
            overlaps = bell_overlaps(_finish_transit(rho, e2_code))
            _bsm_cum[key] = np.cumsum(overlaps / overlaps.sum())
        return _bsm_cum[key]

    trace = None
    if capture_trace:
        msg_indices = np.nonzero(roles == ROLE_MSG)[0]
        ti = int(msg_indices[0]) if msg_indices.size else 0
        t_e1, t_e2 = int(eve1[ti]), int(eve2[ti])
        t_code = encoded.codes[0] if encoded.codes else TwoBitCode.B00
        plain = state_retrieved_a(t_e1)
        trace = StageTrace(
            stages=(
                (STAGE_LABELS[0], rho_source.copy()),
                (STAGE_LABELS[1], state_distributed(t_e1).copy()),
                (STAGE_LABELS[2], plain.copy()),
                (STAGE_LABELS[3], _finish_transit(plain, t_e2)),
                (STAGE_LABELS[4], _finish_transit(apply_local(encode_unitary(t_code), "A", plain), t_e2)),
            )
        )

    def build_result(
        aborted_at: AbortStage,
        qber1: float,
        qber2: float,
        decoded: dict[int, TwoBitCode],
        erasures: list[int],
        lost: int,
    ) -> SessionResult:
        if aborted_at is not AbortStage.NOT_ABORTED:
            decoded, erasures = {}, []
        groups = sorted(decoded)
        decoded_bits = "".join(decoded[g].value for g in groups)
        bit_errors = sum(1 for g in groups if decoded[g] is not encoded.codes[g])
        rate = bit_errors / len(groups) if groups else float("nan")
        return SessionResult(
            decoded_bits=decoded_bits,
            erasure_positions=tuple(sorted(erasures)),
            qber_check1=qber1,
            qber_check2=qber2,
            aborted_at=aborted_at,
            pairs_lost=lost,
            bits_sent=encoded.bit_length,
            bits_decoded=len(decoded_bits),
            bit_errors=bit_errors,
            bit_error_rate=rate,
            bit_rate_per_s=len(decoded_bits) / sim_time_s,
            simulated_time_s=sim_time_s,
            message_padded=encoded.padded,
            trace=trace,
        )

    # --- Check 1: shared-basis correlation test before any encoding. ---
    u_basis = stream_rng(seed, "check_basis").random(n)
    u_out = stream_rng(seed, "check_outcome").random(n)
    records: list[CheckRecord] = []
    for i in np.nonzero((roles == ROLE_C1) & ok_a)[0]:
        basis = LocalBasis.Z if u_basis[i] < 0.5 else LocalBasis.X
        cum = check_cum(int(eve1[i]), basis)
        k = min(int(np.searchsorted(cum, u_out[i], side="right")), 3)
        records.append(CheckRecord(basis=basis, outcome_a=k >> 1, outcome_b=k & 1))
    qber1 = estimate_qber(records)
    if records and qber1 > config.qber_threshold:
        return build_result(AbortStage.CHECK1, qber1, float("nan"), {}, [], pairs_lost)

    # --- Message and decoy pairs: encode, transmit, retrieve, decode. ---
    ok_hop = stream_rng(seed, "loss_enc").random(n) < config.transmittance
    eta_b = config.memory_b.efficiency(config.storage_b_ns)
    ok_b = stream_rng(seed, "mem_b").random(n) < eta_b
    u_bsm = stream_rng(seed, "bsm").random(n)
    c2_codes = stream_rng(seed, "check2_code").integers(0, 4, size=n)

    linear_optics = config.bsm_mode is BsmMode.LINEAR_OPTICS
    next_group = 0
    decoded: dict[int, TwoBitCode] = {}
    erasures: list[int] = []
    c2_compared = 0
    c2_errors = 0
    for i in range(n):
        role = roles[i]
        if role == ROLE_C1 or not ok_a[i]:
            continue
        if role == ROLE_C2:
            group = -1
            code = _CODE_LIST[c2_codes[i]]
        else:
            if next_group >= len(encoded.codes):
                continue  # spare slot, nothing left to send
            group = next_group
            code = encoded.codes[group]
            next_group += 1
        if not ok_hop[i] or not ok_b[i]:
            pairs_lost += 1
            if group >= 0:
                erasures.append(group)
            continue
        cum = bsm_cum(code, int(eve1[i]), int(eve2[i]))
        k = min(int(np.searchsorted(cum, u_bsm[i], side="right")), 3)
        label = BELL_ORDER[k]
        if linear_optics and label in (BellLabel.PHI_PLUS, BellLabel.PHI_MINUS):
            if group >= 0:
                erasures.append(group)
            continue
        got = BELL_TO_CODE[label]
        if group < 0:
            c2_compared += 1
            if got is not code:
                c2_errors += 1
        else:
            decoded[group] = got
    qber2 = c2_errors / c2_compared if c2_compared else float("nan")
    if c2_compared and qber2 > config.qber_threshold:
        return build_result(AbortStage.CHECK2, qber1, qber2, {}, [], pairs_lost)
    return build_result(AbortStage.NOT_ABORTED, qber1, qber2, decoded, erasures, pairs_lost)


RESULT_CSV_HEADER = (
    "n_pairs,check_fraction,qber1,qber2,aborted_at,bits_sent,bits_decoded,"
    "erasures,bit_errors,bit_rate_per_s,sim_time_s,seed"
)


def _fmt(value: float) -> str:
    return repr(float(value))


def result_csv_header() -> str:
    return RESULT_CSV_HEADER


def result_csv_row(config: SessionConfig, result: SessionResult, seed: int) -> str:
    """One CSV row summarizing a session, matching ``RESULT_CSV_HEADER``."""
    fields = (
        str(config.n_pairs),
        _fmt(config.check_fraction),
        _fmt(result.qber_check1),
        _fmt(result.qber_check2),
        result.aborted_at.value,
        str(result.bits_sent),
        str(result.bits_decoded),
        str(len(result.erasure_positions)),
        str(result.bit_errors),
        _fmt(result.bit_rate_per_s),
        _fmt(result.simulated_time_s),
        str(seed),
    )
    return ",".join(fields)
