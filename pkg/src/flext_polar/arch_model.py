"""Unrolled decoder architecture model.

The unrolled decode of one frame is a dataflow graph of F layers, G layers,
leaf decisions and feedback XOR layers. ``rrb_schedule`` cuts it into pipeline
stages by merging consecutive ASAP levels under a clock budget. The multicore
wrapper is described by closed-form latency and throughput plus an IO-tick
simulator that must agree with them.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import networkx as nx

from flext_polar.constants import (
    DEFAULT_INFO_LENGTH,
    REFERENCE_CLOCK_HZ,
    FlextPolarMessages,
)
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import FlextPolarModels, GraphNodeKind, NodeKind
from flext_polar.sc_decoder import SegmentNode, cached_segment_tree, detect_shortcuts
from flext_polar.utilities import FlextPolarUtilities

logger = FlextPolarUtilities.get_logger(__name__)

# =============================================================================
# UNROLLED GRAPH
# =============================================================================


class UnrolledGraph:
    """Acyclic dataflow graph; node attributes ``kind``, ``length`` and ``delay``."""

    def __init__(self, graph: nx.DiGraph, terminal: str | None = None) -> None:
        if not nx.is_directed_acyclic_graph(graph):
            msg = "unrolled graph has a cycle"
            raise FlextPolarExceptions.ParameterError(msg, parameter="graph")
        self.graph = graph
        sinks = [node for node in graph.nodes if graph.out_degree(node) == 0]
        self.terminal = terminal if terminal is not None else (sinks[-1] if sinks else None)

    @classmethod
    def from_delays(
        cls,
        delays: Mapping[str, float],
        edges: Iterable[tuple[str, str]],
    ) -> UnrolledGraph:
        """Plain weighted DAG, used for synthetic scheduling problems."""
        graph = nx.DiGraph()
        for node, delay in delays.items():
            graph.add_node(node, kind=None, length=1, delay=float(delay))
        graph.add_edges_from(edges)
        return cls(graph)

    @property
    def node_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def delay(self, node: str) -> float:
        return float(self.graph.nodes[node]["delay"])

    def kind(self, node: str) -> GraphNodeKind | None:
        return self.graph.nodes[node]["kind"]

    def kinds(self) -> dict[str, GraphNodeKind | None]:
        return dict(self.graph.nodes(data="kind"))

    def topological_order(self) -> list[str]:
        return list(nx.lexicographical_topological_sort(self.graph))

    def asap_levels(self) -> list[list[str]]:
        """Nodes grouped by longest predecessor chain, sources first."""
        return [sorted(level) for level in nx.topological_generations(self.graph)]

    def critical_path_delay(self) -> float:
        return float(nx.dag_longest_path_length(self.graph, weight="delay", default_weight=0))

    def max_node_delay(self) -> tuple[str, float]:
        node = max(self.graph.nodes, key=self.delay)
        return node, self.delay(node)


def _leaf_kind(leaf: SegmentNode) -> GraphNodeKind:
    if leaf.kind == NodeKind.GENERIC:
        return GraphNodeKind.FROZEN_DECISION if leaf.frozen else GraphNodeKind.DECISION
    return GraphNodeKind(str(leaf.kind))


def build_unrolled_graph(
    code: FlextPolarModels.PolarCode,
    shortcuts: Sequence[FlextPolarModels.ShortcutNode] | None = None,
    delay_model: FlextPolarModels.DelayModel | Mapping[str, object] | None = None,
) -> UnrolledGraph:
    """One node per F layer, G layer, leaf and feedback XOR of the unrolled decode."""
    if delay_model is None:
        model = FlextPolarModels.DelayModel()
    elif isinstance(delay_model, FlextPolarModels.DelayModel):
        model = delay_model
    else:
        model = FlextPolarModels.DelayModel.from_mapping(dict(delay_model))
    leaves = detect_shortcuts(code) if shortcuts is None else shortcuts
    tree = cached_segment_tree(code, tuple(leaves))
    graph = nx.DiGraph()

    def add(kind: GraphNodeKind, start: int, length: int) -> str:
        node = f"{kind.value}[{start}:{start + length}]"
        graph.add_node(node, kind=kind, length=length, delay=model.delay_of(kind, length))
        return node

    # (segment, producer of its LLRs) -> id of the node producing its partial sums
    def unroll(segment: SegmentNode, producer: str | None) -> str:
        if segment.is_leaf:
            leaf = add(_leaf_kind(segment), segment.start, segment.length)
            if producer is not None:
                graph.add_edge(producer, leaf)
            return leaf
        assert segment.left is not None and segment.right is not None
        half = segment.length // 2
        f_node = add(GraphNodeKind.F_LAYER, segment.start, half)
        g_node = add(GraphNodeKind.G_LAYER, segment.start + half, half)
        xor_node = add(GraphNodeKind.FEEDBACK_XOR, segment.start, half)
        if producer is not None:
            graph.add_edge(producer, f_node)
            graph.add_edge(producer, g_node)
        left_out = unroll(segment.left, f_node)
        graph.add_edge(left_out, g_node)
        graph.add_edge(left_out, xor_node)
        right_out = unroll(segment.right, g_node)
        graph.add_edge(right_out, xor_node)
        return xor_node

    terminal = unroll(tree.root, None)
    logger.debug(
        "unrolled graph built",
        nodes=graph.number_of_nodes(),
        edges=graph.number_of_edges(),
        leaves=len(tree.leaves),
    )
    return UnrolledGraph(graph, terminal=terminal)


# =============================================================================
# REGISTER REDUCTION AND BALANCING
# =============================================================================


def rrb_schedule(g: UnrolledGraph, clock_budget: float) -> FlextPolarModels.PipelineSchedule:
    """Merge consecutive ASAP levels greedily while the merged critical path fits.

    Feasibility of a level range is inherited by its sub-ranges, so closing a
    stage only when the next level no longer fits yields the minimum depth
    among consecutive-level partitions.
    """
    for node in g.graph.nodes:
        delay = g.delay(node)
        if delay > clock_budget:
            msg = FlextPolarMessages.NODE_EXCEEDS_BUDGET.format(
                node=node, delay=delay, budget=clock_budget,
            )
            raise FlextPolarExceptions.InfeasibleScheduleError(
                msg, node=node, delay=delay, budget=clock_budget,
            )

    stage_of: dict[str, int] = {}
    per_stage_delay: list[float] = []
    arrival: dict[str, float] = {}
    stage = 0
    stage_delay = 0.0
    for level in g.asap_levels():
        candidate = {
            node: g.delay(node)
            + max(
                (arrival[pred] for pred in g.graph.predecessors(node) if stage_of[pred] == stage),
                default=0.0,
            )
            for node in level
        }
        worst = max(candidate.values())
        if stage == 0 or worst > clock_budget:
            if stage:
                per_stage_delay.append(stage_delay)
            stage += 1
            # predecessors all sit in earlier stages now
            candidate = {node: g.delay(node) for node in level}
            worst = max(candidate.values())
            stage_delay = 0.0
        for node, value in candidate.items():
            stage_of[node] = stage
            arrival[node] = value
        stage_delay = max(stage_delay, worst)
    per_stage_delay.append(stage_delay)

    logger.debug("pipeline scheduled", depth=stage, budget=clock_budget)
    return FlextPolarModels.PipelineSchedule(
        stage_of=stage_of,
        depth=stage,
        per_stage_delay=tuple(per_stage_delay),
        budget=clock_budget,
    )


def budget_for_clock(core_clock_hz: float, unit_delay_s: float) -> float:
    """Clock period expressed in delay units."""
    return 1.0 / (core_clock_hz * unit_delay_s)


def calibrate(
    g: UnrolledGraph,
    target_depth: int,
    reference_clock_hz: float = REFERENCE_CLOCK_HZ,
    *,
    iterations: int = 64,
) -> float:
    """Seconds per delay unit so the graph schedules to ``target_depth`` at the reference clock."""
    levels = len(g.asap_levels())
    if not 1 <= target_depth <= levels:
        msg = FlextPolarMessages.CALIBRATION_TARGET.format(target=target_depth, levels=levels)
        raise FlextPolarExceptions.ConfigurationError(msg, config_key="calibrate_target")
    _, lowest = g.max_node_delay()
    if rrb_schedule(g, lowest).depth <= target_depth:
        budget = lowest
    else:
        low, high = lowest, max(g.critical_path_delay(), lowest)
        for _ in range(iterations):
            middle = 0.5 * (low + high)
            if rrb_schedule(g, middle).depth <= target_depth:
                high = middle
            else:
                low = middle
        budget = high
    unit_delay_s = 1.0 / (reference_clock_hz * budget)
    logger.info(
        "delay model calibrated",
        target_depth=target_depth,
        budget=budget,
        unit_delay_s=unit_delay_s,
    )
    return unit_delay_s


# =============================================================================
# MULTICORE WRAPPER: CLOSED FORMS
# =============================================================================


def phase_offset_cycles(cores: int, theta_deg: float) -> int:
    """IO cycles between load completion and the next core edge, in [0, P-1]."""
    return math.floor(cores * (theta_deg + 180.0) / 360.0) % cores


def latency_cycles(cfg: FlextPolarModels.ArchConfig, theta_deg: float) -> int:
    return cfg.cores * (cfg.depth + 2) + phase_offset_cycles(cfg.cores, theta_deg)


def latency(cfg: FlextPolarModels.ArchConfig) -> FlextPolarModels.LatencyInterval:
    """T_IO * (P(D+2) + offset); min/max over the phase when it is not fixed."""
    if cfg.theta_deg is not None:
        value = latency_cycles(cfg, cfg.theta_deg) * cfg.t_io
        return FlextPolarModels.LatencyInterval(min_s=value, max_s=value)
    base = cfg.cores * (cfg.depth + 2)
    return FlextPolarModels.LatencyInterval(
        min_s=base * cfg.t_io,
        max_s=(base + cfg.cores - 1) * cfg.t_io,
    )


def throughput(cfg: FlextPolarModels.ArchConfig) -> FlextPolarModels.Throughput:
    """One frame per core clock per core."""
    frames_per_second = cfg.core_clock_hz * cfg.cores
    return FlextPolarModels.Throughput(
        info_bps=cfg.info_length * frames_per_second,
        coded_bps=cfg.block_length * frames_per_second,
    )


# =============================================================================
# MULTICORE WRAPPER: IO-TICK SIMULATOR
# =============================================================================


@dataclass(slots=True)
class _Core:
    registers: deque[int | None]
    loaded: deque[tuple[int, int]]
    unloading: list[tuple[int, int]]


def simulate_frame_flow(
    cfg: FlextPolarModels.ArchConfig,
    n_frames: int,
) -> FlextPolarModels.FrameFlowResult:
    """Tick-by-tick model of dispatch, load, pipeline and unload.

    Frame i starts loading into core i mod P at IO tick i and is ready P ticks
    later. Core c latches on ticks t with (t - c - offset) mod P == 0, moving
    frames through registers R_0..R_D; a frame entering R_D unloads for P
    ticks. Within a tick, core edges happen before new loads.
    """
    cores = cfg.cores
    minimum = cores * (cfg.depth + 3)
    if n_frames < minimum:
        msg = f"n_frames={n_frames} is below the pipeline fill of {minimum} frames"
        raise FlextPolarExceptions.ParameterError(msg, parameter="n_frames")
    theta = cfg.theta_deg if cfg.theta_deg is not None else 0.0
    offset = phase_offset_cycles(cores, theta)

    units = [
        _Core(deque([None] * (cfg.depth + 1), maxlen=cfg.depth + 1), deque(), [])
        for _ in range(cores)
    ]
    completion: dict[int, int] = {}
    tick = 0
    while len(completion) < n_frames:
        for unit in units:
            finished = [frame for frame, done in unit.unloading if done == tick]
            for frame in finished:
                completion[frame] = tick
            unit.unloading = [(f, d) for f, d in unit.unloading if d != tick]

        edge_core = (tick - offset) % cores
        unit = units[edge_core]
        latched: int | None = None
        if unit.loaded and unit.loaded[0][1] <= tick:
            latched = unit.loaded.popleft()[0]
        unit.registers.appendleft(latched)
        entering = unit.registers[-1]
        if entering is not None:
            unit.unloading.append((entering, tick + cores))
            # R_D is read out by the unload path
            unit.registers[-1] = None

        if tick < n_frames:
            units[tick % cores].loaded.append((tick, tick + cores))
        tick += 1

    ordered = [completion[frame] for frame in range(n_frames)]
    latencies = [done - frame for frame, done in enumerate(ordered)]
    span = (ordered[-1] - ordered[0]) * cfg.t_io
    sustained = cfg.info_length * (n_frames - 1) / span if span > 0 else 0.0
    logger.debug(
        "frame flow simulated",
        cores=cores,
        depth=cfg.depth,
        theta_deg=theta,
        frames=n_frames,
        ticks=tick,
    )
    return FlextPolarModels.FrameFlowResult(
        per_frame_latency_s=tuple(cycles * cfg.t_io for cycles in latencies),
        per_frame_latency_cycles=tuple(latencies),
        completion_cycles=tuple(ordered),
        sustained_info_bps=sustained,
    )


# =============================================================================
# REPORTS
# =============================================================================


def arch_report(
    cfg: FlextPolarModels.ArchConfig,
    schedule: FlextPolarModels.PipelineSchedule | None = None,
) -> dict[str, object]:
    """JSON-ready analysis in SI units with unit-suffixed keys."""
    interval = latency(cfg)
    rates = throughput(cfg)
    report: dict[str, object] = {
        "cores": cfg.cores,
        "core_mhz": cfg.core_clock_hz / 1e6,
        "io_mhz": cfg.io_clock_hz / 1e6,
        "t_io_ns": cfg.t_io * 1e9,
        "theta_deg": cfg.theta_deg,
        "depth": cfg.depth,
        "latency_ns_min": interval.min_s * 1e9,
        "latency_ns_max": interval.max_s * 1e9,
        "info_gbps": rates.info_bps / 1e9,
        "coded_gbps": rates.coded_bps / 1e9,
        "input_bits_per_frame": cfg.input_bits_per_frame,
        "output_bits_per_frame": cfg.output_bits_per_frame,
    }
    if schedule is not None:
        report["per_stage_delays"] = list(schedule.per_stage_delay)
        report["clock_budget"] = schedule.budget
    return report


def arch_grid(
    cores: Iterable[int],
    core_clocks_mhz: Iterable[float],
    depths: Iterable[int],
) -> list[tuple[int, float, int]]:
    return list(itertools.product(cores, core_clocks_mhz, depths))


def sweep_arch(
    points: Iterable[tuple[int, float, int]],
    *,
    block_length: int = 1024,
    info_length: int = DEFAULT_INFO_LENGTH,
    channel_bits: int = 5,
    theta_deg: float | None = None,
) -> list[dict[str, object]]:
    """``arch_report`` rows for (cores, core MHz, depth) points."""
    rows = []
    for cores, core_mhz, depth in points:
        cfg = FlextPolarModels.ArchConfig(
            cores=cores,
            core_clock_hz=core_mhz * 1e6,
            depth=depth,
            theta_deg=theta_deg,
            channel_bits=channel_bits,
            block_length=block_length,
            info_length=info_length,
        )
        rows.append(arch_report(cfg))
    return rows


__all__ = [
    "UnrolledGraph",
    "arch_grid",
    "arch_report",
    "budget_for_clock",
    "build_unrolled_graph",
    "calibrate",
    "latency",
    "latency_cycles",
    "phase_offset_cycles",
    "rrb_schedule",
    "simulate_frame_flow",
    "sweep_arch",
    "throughput",
]
