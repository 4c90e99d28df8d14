"""Successive-cancellation decoding.

``decode_sc`` is the literal recursion: split the node LLRs in halves, decode
the left half on F outputs, the right half on G outputs with the left partial
sums as feedback, and return (x_left xor x_right, x_right) to the parent.
Natural-order halves are the bit-reversed image of the odd/even split, so
decisions and the decoded u are identical.

``decode_fast`` walks an explicit segment tree whose leaves are the shortcut
nodes returned by ``detect_shortcuts``. With min-sum F the closed forms are
exact for Rate0 and Repetition leaves, for Rate1 leaves without a zero LLR and
for SPC leaves whose magnitudes are nonzero and pairwise distinct; other rows
of those leaves are decoded by the literal recursion, so ``decode_fast`` equals
``decode_sc`` on every input.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from flext_polar.constants import FlextPolarMessages
from flext_polar.exceptions import FlextPolarExceptions
from flext_polar.models import DEFAULT_SHORTCUT_CAPS, FlextPolarModels, NodeKind
from flext_polar.polar_core import polar_transform
from flext_polar.protocols import FlextPolarKernelProtocol
from flext_polar.typings import BitArray, BoolMask, LlrArray

_MIN_CAP: dict[NodeKind, int] = {
    NodeKind.RATE0: 1,
    NodeKind.RATE1: 1,
    NodeKind.REPETITION: 2,
    NodeKind.SPC: 2,
}
_PRECEDENCE: tuple[NodeKind, ...] = (
    NodeKind.RATE0,
    NodeKind.RATE1,
    NodeKind.REPETITION,
    NodeKind.SPC,
)

# =============================================================================
# KERNELS
# =============================================================================


def f_kernel[T: (float, LlrArray)](a: T, b: T) -> T:
    """Min-sum check-node combine: sign(a)sign(b)min(|a|,|b|), sign(0) = +1."""
    left = np.asarray(a, dtype=np.float64)
    right = np.asarray(b, dtype=np.float64)
    magnitude = np.minimum(np.abs(left), np.abs(right))
    negative = ((left < 0) ^ (right < 0)) & (magnitude > 0)
    out = np.where(negative, -magnitude, magnitude)
    return float(out) if out.ndim == 0 else out  # type: ignore[return-value]


def g_kernel[T: (float, LlrArray)](a: T, b: T, z: int | BitArray) -> T:
    """Variable-node combine with feedback: b + (1 - 2z) * a."""
    left = np.asarray(a, dtype=np.float64)
    right = np.asarray(b, dtype=np.float64)
    out = np.where(np.asarray(z) != 0, right - left, right + left)
    return float(out) if out.ndim == 0 else out  # type: ignore[return-value]


def hard_decision(llr: LlrArray) -> BitArray:
    """0 iff LLR >= 0."""
    return (np.asarray(llr) < 0).astype(np.uint8)


def _as_batch(llr: LlrArray, block_length: int) -> tuple[LlrArray, bool]:
    values = np.asarray(llr, dtype=np.float64)
    single = values.ndim == 1
    batch = values[np.newaxis, :] if single else values
    if batch.ndim != 2 or batch.shape[1] != block_length:
        msg = FlextPolarMessages.LENGTH_MISMATCH.format(
            what="llr", actual=batch.shape[-1] if batch.ndim else 0, expected=block_length,
        )
        raise FlextPolarExceptions.ParameterError(msg, parameter="llr")
    return batch, single


def _extract(
    code: FlextPolarModels.PolarCode,
    x_hat: BitArray,
    u_hat: BitArray,
    *,
    systematic: bool,
    single: bool,
) -> BitArray:
    source = x_hat if systematic else u_hat
    decided = source[:, code.free_indices].astype(np.uint8)
    return decided[0] if single else decided


# =============================================================================
# LITERAL RECURSION
# =============================================================================


def _sc_recurse(llr: LlrArray, mask: BoolMask) -> tuple[BitArray, BitArray]:
    if llr.shape[1] == 1:
        bits = np.zeros(llr.shape, dtype=np.uint8) if mask[0] else hard_decision(llr)
        return bits, bits
    half = llr.shape[1] // 2
    a, b = llr[:, :half], llr[:, half:]
    x_left, u_left = _sc_recurse(f_kernel(a, b), mask[:half])
    x_right, u_right = _sc_recurse(g_kernel(a, b, x_left), mask[half:])
    return (
        np.concatenate([x_left ^ x_right, x_right], axis=1),
        np.concatenate([u_left, u_right], axis=1),
    )


def decode_sc(
    code: FlextPolarModels.PolarCode,
    llr: LlrArray,
    *,
    systematic: bool = False,
) -> BitArray:
    """Literal SC decoding; returns u_A, or x_A with ``systematic=True``."""
    batch, single = _as_batch(llr, code.block_length)
    x_hat, u_hat = _sc_recurse(batch, code.mask)
    return _extract(code, x_hat, u_hat, systematic=systematic, single=single)


# =============================================================================
# SHORTCUT DETECTION AND SEGMENT TREE
# =============================================================================


def _matches(kind: NodeKind, segment: BoolMask) -> bool:
    length = segment.size
    match kind:
        case NodeKind.RATE0:
            return bool(segment.all())
        case NodeKind.RATE1:
            return not segment.any()
        case NodeKind.REPETITION:
            return length >= 2 and bool(segment[:-1].all()) and not segment[-1]
        case NodeKind.SPC:
            return length >= 2 and bool(segment[0]) and not segment[1:].any()
        case _:
            return length == 1


def _validate_caps(caps: Mapping[NodeKind, int]) -> dict[NodeKind, int]:
    checked: dict[NodeKind, int] = {}
    for kind, cap in caps.items():
        node_kind = NodeKind(kind)
        if node_kind == NodeKind.GENERIC:
            continue
        minimum = _MIN_CAP[node_kind]
        if cap < minimum or cap & (cap - 1):
            msg = FlextPolarMessages.CAP_NOT_POWER_OF_TWO.format(
                kind=node_kind.value, minimum=minimum, cap=cap,
            )
            raise FlextPolarExceptions.ParameterError(msg, parameter="max_len_per_kind")
        checked[node_kind] = cap
    return checked


def detect_shortcuts(
    code: FlextPolarModels.PolarCode,
    max_len_per_kind: Mapping[NodeKind, int] | None = None,
) -> list[FlextPolarModels.ShortcutNode]:
    """Leaves of the pruned recursion tree, in decoding order.

    Kinds absent from ``max_len_per_kind`` are disabled; ``None`` selects the
    default caps.
    """
    caps = _validate_caps(DEFAULT_SHORTCUT_CAPS if max_len_per_kind is None else max_len_per_kind)
    mask = code.mask
    leaves: list[FlextPolarModels.ShortcutNode] = []

    def visit(start: int, length: int) -> None:
        segment = mask[start : start + length]
        for kind in _PRECEDENCE:
            if length <= caps.get(kind, 0) and _matches(kind, segment):
                leaves.append(FlextPolarModels.ShortcutNode(kind=kind, start=start, length=length))
                return
        if length == 1:
            leaves.append(
                FlextPolarModels.ShortcutNode(kind=NodeKind.GENERIC, start=start, length=1),
            )
            return
        half = length // 2
        visit(start, half)
        visit(start + half, half)

    visit(0, code.block_length)
    return leaves


@dataclass(slots=True)
class SegmentNode:
    """Node of the explicit SC recursion tree."""

    start: int
    length: int
    depth: int
    kind: NodeKind | None = None
    frozen: bool = False
    left: SegmentNode | None = None
    right: SegmentNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind is not None

    @property
    def stop(self) -> int:
        return self.start + self.length


@dataclass(slots=True)
class SegmentTree:
    """Pruned recursion tree of one code; leaves in decoding order."""

    root: SegmentNode
    block_length: int
    leaves: list[SegmentNode] = field(default_factory=list)

    def internal_nodes(self) -> list[SegmentNode]:
        """Internal nodes in pre-order."""
        found: list[SegmentNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            found.append(node)
            assert node.right is not None and node.left is not None
            stack.extend((node.right, node.left))
        return found


def build_segment_tree(
    code: FlextPolarModels.PolarCode,
    shortcuts: Sequence[FlextPolarModels.ShortcutNode],
) -> SegmentTree:
    """Rebuild the recursion tree from a leaf list, checking it against the code."""
    mask = code.mask
    by_start = {node.start: node for node in shortcuts}
    if len(by_start) != len(shortcuts):
        raise FlextPolarExceptions.ParameterError(
            FlextPolarMessages.SHORTCUTS_INCONSISTENT.format(reason="duplicate segment starts"),
            parameter="shortcuts",
        )
    used: set[int] = set()
    leaves: list[SegmentNode] = []

    def build(start: int, length: int, depth: int) -> SegmentNode:
        shortcut = by_start.get(start)
        if shortcut is not None and shortcut.length == length:
            segment = mask[start : start + length]
            if not _matches(shortcut.kind, segment):
                reason = f"{shortcut.kind.value} does not fit segment [{start}, {start + length})"
                raise FlextPolarExceptions.ParameterError(
                    FlextPolarMessages.SHORTCUTS_INCONSISTENT.format(reason=reason),
                    parameter="shortcuts",
                )
            used.add(start)
            leaf = SegmentNode(
                start=start,
                length=length,
                depth=depth,
                kind=shortcut.kind,
                frozen=bool(segment.all()),
            )
            leaves.append(leaf)
            return leaf
        if length == 1:
            reason = f"no leaf covers position {start}"
            raise FlextPolarExceptions.ParameterError(
                FlextPolarMessages.SHORTCUTS_INCONSISTENT.format(reason=reason),
                parameter="shortcuts",
            )
        half = length // 2
        node = SegmentNode(start=start, length=length, depth=depth)
        node.left = build(start, half, depth + 1)
        node.right = build(start + half, half, depth + 1)
        return node

    root = build(0, code.block_length, 0)
    if len(used) != len(shortcuts):
        raise FlextPolarExceptions.ParameterError(
            FlextPolarMessages.SHORTCUTS_INCONSISTENT.format(
                reason="segments overlap or are misaligned",
            ),
            parameter="shortcuts",
        )
    return SegmentTree(root=root, block_length=code.block_length, leaves=leaves)


@lru_cache(maxsize=32)
def cached_segment_tree(
    code: FlextPolarModels.PolarCode,
    shortcuts: tuple[FlextPolarModels.ShortcutNode, ...],
) -> SegmentTree:
    """Memoized ``build_segment_tree``; trees are never mutated after build."""
    return build_segment_tree(code, shortcuts)


# =============================================================================
# SEGMENT-TREE EXECUTOR
# =============================================================================


def run_segment_tree[L](
    tree: SegmentTree,
    alpha: L,
    batch: int,
    kernels: FlextPolarKernelProtocol[L],
) -> tuple[BitArray, BitArray]:
    """Iterative SC over ``tree``; returns the root (x_hat, u_hat)."""
    u_hat = np.zeros((batch, tree.block_length), dtype=np.uint8)
    partial_sums: list[BitArray] = []
    # (node, phase, node LLRs, left partial sums)
    stack: list[tuple[SegmentNode, int, L, BitArray | None]] = [(tree.root, 0, alpha, None)]
    while stack:
        node, phase, node_alpha, x_left = stack.pop()
        if node.is_leaf:
            x_leaf, u_leaf = kernels.leaf(node_alpha, node)
            u_hat[:, node.start : node.stop] = u_leaf
            partial_sums.append(x_leaf)
            continue
        assert node.left is not None and node.right is not None
        if phase == 0:
            stack.append((node, 1, node_alpha, None))
            stack.append((node.left, 0, kernels.f(node_alpha, node.depth + 1), None))
        elif phase == 1:
            x_left = partial_sums.pop()
            stack.append((node, 2, node_alpha, x_left))
            right_alpha = kernels.g(node_alpha, x_left, node.depth + 1)
            stack.append((node.right, 0, right_alpha, None))
        else:
            assert x_left is not None
            x_right = partial_sums.pop()
            partial_sums.append(np.concatenate([x_left ^ x_right, x_right], axis=1))
    return partial_sums.pop(), u_hat


def pairwise_fold[A: np.ndarray](values: A) -> A:
    """Sum along axis 1 by repeated halving, the order a Rate0 subtree feeds G."""
    folded = values
    while folded.shape[1] > 1:
        half = folded.shape[1] // 2
        folded = folded[:, :half] + folded[:, half:]
    return folded[:, 0]


def wagner_decision(hard: BitArray, reliability: np.ndarray) -> BitArray:
    """Single-parity-check decision: flip the least reliable bit on odd parity."""
    decided = hard.copy()
    odd = (decided.sum(axis=1) & 1).astype(np.uint8)
    weakest = np.argmin(reliability, axis=1)
    decided[np.arange(decided.shape[0]), weakest] ^= odd
    return decided


def _leaf_mask(node: SegmentNode) -> BoolMask:
    mask = np.zeros(node.length, dtype=np.bool_)
    mask[0] = node.kind == NodeKind.SPC
    return mask


def _tied_rows(values: np.ndarray, kind: NodeKind | None) -> np.ndarray:
    """Rows where the Rate1 or SPC closed form may differ from the recursion."""
    magnitude = np.abs(values)
    if kind == NodeKind.RATE1:
        return (magnitude == 0).any(axis=1)
    ordered = np.sort(magnitude, axis=1)
    return (ordered[:, 0] == 0) | (np.diff(ordered, axis=1) == 0).any(axis=1)


def shortcut_leaf(values: np.ndarray, node: SegmentNode) -> tuple[BitArray, BitArray]:
    """Decide one leaf from signed LLRs (float, or integer LSBs); returns (x, u)."""
    batch, length = values.shape
    match node.kind:
        case NodeKind.RATE0:
            zeros = np.zeros((batch, length), dtype=np.uint8)
            return zeros, zeros
        case NodeKind.REPETITION:
            bit = hard_decision(pairwise_fold(values))
            u = np.zeros((batch, length), dtype=np.uint8)
            u[:, -1] = bit
            return np.repeat(bit[:, np.newaxis], length, axis=1), u
        case NodeKind.RATE1 | NodeKind.SPC:
            hard = hard_decision(values)
            x = hard if node.kind == NodeKind.RATE1 else wagner_decision(hard, np.abs(values))
            tied = _tied_rows(values, node.kind)
            if tied.any():
                x[tied], _ = _sc_recurse(values[tied].astype(np.float64), _leaf_mask(node))
            return x, polar_transform(x)
        case _:
            bits = np.zeros((batch, 1), dtype=np.uint8) if node.frozen else hard_decision(values)
            return bits, bits


class FloatKernels:
    """Real-valued min-sum kernels with closed-form shortcut leaves."""

    def f(self, alpha: LlrArray, depth: int) -> LlrArray:
        half = alpha.shape[1] // 2
        return f_kernel(alpha[:, :half], alpha[:, half:])

    def g(self, alpha: LlrArray, feedback: BitArray, depth: int) -> LlrArray:
        half = alpha.shape[1] // 2
        return g_kernel(alpha[:, :half], alpha[:, half:], feedback)

    def leaf(self, alpha: LlrArray, node: SegmentNode) -> tuple[BitArray, BitArray]:
        return shortcut_leaf(alpha, node)


def decode_fast(
    code: FlextPolarModels.PolarCode,
    llr: LlrArray,
    shortcuts: Sequence[FlextPolarModels.ShortcutNode] | None = None,
    *,
    systematic: bool = False,
) -> BitArray:
    """Shortcut-accelerated SC with the same contract as ``decode_sc``."""
    batch, single = _as_batch(llr, code.block_length)
    leaves = detect_shortcuts(code) if shortcuts is None else shortcuts
    tree = cached_segment_tree(code, tuple(leaves))
    x_hat, u_hat = run_segment_tree(tree, batch, batch.shape[0], FloatKernels())
    return _extract(code, x_hat, u_hat, systematic=systematic, single=single)


__all__ = [
    "FloatKernels",
    "SegmentNode",
    "SegmentTree",
    "build_segment_tree",
    "cached_segment_tree",
    "decode_fast",
    "decode_sc",
    "detect_shortcuts",
    "f_kernel",
    "g_kernel",
    "hard_decision",
    "pairwise_fold",
    "run_segment_tree",
    "shortcut_leaf",
    "wagner_decision",
]
