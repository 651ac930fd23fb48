"""Beneš permutation networks routed with the looping algorithm.

A network on ``N = 2**k`` lines is a list of stages; each stage is a list of
``(line_a, line_b, setting)`` 2x2 elements acting on disjoint lines.  A set
element exchanges the contents of its two lines.  The upper subnetwork lives
on the even positions of its parent's lines and the lower one on the odd
positions, so no fixed rewiring between stages is needed.

Permutations map source line to destination line: ``perm[src] = dst``.
"""
from __future__ import annotations

Element = tuple[int, int, bool]


def check_permutation(perm, n: int | None = None) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if n is not None and len(perm) != n:
        raise ValueError(f"permutation has {len(perm)} entries, expected {n}")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
    return perm


def _route(lines: list[int], perm: list[int]) -> list[list[Element]]:
    m = len(lines)
    if m == 2:
        return [[(lines[0], lines[1], perm[0] != 0)]]

    inv = [0] * m
    for x, o in enumerate(perm):
        inv[o] = x
    upper = [None] * m  # per input position: True -> upper subnetwork
    for start in range(0, m, 2):
        if upper[start] is not None:
            continue
        x = start
        while upper[x] is None:
            upper[x] = True
            upper[x ^ 1] = False
            # the input sharing x's output element must use the other subnetwork
            y = inv[perm[x] ^ 1]
            if upper[y] is not None:
                break
            upper[y] = False
            x = y ^ 1

    half = m // 2
    in_stage = [(lines[2 * i], lines[2 * i + 1], not upper[2 * i]) for i in range(half)]
    sub_u, sub_l = [0] * half, [0] * half
    out_set = [False] * half
    for x in range(m):
        o = perm[x]
        if upper[x]:
            sub_u[x // 2] = o // 2
            out_set[o // 2] = o % 2 == 1
        else:
            sub_l[x // 2] = o // 2
    out_stage = [(lines[2 * j], lines[2 * j + 1], out_set[j]) for j in range(half)]

    inner_u = _route(lines[0::2], sub_u)
    inner_l = _route(lines[1::2], sub_l)
    middle = [a + b for a, b in zip(inner_u, inner_l)]
    return [in_stage, *middle, out_stage]


def benes_network(perm) -> list[list[Element]]:
    """Element settings realizing ``perm``; ``2*log2(N) - 1`` stages."""
    perm = check_permutation(perm)
    n = len(perm)
    if n < 2 or n & (n - 1):
        raise ValueError(f"number of ports must be a power of two >= 2, got {n}")
    return _route(list(range(n)), list(perm))


def apply_network(network: list[list[Element]], items: list) -> list:
    """Push ``items`` (indexed by input line) through the network."""
    items = list(items)
    for stage in network:
        for a, b, s in stage:
            if s:
                items[a], items[b] = items[b], items[a]
    return items
