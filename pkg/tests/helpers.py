"""Independent brute-force oracles and random-net builders for the tests.

Everything here recomputes expectations from first principles (dense
replay, BFS, all-pairs comparison) so the package's sparse fast paths are
checked against a second, unrelated route.
"""

from __future__ import annotations

import random
from collections import Counter

import numpy as np

from chainpetri import PlaceTransitionNet


def build_net(transactions, seal=True) -> PlaceTransitionNet:
    net = PlaceTransitionNet()
    for tx_id, inputs, outputs in transactions:
        net.record_transaction(tx_id, inputs, outputs)
    if seal:
        net.seal()
    return net


def dense_replay(transactions):
    """Naive dense model of the same stream: (addr_order, pre, post)."""
    index: dict[str, int] = {}
    order: list[str] = []
    for _, inputs, outputs in transactions:
        for addr in list(inputs) + list(outputs):
            if addr not in index:
                index[addr] = len(order)
                order.append(addr)
    m, n = len(order), len(transactions)
    pre = np.zeros((m, n), dtype=np.int64)
    post = np.zeros((m, n), dtype=np.int64)
    for j, (_, inputs, outputs) in enumerate(transactions):
        for addr in set(inputs):
            pre[index[addr], j] = 1
        for addr in set(outputs):
            post[index[addr], j] = 1
    return order, pre, post


def coinput_components(transactions, addr_order):
    """BFS connected components of the co-input graph, as a partition.

    Returns entity member lists sorted ascending, ordered by smallest
    member, covering every address in `addr_order` (isolated addresses are
    singletons).
    """
    index = {addr: i for i, addr in enumerate(addr_order)}
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(addr_order))}
    for _, inputs, _ in transactions:
        ids = sorted({index[a] for a in inputs})
        for other in ids[1:]:
            adjacency[ids[0]].add(other)
            adjacency[other].add(ids[0])
    seen: set[int] = set()
    partition = []
    for start in range(len(addr_order)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        component = []
        while queue:
            node = queue.pop()
            component.append(node)
            for peer in adjacency[node]:
                if peer not in seen:
                    seen.add(peer)
                    queue.append(peer)
        partition.append(sorted(component))
    return partition


def allpairs_repeat_groups(pre: np.ndarray, post: np.ndarray):
    """All-pairs column comparison over dense matrices; groups of size >= 2."""
    n = pre.shape[1]
    taken = [False] * n
    groups = []
    for i in range(n):
        if taken[i]:
            continue
        group = [i]
        for j in range(i + 1, n):
            if taken[j]:
                continue
            if np.array_equal(pre[:, i], pre[:, j]) and np.array_equal(post[:, i], post[:, j]):
                group.append(j)
                taken[j] = True
        taken[i] = True
        if len(group) >= 2:
            groups.append(group)
    return groups


def simulate_strict(transactions):
    """Independent running-utxo simulation; returns (accepted, rejected) tx ids."""
    received: Counter = Counter()
    spent: Counter = Counter()
    accepted, rejected = [], []
    for tx_id, inputs, outputs in transactions:
        distinct_in = set(inputs)
        if distinct_in and any(received[a] - spent[a] <= 0 for a in distinct_in):
            rejected.append(tx_id)
            continue
        accepted.append(tx_id)
        for a in distinct_in:
            spent[a] += 1
        for a in set(outputs):
            received[a] += 1
    return accepted, rejected


def random_transactions(rng: random.Random, n_tx: int, pool_size: int,
                        repeat_bias: float = 0.2, max_in: int = 3, max_out: int = 4):
    """Random stream over a small address pool; sometimes clones an earlier
    transaction's address sets so repeat groups actually occur."""
    pool = [f"p{i}" for i in range(pool_size)]
    txs = []
    for j in range(n_tx):
        if txs and rng.random() < repeat_bias:
            _, inputs, outputs = rng.choice(txs)
            txs.append((f"x{j}", list(inputs), list(outputs)))
            continue
        inputs = rng.sample(pool, k=rng.randint(0, min(max_in, pool_size)))
        outputs = rng.sample(pool, k=rng.randint(1, min(max_out, pool_size)))
        txs.append((f"x{j}", inputs, outputs))
    return txs
