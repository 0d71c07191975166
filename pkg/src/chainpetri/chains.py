"""Disposable addresses and the chains of transactions they link.

A disposable address is used exactly twice: once to receive and once to
spend everything onward.  Chain transactions have a single disposable
input and exactly two outputs, one of which is usually the next
disposable hop; following those hops from each chain start reconstructs
the whole chain in execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ChainIntegrityError, NetNotSealedError
from .net import PlaceTransitionNet


@dataclass
class DisposableSets:
    """Disposable places plus the transitions and chain starts they induce."""

    addresses_d: set[int]
    transactions_d: set[int]
    starts_d: set[int]


@dataclass
class Chain:
    """Transitions of one chain in execution order.

    `bypassed` lists viable successors that were not followed when both
    outputs of a link were disposable and spent by chain transactions
    (the smaller transition id wins).
    """

    links: list[int]
    bypassed: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.links)


def disposable_addresses(net: PlaceTransitionNet) -> set[int]:
    """Places with exactly one pre-arc and exactly one post-arc."""
    if not net.sealed:
        raise NetNotSealedError("disposable_addresses requires a sealed net")
    mask = (net.pre.row_nnz_all() == 1) & (net.post.row_nnz_all() == 1)
    return set(np.nonzero(mask)[0].tolist())


def disposable_transactions(net: PlaceTransitionNet, addresses_d: set[int]) -> DisposableSets:
    """Select the chain transactions and the subset that starts a chain.

    A chain transaction has one input (a disposable address) and two
    outputs, at least one disposable.  A start is a chain transaction whose
    funding transaction is not itself a chain transaction.
    """
    if not net.sealed:
        raise NetNotSealedError("disposable_transactions requires a sealed net")
    mask = np.zeros(net.num_places, dtype=bool)
    if addresses_d:
        mask[list(addresses_d)] = True

    candidates = np.nonzero((net.pre.col_nnz_all() == 1) & (net.post.col_nnz_all() == 2))[0]
    transactions_d = set()
    for t in candidates.tolist():
        in_rows, _ = net.pre.column_entries(t)
        if not mask[in_rows[0]]:
            continue
        out_rows, _ = net.post.column_entries(t)
        if mask[out_rows[0]] or mask[out_rows[1]]:
            transactions_d.add(t)

    starts_d = set()
    for t in transactions_d:
        in_rows, _ = net.pre.column_entries(t)
        # the input is disposable, so its post row holds exactly the funder
        funder_cols, _ = net.post.row_entries(int(in_rows[0]))
        if int(funder_cols[0]) not in transactions_d:
            starts_d.add(t)
    return DisposableSets(set(addresses_d), transactions_d, starts_d)


def build_chains(net: PlaceTransitionNet, sets: DisposableSets) -> list[Chain]:
    """One chain per start, extended link by link until no successor remains.

    Chains are returned sorted by descending length, ties by first link id.
    Raises ChainIntegrityError if successors revisit a transaction, which
    cannot happen on temporally valid input.
    """
    if not net.sealed:
        raise NetNotSealedError("build_chains requires a sealed net")
    used: set[int] = set()
    chains = []
    for start in sorted(sets.starts_d):
        if start in used:
            raise ChainIntegrityError(f"start {start} already belongs to a chain")
        used.add(start)
        chain = Chain([start])
        current = start
        while True:
            successor = _next_link(net, current, sets, chain.bypassed)
            if successor is None:
                break
            if successor in used:
                raise ChainIntegrityError(
                    f"transition {successor} reached twice; successor cycle"
                )
            used.add(successor)
            chain.links.append(successor)
            current = successor
        chains.append(chain)
    chains.sort(key=lambda c: (-len(c.links), c.links[0]))
    return chains


def _next_link(net, transition, sets, bypassed) -> int | None:
    candidates = []
    out_rows, _ = net.post.column_entries(transition)
    for place in out_rows.tolist():
        if place not in sets.addresses_d:
            continue
        spender_cols, _ = net.pre.row_entries(place)  # exactly one: disposable
        spender = int(spender_cols[0])
        if spender in sets.transactions_d:
            candidates.append(spender)
    if not candidates:
        return None
    candidates.sort()
    bypassed.extend(candidates[1:])
    return candidates[0]


def chain_report(net: PlaceTransitionNet, chains: list[Chain]) -> list[dict]:
    """Report rows sorted by descending length (the build_chains order).

    Addresses are the disposable path: each link's input plus the last
    link's disposable outputs.
    """
    rows = []
    for chain in chains:
        addresses = []
        for t in chain.links:
            in_rows, _ = net.pre.column_entries(t)
            addresses.append(net.address_of(int(in_rows[0])))
        out_rows, _ = net.post.column_entries(chain.links[-1])
        for place in out_rows.tolist():
            if net.pre.row_nnz(place) == 1 and net.post.row_nnz(place) == 1:
                addresses.append(net.address_of(place))
        rows.append(
            {
                "length": len(chain.links),
                "transactions": [net.tx_id_of(t) for t in chain.links],
                "addresses": addresses,
            }
        )
    return rows
