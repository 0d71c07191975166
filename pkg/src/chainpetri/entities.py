"""Owner entities: places clustered by shared-input co-occurrence.

All input addresses of one transaction must be controlled by the same
owner, so two places belong to the same entity exactly when they are
connected in the graph whose edges join places co-occurring in some
transaction's input set.  Places never used as inputs become singleton
entities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import NetNotSealedError, PartitionMismatchError
from .net import ADDRESS_LEVEL, ENTITY_LEVEL, PlaceTransitionNet, SparseIncidence


@dataclass
class EntityPartition:
    """Disjoint place groups covering all places of the source net.

    `entities` is ordered by smallest member id, members ascending;
    `place_to_entity[p]` is the index into `entities` that contains p.
    """

    entities: list[list[int]]
    place_to_entity: np.ndarray


@dataclass
class EntityNet:
    """Entity-level net (one place per entity, transitions shared)."""

    net: PlaceTransitionNet
    member_map: list[list[int]]


def compute_entities(net: PlaceTransitionNet) -> EntityPartition:
    """Partition places into entities via union-find over input columns."""
    if not net.sealed:
        raise NetNotSealedError("compute_entities requires a sealed net")
    if net.level != ADDRESS_LEVEL:
        raise ValueError("compute_entities runs on address-level nets")

    m = net.num_places
    parent = list(range(m))
    rank = bytearray(m)

    csc = net.pre.tocsc()
    indptr = csc.indptr
    indices = csc.indices
    multi = np.nonzero(np.diff(indptr) >= 2)[0]
    for col in multi.tolist():
        rows = indices[indptr[col]:indptr[col + 1]].tolist()
        root = _find(parent, rows[0])
        for p in rows[1:]:
            other = _find(parent, p)
            if other == root:
                continue
            # union by rank
            if rank[root] < rank[other]:
                root, other = other, root
            parent[other] = root
            if rank[root] == rank[other]:
                if rank[root] < 255:
                    rank[root] += 1

    # Scanning places in ascending order makes each group's first member its
    # minimum, and dict insertion order sorts entities by that minimum.
    groups: dict[int, list[int]] = {}
    for p in range(m):
        r = _find(parent, p)
        bucket = groups.get(r)
        if bucket is None:
            groups[r] = [p]
        else:
            bucket.append(p)

    entities = list(groups.values())
    place_to_entity = np.empty(m, dtype=np.int64)
    for index, members in enumerate(entities):
        for p in members:
            place_to_entity[p] = index
    return EntityPartition(entities, place_to_entity)


def _find(parent, x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]  # path halving
        x = parent[x]
    return x


def build_entity_net(net: PlaceTransitionNet, partition: EntityPartition) -> EntityNet:
    """Sum member rows of the partition into entity-level pre/post matrices."""
    if not net.sealed:
        raise NetNotSealedError("build_entity_net requires a sealed net")
    if net.level != ADDRESS_LEVEL:
        raise ValueError("build_entity_net runs on address-level nets")
    _check_partition(partition, net.num_places)

    k = len(partition.entities)
    m = net.num_places
    sizes = np.fromiter((len(e) for e in partition.entities), dtype=np.int64, count=k)
    flat = np.fromiter(
        (p for members in partition.entities for p in members),
        dtype=np.int64,
        count=int(sizes.sum()),
    )
    indptr = np.concatenate([[0], np.cumsum(sizes)])
    selector = sparse.csr_matrix(
        (np.ones(len(flat), dtype=np.int64), flat, indptr), shape=(k, m)
    )

    pre = SparseIncidence.from_csr(selector @ net.pre.tocsr())
    post = SparseIncidence.from_csr(selector @ net.post.tocsr())
    entity_names = [f"e{i}" for i in range(k)]
    entity_net = PlaceTransitionNet._assemble(
        entity_names, net.transaction_ids, pre, post, ENTITY_LEVEL
    )
    return EntityNet(entity_net, [list(members) for members in partition.entities])


def _check_partition(partition: EntityPartition, num_places: int):
    if len(partition.place_to_entity) != num_places:
        raise PartitionMismatchError(
            f"partition maps {len(partition.place_to_entity)} places, net has {num_places}"
        )
    flat = np.fromiter(
        (p for members in partition.entities for p in members), dtype=np.int64
    )
    if len(flat) != num_places:
        raise PartitionMismatchError("entity members do not cover the net's places")
    if len(flat) and (flat.min() < 0 or flat.max() >= num_places):
        raise PartitionMismatchError("entity member id out of range")
    if len(flat) and np.any(np.bincount(flat, minlength=num_places) != 1):
        raise PartitionMismatchError("entities are not disjoint or miss places")


def cyclic_transitions(net: PlaceTransitionNet) -> list[int]:
    """Transitions with some place on both sides (inputs and outputs).

    At the entity level these mark owners moving funds between their own
    addresses.
    """
    if not net.sealed:
        raise NetNotSealedError("cyclic_transitions requires a sealed net")
    cyclic = []
    for t in range(net.num_transitions):
        pre_rows, _ = net.pre.column_entries(t)
        post_rows, _ = net.post.column_entries(t)
        if len(np.intersect1d(pre_rows, post_rows, assume_unique=True)):
            cyclic.append(t)
    return cyclic


def entity_report(partition: EntityPartition, net: PlaceTransitionNet) -> list[dict]:
    """Report rows sorted by descending size, ties by entity index."""
    rows = [
        {
            "entity": index,
            "size": len(members),
            "addresses": [net.address_of(p) for p in members],
        }
        for index, members in enumerate(partition.entities)
    ]
    rows.sort(key=lambda r: (-r["size"], r["entity"]))
    return rows
