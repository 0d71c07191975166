"""Place/transition net over a ledger: registries plus sparse pre/post incidence.

Addresses become places, transactions become transitions.  Construction is
single-writer (intern/record); `seal()` freezes the net, after which every
query is read-only and safe to share across threads.
"""

from __future__ import annotations

import json
import os
from array import array

import numpy as np
from scipy import sparse

from .errors import (
    DuplicateTransactionError,
    MalformedTransactionError,
    NetNotSealedError,
    NetSealedError,
    SnapshotError,
)

SNAPSHOT_VERSION = 1

ADDRESS_LEVEL = "address"
ENTITY_LEVEL = "entity"


class SparseIncidence:
    """Sparse nonnegative-integer matrix with row and column iteration.

    Columns are appended in order during construction (values implicitly 1);
    sealing builds compressed column and row forms so that both scan
    directions are O(entries touched).  Zero entries are never stored.
    """

    def __init__(self):
        # Build phase is column-major append-only: _indices holds row ids,
        # _indptr the per-column offsets, _row_counts the running row nnz.
        self._indices: array | None = array("q")
        self._indptr: array | None = array("q", [0])
        self._row_counts: array | None = array("q")
        self._csr = None
        self._csc = None
        self._row_nnz_arr: np.ndarray | None = None

    # -- construction ------------------------------------------------------

    def add_row(self):
        self._row_counts.append(0)

    def append_column(self, rows):
        """Append one column; `rows` must be strictly increasing row ids."""
        self._indices.extend(rows)
        self._indptr.append(len(self._indices))
        counts = self._row_counts
        for r in rows:
            counts[r] += 1

    def seal(self, num_rows: int):
        if self._csc is not None:
            return
        indices = np.asarray(self._indices, dtype=np.int64)
        indptr = np.asarray(self._indptr, dtype=np.int64)
        data = np.ones(len(indices), dtype=np.int64)
        csc = sparse.csc_matrix(
            (data, indices, indptr), shape=(num_rows, len(indptr) - 1)
        )
        self._install(csc.tocsr(), csc)

    @classmethod
    def from_csr(cls, matrix) -> "SparseIncidence":
        """Wrap an existing sparse matrix (sealed immediately).

        Entries must be positive integers; zeros are pruned.
        """
        csr = sparse.csr_matrix(matrix, dtype=np.int64, copy=True)
        csr.sum_duplicates()
        csr.eliminate_zeros()
        csr.sort_indices()
        if csr.nnz and csr.data.min() < 1:
            raise ValueError("incidence entries must be positive")
        inc = cls()
        inc._install(csr, csr.tocsc())
        return inc

    def _install(self, csr, csc):
        self._csr = csr
        self._csc = csc
        self._row_nnz_arr = np.diff(csr.indptr)
        self._row_nnz_arr.flags.writeable = False
        self._indices = self._indptr = self._row_counts = None

    # -- queries -----------------------------------------------------------

    @property
    def sealed(self) -> bool:
        return self._csc is not None

    @property
    def num_rows(self) -> int:
        if self.sealed:
            return self._csr.shape[0]
        return len(self._row_counts)

    @property
    def num_cols(self) -> int:
        if self.sealed:
            return self._csr.shape[1]
        return len(self._indptr) - 1

    @property
    def nnz(self) -> int:
        if self.sealed:
            return int(self._csr.nnz)
        return len(self._indices)

    def row_nnz(self, row: int) -> int:
        if not 0 <= row < self.num_rows:
            raise IndexError(f"row {row} out of range (0..{self.num_rows - 1})")
        if self.sealed:
            return int(self._row_nnz_arr[row])
        return self._row_counts[row]

    def row_nnz_all(self) -> np.ndarray:
        """Per-row entry counts as one array (sealed nets only)."""
        self._require_sealed()
        return self._row_nnz_arr

    def column_entries(self, col: int) -> tuple[np.ndarray, np.ndarray]:
        """Row ids and values stored in one column."""
        if not 0 <= col < self.num_cols:
            raise IndexError(f"column {col} out of range (0..{self.num_cols - 1})")
        if self.sealed:
            csc = self._csc
            lo, hi = csc.indptr[col], csc.indptr[col + 1]
            return csc.indices[lo:hi], csc.data[lo:hi]
        lo, hi = self._indptr[col], self._indptr[col + 1]
        rows = np.asarray(self._indices[lo:hi], dtype=np.int64)
        return rows, np.ones(len(rows), dtype=np.int64)

    def row_entries(self, row: int) -> tuple[np.ndarray, np.ndarray]:
        """Column ids and values stored in one row (sealed nets only)."""
        self._require_sealed()
        if not 0 <= row < self.num_rows:
            raise IndexError(f"row {row} out of range (0..{self.num_rows - 1})")
        csr = self._csr
        lo, hi = csr.indptr[row], csr.indptr[row + 1]
        return csr.indices[lo:hi], csr.data[lo:hi]

    def col_nnz_all(self) -> np.ndarray:
        """Per-column entry counts as one array (sealed nets only)."""
        self._require_sealed()
        return np.diff(self._csc.indptr)

    def tocsr(self):
        self._require_sealed()
        return self._csr

    def tocsc(self):
        self._require_sealed()
        return self._csc

    def toarray(self) -> np.ndarray:
        if self.sealed:
            return self._csr.toarray()
        dense = np.zeros((self.num_rows, self.num_cols), dtype=np.int64)
        for col in range(self.num_cols):
            lo, hi = self._indptr[col], self._indptr[col + 1]
            for r in self._indices[lo:hi]:
                dense[r, col] = 1
        return dense

    def triplets(self) -> list[list[int]]:
        """All entries as [row, col, value] sorted by row then col."""
        self._require_sealed()
        csr = self._csr
        rows = np.repeat(np.arange(csr.shape[0], dtype=np.int64), np.diff(csr.indptr))
        return np.column_stack([rows, csr.indices, csr.data]).tolist()

    def _require_sealed(self):
        if not self.sealed:
            raise NetNotSealedError("operation requires a sealed incidence structure")


class PlaceTransitionNet:
    """Bipartite incidence model: places (addresses) x transitions (transactions).

    Address-level nets are binary (every stored entry is 1); entity-level nets
    built by row summation may hold larger values.
    """

    def __init__(self, level: str = ADDRESS_LEVEL):
        if level not in (ADDRESS_LEVEL, ENTITY_LEVEL):
            raise ValueError(f"unknown net level {level!r}")
        self._level = level
        self._place_index: dict[str, int] = {}
        self._place_names: list[str] = []
        self._tx_index: dict[str, int] = {}
        self._tx_names: list[str] = []
        self.pre = SparseIncidence()
        self.post = SparseIncidence()
        self._sealed = False

    @classmethod
    def _assemble(cls, place_names, tx_names, pre: SparseIncidence,
                  post: SparseIncidence, level: str) -> "PlaceTransitionNet":
        """Build an already-sealed net from finished parts."""
        net = cls(level=level)
        net._place_names = list(place_names)
        net._place_index = {name: i for i, name in enumerate(net._place_names)}
        net._tx_names = list(tx_names)
        net._tx_index = {name: i for i, name in enumerate(net._tx_names)}
        net.pre = pre
        net.post = post
        net._sealed = True
        return net

    # -- registry ----------------------------------------------------------

    @property
    def level(self) -> str:
        return self._level

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def num_places(self) -> int:
        return len(self._place_names)

    @property
    def num_transitions(self) -> int:
        return len(self._tx_names)

    @property
    def place_names(self) -> list[str]:
        return self._place_names

    @property
    def transaction_ids(self) -> list[str]:
        return self._tx_names

    def address_of(self, place: int) -> str:
        return self._place_names[place]

    def place_of(self, addr: str) -> int:
        return self._place_index[addr]

    def lookup_place(self, addr: str) -> int | None:
        return self._place_index.get(addr)

    def tx_id_of(self, transition: int) -> str:
        return self._tx_names[transition]

    def transition_of(self, tx_id: str) -> int:
        return self._tx_index[tx_id]

    # -- construction ------------------------------------------------------

    def intern_address(self, addr: str) -> int:
        """Return the place id for `addr`, allocating the next id if new."""
        if self._sealed:
            raise NetSealedError("cannot intern addresses on a sealed net")
        idx = self._place_index.get(addr)
        if idx is None:
            if not addr:
                raise ValueError("address must be a non-empty string")
            idx = len(self._place_names)
            self._place_index[addr] = idx
            self._place_names.append(addr)
            self.pre.add_row()
            self.post.add_row()
        return idx

    def record_transaction(self, tx_id: str, inputs, outputs) -> int:
        """Record one transaction: pre-arcs from inputs, post-arcs to outputs.

        Duplicate addresses within one side collapse to a single arc of
        weight 1.  Empty `inputs` marks a coinbase; `outputs` must be
        non-empty.  Returns the new transition id.
        """
        if self._sealed:
            raise NetSealedError("cannot record transactions on a sealed net")
        if not outputs:
            raise MalformedTransactionError(f"transaction {tx_id!r} has no outputs")
        if not tx_id:
            raise MalformedTransactionError("transaction id must be non-empty")
        if tx_id in self._tx_index:
            raise DuplicateTransactionError(f"transaction {tx_id!r} already recorded")
        t = len(self._tx_names)
        self._tx_index[tx_id] = t
        self._tx_names.append(tx_id)
        self.pre.append_column(self._intern_distinct(inputs))
        self.post.append_column(self._intern_distinct(outputs))
        return t

    def _intern_distinct(self, addrs) -> list[int]:
        ids = {self.intern_address(a) for a in addrs}
        return sorted(ids)

    def seal(self) -> "PlaceTransitionNet":
        """Freeze the net; all analytics require a sealed net.  Idempotent."""
        if not self._sealed:
            m = self.num_places
            self.pre.seal(m)
            self.post.seal(m)
            self._sealed = True
        return self

    # -- queries -----------------------------------------------------------

    def incidence(self, side: str) -> SparseIncidence:
        if side == "pre":
            return self.pre
        if side == "post":
            return self.post
        raise ValueError(f"side must be 'pre' or 'post', got {side!r}")

    def row_nnz(self, side: str, place: int) -> int:
        """Number of distinct transitions connected to `place` on `side`."""
        return self.incidence(side).row_nnz(place)

    def column_places(self, side: str, transition: int) -> set[int]:
        """Places with a nonzero entry in the transition's column on `side`."""
        rows, _ = self.incidence(side).column_entries(transition)
        return set(int(r) for r in rows)

    def utxo_count(self, place: int) -> int:
        """Receives minus spends under the binary model (address nets only)."""
        if self._level != ADDRESS_LEVEL:
            raise ValueError("utxo_count is defined on address-level nets only")
        return self.post.row_nnz(place) - self.pre.row_nnz(place)

    def __repr__(self):
        state = "sealed" if self._sealed else "building"
        return (f"<PlaceTransitionNet level={self._level} places={self.num_places} "
                f"transitions={self.num_transitions} {state}>")

    # -- snapshot persistence -----------------------------------------------

    def save_snapshot(self, destination):
        """Write the net as a single JSON document (sealed address nets only)."""
        if not self._sealed:
            raise NetNotSealedError("snapshots require a sealed net")
        if self._level != ADDRESS_LEVEL:
            raise ValueError("snapshots are defined for address-level nets only")
        doc = {
            "version": SNAPSHOT_VERSION,
            "places": self._place_names,
            "transitions": self._tx_names,
            "pre": self.pre.triplets(),
            "post": self.post.triplets(),
        }
        if hasattr(destination, "write"):
            json.dump(doc, destination, ensure_ascii=False, separators=(",", ":"))
        else:
            tmp = f"{destination}.tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, ensure_ascii=False, separators=(",", ":"))
            os.replace(tmp, destination)


def load_snapshot(source) -> PlaceTransitionNet:
    """Load a snapshot written by `save_snapshot`; returns a sealed net.

    Raises SnapshotError naming the offending section on any corruption.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"not a valid JSON document: {exc.msg}", "document") from exc

    if not isinstance(doc, dict):
        raise SnapshotError("top level must be an object", "document")
    expected = {"version", "places", "transitions", "pre", "post"}
    missing = expected - doc.keys()
    if missing:
        raise SnapshotError(f"missing field(s) {sorted(missing)}", "document")
    extra = doc.keys() - expected
    if extra:
        raise SnapshotError(f"unexpected field(s) {sorted(extra)}", "document")
    if doc["version"] != SNAPSHOT_VERSION:
        raise SnapshotError(
            f"unsupported version {doc['version']!r} (expected {SNAPSHOT_VERSION})",
            "version",
        )

    places = _check_names(doc["places"], "places")
    transitions = _check_names(doc["transitions"], "transitions")
    pre = _check_triplets(doc["pre"], "pre", len(places), len(transitions))
    post = _check_triplets(doc["post"], "post", len(places), len(transitions))
    return PlaceTransitionNet._assemble(places, transitions, pre, post, ADDRESS_LEVEL)


def _check_names(value, section: str) -> list[str]:
    if not isinstance(value, list):
        raise SnapshotError("must be an array", section)
    for name in value:
        if not isinstance(name, str) or not name:
            raise SnapshotError(f"invalid entry {name!r}", section)
    if len(set(value)) != len(value):
        raise SnapshotError("entries are not unique", section)
    return value


def _check_triplets(value, section: str, num_rows: int, num_cols: int) -> SparseIncidence:
    if not isinstance(value, list):
        raise SnapshotError("must be an array of [row, col, value]", section)
    if not value:
        trip = np.empty((0, 3), dtype=np.int64)
    else:
        try:
            trip = np.array(value)
        except ValueError as exc:
            raise SnapshotError("ragged triplet array", section) from exc
        if trip.ndim != 2 or trip.shape[1] != 3 or trip.dtype.kind != "i":
            raise SnapshotError("entries must be integer [row, col, value] triplets", section)
    rows, cols, vals = trip[:, 0], trip[:, 1], trip[:, 2]
    if len(rows):
        if rows.min() < 0 or rows.max() >= num_rows:
            raise SnapshotError("row index out of range", section)
        if cols.min() < 0 or cols.max() >= num_cols:
            raise SnapshotError("column index out of range", section)
    if np.any(vals != 1):
        raise SnapshotError("address-level entries must all equal 1", section)
    key = rows * max(num_cols, 1) + cols
    if len(key) > 1 and np.any(np.diff(key) <= 0):
        raise SnapshotError("triplets must be strictly sorted by row then col", section)
    csr = sparse.csr_matrix((vals, (rows, cols)), shape=(num_rows, num_cols), dtype=np.int64)
    return SparseIncidence.from_csr(csr)
