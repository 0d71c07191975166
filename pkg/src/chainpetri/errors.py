"""Exception types raised across the package."""

from __future__ import annotations


class ChainPetriError(Exception):
    """Base class for all package-specific errors."""


class NetSealedError(ChainPetriError):
    """Mutation attempted on a net that has already been sealed."""


class NetNotSealedError(ChainPetriError):
    """Operation that requires a sealed net was called during construction."""


class MalformedTransactionError(ChainPetriError):
    """Transaction violates the structural rules (e.g. empty output list)."""


class DuplicateTransactionError(ChainPetriError):
    """Transaction identifier was already recorded in the net."""


class SnapshotError(ChainPetriError):
    """Snapshot cannot be read; ``section`` names the offending part."""

    def __init__(self, message: str, section: str = "document"):
        super().__init__(f"{section}: {message}")
        self.section = section


class BlockParseError(ChainPetriError):
    """Block text is not valid JSON; ``offset`` is the failing position."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class BlockValidationError(ChainPetriError):
    """Block JSON parsed but violates the schema; carries the tx id if known."""

    def __init__(self, message: str, tx_id: str | None = None):
        super().__init__(message if tx_id is None else f"transaction {tx_id!r}: {message}")
        self.tx_id = tx_id


class BlockOrderingError(ChainPetriError):
    """Block heights in an ingest stream are not strictly increasing."""


class GeneratorConfigError(ChainPetriError):
    """Synthetic generator configuration is invalid or contradictory."""


class PartitionMismatchError(ChainPetriError):
    """Entity partition does not cover the net it is applied to."""


class ChainIntegrityError(ChainPetriError):
    """Cycle among chain successors; input was not temporally valid."""
