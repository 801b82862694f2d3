"""Concentric circles compression codec."""

from ._ccz import (
    ArchiveError,
    CorruptArchive,
    Run,
    bench,
    compress,
    compression_factor,
    decompress,
    detect_runs,
    encode,
    pack_flags,
    position_of,
    rle_decode,
    rle_encode,
    split_circles,
    unpack_flags,
)

__all__ = [
    "ArchiveError",
    "CorruptArchive",
    "Run",
    "bench",
    "compress",
    "compression_factor",
    "decompress",
    "detect_runs",
    "encode",
    "pack_flags",
    "position_of",
    "rle_decode",
    "rle_encode",
    "split_circles",
    "unpack_flags",
]
