"""Graph file formats.

- DIMACS shortest-path format (.gr): ``p sp n m`` header, ``a u v w`` arc
  lines with 1-based ids.  Arcs are symmetrized and parallel arcs collapse
  to minimum weight.  Weights may be floats (written back at full
  precision), which is a superset of the classic integer format.
- Whitespace/tab-separated edge lists: ``u v [w]`` with 0-based ids; ids
  are padded to dense 0..max.
- Binary cache: versioned header (magic, version, n, m) + CSR payload with
  a CRC32 checksum; round-trips bit-exactly.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .errors import CacheError, ParseError, ValidationError
from .graph import Graph, build_graph

__all__ = [
    "load_dimacs_gr",
    "save_dimacs_gr",
    "load_edge_list",
    "save_cache",
    "load_cache",
    "load_graph_file",
    "save_graph_file",
]

_CACHE_MAGIC = b"CDG\x01"
_CACHE_VERSION = 1


def load_dimacs_gr(path: str | Path) -> Graph:
    """Parse a DIMACS .gr file into a :class:`Graph`."""
    n = m_declared = None
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise ParseError("duplicate problem line", lineno)
                if len(parts) != 4 or parts[1] != "sp":
                    raise ParseError("problem line must be 'p sp <n> <m>'", lineno)
                try:
                    n, m_declared = int(parts[2]), int(parts[3])
                except ValueError:
                    raise ParseError("non-integer sizes in problem line", lineno) from None
            elif parts[0] == "a":
                if n is None:
                    raise ParseError("arc before problem line", lineno)
                if len(parts) != 4:
                    raise ParseError("arc line must be 'a <u> <v> <w>'", lineno)
                try:
                    u, v, w = int(parts[1]), int(parts[2]), float(parts[3])
                except ValueError:
                    raise ParseError("malformed arc line", lineno) from None
                if not (1 <= u <= n and 1 <= v <= n):
                    raise ValidationError(f"line {lineno}: arc endpoint out of range 1..{n}")
                if not (w > 0.0) or not np.isfinite(w):
                    raise ValidationError(f"line {lineno}: arc weight must be finite and > 0")
                us.append(u - 1)
                vs.append(v - 1)
                ws.append(w)
            else:
                raise ParseError(f"unknown record type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line", None)
    g = build_graph(
        n,
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.array(ws, dtype=np.float64),
        meta={"name": Path(path).name, "format": "dimacs", "arcs_declared": m_declared},
    )
    return g


def save_dimacs_gr(g: Graph, path: str | Path) -> None:
    """Write each undirected edge as one arc line (full float precision)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p sp {g.n} {g.m}\n")
        for u, v, w in zip(g.edge_u, g.edge_v, g.edge_w):
            fh.write(f"a {u + 1} {v + 1} {float(w)!r}\n")


def load_edge_list(path: str | Path, weighted: bool | None = None) -> Graph:
    """Parse a whitespace-separated ``u v [w]`` edge list, 0-based ids.

    ``weighted=None`` sniffs the first data row.  Unweighted rows get unit
    placeholder weights (assign a WeightModel afterwards).
    """
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if weighted is None:
                weighted = len(parts) >= 3
            expected = 3 if weighted else 2
            if len(parts) != expected:
                raise ParseError(f"expected {expected} columns", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
                w = float(parts[2]) if weighted else 1.0
            except ValueError:
                raise ParseError("malformed edge row", lineno) from None
            if u < 0 or v < 0:
                raise ValidationError(f"line {lineno}: ids must be >= 0")
            if not (w > 0.0) or not np.isfinite(w):
                raise ValidationError(f"line {lineno}: weight must be finite and > 0")
            us.append(u)
            vs.append(v)
            ws.append(w)
    if not us:
        raise ParseError("empty edge list", None)
    n = int(max(max(us), max(vs))) + 1
    return build_graph(
        n,
        np.array(us, dtype=np.int64),
        np.array(vs, dtype=np.int64),
        np.array(ws, dtype=np.float64),
        meta={"name": Path(path).name, "format": "edge-list"},
    )


def save_cache(g: Graph, path: str | Path) -> None:
    """Write the binary cache: header + CRC32-checksummed CSR payload."""
    payload = b"".join(
        [
            np.ascontiguousarray(g.edge_u).tobytes(),
            np.ascontiguousarray(g.edge_v).tobytes(),
            np.ascontiguousarray(g.edge_w).tobytes(),
        ]
    )
    header = _CACHE_MAGIC + struct.pack("<IQQ", _CACHE_VERSION, g.n, g.m)
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(struct.pack("<I", crc))
        fh.write(payload)


def load_cache(path: str | Path) -> Graph:
    """Read the binary cache written by :func:`save_cache`."""
    blob = Path(path).read_bytes()
    head_len = len(_CACHE_MAGIC) + struct.calcsize("<IQQ") + 4
    if len(blob) < head_len or blob[: len(_CACHE_MAGIC)] != _CACHE_MAGIC:
        raise CacheError(f"{path}: not a graph cache file")
    version, n, m = struct.unpack_from("<IQQ", blob, len(_CACHE_MAGIC))
    if version != _CACHE_VERSION:
        raise CacheError(f"{path}: unsupported cache version {version}")
    (crc,) = struct.unpack_from("<I", blob, len(_CACHE_MAGIC) + struct.calcsize("<IQQ"))
    payload = blob[head_len:]
    if len(payload) != m * (8 + 8 + 8):
        raise CacheError(f"{path}: truncated payload")
    if (zlib.crc32(payload) & 0xFFFFFFFF) != crc:
        raise CacheError(f"{path}: checksum mismatch")
    eu = np.frombuffer(payload[: 8 * m], dtype=np.int64)
    ev = np.frombuffer(payload[8 * m : 16 * m], dtype=np.int64)
    ew = np.frombuffer(payload[16 * m :], dtype=np.float64)
    return build_graph(int(n), eu, ev, ew, meta={"name": Path(path).name, "format": "cache"})


def load_graph_file(path: str | Path) -> Graph:
    """Dispatch on extension: .gr DIMACS, .cdg cache, anything else TSV."""
    suffix = Path(path).suffix.lower()
    if suffix == ".gr":
        return load_dimacs_gr(path)
    if suffix == ".cdg":
        return load_cache(path)
    return load_edge_list(path)


def save_graph_file(g: Graph, path: str | Path) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".gr":
        save_dimacs_gr(g, path)
    elif suffix == ".cdg":
        save_cache(g, path)
    else:
        raise ValidationError(f"unsupported output format {suffix!r} (use .gr or .cdg)")
