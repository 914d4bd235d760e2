"""Binary group cache.

Layout (little endian)::

    b"CBNV" | u16 version | u16 kind id | u32 kind parameter | u64 count
    | u32 key length | u32 generator count | u32 name length | name
    | keys (count * key length) | generator ordinals (u64 each)
    | parent (i64 each) | letter (i16 each) | u32 crc32 of all preceding bytes

Keys are stored in element order, so a reload reproduces every index.
"""
from __future__ import annotations

import os
import struct
import tempfile
import zlib
from pathlib import Path
from typing import Callable

import numpy as np

from .group import FiniteGroup
from .kinds import MatrixKind, PermKind
from .pauli import SymplecticKind

MAGIC = b"CBNV"
VERSION = 1
_HEAD = struct.Struct("<4sHHIQIII")
SUFFIX = ".cbnv"

_active_dir: Path | None = None
_built: dict[str, FiniteGroup] = {}     # groups built this process, by cache id


class CorruptCache(ValueError):
    pass


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _active_dir
    _active_dir = Path(path) if path is not None else None
    if _active_dir is not None:
        _active_dir.mkdir(parents=True, exist_ok=True)
        for gid, G in _built.items():
            if not group_path(gid).exists():
                save_group(G, group_path(gid))


def cache_dir() -> Path | None:
    return _active_dir


def _kind_param(G: FiniteGroup) -> int:
    k = G.kind
    if isinstance(k, PermKind):
        return k.degree
    if isinstance(k, MatrixKind):
        return k.n_qubits
    if isinstance(k, SymplecticKind):
        return k.n
    raise TypeError(f"groups of kind {k.name!r} are derived and not cached")


def _make_kind(kind_id: int, param: int):
    if kind_id == PermKind.kind_id:
        return PermKind(param)
    if kind_id in (2, 3):
        return MatrixKind(param, projective=kind_id == 3)
    if kind_id == SymplecticKind.kind_id:
        return SymplecticKind(param)
    raise CorruptCache(f"unknown kind id {kind_id}")


def dumps(G: FiniteGroup) -> bytes:
    param = _kind_param(G)
    if G.kind.array_based:
        blob = np.asarray(G.elements).astype(">u8").tobytes()
        klen = 8
    else:
        keys = G.keys()
        klen = len(keys[0])
        if any(len(k) != klen for k in keys):
            raise ValueError("keys of unequal length")
        blob = b"".join(keys)
    name = G.name.encode()
    parts = [_HEAD.pack(MAGIC, VERSION, G.kind.kind_id, param, G.order, klen,
                        len(G.gen_ords), len(name)),
             name, blob,
             np.asarray(G.gen_ords, dtype="<u8").tobytes(),
             G.parent.astype("<i8").tobytes(), G.letter.astype("<i2").tobytes()]
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


def loads(data: bytes) -> FiniteGroup:
    if len(data) < _HEAD.size + 4:
        raise CorruptCache("file truncated before header end")
    magic, version, kind_id, param, count, klen, ngens, nlen = _HEAD.unpack_from(data)
    if magic != MAGIC:
        raise CorruptCache(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptCache(f"format version {version}, this build reads version {VERSION}")
    expect = _HEAD.size + nlen + count * klen + 8 * ngens + 8 * count + 2 * count + 4
    if len(data) != expect:
        raise CorruptCache(f"size {len(data)} bytes, header implies {expect}")
    (crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(data[:-4]) != crc:
        raise CorruptCache("checksum mismatch")
    kind = _make_kind(kind_id, param)
    off = _HEAD.size
    name = data[off:off + nlen].decode()
    off += nlen
    blob = data[off:off + count * klen]
    off += count * klen
    gen_ords = np.frombuffer(data, "<u8", ngens, off).astype(np.int64)
    off += 8 * ngens
    parent = np.frombuffer(data, "<i8", count, off)
    off += 8 * count
    letter = np.frombuffer(data, "<i2", count, off)
    if kind.array_based:
        if klen != 8:
            raise CorruptCache(f"key length {klen} for an integer-keyed kind")
        elements = np.frombuffer(blob, ">u8").astype(kind.dtype)
        gens = [int(elements[g]) for g in gen_ords]
        G = FiniteGroup(kind, elements, gens, parent, letter, name=name)
    else:
        keys = [blob[i * klen:(i + 1) * klen] for i in range(count)]
        elements = [kind.from_key(k) for k in keys]
        gens = [elements[g] for g in gen_ords]
        G = FiniteGroup(kind, elements, gens, parent, letter, keys=keys, name=name)
    if G.gen_ords != gen_ords.tolist():
        raise CorruptCache("generator ordinals do not match stored keys")
    return G


def save_group(G: FiniteGroup, path: str | os.PathLike) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(dumps(G))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_group(path: str | os.PathLike) -> FiniteGroup:
    return loads(Path(path).read_bytes())


def group_path(group_id: str, directory: Path | None = None) -> Path:
    d = directory or _active_dir
    if d is None:
        raise ValueError("no cache directory configured")
    safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in group_id)
    return d / f"{safe}{SUFFIX}"


def load_or_build(group_id: str, builder: Callable[[], FiniteGroup]) -> FiniteGroup:
    """Use the active cache directory when set; a corrupt entry is rebuilt."""
    if _active_dir is None:
        G = _built[group_id] = builder()
        return G
    path = group_path(group_id)
    if path.exists():
        try:
            G = _built[group_id] = load_group(path)
            return G
        except CorruptCache:
            pass
    G = _built[group_id] = builder()
    save_group(G, path)
    return G


def roundtrip(G: FiniteGroup) -> bool:
    H = loads(dumps(G))
    return H.order == G.order and H.keys() == G.keys() and H.gen_ords == G.gen_ords


def check_dir(directory: str | os.PathLike) -> list[dict]:
    out = []
    for p in sorted(Path(directory).glob(f"*{SUFFIX}")):
        try:
            G = load_group(p)
            out.append({"file": p.name, "ok": True, "group": G.name, "order": G.order,
                        "kind_id": G.kind.kind_id})
        except CorruptCache as exc:
            out.append({"file": p.name, "ok": False, "error": str(exc)})
    return out
