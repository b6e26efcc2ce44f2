"""Flat-directory disk cache of expanded series, keyed by defining parameters.

Each cached series lives in one text file named by a hash of its logical
identity (kind + canonical parameter text + ring), deliberately excluding
the order: the file holds the highest-order expansion stored so far, and a
request at any lower order is served by truncation.  Files have two lines,
the identity text and the serialized series, and are written atomically
(temp file then rename) so concurrent writers can only race to equivalent
content.  Corrupt or foreign files are treated as misses with a warning.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from .qseries import CoefficientRing, TruncatedSeries
from .etaquotients import FAMILY_QUOTIENTS, EtaQuotient, FamilyName


@dataclass(frozen=True)
class CacheKey:
    """Logical identity of a cacheable expansion plus the requested order."""

    kind: str
    text: str
    ring: CoefficientRing
    order: int

    @classmethod
    def for_eta(cls, eq: EtaQuotient, ring: CoefficientRing, order: int) -> "CacheKey":
        return cls("eta", str(eq), ring, order)

    @classmethod
    def for_family(cls, name: FamilyName, ring: CoefficientRing, order: int) -> "CacheKey":
        # families canonicalize to their eta quotient so logically equal
        # requests share one entry
        return cls("eta", str(FAMILY_QUOTIENTS[name]), ring, order)

    @classmethod
    def for_mo(cls, a: int, t: int, method: str, ring: CoefficientRing, order: int) -> "CacheKey":
        return cls("mo", f"a={a} t={t} method={method}", ring, order)

    def identity_text(self) -> str:
        """Canonical identity line; the order is excluded by design."""
        return f"{self.kind}|{self.text}|{self.ring.descriptor()}"


def cache_path(cache_dir: str | os.PathLike, key: CacheKey) -> Path:
    digest = hashlib.sha256(key.identity_text().encode("utf-8")).hexdigest()
    return Path(cache_dir) / f"{digest}.series"


def cache_get(cache_dir: str | os.PathLike, key: CacheKey) -> TruncatedSeries | None:
    """Stored series truncated to the requested order, or None.

    A stored order below the requested one is an ordinary miss; anything
    unreadable or inconsistent is a miss with a warning.
    """
    path = cache_path(cache_dir, key)
    if not path.exists():
        return None
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
        if len(lines) < 2:
            raise ValueError("expected an identity line and a series line")
        if lines[0] != key.identity_text():
            raise ValueError("identity line does not match the requested key")
        series = TruncatedSeries.parse(lines[1])
        if series.ring != key.ring:
            raise ValueError("stored ring does not match the requested key")
    except (OSError, ValueError) as exc:
        warnings.warn(f"ignoring unusable cache file {path}: {exc}")
        return None
    if series.order < key.order:
        return None
    return series.truncate(key.order)


def cache_put(cache_dir: str | os.PathLike, key: CacheKey, series: TruncatedSeries) -> None:
    """Atomically store the series under the key's identity; last writer wins."""
    if series.ring != key.ring:
        raise ValueError("series ring does not match the cache key")
    if series.order < key.order:
        raise ValueError(f"series order {series.order} below key order {key.order}")
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(cache_dir, key)
    content = f"{key.identity_text()}\n{series.serialize()}\n"
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
