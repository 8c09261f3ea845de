"""Segmented sieves for the Möbius function, ω(n) and the Mertens function.

Tables are 1-indexed numpy arrays of length ``limit + 1``; slot 0 is unused
and always holds 0.  The sieve processes blocks of ``block_size`` integers
independently, so memory per block stays bounded and blocks may be handed to
separate workers without changing the result.

Memory budget: one signed byte per integer for μ and one unsigned byte for ω,
so a table at the default maximum of 10**8 costs about 100 MB each.  The
Mertens prefix is int64 (800 MB at 10**8).
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_MAX_LIMIT = 10**8
DEFAULT_BLOCK_SIZE = 2**20

CACHE_MAGIC = b"MOBI"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sBQ")


class BoundsError(ValueError):
    """An index or limit falls outside the permitted range."""


class CacheFormatError(ValueError):
    """A cache file has the wrong magic, version or length."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MobiusTable:
    limit: int
    values: np.ndarray  # int8, values[i] = mu(i), values[0] = 0

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True, eq=False)
class MertensSeries:
    limit: int
    prefix: np.ndarray  # int64, prefix[n] = M(n), prefix[0] = 0

    def __getitem__(self, n):
        return self.prefix[n]


@dataclass(frozen=True, eq=False)
class OmegaTable:
    limit: int
    counts: np.ndarray  # uint8, counts[i] = omega(i)

    def __getitem__(self, i):
        return self.counts[i]


@dataclass(frozen=True)
class SquarefreeCount:
    n: int
    q: int


def check_limit(limit: int, max_limit: int = DEFAULT_MAX_LIMIT) -> int:
    if isinstance(limit, bool) or not isinstance(limit, (int, np.integer)):
        raise BoundsError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < 1:
        raise BoundsError(f"limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise BoundsError(f"limit {limit} exceeds configured maximum {max_limit}")
    return limit


def check_index(n: int, limit: int, what: str = "n") -> int:
    n = int(n)
    if not 1 <= n <= limit:
        raise BoundsError(f"{what}={n} outside table range [1, {limit}]")
    return n


def small_primes(bound: int) -> np.ndarray:
    """Primes ``<= bound`` by a plain Eratosthenes sieve."""
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(bound + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sieve_block(lo: int, hi: int, primes: np.ndarray, want_mu: bool, want_omega: bool):
    """Sieve the half-open block [lo, hi).

    Every prime p <= sqrt(hi - 1) is applied; ``smooth`` accumulates the part
    of each integer made of those primes, so a leftover cofactor > 1 is a
    single prime above the square root.
    """
    size = hi - lo
    smooth = np.ones(size, dtype=np.int64)
    mu = np.ones(size, dtype=np.int8) if want_mu else None
    omega = np.zeros(size, dtype=np.uint8) if want_omega else None
    top = hi - 1
    for p in primes:
        p = int(p)
        if p * p > top:
            break
        start = (-lo) % p
        if mu is not None:
            mu[start::p] *= -1
        if omega is not None:
            omega[start::p] += 1
        pk = p
        while pk <= top:
            s = (-lo) % pk
            smooth[s::pk] *= p
            if pk == p * p and mu is not None:
                mu[s::pk] = 0
            pk *= p
    n = np.arange(lo, hi, dtype=np.int64)
    big = smooth != n
    if mu is not None:
        mu[big] *= -1
        if lo == 0:
            mu[0] = 0
    if omega is not None:
        omega[big] += 1
        if lo == 0:
            omega[0] = 0
    return mu, omega


def _run_sieve(limit, want_mu, want_omega, block_size, workers):
    primes = small_primes(math.isqrt(limit))
    mu = np.empty(limit + 1, dtype=np.int8) if want_mu else None
    omega = np.empty(limit + 1, dtype=np.uint8) if want_omega else None
    bounds = [(lo, min(lo + block_size, limit + 1)) for lo in range(0, limit + 1, block_size)]

    def work(lohi):
        lo, hi = lohi
        bmu, bom = _sieve_block(lo, hi, primes, want_mu, want_omega)
        # each block owns a disjoint slice, so assembly order is irrelevant
        if mu is not None:
            mu[lo:hi] = bmu
        if omega is not None:
            omega[lo:hi] = bom

    if workers is None or workers <= 1:
        for b in bounds:
            work(b)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, bounds))
    return mu, omega


def sieve_mobius(limit, *, block_size=DEFAULT_BLOCK_SIZE, workers=None,
                 max_limit=DEFAULT_MAX_LIMIT) -> MobiusTable:
    """Möbius values μ(1..limit) by a segmented sieve.

    >>> t = sieve_mobius(12)
    >>> int(t[6]), int(t[12])
    (1, 0)
    """
    limit = check_limit(limit, max_limit)
    mu, _ = _run_sieve(limit, True, False, int(block_size), workers)
    return MobiusTable(limit, _frozen(mu))


def sieve_omega(limit, *, block_size=DEFAULT_BLOCK_SIZE, workers=None,
                max_limit=DEFAULT_MAX_LIMIT) -> OmegaTable:
    """Number of distinct prime divisors ω(1..limit)."""
    limit = check_limit(limit, max_limit)
    _, omega = _run_sieve(limit, False, True, int(block_size), workers)
    return OmegaTable(limit, _frozen(omega))


def sieve_both(limit, *, block_size=DEFAULT_BLOCK_SIZE, workers=None,
               max_limit=DEFAULT_MAX_LIMIT) -> tuple[MobiusTable, OmegaTable]:
    """μ and ω in a single pass over the blocks."""
    limit = check_limit(limit, max_limit)
    mu, omega = _run_sieve(limit, True, True, int(block_size), workers)
    return MobiusTable(limit, _frozen(mu)), OmegaTable(limit, _frozen(omega))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def mobius_oracle(n: int) -> int:
    """μ(n) from a full trial-division factorization; shares no code with the sieve."""
    if n < 1:
        raise BoundsError(f"n must be >= 1, got {n}")
    exps = factorize(n).values()
    if any(e > 1 for e in exps):
        return 0
    return -1 if len(exps) % 2 else 1


def omega_oracle(n: int) -> int:
    if n < 1:
        raise BoundsError(f"n must be >= 1, got {n}")
    return len(factorize(n))


def mertens_series(table: MobiusTable) -> MertensSeries:
    prefix = np.cumsum(table.values, dtype=np.int64)
    return MertensSeries(table.limit, _frozen(prefix))


def squarefree_count(table: MobiusTable, n: int) -> SquarefreeCount:
    n = check_index(n, table.limit)
    q = int(np.count_nonzero(table.values[1 : n + 1]))
    return SquarefreeCount(n, q)


def squarefree_prefix(table: MobiusTable) -> np.ndarray:
    """Q(n) for every n at once; slot 0 is 0."""
    return np.cumsum(table.values != 0, dtype=np.int64)


# --- on-disk cache ---------------------------------------------------------

def write_table(table: MobiusTable, path) -> None:
    """Write ``MOBI`` | version byte | limit (u64 LE) | limit signed bytes.

    The write goes to a sibling temp file first and is renamed into place.
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.limit))
        fh.write(np.ascontiguousarray(table.values[1:], dtype=np.int8).tobytes())
    tmp.replace(path)


def read_table(path, max_limit=DEFAULT_MAX_LIMIT) -> MobiusTable:
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise CacheFormatError(f"{path}: truncated header")
        magic, version, limit = _HEADER.unpack(header)
        if magic != CACHE_MAGIC:
            raise CacheFormatError(f"{path}: bad magic {magic!r}")
        if version != CACHE_VERSION:
            raise CacheFormatError(f"{path}: unsupported version {version}")
        if not 1 <= limit <= max_limit:
            raise CacheFormatError(f"{path}: limit {limit} out of range")
        body = fh.read()
    if len(body) != limit:
        raise CacheFormatError(f"{path}: expected {limit} bytes, found {len(body)}")
    values = np.empty(limit + 1, dtype=np.int8)
    values[0] = 0
    values[1:] = np.frombuffer(body, dtype=np.int8)
    if np.any((values < -1) | (values > 1)):
        raise CacheFormatError(f"{path}: values outside {{-1, 0, 1}}")
    return MobiusTable(int(limit), _frozen(values))
