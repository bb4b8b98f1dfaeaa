"""Seeded corpus generators used by tests, the selftest and the bench."""

import numpy as np

WORDS = (b"the quick brown fox jumps over lazy dogs while compression "
         b"indexes answer pattern queries with borders phrases runs and "
         b"labels signatures anchors windows blocks").split()


def random_bytes(n: int, seed: int, sigma: int = 8) -> bytes:
    rng = np.random.default_rng(seed)
    return rng.integers(97, 97 + sigma, n, dtype=np.uint8).tobytes()


def binary(n: int, seed: int) -> bytes:
    return random_bytes(n, seed, sigma=2)


def english_like(n: int, seed: int) -> bytes:
    rng = np.random.default_rng(seed)
    out = bytearray()
    while len(out) < n:
        out += WORDS[rng.integers(len(WORDS))]
        out += b" "
    return bytes(out[:n])


def fibonacci(n: int) -> bytes:
    a, b = b"b", b"a"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def all_runs(n: int, seed: int, sigma: int = 4) -> bytes:
    rng = np.random.default_rng(seed)
    out = bytearray()
    while len(out) < n:
        out += bytes([97 + int(rng.integers(sigma))]) * int(rng.integers(1, 40))
    return bytes(out[:n])


def copies_with_mutations(n: int, seed: int, base_len: int = 512,
                          mutations_per_copy: int = 2, sigma: int = 16) -> bytes:
    """k copies of one base string, a few random byte flips per copy."""
    rng = np.random.default_rng(seed)
    base = rng.integers(97, 97 + sigma, base_len, dtype=np.uint8)
    out = np.empty(n, np.uint8)
    pos = 0
    while pos < n:
        chunk = base.copy()
        for _ in range(mutations_per_copy):
            chunk[rng.integers(base_len)] = 97 + rng.integers(sigma)
        take = min(base_len, n - pos)
        out[pos:pos + take] = chunk[:take]
        pos += take
    return out.tobytes()


def periodic_noise(n: int, seed: int, period: int = 13) -> bytes:
    rng = np.random.default_rng(seed)
    base = rng.integers(97, 123, period, dtype=np.uint8)
    out = np.tile(base, n // period + 1)[:n]
    flips = rng.integers(0, n, max(1, n // 200))
    out[flips] = rng.integers(97, 123, len(flips), dtype=np.uint8)
    return out.tobytes()


def literal_heavy(n: int, seed: int) -> bytes:
    # near-incompressible: large alphabet, little repetition
    rng = np.random.default_rng(seed)
    return rng.integers(0, 256, n, dtype=np.uint8).tobytes()


def corpus_matrix(scale: int = 1, seed: int = 0) -> dict[str, bytes]:
    """The named corpus family used by the acceptance suite."""
    s = seed
    return {
        "random8": random_bytes(6000 * scale, s + 1),
        "binary": binary(5000 * scale, s + 2),
        "english": english_like(9000 * scale, s + 3),
        "fibonacci": fibonacci(8000 * scale),
        "copies": copies_with_mutations(16000 * scale, s + 4),
        "runs": all_runs(6000 * scale, s + 5),
        "periodic": periodic_noise(9000 * scale, s + 6),
        "literals": literal_heavy(3000 * scale, s + 7),
        "tinyalpha": random_bytes(7000 * scale, s + 8, sigma=3),
        "mixed": (english_like(4000 * scale, s + 9)
                  + all_runs(3000 * scale, s + 10)
                  + copies_with_mutations(6000 * scale, s + 11)),
    }


def sample_patterns(S: bytes, count: int, seed: int,
                    borders=None) -> list[bytes]:
    """Present substrings, absent strings, border-straddlers, mixed lengths."""
    rng = np.random.default_rng(seed)
    n = len(S)
    out: list[bytes] = []
    lengths = [1, 2, 3, 4, 5, 6, 8, 12, 16, 24, 32, 48, 64]
    lg = max(1, n.bit_length())
    lengths += [lg, 2 * lg, max(2, n // 4), max(2, n // 2)]
    while len(out) < count:
        r = rng.integers(10)
        m = int(lengths[int(rng.integers(len(lengths)))])
        m = max(1, min(m, n))
        if r < 5:
            p = int(rng.integers(n - m + 1))
            out.append(S[p:p + m])
        elif r < 7:
            # mutate a substring (often absent)
            p = int(rng.integers(n - m + 1))
            b = bytearray(S[p:p + m])
            b[int(rng.integers(m))] ^= 0x15
            out.append(bytes(b))
        elif r < 8:
            out.append(rng.integers(0, 256, m, dtype=np.uint8).tobytes())
        else:
            if borders is not None and len(borders):
                b = int(borders[int(rng.integers(len(borders)))])
                lo = max(1, b - int(rng.integers(1, m + 1)) + 1)
                hi = min(n, lo + m - 1)
                out.append(S[lo - 1:hi])
            else:
                p = int(rng.integers(n - m + 1))
                out.append(S[p:p + m])
    return [p for p in out if len(p) >= 1][:count]
