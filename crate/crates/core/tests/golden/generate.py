#!/usr/bin/env python3
"""Regenerate the golden vector files in this directory.

Written independently of the Rust sources: RS parity by schoolbook
polynomial division with bitwise field multiplication, convolutional
outputs by stepping an explicit shift register.
"""
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent


def gf_mul(a, b, poly, m):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return r


def gf_pow(a, e, poly, m):
    r = 1
    for _ in range(e):
        r = gf_mul(r, a, poly, m)
    return r


def poly_mul(p, q, poly, m):
    # coefficients highest degree first
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] ^= gf_mul(a, b, poly, m)
    return out


def rs_encode(msg, n, k, poly, m, fcr=1):
    g = [1]
    for i in range(n - k):
        g = poly_mul(g, [1, gf_pow(2, fcr + i, poly, m)], poly, m)
    rem = list(msg) + [0] * (n - k)
    for i in range(k):
        c = rem[i]
        if c:
            for j in range(1, len(g)):
                rem[i + j] ^= gf_mul(g[j], c, poly, m)
    return list(msg) + rem[k:]


def conv_encode(bits, K, gens):
    reg = [0] * K  # reg[0] is the current input
    out = []
    for b in list(bits) + [0] * (K - 1):
        reg = [b] + reg[:-1]
        for g in gens:
            taps = [(g >> (K - 1 - i)) & 1 for i in range(K)]
            out.append(sum(t & r for t, r in zip(taps, reg)) % 2)
    return out


def pack(bits):
    bits = bits + [0] * (-len(bits) % 8)
    return bytes(int("".join(map(str, bits[i:i + 8])), 2) for i in range(0, len(bits), 8))


def write(name, header, pairs):
    lines = [f"# {header}"] + [f"{a.hex()} {b.hex()}" for a, b in pairs]
    (HERE / name).write_text("\n".join(lines) + "\n")


def main():
    rng = random.Random(20240611)
    for (m, poly, n, k) in [(3, 0xB, 7, 3), (5, 0x25, 31, 21), (8, 0x11D, 255, 223)]:
        pairs = []
        for trial in range(24):
            if trial == 0:
                msg = [0] * k
            elif trial == 1:
                msg = [(1 << m) - 1] * k
            else:
                msg = [rng.randrange(1 << m) for _ in range(k)]
            pairs.append((bytes(msg), bytes(rs_encode(msg, n, k, poly, m))))
        write(f"rs_{n}_{k}.txt", f"RS({n},{k}) over GF(2^{m}), poly {poly:#x}, first root alpha^1", pairs)
    for (K, gens, tag) in [(3, [0o7, 0o5], "k3_7_5"), (7, [0o171, 0o133], "k7_171_133")]:
        pairs = []
        for trial in range(24):
            nbytes = 1 + trial % 16
            msg = bytes(rng.randrange(256) for _ in range(nbytes))
            bits = [(byte >> (7 - i)) & 1 for byte in msg for i in range(8)]
            pairs.append((msg, pack(conv_encode(bits, K, gens))))
        write(f"conv_{tag}.txt", f"K={K} generators {','.join(oct(g)[2:] for g in gens)} (octal), zero-flushed", pairs)


if __name__ == "__main__":
    main()
