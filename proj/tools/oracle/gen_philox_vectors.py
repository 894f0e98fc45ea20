#!/usr/bin/env python3
"""Reference vectors for Philox4x32-10, implemented independently from the
published algorithm (Salmon et al., "Parallel random numbers: as easy as
1, 2, 3", SC'11).  Used to freeze known-answer tests for the C++ generator.

Cross-checked against the known-answer vectors shipped with Random123:
  ctr=0000.. key=00..       -> 6627e8d5 e169c58d bc57ac4c 9b00dbd8
  ctr=ffff.. key=ff..       -> 408f276d 41c83b0e a20bc7c6 6d5451fd
  ctr=pi-digits key=pi      -> d16cfe09 94fdcceb 5001e420 24126ea1
"""

M0 = 0xD2511F53
M1 = 0xCD9E8D57
W0 = 0x9E3779B9
W1 = 0xBB67AE85
MASK = 0xFFFFFFFF


def mulhilo(a, b):
    p = (a * b) & 0xFFFFFFFFFFFFFFFF
    return (p >> 32) & MASK, p & MASK


def philox4x32(ctr, key, rounds=10):
    x = list(ctr)
    k = list(key)
    for _ in range(rounds):
        hi0, lo0 = mulhilo(M0, x[0])
        hi1, lo1 = mulhilo(M1, x[2])
        x = [hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0]
        k[0] = (k[0] + W0) & MASK
        k[1] = (k[1] + W1) & MASK
    return x


def show(ctr, key):
    out = philox4x32(ctr, key)
    print("ctr", " ".join(f"{c:08x}" for c in ctr),
          "key", " ".join(f"{c:08x}" for c in key),
          "->", " ".join(f"{o:08x}" for o in out))


if __name__ == "__main__":
    show((0, 0, 0, 0), (0, 0))
    show((MASK, MASK, MASK, MASK), (MASK, MASK))
    show((0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344),
         (0xA4093822, 0x299F31D0))
    # a few extra counters for stream tests (key = seed 42, stream 7)
    for i in (0, 1, 2, 1000):
        show((i & MASK, (i >> 32) & MASK, 0, 0), (42, 7))
