#!/usr/bin/env python3
"""Reference evaluation of the pinned sampling generator.

The corpus sampler uses xorshift64* seeded through one splitmix64 step.
This script prints the first raw outputs and a few partial-Fisher-Yates
samples so the C++ tests can freeze them as cross-implementation anchors.

Constants:
  splitmix64:  increment 0x9E3779B97F4A7C15,
               mixers    0xBF58476D1CE4E5B9, 0x94D049BB133111EB
  xorshift64*: shifts 12, 25, 27, multiplier 0x2545F4914F6CDD1D
"""

MASK = (1 << 64) - 1


def splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed):
        self.state = splitmix64(seed)
        if self.state == 0:
            self.state = 0x9E3779B97F4A7C15

    def next(self):
        s = self.state
        s ^= s >> 12
        s = (s ^ (s << 25)) & MASK
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & MASK


def sample_indices(population, n, seed):
    rng = XorShift64Star(seed)
    idx = list(range(population))
    for i in range(n):
        j = i + rng.next() % (population - i)
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:n]


for seed in (0, 1, 42):
    rng = XorShift64Star(seed)
    outs = [rng.next() for _ in range(4)]
    print(f"seed {seed}: " + ", ".join(f"{v:#018x}" for v in outs))

print("sample(population=10, n=5, seed=42):", sample_indices(10, 5, 42))
print("sample(population=10, n=10, seed=7):", sample_indices(10, 10, 7))
print("sample(population=1000, n=5, seed=42):", sample_indices(1000, 5, 42))
