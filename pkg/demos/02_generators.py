"""Tour of the synthetic reference models.

Each model captures one workload hypothesis: independent references
(uniform or weighted), strict round-robin, re-reference depth drawn from
a stack distribution, and a deterministic interleave of sub-streams.
Everything is seeded, so this script prints the same thing every run.

    python demos/02_generators.py
"""

from __future__ import annotations

from collections import Counter

from addrloc import (
    Cyclic,
    GeneratorSpec,
    Interleave,
    Irm,
    LruStackModel,
    UniformIrm,
    generate,
)


def tokens_of(model, length, seed=0):
    trace = generate(GeneratorSpec(model, length, seed))
    return [trace.token_of(d) for d in trace.destinations()]


print("== Cyclic(4): pure round-robin ==")
print(" ".join(tokens_of(Cyclic(4), 10)))

print("\n== UniformIrm(5): i.i.d., equal probabilities ==")
toks = tokens_of(UniformIrm(5), 2000, seed=42)
print("first ten:", " ".join(toks[:10]))
print("frequencies:", dict(sorted(Counter(toks).items())))

print("\n== Irm: i.i.d. with a skewed pmf ==")
toks = tokens_of(Irm((0.6, 0.25, 0.1, 0.05)), 2000, seed=42)
print("frequencies:", dict(sorted(Counter(toks).items())))

print("\n== LruStackModel: temporal locality by construction ==")
# Re-reference depth 1 is most likely, so the same address repeats often.
pmf = (0.5, 0.25, 0.15, 0.1)
toks = tokens_of(LruStackModel(pmf), 30, seed=7)
print(" ".join(toks))

print("\n== Interleave: two frames of cyclic per one uniform frame ==")
model = Interleave(parts=(Cyclic(3), UniformIrm(50)), pattern=(2, 1))
toks = tokens_of(model, 12, seed=9)
print(" ".join(toks))
print("(the s0./s1. prefixes keep the sub-stream address spaces apart)")

print("\n== determinism ==")
spec = GeneratorSpec(UniformIrm(10), 1000, seed=123)
print("same spec and seed, identical traces:", generate(spec) == generate(spec))
