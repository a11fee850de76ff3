"""Pick a cache size by minimizing normalized search time.

Searching a cache of c entries costs cost(c), and every miss adds a
full database lookup on top. Normalizing by the no-cache cost gives

    T = cost(c) / cost(n) + miss_ratio

so T < 1 means the cache beats searching the database directly and
T > 1 means it is actively hurting.

    python demos/05_cache_sizing.py
"""

from __future__ import annotations

from addrloc import (
    Cyclic,
    GeneratorSpec,
    LruStackModel,
    binary_search_cost,
    generate,
    normalized_search_time,
    optimal_cache_size,
    search_time_curve,
    sweep,
)

DEPTHS = 40
weights = [0.8 ** d for d in range(DEPTHS)]
total = sum(weights)
model = LruStackModel(tuple(w / total for w in weights))
dst = generate(GeneratorSpec(model, 100_000, seed=1)).destinations()

DATABASE = 400  # the cache fronts a 400-entry address database

capacities = [1, 2, 4, 8, 16, 32, DEPTHS, 64, 128, DATABASE]
curve = sweep(dst, "LRU", capacities)
times = search_time_curve(curve, DATABASE)

print(f"LRU cache in front of a {DATABASE}-entry database, log-cost search")
print("  cap   miss ratio   T")
for point in times.entries:
    marker = "  <- beats no cache" if point.time < 1.0 else ""
    print(f"{point.capacity:5d}   {point.miss_ratio:9.4f}   {point.time:.4f}{marker}")

best_cap, best_time = optimal_cache_size(times)
print(f"\noptimal: {best_cap} slots at T={best_time:.4f}")
print("caching the whole database never wins: at c=n the cache search")
print("already costs as much as the database search, so T >= 1 there.")
print("past the working set, extra slots only make the cache slower.")

print("\n== when caching hurts ==")
K = 30
cyc = generate(GeneratorSpec(Cyclic(K), 10_000, seed=7)).destinations()
caps = [2, 4, 8, 16, K - 1, K]
cyc_curve = sweep(cyc, "LRU", caps)
cyc_times = search_time_curve(cyc_curve, K)
print(f"cyclic sweep over {K} addresses, LRU, database of {K}")
print("  cap   miss ratio   T")
for point in cyc_times.entries:
    print(f"{point.capacity:5d}   {point.miss_ratio:9.4f}   {point.time:.4f}")
print("LRU evicts each address one step before the cycle returns to it,")
print("so every capacity short of the full cycle misses on nearly every")
print("reference. T > 1 throughout: worse than no cache at all.")

# The miss-free identity T(c=n) = 1 holds exactly, not approximately.
assert normalized_search_time(0.0, K, K, binary_search_cost) == 1.0
