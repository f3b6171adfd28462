# %% [markdown]
# # Platforms on a two-level point cloud
#
# Three groups of points, each made of two nearby sub-blobs. Small powers
# see the six sub-blobs, large powers see fewer, coarser groups. Long
# runs of constant cluster count (platforms) point to the counts worth
# looking at.

# %%
import itertools
import os
import tempfile

import numpy as np

from cce import detect_platforms, gaussian_kernel, run_evolution, skipped_counts, suggest_counts

rng = np.random.default_rng(1)
parts = []
for gx, gy in [(0.0, 0.0), (6.0, 0.0), (3.0, 5.2)]:
    for dx in (-1.0, 1.0):
        parts.append(rng.normal(0.0, 0.3, (25, 2)) + [gx + dx, gy])
X = np.vstack(parts)
truth = np.repeat(np.arange(6), 25)

# %%
S = gaussian_kernel(X, sigma=0.5)
trace = run_evolution(S, k_max=3000)
print(f"{len(trace)} powers, stop reason: {trace.stop_reason.value}")

# %% [markdown]
# Run-length view of the count curve:

# %%
for count, run in itertools.groupby(trace.counts):
    print(f"{count:4d} clusters x {len(list(run))}")

# %%
platforms = detect_platforms(trace, min_length=5)
for p in platforms:
    print(p)
print("suggested (count, total length):", suggest_counts(platforms))
skipped = sorted(skipped_counts(trace))
print(f"{len(skipped)} counts never visited, the smallest being {skipped[:5]}")

# %% [markdown]
# On the six-cluster platform every cluster is exactly one sub-blob.

# %%
six = next(p for p in platforms if p.cluster_count == 6)
snap = trace.at(six.k_start)
for c in snap.centers:
    members = truth[snap.labels == c]
    print(f"center {c:3d}: {len(members)} points from sub-blob(s) {sorted(set(members.tolist()))}")

# %% [markdown]
# The cluster-count curve, if matplotlib is around.

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.step(range(1, len(trace) + 1), trace.counts, where="post")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("number of clusters")
    fig.savefig(os.path.join(tempfile.gettempdir(), "cce_platforms.png"), dpi=120)
