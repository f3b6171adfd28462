# %% [markdown]
# # Hubs of a small rail network
#
# Similarity between stations counts the direct route segments joining
# them. The diagonal weights each station by how routes use it: a route
# adds its stop count to its two terminal stations and 2 to every
# intermediate stop. The network below is made up.

# %%
import numpy as np

from cce import RouteNetwork, detect_platforms, from_routes, run_evolution

routes = [
    ["Harbor", "Mill", "Central", "North", "Ridge"],
    ["Harbor", "Mill", "Central"],
    ["Central", "East", "Lake"],
    ["Central", "North", "Ridge"],
    ["Ridge", "Pine", "Summit"],
    ["Summit", "Pine", "Ridge", "North"],
    ["Lake", "East", "Central", "Mill"],
    ["West", "Harbor"],
    ["West", "Harbor", "Mill"],
]
net = RouteNetwork.from_routes(routes)
S = from_routes(net)
print(net.stations)
print(np.asarray(S.entries, dtype=int))

# %%
trace = run_evolution(S, k_max=200)
names = net.stations
for snap in trace:
    hubs = ", ".join(names[c] for c in snap.centers)
    print(f"k={snap.k:3d}  {snap.cluster_count} hub(s): {hubs}")

# %% [markdown]
# Platforms with at least two consecutive powers:

# %%
for p in detect_platforms(trace, min_length=2):
    snap = trace.at(p.k_start)
    groups = {names[c]: [names[i] for i in members] for c, members in snap.clusters().items()}
    print(f"k={p.k_start}..{p.k_end}: {groups}")
