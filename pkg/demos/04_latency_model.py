"""
Latency of store-and-forward against delayed routing
====================================================

A classical router waits t_p at every node.  With delayed routing the packet
only pays for propagation, so the gain grows with the number of hops.
"""
from pathlib import Path

from qswitch import netsim
from qswitch.netsim import DelayModel, ParityMode, Route

# 100 km at 5 us/km with four routers of 1 ms each.
m = DelayModel(D=100, t_q=5e-6, N=4, t_p=1e-3, Q_p=9)
print("classical delay:", netsim.classical_delay(m))
print("delayed delay:  ", netsim.delayed_delay(m))
print("improvement:", netsim.improvement(m))
print("with a parity qubit:", netsim.improvement_with_parity(m))

# The event simulation gives the same arrival time and tracks the encoding at each hop.
r = netsim.simulate_route(Route.even(m), m, "delayed")
for e in r.events:
    print(f"{e.time:.6f}  node {e.node}  {e.kind}")
print("final encoding:", r.final_encoding)

# With a decoder at every switch the packet arrives in the regular encoding.
r = netsim.simulate_route(Route.even(m, ParityMode.DECODER), m, "delayed")
print("decoder mode final encoding:", r.final_encoding)

# Batch runs read INI scenario files.
for sc in netsim.load_scenarios(Path(__file__).with_name("scenarios.ini")):
    row = netsim.run_scenario(sc)
    print(f"{row['scenario']:>14}: improvement {row['improvement']:.3f}")
