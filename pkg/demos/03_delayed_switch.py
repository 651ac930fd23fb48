"""
Routing before the decision
===========================

The switch sends half of each ancilla pair onwards before it knows where the
data should go.  Once the control arrives it encodes the data into the retained
halves, which then follow the transmitted halves.
"""
import numpy as np

from qswitch.codec import CodeParams
from qswitch.switch import (
    PortStream,
    SwitchInstance,
    control_violations,
    no_signaling_probe,
    run_switch_2x2,
)
from qswitch.statevector import trace_distance

rng = np.random.default_rng(1)
inputs = [PortStream(0, [1, 0, 1, 1]), PortStream(1, [0, 1, 1, 0])]

# With the control set the two streams swap places.
for c in (0, 1):
    res = run_switch_2x2(inputs, c, rng, d=2)
    print(f"C={c}:", [o.bits() for o in res.outputs])

# Before the control arrives each destination sees a maximally mixed state,
# whatever the control will turn out to be.
p = CodeParams(4)
straight, crossed = (SwitchInstance(2, p, ctrl, inputs) for ctrl in ((0, 1), (1, 0)))
for t in (1, 2):
    a, b = no_signaling_probe(straight, t), no_signaling_probe(crossed, t)
    print(f"slot {t}: trace distance", max(trace_distance(a[k], b[k]) for k in a))

# The transcript shows that no control-dependent gate touches an emitted qubit.
res = run_switch_2x2(inputs, 1, rng, d=2)
print("violations:", control_violations(res.transcript, 2))
for e in res.transcript[:12]:
    print(e)

# Four ports use a Benes network of controlled swaps.
res = SwitchInstance(4, CodeParams(2), (2, 0, 3, 1),
                     [PortStream(i, [i >> 1, i & 1]) for i in range(4)]).run(rng)
print("4 ports:", [o.bits() for o in res.outputs])
