"""What is left after extraction, and what preparation costs.

After running the optimal protocol on a pure state with a rank-1 witness
c|y><y|, the medium lands in the thermal state of that rank-1 Hamiltonian,
which has an explicit closed form.  Its residual robustness, for any theory
whose free set contains the maximally mixed state, is at most 1/(d-1): the
protocol all but exhausts the resources.  Symmetrically, preparing a
resourceful state costs at least (1+R) times more work than preparing the
most expensive free state, under the same witness Hamiltonian.
"""

import math


from robustwork import (
    INF_BETA,
    ThermoContext,
    incoherent_set,
    projector,
    residual_thermal_closed_form,
    robustness_dual,
    stabilizer_set,
    verify_theorem2,
    verify_xi_cost,
)
from robustwork.states import golden_state, t_state

print("=== residual robustness of the post-protocol thermal state ===")
print(f"{'theory':>14} {'d':>3} {'beta*lam*c':>10} {'residual R':>12} {'bound 1/(d-1)':>14}")
for d in (2, 4, 8):
    y, c, spec = golden_state(d), float(d), incoherent_set(d)
    for blc in (0.1, 1.0, 10.0, INF_BETA):
        beta = 1.0 if blc != INF_BETA else INF_BETA
        lam = blc / c if blc != INF_BETA else 1.0
        ctx = ThermoContext(beta=beta, lam=lam)
        rep = verify_theorem2(y, c, ctx, d, spec, tol=1e-7)
        label = "inf" if blc == INF_BETA else f"{blc:g}"
        print(f"{'incoherent':>14} {d:>3} {label:>10} {rep.lhs:>12.8f} {rep.rhs:>14.8f}")

print()
print("=== the same depletion for magic ===")
n = 2
d = 2**n
c = (4 - 2 * math.sqrt(2)) ** n
ctx = ThermoContext(beta=1.0, lam=10.0 / c)
tau = residual_thermal_closed_form(t_state(n), c, ctx, d)
res = robustness_dual(tau, stabilizer_set(n), tol=1e-7)
print(f"residual magic after extracting from |T>^{n}: {res.value:.2e} <= {1 / (d - 1):.4f}")

print()
print("=== preparation cost ratios (zero temperature) ===")
print("max over free states of W_cost(sigma) / W_cost(rho) under H = lambda*Y")
for d in (2, 4, 8):
    rho = projector(golden_state(d))
    ctx = ThermoContext(beta=INF_BETA, lam=1.0)
    rep = verify_xi_cost(rho, incoherent_set(d), ctx, witness=d * rho)
    print(f"d={d}: achieved {rep.lhs:.8f} <= bound 1/(1+R) = {rep.rhs:.8f}")
print("the golden state costs d times more work than any incoherent state")
