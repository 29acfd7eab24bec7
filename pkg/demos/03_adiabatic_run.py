"""The headline run: drive 143's register through the linear schedule.

Starts in the transverse-field ground state (uniform magnitudes,
alternating signs), applies the M step unitaries, and watches the
population concentrate on the two factorization states.
"""

import numpy as np

from adiafact import (
    MixerSpec,
    Schedule,
    assemble_problem,
    compile_system,
    ground_manifold,
    polynomial_to_diagonal,
    run_schedule,
    success_probability,
)

system = compile_system(143)
qmap, penalty = assemble_problem(system)
problem = polynomial_to_diagonal(penalty, qmap)
manifold = ground_manifold(problem)

schedule = Schedule(g=0.6, T=20.0, M=20, checkpoints=(0, 5, 10, 15, 20))
mixer = MixerSpec(qmap.n, schedule.g)
trace = run_schedule(mixer, problem, schedule)

print(f"register: {qmap.n} qubits, schedule g={schedule.g} T={schedule.T} M={schedule.M}")
print(f"ground manifold: indices {manifold.indices}\n")

print("population on the manifold as s advances:")
for point in trace.points:
    on_manifold = success_probability(point.populations, manifold)
    bar = "#" * round(50 * on_manifold)
    print(f"  s={point.s:4.2f}  {on_manifold:8.6f}  {bar}")
print()

final = trace.final_populations
print("final distribution (populations above 0.001):")
for index in np.argsort(final)[::-1]:
    if final[index] < 1e-3:
        break
    print(f"  |{index:2d}>  {final[index]:.6f}")

print(f"\ntotal success probability: {success_probability(final, manifold):.6f}")

# a quench for contrast: no time to adapt, the uniform spread survives
quench = run_schedule(mixer, problem, Schedule(g=0.6, T=1e-9, M=1))
print(f"instant quench instead:    {success_probability(quench.final_populations, manifold):.6f}")
