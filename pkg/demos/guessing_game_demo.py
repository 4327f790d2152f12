"""Guessing game with a quantum memory.

A referee prepares a bipartite state, keeps half, and hands the other
half to a player who must predict the referee's measurement outcome
after learning which of two bases was used.  Without memory the total
uncertainty is at least log2(1/c) bits; with a maximally entangled
memory it can drop to zero.
"""

from qmur.game import GameScenario, run_game, werner_sweep
from qmur.measurements import computational_basis, fourier_basis

r = computational_basis(2)
s = fourier_basis(2)

print("bases: computational and Fourier on a qubit (overlap c = 1/2)")
print()

for strategy in ("mes", "product", "werner"):
    kwargs = {"p": 0.9} if strategy == "werner" else {}
    report = run_game(GameScenario(strategy, r, s, **kwargs))
    d = report.to_dict()
    print(f"strategy {strategy!r}{' (p=0.9)' if kwargs else ''}:")
    print(f"  H(R|B) + H(S|B)   = {d['H(R|B)'] + d['H(S|B)']:+.6f} bits")
    print(f"  memoryless floor  = {d['classical_bound']:+.6f} bits")
    print(f"  memory-aware bound = {d['memory_bound']:+.6f} bits")
    print(f"  beats the memoryless floor: {d['violation']}")
    print()

# sweep the noise parameter of the Werner family: the memoryless floor
# is beaten only once the state is entangled enough
print("Werner family sweep (violation of the memoryless floor vs p):")
print(f"{'p':>5}  {'H(R|B)+H(S|B)':>14}  violation")
for row in werner_sweep(r, s, points=11):
    game = run_game(GameScenario("werner", r, s, p=row["p"]))
    lhs = game.h_r_b + game.h_s_b
    print(f"{row['p']:5.2f}  {lhs:14.6f}  {game.violation}")
