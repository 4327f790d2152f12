"""Randomized verification sweeps over all relation suites.

Runs every suite for a handful of reproducible trials and prints the
summary, the same machinery the `qmur verify` command exposes.  Each
trial draws its own state and basis pair from a counter-based generator
keyed on (seed, trial), so any single certificate can be regenerated in
isolation.
"""

from qmur.suites import SUITES, SuiteConfig, run_suites

result = run_suites(SuiteConfig(suites=("all",), trials=10, dims=(2, 2), seed=123))

print(f"suites run: {', '.join(sorted(SUITES))}")
print()
summary = result.summary()
print(f"certificates: {summary['certificates']}")
print(f"failures:     {summary['failures']}")
print(f"min slack:    {summary['min_slack']:.3e}")
print()

# slack distribution per suite: how much room each inequality has on
# typical random instances
by_suite = {}
for suite, _, cert in result.certificates:
    if cert.status != "skipped: dimension":
        by_suite.setdefault(suite, []).append(cert.slack)
print(f"{'suite':24s} {'n':>4} {'min slack':>12} {'max slack':>12}")
for suite in sorted(by_suite):
    slacks = by_suite[suite]
    print(
        f"{suite:24s} {len(slacks):4d} {min(slacks):12.3e} {max(slacks):12.3e}"
    )
