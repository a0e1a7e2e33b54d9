"""Closed-form decline arithmetic for a single gas well.

A well currently producing 2.6755 mmscf/d will be shut in once it
declines to the 0.03 mmscf/d economic limit.  Given a nominal decline
rate for each Arps model, the closed forms answer three questions
without any curve sampling: how much gas remains recoverable (Qf), how
long the well keeps producing (delta-t), and what the ultimate recovery
comes to once the 10,941.9 mmscf already produced is added on.
"""

from dcakit import (
    DeclineParameters,
    RateInterval,
    cumulative_between,
    eur,
    rate_at,
    time_between_rates,
)

Q_NOW = 2.6755        # mmscf/day, current rate
Q_LIMIT = 0.03        # mmscf/day, economic limit
NP = 10941.9205       # mmscf already produced

interval = RateInterval(Q_NOW, Q_LIMIT)

models = {
    "exponential": DeclineParameters.exponential(qi=Q_NOW, di=0.0134),
    "hyperbolic": DeclineParameters.hyperbolic(qi=Q_NOW, di=0.0039, b=2e-5),
    "harmonic": DeclineParameters.harmonic(qi=Q_NOW, di=0.0039),
}

print(f"{'model':<13}{'Qf (mmscf)':>12}{'dt (days)':>12}{'EUR (mmscf)':>14}")
for name, params in models.items():
    qf = cumulative_between(params, interval)
    dt = time_between_rates(params, interval)
    print(f"{name:<13}{qf:>12.2f}{dt:>12.2f}{eur(NP, qf):>14.2f}")

# The exponential curve reaches the limit fastest; the harmonic tail is
# so fat it keeps the well alive for decades.  Sanity-check the
# exponential life by evaluating the rate there: it should sit at the
# economic limit.
exp = models["exponential"]
dt = time_between_rates(exp, interval)
print(f"\nexponential rate after {dt:.2f} days: "
      f"{rate_at(exp, dt):.4f} mmscf/d (limit {Q_LIMIT})")
