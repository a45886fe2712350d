"""Unsafeness probabilities for samples from suboptimal demonstrations.

A sample cheaper than the demonstration is certainly unsafe only if the
demonstration was optimal.  Under delta-bounded suboptimality, 'hard'
keeps only samples below cost/(1+delta); 'ramp' assigns probability 1
below that threshold and decays linearly to 0 at the demonstration cost.
"""

from __future__ import annotations

from ..errors import ValidationError

HARD = "hard"
RAMP = "ramp"


def label_suboptimal(sample_cost: float, demo_cost: float, delta: float,
                     ramp: str = RAMP) -> float:
    """Probability that a lower-cost sample is truly unsafe.

    A returned 0 means the sample carries no evidence and is dropped.
    """
    if demo_cost <= 0:
        raise ValidationError("demonstration cost must be positive")
    if sample_cost > demo_cost:
        raise ValidationError(
            f"sample cost {sample_cost:.6g} exceeds demonstration cost "
            f"{demo_cost:.6g}; not an unsafe candidate"
        )
    if delta < 0:
        raise ValidationError("suboptimality bound delta must be nonnegative")
    threshold = demo_cost / (1.0 + delta)
    if ramp == HARD:
        return 1.0 if sample_cost < threshold else 0.0
    if ramp != RAMP:
        raise ValidationError(f"unknown labeling model {ramp!r}")
    if sample_cost <= threshold:
        return 1.0
    if delta == 0.0:
        return 0.0
    return (demo_cost - sample_cost) / (demo_cost - threshold)
