from __future__ import annotations

from hypothesis import HealthCheck, settings

# fixed seed for every property test; override with --hypothesis-seed
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")
