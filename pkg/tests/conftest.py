from hypothesis import HealthCheck, settings

# Derandomized so CI failures are reproducible; generous deadline headroom
# because exact-arithmetic examples vary a lot in cost.
settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
