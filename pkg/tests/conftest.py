from hypothesis import HealthCheck, settings

# SVD timing varies under load; property failures should never be timeouts
settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")
