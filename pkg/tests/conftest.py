from hypothesis import HealthCheck, settings

# numpy-heavy properties blow hypothesis' default deadline on slow machines
settings.register_profile(
    "bdbounds",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("bdbounds")
