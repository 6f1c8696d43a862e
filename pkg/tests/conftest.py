from hypothesis import HealthCheck, settings

# Wall-clock deadlines make property tests flaky on loaded CI machines; the
# suite has its own runtime budget assertions where timing actually matters.
settings.register_profile(
    "ubisim",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ubisim")
