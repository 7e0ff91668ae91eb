from hypothesis import HealthCheck, settings

# derandomized: every run draws the same examples
settings.register_profile("pinned", max_examples=1000, derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pinned")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")
