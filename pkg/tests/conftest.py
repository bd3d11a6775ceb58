def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: exhaustive acceptance sweeps (several minutes)"
    )
