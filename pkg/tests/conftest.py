def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: full-size benchmark runs; deselect with -m 'not slow'"
    )
