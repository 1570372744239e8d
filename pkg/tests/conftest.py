def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: full-scale acceptance suite (takes minutes)")
