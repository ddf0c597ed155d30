import pathlib
import sys

from hypothesis import HealthCheck, settings

# make the sibling helpers module importable from every test file
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

settings.register_profile(
    "desk", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("desk")
