import sys
from pathlib import Path

try:
    import primeavoid  # noqa: F401
except ImportError:
    # Running from a source checkout without installation.
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
