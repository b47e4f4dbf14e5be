import pathlib
import sys

try:
    import metrocorr  # noqa: F401
except ImportError:  # run from a plain checkout without installing
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
