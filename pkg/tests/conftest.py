import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))  # make helpers importable

# keep the whole test session away from the user's real count cache
os.environ["EVENWILF_CACHE_DIR"] = tempfile.mkdtemp(prefix="evenwilf-tests-")
