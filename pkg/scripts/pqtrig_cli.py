"""Run the pqtrig CLI from a checkout without installing.

Usage:
    python scripts/pqtrig_cli.py eval sin --p 1 --q 2 --x 1
    python scripts/pqtrig_cli.py table cos --p 2 --q 4 --x-max 1.2 --n 25
    python scripts/pqtrig_cli.py verify --filter MAF1
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from dotenv import load_dotenv
load_dotenv(Path(__file__).parent.parent / ".env")

from pqtrig.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
