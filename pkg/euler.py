"""
Euler/dimension integration toolkit, batch front-end.

    python euler.py mu data/scenes/square.json
    python euler.py radon --builtin fano --invert
    python euler.py selftest --export
"""
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent))
from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
