"""Entry point for `python -m excursionlab`."""

from __future__ import annotations

from excursionlab.cli import main


if __name__ == "__main__":
    main()
