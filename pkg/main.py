"""seqspec entry point.

Equivalent to the installed ``seqspec`` console script:
    uv run python main.py dichotomy --config config.yaml
"""

from src.cli import main

if __name__ == "__main__":
    main()
