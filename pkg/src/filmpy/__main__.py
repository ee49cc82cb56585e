"""
Entry point for python -m filmpy
"""

from filmpy.cli import main

if __name__ == "__main__":
    main()
