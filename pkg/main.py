# main.py
import sys

from cli.app import main
from utils.logging_setup import install_excepthook


if __name__ == "__main__":
    install_excepthook()
    sys.exit(main())
