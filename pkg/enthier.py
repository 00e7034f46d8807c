import logging

from utils.config import ENTHIER_LOG_LEVEL, LOG_FORMAT

# The --log-level option of the CLI group can still raise or lower this.
logging.basicConfig(level=ENTHIER_LOG_LEVEL, format=LOG_FORMAT)

from cli_io.main import cli

if __name__ == '__main__':
    cli(prog_name="enthier")
