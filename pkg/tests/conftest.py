import contextlib
import io

import pytest

from clumsypack.cli import main as cli_main


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process, returning (exit_code, stdout, stderr)."""

    def invoke(argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = cli_main([str(a) for a in argv])
            except SystemExit as exc:
                # argparse exits on usage errors
                code = exc.code if isinstance(exc.code, int) else 2
        return code, out.getvalue(), err.getvalue()

    return invoke
