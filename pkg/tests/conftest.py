"""Shared fixtures: an in-process CLI runner."""

import contextlib
import io

import pytest

from wreathcount.cli import main


@pytest.fixture
def run_cli():
    def run(*argv: str) -> tuple[int, str, str]:
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    return run
