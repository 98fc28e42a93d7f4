"""
MIT License

Copyright (c) 2024-present japandotorg

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in all
copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
SOFTWARE.
"""


from __future__ import annotations

import argparse
import logging
from typing import Any, Dict, Final, List, Optional, Sequence

from pydantic import ValidationError

from ..errors import ConfigurationError, ValidationFailure, VortexPairError
from .abc import CompositeMetaClass
from .compare import Compare
from .expand import Expand
from .invariants import Invariants
from .simulate import Simulate
from .sweep import Sweep

__all__ = ("VortexPairLab", "main")

log: logging.Logger = logging.getLogger("seina.vortexpair.harness")

EXIT_OK: Final[int] = 0
EXIT_FAILED: Final[int] = 1
EXIT_CONFIG: Final[int] = 2


class VortexPairLab(
    Expand,
    Simulate,
    Compare,
    Sweep,
    Invariants,
    metaclass=CompositeMetaClass,
):
    """
    Viscous co-rotating vortex pair laboratory.

    Builds the asymptotic series, runs the Navier-Stokes solver and compares the two.
    """

    __author__: Final[List[str]] = ["inthedark.org"]
    __version__: Final[str] = "0.1.0"

    def __init__(self, *_args: Any) -> None:
        self.cache: Dict[Any, Any] = {}
        self.parser: argparse.ArgumentParser = self.build_parser()
        super().__init__(*_args)

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="vortexpair",
            description=self.__doc__.strip().splitlines()[0] if self.__doc__ else None,
        )
        parser.add_argument(
            "--version",
            action="version",
            version="%(prog)s {}".format(self.__version__),
        )
        parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level.")
        subparsers = parser.add_subparsers(dest="command", required=True)
        self.register(subparsers)
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = self.parser.parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.INFO,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        log.debug("Running %s with %s.", args.command, vars(args))
        return args.handler(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    lab = VortexPairLab()
    try:
        return lab.run(argv)
    except (ConfigurationError, ValidationError) as error:
        log.error("Configuration error: %s", error)
        return EXIT_CONFIG
    except ValidationFailure as error:
        log.error("Validation failed: %s", error)
        return EXIT_FAILED
    except VortexPairError:
        log.exception("Command aborted.")
        return EXIT_FAILED
