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
from typing import Any, Dict, List

from ..asymptotics import beta_coefficients
from ..config import ExperimentConfig
from ..constants import DEFAULT_ORDER, GRID_NODES, GRID_POWER, GRID_RHO_MAX
from ..momenta import build_pseudo_momenta
from .abc import CompositeMetaClass, MixinMeta
from .utils import circulations_for, render_table, series_for, write_json

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.expand")


class Expand(MixinMeta, metaclass=CompositeMetaClass):
    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(
            "expand", help="Construct the epsilon series with its phase coefficients."
        )
        parser.add_argument("--config", help="Experiment JSON; overrides the flags below.")
        parser.add_argument("--gamma1", type=float, default=1.0)
        parser.add_argument("--gamma2", type=float, default=1.0)
        parser.add_argument("--order", type=int, default=DEFAULT_ORDER)
        parser.add_argument("--nodes", type=int, default=GRID_NODES)
        parser.add_argument("--rho-max", type=float, default=GRID_RHO_MAX)
        parser.add_argument("--power", type=float, default=GRID_POWER)
        parser.add_argument("--out", required=True, help="Series JSON to write.")
        parser.add_argument(
            "--momenta",
            type=float,
            metavar="EPS",
            help="Also build the pseudo-momenta at this epsilon.",
        )
        parser.add_argument("--momenta-out", help="Pseudo-momenta JSON to write.")
        parser.set_defaults(handler=self.expand)
        super().register(subparsers)

    def expand(self, args: argparse.Namespace) -> int:
        if args.config:
            cfg = ExperimentConfig.from_json(args.config)
        else:
            cfg = ExperimentConfig.from_mapping(
                {
                    "gamma1": args.gamma1,
                    "gamma2": args.gamma2,
                    "order": args.order,
                    "nodes": args.nodes,
                    "rho_max": args.rho_max,
                    "power": args.power,
                    "probes": args.momenta is not None,
                }
            )
        c = circulations_for(cfg)
        series = series_for(self.cache, c, cfg.order, cfg.grid)
        document: Dict[str, Any] = series.to_dict()
        rows: List[List[Any]] = []
        if series.order >= 4:
            beta = beta_coefficients(series)
            document["beta"] = {
                "raw": list(beta.raw),
                "normalized": list(beta.normalized),
                "beta4_closed": beta.beta4_closed,
                "warnings": list(beta.warnings),
            }
            rows = [[k, raw, norm] for k, (raw, norm) in enumerate(zip(beta.raw, beta.normalized))]
        else:
            log.warning("Order %s is too low for phase coefficients; no beta table.", cfg.order)
        document["validity"] = c.validity_flags()
        write_json(args.out, document, indent=None)
        if rows:
            print(render_table(rows, ("k", "beta (raw)", "beta (normalized)")))

        if args.momenta is not None:
            momenta = build_pseudo_momenta(series, args.momenta)
            target = args.momenta_out or "{}.momenta.json".format(args.out)
            momenta.save(target)
            print(
                render_table(
                    [[momenta.epsilon, momenta.alpha, momenta.lambda_e_value()]],
                    ("eps", "alpha", "lambda_e"),
                )
            )
        return 0
