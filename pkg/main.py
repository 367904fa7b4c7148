#!/usr/bin/env python3
"""Точка входа в приложение spectradiag."""

import sys

from spectradiag.cli.interface import main

if __name__ == '__main__':
    sys.exit(main())

# poetry run spectradiag help
# check --sequence data/geometric_half.json --spectrum data/interior_spectrum.json
# check --sequence data/kadison_four_halves.json
# minimal --sequence data/beta_quarter.json --N 2
# membership --sequence data/beta_quarter.json --lambda '["2/3", "1/3"]'
# witness --sequence data/finite_diagonal.json --spectrum data/finite_spectrum.json
# fplot --sequence data/beta_quarter.json --grid 9
# transform --sequence data/beta_half.json --op truncate --params '{"epsilon": "3/10"}'
