#!/usr/bin/env python3
"""Build the monthly S&P 500 total-return and CPI-U level files in data/.

Sources (all public, installable from PyPI):
  * rdatasets  openintro/sp500_1950_2018  daily S&P 500 closes (^GSPC)
  * rdatasets  AER/USStocksSW             monthly market dividend yield,
                                          1931-01..2002-12 (Stock & Watson)
  * cpi        bundled BLS database        CPI-U, U.S. city average,
                                          not seasonally adjusted (CUUR0000SA0)

Level convention: the value keyed YYYY-MM is the level at the START of that
month, i.e. the close of the last trading day of the previous month.  The
ratio level[M+1] / level[M] is therefore the growth during month M.

Monthly total return during month M:
    (P_M / P_{M-1}) * (1 + y_M / 12)
with P_M the last close in M and y_M the annualised dividend yield.  The
yield series stops at 2002-12; later months reuse the 2002-12 yield.

Usage:  python3 tools/make_dataset.py [outdir]
"""

import math
import os
import sqlite3
import sys

import cpi
import rdatasets

FIRST = (1950, 2)   # first keyed level (start of Feb 1950 = close of Jan 1950)
LAST = (2007, 1)    # last keyed level (start of Jan 2007 = close of Dec 2006)
YIELD_LAST = (2002, 12)


def next_month(ym):
    y, m = ym
    return (y + 1, 1) if m == 12 else (y, m + 1)


def prev_month(ym):
    y, m = ym
    return (y - 1, 12) if m == 1 else (y, m - 1)


def months(first, last):
    ym = first
    while ym <= last:
        yield ym
        ym = next_month(ym)


def month_end_closes():
    px = rdatasets.data("openintro", "sp500_1950_2018")
    closes = {}
    for date, close in zip(px["Date"], px["Close"]):
        closes[(int(date[:4]), int(date[5:7]))] = float(close)  # ascending dates
    return closes


def dividend_yields():
    sw = rdatasets.data("AER", "USStocksSW")
    yields = {}
    ym = (1931, 1)
    for v in sw["dividend"]:
        yields[ym] = math.exp(float(v) / 100.0)
        ym = next_month(ym)
    assert prev_month(ym) == YIELD_LAST, prev_month(ym)
    return yields


def cpi_u():
    db = os.path.join(os.path.dirname(cpi.__file__), "cpi.db")
    con = sqlite3.connect(db)
    rows = con.execute(
        "select year, period, value from indexes "
        "where series = 'CUUR0000SA0' and period != 'M13'")
    return {(int(y), int(p[1:])): float(v) for y, p, v in rows}


def write(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("month,level\n")
        for (y, m), level in rows:
            f.write(f"{y:04d}-{m:02d},{level:.6f}\n")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data")
    closes = month_end_closes()
    yields = dividend_yields()
    cpis = cpi_u()

    tr_rows = []
    level = 100.0
    for ym in months(FIRST, LAST):
        if ym != FIRST:
            grown = prev_month(ym)  # month whose growth takes us to ym
            price_ratio = closes[grown] / closes[prev_month(grown)]
            y = yields[min(grown, YIELD_LAST)]
            level *= price_ratio * (1.0 + y / 12.0)
        tr_rows.append((ym, level))

    cpi_rows = [(ym, cpis[prev_month(ym)]) for ym in months(FIRST, LAST)]

    write(os.path.join(outdir, "sp500_tr_monthly.csv"), tr_rows)
    write(os.path.join(outdir, "cpi_u_monthly.csv"), cpi_rows)
    print(f"wrote {len(tr_rows)} months {FIRST}..{LAST} to {outdir}")


if __name__ == "__main__":
    main()
