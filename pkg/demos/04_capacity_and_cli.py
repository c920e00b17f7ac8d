"""Ergodic capacity bounds, and the same numbers through the command line.

The analytic upper bound comes from Jensen's inequality on the end-to-end
SINR and stays within a few percent of simulation once the SNR is moderate.
The second half runs the CLI in-process and prints its CSV, which is the
format the sweeps produce for plotting elsewhere.

Run:  python demos/04_capacity_and_cli.py
"""
from swipt_relay.analysis import capacity_upper_bound
from swipt_relay.cli import run
from swipt_relay.mc import estimate_capacity
from swipt_relay.model import SystemParams


def db(x):
    return 10.0 ** (x / 10.0)


def main():
    print(f"{'SNR dB':>6} {'scheme':>6} {'bound':>8} {'MC':>8} {'gap':>7}")
    for snr in (0, 10, 20, 30):
        p = SystemParams(n_antennas=3, rho1=db(snr))
        for s in ("nl", "mrc", "zf", "mmse"):
            ub = capacity_upper_bound(s, p)
            mc = estimate_capacity(s, p, 2 * 10 ** 5, seed=snr).mean
            print(f"{snr:>6} {s:>6} {ub:8.4f} {mc:8.4f} {(ub - mc) / mc:7.1%}")

    print("\nSame kind of sweep from the command line:")
    print("$ swipt-relay capacity --scheme mmse --n 3 --sweep rho1_db 0:15:30 --mc-samples 100000\n")
    run(["capacity", "--scheme", "mmse", "--n", "3", "--sweep", "rho1_db", "0:15:30", "--mc-samples", "100000"])


if __name__ == "__main__":
    main()
