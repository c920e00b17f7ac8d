"""Outage of the relay link without interference.

Compares four numbers at each source SNR: the exact outage (one numerical
integral), the Bessel-K lower bound, the high-SNR approximation and a
Monte Carlo estimate.  Watch the bound close in on the exact value as the
SNR grows, and the high-SNR form approach it more slowly (its error shrinks
roughly like 1/ln(SNR)).

Run:  python demos/01_noise_limited_outage.py
"""
from swipt_relay.analysis import outage_exact_nl, outage_high_snr, outage_lower_bound
from swipt_relay.mc import estimate_outage
from swipt_relay.model import SystemParams


def db(x):
    return 10.0 ** (x / 10.0)


def main():
    print(f"{'SNR dB':>6} {'exact':>11} {'bound':>11} {'high-SNR':>11} {'MC (2e6)':>11} {'+-':>9}")
    for n in (1, 2, 3):
        print(f"-- {n} relay antenna(s)")
        for snr in range(0, 41, 10):
            p = SystemParams(n_antennas=n, rho1=db(snr))
            mc = estimate_outage("nl", p, 2 * 10 ** 6, seed=snr)
            hsnr = outage_high_snr("nl", p)
            # fewer than ~100 events: the simulation cannot resolve the value
            sim = f"{mc.mean:11.4e} {mc.std_error:9.1e}" if mc.mean * mc.n_samples >= 100 else f"{'-':>11} {'-':>9}"
            print(f"{snr:>6} {outage_exact_nl(p):11.4e} {outage_lower_bound('nl', p).probability:11.4e} "
                  f"{hsnr:11.4e} {sim}")
    print("\nHigh-SNR values outside [0, 1] at 0 dB are expected: the approximation is only an asymptote.")


if __name__ == "__main__":
    main()
