#!/usr/bin/env python3
"""Reliability-mask diagnostics for the (128,113)^2 product code: prints
the analytic and simulated non-HRB counts per block at a few SNR points
and writes one block's mask as a text grid ('#' = candidate flip bit).

Usage:
    python scripts/mask_inset.py [inset.txt]
"""

import sys

from feclab.pc import SabmParams
from feclab.sim import SimConfig, analytic_non_hrb_probability, mask_stats, render_mask


def main() -> int:
    inset_path = sys.argv[1] if len(sys.argv) > 1 else "mask_inset.txt"
    cfg = SimConfig(scheme="pc", mod=2, snr_points=(6.2,), decoder="sabm",
                    sabm=SabmParams(delta=5.0), master_seed=1,
                    record_timing=False)
    n_bits = 128 * 128
    for snr in (5.8, 6.0, 6.2, 6.4):
        p = analytic_non_hrb_probability(snr, cfg.sabm.delta)
        ms = mask_stats(cfg, snr, num_blocks=200)
        print(f"{snr:4.1f} dB  analytic {n_bits * p:8.1f}  "
              f"simulated {ms.mean_non_hrb_count:8.1f}  "
              f"ratio {ms.ratio:.4f}")
        if snr == 6.2:
            with open(inset_path, "w") as fh:
                fh.write(render_mask(ms.first_mask) + "\n")
            print(f"  mask grid written to {inset_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
