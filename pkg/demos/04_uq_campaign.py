"""Full uncertainty campaign for both fuels with the built-in rod model.

Equivalent shell commands::

    pcerod pipeline --config demos/configs/uo2.json
    pcerod pipeline --config demos/configs/u3si2.json
    pcerod compare demos/configs/campaigns/uo2-*/report.json demos/configs/campaigns/u3si2-*/report.json
"""
# %%
import time
from pathlib import Path

from pcerod import campaign
from pcerod.config import CampaignConfig

here = Path(__file__).parent / "configs"
reports = {}
for name in ("uo2", "u3si2"):
    cfg = CampaignConfig.load(here / f"{name}.json")
    t0 = time.perf_counter()
    reports[name] = campaign.run_pipeline(cfg)
    print(f"{cfg.campaign_id}: {time.perf_counter() - t0:.1f} s -> {cfg.campaign_dir()}")

# %% [markdown]
# Plateau statistics and first-order indices.

# %%
for name, rep in reports.items():
    print(f"\n{rep['fuel']} at t = {rep['plateau_time_s']:.3g} s")
    for q, r in rep["outputs"].items():
        s1 = r["plateau_first_order"]
        top = "undefined (no variance)" if s1["fuel_k"] is None else max(s1, key=s1.get)
        rsd = r["plateau_rsd_percent"]
        print(f"  {q:22s} mean {r['plateau_mean']:12.5g}  RSD {rsd:9.3g} %  dominant: {top}")

# %%
print()
print(campaign.format_comparison(campaign.compare_reports(reports["uo2"], reports["u3si2"])))
