"""Regenerates the synthetic Bihar fixture. Deterministic; run from this directory."""

import csv
import math
import random

rng = random.Random(20170401)

CROP_YEARS = range(1999, 2017)
START = {
    "paddy": 45.3, "wheat": 26.5, "maize": 7.6, "moong": 2.4, "lentil": 2.2,
    "khesari": 1.9, "jute": 1.8, "rapeseed_mustard": 1.2, "sugarcane": 1.3,
    "potato": 1.8, "fruits": 2.3, "vegetables": 2.8, "others": 2.9,
}
END = {
    "paddy": 42.5, "wheat": 27.5, "maize": 9.3, "moong": 2.2, "lentil": 2.0,
    "khesari": 0.8, "jute": 1.2, "rapeseed_mustard": 1.1, "sugarcane": 3.0,
    "potato": 4.0, "fruits": 2.4, "vegetables": 3.8, "others": 0.2,
}
# yield t/ha and real price per t, start -> end
YIELD = {
    "paddy": (1.2, 2.2), "wheat": (2.0, 2.6), "maize": (2.0, 3.8), "moong": (0.6, 0.8),
    "lentil": (0.8, 1.0), "khesari": (0.8, 0.9), "jute": (1.6, 2.2),
    "rapeseed_mustard": (0.9, 1.2), "sugarcane": (40.0, 60.0), "potato": (15.0, 20.0),
    "fruits": (10.0, 12.0), "vegetables": (15.0, 17.0), "others": (1.0, 1.2),
}
PRICE = {
    "paddy": (5000, 5600), "wheat": (7000, 7500), "maize": (5000, 5800),
    "moong": (25000, 30000), "lentil": (20000, 28000), "khesari": (15000, 17000),
    "jute": (12000, 14000), "rapeseed_mustard": (16000, 18000), "sugarcane": (900, 1100),
    "potato": (4000, 4500), "fruits": (12000, 14000), "vegetables": (8000, 9000),
    "others": (20000, 22000),
}


def lerp(a, b, t):
    return a + (b - a) * t


def crop_panel():
    rows = []
    for y in CROP_YEARS:
        t = min((y - 1999) / 15.0, 1.0)
        total = 7_800_000 - 20_000 * (y - 1999) + (0 if y >= 2014 else rng.uniform(-40_000, 40_000))
        if y >= 2014:
            shares = dict(END)
        else:
            raw = {c: lerp(START[c], END[c], t) * rng.uniform(0.98, 1.02) for c in START}
            s = sum(raw.values())
            shares = {c: 100 * v / s for c, v in raw.items()}
        for c in START:
            area = round(total * shares[c] / 100) if y < 2014 else None
            if y >= 2014:
                # exact TE shares: 7,500,000 ha in every year of the terminal triennium
                area = round(7_500_000 * shares[c] / 100)
            yt = lerp(*YIELD[c], t) * rng.uniform(0.95, 1.05)
            if y == 2009 and c == "paddy":
                yt *= 0.75
            price = lerp(*PRICE[c], t) * rng.uniform(0.97, 1.03)
            rows.append((c, y, area, round(area * yt, 1), round(price, 2)))
    with open("crop_panel.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["crop_id", "year", "area_ha", "production_t", "price_per_t"])
        w.writerows(rows)


TFP_RATE = math.log(1.0171)


def io_panel():
    outputs = {"paddy": 0.36, "wheat": 0.24, "maize": 0.10, "pulses": 0.08, "potato": 0.10, "vegetables": 0.12}
    inputs = {"labour": 0.42, "fertilizer": 0.18, "seed": 0.10, "machinery": 0.14, "irrigation": 0.16}
    rows = []
    for y in range(2000, 2017):
        t = y - 2000
        o = 0.012 * t + (-0.08 if y == 2009 else 0.0) + rng.uniform(-0.01, 0.01)
        i = o - TFP_RATE * t
        for kind, base, level in (("output", outputs, o), ("input", inputs, i)):
            raw = {k: v * rng.uniform(0.9, 1.1) for k, v in base.items()}
            s = sum(raw.values())
            ids = list(raw)
            shares = [round(raw[k] / s, 4) for k in ids[:-1]]
            shares.append(round(1 - sum(shares), 4))
            for k, sh in zip(ids, shares):
                q = 100.0 * base[k] * math.exp(level)
                rows.append((y, kind, k, f"{q:.6f}", f"{sh:.4f}"))
    with open("io_panel.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["year", "kind", "item_id", "quantity", "share"])
        w.writerows(rows)


def standardized(n):
    z = [k + rng.uniform(-0.4, 0.4) for k in range(n)]
    m = sum(z) / n
    sd = math.sqrt(sum((x - m) ** 2 for x in z) / (n - 1))
    return [(x - m) / sd for x in z]


def prices():
    targets = {
        "paddy": ((511, 11.0), (1154, 27.7)),
        "wheat": ((771, 12.2), (1279, 14.1)),
        "maize": ((600, 11.2), (1084, 24.9)),
    }
    rows = []
    for c, windows in targets.items():
        values = []
        for (mean, cv), n in zip(windows, (5, 10)):
            sd = mean * cv / 100
            values += [mean + sd * z for z in standardized(n)]
        for y, v in zip(range(2002, 2017), values):
            rows.append((c, y, f"{v:.4f}"))
    for y in range(2002, 2017):
        rows.append(("urea", y, f"{480 + 5.5 * (y - 2002) + rng.uniform(-5, 5):.4f}"))
    with open("prices.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["commodity_id", "year", "price_per_t"])
        w.writerows(rows)


def land_use():
    total = 9_360_000
    rows = []
    for y in range(2000, 2015):
        al = 0.68 if y <= 2007 else (0.675 if y < 2012 else 0.67)
        rows.append((y, round(al * total), round(0.18 * total), total))
    with open("land_use.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["year", "agricultural_land", "non_agricultural_land", "total_reported"])
        w.writerows(rows)


def costs():
    rows = []
    for y in range(2000, 2016):
        cost = 20000 * 1.045 ** (y - 2000)
        ratio = lerp(1.3, 1.6, (y - 2000) / 7) if y <= 2007 else lerp(1.6, 1.2, (y - 2007) / 8)
        ratio *= rng.uniform(0.98, 1.02)
        rows.append((y, round(cost * ratio, 2), round(cost, 2)))
    with open("costs.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["year", "output_value", "input_cost"])
        w.writerows(rows)


def cai():
    nation = {
        "fruits": 6_400_000, "vegetables": 10_100_000, "flowers": 250_000,
        "aromatic_medicinal": 600_000, "spices": 3_300_000, "plantation": 3_600_000,
    }
    target = {"fruits": 1.01, "vegetables": 1.72, "flowers": 0.08, "aromatic_medicinal": 0.01, "spices": 0.10}
    n_total = sum(nation.values())
    r_total = 1_150_000
    region = {g: round(v * nation[g] / n_total * r_total, 3) for g, v in target.items()}
    region["plantation"] = round(r_total - sum(region.values()), 3)
    for name, table in (("cai_region.csv", region), ("cai_nation.csv", nation)):
        with open(name, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["crop_id", "year", "area_ha", "production_t", "price_per_t"])
            for g, a in table.items():
                w.writerow((g, 2015, a, 0, 0))


if __name__ == "__main__":
    crop_panel()
    io_panel()
    prices()
    land_use()
    costs()
    cai()
