#!/usr/bin/env python3
"""Regenerate the synthetic input fixtures. Deterministic (seeded)."""
import csv
import json
import random
from pathlib import Path

HERE = Path(__file__).parent
rng = random.Random(20240501)

# (region string, 5-digit fips, svi) ; svi None => absent from the SVI file
SCORED = [
    ("Adams County, CO", "08001", 0.437),
    ("Denver County, CO", "08031", 0.6412),
    ("Orleans Parish, LA", "22071", 0.8874),
    ("Polk County, IA", "19153", 0.3021),
    ("Franklin County, OH", "39049", 0.7133),
    ("Travis County, TX", "48453", 0.4655),
    ("Maricopa County, AZ", "04013", 0.6627),
    ("Doña Ana County, NM", "35013", 0.9501),
    ("St. Louis city, MO", "29510", 0.9123),
    ("DeKalb County, GA", "13089", 0.7209),
]
MARKET_ONLY = ("Alameda County, CA", "06001")
THIN = ("King County, WA", "53033", 0.1902)

HEADER = [
    "period_end", "region_type", "table_id", "region", "property_type",
    "median_sale_price", "median_sale_price_mom", "median_sale_price_yoy",
    "homes_sold", "homes_sold_mom", "homes_sold_yoy", "period_begin",
]


def month_bounds(year, month):
    days = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31][month - 1]
    return f"{year}-{month:02d}-01", f"{year}-{month:02d}-{days:02d}"


def row(region, begin, end, p_mom, p_yoy, h_mom, h_yoy,
        region_type="county", property_type="All Residential"):
    return {
        "period_begin": begin, "period_end": end, "region_type": region_type,
        "table_id": str(rng.randint(1, 4000)), "region": region,
        "property_type": property_type,
        "median_sale_price": str(rng.randint(150, 900) * 1000),
        "median_sale_price_mom": p_mom, "median_sale_price_yoy": p_yoy,
        "homes_sold": str(rng.randint(20, 2000)),
        "homes_sold_mom": h_mom, "homes_sold_yoy": h_yoy,
    }


def growth_row(region, year, month, base):
    b, e = month_bounds(year, month)
    return row(region, b, e,
               f"{rng.uniform(-0.03, 0.03):.4f}",
               f"{base + rng.uniform(-0.05, 0.05):.4f}",
               f"{rng.uniform(-0.2, 0.2):.4f}",
               f"{rng.uniform(-0.3, 0.3):.4f}")


def write_tsv(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=HEADER, delimiter="\t",
                           quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def market_fixture():
    rows = []
    for region, _, _ in SCORED:
        base = rng.uniform(0.02, 0.16)
        for m in range(1, 13):
            rows.append(growth_row(region, 2021, m, base))
    for m in range(1, 13):
        rows.append(growth_row(MARKET_ONLY[0], 2021, m, 0.09))
    for m in range(1, 4):
        rows.append(growth_row(THIN[0], 2021, m, 0.12))

    # rows the ingest stage must drop, one per reason
    bad = growth_row("Adams County, CO", 2020, 6, 0.1)
    bad["median_sale_price_yoy"] = ""
    rows.append(bad)
    bad = growth_row("Denver County, CO", 2020, 6, 0.1)
    bad["homes_sold_mom"] = "NA"
    rows.append(bad)
    bad = growth_row("Polk County, IA", 2020, 6, 0.1)
    bad["median_sale_price_mom"] = "abc"
    rows.append(bad)
    bad = growth_row("Travis County, TX", 2020, 6, 0.1)
    bad["period_end"] = "2020-13-45"
    rows.append(bad)
    bad = growth_row("Travis County, TX", 2020, 7, 0.1)
    bad["period_begin"], bad["period_end"] = "2020-07-31", "2020-07-01"
    rows.append(bad)
    bad = growth_row("Adams County, CO", 2021, 1, 0.1)
    bad["property_type"] = "Single Family Residential"
    rows.append(bad)
    bad = growth_row("Colorado", 2021, 1, 0.1)
    bad["region_type"] = "state"
    rows.append(bad)
    bad = growth_row("Denver, CO metro area", 2021, 1, 0.1)
    bad["region_type"] = "metro"
    rows.append(bad)
    # kept by ingest, rejected by the region parser downstream
    rows.append(growth_row("Nowhere", 2021, 1, 0.1))
    rows.append(growth_row("Foo County, XX", 2021, 1, 0.1))

    rng.shuffle(rows)
    write_tsv(HERE / "market.tsv", rows)
    # one short row appended raw so its field count is wrong
    with open(HERE / "market.tsv", "a", encoding="utf-8") as fh:
        fh.write("2021-01-31\tcounty\t12\t\"Adams County, CO\"\n")


def svi_fixture():
    header = ["ST", "STATE", "ST_ABBR", "STCNTY", "COUNTY", "FIPS", "LOCATION",
              "E_TOTPOP", "RPL_THEME1", "RPL_THEME2", "RPL_THEME3",
              "RPL_THEME4", "RPL_THEMES"]
    entries = [(r, f, s) for r, f, s in SCORED]
    entries.append(THIN)
    entries.append(("Autauga County, AL", "01001", 0.4354))
    entries.append(("Rio Arriba County, NM", "35039", -999))
    entries.append(("Bogus County, TX", "48999", 1.2))
    entries.append(("San Juan Municipio, PR", "72127", 0.5))
    rows = []
    for region, fips, svi in entries:
        county, st = region.rsplit(", ", 1)
        rows.append({
            "ST": fips[:2], "STATE": st, "ST_ABBR": st, "STCNTY": fips[2:],
            "COUNTY": county, "FIPS": fips, "LOCATION": f"{county}, {st}",
            "E_TOTPOP": str(rng.randint(1000, 900000)),
            "RPL_THEME1": f"{rng.random():.4f}",
            "RPL_THEME2": f"{rng.random():.4f}",
            "RPL_THEME3": f"{rng.random():.4f}",
            "RPL_THEME4": f"{rng.random():.4f}",
            "RPL_THEMES": str(svi),
        })
    with open(HERE / "svi.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def geojson_fixture():
    names = {
        "08001": "Adams", "08031": "Denver", "22071": "Orleans Parish",
        "19153": "Polk", "39049": "Franklin", "48453": "Travis",
        "04013": "Maricopa", "35013": "Doña Ana", "29510": "St. Louis city",
        "08069": "Larimer",
    }
    features = []
    for i, (fips, name) in enumerate(names.items()):
        x, y = -110 + 2 * i, 35 + (i % 3)
        ring = [[x, y], [x + 1, y], [x + 1, y + 1], [x, y + 1], [x, y]]
        features.append({
            "type": "Feature",
            "properties": {
                "GEO_ID": f"0500000US{fips}", "STATE": fips[:2],
                "COUNTY": fips[2:], "NAME": name, "LSAD": "County",
                "CENSUSAREA": round(rng.uniform(100, 5000), 3),
            },
            "geometry": {"type": "Polygon", "coordinates": [ring]},
        })
    doc = {"type": "FeatureCollection", "name": "fixture_counties",
           "features": features}
    with open(HERE / "counties.geojson", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def aggregate_fixture():
    rows = []
    for region, base in [("Adams County, CO", 0.11), ("Orleans Parish, LA", 0.04),
                         ("Polk County, IA", 0.08)]:
        for m in range(1, 11):
            rows.append(growth_row(region, 2019, m, base))
    rng.shuffle(rows)
    write_tsv(HERE / "aggregate_30.tsv", rows)


def collinear_fixtures():
    regions = [("Adams County, CO", "08001"), ("Polk County, IA", "19153"),
               ("Travis County, TX", "48453")]
    rows = []
    for (region, _), g in zip(regions, ["0.1", "0.2", "0.3"]):
        rows.append(row(region, "2021-01-01", "2021-01-31", "0.01", g, "0.0", "0.0"))
    write_tsv(HERE / "collinear_market.tsv", rows)
    for name, svis in [("collinear_svi.csv", [0.1, 0.2, 0.3]),
                       ("constant_svi.csv", [0.5, 0.5, 0.5])]:
        with open(HERE / name, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["ST_ABBR", "COUNTY", "FIPS", "RPL_THEMES"])
            for (region, fips), s in zip(regions, svis):
                county, st = region.rsplit(", ", 1)
                w.writerow([st, county, fips, s])


if __name__ == "__main__":
    market_fixture()
    svi_fixture()
    geojson_fixture()
    aggregate_fixture()
    collinear_fixtures()
