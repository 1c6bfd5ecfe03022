#!/usr/bin/env python3
# Copyright 2026 The longsent Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled synthetic corpus under data/sample/.

The output is fixed by the seed, so rerunning produces identical files.
"""
import csv
import datetime as dt
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data", "sample")

COUNTRIES = ["AU", "BR", "IN", "ID", "JP", "GB"]
NAMES = {"AU": "Australia", "BR": "Brazil", "IN": "India", "ID": "Indonesia", "JP": "Japan",
         "GB": "United Kingdom"}

SUBJECTS = ["China", "Chinese", "Wuhan", "the CCP", "Beijing", "the PRC", "mainland officials",
            "Hubei", "#China", "#Wuhan"]
OPENERS = ["Lol", "RT @newsdesk:", "@friend_01", "Honestly", "Breaking:", "Ugh,", "Thanks", "So",
           "I can't believe", "Yay!"]
PREDICATES = [
    "reports new COVID-19 cases according to the health ministry",
    "is to blame for the virus, stop the lies and propaganda",
    "says the lab leak theory is a hoax",
    "donated vaccines, we are grateful and thankful",
    "lockdown makes me worried and afraid",
    "kung flu jokes are so funny haha",
    "wuhan institute of virology leak cover up",
    "coronavirus vaccine progress gives me hope",
    "chinese communist party hides the data",
    "sad news, so many died this week",
    "this is the worst disaster, we are doomed",
    "sorry for everyone suffering, prayers",
]
TAILS = ["", " https://t.co/abc123XYZ", " \U0001F642", " \U0001F641", " #COVID19", " lol", "...", " \U0001F984",
         " asap!!", " won't stop"]
NEUTRAL = ["I love noodles and sunny days", "Paris cafe was lovely today", "Machine learning meetup tonight",
           "Football results are in"]


def month_start(year, month):
    return dt.datetime(year, month, 1, tzinfo=dt.timezone.utc)


def main():
    rng = random.Random(7)
    os.makedirs(OUT, exist_ok=True)
    rows = []
    months = []
    y, m = 2020, 4
    while (y, m) <= (2022, 1):
        months.append((y, m))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)

    for i in range(190):
        country = COUNTRIES[i % len(COUNTRIES)]
        year, month = months[rng.randrange(len(months))]
        ts = month_start(year, month) + dt.timedelta(days=rng.randrange(28), seconds=rng.randrange(86400))
        if rng.random() < 0.1:
            text = rng.choice(NEUTRAL)
        else:
            text = f"{rng.choice(OPENERS)} {rng.choice(SUBJECTS)} {rng.choice(PREDICATES)}{rng.choice(TAILS)}"
        rows.append([f"p{i:03d}", text, ts.strftime("%Y-%m-%dT%H:%M:%SZ"), country])

    # Boundary posts, duplicates and malformed rows.
    rows.append(["p190", "Wuhan update at the end of May", "2020-05-31T23:59:59Z", "AU"])
    rows.append(["p191", "Wuhan update at the start of June", "2020-06-01T00:00:00Z", "AU"])
    rows.append(["p192", rows[5][1], "2021-03-03T12:00:00Z", "GB"])
    rows.append(["p193", "  " + rows[6][1].replace(" ", "   ") + " ", "2021-03-04T12:00:00Z", "IN"])
    rows.append(["p010", "Same id as an earlier post about China", "2021-03-05T12:00:00Z", "JP"])
    rows.append(["p195", "China timestamp is broken", "not-a-date", "BR"])
    rows.append(["p196", "Before the covered window, China", "2019-12-31T10:00:00Z", "BR"])
    rows.append(["p197", "Yay! A new virus??? Thanks China!\nKung-Flu: The Legend Continues", "2021-11-20T08:30:00+10:00", "AU"])
    rows.append(["p198", "Not enough PRC tests in the city", "2021-07-14T09:00:00Z", "ID"])
    rows.append(["p199", "Mainlander vlog ’s great, chines food", "2021-07-15T09:00:00Z", "JP"])

    with open(os.path.join(OUT, "posts.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text", "timestamp", "country"])
        w.writerows(rows)

    # Wide cumulative case layout: one row per region, one column per day.
    days = []
    d = dt.date(2020, 3, 1)
    while d <= dt.date(2022, 2, 28):
        days.append(d)
        d += dt.timedelta(days=1)
    with open(os.path.join(OUT, "cases.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["Province/State", "Country/Region", "Lat", "Long"] +
                   [f"{x.month}/{x.day}/{x.year % 100}" for x in days])
        for code in COUNTRIES:
            regions = ["North", "South"] if code == "AU" else [""]
            for region in regions:
                total = 0
                series = []
                scale = rng.randint(50, 5000)
                for k, _ in enumerate(days):
                    wave = 1 + 3 * (k % 180 < 40)
                    total += rng.randint(0, scale) * wave
                    series.append(total)
                w.writerow([region, NAMES[code], "0", "0"] + series)


if __name__ == "__main__":
    main()
