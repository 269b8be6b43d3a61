#!/usr/bin/env python3
"""Generate the synthetic test corpus under tests/data/fixture/.

Deterministic: a fixed seed drives every draw, so regeneration is
byte-identical. The corpus is a small project history (~200 commits,
~46 files) with four seeded "vulnerable" files whose ownership mix and
component age are staged by construction:

    file                 age(d)  stage  ownership  per_minor(10%)
    net/session_auth.py       5     T1       0.90       0.00
    net/token_cache.py       60     T2       0.60       0.25
    core/tensor_load.py     200     T3       0.40       0.57
    core/graph_exec.py      400     T4       0.25       0.77

so ownership falls and the minor-contributor share rises as components age.
Ground-truth labels are computed here, from the plan, and written next to
the generated inputs; the acceptance suite compares pipeline output against
them. Two merge commits and a binary-only asset are planted as poison: they
must not enter any contribution count.
"""

import hashlib
import json
import os
import random

T0 = 1_500_000_000
DAY = 86_400
OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "fixture")

rng = random.Random(20240711)


def sha(tag):
    return hashlib.sha1(f"fixture-{tag}".encode()).hexdigest()


def rfc3339(ts):
    import datetime

    return (
        datetime.datetime.fromtimestamp(ts, datetime.timezone.utc)
        .strftime("%Y-%m-%dT%H:%M:%SZ")
    )


used_timestamps = set()


def claim(ts):
    ts = int(ts)
    while ts in used_timestamps:
        ts += 7
    used_timestamps.add(ts)
    return ts


commits = []  # dicts: ts, author, parents, changes=[(path, add, del)]


def add_commit(ts, author, changes, parents=()):
    ts = claim(ts)
    commits.append(
        {
            "ts": ts,
            "author": author,
            "parents": list(parents),
            "changes": changes,
            "hash": sha(f"commit-{len(commits)}"),
        }
    )
    return commits[-1]


# --- project skeleton ------------------------------------------------------

add_commit(T0, "alice@example.com", [("lib/core.py", 120, 0)])  # project start, day 0

RELEASES = [("v0.1", 30), ("v0.2", 200), ("v1.0", 420), ("v1.1", 800)]

VULN_PLANS = [
    {
        "path": "net/session_auth.py",
        "first_day": 798,
        "event_day": 803,
        "counts": [("alice@example.com", 9), ("bob@example.com", 1)],
        "cve": "CVE-2021-1001",
        "severity": 8.0,
    },
    {
        "path": "net/token_cache.py",
        "first_day": 780,
        "event_day": 840,
        "counts": [
            ("carol@example.com", 12),
            ("dave@example.com", 4),
            ("eve@example.com", 3),
            ("frank@example.com", 1),
        ],
        "cve": "CVE-2021-1002",
        "severity": 9.0,
    },
    {
        "path": "core/tensor_load.py",
        "first_day": 430,
        "event_day": 630,
        "counts": [
            ("grace@example.com", 8),
            ("heidi@example.com", 6),
            ("ivan@example.com", 2),
            ("judy@example.com", 1),
            ("kyle@example.com", 1),
            ("liam@example.com", 1),
            ("mia@example.com", 1),
        ],
        "cve": "CVE-2021-1003",
        "severity": 6.0,
    },
    {
        "path": "core/graph_exec.py",
        "first_day": 10,
        "event_day": 410,
        "counts": [("noah@example.com", 5), ("olivia@example.com", 3), ("peter@example.com", 2)]
        + [(f"dev{i:02d}@example.com", 1) for i in range(10)],
        "cve": "CVE-2021-1004",
        "severity": 3.5,
    },
]

ground_truth = {"files": {}}

for plan in VULN_PLANS:
    path = plan["path"]
    event_ts = T0 + plan["event_day"] * DAY
    authors = []
    for author, count in plan["counts"]:
        authors.extend([author] * count)
    rng.shuffle(authors)
    total = len(authors)

    span_days = plan["event_day"] - plan["first_day"]
    added_sum = deleted_sum = 0
    first_ts = None
    last_hash = None
    for k, author in enumerate(authors):
        if k == 0:
            day = plan["first_day"]
        else:
            # strictly inside (first, event), well clear of the cutoff
            day = plan["first_day"] + span_days * (0.05 + 0.9 * k / total)
        add = rng.randint(8, 60)
        delete = rng.randint(0, add // 3)
        added_sum += add
        deleted_sum += delete
        commit = add_commit(T0 + day * DAY, author, [(path, add, delete)])
        if first_ts is None:
            first_ts = commit["ts"]
        last_hash = commit["hash"]

    counts = dict(plan["counts"])
    shares = {a: c / total for a, c in counts.items()}
    ownership = max(shares.values())
    n_minor = sum(1 for s in shares.values() if s < 0.10)
    age_days = (event_ts - first_ts) / DAY

    # Independent stage classification from the published rules.
    if age_days >= 3 * 365:
        t_stage = 5
    elif age_days > 9 * 30:
        t_stage = 4
    elif age_days > 3 * 30:
        t_stage = 3
    elif age_days > 7:
        t_stage = 2
    else:
        t_stage = 1

    windowed = [T0 + d * DAY for _, d in RELEASES if first_ts <= T0 + d * DAY <= event_ts]
    n_rel = len(windowed)
    elapsed = event_ts - first_ts
    growth = windowed[-1] - windowed[0] if n_rel >= 2 else 0
    since_last = event_ts - windowed[-1] if n_rel >= 1 else 0
    year, six_months = 365 * DAY, 180 * DAY
    if n_rel == 0 and elapsed > year:
        oss = 2  # TI
    elif n_rel == 0:
        oss = 3  # II
    elif n_rel >= 3 and growth > six_months:
        oss = 5  # SG
    elif n_rel in (1, 2) and since_last > year:
        oss = 6  # TG
    elif (n_rel < 3 and elapsed < year) or (n_rel == 3 and growth < six_months):
        oss = 4  # IG
    else:
        oss = 1  # SI

    all_release_ts = [T0 + d * DAY for _, d in RELEASES]
    ground_truth["files"][path] = {
        "cve": plan["cve"],
        "ownership": ownership,
        "n_contributors": len(counts),
        "n_minor": n_minor,
        "per_minor": n_minor / len(counts),
        "age_days": age_days,
        "days_difference": (event_ts - T0) / DAY,
        "time_stage_aged_numeric": t_stage,
        "oss_stage_aged_numeric": oss,
        "file_size": max(0, added_sum - deleted_sum),
        "code_churn": added_sum + deleted_sum,
        "release_amounts": sum(1 for ts in all_release_ts if ts <= event_ts),
        "release_amounts_aged": sum(1 for ts in all_release_ts if first_ts <= ts <= event_ts),
    }
    plan["event_ts"] = event_ts
    plan["fix_hash"] = last_hash

# --- filler files: ownership structure scales with age ----------------------

AUTHOR_POOL = [f"{name}@example.com" for name in (
    "alice", "bob", "carol", "dave", "eve", "frank", "grace", "heidi", "ivan",
    "judy", "kyle", "liam", "mia", "noah", "olivia", "peter",
)] + [f"dev{i:02d}@example.com" for i in range(10)]

filler_paths = []
for i in range(41):
    directory = ("lib", "util", "ops", "io")[i % 4]
    path = f"{directory}/module_{i:02d}.py"
    filler_paths.append(path)
    hub = i % 10 == 3  # a few crowded files with long minor-contributor tails
    if hub:
        birth = rng.uniform(1, 400)
        n_commits = rng.randint(22, 28)
        team = rng.sample(AUTHOR_POOL, rng.randint(9, 13))
    else:
        birth = rng.uniform(1, 700)
        n_commits = rng.randint(2, 3)
        team = rng.sample(AUTHOR_POOL, max(1, rng.randint(1, 1 + n_commits // 2)))
    days = sorted(rng.uniform(birth, 848) for _ in range(n_commits - 1))
    growth = int((850 - birth) / 12)
    for k, day in enumerate([birth] + days):
        # the first team member dominates; the rest form a thin tail
        author = team[0] if rng.random() < 0.45 else rng.choice(team[1:] or team)
        add = rng.randint(5, 30) + growth
        delete = rng.randint(0, add // 2)
        add_commit(T0 + day * DAY, author, [(path, add, delete)])

# Binary-only asset: unknown deltas contribute commits but zero churn.
for day in (120, 430, 700):
    add_commit(T0 + day * DAY, "mia@example.com", [("img/logo.png", None, None)])

# Poison: merge commits carry numstat lines that must never be counted.
add_commit(
    T0 + 500 * DAY,
    "merge-bot@example.com",
    [("core/tensor_load.py", 500, 400), ("lib/module_00.py", 250, 0)],
    parents=(commits[3]["hash"], commits[9]["hash"]),
)
add_commit(
    T0 + 820 * DAY,
    "merge-bot@example.com",
    [("net/token_cache.py", 300, 300), ("util/module_01.py", 90, 10)],
    parents=(commits[20]["hash"], commits[30]["hash"]),
)

# Snapshot anchor: the last commit fixes the non-vulnerable evaluation date.
snapshot_commit = add_commit(T0 + 860 * DAY, "alice@example.com", [("lib/core.py", 4, 1)])

# --- sanity checks over the plan --------------------------------------------

vuln_files = {plan["path"] for plan in VULN_PLANS}
pool = set()
for commit in commits:
    if len(commit["parents"]) >= 2:
        continue
    for path, _, _ in commit["changes"]:
        pool.add(path)
pool -= vuln_files
assert len(pool) >= 10 * len(VULN_PLANS), (len(pool), len(VULN_PLANS))
assert len(commits) >= 190, len(commits)

ground_truth["project_start"] = commits[0]["ts"]
ground_truth["snapshot"] = snapshot_commit["ts"]
ground_truth["pool_size"] = len(pool)
ground_truth["n_commits"] = len(commits)

# --- emit --------------------------------------------------------------------

os.makedirs(OUT_DIR, exist_ok=True)

with open(os.path.join(OUT_DIR, "gitlog.txt"), "w") as log:
    for commit in sorted(commits, key=lambda c: -c["ts"]):  # newest first, like git
        parents = " ".join(commit["parents"])
        log.write(f"@@@{commit['hash']}|{commit['author']}|{commit['ts']}|{parents}\n")
        log.write("\n")
        for path, add, delete in commit["changes"]:
            if add is None:
                log.write(f"-\t-\t{path}\n")
            else:
                log.write(f"{add}\t{delete}\t{path}\n")

with open(os.path.join(OUT_DIR, "releases.csv"), "w") as out:
    out.write("name,timestamp\n")
    for name, day in sorted(RELEASES, key=lambda r: r[0], reverse=True):  # loader sorts
        out.write(f"{name},{rfc3339(T0 + day * DAY)}\n")

with open(os.path.join(OUT_DIR, "vulns.jsonl"), "w") as out:
    for plan in VULN_PLANS:
        record = {
            "id": plan["cve"],
            "severity": plan["severity"],
            "published": rfc3339(plan["event_ts"]),
            "commits": [plan["fix_hash"]],
            "files": [plan["path"]],
        }
        out.write(json.dumps(record, sort_keys=True) + "\n")

with open(os.path.join(OUT_DIR, "ground_truth.json"), "w") as out:
    json.dump(ground_truth, out, indent=2, sort_keys=True)
    out.write("\n")

print(f"wrote fixture: {len(commits)} commits, {len(pool)} pool files, "
      f"{len(VULN_PLANS)} advisories -> {os.path.normpath(OUT_DIR)}")
