#!/usr/bin/env python3
"""Regenerates fixtures/corpus/ deterministically.

Three categories, twenty profiles each, forty publications each, plus a few
authors without a profile. One planted expert in information retrieval and
two in each of the other categories; the labels file marks them. The script
checks the properties the tests rely on before writing anything.
"""

import random
from pathlib import Path

SEED = 20120901
OUT = Path(__file__).resolve().parent / "corpus"

CATEGORIES = [
    ("information_retrieval", "Information Retrieval",
     ["information retrieval", "retrieval", "search", "search engines", "query",
      "relevance", "ranking", "indexing", "hcir", "exploratory search",
      "expert finding"]),
    ("machine_learning", "Machine Learning",
     ["machine learning", "classification", "clustering", "neural networks",
      "decision trees", "regression", "learning", "prediction", "features"]),
    ("human_computer_interaction", "Human-Computer Interaction",
     ["human computer interaction", "hci", "usability", "user interface",
      "interaction design", "user study", "visualization", "accessibility"]),
]

FIRST = ["Ada", "Bruno", "Carla", "Dmitri", "Elena", "Farid", "Greta", "Hiro",
         "Ines", "Jonas", "Kira", "Luis", "Mona", "Nikhil", "Olga", "Pavel",
         "Quinn", "Rosa", "Sven", "Tara", "Umar", "Vera", "Wim", "Xenia",
         "Yusuf", "Zora"]
LAST = ["Abbott", "Baranov", "Castell", "Dorsey", "Eklund", "Ferreira",
        "Galloway", "Hartmann", "Iwata", "Jaramillo", "Kowalczyk", "Lindgren",
        "Moreau", "Nakagawa", "Okafor", "Petrakis", "Quintero", "Rasmussen",
        "Sorensen", "Tanaka", "Underwood", "Valdez", "Wexler", "Yamamoto"]

PLANTED = {
    "information_retrieval": ["Miriam Kessler"],
    "machine_learning": ["Theo Brandt", "Amara Osei"],
    "human_computer_interaction": ["Lucia Ferrante", "Gideon Marsh"],
}
JOURNALS = {
    "information_retrieval": ["Information Retrieval Journal", "ACM Transactions on Information Systems", "JASIST"],
    "machine_learning": ["Journal of Machine Learning Research", "Machine Learning", "Neural Computation"],
    "human_computer_interaction": ["ACM Transactions on Computer-Human Interaction", "International Journal of Human-Computer Studies", "Interacting with Computers"],
}
JOURNAL_RANKS = {
    "Information Retrieval Journal": 0.62, "ACM Transactions on Information Systems": 0.91,
    "JASIST": 0.78, "Journal of Machine Learning Research": 0.95, "Machine Learning": 0.81,
    "Neural Computation": 0.70, "ACM Transactions on Computer-Human Interaction": 0.88,
    "International Journal of Human-Computer Studies": 0.74,
}
STATUSES = ["professor", "postdoc", "phd_student", "other"]
TOPICS = {
    "information_retrieval": ["query expansion", "relevance feedback", "learning to rank",
                              "exploratory search", "expert finding", "index compression",
                              "click models", "faceted search"],
    "machine_learning": ["decision trees", "kernel methods", "graph embeddings",
                         "active learning", "ensemble methods", "sparse regression"],
    "human_computer_interaction": ["mobile usability", "eye tracking", "visual analytics",
                                   "accessible interfaces", "collaborative editing",
                                   "user engagement"],
}
# authors with no profile; "Jon Smit" is equally close to two profiles
EXTERNAL = {
    "information_retrieval": ["Jon Smit", "Wen Zhao"],
    "machine_learning": ["Rafael Quispe"],
    "human_computer_interaction": ["Ingrid Bjornstad"],
}
# author spellings that differ from the profile name by one edit
TYPOS = {"Miriam Kessler": "Miriam Kesler", "Theo Brandt": "Theo Brant"}


def lev(a, b):
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def norm(name):
    return " ".join(name.lower().replace(".", "").split())


def resolve(author, profiles):
    a = norm(author)
    ds = sorted((lev(a, norm(p["name"])), p["id"]) for p in profiles)
    d, pid = ds[0]
    if len(ds) > 1 and ds[1][0] == d:
        return None
    if d / max(len(a), len(norm(next(p["name"] for p in profiles if p["id"] == pid)))) > 0.34:
        return None
    return pid


def main():
    rng = random.Random(SEED)
    used = {n for names in PLANTED.values() for n in names}
    used |= {"Jon Smith", "Ron Smit"}
    pool = [f"{f} {l}" for f in FIRST for l in LAST]
    rng.shuffle(pool)

    profiles, members = [], {}
    n = 0
    for cat, _, _ in CATEGORIES:
        names = list(PLANTED[cat])
        if cat == "information_retrieval":
            names += ["Jon Smith", "Ron Smit"]
        while len(names) < 20:
            cand = pool.pop()
            if cand not in used and all(lev(norm(cand), norm(u)) > 4 for u in used):
                used.add(cand)
                names.append(cand)
        members[cat] = []
        for name in names:
            n += 1
            status = "professor" if name in PLANTED[cat] else rng.choice(STATUSES)
            source = "mendeley" if n % 4 else "academia"
            topics = rng.sample(TOPICS[cat], 2)
            pid = f"p{n:03d}"
            profiles.append({"id": pid, "name": name, "status": status,
                             "source": source, "interests": topics, "cat": cat})
            members[cat].append(name)

    pubs = []
    for cat, _, _ in CATEGORIES:
        experts = PLANTED[cat]
        others = [m for m in members[cat] if m not in experts]
        ext = EXTERNAL[cat]
        per_expert = 14 if len(experts) == 1 else 9
        k = 0
        rotation = list(others)
        rng.shuffle(rotation)
        # expert publications: high readership, co-authors rotate
        for e in experts:
            for _ in range(per_expert):
                co = [rotation[k % len(rotation)]]
                k += 1
                authors = [TYPOS.get(e, e) if rng.random() < 0.3 else e] + co
                pubs.append((cat, authors, rng.randint(60, 140), True))
        while sum(1 for p in pubs if p[0] == cat) < 40:
            size = rng.choice([2, 2, 3, 3, 4])
            authors = rng.sample(others, size - 1) + [rng.choice(others + ext)]
            authors = list(dict.fromkeys(authors))
            pubs.append((cat, authors, rng.randint(1, 22), False))
    # the tied spelling appears on a couple of retrieval papers
    assert any("Jon Smit" in p[1] for p in pubs if p[0] == "information_retrieval")

    # a handful of cross-category collaborations
    cats = [c for c, _, _ in CATEGORIES]
    for i in range(6):
        cat = cats[i % 3]
        visitor = rng.choice([m for c in cats if c != cat for m in members[c]
                              if m not in PLANTED[c]])
        host = rng.choice([m for m in members[cat] if m not in PLANTED[cat]])
        pubs.append((cat, [host, visitor], rng.randint(1, 15), False))

    # resolution and per-category reader sums, to check separability
    person_of = {}
    by_name = {p["name"]: p for p in profiles}
    for _, authors, _, _ in pubs:
        for a in authors:
            pid = resolve(a, profiles)
            person_of[a] = pid if pid else "author:" + norm(a).replace(" ", "_")
    assert person_of["Jon Smit"] == "author:jon_smit"
    for typo in TYPOS.values():
        assert person_of[typo] == by_name[next(k for k, v in TYPOS.items() if v == typo)]["id"]
    for e in EXTERNAL.values():
        for a in e:
            assert person_of[a].startswith("author:"), a
    readers = {}
    for cat, authors, r, _ in pubs:
        for pid in {person_of[a] for a in authors}:
            readers[(pid, cat)] = readers.get((pid, cat), 0) + r
    expert_ids = {by_name[e]["id"] for es in PLANTED.values() for e in es}
    exp_min = min(v for (pid, _), v in readers.items() if pid in expert_ids)
    non_max = max(v for (pid, _), v in readers.items() if pid not in expert_ids)
    assert exp_min > non_max, (exp_min, non_max)

    OUT.mkdir(exist_ok=True)
    with open(OUT / "profiles.txt", "w") as f:
        f.write("# profile_id|display_name|status|source|interests\n")
        for p in profiles:
            f.write(f"{p['id']}|{p['name']}|{p['status']}|{p['source']}|{';'.join(p['interests'])}\n")

    with open(OUT / "publications.txt", "w") as f:
        f.write("# pub_id|title|authors|journal|category_id|readers|reader statuses\n")
        for i, (cat, authors, r, _) in enumerate(pubs, 1):
            topic = rng.choice(TOPICS[cat])
            title = f"{rng.choice(['On', 'Towards', 'Revisiting', 'Scaling', 'Evaluating'])} {topic} {i}"
            roll = rng.random()
            journal = (rng.choice(JOURNALS[cat]) if roll < 0.8
                       else "Proceedings of a Workshop" if roll < 0.9 else "")
            split = sorted(rng.sample(range(1, r), 3)) if r > 3 else []
            hist = ""
            if split:
                parts = [split[0], split[1] - split[0], split[2] - split[1], r - split[2]]
                hist = ";".join(f"{s}:{c}" for s, c in zip(STATUSES, parts))
            f.write(f"pub{i:03d}|{title}|{';'.join(authors)}|{journal}|{cat}|{r}|{hist}\n")

    ids = [p["id"] for p in profiles]
    edges = set()
    for p in profiles:
        same = [q["id"] for q in profiles if q["cat"] == p["cat"] and q["id"] != p["id"]]
        for q in rng.sample(same, 2):
            edges.add(tuple(sorted((p["id"], q))))
    while len(edges) < 70:
        a, b = rng.sample(ids, 2)
        edges.add(tuple(sorted((a, b))))
    with open(OUT / "edges.txt", "w") as f:
        f.write("# profile_id_a,profile_id_b\n")
        for a, b in sorted(edges):
            f.write(f"{a},{b}\n")

    with open(OUT / "journal_ranks.txt", "w") as f:
        for j, r in sorted(JOURNAL_RANKS.items()):
            f.write(f"{j},{r}\n")

    with open(OUT / "taxonomy.txt", "w") as f:
        for cid, label, vocab in CATEGORIES:
            f.write(f"{cid}|{label}|{';'.join(vocab)}\n")

    with open(OUT / "groups.txt", "w") as f:
        for i, (cat, _, _) in enumerate(CATEGORIES, 1):
            group = rng.sample([p["id"] for p in profiles if p["cat"] == cat], 5)
            f.write(f"g{i}|{';'.join(sorted(group))}\n")

    with open(OUT / "labels.txt", "w") as f:
        f.write("# person,category_id,is_expert\n")
        for (pid, cat) in sorted(readers):
            f.write(f"{pid},{cat},{int(pid in expert_ids)}\n")


if __name__ == "__main__":
    main()
