"""Regenerates families.tsv: 3 families x 5 doculects with filter edge cases.

Alpha  : 5 doculects, 5 ISO codes, 40 items each              -> kept, 5 members
Beta   : one 27-item list; two doculects share ISO bbc          -> 3 members, dropped
Gamma  : two lists without ISO; one list of 30 items, 3 loans   -> 4 members, kept
"""
import random

CONS = "pbmtdnkgsSlrwyh"
VOWELS = "aeiou"
rng = random.Random(7)


def word():
    return "".join(rng.choice(CONS) + rng.choice(VOWELS) for _ in range(rng.randint(1, 3)))


rows = []


def add(family, genus, doculect, iso, items, loans=()):
    for i in items:
        rows.append((family, genus, doculect, iso, str(i), f"item{i}", word(), "1" if i in loans else "0"))


full = range(1, 41)
for k, (doc, iso) in enumerate([("A1", "aaa"), ("A2", "aab"), ("A3", "aac"), ("A4", "aad"), ("A5", "aae")]):
    add("Alpha", "AlphaNorth" if k < 3 else "AlphaSouth", doc, iso, full)
add("Beta", "BetaG", "B1", "bba", full)
add("Beta", "BetaG", "B2", "bbb", full)
add("Beta", "BetaG", "B3", "bbc", full)
add("Beta", "BetaG", "B4", "bbc", full)
add("Beta", "BetaG", "B5", "bbd", range(1, 28))
add("Gamma", "GammaG", "C1", "cca", full)
add("Gamma", "GammaG", "C2", "ccb", full)
add("Gamma", "GammaG", "C3", "", full)
add("Gamma", "", "C4", "", full)
add("Gamma", "GammaG", "C5", "ccc", range(1, 31), loans=(1, 2, 3))

with open("families.tsv", "w") as f:
    f.write("# generated by make_families.py\n")
    f.write("family\tgenus\tdoculect\tiso\titem_number\titem_name\ttranscription\tloan\n")
    for r in rows:
        f.write("\t".join(r) + "\n")
