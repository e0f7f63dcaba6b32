"""The packaged fixture corpus, as (name, MarkedLinkDescription) pairs."""
from __future__ import annotations

from importlib import resources
from math import gcd

from .group import MarkedLinkDescription, load_fixture_text
from .link_core import ORIENTED

PD_FIXTURES = ("hopf_marked.pd", "whitehead.pd", "borromean.pd", "torus_2_4.pd",
               "l1_standin.pd")


def braid_fixtures() -> list[tuple[str, list[int]]]:
    text = resources.files("concordia.fixtures").joinpath("braids.txt").read_text()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, word = line.split(":", 1)
        out.append((name.strip(), [int(t) for t in word.split()]))
    return out


def two_bridge_fixtures(max_p: int = 60) -> list[tuple[str, MarkedLinkDescription]]:
    out = []
    for p in range(2, max_p + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                s = f"S({p},{q})"
                out.append((s, MarkedLinkDescription.parse(s)))
    return out


def oriented_fixtures(max_p: int = 60) -> list[tuple[str, MarkedLinkDescription]]:
    """Every marked oriented fixture: PD files, braids and two-bridge links."""
    out = [(f, MarkedLinkDescription.parse(load_fixture_text(f), ORIENTED)) for f in PD_FIXTURES]
    out += [(n, MarkedLinkDescription.parse("braid: " + " ".join(map(str, w))))
            for n, w in braid_fixtures()]
    out += [("l4.tree", MarkedLinkDescription.parse("tree: " + load_fixture_text("l4.tree")))]
    return out + two_bridge_fixtures(max_p)
